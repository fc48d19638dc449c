//! Simple root systems and their Weyl groups.
//!
//! Roots are realised in the standard Bourbaki coordinates with exact
//! rational entries, so that for type `C_k` the characters `x_i` are literal
//! ambient coordinates. Weights live abstractly in the fundamental-weight
//! basis, i.e. the weight lattice of the simply connected group; every
//! reflection acts on that lattice through an integer matrix, and that matrix
//! is the canonical form of a Weyl element (equality and hashing are `O(rank²)`
//! and independent of the word used to reach the element).

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::{Error, Result};

/// Exact rational scalar used for ambient coordinates.
pub type Rat = Ratio<i64>;

/// Default enumeration cap: the order of the largest Weyl group that is still
/// considered enumerable on a desk machine.
pub const DEFAULT_WEYL_CAP: u128 = 2_903_040;

/// The seven families of simple root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieFamily {
    pub fn letter(self) -> char {
        match self {
            LieFamily::A => 'A',
            LieFamily::B => 'B',
            LieFamily::C => 'C',
            LieFamily::D => 'D',
            LieFamily::E => 'E',
            LieFamily::F => 'F',
            LieFamily::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(LieFamily::A),
            'B' => Some(LieFamily::B),
            'C' => Some(LieFamily::C),
            'D' => Some(LieFamily::D),
            'E' => Some(LieFamily::E),
            'F' => Some(LieFamily::F),
            'G' => Some(LieFamily::G),
            _ => None,
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A weight written in the fundamental-weight basis.
///
/// The coordinate vector has one entry per simple root; `coords[i]` is the
/// pairing with the `i`-th simple coroot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![0; rank] }
    }

    /// The fundamental weight `ω_i` (0-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Weight { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Weight { coords }
    }

    pub fn scale(&self, n: i64) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * n).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }
}

/// A root of the system, carried in every basis the crate needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coefficients over the simple roots.
    simple_coords: Vec<i64>,
    /// Exact ambient coordinates.
    ambient: Vec<Rat>,
    /// Coefficients of the coroot `β^∨ = 2β/(β,β)` over the simple coroots.
    coroot_coords: Vec<i64>,
    /// Coefficients over the fundamental weights.
    weight_coords: Vec<i64>,
}

impl Root {
    pub fn simple_coords(&self) -> &[i64] {
        &self.simple_coords
    }

    pub fn ambient(&self) -> &[Rat] {
        &self.ambient
    }

    pub fn coroot_coords(&self) -> &[i64] {
        &self.coroot_coords
    }

    pub fn weight_coords(&self) -> &[i64] {
        &self.weight_coords
    }

    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    /// The root as an abstract weight.
    pub fn as_weight(&self) -> Weight {
        Weight::new(self.weight_coords.clone())
    }
}

/// A simple root system with its positive roots and Cartan data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: LieFamily,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<Vec<Rat>>,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    fundamental_weights: Vec<Vec<Rat>>,
}

fn rat(n: i64) -> Rat {
    Ratio::from_integer(n)
}

fn half(n: i64) -> Rat {
    Ratio::new(n, 2)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Bourbaki simple roots for the supported types.
fn simple_roots_of(family: LieFamily, rank: usize) -> Result<(usize, Vec<Vec<Rat>>)> {
    let err = || Error::UnsupportedType {
        family: family.letter(),
        rank,
    };
    let unit = |dim: usize, entries: &[(usize, Rat)]| {
        let mut v = vec![rat(0); dim];
        for &(i, c) in entries {
            v[i] = c;
        }
        v
    };
    match (family, rank) {
        (LieFamily::A, k) if k >= 1 => {
            let dim = k + 1;
            let roots = (0..k)
                .map(|i| unit(dim, &[(i, rat(1)), (i + 1, rat(-1))]))
                .collect();
            Ok((dim, roots))
        }
        (LieFamily::B, k) if k >= 2 => {
            let mut roots: Vec<_> = (0..k - 1)
                .map(|i| unit(k, &[(i, rat(1)), (i + 1, rat(-1))]))
                .collect();
            roots.push(unit(k, &[(k - 1, rat(1))]));
            Ok((k, roots))
        }
        (LieFamily::C, k) if k >= 2 => {
            let mut roots: Vec<_> = (0..k - 1)
                .map(|i| unit(k, &[(i, rat(1)), (i + 1, rat(-1))]))
                .collect();
            roots.push(unit(k, &[(k - 1, rat(2))]));
            Ok((k, roots))
        }
        (LieFamily::D, k) if k >= 3 => {
            let mut roots: Vec<_> = (0..k - 1)
                .map(|i| unit(k, &[(i, rat(1)), (i + 1, rat(-1))]))
                .collect();
            roots.push(unit(k, &[(k - 2, rat(1)), (k - 1, rat(1))]));
            Ok((k, roots))
        }
        (LieFamily::G, 2) => Ok((
            3,
            vec![
                unit(3, &[(0, rat(1)), (1, rat(-1))]),
                unit(3, &[(0, rat(-2)), (1, rat(1)), (2, rat(1))]),
            ],
        )),
        (LieFamily::F, 4) => Ok((
            4,
            vec![
                unit(4, &[(1, rat(1)), (2, rat(-1))]),
                unit(4, &[(2, rat(1)), (3, rat(-1))]),
                unit(4, &[(3, rat(1))]),
                vec![half(1), half(-1), half(-1), half(-1)],
            ],
        )),
        (LieFamily::E, k) if (6..=8).contains(&k) => {
            let mut roots = vec![
                vec![
                    half(1),
                    half(-1),
                    half(-1),
                    half(-1),
                    half(-1),
                    half(-1),
                    half(-1),
                    half(1),
                ],
                unit(8, &[(0, rat(1)), (1, rat(1))]),
            ];
            for i in 0..k - 2 {
                roots.push(unit(8, &[(i, rat(-1)), (i + 1, rat(1))]));
            }
            Ok((8, roots))
        }
        _ => Err(err()),
    }
}

/// Invert a square rational matrix by Gauss elimination. Entries stay tiny
/// for every supported Cartan matrix, so `i64` ratios are safe.
fn invert_rational(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    inv
}

impl RootSystem {
    /// Build the root system of the given family and rank.
    ///
    /// Supported: `A_k (k≥1)`, `B_k (k≥2)`, `C_k (k≥2)`, `D_k (k≥3)`, `G_2`,
    /// `F_4`, `E_6`, `E_7`, `E_8`. The last two construct fine but their Weyl
    /// groups are gated behind caps downstream.
    pub fn build(family: LieFamily, rank: usize) -> Result<RootSystem> {
        let (ambient_dim, simple_roots) = simple_roots_of(family, rank)?;

        // cartan[i][j] = 2(α_i, α_j)/(α_i, α_i)
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            let nii = dot(&simple_roots[i], &simple_roots[i]);
            for j in 0..rank {
                let v = rat(2) * dot(&simple_roots[i], &simple_roots[j]) / nii;
                assert!(v.is_integer(), "Cartan pairing must be integral");
                cartan[i][j] = v.to_integer();
            }
        }

        // Orbit closure over the simple reflections, in simple-root coordinates.
        let pair_simple = |c: &[i64], i: usize| -> i64 {
            (0..rank).map(|j| c[j] * cartan[i][j]).sum()
        };
        let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut c = vec![0i64; rank];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push(c);
        }
        while let Some(c) = queue.pop() {
            for i in 0..rank {
                let mut r = c.clone();
                r[i] -= pair_simple(&c, i);
                if seen.insert(r.clone()) {
                    queue.push(r);
                }
            }
        }

        let mut positive: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });

        let simple_norms: Vec<Rat> = simple_roots
            .iter()
            .map(|a| dot(a, a))
            .collect();
        let positive_roots = positive
            .into_iter()
            .map(|c| {
                let mut ambient = vec![rat(0); ambient_dim];
                for (j, &cj) in c.iter().enumerate() {
                    for (m, &x) in simple_roots[j].iter().enumerate() {
                        ambient[m] += rat(cj) * x;
                    }
                }
                let norm = dot(&ambient, &ambient);
                let coroot_coords: Vec<i64> = c
                    .iter()
                    .enumerate()
                    .map(|(j, &cj)| {
                        let v = rat(cj) * simple_norms[j] / norm;
                        assert!(v.is_integer(), "coroot coefficients must be integral");
                        v.to_integer()
                    })
                    .collect();
                let weight_coords: Vec<i64> = (0..rank)
                    .map(|m| (0..rank).map(|j| c[j] * cartan[m][j]).sum())
                    .collect();
                Root {
                    simple_coords: c,
                    ambient,
                    coroot_coords,
                    weight_coords,
                }
            })
            .collect::<Vec<_>>();

        // Fundamental weights inside the root span: solve cartan · t = e_i.
        let cart_rat: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        let inv = invert_rational(&cart_rat);
        let fundamental_weights: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                let mut w = vec![rat(0); ambient_dim];
                for m in 0..rank {
                    let t = inv[m][i];
                    for (x, &s) in w.iter_mut().zip(&simple_roots[m]) {
                        *x += t * s;
                    }
                }
                w
            })
            .collect();

        let rs = RootSystem {
            family,
            rank,
            ambient_dim,
            simple_roots,
            cartan,
            positive_roots,
            fundamental_weights,
        };
        debug_assert_eq!(
            rs.positive_roots.len(),
            rs.expected_positive_count(),
            "positive root count must match the classical value"
        );
        Ok(rs)
    }

    fn expected_positive_count(&self) -> usize {
        let k = self.rank;
        match self.family {
            LieFamily::A => k * (k + 1) / 2,
            LieFamily::B | LieFamily::C => k * k,
            LieFamily::D => k * (k - 1),
            LieFamily::G => 6,
            LieFamily::F => 24,
            LieFamily::E => match k {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }

    pub fn family(&self) -> LieFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[Vec<Rat>] {
        &self.simple_roots
    }

    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn fundamental_weight_ambient(&self, i: usize) -> &[Rat] {
        &self.fundamental_weights[i]
    }

    /// Index of the simple root `α_i` inside `positive_roots`.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|r| {
                r.simple_coords.iter().enumerate().all(|(j, &c)| c == (j == i) as i64)
            })
            .expect("simple roots are positive roots")
    }

    /// The Cartan pairing `⟨λ, β^∨⟩ = 2(λ,β)/(β,β)`, always an exact integer.
    pub fn pair(&self, lambda: &Weight, beta: &Root) -> i64 {
        lambda
            .coords
            .iter()
            .zip(&beta.coroot_coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let k = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            LieFamily::A => fact(k + 1),
            LieFamily::B | LieFamily::C => (1u128 << k) * fact(k),
            LieFamily::D => (1u128 << (k - 1)) * fact(k),
            LieFamily::G => 12,
            LieFamily::F => 1152,
            LieFamily::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Matrix of the simple reflection `s_i` on the weight lattice
    /// (row-major, acting on fundamental-weight coordinates).
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<i32> {
        let r = self.rank;
        let mut m = vec![0i32; r * r];
        for row in 0..r {
            for col in 0..r {
                let mut v = (row == col) as i64;
                if col == i {
                    v -= self.cartan[row][i];
                }
                m[row * r + col] = v as i32;
            }
        }
        m
    }

    /// Matrix of the reflection in an arbitrary root.
    pub fn reflection_matrix(&self, beta: &Root) -> Vec<i32> {
        let r = self.rank;
        let mut m = vec![0i32; r * r];
        for row in 0..r {
            for col in 0..r {
                let v = (row == col) as i64 - beta.coroot_coords[col] * beta.weight_coords[row];
                m[row * r + col] = i32::try_from(v).expect("reflection entry fits i32");
            }
        }
        m
    }

    /// Ambient realisation of an abstract weight.
    pub fn weight_ambient(&self, w: &Weight) -> Vec<Rat> {
        let mut v = vec![rat(0); self.ambient_dim];
        for (i, &a) in w.coords.iter().enumerate() {
            for (x, &f) in v.iter_mut().zip(&self.fundamental_weights[i]) {
                *x += rat(a) * f;
            }
        }
        v
    }

    /// Abstract weight of an ambient vector, when it lies in the weight
    /// lattice (pairs integrally with every simple coroot).
    pub fn weight_from_ambient(&self, v: &[Rat]) -> Option<Weight> {
        let mut coords = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let nii = dot(&self.simple_roots[i], &self.simple_roots[i]);
            let p = rat(2) * dot(v, &self.simple_roots[i]) / nii;
            if !p.is_integer() {
                return None;
            }
            coords.push(p.to_integer());
        }
        Some(Weight { coords })
    }
}

fn mat_mul(a: &[i32], b: &[i32], r: usize) -> Vec<i32> {
    let mut out = vec![0i32; r * r];
    for i in 0..r {
        for l in 0..r {
            let ail = a[i * r + l];
            if ail == 0 {
                continue;
            }
            for j in 0..r {
                let v = out[i * r + j] as i64 + ail as i64 * b[l * r + j] as i64;
                out[i * r + j] = i32::try_from(v).expect("matrix entry fits i32");
            }
        }
    }
    out
}

fn identity_matrix(r: usize) -> Vec<i32> {
    let mut m = vec![0i32; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

/// One Weyl group element: its action on the weight lattice, its length, and
/// one reduced word (the lexicographically smallest, 0-based letters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Box<[i32]>,
    length: u32,
    word: Box<[u8]>,
}

impl WeylElement {
    pub fn length(&self) -> u32 {
        self.length
    }

    /// Lexicographically smallest reduced word, 0-based simple-root indices.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn matrix(&self) -> &[i32] {
        &self.matrix
    }

    /// Apply the element to a weight.
    pub fn apply(&self, w: &Weight, rank: usize) -> Weight {
        let mut coords = vec![0i64; rank];
        for (row, c) in coords.iter_mut().enumerate() {
            for col in 0..rank {
                *c += self.matrix[row * rank + col] as i64 * w.coords[col];
            }
        }
        Weight { coords }
    }
}

/// A fully enumerated Weyl group.
///
/// Elements are indexed in breadth-first order (by length, then by reduced
/// word), which makes indices deterministic across runs.
#[derive(Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    index: HashMap<Box<[i32]>, u32>,
    by_length: Vec<Vec<u32>>,
    generators: Vec<Vec<i32>>,
}

impl WeylGroup {
    /// Enumerate the full Weyl group, refusing when the classical order
    /// exceeds `cap`.
    pub fn enumerate(rs: &RootSystem, cap: u128) -> Result<WeylGroup> {
        let order = rs.weyl_order();
        if order > cap {
            return Err(Error::GroupTooLarge { order, cap });
        }
        let r = rs.rank();
        let generators: Vec<Vec<i32>> = (0..r).map(|i| rs.simple_reflection_matrix(i)).collect();

        let mut elements: Vec<WeylElement> = Vec::with_capacity(order as usize);
        let mut index: HashMap<Box<[i32]>, u32> = HashMap::with_capacity(order as usize);
        let mut by_length: Vec<Vec<u32>> = vec![vec![0]];

        let id = WeylElement {
            matrix: identity_matrix(r).into_boxed_slice(),
            length: 0,
            word: Box::new([]),
        };
        index.insert(id.matrix.clone(), 0);
        elements.push(id);

        let mut frontier: Vec<u32> = vec![0];
        let mut length = 0u32;
        while !frontier.is_empty() {
            length += 1;
            let mut next: Vec<u32> = Vec::new();
            for &pi in &frontier {
                let (pmat, pword) = {
                    let p = &elements[pi as usize];
                    (p.matrix.clone(), p.word.clone())
                };
                for (g, gm) in generators.iter().enumerate() {
                    let m = mat_mul(&pmat, gm, r).into_boxed_slice();
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut word = Vec::with_capacity(pword.len() + 1);
                    word.extend_from_slice(&pword);
                    word.push(g as u8);
                    let idx = elements.len() as u32;
                    index.insert(m.clone(), idx);
                    elements.push(WeylElement {
                        matrix: m,
                        length,
                        word: word.into_boxed_slice(),
                    });
                    next.push(idx);
                }
            }
            if !next.is_empty() {
                by_length.push(next.clone());
            }
            frontier = next;
        }

        debug_assert_eq!(elements.len() as u128, order);
        Ok(WeylGroup {
            rs: rs.clone(),
            elements,
            index,
            by_length,
            generators,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: u32) -> &WeylElement {
        &self.elements[idx as usize]
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    /// Indices of all elements of the given length.
    pub fn indices_of_length(&self, l: usize) -> &[u32] {
        self.by_length.get(l).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }

    pub fn index_of_matrix(&self, m: &[i32]) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple_reflection(&self, i: usize) -> u32 {
        self.index[&self.generators[i].clone().into_boxed_slice()]
    }

    /// The longest element; its length equals the number of positive roots.
    pub fn longest(&self) -> u32 {
        debug_assert_eq!(self.by_length.last().unwrap().len(), 1);
        self.by_length.last().unwrap()[0]
    }

    /// Right-multiply an element by the reflection in a positive root.
    pub fn mul_reflection(&self, w: u32, beta: &Root) -> u32 {
        let r = self.rs.rank();
        let sm = self.rs.reflection_matrix(beta);
        let m = mat_mul(self.elements[w as usize].matrix(), &sm, r);
        self.index[&m.into_boxed_slice()]
    }

    /// Right-multiply by a simple reflection.
    pub fn mul_simple(&self, w: u32, i: usize) -> u32 {
        let r = self.rs.rank();
        let m = mat_mul(self.elements[w as usize].matrix(), &self.generators[i], r);
        self.index[&m.into_boxed_slice()]
    }

    /// Bruhat covers of `w` from above: all pairs `(β, w·s_β)` with
    /// `ℓ(w·s_β) = ℓ(w) + 1`, ordered by the root index.
    pub fn covers_up(&self, w: u32) -> Vec<(usize, u32)> {
        let lw = self.elements[w as usize].length;
        let mut out = Vec::new();
        for (ri, beta) in self.rs.positive_roots().iter().enumerate() {
            let v = self.mul_reflection(w, beta);
            if self.elements[v as usize].length == lw + 1 {
                out.push((ri, v));
            }
        }
        out
    }

    /// Number of positive roots sent negative; equals the length.
    pub fn inversion_count(&self, w: u32) -> usize {
        let rank = self.rs.rank();
        let el = &self.elements[w as usize];
        let positives: std::collections::HashSet<&[i64]> = self
            .rs
            .positive_roots()
            .iter()
            .map(|r| r.weight_coords())
            .collect();
        self.rs
            .positive_roots()
            .iter()
            .filter(|beta| {
                let img = el.apply(&beta.as_weight(), rank);
                !positives.contains(img.coords())
            })
            .count()
    }

    /// For type A only: the element as a permutation of `{0, …, rank}` in
    /// one-line notation, acting on the coordinates `e_1, …, e_{rank+1}`.
    pub fn permutation_of(&self, w: u32) -> Option<Vec<usize>> {
        if self.rs.family() != LieFamily::A {
            return None;
        }
        let rank = self.rs.rank();
        let k = rank + 1;
        // ω-coordinates of e_i modulo the diagonal line
        let coord = |i: usize| -> Vec<i64> {
            (0..rank)
                .map(|j| (j == i) as i64 - (j + 1 == i) as i64)
                .collect()
        };
        let images: HashMap<Vec<i64>, usize> = (0..k).map(|i| (coord(i), i)).collect();
        let el = &self.elements[w as usize];
        let mut perm = vec![0usize; k];
        for (i, p) in perm.iter_mut().enumerate() {
            let img = el.apply(&Weight::new(coord(i)), rank);
            *p = *images.get(img.coords())?;
        }
        Some(perm)
    }

    /// Find the element with the given permutation (type A only).
    pub fn element_of_permutation(&self, perm: &[usize]) -> Option<u32> {
        (0..self.order() as u32).find(|&i| self.permutation_of(i).as_deref() == Some(perm))
    }
}

/// Connected components of the sub-Dynkin-diagram spanned by a subset of
/// simple roots, each classified by shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviComponent {
    /// 0-based simple-root indices in the component.
    pub nodes: Vec<usize>,
    /// Shape of the component as an abstract diagram.
    pub shape: DiagramShape,
}

/// Abstract isomorphism type of a connected Dynkin diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramShape {
    A(usize),
    BC(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl DiagramShape {
    pub fn weyl_order(self) -> u128 {
        let fact = |n: u128| (1..=n).product::<u128>();
        match self {
            DiagramShape::A(k) => fact(k as u128 + 1),
            DiagramShape::BC(k) => (1u128 << k) * fact(k as u128),
            DiagramShape::D(k) => (1u128 << (k - 1)) * fact(k as u128),
            DiagramShape::E(6) => 51_840,
            DiagramShape::E(7) => 2_903_040,
            DiagramShape::E(_) => 696_729_600,
            DiagramShape::F4 => 1152,
            DiagramShape::G2 => 12,
        }
    }

    pub fn is_type_a(self) -> bool {
        matches!(self, DiagramShape::A(_))
    }
}

/// Validate a parabolic subset: 0-based, sorted, distinct, inside the rank.
pub fn validate_parabolic(rs: &RootSystem, subset: &[usize]) -> Result<Vec<usize>> {
    let mut s: Vec<usize> = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != subset.len() {
        return Err(Error::InvalidParabolic("duplicate indices".into()));
    }
    if let Some(&bad) = s.iter().find(|&&i| i >= rs.rank()) {
        return Err(Error::InvalidParabolic(format!(
            "index {} out of range for rank {}",
            bad + 1,
            rs.rank()
        )));
    }
    Ok(s)
}

/// Decompose a parabolic subset into connected components and classify each.
pub fn levi_components(rs: &RootSystem, subset: &[usize]) -> Result<Vec<LeviComponent>> {
    let subset = validate_parabolic(rs, subset)?;
    let cartan = rs.cartan();
    let bond = |i: usize, j: usize| -> usize { (cartan[i][j] * cartan[j][i]) as usize };

    // Union-find over the subset.
    let mut comp: HashMap<usize, usize> = subset.iter().map(|&i| (i, i)).collect();
    fn find(comp: &mut HashMap<usize, usize>, i: usize) -> usize {
        let mut root = i;
        while comp[&root] != root {
            root = comp[&root];
        }
        let mut cur = i;
        while comp[&cur] != root {
            let next = comp[&cur];
            comp.insert(cur, root);
            cur = next;
        }
        root
    }
    for (a_pos, &a) in subset.iter().enumerate() {
        for &b in &subset[a_pos + 1..] {
            if bond(a, b) > 0 {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp.insert(ra, rb);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for &i in &subset {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<LeviComponent> = groups
        .into_values()
        .map(|mut nodes| {
            nodes.sort_unstable();
            let shape = classify_component(&nodes, &bond);
            LeviComponent { nodes, shape }
        })
        .collect();
    out.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    Ok(out)
}

fn classify_component(nodes: &[usize], bond: &dyn Fn(usize, usize) -> usize) -> DiagramShape {
    let n = nodes.len();
    if n == 1 {
        return DiagramShape::A(1);
    }
    let edges: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .filter_map(|(a, b)| {
            let m = bond(nodes[a], nodes[b]);
            (m > 0).then_some((a, b, m))
        })
        .collect();
    if edges.iter().any(|&(_, _, m)| m == 3) {
        return DiagramShape::G2;
    }
    let mut deg = vec![0usize; n];
    for &(a, b, _) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    if let Some(center) = (0..n).find(|&i| deg[i] == 3) {
        // A fork: D for branch lengths (1,1,m), E for (1,2,m).
        let mut branch_lengths: Vec<usize> = Vec::new();
        for &(a, b, _) in &edges {
            for (start, other) in [(a, b), (b, a)] {
                if other == center {
                    // walk away from the center
                    let mut len = 1;
                    let mut prev = center;
                    let mut cur = start;
                    loop {
                        let next = edges
                            .iter()
                            .filter_map(|&(x, y, _)| {
                                if x == cur && y != prev {
                                    Some(y)
                                } else if y == cur && x != prev {
                                    Some(x)
                                } else {
                                    None
                                }
                            })
                            .next();
                        match next {
                            Some(nx) => {
                                len += 1;
                                prev = cur;
                                cur = nx;
                            }
                            None => break,
                        }
                    }
                    branch_lengths.push(len);
                }
            }
        }
        branch_lengths.sort_unstable();
        match branch_lengths.as_slice() {
            [1, 1, _] => return DiagramShape::D(n),
            [1, 2, _] => return DiagramShape::E(n),
            other => panic!("unexpected fork branches {other:?}"),
        }
    }
    // A chain. Find an endpoint and read off the bond positions.
    let start = (0..n).find(|&i| deg[i] == 1).expect("chain has an endpoint");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = edges
            .iter()
            .filter_map(|&(a, b, _)| {
                if a == cur && b != prev {
                    Some(b)
                } else if b == cur && a != prev {
                    Some(a)
                } else {
                    None
                }
            })
            .next()
            .expect("chain is connected");
        order.push(next);
        prev = cur;
        cur = next;
    }
    let bond_at = |a: usize, b: usize| -> usize {
        edges
            .iter()
            .find_map(|&(x, y, m)| ((x == a && y == b) || (x == b && y == a)).then_some(m))
            .unwrap_or(0)
    };
    let doubles: Vec<usize> = (0..n - 1)
        .filter(|&i| bond_at(order[i], order[i + 1]) == 2)
        .collect();
    match doubles.as_slice() {
        [] => DiagramShape::A(n),
        [p] if *p == 0 || *p == n - 2 => DiagramShape::BC(n),
        [_] if n == 4 => DiagramShape::F4,
        other => panic!("unexpected double bonds at {other:?}"),
    }
}
