//! The integral cohomology ring of `Sp(k)/U(k)` and its mod-2 Steenrod
//! square.
//!
//! The ring is `ℤ[c1..ck]` modulo the ideal generated by the elementary
//! symmetric functions of the squared variables; a ℤ-basis is given by the
//! squarefree monomials `c_S = ∏_{i∈S} c_i` over subsets `S ⊆ {1..k}`, of
//! cohomological degree `2·Σ_{i∈S} i`. Reduction to that basis rewrites
//!
//! ```text
//! c_j² → 2·Σ_{i≥1} (−1)^{i+1} c_{j−i} c_{j+i}        (c_0 = 1, c_m = 0 for m > k)
//! ```
//!
//! which terminates because each step strictly increases the spread
//! `Σ j²·exp_j` at fixed weight. `Sq²` acts on generators by
//! `Sq²(c_i) = c_1 c_i + (2i−1)(i−1) c_{i+1}` and extends through the Cartan
//! rule; the square of any generator is even, so mod 2 every non-squarefree
//! monomial dies, which is what makes the formulas below close up.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::polyring::{c_vars, IntPoly};
use crate::{Error, Result};

/// An element of `H*(Sp(k)/U(k))` in the squarefree-monomial basis.
/// Subsets are stored as bitmasks over `{0, …, k−1}` (bit `i` = generator
/// `c_{i+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagElement {
    k: usize,
    terms: BTreeMap<u32, BigInt>,
}

/// Half the cohomological degree of a basis subset: `Σ_{i∈S} i` (1-based).
pub fn mask_weight(mask: u32) -> u32 {
    (0..32)
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| i + 1)
        .sum()
}

impl LagElement {
    pub fn zero(k: usize) -> Self {
        LagElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        let mut e = LagElement::zero(k);
        e.terms.insert(0, BigInt::one());
        e
    }

    pub fn basis(k: usize, mask: u32) -> Self {
        debug_assert!(mask < (1 << k));
        let mut e = LagElement::zero(k);
        e.terms.insert(mask, BigInt::one());
        e
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<u32, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> BigInt {
        self.terms.get(&mask).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, mask: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LagElement) -> Result<LagElement> {
        self.check_k(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.insert(m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> LagElement {
        if c.is_zero() {
            return LagElement::zero(self.k);
        }
        LagElement {
            k: self.k,
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    fn check_k(&self, other: &LagElement) -> Result<()> {
        if self.k != other.k {
            return Err(Error::NamespaceMismatch(format!(
                "rank {} vs {}",
                self.k, other.k
            )));
        }
        Ok(())
    }

    /// Whether all terms share one weight; returns it (empty = any).
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&m| mask_weight(m));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Reduction mod 2.
    pub fn mod2(&self) -> LagElementMod2 {
        LagElementMod2 {
            k: self.k,
            masks: self
                .terms
                .iter()
                .filter(|(_, c)| c.is_odd())
                .map(|(&m, _)| m)
                .collect(),
        }
    }

    /// The element as a polynomial in `c1..ck`.
    pub fn to_poly(&self) -> IntPoly {
        let mut p = IntPoly::zero(c_vars(self.k));
        for (&mask, c) in &self.terms {
            let exps: Vec<u32> = (0..self.k)
                .map(|i| ((mask >> i) & 1) as u32)
                .collect();
            p = p
                .add(&IntPoly::monomial(c_vars(self.k), exps, c.clone()))
                .expect("same namespace");
        }
        p
    }
}

trait BigIntOdd {
    fn is_odd(&self) -> bool;
}

impl BigIntOdd for BigInt {
    fn is_odd(&self) -> bool {
        !(self % 2u8).is_zero()
    }
}

/// One applied rewrite `c_j² → 2Σ(−1)^{i+1}c_{j−i}c_{j+i}` in a reduction
/// trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    /// 1-based index of the squared generator that was eliminated.
    pub generator: usize,
    /// Exponent vector over `c1..ck` the rewrite was applied to.
    pub monomial: Vec<u32>,
}

/// Rewrite a polynomial in the generators into the squarefree basis,
/// returning the normal form together with the list of applied rewrites.
pub fn normal_form_traced(p: &IntPoly, k: usize) -> Result<(LagElement, Vec<RewriteStep>)> {
    if p.vars() != c_vars(k) {
        return Err(Error::NamespaceMismatch(format!(
            "expected namespace c1..c{k}"
        )));
    }
    let mut pending: BTreeMap<Vec<u32>, BigInt> = p.terms().clone();
    let mut out = LagElement::zero(k);
    let mut trace = Vec::new();
    while let Some((exps, coeff)) = pending.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        match exps.iter().position(|&e| e >= 2) {
            None => {
                let mask: u32 = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e == 1)
                    .map(|(i, _)| 1u32 << i)
                    .sum();
                out.insert(mask, coeff);
            }
            Some(j0) => {
                let j = j0 + 1; // 1-based generator index
                trace.push(RewriteStep {
                    generator: j,
                    monomial: exps.clone(),
                });
                let mut base = exps.clone();
                base[j0] -= 2;
                for i in 1..=j.min(k - j) {
                    let mut e = base.clone();
                    if j - i >= 1 {
                        e[j - i - 1] += 1;
                    }
                    e[j + i - 1] += 1;
                    let sign = if i % 2 == 1 { 2 } else { -2 };
                    let c = &coeff * BigInt::from(sign);
                    use std::collections::btree_map::Entry;
                    match pending.entry(e) {
                        Entry::Vacant(v) => {
                            v.insert(c);
                        }
                        Entry::Occupied(mut o) => {
                            *o.get_mut() += c;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((out, trace))
}

/// Normal form without the trace.
pub fn normal_form(p: &IntPoly, k: usize) -> Result<LagElement> {
    normal_form_traced(p, k).map(|(e, _)| e)
}

/// Product in the ring: multiply the subset monomials and reduce.
pub fn multiply(a: &LagElement, b: &LagElement) -> Result<LagElement> {
    a.check_k(b)?;
    let k = a.k;
    let mut prod = IntPoly::zero(c_vars(k));
    for (&ma, ca) in &a.terms {
        for (&mb, cb) in &b.terms {
            let exps: Vec<u32> = (0..k)
                .map(|i| ((ma >> i) & 1) as u32 + ((mb >> i) & 1) as u32)
                .collect();
            prod = prod
                .add(&IntPoly::monomial(c_vars(k), exps, ca * cb))
                .expect("same namespace");
        }
    }
    normal_form(&prod, k)
}

/// The three distinguished generators: the top class `c1⋯ck`, the subtop
/// class `c2⋯ck`, and the degree-2 class `c1` (labelled `u_one` downstream;
/// the odd subscript is the source convention for an even-degree class).
pub fn generators(k: usize) -> (LagElement, LagElement, LagElement) {
    let full: u32 = (1 << k) - 1;
    let subtop: u32 = full & !1;
    (
        LagElement::basis(k, full),
        LagElement::basis(k, subtop),
        LagElement::basis(k, 1),
    )
}

/// Rank of the degree-`2d` component: squarefree subsets of weight `d`,
/// i.e. strict partitions of `d` with parts ≤ k.
pub fn degree_rank(k: usize, d: u32) -> usize {
    (0u32..(1 << k)).filter(|&m| mask_weight(m) == d).count()
}

// ---------------------------------------------------------------------------
// Mod 2

/// An element of `H*(Sp(k)/U(k); ℤ/2)`; the set holds the basis monomials
/// with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagElementMod2 {
    k: usize,
    masks: BTreeSet<u32>,
}

impl LagElementMod2 {
    pub fn zero(k: usize) -> Self {
        LagElementMod2 {
            k,
            masks: BTreeSet::new(),
        }
    }

    pub fn basis(k: usize, mask: u32) -> Self {
        let mut e = LagElementMod2::zero(k);
        e.masks.insert(mask);
        e
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn masks(&self) -> &BTreeSet<u32> {
        &self.masks
    }

    pub fn is_zero(&self) -> bool {
        self.masks.is_empty()
    }

    fn toggle(&mut self, mask: u32) {
        if !self.masks.remove(&mask) {
            self.masks.insert(mask);
        }
    }

    pub fn add(&self, other: &LagElementMod2) -> LagElementMod2 {
        let mut out = self.clone();
        for &m in &other.masks {
            out.toggle(m);
        }
        out
    }

    /// Ring product; a repeated generator squares to zero mod 2.
    pub fn mul(&self, other: &LagElementMod2) -> LagElementMod2 {
        let mut out = LagElementMod2::zero(self.k);
        for &a in &self.masks {
            for &b in &other.masks {
                if a & b == 0 {
                    let union = a | b;
                    if union < (1 << self.k) {
                        out.toggle(union);
                    }
                } // else: some c_j² ≡ 0 mod 2
            }
        }
        out
    }

    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.masks.iter().map(|&m| mask_weight(m));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

/// The truncated total square `(Sq⁰, Sq¹, Sq²)` of an element. `Sq¹` vanishes
/// identically here (the ring is concentrated in even degrees) but is carried
/// so that the Cartan rule below is the literal one.
#[derive(Debug, Clone)]
struct TotalSq {
    s0: LagElementMod2,
    s1: LagElementMod2,
    s2: LagElementMod2,
}

impl TotalSq {
    fn of_generator(k: usize, i: usize) -> TotalSq {
        // Sq²(c_i) = c_1·c_i + (2i−1)(i−1)·c_{i+1}
        let ci = LagElementMod2::basis(k, 1 << (i - 1));
        let c1 = LagElementMod2::basis(k, 1);
        let mut s2 = c1.mul(&ci);
        let wu = (2 * i - 1) * (i - 1);
        if wu % 2 == 1 && i + 1 <= k {
            s2 = s2.add(&LagElementMod2::basis(k, 1 << i));
        }
        TotalSq {
            s0: ci,
            s1: LagElementMod2::zero(k),
            s2,
        }
    }

    fn one(k: usize) -> TotalSq {
        TotalSq {
            s0: LagElementMod2::basis(k, 0),
            s1: LagElementMod2::zero(k),
            s2: LagElementMod2::zero(k),
        }
    }

    /// Cartan rule: `Sqⁿ(ab) = Σ Sqⁱ(a)·Sqⁿ⁻ⁱ(b)`.
    fn mul(&self, other: &TotalSq) -> TotalSq {
        TotalSq {
            s0: self.s0.mul(&other.s0),
            s1: self.s0.mul(&other.s1).add(&self.s1.mul(&other.s0)),
            s2: self
                .s0
                .mul(&other.s2)
                .add(&self.s1.mul(&other.s1))
                .add(&self.s2.mul(&other.s0)),
        }
    }
}

/// `Sq²` on a homogeneous mod-2 element: additive in the basis, Cartan
/// multiplicative over each basis monomial's generators.
pub fn sq2(e: &LagElementMod2) -> Result<LagElementMod2> {
    if !e.is_zero() && e.homogeneous_weight().is_none() {
        return Err(Error::NonHomogeneous);
    }
    let k = e.k;
    let mut out = LagElementMod2::zero(k);
    for &mask in &e.masks {
        let mut total = TotalSq::one(k);
        for i in 1..=k {
            if mask & (1 << (i - 1)) != 0 {
                total = total.mul(&TotalSq::of_generator(k, i));
            }
        }
        debug_assert!(total.s1.is_zero());
        out = out.add(&total.s2);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Spin constraint

/// Symbolic derivation of the spin constraint for a bundle representing the
/// base point in `Sp(k)/U(k)`, `k ≡ 2 mod 4`: writing `c1(ξ) = a·u_one` and
/// `c_{n−1}(ξ) = b·u_subtop` with `c_n(ξ) = ±u_top`, the Wu relation forces
/// `b(a+1) ≡ 1 mod 2`, hence `a ≡ 0 mod 2` — the bundle is spin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinConstraint {
    pub k: usize,
    /// Complex dimension `n = k(k+1)/2` (odd under the hypothesis).
    pub n: usize,
    /// `Sq²(u_subtop)` equals this multiple of `u_top` mod 2 (always 1 here).
    pub sq2_subtop_coeff: u8,
    /// Solutions `(a, b)` of `b = ab + 1` over GF(2).
    pub gf2_solutions: Vec<(u8, u8)>,
    /// The forced parity of the `u_one`-coefficient `a`.
    pub c1_parity: u8,
    /// Human-readable derivation, one entry per step.
    pub steps: Vec<String>,
}

pub fn spin_obstruction(k: usize) -> Result<SpinConstraint> {
    let n = k * (k + 1) / 2;
    if k % 4 != 2 {
        if n % 2 == 0 {
            return Err(Error::InvalidHypothesis("n even".into()));
        }
        return Err(Error::InvalidHypothesis(
            "k ≢ 2 mod 4, the Wu step degenerates".into(),
        ));
    }
    let mut steps = Vec::new();
    steps.push(format!("k = {k} ≡ 2 mod 4, so n = k(k+1)/2 = {n} is odd"));

    // Sq²(u_subtop) = (k−1)·u_top mod 2, recomputed from the generator rule.
    let (u_top, u_subtop, _) = generators(k);
    let s = sq2(&u_subtop.mod2())?;
    let expected_coeff = ((k - 1) % 2) as u8;
    let top_mask: u32 = (1 << k) - 1;
    let got: u8 = u8::from(s.masks().contains(&top_mask));
    if s.masks().len() > usize::from(got != 0) || got != expected_coeff || got != 1 {
        return Err(Error::InternalInconsistency(format!(
            "Sq²(u_subtop) must equal (k−1)·u_top mod 2, got {s:?}"
        )));
    }
    steps.push(format!(
        "Sq²(u_subtop) = (k−1)·u_top = {}·u_top ≡ u_top mod 2",
        k - 1
    ));
    drop(u_top);

    steps.push(format!(
        "Wu: Sq²(c_{}(ξ)) = c_1(ξ)c_{}(ξ) + (n−2)c_{n}(ξ) with n−2 = {} odd",
        n - 1,
        n - 1,
        n - 2
    ));
    steps.push("substitute c_1(ξ) = a·u_one, c_{n−1}(ξ) = b·u_subtop, c_n(ξ) = ±u_top".into());
    steps.push("b·u_top = (ab + 1)·u_top, so b(a+1) ≡ 1 mod 2".into());

    // Solve b(a+1) = 1 over GF(2) by enumeration.
    let solutions: Vec<(u8, u8)> = (0..2u8)
        .flat_map(|a| (0..2u8).map(move |b| (a, b)))
        .filter(|&(a, b)| b * (a + 1) % 2 == 1)
        .collect();
    let parities: BTreeSet<u8> = solutions.iter().map(|&(a, _)| a % 2).collect();
    if parities.len() != 1 || !parities.contains(&0) {
        return Err(Error::InternalInconsistency(
            "GF(2) solution set must force a ≡ 0".into(),
        ));
    }
    steps.push(format!(
        "solutions over GF(2): {solutions:?}; hence a ≡ 0 mod 2 and the bundle is spin"
    ));

    Ok(SpinConstraint {
        k,
        n,
        sq2_subtop_coeff: 1,
        gf2_solutions: solutions,
        c1_parity: 0,
        steps,
    })
}

// ---------------------------------------------------------------------------
// Rendering

impl fmt::Display for LagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending weight, then ascending subset
        let mut masks: Vec<u32> = self.terms.keys().copied().collect();
        masks.sort_by_key(|&m| (std::cmp::Reverse(mask_weight(m)), m));
        for (pos, mask) in masks.iter().enumerate() {
            let c = &self.terms[mask];
            let neg = c.is_negative();
            let abs = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let subset: Vec<String> = (0..self.k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| (i + 1).to_string())
                .collect();
            if subset.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "c{{{}}}", subset.join(","))?;
            } else {
                write!(f, "{}*c{{{}}}", abs, subset.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LagElementMod2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.masks.is_empty() {
            return write!(f, "0");
        }
        let mut masks: Vec<u32> = self.masks.iter().copied().collect();
        masks.sort_by_key(|&m| (std::cmp::Reverse(mask_weight(m)), m));
        let rendered: Vec<String> = masks
            .iter()
            .map(|&mask| {
                let subset: Vec<String> = (0..self.k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| (i + 1).to_string())
                    .collect();
                if subset.is_empty() {
                    "1".to_string()
                } else {
                    format!("c{{{}}}", subset.join(","))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// JSON form: subset-coefficient list with decimal-string coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LagJson {
    pub k: usize,
    pub terms: Vec<LagTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LagTermJson {
    /// 1-based generator indices in the subset.
    pub subset: Vec<usize>,
    pub coeff: String,
}

impl LagElement {
    pub fn to_json(&self) -> LagJson {
        LagJson {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(&mask, c)| LagTermJson {
                    subset: (0..self.k).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}
