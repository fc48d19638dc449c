//! The integral Schubert basis of `H*(K/T)` and multiplication by degree-2
//! classes.
//!
//! A class is a finite integer combination of Schubert classes `X_w`, all of
//! one length (the complex degree). The characteristic map sends a weight `λ`
//! to `Σ_i ⟨λ, α_i^∨⟩ X_{s_i}`, and multiplying by such a degree-2 class
//! follows the cover rule: `c(λ)·X_w = Σ ⟨λ, β^∨⟩ X_{w·s_β}` summed over the
//! Bruhat covers of `w`. That is the entire product structure this module
//! implements; it is exactly what the torsion-index computation consumes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rootsys::{RootSystem, Weight, WeylGroup};
use crate::{Error, Result};

/// A homogeneous integer combination of Schubert classes, indexed by element
/// indices of an enumerated Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertExpr {
    degree: u32,
    terms: BTreeMap<u32, BigInt>,
}

impl SchubertExpr {
    pub fn zero(degree: u32) -> Self {
        SchubertExpr {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Build an expression from explicit terms; zero coefficients are
    /// dropped.
    pub fn from_terms(degree: u32, terms: BTreeMap<u32, BigInt>) -> Self {
        SchubertExpr {
            degree,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<u32, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: u32) -> BigInt {
        self.terms.get(&w).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, w: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &SchubertExpr) -> Result<SchubertExpr> {
        if self.degree != other.degree {
            return Err(Error::NonHomogeneous);
        }
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.insert(w, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> SchubertExpr {
        if c.is_zero() {
            return SchubertExpr::zero(self.degree);
        }
        SchubertExpr {
            degree: self.degree,
            terms: self.terms.iter().map(|(&w, x)| (w, x * c)).collect(),
        }
    }
}

/// The Schubert basis of a full flag manifold: an enumerated Weyl group plus
/// a precomputed cover table, read-only after construction.
#[derive(Debug)]
pub struct SchubertRing {
    group: WeylGroup,
    /// For each element, its Bruhat covers from above as
    /// `(positive-root index, element index)` pairs.
    covers: Vec<Box<[(u32, u32)]>>,
}

impl SchubertRing {
    pub fn new(group: WeylGroup) -> Self {
        let covers = (0..group.order() as u32)
            .map(|w| {
                group
                    .covers_up(w)
                    .into_iter()
                    .map(|(ri, v)| (ri as u32, v))
                    .collect::<Vec<_>>()
                    .into_boxed_slice()
            })
            .collect();
        SchubertRing { group, covers }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    /// Complex dimension of the full flag manifold; the top degree.
    pub fn top_degree(&self) -> u32 {
        self.root_system().num_positive_roots() as u32
    }

    pub fn covers_of(&self, w: u32) -> &[(u32, u32)] {
        &self.covers[w as usize]
    }

    /// The class of the identity, `X_e = 1`.
    pub fn unit(&self) -> SchubertExpr {
        let mut e = SchubertExpr::zero(0);
        e.insert(self.group.identity_index(), BigInt::from(1));
        e
    }

    /// Image of a weight under the characteristic map:
    /// `c(λ) = Σ_i ⟨λ, α_i^∨⟩ X_{s_i}` in degree 1.
    pub fn weight_class(&self, lambda: &Weight) -> SchubertExpr {
        let mut e = SchubertExpr::zero(1);
        for i in 0..self.root_system().rank() {
            let c = lambda.coords()[i];
            if c != 0 {
                e.insert(self.group.simple_reflection(i), BigInt::from(c));
            }
        }
        e
    }

    /// Multiply by the degree-2 class of `λ` via the cover rule. The degree
    /// rises by exactly one; multiplying a top-degree class is an error.
    pub fn chevalley_mul(&self, lambda: &Weight, e: &SchubertExpr) -> Result<SchubertExpr> {
        if e.degree >= self.top_degree() {
            return Err(Error::TopDegreeExceeded {
                degree: e.degree as usize,
                top: self.top_degree() as usize,
            });
        }
        let roots = self.root_system().positive_roots();
        let mut out = SchubertExpr::zero(e.degree + 1);
        for (&w, c) in &e.terms {
            for &(ri, v) in self.covers[w as usize].iter() {
                let pairing = self.root_system().pair(lambda, &roots[ri as usize]);
                if pairing != 0 {
                    out.insert(v, c * BigInt::from(pairing));
                }
            }
        }
        Ok(out)
    }

    /// Product of the degree-2 classes of the listed weights, starting from
    /// `X_e`. The result does not depend on the order of the list.
    pub fn monomial_class(&self, weights: &[Weight]) -> Result<SchubertExpr> {
        if weights.len() > self.top_degree() as usize {
            return Err(Error::TopDegreeExceeded {
                degree: weights.len(),
                top: self.top_degree() as usize,
            });
        }
        let mut e = self.unit();
        for lambda in weights {
            e = self.chevalley_mul(lambda, &e)?;
        }
        Ok(e)
    }

    /// Coefficient of `X_{w₀}` of a top-degree class.
    pub fn top_coefficient(&self, e: &SchubertExpr) -> Result<BigInt> {
        if e.degree != self.top_degree() {
            return Err(Error::NonHomogeneous);
        }
        Ok(e.coeff(self.group.longest()))
    }

    /// Render as a list of `(reduced word, coefficient)` pairs with 1-based
    /// letters, in element-index order.
    pub fn rendered_terms(&self, e: &SchubertExpr) -> Vec<(Vec<u8>, BigInt)> {
        e.terms
            .iter()
            .map(|(&w, c)| {
                let word: Vec<u8> = self
                    .group
                    .element(w)
                    .word()
                    .iter()
                    .map(|&i| i + 1)
                    .collect();
                (word, c.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring;
    use crate::rootsys::{LieFamily, RootSystem, WeylGroup, DEFAULT_WEYL_CAP};

    fn ring(f: LieFamily, k: usize) -> SchubertRing {
        let rs = RootSystem::build(f, k).unwrap();
        SchubertRing::new(WeylGroup::enumerate(&rs, DEFAULT_WEYL_CAP).unwrap())
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn weight_class_of_fundamental_weights() {
        let r = ring(LieFamily::C, 2);
        for i in 0..2 {
            let e = r.weight_class(&Weight::fundamental(2, i));
            assert_eq!(e.terms().len(), 1);
            assert_eq!(e.coeff(r.group().simple_reflection(i)), bi(1));
        }
        // C2: 2e1 = 2ω1 ↦ 2·X_{s1}
        let e = r.weight_class(&Weight::new(vec![2, 0]));
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coeff(r.group().simple_reflection(0)), bi(2));
        // zero weight ↦ zero class
        assert!(r.weight_class(&Weight::zero(2)).is_zero());
    }

    #[test]
    fn chevalley_on_unit_is_weight_class() {
        let r = ring(LieFamily::B, 3);
        for i in 0..3 {
            let lam = Weight::fundamental(3, i);
            let via_mul = r.chevalley_mul(&lam, &r.unit()).unwrap();
            assert_eq!(via_mul, r.weight_class(&lam));
        }
    }

    #[test]
    fn a1_squares_to_top() {
        let r = ring(LieFamily::A, 1);
        let w1 = Weight::fundamental(1, 0);
        // ω1·X_e = X_{s1} = X_{w0}
        let once = r.chevalley_mul(&w1, &r.unit()).unwrap();
        assert_eq!(once.coeff(r.group().longest()), bi(1));
        // the full-length product (ω1, ω1) hits the top with coefficient 2:
        // ⟨ω1, α1^∨⟩ = 1 on the first step, then the cover w0 is unreachable…
        let twice = r.monomial_class(&[w1.clone(), w1.clone()]);
        // degree 2 > top degree 1
        assert!(matches!(twice, Err(Error::TopDegreeExceeded { .. })));
    }

    #[test]
    fn a2_chevalley_matches_schubert_product() {
        // ω1 · X_{s1} = X_{s2 s1}, i.e. 𝔖_{s1}² = 𝔖_{312} = x1²
        let r = ring(LieFamily::A, 2);
        let s1 = r.group().simple_reflection(0);
        let mut start = SchubertExpr::zero(1);
        start.insert(s1, bi(1));
        let prod = r.chevalley_mul(&Weight::fundamental(2, 0), &start).unwrap();
        assert_eq!(prod.terms().len(), 1);
        let (&idx, c) = prod.terms().iter().next().unwrap();
        assert_eq!(c, &bi(1));
        assert_eq!(r.group().permutation_of(idx).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn monomial_class_of_empty_list_is_unit() {
        let r = ring(LieFamily::A, 2);
        assert_eq!(r.monomial_class(&[]).unwrap(), r.unit());
    }

    #[test]
    fn monomial_class_is_order_independent() {
        let r = ring(LieFamily::C, 2);
        let a = Weight::new(vec![1, 0]);
        let b = Weight::new(vec![-1, 2]);
        let c = Weight::new(vec![2, 1]);
        let p1 = r.monomial_class(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let p2 = r.monomial_class(&[c, a, b]).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn chevalley_commutes() {
        for (f, k) in [(LieFamily::A, 2), (LieFamily::C, 2), (LieFamily::G, 2)] {
            let r = ring(f, k);
            let lams: Vec<Weight> = (0..k).map(|i| Weight::fundamental(k, i)).collect();
            let mut exprs = vec![r.unit()];
            for _ in 0..r.top_degree() - 1 {
                let mut next = Vec::new();
                for e in &exprs {
                    for l in &lams {
                        next.push(r.chevalley_mul(l, e).unwrap());
                    }
                }
                for e in &exprs {
                    for a in &lams {
                        for b in &lams {
                            let ab = r
                                .chevalley_mul(a, &r.chevalley_mul(b, e).unwrap())
                                .unwrap();
                            let ba = r
                                .chevalley_mul(b, &r.chevalley_mul(a, e).unwrap())
                                .unwrap();
                            assert_eq!(ab, ba);
                        }
                    }
                }
                exprs = next;
            }
        }
    }

    #[test]
    fn grading_and_top_multiple() {
        let r = ring(LieFamily::C, 2);
        let n = r.top_degree() as usize;
        // degree equals the number of multiplied weights
        let lam = Weight::new(vec![1, 1]);
        let mut e = r.unit();
        for d in 1..=n {
            e = r.chevalley_mul(&lam, &e).unwrap();
            assert_eq!(e.degree() as usize, d);
        }
        // any full-length product is a multiple of X_{w0}
        assert!(e.terms().len() <= 1);
        assert!(e.terms().keys().all(|&w| w == r.group().longest()));
    }

    #[test]
    fn c2_tangent_weights_product_is_euler_characteristic() {
        // The product of the degree-2 classes of all four positive roots of
        // C2 is |W| · X_{w0} = 8 · X_{w0}.
        let r = ring(LieFamily::C, 2);
        let weights: Vec<Weight> = r
            .root_system()
            .positive_roots()
            .iter()
            .map(|root| root.as_weight())
            .collect();
        let top = r.monomial_class(&weights).unwrap();
        assert_eq!(r.top_coefficient(&top).unwrap(), bi(8));
    }

    #[test]
    fn type_a_oracle_equivalence_s3() {
        // Every product of ≤ 3 degree-2 classes in A2 agrees with the
        // polynomial route: multiply Schubert polynomials, reduce against the
        // symmetric ideal, re-expand in the Schubert basis.
        let r = ring(LieFamily::A, 2);
        let k = 3usize;
        let fundamentals: Vec<Weight> = (0..2).map(|i| Weight::fundamental(2, i)).collect();
        let mut stack: Vec<(Vec<usize>, SchubertExpr, polyring::IntPoly)> = vec![(
            vec![],
            r.unit(),
            polyring::IntPoly::one(polyring::x_vars(k)),
        )];
        while let Some((gens, expr, poly)) = stack.pop() {
            // compare
            let expansion = polyring::expand_in_schubert_basis(&poly).unwrap();
            let mut from_chevalley: std::collections::BTreeMap<Vec<usize>, BigInt> =
                Default::default();
            for (&w, c) in expr.terms() {
                from_chevalley.insert(r.group().permutation_of(w).unwrap(), c.clone());
            }
            assert_eq!(expansion, from_chevalley, "generators {gens:?}");
            if gens.len() < 3 {
                for (i, lam) in fundamentals.iter().enumerate() {
                    let mut g = gens.clone();
                    g.push(i);
                    let e2 = r.chevalley_mul(lam, &expr).unwrap();
                    let si = vec![if i == 0 { 1 } else { 0 }, if i == 0 { 0 } else { 2 }, if i == 0 { 2 } else { 1 }];
                    let p2 = poly
                        .mul(&polyring::schubert_poly_of_perm(&si))
                        .unwrap();
                    stack.push((g, e2, p2));
                }
            }
        }
    }
}
