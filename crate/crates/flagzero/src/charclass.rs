//! Tangent-bundle root data, Chern classes of sums of line bundles over
//! `Sp(k)/U(k)`, Euler characteristics, and the explicit bundle whose top
//! Chern class generates the top cohomology.
//!
//! The tangent bundle of `K/H` splits into the line bundles of the positive
//! roots outside the Levi; over `Sp(k)/U(k)` those roots are
//! `{2x_i} ∪ {x_i + x_j}`, while the point-representing bundle uses
//! `{x_i} ∪ {x_i + x_j}`. Top Chern classes are computed by expanding the
//! product of linear forms, rewriting into the elementary symmetric
//! generators, and reducing in the squarefree basis; every reduction is
//! recorded as a replayable trace.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::lag_ring::{self, LagElement, LagJson, RewriteStep};
use crate::polyring::{c_vars, x_vars, IntPoly};
use crate::rootsys::{levi_components, validate_parabolic, LieFamily, RootSystem, Weight};
use crate::{Error, Result};

/// Ambient space of a sum of line bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SpaceDescriptor {
    /// A full flag manifold `K/T`; weights are in fundamental-weight
    /// coordinates.
    FullFlag { family: char, rank: usize },
    /// The Lagrangian Grassmannian `Sp(k)/U(k)`; weights are integer vectors
    /// over the ambient characters `x_1, …, x_k`.
    Lagrangian { k: usize },
}

/// A direct sum of line bundles, one weight vector per summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleSum {
    pub space: SpaceDescriptor,
    pub weights: Vec<Vec<i64>>,
}

impl LineBundleSum {
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    fn lagrangian_k(&self) -> Result<usize> {
        match self.space {
            SpaceDescriptor::Lagrangian { k } => {
                if let Some(w) = self.weights.iter().find(|w| w.len() != k) {
                    return Err(Error::InvalidParabolic(format!(
                        "weight vector {w:?} does not have {k} coordinates"
                    )));
                }
                Ok(k)
            }
            _ => Err(Error::InvalidParabolic(
                "bundle is not over a Lagrangian Grassmannian".into(),
            )),
        }
    }

    /// Whether the weight multiset is stable under all permutations of the
    /// `x` coordinates (checked on adjacent transpositions).
    pub fn is_w_invariant(&self) -> Result<bool> {
        let k = self.lagrangian_k()?;
        let mut sorted = self.weights.clone();
        sorted.sort();
        for t in 0..k.saturating_sub(1) {
            let mut permuted: Vec<Vec<i64>> = self
                .weights
                .iter()
                .map(|w| {
                    let mut w = w.clone();
                    w.swap(t, t + 1);
                    w
                })
                .collect();
            permuted.sort();
            if permuted != sorted {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Roots of `T(K/H)`: the positive roots outside the span of the parabolic
/// subset, as abstract weights.
pub fn tangent_roots(rs: &RootSystem, parabolic: &[usize]) -> Result<Vec<Weight>> {
    let subset = validate_parabolic(rs, parabolic)?;
    let inside = |root: &crate::rootsys::Root| {
        root.simple_coords()
            .iter()
            .enumerate()
            .all(|(j, &c)| c == 0 || subset.contains(&j))
    };
    Ok(rs
        .positive_roots()
        .iter()
        .filter(|r| !inside(r))
        .map(|r| r.as_weight())
        .collect())
}

/// `x`-coordinates of a type C weight (`ω_i = x_1 + ⋯ + x_i`).
pub fn x_coords_of_weight(w: &Weight) -> Vec<i64> {
    let k = w.rank();
    (0..k).map(|m| w.coords()[m..].iter().sum()).collect()
}

/// The tangent bundle of `Sp(k)/U(k)` as a sum of line bundles:
/// `{2x_i} ∪ {x_i + x_j}` of rank `k(k+1)/2`, read off the root system.
pub fn tangent_bundle_sp(k: usize) -> Result<LineBundleSum> {
    let rs = RootSystem::build(LieFamily::C, k)?;
    let parabolic: Vec<usize> = (0..k - 1).collect();
    let weights = tangent_roots(&rs, &parabolic)?
        .iter()
        .map(x_coords_of_weight)
        .collect();
    Ok(LineBundleSum {
        space: SpaceDescriptor::Lagrangian { k },
        weights,
    })
}

/// The point-representing bundle on `Sp(k)/U(k)`: `{x_i} ∪ {x_i + x_j}`,
/// rank `k(k+1)/2`.
pub fn point_bundle_weights(k: usize) -> Vec<Vec<i64>> {
    let mut weights = Vec::new();
    for i in 0..k {
        let mut w = vec![0i64; k];
        w[i] = 1;
        weights.push(w);
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut w = vec![0i64; k];
            w[i] = 1;
            w[j] = 1;
            weights.push(w);
        }
    }
    weights
}

/// Top Chern class of a `W(U(k))`-stable sum of line bundles, in the
/// squarefree basis, together with the reduction trace.
pub fn chern_top_lag_traced(bundle: &LineBundleSum) -> Result<(LagElement, Vec<RewriteStep>)> {
    let k = bundle.lagrangian_k()?;
    if !bundle.is_w_invariant()? {
        return Err(Error::NotWInvariant);
    }
    let mut product = IntPoly::one(x_vars(k));
    for w in &bundle.weights {
        let form = IntPoly::linear_form(x_vars(k), w);
        product = product.mul(&form).expect("same namespace");
    }
    let in_elementary = crate::polyring::symmetric_to_elementary(&product)?;
    lag_ring::normal_form_traced(&in_elementary.rename_vars(c_vars(k)), k)
}

pub fn chern_top_lag(bundle: &LineBundleSum) -> Result<LagElement> {
    chern_top_lag_traced(bundle).map(|(e, _)| e)
}

/// First Chern class: the sum of the weights is `m·(x_1+⋯+x_k) = m·c_1`.
pub fn chern_first_lag(bundle: &LineBundleSum) -> Result<LagElement> {
    let k = bundle.lagrangian_k()?;
    if !bundle.is_w_invariant()? {
        return Err(Error::NotWInvariant);
    }
    let mut sum = vec![0i64; k];
    for w in &bundle.weights {
        for (s, &c) in sum.iter_mut().zip(w) {
            *s += c;
        }
    }
    let m = sum[0];
    if sum.iter().any(|&c| c != m) {
        return Err(Error::InternalInconsistency(
            "W-invariant multiset has non-symmetric weight sum".into(),
        ));
    }
    Ok(LagElement::basis(k, 1).scale(&BigInt::from(m)))
}

/// Euler characteristic of `K/H` as the exact quotient of Weyl group orders.
pub fn euler_characteristic(rs: &RootSystem, parabolic: &[usize]) -> Result<u128> {
    let comps = levi_components(rs, parabolic)?;
    let order_k = rs.weyl_order();
    let order_h: u128 = comps.iter().map(|c| c.shape.weyl_order()).product();
    if order_k % order_h != 0 {
        return Err(Error::InternalInconsistency(
            "Levi order does not divide the Weyl group order".into(),
        ));
    }
    Ok(order_k / order_h)
}

/// Certificate that a bundle's top Chern class is exactly the claimed
/// multiple of the top class; replayable by recomputation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopClassCertificate {
    pub k: usize,
    pub bundle: LineBundleSum,
    pub top_class: LagJson,
    /// Coefficient of `u_top = c_1⋯c_k` in the computed class.
    pub top_coefficient: String,
    /// Rewrites applied during the reduction, in order.
    pub rewrites: Vec<RewriteStep>,
}

impl TopClassCertificate {
    /// Recompute the whole reduction and compare against the recorded claim.
    pub fn replay(&self) -> Result<bool> {
        let (top, rewrites) = chern_top_lag_traced(&self.bundle)?;
        let full_mask: u32 = (1 << self.k) - 1;
        let coeff = top.coeff(full_mask).to_string();
        Ok(coeff == self.top_coefficient
            && rewrites == self.rewrites
            && serde_json::to_string(&top.to_json()).unwrap()
                == serde_json::to_string(&self.top_class).unwrap())
    }
}

/// The point bundle on `Sp(k)/U(k)` with the certificate that its top Chern
/// class equals `u_top` with coefficient exactly one.
pub fn point_bundle_sp(k: usize) -> Result<(LineBundleSum, TopClassCertificate)> {
    let bundle = LineBundleSum {
        space: SpaceDescriptor::Lagrangian { k },
        weights: point_bundle_weights(k),
    };
    let n = k * (k + 1) / 2;
    debug_assert_eq!(bundle.rank(), n);
    let (top, rewrites) = chern_top_lag_traced(&bundle)?;
    let full_mask: u32 = (1 << k) - 1;
    let coefficient = top.coeff(full_mask);
    if top.terms().len() != 1 || coefficient != BigInt::from(1) {
        return Err(Error::InternalInconsistency(format!(
            "point bundle top class must be u_top, got {top}"
        )));
    }
    let cert = TopClassCertificate {
        k,
        bundle: bundle.clone(),
        top_class: top.to_json(),
        top_coefficient: coefficient.to_string(),
        rewrites,
    };
    Ok((bundle, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DEFAULT_WEYL_CAP;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn tangent_roots_of_full_flag_is_all_positives() {
        let rs = RootSystem::build(LieFamily::A, 3).unwrap();
        let t = tangent_roots(&rs, &[]).unwrap();
        assert_eq!(t.len(), rs.num_positive_roots());
    }

    #[test]
    fn tangent_roots_sp2_literal() {
        let b = tangent_bundle_sp(2).unwrap();
        let mut ws = b.weights.clone();
        ws.sort();
        let mut expected = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        expected.sort();
        assert_eq!(ws, expected);
    }

    #[test]
    fn tangent_roots_sp3_literal() {
        let b = tangent_bundle_sp(3).unwrap();
        assert_eq!(b.rank(), 6);
        let mut ws = b.weights.clone();
        ws.sort();
        let mut expected = vec![
            vec![2, 0, 0],
            vec![0, 2, 0],
            vec![0, 0, 2],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
        ];
        expected.sort();
        assert_eq!(ws, expected);
    }

    #[test]
    fn tangent_dimension_matches_root_counts() {
        for (f, k) in [
            (LieFamily::A, 3),
            (LieFamily::B, 3),
            (LieFamily::C, 4),
            (LieFamily::D, 4),
            (LieFamily::G, 2),
        ] {
            let rs = RootSystem::build(f, k).unwrap();
            let subsets: Vec<Vec<usize>> = (0..(1usize << k))
                .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).collect())
                .collect();
            for s in subsets {
                let levi_roots = rs
                    .positive_roots()
                    .iter()
                    .filter(|r| {
                        r.simple_coords()
                            .iter()
                            .enumerate()
                            .all(|(j, &c)| c == 0 || s.contains(&j))
                    })
                    .count();
                let t = tangent_roots(&rs, &s).unwrap();
                assert_eq!(t.len(), rs.num_positive_roots() - levi_roots);
            }
        }
    }

    #[test]
    fn chern_top_of_tangent_is_two_to_k_times_top() {
        for k in 2..=4usize {
            let b = tangent_bundle_sp(k).unwrap();
            let top = chern_top_lag(&b).unwrap();
            let full: u32 = (1 << k) - 1;
            assert_eq!(top.terms().len(), 1, "k = {k}");
            assert_eq!(top.coeff(full), bi(1 << k), "k = {k}");
        }
    }

    #[test]
    fn chern_top_of_point_bundle_is_top_class() {
        for k in 1..=4usize {
            let (bundle, cert) = point_bundle_sp(k).unwrap();
            assert_eq!(bundle.rank(), k * (k + 1) / 2);
            assert_eq!(cert.top_coefficient, "1");
            assert!(cert.replay().unwrap(), "k = {k}");
        }
    }

    #[test]
    fn chern_top_k1_single_line() {
        let b = LineBundleSum {
            space: SpaceDescriptor::Lagrangian { k: 1 },
            weights: vec![vec![1]],
        };
        let top = chern_top_lag(&b).unwrap();
        assert_eq!(top, LagElement::basis(1, 0b1));
    }

    #[test]
    fn non_invariant_bundle_is_rejected() {
        let b = LineBundleSum {
            space: SpaceDescriptor::Lagrangian { k: 2 },
            weights: vec![vec![1, 0]],
        };
        assert!(matches!(chern_top_lag(&b), Err(Error::NotWInvariant)));
        assert!(matches!(chern_first_lag(&b), Err(Error::NotWInvariant)));
    }

    #[test]
    fn first_chern_of_tangent() {
        for k in 1..=6usize {
            let b = if k == 1 {
                LineBundleSum {
                    space: SpaceDescriptor::Lagrangian { k: 1 },
                    weights: vec![vec![2]],
                }
            } else {
                tangent_bundle_sp(k).unwrap()
            };
            let c1 = chern_first_lag(&b).unwrap();
            assert_eq!(
                c1,
                LagElement::basis(k, 1).scale(&bi((k + 1) as i64)),
                "c1(T) = (k+1)·u_one at k = {k}"
            );
        }
    }

    #[test]
    fn euler_characteristics() {
        // Sp(2)/U(2) → 4
        let c2 = RootSystem::build(LieFamily::C, 2).unwrap();
        assert_eq!(euler_characteristic(&c2, &[0]).unwrap(), 4);
        // full flag A2 → 6
        let a2 = RootSystem::build(LieFamily::A, 2).unwrap();
        assert_eq!(euler_characteristic(&a2, &[]).unwrap(), 6);
        // Sp(3)/U(3) → 8
        let c3 = RootSystem::build(LieFamily::C, 3).unwrap();
        assert_eq!(euler_characteristic(&c3, &[0, 1]).unwrap(), 8);
        // χ agrees with a brute-force coset count for a couple of cases
        let w = crate::rootsys::WeylGroup::enumerate(&c2, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(w.order() as u128 / 2, euler_characteristic(&c2, &[0]).unwrap());
    }

    #[test]
    fn invalid_parabolic_rejected() {
        let c2 = RootSystem::build(LieFamily::C, 2).unwrap();
        assert!(euler_characteristic(&c2, &[7]).is_err());
        assert!(tangent_roots(&c2, &[0, 0]).is_err());
    }
}
