//! Weight multiplicities of irreducible modules via Freudenthal's recursion.
//!
//! Works on any finite-type datum, in particular on folded data. With
//! `mu = lambda - sum c_j alpha_j` the recursion reads
//!
//! ```text
//! ((lambda+rho)^2 - (mu+rho)^2) m(mu) = 2 sum_{a>0} sum_{k>=1} m(mu + k a) (mu + k a, a)
//! ```
//!
//! and both sides are integers once the form is normalised by the minimal
//! symmetrizers: `(alpha_j, nu) = d_j <coroot_j, nu>`.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::folding::DiagramAutomorphism;
use crate::rootdata::{RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    highest: Weight,
    mults: BTreeMap<Weight, u64>,
    dominant: BTreeMap<Weight, u64>,
}

impl Character {
    pub(crate) fn from_parts(
        highest: Weight,
        mults: BTreeMap<Weight, u64>,
        dominant: BTreeMap<Weight, u64>,
    ) -> Self {
        Character {
            highest,
            mults,
            dominant,
        }
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn mult(&self, mu: &Weight) -> u64 {
        self.mults.get(mu).copied().unwrap_or(0)
    }

    /// Full support, every weight with a positive multiplicity.
    pub fn mults(&self) -> &BTreeMap<Weight, u64> {
        &self.mults
    }

    pub fn dominant_mults(&self) -> &BTreeMap<Weight, u64> {
        &self.dominant
    }

    pub fn dimension(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Support ordered by increasing height of `lambda - mu`, ties broken by
    /// decreasing lexicographic order of the coordinates.
    pub fn ordered_weights(&self, d: &RootDatum) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.mults.keys().cloned().collect();
        sort_by_depth(d, &self.highest, &mut ws);
        ws
    }
}

/// Sorts weights below `lambda` by increasing height of `lambda - mu`, then
/// by decreasing coordinates.
pub fn sort_by_depth(d: &RootDatum, lambda: &Weight, ws: &mut [Weight]) {
    ws.sort_by_cached_key(|mu| {
        let depth: i64 = d
            .root_coords(&lambda.sub(mu))
            .map(|c| c.iter().sum())
            .unwrap_or(i64::MAX);
        (depth, std::cmp::Reverse(mu.clone()))
    });
}

fn overflow() -> Error {
    Error::Overflow("Freudenthal recursion")
}

/// Multiplicities of every weight of `V(lambda)` over `d`.
pub fn freudenthal(d: &RootDatum, lambda: &Weight, cap: u64) -> Result<Character> {
    d.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let dim = d.weyl_dimension(lambda)?;
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let n = d.rank();
    let roots = d.positive_roots();

    // dominant weights below lambda with their depth in root coordinates
    let mut depth: BTreeMap<Weight, Vec<i64>> = BTreeMap::new();
    depth.insert(lambda.clone(), vec![0; n]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        let c = depth[&mu].clone();
        for root in roots {
            let nu = mu.sub(&root.root);
            if nu.is_dominant() && !depth.contains_key(&nu) {
                let cn: Vec<i64> = c.iter().zip(&root.coeffs).map(|(a, b)| a + b).collect();
                depth.insert(nu.clone(), cn);
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<Weight> = depth.keys().cloned().collect();
    order.sort_by_key(|mu| (depth[mu].iter().sum::<i64>(), std::cmp::Reverse(mu.clone())));

    let two_rho_plus_lambda: Vec<i64> = lambda.0.iter().map(|l| l + 2).collect();
    let mut dominant: BTreeMap<Weight, u64> = BTreeMap::new();
    dominant.insert(lambda.clone(), 1);

    for mu in order.iter().skip(1) {
        let c = &depth[mu];
        let mut rhs: i128 = 0;
        for root in roots {
            let mut k: i64 = 1;
            loop {
                // depth of mu + k*root
                let ck: Vec<i64> = c.iter().zip(&root.coeffs).map(|(a, b)| a - k * b).collect();
                if ck.iter().any(|&x| x < 0) {
                    break;
                }
                let nu = mu.add(&root.root.scale(k));
                let m = dominant
                    .get(&d.dominant_conjugate(&nu))
                    .copied()
                    .unwrap_or(0);
                if m > 0 {
                    let term = (m as i128)
                        .checked_mul(d.sym_pair(&root.coeffs, &nu) as i128)
                        .ok_or_else(overflow)?;
                    rhs = rhs.checked_add(term).ok_or_else(overflow)?;
                }
                k += 1;
            }
        }
        rhs = rhs.checked_mul(2).ok_or_else(overflow)?;
        // (lambda - mu, lambda + mu + 2 rho)
        let sum: Weight = Weight(
            two_rho_plus_lambda
                .iter()
                .zip(&mu.0)
                .map(|(a, b)| a + b)
                .collect(),
        );
        let denom = d.sym_pair(c, &sum) as i128;
        if denom <= 0 || rhs % denom != 0 {
            return Err(Error::InexactDivision("Freudenthal recursion"));
        }
        let m = rhs / denom;
        if m <= 0 {
            return Err(Error::InternalMismatch(format!(
                "Freudenthal produced multiplicity {m} at dominant weight {mu}"
            )));
        }
        dominant.insert(mu.clone(), u64::try_from(m).map_err(|_| overflow())?);
    }

    let mut mults = BTreeMap::new();
    for (mu, &m) in &dominant {
        for nu in d.weyl_orbit(mu)? {
            mults.insert(nu, m);
        }
    }
    Ok(Character {
        highest: lambda.clone(),
        mults,
        dominant,
    })
}

/// The `sigma`-invariant weights of the support, in depth order.
pub fn support_invariant(
    d: &RootDatum,
    sigma: &DiagramAutomorphism,
    ch: &Character,
) -> Vec<Weight> {
    ch.ordered_weights(d)
        .into_iter()
        .filter(|mu| sigma.fixes_weight(mu))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::make_datum;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn a2_adjoint() {
        let d = make_datum("A2").unwrap();
        let ch = freudenthal(&d, &w(&[1, 1]), 2000).unwrap();
        assert_eq!(ch.mult(&w(&[0, 0])), 2);
        assert_eq!(ch.mult(&w(&[1, 1])), 1);
        assert_eq!(ch.mults().len(), 7);
        assert_eq!(ch.dimension(), 8);
    }

    #[test]
    fn trivial_module() {
        let d = make_datum("E6").unwrap();
        let ch = freudenthal(&d, &Weight::zero(6), 2000).unwrap();
        assert_eq!(ch.mults().len(), 1);
        assert_eq!(ch.mult(&Weight::zero(6)), 1);
    }

    #[test]
    fn sl2_string() {
        let d = make_datum("A1").unwrap();
        let ch = freudenthal(&d, &w(&[2]), 2000).unwrap();
        let expected: BTreeMap<Weight, u64> = [(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)].into();
        assert_eq!(ch.mults(), &expected);
    }

    #[test]
    fn errors() {
        let d = make_datum("A2").unwrap();
        assert!(matches!(
            freudenthal(&d, &w(&[-1, 0]), 2000),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            freudenthal(&d, &w(&[5, 5]), 100),
            Err(Error::CapExceeded { dim: 216, cap: 100 })
        ));
        assert!(matches!(
            freudenthal(&d, &w(&[1]), 100),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn known_zero_weight_multiplicities() {
        // zero weight of the adjoint module has multiplicity equal to the rank
        for (label, adj) in [
            ("A3", vec![1, 0, 1]),
            ("D4", vec![0, 1, 0, 0]),
            ("E6", vec![0, 1, 0, 0, 0, 0]),
            ("F4", vec![0, 0, 0, 1]),
            ("G2", vec![1, 0]),
        ] {
            let d = make_datum(label).unwrap();
            let ch = freudenthal(&d, &Weight(adj), 2000).unwrap();
            assert_eq!(ch.mult(&Weight::zero(d.rank())), d.rank() as u64, "{label}");
            assert_eq!(
                ch.dimension(),
                (2 * d.positive_roots().len() + d.rank()) as u64,
                "{label}"
            );
        }
    }

    #[test]
    fn ordered_weights_start_at_highest() {
        let d = make_datum("A2").unwrap();
        let ch = freudenthal(&d, &w(&[1, 1]), 2000).unwrap();
        let ws = ch.ordered_weights(&d);
        assert_eq!(ws.first(), Some(&w(&[1, 1])));
        assert_eq!(ws.last(), Some(&w(&[-1, -1])));
        assert_eq!(ws[3], w(&[0, 0]));
    }

    #[test]
    fn support_invariant_examples() {
        let d = make_datum("A2").unwrap();
        let sigma = DiagramAutomorphism::parse("(1 2)", 2).unwrap();
        let ch = freudenthal(&d, &w(&[1, 1]), 2000).unwrap();
        assert_eq!(
            support_invariant(&d, &sigma, &ch),
            vec![w(&[1, 1]), w(&[0, 0]), w(&[-1, -1])]
        );
        let triv = freudenthal(&d, &w(&[0, 0]), 2000).unwrap();
        assert_eq!(support_invariant(&d, &sigma, &triv), vec![w(&[0, 0])]);

        let a3 = make_datum("A3").unwrap();
        let s3 = DiagramAutomorphism::parse("(1 3)", 3).unwrap();
        let ch = freudenthal(&a3, &w(&[0, 1, 0]), 2000).unwrap();
        let inv = support_invariant(&a3, &s3, &ch);
        assert!(inv.contains(&w(&[0, 1, 0])));
        assert!(inv.contains(&w(&[0, -1, 0])));
    }
}
