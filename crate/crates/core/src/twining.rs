//! Twining characters and their comparison with folded characters.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::characters::{freudenthal, sort_by_depth, Character};
use crate::error::{Error, Result};
use crate::folding::{DiagramAutomorphism, FoldedDatum};
use crate::hwmodule::{build_module, sigma_trace, HWModule};
use crate::rootdata::{RootDatum, Weight};

/// `mu -> tr(sigma | V_mu)` over the `sigma`-invariant weights of `V(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwiningCharacter {
    lambda: Weight,
    entries: BTreeMap<Weight, i64>,
}

impl TwiningCharacter {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn entries(&self) -> &BTreeMap<Weight, i64> {
        &self.entries
    }

    pub fn get(&self, mu: &Weight) -> i64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn sum(&self) -> i64 {
        self.entries.values().sum()
    }
}

fn check_lambda(d: &RootDatum, sigma: &DiagramAutomorphism, lambda: &Weight) -> Result<()> {
    d.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    if !sigma.fixes_weight(lambda) {
        return Err(Error::NotInvariant(lambda.clone()));
    }
    Ok(())
}

/// Twining character read off an already built module.
pub fn twining_of_module(
    module: &HWModule,
    sigma: &DiagramAutomorphism,
) -> Result<TwiningCharacter> {
    let entries = module
        .weights()
        .iter()
        .filter(|mu| sigma.fixes_weight(mu))
        .map(|mu| Ok((mu.clone(), sigma_trace(module, sigma, mu)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(TwiningCharacter {
        lambda: module.lambda().clone(),
        entries,
    })
}

pub fn twining_character(
    d: &RootDatum,
    sigma: &DiagramAutomorphism,
    lambda: &Weight,
    cap: u64,
) -> Result<TwiningCharacter> {
    check_lambda(d, sigma, lambda)?;
    let module = build_module(d, lambda, cap)?;
    twining_of_module(&module, sigma)
}

/// Character of the folded irreducible module with highest weight `lambda`,
/// indexed by `sigma`-fixed source weights.
pub fn folded_character(f: &FoldedDatum, lambda: &Weight, cap: u64) -> Result<Character> {
    check_lambda(f.source(), f.sigma(), lambda)?;
    let folded_lambda = f.to_folded_weight(lambda)?;
    let ch = freudenthal(f.folded(), &folded_lambda, cap)?;
    reindex(f, &ch, lambda)
}

fn reindex(f: &FoldedDatum, ch: &Character, lambda: &Weight) -> Result<Character> {
    let mults = ch
        .mults()
        .iter()
        .map(|(mu, &m)| Ok((f.from_folded_weight(mu)?, m)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let dominant = ch
        .dominant_mults()
        .iter()
        .map(|(mu, &m)| Ok((f.from_folded_weight(mu)?, m)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Character::from_parts(lambda.clone(), mults, dominant))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JantzenRow {
    pub mu: Weight,
    pub trace: i64,
    pub folded_dim: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JantzenReport {
    pub entries: Vec<JantzenRow>,
    pub ok: bool,
}

/// Compares the two sides row by row over the union of their supports.
pub fn compare(d: &RootDatum, twine: &TwiningCharacter, folded: &Character) -> JantzenReport {
    let mut weights: Vec<Weight> = twine
        .entries()
        .keys()
        .chain(folded.mults().keys())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    sort_by_depth(d, twine.lambda(), &mut weights);
    let entries: Vec<JantzenRow> = weights
        .into_iter()
        .map(|mu| {
            let trace = twine.get(&mu);
            let folded_dim = folded.mult(&mu);
            JantzenRow {
                ok: trace == folded_dim as i64,
                mu,
                trace,
                folded_dim,
            }
        })
        .collect();
    let ok = entries.iter().all(|r| r.ok);
    JantzenReport { entries, ok }
}

pub fn verify_jantzen(
    d: &RootDatum,
    sigma: &DiagramAutomorphism,
    lambda: &Weight,
    cap: u64,
) -> Result<JantzenReport> {
    let f = crate::folding::fold(d, sigma)?;
    let twine = twining_character(d, sigma, lambda, cap)?;
    let folded = folded_character(&f, lambda, cap)?;
    Ok(compare(d, &twine, &folded))
}

/// A point of `C^* (x) Y`: one nonzero complex coordinate per simple coroot.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement {
    pub coords: Vec<Complex64>,
}

impl TorusElement {
    pub fn new(coords: Vec<Complex64>) -> Self {
        debug_assert!(coords.iter().all(|z| z.norm() != 0.0));
        TorusElement { coords }
    }

    pub fn identity(rank: usize) -> Self {
        TorusElement {
            coords: vec![Complex64::new(1.0, 0.0); rank],
        }
    }

    /// Coordinates `exp(i theta)` with `theta` uniform in `[0, 2 pi)`.
    pub fn random_unit<R: Rng>(rank: usize, rng: &mut R) -> Self {
        let coords = (0..rank)
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        TorusElement { coords }
    }

    /// `mu(t) = prod_i z_i^{<coroot_i, mu>}`.
    pub fn eval(&self, mu: &Weight) -> Complex64 {
        self.coords
            .iter()
            .zip(&mu.0)
            .map(|(z, &k)| z.powi(k as i32))
            .product()
    }

    pub fn mul(&self, other: &TorusElement) -> TorusElement {
        TorusElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// The map `T -> T_sigma` induced by `Y -> Y_sigma`: multiplies coordinates along orbits.
pub fn phi(f: &FoldedDatum, t: &TorusElement) -> TorusElement {
    let coords = f
        .orbits()
        .iter()
        .map(|o| o.iter().map(|&i| t.coords[i]).product())
        .collect();
    TorusElement { coords }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub error: f64,
    pub ok: bool,
}

/// `tr(t sigma, V)` from the twining character against `tr(phi(t), V')`.
pub fn corollary_sides(
    f: &FoldedDatum,
    twine: &TwiningCharacter,
    folded: &Character,
    t: &TorusElement,
) -> (Complex64, Complex64) {
    let lhs: Complex64 = twine
        .entries()
        .iter()
        .map(|(mu, &tr)| t.eval(mu) * tr as f64)
        .sum();
    let t_folded = phi(f, t);
    let rhs: Complex64 = folded
        .mults()
        .iter()
        .map(|(mu, &m)| {
            let folded_mu = f
                .to_folded_weight(mu)
                .expect("folded character lives on sigma-fixed weights");
            t_folded.eval(&folded_mu) * m as f64
        })
        .sum();
    (lhs, rhs)
}

pub fn corollary_report(
    f: &FoldedDatum,
    twine: &TwiningCharacter,
    folded: &Character,
    t: &TorusElement,
    tol: f64,
) -> CorollaryReport {
    let (lhs, rhs) = corollary_sides(f, twine, folded, t);
    let error = (lhs - rhs).norm();
    CorollaryReport {
        lhs: [lhs.re, lhs.im],
        rhs: [rhs.re, rhs.im],
        error,
        ok: error < tol,
    }
}

pub fn verify_corollary(
    d: &RootDatum,
    sigma: &DiagramAutomorphism,
    lambda: &Weight,
    t: &TorusElement,
    tol: f64,
    cap: u64,
) -> Result<CorollaryReport> {
    let f = crate::folding::fold(d, sigma)?;
    let twine = twining_character(d, sigma, lambda, cap)?;
    let folded = folded_character(&f, lambda, cap)?;
    Ok(corollary_report(&f, &twine, &folded, t, tol))
}
