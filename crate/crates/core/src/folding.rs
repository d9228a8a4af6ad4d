//! Diagram automorphisms and the folded root datum.
//!
//! For a simply-laced datum and a permutation `sigma` of its nodes preserving
//! the Cartan matrix, the folded datum has one node per `sigma`-orbit `O`,
//! coroot the image of any `coroot_i` (`i` in `O`) in `Y / (sigma - 1) Y`, and
//! root
//!
//! ```text
//! alpha_O = 2^h * sum_{i in O} alpha_i
//! ```
//!
//! where `h` counts the unordered pairs `{i, j}` in `O` with `alpha_i + alpha_j`
//! a root. `h` is nonzero only for the middle orbit of the flip of `A_{2n}`.
//! The folded weight lattice is the `sigma`-fixed part of X; a fixed weight is
//! constant on orbits and its folded coordinate on `O` is that common value.

use std::fmt;

use crate::error::{Error, Result};
use crate::rootdata::{Coweight, RootDatum, Weight};

/// A permutation of the node set preserving the Cartan matrix (once checked
/// against a datum). Nodes are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
    order: usize,
}

impl DiagramAutomorphism {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::CycleParse {
                    input: format!("{perm:?}"),
                    reason: "not a permutation".into(),
                });
            }
        }
        let order = cycles_of(&perm).iter().map(Vec::len).fold(1, lcm);
        Ok(DiagramAutomorphism { perm, order })
    }

    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..n).collect(),
            order: 1,
        }
    }

    /// Parses cycle notation with 1-based nodes, e.g. `(1 4)(2 3)`. Fixed
    /// points may be omitted; the empty string and `()` denote the identity.
    pub fn parse(input: &str, n: usize) -> Result<Self> {
        let err = |reason: &str| Error::CycleParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = input.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(err("expected `(`"));
            };
            let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let cycle = body[..close]
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err("node indices must be positive integers"))
                })
                .collect::<Result<Vec<_>>>()?;
            for &node in &cycle {
                if node == 0 || node > n {
                    return Err(err(&format!("node {node} out of range 1..={n}")));
                }
                if std::mem::replace(&mut used[node - 1], true) {
                    return Err(err(&format!("node {node} appears twice")));
                }
            }
            for (k, &node) in cycle.iter().enumerate() {
                perm[node - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            rest = body[close + 1..].trim_start();
        }
        DiagramAutomorphism::new(perm)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `sigma(omega_i) = omega_{sigma(i)}`, so `(sigma mu)[sigma(i)] = mu[i]`.
    pub fn act_on_weight(&self, mu: &Weight) -> Weight {
        let mut out = vec![0; mu.rank()];
        for (i, &c) in mu.0.iter().enumerate() {
            out[self.perm[i]] = c;
        }
        Weight(out)
    }

    pub fn fixes_weight(&self, mu: &Weight) -> bool {
        mu.rank() == self.rank() && (0..self.rank()).all(|i| mu.0[self.perm[i]] == mu.0[i])
    }

    pub fn preserves(&self, d: &RootDatum) -> bool {
        let a = d.cartan();
        self.rank() == d.rank()
            && (0..self.rank())
                .all(|i| (0..self.rank()).all(|j| a[self.perm[i]][self.perm[j]] == a[i][j]))
    }

    /// Nontrivial cycles, each starting at its smallest node.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.perm)
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = perm[start];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = perm[cur];
        }
        out.push(cycle);
    }
    out
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// The `sigma`-orbits on the nodes, ordered by smallest node, each listed in
/// cycle order from its smallest node.
pub fn orbits(d: &RootDatum, sigma: &DiagramAutomorphism) -> Result<Vec<Vec<usize>>> {
    if !sigma.preserves(d) {
        return Err(Error::NotAutomorphism);
    }
    Ok(sigma.cycles())
}

/// Number of unordered pairs `{i, j}` in the orbit with `alpha_i + alpha_j` a root.
pub fn orbit_h(d: &RootDatum, orbit: &[usize]) -> u32 {
    let n = d.rank();
    let mut h = 0;
    for (p, &i) in orbit.iter().enumerate() {
        for &j in &orbit[p + 1..] {
            let mut c = vec![0; n];
            c[i] += 1;
            c[j] += 1;
            if d.positive_roots().iter().any(|r| r.coeffs == c) {
                h += 1;
            }
        }
    }
    h
}

#[derive(Clone, Debug)]
pub struct FoldedDatum {
    source: RootDatum,
    sigma: DiagramAutomorphism,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    h_values: Vec<u32>,
    alpha: Vec<Weight>,
    folded: RootDatum,
}

impl FoldedDatum {
    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn sigma(&self) -> &DiagramAutomorphism {
        &self.sigma
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Index of the orbit containing source node `i`.
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    pub fn h_values(&self) -> &[u32] {
        &self.h_values
    }

    /// `alpha_O` for each orbit, as an element of X in source weight coordinates.
    pub fn alpha(&self) -> &[Weight] {
        &self.alpha
    }

    /// `alpha_O` in source simple-root coordinates.
    pub fn alpha_root_coords(&self, orbit: usize) -> Vec<i64> {
        let mut c = vec![0; self.source.rank()];
        for &i in &self.orbits[orbit] {
            c[i] = 1 << self.h_values[orbit];
        }
        c
    }

    pub fn folded(&self) -> &RootDatum {
        &self.folded
    }

    /// Image of a source coweight under `Y -> Y_sigma`.
    pub fn project_coweight(&self, y: &Coweight) -> Coweight {
        let mut out = vec![0; self.orbits.len()];
        for (i, &c) in y.0.iter().enumerate() {
            out[self.orbit_of[i]] += c;
        }
        Coweight(out)
    }

    pub fn to_folded_weight(&self, mu: &Weight) -> Result<Weight> {
        self.source.check_weight(mu)?;
        if !self.sigma.fixes_weight(mu) {
            return Err(Error::NotInvariant(mu.clone()));
        }
        Ok(Weight(self.orbits.iter().map(|o| mu.0[o[0]]).collect()))
    }

    /// Inverse of [`to_folded_weight`](Self::to_folded_weight): spreads each
    /// folded coordinate over its orbit.
    pub fn from_folded_weight(&self, mu: &Weight) -> Result<Weight> {
        self.folded.check_weight(mu)?;
        Ok(Weight(self.orbit_of.iter().map(|&o| mu.0[o]).collect()))
    }

    /// `lambda` lies in the dominant `sigma`-fixed weights.
    pub fn dominant_invariant_check(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.source.rank()
            && self.sigma.fixes_weight(lambda)
            && lambda.is_dominant()
    }
}

pub fn fold(d: &RootDatum, sigma: &DiagramAutomorphism) -> Result<FoldedDatum> {
    if !d.is_simply_laced() {
        return Err(Error::NotSimplyLaced(d.label().to_string()));
    }
    if matches!(d.label(), "A1" | "E7" | "E8") {
        return Err(Error::NoDiagramAutomorphism(d.label().to_string()));
    }
    if sigma.rank() != d.rank() {
        return Err(Error::RankMismatch {
            expected: d.rank(),
            got: sigma.rank(),
        });
    }
    let orbits = orbits(d, sigma)?;
    if sigma.is_identity() {
        return Err(Error::TrivialAutomorphism);
    }
    let mut orbit_of = vec![0; d.rank()];
    for (k, o) in orbits.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    let h_values: Vec<u32> = orbits.iter().map(|o| orbit_h(d, o)).collect();
    let alpha: Vec<Weight> = orbits
        .iter()
        .zip(&h_values)
        .map(|(o, &h)| {
            let sum = o
                .iter()
                .fold(Weight::zero(d.rank()), |acc, &i| acc.add(&d.simple_root(i)));
            sum.scale(1 << h)
        })
        .collect();

    // cartan[O][O'] = <coroot_i, alpha_O'> for every representative i of O
    let m = orbits.len();
    let mut cartan = vec![vec![0; m]; m];
    for (p, o) in orbits.iter().enumerate() {
        for (q, a) in alpha.iter().enumerate() {
            let value = a.0[o[0]];
            if o.iter().any(|&i| a.0[i] != value) {
                return Err(Error::RepresentativeDependence { orbit: p });
            }
            cartan[p][q] = value;
        }
    }
    let folded = RootDatum::from_cartan(cartan)?;
    Ok(FoldedDatum {
        source: d.clone(),
        sigma: sigma.clone(),
        orbits,
        orbit_of,
        h_values,
        alpha,
        folded,
    })
}

pub fn is_sigma_invariant(sigma: &DiagramAutomorphism, mu: &Weight) -> bool {
    sigma.fixes_weight(mu)
}

pub fn to_folded_weight(f: &FoldedDatum, mu: &Weight) -> Result<Weight> {
    f.to_folded_weight(mu)
}

pub fn dominant_invariant_check(f: &FoldedDatum, lambda: &Weight) -> bool {
    f.dominant_invariant_check(lambda)
}
