//! Finite-type root data of simply-connected semisimple groups.
//!
//! The character lattice X has the fundamental weights as basis and the
//! cocharacter lattice Y has the simple coroots as basis, so the pairing
//! `<coroot_i, mu>` is just `mu[i]`. The Cartan matrix is stored with
//! `cartan[i][j] = <coroot_i, alpha_j>`; column `j` is the simple root
//! `alpha_j` in weight coordinates.
//!
//! Node numbering follows the Bourbaki plates (0-based internally, 1-based in
//! every user-facing string):
//!
//! | type | diagram |
//! |------|---------|
//! | A_n  | 1 - 2 - ... - n |
//! | B_n  | 1 - ... - (n-1) => n, with `cartan[n-1][n] = -2` |
//! | C_n  | 1 - ... - (n-1) <= n, with `cartan[n][n-1] = -2` |
//! | D_n  | 1 - ... - (n-2), with n-1 and n both attached to n-2 |
//! | E_n  | 1 - 3 - 4 - ... - n, with 2 attached to 4 |
//! | F_4  | 1 - 2 => 3 - 4, with `cartan[2][3] = -2` |
//! | G_2  | `[[2, -1], [-3, 2]]` |
//!
//! The matrices are the ones printed in the Bourbaki tables, compared entry by
//! entry with `cartan`. For the doubly-laced types this means a matrix labelled
//! `C_n` has its long simple roots (in the `<coroot, root>` reading) on the
//! first `n - 1` nodes. The rank-two doubly-laced matrix is always labelled
//! `C2`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Element of X in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `1,0,-1`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if inner.is_empty() {
            return Err(Error::WeightParse(s.to_string()));
        }
        inner
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| Error::WeightParse(s.to_string()))
    }
}

/// Element of Y in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    /// `<y, mu> = sum_i y[i] * <coroot_i, mu>`.
    pub fn pair(&self, mu: &Weight) -> i64 {
        self.0.iter().zip(&mu.0).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Weight,
    pub coroot: Coweight,
    /// Coordinates in the basis of simple roots.
    pub coeffs: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    label: String,
    positive_roots: Vec<PositiveRoot>,
    // adjugate of the Cartan matrix together with its determinant
    cartan_adj: Vec<Vec<i64>>,
    cartan_det: i64,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Validates a Cartan matrix and builds the datum.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if cartan.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry {} is not 2",
                    i + 1
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if cartan[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "positive off-diagonal entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entry ({}, {}) vanishes but its transpose does not",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let symmetrizers = symmetrizers(&cartan)?;

        // Sylvester: all leading principal minors of diag(d) * A positive.
        let sym: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| symmetrizers[i] * cartan[i][j]).collect())
            .collect();
        let sym = linalg::to_int_matrix(&sym);
        for k in 1..=n {
            let minor: Vec<Vec<BigInt>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !linalg::determinant(&minor).is_positive() {
                return Err(Error::NotFiniteType);
            }
        }
        let label = classify_cartan(&cartan)?;

        let big = linalg::to_int_matrix(&cartan);
        let det = linalg::determinant(&big);
        let inv = linalg::inverse(&big).ok_or(Error::NotFiniteType)?;
        let cartan_det: i64 =
            i64::try_from(&det).map_err(|_| Error::Overflow("Cartan determinant"))?;
        let cartan_adj = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * num_rational::BigRational::from_integer(det.clone());
                        debug_assert!(v.is_integer());
                        i64::try_from(&v.to_integer())
                            .map_err(|_| Error::Overflow("Cartan adjugate"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let mut datum = RootDatum {
            cartan,
            symmetrizers,
            label,
            positive_roots: Vec::new(),
            cartan_adj,
            cartan_det,
        };
        datum.positive_roots = datum.saturate_positive_roots()?;
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                i == j || (self.cartan[i][j] == self.cartan[j][i] && self.cartan[i][j] >= -1)
            })
        })
    }

    pub fn check_weight(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: mu.rank(),
            });
        }
        Ok(())
    }

    /// Simple root `alpha_j` in weight coordinates (column `j` of the Cartan matrix).
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[j]).collect())
    }

    /// Weight of `sum_j coeffs[j] * alpha_j`.
    pub fn root_lattice_weight(&self, coeffs: &[i64]) -> Weight {
        Weight(
            self.cartan
                .iter()
                .map(|row| row.iter().zip(coeffs).map(|(a, c)| a * c).sum())
                .collect(),
        )
    }

    /// Coordinates of `mu` in the simple-root basis, `None` when `mu` is not in
    /// the root lattice.
    pub fn root_coords(&self, mu: &Weight) -> Option<Vec<i64>> {
        let det = self.cartan_det;
        self.cartan_adj
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(&mu.0).map(|(a, m)| a * m).sum();
                let (q, r) = s.div_rem(&det);
                (r == 0).then_some(q)
            })
            .collect()
    }

    /// Symmetrized pairing `(sum_j coeffs[j] alpha_j, mu)` with `(alpha_i, alpha_i) = 2 d_i`.
    pub fn sym_pair(&self, coeffs: &[i64], mu: &Weight) -> i64 {
        coeffs
            .iter()
            .zip(&self.symmetrizers)
            .zip(&mu.0)
            .map(|((c, d), m)| c * d * m)
            .sum()
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// `s_i(mu) = mu - <coroot_i, mu> alpha_i`.
    pub fn reflect(&self, i: usize, mu: &Weight) -> Weight {
        let k = mu.0[i];
        if k == 0 {
            return mu.clone();
        }
        Weight(
            mu.0.iter()
                .zip(&self.cartan)
                .map(|(m, row)| m - k * row[i])
                .collect(),
        )
    }

    /// Dominant element of the Weyl orbit of `mu`.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut w = mu.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(i, &w);
        }
        w
    }

    pub fn weyl_orbit(&self, lambda: &Weight) -> Result<BTreeSet<Weight>> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.clone()));
        }
        let mut seen = BTreeSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            for i in 0..self.rank() {
                let nu = self.reflect(i, &mu);
                if seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
        Ok(seen)
    }

    /// Weyl dimension formula `prod_{a > 0} (lambda + rho, a) / (rho, a)`, evaluated exactly.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u64> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.clone()));
        }
        let rho = Weight(vec![1; self.rank()]);
        let shifted = lambda.add(&rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            num *= self.sym_pair(&root.coeffs, &shifted);
            den *= self.sym_pair(&root.coeffs, &rho);
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::InexactDivision("Weyl dimension formula"));
        }
        u64::try_from(&q).map_err(|_| Error::Overflow("Weyl dimension formula"))
    }

    /// Order of the Weyl group, from the type table.
    pub fn weyl_group_order(&self) -> u128 {
        self.label.split('x').map(component_weyl_order).product()
    }

    fn saturate_positive_roots(&self) -> Result<Vec<PositiveRoot>> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for j in 0..n {
            let mut c = vec![0; n];
            c[j] = 1;
            seen.insert(c.clone());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            let beta = self.root_lattice_weight(&c);
            for i in 0..n {
                let k = beta.0[i];
                if k == 0 {
                    continue;
                }
                let mut next = c.clone();
                next[i] -= k;
                if next.iter().all(|&x| x >= 0)
                    && next.iter().any(|&x| x > 0)
                    && seen.insert(next.clone())
                {
                    queue.push_back(next);
                }
            }
        }
        let mut roots = seen
            .into_iter()
            .map(|coeffs| {
                let root = self.root_lattice_weight(&coeffs);
                // coroot = 2 beta / (beta, beta) under coroot_j <-> alpha_j / d_j
                let norm2 = self.sym_pair(&coeffs, &root);
                let coroot = coeffs
                    .iter()
                    .zip(&self.symmetrizers)
                    .map(|(c, d)| {
                        let (q, r) = (2 * c * d).div_rem(&norm2);
                        if r != 0 {
                            Err(Error::InexactDivision("coroot computation"))
                        } else {
                            Ok(q)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PositiveRoot {
                    root,
                    coroot: Coweight(coroot),
                    coeffs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        roots.sort_by_key(|r| (r.height(), Reverse(r.coeffs.clone())));
        Ok(roots)
    }
}

fn symmetrizers(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::one());
        let mut queue = VecDeque::from([start]);
        let mut component = vec![start];
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].unwrap() * Ratio::new(cartan[i][j], cartan[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()))
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = component
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let scaled: Vec<i64> = component
            .iter()
            .map(|&i| (d[i].unwrap() * lcm).to_integer())
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &s) in component.iter().zip(&scaled) {
            d[i] = Some(Ratio::from_integer(s / g));
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

fn component_weyl_order(label: &str) -> u128 {
    let (kind, rank) = label.split_at(1);
    let n: u128 = rank.parse().unwrap_or(0);
    let fact = |k: u128| (1..=k).product::<u128>();
    match kind {
        "A" => fact(n + 1),
        "B" | "C" => (1u128 << n) * fact(n),
        "D" => (1u128 << (n - 1)) * fact(n),
        "E" => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        "F" => 1152,
        "G" => 12,
        _ => 0,
    }
}

fn parse_label(label: &str) -> Option<(char, usize)> {
    let label = label.trim();
    let mut chars = label.chars();
    let kind = chars.next()?.to_ascii_uppercase();
    let rank: usize = chars.as_str().parse().ok()?;
    Some((kind, rank))
}

/// Built-in catalog of Cartan matrices in the Bourbaki numbering.
pub fn make_datum(label: &str) -> Result<RootDatum> {
    let unknown = || Error::UnknownType(label.to_string());
    let (kind, n) = parse_label(label).ok_or_else(unknown)?;
    let mut a = vec![vec![0i64; n]; n];
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match (kind, n) {
        ('A', 1..) => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
        }
        ('B', 2..) | ('C', 2..) => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            if kind == 'B' {
                a[n - 2][n - 1] = -2;
            } else {
                a[n - 1][n - 2] = -2;
            }
        }
        ('D', 4..) => {
            for i in 1..n - 1 {
                link(&mut a, i - 1, i);
            }
            link(&mut a, n - 3, n - 1);
        }
        ('E', 6..=8) => {
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 3..n {
                link(&mut a, i - 1, i);
            }
        }
        ('F', 4) => {
            for i in 1..4 {
                link(&mut a, i - 1, i);
            }
            a[1][2] = -2;
        }
        ('G', 2) => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
        _ => return Err(unknown()),
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    RootDatum::from_cartan(a)
}

pub fn positive_roots(d: &RootDatum) -> &[PositiveRoot] {
    d.positive_roots()
}

pub fn reflect(d: &RootDatum, i: usize, mu: &Weight) -> Weight {
    d.reflect(i, mu)
}

pub fn weyl_orbit(d: &RootDatum, lambda: &Weight) -> Result<BTreeSet<Weight>> {
    d.weyl_orbit(lambda)
}

pub fn weyl_dimension(d: &RootDatum, lambda: &Weight) -> Result<u64> {
    d.weyl_dimension(lambda)
}

pub fn classify_type(d: &RootDatum) -> &str {
    d.label()
}

/// Type label of a Cartan matrix, up to simultaneous permutation of rows and
/// columns. Disconnected diagrams get labels such as `A1xA1`, components in
/// order of their smallest node.
pub fn classify_cartan(cartan: &[Vec<i64>]) -> Result<String> {
    let n = cartan.len();
    let mut comp_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp_of[start] = id;
        let mut nodes = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && comp_of[j] == usize::MAX {
                    comp_of[j] = id;
                    nodes.push(j);
                    queue.push_back(j);
                }
            }
        }
        nodes.sort_unstable();
        components.push(nodes);
    }
    let labels = components
        .iter()
        .map(|nodes| classify_connected(cartan, nodes))
        .collect::<Result<Vec<_>>>()?;
    Ok(labels.join("x"))
}

fn classify_connected(a: &[Vec<i64>], nodes: &[usize]) -> Result<String> {
    let n = nodes.len();
    if n == 1 {
        return Ok("A1".into());
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = nodes.iter().map(|&i| (i, Vec::new())).collect();
    let mut edges = 0;
    let mut multiple: Vec<(usize, usize, i64)> = Vec::new();
    for (p, &i) in nodes.iter().enumerate() {
        for &j in &nodes[p + 1..] {
            if a[i][j] == 0 {
                continue;
            }
            edges += 1;
            adj.get_mut(&i).unwrap().push(j);
            adj.get_mut(&j).unwrap().push(i);
            let bond = a[i][j] * a[j][i];
            match bond {
                1 => {}
                2 | 3 => multiple.push((i, j, bond)),
                _ => return Err(Error::NotFiniteType),
            }
        }
    }
    // connected with n - 1 edges: a tree
    if edges != n - 1 {
        return Err(Error::NotFiniteType);
    }
    let branch: Vec<usize> = adj
        .iter()
        .filter(|(_, v)| v.len() > 2)
        .map(|(&k, _)| k)
        .collect();

    if multiple.len() > 1 {
        return Err(Error::NotFiniteType);
    }
    if let Some(&(i, j, bond)) = multiple.first() {
        if !branch.is_empty() {
            return Err(Error::NotFiniteType);
        }
        if bond == 3 {
            return if n == 2 {
                Ok("G2".into())
            } else {
                Err(Error::NotFiniteType)
            };
        }
        if n == 2 {
            return Ok("C2".into());
        }
        let path = path_order(&adj);
        let pi = path.iter().position(|&x| x == i).unwrap();
        let pj = path.iter().position(|&x| x == j).unwrap();
        let (lo, hi) = (pi.min(pj), pi.max(pj));
        if lo == 0 || hi == n - 1 {
            // orient so the double bond is at the end: ... - inner => end
            let (inner, end) = if hi == n - 1 {
                (path[lo], path[hi])
            } else {
                (path[hi], path[lo])
            };
            return Ok(if a[inner][end] == -2 {
                format!("B{n}")
            } else {
                format!("C{n}")
            });
        }
        return if n == 4 {
            Ok("F4".into())
        } else {
            Err(Error::NotFiniteType)
        };
    }
    match branch.as_slice() {
        [] => Ok(format!("A{n}")),
        [b] => {
            if adj[b].len() != 3 {
                return Err(Error::NotFiniteType);
            }
            let mut arms: Vec<usize> = adj[b]
                .iter()
                .map(|&start| arm_length(&adj, *b, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(format!("D{n}")),
                [1, 2, 2] => Ok("E6".into()),
                [1, 2, 3] => Ok("E7".into()),
                [1, 2, 4] => Ok("E8".into()),
                _ => Err(Error::NotFiniteType),
            }
        }
        _ => Err(Error::NotFiniteType),
    }
}

fn path_order(adj: &BTreeMap<usize, Vec<usize>>) -> Vec<usize> {
    let start = *adj
        .iter()
        .find(|(_, v)| v.len() == 1)
        .map(|(k, _)| k)
        .unwrap();
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[&cur].iter().find(|&&x| x != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    path
}

fn arm_length(adj: &BTreeMap<usize, Vec<usize>>, from: usize, start: usize) -> usize {
    let mut len = 1;
    let (mut prev, mut cur) = (from, start);
    while let Some(&next) = adj[&cur].iter().find(|&&x| x != prev) {
        len += 1;
        prev = cur;
        cur = next;
    }
    len
}
