//! Explicit construction of the irreducible module `V(lambda)`.
//!
//! Vectors are spanned by monomials `f_{i_1} ... f_{i_k} eta` applied to the
//! highest weight vector `eta`. The contravariant form is fixed by
//! `<eta, eta> = 1` and `<f_i x, y> = <x, e_i y>`; its radical is the maximal
//! submodule of the Verma module, so dividing it out at every weight leaves
//! `V(lambda)`.
//!
//! The module is built one weight at a time in order of depth below `lambda`.
//! At weight `nu` the candidates are `f_i b` for every basis vector `b` of
//! every `nu + alpha_i`. Their Gram matrix is assembled from data of the
//! higher weights only:
//!
//! ```text
//! <f_i b, f_j b'> = <e_j b, e_i b'> + [i = j] <coroot_i, nu + alpha_i> <b, b'>
//! ```
//!
//! A maximal independent subset of candidates (greedy in word order) becomes
//! the basis at `nu`. For every basis vector the coordinates of `e_j b` in the
//! basis at `nu + alpha_j` are recovered from the same Gram entries by an
//! exact solve, and likewise the coordinates of every candidate `f_i b`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::freudenthal;
use crate::error::{Error, Result};
use crate::folding::DiagramAutomorphism;
use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::rootdata::{RootDatum, Weight};

/// The vector `f_{w[0]} f_{w[1]} ... f_{w[k-1]} eta` (nodes 0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn top() -> Self {
        Monomial(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, d: &RootDatum, lambda: &Weight) -> Weight {
        self.0
            .iter()
            .fold(lambda.clone(), |acc, &i| acc.sub(&d.simple_root(i)))
    }

    /// `sigma(f_{i_1} ... f_{i_k} eta) = f_{sigma(i_1)} ... f_{sigma(i_k)} eta`.
    pub fn apply_sigma(&self, sigma: &DiagramAutomorphism) -> Monomial {
        Monomial(self.0.iter().map(|&i| sigma.apply(i)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.0 {
            write!(f, "f{} ", i + 1)?;
        }
        write!(f, "eta")
    }
}

/// Integer combination of monomials, as an element of the Verma module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination(BTreeMap<Monomial, BigInt>);

impl Combination {
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.0.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.0.iter()
    }
}

impl From<Monomial> for Combination {
    fn from(m: Monomial) -> Self {
        Combination(BTreeMap::from([(m, BigInt::one())]))
    }
}

/// `e_i` on the Verma module. Moving `e_i` to the right through the word, each
/// letter `f_i` at position `p` leaves `h_i` acting on the suffix:
/// `e_i(f_j w) = f_j (e_i w) + [i = j] <coroot_i, weight(w)> w`, `e_i eta = 0`.
pub fn e_action(d: &RootDatum, lambda: &Weight, i: usize, v: &Combination) -> Combination {
    let a = d.cartan();
    let mut out = Combination::default();
    for (m, c) in v.terms() {
        let word = &m.0;
        // <coroot_i, weight of suffix after position p>
        let mut suffix_pairing = lambda.0[i];
        for p in (0..word.len()).rev() {
            if word[p] == i && suffix_pairing != 0 {
                let mut reduced = word.clone();
                reduced.remove(p);
                out.add_term(Monomial(reduced), c * BigInt::from(suffix_pairing));
            }
            suffix_pairing -= a[i][word[p]];
        }
    }
    out
}

/// Contravariant form of two monomials, computed on the Verma module by
/// repeated adjunction: `<f_{i_1} ... f_{i_k} eta, y> = <eta, e_{i_k} ... e_{i_1} y>`.
///
/// The cost grows with the number of distinct words of the weight; use
/// [`HWModule::form`] for deep weights.
pub fn contravariant_form(d: &RootDatum, lambda: &Weight, m: &Monomial, m2: &Monomial) -> BigInt {
    if m.weight(d, lambda) != m2.weight(d, lambda) {
        return BigInt::zero();
    }
    let mut v = Combination::from(m2.clone());
    for &i in &m.0 {
        v = e_action(d, lambda, i, &v);
        if v.is_zero() {
            return BigInt::zero();
        }
    }
    v.coefficient(&Monomial::top())
}

#[derive(Clone, Debug)]
struct WeightSpace {
    depth: usize,
    basis: Vec<Monomial>,
    gram: IntMatrix,
    gram_inv: RatMatrix,
    /// `raise[j][k]`: coordinates of `e_j b_k` at `weight + alpha_j` (empty when that is not a weight).
    raise: Vec<Vec<Vec<BigRational>>>,
    /// `lower[i][k]`: coordinates of `f_i b_k` at `weight - alpha_i` (empty when that is not a weight).
    lower: Vec<Vec<Vec<BigRational>>>,
}

impl WeightSpace {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct HWModule {
    datum: RootDatum,
    lambda: Weight,
    spaces: BTreeMap<Weight, WeightSpace>,
    order: Vec<Weight>,
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn combine(v: &[BigRational], columns: &[Vec<BigRational>]) -> Vec<BigRational> {
    let dim = columns.first().map_or(0, Vec::len);
    let mut out = vec![BigRational::zero(); dim];
    for (c, col) in v.iter().zip(columns) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

impl HWModule {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    /// Weights of the module in construction order (by depth below `lambda`).
    pub fn weights(&self) -> &[Weight] {
        &self.order
    }

    pub fn dimension(&self) -> u64 {
        self.spaces.values().map(|s| s.dim() as u64).sum()
    }

    pub fn dim_at(&self, mu: &Weight) -> usize {
        self.spaces.get(mu).map_or(0, WeightSpace::dim)
    }

    pub fn depth_of(&self, mu: &Weight) -> Option<usize> {
        self.spaces.get(mu).map(|s| s.depth)
    }

    pub fn basis(&self, mu: &Weight) -> &[Monomial] {
        self.spaces.get(mu).map_or(&[], |s| s.basis.as_slice())
    }

    pub fn gram(&self, mu: &Weight) -> Option<&IntMatrix> {
        self.spaces.get(mu).map(|s| &s.gram)
    }

    /// `e_j v` for `v` given in the basis at `mu`; `None` when the result is
    /// zero because `mu + alpha_j` is not a weight.
    fn raise_vec(
        &self,
        mu: &Weight,
        j: usize,
        v: &[BigRational],
    ) -> Option<(Weight, Vec<BigRational>)> {
        let space = self.spaces.get(mu)?;
        let target = mu.add(&self.datum.simple_root(j));
        if !self.spaces.contains_key(&target) {
            return None;
        }
        Some((target, combine(v, &space.raise[j])))
    }

    /// `f_i v` for `v` given in the basis at `mu`.
    fn lower_vec(
        &self,
        mu: &Weight,
        i: usize,
        v: &[BigRational],
    ) -> Option<(Weight, Vec<BigRational>)> {
        let space = self.spaces.get(mu)?;
        let target = mu.sub(&self.datum.simple_root(i));
        if !self.spaces.contains_key(&target) {
            return None;
        }
        Some((target, combine(v, &space.lower[i])))
    }

    /// Coordinates of a monomial in the basis of its weight space, `None`
    /// when the monomial is zero in `V(lambda)` for weight reasons.
    pub fn coords(&self, m: &Monomial) -> Option<(Weight, Vec<BigRational>)> {
        let mut mu = self.lambda.clone();
        let mut v = vec![BigRational::one()];
        for &i in m.0.iter().rev() {
            (mu, v) = self.lower_vec(&mu, i, &v)?;
        }
        Some((mu, v))
    }

    /// `<v, m>` for `v` in the basis at `mu`, by raising `v` along the word of `m`:
    /// `<v, f_{j_1} ... f_{j_k} eta> = <e_{j_k} ... e_{j_1} v, eta>`.
    fn pair_with_monomial(&self, mu: &Weight, v: &[BigRational], m: &Monomial) -> BigRational {
        if m.weight(&self.datum, &self.lambda) != *mu {
            return BigRational::zero();
        }
        let mut cur = mu.clone();
        let mut vec = v.to_vec();
        for &j in &m.0 {
            match self.raise_vec(&cur, j, &vec) {
                Some((next, w)) => {
                    cur = next;
                    vec = w;
                }
                None => return BigRational::zero(),
            }
        }
        debug_assert_eq!(cur, self.lambda);
        vec[0].clone()
    }

    /// Contravariant form of two monomials in `V(lambda)`.
    pub fn form(&self, m: &Monomial, m2: &Monomial) -> BigInt {
        let Some((mu, v)) = self.coords(m) else {
            return BigInt::zero();
        };
        let value = self.pair_with_monomial(&mu, &v, m2);
        assert!(
            value.is_integer(),
            "contravariant form of monomials must be an integer"
        );
        value.to_integer()
    }

    /// Same form evaluated as `x^T G y` on coordinates; used to cross-check [`form`](Self::form).
    pub fn form_by_coords(&self, m: &Monomial, m2: &Monomial) -> BigRational {
        let (Some((mu, x)), Some((nu, y))) = (self.coords(m), self.coords(m2)) else {
            return BigRational::zero();
        };
        if mu != nu {
            return BigRational::zero();
        }
        let g = &self.spaces[&mu].gram;
        let gy: Vec<BigRational> = g
            .iter()
            .map(|row| linalg::dot(&row.iter().map(rat).collect::<Vec<_>>(), &y))
            .collect();
        linalg::dot(&x, &gy)
    }

    /// A random monomial reachable by lowering inside the support.
    pub fn random_monomial<R: Rng>(&self, rng: &mut R) -> Monomial {
        let max_depth = self.spaces.values().map(|s| s.depth).max().unwrap_or(0);
        let steps = rng.gen_range(0..=max_depth);
        let n = self.datum.rank();
        let mut mu = self.lambda.clone();
        let mut word = Vec::new();
        for _ in 0..steps {
            let options: Vec<usize> = (0..n)
                .filter(|&i| {
                    self.spaces
                        .contains_key(&mu.sub(&self.datum.simple_root(i)))
                })
                .collect();
            let Some(&i) = options.choose(rng) else {
                break;
            };
            word.insert(0, i);
            mu = mu.sub(&self.datum.simple_root(i));
        }
        Monomial(word)
    }
}

/// Builds `V(lambda)` and checks every weight dimension against Freudenthal.
pub fn build_module(d: &RootDatum, lambda: &Weight, cap: u64) -> Result<HWModule> {
    d.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let dim = d.weyl_dimension(lambda)?;
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let n = d.rank();
    let mut module = HWModule {
        datum: d.clone(),
        lambda: lambda.clone(),
        spaces: BTreeMap::new(),
        order: vec![lambda.clone()],
    };
    module.spaces.insert(
        lambda.clone(),
        WeightSpace {
            depth: 0,
            basis: vec![Monomial::top()],
            gram: vec![vec![BigInt::one()]],
            gram_inv: vec![vec![BigRational::one()]],
            raise: vec![vec![Vec::new()]; n],
            lower: vec![vec![Vec::new()]; n],
        },
    );

    let mut level = vec![lambda.clone()];
    let mut depth = 0;
    while !level.is_empty() {
        depth += 1;
        let next: BTreeSet<Weight> = level
            .iter()
            .flat_map(|mu| (0..n).map(move |i| mu.sub(&d.simple_root(i))))
            .collect();
        let mut new_level = Vec::new();
        for nu in next.into_iter().rev() {
            if let Some(space) = build_weight_space(&mut module, &nu, depth) {
                module.spaces.insert(nu.clone(), space);
                module.order.push(nu.clone());
                new_level.push(nu);
            }
        }
        level = new_level;
    }

    let ch = freudenthal(d, lambda, cap)?;
    for (mu, &m) in ch.mults() {
        if module.dim_at(mu) as u64 != m {
            return Err(Error::InternalMismatch(format!(
                "weight {mu}: module dimension {} but Freudenthal multiplicity {m}",
                module.dim_at(mu)
            )));
        }
    }
    if module.spaces.len() != ch.mults().len() || module.dimension() != dim {
        return Err(Error::InternalMismatch(format!(
            "module has {} weights and dimension {}, expected {} and {dim}",
            module.spaces.len(),
            module.dimension(),
            ch.mults().len()
        )));
    }
    Ok(module)
}

struct Candidate {
    node: usize,
    index: usize,
    word: Monomial,
}

/// Computes the weight space at `nu` from the spaces above it. Writes the
/// lowering coordinates of every candidate into the parent spaces. Returns
/// `None` when `nu` is not a weight.
fn build_weight_space(module: &mut HWModule, nu: &Weight, depth: usize) -> Option<WeightSpace> {
    let d = &module.datum;
    let n = d.rank();
    let parents: Vec<Option<Weight>> = (0..n)
        .map(|i| {
            let p = nu.add(&d.simple_root(i));
            module.spaces.contains_key(&p).then_some(p)
        })
        .collect();

    let mut cands: Vec<Candidate> = Vec::new();
    for (i, p) in parents.iter().enumerate() {
        let Some(p) = p else { continue };
        for (k, b) in module.spaces[p].basis.iter().enumerate() {
            let mut word = vec![i];
            word.extend_from_slice(&b.0);
            cands.push(Candidate {
                node: i,
                index: k,
                word: Monomial(word),
            });
        }
    }
    cands.sort_by(|a, b| a.word.cmp(&b.word));
    let position: HashMap<(usize, usize), usize> = cands
        .iter()
        .enumerate()
        .map(|(a, c)| ((c.node, c.index), a))
        .collect();

    // For candidate (j, l) and node i: G_Q * (coords of e_i b_l), Q = nu + alpha_i + alpha_j.
    let raised_gram: Vec<Vec<Vec<BigRational>>> = cands
        .iter()
        .map(|c| {
            let parent = &module.spaces[parents[c.node].as_ref().unwrap()];
            (0..n)
                .map(|i| {
                    let y = &parent.raise[i][c.index];
                    if y.is_empty() {
                        return Vec::new();
                    }
                    let q = nu.add(&d.simple_root(i)).add(&d.simple_root(c.node));
                    let g = &module.spaces[&q].gram;
                    g.iter()
                        .map(|row| {
                            row.iter()
                                .zip(y)
                                .filter(|(_, x)| !x.is_zero())
                                .fold(BigRational::zero(), |acc, (gij, x)| acc + rat(gij) * x)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let count = cands.len();
    let mut gram_c: IntMatrix = vec![vec![BigInt::zero(); count]; count];
    for a in 0..count {
        let (i, k) = (cands[a].node, cands[a].index);
        let pa = &module.spaces[parents[i].as_ref().unwrap()];
        for b in a..count {
            let (j, l) = (cands[b].node, cands[b].index);
            // <e_j b_k, e_i b_l> at nu + alpha_i + alpha_j
            let x = &pa.raise[j][k];
            let gy = &raised_gram[b][i];
            let mut value = if x.is_empty() || gy.is_empty() {
                BigRational::zero()
            } else {
                linalg::dot(x, gy)
            };
            if i == j {
                let pairing = nu.0[i] + 2;
                value += rat(&(&pa.gram[k][l] * BigInt::from(pairing)));
            }
            assert!(
                value.is_integer(),
                "Gram entry of monomials must be an integer"
            );
            let value = value.to_integer();
            gram_c[a][b] = value.clone();
            gram_c[b][a] = value;
        }
    }

    let selected = linalg::independent_columns(&gram_c);
    let parent_dims: Vec<usize> = parents
        .iter()
        .map(|p| p.as_ref().map_or(0, |p| module.spaces[p].dim()))
        .collect();

    if selected.is_empty() {
        for c in &cands {
            let parent = module
                .spaces
                .get_mut(parents[c.node].as_ref().unwrap())
                .unwrap();
            parent.lower[c.node][c.index] = Vec::new();
        }
        return None;
    }

    let gram: IntMatrix = selected
        .iter()
        .map(|&r| selected.iter().map(|&s| gram_c[r][s].clone()).collect())
        .collect();
    let gram_inv = linalg::inverse(&gram).expect("Gram matrix on an independent set is invertible");

    // f_i b_k for every candidate, in the new basis
    let lowered: Vec<Vec<BigRational>> = (0..count)
        .map(|b| {
            let col: Vec<BigRational> = selected.iter().map(|&r| rat(&gram_c[r][b])).collect();
            linalg::mat_vec(&gram_inv, &col)
        })
        .collect();

    // e_j c for every new basis vector c, in the basis at nu + alpha_j
    let raise: Vec<Vec<Vec<BigRational>>> = (0..n)
        .map(|j| {
            selected
                .iter()
                .map(|&s| match &parents[j] {
                    None => Vec::new(),
                    Some(p) => {
                        let col: Vec<BigRational> = (0..parent_dims[j])
                            .map(|k| rat(&gram_c[position[&(j, k)]][s]))
                            .collect();
                        linalg::mat_vec(&module.spaces[p].gram_inv, &col)
                    }
                })
                .collect()
        })
        .collect();

    let basis: Vec<Monomial> = selected.iter().map(|&s| cands[s].word.clone()).collect();
    let dim = basis.len();
    for (c, coords) in cands.iter().zip(lowered) {
        let parent = module
            .spaces
            .get_mut(parents[c.node].as_ref().unwrap())
            .unwrap();
        parent.lower[c.node][c.index] = coords;
    }
    Some(WeightSpace {
        depth,
        basis,
        gram,
        gram_inv,
        raise,
        lower: vec![vec![Vec::new(); dim]; n],
    })
}

/// Trace of `sigma` on the weight space `V_mu`, with `sigma` acting on
/// monomials by relabelling the lowering operators (so `sigma(eta) = eta`).
///
/// For each basis vector `b_k` the image `sigma(b_k)` is a monomial; its
/// coordinates `x` solve `G x = g` with `g_l = <b_l, sigma(b_k)>`, and the
/// trace is the sum of the diagonal coordinates.
pub fn sigma_trace(module: &HWModule, sigma: &DiagramAutomorphism, mu: &Weight) -> Result<i64> {
    module.datum.check_weight(mu)?;
    if sigma.rank() != module.datum.rank() || !sigma.preserves(&module.datum) {
        return Err(Error::NotAutomorphism);
    }
    if !sigma.fixes_weight(&module.lambda) {
        return Err(Error::NotInvariant(module.lambda.clone()));
    }
    if !sigma.fixes_weight(mu) {
        return Err(Error::NotInvariant(mu.clone()));
    }
    let space = module
        .spaces
        .get(mu)
        .ok_or_else(|| Error::OutsideSupport(mu.clone()))?;
    let dim = space.dim();
    let mut trace = BigRational::zero();
    for (k, b) in space.basis.iter().enumerate() {
        let image = b.apply_sigma(sigma);
        let g: Vec<BigRational> = (0..dim)
            .map(|l| {
                let mut unit = vec![BigRational::zero(); dim];
                unit[l] = BigRational::one();
                module.pair_with_monomial(mu, &unit, &image)
            })
            .collect();
        let x = linalg::mat_vec(&space.gram_inv, &g);
        trace += &x[k];
    }
    if !trace.is_integer() {
        return Err(Error::InexactDivision("sigma trace"));
    }
    i64::try_from(&trace.to_integer()).map_err(|_| Error::Overflow("sigma trace"))
}

/// Checks `<sigma x, sigma y> = <x, y>` on `samples` random monomial pairs.
/// Most pairs share a weight (the second word is a shuffle of the first);
/// every tenth pair is drawn independently.
pub fn form_sigma_invariance_check(
    module: &HWModule,
    sigma: &DiagramAutomorphism,
    samples: usize,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|s| {
        let x = module.random_monomial(&mut rng);
        let y = if s % 10 == 9 {
            module.random_monomial(&mut rng)
        } else {
            let mut letters = x.0.clone();
            letters.shuffle(&mut rng);
            Monomial(letters)
        };
        module.form(&x, &y) == module.form(&x.apply_sigma(sigma), &y.apply_sigma(sigma))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::make_datum;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn m(word: &[usize]) -> Monomial {
        Monomial(word.to_vec())
    }

    #[test]
    fn e_action_examples() {
        let a1 = make_datum("A1").unwrap();
        let lambda = w(&[2]);
        let v = e_action(&a1, &lambda, 0, &Combination::from(m(&[0])));
        assert_eq!(v.coefficient(&Monomial::top()), BigInt::from(2));
        assert!(e_action(&a1, &lambda, 0, &Combination::from(Monomial::top())).is_zero());

        let a2 = make_datum("A2").unwrap();
        assert!(e_action(&a2, &w(&[1, 0]), 1, &Combination::from(m(&[0]))).is_zero());
    }

    #[test]
    fn e_action_on_longer_word() {
        // sl2, lambda = 2: e f f eta = (2 + 0) f eta = 2 f eta  (h on f eta is 0, h on eta is 2)
        let a1 = make_datum("A1").unwrap();
        let v = e_action(&a1, &w(&[2]), 0, &Combination::from(m(&[0, 0])));
        assert_eq!(v.coefficient(&m(&[0])), BigInt::from(2));
    }

    #[test]
    fn naive_form_examples() {
        let a1 = make_datum("A1").unwrap();
        let lambda = w(&[2]);
        assert_eq!(
            contravariant_form(&a1, &lambda, &Monomial::top(), &Monomial::top()),
            BigInt::one()
        );
        assert_eq!(
            contravariant_form(&a1, &lambda, &m(&[0]), &m(&[0])),
            BigInt::from(2)
        );
        assert_eq!(
            contravariant_form(&a1, &lambda, &m(&[0]), &Monomial::top()),
            BigInt::zero()
        );
        // f^3 eta spans the radical
        assert_eq!(
            contravariant_form(&a1, &lambda, &m(&[0, 0, 0]), &m(&[0, 0, 0])),
            BigInt::zero()
        );
    }

    #[test]
    fn sl2_module() {
        let a1 = make_datum("A1").unwrap();
        let module = build_module(&a1, &w(&[2]), 2000).unwrap();
        assert_eq!(module.dim_at(&w(&[2])), 1);
        assert_eq!(module.dim_at(&w(&[0])), 1);
        assert_eq!(module.dim_at(&w(&[-2])), 1);
        assert_eq!(module.dimension(), 3);
        assert_eq!(module.gram(&w(&[0])).unwrap(), &vec![vec![BigInt::from(2)]]);
        // <f^2 eta, f^2 eta> = 2 * 1 * 2 = 4
        assert_eq!(
            module.gram(&w(&[-2])).unwrap(),
            &vec![vec![BigInt::from(4)]]
        );
    }

    #[test]
    fn a2_adjoint_module() {
        let a2 = make_datum("A2").unwrap();
        let module = build_module(&a2, &w(&[1, 1]), 2000).unwrap();
        assert_eq!(module.dim_at(&w(&[0, 0])), 2);
        assert_eq!(module.dimension(), 8);
        assert_eq!(module.basis(&w(&[1, 1])), &[Monomial::top()]);
        assert_eq!(module.basis(&w(&[0, 0])), &[m(&[0, 1]), m(&[1, 0])]);
    }

    #[test]
    fn trivial_module() {
        let d = make_datum("D4").unwrap();
        let module = build_module(&d, &Weight::zero(4), 2000).unwrap();
        assert_eq!(module.dimension(), 1);
        assert_eq!(module.weights(), &[Weight::zero(4)]);
    }

    #[test]
    fn build_errors() {
        let a2 = make_datum("A2").unwrap();
        assert!(matches!(
            build_module(&a2, &w(&[0, -1]), 2000),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            build_module(&a2, &w(&[3, 3]), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn gram_matrices_symmetric_and_invertible() {
        let a3 = make_datum("A3").unwrap();
        let module = build_module(&a3, &w(&[1, 1, 1]), 2000).unwrap();
        for mu in module.weights() {
            let g = module.gram(mu).unwrap();
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(x, &g[j][i]);
                }
            }
            assert!(linalg::determinant(g) > BigInt::zero());
        }
    }

    #[test]
    fn module_form_matches_verma_form() {
        let cases = [
            ("A2", vec![1, 1]),
            ("A3", vec![0, 1, 0]),
            ("C2", vec![1, 1]),
            ("G2", vec![1, 0]),
        ];
        for (label, lambda) in cases {
            let d = make_datum(label).unwrap();
            let lambda = Weight(lambda);
            let module = build_module(&d, &lambda, 2000).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..60 {
                let x = module.random_monomial(&mut rng);
                let mut letters = x.0.clone();
                letters.shuffle(&mut rng);
                let y = Monomial(letters);
                let naive = contravariant_form(&d, &lambda, &x, &y);
                assert_eq!(module.form(&x, &y), naive, "{label} {x} {y}");
                assert_eq!(module.form_by_coords(&x, &y), rat(&naive));
            }
        }
    }

    #[test]
    fn sigma_trace_examples() {
        let a2 = make_datum("A2").unwrap();
        let sigma = DiagramAutomorphism::parse("(1 2)", 2).unwrap();
        let module = build_module(&a2, &w(&[1, 1]), 2000).unwrap();
        assert_eq!(sigma_trace(&module, &sigma, &w(&[1, 1])).unwrap(), 1);
        assert_eq!(sigma_trace(&module, &sigma, &w(&[0, 0])).unwrap(), 0);
        assert_eq!(sigma_trace(&module, &sigma, &w(&[-1, -1])).unwrap(), 1);
        assert!(matches!(
            sigma_trace(&module, &sigma, &w(&[2, -1])),
            Err(Error::NotInvariant(_))
        ));
        assert!(matches!(
            sigma_trace(&module, &sigma, &w(&[-2, -2])),
            Err(Error::OutsideSupport(_))
        ));
    }

    #[test]
    fn sigma_trace_requires_invariant_highest_weight() {
        let a2 = make_datum("A2").unwrap();
        let sigma = DiagramAutomorphism::parse("(1 2)", 2).unwrap();
        let module = build_module(&a2, &w(&[1, 0]), 2000).unwrap();
        assert!(sigma_trace(&module, &sigma, &w(&[0, 0])).is_err());
    }

    #[test]
    fn identity_trace_is_dimension() {
        let d4 = make_datum("D4").unwrap();
        let id = DiagramAutomorphism::identity(4);
        let module = build_module(&d4, &w(&[0, 1, 0, 0]), 2000).unwrap();
        for mu in module.weights() {
            assert_eq!(
                sigma_trace(&module, &id, mu).unwrap(),
                module.dim_at(mu) as i64
            );
        }
    }

    #[test]
    fn form_invariance() {
        let a3 = make_datum("A3").unwrap();
        let sigma = DiagramAutomorphism::parse("(1 3)", 3).unwrap();
        let module = build_module(&a3, &w(&[0, 1, 0]), 2000).unwrap();
        assert!(form_sigma_invariance_check(&module, &sigma, 100, 0));
        assert!(form_sigma_invariance_check(
            &module,
            &DiagramAutomorphism::identity(3),
            100,
            0
        ));
    }

    #[test]
    fn weight_mismatched_pairs_vanish() {
        let a3 = make_datum("A3").unwrap();
        let module = build_module(&a3, &w(&[1, 0, 1]), 2000).unwrap();
        assert_eq!(module.form(&m(&[0]), &m(&[1])), BigInt::zero());
        assert_eq!(module.form(&m(&[0, 2]), &m(&[2])), BigInt::zero());
    }
}
