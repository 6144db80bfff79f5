//! Alternating cycle chains and the combinatorial group inverse
//! `α_ij = μ_ij / Δ_A`, plus the blockwise closed form as a second,
//! independent route.
//!
//! For a strongly connected class-D digraph, every alternating chain has
//! length 1 or 3 and is unique between its endpoints, so the production
//! search only inspects those two shapes. [`ChainSearch::Exhaustive`] walks
//! every simple path instead and fails if the structure is violated.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::digraph::{build_digraph, hub_layout, Digraph, PendantGroup};
use crate::error::{Error, Result};
use crate::matching::{maximum_matchings_class_d, Matching, MatchingFamily};
use crate::matrix::RMatrix;
use crate::rational::Rational;

/// Cycle chain `C_m(i, j)` through vertices `i = v_0, ..., v_m = j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleChain {
    pub vertices: Vec<usize>,
    pub length: usize,
    /// `P_m(i, j) = a_{v0 v1} a_{v1 v2} ... a_{v(m-1) vm}`.
    #[serde(with = "crate::rational::serde_str")]
    pub path_product: Rational,
}

impl CycleChain {
    fn new(a: &RMatrix, vertices: Vec<usize>) -> Self {
        let path_product = vertices
            .windows(2)
            .fold(Rational::one(), |acc, w| acc * &a[(w[0] - 1, w[1] - 1)]);
        CycleChain { length: vertices.len() - 1, vertices, path_product }
    }

    /// `β_ij = (-1)^((m-1)/2) P_m(i, j)`.
    pub fn beta(&self) -> Rational {
        if (self.length / 2) % 2 == 1 {
            -self.path_product.clone()
        } else {
            self.path_product.clone()
        }
    }

    /// Does the chain alternate with respect to `m`, starting and ending
    /// with cycles of `m`?
    pub fn alternates_with(&self, m: &Matching) -> bool {
        self.length % 2 == 1
            && self.vertices.windows(2).enumerate().all(|(t, w)| m.contains(w[0], w[1]) == (t % 2 == 0))
    }

    /// `β̄_{i,j}(M)`: product of the cycle products of `m`'s cycles that are
    /// not cycles of this chain (empty product is one).
    pub fn outside_product(&self, m: &Matching) -> Rational {
        m.cycles
            .iter()
            .filter(|c| !self.vertices.windows(2).any(|w| c.joins(w[0], w[1])))
            .fold(Rational::one(), |acc, c| acc * &c.cycle_product)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainSearch {
    /// Lengths 1 and 3 only.
    #[default]
    Restricted,
    /// All simple paths; errors on any alternating chain longer than three or
    /// on two distinct chains between the same endpoints.
    Exhaustive,
}

fn check_formula_hypotheses(a: &RMatrix) -> Result<(Digraph, Vec<PendantGroup>)> {
    let d = build_digraph(a)?;
    let hubs = hub_layout(&d)?;
    Ok((d, hubs))
}

fn matchings_alternating(chain: &CycleChain, fam: &MatchingFamily) -> Vec<usize> {
    fam.matchings
        .iter()
        .enumerate()
        .filter(|(_, m)| chain.alternates_with(m))
        .map(|(k, _)| k)
        .collect()
}

fn restricted_candidates(d: &Digraph, i: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d.has_edge(i, j) && d.has_edge(j, i) {
        out.push(vec![i, j]);
    }
    let ni = d.neighbors(i).expect("in range");
    let nj = d.neighbors(j).expect("in range");
    for &q in &ni {
        for &p in &nj {
            if q != p && q != j && p != i && d.has_edge(q, p) && d.has_edge(p, q) {
                out.push(vec![i, q, p, j]);
            }
        }
    }
    out
}

/// The unique alternating chain from `i` to `j` and `𝕄(i, j)`, or `None`
/// when `i` and `j` are not maximally matchable (including `i == j`).
pub fn alternating_chain(
    a: &RMatrix,
    fam: &MatchingFamily,
    i: usize,
    j: usize,
) -> Result<Option<(CycleChain, Vec<Matching>)>> {
    let (d, _) = check_formula_hypotheses(a)?;
    for v in [i, j] {
        if v == 0 || v > d.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: d.n() });
        }
    }
    Ok(find_restricted(a, &d, fam, i, j)?
        .map(|(chain, idx)| (chain, idx.into_iter().map(|k| fam.matchings[k].clone()).collect())))
}

fn find_restricted(
    a: &RMatrix,
    d: &Digraph,
    fam: &MatchingFamily,
    i: usize,
    j: usize,
) -> Result<Option<(CycleChain, Vec<usize>)>> {
    if i == j {
        return Ok(None);
    }
    let mut found = restricted_candidates(d, i, j).into_iter().filter_map(|vs| {
        let chain = CycleChain::new(a, vs);
        let ms = matchings_alternating(&chain, fam);
        (!ms.is_empty()).then_some((chain, ms))
    });
    let first = found.next();
    if let Some((other, _)) = found.next() {
        return Err(Error::Invariant(format!(
            "two alternating chains from {i} to {j}: {:?} and {:?}",
            first.expect("first").0.vertices,
            other.vertices
        )));
    }
    Ok(first)
}

/// Alternating chains keyed by `(i, j)`, each with the indices of the
/// matchings it alternates with.
pub type ChainMap = BTreeMap<(usize, usize), Vec<(CycleChain, Vec<usize>)>>;

/// Every alternating chain between every ordered pair, by depth-first search
/// over simple paths. Keys are `(i, j)`; values list `(chain, matching
/// indices into fam)`.
pub fn exhaustive_alternating_chains(
    a: &RMatrix,
    fam: &MatchingFamily,
) -> Result<ChainMap> {
    let d = build_digraph(a)?;
    let n = d.n();
    let adj: Vec<Vec<usize>> = (1..=n).map(|v| d.neighbors(v).expect("in range")).collect();
    let mut out: ChainMap = BTreeMap::new();
    for start in 1..=n {
        let mut path = vec![start];
        let mut on_path = vec![false; n + 1];
        on_path[start] = true;
        let alive: Vec<usize> = (0..fam.matchings.len()).collect();
        walk(a, fam, &adj, &mut path, &mut on_path, &alive, &mut out);
    }
    Ok(out)
}

fn walk(
    a: &RMatrix,
    fam: &MatchingFamily,
    adj: &[Vec<usize>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    alive: &[usize],
    out: &mut ChainMap,
) {
    let last = *path.last().expect("nonempty");
    // the next cycle is the (len)th; odd positions (1st, 3rd, ...) must be matched
    let must_match = path.len() % 2 == 1;
    for &w in &adj[last - 1] {
        if on_path[w] {
            continue;
        }
        let next: Vec<usize> =
            alive.iter().copied().filter(|&k| fam.matchings[k].contains(last, w) == must_match).collect();
        if next.is_empty() {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if must_match {
            let chain = CycleChain::new(a, path.clone());
            out.entry((path[0], w)).or_default().push((chain, next.clone()));
        }
        walk(a, fam, adj, path, on_path, &next, out);
        on_path[w] = false;
        path.pop();
    }
}

/// One maximally matchable ordered pair of the μ table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainEntry {
    pub i: usize,
    pub j: usize,
    pub chain: CycleChain,
    /// Indices into the matching family: `𝕄(i, j)`.
    pub matchings: Vec<usize>,
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub outside_sum: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub mu: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuTable {
    pub n: usize,
    pub mu: RMatrix,
    /// Row-major `n × n`; `matchable[(i-1)*n + (j-1)]`.
    pub matchable: Vec<bool>,
    pub chains: Vec<ChainEntry>,
}

impl MuTable {
    pub fn is_matchable(&self, i: usize, j: usize) -> bool {
        self.matchable[(i - 1) * self.n + (j - 1)]
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&ChainEntry> {
        self.chains.iter().find(|e| e.i == i && e.j == j)
    }
}

pub fn mu_table(a: &RMatrix) -> Result<MuTable> {
    let (_, _) = check_formula_hypotheses(a)?;
    let fam = maximum_matchings_class_d(a)?;
    mu_table_with(a, &fam, ChainSearch::Restricted)
}

pub fn mu_table_with(a: &RMatrix, fam: &MatchingFamily, search: ChainSearch) -> Result<MuTable> {
    let (d, _) = check_formula_hypotheses(a)?;
    let n = d.n();
    let mut found: BTreeMap<(usize, usize), (CycleChain, Vec<usize>)> = BTreeMap::new();
    match search {
        ChainSearch::Restricted => {
            for i in 1..=n {
                for j in 1..=n {
                    if let Some(hit) = find_restricted(a, &d, fam, i, j)? {
                        found.insert((i, j), hit);
                    }
                }
            }
        }
        ChainSearch::Exhaustive => {
            for ((i, j), mut chains) in exhaustive_alternating_chains(a, fam)? {
                if let Some((long, _)) = chains.iter().find(|(c, _)| c.length > 3) {
                    return Err(Error::Invariant(format!(
                        "alternating chain of length {} from {i} to {j}: {:?}",
                        long.length, long.vertices
                    )));
                }
                if chains.len() > 1 {
                    return Err(Error::Invariant(format!("{} alternating chains from {i} to {j}", chains.len())));
                }
                found.insert((i, j), chains.pop().expect("one chain"));
            }
        }
    }

    let mut mu = RMatrix::zeros(n, n);
    let mut matchable = vec![false; n * n];
    let mut chains = Vec::with_capacity(found.len());
    for ((i, j), (chain, ms)) in found {
        let beta = chain.beta();
        let outside_sum =
            ms.iter().fold(Rational::zero(), |acc, &k| acc + chain.outside_product(&fam.matchings[k]));
        let value = &beta * &outside_sum;
        mu[(i - 1, j - 1)] = value.clone();
        matchable[(i - 1) * n + (j - 1)] = true;
        chains.push(ChainEntry { i, j, chain, matchings: ms, beta, outside_sum, mu: value });
    }
    Ok(MuTable { n, mu, matchable, chains })
}

/// `α_i`: sum of the pendant cycle products at each hub. Their product is
/// `Δ_A`.
pub fn hub_cycle_sums(a: &RMatrix, hubs: &[PendantGroup]) -> Vec<(usize, Rational)> {
    hubs.iter()
        .map(|g| {
            let h = g.vertex - 1;
            let s = g.pendants.iter().fold(Rational::zero(), |acc, &p| acc + &a[(h, p - 1)] * &a[(p - 1, h)]);
            (g.vertex, s)
        })
        .collect()
}

fn vanishing_hubs(a: &RMatrix, hubs: &[PendantGroup]) -> Vec<usize> {
    hub_cycle_sums(a, hubs).into_iter().filter(|(_, s)| s.is_zero()).map(|(v, _)| v).collect()
}

/// Group inverse from maximum matchings and alternating chains:
/// `α_ij = μ_ij / Δ_A`.
pub fn graph_group_inverse(a: &RMatrix) -> Result<RMatrix> {
    let (_, hubs) = check_formula_hypotheses(a)?;
    let fam = maximum_matchings_class_d(a)?;
    graph_group_inverse_with(a, &fam, &hubs, ChainSearch::Restricted)
}

pub fn graph_group_inverse_exhaustive(a: &RMatrix) -> Result<RMatrix> {
    let (_, hubs) = check_formula_hypotheses(a)?;
    let fam = maximum_matchings_class_d(a)?;
    graph_group_inverse_with(a, &fam, &hubs, ChainSearch::Exhaustive)
}

fn graph_group_inverse_with(
    a: &RMatrix,
    fam: &MatchingFamily,
    hubs: &[PendantGroup],
    search: ChainSearch,
) -> Result<RMatrix> {
    if fam.delta.is_zero() {
        return Err(Error::NoGroupInverse { vanishing: vanishing_hubs(a, hubs) });
    }
    let table = mu_table_with(a, fam, search)?;
    Ok(table.mu.scale(&fam.delta.recip()))
}

/// Permutation (old 0-based index → new index) listing the hubs first in
/// ascending order, then each hub's pendants in the same hub order.
pub fn block_order(hubs: &[PendantGroup]) -> Vec<usize> {
    let order: Vec<usize> = hubs
        .iter()
        .map(|g| g.vertex)
        .chain(hubs.iter().flat_map(|g| g.pendants.iter().copied()))
        .collect();
    let mut perm = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old - 1] = new;
    }
    perm
}

/// Group inverse through the block form `[[E, F], [G, 0]]`, with
/// `F = x_1ᵀ ⊕ ... ⊕ x_kᵀ`, `G = y_1 ⊕ ... ⊕ y_k` and `α_i = x_iᵀ y_i`:
///
/// ```text
/// A# = [[0, Y], [Z, -W]],  Y = ⊕ x_iᵀ/α_i,  Z = ⊕ y_i/α_i,
/// W_ij = e_ij / (α_i α_j) · y_i x_jᵀ
/// ```
///
/// conjugated back to the original vertex order.
pub fn blockwise_group_inverse(a: &RMatrix) -> Result<RMatrix> {
    let (d, hubs) = check_formula_hypotheses(a)?;
    let n = d.n();
    let k = hubs.len();
    let perm = block_order(&hubs);
    let pa = a.permute_similar(&perm)?;

    // column ranges of each hub's pendants in the permuted order
    let mut ranges = Vec::with_capacity(k);
    let mut start = k;
    for g in &hubs {
        ranges.push(start..start + g.pendants.len());
        start += g.pendants.len();
    }
    for r in 0..n {
        for c in 0..n {
            let hub_r = r < k;
            let hub_c = c < k;
            let allowed = match (hub_r, hub_c) {
                (true, true) => true,
                (true, false) => ranges[r].contains(&c),
                (false, true) => ranges[c].contains(&r),
                (false, false) => false,
            };
            let nonzero = !pa[(r, c)].is_zero();
            if nonzero != allowed && !(hub_r && hub_c) {
                return Err(Error::Invariant(format!("entry ({r},{c}) breaks the block form")));
            }
        }
    }

    let xs: Vec<Vec<Rational>> = (0..k).map(|i| ranges[i].clone().map(|c| pa[(i, c)].clone()).collect()).collect();
    let ys: Vec<Vec<Rational>> = (0..k).map(|i| ranges[i].clone().map(|r| pa[(r, i)].clone()).collect()).collect();
    let alphas: Vec<Rational> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| x.iter().zip(y).fold(Rational::zero(), |acc, (p, q)| acc + p * q))
        .collect();
    let vanishing: Vec<usize> =
        alphas.iter().zip(&hubs).filter(|(al, _)| al.is_zero()).map(|(_, g)| g.vertex).collect();
    if !vanishing.is_empty() {
        return Err(Error::NoGroupInverse { vanishing });
    }

    let mut blocks = RMatrix::zeros(n, n);
    for i in 0..k {
        let inv = alphas[i].recip();
        for (t, c) in ranges[i].clone().enumerate() {
            blocks[(i, c)] = &xs[i][t] * &inv;
            blocks[(c, i)] = &ys[i][t] * &inv;
        }
    }
    for i in 0..k {
        for j in 0..k {
            let e = &pa[(i, j)];
            if e.is_zero() {
                continue;
            }
            let coeff = -(e / (&alphas[i] * &alphas[j]));
            for (s, r) in ranges[i].clone().enumerate() {
                for (t, c) in ranges[j].clone().enumerate() {
                    blocks[(r, c)] = &coeff * &ys[i][s] * &xs[j][t];
                }
            }
        }
    }
    let mut inverse = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    blocks.permute_similar(&inverse)
}
