//! Runtime checks of the identities the combinatorial formula rests on.
//! Each check recomputes its quantity from the matching family or the μ
//! table and compares exactly; nothing here feeds back into the inverse.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chain::{hub_cycle_sums, mu_table_with, ChainSearch, MuTable};
use crate::digraph::{build_digraph, hub_layout, Digraph};
use crate::error::Result;
use crate::matching::{
    matchings_covering, maximum_matchings_brute_force, maximum_matchings_class_d, MatchingFamily,
    DEFAULT_BRUTE_FORCE_CAP,
};
use crate::matrix::RMatrix;
use crate::rational::Rational;

/// Properties of `B = (μ_ij / Δ_A)` against `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub ab_eq_ba: bool,
    pub aba_eq_a: bool,
    pub bab_eq_b: bool,
    /// `(AB)_ii = 1` at non-pendant `i`, `Σ_{M∈𝕄(i)} η(M) / Δ_A` at pendant `i`.
    pub ab_diagonal: bool,
    /// `(AB)_ij = a_qj μ_iq / Δ_A` for pendants with common neighbor `q`, else 0.
    pub ab_off_diagonal: bool,
    /// `b_ij ≠ 0` exactly on maximally matchable pairs.
    pub support_is_matchable: bool,
    /// For pendants sharing a hub `q`, `Σ_{M∈𝕄(i,q)} β̄(M)` is the same for all of them.
    pub outside_sums_balanced: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.ab_eq_ba
            && self.aba_eq_a
            && self.bab_eq_b
            && self.ab_diagonal
            && self.ab_off_diagonal
            && self.support_is_matchable
            && self.outside_sums_balanced
    }
}

pub fn verify_formula_identities(a: &RMatrix) -> Result<IdentityReport> {
    let d = build_digraph(a)?;
    hub_layout(&d)?;
    let fam = maximum_matchings_class_d(a)?;
    let table = mu_table_with(a, &fam, ChainSearch::Restricted)?;
    if fam.delta.is_zero() {
        return Err(crate::error::Error::NoGroupInverse { vanishing: Vec::new() });
    }
    let b = table.mu.scale(&fam.delta.recip());
    identities_for(a, &d, &fam, &table, &b)
}

fn identities_for(
    a: &RMatrix,
    d: &Digraph,
    fam: &MatchingFamily,
    table: &MuTable,
    b: &RMatrix,
) -> Result<IdentityReport> {
    let n = d.n();
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let pendant: Vec<bool> = (1..=n).map(|v| d.is_pendant(v).expect("in range")).collect();
    let neighbors: Vec<Vec<usize>> = (1..=n).map(|v| d.neighbors(v).expect("in range")).collect();
    let inv_delta = fam.delta.recip();

    let mut ab_diagonal = true;
    for i in 1..=n {
        let expected = if pendant[i - 1] {
            matchings_covering(fam, i)?.iter().fold(Rational::zero(), |acc, m| acc + &m.product) * &inv_delta
        } else {
            Rational::one()
        };
        ab_diagonal &= ab[(i - 1, i - 1)] == expected;
    }

    let mut ab_off_diagonal = true;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let common: Vec<usize> =
                neighbors[i - 1].iter().copied().filter(|q| neighbors[j - 1].contains(q)).collect();
            let expected = if pendant[i - 1] && pendant[j - 1] && common.len() == 1 {
                let q = common[0];
                &a[(q - 1, j - 1)] * &table.mu[(i - 1, q - 1)] * &inv_delta
            } else {
                Rational::zero()
            };
            ab_off_diagonal &= ab[(i - 1, j - 1)] == expected;
        }
    }

    let support_is_matchable =
        (1..=n).all(|i| (1..=n).all(|j| !b[(i - 1, j - 1)].is_zero() == table.is_matchable(i, j)));

    let mut outside_sums_balanced = true;
    for q in 1..=n {
        let sums: Vec<&Rational> = neighbors[q - 1]
            .iter()
            .filter(|&&p| pendant[p - 1] && !pendant[q - 1])
            .filter_map(|&p| table.entry(p, q).map(|e| &e.outside_sum))
            .collect();
        outside_sums_balanced &= sums.windows(2).all(|w| w[0] == w[1]);
    }

    Ok(IdentityReport {
        ab_eq_ba: ab == ba,
        aba_eq_a: &ab.mul(a)? == a,
        bab_eq_b: &b.mul(&a.mul(b)?)? == b,
        ab_diagonal,
        ab_off_diagonal,
        support_is_matchable,
        outside_sums_balanced,
    })
}

/// Structural facts about maximum matchings of a strongly connected class-D
/// digraph, checked against the brute-force enumerator. Returns one message
/// per violated fact; empty means all hold.
pub fn matching_structure_violations(a: &RMatrix) -> Result<Vec<String>> {
    let d = build_digraph(a)?;
    let hubs = hub_layout(&d)?;
    let fast = maximum_matchings_class_d(a)?;
    let brute = maximum_matchings_brute_force(a, DEFAULT_BRUTE_FORCE_CAP.max(d.n()))?;
    let mut out = Vec::new();
    if fast != brute {
        out.push("structural and brute-force matching families differ".to_string());
    }
    let k = hubs.len();
    for m in &brute.matchings {
        if m.cycles.len() != k {
            out.push(format!("matching {:?} has {} cycles, expected {k}", m.key(), m.cycles.len()));
        }
        for c in &m.cycles {
            let pendant_cycle = d.is_pendant(c.u)? || d.is_pendant(c.v)?;
            if !pendant_cycle {
                out.push(format!("non-pendant cycle ({},{}) in a maximum matching", c.u, c.v));
            }
        }
        for v in d.nonpendant_vertices() {
            if !m.covers(v) {
                out.push(format!("non-pendant vertex {v} uncovered by {:?}", m.key()));
            }
        }
    }
    for hub in hubs.iter().filter(|g| g.pendants.len() >= 2) {
        // every maximum matching covers exactly one of the hub's pendants
        for m in &brute.matchings {
            let hits = hub.pendants.iter().filter(|&&p| m.covers(p)).count();
            if hits != 1 {
                out.push(format!("matching {:?} covers {hits} pendants of hub {}", m.key(), hub.vertex));
            }
        }
    }
    let product = hub_cycle_sums(a, &hubs).into_iter().fold(Rational::one(), |acc, (_, s)| acc * s);
    if product != brute.delta {
        out.push(format!("Δ = {} but product of hub sums = {}", brute.delta, product));
    }
    Ok(out)
}
