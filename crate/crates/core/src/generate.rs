//! Seeded random instance generators: stars, coronas, other class-D
//! digraphs, and class-D digraphs whose pendant cycle products cancel at a
//! hub (no group inverse).
//!
//! Weights are nonzero integers in `[-w, w]`; every instance is relabelled by
//! a random vertex permutation so hubs are not always listed first.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::hub_cycle_sums;
use crate::digraph::{build_digraph, hub_layout};
use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::rational::int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Star,
    Corona,
    /// Class D with at least two hubs and some hub carrying two or more
    /// pendants: neither star nor corona.
    ClassD,
    /// Rotates through star, corona and class D by instance index.
    Mixed,
    /// Class D with `Δ_A = 0`.
    ZeroDelta,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Corona => "corona",
            Family::ClassD => "classd",
            Family::Mixed => "mixed",
            Family::ZeroDelta => "zero-delta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "star" => Ok(Family::Star),
            "corona" => Ok(Family::Corona),
            "classd" | "class-d" | "class_d" => Ok(Family::ClassD),
            "mixed" => Ok(Family::Mixed),
            "zero-delta" | "zero_delta" | "zerodelta" => Ok(Family::ZeroDelta),
            _ => Err(format!("unknown family {s:?} (star, corona, classd, mixed, zero-delta)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenParams {
    /// Largest vertex count produced.
    pub max_n: usize,
    /// Weight bound `w`.
    pub weight: i64,
    /// Probability of each extra hub-hub edge beyond a random spanning tree.
    pub density: f64,
    /// Largest pendant count per hub for the class-D families.
    pub max_pendants: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { max_n: 14, weight: 5, density: 0.4, max_pendants: 3 }
    }
}

impl GenParams {
    fn validate(&self, family: Family) -> Result<()> {
        let min_n = match family {
            Family::Star => 2,
            Family::Corona | Family::ZeroDelta => 4,
            Family::ClassD | Family::Mixed => 5,
        };
        let bad = |reason: String| Err(Error::Generation { attempts: 0, reason });
        if self.max_n < min_n {
            return bad(format!("family {family} needs max_n >= {min_n}"));
        }
        if self.weight < 1 {
            return bad("weight bound must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.density) {
            return bad("density must lie in [0, 1]".into());
        }
        if self.max_pendants < 2 && matches!(family, Family::ClassD | Family::Mixed | Family::ZeroDelta) {
            return bad("max_pendants must be at least 2".into());
        }
        Ok(())
    }
}

pub const RETRY_BUDGET: usize = 1000;

/// Seed of instance `index` in a batch seeded with `seed` (splitmix64).
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub family: Family,
    pub seed: u64,
    pub index: u64,
    pub params: GenParams,
    pub matrix: RMatrix,
}

impl Instance {
    /// Comment line recording how to regenerate this instance.
    pub fn provenance(&self) -> String {
        format!(
            "# gen family={} seed={} index={} max_n={} weight={} density={} max_pendants={} n={}",
            self.family,
            self.seed,
            self.index,
            self.params.max_n,
            self.params.weight,
            self.params.density,
            self.params.max_pendants,
            self.matrix.rows()
        )
    }

    pub fn to_text(&self) -> String {
        format!("{}\n{}", self.provenance(), self.matrix.to_text())
    }
}

/// Instance `index` of the batch `(family, seed, params)`. Families other
/// than [`Family::ZeroDelta`] are resampled until `Δ_A ≠ 0`.
pub fn generate(family: Family, seed: u64, index: u64, params: &GenParams) -> Result<Instance> {
    params.validate(family)?;
    let concrete = match family {
        Family::Mixed => [Family::Star, Family::Corona, Family::ClassD][(index % 3) as usize],
        f => f,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, index));
    for _ in 0..RETRY_BUDGET {
        let m = match concrete {
            Family::Star => random_star(&mut rng, params),
            Family::Corona => random_corona(&mut rng, params),
            Family::ClassD => random_class_d(&mut rng, params),
            Family::ZeroDelta => random_zero_delta(&mut rng, params),
            Family::Mixed => unreachable!(),
        };
        let hubs = hub_layout(&build_digraph(&m)?)?;
        let delta_zero = hub_cycle_sums(&m, &hubs).iter().any(|(_, s)| s.is_zero());
        if delta_zero == (concrete == Family::ZeroDelta) {
            return Ok(Instance { family, seed, index, params: *params, matrix: m });
        }
    }
    Err(Error::Generation { attempts: RETRY_BUDGET, reason: format!("no acceptable {concrete} instance") })
}

fn weight(rng: &mut ChaCha8Rng, w: i64) -> i64 {
    let v = rng.gen_range(1..=w);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Undirected weighted skeleton turned into a matrix with independent
/// weights in each direction, then relabelled.
struct Builder {
    n: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, entries: Vec::new() }
    }

    fn join(&mut self, rng: &mut ChaCha8Rng, w: i64, u: usize, v: usize) {
        self.entries.push((u, v, weight(rng, w)));
        self.entries.push((v, u, weight(rng, w)));
    }

    fn join_with(&mut self, u: usize, v: usize, uv: i64, vu: i64) {
        self.entries.push((u, v, uv));
        self.entries.push((v, u, vu));
    }

    fn finish(self, rng: &mut ChaCha8Rng) -> RMatrix {
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm.shuffle(rng);
        let mut m = RMatrix::zeros(self.n, self.n);
        for (u, v, x) in self.entries {
            m[(perm[u], perm[v])] = int(x);
        }
        m
    }
}

fn hub_skeleton(rng: &mut ChaCha8Rng, b: &mut Builder, k: usize, p: &GenParams) {
    for i in 1..k {
        let j = rng.gen_range(0..i);
        b.join(rng, p.weight, i, j);
    }
    for i in 0..k {
        for j in i + 1..k {
            let already = b.entries.iter().any(|&(u, v, _)| (u, v) == (i, j) || (u, v) == (j, i));
            if !already && rng.gen_bool(p.density) {
                b.join(rng, p.weight, i, j);
            }
        }
    }
}

fn random_star(rng: &mut ChaCha8Rng, p: &GenParams) -> RMatrix {
    let n = rng.gen_range(2..=p.max_n);
    let mut b = Builder::new(n);
    for leaf in 1..n {
        b.join(rng, p.weight, 0, leaf);
    }
    b.finish(rng)
}

fn random_corona(rng: &mut ChaCha8Rng, p: &GenParams) -> RMatrix {
    let k = rng.gen_range(2..=p.max_n / 2);
    let mut b = Builder::new(2 * k);
    hub_skeleton(rng, &mut b, k, p);
    for i in 0..k {
        b.join(rng, p.weight, i, k + i);
    }
    b.finish(rng)
}

/// Pendant counts per hub with total vertex count within `max_n` and at least
/// one hub carrying two or more pendants.
fn pendant_counts(rng: &mut ChaCha8Rng, p: &GenParams, min_k: usize) -> Vec<usize> {
    loop {
        let k = rng.gen_range(min_k..=((p.max_n - 1) / 2).max(min_k));
        let mut r: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=p.max_pendants)).collect();
        if r.iter().all(|&x| x < 2) {
            let i = rng.gen_range(0..k);
            r[i] = 2;
        }
        if k + r.iter().sum::<usize>() <= p.max_n {
            return r;
        }
    }
}

fn attach_pendants(rng: &mut ChaCha8Rng, b: &mut Builder, r: &[usize], p: &GenParams) -> Vec<Vec<usize>> {
    let mut next = r.len();
    let mut groups = Vec::with_capacity(r.len());
    for (hub, &count) in r.iter().enumerate() {
        let mut g = Vec::with_capacity(count);
        for _ in 0..count {
            b.join(rng, p.weight, hub, next);
            g.push(next);
            next += 1;
        }
        groups.push(g);
    }
    groups
}

fn random_class_d(rng: &mut ChaCha8Rng, p: &GenParams) -> RMatrix {
    let r = pendant_counts(rng, p, 2);
    let n = r.len() + r.iter().sum::<usize>();
    let mut b = Builder::new(n);
    hub_skeleton(rng, &mut b, r.len(), p);
    attach_pendants(rng, &mut b, &r, p);
    b.finish(rng)
}

/// One hub with at least two pendants gets cycle products summing to zero:
/// the last pendant's weights are `(-s, 1)` where `s` is the sum of the
/// others, so that entry may exceed the weight bound.
fn random_zero_delta(rng: &mut ChaCha8Rng, p: &GenParams) -> RMatrix {
    let r = pendant_counts(rng, p, 1);
    let n = r.len() + r.iter().sum::<usize>();
    let candidates: Vec<usize> = (0..r.len()).filter(|&i| r[i] >= 2).collect();
    let target = *candidates.choose(rng).expect("some hub has two pendants");
    loop {
        let mut b = Builder::new(n);
        hub_skeleton(rng, &mut b, r.len(), p);
        let mut next = r.len();
        let mut sum = 0i64;
        for (hub, &count) in r.iter().enumerate() {
            for t in 0..count {
                if hub == target && t + 1 == count {
                    b.join_with(hub, next, -sum, 1);
                } else {
                    let (x, y) = (weight(rng, p.weight), weight(rng, p.weight));
                    if hub == target {
                        sum += x * y;
                    }
                    b.join_with(hub, next, x, y);
                }
                next += 1;
            }
        }
        if sum != 0 {
            return b.finish(rng);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::DigraphClass;
    use crate::digraph::analyze_structure;

    fn class_of(m: &RMatrix) -> DigraphClass {
        DigraphClass::of(&analyze_structure(&build_digraph(m).unwrap()))
    }

    #[test]
    fn deterministic_under_seed() {
        let p = GenParams::default();
        for fam in [Family::Star, Family::Corona, Family::ClassD, Family::ZeroDelta] {
            let a = generate(fam, 7, 3, &p).unwrap();
            let b = generate(fam, 7, 3, &p).unwrap();
            assert_eq!(a, b);
            assert_ne!(a.matrix, generate(fam, 8, 3, &p).unwrap().matrix);
        }
    }

    #[test]
    fn families_have_their_shape() {
        let p = GenParams::default();
        for i in 0..40 {
            let s = generate(Family::Star, 1, i, &p).unwrap().matrix;
            assert_eq!(class_of(&s), DigraphClass::Star);
            let c = generate(Family::Corona, 1, i, &p).unwrap().matrix;
            assert_eq!(class_of(&c), DigraphClass::Corona);
            let d = generate(Family::ClassD, 1, i, &p).unwrap().matrix;
            assert_eq!(class_of(&d), DigraphClass::OtherInD);
            for m in [&s, &c, &d] {
                assert!(m.rows() <= p.max_n);
                assert!(m.is_combinatorially_symmetric_zero_diagonal());
            }
        }
    }

    #[test]
    fn zero_delta_vanishes_at_a_hub() {
        let p = GenParams::default();
        for i in 0..20 {
            let m = generate(Family::ZeroDelta, 5, i, &p).unwrap().matrix;
            let hubs = hub_layout(&build_digraph(&m).unwrap()).unwrap();
            assert!(hub_cycle_sums(&m, &hubs).iter().any(|(_, s)| s.is_zero()));
        }
    }

    #[test]
    fn provenance_line_parses_back() {
        let inst = generate(Family::Corona, 11, 2, &GenParams::default()).unwrap();
        let text = inst.to_text();
        assert!(text.starts_with("# gen family=corona seed=11 index=2 "));
        assert_eq!(RMatrix::parse(&text).unwrap(), inst.matrix);
    }

    #[test]
    fn rejects_bad_params() {
        let p = GenParams { max_n: 3, ..GenParams::default() };
        assert!(generate(Family::Corona, 0, 0, &p).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("zero-delta".parse::<Family>().unwrap(), Family::ZeroDelta);
    }
}
