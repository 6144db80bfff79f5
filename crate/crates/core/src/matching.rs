//! 2-cycles, matchings and maximum matchings of `D(A)`, with matching
//! products and `Δ_A`.

use serde::Serialize;

use num_traits::{One, Zero};

use crate::digraph::{build_digraph, hub_layout, Digraph};
use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::rational::{format_rational, Rational};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// The 2-cycle `(u, v, u)` with `u < v`; vertices 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TwoCycle {
    pub u: usize,
    pub v: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub cycle_product: Rational,
}

impl TwoCycle {
    fn new(a: &RMatrix, x: usize, y: usize) -> Self {
        let (u, v) = if x < y { (x, y) } else { (y, x) };
        let cycle_product = &a[(u - 1, v - 1)] * &a[(v - 1, u - 1)];
        TwoCycle { u, v, cycle_product }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn joins(&self, x: usize, y: usize) -> bool {
        (self.u, self.v) == (x.min(y), x.max(y))
    }
}

/// Vertex-disjoint 2-cycles sorted by `(u, v)`, with `η(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub cycles: Vec<TwoCycle>,
    #[serde(with = "crate::rational::serde_str")]
    pub product: Rational,
}

impl Matching {
    fn from_cycles(mut cycles: Vec<TwoCycle>) -> Self {
        cycles.sort();
        let product = cycles.iter().fold(Rational::one(), |acc, c| acc * &c.cycle_product);
        Matching { cycles, product }
    }

    pub fn covers(&self, w: usize) -> bool {
        self.cycles.iter().any(|c| c.touches(w))
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.cycles.iter().any(|c| c.joins(x, y))
    }

    /// The cycle covering `w`, if any.
    pub fn partner(&self, w: usize) -> Option<usize> {
        self.cycles.iter().find(|c| c.touches(w)).map(|c| if c.u == w { c.v } else { c.u })
    }

    pub fn key(&self) -> Vec<(usize, usize)> {
        self.cycles.iter().map(|c| (c.u, c.v)).collect()
    }

    /// `{(u,v),...} product=p/q`
    pub fn describe(&self) -> String {
        let cycles: Vec<String> = self.cycles.iter().map(|c| format!("({},{})", c.u, c.v)).collect();
        format!("{{{}}} product={}", cycles.join(","), format_rational(&self.product))
    }
}

/// All maximum matchings of `D(A)`, canonically ordered, and `Δ_A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingFamily {
    pub n: usize,
    pub matchings: Vec<Matching>,
    pub max_size: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    /// No 2-cycles at all: one empty matching and `Δ = 1`.
    pub degenerate: bool,
}

impl MatchingFamily {
    fn from_matchings(n: usize, mut matchings: Vec<Matching>) -> Self {
        matchings.sort_by_key(Matching::key);
        let max_size = matchings.first().map_or(0, |m| m.cycles.len());
        let delta = matchings.iter().fold(Rational::zero(), |acc, m| acc + &m.product);
        MatchingFamily { n, matchings, max_size, delta, degenerate: max_size == 0 }
    }
}

fn require_simple_symmetric(d: &Digraph) -> Result<()> {
    if d.is_simple_symmetric() {
        Ok(())
    } else if !d.loops().is_empty() {
        Err(Error::NotSimpleSymmetric(format!("nonzero diagonal at vertex {:?}", d.loops())))
    } else {
        let (i, j) = d.edges().into_iter().find(|&(i, j)| !d.has_edge(j, i)).expect("asymmetric edge");
        Err(Error::NotSimpleSymmetric(format!("edge ({i},{j}) has no reverse")))
    }
}

pub fn enumerate_two_cycles(a: &RMatrix) -> Result<Vec<TwoCycle>> {
    let d = build_digraph(a)?;
    require_simple_symmetric(&d)?;
    Ok(d.edges().into_iter().filter(|&(i, j)| i < j).map(|(i, j)| TwoCycle::new(a, i, j)).collect())
}

/// Maximum matchings: the class-D structure when it applies, otherwise the
/// brute-force enumerator with the default cap.
pub fn maximum_matchings(a: &RMatrix) -> Result<MatchingFamily> {
    match maximum_matchings_class_d(a) {
        Ok(fam) => Ok(fam),
        Err(Error::ClassViolation(_)) => maximum_matchings_brute_force(a, DEFAULT_BRUTE_FORCE_CAP),
        Err(e) => Err(e),
    }
}

/// Depth-first enumeration over disjoint 2-cycle sets, valid for any simple
/// symmetric digraph. Exponential; refuses `n > cap`.
pub fn maximum_matchings_brute_force(a: &RMatrix, cap: usize) -> Result<MatchingFamily> {
    let d = build_digraph(a)?;
    require_simple_symmetric(&d)?;
    let n = d.n();
    if n > cap {
        return Err(Error::BruteForceCap { n, cap });
    }
    let adj: Vec<Vec<usize>> = (1..=n).map(|v| d.neighbors(v).expect("in range")).collect();
    let mut search = Search { adj: &adj, covered: vec![false; n + 1], current: Vec::new(), best: 0, found: Vec::new() };
    search.run(1);
    let matchings = search
        .found
        .into_iter()
        .map(|pairs| Matching::from_cycles(pairs.into_iter().map(|(u, v)| TwoCycle::new(a, u, v)).collect()))
        .collect();
    Ok(MatchingFamily::from_matchings(n, matchings))
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    covered: Vec<bool>,
    current: Vec<(usize, usize)>,
    best: usize,
    found: Vec<Vec<(usize, usize)>>,
}

impl Search<'_> {
    /// Every vertex below `from` has been decided.
    fn run(&mut self, from: usize) {
        let n = self.adj.len();
        let open = (from..=n).filter(|&w| !self.covered[w]).count();
        if self.current.len() + open / 2 < self.best {
            return;
        }
        let Some(v) = (from..=n).find(|&w| !self.covered[w]) else {
            match self.current.len().cmp(&self.best) {
                std::cmp::Ordering::Greater => {
                    self.best = self.current.len();
                    self.found = vec![self.current.clone()];
                }
                std::cmp::Ordering::Equal => self.found.push(self.current.clone()),
                std::cmp::Ordering::Less => {}
            }
            return;
        };
        for idx in 0..self.adj[v - 1].len() {
            let u = self.adj[v - 1][idx];
            if u < v || self.covered[u] {
                continue;
            }
            self.covered[v] = true;
            self.covered[u] = true;
            self.current.push((v, u));
            self.run(v + 1);
            self.current.pop();
            self.covered[u] = false;
            self.covered[v] = false;
        }
        // leave v unmatched
        self.run(v + 1);
    }
}

/// Class-D structure: in a strongly connected class-D digraph every maximum
/// matching picks exactly one pendant cycle at each non-pendant vertex, so
/// the family is the product of those choices.
pub fn maximum_matchings_class_d(a: &RMatrix) -> Result<MatchingFamily> {
    let d = build_digraph(a)?;
    require_simple_symmetric(&d)?;
    let hubs = hub_layout(&d)?;
    let mut partial: Vec<Vec<TwoCycle>> = vec![Vec::new()];
    for hub in &hubs {
        let mut next = Vec::with_capacity(partial.len() * hub.pendants.len());
        for base in &partial {
            for &p in &hub.pendants {
                let mut m = base.clone();
                m.push(TwoCycle::new(a, hub.vertex, p));
                next.push(m);
            }
        }
        partial = next;
    }
    Ok(MatchingFamily::from_matchings(d.n(), partial.into_iter().map(Matching::from_cycles).collect()))
}

/// `𝕄(i)`: the maximum matchings covering vertex `i`.
pub fn matchings_covering(fam: &MatchingFamily, i: usize) -> Result<Vec<Matching>> {
    if i == 0 || i > fam.n {
        return Err(Error::VertexOutOfRange { vertex: i, n: fam.n });
    }
    Ok(fam.matchings.iter().filter(|m| m.covers(i)).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ClassViolation;
    use crate::fixtures;
    use crate::rational::int;

    fn keys(ms: &[Matching]) -> Vec<Vec<(usize, usize)>> {
        ms.iter().map(Matching::key).collect()
    }

    #[test]
    fn two_cycles_of_ten_vertex_example() {
        let cycles = enumerate_two_cycles(&fixtures::ten_vertex()).unwrap();
        let pairs: Vec<(usize, usize)> = cycles.iter().map(|c| (c.u, c.v)).collect();
        assert_eq!(
            pairs,
            vec![(1, 2), (1, 4), (1, 5), (1, 6), (2, 3), (2, 7), (3, 4), (3, 8), (3, 9), (4, 10)]
        );
    }

    #[test]
    fn two_cycles_small_and_star() {
        let c = enumerate_two_cycles(&RMatrix::from_i64(&[&[0, 2], &[3, 0]])).unwrap();
        assert_eq!(c, vec![TwoCycle { u: 1, v: 2, cycle_product: int(6) }]);
        let star = enumerate_two_cycles(&fixtures::star_five()).unwrap();
        assert_eq!(star.len(), 4);
        assert!(star.iter().all(|c| c.u == 1));
        assert!(matches!(
            enumerate_two_cycles(&RMatrix::from_i64(&[&[0, 1], &[0, 0]])),
            Err(Error::NotSimpleSymmetric(_))
        ));
    }

    #[test]
    fn ten_vertex_family_both_engines() {
        let a = fixtures::ten_vertex();
        let brute = maximum_matchings_brute_force(&a, DEFAULT_BRUTE_FORCE_CAP).unwrap();
        let fast = maximum_matchings_class_d(&a).unwrap();
        assert_eq!(brute, fast);
        assert_eq!(brute.max_size, 4);
        assert_eq!(
            keys(&brute.matchings),
            vec![
                vec![(1, 5), (2, 7), (3, 8), (4, 10)],
                vec![(1, 5), (2, 7), (3, 9), (4, 10)],
                vec![(1, 6), (2, 7), (3, 8), (4, 10)],
                vec![(1, 6), (2, 7), (3, 9), (4, 10)],
            ]
        );
        let products: Vec<Rational> = brute.matchings.iter().map(|m| m.product.clone()).collect();
        assert_eq!(products, vec![int(288), int(-96), int(-432), int(144)]);
        assert_eq!(brute.delta, int(-96));
        assert_eq!(brute.matchings[0].describe(), "{(1,5),(2,7),(3,8),(4,10)} product=288");
    }

    #[test]
    fn single_two_cycle() {
        let fam = maximum_matchings(&RMatrix::from_i64(&[&[0, 2], &[3, 0]])).unwrap();
        assert_eq!(fam.matchings.len(), 1);
        assert_eq!(fam.delta, int(6));
    }

    #[test]
    fn outside_class_uses_brute_force() {
        // Oracle: brute force over every disjoint 2-cycle subset of the
        // 5 two-cycles (1,2),(1,3),(1,4),(1,5),(2,3): the size-2 sets are
        // {(1,4),(2,3)} with 4*4 and {(1,5),(2,3)} with 1*4.
        let a = fixtures::outside_class_five();
        assert_eq!(
            maximum_matchings_class_d(&a).unwrap_err(),
            Error::ClassViolation(ClassViolation::NotInClassD)
        );
        let fam = maximum_matchings(&a).unwrap();
        assert_eq!(fam.max_size, 2);
        assert_eq!(keys(&fam.matchings), vec![vec![(1, 4), (2, 3)], vec![(1, 5), (2, 3)]]);
        assert_eq!(fam.delta, int(20));
    }

    #[test]
    fn empty_digraph_is_degenerate() {
        let fam = maximum_matchings_brute_force(&RMatrix::zeros(3, 3), 20).unwrap();
        assert!(fam.degenerate);
        assert_eq!(fam.max_size, 0);
        assert_eq!(fam.matchings.len(), 1);
        assert_eq!(fam.delta, int(1));
    }

    #[test]
    fn brute_force_cap() {
        let a = RMatrix::zeros(5, 5);
        assert_eq!(maximum_matchings_brute_force(&a, 4).unwrap_err(), Error::BruteForceCap { n: 5, cap: 4 });
    }

    #[test]
    fn covering_sets() {
        let fam = maximum_matchings(&fixtures::ten_vertex()).unwrap();
        let cover = |i| keys(&matchings_covering(&fam, i).unwrap());
        assert_eq!(cover(5), keys(&fam.matchings[0..2]));
        assert_eq!(cover(6), keys(&fam.matchings[2..4]));
        assert_eq!(cover(2), keys(&fam.matchings));
        assert!(matchings_covering(&fam, 11).is_err());
    }

    #[test]
    fn odd_cycle_brute_force() {
        // triangle: three maximum matchings of size one
        let a = RMatrix::from_i64(&[&[0, 1, 2], &[3, 0, 4], &[5, 6, 0]]);
        let fam = maximum_matchings(&a).unwrap();
        assert_eq!(fam.max_size, 1);
        assert_eq!(fam.delta, int(3 + 2 * 5 + 4 * 6));
    }
}
