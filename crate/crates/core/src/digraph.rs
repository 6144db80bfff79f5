//! The digraph `D(A)` of a matrix and the structural predicates the
//! group-inverse results quantify over.
//!
//! Vertices are numbered `1..=n` at the public surface; matrix row `i - 1`
//! corresponds to vertex `i`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{ClassViolation, Error, Result};
use crate::matrix::RMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    /// 0-based successor sets, loops excluded.
    out: Vec<BTreeSet<usize>>,
    loops: Vec<usize>,
}

pub fn build_digraph(a: &RMatrix) -> Result<Digraph> {
    let n = a.ensure_square()?;
    let mut out = vec![BTreeSet::new(); n];
    let mut loops = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            if i == j {
                loops.push(i + 1);
            } else {
                out[i].insert(j);
            }
        }
    }
    Ok(Digraph { n, out, loops })
}

impl Digraph {
    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(v - 1)
        }
    }

    /// Directed edge `(i, j)`, 1-based.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.out[i - 1].contains(&(j - 1))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i + 1, j + 1)))
            .collect()
    }

    /// Vertices carrying a nonzero diagonal entry.
    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn is_simple_symmetric(&self) -> bool {
        self.loops.is_empty()
            && self
                .out
                .iter()
                .enumerate()
                .all(|(i, s)| s.iter().all(|&j| self.out[j].contains(&i)))
    }

    /// `N(i)`: vertices joined to `i` by a 2-cycle, ascending.
    pub fn neighbors(&self, i: usize) -> Result<Vec<usize>> {
        let i0 = self.check(i)?;
        Ok(self.two_cycle_neighbors(i0).map(|j| j + 1).collect())
    }

    fn two_cycle_neighbors(&self, i0: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[i0].iter().copied().filter(move |&j| self.out[j].contains(&i0))
    }

    fn degree0(&self, i0: usize) -> usize {
        self.two_cycle_neighbors(i0).count()
    }

    /// Incident to exactly one 2-cycle.
    pub fn is_pendant(&self, i: usize) -> Result<bool> {
        Ok(self.degree0(self.check(i)?) == 1)
    }

    pub fn two_cycle_count(&self) -> usize {
        (0..self.n).map(|i| self.degree0(i)).sum::<usize>() / 2
    }

    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.degree0(i) == 1).map(|i| i + 1).collect()
    }

    pub fn nonpendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.degree0(i) != 1).map(|i| i + 1).collect()
    }

    /// Strongly connected components (Tarjan), each sorted, listed by
    /// smallest member. Vertices are 1-based.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let succ: Vec<Vec<usize>> = self.out.iter().map(|s| s.iter().copied().collect()).collect();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut next = 0usize;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // (vertex, position in its successor list)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < succ[v].len() {
                    let w = succ[v][*pos];
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w + 1);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps.sort();
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n > 0 && self.strongly_connected_components().len() == 1
    }
}

/// Pendant vertices adjacent to `i`, ascending.
pub fn pendant_neighbors(d: &Digraph, i: usize) -> Result<Vec<usize>> {
    let i0 = d.check(i)?;
    Ok(d.two_cycle_neighbors(i0).filter(|&j| d.degree0(j) == 1).map(|j| j + 1).collect())
}

/// The pendants hanging off one non-pendant vertex (`r_i = pendants.len()`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantGroup {
    pub vertex: usize,
    pub pendants: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub simple_symmetric: bool,
    pub strongly_connected: bool,
    pub two_cycles: usize,
    pub loops: Vec<usize>,
    pub pendant_set: Vec<usize>,
    pub nonpendant_set: Vec<usize>,
    pub in_class_d: bool,
    pub is_corona: bool,
    pub is_star: bool,
    pub star_center: Option<usize>,
    /// One entry per non-pendant vertex, ascending.
    pub pendant_neighbors: Vec<PendantGroup>,
}

pub fn analyze_structure(d: &Digraph) -> StructureReport {
    let simple_symmetric = d.is_simple_symmetric();
    let strongly_connected = d.is_strongly_connected();
    let pendant_set = d.pendant_vertices();
    let nonpendant_set = d.nonpendant_vertices();
    let groups: Vec<PendantGroup> = nonpendant_set
        .iter()
        .map(|&v| PendantGroup { vertex: v, pendants: pendant_neighbors(d, v).expect("in range") })
        .collect();

    let in_class_d = simple_symmetric && groups.iter().all(|g| !g.pendants.is_empty());
    let is_corona = in_class_d
        && !nonpendant_set.is_empty()
        && pendant_set.len() == nonpendant_set.len()
        && groups.iter().all(|g| g.pendants.len() == 1);
    let star_center = star_center(d, simple_symmetric, strongly_connected);

    StructureReport {
        n: d.n(),
        simple_symmetric,
        strongly_connected,
        two_cycles: d.two_cycle_count(),
        loops: d.loops().to_vec(),
        pendant_set,
        nonpendant_set,
        in_class_d,
        is_corona,
        is_star: star_center.is_some(),
        star_center,
        pendant_neighbors: groups,
    }
}

/// Hubs of the block decomposition used by the formula paths: each
/// non-pendant vertex (ascending) with its pendant neighbors. The single
/// 2-cycle on two vertices is treated as a star centred at vertex 1.
///
/// Fails with the first violated hypothesis: simple symmetric, at least one
/// 2-cycle, strongly connected, class D.
pub fn hub_layout(d: &Digraph) -> Result<Vec<PendantGroup>> {
    let r = analyze_structure(d);
    if !r.simple_symmetric {
        return Err(Error::ClassViolation(ClassViolation::NotSimpleSymmetric));
    }
    if r.two_cycles == 0 {
        return Err(Error::ClassViolation(ClassViolation::Degenerate));
    }
    if !r.strongly_connected {
        return Err(Error::ClassViolation(ClassViolation::NotStronglyConnected));
    }
    if !r.in_class_d {
        return Err(Error::ClassViolation(ClassViolation::NotInClassD));
    }
    if r.nonpendant_set.is_empty() {
        debug_assert_eq!(r.n, 2);
        return Ok(vec![PendantGroup { vertex: 1, pendants: vec![2] }]);
    }
    Ok(r.pendant_neighbors)
}

/// A tree digraph whose underlying tree is `K_{1,n-1}`. For `n = 2` both
/// vertices qualify and vertex 1 is reported as the center.
fn star_center(d: &Digraph, simple_symmetric: bool, strongly_connected: bool) -> Option<usize> {
    let n = d.n();
    if n < 2 || !simple_symmetric || !strongly_connected || d.two_cycle_count() != n - 1 {
        return None;
    }
    (0..n).find(|&i| d.degree0(i) == n - 1).map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ten_vertex_digraph() {
        let d = build_digraph(&fixtures::ten_vertex()).unwrap();
        assert!(d.is_simple_symmetric());
        assert_eq!(d.pendant_vertices(), vec![5, 6, 7, 8, 9, 10]);
        assert_eq!(d.nonpendant_vertices(), vec![1, 2, 3, 4]);
        assert_eq!(d.two_cycle_count(), 10);
        let r = analyze_structure(&d);
        assert!(r.in_class_d && r.strongly_connected);
        assert!(!r.is_corona && !r.is_star);
    }

    #[test]
    fn ten_vertex_minus_vertex_ten_leaves_class() {
        let a = fixtures::ten_vertex();
        let keep: Vec<usize> = (0..9).collect();
        let d2 = build_digraph(&a.select(&keep, &keep)).unwrap();
        let r = analyze_structure(&d2);
        assert!(r.simple_symmetric);
        assert!(!r.in_class_d);
        let four = r.pendant_neighbors.iter().find(|g| g.vertex == 4).unwrap();
        assert!(four.pendants.is_empty());
    }

    #[test]
    fn pendant_neighbor_lists() {
        let d = build_digraph(&fixtures::ten_vertex()).unwrap();
        assert_eq!(pendant_neighbors(&d, 1).unwrap(), vec![5, 6]);
        assert_eq!(pendant_neighbors(&d, 3).unwrap(), vec![8, 9]);
        assert_eq!(pendant_neighbors(&d, 5).unwrap(), Vec::<usize>::new());
        assert!(matches!(pendant_neighbors(&d, 11), Err(Error::VertexOutOfRange { vertex: 11, n: 10 })));
        assert!(pendant_neighbors(&d, 0).is_err());
    }

    #[test]
    fn edgeless_digraph() {
        let d = build_digraph(&RMatrix::zeros(3, 3)).unwrap();
        assert!(d.edges().is_empty());
        assert!(d.is_simple_symmetric());
        assert!(!d.is_strongly_connected());
        let r = analyze_structure(&d);
        assert!(!r.in_class_d && !r.is_star && !r.is_corona);
    }

    #[test]
    fn ssd_example_is_outside_class() {
        let d = build_digraph(&fixtures::outside_class_five()).unwrap();
        let r = analyze_structure(&d);
        assert_eq!(r.pendant_set, vec![4, 5]);
        assert_eq!(r.nonpendant_set, vec![1, 2, 3]);
        assert_eq!(pendant_neighbors(&d, 2).unwrap(), Vec::<usize>::new());
        assert!(r.simple_symmetric && !r.in_class_d);
    }

    #[test]
    fn star_matrix_b() {
        let r = analyze_structure(&build_digraph(&fixtures::star_five()).unwrap());
        assert!(r.is_star && r.in_class_d && !r.is_corona);
        assert_eq!(r.star_center, Some(1));
    }

    #[test]
    fn two_vertex_tie_break_is_star() {
        let r = analyze_structure(&build_digraph(&RMatrix::from_i64(&[&[0, 2], &[3, 0]])).unwrap());
        assert!(r.in_class_d && r.is_star && !r.is_corona);
        assert_eq!(r.star_center, Some(1));
        assert!(r.nonpendant_set.is_empty());
    }

    #[test]
    fn path_on_four_is_corona() {
        let a = RMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        let r = analyze_structure(&build_digraph(&a).unwrap());
        assert!(r.is_corona && r.in_class_d && !r.is_star);
    }

    #[test]
    fn loops_and_one_way_edges_break_symmetry() {
        let d = build_digraph(&RMatrix::from_i64(&[&[1, 1], &[1, 0]])).unwrap();
        assert_eq!(d.loops(), &[1]);
        assert!(!analyze_structure(&d).simple_symmetric);
        let d = build_digraph(&RMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        let r = analyze_structure(&d);
        assert!(!r.simple_symmetric && !r.in_class_d && !r.strongly_connected);
    }

    #[test]
    fn hub_layout_refuses_outside_hypotheses() {
        let cv = |m: &RMatrix| hub_layout(&build_digraph(m).unwrap()).unwrap_err();
        assert_eq!(cv(&fixtures::outside_class_five()), Error::ClassViolation(ClassViolation::NotInClassD));
        assert_eq!(cv(&RMatrix::zeros(1, 1)), Error::ClassViolation(ClassViolation::Degenerate));
        assert_eq!(
            cv(&RMatrix::from_i64(&[&[0, 1], &[0, 0]])),
            Error::ClassViolation(ClassViolation::NotSimpleSymmetric)
        );
        // two disjoint 2-cycles
        let two_k2 = RMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(cv(&two_k2), Error::ClassViolation(ClassViolation::NotStronglyConnected));
        let hubs = hub_layout(&build_digraph(&fixtures::ten_vertex()).unwrap()).unwrap();
        let r: Vec<usize> = hubs.iter().map(|g| g.pendants.len()).collect();
        assert_eq!(r, vec![2, 1, 2, 1]);
        let k2 = hub_layout(&build_digraph(&RMatrix::from_i64(&[&[0, 2], &[3, 0]])).unwrap()).unwrap();
        assert_eq!(k2, vec![PendantGroup { vertex: 1, pendants: vec![2] }]);
    }

    #[test]
    fn scc_on_directed_cycle_plus_tail() {
        // 1 -> 2 -> 3 -> 1, 3 -> 4
        let a = RMatrix::from_i64(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, 0]]);
        let d = build_digraph(&a).unwrap();
        assert_eq!(d.strongly_connected_components(), vec![vec![1, 2, 3], vec![4]]);
        assert!(!d.is_strongly_connected());
    }
}
