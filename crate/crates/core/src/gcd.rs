//! GCD graphs: construction from an ideal, neighborhoods, clique complexes,
//! and the presence constraints a graph shape forces on its fiber of ideals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::Error;
use crate::ideal::{Mask, SquareFreeIdeal};

/// Default cap on clique-complex face counts.
pub const FACE_BUDGET: usize = 1 << 20;

/// Simple graph on generators `1..=n`, one adjacency mask per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdGraph {
    n: usize,
    adjacency: Vec<Mask>,
}

impl GcdGraph {
    /// Edge `{i, j}` present iff some type contains both `i` and `j`.
    pub fn build(ideal: &SquareFreeIdeal) -> Self {
        let n = ideal.n();
        let mut adjacency = vec![0u32; n];
        for t in ideal.types() {
            let m = t.mask;
            for i in 0..n {
                if m >> i & 1 == 1 {
                    adjacency[i] |= m & !(1 << i);
                }
            }
        }
        GcdGraph { n, adjacency }
    }

    /// Builds a graph directly from an edge list on vertices `1..=n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![0u32; n];
        for &(i, j) in edges {
            assert!(i != j && i >= 1 && j >= 1 && i <= n && j <= n);
            adjacency[i - 1] |= 1 << (j - 1);
            adjacency[j - 1] |= 1 << (i - 1);
        }
        GcdGraph { n, adjacency }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> Mask {
        (1u32 << self.n) - 1
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn adjacency(&self, i: usize) -> Mask {
        self.adjacency[i - 1]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.adjacency[i - 1].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Union of adjacency masks over the members of `sigma`. Note the
    /// neighborhood may intersect `sigma` itself.
    pub fn neighborhood(&self, sigma: Mask) -> Mask {
        let mut nbhd = 0;
        let mut rest = sigma;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            nbhd |= self.adjacency[k];
            rest &= rest - 1;
        }
        nbhd
    }

    /// True iff `mask` induces a complete subgraph.
    pub fn is_clique(&self, mask: Mask) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if mask & !(1 << k) & !self.adjacency[k] != 0 {
                return false;
            }
        }
        true
    }

    /// Vertex partition into connected components, each as a mask, sorted by
    /// lowest member.
    pub fn components(&self) -> Vec<Mask> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u32 << start;
            loop {
                let grown = comp | self.neighborhood(comp);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// All graph automorphisms, each as a permutation (old 0-based index to
    /// new 0-based index). Brute force over all n! maps; intended for n <= 8.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        assert!(self.n <= 8, "automorphism search is brute force");
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::new();
        permute(&mut perm, 0, &mut |p| {
            let ok = (1..=self.n).all(|i| {
                (i + 1..=self.n).all(|j| {
                    self.has_edge(i, j) == self.has_edge(p[i - 1] + 1, p[j - 1] + 1)
                })
            });
            if ok {
                out.push(p.to_vec());
            }
        });
        out
    }

    /// DOT rendering; `attrs` optionally decorates vertices (key `"3"`) and
    /// edges (key `"3-5"`, smaller endpoint first) with raw attribute text,
    /// e.g. `style=dashed`.
    pub fn to_dot(&self, attrs: &BTreeMap<String, String>) -> String {
        let mut s = String::from("graph gcd {\n");
        for i in 1..=self.n {
            let extra = attrs
                .get(&i.to_string())
                .map(|a| format!(" [{a}]"))
                .unwrap_or_default();
            let _ = writeln!(s, "  {i}{extra};");
        }
        for (i, j) in self.edges() {
            let extra = attrs
                .get(&format!("{i}-{j}"))
                .map(|a| format!(" [{a}]"))
                .unwrap_or_default();
            let _ = writeln!(s, "  {i} -- {j}{extra};");
        }
        s.push_str("}\n");
        s
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Downward-closed face set of a graph's clique complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueComplex {
    pub n: usize,
    /// All nonempty faces, sorted ascending by mask.
    pub faces: Vec<Mask>,
}

impl CliqueComplex {
    /// Enumerates every clique of `g`, capped at `budget` faces.
    pub fn build(g: &GcdGraph, budget: usize) -> Result<Self, Error> {
        let mut faces = Vec::new();
        // Depth-first clique extension: a clique is grown only by vertices
        // above its maximum, adjacent to all current members.
        let mut stack: Vec<(Mask, usize)> = (0..g.n).map(|v| (1u32 << v, v)).collect();
        while let Some((clique, top)) = stack.pop() {
            faces.push(clique);
            if faces.len() > budget {
                return Err(Error::FaceBudgetExceeded(budget));
            }
            for v in (top + 1)..g.n {
                if clique & !g.adjacency[v] == 0 {
                    stack.push((clique | (1 << v), v));
                }
            }
        }
        faces.sort_unstable();
        Ok(CliqueComplex { n: g.n, faces })
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.faces.binary_search(&mask).is_ok()
    }

    pub fn facets(&self) -> Vec<Mask> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && g & f == f))
            .collect()
    }
}

/// A constraint on which variables must be present in any ideal realizing a
/// given GCD graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresenceConstraint {
    /// The variable with this type mask is present in every realization.
    Forced(Mask),
    /// At least one listed set of variables is entirely present.
    Disjunction(Vec<Vec<Mask>>),
}

/// Constraints forced by graph shape: edges outside triangles force their
/// edge variable, degree-1 vertices force their singleton, and degree-2
/// vertices force one of two variable pairs. Degree-2 disjunctions are
/// emitted even when subsumed by forced constraints; consumers deduplicate.
pub fn presence_constraints(g: &GcdGraph) -> Vec<PresenceConstraint> {
    let mut out = Vec::new();
    for (i, j) in g.edges() {
        let common = g.adjacency(i) & g.adjacency(j);
        if common == 0 {
            out.push(PresenceConstraint::Forced((1 << (i - 1)) | (1 << (j - 1))));
        }
    }
    for l in 1..=g.n {
        let nbrs = g.adjacency(l);
        match nbrs.count_ones() {
            1 => out.push(PresenceConstraint::Forced(1 << (l - 1))),
            2 => {
                let i = nbrs.trailing_zeros();
                let j = 31 - nbrs.leading_zeros();
                let lbit = 1u32 << (l - 1);
                out.push(PresenceConstraint::Disjunction(vec![
                    vec![lbit | (1 << i), lbit | (1 << j)],
                    vec![lbit, lbit | nbrs],
                ]));
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_example_ideal() -> SquareFreeIdeal {
        SquareFreeIdeal::validate_types(4, &[0b1000, 0b0011, 0b0101, 0b0110, 0b1001]).unwrap()
    }

    #[test]
    fn triangle_plus_pendant() {
        let g = GcdGraph::build(&paper_example_ideal());
        let mut edges = g.edges();
        edges.sort();
        assert_eq!(edges, vec![(1, 2), (1, 3), (1, 4), (2, 3)]);
        assert_eq!(g.neighborhood(0b0001), 0b1110);
    }

    #[test]
    fn all_singletons_give_edgeless_graph() {
        let ideal = SquareFreeIdeal::validate_types(4, &[1, 2, 4, 8]).unwrap();
        let g = GcdGraph::build(&ideal);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.neighborhood(0), 0);
    }

    #[test]
    fn clique_complex_facets() {
        let g = GcdGraph::build(&paper_example_ideal());
        let k = CliqueComplex::build(&g, FACE_BUDGET).unwrap();
        let mut facets = k.facets();
        facets.sort();
        assert_eq!(facets, vec![0b0111, 0b1001]);
        // Downward closed with all singletons.
        for &f in &k.faces {
            let mut rest = f;
            while rest != 0 {
                let b = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if f != b {
                    assert!(k.contains(f & !b));
                }
            }
        }
        for v in 0..4 {
            assert!(k.contains(1 << v));
        }
    }

    #[test]
    fn edgeless_cliques_are_singletons() {
        let g = GcdGraph::from_edges(3, &[]);
        let k = CliqueComplex::build(&g, FACE_BUDGET).unwrap();
        assert_eq!(k.faces, vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn p5_forced_set() {
        let g = GcdGraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let mut forced: Vec<Mask> = presence_constraints(&g)
            .into_iter()
            .filter_map(|c| match c {
                PresenceConstraint::Forced(m) => Some(m),
                _ => None,
            })
            .collect();
        forced.sort();
        forced.dedup();
        assert_eq!(
            forced,
            vec![0b00001, 0b00011, 0b00110, 0b01100, 0b10000, 0b11000]
        );
    }

    #[test]
    fn c6_constraints() {
        let g = GcdGraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        let constraints = presence_constraints(&g);
        let forced: Vec<Mask> = constraints
            .iter()
            .filter_map(|c| match c {
                PresenceConstraint::Forced(m) => Some(*m),
                _ => None,
            })
            .collect();
        assert_eq!(forced.len(), 6);
        assert!(forced.iter().all(|m| m.count_ones() == 2));
        let disjunctions = constraints
            .iter()
            .filter(|c| matches!(c, PresenceConstraint::Disjunction(_)))
            .count();
        assert_eq!(disjunctions, 6);
    }

    #[test]
    fn components_partition() {
        let g = GcdGraph::from_edges(5, &[(1, 2), (4, 5)]);
        assert_eq!(g.components(), vec![0b00011, 0b00100, 0b11000]);
    }

    #[test]
    fn c6_automorphism_count_is_dihedral() {
        let g = GcdGraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        assert_eq!(g.automorphisms().len(), 12);
    }

    #[test]
    fn dot_has_dashed_hook() {
        let g = GcdGraph::from_edges(2, &[(1, 2)]);
        let mut attrs = BTreeMap::new();
        attrs.insert("1".to_string(), "style=dashed".to_string());
        attrs.insert("1-2".to_string(), "style=dashed".to_string());
        let dot = g.to_dot(&attrs);
        assert!(dot.contains("1 [style=dashed];"));
        assert!(dot.contains("1 -- 2 [style=dashed];"));
    }
}
