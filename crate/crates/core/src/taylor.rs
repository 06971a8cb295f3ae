//! Taylor graphs: the weighted directed graph on all `2^n` generator subsets
//! whose edges encode an eventually 2-periodic differential.
//!
//! For each subset `sigma` and generator `i` outside it there is a
//! differential edge `v_{sigma+i} -> v_sigma` (weight `sign`) when `f_i`
//! divides `lcm(sigma)`, and a homotopy edge `v_sigma -> v_{sigma+i}` (weight
//! `sign * chi_i`) when `i` is not a neighbor of `sigma` in the GCD graph.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;
use crate::gcd::GcdGraph;
use crate::ideal::{Mask, SquareFreeIdeal};
use crate::mask_string;

/// Default cap on stored edges.
pub const EDGE_BUDGET: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Differential,
    Homotopy,
}

/// One Taylor edge. Masks differ exactly in bit `index-1`; differential edges
/// remove the bit (source contains it), homotopy edges add it. The sign is
/// the parity of set bits strictly below `index-1` in the smaller mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub source: Mask,
    pub target: Mask,
    pub index: usize,
    pub kind: EdgeKind,
    pub sign: i8,
}

impl EdgeRef {
    pub fn differential(sigma: Mask, index: usize) -> Self {
        let bit = 1u32 << (index - 1);
        debug_assert_eq!(sigma & bit, 0);
        EdgeRef {
            source: sigma | bit,
            target: sigma,
            index,
            kind: EdgeKind::Differential,
            sign: sign_below(sigma, index),
        }
    }

    pub fn homotopy(sigma: Mask, index: usize) -> Self {
        let bit = 1u32 << (index - 1);
        debug_assert_eq!(sigma & bit, 0);
        EdgeRef {
            source: sigma,
            target: sigma | bit,
            index,
            kind: EdgeKind::Homotopy,
            sign: sign_below(sigma, index),
        }
    }

    /// The smaller of the two masks (the subscript in `d_{sigma,i}` or
    /// `h_{sigma,i}`).
    pub fn lower_mask(&self) -> Mask {
        self.source & self.target
    }
}

pub fn sign_below(sigma: Mask, index: usize) -> i8 {
    let below = sigma & ((1u32 << (index - 1)) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The Taylor graph of an ideal: all edges, sorted by `(source, index)`, with
/// offsets by source and a secondary index by target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorGraph {
    n: usize,
    edges: Vec<EdgeRef>,
    out_offsets: Vec<u32>,
    in_index: Vec<u32>,
    in_offsets: Vec<u32>,
}

impl TaylorGraph {
    pub fn build(ideal: &SquareFreeIdeal) -> Result<Self, Error> {
        Self::build_with_budget(ideal, EDGE_BUDGET)
    }

    pub fn build_with_budget(ideal: &SquareFreeIdeal, budget: usize) -> Result<Self, Error> {
        let n = ideal.n();
        let g = GcdGraph::build(ideal);
        let size = 1usize << n;
        // Per-generator list of type masks containing it, for the lcm test.
        let mut types_of: Vec<Vec<Mask>> = vec![Vec::new(); n];
        for t in ideal.types() {
            for i in 0..n {
                if t.mask >> i & 1 == 1 {
                    types_of[i].push(t.mask);
                }
            }
        }
        let mut edges = Vec::new();
        for sigma in 0..size as Mask {
            let nbhd = g.neighborhood(sigma);
            for i in 1..=n {
                let bit = 1u32 << (i - 1);
                if sigma & bit != 0 {
                    continue;
                }
                if types_of[i - 1].iter().all(|&t| t & sigma != 0) {
                    edges.push(EdgeRef::differential(sigma, i));
                }
                if (sigma | nbhd) & bit == 0 {
                    edges.push(EdgeRef::homotopy(sigma, i));
                }
                if edges.len() > budget {
                    return Err(Error::EdgeBudgetExceeded(budget));
                }
            }
        }
        Ok(Self::from_edges(n, edges))
    }

    fn from_edges(n: usize, mut edges: Vec<EdgeRef>) -> Self {
        let size = 1usize << n;
        edges.sort_unstable_by_key(|e| (e.source, e.index));
        let mut out_offsets = vec![0u32; size + 1];
        for e in &edges {
            out_offsets[e.source as usize + 1] += 1;
        }
        for k in 0..size {
            out_offsets[k + 1] += out_offsets[k];
        }
        let mut in_ids: Vec<u32> = (0..edges.len() as u32).collect();
        in_ids.sort_unstable_by_key(|&id| {
            let e = &edges[id as usize];
            (e.target, e.index)
        });
        let mut in_offsets = vec![0u32; size + 1];
        for e in &edges {
            in_offsets[e.target as usize + 1] += 1;
        }
        for k in 0..size {
            in_offsets[k + 1] += in_offsets[k];
        }
        TaylorGraph { n, edges, out_offsets, in_index: in_ids, in_offsets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.n
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn out_edges(&self, v: Mask) -> &[EdgeRef] {
        let lo = self.out_offsets[v as usize] as usize;
        let hi = self.out_offsets[v as usize + 1] as usize;
        &self.edges[lo..hi]
    }

    pub fn in_edges(&self, v: Mask) -> impl Iterator<Item = &EdgeRef> {
        let lo = self.in_offsets[v as usize] as usize;
        let hi = self.in_offsets[v as usize + 1] as usize;
        self.in_index[lo..hi].iter().map(|&id| &self.edges[id as usize])
    }

    pub fn out_degree(&self, v: Mask) -> usize {
        (self.out_offsets[v as usize + 1] - self.out_offsets[v as usize]) as usize
    }

    pub fn in_degree(&self, v: Mask) -> usize {
        (self.in_offsets[v as usize + 1] - self.in_offsets[v as usize]) as usize
    }

    pub fn total_degree(&self, v: Mask) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn has_edge(&self, e: &EdgeRef) -> bool {
        self.out_edges(e.source).iter().any(|x| x == e)
    }

    /// Looks up the edge between the pair `{lower, lower+bit(i)}` if any.
    /// At most one of the differential and homotopy edges can exist between
    /// a fixed pair.
    pub fn edge_between(&self, lower: Mask, index: usize) -> Option<&EdgeRef> {
        let upper = lower | 1 << (index - 1);
        self.out_edges(lower)
            .iter()
            .find(|e| e.index == index && e.target == upper)
            .or_else(|| {
                self.out_edges(upper)
                    .iter()
                    .find(|e| e.index == index && e.target == lower)
            })
    }

    /// True iff every edge of `self` is an edge of `other` (same kind, index,
    /// masks). Per the order-reversing property, the Taylor graph of a larger
    /// variable set is a subgraph of the Taylor graph of a smaller one.
    pub fn is_subgraph_of(&self, other: &TaylorGraph) -> Result<bool, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        Ok(self.edges.iter().all(|e| other.has_edge(e)))
    }

    /// Connected components of the underlying undirected graph, as vertex
    /// lists; singleton components are skipped.
    pub fn components(&self) -> Vec<Vec<Mask>> {
        let size = self.vertex_count();
        let mut comp = vec![u32::MAX; size];
        let mut out: Vec<Vec<Mask>> = Vec::new();
        for start in 0..size as Mask {
            if comp[start as usize] != u32::MAX || self.total_degree(start) == 0 {
                continue;
            }
            let id = out.len() as u32;
            let mut stack = vec![start];
            comp[start as usize] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for e in self.out_edges(v) {
                    if comp[e.target as usize] == u32::MAX {
                        comp[e.target as usize] = id;
                        stack.push(e.target);
                    }
                }
                for e in self.in_edges(v) {
                    if comp[e.source as usize] == u32::MAX {
                        comp[e.source as usize] = id;
                        stack.push(e.source);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph taylor {\n");
        for e in &self.edges {
            let kind = match e.kind {
                EdgeKind::Differential => "d",
                EdgeKind::Homotopy => "h",
            };
            let sgn = if e.sign >= 0 { "+" } else { "-" };
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}{}{}\"];",
                mask_string(e.source, self.n),
                mask_string(e.target, self.n),
                sgn,
                kind,
                e.index
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct EdgeJson {
            kind: &'static str,
            src: String,
            dst: String,
            i: usize,
            sign: i8,
        }
        let edges: Vec<EdgeJson> = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                kind: match e.kind {
                    EdgeKind::Differential => "d",
                    EdgeKind::Homotopy => "h",
                },
                src: mask_string(e.source, self.n),
                dst: mask_string(e.target, self.n),
                i: e.index,
                sign: e.sign,
            })
            .collect();
        serde_json::to_string(&edges).expect("edge list serializes")
    }
}
