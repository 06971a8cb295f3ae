//! Structural detectors: full-support witnesses and coordinate-subspace
//! containment certificates read off the Taylor and GCD graphs.

use serde::Serialize;

use crate::gcd::GcdGraph;
use crate::ideal::Mask;
use crate::matching::hopcroft_karp;
use crate::taylor::{EdgeKind, TaylorGraph};

/// A certificate that the whole ambient space is contained in the support
/// variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FullSupportWitness {
    /// A vertex used by no edge at all.
    IsolatedVertex { vertex: Mask },
    /// Sources outnumber their out-neighborhood.
    SourcesVsNeighbors { sources: Vec<Mask>, neighbors: Vec<Mask> },
    /// Sinks outnumber the sources of edges into them.
    SinksVsSources { sinks: Vec<Mask>, neighbors: Vec<Mask> },
    /// A balanced odd walk between two degree-one sinks or sources.
    OddAlternatingWalk { vertices: Vec<Mask>, sinks: bool },
    /// A vertex set meeting the one-neighbor-in-sigma condition, isolated for
    /// every ideal over this GCD graph.
    Degree3Isolated { sigma: Mask },
    /// Edges with pairwise disjoint neighborhoods covering the graph.
    EdgePairFamily { edges: Vec<Mask> },
    /// More homotopically isolated edge vertices than triangle vertices.
    EdgesVsTriangles { edges: Vec<Mask>, triangles: Vec<Mask> },
    /// A generator adjacent to every other one.
    HighDegreeVertex { vertex: usize },
}

/// A coordinate-subspace containment: a differentially isolated vertex that
/// is a homotopy source or sink for the listed indices, certifying that the
/// subspace where those coordinates vanish lies inside the support variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceOrSink {
    Source,
    Sink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCertificate {
    pub vertex: Mask,
    pub kind: SourceOrSink,
    /// Indices of all homotopy edges using the vertex, as a mask; empty
    /// means the vertex is isolated and the containment is the full space.
    pub indices: Mask,
}

/// All vertices used by no edge.
pub fn find_isolated(t: &TaylorGraph) -> Vec<Mask> {
    (0..t.vertex_count() as Mask)
        .filter(|&v| t.total_degree(v) == 0)
        .collect()
}

fn differentially_isolated(t: &TaylorGraph, v: Mask) -> bool {
    t.out_edges(v).iter().all(|e| e.kind != EdgeKind::Differential)
        && t.in_edges(v).all(|e| e.kind != EdgeKind::Differential)
}

/// Every differentially isolated vertex satisfying the source or sink
/// neighborhood condition, with its homotopy index set.
pub fn find_homotopy_sources_sinks(
    t: &TaylorGraph,
    g: &GcdGraph,
) -> Vec<ContainmentCertificate> {
    let full = g.full_mask();
    let mut out = Vec::new();
    for v in 0..t.vertex_count() as Mask {
        if !differentially_isolated(t, v) {
            continue;
        }
        let nbhd = g.neighborhood(v);
        let sink = v | nbhd == full;
        let source = v & !nbhd == 0;
        if !sink && !source {
            continue;
        }
        let mut indices: Mask = 0;
        for e in t.out_edges(v) {
            indices |= 1 << (e.index - 1);
        }
        for e in t.in_edges(v) {
            indices |= 1 << (e.index - 1);
        }
        out.push(ContainmentCertificate {
            vertex: v,
            kind: if sink { SourceOrSink::Sink } else { SourceOrSink::Source },
            indices,
        });
    }
    out
}

/// Re-checks a containment certificate against the definitions.
pub fn verify_containment(t: &TaylorGraph, g: &GcdGraph, c: &ContainmentCertificate) -> bool {
    if !differentially_isolated(t, c.vertex) {
        return false;
    }
    let nbhd = g.neighborhood(c.vertex);
    let cond = match c.kind {
        SourceOrSink::Sink => c.vertex | nbhd == g.full_mask(),
        SourceOrSink::Source => c.vertex & !nbhd == 0,
    };
    if !cond {
        return false;
    }
    let touches_only_listed = t
        .out_edges(c.vertex)
        .iter()
        .chain(t.in_edges(c.vertex))
        .all(|e| c.indices >> (e.index - 1) & 1 == 1);
    touches_only_listed
}

/// Runs the counting detectors: sink/source deficiency, homotopically
/// isolated edges versus triangles, the degree-three vertex-set scan, edge
/// families with disjoint neighborhoods, and the full-degree shortcut. An
/// empty result is inconclusive.
pub fn counting_detectors(t: &TaylorGraph, g: &GcdGraph) -> Vec<FullSupportWitness> {
    let mut out = Vec::new();
    let n = g.n();
    let full = g.full_mask();

    // High-degree vertex.
    for i in 1..=n {
        if n >= 2 && g.degree(i) as usize == n - 1 {
            out.push(FullSupportWitness::HighDegreeVertex { vertex: i });
        }
    }

    // Deficiency of sinks against the sources of edges into them, and dually
    // for sources. A set with |S| > |N(S)| exists exactly when no matching
    // saturates the full sink (source) set; the alternating-reachability set
    // from an unmatched vertex is then a witness.
    if let Some((s, nb)) = deficiency_witness(t, true) {
        out.push(FullSupportWitness::SinksVsSources { sinks: s, neighbors: nb });
    }
    if let Some((s, nb)) = deficiency_witness(t, false) {
        out.push(FullSupportWitness::SourcesVsNeighbors { sources: s, neighbors: nb });
    }

    // Homotopically isolated edges vs triangles.
    let mut edges_hi = Vec::new();
    let mut triangles_hi = Vec::new();
    for (i, j) in g.edges() {
        let sigma = (1u32 << (i - 1)) | (1 << (j - 1));
        if g.neighborhood(sigma) == full {
            edges_hi.push(sigma);
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                let theta = (1u32 << (i - 1)) | (1 << (j - 1)) | (1 << (k - 1));
                if g.is_clique(theta) && g.neighborhood(theta) == full {
                    triangles_hi.push(theta);
                }
            }
        }
    }
    if !edges_hi.is_empty() && edges_hi.len() > triangles_hi.len() {
        out.push(FullSupportWitness::EdgesVsTriangles {
            edges: edges_hi,
            triangles: triangles_hi,
        });
    }

    // Degree-three style vertex sets, |sigma| capped.
    'outer: for sigma in 1..=full {
        if sigma.count_ones() > 6 {
            continue;
        }
        if g.neighborhood(sigma) != full {
            continue;
        }
        for i in 1..=n {
            let bit = 1u32 << (i - 1);
            if sigma & bit != 0 {
                if g.adjacency(i) & !sigma == 0 {
                    continue 'outer;
                }
            } else if (g.adjacency(i) & sigma).count_ones() != 1 {
                continue 'outer;
            }
        }
        out.push(FullSupportWitness::Degree3Isolated { sigma });
        break;
    }

    // Families of up to three edges with pairwise disjoint neighborhoods.
    let all_edges: Vec<Mask> = g
        .edges()
        .iter()
        .map(|&(i, j)| (1u32 << (i - 1)) | (1 << (j - 1)))
        .collect();
    let mut found_family: Option<Vec<Mask>> = None;
    for s in 1..=3usize {
        let mut pick = vec![0usize; s];
        let stopped = combinations(&all_edges, s, &mut pick, 0, 0, &mut |family| {
            if edge_family_applies(g, family) {
                found_family = Some(family.to_vec());
                true
            } else {
                false
            }
        });
        if stopped {
            break;
        }
    }
    if let Some(edges) = found_family {
        out.push(FullSupportWitness::EdgePairFamily { edges });
    }
    out
}

fn combinations(
    items: &[Mask],
    s: usize,
    pick: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[Mask]) -> bool,
) -> bool {
    if depth == s {
        let family: Vec<Mask> = pick.iter().map(|&k| items[k]).collect();
        return f(&family);
    }
    for k in start..items.len() {
        pick[depth] = k;
        if combinations(items, s, pick, depth + 1, k + 1, f) {
            return true;
        }
    }
    false
}

fn edge_family_applies(g: &GcdGraph, family: &[Mask]) -> bool {
    let full = g.full_mask();
    let theta: Mask = family.iter().fold(0, |a, &b| a | b);
    if g.neighborhood(theta) != full {
        return false;
    }
    for (x, &si) in family.iter().enumerate() {
        for &sj in family.iter().skip(x + 1) {
            if g.neighborhood(si) & g.neighborhood(sj) != 0 {
                return false;
            }
        }
    }
    for &si in family {
        let nb = g.neighborhood(si);
        let mut rest = nb & !si;
        while rest != 0 {
            let l = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            if g.adjacency(l) & !nb == 0 {
                return false;
            }
        }
    }
    true
}

/// Hall-violator search: find sinks S with |S| > |in-sources(S)| (or the dual
/// for sources). Returns the violating sets if the full sink set admits no
/// saturating matching.
fn deficiency_witness(t: &TaylorGraph, sinks: bool) -> Option<(Vec<Mask>, Vec<Mask>)> {
    let verts: Vec<Mask> = (0..t.vertex_count() as Mask)
        .filter(|&v| {
            t.total_degree(v) > 0
                && if sinks { t.out_degree(v) == 0 } else { t.in_degree(v) == 0 }
        })
        .collect();
    if verts.is_empty() {
        return None;
    }
    let mut partners: Vec<Mask> = Vec::new();
    for &v in &verts {
        let nbrs: Vec<Mask> = if sinks {
            t.in_edges(v).map(|e| e.source).collect()
        } else {
            t.out_edges(v).iter().map(|e| e.target).collect()
        };
        for u in nbrs {
            if let Err(k) = partners.binary_search(&u) {
                partners.insert(k, u);
            }
        }
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| {
            let mut nbrs: Vec<Mask> = if sinks {
                t.in_edges(v).map(|e| e.source).collect()
            } else {
                t.out_edges(v).iter().map(|e| e.target).collect()
            };
            nbrs.sort_unstable();
            nbrs.dedup();
            nbrs.iter().map(|u| partners.binary_search(u).unwrap()).collect()
        })
        .collect();
    let match_l = hopcroft_karp(verts.len(), partners.len(), &adj);
    let unmatched: Vec<usize> =
        (0..verts.len()).filter(|&l| match_l[l].is_none()).collect();
    if unmatched.is_empty() {
        return None;
    }
    // Alternating reachability from unmatched lefts.
    let mut match_r: Vec<Option<usize>> = vec![None; partners.len()];
    for (l, r) in match_l.iter().enumerate() {
        if let Some(r) = r {
            match_r[*r] = Some(l);
        }
    }
    let mut left_seen = vec![false; verts.len()];
    let mut right_seen = vec![false; partners.len()];
    let mut stack = unmatched;
    while let Some(l) = stack.pop() {
        if left_seen[l] {
            continue;
        }
        left_seen[l] = true;
        for &r in &adj[l] {
            if !right_seen[r] {
                right_seen[r] = true;
                if let Some(l2) = match_r[r] {
                    stack.push(l2);
                }
            }
        }
    }
    let s: Vec<Mask> = (0..verts.len()).filter(|&l| left_seen[l]).map(|l| verts[l]).collect();
    let nb: Vec<Mask> =
        (0..partners.len()).filter(|&r| right_seen[r]).map(|r| partners[r]).collect();
    debug_assert!(s.len() > nb.len());
    Some((s, nb))
}

/// Definitional re-check of a full-support witness.
pub fn verify_witness(t: &TaylorGraph, g: &GcdGraph, w: &FullSupportWitness) -> bool {
    let full = g.full_mask();
    match w {
        FullSupportWitness::IsolatedVertex { vertex } => t.total_degree(*vertex) == 0,
        FullSupportWitness::SinksVsSources { sinks, neighbors } => {
            sinks.len() > neighbors.len()
                && sinks.iter().all(|&v| t.out_degree(v) == 0)
                && sinks.iter().all(|&v| {
                    t.in_edges(v).all(|e| neighbors.contains(&e.source))
                })
        }
        FullSupportWitness::SourcesVsNeighbors { sources, neighbors } => {
            sources.len() > neighbors.len()
                && sources.iter().all(|&v| t.in_degree(v) == 0)
                && sources.iter().all(|&v| {
                    t.out_edges(v).iter().all(|e| neighbors.contains(&e.target))
                })
        }
        FullSupportWitness::OddAlternatingWalk { vertices, sinks } => {
            verify_odd_walk(t, vertices, *sinks)
        }
        FullSupportWitness::Degree3Isolated { sigma } => {
            g.neighborhood(*sigma) == full
                && (1..=g.n()).all(|i| {
                    let bit = 1u32 << (i - 1);
                    if sigma & bit != 0 {
                        g.adjacency(i) & !sigma != 0
                    } else {
                        (g.adjacency(i) & sigma).count_ones() == 1
                    }
                })
        }
        FullSupportWitness::EdgePairFamily { edges } => edge_family_applies(g, edges),
        FullSupportWitness::EdgesVsTriangles { edges, triangles } => {
            edges.len() > triangles.len()
                && edges.iter().all(|&s| {
                    s.count_ones() == 2 && g.is_clique(s) && g.neighborhood(s) == full
                })
                && {
                    // The listed triangles must be all of them.
                    let mut all = Vec::new();
                    for i in 1..=g.n() {
                        for j in (i + 1)..=g.n() {
                            for k in (j + 1)..=g.n() {
                                let th =
                                    (1u32 << (i - 1)) | (1 << (j - 1)) | (1 << (k - 1));
                                if g.is_clique(th) && g.neighborhood(th) == full {
                                    all.push(th);
                                }
                            }
                        }
                    }
                    all.iter().all(|x| triangles.contains(x))
                }
        }
        FullSupportWitness::HighDegreeVertex { vertex } => {
            g.n() >= 2 && g.degree(*vertex) as usize == g.n() - 1
        }
    }
}

fn verify_odd_walk(t: &TaylorGraph, vs: &[Mask], sinks: bool) -> bool {
    let s = vs.len();
    if s < 3 || s % 2 == 0 {
        return false;
    }
    let mut uniq = vs.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != s {
        return false;
    }
    let has_edge = |from: Mask, to: Mask| t.out_edges(from).iter().any(|e| e.target == to);
    for k in (1..s).step_by(2) {
        // Even-position vertex vs[k] points at its odd neighbors (sink form)
        // or is pointed at (source form).
        let (a, b) = (vs[k - 1], vs[k + 1]);
        if sinks {
            if !has_edge(vs[k], a) || !has_edge(vs[k], b) {
                return false;
            }
        } else if !has_edge(a, vs[k]) || !has_edge(b, vs[k]) {
            return false;
        }
    }
    for (k, &v) in vs.iter().enumerate() {
        if k % 2 == 1 {
            continue;
        }
        let terminal = k == 0 || k == s - 1;
        if sinks {
            // Terminals are sinks with in-degree 1; interior odd vertices
            // only need in-degree exactly 2 (the two walk edges).
            if terminal && (t.out_degree(v) != 0 || t.in_degree(v) != 1) {
                return false;
            }
            if !terminal && t.in_degree(v) != 2 {
                return false;
            }
        } else {
            if terminal && (t.in_degree(v) != 0 || t.out_degree(v) != 1) {
                return false;
            }
            if !terminal && t.out_degree(v) != 2 {
                return false;
            }
        }
    }
    true
}

/// Bounded DFS for a balanced odd walk between degree-one sinks (then
/// sources), alternating walk edges as in the odd-path condition.
pub fn find_odd_alternating_walk(t: &TaylorGraph, max_len: usize) -> Option<FullSupportWitness> {
    assert!(max_len % 2 == 1, "walk length cap must be odd");
    for sinks in [true, false] {
        if let Some(vertices) = odd_walk_search(t, sinks, max_len) {
            return Some(FullSupportWitness::OddAlternatingWalk { vertices, sinks });
        }
    }
    None
}

fn odd_walk_search(t: &TaylorGraph, sinks: bool, max_len: usize) -> Option<Vec<Mask>> {
    let starts: Vec<Mask> = (0..t.vertex_count() as Mask)
        .filter(|&v| {
            if sinks {
                t.out_degree(v) == 0 && t.in_degree(v) == 1
            } else {
                t.in_degree(v) == 0 && t.out_degree(v) == 1
            }
        })
        .collect();
    let step_mid = |v: Mask| -> Vec<Mask> {
        if sinks {
            t.in_edges(v).map(|e| e.source).collect()
        } else {
            t.out_edges(v).iter().map(|e| e.target).collect()
        }
    };
    let step_odd = |v: Mask| -> Vec<Mask> {
        if sinks {
            t.out_edges(v).iter().map(|e| e.target).collect()
        } else {
            t.in_edges(v).map(|e| e.source).collect()
        }
    };
    for &start in &starts {
        let mut path = vec![start];
        if dfs_walk(t, sinks, max_len, &mut path, &step_mid, &step_odd) {
            return Some(path);
        }
    }
    None
}

fn dfs_walk(
    t: &TaylorGraph,
    sinks: bool,
    max_len: usize,
    path: &mut Vec<Mask>,
    step_mid: &dyn Fn(Mask) -> Vec<Mask>,
    step_odd: &dyn Fn(Mask) -> Vec<Mask>,
) -> bool {
    let v = *path.last().unwrap();
    if path.len() >= max_len {
        return false;
    }
    for mid in step_mid(v) {
        if path.contains(&mid) {
            continue;
        }
        for next in step_odd(mid) {
            if next == v || path.contains(&next) {
                continue;
            }
            let closed_end = if sinks {
                t.out_degree(next) == 0 && t.in_degree(next) == 1
            } else {
                t.in_degree(next) == 0 && t.out_degree(next) == 1
            };
            let walk_count = if sinks { t.in_degree(next) } else { t.out_degree(next) };
            path.push(mid);
            path.push(next);
            if closed_end && path.len() >= 3 {
                return true;
            }
            if walk_count == 2 && dfs_walk(t, sinks, max_len, path, step_mid, step_odd) {
                return true;
            }
            path.pop();
            path.pop();
        }
    }
    false
}

/// Umbrella: all full-support witnesses we can find, isolated vertices first,
/// every one re-verified before being reported.
pub fn full_support_witnesses(t: &TaylorGraph, g: &GcdGraph) -> Vec<FullSupportWitness> {
    let mut out = Vec::new();
    if let Some(&v) = find_isolated(t).first() {
        out.push(FullSupportWitness::IsolatedVertex { vertex: v });
    }
    out.extend(counting_detectors(t, g));
    let cap = 2 * g.n() + 3;
    let cap = if cap % 2 == 0 { cap + 1 } else { cap };
    if let Some(w) = find_odd_alternating_walk(t, cap) {
        out.push(w);
    }
    out.retain(|w| verify_witness(t, g, w));
    out
}
