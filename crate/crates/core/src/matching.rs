//! Perfect matchings on Taylor graphs, their auxiliary graphs, triangularity,
//! theta-determinedness, and determinants via cycle decompositions. This is
//! the reverse-containment certificate engine: a triangular matching for a
//! set sigma puts the square-free monomial on sigma into the support ideal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;
use crate::ideal::Mask;
use crate::mask_string;
use crate::poly::{Exps, MPoly, SupportPolynomial};
use crate::taylor::{EdgeKind, EdgeRef, TaylorGraph};

/// Default cap on enumerated simple cycles and on disjoint-cycle families.
pub const CYCLE_CAP: usize = 100_000;

/// A sigma-perfect matching: `2^{n-1}` pairwise vertex-disjoint Taylor edges
/// whose homotopy indices lie in `sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub sigma: Mask,
    pub edges: Vec<EdgeRef>,
}

impl Matching {
    pub fn new(sigma: Mask, mut edges: Vec<EdgeRef>) -> Self {
        edges.sort_unstable_by_key(|e| e.source);
        Matching { sigma, edges }
    }

    /// Homotopy indices actually used, as a mask.
    pub fn homotopy_indices(&self) -> Mask {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Homotopy)
            .fold(0, |m, e| m | 1 << (e.index - 1))
    }

    pub fn to_json(&self, n: usize) -> String {
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
                src: mask_string(e.source, n),
                dst: mask_string(e.target, n),
                i: e.index,
                sign: e.sign,
            })
            .collect();
        serde_json::to_string(&edges).expect("matching serializes")
    }
}

/// Checks cardinality, edge existence, vertex-disjointness and homotopy-index
/// membership.
pub fn verify_matching(t: &TaylorGraph, m: &Matching) -> Result<(), Error> {
    let want = 1usize << (t.n() - 1);
    if m.edges.len() != want {
        return Err(Error::WrongCardinality { got: m.edges.len(), want });
    }
    let mut used = vec![false; 1 << t.n()];
    for e in &m.edges {
        if !t.has_edge(e) {
            return Err(Error::MissingEdge);
        }
        if e.kind == EdgeKind::Homotopy && m.sigma >> (e.index - 1) & 1 == 0 {
            return Err(Error::ForbiddenHomotopyIndex(e.index));
        }
        for v in [e.source, e.target] {
            if used[v as usize] {
                return Err(Error::SharedVertex(v));
            }
            used[v as usize] = true;
        }
    }
    Ok(())
}

/// Deterministic search for a sigma-perfect matching: maximum bipartite
/// matching (Hopcroft-Karp) between even- and odd-popcount vertices over the
/// differential edges plus homotopy edges with index in sigma, adjacency
/// sorted by partner mask ascending.
pub fn search_matching(t: &TaylorGraph, sigma: Mask) -> Option<Matching> {
    let n = t.n();
    let size = 1usize << n;
    let evens: Vec<Mask> = (0..size as Mask).filter(|v| v.count_ones() % 2 == 0).collect();
    let odds: Vec<Mask> = (0..size as Mask).filter(|v| v.count_ones() % 2 == 1).collect();
    let odd_pos: Vec<usize> = {
        let mut pos = vec![0usize; size];
        for (k, &v) in odds.iter().enumerate() {
            pos[v as usize] = k;
        }
        pos
    };
    let allowed = |lower: Mask, i: usize| -> Option<&EdgeRef> {
        t.edge_between(lower, i).filter(|e| {
            e.kind == EdgeKind::Differential || sigma >> (e.index - 1) & 1 == 1
        })
    };
    let adj: Vec<Vec<usize>> = evens
        .iter()
        .map(|&v| {
            let mut nbrs: Vec<Mask> = (1..=n)
                .filter_map(|i| {
                    let partner = v ^ (1 << (i - 1));
                    let lower = v & partner;
                    allowed(lower, i).map(|_| partner)
                })
                .collect();
            nbrs.sort_unstable();
            nbrs.into_iter().map(|u| odd_pos[u as usize]).collect()
        })
        .collect();
    let pairing = hopcroft_karp(evens.len(), odds.len(), &adj);
    let mut edges = Vec::with_capacity(evens.len());
    for (li, &r) in pairing.iter().enumerate() {
        let r = r?;
        let (v, u) = (evens[li], odds[r]);
        let i = ((v ^ u).trailing_zeros() + 1) as usize;
        edges.push(*allowed(v & u, i).expect("matched edge exists"));
    }
    Some(Matching::new(sigma, edges))
}

/// Deterministic Hopcroft-Karp; returns the left-to-right assignment.
pub fn hopcroft_karp(nl: usize, nr: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const INF: u32 = u32::MAX;
    let mut match_l: Vec<Option<usize>> = vec![None; nl];
    let mut match_r: Vec<Option<usize>> = vec![None; nr];
    let mut dist = vec![INF; nl];
    loop {
        let mut queue = std::collections::VecDeque::new();
        for l in 0..nl {
            if match_l[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match match_r[r] {
                    None => found = true,
                    Some(l2) => {
                        if dist[l2] == INF {
                            dist[l2] = dist[l] + 1;
                            queue.push_back(l2);
                        }
                    }
                }
            }
        }
        if !found {
            break;
        }
        fn try_kuhn(
            l: usize,
            adj: &[Vec<usize>],
            dist: &mut [u32],
            match_l: &mut [Option<usize>],
            match_r: &mut [Option<usize>],
        ) -> bool {
            let d = std::mem::replace(&mut dist[l], u32::MAX);
            for &r in &adj[l] {
                let ok = match match_r[r] {
                    None => true,
                    Some(l2) => {
                        dist[l2] == d + 1 && try_kuhn(l2, adj, dist, match_l, match_r)
                    }
                };
                if ok {
                    match_l[l] = Some(r);
                    match_r[r] = Some(l);
                    return true;
                }
            }
            false
        }
        let mut progressed = false;
        for l in 0..nl {
            if match_l[l].is_none() && dist[l] == 0 {
                progressed |= try_kuhn(l, adj, &mut dist, &mut match_l, &mut match_r);
            }
        }
        if !progressed {
            break;
        }
    }
    match_l
}

/// Directed graph on matched sources: an edge `u -> w` for every Taylor edge
/// from the source of `u` to the matched target of `w`, weighted by the pair
/// (matched edge of `w` inverted, traversed edge).
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    /// Matched edges, sorted by source mask; vertex k is the source of
    /// `matched[k]`.
    pub matched: Vec<EdgeRef>,
    /// `adj[u]` = (w, traversed edge), sorted by w.
    pub adj: Vec<Vec<(usize, EdgeRef)>>,
    pub n: usize,
}

pub fn build_auxiliary(t: &TaylorGraph, m: &Matching) -> Result<AuxiliaryGraph, Error> {
    verify_matching(t, m).map_err(|_| Error::UnverifiedMatching)?;
    let size = 1usize << t.n();
    let mut target_owner = vec![u32::MAX; size];
    for (k, e) in m.edges.iter().enumerate() {
        target_owner[e.target as usize] = k as u32;
    }
    let adj = m
        .edges
        .iter()
        .enumerate()
        .map(|(u, me)| {
            let mut out: Vec<(usize, EdgeRef)> = t
                .out_edges(me.source)
                .iter()
                .filter_map(|e| {
                    let w = target_owner[e.target as usize];
                    (w != u32::MAX && w as usize != u).then_some((w as usize, *e))
                })
                .collect();
            out.sort_unstable_by_key(|&(w, _)| w);
            out
        })
        .collect();
    Ok(AuxiliaryGraph { matched: m.edges.clone(), adj, n: t.n() })
}

impl AuxiliaryGraph {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph auxiliary {\n");
        for (u, out) in self.adj.iter().enumerate() {
            for (w, e) in out {
                let inv = &self.matched[*w];
                let _ = writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [label=\"{}{}^-1 {}{}\"];",
                    mask_string(self.matched[u].source, self.n),
                    mask_string(self.matched[*w].source, self.n),
                    kind_letter(inv.kind),
                    inv.index,
                    kind_letter(e.kind),
                    e.index,
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

fn kind_letter(k: EdgeKind) -> char {
    match k {
        EdgeKind::Differential => 'd',
        EdgeKind::Homotopy => 'h',
    }
}

/// Why a matching is known triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangularVia {
    AcyclicAuxiliary,
    TwoDetermined(Mask),
}

/// A triangularity certificate: the matched submatrix has an upper-triangular
/// ordering, so the square-free monomial on the homotopy indices used lies in
/// the support ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularCertificate {
    /// Homotopy indices appearing in the matching (a subset of sigma).
    pub indices: Mask,
    /// Matched source masks in a topological order of the auxiliary graph,
    /// when one was computed.
    pub order: Option<Vec<Mask>>,
    pub via: TriangularVia,
}

impl TriangularCertificate {
    pub fn polynomial(&self) -> SupportPolynomial {
        SupportPolynomial::SquareFreeMonomial(self.indices)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Triangularity {
    Triangular(TriangularCertificate),
    CyclesFound { count: usize, disjoint: bool },
}

/// Topological check on the auxiliary graph; on failure reports the cycle
/// census up to the cap.
pub fn triangularity(aux: &AuxiliaryGraph, cap: usize) -> Result<Triangularity, Error> {
    let n_verts = aux.matched.len();
    let mut indeg = vec![0usize; n_verts];
    for out in &aux.adj {
        for &(w, _) in out {
            indeg[w] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n_verts).filter(|&v| indeg[v] == 0).rev().collect();
    let mut order = Vec::with_capacity(n_verts);
    while let Some(v) = stack.pop() {
        order.push(aux.matched[v].source);
        for &(w, _) in &aux.adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() == n_verts {
        let indices = aux
            .matched
            .iter()
            .filter(|e| e.kind == EdgeKind::Homotopy)
            .fold(0, |m, e| m | 1 << (e.index - 1));
        return Ok(Triangularity::Triangular(TriangularCertificate {
            indices,
            order: Some(order),
            via: TriangularVia::AcyclicAuxiliary,
        }));
    }
    let cycles = johnson_cycles(&simple_adjacency(aux), cap)?;
    let disjoint = cycles_pairwise_disjoint(&cycles);
    Ok(Triangularity::CyclesFound { count: cycles.len(), disjoint })
}

fn simple_adjacency(aux: &AuxiliaryGraph) -> Vec<Vec<usize>> {
    aux.adj
        .iter()
        .map(|out| out.iter().map(|&(w, _)| w).collect())
        .collect()
}

fn cycles_pairwise_disjoint(cycles: &[Vec<usize>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    for c in cycles {
        for &v in c {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

/// Enumerates all simple directed cycles (Johnson's algorithm, each cycle
/// reported rooted at its minimal vertex), erroring out past the cap.
pub fn johnson_cycles(adj: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>, Error> {
    let n = adj.len();
    let mut cycles = Vec::new();
    for start in 0..n {
        // Explore only vertices >= start so each cycle is found exactly once.
        let mut blocked = vec![false; n];
        let mut blist: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut path = vec![start];
        blocked[start] = true;
        // Stack of (vertex, next adjacency position).
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        let mut found_on_path = vec![false];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let mut advanced = false;
            while *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if w < start {
                    continue;
                }
                if w == start {
                    cycles.push(path.clone());
                    if cycles.len() > cap {
                        return Err(Error::CycleCapExceeded(cap));
                    }
                    *found_on_path.last_mut().unwrap() = true;
                } else if !blocked[w] {
                    path.push(w);
                    blocked[w] = true;
                    stack.push((w, 0));
                    found_on_path.push(false);
                    advanced = true;
                    break;
                }
            }
            if advanced {
                continue;
            }
            // Exhausted v: unblock or defer.
            let found = found_on_path.pop().unwrap();
            stack.pop();
            path.pop();
            if found {
                unblock(v, &mut blocked, &mut blist);
                if let Some(f) = found_on_path.last_mut() {
                    *f = true;
                }
            } else {
                for &w in &adj[v] {
                    if w >= start && !blist[w].contains(&v) {
                        blist[w].push(v);
                    }
                }
            }
            if stack.is_empty() {
                break;
            }
        }
    }
    Ok(cycles)
}

fn unblock(v: usize, blocked: &mut [bool], blist: &mut [Vec<usize>]) {
    let mut queue = vec![v];
    while let Some(x) = queue.pop() {
        if blocked[x] {
            blocked[x] = false;
            queue.extend(blist[x].drain(..));
        }
    }
}

/// Coordinate coloring table for theta-determinedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaColoring {
    pub theta: Mask,
    pub determined: bool,
    /// phi -> type colors present among sources with that coordinate.
    pub classes: Vec<(Mask, Vec<(EdgeKind, usize)>)>,
    /// Present when |theta| = 2 and the matching is determined, which forces
    /// triangularity.
    pub certificate: Option<TriangularCertificate>,
}

/// Partitions matched sources by their theta-coordinate and checks each class
/// is monochromatic in type color. Errors if theta meets a matched index.
pub fn theta_determined(m: &Matching, theta: Mask) -> Result<ThetaColoring, Error> {
    for e in &m.edges {
        if theta >> (e.index - 1) & 1 == 1 {
            return Err(Error::ThetaTouchedByMatching(e.index));
        }
    }
    let mut classes: BTreeMap<Mask, Vec<(EdgeKind, usize)>> = BTreeMap::new();
    for e in &m.edges {
        let phi = e.source & theta;
        let colors = classes.entry(phi).or_default();
        if !colors.contains(&(e.kind, e.index)) {
            colors.push((e.kind, e.index));
        }
    }
    let determined = classes.values().all(|c| c.len() == 1);
    let certificate = (determined && theta.count_ones() == 2).then(|| TriangularCertificate {
        indices: m.homotopy_indices(),
        order: None,
        via: TriangularVia::TwoDetermined(theta),
    });
    Ok(ThetaColoring {
        theta,
        determined,
        classes: classes.into_iter().collect(),
        certificate,
    })
}

/// The determinant of the matched submatrix, kept factored over disjoint
/// cycles whenever possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDeterminant {
    pub cycles: usize,
    pub disjoint: bool,
    pub shape: DetShape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetShape {
    /// `sign * chi^monomial * prod(factors)`; empty factors means the
    /// determinant is the diagonal monomial itself.
    Factored { sign: i64, monomial: Exps, factors: Vec<MPoly> },
    Expanded(MPoly),
}

impl CycleDeterminant {
    pub fn to_poly(&self, n: usize) -> MPoly {
        match &self.shape {
            DetShape::Factored { sign, monomial, factors } => {
                let mut acc = MPoly::monomial(n, monomial.clone(), *sign);
                for f in factors {
                    acc = acc.mul(f);
                }
                acc
            }
            DetShape::Expanded(p) => p.clone(),
        }
    }

    /// Normalizes into the support-polynomial grammar: triangular
    /// determinants are monomials, equal factors collapse to a scaled power.
    pub fn to_support_polynomial(&self, n: usize) -> SupportPolynomial {
        match &self.shape {
            DetShape::Factored { sign, monomial, factors } => {
                if factors.is_empty() {
                    return SupportPolynomial::ScaledPower {
                        sign: *sign,
                        monomial: monomial.clone(),
                        base: MPoly::constant(n, 1),
                        power: 0,
                    };
                }
                let mut sign = *sign;
                let mut normed: Vec<MPoly> = Vec::new();
                for f in factors {
                    let lead = f.terms.iter().next_back().map(|(_, &c)| c).unwrap_or(1);
                    if lead < 0 {
                        sign = -sign;
                        normed.push(f.neg());
                    } else {
                        normed.push(f.clone());
                    }
                }
                if normed.iter().all(|f| *f == normed[0]) {
                    SupportPolynomial::ScaledPower {
                        sign,
                        monomial: monomial.clone(),
                        base: normed[0].clone(),
                        power: normed.len() as u32,
                    }
                } else {
                    SupportPolynomial::GeneralSum(self.to_poly(n))
                }
            }
            DetShape::Expanded(p) => SupportPolynomial::GeneralSum(p.clone()),
        }
    }
}

fn edge_weight_poly(n: usize, e: &EdgeRef) -> (i64, Exps) {
    let sign = e.sign as i64;
    let mut exps = vec![0u16; n];
    if e.kind == EdgeKind::Homotopy {
        exps[e.index - 1] = 1;
    }
    (sign, exps)
}

/// Determinant of the matched submatrix by summing over families of pairwise
/// vertex-disjoint directed cycles in the auxiliary graph. A cycle of length
/// L contributes permutation sign `(-1)^{L-1}` and replaces its vertices'
/// diagonal weights by the traversed edge weights.
pub fn determinant_via_cycles(
    t: &TaylorGraph,
    m: &Matching,
    cap: usize,
) -> Result<CycleDeterminant, Error> {
    let n = t.n();
    let aux = build_auxiliary(t, m)?;
    let cycles = johnson_cycles(&simple_adjacency(&aux), cap)?;
    let disjoint = cycles_pairwise_disjoint(&cycles);
    let diag: Vec<(i64, Exps)> =
        aux.matched.iter().map(|e| edge_weight_poly(n, e)).collect();

    // The traversed-edge product and the sign of one cycle.
    let cycle_term = |cycle: &[usize]| -> (i64, Exps) {
        let mut sign: i64 = if cycle.len() % 2 == 0 { -1 } else { 1 };
        let mut exps = vec![0u16; n];
        for (k, &u) in cycle.iter().enumerate() {
            let w = cycle[(k + 1) % cycle.len()];
            let (_, e) = aux.adj[u]
                .iter()
                .find(|&&(x, _)| x == w)
                .expect("cycle edge exists");
            let (s, ex) = edge_weight_poly(n, e);
            sign *= s;
            for (a, b) in exps.iter_mut().zip(&ex) {
                *a += b;
            }
        }
        (sign, exps)
    };

    if disjoint {
        let in_cycle: std::collections::HashSet<usize> =
            cycles.iter().flatten().copied().collect();
        let mut sign: i64 = 1;
        let mut monomial = vec![0u16; n];
        for (v, (s, ex)) in diag.iter().enumerate() {
            if !in_cycle.contains(&v) {
                sign *= s;
                for (a, b) in monomial.iter_mut().zip(ex) {
                    *a += b;
                }
            }
        }
        let factors: Vec<MPoly> = cycles
            .iter()
            .map(|c| {
                let mut dsign: i64 = 1;
                let mut dexps = vec![0u16; n];
                for &v in c {
                    let (s, ex) = &diag[v];
                    dsign *= s;
                    for (a, b) in dexps.iter_mut().zip(ex) {
                        *a += b;
                    }
                }
                let (csign, cexps) = cycle_term(c);
                let mut f = MPoly::monomial(n, dexps, dsign);
                f.add_term(cexps, csign);
                f
            })
            .collect();
        return Ok(CycleDeterminant {
            cycles: cycles.len(),
            disjoint,
            shape: DetShape::Factored { sign, monomial, factors },
        });
    }

    // Overlapping cycles: enumerate independent families explicitly.
    let k = cycles.len();
    let masks: Vec<u128> = if aux.matched.len() <= 128 {
        cycles
            .iter()
            .map(|c| c.iter().fold(0u128, |m, &v| m | 1 << v))
            .collect()
    } else {
        return Err(Error::OverlappingCyclesUnsupported(cap));
    };
    let terms: Vec<(i64, Exps, u128)> = cycles
        .iter()
        .zip(&masks)
        .map(|(c, &mask)| {
            let (s, ex) = cycle_term(c);
            (s, ex, mask)
        })
        .collect();
    let mut det = MPoly::zero(n);
    let mut families = 0usize;
    let mut stack: Vec<(usize, u128, i64, Exps)> = vec![(0, 0, 1, vec![0u16; n])];
    while let Some((next, used, sign, exps)) = stack.pop() {
        if next == k {
            families += 1;
            if families > cap {
                return Err(Error::OverlappingCyclesUnsupported(cap));
            }
            let mut tsign = sign;
            let mut texps = exps.clone();
            for (v, (s, ex)) in diag.iter().enumerate() {
                if used >> v & 1 == 0 {
                    tsign *= s;
                    for (a, b) in texps.iter_mut().zip(ex) {
                        *a += b;
                    }
                }
            }
            det.add_term(texps, tsign);
            continue;
        }
        // Skip cycle `next`.
        stack.push((next + 1, used, sign, exps.clone()));
        // Take it if disjoint from the family so far.
        let (s, ex, mask) = &terms[next];
        if used & mask == 0 {
            let mut e2 = exps.clone();
            for (a, b) in e2.iter_mut().zip(ex) {
                *a += b;
            }
            stack.push((next + 1, used | mask, sign * s, e2));
        }
    }
    Ok(CycleDeterminant {
        cycles: cycles.len(),
        disjoint,
        shape: DetShape::Expanded(det),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::SquareFreeIdeal;
    use crate::taylor::TaylorGraph;

    fn running_p5() -> (SquareFreeIdeal, TaylorGraph) {
        let ideal = SquareFreeIdeal::validate_types(
            5,
            &[0b00001, 0b10000, 0b00011, 0b00110, 0b01100, 0b11000],
        )
        .unwrap();
        let t = TaylorGraph::build(&ideal).unwrap();
        (ideal, t)
    }

    /// The hand-built {f1,f5}-perfect matching of the 5-path ideal: four
    /// hypercubes of homotopy and differential edges.
    pub fn p5_matching() -> Matching {
        let mut edges = Vec::new();
        for lambda in [0b00000u32, 0b00100, 0b10000, 0b10100] {
            edges.push(EdgeRef::homotopy(lambda, 1));
            edges.push(EdgeRef::homotopy(0b01000 | lambda, 1));
        }
        for lambda in [0b00000u32, 0b00001, 0b00100, 0b00101] {
            edges.push(EdgeRef::homotopy(0b00010 | lambda, 5));
        }
        for lambda in [0b00000u32, 0b00001, 0b10000, 0b10001] {
            edges.push(EdgeRef::differential(0b01010 | lambda, 3));
        }
        Matching::new(0b10001, edges)
    }

    #[test]
    fn p5_matching_verifies() {
        let (_, t) = running_p5();
        let m = p5_matching();
        assert_eq!(m.edges.len(), 16);
        verify_matching(&t, &m).unwrap();

        let mut broken = m.clone();
        broken.edges.pop();
        assert!(matches!(
            verify_matching(&t, &broken),
            Err(Error::WrongCardinality { got: 15, want: 16 })
        ));
    }

    #[test]
    fn matching_serializes_with_mask_strings() {
        let m = p5_matching();
        let json = m.to_json(5);
        assert!(json.contains(r#""kind":"h""#));
        assert!(json.contains(r#""src":"00000""#));
        let (_, t) = running_p5();
        let aux = build_auxiliary(&t, &m).unwrap();
        let dot = aux.to_dot();
        assert!(dot.contains("digraph auxiliary"));
        assert!(dot.contains("^-1"));
    }

    #[test]
    fn p5_auxiliary_has_ten_edges_and_is_acyclic() {
        let (_, t) = running_p5();
        let m = p5_matching();
        let aux = build_auxiliary(&t, &m).unwrap();
        assert_eq!(aux.edge_count(), 10);
        match triangularity(&aux, CYCLE_CAP).unwrap() {
            Triangularity::Triangular(cert) => {
                assert_eq!(cert.indices, 0b10001);
                assert_eq!(
                    cert.polynomial(),
                    SupportPolynomial::SquareFreeMonomial(0b10001)
                );
            }
            other => panic!("expected triangular, got {other:?}"),
        }
    }

    #[test]
    fn p5_matching_is_24_determined() {
        let m = p5_matching();
        let coloring = theta_determined(&m, 0b01010).unwrap();
        assert!(coloring.determined);
        assert_eq!(coloring.classes.len(), 4);
        assert!(coloring.certificate.is_some());
        // Classes: {} and {4} are h1, {2} is h5, {2,4} is d3.
        for (phi, colors) in &coloring.classes {
            let expected = match phi {
                0b00000 | 0b01000 => (EdgeKind::Homotopy, 1),
                0b00010 => (EdgeKind::Homotopy, 5),
                0b01010 => (EdgeKind::Differential, 3),
                _ => panic!("unexpected class {phi:#b}"),
            };
            assert_eq!(colors.as_slice(), &[expected]);
        }
    }

    #[test]
    fn theta_touching_matched_index_errors() {
        let m = p5_matching();
        assert_eq!(
            theta_determined(&m, 0b00001),
            Err(Error::ThetaTouchedByMatching(1))
        );
    }

    #[test]
    fn p5_determinant_is_monomial_in_chi1_chi5() {
        let (_, t) = running_p5();
        let m = p5_matching();
        let det = determinant_via_cycles(&t, &m, CYCLE_CAP).unwrap();
        assert_eq!(det.cycles, 0);
        let poly = det.to_poly(5);
        assert_eq!(poly.terms.len(), 1);
        let (exps, c) = poly.terms.iter().next().unwrap();
        assert_eq!(c.unsigned_abs(), 1);
        assert_eq!(exps.as_slice(), &[8, 0, 0, 0, 4]);
    }

    #[test]
    fn search_finds_p5_matching() {
        let (_, t) = running_p5();
        let m = search_matching(&t, 0b10001).expect("a {1,5}-matching exists");
        verify_matching(&t, &m).unwrap();
    }

    #[test]
    fn complete_intersection_searches() {
        let types: Vec<Mask> = (0..4).map(|i| 1 << i).collect();
        let ideal = SquareFreeIdeal::validate_types(4, &types).unwrap();
        let t = TaylorGraph::build(&ideal).unwrap();
        // sigma = [n]: every homotopy edge is allowed.
        assert!(search_matching(&t, 0b1111).is_some());
        // sigma = {i}: pair each mask with mask toggled at i.
        let m = search_matching(&t, 0b0001).expect("{1}-matching");
        verify_matching(&t, &m).unwrap();
        let aux = build_auxiliary(&t, &m).unwrap();
        assert!(matches!(
            triangularity(&aux, CYCLE_CAP).unwrap(),
            Triangularity::Triangular(_)
        ));
        // sigma empty: no differential edges exist at all.
        assert!(search_matching(&t, 0).is_none());
    }

    #[test]
    fn johnson_enumerates_small_cycles() {
        // Two triangles sharing a vertex: 2 cycles, not disjoint.
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![4], vec![2]];
        let cycles = johnson_cycles(&adj, 100).unwrap();
        assert_eq!(cycles.len(), 2);
        assert!(!cycles_pairwise_disjoint(&cycles));
    }
}
