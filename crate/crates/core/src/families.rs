//! Constructors, expected varieties and hand-built matchings for the infinite
//! families: cycle edge ideals and their fibers, double brooms, whiskered
//! triangles, stacked simplex ideals, and the type-B matchings.

use crate::error::Error;
use crate::graphs6;
use crate::ideal::{Mask, SquareFreeIdeal};
use crate::matching::Matching;
use crate::taylor::EdgeRef;
use crate::variety::VarietyExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Edge ideal of the n-cycle, generators labeled around the cycle.
    CycleEdgeIdeal(usize),
    /// Cycle edge ideal plus singleton variables for the given generators.
    CycleFiber { n: usize, singletons: Mask },
    /// Path f1-f2-f3 with `a` leaves on f1 and `b` leaves on f3; generator
    /// order f1, f2, f3, g_1..g_a, h_1..h_b.
    DoubleBroom { a: usize, b: usize, with_f2: bool },
    /// Double broom plus the edge f1-f3.
    WhiskeredTriangle { a: usize, b: usize, with_f2: bool },
    /// Stacked simplex ideal on 2n generators f_1..f_n, g_1..g_n.
    DeltaN(usize),
    /// A dashed-variable-free fiber ideal of one of the type-B graphs 27-35.
    TypeB(usize),
}

pub fn cycle_edge_ideal(n: usize) -> Result<SquareFreeIdeal, Error> {
    make_family(&FamilySpec::CycleEdgeIdeal(n))
}

fn cycle_pair(n: usize, i: usize) -> Mask {
    // Edge {i, i+1} with wraparound, 1-based.
    let j = if i == n { 1 } else { i + 1 };
    (1 << (i - 1)) | (1 << (j - 1))
}

pub fn make_family(spec: &FamilySpec) -> Result<SquareFreeIdeal, Error> {
    match spec {
        FamilySpec::CycleEdgeIdeal(n) => {
            make_family(&FamilySpec::CycleFiber { n: *n, singletons: 0 })
        }
        FamilySpec::CycleFiber { n, singletons } => {
            if *n < 3 {
                return Err(Error::BadParameters("cycle needs n >= 3".into()));
            }
            if *n > crate::MAX_GENERATORS {
                return Err(Error::TooManyGenerators(crate::MAX_GENERATORS));
            }
            if *singletons >> n != 0 {
                return Err(Error::BadParameters("singleton outside 1..n".into()));
            }
            let mut types: Vec<Mask> = (1..=*n).map(|i| cycle_pair(*n, i)).collect();
            for i in 0..*n {
                if singletons >> i & 1 == 1 {
                    types.push(1 << i);
                }
            }
            SquareFreeIdeal::validate_types(*n, &types)
        }
        FamilySpec::DoubleBroom { a, b, with_f2 } => broom(*a, *b, false, *with_f2),
        FamilySpec::WhiskeredTriangle { a, b, with_f2 } => broom(*a, *b, true, *with_f2),
        FamilySpec::DeltaN(n) => delta_ideal(*n),
        FamilySpec::TypeB(k) => {
            if !(27..=35).contains(k) {
                return Err(Error::BadParameters("type B graphs are 27..=35".into()));
            }
            graphs6::representative(*k)
        }
    }
}

fn broom(a: usize, b: usize, whisker: bool, with_f2: bool) -> Result<SquareFreeIdeal, Error> {
    if a == 0 || b == 0 {
        return Err(Error::BadParameters("broom needs a, b >= 1".into()));
    }
    let n = a + b + 3;
    if n > crate::MAX_GENERATORS {
        return Err(Error::TooManyGenerators(crate::MAX_GENERATORS));
    }
    let f1 = 0b001u32;
    let f2 = 0b010u32;
    let f3 = 0b100u32;
    let g = |i: usize| 1u32 << (2 + i); // g_i at index 3+i
    let h = |j: usize| 1u32 << (2 + a + j);
    let mut types = vec![f1 | f2, f2 | f3];
    if whisker {
        types.push(f1 | f3);
    }
    for i in 1..=a {
        types.push(f1 | g(i));
        types.push(g(i));
    }
    for j in 1..=b {
        types.push(f3 | h(j));
        types.push(h(j));
    }
    if with_f2 {
        types.push(f2);
    }
    SquareFreeIdeal::validate_types(n, &types)
}

fn delta_ideal(n: usize) -> Result<SquareFreeIdeal, Error> {
    if n < 3 {
        return Err(Error::BadParameters("stacked simplex needs n >= 3".into()));
    }
    if 2 * n > crate::MAX_GENERATORS {
        return Err(Error::TooManyGenerators(crate::MAX_GENERATORS));
    }
    // Faces of the clique complex: subsets of [f], and {g_i} + subsets of
    // [f] - {f_i}. Excluded: {g_1}+sigma (sigma in [f]-{f1}, |sigma|<=n-3),
    // {g_2}+theta (theta in [f]-{f1,f2}), {g_3}+phi (phi in [f]-{f1,f2,f3}).
    let fmask: Mask = (1 << n) - 1;
    let mut types: Vec<Mask> = Vec::new();
    for sub in 1..=fmask {
        types.push(sub);
    }
    let small = n as u32 - 3;
    for i in 1..=n {
        let gi = 1u32 << (n + i - 1);
        let allowed = fmask & !(1 << (i - 1));
        let mut sub = allowed;
        loop {
            let excluded = match i {
                1 => sub & 1 == 0 && sub.count_ones() <= small,
                2 => sub & 0b11 == 0 && sub.count_ones() <= small,
                3 => sub & 0b111 == 0 && sub.count_ones() <= small,
                _ => false,
            };
            if !excluded {
                types.push(gi | sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & allowed;
        }
    }
    SquareFreeIdeal::validate_types(2 * n, &types)
}

pub fn expected_variety(spec: &FamilySpec) -> Result<VarietyExpr, Error> {
    match spec {
        FamilySpec::CycleEdgeIdeal(n) => {
            expected_variety(&FamilySpec::CycleFiber { n: *n, singletons: 0 })
        }
        FamilySpec::CycleFiber { n, singletons } => {
            if *n < 3 {
                return Err(Error::BadParameters("cycle needs n >= 3".into()));
            }
            if *n % 4 != 2 {
                return Ok(VarietyExpr::Full);
            }
            let odd: Mask = (0..*n).filter(|i| i % 2 == 0).map(|i| 1 << i).fold(0, |a, b| a | b);
            let even: Mask = ((1u32 << n) - 1) & !odd;
            let (on_odd, on_even) = (singletons & odd != 0, singletons & even != 0);
            Ok(match (on_odd, on_even) {
                (false, false) => VarietyExpr::AlternatingBinomial { odd, even },
                (true, false) => VarietyExpr::MonomialHypersurface(even),
                (false, true) => VarietyExpr::MonomialHypersurface(odd),
                (true, true) => VarietyExpr::Full,
            })
        }
        FamilySpec::DoubleBroom { a, b, with_f2 }
        | FamilySpec::WhiskeredTriangle { a, b, with_f2 } => {
            if *a == 0 || *b == 0 {
                return Err(Error::BadParameters("broom needs a, b >= 1".into()));
            }
            if *with_f2 {
                return Ok(VarietyExpr::Full);
            }
            let gmask: Mask = (0..*a).map(|i| 1u32 << (3 + i)).fold(0, |x, y| x | y);
            let hmask: Mask = (0..*b).map(|j| 1u32 << (3 + a + j)).fold(0, |x, y| x | y);
            Ok(VarietyExpr::Union(vec![
                VarietyExpr::CoordinateSubspace(gmask),
                VarietyExpr::CoordinateSubspace(hmask),
            ]))
        }
        FamilySpec::DeltaN(n) => {
            if *n < 3 {
                return Err(Error::BadParameters("stacked simplex needs n >= 3".into()));
            }
            let gmask: Mask = (0..*n).map(|i| 1u32 << (n + i)).fold(0, |x, y| x | y);
            Ok(VarietyExpr::MonomialHypersurface(gmask))
        }
        FamilySpec::TypeB(_) => Ok(VarietyExpr::MonomialHypersurface(0b101000)),
    }
}

/// The hand construction from the relevant proof, as `(sigma, matching)`.
pub fn family_matching(spec: &FamilySpec) -> Result<(Mask, Matching), Error> {
    match spec {
        FamilySpec::CycleEdgeIdeal(n) | FamilySpec::CycleFiber { n, .. } => {
            if *n % 4 != 2 || *n < 6 {
                return Err(Error::NoHandConstruction);
            }
            Ok(cycle_matching(*n, false))
        }
        FamilySpec::DoubleBroom { a, b, with_f2 }
        | FamilySpec::WhiskeredTriangle { a, b, with_f2 } => {
            if *with_f2 {
                return Err(Error::NoHandConstruction);
            }
            Ok(broom_matching(*a, *b, 1, 1))
        }
        FamilySpec::DeltaN(n) => Ok(delta_matching(*n)),
        FamilySpec::TypeB(k) => Ok(type_b_matching(*k)),
    }
}

/// Every hand matching relevant to classifying the family member: brooms get
/// one matching per leaf pair.
pub fn family_matchings(spec: &FamilySpec) -> Result<Vec<(Mask, Matching)>, Error> {
    match spec {
        FamilySpec::DoubleBroom { a, b, with_f2 }
        | FamilySpec::WhiskeredTriangle { a, b, with_f2 } => {
            if *with_f2 {
                return Err(Error::NoHandConstruction);
            }
            let mut out = Vec::new();
            for i in 1..=*a {
                for j in 1..=*b {
                    out.push(broom_matching(*a, *b, i, j));
                }
            }
            Ok(out)
        }
        _ => Ok(vec![family_matching(spec)?]),
    }
}

/// E-perfect O-determined matching for the edge ideal of a (4m+2)-cycle.
/// With `swap_parity` the roles of odd and even generators are exchanged
/// (used on fibers whose present singletons sit at even positions).
pub fn cycle_matching(n: usize, swap_parity: bool) -> (Mask, Matching) {
    assert!(n % 4 == 2 && n >= 6);
    // Work in positions 1..=n; odd positions carry the coordinate string.
    // With swap_parity, "odd" means even positions instead.
    let pos = |k: usize| -> usize {
        // k-th odd position, 1-based: 1,3,5,...
        2 * k - 1
    };
    let to_gen = |p: usize| -> usize {
        let p0 = if swap_parity { p % n + 1 } else { p };
        p0
    };
    let half = n / 2; // 2m+1 odd positions
    let even_mask_pos: Vec<usize> = (1..=n).filter(|p| p % 2 == 0).collect();
    let mut edges = Vec::new();
    for b in 0u32..(1 << half) {
        let bit = |k: usize| b >> (k - 1) & 1; // value at k-th odd position
        // First odd position i (1-based among odds) with b_i = b_{i+2}.
        let mut rep = half; // wrap default: last odd position, value b_1
        for k in 1..half {
            if bit(k) == bit(k + 1) {
                rep = k;
                break;
            }
        }
        let rep_pos = pos(rep);
        let value = if rep == half { bit(1) } else { bit(rep) };
        let idx_pos = if rep_pos == n - 1 { n } else { rep_pos + 1 };
        let sigma_b: Mask = (1..=half)
            .filter(|&k| bit(k) == 1)
            .map(|k| 1u32 << (to_gen(pos(k)) - 1))
            .fold(0, |x, y| x | y);
        let idx_gen = to_gen(idx_pos);
        let free: Vec<usize> = even_mask_pos
            .iter()
            .map(|&p| to_gen(p))
            .filter(|&gq| gq != idx_gen)
            .collect();
        for choice in 0u32..(1 << free.len()) {
            let lambda: Mask = free
                .iter()
                .enumerate()
                .filter(|(q, _)| choice >> q & 1 == 1)
                .map(|(_, &gq)| 1u32 << (gq - 1))
                .fold(0, |x, y| x | y);
            let lower = sigma_b | lambda;
            edges.push(if value == 0 {
                EdgeRef::homotopy(lower, idx_gen)
            } else {
                EdgeRef::differential(lower, idx_gen)
            });
        }
    }
    let sigma: Mask = even_mask_pos
        .iter()
        .map(|&p| 1u32 << (to_gen(p) - 1))
        .fold(0, |x, y| x | y);
    (sigma, Matching::new(sigma, edges))
}

/// The {g_i, h_j}-perfect matching for a broom: every vertex pairs across one
/// of f2, g_i or h_j according to its {f1, f3} coordinate.
fn broom_matching(a: usize, b: usize, gi: usize, hj: usize) -> (Mask, Matching) {
    let n = a + b + 3;
    let f1 = 0b001u32;
    let f3 = 0b100u32;
    let g_bit = 1u32 << (2 + gi);
    let h_bit = 1u32 << (2 + a + hj);
    let f2 = 0b010u32;
    let mut edges = Vec::new();
    for v in 0..(1u32 << n) {
        match (v & f1 != 0, v & f3 != 0) {
            (true, true) => {
                // Pair across f2 with a differential edge.
                if v & f2 == 0 {
                    edges.push(EdgeRef::differential(v, 2));
                }
            }
            (true, false) => {
                if v & h_bit == 0 {
                    edges.push(EdgeRef::homotopy(v, 3 + a + hj));
                }
            }
            (false, _) => {
                if v & g_bit == 0 {
                    edges.push(EdgeRef::homotopy(v, 3 + gi));
                }
            }
        }
    }
    let sigma = g_bit | h_bit;
    (sigma, Matching::new(sigma, edges))
}

/// The [g]-perfect, [f]-determined matching for the stacked simplex ideal:
/// each vertex pairs across one g-direction chosen from its [f]-coordinate.
fn delta_matching(n: usize) -> (Mask, Matching) {
    let fmask: Mask = (1 << n) - 1;
    let g = |i: usize| 1u32 << (n + i - 1);
    let mut edges = Vec::new();
    for v in 0..(1u32 << (2 * n)) {
        let psi = v & fmask;
        let popcount = psi.count_ones();
        let (dir, kind) = if popcount == 0 || psi == 1 {
            (1, EdgeKindChoice::Homotopy)
        } else if popcount == 1 {
            (psi.trailing_zeros() as usize + 1, EdgeKindChoice::Homotopy)
        } else if popcount == 2 && psi & 1 == 1 {
            if psi & 0b10 != 0 {
                (3, EdgeKindChoice::Differential)
            } else {
                (2, EdgeKindChoice::Differential)
            }
        } else {
            (1, EdgeKindChoice::Differential)
        };
        let bit = g(dir);
        if v & bit != 0 {
            continue; // upper vertex of its pair
        }
        edges.push(match kind {
            EdgeKindChoice::Homotopy => EdgeRef::homotopy(v, n + dir),
            EdgeKindChoice::Differential => EdgeRef::differential(v, n + dir),
        });
    }
    let sigma: Mask = (1..=n).map(g).fold(0, |x, y| x | y);
    (sigma, Matching::new(sigma, edges))
}

enum EdgeKindChoice {
    Homotopy,
    Differential,
}

/// The {f4, f6}-perfect matchings of the type-B analysis. Graphs 27-29 use
/// the four-block matching; graphs 30-35 the {f2,f3}-determined three-block
/// one.
fn type_b_matching(k: usize) -> (Mask, Matching) {
    assert!((27..=35).contains(&k));
    let mut edges = Vec::new();
    let hypercube = |edges: &mut Vec<EdgeRef>, base: Mask, idx: usize, free: Mask, kind: EdgeKindChoice| {
        let mut sub = free;
        loop {
            edges.push(match kind {
                EdgeKindChoice::Homotopy => EdgeRef::homotopy(base | sub, idx),
                EdgeKindChoice::Differential => EdgeRef::differential(base | sub, idx),
            });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    };
    // d_{23,1} x 2^{4,5,6} and h_{0,6} x 2^{1,2,4,5} are shared.
    hypercube(&mut edges, 0b000110, 1, 0b111000, EdgeKindChoice::Differential);
    hypercube(&mut edges, 0b000000, 6, 0b011011, EdgeKindChoice::Homotopy);
    if k <= 29 {
        hypercube(&mut edges, 0b010100, 1, 0b101000, EdgeKindChoice::Differential);
        hypercube(&mut edges, 0b000100, 4, 0b100001, EdgeKindChoice::Homotopy);
    } else {
        hypercube(&mut edges, 0b000100, 4, 0b110001, EdgeKindChoice::Homotopy);
    }
    let sigma = 0b101000;
    (sigma, Matching::new(sigma, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcd::GcdGraph;
    use crate::matching::{build_auxiliary, theta_determined, triangularity, verify_matching, Triangularity, CYCLE_CAP};
    use crate::taylor::TaylorGraph;

    #[test]
    fn cycle_edge_ideal_types() {
        let c6 = cycle_edge_ideal(6).unwrap();
        let masks: Vec<Mask> = c6.type_masks().collect();
        assert_eq!(
            masks,
            vec![0b000011, 0b000110, 0b001100, 0b011000, 0b100001, 0b110000]
        );
        let g = GcdGraph::build(&c6);
        assert!((1..=6).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn db11_is_the_five_path() {
        let ideal = make_family(&FamilySpec::DoubleBroom { a: 1, b: 1, with_f2: false }).unwrap();
        let g = GcdGraph::build(&ideal);
        // Path g1 - f1 - f2 - f3 - h1 in generator labels 4-1-2-3-5.
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(4, 1) && g.has_edge(1, 2) && g.has_edge(2, 3) && g.has_edge(3, 5));
    }

    #[test]
    fn delta3_is_graph_38_shape() {
        let ideal = make_family(&FamilySpec::DeltaN(3)).unwrap();
        let g = GcdGraph::build(&ideal);
        // Complete graph on f's plus g_i joined to the other two f's.
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(g.has_edge(i, j));
        }
        for i in 1..=3usize {
            let gi = 3 + i;
            for j in 1..=3usize {
                assert_eq!(g.has_edge(j, gi), i != j);
            }
        }
        // The g singletons are the absent variables.
        for i in 1..=3 {
            assert!(!ideal.has_type(1 << (3 + i - 1)));
        }
    }

    #[test]
    fn hexagon_matching_verifies_and_is_o_determined() {
        let ideal = cycle_edge_ideal(6).unwrap();
        let t = TaylorGraph::build(&ideal).unwrap();
        let (sigma, m) = cycle_matching(6, false);
        assert_eq!(sigma, 0b101010);
        assert_eq!(m.edges.len(), 32);
        verify_matching(&t, &m).unwrap();
        let coloring = theta_determined(&m, 0b010101).unwrap();
        assert!(coloring.determined);
    }

    #[test]
    fn decagon_matching_verifies() {
        let ideal = cycle_edge_ideal(10).unwrap();
        let t = TaylorGraph::build(&ideal).unwrap();
        let (_, m) = cycle_matching(10, false);
        assert_eq!(m.edges.len(), 512);
        verify_matching(&t, &m).unwrap();
        let odd: Mask = 0b0101010101;
        assert!(theta_determined(&m, odd).unwrap().determined);
    }

    #[test]
    fn broom_matchings_verify_and_are_triangular() {
        for (a, b, whisker) in [(1, 1, false), (1, 1, true), (2, 3, false), (3, 2, true)] {
            let spec = if whisker {
                FamilySpec::WhiskeredTriangle { a, b, with_f2: false }
            } else {
                FamilySpec::DoubleBroom { a, b, with_f2: false }
            };
            let ideal = make_family(&spec).unwrap();
            let t = TaylorGraph::build(&ideal).unwrap();
            for (sigma, m) in family_matchings(&spec).unwrap() {
                verify_matching(&t, &m).unwrap();
                assert_eq!(m.edges.len(), 1 << (a + b + 2));
                let coloring = theta_determined(&m, 0b101).unwrap();
                assert!(coloring.determined, "a={a} b={b} whisker={whisker}");
                let aux = build_auxiliary(&t, &m).unwrap();
                match triangularity(&aux, CYCLE_CAP).unwrap() {
                    Triangularity::Triangular(cert) => assert_eq!(cert.indices, sigma),
                    other => panic!("expected triangular: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn delta_matchings_verify() {
        for n in [3usize, 4] {
            let spec = FamilySpec::DeltaN(n);
            let ideal = make_family(&spec).unwrap();
            let t = TaylorGraph::build(&ideal).unwrap();
            let (sigma, m) = family_matching(&spec).unwrap();
            verify_matching(&t, &m).unwrap();
            let fmask: Mask = (1 << n) - 1;
            assert!(theta_determined(&m, fmask).unwrap().determined);
            let aux = build_auxiliary(&t, &m).unwrap();
            match triangularity(&aux, CYCLE_CAP).unwrap() {
                Triangularity::Triangular(cert) => assert_eq!(cert.indices, sigma),
                other => panic!("delta({n}) should be triangular: {other:?}"),
            }
        }
    }

    #[test]
    fn type_b_matchings_verify() {
        for k in 27..=35 {
            let ideal = graphs6::representative(k).unwrap();
            let t = TaylorGraph::build(&ideal).unwrap();
            let (sigma, m) = type_b_matching(k);
            assert_eq!(sigma, 0b101000);
            verify_matching(&t, &m).unwrap();
            let aux = build_auxiliary(&t, &m).unwrap();
            match triangularity(&aux, CYCLE_CAP).unwrap() {
                Triangularity::Triangular(cert) => {
                    assert_eq!(cert.indices & 0b101000, cert.indices);
                }
                other => panic!("graph {k} matching should be triangular: {other:?}"),
            }
        }
    }

    #[test]
    fn bad_parameters_error() {
        assert!(make_family(&FamilySpec::CycleEdgeIdeal(2)).is_err());
        assert!(make_family(&FamilySpec::DoubleBroom { a: 0, b: 1, with_f2: false }).is_err());
        assert!(make_family(&FamilySpec::DeltaN(2)).is_err());
        assert!(family_matching(&FamilySpec::CycleEdgeIdeal(7)).is_err());
    }
}
