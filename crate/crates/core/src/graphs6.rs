//! Catalog of the 41 connected six-vertex GCD graphs whose fibers are not
//! settled by the degree-five shortcut, grouped by how their support
//! varieties are certified, together with the dashed-variable data that
//! separates interesting fibers from full ones.

use crate::error::Error;
use crate::fiber::enumerate_fiber;
use crate::gcd::GcdGraph;
use crate::ideal::{Mask, SquareFreeIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    F1,
    F2,
    F3,
    F4,
    A,
    B,
    C,
}

pub struct CatalogEntry {
    pub number: usize,
    pub class: GraphClass,
    pub edges: &'static [(usize, usize)],
    /// Type masks of variables that must be absent for interesting support.
    pub dashed: &'static [Mask],
}

const fn e(i: usize, j: usize) -> (usize, usize) {
    (i, j)
}

const M1: Mask = 1;
const M15: Mask = 0b010001;
const M2: Mask = 0b000010;
const M4: Mask = 0b001000;
const M6: Mask = 0b100000;
const M12: Mask = 0b000011;

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { number: 1, class: GraphClass::F1, edges: &[e(1,4),e(4,5),e(5,6),e(3,5),e(2,3)], dashed: &[] },
    CatalogEntry { number: 2, class: GraphClass::F1, edges: &[e(1,4),e(4,5),e(3,5),e(3,4),e(2,3),e(5,6)], dashed: &[] },
    CatalogEntry { number: 3, class: GraphClass::F1, edges: &[e(5,6),e(3,5),e(2,3),e(1,2),e(1,4),e(4,5)], dashed: &[] },
    CatalogEntry { number: 4, class: GraphClass::F1, edges: &[e(5,6),e(4,5),e(1,4),e(1,2),e(2,3),e(3,5),e(3,4)], dashed: &[] },
    CatalogEntry { number: 5, class: GraphClass::F1, edges: &[e(5,6),e(1,4),e(1,2),e(2,3),e(3,5),e(3,4)], dashed: &[] },
    CatalogEntry { number: 6, class: GraphClass::F1, edges: &[e(1,6),e(2,6),e(2,3),e(3,4),e(1,4),e(4,5),e(5,6)], dashed: &[] },
    CatalogEntry { number: 7, class: GraphClass::F2, edges: &[e(5,6),e(4,5),e(2,3),e(1,2),e(3,4)], dashed: &[] },
    CatalogEntry { number: 8, class: GraphClass::F2, edges: &[e(5,6),e(4,5),e(3,4),e(2,3),e(1,2),e(1,3)], dashed: &[] },
    CatalogEntry { number: 9, class: GraphClass::F3, edges: &[e(1,6),e(2,3),e(3,4),e(2,4),e(2,6),e(4,6),e(5,6)], dashed: &[] },
    CatalogEntry { number: 10, class: GraphClass::F3, edges: &[e(1,4),e(1,6),e(4,5),e(5,6),e(2,4),e(2,6),e(2,3),e(4,6)], dashed: &[] },
    CatalogEntry { number: 11, class: GraphClass::F3, edges: &[e(2,3),e(3,4),e(3,5),e(4,5),e(5,6),e(2,4),e(2,6),e(4,6),e(1,6)], dashed: &[] },
    CatalogEntry { number: 12, class: GraphClass::F3, edges: &[e(1,6),e(1,2),e(3,6),e(5,6),e(2,3),e(2,5),e(3,5),e(3,4),e(4,5)], dashed: &[] },
    CatalogEntry { number: 13, class: GraphClass::F3, edges: &[e(5,6),e(1,6),e(2,6),e(1,5),e(4,5),e(1,4),e(1,2),e(2,4),e(3,4),e(2,3)], dashed: &[] },
    CatalogEntry { number: 14, class: GraphClass::F3, edges: &[e(5,6),e(4,6),e(1,6),e(4,5),e(1,5),e(2,4),e(1,2),e(2,3),e(1,4)], dashed: &[] },
    CatalogEntry { number: 15, class: GraphClass::F3, edges: &[e(1,2),e(1,6),e(2,3),e(2,6),e(3,5),e(5,6),e(4,5),e(3,6),e(3,4)], dashed: &[] },
    CatalogEntry { number: 16, class: GraphClass::F3, edges: &[e(5,6),e(4,6),e(1,6),e(4,5),e(1,5),e(2,4),e(1,2),e(2,3),e(3,4),e(1,3)], dashed: &[] },
    CatalogEntry { number: 17, class: GraphClass::F3, edges: &[e(5,6),e(4,6),e(1,6),e(2,5),e(4,5),e(1,5),e(2,4),e(1,2),e(2,3),e(3,4),e(1,3)], dashed: &[] },
    CatalogEntry { number: 18, class: GraphClass::F3, edges: &[e(5,6),e(2,6),e(4,6),e(1,6),e(4,5),e(1,5),e(3,5),e(2,4),e(1,2),e(2,3),e(3,4),e(1,3)], dashed: &[] },
    CatalogEntry { number: 19, class: GraphClass::F3, edges: &[e(1,6),e(1,2),e(4,5),e(3,4),e(3,5),e(5,6),e(3,6),e(2,6)], dashed: &[] },
    CatalogEntry { number: 20, class: GraphClass::F4, edges: &[e(1,5),e(1,4),e(2,3),e(2,4),e(3,4),e(3,5),e(4,5),e(5,6)], dashed: &[] },
    CatalogEntry { number: 21, class: GraphClass::F4, edges: &[e(1,3),e(1,4),e(2,3),e(2,4),e(2,5),e(3,5),e(4,5),e(5,6)], dashed: &[] },
    CatalogEntry { number: 22, class: GraphClass::F4, edges: &[e(1,2),e(1,5),e(2,5),e(3,4),e(3,5),e(4,5),e(4,6)], dashed: &[] },
    CatalogEntry { number: 23, class: GraphClass::F4, edges: &[e(5,6),e(3,5),e(1,3),e(1,2),e(2,4),e(4,6),e(4,5),e(2,3),e(3,4),e(2,5)], dashed: &[] },
    CatalogEntry { number: 24, class: GraphClass::F4, edges: &[e(5,6),e(2,5),e(1,2),e(1,3),e(3,5),e(4,5),e(1,4),e(2,4),e(2,3),e(3,4)], dashed: &[] },
    CatalogEntry { number: 25, class: GraphClass::F4, edges: &[e(1,2),e(2,3),e(3,6),e(4,6),e(1,4),e(1,5),e(3,5),e(2,5),e(4,5)], dashed: &[] },
    CatalogEntry { number: 26, class: GraphClass::F4, edges: &[e(5,6),e(2,5),e(2,4),e(1,4),e(1,6),e(3,5),e(3,4),e(2,3)], dashed: &[] },
    CatalogEntry { number: 27, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,3),e(2,4),e(2,5),e(3,5),e(3,6),e(4,5)], dashed: &[M1, M12, M15] },
    CatalogEntry { number: 28, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,4),e(2,5),e(3,5),e(3,6),e(4,5)], dashed: &[M1, M12, M15] },
    CatalogEntry { number: 29, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,4),e(2,5),e(3,6),e(4,5)], dashed: &[M1, M12, M15] },
    CatalogEntry { number: 30, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,3),e(2,4),e(2,5),e(3,5),e(3,6)], dashed: &[M1, M15] },
    CatalogEntry { number: 31, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,4),e(2,5),e(3,5),e(3,6)], dashed: &[M1, M15] },
    CatalogEntry { number: 32, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(2,3),e(2,4),e(2,5),e(3,5),e(3,6)], dashed: &[M1] },
    CatalogEntry { number: 33, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(2,4),e(2,5),e(3,5),e(3,6)], dashed: &[M1] },
    CatalogEntry { number: 34, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,3),e(2,4),e(2,5),e(3,6)], dashed: &[M1, M15] },
    CatalogEntry { number: 35, class: GraphClass::B, edges: &[e(1,2),e(1,3),e(1,5),e(2,4),e(2,5),e(3,6)], dashed: &[M1, M15] },
    CatalogEntry { number: 36, class: GraphClass::A, edges: &[e(1,2),e(2,3),e(1,3),e(1,4),e(3,5),e(3,6)], dashed: &[M2] },
    CatalogEntry { number: 37, class: GraphClass::A, edges: &[e(1,2),e(2,3),e(1,4),e(3,5),e(3,6)], dashed: &[M2] },
    CatalogEntry { number: 38, class: GraphClass::C, edges: &[e(1,5),e(1,2),e(1,6),e(1,3),e(4,5),e(5,6),e(3,5),e(2,3),e(3,4)], dashed: &[M2, M4, M6] },
    CatalogEntry { number: 39, class: GraphClass::C, edges: &[e(1,5),e(1,2),e(1,6),e(4,5),e(5,6),e(3,5),e(2,3),e(3,4)], dashed: &[M2, M4, M6] },
    CatalogEntry { number: 40, class: GraphClass::C, edges: &[e(1,5),e(1,2),e(1,6),e(4,5),e(5,6),e(2,3),e(3,4)], dashed: &[M2, M4, M6] },
    CatalogEntry { number: 41, class: GraphClass::C, edges: &[e(1,2),e(1,6),e(4,5),e(5,6),e(2,3),e(3,4)], dashed: &[M2, M4, M6] },
];

pub fn entry(number: usize) -> &'static CatalogEntry {
    &CATALOG[number - 1]
}

pub fn graph(number: usize) -> GcdGraph {
    GcdGraph::from_edges(6, entry(number).edges)
}

/// Every fiber ideal of the graph, in enumeration order. Intended for the
/// interesting graphs 27..=41, whose fibers stay small.
pub fn fiber_ideals(number: usize) -> Result<Vec<SquareFreeIdeal>, Error> {
    let fiber = enumerate_fiber(&graph(number), 1 << 22)?;
    if fiber.truncated {
        return Err(Error::FaceBudgetExceeded(1 << 22));
    }
    Ok(fiber.ideals)
}

/// A fiber ideal containing every mask in `present` and none in `absent`:
/// the first minimal support of the fiber ideal avoiding `absent`, enlarged
/// by `present`. An ideal avoiding `absent` exists iff some minimal support
/// does.
pub fn find_fiber_ideal(
    number: usize,
    present: &[Mask],
    absent: &[Mask],
) -> Result<SquareFreeIdeal, Error> {
    let g = graph(number);
    let desc = crate::fiber::jg_minimal_generators(&g)?;
    for &m in present {
        if absent.contains(&m) || !desc.universe.contains(m) {
            return Err(Error::BadInput(format!(
                "requested variable {m:#b} unavailable for graph {number}"
            )));
        }
    }
    let support = desc
        .minimal_supports
        .iter()
        .find(|s| s.iter().all(|m| !absent.contains(m)))
        .ok_or_else(|| {
            Error::BadInput(format!("graph {number} has no ideal avoiding the given set"))
        })?;
    let mut masks = support.clone();
    for &m in present {
        if !masks.contains(&m) {
            masks.push(m);
        }
    }
    let ideal = SquareFreeIdeal::validate_types(6, &masks)?;
    debug_assert_eq!(GcdGraph::build(&ideal), g);
    Ok(ideal)
}

/// Canonical dashed-free representative of a graph's fiber.
pub fn representative(number: usize) -> Result<SquareFreeIdeal, Error> {
    find_fiber_ideal(number, &[], entry(number).dashed)
}

/// Representative with the listed dashed variables present and all other
/// dashed variables absent.
pub fn representative_with(number: usize, present: &[Mask]) -> Result<SquareFreeIdeal, Error> {
    let absent: Vec<Mask> = entry(number)
        .dashed
        .iter()
        .copied()
        .filter(|m| !present.contains(m))
        .collect();
    find_fiber_ideal(number, present, &absent)
}

/// The 17 dashed-present cases of the type-B analysis: (graph, present
/// variables). Graphs with the 1..5 transposition that moves the dashed
/// vertex only need the both-singletons case.
pub fn type_b_dashed_cases() -> Vec<(usize, Vec<Mask>)> {
    let m5: Mask = 0b010000;
    vec![
        (27, vec![M1]),
        (27, vec![M15]),
        (28, vec![M1]),
        (28, vec![M12]),
        (28, vec![M15]),
        (29, vec![M1]),
        (29, vec![M15]),
        (30, vec![M1, m5]),
        (30, vec![M15]),
        (31, vec![M1, m5]),
        (31, vec![M15]),
        (32, vec![M1, m5]),
        (33, vec![M1, m5]),
        (34, vec![M1]),
        (34, vec![M15]),
        (35, vec![M1]),
        (35, vec![M15]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        assert_eq!(CATALOG.len(), 41);
        for (k, ent) in CATALOG.iter().enumerate() {
            assert_eq!(ent.number, k + 1);
            let g = graph(ent.number);
            assert_eq!(g.components().len(), 1, "graph {} connected", ent.number);
            assert!(
                (1..=6).all(|v| g.degree(v) <= 4),
                "graph {} has no degree-5 vertex",
                ent.number
            );
            for &d in ent.dashed {
                // Dashed variables must be faces of the clique complex.
                assert!(g.is_clique(d), "graph {} dashed {d:#b}", ent.number);
            }
        }
    }

    #[test]
    fn class_counts_match_table() {
        use GraphClass::*;
        let count = |c: GraphClass| CATALOG.iter().filter(|e| e.class == c).count();
        assert_eq!(count(F1), 6);
        assert_eq!(count(F2), 2);
        assert_eq!(count(F3), 11);
        assert_eq!(count(F4), 7);
        assert_eq!(count(A), 2);
        assert_eq!(count(B), 9);
        assert_eq!(count(C), 4);
    }

    #[test]
    fn graph41_is_the_hexagon() {
        let g = graph(41);
        assert_eq!(g.edge_count(), 6);
        assert!((1..=6).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn representatives_avoid_dashed() {
        for number in [27, 33, 36, 38, 41] {
            let ideal = representative(number).unwrap();
            assert_eq!(GcdGraph::build(&ideal), graph(number));
            for &d in entry(number).dashed {
                assert!(!ideal.has_type(d));
            }
        }
    }

    #[test]
    fn dashed_present_cases_exist() {
        for (number, present) in type_b_dashed_cases() {
            let ideal = representative_with(number, &present).unwrap();
            assert_eq!(GcdGraph::build(&ideal), graph(number));
        }
    }
}
