//! Enumeration of all square-free ideals realizing a given GCD graph.
//!
//! For a graph `G` the realizable variable sets are exactly the supports of
//! square-free monomials in an intersection of monomial primes, one triple of
//! primes per edge. We compute the minimal such supports by iterated pairwise
//! intersection and stream the fiber as the union of their up-sets inside the
//! clique complex.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::gcd::{CliqueComplex, GcdGraph, FACE_BUDGET};
use crate::ideal::{Mask, SquareFreeIdeal};

/// Supports are sets of clique-complex faces, stored as indicator bits over
/// the sorted face list. 128 faces is plenty for every graph we enumerate.
const MAX_FACES: usize = 128;

/// Minimal generators of the fiber ideal of a graph, plus the face universe.
#[derive(Debug, Clone)]
pub struct FiberDescription {
    /// Minimal supports, each a sorted list of face masks; pairwise
    /// incomparable under containment.
    pub minimal_supports: Vec<Vec<Mask>>,
    pub universe: CliqueComplex,
}

/// A materialized fiber enumeration.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub ideals: Vec<SquareFreeIdeal>,
    pub truncated: bool,
}

fn face_index(universe: &CliqueComplex, mask: Mask) -> usize {
    universe.faces.binary_search(&mask).expect("face in universe")
}

/// Computes the minimal supports of ideals realizing `g`: one support per
/// minimal generator of the intersection over edges `{i,j}` of the primes
/// generated by (faces containing both i and j), (faces with i but not j),
/// and (faces with j but not i).
pub fn jg_minimal_generators(g: &GcdGraph) -> Result<FiberDescription, Error> {
    let universe = CliqueComplex::build(g, FACE_BUDGET)?;
    if universe.faces.len() > MAX_FACES {
        return Err(Error::FaceBudgetExceeded(MAX_FACES));
    }
    let mut gens: Vec<u128> = vec![0];
    let intersect_prime = |gens: &mut Vec<u128>, vars: Vec<usize>| {
        let mut next: Vec<u128> = Vec::new();
        for &gsup in gens.iter() {
            if vars.iter().any(|&v| gsup >> v & 1 == 1) {
                // Already inside the prime; lcm with the best variable is
                // the generator itself.
                next.push(gsup);
            } else {
                for &v in &vars {
                    next.push(gsup | 1 << v);
                }
            }
        }
        *gens = minimalize(next);
    };
    for (i, j) in g.edges() {
        let bi = 1u32 << (i - 1);
        let bj = 1u32 << (j - 1);
        let group = |pred: &dyn Fn(Mask) -> bool| -> Vec<usize> {
            universe
                .faces
                .iter()
                .enumerate()
                .filter(|(_, &f)| pred(f))
                .map(|(k, _)| k)
                .collect()
        };
        intersect_prime(&mut gens, group(&|f| f & bi != 0 && f & bj != 0));
        intersect_prime(&mut gens, group(&|f| f & bi != 0 && f & bj == 0));
        intersect_prime(&mut gens, group(&|f| f & bj != 0 && f & bi == 0));
    }
    // Vertices see no prime at all in an edgeless direction, but every
    // realization still needs each singleton witnessed; isolated vertices
    // force their singleton variable.
    for v in 1..=g.n() {
        if g.adjacency(v) == 0 {
            let k = face_index(&universe, 1 << (v - 1));
            for gsup in gens.iter_mut() {
                *gsup |= 1 << k;
            }
            gens = minimalize(std::mem::take(&mut gens));
        }
    }
    let minimal_supports = gens
        .into_iter()
        .map(|sup| {
            (0..universe.faces.len())
                .filter(|&k| sup >> k & 1 == 1)
                .map(|k| universe.faces[k])
                .collect()
        })
        .collect();
    Ok(FiberDescription { minimal_supports, universe })
}

fn minimalize(mut gens: Vec<u128>) -> Vec<u128> {
    gens.sort_unstable_by_key(|g| g.count_ones());
    let mut out: Vec<u128> = Vec::new();
    for g in gens {
        if !out.iter().any(|&m| g & m == m) {
            out.push(g);
        }
    }
    out.sort_unstable();
    out
}

/// Streams every valid ideal whose GCD graph equals `g`, in ascending order
/// of the face-indicator integer, stopping at `cap` with a truncation flag.
pub fn enumerate_fiber(g: &GcdGraph, cap: usize) -> Result<Fiber, Error> {
    assert!(cap >= 1);
    let desc = jg_minimal_generators(g)?;
    let sets = fiber_support_sets(&desc, cap)?;
    let truncated = sets.len() > cap;
    let ideals = sets
        .into_iter()
        .take(cap)
        .map(|sup| {
            let masks: Vec<Mask> = (0..desc.universe.faces.len())
                .filter(|&k| sup >> k & 1 == 1)
                .map(|k| desc.universe.faces[k])
                .collect();
            SquareFreeIdeal::validate_types(g.n(), &masks)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Fiber { ideals, truncated })
}

/// Counts the fiber by inclusion-exclusion over the minimal supports, as an
/// independent check on the enumeration.
pub fn fiber_count_inclusion_exclusion(desc: &FiberDescription) -> u128 {
    let k = desc.minimal_supports.len();
    let nfaces = desc.universe.faces.len() as u32;
    let sups: Vec<u128> = desc
        .minimal_supports
        .iter()
        .map(|s| {
            s.iter()
                .map(|&m| 1u128 << face_index(&desc.universe, m))
                .fold(0, |a, b| a | b)
        })
        .collect();
    let mut total: i128 = 0;
    for choice in 1u32..(1 << k) {
        let mut union = 0u128;
        for (i, &s) in sups.iter().enumerate() {
            if choice >> i & 1 == 1 {
                union |= s;
            }
        }
        let term = 1i128 << (nfaces - union.count_ones());
        if choice.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u128
}

fn fiber_support_sets(desc: &FiberDescription, cap: usize) -> Result<BTreeSet<u128>, Error> {
    let nfaces = desc.universe.faces.len();
    let mut out: BTreeSet<u128> = BTreeSet::new();
    // Triangle-free fast path: a single minimal support needs no seen-set
    // bookkeeping beyond the shared BTreeSet used for ordering.
    for support in &desc.minimal_supports {
        let base: u128 = support
            .iter()
            .map(|&m| 1u128 << face_index(&desc.universe, m))
            .fold(0, |a, b| a | b);
        let free: Vec<usize> = (0..nfaces).filter(|&k| base >> k & 1 == 0).collect();
        if free.len() > 26 {
            return Err(Error::FaceBudgetExceeded(1 << 26));
        }
        for choice in 0u64..(1u64 << free.len()) {
            let mut x = base;
            for (b, &k) in free.iter().enumerate() {
                if choice >> b & 1 == 1 {
                    x |= 1 << k;
                }
            }
            out.insert(x);
            if out.len() > cap.saturating_add(1) {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcd::GcdGraph;

    fn support_names(desc: &FiberDescription) -> Vec<Vec<Mask>> {
        desc.minimal_supports.clone()
    }

    #[test]
    fn triangle_pendant_example_generators() {
        // Triangle on {1,2,3} plus edge {1,4}: four minimal supports.
        let g = GcdGraph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (1, 4)]);
        let desc = jg_minimal_generators(&g).unwrap();
        let mut sups = support_names(&desc);
        sups.iter_mut().for_each(|s| s.sort());
        sups.sort();
        let expect = |labels: &[Mask]| {
            let mut v = labels.to_vec();
            v.sort();
            v
        };
        // x4 x12 x13 x14 x23, x2 x3 x4 x14 x123,
        // x2 x4 x13 x14 x23 x123, x3 x4 x12 x14 x23 x123
        let mut expected = vec![
            expect(&[0b1000, 0b0011, 0b0101, 0b1001, 0b0110]),
            expect(&[0b0010, 0b0100, 0b1000, 0b1001, 0b0111]),
            expect(&[0b0010, 0b1000, 0b0101, 0b1001, 0b0110, 0b0111]),
            expect(&[0b0100, 0b1000, 0b0011, 0b1001, 0b0110, 0b0111]),
        ];
        expected.sort();
        assert_eq!(sups, expected);
    }

    #[test]
    fn triangle_free_is_principal() {
        let g = GcdGraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let desc = jg_minimal_generators(&g).unwrap();
        assert_eq!(desc.minimal_supports.len(), 1);
    }

    #[test]
    fn fiber_counts_for_cycles_and_paths() {
        let c6 = GcdGraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        let fiber = enumerate_fiber(&c6, 1 << 16).unwrap();
        assert_eq!(fiber.ideals.len(), 64);
        assert!(!fiber.truncated);

        let p5 = GcdGraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let fiber = enumerate_fiber(&p5, 1 << 16).unwrap();
        assert_eq!(fiber.ideals.len(), 8);
    }

    #[test]
    fn cap_truncates() {
        let c6 = GcdGraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        let fiber = enumerate_fiber(&c6, 10).unwrap();
        assert_eq!(fiber.ideals.len(), 10);
        assert!(fiber.truncated);
    }

    #[test]
    fn emitted_ideals_realize_the_graph() {
        let g = GcdGraph::from_edges(5, &[(1, 2), (1, 3), (2, 3), (1, 4), (3, 5)]);
        let fiber = enumerate_fiber(&g, 1 << 20).unwrap();
        assert!(!fiber.truncated);
        for ideal in &fiber.ideals {
            assert_eq!(GcdGraph::build(ideal), g);
        }
        let desc = jg_minimal_generators(&g).unwrap();
        assert_eq!(
            fiber.ideals.len() as u128,
            fiber_count_inclusion_exclusion(&desc)
        );
    }

    #[test]
    fn exhaustive_oracle_on_four_vertices() {
        // Brute force all subsets of the clique complex and compare with
        // enumerate_fiber for every connected graph on 4 vertices.
        let all_edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        for choice in 0u32..(1 << 6) {
            let edges: Vec<(usize, usize)> = all_edges
                .iter()
                .enumerate()
                .filter(|(k, _)| choice >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = GcdGraph::from_edges(4, &edges);
            if g.components().len() != 1 {
                continue;
            }
            let k = CliqueComplex::build(&g, FACE_BUDGET).unwrap();
            let mut expected = 0u64;
            for sub in 1u64..(1 << k.faces.len()) {
                let masks: Vec<Mask> = k
                    .faces
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| sub >> b & 1 == 1)
                    .map(|(_, &f)| f)
                    .collect();
                if let Ok(ideal) = SquareFreeIdeal::validate_types(4, &masks) {
                    if GcdGraph::build(&ideal) == g {
                        expected += 1;
                    }
                }
            }
            let fiber = enumerate_fiber(&g, 1 << 20).unwrap();
            assert_eq!(fiber.ideals.len() as u64, expected, "graph {choice:#b}");
        }
    }

    #[test]
    fn triangle_free_count_formula() {
        // 2^(n - leaves) for triangle-free graphs.
        let star = GcdGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]);
        let fiber = enumerate_fiber(&star, 1 << 16).unwrap();
        assert_eq!(fiber.ideals.len(), 2); // n=4, 3 leaves
    }
}
