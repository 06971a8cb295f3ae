//! Variety expressions, point sampling, and the classification pipeline:
//! product decomposition over GCD components, detector certificates for lower
//! bounds, matching and determinant certificates for upper bounds, and
//! randomized rank corroboration at every configured prime.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::detect::{
    find_homotopy_sources_sinks, full_support_witnesses, verify_containment,
    ContainmentCertificate, FullSupportWitness, SourceOrSink,
};
use crate::error::Error;
use crate::families::cycle_matching;
use crate::gcd::GcdGraph;
use crate::ideal::{Mask, SquareFreeIdeal};
use crate::mask_string;
use crate::matching::{
    determinant_via_cycles, search_matching, triangularity, verify_matching, build_auxiliary,
    Matching, Triangularity, TriangularVia,
};
use crate::poly::{MPoly, SupportPolynomial};
use crate::rank::evaluate_rank;
use crate::taylor::{EdgeKind, EdgeRef, TaylorGraph};

/// Symbolic variety grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyExpr {
    Full,
    /// Vanishing locus of the listed coordinates.
    CoordinateSubspace(Mask),
    /// V(prod chi_i) over the mask.
    MonomialHypersurface(Mask),
    /// V(chi^odd + chi^even).
    AlternatingBinomial { odd: Mask, even: Mask },
    Union(Vec<VarietyExpr>),
    /// Product across a coordinate split; each factor is expressed in global
    /// coordinates and constrains only its own block.
    Product(Vec<(VarietyExpr, Mask)>),
}

impl VarietyExpr {
    pub fn contains_point(&self, a: &[u64], p: u64) -> bool {
        match self {
            VarietyExpr::Full => true,
            VarietyExpr::CoordinateSubspace(z) => {
                (0..a.len()).all(|i| z >> i & 1 == 0 || a[i] % p == 0)
            }
            VarietyExpr::MonomialHypersurface(s) => {
                (0..a.len()).any(|i| s >> i & 1 == 1 && a[i] % p == 0)
            }
            VarietyExpr::AlternatingBinomial { odd, even } => {
                let prod = |mask: Mask| {
                    (0..a.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .fold(1u64, |acc, i| acc * (a[i] % p) % p)
                };
                (prod(*odd) + prod(*even)) % p == 0
            }
            VarietyExpr::Union(parts) => parts.iter().any(|e| e.contains_point(a, p)),
            VarietyExpr::Product(factors) => {
                factors.iter().all(|(e, _)| e.contains_point(a, p))
            }
        }
    }

    /// Dimension from the grammar, in an ambient space of dimension `n`.
    pub fn dim(&self, n: usize) -> usize {
        match self {
            VarietyExpr::Full => n,
            VarietyExpr::CoordinateSubspace(z) => n - z.count_ones() as usize,
            VarietyExpr::MonomialHypersurface(_) => n - 1,
            VarietyExpr::AlternatingBinomial { .. } => n - 1,
            VarietyExpr::Union(parts) => {
                parts.iter().map(|e| e.dim(n)).max().unwrap_or(0)
            }
            VarietyExpr::Product(factors) => factors
                .iter()
                .map(|(e, coords)| {
                    let local = coords.count_ones() as usize;
                    e.dim(local)
                })
                .sum(),
        }
    }

    /// Zero-sets of the coordinate-subspace components, when the expression
    /// is a finite union of coordinate subspaces.
    pub fn subspace_components(&self) -> Option<Vec<Mask>> {
        match self {
            VarietyExpr::Full => Some(vec![0]),
            VarietyExpr::CoordinateSubspace(z) => Some(vec![*z]),
            VarietyExpr::MonomialHypersurface(s) => {
                Some((0..32).filter(|i| s >> i & 1 == 1).map(|i| 1 << i).collect())
            }
            VarietyExpr::AlternatingBinomial { .. } => None,
            VarietyExpr::Union(parts) => {
                let mut all = Vec::new();
                for part in parts {
                    all.extend(part.subspace_components()?);
                }
                Some(minimalize_components(all))
            }
            VarietyExpr::Product(factors) => {
                let mut acc: Vec<Mask> = vec![0];
                for (e, _) in factors {
                    let comps = e.subspace_components()?;
                    acc = acc
                        .iter()
                        .flat_map(|&z| comps.iter().map(move |&c| z | c))
                        .collect();
                }
                Some(minimalize_components(acc))
            }
        }
    }

    /// Applies a relabeling of generators (`perm[old]` = new 0-based index).
    pub fn permute(&self, perm: &[usize]) -> VarietyExpr {
        let pm = |m: Mask| permute_mask(m, perm);
        match self {
            VarietyExpr::Full => VarietyExpr::Full,
            VarietyExpr::CoordinateSubspace(z) => VarietyExpr::CoordinateSubspace(pm(*z)),
            VarietyExpr::MonomialHypersurface(s) => VarietyExpr::MonomialHypersurface(pm(*s)),
            VarietyExpr::AlternatingBinomial { odd, even } => {
                VarietyExpr::AlternatingBinomial { odd: pm(*odd), even: pm(*even) }
            }
            VarietyExpr::Union(parts) => {
                VarietyExpr::Union(parts.iter().map(|e| e.permute(perm)).collect())
            }
            VarietyExpr::Product(factors) => VarietyExpr::Product(
                factors.iter().map(|(e, c)| (e.permute(perm), pm(*c))).collect(),
            ),
        }
    }

    pub fn render(&self, n: usize) -> String {
        match self {
            VarietyExpr::Full => format!("A^{n}"),
            VarietyExpr::CoordinateSubspace(z) => {
                let vars: Vec<String> =
                    (0..n).filter(|i| z >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect();
                format!("V({})", vars.join(","))
            }
            VarietyExpr::MonomialHypersurface(s) => {
                let vars: Vec<String> =
                    (0..n).filter(|i| s >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect();
                format!("V({})", vars.join("*"))
            }
            VarietyExpr::AlternatingBinomial { odd, even } => {
                let prod = |mask: &Mask| {
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                };
                format!("V({}+{})", prod(odd), prod(even))
            }
            VarietyExpr::Union(parts) => parts
                .iter()
                .map(|e| e.render(n))
                .collect::<Vec<_>>()
                .join(" union "),
            VarietyExpr::Product(factors) => factors
                .iter()
                .map(|(e, _)| format!("({})", e.render(n)))
                .collect::<Vec<_>>()
                .join(" x "),
        }
    }

    /// Structured JSON rendering (unions as arrays, per the report schema).
    pub fn to_json(&self, n: usize) -> serde_json::Value {
        use serde_json::json;
        match self {
            VarietyExpr::Union(parts) => {
                json!({ "union": parts.iter().map(|e| e.to_json(n)).collect::<Vec<_>>() })
            }
            VarietyExpr::Product(factors) => json!({
                "product": factors
                    .iter()
                    .map(|(e, c)| json!({
                        "coords": mask_indices(*c),
                        "variety": e.to_json(n),
                    }))
                    .collect::<Vec<_>>()
            }),
            other => serde_json::Value::String(other.render(n)),
        }
    }
}

pub fn permute_mask(m: Mask, perm: &[usize]) -> Mask {
    let mut out = 0;
    for (old, &new) in perm.iter().enumerate() {
        if m >> old & 1 == 1 {
            out |= 1 << new;
        }
    }
    out
}

fn mask_indices(m: Mask) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Keeps the inclusion-minimal zero-sets (larger zero-sets are smaller
/// subspaces already covered).
pub fn minimalize_components(mut comps: Vec<Mask>) -> Vec<Mask> {
    comps.sort_unstable();
    comps.dedup();
    let keep: Vec<Mask> = comps
        .iter()
        .copied()
        .filter(|&z| !comps.iter().any(|&w| w != z && w & z == w))
        .collect();
    keep
}

/// Canonical expression for a union of coordinate subspaces.
pub fn components_to_expr(comps: &[Mask]) -> VarietyExpr {
    let comps = minimalize_components(comps.to_vec());
    if comps.iter().any(|&z| z == 0) {
        return VarietyExpr::Full;
    }
    if comps.len() == 1 {
        return VarietyExpr::CoordinateSubspace(comps[0]);
    }
    if comps.iter().all(|z| z.count_ones() == 1) {
        return VarietyExpr::MonomialHypersurface(comps.iter().fold(0, |a, &b| a | b));
    }
    VarietyExpr::Union(comps.into_iter().map(VarietyExpr::CoordinateSubspace).collect())
}

/// All inclusion-minimal transversals (hitting sets) of a family of nonempty
/// masks.
pub fn minimal_transversals(family: &[Mask]) -> Vec<Mask> {
    let mut out = Vec::new();
    fn rec(family: &[Mask], current: Mask, out: &mut Vec<Mask>) {
        match family.iter().find(|&&s| s & current == 0) {
            None => out.push(current),
            Some(&unhit) => {
                let mut rest = unhit;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    rec(family, current | bit, out);
                }
            }
        }
    }
    rec(family, 0, &mut out);
    minimalize_transversals(out)
}

fn minimalize_transversals(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_unstable();
    sets.dedup();
    sets.iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
        .collect()
}

/// Classification verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exact(VarietyExpr),
    Bounded { lower: Vec<VarietyExpr>, upper: Vec<VarietyExpr> },
    SampledOnly,
}

/// One recorded certificate, already mapped to global coordinates.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Containment {
        variant: String,
        vertex: String,
        indices: Vec<usize>,
    },
    FullWitness {
        lemma: String,
        detail: serde_json::Value,
    },
    TriangularMatching {
        sigma: Vec<usize>,
        indices: Vec<usize>,
        via: String,
    },
    Determinant {
        monomial: String,
        base: String,
        power: u32,
        radical_member: String,
    },
    BlockDeterminant {
        sources: Vec<String>,
        determinant: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeSample {
    pub prime: u64,
    pub on_tested: usize,
    pub on_members: usize,
    pub off_tested: usize,
    pub off_nonmembers: usize,
    pub origin_member: bool,
}

#[derive(Debug, Clone)]
pub struct VarietyReport {
    pub n: usize,
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub sampling: Vec<PrimeSample>,
    pub disagreements: usize,
    pub config: ClassifyConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub primes: Vec<u64>,
    pub samples_per_prime: usize,
    pub seed: u64,
    pub rank_cap_n: usize,
    pub cycle_cap: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            primes: vec![2, 3, 101, 32003],
            samples_per_prime: 200,
            seed: 42,
            rank_cap_n: crate::rank::RANK_CAP_N,
            cycle_cap: crate::matching::CYCLE_CAP,
        }
    }
}

impl ClassifyConfig {
    /// Lighter profile for sweeping whole fibers.
    pub fn light() -> Self {
        ClassifyConfig { samples_per_prime: 24, ..Default::default() }
    }
}

/// True iff the point lies in the support variety: the evaluated matrix has
/// rank strictly below `2^{n-1}`.
pub fn membership(
    ideal: &SquareFreeIdeal,
    a: &[u64],
    p: u64,
    cap_n: usize,
) -> Result<bool, Error> {
    let t = TaylorGraph::build(ideal)?;
    membership_with(&t, a, p, cap_n)
}

pub fn membership_with(t: &TaylorGraph, a: &[u64], p: u64, cap_n: usize) -> Result<bool, Error> {
    Ok(evaluate_rank(t, a, p, cap_n)? < (1u32 << (t.n() - 1)))
}

/// One factor per connected component of the GCD graph, with the global
/// coordinates (0-based) of each factor.
pub fn product_decompose(
    ideal: &SquareFreeIdeal,
) -> Result<Vec<(SquareFreeIdeal, Vec<usize>)>, Error> {
    let g = GcdGraph::build(ideal);
    g.components()
        .into_iter()
        .map(|comp| ideal.restrict(comp))
        .collect()
}

pub fn classify(ideal: &SquareFreeIdeal, config: &ClassifyConfig) -> Result<VarietyReport, Error> {
    classify_with_hints(ideal, config, &[])
}

/// Classify with extra candidate matchings (already in the ideal's own
/// labeling), e.g. the hand constructions for known families.
pub fn classify_with_hints(
    ideal: &SquareFreeIdeal,
    config: &ClassifyConfig,
    hints: &[(Mask, Matching)],
) -> Result<VarietyReport, Error> {
    let factors = product_decompose(ideal)?;
    let mut outcomes = Vec::new();
    for (factor, coords) in &factors {
        let local_hints: Vec<(Mask, Matching)> = if factors.len() == 1 {
            hints.to_vec()
        } else {
            Vec::new()
        };
        let outcome = classify_connected(factor, config, &local_hints)?;
        outcomes.push((outcome, coords.clone()));
    }
    let n = ideal.n();
    let mut certificates = Vec::new();
    let mut all_exact = true;
    let mut exact_factors: Vec<(VarietyExpr, Mask)> = Vec::new();
    let mut lower_factors: Vec<(VarietyExpr, Mask)> = Vec::new();
    let mut upper_factors: Vec<(VarietyExpr, Mask)> = Vec::new();
    for (outcome, coords) in &outcomes {
        let perm: Vec<usize> = coords.clone();
        let coord_mask: Mask = coords.iter().map(|&c| 1u32 << c).fold(0, |a, b| a | b);
        certificates.extend(outcome.certificates.iter().cloned());
        match &outcome.verdict {
            Verdict::Exact(e) => {
                let gl = e.permute(&perm);
                exact_factors.push((gl.clone(), coord_mask));
                lower_factors.push((gl.clone(), coord_mask));
                upper_factors.push((gl, coord_mask));
            }
            Verdict::Bounded { lower, upper } => {
                all_exact = false;
                let lo = if lower.is_empty() {
                    VarietyExpr::CoordinateSubspace(coord_mask_local(coords.len()))
                } else {
                    union_of(lower.clone())
                };
                lower_factors.push((lo.permute(&perm), coord_mask));
                let up = if upper.is_empty() {
                    VarietyExpr::Full
                } else {
                    intersect_placeholder(upper.clone())
                };
                upper_factors.push((up.permute(&perm), coord_mask));
            }
            Verdict::SampledOnly => {
                all_exact = false;
                lower_factors.push((
                    VarietyExpr::CoordinateSubspace(coord_mask_local(coords.len()))
                        .permute(&perm),
                    coord_mask,
                ));
                upper_factors.push((VarietyExpr::Full, coord_mask));
            }
        }
    }
    let verdict = if all_exact {
        Verdict::Exact(normalize_product(exact_factors))
    } else {
        Verdict::Bounded {
            lower: vec![normalize_product(lower_factors)],
            upper: vec![normalize_product(upper_factors)],
        }
    };
    // Sampling corroboration.
    let t = TaylorGraph::build(ideal)?;
    let (sampling, disagreements) = corroborate(&t, n, &verdict, config)?;
    Ok(VarietyReport {
        n,
        verdict,
        certificates,
        sampling,
        disagreements,
        config: config.clone(),
    })
}

fn coord_mask_local(len: usize) -> Mask {
    (1u32 << len) - 1
}

fn union_of(mut parts: Vec<VarietyExpr>) -> VarietyExpr {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        VarietyExpr::Union(parts)
    }
}

/// Upper bounds compose by intersection; we keep the list as a union-free
/// conservative envelope (the first entry) since nested intersections are
/// not part of the report grammar.
fn intersect_placeholder(mut parts: Vec<VarietyExpr>) -> VarietyExpr {
    parts.pop().unwrap()
}

fn normalize_product(mut factors: Vec<(VarietyExpr, Mask)>) -> VarietyExpr {
    if factors.len() == 1 {
        return factors.pop().unwrap().0;
    }
    // A product with subspace-union factors flattens to a union of
    // subspaces; keep the product form otherwise.
    let flat: Option<Vec<Mask>> = VarietyExpr::Product(factors.clone()).subspace_components();
    match flat {
        Some(comps) => components_to_expr(&comps),
        None => VarietyExpr::Product(factors),
    }
}

struct FactorOutcome {
    verdict: Verdict,
    certificates: Vec<Certificate>,
}

fn classify_connected(
    ideal: &SquareFreeIdeal,
    config: &ClassifyConfig,
    hints: &[(Mask, Matching)],
) -> Result<FactorOutcome, Error> {
    let n = ideal.n();
    let t = TaylorGraph::build(ideal)?;
    let g = GcdGraph::build(ideal);
    let mut certificates = Vec::new();

    // Full-support witnesses decide immediately.
    let witnesses = full_support_witnesses(&t, &g);
    if let Some(w) = witnesses.first() {
        certificates.push(witness_certificate(w, n));
        return Ok(FactorOutcome { verdict: Verdict::Exact(VarietyExpr::Full), certificates });
    }

    // Lower bounds from homotopy sources and sinks.
    let certs: Vec<ContainmentCertificate> = find_homotopy_sources_sinks(&t, &g)
        .into_iter()
        .filter(|c| verify_containment(&t, &g, c))
        .collect();
    if certs.iter().any(|c| c.indices == 0) {
        // An isolated vertex slipped past the witness scan.
        return Ok(FactorOutcome { verdict: Verdict::Exact(VarietyExpr::Full), certificates });
    }
    let mut lower_raw: Vec<Mask> = certs.iter().map(|c| c.indices).collect();

    // Source/sink-closed components add monomial block determinants as
    // containments (a zero determinant makes every point a member).
    for block in source_sink_blocks(&t, 16) {
        if block.determinant.is_zero() {
            certificates.push(Certificate::BlockDeterminant {
                sources: block.sources.iter().map(|&v| mask_string(v, n)).collect(),
                determinant: "0".into(),
            });
            return Ok(FactorOutcome {
                verdict: Verdict::Exact(VarietyExpr::Full),
                certificates,
            });
        }
        if block.determinant.terms.len() == 1 {
            let (exps, _) = block.determinant.terms.iter().next().unwrap();
            let supp: Vec<Mask> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| 1u32 << i)
                .collect();
            if !supp.is_empty() && supp.iter().any(|s| !lower_raw.contains(s)) {
                certificates.push(Certificate::BlockDeterminant {
                    sources: block.sources.iter().map(|&v| mask_string(v, n)).collect(),
                    determinant: block.determinant.to_string(),
                });
                lower_raw.extend(supp);
            }
        }
    }

    let lower_components = minimalize_components(lower_raw);
    for c in &certs {
        if lower_components.contains(&c.indices) {
            certificates.push(Certificate::Containment {
                variant: match c.kind {
                    SourceOrSink::Source => "source".into(),
                    SourceOrSink::Sink => "sink".into(),
                },
                vertex: mask_string(c.vertex, n),
                indices: mask_indices(c.indices),
            });
        }
    }

    // Cycle-shaped GCD graphs with n = 2 mod 4 get the binomial treatment.
    let mut hints: Vec<(Mask, Matching)> = hints.to_vec();
    if n % 4 == 2 && n >= 6 && is_cycle_graph(&g) {
        match cycle_case(ideal, &t, &g, config, &mut certificates)? {
            CycleOutcome::Verdict(v) => {
                return Ok(FactorOutcome { verdict: v, certificates })
            }
            CycleOutcome::Hints(mut extra) => hints.append(&mut extra),
            CycleOutcome::NotApplicable => {}
        }
    }

    // Broom-shaped graphs carry hand matchings for each leaf pair.
    if let Some(mut broom_hints) = broom_hints(ideal, &g) {
        hints.append(&mut broom_hints);
    }

    // Generic transversal certification.
    let mut certified: Vec<Mask> = Vec::new();
    for (sigma, m) in &hints {
        if verify_matching(&t, m).is_err() {
            continue;
        }
        if let Some((indices, cert)) = certify_with_matching(&t, *sigma, m, config)? {
            certified.push(indices);
            certificates.push(cert);
        }
    }
    let targets = minimal_transversals(&lower_components);
    let mut all_covered = true;
    for &sigma in &targets {
        if certified.iter().any(|&c| c & !sigma == 0) {
            continue;
        }
        let found = match search_matching(&t, sigma) {
            Some(m) => certify_with_matching(&t, sigma, &m, config)?,
            None => None,
        };
        match found {
            Some((indices, cert)) => {
                certified.push(indices);
                certificates.push(cert);
            }
            None => all_covered = false,
        }
    }
    let verdict = if all_covered && !targets.is_empty() {
        let upper_components = minimal_transversals(&certified);
        if upper_components == lower_components {
            Verdict::Exact(components_to_expr(&lower_components))
        } else {
            Verdict::Bounded {
                lower: vec![components_to_expr(&lower_components)],
                upper: certified
                    .iter()
                    .map(|&s| VarietyExpr::MonomialHypersurface(s))
                    .collect(),
            }
        }
    } else {
        Verdict::Bounded {
            lower: vec![components_to_expr(&lower_components)],
            upper: certified
                .iter()
                .map(|&s| VarietyExpr::MonomialHypersurface(s))
                .collect(),
        }
    };
    Ok(FactorOutcome { verdict, certificates })
}

fn witness_certificate(w: &FullSupportWitness, n: usize) -> Certificate {
    let (lemma, detail) = match w {
        FullSupportWitness::IsolatedVertex { vertex } => (
            "isolated_vertex",
            serde_json::json!({ "vertex": mask_string(*vertex, n) }),
        ),
        FullSupportWitness::SinksVsSources { sinks, neighbors } => (
            "sinks_vs_sources",
            serde_json::json!({
                "sinks": sinks.iter().map(|&v| mask_string(v, n)).collect::<Vec<_>>(),
                "neighbors": neighbors.iter().map(|&v| mask_string(v, n)).collect::<Vec<_>>(),
            }),
        ),
        FullSupportWitness::SourcesVsNeighbors { sources, neighbors } => (
            "sources_vs_neighbors",
            serde_json::json!({
                "sources": sources.iter().map(|&v| mask_string(v, n)).collect::<Vec<_>>(),
                "neighbors": neighbors.iter().map(|&v| mask_string(v, n)).collect::<Vec<_>>(),
            }),
        ),
        FullSupportWitness::OddAlternatingWalk { vertices, sinks } => (
            "odd_alternating_walk",
            serde_json::json!({
                "vertices": vertices.iter().map(|&v| mask_string(v, n)).collect::<Vec<_>>(),
                "direction": if *sinks { "sinks" } else { "sources" },
            }),
        ),
        FullSupportWitness::Degree3Isolated { sigma } => (
            "degree_three_set",
            serde_json::json!({ "sigma": mask_indices(*sigma) }),
        ),
        FullSupportWitness::EdgePairFamily { edges } => (
            "edge_family",
            serde_json::json!({ "edges": edges.iter().map(|&e| mask_indices(e)).collect::<Vec<_>>() }),
        ),
        FullSupportWitness::EdgesVsTriangles { edges, triangles } => (
            "edges_vs_triangles",
            serde_json::json!({
                "edges": edges.iter().map(|&e| mask_indices(e)).collect::<Vec<_>>(),
                "triangles": triangles.iter().map(|&e| mask_indices(e)).collect::<Vec<_>>(),
            }),
        ),
        FullSupportWitness::HighDegreeVertex { vertex } => (
            "high_degree_vertex",
            serde_json::json!({ "vertex": vertex }),
        ),
    };
    Certificate::FullWitness { lemma: lemma.into(), detail }
}

/// Certify a square-free monomial from one matching: triangularity first,
/// then a pure-monomial determinant with unit coefficient.
fn certify_with_matching(
    t: &TaylorGraph,
    sigma: Mask,
    m: &Matching,
    config: &ClassifyConfig,
) -> Result<Option<(Mask, Certificate)>, Error> {
    let aux = build_auxiliary(t, m)?;
    match triangularity(&aux, config.cycle_cap)? {
        Triangularity::Triangular(cert) => {
            let via = match cert.via {
                TriangularVia::AcyclicAuxiliary => "acyclic_auxiliary",
                TriangularVia::TwoDetermined(_) => "two_determined",
            };
            Ok(Some((
                cert.indices,
                Certificate::TriangularMatching {
                    sigma: mask_indices(sigma),
                    indices: mask_indices(cert.indices),
                    via: via.into(),
                },
            )))
        }
        Triangularity::CyclesFound { .. } => {
            let det = determinant_via_cycles(t, m, config.cycle_cap)?;
            let poly = det.to_poly(t.n());
            if poly.terms.len() == 1 {
                let (exps, &c) = poly.terms.iter().next().unwrap();
                if c.unsigned_abs() == 1 {
                    let mask: Mask = exps
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, _)| 1u32 << i)
                        .fold(0, |a, b| a | b);
                    return Ok(Some((
                        mask,
                        Certificate::Determinant {
                            monomial: poly.to_string(),
                            base: "1".into(),
                            power: 0,
                            radical_member: MPoly::square_free(t.n(), mask).to_string(),
                        },
                    )));
                }
            }
            Ok(None)
        }
    }
}

fn is_cycle_graph(g: &GcdGraph) -> bool {
    g.n() >= 3 && (1..=g.n()).all(|v| g.degree(v) == 2) && g.components().len() == 1
}

/// Traversal order of a cycle graph starting at vertex 1, toward its smaller
/// neighbor; returns 0-based generator indices in cycle position order.
fn cycle_traversal(g: &GcdGraph) -> Vec<usize> {
    let n = g.n();
    let mut order = vec![0usize];
    let first = g.adjacency(1).trailing_zeros() as usize;
    order.push(first);
    while order.len() < n {
        let last = *order.last().unwrap();
        let prev = order[order.len() - 2];
        let nbrs = g.adjacency(last + 1);
        let next = (0..n)
            .find(|&k| nbrs >> k & 1 == 1 && k != prev)
            .expect("cycle continues");
        order.push(next);
    }
    order
}

enum CycleOutcome {
    Verdict(Verdict),
    Hints(Vec<(Mask, Matching)>),
    NotApplicable,
}

/// A matching built in standard cycle coordinates, mapped into the ideal's
/// own labeling: `traversal[pos]` is the generator at cycle position pos.
fn map_matching(sigma: Mask, m: &Matching, traversal: &[usize]) -> (Mask, Matching) {
    // perm[std 0-based] = original 0-based index.
    let perm = traversal;
    let conv = |mask: Mask| -> Mask {
        let mut out = 0;
        for (std, &orig) in perm.iter().enumerate() {
            if mask >> std & 1 == 1 {
                out |= 1 << orig;
            }
        }
        out
    };
    let edges: Vec<EdgeRef> = m
        .edges
        .iter()
        .map(|e| {
            let lower = conv(e.lower_mask());
            let index = perm[e.index - 1] + 1;
            match e.kind {
                EdgeKind::Differential => EdgeRef::differential(lower, index),
                EdgeKind::Homotopy => EdgeRef::homotopy(lower, index),
            }
        })
        .collect();
    (conv(sigma), Matching::new(conv(sigma), edges))
}

fn cycle_case(
    ideal: &SquareFreeIdeal,
    t: &TaylorGraph,
    g: &GcdGraph,
    config: &ClassifyConfig,
    certificates: &mut Vec<Certificate>,
) -> Result<CycleOutcome, Error> {
    let n = ideal.n();
    let traversal = cycle_traversal(g);
    // Fiber ideals over a cycle consist of the edge variables plus a set of
    // singletons.
    let singles: Vec<usize> = ideal
        .type_masks()
        .filter(|m| m.count_ones() == 1)
        .map(|m| m.trailing_zeros() as usize)
        .collect();
    let mut pos_of = vec![0usize; n];
    for (pos, &orig) in traversal.iter().enumerate() {
        pos_of[orig] = pos;
    }
    let single_positions: Vec<usize> = singles.iter().map(|&s| pos_of[s]).collect();
    let odd_positions_present = single_positions.iter().any(|p| p % 2 == 0);
    let even_positions_present = single_positions.iter().any(|p| p % 2 == 1);
    // Position masks in original labels: odd cycle positions are traversal
    // indices 0, 2, 4, ...
    let odd_mask: Mask = traversal
        .iter()
        .enumerate()
        .filter(|(pos, _)| pos % 2 == 0)
        .map(|(_, &orig)| 1u32 << orig)
        .fold(0, |a, b| a | b);
    let even_mask = g.full_mask() & !odd_mask;
    if odd_positions_present && even_positions_present {
        // Mixed parity is full; the witness scan should have fired already.
        return Ok(CycleOutcome::NotApplicable);
    }
    let swap = even_positions_present;
    let (sigma_std, m_std) = cycle_matching(n, swap);
    let (sigma, m) = map_matching(sigma_std, &m_std, &traversal);
    if verify_matching(t, &m).is_err() {
        return Ok(CycleOutcome::NotApplicable);
    }
    if !singles.is_empty() {
        // Same-parity singletons: the matching is triangular and feeds the
        // generic hypersurface machinery.
        return Ok(CycleOutcome::Hints(vec![(sigma, m)]));
    }

    // Edge ideal: alternating binomial via a determinant pair plus a
    // source/sink block determinant.
    let binomial = VarietyExpr::AlternatingBinomial { odd: odd_mask, even: even_mask };
    let base_poly = MPoly::square_free(n, odd_mask).add(&MPoly::square_free(n, even_mask));
    let det1 = determinant_via_cycles(t, &m, config.cycle_cap)?;
    let rotated: Vec<usize> =
        (0..n).map(|pos| traversal[(pos + 1) % n]).collect();
    let (sigma_rot, m_rot) = map_matching(sigma_std, &m_std, &rotated);
    verify_matching(t, &m_rot).map_err(|_| Error::UnverifiedMatching)?;
    let _ = sigma_rot;
    let det2 = determinant_via_cycles(t, &m_rot, config.cycle_cap)?;
    let mut memberships: Vec<Mask> = Vec::new();
    for det in [&det1, &det2] {
        match det.to_support_polynomial(n) {
            SupportPolynomial::ScaledPower { sign, monomial, base, power } if power >= 1 => {
                if base != base_poly {
                    return Ok(CycleOutcome::NotApplicable);
                }
                let supp: Mask = monomial
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| 1u32 << i)
                    .fold(0, |a, b| a | b);
                memberships.push(supp);
                certificates.push(Certificate::Determinant {
                    monomial: MPoly::monomial(n, monomial.clone(), sign).to_string(),
                    base: base.to_string(),
                    power,
                    radical_member: MPoly::square_free(n, supp).mul(&base_poly).to_string(),
                });
            }
            _ => return Ok(CycleOutcome::NotApplicable),
        }
    }
    // chi^{s1} B and chi^{s2} B with s1, s2 in opposite parity classes give
    // chi^O B + chi^E B = B^2 in the support ideal, hence B itself.
    let upper_ok = (memberships[0] & !even_mask == 0 && memberships[1] & !odd_mask == 0)
        || (memberships[0] & !odd_mask == 0 && memberships[1] & !even_mask == 0);
    if !upper_ok {
        return Ok(CycleOutcome::NotApplicable);
    }
    // Lower bound: a connected component all of whose vertices are sources
    // or sinks, with block determinant equal to the binomial.
    let Some(sources) = binomial_block(t, &base_poly) else {
        return Ok(CycleOutcome::NotApplicable);
    };
    certificates.push(Certificate::BlockDeterminant {
        sources: sources.iter().map(|&v| mask_string(v, n)).collect(),
        determinant: base_poly.to_string(),
    });
    Ok(CycleOutcome::Verdict(Verdict::Exact(binomial)))
}

/// Searches the Taylor graph for a source/sink-closed component whose block
/// determinant equals the target binomial (up to sign). Returns the source
/// masks.
fn binomial_block(t: &TaylorGraph, target: &MPoly) -> Option<Vec<Mask>> {
    source_sink_blocks(t, 16)
        .into_iter()
        .find(|b| b.determinant == *target || b.determinant == target.neg())
        .map(|b| b.sources)
}

fn block_determinant(t: &TaylorGraph, sources: &[Mask], sinks: &[Mask]) -> MPoly {
    let n = t.n();
    let k = sources.len();
    // columns: per source, list of (sink row, weight poly term).
    let cols: Vec<Vec<(usize, (i64, Vec<u16>))>> = sources
        .iter()
        .map(|&s| {
            t.out_edges(s)
                .iter()
                .filter_map(|e| {
                    let row = sinks.iter().position(|&x| x == e.target)?;
                    let mut exps = vec![0u16; n];
                    if e.kind == EdgeKind::Homotopy {
                        exps[e.index - 1] = 1;
                    }
                    Some((row, (e.sign as i64, exps)))
                })
                .collect()
        })
        .collect();
    let mut det = MPoly::zero(n);
    // Leibniz expansion over the sparse columns; the permutation sign is the
    // inversion count of the chosen row sequence.
    fn rec_signed(
        col: usize,
        k: usize,
        cols: &[Vec<(usize, (i64, Vec<u16>))>],
        chosen: &mut Vec<usize>,
        sign: i64,
        exps: Vec<u16>,
        det: &mut MPoly,
    ) {
        if col == k {
            det.add_term(exps, sign);
            return;
        }
        for (row, (s, ex)) in &cols[col] {
            if chosen.contains(row) {
                continue;
            }
            let inversions = chosen.iter().filter(|&&r| r > *row).count();
            let psign = if inversions % 2 == 0 { 1 } else { -1 };
            let mut e2 = exps.clone();
            for (a, b) in e2.iter_mut().zip(ex) {
                *a += b;
            }
            chosen.push(*row);
            rec_signed(col + 1, k, cols, chosen, sign * s * psign, e2, det);
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    rec_signed(0, k, &cols, &mut chosen, 1, vec![0u16; n], &mut det);
    det
}

/// Hand matchings for broom-shaped graphs (a path of three vertices with
/// leaves on both outer ones, optionally a chord), when the middle singleton
/// variable is absent.
fn broom_hints(ideal: &SquareFreeIdeal, g: &GcdGraph) -> Option<Vec<(Mask, Matching)>> {
    let n = g.n();
    if n < 5 {
        return None;
    }
    for f2 in 1..=n {
        if g.degree(f2) != 2 {
            continue;
        }
        let nb = g.adjacency(f2);
        let x = nb.trailing_zeros() as usize + 1;
        let y = (31 - nb.leading_zeros()) as usize + 1;
        let mut g_leaves = Vec::new();
        let mut h_leaves = Vec::new();
        let mut ok = true;
        for v in 1..=n {
            if v == f2 || v == x || v == y {
                continue;
            }
            if g.degree(v) != 1 {
                ok = false;
                break;
            }
            if g.has_edge(v, x) {
                g_leaves.push(v);
            } else if g.has_edge(v, y) {
                h_leaves.push(v);
            } else {
                ok = false;
                break;
            }
        }
        if !ok || g_leaves.is_empty() || h_leaves.is_empty() {
            continue;
        }
        let whisker = g.has_edge(x, y);
        let expected_edges = 2 + g_leaves.len() + h_leaves.len() + usize::from(whisker);
        if g.edge_count() != expected_edges {
            continue;
        }
        if ideal.has_type(1 << (f2 - 1)) {
            // Middle singleton present: full, handled by witnesses.
            return None;
        }
        // Standard order: f1 = x, f2, f3 = y, then the leaves.
        let mut std_order = vec![x - 1, f2 - 1, y - 1];
        std_order.extend(g_leaves.iter().map(|&v| v - 1));
        std_order.extend(h_leaves.iter().map(|&v| v - 1));
        let (a, b) = (g_leaves.len(), h_leaves.len());
        let spec = crate::families::FamilySpec::DoubleBroom { a, b, with_f2: false };
        let spec = if whisker {
            crate::families::FamilySpec::WhiskeredTriangle { a, b, with_f2: false }
        } else {
            spec
        };
        let matchings = crate::families::family_matchings(&spec).ok()?;
        let mapped = matchings
            .iter()
            .map(|(sigma, m)| map_matching(*sigma, m, &std_order))
            .collect();
        return Some(mapped);
    }
    None
}

/// On-variety and off-variety rank agreement at each configured prime, plus
/// the origin check.
fn corroborate(
    t: &TaylorGraph,
    n: usize,
    verdict: &Verdict,
    config: &ClassifyConfig,
) -> Result<(Vec<PrimeSample>, usize), Error> {
    let (on_exprs, off_expr): (Vec<VarietyExpr>, Option<VarietyExpr>) = match verdict {
        Verdict::Exact(e) => (vec![e.clone()], Some(e.clone())),
        Verdict::Bounded { lower, upper } => {
            (lower.clone(), upper.first().cloned())
        }
        Verdict::SampledOnly => (vec![], None),
    };
    let mut out = Vec::new();
    let mut disagreements = 0usize;
    for &p in &config.primes {
        let origin = vec![0u64; n];
        let origin_member = membership_with(t, &origin, p, config.rank_cap_n)?;
        if !origin_member {
            disagreements += 1;
        }
        let count = config.samples_per_prime;
        let on_results: Vec<bool> = (0..count)
            .into_par_iter()
            .map(|k| {
                let mut rng = point_rng(config.seed, p, k as u64, 0);
                let Some(expr) = pick(&on_exprs, &mut rng) else {
                    return true;
                };
                match sample_on(expr, n, p, &mut rng) {
                    Some(a) => membership_with(t, &a, p, config.rank_cap_n).unwrap_or(false),
                    None => true, // unsampleable locus over this field
                }
            })
            .collect();
        let on_members = on_results.iter().filter(|&&b| b).count();
        let on_tested = if on_exprs.is_empty() { 0 } else { count };
        let (off_tested, off_nonmembers) = match (&off_expr, p > 3) {
            (Some(expr), true) if *expr != VarietyExpr::Full => {
                let results: Vec<bool> = (0..count)
                    .into_par_iter()
                    .map(|k| {
                        let mut rng = point_rng(config.seed, p, k as u64, 1);
                        match sample_off(expr, n, p, &mut rng) {
                            Some(a) => {
                                !membership_with(t, &a, p, config.rank_cap_n).unwrap_or(true)
                            }
                            None => true,
                        }
                    })
                    .collect();
                (count, results.iter().filter(|&&b| b).count())
            }
            _ => (0, 0),
        };
        disagreements += on_tested.saturating_sub(on_members);
        disagreements += off_tested.saturating_sub(off_nonmembers);
        out.push(PrimeSample {
            prime: p,
            on_tested,
            on_members,
            off_tested,
            off_nonmembers,
            origin_member,
        });
    }
    Ok((out, disagreements))
}

fn pick<'a>(exprs: &'a [VarietyExpr], rng: &mut ChaCha8Rng) -> Option<&'a VarietyExpr> {
    if exprs.is_empty() {
        None
    } else {
        Some(&exprs[rng.gen_range(0..exprs.len())])
    }
}

fn point_rng(seed: u64, p: u64, index: u64, stream: u64) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(p.wrapping_mul(0x85EB_CA6B))
        .wrapping_add(index.wrapping_mul(0xC2B2_AE35))
        .wrapping_add(stream);
    ChaCha8Rng::seed_from_u64(mix)
}

/// Uniform sample from a parameterization of the expression over F_p.
pub fn sample_on(expr: &VarietyExpr, n: usize, p: u64, rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
    let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    fill_on(expr, &mut a, p, rng).then_some(a)
}

fn fill_on(expr: &VarietyExpr, a: &mut [u64], p: u64, rng: &mut ChaCha8Rng) -> bool {
    match expr {
        VarietyExpr::Full => true,
        VarietyExpr::CoordinateSubspace(z) => {
            for i in 0..a.len() {
                if z >> i & 1 == 1 {
                    a[i] = 0;
                }
            }
            true
        }
        VarietyExpr::MonomialHypersurface(s) => {
            let idx: Vec<usize> = (0..a.len()).filter(|i| s >> i & 1 == 1).collect();
            if idx.is_empty() {
                return false;
            }
            a[idx[rng.gen_range(0..idx.len())]] = 0;
            true
        }
        VarietyExpr::AlternatingBinomial { odd, even } => {
            let evens: Vec<usize> = (0..a.len()).filter(|i| even >> i & 1 == 1).collect();
            if evens.is_empty() || p < 2 {
                return false;
            }
            let k = evens[rng.gen_range(0..evens.len())];
            let support = *odd | *even;
            for i in 0..a.len() {
                if support >> i & 1 == 1 && i != k {
                    a[i] = rng.gen_range(1..p);
                }
            }
            let prod = |mask: Mask, skip: usize| {
                (0..a.len())
                    .filter(|&i| mask >> i & 1 == 1 && i != skip)
                    .fold(1u64, |acc, i| acc * a[i] % p)
            };
            let num = prod(*odd, usize::MAX);
            let den = prod(*even, k);
            match mod_inv(den, p) {
                Some(inv) => {
                    a[k] = (p - num * inv % p) % p;
                    true
                }
                None => false,
            }
        }
        VarietyExpr::Union(parts) => {
            if parts.is_empty() {
                return false;
            }
            let pick = rng.gen_range(0..parts.len());
            fill_on(&parts[pick], a, p, rng)
        }
        VarietyExpr::Product(factors) => {
            factors.iter().all(|(e, _)| fill_on(e, a, p, rng))
        }
    }
}

fn mod_inv(x: u64, p: u64) -> Option<u64> {
    if x % p == 0 {
        return None;
    }
    let mut acc = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    Some(acc)
}

/// Rejection sampling off the expression.
pub fn sample_off(expr: &VarietyExpr, n: usize, p: u64, rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
    for _ in 0..4096 {
        let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        if !expr.contains_point(&a, p) {
            return Some(a);
        }
    }
    None
}

/// Public sampler with the spec's error contract.
pub fn sample_on_variety(
    expr: &VarietyExpr,
    n: usize,
    p: u64,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<u64>>, Error> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut rng = point_rng(seed, p, k as u64, 2);
        match sample_on(expr, n, p, &mut rng) {
            Some(a) => out.push(a),
            None => return Err(Error::UnsatisfiableOverField(p)),
        }
    }
    Ok(out)
}

impl VarietyReport {
    pub fn verdict_kind(&self) -> &'static str {
        match self.verdict {
            Verdict::Exact(_) => "exact",
            Verdict::Bounded { .. } => "bounded",
            Verdict::SampledOnly => "sampled_only",
        }
    }

    pub fn exact_expr(&self) -> Option<&VarietyExpr> {
        match &self.verdict {
            Verdict::Exact(e) => Some(e),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let n = self.n;
        let (variety, lower, upper) = match &self.verdict {
            Verdict::Exact(e) => (Some(e), None, None),
            Verdict::Bounded { lower, upper } => (None, Some(lower), Some(upper)),
            Verdict::SampledOnly => (None, None, None),
        };
        json!({
            "schema": 1,
            "n": n,
            "verdict": self.verdict_kind(),
            "variety": variety.map(|e| e.render(n)),
            "variety_expr": variety.map(|e| e.to_json(n)),
            "lower_bounds": lower.map(|l| l.iter().map(|e| e.render(n)).collect::<Vec<_>>()),
            "upper_bounds": upper.map(|u| u.iter().map(|e| e.render(n)).collect::<Vec<_>>()),
            "dim": variety.map(|e| e.dim(n)),
            "certificates": self.certificates,
            "primes": self.config.primes,
            "samples": self.sampling,
            "disagreements": self.disagreements,
            "seed": self.config.seed,
            "caps": { "rank_cap_n": self.config.rank_cap_n, "cycle_cap": self.config.cycle_cap },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: usize) -> SquareFreeIdeal {
        let types: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
        SquareFreeIdeal::validate_types(n, &types).unwrap()
    }

    fn light() -> ClassifyConfig {
        ClassifyConfig { samples_per_prime: 8, ..Default::default() }
    }

    #[test]
    fn minimal_transversals_basics() {
        assert_eq!(minimal_transversals(&[0b111]), vec![0b001, 0b010, 0b100]);
        assert_eq!(minimal_transversals(&[0b001, 0b010]), vec![0b011]);
        let mut t = minimal_transversals(&[0b011, 0b101]);
        t.sort_unstable();
        assert_eq!(t, vec![0b001, 0b110]);
    }

    #[test]
    fn components_expr_forms() {
        assert_eq!(components_to_expr(&[0]), VarietyExpr::Full);
        assert_eq!(
            components_to_expr(&[0b11]),
            VarietyExpr::CoordinateSubspace(0b11)
        );
        assert_eq!(
            components_to_expr(&[0b001, 0b100]),
            VarietyExpr::MonomialHypersurface(0b101)
        );
    }

    #[test]
    fn complete_intersection_is_origin() {
        let report = classify(&ci(3), &light()).unwrap();
        assert_eq!(
            report.exact_expr(),
            Some(&VarietyExpr::CoordinateSubspace(0b111))
        );
        assert_eq!(report.disagreements, 0);
    }

    #[test]
    fn running_p5_is_v_x1_x5() {
        let ideal = SquareFreeIdeal::validate_types(
            5,
            &[0b00001, 0b10000, 0b00011, 0b00110, 0b01100, 0b11000],
        )
        .unwrap();
        let report = classify(&ideal, &light()).unwrap();
        assert_eq!(
            report.exact_expr(),
            Some(&VarietyExpr::MonomialHypersurface(0b10001))
        );
        assert_eq!(report.disagreements, 0);
        assert_eq!(report.exact_expr().unwrap().render(5), "V(x1*x5)");
    }

    #[test]
    fn disconnected_product_of_cis() {
        // Two CI blocks: the joint variety is the origin of A^3.
        let ideal = SquareFreeIdeal::validate_types(3, &[0b001, 0b010, 0b100, 0b011]).unwrap();
        // {1,2} component from the pair type, {3} singleton component.
        let factors = product_decompose(&ideal).unwrap();
        assert_eq!(factors.len(), 2);
        let report = classify(&ideal, &light()).unwrap();
        match report.exact_expr() {
            Some(e) => assert!(e.subspace_components().is_some()),
            None => panic!("expected exact verdict"),
        }
    }

    #[test]
    fn sampler_respects_loci() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let expr = VarietyExpr::MonomialHypersurface(0b101000);
        for _ in 0..50 {
            let a = sample_on(&expr, 6, 101, &mut rng).unwrap();
            assert!(a[3] % 101 == 0 || a[5] % 101 == 0);
        }
        let ab = VarietyExpr::AlternatingBinomial { odd: 0b010101, even: 0b101010 };
        for _ in 0..50 {
            let a = sample_on(&ab, 6, 32003, &mut rng).unwrap();
            assert!(ab.contains_point(&a, 32003));
        }
    }

    #[test]
    fn dims_follow_grammar() {
        assert_eq!(VarietyExpr::Full.dim(6), 6);
        assert_eq!(VarietyExpr::CoordinateSubspace(0b111).dim(6), 3);
        assert_eq!(VarietyExpr::MonomialHypersurface(0b11).dim(6), 5);
        let u = VarietyExpr::Union(vec![
            VarietyExpr::CoordinateSubspace(0b1),
            VarietyExpr::CoordinateSubspace(0b110),
        ]);
        assert_eq!(u.dim(6), 5);
        let p = VarietyExpr::Product(vec![
            (VarietyExpr::CoordinateSubspace(0b1), 0b1),
            (VarietyExpr::Full, 0b110),
        ]);
        assert_eq!(p.dim(3), 2);
    }

    #[test]
    fn report_json_is_stable() {
        let report = classify(&ci(2), &light()).unwrap();
        let a = serde_json::to_string(&report.to_json()).unwrap();
        let report2 = classify(&ci(2), &light()).unwrap();
        let b = serde_json::to_string(&report2.to_json()).unwrap();
        assert_eq!(a, b);
    }
}

/// A connected Taylor component whose vertices are all sources or sinks,
/// with equally many of each. At any point where the square block from
/// sources to sinks drops rank, a kernel combination of the source columns is
/// a cycle that is no boundary, so the vanishing locus of the block
/// determinant is contained in the support variety.
pub struct SourceSinkBlock {
    pub sources: Vec<Mask>,
    pub sinks: Vec<Mask>,
    pub determinant: MPoly,
}

pub fn source_sink_blocks(t: &TaylorGraph, cap: usize) -> Vec<SourceSinkBlock> {
    let mut out = Vec::new();
    for comp in t.components() {
        let sources: Vec<Mask> = comp
            .iter()
            .copied()
            .filter(|&v| t.in_degree(v) == 0 && t.out_degree(v) > 0)
            .collect();
        let sinks: Vec<Mask> = comp
            .iter()
            .copied()
            .filter(|&v| t.out_degree(v) == 0 && t.in_degree(v) > 0)
            .collect();
        if sources.len() != sinks.len()
            || sources.len() + sinks.len() != comp.len()
            || sources.is_empty()
            || sources.len() > cap
        {
            continue;
        }
        let determinant = block_determinant(t, &sources, &sinks);
        out.push(SourceSinkBlock { sources, sinks, determinant });
    }
    out
}
