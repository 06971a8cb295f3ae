//! Shared brute-force oracles for integration tests. Everything here works
//! from first principles on expanded monomials and dense matrices, staying
//! independent of the bitmask fast paths it checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support_varieties::ideal::{Mask, SquareFreeIdeal};
use support_varieties::taylor::{EdgeKind, TaylorGraph};

/// A monomial as an explicit exponent table over named variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Monomial(pub BTreeMap<String, u32>);

impl Monomial {
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .all(|(v, e)| other.0.get(v).copied().unwrap_or(0) >= *e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            let cur = out.entry(v.clone()).or_insert(0);
            *cur = (*cur).max(*e);
        }
        Monomial(out)
    }

    pub fn gcd_is_unit(&self, other: &Monomial) -> bool {
        !self.0.keys().any(|v| other.0.contains_key(v))
    }
}

/// Expands the generators of a type-set ideal into explicit monomials, one
/// variable per stored type.
pub fn expand_generators(ideal: &SquareFreeIdeal) -> Vec<Monomial> {
    let n = ideal.n();
    (1..=n)
        .map(|i| {
            let mut m = BTreeMap::new();
            for t in ideal.types() {
                if t.mask >> (i - 1) & 1 == 1 {
                    m.insert(format!("x{:b}", t.mask), 1);
                }
            }
            Monomial(m)
        })
        .collect()
}

/// Dense textbook Gaussian elimination over F_p.
pub fn dense_rank(matrix: &[Vec<u64>], p: u64) -> u32 {
    let mut m: Vec<Vec<u64>> = matrix.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = mod_pow(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = p - m[r][c];
                let pivot_row = m[rank].clone();
                for (x, pv) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + f * pv) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank as u32
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Assembles the full 2^n x 2^n evaluated matrix from the definitions, using
/// expanded monomials for divisibility and neighborhoods, with no reference
/// to the Taylor-graph construction.
pub fn brute_matrix(ideal: &SquareFreeIdeal, a: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = ideal.n();
    let gens = expand_generators(ideal);
    let size = 1usize << n;
    let mut m = vec![vec![0u64; size]; size];
    let lcm_of = |sigma: usize| -> Monomial {
        let mut acc = Monomial::default();
        for (k, g) in gens.iter().enumerate() {
            if sigma >> k & 1 == 1 {
                acc = acc.lcm(g);
            }
        }
        acc
    };
    let neighbor = |sigma: usize, i: usize| -> bool {
        (0..n).any(|j| {
            sigma >> j & 1 == 1 && j != i && !gens[i].gcd_is_unit(&gens[j])
        })
    };
    for sigma in 0..size {
        for i in 0..n {
            if sigma >> i & 1 == 1 {
                continue;
            }
            let upper = sigma | 1 << i;
            let sign = if (sigma & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { p - 1 };
            // Differential edge: f_i divides lcm(sigma); column upper, row sigma.
            if gens[i].divides(&lcm_of(sigma)) {
                m[sigma][upper] = (m[sigma][upper] + sign) % p;
            }
            // Homotopy edge: i not adjacent to sigma; column sigma, row upper.
            if !neighbor(sigma, i) {
                m[upper][sigma] = (m[upper][sigma] + sign * (a[i] % p)) % p;
            }
        }
    }
    m
}

pub fn brute_rank(ideal: &SquareFreeIdeal, a: &[u64], p: u64) -> u32 {
    dense_rank(&brute_matrix(ideal, a, p), p)
}

pub fn brute_membership(ideal: &SquareFreeIdeal, a: &[u64], p: u64) -> bool {
    brute_rank(ideal, a, p) < 1 << (ideal.n() - 1)
}

/// Symbolic entries of the matched submatrix, rows indexed by matched
/// targets and columns by matched sources, as (coefficient, variable index
/// or 0) with index i meaning a factor chi_i.
pub fn matched_submatrix(
    t: &TaylorGraph,
    m: &support_varieties::matching::Matching,
) -> Vec<Vec<Vec<(i64, usize)>>> {
    let k = m.edges.len();
    let sources: Vec<Mask> = m.edges.iter().map(|e| e.source).collect();
    let targets: Vec<Mask> = m.edges.iter().map(|e| e.target).collect();
    let mut rows = vec![vec![Vec::new(); k]; k];
    for (col, &s) in sources.iter().enumerate() {
        for e in t.out_edges(s) {
            if let Some(row) = targets.iter().position(|&x| x == e.target) {
                let var = if e.kind == EdgeKind::Homotopy { e.index } else { 0 };
                rows[row][col].push((e.sign as i64, var));
            }
        }
    }
    rows
}

/// Leibniz expansion of the matched submatrix determinant, as an exponent
/// map. Only for 2^{n-1} <= 16.
pub fn brute_determinant(
    t: &TaylorGraph,
    m: &support_varieties::matching::Matching,
) -> BTreeMap<Vec<u16>, i64> {
    let k = m.edges.len();
    assert!(k <= 32, "oracle determinant stays at desk scale");
    let n = t.n();
    let entries = matched_submatrix(t, m);
    let mut det: BTreeMap<Vec<u16>, i64> = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        col: usize,
        k: usize,
        n: usize,
        entries: &Vec<Vec<Vec<(i64, usize)>>>,
        chosen: &mut Vec<usize>,
        coeff: i64,
        exps: Vec<u16>,
        det: &mut BTreeMap<Vec<u16>, i64>,
    ) {
        if col == k {
            let e = det.entry(exps).or_insert(0);
            *e += coeff;
            if *e == 0 {
                // keep map clean
            }
            return;
        }
        for row in 0..k {
            if chosen.contains(&row) || entries[row][col].is_empty() {
                continue;
            }
            let inversions = chosen.iter().filter(|&&r| r > row).count();
            let psign: i64 = if inversions % 2 == 0 { 1 } else { -1 };
            for &(c, var) in &entries[row][col] {
                let mut e2 = exps.clone();
                if var > 0 {
                    e2[var - 1] += 1;
                }
                chosen.push(row);
                rec(col + 1, k, n, entries, chosen, coeff * c * psign, e2, det);
                chosen.pop();
            }
        }
    }
    rec(0, k, n, &entries, &mut chosen, 1, vec![0u16; n], &mut det);
    det.retain(|_, &mut c| c != 0);
    det
}

/// Random valid ideal with up to `n` generators; singleton witnesses are
/// inserted wherever minimality would fail.
pub fn random_ideal(rng: &mut ChaCha8Rng, n: usize) -> SquareFreeIdeal {
    let full: Mask = (1 << n) - 1;
    loop {
        let count = rng.gen_range(1..=(n + 3));
        let mut types: Vec<Mask> = (0..count)
            .map(|_| rng.gen_range(1..=full))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let witnessed = types
                    .iter()
                    .any(|t| t >> i & 1 == 1 && t >> j & 1 == 0);
                if !witnessed {
                    types.push(1 << i);
                }
            }
        }
        if let Ok(ideal) = SquareFreeIdeal::validate_types(n, &types) {
            return ideal;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
