//! Exact rank of evaluated Taylor matrices over prime fields.
//!
//! The matrix is assembled by substituting `chi_i = a_i`. Every edge joins
//! masks of opposite popcount parity, so after splitting into connected
//! components the rank is the sum of the ranks of two rectangular blocks per
//! component (even sources into odd targets and vice versa), each reduced
//! densely. Word-packed rows handle p = 2.

use crate::error::Error;
use crate::ideal::Mask;
use crate::taylor::{EdgeKind, TaylorGraph};

/// Default cap on `n` for dense elimination (`4096^2` matrices at worst).
pub const RANK_CAP_N: usize = 12;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A sparse evaluated matrix: entries `(row mask, col mask, value)` over F_p.
#[derive(Debug, Clone)]
pub struct EvaluatedMatrix {
    pub prime: u64,
    pub point: Vec<u64>,
    pub entries: Vec<(Mask, Mask, u64)>,
    pub n: usize,
}

impl EvaluatedMatrix {
    /// Substitutes `chi_i = a[i-1]` into the Taylor matrix. Zero entries
    /// (homotopy weights at vanishing coordinates) are dropped.
    pub fn evaluate(t: &TaylorGraph, a: &[u64], p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert_eq!(a.len(), t.n(), "point dimension must match generator count");
        let mut entries = Vec::new();
        for e in t.edges() {
            let base = if e.sign >= 0 { 1 } else { p - 1 };
            let value = match e.kind {
                EdgeKind::Differential => base,
                EdgeKind::Homotopy => base * (a[e.index - 1] % p) % p,
            };
            if value != 0 {
                entries.push((e.target, e.source, value));
            }
        }
        Ok(EvaluatedMatrix { prime: p, point: a.to_vec(), entries, n: t.n() })
    }

    /// True iff the matrix squares to zero.
    pub fn squares_to_zero(&self) -> bool {
        let size = 1usize << self.n;
        let p = self.prime;
        // Column-major access: entries of column c.
        let mut cols: Vec<Vec<(Mask, u64)>> = vec![Vec::new(); size];
        for &(r, c, v) in &self.entries {
            cols[c as usize].push((r, v));
        }
        let mut acc = vec![0u64; size];
        for c in 0..size {
            let mut touched = Vec::new();
            for &(mid, v1) in &cols[c] {
                for &(r, v2) in &cols[mid as usize] {
                    if acc[r as usize] == 0 {
                        touched.push(r);
                    }
                    acc[r as usize] = (acc[r as usize] + v1 * v2) % p;
                }
            }
            let ok = touched.iter().all(|&r| acc[r as usize] == 0);
            for &r in &touched {
                acc[r as usize] = 0;
            }
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn rank(&self) -> u32 {
        component_rank(&self.entries, self.prime)
    }
}

/// Exact rank of the evaluated Taylor matrix, with the structural cap on `n`.
pub fn evaluate_rank(t: &TaylorGraph, a: &[u64], p: u64, cap_n: usize) -> Result<u32, Error> {
    if t.n() > cap_n {
        return Err(Error::MatrixTooLarge { n: t.n(), cap: cap_n });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert_eq!(a.len(), t.n());
    let p_small = p;
    // Edge weights, dropping zeros; then union-find components over the
    // support, so each block stays as small as the ideal allows.
    let size = 1usize << t.n();
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut weighted: Vec<(Mask, Mask, u64)> = Vec::with_capacity(t.edges().len());
    for e in t.edges() {
        let base = if e.sign >= 0 { 1 } else { p_small - 1 };
        let value = match e.kind {
            EdgeKind::Differential => base,
            EdgeKind::Homotopy => base * (a[e.index - 1] % p_small) % p_small,
        };
        if value == 0 {
            continue;
        }
        weighted.push((e.target, e.source, value));
        let (ra, rb) = (find(&mut parent, e.target), find(&mut parent, e.source));
        if ra != rb {
            parent[ra as usize] = rb;
        }
    }
    // Group entries by component root.
    let mut order: Vec<u32> = (0..weighted.len() as u32).collect();
    let roots: Vec<u32> = weighted
        .iter()
        .map(|&(r, _, _)| find(&mut parent, r))
        .collect();
    order.sort_unstable_by_key(|&k| roots[k as usize]);
    let mut rank = 0u32;
    let mut start = 0usize;
    while start < order.len() {
        let root = roots[order[start] as usize];
        let mut end = start;
        while end < order.len() && roots[order[end] as usize] == root {
            end += 1;
        }
        let block: Vec<(Mask, Mask, u64)> =
            order[start..end].iter().map(|&k| weighted[k as usize]).collect();
        rank += component_rank(&block, p_small);
        start = end;
    }
    debug_assert!(rank as usize <= size / 2);
    Ok(rank)
}

/// Rank of one block of entries: splits columns by popcount parity and
/// reduces the two rectangular halves densely.
fn component_rank(entries: &[(Mask, Mask, u64)], p: u64) -> u32 {
    let mut rank = 0;
    for parity in 0..2u32 {
        let part: Vec<(Mask, Mask, u64)> = entries
            .iter()
            .copied()
            .filter(|&(_, c, _)| c.count_ones() % 2 == parity)
            .collect();
        if part.is_empty() {
            continue;
        }
        let mut rows: Vec<Mask> = part.iter().map(|&(r, _, _)| r).collect();
        let mut cols: Vec<Mask> = part.iter().map(|&(_, c, _)| c).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        rank += if p == 2 {
            rank_gf2(&part, &rows, &cols)
        } else {
            rank_modp(&part, &rows, &cols, p)
        };
    }
    rank
}

fn rank_modp(entries: &[(Mask, Mask, u64)], rows: &[Mask], cols: &[Mask], p: u64) -> u32 {
    let w = cols.len();
    let mut mat: Vec<Vec<u64>> = vec![vec![0; w]; rows.len()];
    for &(r, c, v) in entries {
        let ri = rows.binary_search(&r).unwrap();
        let ci = cols.binary_search(&c).unwrap();
        mat[ri][ci] = (mat[ri][ci] + v) % p;
    }
    let mut rank = 0usize;
    for col in 0..w {
        let Some(pivot) = (rank..mat.len()).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = mod_inverse(mat[rank][col], p);
        for x in mat[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (pivot_row, rest) = {
            let (a, b) = mat.split_at_mut(rank + 1);
            (&a[rank], b)
        };
        for row in rest.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + neg * pv) % p;
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank as u32
}

fn rank_gf2(entries: &[(Mask, Mask, u64)], rows: &[Mask], cols: &[Mask]) -> u32 {
    let words = cols.len().div_ceil(64);
    let mut mat: Vec<Vec<u64>> = vec![vec![0; words]; rows.len()];
    for &(r, c, v) in entries {
        if v % 2 == 0 {
            continue;
        }
        let ri = rows.binary_search(&r).unwrap();
        let ci = cols.binary_search(&c).unwrap();
        mat[ri][ci / 64] ^= 1u64 << (ci % 64);
    }
    let mut rank = 0usize;
    for col in 0..cols.len() {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..mat.len()).find(|&r| mat[r][w] >> b & 1 == 1) else {
            continue;
        };
        mat.swap(rank, pivot);
        let (pivot_row, rest) = {
            let (a, bb) = mat.split_at_mut(rank + 1);
            (a[rank].clone(), bb)
        };
        for row in rest.iter_mut() {
            if row[w] >> b & 1 == 1 {
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x ^= pv;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank as u32
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
