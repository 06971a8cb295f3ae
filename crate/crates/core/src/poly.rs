//! Small exact multivariate polynomials over the integers, used for symbolic
//! determinants of matched submatrices and for the support-polynomial grammar.

use std::collections::BTreeMap;
use std::fmt;

use crate::ideal::Mask;

/// Exponent vector, one entry per generator.
pub type Exps = Vec<u16>;

/// Sparse integer polynomial in `chi_1 .. chi_n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    pub n: usize,
    pub terms: BTreeMap<Exps, i64>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        let mut p = Self::zero(n);
        if c != 0 {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn monomial(n: usize, exps: Exps, c: i64) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Self::zero(n);
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// chi_i with 1-based index.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0u16; n];
        e[i - 1] = 1;
        Self::monomial(n, e, 1)
    }

    /// Product of chi_i over set bits of `mask`.
    pub fn square_free(n: usize, mask: Mask) -> Self {
        let mut e = vec![0u16; n];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                e[i] = 1;
            }
        }
        Self::monomial(n, e, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exps, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry += c;
        if *entry == 0 {
            let key = self
                .terms
                .iter()
                .find(|(_, &v)| v == 0)
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -*v;
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let exps: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(self.n, 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval_mod(&self, a: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = if c >= 0 {
                (c as u64) % p
            } else {
                (p - ((-c) as u64 % p)) % p
            };
            for (i, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    t = t * (a[i] % p) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Termwise minimum of exponents: the monomial content.
    pub fn content_exponents(&self) -> Exps {
        let mut min = vec![u16::MAX; self.n];
        for e in self.terms.keys() {
            for (m, &x) in min.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        if self.terms.is_empty() {
            min.fill(0);
        }
        min
    }

    /// Divides out the given monomial (must divide every term).
    pub fn divide_monomial(&self, exps: &Exps) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, &c) in &self.terms {
            let q: Exps = e
                .iter()
                .zip(exps)
                .map(|(a, b)| a.checked_sub(*b).expect("monomial divides"))
                .collect();
            out.add_term(q, c);
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut wrote = false;
            if mag != 1 || e.iter().all(|&x| x == 0) {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, &ex) in e.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if ex > 1 {
                    write!(f, "^{ex}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Determinant of a matched submatrix, in the grammar the classifier
/// understands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportPolynomial {
    /// `prod chi_i` over the mask: the triangular-matching certificate.
    SquareFreeMonomial(Mask),
    /// `sign * chi^monomial * base^power`.
    ScaledPower { sign: i64, monomial: Exps, base: MPoly, power: u32 },
    /// Anything else, expanded.
    GeneralSum(MPoly),
}

impl SupportPolynomial {
    pub fn to_poly(&self, n: usize) -> MPoly {
        match self {
            SupportPolynomial::SquareFreeMonomial(mask) => MPoly::square_free(n, *mask),
            SupportPolynomial::ScaledPower { sign, monomial, base, power } => {
                MPoly::monomial(n, monomial.clone(), *sign).mul(&base.pow(*power))
            }
            SupportPolynomial::GeneralSum(p) => p.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trip() {
        let n = 3;
        let x1 = MPoly::var(n, 1);
        let x2 = MPoly::var(n, 2);
        let p = x1.add(&x2).pow(2);
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.eval_mod(&[2, 3, 0], 101), 25);
        let q = p.add(&p.neg());
        assert!(q.is_zero());
    }

    #[test]
    fn content_and_division() {
        let n = 2;
        // x1^2 x2 + x1 x2^2 = x1 x2 (x1 + x2)
        let mut p = MPoly::zero(n);
        p.add_term(vec![2, 1], 1);
        p.add_term(vec![1, 2], 1);
        assert_eq!(p.content_exponents(), vec![1, 1]);
        let q = p.divide_monomial(&vec![1, 1]);
        assert_eq!(q, MPoly::var(n, 1).add(&MPoly::var(n, 2)));
    }

    #[test]
    fn display_is_readable() {
        let n = 6;
        let b = MPoly::square_free(n, 0b010101).add(&MPoly::square_free(n, 0b101010));
        assert_eq!(b.to_string(), "x1*x3*x5+x2*x4*x6");
    }
}
