//! Sparse polynomials in `S = F_p[x0,…,x4]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::PrimeField;
use crate::monomial::{Monomial, NVARS};

/// Terms are kept sorted in strictly descending grevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    terms: Vec<(Monomial, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Polynomial {
    pub fn zero(field: PrimeField) -> Self {
        Polynomial { field, terms: Vec::new() }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::term(field, Monomial::ONE, field.from_i64(c))
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn var(field: PrimeField, i: usize) -> Self {
        assert!(i < NVARS);
        Self::term(field, Monomial::var(i), 1)
    }

    pub fn term(field: PrimeField, m: Monomial, c: u32) -> Self {
        let c = c % field.characteristic();
        if c == 0 {
            Self::zero(field)
        } else {
            Polynomial { field, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut v: Vec<(Monomial, u32)> = terms.into_iter().collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c % field.characteristic())),
            }
            if let Some((_, 0)) = out.last() {
                out.pop();
            }
        }
        Polynomial { field, terms: out }
    }

    pub(crate) fn from_sorted_terms(field: PrimeField, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial { field, terms }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some((first, _)) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        let d = first.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneity(), Homogeneity::Inhomogeneous)
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    /// Total degree (maximum over terms); `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Leading term in grevlex.
    pub fn leading(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    /// Constant coefficient.
    pub fn constant_coefficient(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.degree() == 0 => *c,
            _ => 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(f);
        }
        Polynomial { field: f, terms: self.terms.iter().map(|(m, a)| (*m, f.mul(*a, c))).collect() }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(f);
        }
        // multiplication by a monomial preserves every monomial order
        Polynomial { field: f, terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Polynomial, c: u32) -> Polynomial {
        assert_eq!(self.field, other.field, "field mismatch in polynomial arithmetic");
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { field: f, terms: out }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point of `F_p^5`.
    pub fn evaluate(&self, point: &[u32; NVARS]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point.iter())
                .fold(*c, |v, (&e, &x)| f.mul(v, f.pow(x, e as u64)));
            f.add(acc, v)
        })
    }

    /// Makes the leading coefficient 1 (no-op on zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(self.field.inv(c)),
            None => self.clone(),
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_scaled(rhs, 1)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_scaled(rhs, self.field.neg(1))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.field.neg(1))
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "field mismatch in polynomial arithmetic");
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f);
        }
        let mut acc = std::collections::BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = acc.entry(std::cmp::Reverse(ma.mul(mb))).or_insert(0u32);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m.0, c)).collect();
        Polynomial::from_sorted_terms(f, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = self.field.to_symmetric(*c);
            let (neg, abs) = (s < 0, s.unsigned_abs());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(PrimeField::default(), i)
    }

    #[test]
    fn square_of_sum() {
        let s = &x(0) + &x(1);
        let sq = &s * &s;
        let f = PrimeField::default();
        let expected = Polynomial::from_terms(
            f,
            [
                (Monomial::new([2, 0, 0, 0, 0]), 1),
                (Monomial::new([1, 1, 0, 0, 0]), 2),
                (Monomial::new([0, 2, 0, 0, 0]), 1),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn cancellation_and_display() {
        let z = &x(0) - &x(0);
        assert!(z.is_zero());
        assert_eq!(z.homogeneity(), Homogeneity::Zero);
        let q = &(&(&x(0) * &x(1)) + &(&x(2) * &x(3))) + &(&x(4) * &x(4));
        assert_eq!(q.to_string(), "x0*x1+x2*x3+x4^2");
        assert_eq!((-&q).to_string(), "-x0*x1-x2*x3-x4^2");
        let mixed = &(&x(0) * &x(0)) + &x(1);
        assert_eq!(mixed.homogeneity(), Homogeneity::Inhomogeneous);
    }

    #[test]
    fn from_terms_merges_duplicates() {
        let f = PrimeField::default();
        let m = Monomial::var(2);
        let p = Polynomial::from_terms(f, [(m, 5), (Monomial::ONE, 3), (m, f.neg(5))]);
        assert_eq!(p, Polynomial::constant(f, 3));
    }
}
