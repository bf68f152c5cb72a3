//! The two ambient rings: `S = k[x0,…,x4]` and `R = S/(q)` for a
//! nondegenerate quadric `q`.
//!
//! Nothing ever reduces modulo `q` natively. Every computation over `R` is
//! done in `S` after adjoining `q` (for ideals) or `q` times each basis vector
//! (for submodules of free modules).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::DenseMatrix;
use crate::monomial::{Monomial, NVARS};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;

pub const CANONICAL_QUADRIC: &str = "x0*x1+x2*x3+x4^2";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    quadric: Option<Polynomial>,
}

impl Ring {
    /// The polynomial ring `S`.
    pub fn polynomial(field: PrimeField) -> Self {
        Ring { field, quadric: None }
    }

    /// `R = S/(q)`; rejects anything that is not a nondegenerate quadratic form.
    pub fn quadric(q: Polynomial) -> Result<Self> {
        if q.degree() != Some(2) {
            return Err(Error::NotAQuadric);
        }
        let rank = gram_rank(&q);
        if rank < NVARS {
            return Err(Error::DegenerateQuadric(rank));
        }
        Ok(Ring { field: q.field(), quadric: Some(q.monic()) })
    }

    /// `R` for `q = x0*x1 + x2*x3 + x4^2` over `F_32003`.
    pub fn canonical() -> Self {
        Self::canonical_over(PrimeField::default())
    }

    pub fn canonical_over(field: PrimeField) -> Self {
        let q = parse_polynomial(CANONICAL_QUADRIC, field).expect("canonical quadric parses");
        Ring::quadric(q).expect("canonical quadric is nondegenerate")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn quadric_form(&self) -> Option<&Polynomial> {
        self.quadric.as_ref()
    }

    pub fn is_quotient(&self) -> bool {
        self.quadric.is_some()
    }

    /// The same field without the quadric.
    pub fn ambient_polynomial_ring(&self) -> Ring {
        Ring::polynomial(self.field)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, i)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, self.field)
    }

    /// Krull dimension: 5 for `S`, 4 for `R`.
    pub fn dimension(&self) -> usize {
        if self.is_quotient() {
            NVARS - 1
        } else {
            NVARS
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::AmbientMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.characteristic();
        match &self.quadric {
            None => write!(f, "F_{p}[x0..x4]"),
            Some(q) => write!(f, "F_{p}[x0..x4]/({q})"),
        }
    }
}

/// Rank of the symmetric Gram matrix of a quadratic form (odd characteristic).
pub fn gram_rank(q: &Polynomial) -> usize {
    let f = q.field();
    let half = f.inv(2);
    let mut g = DenseMatrix::zeros(f, NVARS, NVARS);
    for i in 0..NVARS {
        for j in i..NVARS {
            let m = Monomial::var(i).mul(&Monomial::var(j));
            let c = q.coefficient(&m);
            if i == j {
                g.set(i, i, c);
            } else {
                let h = f.mul(c, half);
                g.set(i, j, h);
                g.set(j, i, h);
            }
        }
    }
    g.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_is_nondegenerate() {
        let r = Ring::canonical();
        assert_eq!(gram_rank(r.quadric_form().unwrap()), 5);
        assert_eq!(r.dimension(), 4);
    }

    #[test]
    fn degenerate_rejected() {
        let f = PrimeField::default();
        let q = parse_polynomial("x0*x1+x2*x3", f).unwrap();
        assert_eq!(Ring::quadric(q), Err(Error::DegenerateQuadric(4)));
        let cubic = parse_polynomial("x0^3", f).unwrap();
        assert_eq!(Ring::quadric(cubic), Err(Error::NotAQuadric));
        let sum_of_squares = parse_polynomial("x0^2+x1^2+x2^2+x3^2+x4^2", f).unwrap();
        assert!(Ring::quadric(sum_of_squares).is_ok());
    }
}
