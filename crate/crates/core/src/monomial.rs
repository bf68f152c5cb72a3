//! Monomials in the five variables `x0..x4` and the term orders on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of variables of the ambient polynomial ring `S = k[x0,…,x4]`.
pub const NVARS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; NVARS],
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NVARS], deg: 0 };

    pub fn new(exps: [u16; NVARS]) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn var(i: usize) -> Self {
        let mut exps = [0; NVARS];
        exps[i] = 1;
        Monomial::new(exps)
    }

    pub fn exponents(&self) -> &[u16; NVARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += o;
        }
        Monomial { exps, deg: self.deg + other.deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= s;
        }
        Some(Monomial { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
        }
        Monomial::new(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of the given degree, in descending grevlex order.
    pub fn all_of_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = [0u16; NVARS];
        fn rec(i: usize, left: u16, exps: &mut [u16; NVARS], out: &mut Vec<Monomial>) {
            if i == NVARS - 1 {
                exps[i] = left;
                out.push(Monomial::new(*exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        rec(0, d as u16, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Number of monomials of degree `d` in five variables.
    pub fn count_of_degree(d: i64) -> u64 {
        if d < 0 {
            return 0;
        }
        let d = d as u64;
        (d + 1) * (d + 2) * (d + 3) * (d + 4) / 24
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..NVARS).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable is larger
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps.cmp(&b.exps)
}

/// Canonical storage order for polynomials is grevlex.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    #[default]
    Grevlex,
    Lex,
}

impl TermOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(a, b),
            TermOrder::Lex => lex(a, b),
        }
    }
}
