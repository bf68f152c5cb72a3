//! Hilbert functions and polynomials, cohomology tables certified by depth,
//! and the ACM / MCM decision procedures.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::{GradedMap, Vector};
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::module::GradedModule;
use crate::monomial::Monomial;
use crate::resolution::{cokernel_hilbert, minimal_resolution_s, BettiTable, DEFAULT_MAX_STEPS};
use crate::ring::Ring;

/// Default probe window for tables and exactness checks.
pub const DEFAULT_WINDOW: (i32, i32) = (-2, 10);

/// Number of trailing fourth differences that must vanish before a
/// polynomial is extracted.
pub const STABLE_DIFFERENCES: usize = 5;

type Q = Ratio<i64>;

/// Values of a Hilbert function on a window `[lo, lo + len)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub lo: i32,
    pub values: Vec<u64>,
}

impl HilbertData {
    pub fn new(lo: i32, values: Vec<u64>) -> Self {
        HilbertData { lo, values }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.values.len() as i32 - 1
    }

    pub fn at(&self, n: i32) -> Option<u64> {
        if n < self.lo {
            return None;
        }
        self.values.get((n - self.lo) as usize).copied()
    }

    /// The degree ≤ 3 polynomial the function follows at the top of the window.
    pub fn polynomial(&self) -> Result<HilbertPolynomial> {
        let v: Vec<i64> = self.values.iter().map(|&x| x as i64).collect();
        let need = STABLE_DIFFERENCES + 4;
        if v.len() < need {
            return Err(Error::WindowTooShort { lo: self.lo, hi: self.hi() });
        }
        let top = &v[v.len() - need..];
        let fourth: Vec<i64> = (0..STABLE_DIFFERENCES)
            .map(|k| top[k + 4] - 4 * top[k + 3] + 6 * top[k + 2] - 4 * top[k + 1] + top[k])
            .collect();
        if fourth.iter().any(|&d| d != 0) {
            return Err(Error::WindowTooShort { lo: self.lo, hi: self.hi() });
        }
        let hi = self.hi();
        let pts: Vec<(i64, i64)> = (0..4).map(|k| ((hi - 3 + k) as i64, v[v.len() - 4 + k as usize])).collect();
        Ok(HilbertPolynomial::interpolate(&pts))
    }

    /// Smallest `s` in the window from which the values equal the polynomial.
    pub fn stabilization_degree(&self) -> Result<i32> {
        let p = self.polynomial()?;
        let mut s = self.hi();
        while s > self.lo && p.eval(s - 1) == Q::from_integer(self.at(s - 1).unwrap() as i64) {
            s -= 1;
        }
        Ok(s)
    }
}

/// `binomial(n + i, i)` as an integer.
pub fn shifted_binomial(n: i64, i: usize) -> i64 {
    let mut acc = Q::from_integer(1);
    for k in 1..=i as i64 {
        acc *= Q::new(n + k, k);
    }
    acc.to_integer()
}

/// A polynomial `P(n) = Σ c_i · binomial(n + i, i)`, `i = 0..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HilbertPolynomial {
    pub binomial: [i64; 4],
}

impl HilbertPolynomial {
    /// The cubic (or lower) through four points.
    pub fn interpolate(pts: &[(i64, i64)]) -> Self {
        assert_eq!(pts.len(), 4);
        let mut m: Vec<Vec<Q>> = pts
            .iter()
            .map(|&(n, v)| {
                let mut row: Vec<Q> = (0..4).map(|i| Q::from_integer(shifted_binomial(n, i))).collect();
                row.push(Q::from_integer(v));
                row
            })
            .collect();
        for c in 0..4 {
            let p = (c..4).find(|&r| m[r][c] != Q::from_integer(0)).expect("binomial basis is unisolvent");
            m.swap(c, p);
            let inv = Q::from_integer(1) / m[c][c];
            for x in m[c].iter_mut() {
                *x *= inv;
            }
            for r in 0..4 {
                if r != c && m[r][c] != Q::from_integer(0) {
                    let k = m[r][c];
                    let pivot = m[c].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot) {
                        *x -= k * y;
                    }
                }
            }
        }
        let mut binomial = [0i64; 4];
        for (i, b) in binomial.iter_mut().enumerate() {
            assert!(m[i][4].is_integer(), "Hilbert polynomials are integer valued");
            *b = m[i][4].to_integer();
        }
        HilbertPolynomial { binomial }
    }

    /// Coefficients of `1, n, n^2, n^3`.
    pub fn expanded(&self) -> [Q; 4] {
        let mut out = [Q::from_integer(0); 4];
        for (i, &c) in self.binomial.iter().enumerate() {
            // binomial(n + i, i) = Π_{k=1..i} (n + k) / k
            let mut poly = vec![Q::from_integer(1)];
            for k in 1..=i as i64 {
                let mut next = vec![Q::from_integer(0); poly.len() + 1];
                for (d, a) in poly.iter().enumerate() {
                    next[d + 1] += *a / k;
                    next[d] += *a;
                }
                poly = next;
            }
            for (d, a) in poly.into_iter().enumerate() {
                out[d] += a * c;
            }
        }
        out
    }

    pub fn eval(&self, n: i32) -> Q {
        Q::from_integer((0..4).map(|i| self.binomial[i] * shifted_binomial(n as i64, i)).sum())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        (0..4).rev().find(|&i| self.binomial[i] != 0)
    }

    /// Rank of a module over `R` from the leading coefficient (`P_Q` leads with `n^3/3`).
    pub fn rank_over_quadric(&self) -> Q {
        self.expanded()[3] * 3
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.expanded();
        let mut parts = Vec::new();
        for d in (0..4).rev() {
            let c = e[d];
            if c == Q::from_integer(0) {
                continue;
            }
            let mag = if c < Q::from_integer(0) { -c } else { c };
            let sign = if c < Q::from_integer(0) { "-" } else { "+" };
            let coef = if mag == Q::from_integer(1) && d > 0 { String::new() } else { mag.to_string() };
            let var = match d {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{d}"),
            };
            let sep = if !coef.is_empty() && !var.is_empty() { "*" } else { "" };
            parts.push((sign, format!("{coef}{sep}{var}")));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in parts.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

/// Window large enough for the Hilbert polynomial of `R/I` to show.
fn polynomial_window(ideal: &Ideal) -> (i32, i32) {
    let top = ideal.gens().iter().filter_map(|g| g.degree()).max().unwrap_or(0) as i32;
    (0, (2 * top + 10).max(12))
}

/// Hilbert polynomial of `ring / I`.
pub fn quotient_polynomial(ideal: &Ideal) -> Result<HilbertPolynomial> {
    let (lo, hi) = polynomial_window(ideal);
    GradedModule::cyclic(ideal).hilbert(lo, hi)?.polynomial()
}

/// Fails unless `ring / I` has a linear Hilbert polynomial.
pub(crate) fn require_curve(ideal: &Ideal) -> Result<HilbertPolynomial> {
    let p = quotient_polynomial(ideal)?;
    match p.degree() {
        Some(1) => Ok(p),
        d => Err(Error::WrongDimension { expected: 1, found: d.map(|d| d as i64).unwrap_or(-1) }),
    }
}

/// `(degree, arithmetic genus)` from `P(n) = d·n + 1 - g`.
pub fn degree_genus(ideal: &Ideal) -> Result<(i64, i64)> {
    let p = require_curve(ideal)?;
    let e = p.expanded();
    Ok((e[1].to_integer(), 1 - e[0].to_integer()))
}

/// Status of an `h^i` row in a cohomology table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Vanishing {
    Zero,
    /// Nonzero somewhere; dimensions are not computed.
    Nonzero,
    /// The depth certificate decides neither way.
    Undetermined,
}

impl Vanishing {
    pub fn cell(&self) -> &'static str {
        match self {
            Vanishing::Zero => "0",
            Vanishing::Nonzero => "nonzero",
            Vanishing::Undetermined => "?",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub lo: i32,
    pub hi: i32,
    pub h0: Vec<u64>,
    pub h1: Vanishing,
    pub h2: Vanishing,
    pub pd_s: usize,
    pub depth: usize,
}

impl CohomologyTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\th0\th1\th2\n");
        for (k, n) in (self.lo..=self.hi).enumerate() {
            out.push_str(&format!("{n}\t{}\t{}\t{}\n", self.h0[k], self.h1.cell(), self.h2.cell()));
        }
        out
    }
}

/// `h^0(E(n))` over the window and vanishing of `h^1_*`, `h^2_*` for a
/// module over `R`. With `depth = 5 - pd_S(E)`: `h^1_* = 0` iff depth ≥ 3,
/// `h^2_* = 0` iff depth ≥ 4.
pub fn cohomology_table(e: &GradedModule, lo: i32, hi: i32) -> Result<CohomologyTable> {
    if !e.ring().is_quotient() {
        return Err(Error::AmbientMismatch("cohomology tables are taken over the quadric ring".into()));
    }
    if e.is_zero() {
        return Err(Error::ZeroModule);
    }
    let pd_s = minimal_resolution_s(e, DEFAULT_MAX_STEPS)?.length();
    let depth = 5usize.saturating_sub(pd_s);
    if depth < 2 {
        return Err(Error::DepthTooLow { depth });
    }
    let h1 = if depth >= 3 { Vanishing::Zero } else { Vanishing::Nonzero };
    let h2 = match depth {
        4.. => Vanishing::Zero,
        3 => Vanishing::Nonzero,
        _ => Vanishing::Undetermined,
    };
    Ok(CohomologyTable { lo, hi, h0: e.hilbert_values(lo, hi)?, h1, h2, pd_s, depth })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcmCertificate {
    pub acm: bool,
    pub saturated: bool,
    pub pd_s: usize,
    pub betti: BettiTable,
}

/// A curve on `Q` is ACM iff its ideal is saturated and `S/(I + (q))` has
/// projective dimension 3.
pub fn acm_curve_check(ideal: &Ideal) -> Result<AcmCertificate> {
    require_curve(ideal)?;
    let sat = saturate_irrelevant(ideal)?;
    let saturated = ideal.contains_ideal(&sat)?;
    let m = GradedModule::cyclic(&ideal.preimage());
    let res = minimal_resolution_s(&m, DEFAULT_MAX_STEPS)?;
    let pd_s = res.length();
    Ok(AcmCertificate { acm: saturated && pd_s == 3, saturated, pd_s, betti: res.betti() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McmCertificate {
    pub mcm: bool,
    pub pd_s: usize,
    pub hilbert_degree: Option<usize>,
    pub betti: BettiTable,
}

/// Maximal Cohen–Macaulay over `R` iff `pd_S = 1` and the module has full
/// dimension (Hilbert polynomial of degree 3).
pub fn mcm_check(e: &GradedModule) -> Result<McmCertificate> {
    if e.is_zero() {
        return Err(Error::ZeroModule);
    }
    let res = minimal_resolution_s(e, DEFAULT_MAX_STEPS)?;
    let (lo, hi) = module_polynomial_window(e);
    let hilbert_degree = e.hilbert(lo, hi)?.polynomial()?.degree();
    let pd_s = res.length();
    Ok(McmCertificate { mcm: pd_s == 1 && hilbert_degree == Some(3), pd_s, hilbert_degree, betti: res.betti() })
}

pub(crate) fn module_polynomial_window(e: &GradedModule) -> (i32, i32) {
    let lo = e.generator_degrees().iter().copied().min().unwrap_or(0);
    let top = e.relation_degrees().iter().chain(e.generator_degrees()).copied().max().unwrap_or(0);
    (lo, (top + 12).max(lo + 12))
}

/// Castelnuovo–Mumford regularity from the minimal resolution over `S`.
pub fn regularity(m: &GradedModule) -> Result<i32> {
    minimal_resolution_s(m, DEFAULT_MAX_STEPS)?.regularity().ok_or(Error::ZeroModule)
}

/// True iff the degree-`n` elements generate `E_m` for every `m` in `[n, n + probe]`.
pub fn global_generation_check(e: &GradedModule, n: i32, probe: i32) -> Result<bool> {
    let pres = e.presentation();
    let f = e.ring().field();
    let target = pres.target().clone();
    let mut cols = pres.columns().to_vec();
    for (i, &a) in target.twists.iter().enumerate() {
        let d = n - a;
        if d < 0 {
            continue;
        }
        for m in Monomial::all_of_degree(d as u32) {
            let mut v = Vector::zero(f, target.rank());
            v.set(i, crate::poly::Polynomial::term(f, m, 1));
            cols.push(v);
        }
    }
    let map = GradedMap::from_columns(f, target, cols);
    let rest = cokernel_hilbert(e.ring(), &map, n, n + probe)?;
    Ok(rest.iter().all(|&x| x == 0))
}

/// Hilbert function of `R` itself.
pub fn ring_hilbert(ring: &Ring, lo: i32, hi: i32) -> HilbertData {
    HilbertData::new(lo, (lo..=hi).map(|n| crate::resolution::ring_dimension(ring, n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basis_of_quadric() {
        let r = Ring::canonical();
        let p = ring_hilbert(&r, 0, 12).polynomial().unwrap();
        // 2·C(n+3,3) - C(n+2,2)
        assert_eq!(p.binomial, [0, 0, -1, 2]);
        assert_eq!(p.expanded(), [Q::from_integer(1), Q::new(13, 6), Q::new(3, 2), Q::new(1, 3)]);
        assert_eq!(p.to_string(), "1/3*n^3 + 3/2*n^2 + 13/6*n + 1");
        assert_eq!(p.rank_over_quadric(), Q::from_integer(1));
    }

    #[test]
    fn short_window_rejected() {
        let d = HilbertData::new(0, vec![1, 2, 3]);
        assert!(matches!(d.polynomial(), Err(Error::WindowTooShort { .. })));
    }

    #[test]
    fn stabilization() {
        let r = Ring::canonical();
        let d = ring_hilbert(&r, -3, 10);
        assert_eq!(d.stabilization_degree().unwrap(), -2);
        let line = HilbertData::new(-2, vec![0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(line.stabilization_degree().unwrap(), -1);
    }

    #[test]
    fn line_degree_genus() {
        let l = Ideal::parse(Ring::canonical(), "x0, x2, x4").unwrap();
        assert_eq!(degree_genus(&l).unwrap(), (1, 0));
        let plane = Ideal::parse(Ring::canonical(), "x0").unwrap();
        assert!(matches!(degree_genus(&plane), Err(Error::WrongDimension { expected: 1, found: 2 })));
    }
}
