//! The rank-2 module `E₀` of a line on `Q`, matrix factorizations of `q`,
//! periodicity of syzygies, first Chern class, and the splitting of MCM
//! modules into twists of `E₀` and free summands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::free::{FreeModule, GradedMap, Vector};
use crate::groebner::{lift, Ideal};
use crate::hilbert::{mcm_check, module_polynomial_window};
use crate::module::GradedModule;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::resolution::{minimal_presentation, ring_dimension, syzygy, EtypeResolution};
use crate::ring::Ring;

/// The default line `V(x0, x2, x4)` on the canonical quadric.
pub const CANONICAL_LINE: &str = "x0, x2, x4";

/// `E₀ = ker(R(-1)^3 → I_L)` for a line `L ⊂ Q` given by three linear forms.
pub fn construct_e0(ring: &Ring, line: &Ideal) -> Result<GradedModule> {
    let q = ring
        .quadric_form()
        .ok_or_else(|| Error::AmbientMismatch("E0 lives over the quadric ring".into()))?;
    ring.check_same(line.ring())?;
    let gens = line.minimalize();
    if gens.gens().len() != 3 || gens.gens().iter().any(|g| g.degree() != Some(1)) {
        return Err(Error::Input(format!("{line} is not generated by three independent linear forms")));
    }
    let s_line = Ideal::new(ring.ambient_polynomial_ring(), gens.gens().to_vec())?;
    if !s_line.contains(q)? {
        return Err(Error::LineNotOnQuadric(line.to_string()));
    }
    let f = ring.field();
    let cols = gens.gens().iter().map(|g| Vector::new(vec![g.clone()])).collect();
    let alpha = GradedMap::from_columns(f, FreeModule::new(vec![0]), cols);
    let ker = syzygy(ring, &alpha)?;
    GradedModule::submodule(ring.clone(), alpha.source().clone(), ker.columns().to_vec())
}

/// `E₀` for the canonical quadric and line.
pub fn construct_e0_canonical() -> GradedModule {
    let r = Ring::canonical();
    let l = Ideal::parse(r.clone(), CANONICAL_LINE).expect("canonical line parses");
    construct_e0(&r, &l).expect("canonical line lies on the canonical quadric")
}

/// `HF(E₀)(n) = 3·dim R_{n-1} - dim (I_L)_n`, in closed form.
pub fn e0_hilbert_value(ring: &Ring, n: i32) -> u64 {
    let il = if n >= 0 { ring_dimension(ring, n) - (n as u64 + 1) } else { 0 };
    3 * ring_dimension(ring, n - 1) - il
}

/// A pair of square matrices over `S` with `A·B = B·A = q·Id`.
#[derive(Debug, Clone)]
pub struct MatrixFactorization {
    pub q: Polynomial,
    /// `A : F_1 → F_0`, the minimal presentation over `S`.
    pub a: GradedMap,
    /// `B : F_0(-2) → F_1`.
    pub b: GradedMap,
    /// All of the module is free (the factorization is then empty).
    pub free: bool,
    /// Rank of the constant part of `B`: the number of trivial `(q, 1)` blocks.
    pub free_rank: usize,
}

fn product(a: &GradedMap, b: &GradedMap) -> Vec<Vec<Polynomial>> {
    let f = a.field();
    (0..a.num_rows())
        .map(|i| {
            (0..b.num_cols())
                .map(|j| {
                    (0..a.num_cols()).fold(Polynomial::zero(f), |acc, k| &acc + &(a.entry(i, k) * b.entry(k, j)))
                })
                .collect()
        })
        .collect()
}

fn is_scalar(m: &[Vec<Polynomial>], q: &Polynomial) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, p)| if i == j { p == q } else { p.is_zero() })
    })
}

fn constant_rank(m: &GradedMap) -> usize {
    let f = m.field();
    let mut d = crate::linalg::DenseMatrix::zeros(f, m.num_rows(), m.num_cols());
    for j in 0..m.num_cols() {
        for i in 0..m.num_rows() {
            let p = m.entry(i, j);
            if p.is_constant() {
                d.set(i, j, p.constant_coefficient());
            }
        }
    }
    d.rank()
}

impl MatrixFactorization {
    pub fn size(&self) -> usize {
        self.a.num_rows()
    }

    /// `A·B = q·Id` and `B·A = q·Id`, entry by entry.
    pub fn verify(&self) -> bool {
        if self.a.num_rows() != self.a.num_cols() || self.b.num_rows() != self.b.num_cols() {
            return false;
        }
        if self.a.num_rows() != self.b.num_rows() {
            return false;
        }
        is_scalar(&product(&self.a, &self.b), &self.q) && is_scalar(&product(&self.b, &self.a), &self.q)
    }

    pub fn direct_sum(&self, other: &MatrixFactorization) -> MatrixFactorization {
        MatrixFactorization {
            q: self.q.clone(),
            a: self.a.direct_sum(&other.a),
            b: self.b.direct_sum(&other.b),
            free: self.free && other.free,
            free_rank: self.free_rank + other.free_rank,
        }
    }

    pub fn to_json(&self) -> MfJson {
        MfJson {
            characteristic: self.q.field().characteristic(),
            q: self.q.to_string(),
            free: self.free,
            free_rank: self.free_rank,
            a: MatrixJson::from_map(&self.a),
            b: MatrixJson::from_map(&self.b),
        }
    }

    pub fn from_json(j: &MfJson) -> Result<Self> {
        let f = PrimeField::new(j.characteristic as u64)?;
        let mf = MatrixFactorization {
            q: parse_polynomial(&j.q, f)?,
            a: j.a.to_map(f)?,
            b: j.b.to_map(f)?,
            free: j.free,
            free_rank: j.free_rank,
        };
        if !mf.verify() {
            return Err(Error::Input("matrices do not factor q".into()));
        }
        Ok(mf)
    }
}

/// Wire form of a graded matrix: twists plus entries in the parser grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub source: Vec<i32>,
    pub target: Vec<i32>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_map(m: &GradedMap) -> Self {
        MatrixJson {
            source: m.source().twists.clone(),
            target: m.target().twists.clone(),
            rows: m.rows().iter().map(|r| r.components().iter().map(|p| p.to_string()).collect()).collect(),
        }
    }

    pub fn to_map(&self, f: PrimeField) -> Result<GradedMap> {
        if self.rows.len() != self.target.len() || self.rows.iter().any(|r| r.len() != self.source.len()) {
            return Err(Error::Input("matrix shape does not match its twists".into()));
        }
        let mut cols = Vec::with_capacity(self.source.len());
        for j in 0..self.source.len() {
            let comps = self.rows.iter().map(|r| parse_polynomial(&r[j], f)).collect::<Result<Vec<_>>>()?;
            cols.push(Vector::new(comps));
        }
        GradedMap::new(f, FreeModule::new(self.source.clone()), FreeModule::new(self.target.clone()), cols)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfJson {
    pub characteristic: u32,
    pub q: String,
    pub free: bool,
    pub free_rank: usize,
    pub a: MatrixJson,
    pub b: MatrixJson,
}

/// The matrix factorization of an MCM module: `A` is its minimal
/// presentation over `S`, `B` solves `A·B = q·Id` column by column.
pub fn extract_mf(e: &GradedModule) -> Result<MatrixFactorization> {
    let ring = e.ring();
    let q = ring.quadric_form().ok_or(Error::MissingContext)?.clone();
    if !mcm_check(e)?.mcm {
        return Err(Error::NotMcm("the module is not maximal Cohen-Macaulay".into()));
    }
    let s = ring.ambient_polynomial_ring();
    let f = ring.field();
    let a = minimal_presentation(&s, &e.s_presentation());
    if a.num_rows() != a.num_cols() {
        return Err(Error::Invariant(format!("presentation over S is {}x{}", a.num_rows(), a.num_cols())));
    }
    let f0 = a.target().clone();
    let mut cols = Vec::with_capacity(f0.rank());
    for i in 0..f0.rank() {
        let mut qe = Vector::zero(f, f0.rank());
        qe.set(i, q.clone());
        let c = lift(f, &f0, a.columns(), &qe)?
            .ok_or_else(|| Error::Invariant("q·e_i is not in the image of the presentation".into()))?;
        cols.push(Vector::new(c));
    }
    let b = GradedMap::new(f, f0.twist(-2), a.source().clone(), cols)?;
    let free_rank = constant_rank(&b);
    let n = a.num_rows();
    let mf = if free_rank == n {
        let empty = GradedMap::zero(f, FreeModule::default(), FreeModule::default());
        MatrixFactorization { q, a: empty.clone(), b: empty, free: true, free_rank }
    } else {
        MatrixFactorization { q, a, b, free: false, free_rank }
    };
    if !mf.verify() {
        return Err(Error::Invariant("A·B or B·A differs from q·Id".into()));
    }
    Ok(mf)
}

/// Splits off generators whose rows of the presentation vanish; returns
/// their degrees and the presentation of the rest.
pub fn split_zero_rows(ring: &Ring, pres: &GradedMap) -> (Vec<i32>, GradedMap) {
    let f = ring.field();
    let mut free = Vec::new();
    let mut keep = Vec::new();
    for i in 0..pres.num_rows() {
        if pres.columns().iter().all(|c| c.get(i).is_zero()) {
            free.push(pres.target().twists[i]);
        } else {
            keep.push(i);
        }
    }
    let target = FreeModule::new(keep.iter().map(|&i| pres.target().twists[i]).collect());
    let cols = pres.columns().iter().map(|c| Vector::new(keep.iter().map(|&i| c.get(i).clone()).collect())).collect();
    (free, GradedMap::new_unchecked(f, pres.source().clone(), target, cols))
}

/// Hilbert values, generator degrees and relation degrees: the data that
/// graded modules are compared by.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub lo: i32,
    pub hilbert: Vec<u64>,
    pub generators: Vec<i32>,
    pub relations: Vec<i32>,
}

impl Profile {
    pub fn of(m: &GradedModule, lo: i32, hi: i32) -> Result<Self> {
        let mm = m.minimal();
        let mut generators = mm.generator_degrees().to_vec();
        let mut relations = mm.relation_degrees().to_vec();
        generators.sort_unstable();
        relations.sort_unstable();
        Ok(Profile { lo, hilbert: mm.hilbert_values(lo, hi)?, generators, relations })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub holds: bool,
    pub free_summands: Vec<i32>,
    pub syz1: Profile,
    pub expected_syz1: Profile,
    pub syz2: Profile,
    pub expected_syz2: Profile,
}

/// The first two syzygies over `R` of an MCM module against its stable
/// part twisted by `-1` and `-2`.
pub fn verify_periodicity(e: &GradedModule, lo: i32, hi: i32) -> Result<PeriodicityReport> {
    if !mcm_check(e)?.mcm {
        return Err(Error::NotMcm("periodicity needs a maximal Cohen-Macaulay module".into()));
    }
    let ring = e.ring().clone();
    let m = e.minimal();
    let pres = m.presentation();
    let syz1 = GradedModule::submodule(ring.clone(), pres.target().clone(), pres.columns().to_vec())?;
    let p1 = syz1.presentation();
    let syz2 = GradedModule::submodule(ring.clone(), p1.target().clone(), p1.columns().to_vec())?;
    let (free_summands, stable) = split_zero_rows(&ring, pres);
    let stable = GradedModule::from_presentation(ring, stable)?;
    let report = PeriodicityReport {
        holds: false,
        free_summands,
        syz1: Profile::of(&syz1, lo, hi)?,
        expected_syz1: Profile::of(&stable.twist(-1), lo, hi)?,
        syz2: Profile::of(&syz2, lo, hi)?,
        expected_syz2: Profile::of(&stable.twist(-2), lo, hi)?,
    };
    let holds = report.syz1 == report.expected_syz1 && report.syz2 == report.expected_syz2;
    Ok(PeriodicityReport { holds, ..report })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernReport {
    pub c1: i64,
    pub dual_twist: i64,
    /// `c1` read from the `n^2` coefficient of the Hilbert polynomial.
    pub c1_from_polynomial: Option<i64>,
}

/// First Chern class of `E(t)` for the kernel `E` of an E-type resolution
/// `0 → E → ⊕R(-a_i) → I_Z → 0`: `c1 = Σ(t - a_i) - t`. The dual of a
/// rank-2 bundle is `E(-c1)`.
pub fn chern1_and_dual(e: &GradedModule, context: Option<(&EtypeResolution, i32)>) -> Result<ChernReport> {
    let (lo, hi) = module_polynomial_window(e);
    let p = e.hilbert(lo, hi)?.polynomial()?;
    let rank = p.rank_over_quadric();
    if rank != 2.into() {
        return Err(Error::RankMismatch { expected: 2, found: rank.to_string() });
    }
    let (ctx, t) = context.ok_or(Error::MissingContext)?;
    let t = t as i64;
    let c1 = ctx.l.twists.iter().map(|&a| t - a as i64).sum::<i64>() - t;
    // coefficient of n^2 is 3r/2 + c1 for a module of rank r on Q
    let from_poly = p.expanded()[2] - rank * num_rational::Ratio::new(3, 2);
    Ok(ChernReport { c1, dual_twist: -c1, c1_from_polynomial: from_poly.is_integer().then(|| from_poly.to_integer()) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// `b` for each summand `R(-b)`.
    pub free_twists: Vec<i32>,
    /// `a` for each summand `E₀(-a)`.
    pub e0_twists: Vec<i32>,
    /// Empty when the candidate sum matches; otherwise what failed.
    pub residual: Option<String>,
}

/// Writes an MCM module as `⊕ R(-b_j) ⊕ ⊕ E₀(-a_i)`: free summands from zero
/// rows of the minimal presentation, `E₀` blocks from relation degrees
/// (each `E₀(-a)` has 4 generators in degree `2 + a` and 4 relations in
/// degree `3 + a`), checked against Hilbert function and degrees.
pub fn decompose_acm(e: &GradedModule, lo: i32, hi: i32) -> Result<DecompositionReport> {
    if !mcm_check(e)?.mcm {
        return Err(Error::NotMcm("decomposition needs a maximal Cohen-Macaulay module".into()));
    }
    let ring = e.ring().clone();
    let m = e.minimal();
    let (mut free_twists, stable) = split_zero_rows(&ring, m.presentation());

    let mut e0_twists = Vec::new();
    let mut residual = Vec::new();
    let mut rel = stable.source().twists.clone();
    rel.sort_unstable();
    for (d, count) in FreeModule::new(rel).degree_counts() {
        if count % 4 != 0 {
            residual.push(format!("{count} relations in degree {d}"));
        }
        e0_twists.extend(std::iter::repeat_n(d - 3, count / 4));
    }
    for (b, count) in stable.target().degree_counts() {
        let used = 4 * e0_twists.iter().filter(|&&a| a + 2 == b).count();
        match count.checked_sub(used) {
            Some(extra) => free_twists.extend(std::iter::repeat_n(b, extra)),
            None => residual.push(format!("{count} generators in degree {b}, {used} needed")),
        }
    }
    free_twists.sort_unstable();
    e0_twists.sort_unstable();

    let actual = Profile::of(&m, lo, hi)?;
    let expected_hf: Vec<u64> = (lo..=hi)
        .map(|n| {
            free_twists.iter().map(|&b| ring_dimension(&ring, n - b)).sum::<u64>()
                + e0_twists.iter().map(|&a| e0_hilbert_value(&ring, n - a)).sum::<u64>()
        })
        .collect();
    if actual.hilbert != expected_hf {
        residual.push("Hilbert function differs from the candidate sum".into());
    }
    let mut gens: Vec<i32> = free_twists.clone();
    let mut rels = Vec::new();
    for &a in &e0_twists {
        gens.extend([a + 2; 4]);
        rels.extend([a + 3; 4]);
    }
    gens.sort_unstable();
    rels.sort_unstable();
    if gens != actual.generators || rels != actual.relations {
        residual.push("generator or relation degrees differ from the candidate sum".into());
    }
    Ok(DecompositionReport { free_twists, e0_twists, residual: (!residual.is_empty()).then(|| residual.join("; ")) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e0_generators() {
        let e0 = construct_e0_canonical();
        assert_eq!(e0.generator_degrees(), &[2, 2, 2, 2]);
        assert_eq!(e0.relation_degrees(), &[3, 3, 3, 3]);
        let emb = e0.embedding().unwrap();
        assert_eq!(emb.ambient.twists, vec![1, 1, 1]);
    }

    #[test]
    fn e0_closed_form() {
        let r = Ring::canonical();
        let v: Vec<u64> = (-2..=8).map(|n| e0_hilbert_value(&r, n)).collect();
        assert_eq!(v, vec![0, 0, 0, 0, 4, 16, 40, 80, 140, 224, 336]);
    }

    #[test]
    fn line_must_lie_on_quadric() {
        let r = Ring::canonical();
        let off = Ideal::parse(r.clone(), "x0, x1, x4").unwrap();
        assert!(matches!(construct_e0(&r, &off), Err(Error::LineNotOnQuadric(_))));
        let conic = Ideal::parse(r.clone(), "x0, x4").unwrap();
        assert!(matches!(construct_e0(&r, &conic), Err(Error::Input(_))));
    }

    #[test]
    fn free_module_factorization_is_empty() {
        let r = Ring::canonical();
        let mf = extract_mf(&GradedModule::free(r, vec![3])).unwrap();
        assert!(mf.free);
        assert_eq!(mf.size(), 0);
    }

    #[test]
    fn json_round_trip() {
        let mf = extract_mf(&construct_e0_canonical()).unwrap();
        let j = mf.to_json();
        let back = MatrixFactorization::from_json(&j).unwrap();
        assert_eq!(back.a, mf.a);
        assert_eq!(back.b, mf.b);
        let mut bad = j.clone();
        bad.q = "x0*x1".into();
        assert!(MatrixFactorization::from_json(&bad).is_err());
    }
}
