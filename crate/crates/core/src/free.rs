//! Graded free modules, their elements, and graded maps between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Homogeneity, Polynomial};

/// `⊕ S(-a_i)` (or `⊕ R(-a_i)`): basis vector `i` lives in degree `twists[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    pub twists: Vec<i32>,
}

impl FreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        FreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// `F(t)`: every generator degree drops by `t`.
    pub fn twist(&self, t: i32) -> FreeModule {
        FreeModule { twists: self.twists.iter().map(|a| a - t).collect() }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModule { twists }
    }

    /// Multiset of generator degrees as sorted `(degree, count)` pairs.
    pub fn degree_counts(&self) -> Vec<(i32, usize)> {
        let mut t = self.twists.clone();
        t.sort_unstable();
        let mut out: Vec<(i32, usize)> = Vec::new();
        for d in t {
            match out.last_mut() {
                Some((ld, c)) if *ld == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .degree_counts()
            .into_iter()
            .map(|(d, c)| if c == 1 { format!("R({})", -d) } else { format!("R({})^{c}", -d) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of a free module, stored densely by basis position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    comps: Vec<Polynomial>,
}

impl Vector {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        Vector { comps }
    }

    pub fn zero(field: PrimeField, rank: usize) -> Self {
        Vector { comps: vec![Polynomial::zero(field); rank] }
    }

    pub fn unit(field: PrimeField, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(field, rank);
        v.comps[i] = Polynomial::one(field);
        v
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn set(&mut self, i: usize, p: Polynomial) {
        self.comps[i] = p;
    }

    /// True when every nonzero component has the same total degree inside `free`.
    pub fn is_homogeneous_in(&self, free: &FreeModule) -> bool {
        let mut deg: Option<i32> = None;
        for (p, a) in self.comps.iter().zip(free.twists.iter()) {
            match p.homogeneity() {
                Homogeneity::Zero => {}
                Homogeneity::Inhomogeneous => return false,
                Homogeneity::Homogeneous(d) => {
                    let total = d as i32 + a;
                    if *deg.get_or_insert(total) != total {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Signed degree of a nonzero homogeneous element.
    pub fn signed_degree_in(&self, free: &FreeModule) -> Option<i32> {
        self.comps
            .iter()
            .zip(free.twists.iter())
            .find_map(|(p, a)| p.leading().map(|(m, _)| m.degree() as i32 + a))
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector { comps: self.comps.iter().zip(other.comps.iter()).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector { comps: self.comps.iter().zip(other.comps.iter()).map(|(a, b)| a - b).collect() }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> Vector {
        Vector { comps: self.comps.iter().map(|a| a * p).collect() }
    }

    /// `self + p * other`.
    pub fn add_mul(&self, p: &Polynomial, other: &Vector) -> Vector {
        Vector { comps: self.comps.iter().zip(other.comps.iter()).map(|(a, b)| a + &(b * p)).collect() }
    }

    pub fn concat(&self, other: &Vector) -> Vector {
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        Vector { comps }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A degree-preserving map `source -> target`; `columns[j]` is the image of
/// the `j`-th source basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    field: PrimeField,
    source: FreeModule,
    target: FreeModule,
    columns: Vec<Vector>,
}

impl GradedMap {
    /// Validates shapes and degree compatibility: entry `(i, j)` is zero or
    /// homogeneous of degree `source_j - target_i`.
    pub fn new(field: PrimeField, source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::Input(format!(
                "map has {} columns but source has rank {}",
                columns.len(),
                source.rank()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != target.rank() {
                return Err(Error::Input(format!("column {j} has length {} != {}", col.len(), target.rank())));
            }
            for (i, p) in col.components().iter().enumerate() {
                if p.field() != field {
                    return Err(Error::FieldMismatch(p.field().characteristic(), field.characteristic()));
                }
                match p.homogeneity() {
                    Homogeneity::Zero => {}
                    Homogeneity::Homogeneous(d) if d as i32 == source.twists[j] - target.twists[i] => {}
                    _ => {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({i},{j}) = {p} should have degree {}",
                            source.twists[j] - target.twists[i]
                        )))
                    }
                }
            }
        }
        Ok(GradedMap { field, source, target, columns })
    }

    pub(crate) fn new_unchecked(field: PrimeField, source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Self {
        debug_assert!(Self::new(field, source.clone(), target.clone(), columns.clone()).is_ok());
        GradedMap { field, source, target, columns }
    }

    /// Builds the map whose columns are the given homogeneous vectors in
    /// `target`, assigning each column its own degree as source twist.
    /// Zero columns are dropped.
    pub fn from_columns(field: PrimeField, target: FreeModule, columns: Vec<Vector>) -> Self {
        let mut twists = Vec::new();
        let mut cols = Vec::new();
        for c in columns {
            if let Some(d) = c.signed_degree_in(&target) {
                twists.push(d);
                cols.push(c);
            }
        }
        GradedMap::new_unchecked(field, FreeModule::new(twists), target, cols)
    }

    pub fn zero(field: PrimeField, source: FreeModule, target: FreeModule) -> Self {
        let cols = vec![Vector::zero(field, target.rank()); source.rank()];
        GradedMap { field, source, target, columns: cols }
    }

    pub fn identity(field: PrimeField, free: FreeModule) -> Self {
        let n = free.rank();
        let cols = (0..n).map(|i| Vector::unit(field, n, i)).collect();
        GradedMap { field, source: free.clone(), target: free, columns: cols }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        self.columns[j].get(i)
    }

    pub fn num_rows(&self) -> usize {
        self.target.rank()
    }

    pub fn num_cols(&self) -> usize {
        self.source.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// Image of an element of the source.
    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.target.rank());
        for (c, p) in self.columns.iter().zip(v.components()) {
            if !p.is_zero() {
                out = out.add_mul(p, c);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target.twists != self.source.twists {
            return Err(Error::Input("composition of incompatible graded maps".into()));
        }
        let cols = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(GradedMap { field: self.field, source: other.source.clone(), target: self.target.clone(), columns: cols })
    }

    pub fn twist(&self, t: i32) -> GradedMap {
        GradedMap {
            field: self.field,
            source: self.source.twist(t),
            target: self.target.twist(t),
            columns: self.columns.clone(),
        }
    }

    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        let f = self.field;
        let (r1, r2) = (self.num_rows(), other.num_rows());
        let mut cols: Vec<Vector> = self.columns.iter().map(|c| c.concat(&Vector::zero(f, r2))).collect();
        cols.extend(other.columns.iter().map(|c| Vector::zero(f, r1).concat(c)));
        GradedMap {
            field: f,
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            columns: cols,
        }
    }

    /// Every entry multiplied by `p` (source twists shift by `deg p`).
    pub fn scale(&self, p: &Polynomial, deg: i32) -> GradedMap {
        GradedMap {
            field: self.field,
            source: FreeModule::new(self.source.twists.iter().map(|a| a + deg).collect()),
            target: self.target.clone(),
            columns: self.columns.iter().map(|c| c.scale_poly(p)).collect(),
        }
    }

    /// Rows of the matrix as vectors.
    pub fn rows(&self) -> Vec<Vector> {
        (0..self.num_rows())
            .map(|i| Vector::new(self.columns.iter().map(|c| c.get(i).clone()).collect()))
            .collect()
    }

    pub fn has_nonzero_constant_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.components().iter().any(|p| !p.is_zero() && p.is_constant()))
    }
}

impl fmt::Display for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.num_rows() {
            let row: Vec<String> = self.columns.iter().map(|c| c.get(i).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    #[test]
    fn degree_checks() {
        let f = PrimeField::default();
        let x0 = parse_polynomial("x0", f).unwrap();
        let x1 = parse_polynomial("x1^2", f).unwrap();
        let ok = GradedMap::new(
            f,
            FreeModule::new(vec![2]),
            FreeModule::new(vec![1, 0]),
            vec![Vector::new(vec![x0.clone(), x1.clone()])],
        );
        assert!(ok.is_ok());
        let bad = GradedMap::new(f, FreeModule::new(vec![2]), FreeModule::new(vec![0, 0]), vec![Vector::new(vec![x0, x1])]);
        assert!(matches!(bad, Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn twist_and_counts() {
        let m = FreeModule::new(vec![1, 1, 1]);
        assert_eq!(m.twist(1).twists, vec![0, 0, 0]);
        assert_eq!(m.degree_counts(), vec![(1, 3)]);
        assert_eq!(m.to_string(), "R(-1)^3");
    }
}
