//! Finitely generated graded modules, stored as cokernels of presentation
//! matrices over `S` or `R`.

use std::fmt;

use crate::error::{Error, Result};
use crate::free::{FreeModule, GradedMap, Vector};
use crate::groebner::{minimal_generators, Ideal};
use crate::hilbert::HilbertData;
use crate::resolution::{cokernel_hilbert, minimal_presentation, quadric_relations, syzygy};
use crate::ring::Ring;

/// Where the generators of a submodule live.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub ambient: FreeModule,
    pub generators: Vec<Vector>,
}

/// `coker(presentation)`, with the generators' images in an ambient free
/// module when the module was built as a submodule.
#[derive(Debug, Clone)]
pub struct GradedModule {
    ring: Ring,
    presentation: GradedMap,
    embedding: Option<Embedding>,
}

impl GradedModule {
    pub fn from_presentation(ring: Ring, presentation: GradedMap) -> Result<Self> {
        if presentation.field() != ring.field() {
            return Err(Error::FieldMismatch(presentation.field().characteristic(), ring.field().characteristic()));
        }
        Ok(GradedModule { ring, presentation, embedding: None })
    }

    /// `⊕ ring(-a_i)`.
    pub fn free(ring: Ring, twists: Vec<i32>) -> Self {
        let f = ring.field();
        let presentation = GradedMap::zero(f, FreeModule::default(), FreeModule::new(twists));
        GradedModule { ring, presentation, embedding: None }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `ring / I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let ring = ideal.ring().clone();
        let f = ring.field();
        let cols = ideal.gens().iter().map(|g| Vector::new(vec![g.clone()])).collect();
        let presentation = GradedMap::from_columns(f, FreeModule::new(vec![0]), cols);
        GradedModule { ring, presentation, embedding: None }
    }

    /// The submodule of `ambient` generated by `gens`, minimally generated
    /// and presented by its syzygies.
    pub fn submodule(ring: Ring, ambient: FreeModule, gens: Vec<Vector>) -> Result<Self> {
        let f = ring.field();
        for g in &gens {
            if g.len() != ambient.rank() {
                return Err(Error::AmbientMismatch(format!("generator {g} outside a free module of rank {}", ambient.rank())));
            }
            if !g.is_homogeneous_in(&ambient) {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        let extra = quadric_relations(&ring, &ambient);
        let gens = minimal_generators(f, &ambient, &gens, &extra);
        let inclusion = GradedMap::from_columns(f, ambient.clone(), gens.clone());
        let presentation = syzygy(&ring, &inclusion)?;
        Ok(GradedModule { ring, presentation, embedding: Some(Embedding { ambient, generators: gens }) })
    }

    /// An ideal regarded as a submodule of the ring.
    pub fn ideal(ideal: &Ideal) -> Result<Self> {
        let gens = ideal.gens().iter().map(|g| Vector::new(vec![g.clone()])).collect();
        Self::submodule(ideal.ring().clone(), FreeModule::new(vec![0]), gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn presentation(&self) -> &GradedMap {
        &self.presentation
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// Degrees of the generators (the target of the presentation).
    pub fn generator_degrees(&self) -> &[i32] {
        &self.presentation.target().twists
    }

    /// Degrees of the relations (the source of the presentation).
    pub fn relation_degrees(&self) -> &[i32] {
        &self.presentation.source().twists
    }

    /// `M(t)`, so that `M(t)_n = M_{n+t}`.
    pub fn twist(&self, t: i32) -> Self {
        GradedModule {
            ring: self.ring.clone(),
            presentation: self.presentation.twist(t),
            embedding: self.embedding.as_ref().map(|e| Embedding { ambient: e.ambient.twist(t), generators: e.generators.clone() }),
        }
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(GradedModule { ring: self.ring.clone(), presentation: self.presentation.direct_sum(&other.presentation), embedding: None })
    }

    /// The same module with a minimal presentation over its ring.
    pub fn minimal(&self) -> Self {
        let presentation = minimal_presentation(&self.ring, &self.presentation);
        let embedding = if presentation.target() == self.presentation.target() { self.embedding.clone() } else { None };
        GradedModule { ring: self.ring.clone(), presentation, embedding }
    }

    /// A zero module has no generators after minimization.
    pub fn is_zero(&self) -> bool {
        self.minimal().presentation.num_rows() == 0
    }

    /// The presentation over `S`: relations together with `q·e_i` over `R`.
    pub fn s_presentation(&self) -> GradedMap {
        let f = self.ring.field();
        let target = self.presentation.target().clone();
        let mut cols = self.presentation.columns().to_vec();
        cols.extend(quadric_relations(&self.ring, &target));
        GradedMap::from_columns(f, target, cols)
    }

    /// `dim M_n` for `n` in `[lo, hi]`, counting standard monomials.
    pub fn hilbert_values(&self, lo: i32, hi: i32) -> Result<Vec<u64>> {
        cokernel_hilbert(&self.ring, &self.presentation, lo, hi)
    }

    pub fn hilbert(&self, lo: i32, hi: i32) -> Result<HilbertData> {
        Ok(HilbertData::new(lo, self.hilbert_values(lo, hi)?))
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cokernel {} <- {}", self.presentation.target(), self.presentation.source())?;
        write!(f, "{}", self.presentation)
    }
}
