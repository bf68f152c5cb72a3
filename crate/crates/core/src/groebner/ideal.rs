//! Homogeneous ideals of `S` or `R` and the usual ideal operations.

use std::fmt;

use super::{syzygies_over_s, to_svec, Engine, GroebnerBasis, ModuleOrder};
use crate::error::{Error, Result};
use crate::free::{FreeModule, Vector};
use crate::monomial::{TermOrder, NVARS};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Upper bound on the number of `(I : m)` steps in [`saturate_irrelevant`].
pub const SATURATION_STEP_LIMIT: usize = 50;

/// A homogeneous ideal, stored by lifts of its generators to `S`.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.field() != ring.field() {
                return Err(Error::FieldMismatch(g.field().characteristic(), ring.field().characteristic()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, gens })
    }

    pub fn parse(ring: Ring, text: &str) -> Result<Self> {
        let gens = crate::parse::parse_polynomial_list(text, ring.field())?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal { ring, gens: Vec::new() }
    }

    /// The irrelevant ideal `(x0, …, x4)`.
    pub fn irrelevant(ring: Ring) -> Self {
        let gens = (0..NVARS).map(|i| ring.var(i)).collect();
        Ideal { ring, gens }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators of the preimage in `S` (the quadric adjoined when over `R`).
    pub fn s_gens(&self) -> Vec<Polynomial> {
        let mut out = self.gens.clone();
        if let Some(q) = self.ring.quadric_form() {
            out.push(q.clone());
        }
        out
    }

    /// The preimage in `S` as an ideal of `S`.
    pub fn preimage(&self) -> Ideal {
        Ideal { ring: self.ring.ambient_polynomial_ring(), gens: self.s_gens() }
    }

    /// Gröbner basis (grevlex) of the preimage in `S`.
    pub fn s_gb(&self) -> GroebnerBasis {
        GroebnerBasis::ideal(self.ring.field(), &self.s_gens(), TermOrder::Grevlex)
            .expect("generators validated at construction")
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !f.is_homogeneous() && !f.is_zero() {
            return Err(Error::NotHomogeneous(f.to_string()));
        }
        self.s_gb().contains_poly(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        let gb = self.s_gb();
        for g in &other.gens {
            if !gb.contains_poly(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// The whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal { ring: self.ring.clone(), gens })
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(Ideal { ring: self.ring.clone(), gens })
    }

    /// The same ideal with a minimal homogeneous generating set, sorted by degree.
    pub fn minimalize(&self) -> Ideal {
        let f = self.ring.field();
        let free = FreeModule::new(vec![0]);
        let cands: Vec<Vector> = self.gens.iter().map(|g| Vector::new(vec![g.clone()])).collect();
        let extra: Vec<Vector> = self.ring.quadric_form().map(|q| Vector::new(vec![q.clone()])).into_iter().collect();
        let keep = minimal_generators(f, &free, &cands, &extra);
        Ideal { ring: self.ring.clone(), gens: keep.into_iter().map(|v| v.get(0).clone()).collect() }
    }

    /// Degrees of a minimal generating set.
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.minimalize().gens.iter().filter_map(Polynomial::degree).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Greedy minimal generators of the image of `span(cands)` in `F / span(extra)`:
/// candidates are visited by degree and kept when not already in the span of
/// `extra` and the kept ones. The `extra` vectors are never returned.
pub(crate) fn minimal_generators(
    field: crate::field::PrimeField,
    free: &FreeModule,
    cands: &[Vector],
    extra: &[Vector],
) -> Vec<Vector> {
    let order = ModuleOrder::top(TermOrder::Grevlex, free.twists.clone());
    let mut e = Engine::new(field, order);
    for v in extra {
        e.add_svec(to_svec(v, &e.order));
    }
    let mut sorted: Vec<(i32, usize)> = cands
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.signed_degree_in(free).map(|d| (d, i)))
        .collect();
    sorted.sort();
    let mut out = Vec::new();
    for (d, i) in sorted {
        e.run(Some(d));
        let r = e.reduce(to_svec(&cands[i], &e.order));
        if !r.is_empty() {
            e.add_svec(r);
            out.push(cands[i].clone());
        }
    }
    out
}

/// `(I : f) = {g : g·f ∈ I}`.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let field = ideal.ring.field();
    if f.is_zero() {
        return Ok(Ideal { ring: ideal.ring.clone(), gens: vec![Polynomial::one(field)] });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let mut cols = vec![Vector::new(vec![f.clone()])];
    cols.extend(ideal.s_gens().into_iter().map(|g| Vector::new(vec![g])));
    let syz = syzygies_over_s(field, &FreeModule::new(vec![0]), &cols)?;
    let gens: Vec<Polynomial> = syz.into_iter().map(|s| s.get(0).clone()).filter(|p| !p.is_zero()).collect();
    Ok(Ideal::new(ideal.ring.clone(), gens)?.minimalize())
}

/// `I ∩ J`, computed from syzygies of `[I | J]` on preimages in `S`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.ring.check_same(&b.ring)?;
    let field = a.ring.field();
    let ga = a.s_gens();
    let gb = b.s_gens();
    if ga.is_empty() || gb.is_empty() {
        return Ok(Ideal::zero(a.ring.clone()));
    }
    let mut cols: Vec<Vector> = ga.iter().map(|g| Vector::new(vec![g.clone()])).collect();
    cols.extend(gb.iter().map(|g| Vector::new(vec![g.clone()])));
    let syz = syzygies_over_s(field, &FreeModule::new(vec![0]), &cols)?;
    let mut gens = Vec::new();
    for s in syz {
        let mut acc = Polynomial::zero(field);
        for (k, g) in ga.iter().enumerate() {
            acc = &acc + &(s.get(k) * g);
        }
        if !acc.is_zero() {
            gens.push(acc);
        }
    }
    Ok(Ideal::new(a.ring.clone(), gens)?.minimalize())
}

/// `(I : J)` as the intersection of `(I : g)` over generators `g` of `J`.
pub fn ideal_quotient_by(ideal: &Ideal, j: &Ideal) -> Result<Ideal> {
    ideal.ring.check_same(&j.ring)?;
    let mut acc: Option<Ideal> = None;
    for g in &j.gens {
        let q = ideal_quotient(ideal, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal { ring: ideal.ring.clone(), gens: vec![Polynomial::one(ideal.ring.field())] }))
}

/// `I^sat = (I : m^∞)` for the irrelevant ideal `m`, by iterating `I ↦ I : m`.
pub fn saturate_irrelevant(ideal: &Ideal) -> Result<Ideal> {
    let m = Ideal::irrelevant(ideal.ring.clone());
    let mut cur = ideal.minimalize();
    for _ in 0..SATURATION_STEP_LIMIT {
        let next = ideal_quotient_by(&cur, &m)?;
        if cur.contains_ideal(&next)? {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::SaturationDiverged(SATURATION_STEP_LIMIT))
}
