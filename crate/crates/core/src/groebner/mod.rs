//! Gröbner bases of ideals of `S` and of submodules of graded free
//! `S`-modules, normal forms, syzygies and lifting.

mod engine;
mod ideal;
mod order;

pub use ideal::{ideal_quotient, ideal_quotient_by, intersect, saturate_irrelevant, Ideal, SATURATION_STEP_LIMIT};
pub(crate) use ideal::minimal_generators;
pub use order::{ModuleOrder, PositionRule};

pub(crate) use engine::{from_svec, to_svec, Engine, SVec};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::free::{FreeModule, Vector};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;

/// A reduced (monic, auto-reduced) Gröbner basis of a submodule of a graded
/// free module `⊕ S(-a_i)`.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    field: PrimeField,
    order: ModuleOrder,
    elements: Vec<SVec>,
}

fn check_inputs(field: PrimeField, free: &FreeModule, gens: &[Vector]) -> Result<()> {
    for g in gens {
        if g.len() != free.rank() {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} in a free module of rank {}",
                g.len(),
                free.rank()
            )));
        }
        for p in g.components() {
            if p.field() != field {
                return Err(Error::FieldMismatch(p.field().characteristic(), field.characteristic()));
            }
        }
        if !g.is_homogeneous_in(free) {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
    }
    Ok(())
}

impl GroebnerBasis {
    /// Buchberger's algorithm on homogeneous generators, term-over-position.
    pub fn compute(field: PrimeField, free: &FreeModule, gens: &[Vector], order: TermOrder) -> Result<Self> {
        Self::compute_with_order(field, gens, ModuleOrder::top(order, free.twists.clone()))
    }

    pub fn compute_with_order(field: PrimeField, gens: &[Vector], order: ModuleOrder) -> Result<Self> {
        check_inputs(field, &FreeModule::new(order.twists.clone()), gens)?;
        let mut e = Engine::new(field, order);
        for (i, g) in gens.iter().enumerate() {
            e.add_input(g, i);
        }
        e.run(None);
        // sorted by decreasing leading term so the reduced basis does not depend on input order
        let mut elements = e.reduced_basis();
        elements.sort_by(|a, b| e.order.compare((&b[0].mon, b[0].pos), (&a[0].mon, a[0].pos)));
        Ok(GroebnerBasis { field, order: e.order.clone(), elements })
    }

    /// Gröbner basis of an ideal of `S`.
    pub fn ideal(field: PrimeField, gens: &[Polynomial], order: TermOrder) -> Result<Self> {
        let vs: Vec<Vector> = gens.iter().map(|g| Vector::new(vec![g.clone()])).collect();
        Self::compute(field, &FreeModule::new(vec![0]), &vs, order)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<Vector> {
        self.elements.iter().map(|v| from_svec(v, self.field, self.rank())).collect()
    }

    /// Elements of an ideal basis as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements().into_iter().map(|v| v.get(0).clone()).collect()
    }

    /// Leading module monomials `(monomial, position)`.
    pub fn leads(&self) -> Vec<(Monomial, usize)> {
        self.elements.iter().map(|v| (v[0].mon, v[0].pos)).collect()
    }

    fn engine(&self) -> Engine {
        let mut e = Engine::new(self.field, self.order.clone());
        for v in &self.elements {
            e.add_svec(v.clone());
        }
        e
    }

    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rank() {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} against a basis of rank {}",
                v.len(),
                self.rank()
            )));
        }
        let e = self.engine();
        let r = e.reduce(to_svec(v, &self.order));
        Ok(from_svec(&r, self.field, self.rank()))
    }

    pub fn normal_form_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.normal_form(&Vector::new(vec![p.clone()]))?.get(0).clone())
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_poly(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form_poly(p)?.is_zero())
    }

    /// Every S-vector of two elements with the same lead position reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        satisfies_buchberger_criterion(self.field, &self.order, &self.elements)
    }

    /// Number of standard monomials `m·e_i` of total degree `n`, i.e. the
    /// dimension of `(F/U)_n` for the submodule `U` this basis generates.
    pub fn standard_monomial_count(&self, n: i32) -> u64 {
        let mut total = 0u64;
        for pos in 0..self.rank() {
            let d = n - self.order.twists[pos];
            if d < 0 {
                continue;
            }
            let leads: Vec<Monomial> = self.elements.iter().filter(|v| v[0].pos == pos).map(|v| v[0].mon).collect();
            if leads.is_empty() {
                total += Monomial::count_of_degree(d as i64);
                continue;
            }
            if leads.iter().any(|l| l.degree() == 0) {
                continue;
            }
            total += Monomial::all_of_degree(d as u32)
                .iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .count() as u64;
        }
        total
    }

    /// Two bases (same order) generate the same submodule.
    pub fn same_submodule(&self, other: &GroebnerBasis) -> bool {
        self.rank() == other.rank() && self.elements() == other.elements()
            || (self.elements().iter().all(|v| other.contains(v).unwrap_or(false))
                && other.elements().iter().all(|v| self.contains(v).unwrap_or(false)))
    }
}

pub(crate) fn satisfies_buchberger_criterion(field: PrimeField, order: &ModuleOrder, elements: &[SVec]) -> bool {
    let mut e = Engine::new(field, order.clone());
    for v in elements {
        if !v.is_empty() {
            e.add_svec(v.clone());
        }
    }
    let basis = e.basis.clone();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let (li, lj) = (basis[i].v[0], basis[j].v[0]);
            if li.pos != lj.pos {
                continue;
            }
            let lcm = li.mon.lcm(&lj.mon);
            let mi = li.mon.quotient_of(&lcm).unwrap();
            let mj = lj.mon.quotient_of(&lcm).unwrap();
            let si: SVec = basis[i]
                .v
                .iter()
                .map(|t| engine::Term { mon: t.mon.mul(&mi), pos: t.pos, coef: field.div(t.coef, li.coef) })
                .collect();
            let s = engine::sub_mul(field, order, &si, field.inv(lj.coef), &mj, &basis[j].v);
            if !e.reduce(s).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Generators of the syzygy module `{a ∈ S^r : Σ a_j g_j = 0}` of homogeneous
/// vectors `g_1..g_r` of `free`. Each syzygy is returned as a vector of length
/// `r`; the list is a generating set, not necessarily minimal.
pub fn syzygies_over_s(field: PrimeField, free: &FreeModule, gens: &[Vector]) -> Result<Vec<Vector>> {
    check_inputs(field, free, gens)?;
    let mut e = Engine::new(field, ModuleOrder::top(TermOrder::Grevlex, free.twists.clone())).with_tracking(gens.len());
    for (i, g) in gens.iter().enumerate() {
        e.add_input(g, i);
    }
    e.run(None);
    Ok(e.input_syzygies.into_iter().map(Vector::new).collect())
}

/// Writes `v` as a combination `Σ c_j g_j` of the generators, if possible.
pub fn lift(field: PrimeField, free: &FreeModule, gens: &[Vector], v: &Vector) -> Result<Option<Vec<Polynomial>>> {
    check_inputs(field, free, gens)?;
    check_inputs(field, free, std::slice::from_ref(v))?;
    let mut e = Engine::new(field, ModuleOrder::top(TermOrder::Grevlex, free.twists.clone())).with_tracking(gens.len());
    for (i, g) in gens.iter().enumerate() {
        e.add_input(g, i);
    }
    e.run(None);
    let (rem, steps) = e.reduce_recording(to_svec(v, &e.order), true);
    if !rem.is_empty() {
        return Ok(None);
    }
    Ok(Some(e.cofactor_of_steps(&steps)))
}

/// The Schreyer frame of a Gröbner basis: the syzygies `s_ij` of the basis
/// elements obtained from all S-pairs, together with the induced Schreyer
/// order on `⊕ S(-deg g_k)` under which they form a Gröbner basis.
#[derive(Debug, Clone)]
pub struct SchreyerFrame {
    pub basis: Vec<Vector>,
    pub order: ModuleOrder,
    pub syzygies: Vec<Vector>,
}

impl SchreyerFrame {
    pub fn compute(field: PrimeField, free: &FreeModule, gens: &[Vector]) -> Result<Self> {
        check_inputs(field, free, gens)?;
        let parent = ModuleOrder::top(TermOrder::Grevlex, free.twists.clone());
        let mut e = Engine::new(field, parent.clone()).with_schreyer_rows();
        for (i, g) in gens.iter().enumerate() {
            e.add_input(g, i);
        }
        e.run(None);
        let leads: Vec<(Monomial, usize)> = e.basis.iter().map(|b| (b.v[0].mon, b.v[0].pos)).collect();
        let s = leads.len();
        let order = ModuleOrder::schreyer(&parent, leads);
        let syzygies = e
            .schreyer_rows
            .iter()
            .map(|row| {
                let mut v = Vector::zero(field, s);
                for (k, p) in row {
                    v.set(*k, p.clone());
                }
                v
            })
            .collect();
        let basis = e.basis.iter().map(|b| from_svec(&b.v, field, free.rank())).collect();
        Ok(SchreyerFrame { basis, order, syzygies })
    }

    /// Checks the Schreyer syzygies are syzygies and form a Gröbner basis
    /// under the induced order.
    pub fn verify(&self, field: PrimeField) -> bool {
        let rank = self.basis.first().map(Vector::len).unwrap_or(0);
        for s in &self.syzygies {
            let mut acc = Vector::zero(field, rank);
            for (k, p) in s.components().iter().enumerate() {
                if !p.is_zero() {
                    acc = acc.add_mul(p, &self.basis[k]);
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
        let svs: Vec<SVec> = self.syzygies.iter().map(|v| to_svec(v, &self.order)).filter(|v| !v.is_empty()).collect();
        satisfies_buchberger_criterion(field, &self.order, &svs)
    }
}
