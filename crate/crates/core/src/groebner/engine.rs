//! Homogeneous Buchberger algorithm for submodules of graded free modules.
//!
//! Pairs are processed by the normal strategy (lowest degree of the lcm
//! first, ties by `(i, j)` index), reducers are the first basis element in
//! insertion order whose lead divides, and truncated runs (`run(Some(d))`)
//! leave a basis that is a Gröbner basis up to degree `d`.
//!
//! Optionally every basis element carries its cofactor in terms of the input
//! generators; each S-pair that reduces to zero then yields a syzygy of the
//! inputs, and these generate the whole syzygy module (inputs are kept
//! unreduced in the basis, so Schreyer's syzygies of the basis map onto a
//! generating set).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::order::ModuleOrder;
use crate::field::PrimeField;
use crate::free::Vector;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub pos: usize,
    pub coef: u32,
}

/// Terms sorted strictly descending in the engine's module order.
pub(crate) type SVec = Vec<Term>;

pub(crate) fn to_svec(v: &Vector, order: &ModuleOrder) -> SVec {
    let mut out: SVec = Vec::new();
    for (pos, p) in v.components().iter().enumerate() {
        for (m, c) in p.terms() {
            out.push(Term { mon: *m, pos, coef: *c });
        }
    }
    out.sort_by(|a, b| order.compare((&b.mon, b.pos), (&a.mon, a.pos)));
    out
}

pub(crate) fn from_svec(v: &[Term], field: PrimeField, rank: usize) -> Vector {
    let mut comps: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
    for t in v {
        comps[t.pos].push((t.mon, t.coef));
    }
    Vector::new(comps.into_iter().map(|ts| Polynomial::from_terms(field, ts)).collect())
}

/// `a - c·m·b`.
pub(crate) fn sub_mul(field: PrimeField, order: &ModuleOrder, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> SVec {
    let neg = field.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Less
        } else if j == b.len() {
            Ordering::Greater
        } else {
            let mb = b[j].mon.mul(m);
            order.compare((&a[i].mon, a[i].pos), (&mb, b[j].pos))
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { mon: b[j].mon.mul(m), pos: b[j].pos, coef: field.mul(neg, b[j].coef) });
                j += 1;
            }
            Ordering::Equal => {
                let v = field.add(a[i].coef, field.mul(neg, b[j].coef));
                if v != 0 {
                    out.push(Term { mon: a[i].mon, pos: a[i].pos, coef: v });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn scale_svec(field: PrimeField, v: &[Term], c: u32, m: &Monomial) -> SVec {
    v.iter().map(|t| Term { mon: t.mon.mul(m), pos: t.pos, coef: field.mul(t.coef, c) }).collect()
}

/// One reduction step `c·m·g_k` subtracted from the working vector.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    pub k: usize,
    pub mon: Monomial,
    pub coef: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Elem {
    pub v: SVec,
    pub degree: i32,
    /// Cofactor row: `v = Σ cof[j] · input_j`.
    pub cof: Option<Vec<Polynomial>>,
}

impl Elem {
    pub fn lead(&self) -> &Term {
        &self.v[0]
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Engine {
    pub field: PrimeField,
    pub order: ModuleOrder,
    pub basis: Vec<Elem>,
    pairs: BTreeSet<(i32, usize, usize)>,
    track: bool,
    record_schreyer: bool,
    n_inputs: usize,
    /// Syzygies of the inputs, as cofactor rows (only when tracking).
    pub input_syzygies: Vec<Vec<Polynomial>>,
    /// Schreyer syzygies among basis elements, as sparse rows (k, poly).
    pub schreyer_rows: Vec<Vec<(usize, Polynomial)>>,
}

impl Engine {
    pub fn new(field: PrimeField, order: ModuleOrder) -> Self {
        Engine {
            field,
            order,
            basis: Vec::new(),
            pairs: BTreeSet::new(),
            track: false,
            record_schreyer: false,
            n_inputs: 0,
            input_syzygies: Vec::new(),
            schreyer_rows: Vec::new(),
        }
    }

    /// Tracks cofactors with respect to a fixed number of inputs. All inputs
    /// must be added before the first `run`.
    pub fn with_tracking(mut self, n_inputs: usize) -> Self {
        self.track = true;
        self.n_inputs = n_inputs;
        self
    }

    pub fn with_schreyer_rows(mut self) -> Self {
        self.record_schreyer = true;
        self
    }

    fn rank(&self) -> usize {
        self.order.rank()
    }

    fn use_product_criterion(&self) -> bool {
        !self.track && !self.record_schreyer && self.rank() == 1
    }

    fn term_degree(&self, t: &Term) -> i32 {
        t.mon.degree() as i32 + self.order.twists[t.pos]
    }

    /// Adds an input generator; `index` is its position among the tracked inputs.
    pub fn add_input(&mut self, v: &Vector, index: usize) {
        let sv = to_svec(v, &self.order);
        let cof = if self.track {
            let mut row = vec![Polynomial::zero(self.field); self.n_inputs];
            row[index] = Polynomial::one(self.field);
            Some(row)
        } else {
            None
        };
        if sv.is_empty() {
            if let Some(row) = cof {
                self.input_syzygies.push(row);
            }
            return;
        }
        self.push(sv, cof);
    }

    /// Adds an untracked generator given in engine representation.
    pub fn add_svec(&mut self, sv: SVec) {
        debug_assert!(!self.track);
        if !sv.is_empty() {
            self.push(sv, None);
        }
    }

    fn push(&mut self, v: SVec, cof: Option<Vec<Polynomial>>) {
        let degree = self.term_degree(&v[0]);
        let n = self.basis.len();
        let lead = v[0];
        for (i, e) in self.basis.iter().enumerate() {
            let l = e.lead();
            if l.pos != lead.pos {
                continue;
            }
            if self.use_product_criterion() && l.mon.is_coprime(&lead.mon) {
                continue;
            }
            let lcm = l.mon.lcm(&lead.mon);
            let d = lcm.degree() as i32 + self.order.twists[lead.pos];
            self.pairs.insert((d, i, n));
        }
        self.basis.push(Elem { v, degree, cof });
    }

    pub fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.basis.iter().position(|e| {
            let l = e.lead();
            l.pos == t.pos && l.mon.divides(&t.mon)
        })
    }

    /// Full reduction (leading and tail terms).
    pub fn reduce(&self, v: SVec) -> SVec {
        self.reduce_recording(v, false).0
    }

    pub fn reduce_recording(&self, mut w: SVec, record: bool) -> (SVec, Vec<Step>) {
        let f = self.field;
        let mut rem: SVec = Vec::new();
        let mut steps = Vec::new();
        let mut start = 0;
        while start < w.len() {
            let t = w[start];
            match self.find_reducer(&t) {
                Some(k) => {
                    let l = self.basis[k].lead();
                    let m = l.mon.quotient_of(&t.mon).expect("reducer lead divides");
                    let c = f.div(t.coef, l.coef);
                    w = sub_mul(f, &self.order, &w[start..], c, &m, &self.basis[k].v);
                    start = 0;
                    if record {
                        steps.push(Step { k, mon: m, coef: c });
                    }
                }
                None => {
                    rem.push(t);
                    start += 1;
                }
            }
        }
        (rem, steps)
    }

    /// For a vector with known representation, the cofactor row implied by
    /// reduction steps: `Σ c·m·cof_k`.
    pub fn cofactor_of_steps(&self, steps: &[Step]) -> Vec<Polynomial> {
        let f = self.field;
        let mut acc = vec![Polynomial::zero(f); self.n_inputs];
        for s in steps {
            let row = self.basis[s.k].cof.as_ref().expect("tracking enabled");
            for (a, r) in acc.iter_mut().zip(row.iter()) {
                if !r.is_zero() {
                    *a = a.add_scaled(&r.mul_term(&s.mon, 1), s.coef);
                }
            }
        }
        acc
    }

    pub fn has_pending(&self, max_degree: Option<i32>) -> bool {
        match (self.pairs.first(), max_degree) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some((d, _, _)), Some(m)) => *d <= m,
        }
    }

    /// Processes all pairs of degree `<= max_degree` (or all pairs).
    pub fn run(&mut self, max_degree: Option<i32>) {
        let f = self.field;
        while self.has_pending(max_degree) {
            let (_, i, j) = self.pairs.pop_first().unwrap();
            let (li, lj) = (*self.basis[i].lead(), *self.basis[j].lead());
            let lcm = li.mon.lcm(&lj.mon);
            let mi = li.mon.quotient_of(&lcm).unwrap();
            let mj = lj.mon.quotient_of(&lcm).unwrap();
            let ai = f.inv(li.coef);
            let aj = f.inv(lj.coef);
            // S = ai·mi·g_i - aj·mj·g_j; the leading terms cancel
            let si = scale_svec(f, &self.basis[i].v, ai, &mi);
            let s = sub_mul(f, &self.order, &si, aj, &mj, &self.basis[j].v);
            let need_steps = self.track || self.record_schreyer;
            let (rem, steps) = self.reduce_recording(s, need_steps);

            if self.record_schreyer {
                let mut row: Vec<(usize, Polynomial)> = vec![
                    (i, Polynomial::term(f, mi, ai)),
                    (j, Polynomial::term(f, mj, f.neg(aj))),
                ];
                for st in &steps {
                    row.push((st.k, Polynomial::term(f, st.mon, f.neg(st.coef))));
                }
                if !rem.is_empty() {
                    row.push((self.basis.len(), Polynomial::term(f, Monomial::ONE, f.neg(1))));
                }
                self.schreyer_rows.push(merge_row(row));
            }

            let cof = if self.track {
                let ci = self.basis[i].cof.as_ref().unwrap();
                let cj = self.basis[j].cof.as_ref().unwrap();
                let red = self.cofactor_of_steps(&steps);
                let row: Vec<Polynomial> = ci
                    .iter()
                    .zip(cj.iter())
                    .zip(red.iter())
                    .map(|((a, b), r)| {
                        let x = a.mul_term(&mi, ai);
                        let x = x.add_scaled(&b.mul_term(&mj, 1), f.neg(aj));
                        x.add_scaled(r, f.neg(1))
                    })
                    .collect();
                Some(row)
            } else {
                None
            };

            if rem.is_empty() {
                if let Some(row) = cof {
                    if row.iter().any(|p| !p.is_zero()) {
                        self.input_syzygies.push(row);
                    }
                }
            } else {
                self.push(rem, cof);
            }
        }
    }

    /// Indices of basis elements whose leads are minimal (no other lead
    /// divides them; among equal leads the first is kept).
    pub fn minimal_lead_indices(&self) -> Vec<usize> {
        let n = self.basis.len();
        (0..n)
            .filter(|&i| {
                let li = self.basis[i].lead();
                !(0..n).any(|j| {
                    if j == i {
                        return false;
                    }
                    let lj = self.basis[j].lead();
                    lj.pos == li.pos && lj.mon.divides(&li.mon) && (lj.mon != li.mon || j < i)
                })
            })
            .collect()
    }

    /// Reduced, monic Gröbner basis in engine representation.
    pub fn reduced_basis(&self) -> Vec<SVec> {
        let keep = self.minimal_lead_indices();
        let mut red = Engine::new(self.field, self.order.clone());
        for &k in &keep {
            red.basis.push(Elem { v: self.basis[k].v.clone(), degree: self.basis[k].degree, cof: None });
        }
        let mut out = Vec::with_capacity(keep.len());
        for idx in 0..red.basis.len() {
            let v = red.basis[idx].v.clone();
            let head = v[0];
            // reduce the tail against the other minimal elements
            let mut others = Engine::new(self.field, self.order.clone());
            for (k, e) in red.basis.iter().enumerate() {
                if k != idx {
                    others.basis.push(e.clone());
                }
            }
            let tail = others.reduce(v[1..].to_vec());
            let inv = self.field.inv(head.coef);
            let mut g = vec![Term { mon: head.mon, pos: head.pos, coef: 1 }];
            g.extend(tail.into_iter().map(|t| Term { coef: self.field.mul(t.coef, inv), ..t }));
            out.push(g);
        }
        out
    }
}

fn merge_row(row: Vec<(usize, Polynomial)>) -> Vec<(usize, Polynomial)> {
    let mut out: Vec<(usize, Polynomial)> = Vec::new();
    let mut sorted = row;
    sorted.sort_by_key(|(k, _)| *k);
    for (k, p) in sorted {
        match out.last_mut() {
            Some((lk, lp)) if *lk == k => *lp = &*lp + &p,
            _ => out.push((k, p)),
        }
    }
    out.retain(|(_, p)| !p.is_zero());
    out
}
