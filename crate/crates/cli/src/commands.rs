use qacm::free::{FreeModule, Vector};
use qacm::hilbert::{acm_curve_check, cohomology_table, degree_genus, mcm_check, regularity as module_regularity};
use qacm::liaison::{ci_link, fingerprint, parity_invariant, Parity};
use qacm::mcm::{chern1_and_dual, construct_e0, decompose_acm, extract_mf, verify_periodicity, Profile, CANONICAL_LINE};
use qacm::resolution::{etype_resolution, pd_s, BettiTable};
use qacm::{Error, GradedModule, GroebnerBasis, Ideal, Monomial, Polynomial, TermOrder};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::session::{Object, Session};
use crate::CliError;

/// Number of random probes behind every randomized self-check.
pub const SPOT_CHECKS: usize = 8;

pub struct Context<'a> {
    pub session: &'a Session,
    pub about: Option<&'a str>,
    pub lo: i32,
    pub hi: i32,
    pub seed: u64,
}

/// One command's output in both formats.
pub struct Report {
    pub tsv: String,
    pub json: Value,
}

/// Key/value TSV with a header line.
#[derive(Default)]
struct Kv(Vec<(String, String)>);

impl Kv {
    fn put(&mut self, k: impl Into<String>, v: impl ToString) -> &mut Self {
        self.0.push((k.into(), v.to_string()));
        self
    }

    fn betti(&mut self, b: &BettiTable) -> &mut Self {
        for (i, col) in b.columns.iter().enumerate() {
            let cells: Vec<String> = col.iter().map(|(d, k)| format!("{d}^{k}")).collect();
            self.put(format!("F{i}"), cells.join(" "));
        }
        self
    }

    fn render(&self) -> String {
        let mut out = String::from("key\tvalue\n");
        for (k, v) in &self.0 {
            out.push_str(&format!("{k}\t{v}\n"));
        }
        out
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    if xs.is_empty() {
        "-".to_string()
    } else {
        xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn poly_list(ps: &[Polynomial]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn poly_strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn betti_json(b: &BettiTable) -> Value {
    json!(b.columns.iter().map(|c| c.iter().map(|(d, k)| json!({"degree": d, "count": k})).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn profile_json(p: &Profile) -> Value {
    json!({"lo": p.lo, "hilbert": p.hilbert, "generators": p.generators, "relations": p.relations})
}

/// `E0(t)` and `R(t)` terms in the session grammar.
fn term(name: &str, t: i32) -> String {
    if t == 0 {
        name.to_string()
    } else {
        format!("{name}({t})")
    }
}

impl Context<'_> {
    fn name(&self) -> Result<&str, CliError> {
        self.about.ok_or_else(|| CliError::Usage("this command needs --about NAME".into()))
    }

    fn object(&self, name: &str) -> Result<&Object, CliError> {
        self.session.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.session.names().collect();
            CliError::Usage(format!("unknown name `{name}` (defined: {})", known.join(", ")))
        })
    }

    fn ideal_named(&self, name: &str) -> Result<&Ideal, CliError> {
        match self.object(name)? {
            Object::Ideal(i) => Ok(i),
            Object::Module(_) => Err(CliError::Usage(format!("`{name}` is a module; this command needs an ideal"))),
        }
    }

    fn ideal(&self) -> Result<&Ideal, CliError> {
        self.ideal_named(self.name()?)
    }

    /// A module, or an ideal regarded as a submodule of the ring.
    fn module(&self) -> Result<GradedModule, CliError> {
        match self.object(self.name()?)? {
            Object::Module(m) => Ok(m.clone()),
            Object::Ideal(i) => Ok(GradedModule::ideal(i)?),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.next_u32() % self.session.ring.field().characteristic()
    }

    /// A random homogeneous vector of degree `d` in `free`.
    fn random_vector(&self, rng: &mut ChaCha8Rng, free: &FreeModule, d: i32) -> Vector {
        let f = self.session.ring.field();
        let comps = free
            .twists
            .iter()
            .map(|&a| {
                if d < a {
                    return Polynomial::zero(f);
                }
                let mons = Monomial::all_of_degree((d - a) as u32);
                let terms: Vec<(Monomial, u32)> = (0..3)
                    .map(|_| (mons[rng.next_u32() as usize % mons.len()], self.random_scalar(rng)))
                    .collect();
                Polynomial::from_terms(f, terms)
            })
            .collect();
        Vector::new(comps)
    }

    pub fn gb(&self) -> Result<Report, CliError> {
        let f = self.session.ring.field();
        let (free, gens) = match self.object(self.name()?)? {
            Object::Ideal(i) => {
                let gens = i.s_gens().into_iter().map(|g| Vector::new(vec![g])).collect();
                (FreeModule::new(vec![0]), gens)
            }
            Object::Module(m) => {
                let p = m.s_presentation();
                (p.target().clone(), p.columns().to_vec())
            }
        };
        let gb = GroebnerBasis::compute(f, &free, &gens, TermOrder::Grevlex)?;
        // reduction is linear: NF(a·u + b·w) = a·NF(u) + b·NF(w)
        let mut rng = self.rng();
        let top = free.twists.iter().copied().max().unwrap_or(0) + 2;
        for _ in 0..SPOT_CHECKS {
            let u = self.random_vector(&mut rng, &free, top);
            let w = self.random_vector(&mut rng, &free, top);
            let (a, b) = (Polynomial::constant(f, self.random_scalar(&mut rng) as i64), Polynomial::constant(f, 1));
            let lhs = gb.normal_form(&u.scale_poly(&a).add(&w.scale_poly(&b)))?;
            let rhs = gb.normal_form(&u)?.scale_poly(&a).add(&gb.normal_form(&w)?);
            if lhs != rhs {
                return Err(Error::Invariant("normal form is not linear".into()).into());
            }
        }
        let elements: Vec<String> = gb.elements().iter().map(|v| render_element(v, free.rank())).collect();
        let mut tsv = String::from("i\telement\n");
        for (i, e) in elements.iter().enumerate() {
            tsv.push_str(&format!("{i}\t{e}\n"));
        }
        Ok(Report {
            tsv,
            json: json!({"ambient": free.twists, "order": "grevlex", "elements": elements, "spot_checks": SPOT_CHECKS}),
        })
    }

    pub fn etype(&self) -> Result<Report, CliError> {
        let et = etype_resolution(self.ideal()?)?;
        let k = et.kernel.minimal();
        let exact = et.is_exact_on(self.lo, self.hi)?;
        let chern = match chern1_and_dual(&et.kernel, Some((&et, 0))) {
            Ok(c) => Some(c),
            Err(Error::RankMismatch { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let mut kv = Kv::default();
        kv.put("generators", poly_list(&et.generators))
            .put("l_twists", list(&et.l.twists))
            .put("kernel_generators", list(k.generator_degrees()))
            .put("kernel_relations", list(k.relation_degrees()))
            .put("exact", format!("{exact} on {}..{}", self.lo, self.hi))
            .put("c1", chern.as_ref().map_or("-".into(), |c| c.c1.to_string()))
            .put("dual_twist", chern.as_ref().map_or("-".into(), |c| c.dual_twist.to_string()));
        Ok(Report {
            tsv: kv.render(),
            json: json!({
                "generators": poly_strings(&et.generators),
                "l_twists": et.l.twists,
                "kernel_generators": k.generator_degrees(),
                "kernel_relations": k.relation_degrees(),
                "exact": exact,
                "lo": self.lo,
                "hi": self.hi,
                "c1": chern.as_ref().map(|c| c.c1),
                "dual_twist": chern.as_ref().map(|c| c.dual_twist),
            }),
        })
    }

    pub fn hilbert(&self) -> Result<Report, CliError> {
        let m = self.module()?;
        let data = m.hilbert(self.lo, self.hi)?;
        let (poly, stab) = match data.polynomial() {
            Ok(p) => (Some(p), data.stabilization_degree().ok()),
            Err(Error::WindowTooShort { .. }) => (None, None),
            Err(e) => return Err(e.into()),
        };
        let mut tsv = String::from("n\th0\n");
        for (k, n) in (self.lo..=self.hi).enumerate() {
            tsv.push_str(&format!("{n}\t{}\n", data.values[k]));
        }
        let polynomial = poly.map(|p| json!({"binomial": p.binomial, "expanded": p.to_string()}));
        Ok(Report {
            tsv,
            json: json!({
                "lo": self.lo,
                "hi": self.hi,
                "values": data.values,
                "polynomial": polynomial,
                "stabilization_degree": stab,
            }),
        })
    }

    pub fn cohomology_table(&self) -> Result<Report, CliError> {
        let t = cohomology_table(&self.module()?, self.lo, self.hi)?;
        Ok(Report { tsv: t.to_tsv(), json: serde_json::to_value(&t).expect("table serializes") })
    }

    pub fn acm_check(&self) -> Result<Report, CliError> {
        let c = acm_curve_check(self.ideal()?)?;
        let mut kv = Kv::default();
        kv.put("acm", c.acm).put("saturated", c.saturated).put("pd_s", c.pd_s).betti(&c.betti);
        Ok(Report {
            tsv: kv.render(),
            json: json!({"acm": c.acm, "saturated": c.saturated, "pd_s": c.pd_s, "betti": betti_json(&c.betti)}),
        })
    }

    pub fn mcm_check(&self) -> Result<Report, CliError> {
        let c = mcm_check(&self.module()?)?;
        let mut kv = Kv::default();
        kv.put("mcm", c.mcm)
            .put("pd_s", c.pd_s)
            .put("hilbert_degree", c.hilbert_degree.map_or("-".into(), |d| d.to_string()))
            .betti(&c.betti);
        Ok(Report {
            tsv: kv.render(),
            json: json!({"mcm": c.mcm, "pd_s": c.pd_s, "hilbert_degree": c.hilbert_degree, "betti": betti_json(&c.betti)}),
        })
    }

    pub fn regularity(&self) -> Result<Report, CliError> {
        let m = self.module()?;
        let reg = module_regularity(&m)?;
        let pd = pd_s(&m)?;
        let mut kv = Kv::default();
        kv.put("regularity", reg).put("pd_s", pd);
        Ok(Report { tsv: kv.render(), json: json!({"regularity": reg, "pd_s": pd}) })
    }

    pub fn construct_e0(&self, line: Option<&str>) -> Result<Report, CliError> {
        let ring = &self.session.ring;
        let text = line.unwrap_or(CANONICAL_LINE);
        let l = Ideal::parse(ring.clone(), text)?;
        let e0 = construct_e0(ring, &l)?;
        let emb = e0.embedding().ok_or_else(|| Error::Invariant("E0 was built without an embedding".into()))?;
        let gens: Vec<String> = emb.generators.iter().map(ToString::to_string).collect();
        let values = e0.hilbert_values(self.lo, self.hi)?;
        let mut kv = Kv::default();
        kv.put("line", &l)
            .put("ambient", list(&emb.ambient.twists))
            .put("generators", gens.join("; "))
            .put("generator_degrees", list(e0.generator_degrees()))
            .put("relation_degrees", list(e0.relation_degrees()))
            .put(format!("h0 {}..{}", self.lo, self.hi), list(&values));
        Ok(Report {
            tsv: kv.render(),
            json: json!({
                "line": l.to_string(),
                "ambient": emb.ambient.twists,
                "generators": gens,
                "generator_degrees": e0.generator_degrees(),
                "relation_degrees": e0.relation_degrees(),
                "lo": self.lo,
                "hi": self.hi,
                "h0": values,
            }),
        })
    }

    pub fn mf(&self) -> Result<Report, CliError> {
        let mf = extract_mf(&self.module()?)?;
        let f = self.session.ring.field();
        let mut rng = self.rng();
        for _ in 0..SPOT_CHECKS {
            let mut pt = [0u32; 5];
            pt.iter_mut().for_each(|x| *x = self.random_scalar(&mut rng));
            let eval = |m: &qacm::GradedMap| -> Vec<Vec<u32>> {
                m.rows().iter().map(|r| r.components().iter().map(|p| p.evaluate(&pt)).collect()).collect()
            };
            let (a, b) = (eval(&mf.a), eval(&mf.b));
            let qv = mf.q.evaluate(&pt);
            let n = a.len();
            for i in 0..n {
                for j in 0..n {
                    let ab = (0..n).fold(0, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])));
                    let ba = (0..n).fold(0, |acc, k| f.add(acc, f.mul(b[i][k], a[k][j])));
                    let want = if i == j { qv } else { 0 };
                    if ab != want || ba != want {
                        return Err(Error::Invariant("A·B differs from q·Id at a sample point".into()).into());
                    }
                }
            }
        }
        let wire = mf.to_json();
        let mut kv = Kv::default();
        kv.put("size", mf.size()).put("free", mf.free).put("free_rank", mf.free_rank).put("spot_checks", SPOT_CHECKS);
        kv.put("A.source", list(&wire.a.source)).put("A.target", list(&wire.a.target));
        for (i, row) in wire.a.rows.iter().enumerate() {
            kv.put(format!("A.{i}"), row.join("\t"));
        }
        kv.put("B.source", list(&wire.b.source)).put("B.target", list(&wire.b.target));
        for (i, row) in wire.b.rows.iter().enumerate() {
            kv.put(format!("B.{i}"), row.join("\t"));
        }
        Ok(Report {
            tsv: kv.render(),
            json: json!({"factorization": wire, "spot_checks": SPOT_CHECKS}),
        })
    }

    pub fn periodicity(&self) -> Result<Report, CliError> {
        let r = verify_periodicity(&self.module()?, self.lo, self.hi)?;
        let mut kv = Kv::default();
        kv.put("holds", r.holds).put("free_summands", list(&r.free_summands));
        for (name, p) in [
            ("syz1", &r.syz1),
            ("expected_syz1", &r.expected_syz1),
            ("syz2", &r.syz2),
            ("expected_syz2", &r.expected_syz2),
        ] {
            kv.put(format!("{name}.hilbert"), list(&p.hilbert))
                .put(format!("{name}.generators"), list(&p.generators))
                .put(format!("{name}.relations"), list(&p.relations));
        }
        Ok(Report {
            tsv: kv.render(),
            json: json!({
                "holds": r.holds,
                "free_summands": r.free_summands,
                "syz1": profile_json(&r.syz1),
                "expected_syz1": profile_json(&r.expected_syz1),
                "syz2": profile_json(&r.syz2),
                "expected_syz2": profile_json(&r.expected_syz2),
            }),
        })
    }

    pub fn decompose(&self) -> Result<Report, CliError> {
        let d = decompose_acm(&self.module()?, self.lo, self.hi)?;
        let summands: Vec<String> = d
            .e0_twists
            .iter()
            .map(|&a| term("E0", -a))
            .chain(d.free_twists.iter().map(|&b| term("R", -b)))
            .collect();
        let mut kv = Kv::default();
        kv.put("free_twists", list(&d.free_twists))
            .put("e0_twists", list(&d.e0_twists))
            .put("summands", if summands.is_empty() { "0".into() } else { summands.join(" + ") })
            .put("residual", d.residual.as_deref().unwrap_or("none"));
        Ok(Report {
            tsv: kv.render(),
            json: json!({
                "free_twists": d.free_twists,
                "e0_twists": d.e0_twists,
                "summands": summands,
                "residual": d.residual,
            }),
        })
    }

    pub fn link(&self, ci: &str) -> Result<Report, CliError> {
        let fg = qacm::parse::parse_polynomial_list(ci, self.session.ring.field())?;
        let [f, g] = fg.as_slice() else {
            return Err(CliError::Usage("--ci needs exactly two forms, e.g. --ci \"x0,x4\"".into()));
        };
        let r = ci_link(self.ideal()?, f, g)?;
        let check = format!("{} + {} = {}", r.degree, r.linked_degree, r.degree + r.linked_degree);
        let mut kv = Kv::default();
        kv.put("linked_ideal", &r.linked_ideal)
            .put("ci_degrees", format!("{},{}", r.ci_degrees.0, r.ci_degrees.1))
            .put("degree_check", &check)
            .put("ci_degree", r.ci_degree)
            .put("additive", r.additive);
        Ok(Report {
            tsv: kv.render(),
            json: json!({
                "linked_ideal": poly_strings(r.linked_ideal.gens()),
                "ci_degrees": [r.ci_degrees.0, r.ci_degrees.1],
                "degree": r.degree,
                "linked_degree": r.linked_degree,
                "ci_degree": r.ci_degree,
                "additive": r.additive,
            }),
        })
    }

    fn class_of(&self, name: &str) -> Result<(Vec<i32>, Parity), CliError> {
        let i = self.ideal_named(name)?;
        Ok((fingerprint(i)?.e0_shifts, parity_invariant(i)?))
    }

    pub fn fingerprint(&self) -> Result<Report, CliError> {
        let (shifts, parity) = self.class_of(self.name()?)?;
        let mut kv = Kv::default();
        kv.put("e0_shifts", list(&shifts)).put("ci_class", shifts.is_empty()).put("parity", parity_name(parity));
        Ok(Report {
            tsv: kv.render(),
            json: json!({"e0_shifts": shifts, "ci_class": shifts.is_empty(), "parity": parity}),
        })
    }

    pub fn same_class(&self, other: &str) -> Result<Report, CliError> {
        let (a, pa) = self.class_of(self.name()?)?;
        let (b, pb) = self.class_of(other)?;
        let same = a == b;
        let mut kv = Kv::default();
        kv.put("same_class", same)
            .put("e0_shifts", list(&a))
            .put("other_e0_shifts", list(&b))
            .put("parity", parity_name(pa))
            .put("other_parity", parity_name(pb));
        Ok(Report {
            tsv: kv.render(),
            json: json!({"same_class": same, "e0_shifts": a, "other_e0_shifts": b, "parity": pa, "other_parity": pb}),
        })
    }

    pub fn degree_genus(&self) -> Result<Report, CliError> {
        let (d, g) = degree_genus(self.ideal()?)?;
        let mut kv = Kv::default();
        kv.put("degree", d).put("genus", g);
        Ok(Report { tsv: kv.render(), json: json!({"degree": d, "genus": g}) })
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn render_element(v: &Vector, rank: usize) -> String {
    if rank == 1 {
        v.get(0).to_string()
    } else {
        v.to_string()
    }
}
