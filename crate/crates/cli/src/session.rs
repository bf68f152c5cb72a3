//! Session files: a ring and a list of named ideals and modules.
//!
//! ```text
//! # comment
//! field 32003
//! vars x0 x1 x2 x3 x4
//! quadric x0*x1+x2*x3+x4^2
//! ideal C: x0, x4
//! ideal LL: link L by x0, x4
//! ideal SKEW: intersect L, M
//! module M: E0 + R(-1)^2 + E0(2)
//! module K: kernel SKEW
//! ```
//!
//! Ideal bodies are a polynomial list or one of `intersect A, B`,
//! `saturate A`, `link A by f, g`. Module bodies are a sum of named modules
//! with optional twist and multiplicity, or one of `kernel I` (the E-type
//! kernel), `quotient I` (`R/I`), `ideal I` (`I` as a module).
//! `R` is always defined; `L = (x0, x2, x4)` and `E0` are defined whenever
//! that line lies on the quadric.

use std::collections::BTreeMap;

use qacm::groebner::{intersect, saturate_irrelevant};
use qacm::liaison::ci_link;
use qacm::mcm::{construct_e0, CANONICAL_LINE};
use qacm::parse::parse_polynomial_list;
use qacm::resolution::etype_resolution;
use qacm::{GradedModule, Ideal, PrimeField, Ring};
use thiserror::Error;

pub const CANONICAL: &str = include_str!("../canonical.qacm");

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Core { line: usize, source: qacm::Error },
}

impl SessionError {
    /// The library error behind a failure, if any.
    pub fn core(&self) -> Option<&qacm::Error> {
        match self {
            SessionError::Core { source, .. } => Some(source),
            SessionError::Syntax { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Object {
    Ideal(Ideal),
    Module(GradedModule),
}

#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Ring,
    objects: BTreeMap<String, Object>,
}

impl Session {
    pub fn canonical() -> Self {
        Session::parse(CANONICAL).expect("the bundled session parses")
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.objects.keys().map(String::as_str)
    }

    pub fn parse(text: &str) -> Result<Self, SessionError> {
        let mut b = Builder::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            b.line(line, content)?;
        }
        b.finish()
    }
}

#[derive(Default)]
struct Builder {
    field: Option<PrimeField>,
    ring: Option<Ring>,
    objects: BTreeMap<String, Object>,
}

fn syntax(line: usize, message: impl Into<String>) -> SessionError {
    SessionError::Syntax { line, message: message.into() }
}

fn core(line: usize) -> impl Fn(qacm::Error) -> SessionError {
    move |source| SessionError::Core { line, source }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Builder {
    fn field(&self) -> PrimeField {
        self.field.unwrap_or_default()
    }

    fn line(&mut self, line: usize, content: &str) -> Result<(), SessionError> {
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "field" => {
                if self.ring.is_some() {
                    return Err(syntax(line, "`field` must come before the ring is used"));
                }
                let p: u64 = rest.parse().map_err(|_| syntax(line, format!("invalid characteristic `{rest}`")))?;
                self.field = Some(PrimeField::new(p).map_err(core(line))?);
            }
            "vars" => {
                let vars: Vec<&str> = rest.split_whitespace().collect();
                if vars != ["x0", "x1", "x2", "x3", "x4"] {
                    return Err(syntax(line, "variables must be exactly x0 x1 x2 x3 x4"));
                }
            }
            "quadric" => {
                if self.ring.is_some() {
                    return Err(syntax(line, "the quadric is already fixed"));
                }
                let q = qacm::parse::parse_polynomial(rest, self.field()).map_err(core(line))?;
                self.set_ring(line, Ring::quadric(q).map_err(core(line))?)?;
            }
            "ideal" | "module" => {
                let (name, body) =
                    rest.split_once(':').ok_or_else(|| syntax(line, format!("expected `{keyword} NAME: ...`")))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(syntax(line, format!("invalid name `{name}`")));
                }
                self.ensure_ring(line)?;
                if self.objects.contains_key(name) {
                    return Err(syntax(line, format!("`{name}` is already defined")));
                }
                let obj = if keyword == "ideal" {
                    Object::Ideal(self.ideal_body(line, body.trim())?)
                } else {
                    Object::Module(self.module_body(line, body.trim())?)
                };
                self.objects.insert(name.to_string(), obj);
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
        Ok(())
    }

    fn ensure_ring(&mut self, line: usize) -> Result<(), SessionError> {
        if self.ring.is_none() {
            self.set_ring(line, Ring::canonical_over(self.field()))?;
        }
        Ok(())
    }

    fn set_ring(&mut self, line: usize, ring: Ring) -> Result<(), SessionError> {
        self.objects.insert("R".into(), Object::Module(GradedModule::free(ring.clone(), vec![0])));
        let l = Ideal::parse(ring.clone(), CANONICAL_LINE).map_err(core(line))?;
        match construct_e0(&ring, &l) {
            Ok(e0) => {
                self.objects.insert("L".into(), Object::Ideal(l));
                self.objects.insert("E0".into(), Object::Module(e0));
            }
            Err(qacm::Error::LineNotOnQuadric(_)) => {}
            Err(e) => return Err(core(line)(e)),
        }
        self.ring = Some(ring);
        Ok(())
    }

    fn ring(&self) -> &Ring {
        self.ring.as_ref().expect("ring is set before objects")
    }

    fn lookup_ideal(&self, line: usize, name: &str) -> Result<&Ideal, SessionError> {
        match self.objects.get(name) {
            Some(Object::Ideal(i)) => Ok(i),
            Some(Object::Module(_)) => Err(syntax(line, format!("`{name}` is a module, not an ideal"))),
            None => Err(syntax(line, format!("unknown name `{name}`"))),
        }
    }

    fn lookup_module(&self, line: usize, name: &str) -> Result<&GradedModule, SessionError> {
        match self.objects.get(name) {
            Some(Object::Module(m)) => Ok(m),
            Some(Object::Ideal(_)) => Err(syntax(line, format!("`{name}` is an ideal, not a module"))),
            None => Err(syntax(line, format!("unknown name `{name}`"))),
        }
    }

    fn ideal_body(&self, line: usize, body: &str) -> Result<Ideal, SessionError> {
        let ring = self.ring().clone();
        let (head, tail) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let tail = tail.trim();
        match head {
            "intersect" => {
                let (a, b) = tail.split_once(',').ok_or_else(|| syntax(line, "expected `intersect A, B`"))?;
                let (a, b) = (self.lookup_ideal(line, a.trim())?, self.lookup_ideal(line, b.trim())?);
                intersect(a, b).map_err(core(line))
            }
            "saturate" => saturate_irrelevant(self.lookup_ideal(line, tail)?).map_err(core(line)),
            "link" => {
                let (a, fg) = tail.split_once(" by ").ok_or_else(|| syntax(line, "expected `link A by f, g`"))?;
                let i = self.lookup_ideal(line, a.trim())?;
                let fg = parse_polynomial_list(fg, ring.field()).map_err(core(line))?;
                let [f, g] = fg.as_slice() else {
                    return Err(syntax(line, "a link needs exactly two forms"));
                };
                Ok(ci_link(i, f, g).map_err(core(line))?.linked_ideal)
            }
            _ => Ideal::parse(ring, body).map_err(core(line)),
        }
    }

    fn module_body(&self, line: usize, body: &str) -> Result<GradedModule, SessionError> {
        let (head, tail) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let tail = tail.trim();
        match head {
            "kernel" => {
                let i = self.lookup_ideal(line, tail)?;
                Ok(etype_resolution(i).map_err(core(line))?.kernel)
            }
            "quotient" => Ok(GradedModule::cyclic(self.lookup_ideal(line, tail)?)),
            "ideal" => GradedModule::ideal(self.lookup_ideal(line, tail)?).map_err(core(line)),
            _ => {
                let mut acc: Option<GradedModule> = None;
                for term in body.split('+') {
                    let (name, twist, count) = parse_term(line, term.trim())?;
                    let m = self.lookup_module(line, name)?.twist(twist);
                    for _ in 0..count {
                        acc = Some(match acc {
                            None => m.clone(),
                            Some(a) => a.direct_sum(&m).map_err(core(line))?,
                        });
                    }
                }
                acc.ok_or_else(|| syntax(line, "empty module expression"))
            }
        }
    }

    fn finish(mut self) -> Result<Session, SessionError> {
        self.ensure_ring(0)?;
        Ok(Session { ring: self.ring.unwrap(), objects: self.objects })
    }
}

/// `NAME`, `NAME(t)`, `NAME^k` or `NAME(t)^k`.
fn parse_term(line: usize, term: &str) -> Result<(&str, i32, usize), SessionError> {
    let bad = || syntax(line, format!("invalid module term `{term}`"));
    let (base, count) = match term.split_once('^') {
        Some((b, k)) => (b.trim(), k.trim().parse::<usize>().map_err(|_| bad())?),
        None => (term, 1),
    };
    let (name, twist) = match base.split_once('(') {
        Some((n, t)) => {
            let t = t.strip_suffix(')').ok_or_else(bad)?;
            (n.trim(), t.trim().parse::<i32>().map_err(|_| bad())?)
        }
        None => (base, 0),
    };
    if !is_ident(name) || count == 0 {
        return Err(bad());
    }
    Ok((name, twist, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_ins() {
        let s = Session::canonical();
        for name in ["R", "L", "E0"] {
            assert!(s.get(name).is_some(), "{name}");
        }
    }

    #[test]
    fn terms() {
        assert_eq!(parse_term(1, "R(-1)^3").unwrap(), ("R", -1, 3));
        assert_eq!(parse_term(1, "E0").unwrap(), ("E0", 0, 1));
        assert_eq!(parse_term(1, "E0(2)").unwrap(), ("E0", 2, 1));
        assert!(parse_term(1, "E0(2").is_err());
        assert!(parse_term(1, "R^0").is_err());
    }

    #[test]
    fn sums_and_derived_ideals() {
        let s = Session::parse(
            "field 32003\nmodule M: E0 + R(-1)^2\nideal M2: x1, x3, x4\nideal SK: intersect L, M2\nideal LL: link L by x0, x4\n",
        )
        .unwrap();
        let Some(Object::Module(m)) = s.get("M") else { panic!() };
        assert_eq!(m.generator_degrees().len(), 6);
        let Some(Object::Ideal(ll)) = s.get("LL") else { panic!() };
        assert!(ll.equals(&Ideal::parse(s.ring.clone(), "x0, x3, x4").unwrap()).unwrap());
        assert!(matches!(s.get("SK"), Some(Object::Ideal(_))));
    }

    #[test]
    fn errors_carry_lines() {
        let err = Session::parse("field 32003\n\nideal A: x0, y1\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
        assert!(Session::parse("vars a b c d e\n").is_err());
        assert!(Session::parse("quadric x0^2 + x1^2\n").unwrap_err().core().is_some());
        assert!(Session::parse("module M: L\n").is_err());
        assert!(Session::parse("ideal R: x0\n").is_err());
    }

    #[test]
    fn non_canonical_quadric_drops_line_built_ins() {
        let s = Session::parse("quadric x0^2+x1^2+x2^2+x3^2+x4^2\n").unwrap();
        assert!(s.get("R").is_some());
        assert!(s.get("L").is_none());
    }
}
