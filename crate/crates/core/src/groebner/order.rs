use std::cmp::Ordering;

use crate::monomial::{Monomial, TermOrder};

/// How basis positions enter the comparison of module monomials `m·e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionRule {
    /// Total degree, then the monomial order, then position (lower index larger).
    TermOverPosition,
    /// Position first (lower index larger), then total degree and monomial order.
    PositionOverTerm,
    /// `m·e_i > n·e_j` iff `m·in(g_i) > n·in(g_j)` in `parent`, ties broken by
    /// `i < j`. `leads[i]` is the leading module monomial of `g_i`.
    Schreyer { leads: Vec<(Monomial, usize)>, parent: Box<ModuleOrder> },
}

/// A monomial order on a graded free module with the given generator degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    pub monomial: TermOrder,
    pub twists: Vec<i32>,
    pub rule: PositionRule,
}

impl ModuleOrder {
    pub fn top(monomial: TermOrder, twists: Vec<i32>) -> Self {
        ModuleOrder { monomial, twists, rule: PositionRule::TermOverPosition }
    }

    pub fn pot(monomial: TermOrder, twists: Vec<i32>) -> Self {
        ModuleOrder { monomial, twists, rule: PositionRule::PositionOverTerm }
    }

    pub fn schreyer(parent: &ModuleOrder, leads: Vec<(Monomial, usize)>) -> Self {
        let twists = leads.iter().map(|(m, p)| m.degree() as i32 + parent.twists[*p]).collect();
        ModuleOrder {
            monomial: parent.monomial,
            twists,
            rule: PositionRule::Schreyer { leads, parent: Box::new(parent.clone()) },
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    #[inline]
    pub fn compare(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match &self.rule {
            PositionRule::TermOverPosition => {
                let da = a.0.degree() as i32 + self.twists[a.1];
                let db = b.0.degree() as i32 + self.twists[b.1];
                da.cmp(&db)
                    .then_with(|| self.monomial.compare(a.0, b.0))
                    .then_with(|| b.1.cmp(&a.1))
            }
            PositionRule::PositionOverTerm => b.1.cmp(&a.1).then_with(|| {
                let da = a.0.degree() as i32 + self.twists[a.1];
                let db = b.0.degree() as i32 + self.twists[b.1];
                da.cmp(&db).then_with(|| self.monomial.compare(a.0, b.0))
            }),
            PositionRule::Schreyer { leads, parent } => {
                let (la, pa) = &leads[a.1];
                let (lb, pb) = &leads[b.1];
                parent
                    .compare((&a.0.mul(la), *pa), (&b.0.mul(lb), *pb))
                    .then_with(|| b.1.cmp(&a.1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_uses_twists_then_position() {
        let o = ModuleOrder::top(TermOrder::Grevlex, vec![0, 1]);
        let x0 = Monomial::var(0);
        // x0·e0 has degree 1, 1·e1 has degree 1; x0 > 1 in grevlex
        assert_eq!(o.compare((&x0, 0), (&Monomial::ONE, 1)), Ordering::Greater);
        assert_eq!(o.compare((&x0, 0), (&x0, 1)), Ordering::Less);
        assert_eq!(o.compare((&x0, 1), (&x0, 1)), Ordering::Equal);
    }

    #[test]
    fn pot_puts_position_first() {
        let o = ModuleOrder::pot(TermOrder::Grevlex, vec![0, 0]);
        let big = Monomial::new([0, 0, 0, 0, 5]);
        assert_eq!(o.compare((&Monomial::ONE, 0), (&big, 1)), Ordering::Greater);
    }
}
