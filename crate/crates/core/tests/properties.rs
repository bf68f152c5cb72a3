mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use qacm::free::{FreeModule, GradedMap, Vector};
use qacm::groebner::saturate_irrelevant;
use qacm::liaison::{ci_link, LiaisonFingerprint};
use qacm::mcm::{construct_e0_canonical, decompose_acm, extract_mf};
use qacm::parse::parse_polynomial;
use qacm::{GradedModule, GroebnerBasis, Ideal, Monomial, Polynomial, PrimeField, Ring, TermOrder};

fn field() -> PrimeField {
    PrimeField::default()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn monomial(max_deg: u16) -> impl Strategy<Value = Monomial> {
    proptest::array::uniform5(0..=max_deg).prop_map(Monomial::new)
}

fn monomial_of_degree(d: u32) -> impl Strategy<Value = Monomial> {
    let all = Monomial::all_of_degree(d);
    (0..all.len()).prop_map(move |i| all[i])
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    let p = field().characteristic();
    proptest::collection::vec((monomial(3), 0..p), 0..6).prop_map(|t| Polynomial::from_terms(field(), t))
}

fn form(d: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let p = field().characteristic();
    proptest::collection::vec((monomial_of_degree(d), 1..p), 1..=max_terms)
        .prop_map(|t| Polynomial::from_terms(field(), t))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn forms() -> impl Strategy<Value = Vec<Polynomial>> {
    proptest::collection::vec((1u32..=2).prop_flat_map(|d| form(d, 3)), 1..4)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(field()), a.clone());
    }

    #[test]
    fn parse_render_round_trip(a in polynomial()) {
        prop_assert_eq!(parse_polynomial(&a.to_string(), field()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in polynomial(), b in polynomial(), pt in proptest::array::uniform5(0u32..32003)) {
        let f = field();
        prop_assert_eq!((&a * &b).evaluate(&pt), f.mul(a.evaluate(&pt), b.evaluate(&pt)));
        prop_assert_eq!((&a + &b).evaluate(&pt), f.add(a.evaluate(&pt), b.evaluate(&pt)));
    }

    #[test]
    fn grevlex_is_a_monomial_order(a in monomial(4), b in monomial(4), c in monomial(4)) {
        let o = TermOrder::Grevlex;
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
        prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
        prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), o.compare(&a, &b));
        if a.degree() != b.degree() {
            prop_assert_eq!(o.compare(&a, &b), a.degree().cmp(&b.degree()));
        }
        prop_assert_eq!(a.cmp(&b), o.compare(&a, &b));
        if o.compare(&a, &b) == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn groebner_bases_are_canonical(gens in forms(), perm in any::<u64>(), scale in 1u32..32003) {
        let f = field();
        let gb = GroebnerBasis::ideal(f, &gens, TermOrder::Grevlex).unwrap();
        prop_assert!(gb.satisfies_buchberger_criterion());
        for g in &gens {
            prop_assert!(gb.contains_poly(g).unwrap());
        }
        let mut other: Vec<Polynomial> = gens.iter().map(|g| g.scale(scale)).collect();
        other.rotate_left((perm as usize) % gens.len());
        if gens.len() > 1 {
            let extra = &other[0] + &other[other.len() - 1];
            if extra.is_homogeneous() && !extra.is_zero() {
                other.push(extra);
            }
        }
        let gb2 = GroebnerBasis::ideal(f, &other, TermOrder::Grevlex).unwrap();
        prop_assert!(gb.same_submodule(&gb2));
        prop_assert_eq!(gb.polynomials(), gb2.polynomials());
    }

    #[test]
    fn saturation_is_idempotent(gens in forms(), k in 0u32..2) {
        let s = Ring::polynomial(field());
        let mut i = Ideal::new(s.clone(), gens).unwrap();
        for _ in 0..k {
            i = i.product(&Ideal::irrelevant(s.clone())).unwrap();
        }
        let sat = saturate_irrelevant(&i).unwrap();
        prop_assert!(sat.contains_ideal(&i).unwrap());
        prop_assert!(saturate_irrelevant(&sat).unwrap().equals(&sat).unwrap());
    }

    #[test]
    fn minimize_preserves_hilbert_function(
        rels in proptest::collection::vec(form(1, 2), 1..3),
        mix in proptest::collection::vec(0u32..32003, 4),
    ) {
        // coker of a presentation padded with a unit column and a mixed basis
        let f = field();
        let ring = Ring::canonical();
        let target = FreeModule::new(vec![0, 1, 1]);
        let mut cols: Vec<Vector> = rels
            .iter()
            .map(|r| Vector::new(vec![r.clone(), Polynomial::zero(f), Polynomial::constant(f, mix[0] as i64)]))
            .filter(|v| v.is_homogeneous_in(&target))
            .collect();
        cols.push(Vector::new(vec![
            Polynomial::zero(f),
            Polynomial::constant(f, 1 + mix[1] as i64 % 7),
            Polynomial::constant(f, mix[2] as i64),
        ]));
        let map = GradedMap::from_columns(f, target, cols);
        let m = GradedModule::from_presentation(ring.clone(), map).unwrap();
        let min = m.minimal();
        prop_assert!(!min.presentation().has_nonzero_constant_entry());
        prop_assert_eq!(m.hilbert_values(-1, 5).unwrap(), min.hilbert_values(-1, 5).unwrap());
        for n in -1..=5 {
            prop_assert_eq!(min.hilbert_values(n, n).unwrap()[0], common::module_dim(&m, n));
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn decomposition_is_coherent_with_twists(
        t in -2i32..=2,
        frees in proptest::collection::vec(-1i32..=3, 0..3),
        extra in proptest::option::of(-1i32..=1),
    ) {
        let ring = Ring::canonical();
        let e0 = construct_e0_canonical();
        let mut m = e0.twist(t);
        for &b in &frees {
            m = m.direct_sum(&GradedModule::free(ring.clone(), vec![b])).unwrap();
        }
        if let Some(s) = extra {
            m = m.direct_sum(&e0.twist(s)).unwrap();
        }
        let d = decompose_acm(&m, -2, 10).unwrap();
        prop_assert!(d.residual.is_none());
        let mut want_e0: Vec<i32> = std::iter::once(-t).chain(extra.map(|s| -s)).collect();
        want_e0.sort_unstable();
        let mut want_free = frees.clone();
        want_free.sort_unstable();
        prop_assert_eq!(&d.e0_twists, &want_e0);
        prop_assert_eq!(&d.free_twists, &want_free);

        // the fingerprint ignores free summands and a uniform twist
        let fp = LiaisonFingerprint::from_report(&d).unwrap();
        let shifted = LiaisonFingerprint::from_report(&decompose_acm(&m.twist(1), -2, 10).unwrap()).unwrap();
        prop_assert_eq!(&fp, &shifted);
        let bare = match extra {
            Some(s) => e0.twist(t).direct_sum(&e0.twist(s)).unwrap(),
            None => e0.twist(t),
        };
        prop_assert_eq!(fp, LiaisonFingerprint::from_report(&decompose_acm(&bare, -2, 10).unwrap()).unwrap());

        let mf = extract_mf(&m).unwrap();
        prop_assert!(mf.verify());
        prop_assert_eq!(mf.size() - mf.free_rank, 4 * want_e0.len());
    }

    #[test]
    fn linking_is_an_involution(c in proptest::array::uniform6(0u32..32003), quadratic in any::<bool>()) {
        let ring = Ring::canonical();
        let f = field();
        let line = Ideal::parse(ring.clone(), "x0, x2, x4").unwrap();
        let lin = |a: u32, b: u32, k: u32| {
            let p = Polynomial::from_terms(
                f,
                [(Monomial::var(0), a), (Monomial::var(2), b), (Monomial::var(4), k)],
            );
            if p.is_zero() { ring.var(0) } else { p }
        };
        let g1 = lin(c[0], c[1], c[2]);
        let mut g2 = lin(c[3], c[4], c[5]);
        if quadratic {
            g2 = &g2 * &ring.var(1);
        }
        match ci_link(&line, &g1, &g2) {
            Ok(res) => {
                prop_assert!(res.additive);
                let back = ci_link(&res.linked_ideal, &g1, &g2).unwrap();
                prop_assert!(back.linked_ideal.equals(&line).unwrap());
                prop_assert_eq!(back.linked_degree, 1);
            }
            Err(qacm::Error::NotRegularSequence(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
