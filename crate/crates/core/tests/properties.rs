//! Randomized identities over small charts. Each proptest case draws a seed
//! and builds its objects with the crate's own seeded sampler, so a failing
//! case is reproduced by its seed alone.

use omni_core::derivation::Derivation;
use omni_core::dirac::volume::{involutivity_check_j, jacobi_check};
use omni_core::dirac::BMapD;
use omni_core::jet::{membership_check, project, JForm};
use omni_core::multicontact::{kernel_at_point, nu_from_distribution, same_span};
use omni_core::omni::{jacobiator, twisted_jacobiator_expected, Bracket, OmniSection};
use omni_core::poly::Poly;
use omni_core::random::Sampler;
use omni_core::{ChartConfig, Rational};
use proptest::prelude::*;

type P = Poly<Rational>;

fn chart(m: usize, r: usize) -> ChartConfig {
    ChartConfig::new(m, r).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

/// `(seed, m, r, n)` with `m, r ∈ {1, 2}` and `1 ≤ n ≤ m + 1`.
fn setting() -> impl Strategy<Value = (u64, usize, usize, isize)> {
    (any::<u64>(), 1usize..=2, 1usize..=2).prop_flat_map(|(s, m, r)| (Just(s), Just(m), Just(r), 1..=(m as isize + 1)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>(), nvars in 1usize..=3) {
        let mut s = Sampler::new(seed, "ring", 0, 2);
        let (a, b, c): (P, P, P) = (s.poly(nvars), s.poly(nvars), s.poly(nvars));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        for i in 0..nvars {
            let lhs = (&a * &b).partial(i).unwrap();
            let rhs = &(&a.partial(i).unwrap() * &b) + &(&a * &b.partial(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        let pt = s.point::<Rational>(nvars);
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
    }

    #[test]
    fn exterior_calculus(seed in any::<u64>(), m in 1usize..=3, k in 0isize..=3, l in 0isize..=2) {
        let c = chart(m, 2);
        let mut s = Sampler::new(seed, "exterior", 0, 2);
        let a = s.scalar_form::<Rational>(c, k);
        let b = s.eform::<Rational>(c, l);
        let x: Vec<P> = (0..m).map(|_| s.poly(m)).collect();
        let sign = if k % 2 == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };

        prop_assert!(a.iota(&x).iota(&x).is_zero());
        prop_assert!(a.d().d().is_zero());
        prop_assert!(b.d().d().is_zero());
        prop_assert_eq!(a.wedge(&b).d(), a.d().wedge(&b).add(&a.wedge(&b.d()).scale(&sign)));
        prop_assert_eq!(a.wedge(&b).iota(&x), a.iota(&x).wedge(&b).add(&a.wedge(&b.iota(&x)).scale(&sign)));
        prop_assert_eq!(a.lie_vec(&x), a.d().iota(&x).add(&a.iota(&x).d()));
    }

    #[test]
    fn derivation_brackets((seed, m, r, _n) in setting()) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "brackets", 0, 2);
        let (d1, d2, d3): (Derivation<Rational>, _, _) = (s.derivation(c), s.derivation(c), s.derivation(c));
        prop_assert_eq!(d1.commutator(&d2), d2.commutator(&d1).scale(&Rational::from_integer((-1).into())));
        let jac = d1
            .commutator(&d2.commutator(&d3))
            .add(&d2.commutator(&d3.commutator(&d1)))
            .add(&d3.commutator(&d1.commutator(&d2)));
        prop_assert!(jac.is_zero());

        let f = s.poly::<Rational>(m);
        let nu = s.eform::<Rational>(c, 1);
        let lhs = nu.mul_fn(&f).lie(&d1);
        let rhs = nu.mul_fn(&f.directional(d1.symbol())).add(&nu.lie(&d1).mul_fn(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jet_cartan_calculus((seed, m, r, n) in setting()) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "jet", 0, 2);
        let mu: JForm<Rational> = s.jform(c, n);
        let d1 = s.derivation::<Rational>(c);
        let d2 = s.derivation::<Rational>(c);

        prop_assert_eq!(mu.jd().jiota(&d1).unwrap().add(&mu.jiota(&d1).unwrap().jd()), mu.jlie(&d1));
        prop_assert_eq!(mu.jd().jlie(&d1), mu.jlie(&d1).jd());
        let lhs = mu.jlie(&d2).jiota(&d1).unwrap().sub(&mu.jiota(&d1).unwrap().jlie(&d2));
        prop_assert_eq!(lhs, mu.jiota(&d2.commutator(&d1)).unwrap().neg());
        let id = Derivation::identity(c);
        prop_assert_eq!(mu.jd().jiota(&id).unwrap().add(&mu.jiota(&id).unwrap().jd()), mu.clone());
        prop_assert!(mu.jd().jd().is_zero());
    }

    #[test]
    fn jet_module_structure((seed, m, r, n) in setting(), k in 0isize..=2) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "module", 0, 2);
        let mu: JForm<Rational> = s.jform(c, n);
        let a = s.scalar_form::<Rational>(c, k);
        let b = s.scalar_form::<Rational>(c, 1);
        prop_assert_eq!(mu.jwedge(&a.wedge(&b)), mu.jwedge(&b).jwedge(&a));
        let f = s.poly::<Rational>(m);
        prop_assert_eq!(mu.mul_fn(&f), mu.jwedge(&omni_core::forms::ScalarForm::function(c, f)));
    }

    #[test]
    fn generic_layer_agrees((seed, m, r, n) in setting()) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "generic", 0, 2);
        let mu: JForm<Rational> = s.jform(c, n);
        let d = s.derivation::<Rational>(c);
        let g = mu.embed();

        prop_assert_eq!(mu.jd().embed(), g.ce_differential());
        prop_assert_eq!(mu.jiota(&d).unwrap().embed(), g.gen_iota(&d).unwrap());
        prop_assert_eq!(mu.jlie(&d).embed(), g.gen_lie(&d));
        prop_assert_eq!(project(&g).unwrap(), mu.clone());
        let membership = membership_check(&g);
        prop_assert!(membership.holds());
        prop_assert_eq!(&membership.lambda, mu.mu1());
    }

    #[test]
    fn gauge_complex_is_acyclic(seed in any::<u64>(), m in 1usize..=2, r in 1usize..=2, k in 0isize..=4) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "acyclic", 0, 1);
        let g = s.genform::<Rational>(c, k);
        prop_assert!(g.homotopy_check());
        prop_assert!(g.ce_differential().ce_differential().is_zero());
        let d1 = s.derivation::<Rational>(c);
        let d2 = s.derivation::<Rational>(c);
        if k >= 1 {
            prop_assert_eq!(g.ce_differential().gen_iota(&d1).unwrap().add(&g.gen_iota(&d1).unwrap().ce_differential()), g.gen_lie(&d1));
            let lhs = g.gen_lie(&d2).gen_iota(&d1).unwrap().sub(&g.gen_iota(&d1).unwrap().gen_lie(&d2));
            prop_assert_eq!(lhs, g.gen_iota(&d2.commutator(&d1)).unwrap().neg());
        }
    }

    #[test]
    fn omni_axioms((seed, m, r, n) in setting()) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "omni", 0, 1);
        let (e1, e2, e3): (OmniSection<Rational>, _, _) = (s.section(c, n), s.section(c, n), s.section(c, n));
        prop_assert!(jacobiator(Bracket::Plain, &e1, &e2, &e3).unwrap().is_zero());
        let bracket = e1.dorfman(&e2).unwrap();
        prop_assert_eq!(bracket.anchor(), &e1.anchor().commutator(e2.anchor()));

        let f = s.poly::<Rational>(m);
        let lhs = e1.dorfman(&e2.mul_fn(&f)).unwrap();
        let rhs = e1.dorfman(&e2).unwrap().mul_fn(&f).add(&e2.mul_fn(&f.directional(e1.anchor().symbol()))).unwrap();
        prop_assert_eq!(lhs, rhs);

        let lhs = e2.pairing(&e3).unwrap().jlie(e1.anchor());
        let rhs = e1.dorfman(&e2).unwrap().pairing(&e3).unwrap().add(&e2.pairing(&e1.dorfman(&e3).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);

        let selfb = e1.dorfman(&e1).unwrap();
        prop_assert!(selfb.anchor().is_zero());
        prop_assert_eq!(selfb.jpart(), &e1.pairing(&e1).unwrap().jd());
        prop_assert_eq!(e1.dorfman(&e2).unwrap(), e1.dorfman_expanded(&e2).unwrap());
    }

    #[test]
    fn twisted_jacobiator(seed in any::<u64>(), r in 1usize..=2, n in 1isize..=2) {
        let c = chart(3, r);
        let mut s = Sampler::new(seed, "twisted", 0, 1);
        let omega: JForm<Rational> = s.jform(c, n + 2);
        let (e1, e2, e3): (OmniSection<Rational>, _, _) = (s.section(c, n), s.section(c, n), s.section(c, n));
        let actual = jacobiator(Bracket::Twisted(&omega), &e1, &e2, &e3).unwrap();
        prop_assert_eq!(actual, twisted_jacobiator_expected(&omega, &e1, &e2, &e3).unwrap());
        let exact = s.jform::<Rational>(c, n + 1).jd();
        prop_assert!(jacobiator(Bracket::Twisted(&exact), &e1, &e2, &e3).unwrap().is_zero());
    }

    #[test]
    fn closed_forms_have_involutive_graphs((seed, m, r, n) in setting()) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "graph", 0, 2);
        let mu: JForm<Rational> = s.jform(c, n + 1);
        let b = BMapD::from_form(&mu).unwrap();
        prop_assert!(b.isotropy_check().holds);
        prop_assert_eq!(b.reconstruct().unwrap(), mu.clone());
        let closed = mu.jd().is_zero();
        prop_assert_eq!(b.involutivity_check().unwrap().holds, closed);

        let exact = s.jform::<Rational>(c, n).jd();
        let primitive = exact.jiota(&Derivation::identity(c)).unwrap();
        prop_assert_eq!(primitive.jd(), exact);
    }

    #[test]
    fn volume_structures_agree(seed in any::<u64>(), m in 1usize..=2, r in 2usize..=3) {
        let c = chart(m, r);
        let mut s = Sampler::new(seed, "volume", 0, 0);
        let z = s.constant_zstructure::<Rational>(c);
        let jac = jacobi_check(&z);
        prop_assert_eq!(involutivity_check_j(&z, m as isize + 1).unwrap().holds, jac.holds);
        if r == 2 {
            prop_assert!(jac.holds);
        }
    }

    #[test]
    fn distribution_roundtrip(seed in any::<u64>(), count in 0usize..=3) {
        let c = chart(3, 1);
        let mut s = Sampler::new(seed, "distribution", 0, 2);
        let dist = s.distribution::<Rational>(c, count);
        let p = s.point::<Rational>(3);
        let q = nu_from_distribution(&dist, &p).unwrap();
        prop_assert_eq!(q.form.degree(), 3 - count as isize);
        prop_assert!(same_span(&kernel_at_point(&q.form, &p).unwrap(), &dist.values_at(&p).unwrap(), 3));
    }
}
