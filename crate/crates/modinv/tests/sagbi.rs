use modinv::fj::*;
use modinv::minors::*;
use modinv::sagbi::*;
use modinv::{FieldContext, Monomial, Polynomial};

fn f3() -> FieldContext {
    FieldContext::new(3, 4).unwrap()
}

fn ess_seed(f: &FieldContext, seed: u64) -> (modinv::action::RepMatrix, SubalgebraBasis) {
    let m = sample_in_stratum(StratumLabel::EssGeneric, f, seed).unwrap();
    let t = GammaTable::new(&m);
    let b = SubalgebraBasis::from_named(
        f,
        vec![
            ("x".into(), Polynomial::x(f)),
            ("f1".into(), fd(&t, 12345)),
            ("f2".into(), build_f2_with(&t).unwrap()),
            ("Nz".into(), m.norm_z()),
        ],
    )
    .unwrap();
    (m, b)
}

#[test]
fn ess_discovery_p3() {
    let f = f3();
    let (m, seed) = ess_seed(&f, 1);
    let c = sagbi_divide_by_x(&seed, default_bound(3), 5).unwrap();
    assert!(c.complete);
    let mut d = c.basis.degrees();
    d.sort();
    assert_eq!(d, vec![1, 9, 15, 29, 81]);
    assert_eq!(relation_degrees(&c.basis, default_bound(3)), vec![45, 87]);
    for g in c.basis.elements() {
        assert!(m.is_invariant(g));
    }
}

#[test]
fn layered_norm_matches_orbit_product() {
    let f = f3();
    for label in [StratumLabel::EssGeneric, StratumLabel::S8, StratumLabel::S10] {
        let m = sample_in_stratum(label, &f, 2).unwrap();
        assert_eq!(m.norm_z(), m.norm_fast(modinv::action::Linear::Z));
    }
}

#[test]
fn represent_monomial_examples() {
    let f = f3();
    let (_, b) = ess_seed(&f, 3);
    let lms = b.lead_monomials();
    for (k, &lm) in lms.iter().enumerate() {
        let e = represent_monomial(lm, &b).unwrap();
        assert_eq!(e.iter().sum::<u32>(), 1);
        assert_eq!(e[k], 1);
    }
    let prod = lms[1].pow(2).unwrap().try_mul(Monomial::new(4, 0, 0)).unwrap();
    assert_eq!(represent_monomial(prod, &b).unwrap(), vec![4, 2, 0, 0]);
    // z alone is not in the lead semigroup
    assert!(represent_monomial(Monomial::new(0, 0, 1), &b).is_none());
}

#[test]
fn subduction_of_basis_products_is_zero() {
    let f = f3();
    let (_, b) = ess_seed(&f, 4);
    let mut cache = ProductCache::new(&b);
    let g = &cache.product(&[57, 1, 1, 0]) + &cache.product(&[0, 0, 0, 1]);
    let tr = subduct(&g, &b).unwrap();
    assert!(tr.reduced_to_zero());
    assert_eq!(tr.input, g);
}

#[test]
fn subduction_leaves_a_non_member() {
    let f = f3();
    let (_, b) = ess_seed(&f, 5);
    let z = Polynomial::z(&f);
    let tr = subduct(&z, &b).unwrap();
    assert_eq!(tr.remainder, z);
    assert!(tr.steps.is_empty());
}

#[test]
fn tetes_are_nontrivial_and_balanced() {
    let f = f3();
    let (_, b) = ess_seed(&f, 6);
    let tetes = enumerate_tetes(&b, 90).unwrap();
    assert!(!tetes.is_empty());
    let mut cache = ProductCache::new(&b);
    for t in &tetes {
        assert!(t.is_nontrivial());
        assert!(t.degree <= 90);
        assert_eq!(cache.product(&t.i).lead_monomial().unwrap(), cache.product(&t.j).lead_monomial().unwrap());
        let d = t.difference(&mut cache);
        if !d.is_zero() {
            assert!(d.lead_monomial().unwrap() < cache.product(&t.i).lead_monomial().unwrap());
        }
    }
    // ascending degree
    assert!(tetes.windows(2).all(|w| w[0].degree <= w[1].degree));
}

#[test]
fn generic_enumeration_agrees_on_pure_shapes() {
    let f = f3();
    let (_, b) = ess_seed(&f, 7);
    assert!(b.has_pure_shape());
    let mut a = enumerate_tetes(&b, 60).unwrap();
    let mut g = enumerate_tetes_generic(&b, 60);
    a.sort();
    g.sort();
    assert_eq!(a, g);
}

#[test]
fn seed_without_x_is_rejected() {
    let f = f3();
    let b = SubalgebraBasis::from_polys(&f, vec![Polynomial::y(&f)]).unwrap();
    assert!(sagbi_divide_by_x(&b, 10, 1).is_err());
}
