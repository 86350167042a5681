use modinv::action::{GroupElement, Linear, RepMatrix};
use modinv::minors::{gamma, sample_in_stratum, StratumLabel};
use modinv::{Fe, FieldContext, Monomial, Polynomial};

fn f3() -> FieldContext {
    FieldContext::new(3, 4).unwrap()
}

#[test]
fn generators_act_on_coordinates() {
    let f = f3();
    let m = sample_in_stratum(StratumLabel::EssGeneric, &f, 1).unwrap();
    let (x, y, z) = (Polynomial::x(&f), Polynomial::y(&f), Polynomial::z(&f));
    for j in 0..4 {
        let g = GroupElement::generator(j);
        let (c1, c2) = (m.entries()[0][j], m.entries()[1][j]);
        assert_eq!(m.act(&x, &g), x);
        assert_eq!(m.act(&y, &g), Polynomial::linear(&f, c1, f.one(), Fe::ZERO));
        let want = Polynomial::linear(&f, f.add(f.mul(c1, c1), c2), f.add(c1, c1), f.one());
        assert_eq!(m.act(&z, &g), want);
    }
}

#[test]
fn orbits_and_norms() {
    let f = f3();
    let m = sample_in_stratum(StratumLabel::EssGeneric, &f, 2).unwrap();
    let x = Polynomial::x(&f);
    assert_eq!(m.orbit(&x), vec![x.clone()]);
    assert_eq!(m.norm(&x), x);
    let y = Polynomial::y(&f);
    assert_eq!(m.orbit(&y).len(), 81);
    assert_eq!(m.norm(&y), m.norm_y());
    assert_eq!(m.norm_y().lead_monomial().unwrap(), Monomial::new(0, 81, 0));
    assert!(m.is_invariant(&m.norm_y()));
    let d = Polynomial::delta(&f);
    assert_eq!(m.norm(&d), m.norm_fast(Linear::Delta));
}

#[test]
fn s10_norm_of_y() {
    for p in [3, 5] {
        let f = FieldContext::new(p, 4).unwrap();
        let m = sample_in_stratum(StratumLabel::S10, &f, 3).unwrap();
        let want = Polynomial::from_terms(
            &f,
            vec![(Monomial::new(0, p, 0), f.one()), (Monomial::new(p - 1, 1, 0), f.from_i64(-1))],
        );
        assert_eq!(m.norm_y(), want, "p={p}");
    }
}

#[test]
fn invariance_checks() {
    let f = f3();
    for label in [StratumLabel::EssGeneric, StratumLabel::S8, StratumLabel::S10] {
        let m = sample_in_stratum(label, &f, 4).unwrap();
        assert!(m.is_invariant(&Polynomial::x(&f)));
        assert!(!m.is_invariant(&Polynomial::delta(&f)));
        assert!(m.is_invariant(&m.norm_z()));
        assert!(!m.is_invariant(&Polynomial::z(&f)));
    }
}

#[test]
fn action_is_a_right_action_of_all_of_e() {
    let f = f3();
    let m = sample_in_stratum(StratumLabel::S6, &f, 5).unwrap();
    let z = Polynomial::z(&f);
    let all = GroupElement::all(3);
    assert_eq!(all.len(), 81);
    for (i, g) in all.iter().enumerate().step_by(7) {
        let h = &all[(5 * i + 2) % 81];
        assert_eq!(m.act(&m.act(&z, g), h), m.act(&z, &g.compose(h, 3)));
    }
}

#[test]
fn faithfulness() {
    let f = f3();
    let m = sample_in_stratum(StratumLabel::EssGeneric, &f, 6).unwrap();
    assert!(m.is_faithful());
    assert!(m.is_type_111());
    let one = f.one();
    let flat = RepMatrix::new(&f, [[one; 4], [Fe::ZERO; 4]]);
    assert!(!flat.is_faithful());
    assert_eq!(flat.first_row_rank(), 1);
}

#[test]
fn column_transform_scales_minors_by_det() {
    let f = f3();
    let m = sample_in_stratum(StratumLabel::EssGeneric, &f, 7).unwrap();
    // det = 2 mod 3
    let g = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 1], [0, 0, 0, 1]];
    let n = m.column_transform(&g);
    let det = f.from_i64(2);
    for idx in [[1, 2, 3, 4], [1, 3, 5, 7], [2, 4, 6, 8]] {
        assert_eq!(gamma(&n, idx).unwrap(), f.mul(det, gamma(&m, idx).unwrap()));
    }
    // same group, same norm
    assert_eq!(n.norm_z(), m.norm_z());
}

#[test]
fn json_roundtrip() {
    let f = FieldContext::new(5, 4).unwrap();
    let m = sample_in_stratum(StratumLabel::S9a, &f, 8).unwrap();
    let j = m.to_json();
    let back = RepMatrix::from_json(&j).unwrap();
    assert_eq!(back.entries(), m.entries());
    let mut bad = j.clone();
    bad.entries[0][0] = vec![7, 0, 0, 0];
    assert!(RepMatrix::from_json(&bad).is_err());
    let mut bad = j;
    bad.entries.pop();
    assert!(RepMatrix::from_json(&bad).is_err());
}
