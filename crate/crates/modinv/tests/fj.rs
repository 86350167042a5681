use modinv::action::RepMatrix;
use modinv::fj::*;
use modinv::minors::*;
use modinv::{FieldContext, Monomial, Polynomial};

fn sample(p: u32, label: StratumLabel, seed: u64) -> RepMatrix {
    sample_in_stratum(label, &FieldContext::new(p, 4).unwrap(), seed).unwrap()
}

// Independent expansion of f₁₂₃₄₅ written out term by term.
fn f1_by_hand(t: &GammaTable) -> Polynomial {
    let f = t.ctx();
    let p = f.p();
    let x = |e: u32| Polynomial::monomial(f, e, 0, 0);
    let y = |e: u32| Polynomial::monomial(f, 0, e, 0);
    let d = Polynomial::delta(f);
    let c = |code| Polynomial::constant(f, t.g(code));
    &(&(&(&(&c(1234) * &y(p * p)) + &(&(&c(1235) * &d.pow(p)) * &x(p * p - 2 * p)))
        + &(&(&c(1245) * &x(p * p - p)) * &y(p)))
        + &(&(&c(1345) * &d) * &x(p * p - 2)))
        + &(&(&c(2345) * &x(p * p - 1)) * &y(1))
}

#[test]
fn f1_matches_expansion() {
    for p in [3, 5, 7] {
        let m = sample(p, StratumLabel::EssGeneric, 3);
        let t = GammaTable::new(&m);
        assert_eq!(fd(&t, 12345), f1_by_hand(&t));
    }
}

#[test]
fn f12357_matches_expansion() {
    let m = sample(5, StratumLabel::EssGeneric, 1);
    let t = GammaTable::new(&m);
    let f = t.ctx();
    let p = 5u32;
    let p3 = p * p * p;
    let mut want = Polynomial::monomial(f, 0, p3, 0).scale(t.g(1235));
    want = &want - &Polynomial::monomial(f, p3 - p * p, p * p, 0).scale(t.g(1237));
    want = &want + &Polynomial::monomial(f, p3 - p, p, 0).scale(t.g(1257));
    want = &want + &Polynomial::delta(f).mul_x_pow(p3 - 2).scale(t.g(1357));
    want = &want + &Polynomial::monomial(f, p3 - 1, 1, 0).scale(t.g(2357));
    assert_eq!(fd(&t, 12357), want);
}

#[test]
fn f12346_lead_and_f2_identity() {
    for p in [3, 5, 7] {
        let m = sample(p, StratumLabel::EssGeneric, 9);
        let t = GammaTable::new(&m);
        let f = t.ctx();
        let f1 = fd(&t, 12345);
        let f2 = build_f2(&m).unwrap();
        assert_eq!(
            f2.lead_term().unwrap(),
            (Monomial::new(0, p * p + 2 * p, 0), f.mul(t.g(1234), t.g(1235)))
        );
        let lhs = fd(&t, 12346).scale(t.g(1234));
        let rhs = &f2.mul_x_pow(p * p - 2 * p).scale(f.from_i64(2)) - &(&f1 * &f1);
        assert_eq!(lhs, rhs);
        assert_eq!(fd(&t, 12346).lead_term().unwrap(), (Monomial::new(0, 2 * p * p, 0), f.neg(t.g(1234))));
    }
}

#[test]
fn f_j_invariant() {
    let sets: [[usize; 5]; 6] =
        [[1, 2, 3, 4, 5], [1, 2, 3, 4, 6], [1, 2, 3, 5, 7], [2, 3, 4, 5, 6], [1, 3, 4, 5, 7], [2, 4, 6, 7, 8]];
    for (s, label) in StratumLabel::ALL.iter().enumerate() {
        let m = sample(3, *label, s as u64);
        for j in &sets {
            assert!(m.is_invariant(&f_j(&m, j).unwrap()), "{label} {j:?}");
        }
    }
}

#[test]
fn f13579_is_gamma_times_norm() {
    let m = sample(3, StratumLabel::EssGeneric, 4);
    let t = GammaTable::new(&m);
    assert_eq!(fd(&t, 13579), m.norm_y().scale(t.g(1357)));
}

#[test]
fn field_lemma_examples() {
    for p in [3, 5] {
        let m = sample(p, StratumLabel::EssGeneric, 2);
        assert!(lemma_field_check(&m, [1, 2, 3, 4, 5, 7], [1, 2, 4]).unwrap());
        assert!(lemma_field_check(&m, [1, 3, 4, 5, 6, 7], [1, 6, 7]).unwrap());
        assert!(lemma_field_check(&m, [1, 2, 3, 4, 5, 6], [2, 3, 6]).unwrap());
    }
}

#[test]
fn bad_subset_rejected() {
    let m = sample(3, StratumLabel::EssGeneric, 2);
    assert!(f_j(&m, &[1, 2, 3, 4]).is_err());
    assert!(f_j(&m, &[1, 2, 3, 5, 5]).is_err());
}
