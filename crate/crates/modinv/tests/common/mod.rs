//! Seeded identity checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use modinv::action::{GroupElement, RepMatrix};
use modinv::fj::{build_f2_with, f_j_with, fd};
use modinv::minors::{gamma, sample_in_stratum, GammaTable, StratumLabel, PAPER_PLUCKER_INSTANCES};
use modinv::recipes::s4_norm_identity;
use modinv::sagbi::{subduct, ProductCache, SubalgebraBasis};
use modinv::{Fe, FieldContext, Monomial, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = fn(u64) -> Result<(), String>;

/// The identity suite, by name.
pub const IDENTITIES: [(&str, Check); 10] = [
    ("sigma homomorphism", homomorphism),
    ("right action", right_action),
    ("delta transform", delta_transform),
    ("plucker instances", plucker),
    ("frobenius shift", frobenius_shift),
    ("f_J invariance", fj_invariance),
    ("f13579 = g1357 N(y)", f13579_norm),
    ("f12346 identity", f12346_identity),
    ("S4 norm identity", s4_norm),
    ("subduction trace", subduction_trace),
];

pub fn field(p: u32) -> FieldContext {
    FieldContext::new(p, 4).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn prime(r: &mut ChaCha8Rng) -> u32 {
    [3, 5, 7][r.gen_range(0..3)]
}

pub fn random_fe(f: &FieldContext, r: &mut ChaCha8Rng) -> Fe {
    f.from_index(r.gen_range(0..f.size()))
}

/// A few random terms of degree d.
pub fn random_form(f: &FieldContext, r: &mut ChaCha8Rng, d: u32, terms: usize) -> Polynomial {
    let mut out = Vec::new();
    for _ in 0..terms {
        let c = r.gen_range(0..=d);
        let b = r.gen_range(0..=d - c);
        out.push((Monomial::new(d - b - c, b, c), random_fe(f, r)));
    }
    Polynomial::from_terms(f, out)
}

pub fn random_matrix(f: &FieldContext, r: &mut ChaCha8Rng) -> RepMatrix {
    let mut c = [[Fe::ZERO; 4]; 2];
    for row in c.iter_mut() {
        for e in row.iter_mut() {
            *e = random_fe(f, r);
        }
    }
    RepMatrix::new(f, c)
}

fn random_element(p: u32, r: &mut ChaCha8Rng) -> GroupElement {
    GroupElement { a: [0; 4].map(|_| r.gen_range(0..p)) }
}

fn sampled(p: u32, labels: &[StratumLabel], r: &mut ChaCha8Rng) -> RepMatrix {
    let label = labels[r.gen_range(0..labels.len())];
    sample_in_stratum(label, &field(p), r.gen()).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// σ(a,b)σ(c,d) = σ(a+c, b+d), checked on a random form.
pub fn homomorphism(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = field(prime(&mut r));
    let d = r.gen_range(1..7);
    let g = random_form(&f, &mut r, d, 4);
    let [a, b, c, d] = [0; 4].map(|_| random_fe(&f, &mut r));
    let lhs = g.substitute_upper_triangular(a, b).substitute_upper_triangular(c, d);
    let rhs = g.substitute_upper_triangular(f.add(a, c), f.add(b, d));
    ensure(lhs == rhs, || format!("{g} under ({a:?},{b:?}),({c:?},{d:?})"))
}

/// (f·g)·h = f·(gh) for group elements of a sampled M.
pub fn right_action(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let p = prime(&mut r);
    let m = sampled(p, &StratumLabel::COMPUTED, &mut r);
    let f = m.ctx().clone();
    let d = r.gen_range(1..6);
    let poly = random_form(&f, &mut r, d, 5);
    let (g, h) = (random_element(p, &mut r), random_element(p, &mut r));
    let lhs = m.act(&m.act(&poly, &g), &h);
    ensure(lhs == m.act(&poly, &g.compose(&h, p)), || format!("{poly} {g:?} {h:?}"))
}

/// δ·σ(C₁,C₂) = δ − C₂x².
pub fn delta_transform(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = field(prime(&mut r));
    let (a, b) = (random_fe(&f, &mut r), random_fe(&f, &mut r));
    let d = Polynomial::delta(&f);
    let want = &d - &Polynomial::term(&f, Monomial::new(2, 0, 0), b);
    ensure(d.substitute_upper_triangular(a, b) == want, || format!("({a:?},{b:?})"))
}

/// The fourteen Plücker instances on an arbitrary matrix.
pub fn plucker(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = field(prime(&mut r));
    let m = random_matrix(&f, &mut r);
    for (rows, cols) in PAPER_PLUCKER_INSTANCES {
        if !modinv::minors::plucker_check(&m, rows, cols) {
            return Err(format!("{rows:?} {cols:?}"));
        }
    }
    Ok(())
}

/// γ_{i+2,j+2,k+2,l+2} = γ_{ijkl}^p.
pub fn frobenius_shift(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = field(prime(&mut r));
    let m = random_matrix(&f, &mut r);
    let mut idx = rand::seq::index::sample(&mut r, 8, 4).into_vec();
    idx.sort();
    let i: [usize; 4] = [0, 1, 2, 3].map(|k| idx[k] + 1);
    let shifted = i.map(|k| k + 2);
    let a = gamma(&m, i).unwrap();
    let b = gamma(&m, shifted).unwrap();
    ensure(b == f.frobenius(a, 1), || format!("{i:?}"))
}

/// f_J is invariant for a random 5-subset of 1..8.
pub fn fj_invariance(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let m = sampled(3, &StratumLabel::ALL, &mut r);
    let mut j = rand::seq::index::sample(&mut r, 8, 5).into_vec();
    j.sort();
    let j: Vec<usize> = j.into_iter().map(|k| k + 1).collect();
    let g = f_j_with(&GammaTable::new(&m), &j).unwrap();
    ensure(m.is_invariant(&g), || format!("J = {j:?}"))
}

const G1357_NONZERO: [StratumLabel; 6] =
    [StratumLabel::EssGeneric, StratumLabel::S4, StratumLabel::S5a, StratumLabel::S5b, StratumLabel::S7a, StratumLabel::S7b];

/// f₁₃₅₇₉ = γ₁₃₅₇ N_M(y).
pub fn f13579_norm(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let p = [3, 5][r.gen_range(0..2)];
    let m = sampled(p, &G1357_NONZERO, &mut r);
    let t = GammaTable::new(&m);
    ensure(fd(&t, 13579) == m.norm_y().scale(t.g(1357)), || format!("p={p}"))
}

/// γ₁₂₃₄ f₁₂₃₄₆ = 2 f₂ x^{p²−2p} − f₁².
pub fn f12346_identity(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let p = prime(&mut r);
    let labels = [StratumLabel::EssGeneric, StratumLabel::S5a, StratumLabel::S5b, StratumLabel::S6, StratumLabel::S9a];
    let m = sampled(p, &labels, &mut r);
    let t = GammaTable::new(&m);
    let f = m.ctx();
    let f1 = fd(&t, 12345);
    let f2 = build_f2_with(&t).unwrap();
    let rhs = &f2.mul_x_pow(p * p - 2 * p).scale(f.from_i64(2)) - &(&f1 * &f1);
    ensure(fd(&t, 12346).scale(t.g(1234)) == rhs, || format!("p={p}"))
}

/// N_M(y) in terms of h₁, h₂ on S4.
pub fn s4_norm(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let p = [3, 5][r.gen_range(0..2)];
    let m = sampled(p, &[StratumLabel::S4], &mut r);
    ensure(s4_norm_identity(&m).unwrap(), || format!("p={p}"))
}

/// input = Σ c·Π b^e + remainder for the subduction of a random element.
pub fn subduction_trace(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let m = sampled(3, &[StratumLabel::EssGeneric], &mut r);
    let f = m.ctx().clone();
    let t = GammaTable::new(&m);
    let b = SubalgebraBasis::from_named(
        &f,
        vec![("x".into(), Polynomial::x(&f)), ("f1".into(), fd(&t, 12345)), ("f2".into(), build_f2_with(&t).unwrap())],
    )
    .unwrap();
    // a random combination of products of degree 30, plus noise
    let mut cache = ProductCache::new(&b);
    let mut g = random_form(&f, &mut r, 30, 3);
    for e in [[30, 0, 0], [21, 1, 0], [12, 2, 0], [15, 0, 1], [6, 1, 1]] {
        g = &g + &cache.product(&e).scale(random_fe(&f, &mut r));
    }
    let tr = subduct(&g, &b).map_err(|_| "step cap".to_string())?;
    let mut acc = tr.remainder.clone();
    for s in &tr.steps {
        acc = &acc + &cache.product(&s.exponents).scale(s.coeff);
    }
    ensure(acc == tr.input && tr.input == g, || "trace does not reassemble".into())
}
