//! The invariants f_J from the augmented matrix Γ̃, and f₂.

use crate::action::RepMatrix;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::minors::GammaTable;
use crate::poly::{Monomial, Polynomial};

/// Denominator exponent of row r of the augmented column.
pub fn row_weight(p: u32, r: usize) -> u32 {
    let i = (r as u32 + 1) / 2;
    let pe = p.pow(i - 1);
    if r % 2 == 1 { pe } else { 2 * pe }
}

/// δ^{p^e} = y^{2p^e} − x^{p^e} z^{p^e}.
pub fn delta_frobenius(f: &FieldContext, e: u32) -> Polynomial {
    let q = f.p().pow(e);
    Polynomial::from_terms(
        f,
        vec![(Monomial::new(0, 2 * q, 0), f.one()), (Monomial::new(q, 0, q), f.from_i64(-1))],
    )
}

/// Entry r of the augmented column multiplied by x^{clear}.
fn augmented_entry(f: &FieldContext, r: usize, clear: u32) -> Polynomial {
    let p = f.p();
    let i = (r as u32 + 1) / 2;
    let q = p.pow(i - 1);
    if r % 2 == 1 {
        Polynomial::monomial(f, clear - q, q, 0)
    } else {
        -&delta_frobenius(f, i - 1).mul_x_pow(clear - 2 * q)
    }
}

/// f_J for a strictly increasing 5-subset of 1..10.
pub fn f_j(m: &RepMatrix, j: &[usize]) -> Result<Polynomial> {
    f_j_with(&GammaTable::new(m), j)
}

pub fn f_j_with(t: &GammaTable, j: &[usize]) -> Result<Polynomial> {
    if j.len() != 5 || j.iter().any(|&r| !(1..=10).contains(&r)) || j.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndex(j.to_vec()));
    }
    let f = t.ctx();
    let clear = row_weight(f.p(), j[4]);
    let mut out = Polynomial::zero(f);
    for a in 0..5 {
        let rest: Vec<usize> = j.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &r)| r).collect();
        let g = t.get([rest[0], rest[1], rest[2], rest[3]]);
        if g.is_zero() {
            continue;
        }
        // 1-based sign (−1)^{a+5}.
        let g = if a % 2 == 0 { g } else { f.neg(g) };
        out = &out + &augmented_entry(f, j[a], clear).scale(g);
    }
    Ok(out)
}

/// f_J by decimal digits, e.g. `fd(t, 12357)`; indices 1..9 only.
pub fn fd(t: &GammaTable, code: u32) -> Polynomial {
    let digits: Vec<usize> = code.to_string().bytes().map(|b| (b - b'0') as usize).collect();
    f_j_with(t, &digits).expect("valid index digits")
}

/// f₂ = (f₁² + γ₁₂₃₄ f₁₂₃₄₆) / (2x^{p²−2p}).
pub fn build_f2(m: &RepMatrix) -> Result<Polynomial> {
    build_f2_with(&GammaTable::new(m))
}

pub fn build_f2_with(t: &GammaTable) -> Result<Polynomial> {
    let f = t.ctx();
    let p = f.p();
    if p == 2 {
        return Err(Error::Precondition("f2 needs p odd".into()));
    }
    let f1 = fd(t, 12345);
    let num = &(&f1 * &f1) + &fd(t, 12346).scale(t.g(1234));
    num.exact_divide_by_term(Monomial::new(p * p - 2 * p, 0, 0), f.from_i64(2))
}

/// Whether some sign pattern makes the three-term relation among
/// γ_{K∖{i,j}} f̃_{K∖l} vanish identically.
pub fn lemma_field_check(m: &RepMatrix, k: [usize; 6], triple: [usize; 3]) -> Result<bool> {
    let t = GammaTable::new(m);
    let f = m.ctx();
    if k.windows(2).any(|w| w[0] >= w[1]) || triple.iter().any(|i| !k.contains(i)) || triple.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndex(k.iter().chain(triple.iter()).copied().collect()));
    }
    let omit = |drop: &[usize]| -> Vec<usize> { k.iter().copied().filter(|r| !drop.contains(r)).collect() };
    let [i1, i2, i3] = triple;
    let parts = [(omit(&[i1, i2]), omit(&[i3])), (omit(&[i2, i3]), omit(&[i1])), (omit(&[i1, i3]), omit(&[i2]))];
    let top = parts.iter().map(|(_, j)| row_weight(f.p(), j[4])).max().unwrap();
    let mut terms = Vec::new();
    for (g, j) in &parts {
        let gv = t.get([g[0], g[1], g[2], g[3]]);
        let fj = f_j_with(&t, j)?;
        terms.push(fj.mul_x_pow(top - row_weight(f.p(), j[4])).scale(gv));
    }
    for eps in 0..8u32 {
        let mut acc = Polynomial::zero(f);
        for (l, term) in terms.iter().enumerate() {
            acc = if eps >> l & 1 == 1 { &acc - term } else { &acc + term };
        }
        if acc.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}
