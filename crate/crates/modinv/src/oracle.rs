//! Brute-force invariant dimensions, Hilbert series of complete intersections,
//! lead-monomial semigroup counts and their three-way comparison.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::action::{GroupElement, RepMatrix, RepMatrixJson};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::poly::{Monomial, Polynomial};
use crate::sagbi::SubalgebraBasis;

/// How graded invariant dimensions are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    /// Joint kernel of the four operators σ_j − 1 on each graded piece.
    Kernel,
    /// Translation quotient in the coordinates (y, δ), one elimination for all degrees.
    Quotient,
}

/// dim k[V]_d^E for d = 0..=max_degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimensionTable {
    pub matrix: RepMatrixJson,
    pub method: OracleMethod,
    pub dims: Vec<(u32, u64)>,
}

impl GradedDimensionTable {
    pub fn dim(&self, d: u32) -> Option<u64> {
        self.dims.get(d as usize).map(|r| r.1)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,dim\n");
        for (d, n) in &self.dims {
            s.push_str(&format!("{d},{n}\n"));
        }
        s
    }
}

fn forms(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for c in 0..=d {
        for b in 0..=d - c {
            out.push(Monomial::new(d - b - c, b, c));
        }
    }
    out
}

/// Row-reduces `rows` (image part first, tag part after) and returns the tag
/// parts of rows whose image part vanished.
fn kernel_tags(f: &FieldContext, mut rows: Vec<(Vec<Fe>, Vec<Fe>)>) -> Vec<Vec<Fe>> {
    let n = rows.first().map_or(0, |r| r.0.len());
    let mut pivot_rows: Vec<(usize, Vec<Fe>, Vec<Fe>)> = Vec::new();
    let mut out = Vec::new();
    for (mut img, mut tag) in rows.drain(..) {
        for (col, pimg, ptag) in &pivot_rows {
            let c = img[*col];
            if c.is_zero() {
                continue;
            }
            // pivot rows are normalised to 1 at their pivot
            for i in *col..n {
                if !pimg[i].is_zero() {
                    img[i] = f.sub(img[i], f.mul(c, pimg[i]));
                }
            }
            for (t, &pt) in tag.iter_mut().zip(ptag) {
                if !pt.is_zero() {
                    *t = f.sub(*t, f.mul(c, pt));
                }
            }
        }
        match img.iter().position(|c| !c.is_zero()) {
            None => out.push(tag),
            Some(col) => {
                let inv = f.inv(img[col]).unwrap();
                for v in img.iter_mut().chain(tag.iter_mut()) {
                    *v = f.mul(*v, inv);
                }
                pivot_rows.push((col, img, tag));
            }
        }
    }
    out
}

/// dim k[V]_d^E as the joint kernel of σ_j − 1, j = 1..4, on degree-d forms.
///
/// The kernel is cut down one generator at a time: the images of the current
/// kernel basis under σ_j − 1 are row-reduced and the vanishing combinations kept.
pub fn graded_invariant_dim(m: &RepMatrix, d: u32) -> u64 {
    let f = m.ctx();
    let mons = forms(d);
    let n = mons.len();
    let index: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let to_vec = |p: &Polynomial| {
        let mut v = vec![Fe::ZERO; n];
        for &(mm, c) in p.terms() {
            v[index[&mm]] = c;
        }
        v
    };
    // basis of the current kernel, as coordinate vectors
    let mut basis: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut v = vec![Fe::ZERO; n];
            v[i] = f.one();
            v
        })
        .collect();
    for j in 0..4 {
        let (c1, c2) = m.pair(&GroupElement::generator(j));
        if c1.is_zero() && c2.is_zero() {
            continue;
        }
        // columns of σ_j − 1 on monomials
        let op: Vec<Vec<Fe>> = mons
            .iter()
            .map(|&mm| {
                let p = Polynomial::term(f, mm, f.one());
                to_vec(&(&p.substitute_upper_triangular(c1, c2) - &p))
            })
            .collect();
        let rows = basis
            .iter()
            .map(|b| {
                let mut img = vec![Fe::ZERO; n];
                for (i, &bi) in b.iter().enumerate() {
                    if bi.is_zero() {
                        continue;
                    }
                    for (t, &o) in img.iter_mut().zip(&op[i]) {
                        if !o.is_zero() {
                            *t = f.add(*t, f.mul(bi, o));
                        }
                    }
                }
                (img, b.clone())
            })
            .collect();
        basis = kernel_tags(f, rows);
        if basis.is_empty() {
            break;
        }
    }
    basis.len() as u64
}

/// Generators U, V of k[y,δ]^E after dehomogenising x = 1, where E acts on
/// (y, δ) by translations (C₁, −C₂). Each generator is quotiented in turn; the
/// coordinate of lower weight is replaced by its additive norm, so the top
/// forms of U and V stay pure powers of y and δ. Returned with δ expanded.
pub fn translation_generators(m: &RepMatrix) -> ((Polynomial, u32), (Polynomial, u32)) {
    let f = m.ctx();
    let p = f.p();
    let mut u = (Polynomial::y(f), 1u32);
    let mut v = (Polynomial::delta(f), 2u32);
    let mut shifts: Vec<(Fe, Fe)> = (0..4)
        .map(|j| {
            let (c1, c2) = m.pair(&GroupElement::generator(j));
            (c1, f.neg(c2))
        })
        .collect();
    // additive norm t ↦ t^p − a^{p−1}t, homogenised with x
    let norm = |g: &(Polynomial, u32), a: Fe| -> (Polynomial, u32) {
        let ap = f.pow(a, p as i64 - 1);
        let top = g.0.pow(p);
        let low = g.0.mul_x_pow((p - 1) * g.1).scale(ap);
        (&top - &low, g.1 * p)
    };
    let nval = |t: Fe, a: Fe| f.sub(f.pow(t, p as i64), f.mul(f.pow(a, p as i64 - 1), t));
    for j in 0..4 {
        let (a, b) = shifts[j];
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let norm_u = b.is_zero() || (!a.is_zero() && u.1 < v.1);
        if norm_u {
            let r = f.div(b, a);
            if !b.is_zero() {
                v.0 = &v.0 - &u.0.mul_x_pow(v.1 - u.1).scale(r);
            }
            u = norm(&u, a);
            for s in shifts.iter_mut().skip(j + 1) {
                let (a2, b2) = *s;
                *s = (nval(a2, a), f.sub(b2, f.mul(r, a2)));
            }
        } else {
            let r = f.div(a, b);
            if !a.is_zero() {
                u.0 = &u.0 - &v.0.mul_x_pow(u.1 - v.1).scale(r);
            }
            v = norm(&v, b);
            for s in shifts.iter_mut().skip(j + 1) {
                let (a2, b2) = *s;
                *s = (f.sub(a2, f.mul(r, b2)), nval(b2, b));
            }
        }
        shifts[j] = (Fe::ZERO, Fe::ZERO);
    }
    (u, v)
}

/// Index of y^b z^c among dehomogenised monomials, ordered by degree b + c then b.
fn affine_index(b: u32, c: u32) -> usize {
    let d = (b + c) as usize;
    d * (d + 1) / 2 + b as usize
}

/// All dims for d ≤ max_degree through the translation quotient.
///
/// x^d·f ↦ f identifies k[V]_d^E with the x-free-enough part of
/// span{x^{2d−w}U^iV^j : w = weight ≤ 2d}; after setting x = 1 this is the
/// subspace of span{U^iV^j} of (y,z)-degree at most d, counted from an echelon
/// form whose pivots are the degree-largest monomials.
pub fn quotient_dims(m: &RepMatrix, max_degree: u32) -> Vec<u64> {
    let f = m.ctx();
    let ((u, wu), (v, wv)) = translation_generators(m);
    let cap = 2 * max_degree;
    let width = affine_index(cap, 0) + 1;
    let mut pivots: HashMap<usize, Vec<Fe>> = HashMap::new();
    let mut pivot_degrees = Vec::new();
    let mut upow = Polynomial::one(f);
    let mut i = 0;
    while i * wu <= cap {
        let mut prod = upow.clone();
        let mut j = 0;
        while i * wu + j * wv <= cap {
            let mut row = vec![Fe::ZERO; width];
            for &(mm, c) in prod.terms() {
                row[affine_index(mm.ey(), mm.ez())] = c;
            }
            loop {
                let Some(top) = row.iter().rposition(|c| !c.is_zero()) else { break };
                match pivots.get(&top) {
                    Some(pr) => {
                        let c = row[top];
                        for (t, &q) in row[..=top].iter_mut().zip(&pr[..=top]) {
                            if !q.is_zero() {
                                *t = f.sub(*t, f.mul(c, q));
                            }
                        }
                    }
                    None => {
                        let inv = f.inv(row[top]).unwrap();
                        for t in row[..=top].iter_mut() {
                            *t = f.mul(*t, inv);
                        }
                        let deg = (((8 * top + 1) as f64).sqrt() as usize - 1) / 2;
                        pivot_degrees.push(deg as u32);
                        pivots.insert(top, row);
                        break;
                    }
                }
            }
            prod = &prod * &v;
            j += 1;
        }
        upow = &upow * &u;
        i += 1;
    }
    (0..=max_degree).map(|d| pivot_degrees.iter().filter(|&&e| e <= d).count() as u64).collect()
}

/// The graded dimension table for d ≤ max_degree.
pub fn invariant_dims(m: &RepMatrix, max_degree: u32, method: OracleMethod) -> GradedDimensionTable {
    let dims = match method {
        OracleMethod::Kernel => (0..=max_degree).map(|d| graded_invariant_dim(m, d)).collect(),
        OracleMethod::Quotient => quotient_dims(m, max_degree),
    };
    GradedDimensionTable {
        matrix: m.to_json(),
        method,
        dims: dims.into_iter().enumerate().map(|(d, n)| (d as u32, n)).collect(),
    }
}

/// Coefficients of Π(1 − t^r)/Π(1 − t^d) up to t^max_degree.
pub fn hilbert_ci(gens: &[u32], rels: &[u32], max_degree: u32) -> Result<Vec<i64>> {
    if gens.len() != rels.len() + 3 && !(rels.is_empty() && gens.len() < 3) {
        return Err(Error::Precondition(format!(
            "{} generators and {} relations do not give Krull dimension three",
            gens.len(),
            rels.len()
        )));
    }
    if gens.iter().chain(rels).any(|&d| d == 0) {
        return Err(Error::Precondition("degrees must be positive".into()));
    }
    let n = max_degree as usize + 1;
    let mut s = vec![0i64; n];
    s[0] = 1;
    for &r in rels {
        for k in (r as usize..n).rev() {
            s[k] -= s[k - r as usize];
        }
    }
    for &g in gens {
        for k in g as usize..n {
            s[k] += s[k - g as usize];
        }
    }
    Ok(s)
}

/// Number of degree-d monomials in the semigroup generated by `leads`, for d ≤ max_degree.
pub fn semigroup_counts(leads: &[Monomial], max_degree: u32) -> Vec<u64> {
    let mut levels: Vec<HashSet<(u32, u32)>> = vec![HashSet::new(); max_degree as usize + 1];
    levels[0].insert((0, 0));
    for d in 1..=max_degree as usize {
        let mut cur = HashSet::new();
        for l in leads {
            let e = l.deg() as usize;
            if e == 0 || e > d {
                continue;
            }
            for &(b, c) in &levels[d - e] {
                cur.insert((b + l.ey(), c + l.ez()));
            }
        }
        levels[d] = cur;
    }
    levels.iter().map(|s| s.len() as u64).collect()
}

/// Dimension of the degree-d part of the lead term algebra of B.
pub fn subalgebra_graded_dim(b: &SubalgebraBasis, d: u32) -> u64 {
    semigroup_counts(&b.lead_monomials(), d)[d as usize]
}

/// One row of an oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub degree: u32,
    pub invariants: u64,
    pub semigroup: u64,
    pub hilbert: i64,
}

impl ComparisonRow {
    pub fn agrees(&self) -> bool {
        self.invariants == self.semigroup && self.hilbert == self.invariants as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub max_degree: u32,
    pub rows: Vec<ComparisonRow>,
    pub first_failure: Option<u32>,
    pub agree: bool,
    /// `full` when every claimed degree is at most max_degree, `reduced` otherwise.
    pub evidence: String,
}

/// Compares oracle, semigroup count and CI series degree by degree.
pub fn oracle_compare(m: &RepMatrix, b: &SubalgebraBasis, gens: &[u32], rels: &[u32], max_degree: u32) -> Result<OracleComparison> {
    let series = hilbert_ci(gens, rels, max_degree)?;
    let table = invariant_dims(m, max_degree, OracleMethod::Quotient);
    let semi = semigroup_counts(&b.lead_monomials(), max_degree);
    let rows: Vec<ComparisonRow> = (0..=max_degree as usize)
        .map(|d| ComparisonRow { degree: d as u32, invariants: table.dims[d].1, semigroup: semi[d], hilbert: series[d] })
        .collect();
    let first_failure = rows.iter().find(|r| !r.agrees()).map(|r| r.degree);
    let top = gens.iter().chain(rels).copied().max().unwrap_or(0);
    Ok(OracleComparison {
        max_degree,
        agree: first_failure.is_none(),
        first_failure,
        evidence: if top <= max_degree { "full".into() } else { "reduced".into() },
        rows,
    })
}

/// Comparison table as CSV.
pub fn comparison_csv(c: &OracleComparison) -> String {
    let mut s = String::from("degree,invariants,semigroup,hilbert,agree\n");
    for r in &c.rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.degree, r.invariants, r.semigroup, r.hilbert, r.agrees()));
    }
    s
}
