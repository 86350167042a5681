//! The Frobenius matrix Γ(M), its 4×4 minors γ_{ijkl}, Plücker relations,
//! stratum classification and stratum-constrained sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::RepMatrix;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};

/// Index sets cached when a [`GammaTable`] is built.
pub const CACHED_MINORS: &[[usize; 4]] = &[
    [1, 2, 3, 4],
    [1, 2, 3, 5],
    [1, 2, 3, 6],
    [1, 2, 3, 7],
    [1, 2, 4, 5],
    [1, 2, 4, 6],
    [1, 2, 5, 7],
    [1, 3, 4, 5],
    [1, 3, 4, 6],
    [1, 3, 5, 7],
    [1, 3, 5, 9],
    [2, 3, 4, 5],
    [2, 3, 4, 6],
    [2, 3, 5, 7],
    [3, 4, 5, 6],
    [3, 4, 5, 7],
    [3, 5, 7, 9],
    [1, 2, 6, 7],
    [1, 2, 4, 7],
    [2, 4, 6, 8],
];

/// Rows of Γ(M): row 2i−1 holds c_{1j}^{p^{i−1}}, row 2i holds c_{2j}^{p^{i−1}}.
pub fn gamma_rows(m: &RepMatrix) -> [[Fe; 4]; 10] {
    let f = m.ctx();
    let mut rows = [[Fe::ZERO; 4]; 10];
    for i in 0..5 {
        for j in 0..4 {
            rows[2 * i][j] = f.frobenius(m.entries()[0][j], i as u32);
            rows[2 * i + 1][j] = f.frobenius(m.entries()[1][j], i as u32);
        }
    }
    rows
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det(f: &FieldContext, mut a: Vec<Vec<Fe>>) -> Fe {
    let n = a.len();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Fe::ZERO };
        if pr != c {
            a.swap(pr, c);
            d = f.neg(d);
        }
        let piv = a[c][c];
        d = f.mul(d, piv);
        let inv = f.inv(piv).unwrap();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = f.mul(a[r][c], inv);
            for cc in c..n {
                let v = f.mul(factor, a[c][cc]);
                a[r][cc] = f.sub(a[r][cc], v);
            }
        }
    }
    d
}

/// Determinant of the listed Γ rows in the given order (1-based; repeats give 0).
pub fn minor_ordered(f: &FieldContext, rows: &[[Fe; 4]; 10], idx: &[usize]) -> Fe {
    det(f, idx.iter().map(|&i| rows[i - 1].to_vec()).collect())
}

fn validate(idx: &[usize; 4]) -> Result<()> {
    if idx.iter().any(|&i| !(1..=10).contains(&i)) || idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndex(idx.to_vec()));
    }
    Ok(())
}

/// γ_{ijkl}(M) for 1 ≤ i < j < k < l ≤ 10.
pub fn gamma(m: &RepMatrix, idx: [usize; 4]) -> Result<Fe> {
    validate(&idx)?;
    Ok(minor_ordered(m.ctx(), &gamma_rows(m), &idx))
}

/// Cached minors of Γ(M).
#[derive(Clone, Debug)]
pub struct GammaTable {
    matrix: RepMatrix,
    rows: [[Fe; 4]; 10],
    cache: BTreeMap<[usize; 4], Fe>,
}

impl GammaTable {
    pub fn new(m: &RepMatrix) -> Self {
        let rows = gamma_rows(m);
        let cache = CACHED_MINORS.iter().map(|&idx| (idx, minor_ordered(m.ctx(), &rows, &idx))).collect();
        GammaTable { matrix: m.clone(), rows, cache }
    }

    pub fn matrix(&self) -> &RepMatrix {
        &self.matrix
    }

    pub fn ctx(&self) -> &FieldContext {
        self.matrix.ctx()
    }

    pub fn rows(&self) -> &[[Fe; 4]; 10] {
        &self.rows
    }

    /// γ for a strictly increasing index set; panics on invalid indices.
    pub fn get(&self, idx: [usize; 4]) -> Fe {
        validate(&idx).unwrap_or_else(|e| panic!("{e}"));
        match self.cache.get(&idx) {
            Some(&v) => v,
            None => minor_ordered(self.ctx(), &self.rows, &idx),
        }
    }

    /// γ by decimal digits, e.g. `g(1357)`; only for indices 1..9.
    pub fn g(&self, code: u32) -> Fe {
        let d = [code / 1000, code / 100 % 10, code / 10 % 10, code % 10];
        self.get([d[0] as usize, d[1] as usize, d[2] as usize, d[3] as usize])
    }

    /// Minor of rows in arbitrary order (sign follows the permutation).
    pub fn ordered(&self, idx: &[usize]) -> Fe {
        minor_ordered(self.ctx(), &self.rows, idx)
    }

    pub fn cached(&self) -> &BTreeMap<[usize; 4], Fe> {
        &self.cache
    }

    /// All cached minors in field text form, keyed like "1357".
    pub fn cached_text(&self) -> BTreeMap<String, String> {
        self.cache
            .iter()
            .map(|(idx, &v)| (idx.iter().map(|i| i.to_string()).collect::<String>(), self.ctx().format(v)))
            .collect()
    }
}

/// Σ_a (−1)^a p_{i₁,i₂,i₃,j_a} p_{J∖j_a}.
pub fn plucker_sum(m: &RepMatrix, rows3: [usize; 3], cols5: [usize; 5]) -> Fe {
    let f = m.ctx();
    let g = gamma_rows(m);
    let mut acc = Fe::ZERO;
    for a in 0..5 {
        let left = minor_ordered(f, &g, &[rows3[0], rows3[1], rows3[2], cols5[a]]);
        let rest: Vec<usize> = cols5.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &j)| j).collect();
        let right = minor_ordered(f, &g, &rest);
        let term = f.mul(left, right);
        // a is 0-based; the sign is (−1)^{a+1}.
        acc = if a % 2 == 0 { f.sub(acc, term) } else { f.add(acc, term) };
    }
    acc
}

/// Whether the Plücker relation for the given sequences vanishes exactly.
pub fn plucker_check(m: &RepMatrix, rows3: [usize; 3], cols5: [usize; 5]) -> bool {
    plucker_sum(m, rows3, cols5).is_zero()
}

/// γ_{12i7}γ_{1234}^p = γ_{12i6}γ_{1235}^p − γ_{12i5}γ_{1245}^p + γ_{12i4}γ_{1345}^p − γ_{12i3}γ_{2345}^p, 2 < i < 7.
pub fn first_plucker_lemma(m: &RepMatrix, i: usize) -> bool {
    assert!(2 < i && i < 7);
    let f = m.ctx();
    let t = GammaTable::new(m);
    let ord = |j: usize| t.ordered(&[1, 2, i, j]);
    let fr = |code: u32| f.frobenius(t.g(code), 1);
    let lhs = f.mul(ord(7), fr(1234));
    let mut rhs = f.mul(ord(6), fr(1235));
    rhs = f.sub(rhs, f.mul(ord(5), fr(1245)));
    rhs = f.add(rhs, f.mul(ord(4), fr(1345)));
    rhs = f.sub(rhs, f.mul(ord(3), fr(2345)));
    lhs == rhs
}

/// The fourteen Plücker instances used in the stratum arguments.
pub const PAPER_PLUCKER_INSTANCES: [([usize; 3], [usize; 5]); 14] = [
    ([1, 2, 3], [3, 4, 5, 6, 7]),
    ([1, 2, 4], [3, 4, 5, 6, 7]),
    ([1, 2, 5], [3, 4, 5, 6, 7]),
    ([1, 2, 6], [3, 4, 5, 6, 7]),
    ([1, 3, 4], [3, 4, 5, 6, 7]),
    ([1, 2, 4], [1, 2, 3, 5, 7]),
    ([1, 3, 5], [1, 2, 3, 4, 7]),
    ([1, 2, 3], [1, 3, 4, 5, 6]),
    ([1, 3, 5], [3, 4, 5, 6, 7]),
    ([2, 3, 5], [1, 3, 4, 5, 7]),
    ([1, 3, 5], [2, 3, 4, 5, 7]),
    ([1, 2, 3], [1, 3, 4, 5, 7]),
    ([1, 2, 5], [1, 3, 4, 5, 7]),
    ([1, 3, 5], [3, 4, 5, 7, 9]),
];

/// The remaining instances named alongside the list above.
pub const EXTRA_PLUCKER_INSTANCES: [([usize; 3], [usize; 5]); 3] = [
    ([1, 3, 7], [3, 4, 5, 7, 9]),
    ([1, 5, 7], [3, 4, 5, 7, 9]),
    ([1, 2, 3], [3, 4, 5, 7, 9]),
];

/// Stratum of the matrix space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StratumLabel {
    #[serde(rename = "ESS_GENERIC")]
    EssGeneric,
    S4,
    S5a,
    S5b,
    S6,
    S7a,
    S7b,
    S8,
    S9a,
    S9b,
    S10,
    #[serde(rename = "DEGENERATE")]
    Degenerate,
}

impl StratumLabel {
    pub const ALL: [StratumLabel; 12] = [
        StratumLabel::EssGeneric,
        StratumLabel::S4,
        StratumLabel::S5a,
        StratumLabel::S5b,
        StratumLabel::S6,
        StratumLabel::S7a,
        StratumLabel::S7b,
        StratumLabel::S8,
        StratumLabel::S9a,
        StratumLabel::S9b,
        StratumLabel::S10,
        StratumLabel::Degenerate,
    ];

    /// The eleven strata with a computed invariant ring.
    pub const COMPUTED: [StratumLabel; 11] = [
        StratumLabel::EssGeneric,
        StratumLabel::S4,
        StratumLabel::S5a,
        StratumLabel::S5b,
        StratumLabel::S6,
        StratumLabel::S7a,
        StratumLabel::S7b,
        StratumLabel::S8,
        StratumLabel::S9a,
        StratumLabel::S9b,
        StratumLabel::S10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StratumLabel::EssGeneric => "ESS_GENERIC",
            StratumLabel::S4 => "S4",
            StratumLabel::S5a => "S5a",
            StratumLabel::S5b => "S5b",
            StratumLabel::S6 => "S6",
            StratumLabel::S7a => "S7a",
            StratumLabel::S7b => "S7b",
            StratumLabel::S8 => "S8",
            StratumLabel::S9a => "S9a",
            StratumLabel::S9b => "S9b",
            StratumLabel::S10 => "S10",
            StratumLabel::Degenerate => "DEGENERATE",
        }
    }

    /// Strata whose recipes assume the matrix is in a normal form.
    pub fn needs_normal_form(self) -> bool {
        matches!(self, StratumLabel::S7b | StratumLabel::S9b | StratumLabel::S10)
    }

    /// Claimed generator and relation degrees as functions of p.
    pub fn claimed_degrees(self, p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
        let (p2, p3, p4) = (p * p, p * p * p, p * p * p * p);
        Some(match self {
            StratumLabel::EssGeneric => (vec![1, p2, p2 + 2 * p, p3 + 2, p4], vec![p3 + 2 * p2, p4 + 2 * p]),
            StratumLabel::S4 => (vec![1, 2 * p, p3, p3 + 2, p4], vec![2 * p3, p4 + 2 * p]),
            StratumLabel::S5a => (vec![1, p2, p2 + p, p3 + p + 2, p4], vec![p3 + p2, p4 + p2 + 2 * p]),
            StratumLabel::S5b => (vec![1, p2, p2 + 2, p4], vec![p4 + 2 * p2]),
            StratumLabel::S6 => (vec![1, p2, p2 + 2 * p, p3 + 1, p4], vec![p3 + 2 * p2, p4 + p]),
            StratumLabel::S7a => (vec![1, p, p3 + p2 + p + 2, p4], vec![p4 + p3 + p2 + 2 * p]),
            StratumLabel::S7b => (vec![1, 2, p4, p4], vec![2 * p4]),
            StratumLabel::S8 => (vec![1, 2 * p, p3, p3 + 1, p4], vec![2 * p2, p4 + p]),
            StratumLabel::S9a => (vec![1, p2, p2 + p, p3 + 1, p4], vec![p3 + p2, p4 + p]),
            StratumLabel::S9b => (vec![1, p2, p2 + 1, p4], vec![p4 + p2]),
            StratumLabel::S10 => (vec![1, p, p3 + 1, p4], vec![p4 + p]),
            StratumLabel::Degenerate => return None,
        })
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for StratumLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        StratumLabel::ALL
            .iter()
            .copied()
            .find(|l| l.name().to_ascii_uppercase() == up || (up == "ESS" && *l == StratumLabel::EssGeneric))
            .ok_or_else(|| Error::Parse(format!("unknown stratum label {s:?}")))
    }
}

/// Classification with the minors that decided it.
#[derive(Clone, Debug)]
pub struct Classification {
    pub label: StratumLabel,
    pub faithful: bool,
    pub type_111: bool,
    /// (name, value) pairs of the minors consulted.
    pub decisive: Vec<(String, Fe)>,
}

pub fn classify(m: &RepMatrix) -> StratumLabel {
    classify_detailed(m).label
}

pub fn classify_detailed(m: &RepMatrix) -> Classification {
    let t = GammaTable::new(m);
    let faithful = m.is_faithful();
    let type_111 = m.is_type_111();
    let mut decisive = vec![
        ("1234".to_string(), t.g(1234)),
        ("1235".to_string(), t.g(1235)),
        ("1357".to_string(), t.g(1357)),
    ];
    if !faithful || !type_111 {
        return Classification { label: StratumLabel::Degenerate, faithful, type_111, decisive };
    }
    let nz = |c: u32| !t.g(c).is_zero();
    let (a, b, c) = (nz(1234), nz(1235), nz(1357));
    use StratumLabel::*;
    let label = match (a, b, c) {
        (true, true, true) => EssGeneric,
        (false, true, true) => S4,
        (true, false, true) => {
            decisive.push(("1245".into(), t.g(1245)));
            if nz(1245) { S5a } else { S5b }
        }
        (true, true, false) => S6,
        (false, false, true) => {
            decisive.push(("1257".into(), t.g(1257)));
            if nz(1257) { S7a } else { S7b }
        }
        (false, true, false) => S8,
        (true, false, false) => {
            decisive.push(("1245".into(), t.g(1245)));
            if nz(1245) { S9a } else { S9b }
        }
        (false, false, false) => {
            decisive.push(("1246".into(), t.g(1246)));
            if nz(1246) { S10 } else { Degenerate }
        }
    };
    Classification { label, faithful, type_111, decisive }
}

/// Whether M is in the normal form the recipes of S7b, S9b and S10 assume.
pub fn is_normal_form(m: &RepMatrix, label: StratumLabel) -> bool {
    let f = m.ctx();
    let c = m.entries();
    match label {
        StratumLabel::S7b => c[1].iter().all(|e| e.is_zero()),
        StratumLabel::S9b => {
            c[0][0] == f.one()
                && c[0][3].is_zero()
                && c[1][0].is_zero()
                && !c[1][3].is_zero()
                && (0..3).all(|j| f.frobenius(c[0][j], 2) == c[0][j])
        }
        StratumLabel::S10 => {
            c[0][0] == f.one() && c[0][1..].iter().all(|e| e.is_zero()) && c[1][0].is_zero()
        }
        _ => true,
    }
}

/// F_p column reduction: returns M·g with the columns, viewed as F_p-vectors
/// of length 2k, in reduced column echelon form, together with g.
pub fn column_reduce(m: &RepMatrix) -> (RepMatrix, [[i64; 4]; 4]) {
    let f = m.ctx();
    let p = f.p() as i64;
    let k = f.k() as usize;
    let c = m.entries();
    // cols[j] = coordinates of (c_{1j}, c_{2j}).
    let mut cols: Vec<Vec<i64>> = (0..4)
        .map(|j| f.coords(c[0][j]).into_iter().chain(f.coords(c[1][j])).map(|v| v as i64).collect())
        .collect();
    let mut g = [[0i64; 4]; 4];
    for (j, row) in g.iter_mut().enumerate() {
        row[j] = 1;
    }
    let inv = |a: i64| -> i64 {
        let mut r = 1i64;
        let mut b = a.rem_euclid(p);
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut next = 0;
    for coord in 0..2 * k {
        if next == 4 {
            break;
        }
        let Some(pc) = (next..4).find(|&j| cols[j][coord] != 0) else { continue };
        cols.swap(pc, next);
        for row in g.iter_mut() {
            row.swap(pc, next);
        }
        let s = inv(cols[next][coord]);
        for v in cols[next].iter_mut() {
            *v = *v * s % p;
        }
        for row in g.iter_mut() {
            row[next] = row[next] * s % p;
        }
        for j in 0..4 {
            if j != next && cols[j][coord] != 0 {
                let fct = cols[j][coord];
                for r in 0..2 * k {
                    cols[j][r] = (cols[j][r] - fct * cols[next][r]).rem_euclid(p);
                }
                for row in g.iter_mut() {
                    row[j] = (row[j] - fct * row[next]).rem_euclid(p);
                }
            }
        }
        next += 1;
    }
    (m.column_transform(&g), g)
}

fn random_fe(f: &FieldContext, rng: &mut ChaCha8Rng) -> Fe {
    f.from_index(rng.gen_range(0..f.size()))
}

fn random_nonzero(f: &FieldContext, rng: &mut ChaCha8Rng) -> Fe {
    f.from_index(rng.gen_range(1..f.size()))
}

/// Inverse of the p-th power map on F_{p^k}.
fn frob_inv(f: &FieldContext, a: Fe) -> Fe {
    f.frobenius(a, f.k() - 1)
}

/// Elements of the subfield F_{p^d}.
fn subfield(f: &FieldContext, d: u32) -> Vec<Fe> {
    (0..f.size()).map(|i| f.from_index(i)).filter(|&a| f.frobenius(a, d) == a).collect()
}

/// A first row with F_p-independent entries (requires k ≥ 4).
fn independent_row(f: &FieldContext, rng: &mut ChaCha8Rng) -> [Fe; 4] {
    loop {
        let r = [random_fe(f, rng), random_fe(f, rng), random_fe(f, rng), random_fe(f, rng)];
        if f.fp_linear_dependence(&r).is_none() {
            return r;
        }
    }
}

/// Second row a·r₁ + b·r₃ + c·r₅ + d·r₇ in terms of the Frobenius rows of r₁.
fn combine_rows(f: &FieldContext, r1: &[Fe; 4], coeffs: [Fe; 4]) -> [Fe; 4] {
    let mut out = [Fe::ZERO; 4];
    for j in 0..4 {
        let mut acc = Fe::ZERO;
        for (i, &c) in coeffs.iter().enumerate() {
            acc = f.add(acc, f.mul(c, f.frobenius(r1[j], i as u32)));
        }
        out[j] = acc;
    }
    out
}

/// Coordinates of r₉ in the basis r₁, r₃, r₅, r₇ (defined when γ₁₃₅₇ ≠ 0).
fn r9_coordinates(f: &FieldContext, r1: &[Fe; 4]) -> [Fe; 4] {
    // Solve Σ e_i r_{2i+1} = r_9 by Cramer's rule.
    let basis: Vec<[Fe; 4]> = (0..4).map(|i| {
        let mut v = [Fe::ZERO; 4];
        for j in 0..4 {
            v[j] = f.frobenius(r1[j], i);
        }
        v
    }).collect();
    let target: Vec<Fe> = (0..4).map(|j| f.frobenius(r1[j], 4)).collect();
    let full: Vec<Vec<Fe>> = basis.iter().map(|r| r.to_vec()).collect();
    let d = det(f, full.clone());
    let mut e = [Fe::ZERO; 4];
    for i in 0..4 {
        let mut m = full.clone();
        m[i] = target.clone();
        e[i] = f.div(det(f, m), d);
    }
    e
}

const MAX_TRIES: usize = 20_000;

/// A matrix in the requested stratum, reproducible from the seed.
pub fn sample_in_stratum(label: StratumLabel, ctx: &FieldContext, seed: u64) -> Result<RepMatrix> {
    use StratumLabel::*;
    let k = ctx.k();
    let needs_independent = matches!(label, EssGeneric | S4 | S5a | S5b | S7a | S7b);
    if needs_independent && k < 4 {
        return Err(Error::Unsatisfiable(format!("{label} needs γ1357 ≠ 0, impossible with k = {k} < 4")));
    }
    if label == S9b && k % 2 != 0 {
        return Err(Error::Unsatisfiable(format!("the S9b normal form needs F_(p^2) inside F_(p^{k})")));
    }
    if matches!(label, S10 | S9b | S6 | S8 | S9a) && k < 3 {
        return Err(Error::Unsatisfiable(format!("{label} with k = {k} cannot be faithful")));
    }
    let f = ctx;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (label as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let fp2 = if label == S9b { subfield(f, 2) } else { Vec::new() };
    for _ in 0..MAX_TRIES {
        let cand: RepMatrix = match label {
            EssGeneric | S4 | S5a | S5b | S7a | S7b => {
                let r1 = independent_row(f, &mut rng);
                let e = r9_coordinates(f, &r1);
                let a = random_fe(f, &mut rng);
                let (b, c, d) = match label {
                    EssGeneric => (random_fe(f, &mut rng), random_fe(f, &mut rng), random_nonzero(f, &mut rng)),
                    S4 => {
                        // γ₁₂₃₄ ∝ c(c^p + d^p e₇) − d(b^p + d^p e₅); solve for b.
                        let c = random_fe(f, &mut rng);
                        let d = random_nonzero(f, &mut rng);
                        let dp = f.frobenius(d, 1);
                        let lhs = f.mul(c, f.add(f.frobenius(c, 1), f.mul(dp, e[3])));
                        let bp = f.sub(f.div(lhs, d), f.mul(dp, e[2]));
                        (frob_inv(f, bp), c, d)
                    }
                    S5a => (random_nonzero(f, &mut rng), random_nonzero(f, &mut rng), Fe::ZERO),
                    S5b => (Fe::ZERO, random_nonzero(f, &mut rng), Fe::ZERO),
                    S7a => (random_nonzero(f, &mut rng), Fe::ZERO, Fe::ZERO),
                    _ => (Fe::ZERO, Fe::ZERO, Fe::ZERO),
                };
                let r2 = if label == S7b { [Fe::ZERO; 4] } else { combine_rows(f, &r1, [a, b, c, d]) };
                RepMatrix::new(f, [r1, r2])
            }
            S6 | S8 | S9a => {
                // First row F_p-dependent: the trailing entries are F_p-combinations of the leading ones.
                // In S9 the first row has F_p-rank 2, otherwise γ₁₂₃₅ = 0 forces c₂₄ = 0.
                let free = if label == S9a { 2 } else { 3 };
                let mut r1 = [Fe::ZERO; 4];
                for j in 0..free {
                    r1[j] = random_fe(f, &mut rng);
                }
                for j in free..4 {
                    for i in 0..free {
                        let lam = f.from_i64(rng.gen_range(0..f.p()) as i64);
                        r1[j] = f.add(r1[j], f.mul(lam, r1[i]));
                    }
                }
                let mut r2 = [random_fe(f, &mut rng), random_fe(f, &mut rng), random_fe(f, &mut rng), random_fe(f, &mut rng)];
                match label {
                    S8 => {
                        // γ₁₂₃₄ = 0: search c₂₄ over the field.
                        let sols: Vec<Fe> = (0..f.size())
                            .map(|i| f.from_index(i))
                            .filter(|&v| {
                                r2[3] = v;
                                gamma(&RepMatrix::new(f, [r1, r2]), [1, 2, 3, 4]).unwrap().is_zero()
                            })
                            .collect();
                        if sols.is_empty() {
                            continue;
                        }
                        r2[3] = sols[rng.gen_range(0..sols.len())];
                    }
                    _ => {}
                }
                RepMatrix::new(f, [r1, r2])
            }
            S9b => {
                let pick = |rng: &mut ChaCha8Rng| fp2[rng.gen_range(0..fp2.len())];
                let r1 = [f.one(), pick(&mut rng), pick(&mut rng), Fe::ZERO];
                let r2 = [Fe::ZERO, random_fe(f, &mut rng), random_fe(f, &mut rng), random_nonzero(f, &mut rng)];
                RepMatrix::new(f, [r1, r2])
            }
            S10 => {
                let r1 = [f.one(), Fe::ZERO, Fe::ZERO, Fe::ZERO];
                let r2 = [Fe::ZERO, random_fe(f, &mut rng), random_fe(f, &mut rng), random_fe(f, &mut rng)];
                RepMatrix::new(f, [r1, r2])
            }
            Degenerate => {
                let r2 = [random_fe(f, &mut rng), random_fe(f, &mut rng), random_fe(f, &mut rng), random_fe(f, &mut rng)];
                RepMatrix::new(f, [[Fe::ZERO; 4], r2])
            }
        };
        if classify(&cand) == label && is_normal_form(&cand, label) {
            return Ok(cand);
        }
    }
    Err(Error::Unsatisfiable(format!("no {label} matrix found over F_{}^{} after {MAX_TRIES} attempts", f.p(), k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let f = FieldContext::new(5, 1).unwrap();
        let m = vec![vec![f.from_i64(1), f.from_i64(2)], vec![f.from_i64(3), f.from_i64(4)]];
        assert_eq!(det(&f, m), f.from_i64(-2));
    }

    #[test]
    fn label_roundtrip() {
        for l in StratumLabel::ALL {
            assert_eq!(l.name().parse::<StratumLabel>().unwrap(), l);
        }
    }
}
