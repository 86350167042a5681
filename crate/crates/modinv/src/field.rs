//! Arithmetic in F_p and its extensions F_{p^k}.
//!
//! Elements are stored internally as Zech-logarithm codes: `0` is zero and
//! `e + 1` is `g^e` for a fixed primitive element `g`. The public view of an
//! element is always its coordinate vector in the power basis `1, t, ..., t^{k-1}`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field size for which lookup tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// Internal element code. Only meaningful together with its [`FieldContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Multiplicative group order q - 1.
    n: u32,
    /// Monic modulus, low coefficient first, length k + 1.
    modulus: Vec<u32>,
    /// antilog[e] = packed coordinates of g^e.
    antilog: Vec<u32>,
    /// log[packed] = element code.
    log: Vec<u32>,
    /// zech[d] = code of 1 + g^d.
    zech: Vec<u32>,
    /// Codes of the prime-field residues 0..p.
    prime: Vec<Fe>,
    /// lanes[code] = coordinates in 16-bit lanes (only when k ≤ 4).
    lanes: Vec<u64>,
}

/// Immutable description of F_{p^k}; cheap to clone and share across threads.
#[derive(Clone)]
pub struct FieldContext(Arc<Inner>);

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldContext {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over F_p, low coefficient first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai as u64 * bj as u64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|v| (v % p as u64) as u32).collect();
    poly_rem(&out, m, p)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically first monic irreducible of degree k, comparing the
/// coefficient tuple (c_0, c_1, ..., c_{k-1}) from the low end.
fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for code in 0..total {
        // c_0 is the most significant digit of the enumeration.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut c = code;
        for i in (0..k as usize).rev() {
            coeffs[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        coeffs[k as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    let mut v = 0u32;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v
}

fn unpack(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn poly_pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut r = vec![1u32];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(&r, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

impl FieldContext {
    /// Builds F_{p^k} with the lexicographically first monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE).ok_or_else(|| {
            Error::InvalidField(format!("field size {p}^{k} exceeds the table limit"))
        })?;
        let modulus = first_irreducible(p, k);
        Self::with_modulus(p, k, q as u32, modulus)
    }

    /// Builds F_{p^k} from an explicit monic modulus (low coefficient first).
    pub fn with_explicit_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic with residues in [0,p)".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE).ok_or_else(|| {
            Error::InvalidField(format!("field size {p}^{k} exceeds the table limit"))
        })?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible")));
        }
        Self::with_modulus(p, k, q as u32, modulus)
    }

    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Result<Self> {
        let n = q - 1;
        let factors = prime_factors(n as u64);
        // Smallest primitive element in packed order.
        let mut gen = None;
        for cand in 1..q {
            let g = unpack(cand, p, k);
            let mut g_trim = g.clone();
            poly_trim(&mut g_trim);
            if factors.iter().all(|&r| poly_pow_mod(&g_trim, n as u64 / r, &modulus, p) != vec![1]) {
                gen = Some(g_trim);
                break;
            }
        }
        let g = gen.expect("finite field has a primitive element");
        let mut antilog = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        let mut coords = vec![0u32; k as usize];
        for e in 0..n {
            coords.iter_mut().for_each(|c| *c = 0);
            coords[..cur.len()].copy_from_slice(&cur);
            let packed = pack(&coords, p);
            antilog.push(packed);
            log[packed as usize] = e + 1;
            cur = poly_mulmod(&cur, &g, &modulus, p);
        }
        let mut zech = Vec::with_capacity(n as usize);
        for d in 0..n {
            let mut c = unpack(antilog[d as usize], p, k);
            c[0] = (c[0] + 1) % p;
            zech.push(log[pack(&c, p) as usize]);
        }
        let mut inner = Inner { p, k, q, n, modulus, antilog, log, zech, prime: Vec::new(), lanes: Vec::new() };
        if k <= 4 {
            inner.lanes = std::iter::once(0)
                .chain(inner.antilog.iter().map(|&packed| {
                    unpack(packed, p, k).iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c as u64) << (16 * i))
                }))
                .collect();
        }
        inner.prime = (0..p)
            .map(|c| {
                let mut v = vec![0u32; k as usize];
                v[0] = c;
                Fe(inner.log[pack(&v, p) as usize])
            })
            .collect();
        Ok(FieldContext(Arc::new(inner)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn k(&self) -> u32 {
        self.0.k
    }
    #[inline]
    pub fn size(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe(0)
    }
    #[inline]
    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// Image of an integer in the prime field.
    #[inline]
    pub fn from_i64(&self, c: i64) -> Fe {
        let p = self.0.p as i64;
        self.0.prime[c.rem_euclid(p) as usize]
    }

    /// The class of t in F_p[t]/(modulus).
    pub fn t(&self) -> Fe {
        let mut v = vec![0u32; self.0.k as usize];
        if self.0.k == 1 {
            // t is a root of the linear modulus t + c0.
            v[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            v[1] = 1;
        }
        self.from_coords(&v)
    }

    pub fn from_coords(&self, coeffs: &[u32]) -> Fe {
        let p = self.0.p;
        let mut v = vec![0u32; self.0.k as usize];
        for (i, &c) in coeffs.iter().enumerate().take(self.0.k as usize) {
            v[i] = c % p;
        }
        Fe(self.0.log[pack(&v, p) as usize])
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        if a.0 == 0 {
            return vec![0; self.0.k as usize];
        }
        unpack(self.0.antilog[(a.0 - 1) as usize], self.0.p, self.0.k)
    }

    /// Index of the element in 0..q (its packed coordinate value).
    pub fn index_of(&self, a: Fe) -> u32 {
        if a.0 == 0 {
            0
        } else {
            self.0.antilog[(a.0 - 1) as usize]
        }
    }

    /// Discrete logarithm to the primitive element; None for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| a.0 - 1)
    }

    pub fn from_index(&self, idx: u32) -> Fe {
        Fe(self.0.log[idx as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.0.n;
        let (i, j) = (a.0 - 1, b.0 - 1);
        let d = if j >= i { j - i } else { j + n - i };
        let z = self.0.zech[d as usize];
        if z == 0 {
            return Fe(0);
        }
        let mut t = i + z - 1;
        if t >= n {
            t -= n;
        }
        Fe(t + 1)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let n = self.0.n;
        let mut t = a.0 - 1 + n / 2;
        if t >= n {
            t -= n;
        }
        Fe(t + 1)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = self.0.n;
        let mut t = a.0 + b.0 - 2;
        if t >= n {
            t -= n;
        }
        Fe(t + 1)
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let n = self.0.n;
        let e = a.0 - 1;
        Some(Fe(if e == 0 { 1 } else { n - e + 1 }))
    }

    /// Whether the 16-bit lane accumulation below is available.
    #[inline]
    pub(crate) fn has_lanes(&self) -> bool {
        !self.0.lanes.is_empty()
    }

    /// Coordinates of a·b in 16-bit lanes, for lazy accumulation.
    #[inline]
    pub(crate) fn mul_lanes(&self, a: Fe, b: Fe) -> u64 {
        self.0.lanes[self.mul(a, b).0 as usize]
    }

    /// Number of lane additions that cannot overflow.
    pub(crate) fn lane_capacity(&self) -> usize {
        (0xFFFF / (self.0.p - 1)) as usize - 1
    }

    /// Reduces every lane modulo p.
    #[inline]
    pub(crate) fn reduce_lanes(&self, v: u64) -> u64 {
        let p = self.0.p as u64;
        let mut out = 0;
        for i in 0..self.0.k {
            out |= ((v >> (16 * i)) & 0xFFFF) % p << (16 * i);
        }
        out
    }

    /// Element with the given (reduced) lane coordinates.
    #[inline]
    pub(crate) fn from_lanes(&self, v: u64) -> Fe {
        let p = self.0.p;
        let mut packed = 0u32;
        for i in (0..self.0.k).rev() {
            packed = packed * p + ((v >> (16 * i)) & 0xFFFF) as u32 % p;
        }
        Fe(self.0.log[packed as usize])
    }

    /// a / b; panics on division by zero (callers check nonvanishing first).
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b).expect("division by zero field element"))
    }

    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            assert!(e > 0, "zero raised to a negative power");
            return Fe(0);
        }
        let n = self.0.n as i64;
        let t = ((a.0 as i64 - 1) * (e.rem_euclid(n))).rem_euclid(n);
        Fe(t as u32 + 1)
    }

    /// a^{p^e}.
    pub fn frobenius(&self, a: Fe, e: u32) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let n = self.0.n as u64;
        let mut t = (a.0 - 1) as u64;
        for _ in 0..e {
            t = t * self.0.p as u64 % n;
        }
        Fe(t as u32 + 1)
    }

    /// True when the element lies in the prime field.
    pub fn in_prime_field(&self, a: Fe) -> bool {
        self.frobenius(a, 1) == a
    }

    /// Canonical text form, e.g. `2+1*t+2*t^3`.
    pub fn format(&self, a: Fe) -> String {
        let c = self.coords(a);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            parts.push(match i {
                0 => format!("{ci}"),
                1 => format!("{ci}*t"),
                _ => format!("{ci}*t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parses the text form produced by [`FieldContext::format`]; also accepts
    /// bare `t`, `t^i` and negative integer constants.
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        let p = self.0.p as i64;
        let mut coeffs = vec![0i64; self.0.k as usize];
        for raw in s.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in field element {s:?}")));
            }
            let (c, power) = if let Some(idx) = term.find('t') {
                let (cpart, tpart) = term.split_at(idx);
                let c = match cpart.trim_end_matches('*').trim() {
                    "" => 1,
                    v => v.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {v:?}")))?,
                };
                let power = match tpart[1..].trim() {
                    "" => 1usize,
                    v => v
                        .strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad power of t {tpart:?}")))?,
                };
                (c, power)
            } else {
                let c = term.parse::<i64>().map_err(|_| Error::Parse(format!("bad constant {term:?}")))?;
                (c, 0)
            };
            if power >= coeffs.len() {
                return Err(Error::Parse(format!("power t^{power} exceeds the extension degree")));
            }
            coeffs[power] += c;
        }
        let v: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
        Ok(self.from_coords(&v))
    }

    /// A nonzero F_p-combination λ with Σ λ_i v_i = 0, if the v_i are F_p-dependent.
    pub fn fp_linear_dependence(&self, v: &[Fe]) -> Option<Vec<u32>> {
        let cols: Vec<Vec<u32>> = v.iter().map(|&a| self.coords(a)).collect();
        fp_kernel_vector(&cols, self.0.p)
    }

    /// F_p-rank of a list of vectors over the field (each a list of elements,
    /// flattened to coordinates).
    pub fn fp_rank(&self, vectors: &[Vec<Fe>]) -> usize {
        let cols: Vec<Vec<u32>> = vectors
            .iter()
            .map(|vec| vec.iter().flat_map(|&a| self.coords(a)).collect())
            .collect();
        fp_rank_cols(&cols, self.0.p)
    }

    pub fn element(&self, a: Fe) -> FieldElement {
        FieldElement { ctx: self.clone(), v: a }
    }
}

/// Reduced row echelon form over F_p of the matrix whose columns are `cols`;
/// returns the pivot columns and the reduced rows.
fn fp_rref(cols: &[Vec<u32>], p: u32) -> (Vec<usize>, Vec<Vec<u32>>) {
    let n = cols.len();
    let m = cols.first().map_or(0, |c| c.len());
    let mut rows: Vec<Vec<u32>> = (0..m).map(|i| cols.iter().map(|c| c[i] % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for i in 0..m {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..n {
                    let sub = (f as u64 * rows[r][j] as u64 % p as u64) as u32;
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    rows.truncate(r);
    (pivots, rows)
}

fn fp_rank_cols(cols: &[Vec<u32>], p: u32) -> usize {
    if cols.is_empty() {
        return 0;
    }
    fp_rref(cols, p).0.len()
}

fn fp_kernel_vector(cols: &[Vec<u32>], p: u32) -> Option<Vec<u32>> {
    let n = cols.len();
    if n == 0 {
        return None;
    }
    let (pivots, rows) = fp_rref(cols, p);
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut lambda = vec![0u32; n];
    lambda[free] = 1;
    for (r, &pc) in pivots.iter().enumerate() {
        lambda[pc] = (p - rows[r][free]) % p;
    }
    Some(lambda)
}

/// A field element bundled with its context; the checked public API.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    ctx: FieldContext,
    v: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.format(self.v))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.format(self.v))
    }
}

/// JSON form of a field element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldElementJson {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    pub coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn new(ctx: &FieldContext, coeffs: &[u32]) -> Self {
        FieldElement { ctx: ctx.clone(), v: ctx.from_coords(coeffs) }
    }
    pub fn from_raw(ctx: &FieldContext, v: Fe) -> Self {
        FieldElement { ctx: ctx.clone(), v }
    }
    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }
    pub fn raw(&self) -> Fe {
        self.v
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.ctx.coords(self.v)
    }
    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.add(self.v, other.v)))
    }
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.sub(self.v, other.v)))
    }
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.mul(self.v, other.v)))
    }
    pub fn inv(&self) -> Result<Self> {
        let v = self.ctx.inv(self.v).ok_or(Error::ZeroInverse)?;
        Ok(Self::from_raw(&self.ctx, v))
    }
    pub fn frobenius(&self, e: u32) -> Self {
        Self::from_raw(&self.ctx, self.ctx.frobenius(self.v, e))
    }

    pub fn to_json(&self) -> FieldElementJson {
        FieldElementJson {
            p: self.ctx.p(),
            k: self.ctx.k(),
            modulus: self.ctx.modulus().to_vec(),
            coeffs: self.coeffs(),
        }
    }

    pub fn from_json(j: &FieldElementJson) -> Result<Self> {
        let ctx = FieldContext::with_explicit_modulus(j.p, j.modulus.clone())?;
        if ctx.k() != j.k || j.coeffs.len() != j.k as usize || j.coeffs.iter().any(|&c| c >= j.p) {
            return Err(Error::Parse("field element JSON is inconsistent".into()));
        }
        Ok(Self::new(&ctx, &j.coeffs))
    }

    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Self> {
        Ok(Self::from_raw(ctx, ctx.parse(s)?))
    }
}

/// Free-standing form of the dependence test on checked elements.
pub fn fp_linear_dependence(v: &[FieldElement]) -> Result<Option<Vec<u32>>> {
    let Some(first) = v.first() else {
        return Err(Error::Precondition("fp_linear_dependence needs a nonempty list".into()));
    };
    for e in v {
        first.check(e)?;
    }
    let raw: Vec<Fe> = v.iter().map(|e| e.v).collect();
    Ok(first.ctx.fp_linear_dependence(&raw))
}
