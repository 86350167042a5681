//! Sparse polynomials in x, y, z over F_{p^k}, ordered by grevlex with x < y < z.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};

const EXP_BITS: u32 = 21;
/// Largest exponent (and total degree) a monomial may carry.
pub const MAX_EXP: u32 = (1 << EXP_BITS) - 1;
const MASK: u64 = MAX_EXP as u64;
const KEY_BIAS: u64 = (MASK << EXP_BITS) | MASK;

/// x^a y^b z^c, packed so that integer order is grevlex order.
///
/// Layout: degree in the top bits, then `MAX - a`, then `MAX - b`. At equal
/// degree a smaller x-exponent wins, then a smaller y-exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    /// Panics when the total degree exceeds [`MAX_EXP`].
    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Self::try_new(ex, ey, ez).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(ex: u32, ey: u32, ez: u32) -> Result<Self> {
        let deg = ex as u64 + ey as u64 + ez as u64;
        if deg > MAX_EXP as u64 {
            return Err(Error::Overflow(format!("monomial degree {deg} exceeds {MAX_EXP}")));
        }
        Ok(Monomial((deg << (2 * EXP_BITS)) | ((MASK - ex as u64) << EXP_BITS) | (MASK - ey as u64)))
    }

    pub const ONE: Monomial = Monomial(KEY_BIAS);

    #[inline]
    pub fn deg(self) -> u32 {
        (self.0 >> (2 * EXP_BITS)) as u32
    }
    #[inline]
    pub fn ex(self) -> u32 {
        (MASK - ((self.0 >> EXP_BITS) & MASK)) as u32
    }
    #[inline]
    pub fn ey(self) -> u32 {
        (MASK - (self.0 & MASK)) as u32
    }
    #[inline]
    pub fn ez(self) -> u32 {
        self.deg() - self.ex() - self.ey()
    }
    pub fn exponents(self) -> [u32; 3] {
        [self.ex(), self.ey(), self.ez()]
    }
    /// Product; unchecked beyond a debug assertion (callers bound degrees first).
    #[inline]
    pub(crate) fn mul_unchecked(self, other: Monomial) -> Monomial {
        debug_assert!(self.deg() + other.deg() <= MAX_EXP);
        Monomial(self.0 + other.0 - KEY_BIAS)
    }

    pub fn try_mul(self, other: Monomial) -> Result<Monomial> {
        Monomial::try_new(self.ex() + other.ex(), self.ey() + other.ey(), self.ez() + other.ez())
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.ex() <= other.ex() && self.ey() <= other.ey() && self.ez() <= other.ez()
    }

    pub fn try_div(self, d: Monomial) -> Option<Monomial> {
        if d.divides(self) {
            Some(Monomial::new(self.ex() - d.ex(), self.ey() - d.ey(), self.ez() - d.ez()))
        } else {
            None
        }
    }

    pub fn pow(self, e: u32) -> Result<Monomial> {
        let [a, b, c] = self.exponents();
        let scale = |v: u32| v.checked_mul(e).ok_or_else(|| Error::Overflow("monomial power".into()));
        Monomial::try_new(scale(a)?, scale(b)?, scale(c)?)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{}*z^{}", self.ex(), self.ey(), self.ez())
    }
}
impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial with terms stored in descending grevlex order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ctx: FieldContext,
    terms: Vec<(Monomial, Fe)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

/// JSON term: exponents and coefficient coordinates.
pub type TermJson = ([u32; 3], Vec<u32>);

impl Polynomial {
    pub fn zero(ctx: &FieldContext) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &FieldContext, c: Fe) -> Self {
        Self::term(ctx, Monomial::ONE, c)
    }

    pub fn one(ctx: &FieldContext) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn term(ctx: &FieldContext, m: Monomial, c: Fe) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn monomial(ctx: &FieldContext, ex: u32, ey: u32, ez: u32) -> Self {
        Self::term(ctx, Monomial::new(ex, ey, ez), ctx.one())
    }

    pub fn x(ctx: &FieldContext) -> Self {
        Self::monomial(ctx, 1, 0, 0)
    }
    pub fn y(ctx: &FieldContext) -> Self {
        Self::monomial(ctx, 0, 1, 0)
    }
    pub fn z(ctx: &FieldContext) -> Self {
        Self::monomial(ctx, 0, 0, 1)
    }

    /// δ = y² − xz.
    pub fn delta(ctx: &FieldContext) -> Self {
        Self::from_terms(
            ctx,
            vec![(Monomial::new(0, 2, 0), ctx.one()), (Monomial::new(1, 0, 1), ctx.from_i64(-1))],
        )
    }

    /// Normalises an arbitrary term list (sorts, merges, drops zeros).
    pub fn from_terms(ctx: &FieldContext, mut terms: Vec<(Monomial, Fe)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Fe)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = ctx.add(last.1, c),
                _ => out.push((m, c)),
            }
            if out.last().map_or(false, |t| t.1.is_zero()) {
                out.pop();
            }
        }
        Polynomial { ctx: ctx.clone(), terms: out }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }
    pub fn terms(&self) -> &[(Monomial, Fe)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.deg())
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => a.0.deg() == b.0.deg(),
            _ => true,
        }
    }

    pub fn coefficient(&self, m: Monomial) -> Fe {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1,
            Err(_) => Fe::ZERO,
        }
    }

    pub fn lead_term(&self) -> Result<(Monomial, Fe)> {
        self.terms.first().copied().ok_or(Error::ZeroPolynomial)
    }

    pub fn lead_monomial(&self) -> Result<Monomial> {
        Ok(self.lead_term()?.0)
    }

    pub fn lead_coeff(&self) -> Result<Fe> {
        Ok(self.lead_term()?.1)
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.ctx == other.ctx, "polynomial field contexts differ");
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate: bool) -> Polynomial {
        let f = &self.ctx;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { f.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(a[i].1, b[j].1) } else { f.add(a[i].1, b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for &(m, c) in &b[j..] {
            out.push((m, if negate { f.neg(c) } else { c }));
        }
        Polynomial { ctx: self.ctx.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.degree() as u64 + other.degree() as u64 > MAX_EXP as u64 {
            return Err(Error::Overflow("product degree exceeds the exponent limit".into()));
        }
        Ok(self.mul_impl(other, None))
    }

    /// self − c·m·other, the basic subduction update.
    pub fn sub_scaled(&self, c: Fe, m: Monomial, other: &Self) -> Self {
        self.assert_same(other);
        let f = &self.ctx;
        let nc = f.neg(c);
        let shifted: Vec<(Monomial, Fe)> =
            other.terms.iter().map(|&(om, oc)| (om.mul_unchecked(m), f.mul(oc, nc))).collect();
        self.merge(&Polynomial { ctx: self.ctx.clone(), terms: shifted }, false)
    }

    pub fn scale(&self, c: Fe) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let f = &self.ctx;
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        assert!(self.degree() + m.deg() <= MAX_EXP, "exponent overflow");
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|&(t, c)| (t.mul_unchecked(m), c)).collect() }
    }

    pub fn mul_x_pow(&self, e: u32) -> Self {
        self.mul_monomial(Monomial::new(e, 0, 0))
    }

    /// Product keeping only terms with x-exponent below `prec` (when given).
    fn mul_impl(&self, other: &Self, prec: Option<u32>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        if self.is_homogeneous() && other.is_homogeneous() && self.dense_pays(other, prec) {
            return self.mul_dense_homogeneous(other, prec);
        }
        let f = &self.ctx;
        let mut prods: Vec<(Monomial, Fe)> = Vec::with_capacity(self.len() * other.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                if let Some(pr) = prec {
                    if ma.ex() + mb.ex() >= pr {
                        continue;
                    }
                }
                prods.push((ma.mul_unchecked(mb), f.mul(ca, cb)));
            }
        }
        Self::from_terms(&self.ctx, prods)
    }

    /// Whether the dense (x, y) grid is small next to the number of term pairs.
    fn dense_pays(&self, other: &Self, prec: Option<u32>) -> bool {
        let max_ex = |p: &Self| p.terms.iter().map(|t| t.0.ex()).max().unwrap_or(0) as u64;
        let mut rows = max_ex(self) + max_ex(other) + 1;
        if let Some(pr) = prec {
            rows = rows.min(pr as u64);
        }
        let cells = rows * (self.degree() + other.degree() + 1) as u64;
        cells <= 4 * (self.len() as u64) * (other.len() as u64)
    }

    fn mul_dense_homogeneous(&self, other: &Self, prec: Option<u32>) -> Self {
        let f = &self.ctx;
        let deg = self.degree() + other.degree();
        let width = deg as usize + 1;
        let max_ex_a = self.terms.iter().map(|t| t.0.ex()).max().unwrap_or(0);
        let max_ex_b = other.terms.iter().map(|t| t.0.ex()).max().unwrap_or(0);
        let mut rows = (max_ex_a + max_ex_b + 1) as usize;
        if let Some(pr) = prec {
            rows = rows.min(pr as usize);
        }
        if rows == 0 {
            return Self::zero(&self.ctx);
        }
        let b_off: Vec<(u32, usize, Fe)> = other
            .terms
            .iter()
            .map(|&(m, c)| (m.ex(), m.ex() as usize * width + m.ey() as usize, c))
            .collect();
        let acc: Vec<Fe> = if f.has_lanes() {
            // Accumulate coordinates lazily, reducing before any lane can overflow.
            let mut lanes = vec![0u64; rows * width];
            let cap = f.lane_capacity();
            for chunk in self.terms.chunks(cap) {
                for &(ma, ca) in chunk {
                    let ea = ma.ex();
                    if ea as usize >= rows {
                        continue;
                    }
                    let base = ea as usize * width + ma.ey() as usize;
                    let limit = rows as u32 - ea;
                    for &(eb, off, cb) in &b_off {
                        if eb >= limit {
                            continue;
                        }
                        lanes[base + off] += f.mul_lanes(ca, cb);
                    }
                }
                lanes.iter_mut().for_each(|v| *v = f.reduce_lanes(*v));
            }
            lanes.into_iter().map(|v| if v == 0 { Fe::ZERO } else { f.from_lanes(v) }).collect()
        } else {
            let mut acc = vec![Fe::ZERO; rows * width];
            for &(ma, ca) in &self.terms {
                let ea = ma.ex();
                if ea as usize >= rows {
                    continue;
                }
                let base = ea as usize * width + ma.ey() as usize;
                let limit = rows as u32 - ea;
                for &(eb, off, cb) in &b_off {
                    if eb >= limit {
                        continue;
                    }
                    let idx = base + off;
                    acc[idx] = f.add(acc[idx], f.mul(ca, cb));
                }
            }
            acc
        };
        let mut terms = Vec::new();
        for ex in 0..rows {
            let row = &acc[ex * width..(ex + 1) * width];
            for ey in 0..=(deg as usize).saturating_sub(ex) {
                let c = row[ey];
                if !c.is_zero() {
                    terms.push((Monomial::new(ex as u32, ey as u32, deg - ex as u32 - ey as u32), c));
                }
            }
        }
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// Product modulo x^prec.
    pub fn mul_trunc(&self, other: &Self, prec: u32) -> Self {
        self.assert_same(other);
        self.mul_impl(other, Some(prec))
    }

    /// Drops every term with x-exponent ≥ prec.
    pub fn truncate_x(&self, prec: u32) -> Self {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().copied().filter(|t| t.0.ex() < prec).collect(),
        }
    }

    /// f^p via Frobenius on coefficients and exponent scaling.
    pub fn frobenius_power(&self) -> Self {
        let f = &self.ctx;
        let p = f.p();
        assert!(self.degree() as u64 * p as u64 <= MAX_EXP as u64, "exponent overflow in p-th power");
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| (Monomial::new(m.ex() * p, m.ey() * p, m.ez() * p), f.frobenius(c, 1)))
            .collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// Plain square-and-multiply, without the Frobenius shortcut.
    pub fn pow_binary(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// f^e, using f^{pq+r} = (f^q)^p · f^r.
    pub fn pow(&self, e: u32) -> Self {
        assert!(self.degree() as u64 * e as u64 <= MAX_EXP as u64, "exponent overflow in power");
        let p = self.ctx.p();
        if e < p {
            return self.pow_binary(e);
        }
        let high = self.pow(e / p).frobenius_power();
        let r = e % p;
        if r == 0 {
            high
        } else {
            &high * &self.pow_binary(r)
        }
    }

    /// f^e modulo x^prec.
    pub fn pow_trunc(&self, e: u32, prec: u32) -> Self {
        let p = self.ctx.p();
        if e < p {
            let mut result = Self::one(&self.ctx);
            for _ in 0..e {
                result = result.mul_trunc(self, prec);
            }
            return result;
        }
        // Terms of f^q with x-exponent ≥ ceil(prec/p) cannot survive the p-th power.
        let inner_prec = (prec + p - 1) / p;
        let high = self.pow_trunc(e / p, inner_prec).frobenius_power().truncate_x(prec);
        let r = e % p;
        if r == 0 {
            high
        } else {
            high.mul_trunc(&self.pow_trunc(r, prec), prec)
        }
    }

    /// f = x^e·g with e maximal.
    pub fn divide_out_x(&self) -> Result<(Polynomial, u32)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let e = self.terms.iter().map(|t| t.0.ex()).min().unwrap();
        let d = Monomial::new(e, 0, 0);
        let terms = self.terms.iter().map(|&(m, c)| (m.try_div(d).unwrap(), c)).collect();
        Ok((Polynomial { ctx: self.ctx.clone(), terms }, e))
    }

    /// f / (c·m), requiring every term to be divisible by m.
    pub fn exact_divide_by_term(&self, m: Monomial, c: Fe) -> Result<Polynomial> {
        let inv = self.ctx.inv(c).ok_or(Error::ZeroInverse)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(t, a) in &self.terms {
            let q = t.try_div(m).ok_or_else(|| Error::NotDivisible {
                monomial: t.to_string(),
                divisor: m.to_string(),
            })?;
            terms.push((q, self.ctx.mul(a, inv)));
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    /// Linear form a·x + b·y + c·z.
    pub fn linear(ctx: &FieldContext, a: Fe, b: Fe, c: Fe) -> Self {
        Self::from_terms(
            ctx,
            vec![(Monomial::new(1, 0, 0), a), (Monomial::new(0, 1, 0), b), (Monomial::new(0, 0, 1), c)],
        )
    }

    /// Image under x→x, y→y+c₁x, z→z+2c₁y+(c₁²+c₂)x, by Horner expansion in z then y.
    pub fn substitute_upper_triangular(&self, c1: Fe, c2: Fe) -> Polynomial {
        let f = &self.ctx;
        if self.is_zero() {
            return self.clone();
        }
        let one = f.one();
        let two_c1 = f.add(c1, c1);
        let c3 = f.add(f.mul(c1, c1), c2);
        let zimg = Self::linear(f, c3, two_c1, one);
        let yimg = Self::linear(f, c1, one, Fe::ZERO);
        // Group by z-exponent, then by y-exponent.
        let max_z = self.terms.iter().map(|t| t.0.ez()).max().unwrap();
        let mut by_z: Vec<Vec<(Monomial, Fe)>> = vec![Vec::new(); max_z as usize + 1];
        for &(m, c) in &self.terms {
            by_z[m.ez() as usize].push((Monomial::new(m.ex(), m.ey(), 0), c));
        }
        let subst_y = |g: &[(Monomial, Fe)]| -> Polynomial {
            if g.is_empty() {
                return Self::zero(f);
            }
            let max_y = g.iter().map(|t| t.0.ey()).max().unwrap();
            let mut by_y: Vec<Vec<(Monomial, Fe)>> = vec![Vec::new(); max_y as usize + 1];
            for &(m, c) in g {
                by_y[m.ey() as usize].push((Monomial::new(m.ex(), 0, 0), c));
            }
            let mut acc = Self::zero(f);
            for b in (0..=max_y as usize).rev() {
                acc = &(&acc * &yimg) + &Self::from_terms(f, std::mem::take(&mut by_y[b]));
            }
            acc
        };
        let mut acc = Self::zero(f);
        for c in (0..=max_z as usize).rev() {
            acc = &(&acc * &zimg) + &subst_y(&by_z[c]);
        }
        acc
    }

    /// Applies a field map to every coefficient (used for Frobenius twists).
    pub fn map_coeffs(&self, g: impl Fn(Fe) -> Fe) -> Polynomial {
        Self::from_terms(&self.ctx, self.terms.iter().map(|&(m, c)| (m, g(c))).collect())
    }

    /// True when no term involves z.
    pub fn is_in_xy(&self) -> bool {
        self.terms.iter().all(|t| t.0.ez() == 0)
    }

    /// Canonical text form.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|&(m, c)| {
                let cs = self.ctx.format(c);
                let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                format!("{cs}*{m}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the canonical text form (factors may be omitted or reordered).
    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Polynomial> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero(ctx));
        }
        let mut terms = Vec::new();
        for raw in s.split(" + ") {
            let raw = raw.trim();
            let (coeff, rest) = if let Some(stripped) = raw.strip_prefix('(') {
                let close = stripped.find(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {raw:?}")))?;
                (ctx.parse(&stripped[..close])?, stripped[close + 1..].trim_start_matches('*'))
            } else {
                // Coefficient is everything before the first variable factor.
                let factors: Vec<&str> = raw.split('*').collect();
                let first_var = factors
                    .iter()
                    .position(|fct| matches!(fct.chars().next(), Some('x' | 'y' | 'z')))
                    .unwrap_or(factors.len());
                let cpart = factors[..first_var].join("*");
                let coeff = if cpart.is_empty() { ctx.one() } else { ctx.parse(&cpart)? };
                let rest_start = if first_var == factors.len() { raw.len() } else { raw.len() - factors[first_var..].join("*").len() };
                (coeff, &raw[rest_start..])
            };
            let mut e = [0u32; 3];
            for fct in rest.split('*').filter(|s| !s.is_empty()) {
                let (var, pow) = match fct.split_once('^') {
                    Some((v, p)) => (v, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {fct:?}")))?),
                    None => (fct, 1),
                };
                let idx = match var {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    _ => return Err(Error::Parse(format!("unknown factor {fct:?}"))),
                };
                e[idx] = e[idx].checked_add(pow).ok_or_else(|| Error::Overflow("exponent".into()))?;
            }
            terms.push((Monomial::try_new(e[0], e[1], e[2])?, coeff));
        }
        Ok(Self::from_terms(ctx, terms))
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|&(m, c)| (m.exponents(), self.ctx.coords(c))).collect()
    }

    pub fn from_json(ctx: &FieldContext, terms: &[TermJson]) -> Result<Polynomial> {
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if c.len() != ctx.k() as usize || c.iter().any(|&v| v >= ctx.p()) {
                return Err(Error::Parse("coefficient vector does not match the field".into()));
            }
            out.push((Monomial::try_new(e[0], e[1], e[2])?, ctx.from_coords(c)));
        }
        Ok(Self::from_terms(ctx, out))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        self.assert_same(other);
        self.merge(other, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self.assert_same(other);
        self.merge(other, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ctx.from_i64(-1))
    }
}

/// Product of many polynomials by a balanced tree (association-independent result).
pub fn product_tree(ctx: &FieldContext, mut factors: Vec<Polynomial>) -> Polynomial {
    if factors.is_empty() {
        return Polynomial::one(ctx);
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity((factors.len() + 1) / 2);
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a * &b),
                None => next.push(a),
            }
        }
        factors = next;
    }
    factors.pop().unwrap()
}

/// Parallel variant of [`product_tree`].
pub fn product_tree_par(ctx: &FieldContext, factors: Vec<Polynomial>) -> Polynomial {
    fn rec(ctx: &FieldContext, fs: &[Polynomial]) -> Polynomial {
        match fs.len() {
            0 => Polynomial::one(ctx),
            1 => fs[0].clone(),
            n => {
                let (a, b) = fs.split_at(n / 2);
                let (pa, pb) = rayon::join(|| rec(ctx, a), || rec(ctx, b));
                &pa * &pb
            }
        }
    }
    rec(ctx, &factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_roundtrip() {
        let m = Monomial::new(3, 7, 11);
        assert_eq!(m.exponents(), [3, 7, 11]);
        assert_eq!(m.mul_unchecked(Monomial::new(1, 2, 3)).exponents(), [4, 9, 14]);
        assert_eq!(Monomial::ONE.exponents(), [0, 0, 0]);
    }

    #[test]
    fn grevlex_basics() {
        assert!(Monomial::new(0, 2, 0) > Monomial::new(1, 0, 1));
        assert!(Monomial::new(2, 2, 0) > Monomial::new(3, 0, 1));
        assert!(Monomial::new(0, 0, 1) > Monomial::new(0, 1, 0));
        assert!(Monomial::new(0, 1, 0) > Monomial::new(1, 0, 0));
    }
}
