//! Subduction, tête-à-têtes, SAGBI verification and the SAGBI/Divide-by-x loop.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::poly::{Monomial, Polynomial};

/// An ordered subalgebra basis with cached lead terms.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    ctx: FieldContext,
    elems: Vec<Polynomial>,
    names: Vec<String>,
    leads: Vec<(Monomial, Fe)>,
}

impl SubalgebraBasis {
    pub fn new(ctx: &FieldContext) -> Self {
        SubalgebraBasis { ctx: ctx.clone(), elems: Vec::new(), names: Vec::new(), leads: Vec::new() }
    }

    pub fn from_named(ctx: &FieldContext, items: Vec<(String, Polynomial)>) -> Result<Self> {
        let mut b = Self::new(ctx);
        for (n, p) in items {
            b.push(n, p)?;
        }
        Ok(b)
    }

    pub fn from_polys(ctx: &FieldContext, items: Vec<Polynomial>) -> Result<Self> {
        Self::from_named(ctx, items.into_iter().enumerate().map(|(i, p)| (format!("h{}", i + 1), p)).collect())
    }

    pub fn push(&mut self, name: impl Into<String>, p: Polynomial) -> Result<()> {
        if p.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        self.leads.push(p.lead_term()?);
        self.elems.push(p);
        self.names.push(name.into());
        Ok(())
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn elements(&self) -> &[Polynomial] {
        &self.elems
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.leads.iter().map(|l| l.0).collect()
    }
    pub fn degrees(&self) -> Vec<u32> {
        self.elems.iter().map(|e| e.degree()).collect()
    }

    /// Index of the element with lead monomial x, if any.
    fn x_index(&self) -> Option<usize> {
        self.leads.iter().position(|l| l.0 == Monomial::new(1, 0, 0))
    }

    /// The pure shape: x, pure y-powers and at most one pure z-power.
    pub fn has_pure_shape(&self) -> bool {
        let mut zs = 0;
        for &(m, _) in &self.leads {
            let [a, b, c] = m.exponents();
            match (a, b, c) {
                (1, 0, 0) => {}
                (0, b, 0) if b > 0 => {}
                (0, 0, c) if c > 0 => zs += 1,
                _ => return false,
            }
        }
        zs <= 1 && self.x_index().is_some()
    }

    /// Indices and exponents of the pure y-power elements.
    fn y_family(&self) -> Vec<(usize, u32)> {
        self.leads
            .iter()
            .enumerate()
            .filter(|(_, l)| l.0.ex() == 0 && l.0.ez() == 0 && l.0.ey() > 0)
            .map(|(i, l)| (i, l.0.ey()))
            .collect()
    }
}

/// Exponent vector I with Π LM(h_i)^{I_i} = m, greedy from the back; x is peeled first.
pub fn represent_monomial(m: Monomial, b: &SubalgebraBasis) -> Option<Vec<u32>> {
    let xi = b.x_index();
    let leads = b.lead_monomials();
    let order: Vec<usize> = (0..leads.len()).rev().filter(|&i| Some(i) != xi).collect();
    let mut exps = vec![0u32; leads.len()];
    let target = m.exponents();
    if dfs(&leads, &order, 0, target, &mut exps, xi) {
        Some(exps)
    } else {
        None
    }
}

fn dfs(leads: &[Monomial], order: &[usize], pos: usize, rem: [u32; 3], exps: &mut [u32], xi: Option<usize>) -> bool {
    if rem == [0, 0, 0] {
        return true;
    }
    if pos == order.len() {
        if rem[1] == 0 && rem[2] == 0 {
            if let Some(x) = xi {
                exps[x] = rem[0];
                return true;
            }
        }
        return false;
    }
    let i = order[pos];
    let l = leads[i].exponents();
    let mut max = u32::MAX;
    for k in 0..3 {
        if l[k] > 0 {
            max = max.min(rem[k] / l[k]);
        }
    }
    if max == u32::MAX {
        max = 0;
    }
    for e in (0..=max).rev() {
        exps[i] = e;
        let next = [rem[0] - e * l[0], rem[1] - e * l[1], rem[2] - e * l[2]];
        if dfs(leads, order, pos + 1, next, exps, xi) {
            return true;
        }
    }
    exps[i] = 0;
    false
}

/// One subduction step: subtract c·h^I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubductionStep {
    pub exponents: Vec<u32>,
    pub coeff: Fe,
}

#[derive(Clone, Debug)]
pub struct SubductionTrace {
    pub input: Polynomial,
    pub steps: Vec<SubductionStep>,
    pub remainder: Polynomial,
}

impl SubductionTrace {
    pub fn reduced_to_zero(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// Step cap exhausted; carries the partial trace.
#[derive(Debug)]
pub struct CapExceeded {
    pub error: Error,
    pub partial: SubductionTrace,
}

/// Memoised power products of basis elements.
pub struct ProductCache<'a> {
    basis: &'a SubalgebraBasis,
    memo: HashMap<Vec<u32>, Polynomial>,
}

impl<'a> ProductCache<'a> {
    pub fn new(basis: &'a SubalgebraBasis) -> Self {
        ProductCache { basis, memo: HashMap::new() }
    }

    /// h^I.
    pub fn product(&mut self, exps: &[u32]) -> Polynomial {
        if let Some(p) = self.memo.get(exps) {
            return p.clone();
        }
        let f = self.basis.ctx();
        let total: u32 = exps.iter().sum();
        let out = if total == 0 {
            Polynomial::one(f)
        } else if total == 1 {
            let i = exps.iter().position(|&e| e == 1).unwrap();
            self.basis.elems[i].clone()
        } else {
            let p = f.p();
            if exps.iter().all(|&e| e % p == 0) {
                let inner: Vec<u32> = exps.iter().map(|e| e / p).collect();
                self.product(&inner).frobenius_power()
            } else {
                // Peel the factor with the fewest terms among those whose exponent is not a multiple of p.
                let j = (0..exps.len())
                    .filter(|&i| exps[i] % p != 0)
                    .min_by_key(|&i| self.basis.elems[i].len())
                    .unwrap();
                let mut rest = exps.to_vec();
                rest[j] -= 1;
                let r = self.product(&rest);
                &r * &self.basis.elems[j]
            }
        };
        self.memo.insert(exps.to_vec(), out.clone());
        out
    }

    fn lead_coeff(&self, exps: &[u32]) -> Fe {
        let f = self.basis.ctx();
        let mut c = f.one();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                c = f.mul(c, f.pow(self.basis.leads[i].1, e as i64));
            }
        }
        c
    }
}

/// Dense storage of a homogeneous form of degree d, indexed by (a, b).
struct DenseForm {
    deg: u32,
    width: usize,
    data: Vec<Fe>,
    cursor_a: u32,
    cursor_b: u32,
}

impl DenseForm {
    fn new(p: &Polynomial) -> Self {
        let deg = p.degree();
        let width = deg as usize + 1;
        let mut data = vec![Fe::ZERO; width * width];
        for &(m, c) in p.terms() {
            data[m.ex() as usize * width + m.ey() as usize] = c;
        }
        DenseForm { deg, width, data, cursor_a: 0, cursor_b: 0 }
    }

    /// Lead term: smallest x-exponent, then smallest y-exponent.
    fn lead(&mut self) -> Option<(Monomial, Fe)> {
        while self.cursor_a <= self.deg {
            let a = self.cursor_a;
            while self.cursor_b <= self.deg - a {
                let c = self.data[a as usize * self.width + self.cursor_b as usize];
                if !c.is_zero() {
                    let b = self.cursor_b;
                    return Some((Monomial::new(a, b, self.deg - a - b), c));
                }
                self.cursor_b += 1;
            }
            self.cursor_a += 1;
            self.cursor_b = 0;
        }
        None
    }

    fn sub_scaled(&mut self, f: &FieldContext, c: Fe, shift_x: u32, p: &Polynomial) {
        let nc = f.neg(c);
        for &(m, v) in p.terms() {
            let idx = (m.ex() + shift_x) as usize * self.width + m.ey() as usize;
            self.data[idx] = f.add(self.data[idx], f.mul(v, nc));
        }
    }

    fn to_poly(&self, f: &FieldContext) -> Polynomial {
        let mut terms = Vec::new();
        for a in 0..=self.deg {
            for b in 0..=self.deg - a {
                let c = self.data[a as usize * self.width + b as usize];
                if !c.is_zero() {
                    terms.push((Monomial::new(a, b, self.deg - a - b), c));
                }
            }
        }
        Polynomial::from_terms(f, terms)
    }
}

/// Default step cap: 10·deg(f), at least 10.
pub fn default_cap(f: &Polynomial) -> usize {
    10 * (f.degree() as usize).max(1)
}

pub fn subduct(f: &Polynomial, b: &SubalgebraBasis) -> std::result::Result<SubductionTrace, CapExceeded> {
    subduct_with(f, b, default_cap(f), &mut ProductCache::new(b))
}

/// Subduction with an explicit cap and a shared product cache.
pub fn subduct_with(
    f: &Polynomial,
    b: &SubalgebraBasis,
    cap: usize,
    cache: &mut ProductCache<'_>,
) -> std::result::Result<SubductionTrace, CapExceeded> {
    let ctx = b.ctx();
    let xi = b.x_index();
    let mut steps = Vec::new();
    if f.is_homogeneous() && !f.is_zero() {
        let mut dense = DenseForm::new(f);
        while let Some((m, c)) = dense.lead() {
            let Some(exps) = represent_monomial(m, b) else { break };
            if steps.len() >= cap {
                let partial = SubductionTrace { input: f.clone(), steps, remainder: dense.to_poly(ctx) };
                return Err(CapExceeded { error: Error::StepCap { cap, steps: cap }, partial });
            }
            let coeff = ctx.div(c, cache.lead_coeff(&exps));
            // x is applied as a shift rather than a product.
            let mut core = exps.clone();
            let shift = xi.map(|x| std::mem::take(&mut core[x])).unwrap_or(0);
            let prod = cache.product(&core);
            dense.sub_scaled(ctx, coeff, shift, &prod);
            steps.push(SubductionStep { exponents: exps, coeff });
        }
        return Ok(SubductionTrace { input: f.clone(), steps, remainder: dense.to_poly(ctx) });
    }
    let mut r = f.clone();
    while let Ok((m, c)) = r.lead_term() {
        let Some(exps) = represent_monomial(m, b) else { break };
        if steps.len() >= cap {
            let partial = SubductionTrace { input: f.clone(), steps, remainder: r };
            return Err(CapExceeded { error: Error::StepCap { cap, steps: cap }, partial });
        }
        let coeff = ctx.div(c, cache.lead_coeff(&exps));
        let prod = cache.product(&exps);
        r = r.sub_scaled(coeff, Monomial::ONE, &prod);
        steps.push(SubductionStep { exponents: exps, coeff });
    }
    Ok(SubductionTrace { input: f.clone(), steps, remainder: r })
}

/// A pair (h^I, h^J) with equal lead monomials and disjoint support.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TeteATete {
    pub i: Vec<u32>,
    pub j: Vec<u32>,
    pub degree: u32,
}

impl TeteATete {
    pub fn is_nontrivial(&self) -> bool {
        self.i.iter().zip(&self.j).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// h^I − (lc(h^I)/lc(h^J))·h^J.
    pub fn difference(&self, cache: &mut ProductCache<'_>) -> Polynomial {
        let f = cache.basis.ctx().clone();
        let a = cache.product(&self.i);
        let bb = cache.product(&self.j);
        let c = f.div(cache.lead_coeff(&self.i), cache.lead_coeff(&self.j));
        a.sub_scaled(c, Monomial::ONE, &bb)
    }

    pub fn describe(&self, names: &[String]) -> String {
        let part = |v: &[u32]| {
            let s: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .rev()
                .map(|(k, &e)| if e == 1 { names[k].clone() } else { format!("{}^{}", names[k], e) })
                .collect();
            s.join("*")
        };
        format!("({}, {})", part(&self.i), part(&self.j))
    }
}

/// Minimal nontrivial tête-à-têtes up to the degree bound for pure-shape bases.
pub fn enumerate_tetes(b: &SubalgebraBasis, bound: u32) -> Result<Vec<TeteATete>> {
    if !b.has_pure_shape() {
        return Err(Error::Shape(
            "lead monomials are not x, pure y-powers and one z-power; use enumerate_tetes_generic".into(),
        ));
    }
    let fam = b.y_family();
    let n = b.len();
    let weights: Vec<[u32; 3]> = fam.iter().map(|&(_, a)| [0, a, 0]).collect();
    let deg: Vec<u32> = fam.iter().map(|&(i, _)| b.elems[i].degree()).collect();
    let local = minimal_binomials(&weights, &deg, bound);
    Ok(local
        .into_iter()
        .map(|(li, lj, d)| {
            let mut i = vec![0; n];
            let mut j = vec![0; n];
            for (k, &(idx, _)) in fam.iter().enumerate() {
                i[idx] = li[k];
                j[idx] = lj[k];
            }
            TeteATete { i, j, degree: d }
        })
        .collect())
}

/// Degree-bounded enumeration over all elements, for bases of arbitrary lead-monomial shape.
pub fn enumerate_tetes_generic(b: &SubalgebraBasis, bound: u32) -> Vec<TeteATete> {
    let weights: Vec<[u32; 3]> = b.lead_monomials().iter().map(|m| m.exponents()).collect();
    let deg: Vec<u32> = b.elems.iter().map(|e| e.degree()).collect();
    minimal_binomials(&weights, &deg, bound)
        .into_iter()
        .map(|(i, j, degree)| TeteATete { i, j, degree })
        .collect()
}

/// Minimal generators of the binomial relations among the lead monomials, degree by degree:
/// in each fiber, exponent vectors sharing a basis element are joined (they are linked by
/// lower-degree relations); each further connected component needs one new relation.
fn minimal_binomials(weights: &[[u32; 3]], deg: &[u32], bound: u32) -> Vec<(Vec<u32>, Vec<u32>, u32)> {
    let m = weights.len();
    let mut fibers: BTreeMap<(u32, [u32; 3]), Vec<Vec<u32>>> = BTreeMap::new();
    let mut cur = vec![0u32; m];
    enumerate_vectors(deg, bound, 0, 0, &mut cur, &mut |v| {
        let mut w = [0u32; 3];
        let mut d = 0;
        for k in 0..m {
            for c in 0..3 {
                w[c] += v[k] * weights[k][c];
            }
            d += v[k] * deg[k];
        }
        fibers.entry((d, w)).or_default().push(v.to_vec());
    });
    let mut out = Vec::new();
    for ((d, _), mut fib) in fibers {
        if fib.len() < 2 || d == 0 {
            continue;
        }
        // Representatives favour later basis elements.
        fib.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev()));
        let mut parent: Vec<usize> = (0..fib.len()).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut c = i;
            while p[c] != r {
                let n = p[c];
                p[c] = r;
                c = n;
            }
            r
        }
        for a in 0..fib.len() {
            for c in a + 1..fib.len() {
                if (0..m).any(|k| fib[a][k] > 0 && fib[c][k] > 0) {
                    let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                    if ra != rc {
                        parent[ra.max(rc)] = ra.min(rc);
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..fib.len()).map(|i| find(&mut parent, i)).collect::<HashSet<_>>().into_iter().collect();
        roots.sort();
        for &r in &roots[1..] {
            out.push((fib[roots[0]].clone(), fib[r].clone(), d));
        }
    }
    out.sort_by(|a, b| (a.2, &a.0, &a.1).cmp(&(b.2, &b.0, &b.1)));
    out
}

fn enumerate_vectors(deg: &[u32], bound: u32, pos: usize, used: u32, cur: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if pos == deg.len() {
        visit(cur);
        return;
    }
    let step = deg[pos].max(1);
    let mut e = 0;
    loop {
        let d = used + e * step;
        if d > bound {
            break;
        }
        cur[pos] = e;
        enumerate_vectors(deg, bound, pos + 1, d, cur, visit);
        if deg[pos] == 0 {
            break;
        }
        e += 1;
    }
    cur[pos] = 0;
}

/// Result of a SAGBI verification.
#[derive(Clone, Debug)]
pub struct SagbiVerdict {
    pub is_sagbi: bool,
    pub tetes: Vec<TeteATete>,
    /// First failing tête-à-tête and its remainder.
    pub failure: Option<(TeteATete, Polynomial)>,
}

/// Default degree cap p⁴+2p+1.
pub fn default_bound(p: u32) -> u32 {
    p.pow(4) + 2 * p + 1
}

fn tetes_for(b: &SubalgebraBasis, bound: u32) -> Vec<TeteATete> {
    enumerate_tetes(b, bound).unwrap_or_else(|_| enumerate_tetes_generic(b, bound))
}

pub fn sagbi_check(b: &SubalgebraBasis, bound: u32) -> Result<SagbiVerdict> {
    let tetes = tetes_for(b, bound);
    let mut cache = ProductCache::new(b);
    for t in &tetes {
        let diff = t.difference(&mut cache);
        let trace = subduct_with(&diff, b, default_cap(&diff), &mut cache).map_err(|e| e.error)?;
        if !trace.reduced_to_zero() {
            return Ok(SagbiVerdict { is_sagbi: false, failure: Some((t.clone(), trace.remainder)), tetes });
        }
    }
    Ok(SagbiVerdict { is_sagbi: true, tetes, failure: None })
}

/// Outcome of the completion loop.
#[derive(Clone, Debug)]
pub struct Completion {
    pub basis: SubalgebraBasis,
    pub added: usize,
    pub complete: bool,
    pub diagnostics: Vec<String>,
}

/// SAGBI/Divide-by-x completion; tête-à-têtes in ascending degree, ties lexicographic.
pub fn sagbi_divide_by_x(seed: &SubalgebraBasis, bound: u32, max_new: usize) -> Result<Completion> {
    if seed.x_index().is_none() {
        return Err(Error::Precondition("the seed basis must contain x".into()));
    }
    let mut basis = seed.clone();
    let mut done: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    let mut diagnostics = Vec::new();
    let mut added = 0;
    'outer: loop {
        let tetes = tetes_for(&basis, bound);
        let mut cache = ProductCache::new(&basis);
        for t in &tetes {
            let key = (t.i.clone(), t.j.clone());
            if done.contains(&key) {
                continue;
            }
            let diff = t.difference(&mut cache);
            let trace = subduct_with(&diff, &basis, default_cap(&diff), &mut cache).map_err(|e| e.error)?;
            if trace.reduced_to_zero() {
                done.insert(key);
                continue;
            }
            let (g, e) = trace.remainder.divide_out_x()?;
            diagnostics.push(format!(
                "{} of degree {} left {} = x^{} * (lead {})",
                t.describe(basis.names()),
                t.degree,
                trace.remainder.lead_monomial()?,
                e,
                g.lead_monomial()?
            ));
            if added == max_new {
                return Ok(Completion { basis, added, complete: false, diagnostics });
            }
            done.insert(key);
            added += 1;
            let name = format!("g{}", added);
            drop(cache);
            // Widen the tête-à-tête keys to the new basis length.
            done = done
                .into_iter()
                .map(|(mut i, mut j)| {
                    i.push(0);
                    j.push(0);
                    (i, j)
                })
                .collect();
            basis.push(name, g)?;
            continue 'outer;
        }
        return Ok(Completion { basis, added, complete: true, diagnostics });
    }
}

/// Degrees of the minimal nontrivial tête-à-têtes.
pub fn relation_degrees(b: &SubalgebraBasis, bound: u32) -> Vec<u32> {
    let mut d: Vec<u32> = tetes_for(b, bound).iter().map(|t| t.degree).collect();
    d.sort();
    d
}
