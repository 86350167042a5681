//! The representation V_M of E = (Z/p)^4 and its right action on k[x,y,z].

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::poly::{product_tree, product_tree_par, Polynomial};

/// The 2×4 matrix M; e_j acts as σ(c_{1j}, c_{2j}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    ctx: FieldContext,
    c: [[Fe; 4]; 2],
}

/// JSON form of a representation matrix.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepMatrixJson {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    /// entries[i][j] is the coordinate vector of c_{i+1, j+1}.
    pub entries: Vec<Vec<Vec<u32>>>,
}

/// An element of E, written as exponents of e_1..e_4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: [u32; 4],
}

impl GroupElement {
    pub fn generator(j: usize) -> Self {
        let mut a = [0; 4];
        a[j] = 1;
        GroupElement { a }
    }

    pub fn compose(&self, other: &Self, p: u32) -> Self {
        let mut a = [0; 4];
        for i in 0..4 {
            a[i] = (self.a[i] + other.a[i]) % p;
        }
        GroupElement { a }
    }

    /// Every element of E in lexicographic order.
    pub fn all(p: u32) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity((p as usize).pow(4));
        for a0 in 0..p {
            for a1 in 0..p {
                for a2 in 0..p {
                    for a3 in 0..p {
                        out.push(GroupElement { a: [a0, a1, a2, a3] });
                    }
                }
            }
        }
        out
    }
}

impl RepMatrix {
    pub fn new(ctx: &FieldContext, c: [[Fe; 4]; 2]) -> Self {
        RepMatrix { ctx: ctx.clone(), c }
    }

    /// Builds from coordinate vectors.
    pub fn from_coords(ctx: &FieldContext, rows: [[&[u32]; 4]; 2]) -> Self {
        let mut c = [[Fe::ZERO; 4]; 2];
        for i in 0..2 {
            for j in 0..4 {
                c[i][j] = ctx.from_coords(rows[i][j]);
            }
        }
        RepMatrix { ctx: ctx.clone(), c }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// c_{ij} with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> Fe {
        self.c[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[[Fe; 4]; 2] {
        &self.c
    }

    /// Some c_{1j} is nonzero.
    pub fn is_type_111(&self) -> bool {
        self.c[0].iter().any(|c| !c.is_zero())
    }

    /// The map F_p^4 → k², a ↦ (Σa_j c_{1j}, Σa_j c_{2j}) is injective.
    pub fn is_faithful(&self) -> bool {
        let vectors: Vec<Vec<Fe>> = (0..4).map(|j| vec![self.c[0][j], self.c[1][j]]).collect();
        self.ctx.fp_rank(&vectors) == 4
    }

    /// F_p-rank of the first row.
    pub fn first_row_rank(&self) -> usize {
        let vectors: Vec<Vec<Fe>> = (0..4).map(|j| vec![self.c[0][j]]).collect();
        self.ctx.fp_rank(&vectors)
    }

    /// (C₁, C₂) for a group element.
    pub fn pair(&self, g: &GroupElement) -> (Fe, Fe) {
        let f = &self.ctx;
        let mut c1 = Fe::ZERO;
        let mut c2 = Fe::ZERO;
        for j in 0..4 {
            let a = f.from_i64(g.a[j] as i64);
            c1 = f.add(c1, f.mul(a, self.c[0][j]));
            c2 = f.add(c2, f.mul(a, self.c[1][j]));
        }
        (c1, c2)
    }

    /// f·g, the right action of σ(C₁, C₂).
    pub fn act(&self, f: &Polynomial, g: &GroupElement) -> Polynomial {
        let (c1, c2) = self.pair(g);
        f.substitute_upper_triangular(c1, c2)
    }

    /// The distinct images of f, deduplicated by canonical form, in first-seen order.
    pub fn orbit(&self, f: &Polynomial) -> Vec<Polynomial> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in GroupElement::all(self.ctx.p()) {
            let img = self.act(f, &g);
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        out
    }

    /// Orbit of y, z or δ, deduplicated by the parameter the image depends on:
    /// C₁ for y, C₂ for δ and (C₁, C₂) for z.
    pub fn orbit_fast(&self, which: Linear) -> Vec<Polynomial> {
        let f = &self.ctx;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in GroupElement::all(f.p()) {
            let (c1, c2) = self.pair(&g);
            let key = match which {
                Linear::Y => (c1, Fe::ZERO),
                Linear::Z => (c1, c2),
                Linear::Delta => (Fe::ZERO, c2),
            };
            if !seen.insert(key) {
                continue;
            }
            out.push(match which {
                Linear::Y => Polynomial::linear(f, c1, f.one(), Fe::ZERO),
                Linear::Z => Polynomial::linear(f, f.add(f.mul(c1, c1), c2), f.add(c1, c1), f.one()),
                Linear::Delta => {
                    let d = Polynomial::delta(f);
                    &d - &Polynomial::term(f, crate::poly::Monomial::new(2, 0, 0), c2)
                }
            });
        }
        out
    }

    /// Orbit product of f.
    pub fn norm(&self, f: &Polynomial) -> Polynomial {
        product_tree_par(&self.ctx, self.orbit(f))
    }

    /// N_M(y), N_M(z) or N_M(δ) through the pair-deduplicated orbit.
    pub fn norm_fast(&self, which: Linear) -> Polynomial {
        product_tree(&self.ctx, self.orbit_fast(which))
    }

    pub fn norm_y(&self) -> Polynomial {
        self.norm_fast(Linear::Y)
    }

    /// N_M(z); for faithful M the orbit is free, so the product is taken one
    /// generator at a time: N_j = Π_b σ_j^b(N_{j−1}).
    pub fn norm_z(&self) -> Polynomial {
        if !self.is_faithful() {
            return self.norm_fast(Linear::Z);
        }
        let f = &self.ctx;
        let mut acc = Polynomial::z(f);
        for j in 0..4 {
            let g = GroupElement::generator(j);
            let mut images = vec![acc.clone()];
            for _ in 1..f.p() {
                let next = self.act(images.last().unwrap(), &g);
                images.push(next);
            }
            acc = product_tree_par(f, images);
        }
        acc
    }

    /// Invariance under the four generators.
    pub fn is_invariant(&self, f: &Polynomial) -> bool {
        (0..4).all(|j| &self.act(f, &GroupElement::generator(j)) == f)
    }

    /// Applies g ∈ GL₄(F_p) to the columns: M ↦ M·g.
    pub fn column_transform(&self, g: &[[i64; 4]; 4]) -> RepMatrix {
        let f = &self.ctx;
        let mut c = [[Fe::ZERO; 4]; 2];
        for i in 0..2 {
            for j in 0..4 {
                let mut acc = Fe::ZERO;
                for l in 0..4 {
                    acc = f.add(acc, f.mul(self.c[i][l], f.from_i64(g[l][j])));
                }
                c[i][j] = acc;
            }
        }
        RepMatrix { ctx: f.clone(), c }
    }

    pub fn to_json(&self) -> RepMatrixJson {
        RepMatrixJson {
            p: self.ctx.p(),
            k: self.ctx.k(),
            modulus: self.ctx.modulus().to_vec(),
            entries: self.c.iter().map(|row| row.iter().map(|&e| self.ctx.coords(e)).collect()).collect(),
        }
    }

    pub fn from_json(j: &RepMatrixJson) -> Result<Self> {
        let ctx = FieldContext::with_explicit_modulus(j.p, j.modulus.clone())?;
        if ctx.k() != j.k {
            return Err(Error::Parse("k does not match the modulus degree".into()));
        }
        if j.entries.len() != 2 || j.entries.iter().any(|r| r.len() != 4) {
            return Err(Error::Parse("entries must be a 2×4 array".into()));
        }
        let mut c = [[Fe::ZERO; 4]; 2];
        for i in 0..2 {
            for jj in 0..4 {
                let v = &j.entries[i][jj];
                if v.len() != j.k as usize || v.iter().any(|&x| x >= j.p) {
                    return Err(Error::Parse(format!("entry ({},{}) is not a valid coordinate vector", i + 1, jj + 1)));
                }
                c[i][jj] = ctx.from_coords(v);
            }
        }
        Ok(RepMatrix { ctx, c })
    }

    /// Human-readable entries in field text form.
    pub fn format_entries(&self) -> Vec<Vec<String>> {
        self.c.iter().map(|row| row.iter().map(|&e| self.ctx.format(e)).collect()).collect()
    }
}

/// The linear or quadratic forms with a parameter-determined orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linear {
    Y,
    Z,
    Delta,
}
