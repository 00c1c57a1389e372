//! Explicit representations over ℚ and brute-force Hom/Ext linear algebra, used to
//! cross-check the knitting calculus and the rank formulas for `v^i`, `v^{ij}`.
//!
//! Modules are right `kQ`-modules: an arrow `i -> j` acts as a linear map `V_j -> V_i`.
//! Each indecomposable is a random small-integer representation of a positive root,
//! accepted once its endomorphism algebra is one-dimensional.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dercat::DerivedObject;
use crate::error::{Error, Result};
use crate::inks::Inks;
use crate::rootdata::{root_string, unit, IQuiver};

pub type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }
    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        self.data[r * self.cols + c] = x;
    }
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] += a * o.get(k, j);
                }
            }
        }
        out
    }
    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c];
                for j in 0..ncols {
                    let t = rows[r][j];
                    rows[k][j] -= f * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, ncols);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Q::zero(); ncols];
        x[f] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -m[r][f];
        }
        out.push(x);
    }
    out
}

/// Per vertex a dimension; per arrow `i -> j` (in quiver order) a `dim_i × dim_j` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl ExplicitRep {
    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }
}

/// A module map, one matrix `X_k -> Y_k` per vertex.
pub type Morphism = Vec<Matrix>;

#[derive(Debug, Clone)]
pub struct Oracle {
    q: IQuiver,
    seed: u64,
    reps: BTreeMap<Vec<i64>, ExplicitRep>,
}

const ATTEMPTS: usize = 400;

impl Oracle {
    /// One representative per positive root.
    pub fn build(q: &IQuiver, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut o = Oracle { q: q.clone(), seed, reps: BTreeMap::new() };
        for root in q.positive_roots() {
            let rep = o.random_brick(&root, &mut rng)?;
            o.reps.insert(root, rep);
        }
        Ok(o)
    }

    fn random_brick(&self, root: &[i64], rng: &mut ChaCha8Rng) -> Result<ExplicitRep> {
        let dims: Vec<usize> = root.iter().map(|&d| d as usize).collect();
        for _ in 0..ATTEMPTS {
            let maps = self
                .q
                .arrows()
                .iter()
                .map(|&(i, j)| {
                    let mut m = Matrix::zeros(dims[i], dims[j]);
                    for x in m.data.iter_mut() {
                        *x = Q::from_integer(rng.gen_range(-2..=2));
                    }
                    m
                })
                .collect();
            let rep = ExplicitRep { dims: dims.clone(), maps };
            if self.hom_rank(&rep, &rep) == 1 {
                return Ok(rep);
            }
        }
        Err(Error::InvalidParameters(format!("no brick found for root {}", root_string(root))))
    }

    pub fn quiver(&self) -> &IQuiver {
        &self.q
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn reps(&self) -> &BTreeMap<Vec<i64>, ExplicitRep> {
        &self.reps
    }
    pub fn rep(&self, root: &[i64]) -> Result<&ExplicitRep> {
        self.reps.get(root).ok_or_else(|| Error::InvalidParameters(format!("{} is not a positive root", root_string(root))))
    }

    fn offsets(x: &ExplicitRep, y: &ExplicitRep) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(x.dims.len());
        let mut total = 0;
        for k in 0..x.dims.len() {
            off.push(total);
            total += y.dims[k] * x.dims[k];
        }
        (off, total)
    }

    /// Rows of the linear map `δ: ⊕_k Hom(X_k,Y_k) -> ⊕_{i->j} Hom(X_j,Y_i)`,
    /// `δ(f)_a = f_i X_a − Y_a f_j`, one row per output coordinate.
    fn delta(&self, x: &ExplicitRep, y: &ExplicitRep) -> (Vec<Vec<Q>>, usize) {
        let (off, total) = Self::offsets(x, y);
        let mut rows = Vec::new();
        for (a, &(i, j)) in self.q.arrows().iter().enumerate() {
            let (xa, ya) = (&x.maps[a], &y.maps[a]);
            for r in 0..y.dims[i] {
                for c in 0..x.dims[j] {
                    let mut row = vec![Q::zero(); total];
                    // (f_i X_a)[r][c] = Σ_k f_i[r][k] X_a[k][c]
                    for k in 0..x.dims[i] {
                        row[off[i] + r * x.dims[i] + k] += xa.get(k, c);
                    }
                    // (Y_a f_j)[r][c] = Σ_k Y_a[r][k] f_j[k][c]
                    for k in 0..y.dims[j] {
                        row[off[j] + k * x.dims[j] + c] -= ya.get(r, k);
                    }
                    rows.push(row);
                }
            }
        }
        (rows, total)
    }

    pub fn hom_basis(&self, x: &ExplicitRep, y: &ExplicitRep) -> Vec<Morphism> {
        let (rows, total) = self.delta(x, y);
        let (off, _) = Self::offsets(x, y);
        nullspace(&rows, total)
            .into_iter()
            .map(|vec| {
                (0..x.dims.len())
                    .map(|k| Matrix { rows: y.dims[k], cols: x.dims[k], data: vec[off[k]..off[k] + y.dims[k] * x.dims[k]].to_vec() })
                    .collect()
            })
            .collect()
    }

    pub fn hom_rank(&self, x: &ExplicitRep, y: &ExplicitRep) -> usize {
        let (rows, total) = self.delta(x, y);
        total - rank(&rows, total)
    }

    fn c1_dim(&self, x: &ExplicitRep, y: &ExplicitRep) -> usize {
        self.q.arrows().iter().map(|&(i, j)| y.dims[i] * x.dims[j]).sum()
    }

    /// `dim Ext¹(X,Y)` as the cokernel of `δ`.
    pub fn ext1_rank(&self, x: &ExplicitRep, y: &ExplicitRep) -> usize {
        let (rows, total) = self.delta(x, y);
        self.c1_dim(x, y) - rank(&rows, total)
    }

    /// Image of `δ` as row vectors in `C¹(X,Y)`.
    fn delta_image(&self, x: &ExplicitRep, y: &ExplicitRep) -> Vec<Vec<Q>> {
        let (rows, total) = self.delta(x, y);
        let m = self.c1_dim(x, y);
        (0..total).map(|col| (0..m).map(|r| rows[r][col]).collect()).collect()
    }

    /// Rank of `Hom(f, Y): Hom(X', Y) -> Hom(X, Y)` for `f: X -> X'`.
    pub fn precompose_rank_hom(&self, f: &Morphism, x: &ExplicitRep, xp: &ExplicitRep, y: &ExplicitRep) -> usize {
        let images: Vec<Vec<Q>> = self
            .hom_basis(xp, y)
            .iter()
            .map(|g| g.iter().zip(f).flat_map(|(gk, fk)| gk.mul(fk).data).collect())
            .collect();
        let (_, total) = Self::offsets(x, y);
        rank(&images, total)
    }

    /// Rank of `Ext¹(f, Y): Ext¹(X', Y) -> Ext¹(X, Y)` for `f: X -> X'`.
    pub fn precompose_rank_ext(&self, f: &Morphism, x: &ExplicitRep, xp: &ExplicitRep, y: &ExplicitRep) -> usize {
        let mut gens = Vec::new();
        for (a, &(i, j)) in self.q.arrows().iter().enumerate() {
            let _ = a;
            for r in 0..y.dims[i] {
                for c in 0..xp.dims[j] {
                    // basis element of C¹(X',Y) at arrow a, entry (r,c), pulled back along f_j
                    let mut e = Matrix::zeros(y.dims[i], xp.dims[j]);
                    e.set(r, c, Q::one());
                    let pulled = e.mul(&f[j]);
                    let mut v = Vec::with_capacity(self.c1_dim(x, y));
                    for (b, &(bi, bj)) in self.q.arrows().iter().enumerate() {
                        if b == a {
                            v.extend(pulled.data.iter().copied());
                        } else {
                            v.extend(std::iter::repeat(Q::zero()).take(y.dims[bi] * x.dims[bj]));
                        }
                    }
                    gens.push(v);
                }
            }
        }
        let m = self.c1_dim(x, y);
        let base = self.delta_image(x, y);
        let base_rank = rank(&base, m);
        let mut all = base;
        all.extend(gens);
        rank(&all, m) - base_rank
    }

    fn rho_root(&self, root: &[i64]) -> Vec<i64> {
        let mut out = vec![0; root.len()];
        for (k, &d) in root.iter().enumerate() {
            out[self.q.rho(k)] = d;
        }
        out
    }

    /// `dim Hom_{P}(A, z) = dim Hom(A,z) + dim Ext¹(A, ϱ̂z)` for modules `A`, `z`.
    pub fn hom_orbit(&self, a: &[i64], z: &[i64]) -> Result<usize> {
        let (ra, rz, rrz) = (self.rep(a)?, self.rep(z)?, self.rep(&self.rho_root(z))?);
        Ok(self.hom_rank(ra, rz) + self.ext1_rank(ra, rrz))
    }

    /// `α: S_i -> X_ij`, the unique map up to scalar.
    pub fn alpha(&self, i: usize, j: usize) -> Result<Morphism> {
        if !self.q.has_arrow(i, j) {
            return Err(Error::NoArrow(i + 1, j + 1));
        }
        let n = self.q.n();
        let s = self.rep(&unit(n, i))?;
        let mut xr = unit(n, i);
        xr[j] += 1;
        let x = self.rep(&xr)?;
        let mut basis = self.hom_basis(s, x);
        if basis.len() != 1 {
            return Err(Error::InvalidParameters(format!("Hom(S_{}, X_{}{}) has dimension {}", i + 1, i + 1, j + 1, basis.len())));
        }
        Ok(basis.remove(0))
    }

    /// `rank α*_z` on `Hom_P(X_ij, z) -> Hom_P(S_i, z)`.
    pub fn alpha_star_rank(&self, i: usize, j: usize, z: &[i64]) -> Result<usize> {
        let n = self.q.n();
        let f = self.alpha(i, j)?;
        let s = self.rep(&unit(n, i))?;
        let mut xr = unit(n, i);
        xr[j] += 1;
        let x = self.rep(&xr)?;
        let (rz, rrz) = (self.rep(z)?, self.rep(&self.rho_root(z))?);
        Ok(self.precompose_rank_hom(&f, s, x, rz) + self.precompose_rank_ext(&f, s, x, rrz))
    }

    /// `v^{ij}(z) = dim Hom_P(S_i,z) − rank α*_z`, indexed like `inks.modules()`.
    pub fn vij(&self, inks: &Inks, i: usize, j: usize) -> Result<Vec<i64>> {
        let si = unit(self.q.n(), i);
        inks.modules()
            .iter()
            .map(|z| Ok(self.hom_orbit(&si, z)? as i64 - self.alpha_star_rank(i, j, z)? as i64))
            .collect()
    }

    /// `v^i(z) = dim Hom_P(S_i,z)`.
    pub fn vi(&self, inks: &Inks, i: usize) -> Result<Vec<i64>> {
        let si = unit(self.q.n(), i);
        inks.modules().iter().map(|z| Ok(self.hom_orbit(&si, z)? as i64)).collect()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrosscheckReport {
    pub quiver: String,
    pub seed: u64,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

impl CrosscheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.mismatches.push(what());
        }
    }
}

/// Every oracle comparison for one quiver.
pub fn crosscheck(q: &IQuiver, seed: u64) -> Result<CrosscheckReport> {
    let o = Oracle::build(q, seed)?;
    let inks = Inks::new(q)?;
    let knit = inks.knit();
    let n = q.n();
    let mut rep = CrosscheckReport { quiver: q.label(), seed, ..Default::default() };
    let roots = q.positive_roots();
    rep.check(o.reps().len() == roots.len(), || format!("{} representatives for {} roots", o.reps().len(), roots.len()));
    for (r, x) in o.reps() {
        rep.check(x.dim_vector() == *r, || format!("dimension vector of {}", root_string(r)));
        rep.check(o.hom_rank(x, x) == 1, || format!("End({}) is not one-dimensional", root_string(r)));
    }
    for (rx, x) in o.reps() {
        for (ry, y) in o.reps() {
            let (dx, dy) = (DerivedObject::module(rx.clone()), DerivedObject::module(ry.clone()));
            let h = o.hom_rank(x, y) as i64;
            let e = o.ext1_rank(x, y) as i64;
            let hk = knit.hom_dq(&dx, &dy)?;
            let ek = knit.ext1(&dx, &dy)?;
            rep.check(h == hk, || format!("Hom({}, {}): oracle {h}, knit {hk}", root_string(rx), root_string(ry)));
            rep.check(e == ek, || format!("Ext1({}, {}): oracle {e}, knit {ek}", root_string(rx), root_string(ry)));
            let euler = q.euler_form(ry, rx)?;
            rep.check(h - e == euler, || format!("Euler form at ({}, {})", root_string(rx), root_string(ry)));
            // Auslander-Reiten formula: Ext¹(X,Y) ≅ D Hom(Y, τX) when X is not projective.
            let tx = knit.tau(&dx)?;
            if tx.shift == 0 {
                let ar = o.hom_rank(y, o.rep(&tx.root)?) as i64;
                rep.check(e == ar, || format!("Ext1({}, {}) vs Hom(Y, tau X)", root_string(rx), root_string(ry)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let inj = crate::dercat::injective_root(q, j);
            let h = o.hom_rank(o.rep(&unit(n, i))?, o.rep(&inj)?);
            rep.check(h == usize::from(i == j), || format!("dim Hom(S_{}, I_{}) = {h}", i + 1, j + 1));
        }
        let vi = o.vi(&inks, i)?;
        rep.check(vi == inks.vi(i), || format!("v^{} differs", i + 1));
    }
    for &(i, j) in q.arrows() {
        let inj = crate::dercat::injective_root(q, i);
        let r = o.alpha_star_rank(i, j, &inj)?;
        rep.check(r == 1, || format!("rank alpha* at I_{} is {r}", i + 1));
        let vij = o.vij(&inks, i, j)?;
        let expect = inks.canonical_vij(i, j)?.v;
        rep.check(vij == expect, || format!("v^{{{}{}}}: oracle {:?}, rank calculus {:?}", i + 1, j + 1, vij, expect));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn a2_identity_rep() {
        let q = preset("a2").unwrap();
        let o = Oracle::build(&q, 7).unwrap();
        let x = o.rep(&[1, 1]).unwrap();
        assert_eq!(x.maps[0].data.len(), 1);
        assert!(!x.maps[0].data[0].is_zero());
        let s1 = o.rep(&[1, 0]).unwrap();
        let s2 = o.rep(&[0, 1]).unwrap();
        // right modules over 1 -> 2: S_1 is a submodule of X_12
        assert_eq!(o.hom_rank(s1, x), 1);
        assert_eq!(o.hom_rank(s2, x), 0);
        assert_eq!(o.ext1_rank(s2, s1), 1);
    }

    #[test]
    fn nullspace_basis() {
        let r = |a: i128| Q::from_integer(a);
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert!((r(1) * x[0] + r(2) * x[1] + r(3) * x[2]).is_zero());
        }
        assert_eq!(Matrix::identity(2).mul(&Matrix::identity(2)), Matrix::identity(2));
    }

    #[test]
    fn crosscheck_a3() {
        let rep = crosscheck(&preset("a3").unwrap(), 1).unwrap();
        assert!(rep.ok(), "{:?}", rep.mismatches);
    }
}
