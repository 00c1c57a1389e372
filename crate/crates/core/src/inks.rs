//! The iNKS quiver: `ZQ` folded by `F = Σϱ̂`, with one frozen vertex `σS_i` per `i`.
//!
//! Module vertices are the positive roots, each at its shift-0 position in `ZQ`.
//! Non-frozen dimension vectors are indexed in `(level, topological)` order of those
//! positions; frozen vectors are indexed by `I`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;
use serde_json::{json, Map, Value};

use crate::dercat::{injective_root, knit_zq, projective_root, DerivedObject, Knit, OrbitFunctor, ZVertex};
use crate::error::{Error, Result};
use crate::rootdata::{root_string, unit, IQuiver};

/// A pair `(v, w)`: `v` over module vertices, `w` over `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimPair {
    pub v: Vec<i64>,
    pub w: Vec<i64>,
}

impl DimPair {
    pub fn new(v: Vec<i64>, w: Vec<i64>) -> Self {
        DimPair { v, w }
    }
    pub fn add(&self, o: &DimPair) -> DimPair {
        DimPair { v: add(&self.v, &o.v), w: add(&self.w, &o.w) }
    }
    pub fn is_zero(&self) -> bool {
        self.v.iter().chain(&self.w).all(|&x| x == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitVertex {
    Module(Vec<i64>),
    Frozen(usize),
}

/// Folded arrows with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitQuiver {
    pub vertices: Vec<OrbitVertex>,
    pub arrows: Vec<(OrbitVertex, OrbitVertex, usize)>,
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
/// Entrywise `a <= b`.
pub fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
pub fn nonneg(a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
}

#[derive(Debug)]
pub struct Inks {
    knit: Knit,
    modules: Vec<Vec<i64>>,
    positions: Vec<ZVertex>,
    index: HashMap<Vec<i64>, usize>,
    tau: Vec<usize>,
    arrows_in: Vec<Vec<(usize, i64)>>,
    simple: Vec<usize>,
    projective: Vec<usize>,
    injective: Vec<usize>,
    is_injective: Vec<bool>,
    vi: Vec<Vec<i64>>,
    pair_cache: RwLock<HashMap<Vec<i64>, Arc<Vec<DimPair>>>>,
}

impl Inks {
    pub fn new(q: &IQuiver) -> Result<Self> {
        let knit = knit_zq(q);
        let n = q.n();
        let mut found: Vec<(ZVertex, Vec<i64>)> = Vec::new();
        for v in knit.vertices() {
            let l = knit.label(v).expect("vertex in window");
            if l.shift == 0 {
                found.push((v, l.root.clone()));
            }
        }
        let positions: Vec<ZVertex> = found.iter().map(|(v, _)| *v).collect();
        let modules: Vec<Vec<i64>> = found.into_iter().map(|(_, r)| r).collect();
        let index: HashMap<Vec<i64>, usize> = modules.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let fold = |obj: &DerivedObject| -> Result<usize> {
            let base = knit.f_power(obj, -obj.shift);
            index.get(&base.root).copied().ok_or_else(|| Error::OutOfWindow(obj.to_string()))
        };
        let r = modules.len();
        let mut tau = vec![0; r];
        let mut arrows_in = vec![Vec::new(); r];
        let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (x, &(i, p)) in positions.iter().enumerate() {
            let t = knit.label((i, p - 1)).ok_or_else(|| Error::OutOfWindow(format!("τ of {}", x)))?;
            tau[x] = fold(t)?;
            for y in knit.successors((i, p)) {
                let target = fold(knit.label(y).expect("in window"))?;
                *counts.entry((x, target)).or_insert(0) += 1;
            }
        }
        for ((s, t), m) in counts {
            arrows_in[t].push((s, m));
        }
        let get = |root: Vec<i64>| index[&root];
        let simple: Vec<usize> = (0..n).map(|i| get(unit(n, i))).collect();
        let projective: Vec<usize> = (0..n).map(|i| get(projective_root(q, i))).collect();
        let injective: Vec<usize> = (0..n).map(|i| get(injective_root(q, i))).collect();
        let mut is_injective = vec![false; r];
        for &k in &injective {
            is_injective[k] = true;
        }
        let mut me = Inks {
            knit,
            modules,
            positions,
            index,
            tau,
            arrows_in,
            simple,
            projective,
            injective,
            is_injective,
            vi: Vec::new(),
            pair_cache: RwLock::new(HashMap::new()),
        };
        let mut vi = Vec::with_capacity(n);
        for i in 0..n {
            let s = DerivedObject::module(unit(n, i));
            let mut v = vec![0; r];
            for (z, root) in me.modules.iter().enumerate() {
                v[z] = me.knit.hom_orbit(&s, &DerivedObject::module(root.clone()), OrbitFunctor::SigmaRho)?;
            }
            vi.push(v);
        }
        me.vi = vi;
        Ok(me)
    }

    pub fn quiver(&self) -> &IQuiver {
        self.knit.quiver()
    }
    pub fn knit(&self) -> &Knit {
        &self.knit
    }
    pub fn n(&self) -> usize {
        self.quiver().n()
    }
    /// Number of module vertices.
    pub fn r(&self) -> usize {
        self.modules.len()
    }
    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }
    pub fn position(&self, x: usize) -> ZVertex {
        self.positions[x]
    }
    pub fn module_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }
    pub fn projective(&self, i: usize) -> usize {
        self.projective[i]
    }
    pub fn injective(&self, i: usize) -> usize {
        self.injective[i]
    }
    pub fn is_injective(&self, x: usize) -> bool {
        self.is_injective[x]
    }
    /// Folded `τ` on module vertices.
    pub fn tau(&self, x: usize) -> usize {
        self.tau[x]
    }
    /// Folded arrows into `x` between module vertices, with multiplicities.
    pub fn arrows_in(&self, x: usize) -> &[(usize, i64)] {
        &self.arrows_in[x]
    }

    pub fn zero_v(&self) -> Vec<i64> {
        vec![0; self.r()]
    }
    pub fn zero_w(&self) -> Vec<i64> {
        vec![0; self.n()]
    }
    pub fn one_v(&self, x: usize) -> Vec<i64> {
        unit(self.r(), x)
    }
    /// `1_{σS_i}`.
    pub fn one_w(&self, i: usize) -> Vec<i64> {
        unit(self.n(), i)
    }
    /// `Σ_k 1_{σS_k}` over the listed vertices (with repetition).
    pub fn w_of(&self, verts: &[usize]) -> Vec<i64> {
        let mut w = self.zero_w();
        for &k in verts {
            w[k] += 1;
        }
        w
    }

    fn check_v(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.r() {
            return Err(Error::DimensionMismatch { expected: self.r(), got: v.len() });
        }
        Ok(())
    }
    fn check_w(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: w.len() });
        }
        Ok(())
    }

    pub fn orbit_quiver(&self) -> OrbitQuiver {
        let mut vertices: Vec<OrbitVertex> = self.modules.iter().cloned().map(OrbitVertex::Module).collect();
        vertices.extend((0..self.n()).map(OrbitVertex::Frozen));
        let mut arrows = Vec::new();
        for x in 0..self.r() {
            for &(y, m) in &self.arrows_in[x] {
                arrows.push((OrbitVertex::Module(self.modules[y].clone()), OrbitVertex::Module(self.modules[x].clone()), m as usize));
            }
        }
        for i in 0..self.n() {
            let s = self.simple[i];
            arrows.push((OrbitVertex::Module(self.modules[self.tau[s]].clone()), OrbitVertex::Frozen(i), 1));
            arrows.push((OrbitVertex::Frozen(i), OrbitVertex::Module(self.modules[s].clone()), 1));
        }
        arrows.sort();
        OrbitQuiver { vertices, arrows }
    }

    /// `(C_q v)(x) = v(x) + v(τx) − Σ_{y→x} v(y)`.
    pub fn cq(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.check_v(v)?;
        Ok((0..self.r())
            .map(|x| v[x] + v[self.tau[x]] - self.arrows_in[x].iter().map(|&(y, m)| m * v[y]).sum::<i64>())
            .collect())
    }

    /// `(σ*w)(S_i) = w(i)`, zero off the simples.
    pub fn sigma_star(&self, w: &[i64]) -> Result<Vec<i64>> {
        self.check_w(w)?;
        let mut out = self.zero_v();
        for i in 0..self.n() {
            out[self.simple[i]] += w[i];
        }
        Ok(out)
    }

    /// `(τ*v)(x) = v(τx)`.
    pub fn tau_star(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.check_v(v)?;
        Ok((0..self.r()).map(|x| v[self.tau[x]]).collect())
    }

    /// `σ*w − C_q v`.
    pub fn slack(&self, p: &DimPair) -> Result<Vec<i64>> {
        Ok(sub(&self.sigma_star(&p.w)?, &self.cq(&p.v)?))
    }

    pub fn is_l_dominant(&self, p: &DimPair) -> Result<bool> {
        Ok(nonneg(&p.v) && nonneg(&p.w) && nonneg(&self.slack(p)?))
    }

    pub fn vi(&self, i: usize) -> &[i64] {
        &self.vi[i]
    }

    /// `w^i = 1_{σS_i} + 1_{σS_{ϱi}}`.
    pub fn wi(&self, i: usize) -> Vec<i64> {
        self.w_of(&[i, self.quiver().rho(i)])
    }

    /// `(v^i, w^i)`.
    pub fn canonical_v(&self, i: usize) -> DimPair {
        DimPair::new(self.vi[i].clone(), self.wi(i))
    }

    /// Dimension vector of `X_ij`, the extension of `S_j` by `S_i`.
    pub fn x_ij(&self, i: usize, j: usize) -> Vec<i64> {
        let mut r = unit(self.n(), i);
        r[j] += 1;
        r
    }

    /// `(v^{ij}, w^{ij})` for an arrow `i -> j`.
    pub fn canonical_vij(&self, i: usize, j: usize) -> Result<DimPair> {
        if !self.quiver().has_arrow(i, j) {
            return Err(Error::NoArrow(i + 1, j + 1));
        }
        let mut v = self.zero_v();
        for z in 0..self.r() {
            v[z] = self.xi_rank(i, j, z)?;
        }
        Ok(DimPair::new(v, self.w_of(&[i, j])))
    }

    /// Rank of `ξ*_z : Hom(S_i, z) -> Hom(Σ^{-1}S_j, z)` in the orbit category.
    fn xi_rank(&self, i: usize, j: usize, z: usize) -> Result<i64> {
        let n = self.n();
        let (si, sj, x) = (
            DerivedObject::module(unit(n, i)),
            DerivedObject::module(unit(n, j)),
            DerivedObject::module(self.x_ij(i, j)),
        );
        let mut total = 0;
        for m in 0..=1i64 {
            let zm = self.knit.f_power(&DerivedObject::module(self.modules[z].clone()), m);
            let mut dims = Vec::new();
            for k in (m - 2..=m + 1).rev() {
                dims.push(self.knit.hom_dq(&sj.shifted(k), &zm)?);
                dims.push(self.knit.hom_dq(&x.shifted(k), &zm)?);
                dims.push(self.knit.hom_dq(&si.shifted(k), &zm)?);
            }
            let ranks = crate::dercat::les_ranks(&dims)?;
            let at = 3 * (m + 1) as usize + 2;
            total += ranks[at];
        }
        Ok(total)
    }

    /// `(Σ a_i v^i, Σ a_i w^i)`.
    pub fn klr_dim_finite_pd(&self, a: &[i64]) -> Result<DimPair> {
        self.check_w(a)?;
        let mut p = DimPair::new(self.zero_v(), self.zero_w());
        for (i, &ai) in a.iter().enumerate() {
            if ai < 0 {
                return Err(Error::InvalidParameters("coefficients must be nonnegative".into()));
            }
            p = p.add(&DimPair::new(scale(&self.vi[i], ai), scale(&self.wi(i), ai)));
        }
        Ok(p)
    }

    /// Splits an l-dominant pair into its `(V⁺,W⁺)` and `(V⁰,W⁰)` parts.
    pub fn decompose_pair(&self, p: &DimPair) -> Result<(DimPair, DimPair)> {
        if !self.is_l_dominant(p)? {
            return Err(Error::NotLDominant);
        }
        let a: Vec<i64> = (0..self.n()).map(|i| p.v[self.injective[i]]).collect();
        let zero = self.klr_dim_finite_pd(&a)?;
        let plus = DimPair::new(sub(&p.v, &zero.v), sub(&p.w, &zero.w));
        if !nonneg(&plus.v) || !nonneg(&plus.w) {
            return Err(Error::NotDecomposable(self.fmt_pair(p)));
        }
        Ok((plus, zero))
    }

    /// All l-dominant pairs of grade `w` (each is strongly l-dominant), sorted by `(|v|, v)`.
    pub fn enumerate_pairs(&self, w: &[i64]) -> Result<Arc<Vec<DimPair>>> {
        self.check_w(w)?;
        if !nonneg(w) {
            return Ok(Arc::new(Vec::new()));
        }
        if let Some(c) = self.pair_cache.read().get(w) {
            return Ok(c.clone());
        }
        let mut out: BTreeSet<(i64, Vec<i64>)> = BTreeSet::new();
        let n = self.n();
        let mut a = vec![0i64; n];
        self.split_a(w, 0, &mut a, &mut |a, wplus| {
            let zero = self.klr_dim_finite_pd(a).expect("valid coefficients");
            for vp in self.plus_pairs(wplus) {
                let v = add(&vp, &zero.v);
                out.insert((v.iter().sum(), v));
            }
        });
        let res: Vec<DimPair> = out.into_iter().map(|(_, v)| DimPair::new(v, w.to_vec())).collect();
        let res = Arc::new(res);
        self.pair_cache.write().insert(w.to_vec(), res.clone());
        Ok(res)
    }

    fn split_a(&self, rest: &[i64], i: usize, a: &mut Vec<i64>, f: &mut dyn FnMut(&[i64], &[i64])) {
        if i == self.n() {
            f(a, rest);
            return;
        }
        let wi = self.wi(i);
        let mut cur = rest.to_vec();
        let mut k = 0;
        loop {
            a[i] = k;
            self.split_a(&cur, i + 1, a, f);
            cur = sub(&cur, &wi);
            if !nonneg(&cur) {
                break;
            }
            k += 1;
        }
        a[i] = 0;
    }

    /// l-dominant `v` supported off the injectives, for frozen grade `w`.
    pub fn plus_pairs(&self, w: &[i64]) -> Vec<Vec<i64>> {
        let sw = self.sigma_star(w).expect("checked");
        let mut out = Vec::new();
        let mut v = self.zero_v();
        self.dfs(0, &sw, &mut v, &mut out);
        out
    }

    fn dfs(&self, x: usize, sw: &[i64], v: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if x == self.r() {
            let ok = self.injective.iter().all(|&y| {
                sw[y] - v[self.tau[y]] + self.arrows_in[y].iter().map(|&(z, m)| m * v[z]).sum::<i64>() >= 0
            });
            if ok {
                out.push(v.clone());
            }
            return;
        }
        if self.is_injective[x] {
            self.dfs(x + 1, sw, v, out);
            return;
        }
        let bound = sw[x] - v[self.tau[x]] + self.arrows_in[x].iter().map(|&(z, m)| m * v[z]).sum::<i64>();
        for val in 0..=bound.max(-1) {
            v[x] = val;
            self.dfs(x + 1, sw, v, out);
        }
        v[x] = 0;
    }

    /// Short label for a module vertex, e.g. `S1`, `P2`, `I3`, or the root string.
    pub fn module_name(&self, x: usize) -> String {
        let n = self.n();
        for i in 0..n {
            if self.simple[i] == x {
                return format!("S{}", i + 1);
            }
        }
        for i in 0..n {
            if self.projective[i] == x {
                return format!("P{}", i + 1);
            }
            if self.injective[i] == x {
                return format!("I{}", i + 1);
            }
        }
        root_string(&self.modules[x])
    }

    pub fn fmt_v(&self, v: &[i64]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(x, &c)| if c == 1 { self.module_name(x) } else { format!("{}{}", c, self.module_name(x)) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn fmt_w(&self, w: &[i64]) -> String {
        let terms: Vec<String> = w
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("σS{}", i + 1) } else { format!("{}σS{}", c, i + 1) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn fmt_pair(&self, p: &DimPair) -> String {
        format!("({}; {})", self.fmt_v(&p.v), self.fmt_w(&p.w))
    }

    /// `{"a1.a2...": value}` over the support of `v`.
    pub fn v_to_json(&self, v: &[i64]) -> Value {
        let mut m = Map::new();
        for (x, &c) in v.iter().enumerate() {
            if c != 0 {
                m.insert(root_string(&self.modules[x]), json!(c));
            }
        }
        Value::Object(m)
    }

    pub fn v_from_json(&self, val: &Value) -> Result<Vec<i64>> {
        let obj = val.as_object().ok_or_else(|| Error::Parse("v must be an object keyed by root strings".into()))?;
        let mut v = self.zero_v();
        for (k, c) in obj {
            let root = k
                .split('.')
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{k:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let x = self.module_index(&root).ok_or_else(|| Error::Parse(format!("{k:?} is not a positive root")))?;
            v[x] = c.as_i64().ok_or_else(|| Error::Parse(format!("{k:?}: expected an integer")))?;
        }
        Ok(v)
    }

    pub fn pair_to_json(&self, p: &DimPair) -> Result<Value> {
        Ok(json!({
            "v": self.v_to_json(&p.v),
            "w": p.w,
            "slack": self.v_to_json(&self.slack(p)?),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn split_a2_canonical_vectors() {
        let k = Inks::new(&preset("a2").unwrap()).unwrap();
        let (s1, s2, p2) = (k.simple(0), k.simple(1), k.projective(1));
        let v1: Vec<i64> = k.one_v(s1).iter().zip(k.one_v(p2)).map(|(a, b)| a + b).collect();
        assert_eq!(k.vi(0), v1.as_slice());
        let v2 = add(&k.one_v(s1), &k.one_v(s2));
        assert_eq!(k.vi(1), v2.as_slice());
        assert_eq!(k.canonical_vij(0, 1).unwrap().v, k.one_v(s1));
        assert_eq!(k.canonical_vij(1, 0), Err(Error::NoArrow(2, 1)));
    }

    #[test]
    fn split_a1() {
        let k = Inks::new(&preset("a1").unwrap()).unwrap();
        assert_eq!(k.cq(&[1]).unwrap(), vec![2]);
        assert!(!k.is_l_dominant(&DimPair::new(vec![1], vec![1])).unwrap());
        assert_eq!(k.enumerate_pairs(&[2]).unwrap().len(), 2);
    }

    #[test]
    fn tau_of_projective_is_injective() {
        for (_, q) in crate::rootdata::standard_zoo() {
            let k = Inks::new(&q).unwrap();
            for i in 0..q.n() {
                assert_eq!(k.tau(k.projective(i)), k.injective(q.rho(i)), "{q}");
            }
        }
    }

    #[test]
    fn zero_grade() {
        let k = Inks::new(&preset("a3").unwrap()).unwrap();
        let p = k.enumerate_pairs(&[0, 0, 0]).unwrap();
        assert_eq!(p.as_slice(), &[DimPair::new(k.zero_v(), vec![0, 0, 0])]);
    }
}
