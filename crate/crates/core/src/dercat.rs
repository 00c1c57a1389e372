//! The repetition quiver `ZQ` labeled by indecomposables of the bounded derived category.
//!
//! Vertex `(i, p)` is vertex `i` of `Q` at level `p`. For every arrow `i -> j` of `Q`
//! there are arrows `(i,p) -> (j,p)` and `(j,p) -> (i,p+1)`; `τ(i,p) = (i,p-1)`.
//! Level 0 carries the indecomposable projectives of right `kQ`-modules, so
//! `dim P_i(k)` counts paths from `k` to `i`.

use std::collections::HashMap;
use std::fmt;

use parking_lot::RwLock;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{root_string, IQuiver};

/// Coordinates in `ZQ`.
pub type ZVertex = (usize, i64);

/// `Σ^shift X` for an indecomposable module `X` with dimension vector `root`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedObject {
    pub root: Vec<i64>,
    pub shift: i64,
}

impl DerivedObject {
    pub fn module(root: Vec<i64>) -> Self {
        DerivedObject { root, shift: 0 }
    }
    pub fn shifted(&self, n: i64) -> Self {
        DerivedObject { root: self.root.clone(), shift: self.shift + n }
    }
}

impl fmt::Display for DerivedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "[{}]", root_string(&self.root)),
            s => write!(f, "Σ^{}[{}]", s, root_string(&self.root)),
        }
    }
}

/// Functors `F` whose orbit categories are used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitFunctor {
    /// `Σϱ̂`, the functor defining the iNKS category.
    SigmaRho,
    /// `Σ²`.
    Sigma2,
    /// `τ^n`, `n != 0`.
    Tau(i64),
}

/// Outcome of comparing `Σϱ̂` with powers of `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauPower {
    /// `Σϱ̂ = τ^{-m}`.
    Power(i64),
    /// `Σϱ̂(i,0) = (perm[i], levels[i])`; not a pure power of `τ`.
    NotATauPower { levels: Vec<i64>, perm: Vec<usize> },
}

/// `paths[a][b]` = number of paths `a -> b` in `Q` (trivial paths included).
pub fn path_counts(q: &IQuiver) -> Vec<Vec<i64>> {
    let n = q.n();
    let order = q.topo_order();
    let mut paths = vec![vec![0i64; n]; n];
    for a in 0..n {
        paths[a][a] = 1;
        for &b in &order {
            for &(s, t) in q.arrows() {
                if t == b {
                    paths[a][b] += paths[a][s];
                }
            }
        }
    }
    paths
}

/// Dimension vector of `P_i`.
pub fn projective_root(q: &IQuiver, i: usize) -> Vec<i64> {
    let p = path_counts(q);
    (0..q.n()).map(|k| p[k][i]).collect()
}

/// Dimension vector of `I_i`.
pub fn injective_root(q: &IQuiver, i: usize) -> Vec<i64> {
    let p = path_counts(q);
    (0..q.n()).map(|k| p[i][k]).collect()
}

/// The labeled window of `ZQ`.
#[derive(Debug)]
pub struct Knit {
    q: IQuiver,
    h: usize,
    lo: i64,
    hi: i64,
    order: Vec<usize>,
    classes: Vec<Vec<i64>>,
    labels: Vec<DerivedObject>,
    index: HashMap<DerivedObject, ZVertex>,
    hammocks: RwLock<HashMap<ZVertex, std::sync::Arc<Vec<i64>>>>,
}

impl Clone for Knit {
    fn clone(&self) -> Self {
        Knit {
            q: self.q.clone(),
            h: self.h,
            lo: self.lo,
            hi: self.hi,
            order: self.order.clone(),
            classes: self.classes.clone(),
            labels: self.labels.clone(),
            index: self.index.clone(),
            hammocks: RwLock::new(HashMap::new()),
        }
    }
}

/// Knits the default window `-2h ..= 2h`.
pub fn knit_zq(q: &IQuiver) -> Knit {
    let h = q.coxeter_number() as i64;
    Knit::with_window(q, -2 * h, 2 * h).expect("default window is large enough")
}

impl Knit {
    /// Knits levels `lo ..= hi`; the window must hold at least `4h` levels and contain level 0.
    pub fn with_window(q: &IQuiver, lo: i64, hi: i64) -> Result<Self> {
        let h = q.coxeter_number();
        let levels = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
        if levels < 4 * h || lo > 0 || hi < 0 {
            return Err(Error::WindowTooSmall { levels, needed: 4 * h });
        }
        let n = q.n();
        let order = q.topo_order();
        let width = levels;
        let idx = |i: usize, p: i64| ((p - lo) as usize) * n + i;
        let mut classes = vec![Vec::new(); n * width];
        for i in 0..n {
            classes[idx(i, 0)] = projective_root(q, i);
        }
        let sub = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
        let add = |a: &mut Vec<i64>, b: &[i64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        for p in 0..hi {
            for &i in &order {
                let mut s = vec![0i64; n];
                for &(a, b) in q.arrows() {
                    if a == i {
                        add(&mut s, &classes[idx(b, p)]);
                    }
                    if b == i {
                        add(&mut s, &classes[idx(a, p + 1)]);
                    }
                }
                classes[idx(i, p + 1)] = sub(&s, &classes[idx(i, p)]);
            }
        }
        for p in (lo + 1..=0).rev() {
            for &i in order.iter().rev() {
                let mut s = vec![0i64; n];
                for &(a, b) in q.arrows() {
                    if b == i {
                        add(&mut s, &classes[idx(a, p)]);
                    }
                    if a == i {
                        add(&mut s, &classes[idx(b, p - 1)]);
                    }
                }
                classes[idx(i, p - 1)] = sub(&s, &classes[idx(i, p)]);
            }
        }
        let sign = |c: &[i64]| -> i64 {
            if c.iter().all(|&x| x >= 0) {
                1
            } else {
                -1
            }
        };
        let mut labels = vec![DerivedObject { root: Vec::new(), shift: 0 }; n * width];
        for i in 0..n {
            let mut shift = 0i64;
            let mut prev = 1;
            for p in 0..=hi {
                let c = &classes[idx(i, p)];
                let s = sign(c);
                if s != prev {
                    shift += 1;
                    prev = s;
                }
                labels[idx(i, p)] = DerivedObject { root: c.iter().map(|x| x.abs()).collect(), shift };
            }
            let (mut shift, mut prev) = (0i64, 1);
            for p in (lo..0).rev() {
                let c = &classes[idx(i, p)];
                let s = sign(c);
                if s != prev {
                    shift -= 1;
                    prev = s;
                }
                labels[idx(i, p)] = DerivedObject { root: c.iter().map(|x| x.abs()).collect(), shift };
            }
        }
        let mut index = HashMap::new();
        for i in 0..n {
            for p in lo..=hi {
                index.insert(labels[idx(i, p)].clone(), (i, p));
            }
        }
        Ok(Knit {
            q: q.clone(),
            h,
            lo,
            hi,
            order,
            classes,
            labels,
            index,
            hammocks: RwLock::new(HashMap::new()),
        })
    }

    fn idx(&self, (i, p): ZVertex) -> usize {
        ((p - self.lo) as usize) * self.q.n() + i
    }

    pub fn quiver(&self) -> &IQuiver {
        &self.q
    }
    pub fn coxeter(&self) -> usize {
        self.h
    }
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }
    pub fn in_window(&self, (i, p): ZVertex) -> bool {
        i < self.q.n() && p >= self.lo && p <= self.hi
    }

    /// All vertices of the window in `(level, topological)` order.
    pub fn vertices(&self) -> Vec<ZVertex> {
        let mut out = Vec::new();
        for p in self.lo..=self.hi {
            for &i in &self.order {
                out.push((i, p));
            }
        }
        out
    }

    /// Signed class in `K_0` of the object at `v`.
    pub fn class(&self, v: ZVertex) -> Option<&[i64]> {
        self.in_window(v).then(|| self.classes[self.idx(v)].as_slice())
    }

    pub fn label(&self, v: ZVertex) -> Option<&DerivedObject> {
        self.in_window(v).then(|| &self.labels[self.idx(v)])
    }

    pub fn vertex_of(&self, obj: &DerivedObject) -> Result<ZVertex> {
        self.index.get(obj).copied().ok_or_else(|| Error::OutOfWindow(obj.to_string()))
    }

    /// Position of the module with dimension vector `root`.
    pub fn module_vertex(&self, root: &[i64]) -> Result<ZVertex> {
        self.vertex_of(&DerivedObject::module(root.to_vec()))
    }

    /// Targets of arrows starting at `v` (inside the window).
    pub fn successors(&self, (i, p): ZVertex) -> Vec<ZVertex> {
        let mut out = Vec::new();
        for &(a, b) in self.q.arrows() {
            if a == i {
                out.push((b, p));
            }
            if b == i {
                out.push((a, p + 1));
            }
        }
        out.retain(|&v| self.in_window(v));
        out
    }

    /// Sources of arrows ending at `v` (inside the window).
    pub fn predecessors(&self, (i, p): ZVertex) -> Vec<ZVertex> {
        let mut out = Vec::new();
        for &(a, b) in self.q.arrows() {
            if b == i {
                out.push((a, p));
            }
            if a == i {
                out.push((b, p - 1));
            }
        }
        out.retain(|&v| self.in_window(v));
        out
    }

    fn lookup(&self, v: ZVertex) -> Result<DerivedObject> {
        self.label(v).cloned().ok_or_else(|| Error::OutOfWindow(format!("({},{})", v.0 + 1, v.1)))
    }

    pub fn tau(&self, obj: &DerivedObject) -> Result<DerivedObject> {
        let (i, p) = self.vertex_of(obj)?;
        self.lookup((i, p - 1))
    }

    pub fn tau_inv(&self, obj: &DerivedObject) -> Result<DerivedObject> {
        let (i, p) = self.vertex_of(obj)?;
        self.lookup((i, p + 1))
    }

    pub fn sigma(&self, obj: &DerivedObject) -> DerivedObject {
        obj.shifted(1)
    }

    pub fn rho_hat(&self, obj: &DerivedObject) -> DerivedObject {
        let mut root = vec![0; obj.root.len()];
        for (k, &x) in obj.root.iter().enumerate() {
            root[self.q.rho(k)] = x;
        }
        DerivedObject { root, shift: obj.shift }
    }

    /// `(Σϱ̂)^m`.
    pub fn f_power(&self, obj: &DerivedObject, m: i64) -> DerivedObject {
        let o = if m.rem_euclid(2) == 1 { self.rho_hat(obj) } else { obj.clone() };
        o.shifted(m)
    }

    /// Vertex permutation induced by `Σϱ̂` (defined where the image stays in the window).
    pub fn sigma_rho_vertex(&self, v: ZVertex) -> Result<ZVertex> {
        let obj = self.lookup(v)?;
        self.vertex_of(&self.f_power(&obj, 1))
    }

    /// Hammock `z -> dim Hom(x, z)` from `x` over the levels of the window ≥ level of `x`.
    fn hammock(&self, x: ZVertex) -> Result<std::sync::Arc<Vec<i64>>> {
        if let Some(h) = self.hammocks.read().get(&x) {
            return Ok(h.clone());
        }
        let x_obj = self.lookup(x)?;
        let sx = self.vertex_of(&x_obj.shifted(1)).ok();
        let n = self.q.n();
        let mut h = vec![0i64; self.labels.len()];
        for p in x.1..=self.hi {
            for &i in &self.order {
                let z = (i, p);
                let mut val: i64 = self.predecessors(z).iter().map(|&y| h[self.idx(y)]).sum();
                if p - 1 >= x.1 {
                    val -= h[self.idx((i, p - 1))];
                }
                if z == x {
                    val += 1;
                }
                if Some(z) == sx {
                    val += 1;
                }
                h[self.idx(z)] = val;
            }
            if p > x.1 + 2 * self.h as i64 + 2 && (0..n).all(|i| h[self.idx((i, p))] == 0) {
                break;
            }
        }
        let h = std::sync::Arc::new(h);
        self.hammocks.write().insert(x, h.clone());
        Ok(h)
    }

    /// `dim Hom(X, Y)` in the derived category.
    pub fn hom_dq(&self, x: &DerivedObject, y: &DerivedObject) -> Result<i64> {
        let d = y.shift - x.shift;
        if d != 0 && d != 1 {
            return Ok(0);
        }
        let x0 = DerivedObject { root: x.root.clone(), shift: 0 };
        let y0 = DerivedObject { root: y.root.clone(), shift: d };
        let xv = self.vertex_of(&x0)?;
        let yv = self.vertex_of(&y0)?;
        if yv.1 < xv.1 {
            return Ok(0);
        }
        let h = self.hammock(xv)?;
        Ok(h[self.idx(yv)])
    }

    pub fn ext1(&self, x: &DerivedObject, y: &DerivedObject) -> Result<i64> {
        self.hom_dq(x, &y.shifted(1))
    }

    /// `Σ_m dim Hom(X, F^m Y)` for modules `X`, `Y`.
    pub fn hom_orbit(&self, x: &DerivedObject, y: &DerivedObject, f: OrbitFunctor) -> Result<i64> {
        match f {
            OrbitFunctor::SigmaRho => {
                let mut s = 0;
                for m in -1..=2 {
                    s += self.hom_dq(x, &self.f_power(y, m))?;
                }
                Ok(s)
            }
            OrbitFunctor::Sigma2 => {
                let mut s = 0;
                for m in -1..=1 {
                    s += self.hom_dq(x, &y.shifted(2 * m))?;
                }
                Ok(s)
            }
            OrbitFunctor::Tau(n) => {
                if n == 0 {
                    return Err(Error::NonAdmissibleF("τ^0 is the identity".into()));
                }
                self.check_admissible(f)?;
                let (i, p) = self.vertex_of(y)?;
                let mut s = 0;
                let mut m = 0i64;
                loop {
                    let v = (i, p - n * m);
                    if !self.in_window(v) {
                        break;
                    }
                    s += self.hom_dq(x, &self.lookup(v)?)?;
                    m += 1;
                }
                let mut m = -1i64;
                loop {
                    let v = (i, p - n * m);
                    if !self.in_window(v) {
                        break;
                    }
                    s += self.hom_dq(x, &self.lookup(v)?)?;
                    m -= 1;
                }
                Ok(s)
            }
        }
    }

    /// Checks `Hom(P_i, F^m P_i) = 0` for `m != 0` over the window.
    pub fn check_admissible(&self, f: OrbitFunctor) -> Result<()> {
        for i in 0..self.q.n() {
            let p = DerivedObject::module(projective_root(&self.q, i));
            let bad = match f {
                OrbitFunctor::SigmaRho => {
                    self.hom_dq(&p, &self.f_power(&p, 1))? + self.hom_dq(&p, &self.f_power(&p, -1))?
                }
                OrbitFunctor::Sigma2 => 0,
                OrbitFunctor::Tau(n) => {
                    let mut s = 0;
                    let (vi, vp) = self.vertex_of(&p)?;
                    for m in [-1i64, 1] {
                        let v = (vi, vp - n * m);
                        if self.in_window(v) {
                            s += self.hom_dq(&p, &self.lookup(v)?)?;
                        }
                    }
                    s
                }
            };
            if bad != 0 {
                return Err(Error::NonAdmissibleF(format!("Hom(P_{}, F^±1 P_{}) != 0", i + 1, i + 1)));
            }
        }
        Ok(())
    }

    /// Compares `Σϱ̂` with powers of `τ` on the projective slice.
    pub fn table1_order(&self) -> Result<TauPower> {
        let n = self.q.n();
        let mut levels = Vec::with_capacity(n);
        let mut perm = Vec::with_capacity(n);
        for i in 0..n {
            let (j, p) = self.sigma_rho_vertex((i, 0))?;
            perm.push(j);
            levels.push(p);
        }
        let identity = perm.iter().enumerate().all(|(i, &j)| i == j);
        if identity && levels.iter().all(|&p| p == levels[0]) {
            Ok(TauPower::Power(levels[0]))
        } else {
            Ok(TauPower::NotATauPower { levels, perm })
        }
    }

    /// Checks `(Σϱ̂)²(i,0) = (i,h)` for every `i`.
    pub fn sigma_rho_squared_is_tau_h(&self) -> Result<bool> {
        for i in 0..self.q.n() {
            let obj = self.lookup((i, 0))?;
            let v = self.vertex_of(&self.f_power(&obj, 2))?;
            if v != (i, self.h as i64) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// JSON dump of the window with the `τ`, `Σ`, `ϱ̂` permutations.
    pub fn to_json(&self) -> Value {
        let fmt_v = |v: Option<ZVertex>| match v {
            Some((i, p)) => json!([i + 1, p]),
            None => Value::Null,
        };
        let verts: Vec<Value> = self
            .vertices()
            .into_iter()
            .map(|v| {
                let l = &self.labels[self.idx(v)];
                let tau = self.in_window((v.0, v.1 - 1)).then_some((v.0, v.1 - 1));
                let sig = self.vertex_of(&l.shifted(1)).ok();
                let rho = self.vertex_of(&self.rho_hat(l)).ok();
                json!({
                    "vertex": v.0 + 1,
                    "level": v.1,
                    "root": root_string(&l.root),
                    "shift": l.shift,
                    "tau": fmt_v(tau),
                    "sigma": fmt_v(sig),
                    "rho_hat": fmt_v(rho),
                })
            })
            .collect();
        json!({
            "quiver": serde_json::to_value(self.q.to_json()).unwrap_or(Value::Null),
            "coxeter": self.h,
            "window": [self.lo, self.hi],
            "vertices": verts,
        })
    }

    pub fn to_dot(&self) -> String {
        let name = |(i, p): ZVertex| format!("\"{}_{}\"", i + 1, p);
        let mut s = String::from("digraph zq {\n  rankdir=LR;\n");
        for v in self.vertices() {
            s.push_str(&format!("  {} [label=\"{}\"];\n", name(v), self.labels[self.idx(v)]));
        }
        for v in self.vertices() {
            for w in self.successors(v) {
                s.push_str(&format!("  {} -> {};\n", name(v), name(w)));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Ranks of the maps in an exact sequence `0 -> d_0 -> d_1 -> ... -> d_{L-1} -> 0`.
pub fn les_ranks(dims: &[i64]) -> Result<Vec<i64>> {
    if dims.is_empty() {
        return Ok(Vec::new());
    }
    let mut ranks = Vec::with_capacity(dims.len().saturating_sub(1));
    let mut prev = 0i64;
    for (k, &d) in dims.iter().enumerate().take(dims.len() - 1) {
        let r = d - prev;
        if r < 0 {
            return Err(Error::InconsistentExactSequence(format!("negative rank at position {k}")));
        }
        ranks.push(r);
        prev = r;
    }
    if prev != dims[dims.len() - 1] {
        return Err(Error::InconsistentExactSequence(format!("alternating sum is {}", dims[dims.len() - 1] - prev)));
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn a2_slice() {
        let k = knit_zq(&preset("a2").unwrap());
        assert_eq!(k.label((0, 0)).unwrap().root, vec![1, 0]);
        assert_eq!(k.label((1, 0)).unwrap().root, vec![1, 1]);
        assert_eq!(k.label((0, 1)).unwrap(), &DerivedObject::module(vec![0, 1]));
        assert_eq!(k.label((1, 1)).unwrap(), &DerivedObject { root: vec![1, 0], shift: 1 });
    }

    #[test]
    fn a1_alternates() {
        let k = knit_zq(&preset("a1").unwrap());
        for p in 0..4 {
            assert_eq!(k.label((0, p)).unwrap().shift, p);
        }
    }

    #[test]
    fn les_examples() {
        assert_eq!(les_ranks(&[0, 1, 1, 0]).unwrap(), vec![0, 1, 0]);
        assert_eq!(les_ranks(&[0, 1, 2, 1, 0]).unwrap(), vec![0, 1, 1, 0]);
        assert!(matches!(les_ranks(&[0, 1, 1, 1, 0]), Err(Error::InconsistentExactSequence(_))));
    }

    #[test]
    fn small_window_rejected() {
        let q = preset("a3").unwrap();
        assert!(matches!(Knit::with_window(&q, 0, 5), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn euler_compatibility_and_bricks() {
        for (_, q) in crate::rootdata::standard_zoo() {
            let k = knit_zq(&q);
            let roots = q.positive_roots();
            for a in &roots {
                let x = DerivedObject::module(a.clone());
                assert_eq!(k.hom_dq(&x, &x).unwrap(), 1);
                for b in &roots {
                    let y = DerivedObject::module(b.clone());
                    let lhs = k.hom_dq(&x, &y).unwrap() - k.ext1(&x, &y).unwrap();
                    assert_eq!(lhs, q.euler_form(b, a).unwrap(), "{q} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn serre_period() {
        for name in ["a1", "a4", "d4", "d5-swap", "e6", "e6-flip", "e7", "e8", "a5-flip"] {
            let k = knit_zq(&preset(name).unwrap());
            assert!(k.sigma_rho_squared_is_tau_h().unwrap(), "{name}");
        }
    }

    #[test]
    fn table1_values() {
        for (name, m) in [("a3-flip", 2), ("a5-flip", 3), ("e6-flip", 6), ("e7", 9), ("e8", 15)] {
            let k = knit_zq(&preset(name).unwrap());
            assert_eq!(k.table1_order().unwrap(), TauPower::Power(m), "{name}");
        }
        for name in ["d4", "d5", "d6", "a2", "e6"] {
            let k = knit_zq(&preset(name).unwrap());
            eprintln!("{name}: {:?}", k.table1_order().unwrap());
        }
    }
}
