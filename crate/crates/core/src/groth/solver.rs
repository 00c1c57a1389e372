//! d-form, twisted comultiplication on `π`, the transition solver and `L`-basis products.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::Serialize;
use serde_json::{json, Value};

use super::catalog::Catalog;
use super::element::GElement;
use super::laurent::HalfLaurent;
use crate::error::{Error, Result};
use crate::inks::{add, dot, leq, nonneg, sub, DimPair, Inks};
use crate::rootdata::IQuiver;

/// `None` marks a coefficient the available constraints do not determine.
pub type Coef = Option<HalfLaurent>;

/// `d(p1,p2) = (σ*w1 − C_q v1)·τ*v2 + v1·σ*w2`.
pub fn d_form(inks: &Inks, p1: &DimPair, p2: &DimPair) -> Result<i64> {
    Ok(dot(&inks.slack(p1)?, &inks.tau_star(&p2.v)?) + dot(&p1.v, &inks.sigma_star(&p2.w)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Unique,
    Underdetermined,
}

/// `π(v,w) = Σ_{v'} a[v][v'] L(v',w)` over the strongly l-dominant `v` of one grade.
#[derive(Debug, Clone)]
pub struct Transition {
    pub w: Vec<i64>,
    pub pairs: Arc<Vec<DimPair>>,
    pub a: Vec<Vec<Coef>>,
    pub status: Status,
    /// Entries left open, as `(row, column)`.
    pub free: Vec<(usize, usize)>,
    /// Entries fixed by a catalog coefficient, with the fact id.
    pub from_catalog: Vec<(usize, usize, String)>,
}

impl Transition {
    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.pairs.iter().position(|p| p.v == v)
    }
    pub fn entry(&self, v: &[i64], v2: &[i64]) -> Option<&Coef> {
        Some(&self.a[self.index_of(v)?][self.index_of(v2)?])
    }

    pub fn to_json(&self, inks: &Inks) -> Result<Value> {
        let mut entries = Vec::new();
        for (t, row) in self.a.iter().enumerate() {
            for (s, c) in row.iter().enumerate() {
                if s == t || !leq(&self.pairs[s].v, &self.pairs[t].v) {
                    continue;
                }
                entries.push(json!({
                    "v": inks.v_to_json(&self.pairs[t].v),
                    "v2": inks.v_to_json(&self.pairs[s].v),
                    "a": c.as_ref().map(|x| x.to_json()),
                    "text": c.as_ref().map_or("?".to_string(), |x| x.to_string()),
                }));
            }
        }
        let pairs: Vec<Value> = self.pairs.iter().map(|p| inks.pair_to_json(p)).collect::<Result<_>>()?;
        Ok(json!({"w": self.w, "status": self.status, "pairs": pairs, "entries": entries}))
    }
}

/// `Δ_{w1,w2}(L(v,w))` in the basis `L(x,w1) ⊠ L(y,w2)` for every pair of the grade.
#[derive(Debug, Clone)]
pub struct SplitTable {
    pub w1: Vec<i64>,
    pub w2: Vec<i64>,
    pub rows: Vec<BTreeMap<(usize, usize), Coef>>,
}

#[derive(Debug)]
struct GradeData {
    transition: Transition,
    splits: BTreeMap<Vec<i64>, SplitTable>,
    index: HashMap<Vec<i64>, usize>,
}

/// One term `c · π(v1,w1) ⊠ π(v2,w2)` of a comultiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTerm {
    pub left: DimPair,
    pub right: DimPair,
    pub coeff: HalfLaurent,
}

/// The ring engine for one iquiver: pairs, catalog and per-grade caches.
#[derive(Debug)]
pub struct Groth {
    inks: Inks,
    catalog: Catalog,
    grades: RwLock<HashMap<Vec<i64>, Arc<GradeData>>>,
    cache_dir: Option<PathBuf>,
}

const MAX_SOLUTIONS: usize = 20_000;

impl Groth {
    pub fn new(inks: Inks, catalog: Catalog) -> Self {
        let cache_dir = std::env::var_os("IQG_CACHE_DIR").map(PathBuf::from);
        Groth { inks, catalog, grades: RwLock::new(HashMap::new()), cache_dir }
    }

    /// Engine with the shipped catalog.
    pub fn standard(q: &IQuiver) -> Result<Self> {
        let inks = Inks::new(q)?;
        let catalog = Catalog::standard(&inks)?;
        Ok(Groth::new(inks, catalog))
    }

    pub fn inks(&self) -> &Inks {
        &self.inks
    }
    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }
    pub fn quiver(&self) -> &IQuiver {
        self.inks.quiver()
    }

    pub fn pair(&self, v: Vec<i64>, w: Vec<i64>) -> DimPair {
        DimPair::new(v, w)
    }
    /// `L(0,1_{σS_i})`.
    pub fn l_simple(&self, i: usize) -> GElement {
        GElement::basis(DimPair::new(self.inks.zero_v(), self.inks.one_w(i)))
    }
    /// `L(v^i,w^i)`.
    pub fn l_cartan(&self, i: usize) -> GElement {
        GElement::basis(self.inks.canonical_v(i))
    }

    /// `v^{½⟨w1,w2⟩_a}·v^{d(p2,p1) − d(p1,p2)}` written as a power of `u = v^{1/2}`.
    pub fn comult_exponent(&self, p1: &DimPair, p2: &DimPair) -> Result<i64> {
        let (anti, _) = self.quiver().bilinear_forms(&p1.w, &p2.w)?;
        Ok(anti + 2 * (d_form(&self.inks, p2, p1)? - d_form(&self.inks, p1, p2)?))
    }

    /// `Δ_{w1,w2}(π(v,w))` on pushforward classes, with catalogued vanishing applied and
    /// identified factors replaced by their representatives.
    pub fn comult_pi(&self, p: &DimPair, w1: &[i64]) -> Result<Vec<PiTerm>> {
        let w2 = sub(&p.w, w1);
        if !nonneg(w1) || !nonneg(&w2) {
            return Err(Error::InvalidParameters("w1 must satisfy 0 <= w1 <= w".into()));
        }
        let mut out: BTreeMap<(DimPair, DimPair), HalfLaurent> = BTreeMap::new();
        for v1 in boxed(&p.v) {
            let a = DimPair::new(v1.clone(), w1.to_vec());
            let b = DimPair::new(sub(&p.v, &v1), w2.clone());
            if self.catalog.term_vanishes(&a, &b).is_some() {
                continue;
            }
            let (Some(ca), Some(cb)) = (self.canonical_factor(&a), self.canonical_factor(&b)) else { continue };
            let c = HalfLaurent::u_pow(self.comult_exponent(&a, &b)?);
            *out.entry((ca, cb)).or_default() += &c;
        }
        Ok(out
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((left, right), coeff)| PiTerm { left, right, coeff })
            .collect())
    }

    /// The same sum with no catalog applied.
    pub fn comult_pi_raw(&self, p: &DimPair, w1: &[i64]) -> Result<Vec<PiTerm>> {
        let w2 = sub(&p.w, w1);
        let mut out = Vec::new();
        for v1 in boxed(&p.v) {
            let a = DimPair::new(v1.clone(), w1.to_vec());
            let b = DimPair::new(sub(&p.v, &v1), w2.clone());
            let coeff = HalfLaurent::u_pow(self.comult_exponent(&a, &b)?);
            out.push(PiTerm { left: a, right: b, coeff });
        }
        Ok(out)
    }

    /// `None` if the catalog kills `π(p)`, else the representative after identifications.
    fn canonical_factor(&self, p: &DimPair) -> Option<DimPair> {
        let mut cur = p.clone();
        for _ in 0..16 {
            if self.catalog.vanishes(&cur.v, &cur.w).is_some() {
                return None;
            }
            match self.catalog.identify(&cur.v, &cur.w) {
                Some((_, to)) => cur = DimPair::new(to.to_vec(), cur.w.clone()),
                None => return Some(cur),
            }
        }
        Some(cur)
    }

    pub fn pairs(&self, w: &[i64]) -> Result<Arc<Vec<DimPair>>> {
        self.inks.enumerate_pairs(w)
    }

    /// The transition matrix at grade `w`.
    pub fn solve_transition(&self, w: &[i64]) -> Result<Transition> {
        Ok(self.grade(w)?.transition.clone())
    }

    /// `Δ_{w1, w−w1}(L(·,w))`.
    pub fn split_table(&self, w: &[i64], w1: &[i64]) -> Result<SplitTable> {
        let g = self.grade(w)?;
        g.splits
            .get(w1)
            .cloned()
            .ok_or_else(|| Error::InvalidParameters(format!("{:?} is not a proper split of {:?}", w1, w)))
    }

    fn grade(&self, w: &[i64]) -> Result<Arc<GradeData>> {
        if let Some(g) = self.grades.read().get(w) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.compute_grade(w)?);
        if let Some(dir) = &self.cache_dir {
            self.dump(dir, &g.transition);
        }
        self.grades.write().entry(w.to_vec()).or_insert_with(|| g.clone());
        Ok(g)
    }

    fn dump(&self, dir: &PathBuf, t: &Transition) {
        let label: String = self
            .quiver()
            .label()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let w: Vec<String> = t.w.iter().map(|x| x.to_string()).collect();
        let path = dir.join(format!("{}-w{}.json", label, w.join("_")));
        if let Ok(j) = t.to_json(&self.inks) {
            let _ = std::fs::create_dir_all(dir);
            let _ = std::fs::write(path, serde_json::to_string_pretty(&j).unwrap_or_default());
        }
    }

    /// Expansion of `π(v,w)` in `L(·,w)` as `(index, coefficient)`; an uncatalogued, non-dominant
    /// stratum gives unknown coefficients on every dominant `x <= v`.
    fn resolve(&self, p: &DimPair) -> Result<Vec<(usize, Coef)>> {
        let Some(c) = self.canonical_factor(p) else { return Ok(Vec::new()) };
        if !nonneg(&c.v) {
            return Ok(Vec::new());
        }
        let g = self.grade(&c.w)?;
        let t = &g.transition;
        if let Some(&row) = g.index.get(&c.v) {
            return Ok(t.a[row]
                .iter()
                .enumerate()
                .filter(|(_, x)| x.as_ref().map_or(true, |x| !x.is_zero()))
                .map(|(s, x)| (s, x.clone()))
                .collect());
        }
        Ok(t.pairs.iter().enumerate().filter(|(_, q)| leq(&q.v, &c.v)).map(|(s, _)| (s, None)).collect())
    }

    fn delta_pi_row(&self, p: &DimPair, w1: &[i64]) -> Result<BTreeMap<(usize, usize), Coef>> {
        let w2 = sub(&p.w, w1);
        let mut row: BTreeMap<(usize, usize), Coef> = BTreeMap::new();
        let mut memo: HashMap<DimPair, Vec<(usize, Coef)>> = HashMap::new();
        for v1 in boxed(&p.v) {
            let a = DimPair::new(v1.clone(), w1.to_vec());
            let b = DimPair::new(sub(&p.v, &v1), w2.clone());
            if self.catalog.term_vanishes(&a, &b).is_some() {
                continue;
            }
            let fa = match memo.get(&a) {
                Some(x) => x.clone(),
                None => {
                    let x = self.resolve(&a)?;
                    memo.insert(a.clone(), x.clone());
                    x
                }
            };
            if fa.is_empty() {
                continue;
            }
            let fb = match memo.get(&b) {
                Some(x) => x.clone(),
                None => {
                    let x = self.resolve(&b)?;
                    memo.insert(b.clone(), x.clone());
                    x
                }
            };
            if fb.is_empty() {
                continue;
            }
            let c = HalfLaurent::u_pow(self.comult_exponent(&a, &b)?);
            for (x, cx) in &fa {
                for (y, cy) in &fb {
                    let term = match (cx, cy) {
                        (Some(cx), Some(cy)) => Some(&(&c * cx) * cy),
                        _ => None,
                    };
                    accumulate(&mut row, (*x, *y), term);
                }
            }
        }
        row.retain(|_, c| c.as_ref().map_or(true, |c| !c.is_zero()));
        Ok(row)
    }

    fn compute_grade(&self, w: &[i64]) -> Result<GradeData> {
        let pairs = self.inks.enumerate_pairs(w)?;
        if pairs.is_empty() {
            return Err(Error::InvalidParameters(format!("no pairs at grade {:?}", w)));
        }
        let n = pairs.len();
        let index: HashMap<Vec<i64>, usize> = pairs.iter().enumerate().map(|(k, p)| (p.v.clone(), k)).collect();
        let splits_w: Vec<Vec<i64>> = boxed(w).into_iter().filter(|w1| w1.iter().any(|&x| x != 0) && w1 != w).collect();
        let mut dpi: Vec<Vec<BTreeMap<(usize, usize), Coef>>> = Vec::with_capacity(splits_w.len());
        for w1 in &splits_w {
            let rows = pairs.iter().map(|p| self.delta_pi_row(p, w1)).collect::<Result<Vec<_>>>()?;
            dpi.push(rows);
        }
        let coef_facts = self.catalog.coefficients(w);
        let mut a: Vec<Vec<Coef>> = vec![vec![Some(HalfLaurent::zero()); n]; n];
        let mut free = Vec::new();
        let mut from_catalog = Vec::new();
        let mut dl: Vec<Vec<BTreeMap<(usize, usize), Coef>>> = vec![Vec::with_capacity(n); splits_w.len()];
        for t in 0..n {
            a[t][t] = Some(HalfLaurent::one());
            let below: Vec<usize> = (0..t).filter(|&s| leq(&pairs[s].v, &pairs[t].v)).collect();
            let mut pinned: BTreeMap<usize, HalfLaurent> = BTreeMap::new();
            for (fv, fv2, value, fact) in &coef_facts {
                if *fv != pairs[t].v.as_slice() {
                    continue;
                }
                for &s in &below {
                    if fv2.map_or(true, |x| x == pairs[s].v.as_slice()) {
                        pinned.insert(s, (*value).clone());
                        from_catalog.push((t, s, fact.id.clone()));
                    }
                }
            }
            let vars: Vec<usize> = below.iter().copied().filter(|s| !pinned.contains_key(s)).collect();
            let mut cons: Vec<Constraint> = Vec::new();
            for (k, _) in splits_w.iter().enumerate() {
                let mut keys: BTreeSet<(usize, usize)> = dpi[k][t].keys().copied().collect();
                for &s in &below {
                    keys.extend(dl[k][s].keys().copied());
                }
                'target: for key in keys {
                    let Some(mut p) = dpi[k][t].get(&key).cloned().unwrap_or(Some(HalfLaurent::zero())) else { continue };
                    for (&s, val) in &pinned {
                        if val.is_zero() {
                            continue;
                        }
                        match dl[k][s].get(&key) {
                            None => {}
                            Some(Some(q)) => p -= &(val * q),
                            Some(None) => continue 'target,
                        }
                    }
                    let mut qs = Vec::new();
                    for (vi, &s) in vars.iter().enumerate() {
                        match dl[k][s].get(&key) {
                            None => {}
                            Some(Some(q)) => qs.push((vi, q.clone())),
                            Some(None) => continue 'target,
                        }
                    }
                    cons.push(Constraint { p, qs });
                }
            }
            let sol = solve_row(vars.len(), &cons).map_err(|why| {
                Error::Infeasible(format!("{} at {}: {}", self.inks.fmt_w(w), self.inks.fmt_pair(&pairs[t]), why))
            })?;
            for (&s, val) in &pinned {
                a[t][s] = Some(val.clone());
            }
            for (vi, &s) in vars.iter().enumerate() {
                a[t][s] = sol[vi].clone();
                if sol[vi].is_none() {
                    free.push((t, s));
                }
            }
            for k in 0..splits_w.len() {
                let mut row = dpi[k][t].clone();
                for &s in &below {
                    match &a[t][s] {
                        Some(x) if x.is_zero() => {}
                        Some(x) => {
                            for (key, q) in &dl[k][s] {
                                let term = q.as_ref().map(|q| -(x * q));
                                accumulate(&mut row, *key, term);
                            }
                        }
                        None => {
                            for key in dl[k][s].keys() {
                                accumulate(&mut row, *key, None);
                            }
                        }
                    }
                }
                row.retain(|_, c| c.as_ref().map_or(true, |c| !c.is_zero()));
                dl[k].push(row);
            }
        }
        let status = if free.is_empty() { Status::Unique } else { Status::Underdetermined };
        let mut splits = BTreeMap::new();
        for (k, w1) in splits_w.into_iter().enumerate() {
            let w2 = sub(w, &w1);
            splits.insert(w1.clone(), SplitTable { w1, w2, rows: std::mem::take(&mut dl[k]) });
        }
        let transition = Transition { w: w.to_vec(), pairs, a, status, free, from_catalog };
        Ok(GradeData { transition, splits, index })
    }

    /// `L(p1)·L(p2)`, read from `Δ_{w1,w2}(L(·,w1+w2))`.
    pub fn multiply_basis(&self, p1: &DimPair, p2: &DimPair) -> Result<GElement> {
        if p1.w.iter().all(|&x| x == 0) {
            return if p1.v.iter().all(|&x| x == 0) { Ok(GElement::basis(p2.clone())) } else { Err(Error::NotLDominant) };
        }
        if p2.w.iter().all(|&x| x == 0) {
            return if p2.v.iter().all(|&x| x == 0) { Ok(GElement::basis(p1.clone())) } else { Err(Error::NotLDominant) };
        }
        let w = add(&p1.w, &p2.w);
        let (g1, g2, g) = (self.grade(&p1.w)?, self.grade(&p2.w)?, self.grade(&w)?);
        let x = *g1.index.get(&p1.v).ok_or(Error::NotLDominant)?;
        let y = *g2.index.get(&p2.v).ok_or(Error::NotLDominant)?;
        let table = &g.splits[&p1.w];
        let mut out = GElement::zero();
        for (t, row) in table.rows.iter().enumerate() {
            match row.get(&(x, y)) {
                None => {}
                Some(Some(c)) => out.add_term(g.transition.pairs[t].clone(), c),
                Some(None) => {
                    return Err(Error::SolverUnderdetermined(format!(
                        "{} (coefficient of L{} in L{}·L{})",
                        self.inks.fmt_w(&w),
                        self.inks.fmt_pair(&g.transition.pairs[t]),
                        self.inks.fmt_pair(p1),
                        self.inks.fmt_pair(p2)
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &GElement, y: &GElement) -> Result<GElement> {
        let mut out = GElement::zero();
        for (p1, c1) in x.terms() {
            for (p2, c2) in y.terms() {
                let prod = self.multiply_basis(p1, p2)?;
                out = out.add(&prod.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    /// Product of a list of factors; the empty product is `L(0,0)`.
    ///
    /// Bracketings are tried until one avoids every undetermined coefficient, which is
    /// legitimate since the product is associative.
    pub fn product(&self, factors: &[GElement]) -> Result<GElement> {
        if factors.is_empty() {
            return Ok(GElement::one(&self.inks));
        }
        let mut memo: HashMap<(usize, usize), std::result::Result<GElement, Error>> = HashMap::new();
        self.product_range(factors, 0, factors.len(), &mut memo)
    }

    fn product_range(
        &self,
        f: &[GElement],
        lo: usize,
        hi: usize,
        memo: &mut HashMap<(usize, usize), std::result::Result<GElement, Error>>,
    ) -> Result<GElement> {
        if hi - lo == 1 {
            return Ok(f[lo].clone());
        }
        if let Some(r) = memo.get(&(lo, hi)) {
            return r.clone();
        }
        let mut last = None;
        for mid in (lo + 1..hi).rev() {
            let attempt = self
                .product_range(f, lo, mid, memo)
                .and_then(|a| Ok((a, self.product_range(f, mid, hi, memo)?)))
                .and_then(|(a, b)| self.multiply(&a, &b));
            match attempt {
                Ok(x) => {
                    memo.insert((lo, hi), Ok(x.clone()));
                    return Ok(x);
                }
                Err(e @ Error::SolverUnderdetermined(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        let e = last.expect("at least one split");
        memo.insert((lo, hi), Err(e.clone()));
        Err(e)
    }
}

fn accumulate(row: &mut BTreeMap<(usize, usize), Coef>, key: (usize, usize), term: Coef) {
    let e = row.entry(key).or_insert(Some(HalfLaurent::zero()));
    match (e.as_mut(), term) {
        (Some(acc), Some(t)) => *acc += &t,
        _ => *e = None,
    }
}

/// All `x` with `0 <= x <= v` entrywise.
pub(crate) fn boxed(v: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(v.len())];
    for &m in v {
        let mut next = Vec::with_capacity(out.len() * (m.max(0) as usize + 1));
        for prefix in &out {
            for k in 0..=m.max(0) {
                let mut p = prefix.clone();
                p.push(k);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// `p − Σ a_k q_k` must have nonnegative coefficients.
struct Constraint {
    p: HalfLaurent,
    qs: Vec<(usize, HalfLaurent)>,
}

impl Constraint {
    fn holds(&self, vals: &[HalfLaurent]) -> bool {
        let mut r = self.p.clone();
        for (k, q) in &self.qs {
            r -= &(&vals[*k] * q);
        }
        let ok = r.terms().all(|(_, c)| c >= 0);
        ok
    }
}

/// Bar-invariant `a ∈ ℕ[v^{±1}]` with `a·q <= p`.
fn candidates_for(p: &HalfLaurent, q: &HalfLaurent) -> Vec<HalfLaurent> {
    let zero = vec![HalfLaurent::zero()];
    let (Some(pm), Some(pmax), Some(qm), Some(qmax)) = (p.min_exp(), p.max_exp(), q.min_exp(), q.max_exp()) else {
        return zero;
    };
    let hi = (pmax - qmax).min(qm - pm);
    if hi < 0 {
        return zero;
    }
    let kmax = hi / 2;
    let cmax = p.max_coeff().max(0);
    let mut out = Vec::new();
    let mut cur = HalfLaurent::zero();
    fn rec(k: i64, kmax: i64, cmax: i64, p: &HalfLaurent, q: &HalfLaurent, cur: &mut HalfLaurent, out: &mut Vec<HalfLaurent>) {
        if k > kmax {
            out.push(cur.clone());
            return;
        }
        for m in 0..=cmax {
            let mut next = cur.clone();
            if m > 0 {
                next.add_term(2 * k, m);
                if k > 0 {
                    next.add_term(-2 * k, m);
                }
            }
            if !(&next * q).leq(p) {
                break;
            }
            rec(k + 1, kmax, cmax, p, q, &mut next, out);
            if out.len() > MAX_SOLUTIONS {
                return;
            }
        }
    }
    rec(0, kmax, cmax, p, q, &mut cur, &mut out);
    out
}

/// Solves one row; `Ok` holds pinned values, `None` where feasible solutions disagree or
/// nothing constrains the entry.
fn solve_row(nvars: usize, cons: &[Constraint]) -> std::result::Result<Vec<Coef>, String> {
    for c in cons.iter().filter(|c| c.qs.is_empty()) {
        if !c.holds(&[]) {
            return Err(format!("negative coefficient {} with nothing left to subtract", c.p));
        }
    }
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let mut cands: Vec<Option<Vec<HalfLaurent>>> = Vec::with_capacity(nvars);
    for k in 0..nvars {
        let rel: Vec<&Constraint> = cons.iter().filter(|c| c.qs.iter().any(|(j, _)| *j == k)).collect();
        let gen = rel.iter().find_map(|c| {
            let (_, q) = c.qs.iter().find(|(j, _)| *j == k)?;
            if q.is_nonneg() {
                Some(candidates_for(&c.p, q))
            } else {
                None
            }
        });
        let Some(gen) = gen else {
            cands.push(None);
            continue;
        };
        let mut vals = vec![HalfLaurent::zero(); nvars];
        let keep: Vec<HalfLaurent> = gen
            .into_iter()
            .filter(|a| {
                vals[k] = a.clone();
                rel.iter().all(|c| c.holds(&vals))
            })
            .collect();
        if keep.is_empty() {
            return Err(format!("no admissible value for unknown #{k}"));
        }
        cands.push(Some(keep));
    }
    let mut sols: Vec<Vec<HalfLaurent>> = Vec::new();
    let mut vals = vec![HalfLaurent::zero(); nvars];
    let mut truncated = false;
    fn dfs(
        k: usize,
        cands: &[Option<Vec<HalfLaurent>>],
        cons: &[Constraint],
        vals: &mut Vec<HalfLaurent>,
        sols: &mut Vec<Vec<HalfLaurent>>,
        truncated: &mut bool,
    ) {
        if sols.len() >= MAX_SOLUTIONS {
            *truncated = true;
            return;
        }
        if k == cands.len() {
            sols.push(vals.clone());
            return;
        }
        match &cands[k] {
            None => dfs(k + 1, cands, cons, vals, sols, truncated),
            Some(list) => {
                for a in list {
                    vals[k] = a.clone();
                    if cons.iter().all(|c| c.holds(vals)) {
                        dfs(k + 1, cands, cons, vals, sols, truncated);
                    }
                }
                vals[k] = HalfLaurent::zero();
            }
        }
    }
    dfs(0, &cands, cons, &mut vals, &mut sols, &mut truncated);
    if sols.is_empty() {
        return Err("no joint solution".into());
    }
    Ok((0..nvars)
        .map(|k| {
            cands[k].as_ref()?;
            let first = &sols[0][k];
            if !truncated && sols.iter().all(|s| &s[k] == first) {
                Some(first.clone())
            } else {
                None
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn box_enumeration() {
        assert_eq!(boxed(&[1, 0, 2]).len(), 6);
        assert_eq!(boxed(&[]).len(), 1);
    }

    #[test]
    fn candidate_search() {
        // a·u^{-1} <= u^{1}: only a = 0.
        let c = candidates_for(&HalfLaurent::u_pow(1), &HalfLaurent::u_pow(-1));
        assert_eq!(c, vec![HalfLaurent::zero()]);
        // a·1 <= 2: a in {0,1,2}.
        let c = candidates_for(&HalfLaurent::constant(2), &HalfLaurent::one());
        assert_eq!(c.len(), 3);
        // a·1 <= v + 1 + v^{-1}: a in {0, 1, v+v^{-1}, v+1+v^{-1}}.
        let p = HalfLaurent::from_terms([(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(candidates_for(&p, &HalfLaurent::one()).len(), 4);
    }

    #[test]
    fn d_form_on_zero_v() {
        let g = Groth::standard(&preset("a3").unwrap()).unwrap();
        let k = g.inks();
        let p1 = DimPair::new(k.zero_v(), k.w_of(&[0, 1]));
        let p2 = DimPair::new(k.zero_v(), k.w_of(&[2, 2]));
        assert_eq!(d_form(k, &p1, &p2).unwrap(), 0);
    }

    #[test]
    fn split_a2_first_grade() {
        let g = Groth::standard(&preset("a2").unwrap()).unwrap();
        let k = g.inks();
        let t = g.solve_transition(&k.w_of(&[0, 1])).unwrap();
        assert_eq!(t.status, Status::Unique);
        assert_eq!(t.pairs.len(), 2);
        assert_eq!(t.a[1][0], Some(HalfLaurent::zero()));
    }
}
