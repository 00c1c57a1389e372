//! The basis `L(v⁺,w⁺)·L(v⁰,w⁰)` and normal forms in the reduced ring.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use super::element::GElement;
use super::laurent::HalfLaurent;
use super::solver::Groth;
use crate::error::{Error, Result};
use crate::inks::{sub, DimPair};

/// One basis product: `plus` has `v` off the injectives, `zero = Σ a_i (v^i,w^i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiltrationTerm {
    pub plus: DimPair,
    pub zero: DimPair,
    pub a: Vec<i64>,
}

/// A reduced-ring parameter `ς_i`: kept symbolic or specialized to a nonzero value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Varsigma {
    Symbol,
    Value(HalfLaurent),
}

/// `Σ c · ς^e · L(v⁺,w⁺)·Π L(v^i,w^i)^{r_i}`, keyed by `(v⁺ pair, r, e)`.
///
/// `e` is indexed by vertex; only orbit representatives carry nonzero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReducedElement {
    pub terms: BTreeMap<(DimPair, Vec<i64>, Vec<i64>), HalfLaurent>,
}

impl ReducedElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (DimPair, Vec<i64>, Vec<i64>), c: &HalfLaurent) {
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The scalar part when the element is a multiple of `1`.
    pub fn as_scalar(&self) -> Option<(HalfLaurent, Vec<i64>)> {
        if self.terms.len() != 1 {
            return if self.terms.is_empty() { Some((HalfLaurent::zero(), Vec::new())) } else { None };
        }
        let ((p, r, e), c) = self.terms.iter().next()?;
        (p.v.iter().all(|&x| x == 0) && p.w.iter().all(|&x| x == 0) && r.iter().all(|&x| x == 0))
            .then(|| (c.clone(), e.clone()))
    }

    pub fn fmt_with(&self, g: &Groth) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let k = g.inks();
        let mut out = Vec::new();
        for ((p, r, e), c) in &self.terms {
            let mut s = format!("({c})");
            for (i, &x) in e.iter().enumerate() {
                if x == 1 {
                    let _ = write!(s, "·ς{}", i + 1);
                } else if x > 1 {
                    let _ = write!(s, "·ς{}^{}", i + 1, x);
                }
            }
            if !p.w.iter().all(|&x| x == 0) {
                let _ = write!(s, "·L{}", k.fmt_pair(p));
            }
            for (i, &x) in r.iter().enumerate() {
                if x > 0 {
                    let _ = write!(s, "·K{}^{}", i + 1, x);
                }
            }
            out.push(s);
        }
        out.join(" + ")
    }

    pub fn to_json(&self, g: &Groth) -> Result<Value> {
        let k = g.inks();
        let mut out = Vec::new();
        for ((p, r, e), c) in &self.terms {
            out.push(json!({"plus": k.pair_to_json(p)?, "cartan_powers": r, "varsigma_powers": e, "coeff": c.to_json(), "text": c.to_string()}));
        }
        Ok(Value::Array(out))
    }
}

impl Groth {
    /// Basis products of grade `w`, one per strongly l-dominant pair of that grade.
    pub fn filtration_basis(&self, w: &[i64]) -> Result<Vec<FiltrationTerm>> {
        let k = self.inks();
        let n = k.n();
        if w.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: w.len() });
        }
        let mut out = Vec::new();
        let mut a = vec![0i64; n];
        self.basis_rec(w, 0, &mut a, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn basis_rec(&self, rest: &[i64], i: usize, a: &mut Vec<i64>, out: &mut Vec<FiltrationTerm>) -> Result<()> {
        let k = self.inks();
        if rest.iter().any(|&x| x < 0) {
            return Ok(());
        }
        if i == k.n() {
            let zero = k.klr_dim_finite_pd(a)?;
            for v in k.plus_pairs(rest) {
                out.push(FiltrationTerm { plus: DimPair::new(v, rest.to_vec()), zero: zero.clone(), a: a.clone() });
            }
            return Ok(());
        }
        let wi = k.wi(i);
        let mut cur = rest.to_vec();
        while cur.iter().all(|&x| x >= 0) {
            self.basis_rec(&cur, i + 1, a, out)?;
            cur = sub(&cur, &wi);
            a[i] += 1;
        }
        a[i] = 0;
        Ok(())
    }

    /// `L(v⁺,w⁺)·L(v⁰,w⁰)` expanded in the `L`-basis.
    pub fn basis_product(&self, t: &FiltrationTerm) -> Result<GElement> {
        self.multiply(&GElement::basis(t.plus.clone()), &GElement::basis(t.zero.clone()))
    }

    /// Coordinates of `x` in the filtration basis, keyed by `(v⁺ pair, a)`.
    pub fn to_filtration_basis(&self, x: &GElement) -> Result<BTreeMap<(DimPair, Vec<i64>), HalfLaurent>> {
        let k = self.inks();
        let mut rest = x.clone();
        let mut out: BTreeMap<(DimPair, Vec<i64>), HalfLaurent> = BTreeMap::new();
        let mut guard = 0usize;
        while let Some((p, c)) = rest.terms().min_by_key(|(p, _)| (p.v.iter().sum::<i64>(), (*p).clone())).map(|(p, c)| (p.clone(), c.clone())) {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::Infeasible("basis expansion does not terminate".into()));
            }
            let (plus, zero) = k.decompose_pair(&p)?;
            let a: Vec<i64> = (0..k.n()).map(|i| p.v[k.injective(i)]).collect();
            let t = FiltrationTerm { plus: plus.clone(), zero, a: a.clone() };
            let b = self.basis_product(&t)?;
            let lead = b.coeff(&p);
            let q = c.div_unit(&lead).map_err(|_| {
                Error::Infeasible(format!("leading coefficient {} of basis product at {} is not a unit", lead, k.fmt_pair(&p)))
            })?;
            rest = rest.sub(&b.scale(&q));
            let e = out.entry((plus, a)).or_default();
            *e += &q;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn check_params(&self, params: &[Varsigma]) -> Result<()> {
        let q = self.quiver();
        let n = q.rank();
        if params.len() != n {
            return Err(Error::InvalidParameters(format!("expected {n} parameters, got {}", params.len())));
        }
        for (i, p) in params.iter().enumerate() {
            if let Varsigma::Value(x) = p {
                if x.is_zero() {
                    return Err(Error::InvalidParameters(format!("ς{} must be nonzero", i + 1)));
                }
            }
            if params[q.rho(i)] != *p {
                return Err(Error::InvalidParameters(format!("ς{} must equal ς{}", i + 1, q.rho(i) + 1)));
            }
        }
        Ok(())
    }

    /// Normal form of `x` modulo `L(v^i,w^i) + vς_i` (ϱi = i) and
    /// `L(v^i,w^i)L(v^{ϱi},w^i) − ς_i²` (ϱi ≠ i).
    pub fn reduce(&self, x: &GElement, params: &[Varsigma]) -> Result<ReducedElement> {
        self.check_params(params)?;
        let q = self.quiver();
        let n = q.rank();
        let coords = self.to_filtration_basis(x)?;
        let mut out = ReducedElement::default();
        for ((plus, a), c) in coords {
            let mut coeff = c;
            let mut r = a.clone();
            let mut e = vec![0i64; n];
            for i in 0..n {
                let j = q.rho(i);
                let rep = i.min(j);
                let steps = if i == j {
                    let m = r[i];
                    r[i] = 0;
                    coeff = &coeff * &(-HalfLaurent::v_pow(1)).pow(m as u32);
                    m
                } else if i < j {
                    let m = r[i].min(r[j]);
                    r[i] -= m;
                    r[j] -= m;
                    2 * m
                } else {
                    continue;
                };
                match &params[rep] {
                    Varsigma::Symbol => e[rep] += steps,
                    Varsigma::Value(val) => coeff = &coeff * &val.pow(steps as u32),
                }
            }
            out.add_term((plus, r, e), &coeff);
        }
        Ok(out)
    }
}
