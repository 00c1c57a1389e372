//! Elements of the quantum Grothendieck ring in the dual canonical basis `L(v,w)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde_json::{json, Value};

use super::laurent::HalfLaurent;
use crate::error::Result;
use crate::inks::{DimPair, Inks};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GElement {
    terms: BTreeMap<DimPair, HalfLaurent>,
}

impl GElement {
    pub fn zero() -> Self {
        GElement::default()
    }
    /// `L(0,0)`.
    pub fn one(inks: &Inks) -> Self {
        GElement::basis(DimPair::new(inks.zero_v(), inks.zero_w()))
    }
    pub fn basis(p: DimPair) -> Self {
        GElement::term(p, HalfLaurent::one())
    }
    pub fn term(p: DimPair, c: HalfLaurent) -> Self {
        let mut e = GElement::zero();
        e.add_term(p, &c);
        e
    }

    pub fn add_term(&mut self, p: DimPair, c: &HalfLaurent) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DimPair, &HalfLaurent)> {
        self.terms.iter()
    }
    pub fn coeff(&self, p: &DimPair) -> HalfLaurent {
        self.terms.get(p).cloned().unwrap_or_default()
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
    pub fn grades(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().map(|p| p.w.clone()).collect()
    }

    pub fn add(&self, o: &GElement) -> GElement {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c);
        }
        out
    }
    pub fn sub(&self, o: &GElement) -> GElement {
        self.add(&o.scale(&HalfLaurent::constant(-1)))
    }
    pub fn scale(&self, c: &HalfLaurent) -> GElement {
        let mut out = GElement::zero();
        for (p, x) in &self.terms {
            out.add_term(p.clone(), &(x * c));
        }
        out
    }

    /// Every coefficient lies in `ℕ[v^{±1/2}]`.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_nonneg())
    }

    pub fn fmt_with(&self, inks: &Inks) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "({})·L{}", c, inks.fmt_pair(p));
        }
        s
    }

    pub fn to_json(&self, inks: &Inks) -> Result<Value> {
        let mut out = Vec::new();
        for (p, c) in &self.terms {
            out.push(json!({"pair": inks.pair_to_json(p)?, "coeff": c.to_json(), "text": c.to_string()}));
        }
        Ok(Value::Array(out))
    }
}
