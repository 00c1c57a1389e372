//! Geometric inputs that the combinatorics cannot derive: vanishing and identification of
//! pushforward classes, and a few transition coefficients.
//!
//! The shipped file holds templates over a vertex `k` or an arrow `a -> b`; [`Catalog::instantiate`]
//! turns them into concrete facts for one iquiver. Concrete entries (with `v` given as a
//! root-keyed object and `w` as an array) are accepted as well.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::laurent::HalfLaurent;
use crate::error::{Error, Result};
use crate::inks::{add, sub, DimPair, Inks};

pub const DEFAULT_CASES: &str = include_str!("../../data/cases.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    #[serde(default)]
    pub id: String,
    pub kind: String,
    #[serde(default)]
    pub scope: Option<String>,
    #[serde(default)]
    pub when: Option<String>,
    pub v: Value,
    pub w: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v2: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w2: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub keep: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unless: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    /// `π(v,w) = 0` for every `v ≠ 0` with `v(x) = 0` (any `v ≠ 0` when `missing` is `None`).
    VanishSupport { w: Vec<i64>, missing: Option<usize> },
    Vanish { v: Vec<i64>, w: Vec<i64> },
    /// `π(v,w) = π(to,w)`.
    Identify { v: Vec<i64>, w: Vec<i64>, to: Vec<i64> },
    /// `π(total − y, wa) ⊠ π(y, wb) = 0` for `y` outside `keep`, in either tensor order.
    VanishTerm { total: Vec<i64>, wa: Vec<i64>, wb: Vec<i64>, keep: Vec<Vec<i64>> },
    /// `a_{v,v2;w} = value`; `v2 = None` means every `v2 < v`.
    Coefficient { w: Vec<i64>, v: Vec<i64>, v2: Option<Vec<i64>>, value: HalfLaurent },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFact {
    pub id: String,
    pub anchor: String,
    pub fact: Fact,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    facts: Vec<CatalogFact>,
}

#[derive(Clone, Copy)]
enum Binding {
    Global,
    Vertex(usize),
    Arrow(usize, usize),
}

impl Binding {
    fn letter(&self, c: char) -> Result<usize> {
        match (self, c) {
            (Binding::Vertex(k), 'k') => Ok(*k),
            (Binding::Arrow(a, _), 'a') => Ok(*a),
            (Binding::Arrow(_, b), 'b') => Ok(*b),
            _ => Err(Error::Parse(format!("unbound vertex letter {c:?}"))),
        }
    }
}

fn braced(s: &str, prefix: &str) -> Option<String> {
    s.strip_prefix(prefix)?.strip_prefix('{')?.strip_suffix('}').map(|x| x.to_string())
}

impl Catalog {
    pub fn empty() -> Self {
        Catalog::default()
    }

    pub fn templates(src: &str) -> Result<Vec<Template>> {
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("catalog: {e}")))
    }

    /// The shipped templates instantiated for `inks`.
    pub fn standard(inks: &Inks) -> Result<Self> {
        Catalog::instantiate(&Catalog::templates(DEFAULT_CASES)?, inks)
    }

    pub fn from_json_str(src: &str, inks: &Inks) -> Result<Self> {
        Catalog::instantiate(&Catalog::templates(src)?, inks)
    }

    pub fn instantiate(templates: &[Template], inks: &Inks) -> Result<Self> {
        let q = inks.quiver();
        let mut facts = Vec::new();
        for t in templates {
            let bindings: Vec<Binding> = match t.scope.as_deref().unwrap_or("global") {
                "global" | "concrete" => vec![Binding::Global],
                "vertex" => (0..q.n()).map(Binding::Vertex).collect(),
                "arrow" => q.arrows().iter().map(|&(a, b)| Binding::Arrow(a, b)).collect(),
                s => return Err(Error::Parse(format!("catalog {}: unknown scope {s:?}", t.id))),
            };
            for b in bindings {
                if !condition_holds(t.when.as_deref(), b, inks)? {
                    continue;
                }
                let fact = build_fact(t, b, inks)?;
                facts.push(CatalogFact { id: t.id.clone(), anchor: t.anchor.clone(), fact });
            }
        }
        Ok(Catalog { facts })
    }

    pub fn facts(&self) -> &[CatalogFact] {
        &self.facts
    }
    pub fn len(&self) -> usize {
        self.facts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn vanishes(&self, v: &[i64], w: &[i64]) -> Option<&CatalogFact> {
        let nonzero = v.iter().any(|&x| x != 0);
        self.facts.iter().find(|f| match &f.fact {
            Fact::VanishSupport { w: fw, missing } => nonzero && fw == w && missing.map_or(true, |x| v[x] == 0),
            Fact::Vanish { v: fv, w: fw } => fv == v && fw == w,
            _ => false,
        })
    }

    pub fn identify(&self, v: &[i64], w: &[i64]) -> Option<(&CatalogFact, &[i64])> {
        self.facts.iter().find_map(|f| match &f.fact {
            Fact::Identify { v: fv, w: fw, to } if fv == v && fw == w && to != fv => Some((f, to.as_slice())),
            _ => None,
        })
    }

    pub fn term_vanishes(&self, p1: &DimPair, p2: &DimPair) -> Option<&CatalogFact> {
        self.facts.iter().find(|f| match &f.fact {
            Fact::VanishTerm { total, wa, wb, keep } => {
                let hit = |x: &DimPair, y: &DimPair| {
                    &x.w == wa && &y.w == wb && add(&x.v, &y.v) == *total && !keep.contains(&y.v)
                };
                hit(p1, p2) || hit(p2, p1)
            }
            _ => false,
        })
    }

    /// Coefficient facts at grade `w`: `(v, v2, value)` with `v2 = None` meaning all.
    pub fn coefficients(&self, w: &[i64]) -> Vec<(&[i64], Option<&[i64]>, &HalfLaurent, &CatalogFact)> {
        self.facts
            .iter()
            .filter_map(|f| match &f.fact {
                Fact::Coefficient { w: fw, v, v2, value } if fw == w => Some((v.as_slice(), v2.as_deref(), value, f)),
                _ => None,
            })
            .collect()
    }

    /// Count of instantiated facts per template id.
    pub fn summary(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for f in &self.facts {
            *m.entry(f.id.clone()).or_insert(0) += 1;
        }
        m
    }
}

fn condition_holds(when: Option<&str>, b: Binding, inks: &Inks) -> Result<bool> {
    let q = inks.quiver();
    let Some(cond) = when else { return Ok(true) };
    for part in cond.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let ok = if let Some(x) = part.strip_prefix("fixed:") {
            let i = b.letter(single(x)?)?;
            q.rho(i) == i
        } else if let Some(x) = part.strip_prefix("moved:") {
            let i = b.letter(single(x)?)?;
            q.rho(i) != i
        } else if part == "split" {
            q.is_split()
        } else {
            return Err(Error::Parse(format!("unknown condition {part:?}")));
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn single(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Parse(format!("expected one vertex letter, got {s:?}"))),
    }
}

fn build_fact(t: &Template, b: Binding, inks: &Inks) -> Result<Fact> {
    let w = eval_w(&t.w, b, inks)?;
    let need = |x: &Option<Value>, name: &str| -> Result<Value> {
        x.clone().ok_or_else(|| Error::Parse(format!("catalog {}: missing {name}", t.id)))
    };
    match t.kind.as_str() {
        "vanish" => {
            if t.v.as_str() == Some("*") {
                let missing = match &t.unless {
                    Some(x) => Some(inks.simple(b.letter(single(x)?)?)),
                    None => None,
                };
                Ok(Fact::VanishSupport { w, missing })
            } else {
                Ok(Fact::Vanish { v: eval_v(&t.v, b, inks)?, w })
            }
        }
        "identify" => Ok(Fact::Identify { v: eval_v(&t.v, b, inks)?, w, to: eval_v(&need(&t.v2, "v2")?, b, inks)? }),
        "vanish-term" => Ok(Fact::VanishTerm {
            total: eval_v(&t.v, b, inks)?,
            wa: w,
            wb: eval_w(&need(&t.w2, "w2")?, b, inks)?,
            keep: t.keep.iter().map(|k| eval_v(k, b, inks)).collect::<Result<_>>()?,
        }),
        "coefficient" => {
            let v2 = need(&t.v2, "v2")?;
            let v2 = if v2.as_str() == Some("*") { None } else { Some(eval_v(&v2, b, inks)?) };
            let value = t.value.ok_or_else(|| Error::Parse(format!("catalog {}: missing value", t.id)))?;
            Ok(Fact::Coefficient { w, v: eval_v(&t.v, b, inks)?, v2, value: HalfLaurent::constant(value) })
        }
        k => Err(Error::Parse(format!("catalog {}: unknown kind {k:?}", t.id))),
    }
}

fn eval_v(e: &Value, b: Binding, inks: &Inks) -> Result<Vec<i64>> {
    match e {
        Value::Object(_) => inks.v_from_json(e),
        Value::String(s) => {
            let s = s.replace(' ', "");
            if let Some((l, r)) = s.split_once('-') {
                return Ok(sub(&eval_v_atom(l, b, inks)?, &eval_v_atom(r, b, inks)?));
            }
            let mut acc = inks.zero_v();
            for part in s.split('+') {
                acc = add(&acc, &eval_v_atom(part, b, inks)?);
            }
            Ok(acc)
        }
        _ => Err(Error::Parse(format!("bad v expression {e}"))),
    }
}

fn eval_v_atom(s: &str, b: Binding, inks: &Inks) -> Result<Vec<i64>> {
    if s == "0" {
        return Ok(inks.zero_v());
    }
    let inner = braced(s, "v^").ok_or_else(|| Error::Parse(format!("bad v atom {s:?}")))?;
    let letters: Vec<char> = inner.chars().collect();
    match letters.as_slice() {
        [x] => Ok(inks.vi(b.letter(*x)?).to_vec()),
        [x, y] => Ok(inks.canonical_vij(b.letter(*x)?, b.letter(*y)?)?.v),
        _ => Err(Error::Parse(format!("bad v atom {s:?}"))),
    }
}

fn eval_w(e: &Value, b: Binding, inks: &Inks) -> Result<Vec<i64>> {
    match e {
        Value::Array(a) => {
            let w: Vec<i64> = a.iter().map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("bad w entry {x}")))).collect::<Result<_>>()?;
            if w.len() != inks.n() {
                return Err(Error::DimensionMismatch { expected: inks.n(), got: w.len() });
            }
            Ok(w)
        }
        Value::String(s) => {
            let s = s.replace(' ', "");
            let mut acc = inks.zero_w();
            for part in s.split('+') {
                acc = add(&acc, &eval_w_atom(part, b, inks)?);
            }
            Ok(acc)
        }
        _ => Err(Error::Parse(format!("bad w expression {e}"))),
    }
}

fn eval_w_atom(s: &str, b: Binding, inks: &Inks) -> Result<Vec<i64>> {
    if s == "0" {
        return Ok(inks.zero_w());
    }
    if let Some(inner) = braced(s, "w^") {
        let letters: Vec<char> = inner.chars().collect();
        return match letters.as_slice() {
            [x] => Ok(inks.wi(b.letter(*x)?)),
            [x, y] => Ok(inks.w_of(&[b.letter(*x)?, b.letter(*y)?])),
            _ => Err(Error::Parse(format!("bad w atom {s:?}"))),
        };
    }
    if let Some((n, rest)) = s.split_once('_') {
        let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad w atom {s:?}")))?;
        let x = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| Error::Parse(format!("bad w atom {s:?}")))?;
        let mut w = inks.zero_w();
        w[b.letter(single(x)?)?] += n;
        return Ok(w);
    }
    Err(Error::Parse(format!("bad w atom {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn standard_catalog_instantiates() {
        let inks = Inks::new(&preset("a2").unwrap()).unwrap();
        let c = Catalog::standard(&inks).unwrap();
        let s = c.summary();
        assert_eq!(s["support-single"], 2);
        assert_eq!(s["point-vij"], 1);
        assert_eq!(s["zero-frame"], 1);
        let vij = inks.canonical_vij(0, 1).unwrap();
        let (_, to) = c.identify(&vij.v, &inks.one_w(0)).unwrap();
        assert_eq!(to, inks.zero_v().as_slice());
        assert!(c.vanishes(&vij.v, &inks.one_w(1)).is_some());
        assert!(c.vanishes(&inks.zero_v(), &inks.one_w(1)).is_none());
    }

    #[test]
    fn concrete_entries() {
        let inks = Inks::new(&preset("a2").unwrap()).unwrap();
        let src = r#"[{"kind":"vanish","v":{"1.0":1},"w":[0,1],"anchor":"test"}]"#;
        let c = Catalog::from_json_str(src, &inks).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.vanishes(&inks.one_v(inks.simple(0)), &[0, 1]).is_some());
    }
}
