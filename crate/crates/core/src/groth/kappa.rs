//! Images of the ıquantum group generators and evaluation of its defining relations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::element::GElement;
use super::laurent::{HalfLaurent, RatFn};
use super::solver::Groth;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    B(usize),
    K(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::B(i) => write!(f, "B{}", i + 1),
            Generator::K(i) => write!(f, "k{}", i + 1),
        }
    }
}

/// `pre · elem` with an exact rational prefactor.
#[derive(Debug, Clone)]
pub struct Image {
    pub pre: RatFn,
    pub elem: GElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationId {
    #[serde(rename = "k-comm")]
    KComm,
    #[serde(rename = "kB-comm")]
    KBComm,
    #[serde(rename = "BB-antisym")]
    BBAntisym,
    #[serde(rename = "BB-comm")]
    BBComm,
    #[serde(rename = "serre3")]
    Serre3,
    #[serde(rename = "iserre")]
    ISerre,
}

impl RelationId {
    pub const ALL: [RelationId; 6] =
        [RelationId::KComm, RelationId::KBComm, RelationId::BBAntisym, RelationId::BBComm, RelationId::Serre3, RelationId::ISerre];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::KComm => "k-comm",
            RelationId::KBComm => "kB-comm",
            RelationId::BBAntisym => "BB-antisym",
            RelationId::BBComm => "BB-comm",
            RelationId::Serre3 => "serre3",
            RelationId::ISerre => "iserre",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation '{s}'")))
    }
}

/// `Σ c_t · g_{t,1} ⋯ g_{t,m}`, to be checked for vanishing.
#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub id: RelationId,
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(RatFn, Vec<Generator>)>,
}

impl RelationInstance {
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (c, w) in &self.terms {
            let word: Vec<String> = w.iter().map(|g| g.to_string()).collect();
            parts.push(format!("({})·{}", c, if word.is_empty() { "1".into() } else { word.join("") }));
        }
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationOutcome {
    Zero,
    /// The value after multiplying through by the product of all denominators.
    Nonzero(GElement),
}

fn poly(p: HalfLaurent) -> RatFn {
    RatFn::from_poly(p)
}
fn v(k: i64) -> HalfLaurent {
    HalfLaurent::v_pow(k)
}

impl Groth {
    pub fn kappa_image(&self, g: Generator) -> Image {
        let q = self.quiver();
        match g {
            Generator::B(i) => {
                let den = if q.in_i_rho(i) { &HalfLaurent::one() - &v(2) } else { &v(2) - &HalfLaurent::one() };
                Image { pre: RatFn { num: v(1), den }, elem: self.l_simple(i) }
            }
            Generator::K(j) => {
                let pre = if q.rho(j) != j { RatFn::one() } else { poly(-v(-1)) };
                Image { pre, elem: self.l_cartan(j) }
            }
        }
    }

    pub fn kappa_images(&self) -> Vec<(Generator, Image)> {
        let n = self.quiver().rank();
        (0..n)
            .map(Generator::B)
            .chain((0..n).map(Generator::K))
            .map(|g| (g, self.kappa_image(g)))
            .collect()
    }

    /// The named relation at `(i,j)`; for `k-comm` and `kB-comm` the first index is `l`.
    pub fn relation(&self, id: RelationId, i: usize, j: usize) -> Result<RelationInstance> {
        let q = self.quiver();
        let n = q.rank();
        if i >= n || j >= n {
            return Err(Error::InvalidParameters(format!("vertex out of range for rank {n}")));
        }
        let c = q.cartan();
        let one = RatFn::one();
        let neg = poly(HalfLaurent::constant(-1));
        let bad = |why: &str| Err(Error::InvalidParameters(format!("{id} at ({},{}): {why}", i + 1, j + 1)));
        use Generator::{B, K};
        let terms = match id {
            RelationId::KComm => vec![(one.clone(), vec![K(i), K(j)]), (neg, vec![K(j), K(i)])],
            RelationId::KBComm => {
                let (l, b) = (i, j);
                let e = c[q.rho(l)][b] - c[l][b];
                vec![(one, vec![K(l), B(b)]), (poly(-v(e)), vec![B(b), K(l)])]
            }
            RelationId::BBAntisym => {
                if q.rho(i) == i || j != q.rho(i) {
                    return bad("needs j = ϱi != i");
                }
                let den = &v(1) - &v(-1);
                vec![
                    (one, vec![B(j), B(i)]),
                    (neg, vec![B(i), B(j)]),
                    (RatFn { num: HalfLaurent::constant(-1), den: den.clone() }, vec![K(i)]),
                    (RatFn { num: HalfLaurent::one(), den }, vec![K(j)]),
                ]
            }
            RelationId::BBComm => {
                if i == j || c[i][j] != 0 || q.rho(i) == j {
                    return bad("needs c_ij = 0 and ϱi != j");
                }
                vec![(one, vec![B(i), B(j)]), (neg, vec![B(j), B(i)])]
            }
            RelationId::Serre3 => {
                if i == j || q.rho(i) == i || j == q.rho(i) || c[i][j] == 0 {
                    return bad("needs j != ϱi != i and c_ij < 0");
                }
                let m = 1 - c[i][j];
                (0..=m)
                    .map(|s| {
                        let sign = if s % 2 == 0 { 1 } else { -1 };
                        let mut word = vec![B(i); s as usize];
                        word.push(B(j));
                        word.extend(std::iter::repeat(B(i)).take((m - s) as usize));
                        (poly(HalfLaurent::qbinom(m, s).scale(sign)), word)
                    })
                    .collect()
            }
            RelationId::ISerre => {
                if c[i][j] != -1 || q.rho(i) != i {
                    return bad("needs c_ij = -1 and ϱi = i");
                }
                vec![
                    (one, vec![B(i), B(i), B(j)]),
                    (poly(-HalfLaurent::qint(2)), vec![B(i), B(j), B(i)]),
                    (RatFn::one(), vec![B(j), B(i), B(i)]),
                    (poly(-v(1)), vec![K(i), B(j)]),
                ]
            }
        };
        Ok(RelationInstance { id, i, j, terms })
    }

    /// Every applicable instance, indices in increasing order.
    pub fn relation_instances(&self) -> Vec<RelationInstance> {
        let n = self.quiver().rank();
        let mut out = Vec::new();
        for id in RelationId::ALL {
            for i in 0..n {
                for j in 0..n {
                    if id == RelationId::KComm && i >= j {
                        continue;
                    }
                    if let Ok(r) = self.relation(id, i, j) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    pub fn verify_relation(&self, id: RelationId, i: usize, j: usize) -> Result<RelationOutcome> {
        let r = self.relation(id, i, j)?;
        self.evaluate_relation(&r)
    }

    /// Evaluates on κ̃-images, clearing all denominators at once.
    pub fn evaluate_relation(&self, r: &RelationInstance) -> Result<RelationOutcome> {
        let mut coeffs = Vec::with_capacity(r.terms.len());
        let mut elems = Vec::with_capacity(r.terms.len());
        for (c, word) in &r.terms {
            let mut pre = c.clone();
            let mut factors = Vec::with_capacity(word.len());
            for &g in word {
                let im = self.kappa_image(g);
                pre = pre.mul(&im.pre);
                factors.push(im.elem);
            }
            elems.push(self.product(&factors)?);
            coeffs.push(pre);
        }
        let mut total = GElement::zero();
        for (t, e) in elems.iter().enumerate() {
            let mut c = coeffs[t].num.clone();
            for (s, o) in coeffs.iter().enumerate() {
                if s != t {
                    c = &c * &o.den;
                }
            }
            total = total.add(&e.scale(&c));
        }
        Ok(if total.is_zero() { RelationOutcome::Zero } else { RelationOutcome::Nonzero(total) })
    }
}
