//! Laurent polynomials in `u = v^{1/2}` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An element of `ℤ[v^{1/2}, v^{-1/2}]`, stored by exponent of `u = v^{1/2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLaurent {
    c: BTreeMap<i64, i64>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }
    pub fn one() -> Self {
        HalfLaurent::constant(1)
    }
    pub fn constant(a: i64) -> Self {
        HalfLaurent::term(a, 0)
    }
    /// `a·u^k`.
    pub fn term(a: i64, k: i64) -> Self {
        let mut c = BTreeMap::new();
        if a != 0 {
            c.insert(k, a);
        }
        HalfLaurent { c }
    }
    /// `u^k = v^{k/2}`.
    pub fn u_pow(k: i64) -> Self {
        HalfLaurent::term(1, k)
    }
    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        HalfLaurent::term(1, 2 * k)
    }
    /// From `(u-exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut out = HalfLaurent::zero();
        for (k, a) in it {
            out.add_term(k, a);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, a: i64) {
        if a == 0 {
            return;
        }
        let e = self.c.entry(k).or_insert(0);
        *e += a;
        if *e == 0 {
            self.c.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.c.get(&k).copied().unwrap_or(0)
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.c.iter().map(|(&k, &a)| (k, a))
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn min_exp(&self) -> Option<i64> {
        self.c.keys().next().copied()
    }
    pub fn max_exp(&self) -> Option<i64> {
        self.c.keys().next_back().copied()
    }
    pub fn max_coeff(&self) -> i64 {
        self.c.values().copied().max().unwrap_or(0)
    }

    pub fn scale(&self, a: i64) -> Self {
        if a == 0 {
            return HalfLaurent::zero();
        }
        HalfLaurent { c: self.c.iter().map(|(&k, &x)| (k, x * a)).collect() }
    }
    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        HalfLaurent { c: self.c.iter().map(|(&e, &x)| (e + k, x)).collect() }
    }

    /// `u ↦ u^{-1}`.
    pub fn bar(&self) -> Self {
        HalfLaurent { c: self.c.iter().map(|(&k, &x)| (-k, x)).collect() }
    }
    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }
    pub fn is_nonneg(&self) -> bool {
        self.c.values().all(|&x| x > 0)
    }
    /// Only even powers of `u`, i.e. an element of `ℤ[v, v^{-1}]`.
    pub fn is_integral_in_v(&self) -> bool {
        self.c.keys().all(|k| k % 2 == 0)
    }
    /// Coefficientwise `self <= other`.
    pub fn leq(&self, other: &HalfLaurent) -> bool {
        (other - self).is_nonneg()
    }
    /// `Some((coefficient, exponent))` for a single term.
    pub fn as_monomial(&self) -> Option<(i64, i64)> {
        if self.c.len() == 1 {
            let (&k, &a) = self.c.iter().next().expect("one term");
            Some((a, k))
        } else {
            None
        }
    }

    /// Exact division by a unit `±u^k`.
    pub fn div_unit(&self, d: &HalfLaurent) -> Result<Self> {
        match d.as_monomial() {
            Some((a, k)) if a == 1 || a == -1 => Ok(self.scale(a).shift(-k)),
            _ => Err(Error::InvalidParameters(format!("{} is not a unit", d))),
        }
    }

    /// Evaluation at `u = 1`.
    pub fn at_one(&self) -> i64 {
        self.c.values().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = HalfLaurent::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Quantum integer `[n] = (v^n - v^{-n})/(v - v^{-1})`.
    pub fn qint(n: i64) -> Self {
        let mut out = HalfLaurent::zero();
        for k in 0..n {
            out.add_term(2 * (n - 1 - 2 * k), 1);
        }
        out
    }
    pub fn qfactorial(n: i64) -> Self {
        (1..=n).fold(HalfLaurent::one(), |acc, k| &acc * &HalfLaurent::qint(k))
    }
    /// Quantum binomial in `v`.
    pub fn qbinom(n: i64, k: i64) -> Self {
        if k < 0 || k > n {
            return HalfLaurent::zero();
        }
        // Pascal rule: [n,k] = v^{-k}[n-1,k] + v^{n-k}[n-1,k-1].
        let mut row = vec![HalfLaurent::one()];
        for m in 1..=n {
            let mut next = Vec::with_capacity(m as usize + 1);
            for j in 0..=m {
                let mut x = HalfLaurent::zero();
                if j < m {
                    x += &row[j as usize].shift(-2 * j);
                }
                if j > 0 {
                    x += &row[j as usize - 1].shift(2 * (m - j));
                }
                next.push(x);
            }
            row = next;
        }
        row[k as usize].clone()
    }

    /// `[[u-exponent, coefficient], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.c.iter().map(|(&k, &a)| json!([k, a])).collect())
    }
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array of [exp, coeff]".into()))?;
        let mut out = HalfLaurent::zero();
        for t in arr {
            let p = t.as_array().filter(|p| p.len() == 2);
            let (k, a) = match p.map(|p| (p[0].as_i64(), p[1].as_i64())) {
                Some((Some(k), Some(a))) => (k, a),
                _ => return Err(Error::Parse(format!("bad term {}", t))),
            };
            out.add_term(k, a);
        }
        Ok(out)
    }
}

/// Parses the `Display` form, e.g. `v^2 - 2 + v^(-1/2)`.
impl std::str::FromStr for HalfLaurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut prev = ' ';
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && prev != '^' && prev != '(' {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = ch;
        }
        terms.push(cur);
        let mut out = HalfLaurent::zero();
        for t in terms {
            let bad = || Error::Parse(format!("bad term {t:?}"));
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, pow) = match body.find('v') {
                Some(at) => (&body[..at], Some(&body[at + 1..])),
                None => (body, None),
            };
            let a: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
            let k = match pow {
                None => 0,
                Some("") => 2,
                Some(e) => {
                    let e = e.strip_prefix('^').ok_or_else(bad)?;
                    match e.strip_prefix('(').and_then(|x| x.strip_suffix("/2)")) {
                        Some(half) => half.parse::<i64>().map_err(|_| bad())?,
                        None => 2 * e.parse::<i64>().map_err(|_| bad())?,
                    }
                }
            };
            out.add_term(k, sign * a);
        }
        Ok(out)
    }
}

fn fmt_power(k: i64) -> String {
    match (k % 2 == 0, k / 2) {
        (true, 1) => "v".to_string(),
        (true, e) => format!("v^{}", e),
        (false, _) => format!("v^({}/2)", k),
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, &a) in self.c.iter().rev() {
            let sign = if a < 0 { "-" } else { "+" };
            if first {
                if a < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let m = a.abs();
            if k == 0 {
                write!(f, "{}", m)?;
            } else if m == 1 {
                write!(f, "{}", fmt_power(k))?;
            } else {
                write!(f, "{}{}", m, fmt_power(k))?;
            }
        }
        Ok(())
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += o;
        out
    }
}
impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= o;
        out
    }
}
impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&k1, &a1) in &self.c {
            for (&k2, &a2) in &o.c {
                out.add_term(k1 + k2, a1 * a2);
            }
        }
        out
    }
}
impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}
impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, o: HalfLaurent) -> HalfLaurent {
        &self + &o
    }
}
impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, o: HalfLaurent) -> HalfLaurent {
        &self - &o
    }
}
impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: HalfLaurent) -> HalfLaurent {
        &self * &o
    }
}
impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}
impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, o: &HalfLaurent) {
        for (&k, &a) in &o.c {
            self.add_term(k, a);
        }
    }
}
impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, o: &HalfLaurent) {
        for (&k, &a) in &o.c {
            self.add_term(k, -a);
        }
    }
}

/// A quotient `num/den` of half-Laurent polynomials, used for generator prefactors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: HalfLaurent,
    pub den: HalfLaurent,
}

impl RatFn {
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameters("zero denominator".into()));
        }
        Ok(RatFn { num, den })
    }
    pub fn from_poly(p: HalfLaurent) -> Self {
        RatFn { num: p, den: HalfLaurent::one() }
    }
    pub fn one() -> Self {
        RatFn::from_poly(HalfLaurent::one())
    }
    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn { num: &self.num * &o.num, den: &self.den * &o.den }
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// Cross-multiplied equality.
    pub fn same_as(&self, o: &RatFn) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == HalfLaurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let v = HalfLaurent::v_pow(1);
        let vi = HalfLaurent::v_pow(-1);
        assert_eq!(&v * &vi, HalfLaurent::one());
        let two = HalfLaurent::qint(2);
        assert_eq!(two, &v + &vi);
        assert!(two.is_bar_invariant());
        assert_eq!(HalfLaurent::qbinom(2, 1), two);
        assert_eq!(HalfLaurent::qbinom(3, 1), HalfLaurent::qint(3));
        assert_eq!(HalfLaurent::u_pow(1).to_string(), "v^(1/2)");
        assert_eq!((&v - &HalfLaurent::constant(2)).to_string(), "v - 2");
        let x = HalfLaurent::from_terms([(3, 2), (-1, -1)]);
        assert_eq!(HalfLaurent::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn unit_division() {
        let x = HalfLaurent::from_terms([(1, 2), (3, 1)]);
        let d = HalfLaurent::term(-1, 1);
        assert_eq!(&x.div_unit(&d).unwrap() * &d, x);
        assert!(x.div_unit(&HalfLaurent::constant(2)).is_err());
    }
}
