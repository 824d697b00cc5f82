//! Exact sparse Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] lives in one of two variables, `A` (the Kauffman bracket
//! variable) or `t` (the Jones variable). The two are tied by `t = A^-4`;
//! [`LaurentPoly::convert`] moves between them. Terms are stored sorted by
//! exponent with no zero coefficients, so structural equality is equality of
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial variable marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "t")]
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A => f.write_str("A"),
            Var::T => f.write_str("t"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Var::A),
            "t" | "T" => Ok(Var::T),
            other => Err(Error::parse(0, format!("unknown variable `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn constant(var: Var, c: impl Into<BigInt>) -> Self {
        Self::monomial(var, 0, c)
    }

    /// `c * var^exp`.
    pub fn monomial(var: Var, exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero(var)
        } else {
            LaurentPoly { var, terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// combining like terms.
    pub fn from_terms<C, I>(var: Var, terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPoly { var, terms }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// `max_exp - min_exp`, zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.var, other.var))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, sign(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (*e, sign(c))));
        LaurentPoly { var: self.var, terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let width = (self.span() + other.span() + 1) as usize;
        let pairs = self.terms.len() * other.terms.len();
        if width <= pairs.saturating_mul(4).max(64) {
            let mut dense = vec![BigInt::zero(); width];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    dense[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            Self::from_dense(self.var, lo, dense)
        } else {
            let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    *acc.entry(ea + eb).or_default() += ca * cb;
                }
            }
            let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            LaurentPoly { var: self.var, terms }
        }
    }

    fn from_dense(var: Var, lo: i64, dense: Vec<BigInt>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect();
        LaurentPoly { var, terms }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, x)| (*e, x * &c)).collect(),
        }
    }

    /// Multiplies by the signed monomial `c * var^k`.
    pub fn mul_monomial(&self, k: i64, c: impl Into<BigInt>) -> Self {
        self.scale(c).shift(k)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// Shifts so the lowest exponent is zero. The zero polynomial is returned unchanged.
    pub fn normalize_shift(&self) -> Self {
        match self.min_exp() {
            Some(lo) => self.shift(-lo),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / den`.
    ///
    /// Both operands are first shifted to lowest exponent zero; the quotient is
    /// computed by ascending long division and the shift difference re-applied.
    /// Any leftover remainder, or a quotient coefficient that is not an
    /// integer, is reported as [`Error::NonzeroRemainder`].
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        self.check_var(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let num_lo = self.terms[0].0;
        let den_lo = den.terms[0].0;
        let num_deg = self.span();
        let den_deg = den.span();
        if num_deg < den_deg {
            return Err(Error::NonzeroRemainder);
        }
        let q_deg = (num_deg - den_deg) as usize;
        let mut rem = vec![BigInt::zero(); num_deg as usize + 1];
        for (e, c) in &self.terms {
            rem[(e - num_lo) as usize] = c.clone();
        }
        let den_terms: Vec<(usize, &BigInt)> =
            den.terms.iter().map(|(e, c)| ((e - den_lo) as usize, c)).collect();
        let lead = den_terms[0].1;
        let mut quotient = vec![BigInt::zero(); q_deg + 1];
        for i in 0..=q_deg {
            if rem[i].is_zero() {
                continue;
            }
            let (qc, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonzeroRemainder);
            }
            for (off, dc) in &den_terms {
                rem[i + off] -= &qc * *dc;
            }
            quotient[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroRemainder);
        }
        Ok(Self::from_dense(self.var, num_lo - den_lo, quotient))
    }

    /// Replaces every exponent `e` by `-e` (the substitution `x -> x^-1`).
    pub fn substitute_inverse(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { var: self.var, terms }
    }

    /// Re-expresses the polynomial in `target` using `t = A^-4`.
    pub fn convert(&self, target: Var) -> Result<Self> {
        match (self.var, target) {
            (a, b) if a == b => Ok(self.clone()),
            (Var::A, Var::T) => {
                let mut terms = Vec::with_capacity(self.terms.len());
                for (e, c) in self.terms.iter().rev() {
                    if e % 4 != 0 {
                        return Err(Error::NotDivisible(*e));
                    }
                    terms.push((-e / 4, c.clone()));
                }
                Ok(LaurentPoly { var: Var::T, terms })
            }
            (Var::T, Var::A) => {
                let terms = self.terms.iter().rev().map(|(e, c)| (-4 * e, c.clone())).collect();
                Ok(LaurentPoly { var: Var::A, terms })
            }
            _ => unreachable!(),
        }
    }

    pub fn gap_signature(&self) -> Result<GapSignature> {
        GapSignature::of(self)
    }

    /// Text rendering with a different variable name (e.g. `q`), keeping the format.
    pub fn render_as(&self, name: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match e {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&mag.to_string());
                    }
                    out.push_str(name);
                    if *e != 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }

    /// Parses the text rendering, defaulting to `default` when no variable occurs.
    pub fn parse_with_default(s: &str, default: Var) -> Result<Self> {
        parse_poly(s, default)
    }
}

impl fmt::Display for LaurentPoly {
    /// `-1 + t + t^2 - t^5`: ascending exponents, explicit signs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_as(&self.var.to_string()))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s, Var::T)
    }
}

fn parse_poly(s: &str, default: Var) -> Result<LaurentPoly> {
    let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut var: Option<Var> = None;
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|(p, _)| *p).unwrap_or(s.len());
    let digits = |i: &mut usize| -> Option<String> {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| chars[start..*i].iter().map(|(_, c)| *c).collect())
    };
    while i < chars.len() {
        let mut negative = false;
        let mut saw_sign = false;
        if i < chars.len() && matches!(chars[i].1, '+' | '-') {
            negative = chars[i].1 == '-';
            saw_sign = true;
            i += 1;
        }
        if !terms.is_empty() && !saw_sign {
            return Err(Error::parse(at(i), "expected `+` or `-` between terms"));
        }
        let coeff = digits(&mut i);
        if coeff.is_some() && i < chars.len() && chars[i].1 == '*' {
            i += 1;
        }
        let mut exp = 0i64;
        let has_var = i < chars.len() && matches!(chars[i].1, 't' | 'A' | 'a' | 'T');
        if has_var {
            let v: Var = chars[i].1.to_string().parse()?;
            match var {
                Some(prev) if prev != v => {
                    return Err(Error::parse(at(i), "mixed variables in one polynomial"))
                }
                _ => var = Some(v),
            }
            i += 1;
            exp = 1;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let braced = i < chars.len() && chars[i].1 == '{';
                if braced {
                    i += 1;
                }
                let mut neg_exp = false;
                if i < chars.len() && chars[i].1 == '-' {
                    neg_exp = true;
                    i += 1;
                }
                let d = digits(&mut i).ok_or_else(|| Error::parse(at(i), "expected exponent"))?;
                exp = d.parse::<i64>().map_err(|_| Error::parse(at(i), "exponent out of range"))?;
                if neg_exp {
                    exp = -exp;
                }
                if braced {
                    if i < chars.len() && chars[i].1 == '}' {
                        i += 1;
                    } else {
                        return Err(Error::parse(at(i), "expected `}`"));
                    }
                }
            }
        } else if coeff.is_none() {
            return Err(Error::parse(at(i), "expected a coefficient or variable"));
        }
        let mut c: BigInt = match coeff {
            Some(d) => d.parse().expect("digit string"),
            None => BigInt::one(),
        };
        if negative {
            c = -c;
        }
        terms.push((exp, c));
    }
    Ok(LaurentPoly::from_terms(var.unwrap_or(default), terms))
}

/// Ordered gaps between the exponents carrying nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapSignature {
    pub lowest_sign: i8,
    #[serde(with = "bigint_list")]
    pub coefficients: Vec<BigInt>,
    pub gaps: Vec<i64>,
}

impl GapSignature {
    pub fn of(p: &LaurentPoly) -> Result<Self> {
        let first = p.terms.first().ok_or(Error::ZeroPolynomial)?;
        let lowest_sign = if first.1.is_negative() { -1 } else { 1 };
        let coefficients = p.terms.iter().map(|(_, c)| c.clone()).collect();
        let gaps = p.terms.windows(2).map(|w| w[1].0 - w[0].0).collect();
        Ok(GapSignature { lowest_sign, coefficients, gaps })
    }

    /// Rebuilds the polynomial with lowest exponent zero.
    pub fn to_poly(&self, var: Var) -> LaurentPoly {
        let mut e = 0;
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                e += self.gaps[i - 1];
            }
            terms.push((e, c.clone()));
        }
        LaurentPoly::from_terms(var, terms)
    }

    pub fn reversed(&self) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients.reverse();
        let mut gaps = self.gaps.clone();
        gaps.reverse();
        let lowest_sign = if coefficients.first().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
        GapSignature { lowest_sign, coefficients, gaps }
    }
}

impl fmt::Display for GapSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gaps: Vec<String> = self.gaps.iter().map(|g| g.to_string()).collect();
        let coeffs: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "gaps ({}) coefficients ({})", gaps.join(","), coeffs.join(","))
    }
}

mod bigint_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = v.iter().map(super::to_number).collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        nums.iter().map(|n| super::from_number(n).map_err(serde::de::Error::custom)).collect()
    }
}

fn to_number(c: &BigInt) -> serde_json::Number {
    c.to_string().parse().expect("integer literal is a JSON number")
}

fn from_number(n: &serde_json::Number) -> std::result::Result<BigInt, String> {
    n.to_string().parse().map_err(|_| format!("`{n}` is not an integer"))
}

#[derive(Serialize, Deserialize)]
struct Wire {
    var: Var,
    terms: Vec<(i64, serde_json::Number)>,
}

/// Machine format: `{"var":"t","terms":[[exponent,coefficient],...]}`, ascending.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, to_number(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for (e, n) in &wire.terms {
            terms.push((*e, from_number(n).map_err(serde::de::Error::custom)?));
        }
        Ok(LaurentPoly::from_terms(wire.var, terms))
    }
}

// Operator sugar. Mixing variables here is a programming error and panics;
// use the `checked_*` methods on untrusted input.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly + LaurentPoly")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly - LaurentPoly")
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly * LaurentPoly")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl std::iter::Sum for LaurentPoly {
    /// Panics on an empty iterator, which has no variable to sum in.
    fn sum<I: Iterator<Item = LaurentPoly>>(mut iter: I) -> LaurentPoly {
        let first = iter.next().expect("sum of an empty iterator of LaurentPoly");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

/// Monomial `x^e` in `t`.
pub fn t_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Var::T, e, 1)
}

/// Monomial `x^e` in `A`.
pub fn a_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Var::A, e, 1)
}

/// Coefficient as `i64`, for small-number reporting.
pub fn small(c: &BigInt) -> Option<i64> {
    c.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(t("1 - t") * t("1 + t"), t("1 - t^2"));
        let p = t("3 - t^-2 + 5t^9");
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(t("t^-1") * t("t - t^4"), t("1 - t^3"));
    }

    #[test]
    fn mismatched_variables() {
        let a = a_pow(1);
        let b = t_pow(1);
        assert_eq!(a.checked_add(&b), Err(Error::VariableMismatch(Var::A, Var::T)));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(t("1 - t^6").div_exact(&t("1 - t^2")).unwrap(), t("1 + t^2 + t^4"));
        assert_eq!(t("1 - t^3 - t^4 + t^5").div_exact(&t("1 - t^2")).unwrap(), t("1 + t^2 - t^3"));
        assert_eq!(t("1 - t^3").div_exact(&t("1 - t^2")), Err(Error::NonzeroRemainder));
        assert_eq!(t("1").div_exact(&LaurentPoly::zero(Var::T)), Err(Error::DivisionByZero));
        // non-integral quotient
        assert_eq!(t("1 + t").div_exact(&t("2 + 2t^2")), Err(Error::NonzeroRemainder));
        // Laurent shifts are carried through.
        assert_eq!(t("t^-3 - t^-1").div_exact(&t("t^2 - t^4")).unwrap(), t("t^-5"));
    }

    #[test]
    fn substitute_inverse_examples() {
        assert_eq!(t("t + t^3 - t^4").substitute_inverse(), t("t^-1 + t^-3 - t^-4"));
        assert_eq!(t("1").substitute_inverse(), t("1"));
        let p = t("1 - t + t^5 - t^6");
        assert_eq!(p.substitute_inverse().substitute_inverse(), p);
    }

    #[test]
    fn convert_examples() {
        let a = |s: &str| LaurentPoly::parse_with_default(s, Var::A).unwrap();
        assert_eq!(a("A^-4").convert(Var::T).unwrap(), t("t"));
        assert_eq!(a("A^-8 + A^4").convert(Var::T).unwrap(), t("t^2 + t^-1"));
        assert_eq!(a("A^3").convert(Var::T), Err(Error::NotDivisible(3)));
        assert_eq!(t("t^2 + t^-1").convert(Var::A).unwrap(), a("A^-8 + A^4"));
    }

    #[test]
    fn gap_signature_examples() {
        let g = t("1 - t^3 - t^6 + t^7").gap_signature().unwrap();
        assert_eq!(g.gaps, vec![3, 3, 1]);
        assert_eq!(g.coefficients, vec![1.into(), (-1).into(), (-1).into(), 1.into()]);
        assert_eq!(g.lowest_sign, 1);
        let n = 4;
        let torus = LaurentPoly::from_terms(Var::T, [(0, 1), (n + 1, -1), (n + 2, -1), (2 * n + 1, 1)]);
        assert_eq!(torus.gap_signature().unwrap().gaps, vec![5, 1, 3]);
        let mono = t("t^7").gap_signature().unwrap();
        assert!(mono.gaps.is_empty());
        assert_eq!(mono.coefficients, vec![BigInt::one()]);
        assert_eq!(LaurentPoly::zero(Var::T).gap_signature(), Err(Error::ZeroPolynomial));
        assert_eq!(t("-1 + t").gap_signature().unwrap().lowest_sign, -1);
    }

    #[test]
    fn text_rendering() {
        assert_eq!(t("-1 + t + t^2 - t^5").to_string(), "-1 + t + t^2 - t^5");
        assert_eq!(t("1 - t^5 - t^7 + 2t^11 - t^12").to_string(), "1 - t^5 - t^7 + 2t^11 - t^12");
        assert_eq!(t("-2 + t^-3").to_string(), "t^-3 - 2");
        assert_eq!(LaurentPoly::zero(Var::A).to_string(), "0");
        assert_eq!(a_pow(-7).scale(-3).to_string(), "-3A^-7");
        assert_eq!(t("t^{-2} + 3*t"), t("t^-2 + 3t"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("".parse::<LaurentPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("1 + t A".parse::<LaurentPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("t^".parse::<LaurentPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("t + A".parse::<LaurentPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("1 + x".parse::<LaurentPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("1 + + t".parse::<LaurentPoly>(), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!("1 - -t".parse::<LaurentPoly>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn machine_format() {
        let p = t("-1 + t + t^2 - t^5");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"var":"t","terms":[[0,-1],[1,1],[2,1],[5,-1]]}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let huge = LaurentPoly::monomial(Var::A, -3, BigInt::from(7).pow(60));
        let json = serde_json::to_string(&huge).unwrap();
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, huge);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
