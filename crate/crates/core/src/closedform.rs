//! Kauffman brackets, writhes and Jones polynomials of the torus knots T(m,n),
//! the ovals T_n and the one-crossing families K, K', K''.
//!
//! Family brackets have two independent evaluations: the skein recursion on
//! `(a, b)` and the closed formula in `n = a + b`. Both must agree exactly.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::knot::{Family, KnotId};
use crate::laurent::{a_pow, LaurentPoly, Var};

fn t_poly<const N: usize>(terms: [(i64, i64); N]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, terms)
}

fn one_minus_t2() -> LaurentPoly {
    t_poly([(0, 1), (2, -1)])
}

/// `numer / (1 - t^2)`, which must be exact.
fn over_one_minus_t2(numer: &LaurentPoly) -> Result<LaurentPoly> {
    numer.div_exact(&one_minus_t2())
}

fn to_a(p: &LaurentPoly) -> LaurentPoly {
    p.convert(Var::A).expect("t to A conversion always succeeds")
}

/// A numerator over the fixed denominator `1 - t^2`, i.e. `1 - A^-8` in A.
///
/// The pieces of the split bracket are of this shape and are not Laurent
/// polynomials on their own for odd `n`, so they are kept as fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TFraction {
    numer: LaurentPoly,
}

impl TFraction {
    pub fn new(numer: LaurentPoly) -> Self {
        TFraction { numer }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.numer
    }

    pub fn denominator(var: Var) -> LaurentPoly {
        match var {
            Var::T => one_minus_t2(),
            Var::A => LaurentPoly::from_terms(Var::A, [(0, 1), (-8, -1)]),
        }
    }

    /// The Laurent polynomial this fraction equals, if there is one.
    pub fn value(&self) -> Result<LaurentPoly> {
        self.numer.div_exact(&Self::denominator(self.numer.var()))
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn add(&self, other: &TFraction) -> Result<TFraction> {
        Ok(TFraction::new(self.numer.checked_add(&other.numer)?))
    }

    pub fn mul(&self, factor: &LaurentPoly) -> Result<TFraction> {
        Ok(TFraction::new(self.numer.checked_mul(factor)?))
    }
}

/// The two splittings of `<T_n>` into numerator pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnBracketParts {
    pub n: i64,
    pub u: TFraction,
    pub v: TFraction,
    pub u_prime: TFraction,
    pub v_prime: TFraction,
}

/// Jones polynomial of the torus knot T(m,n), in t.
pub fn jones_torus(m: i64, n: i64) -> Result<LaurentPoly> {
    if m < 1 || n < 1 {
        return Err(Error::constraint(format!("T({m},{n}): m,n ≥ 1 required")));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::constraint(format!("T({m},{n}): gcd(m,n)=1 required")));
    }
    let numer = t_poly([(0, 1), (m + 1, -1), (n + 1, -1), (m + n, 1)]);
    Ok(over_one_minus_t2(&numer)?.shift((m - 1) * (n - 1) / 2))
}

/// Jones polynomial of T_n for any integer n.
pub fn jones_tn(n: i64) -> LaurentPoly {
    let numer = t_poly([(0, 1), (n + 1, -1), (n + 2, -1), (2 * n + 1, 1)]);
    over_one_minus_t2(&numer)
        .expect("oval numerator is divisible by 1 - t^2")
        .shift(n * (n - 1) / 2)
}

/// `A^{3n(n+1)} t^{n(n-1)/2}` in A.
fn tn_prefix(n: i64) -> LaurentPoly {
    a_pow(3 * n * (n + 1) - 4 * (n * (n - 1) / 2))
}

fn tn_piece(n: i64, numer_t: LaurentPoly) -> TFraction {
    TFraction::new(&tn_prefix(n) * &to_a(&numer_t))
}

pub fn bracket_tn_parts(n: i64) -> TnBracketParts {
    TnBracketParts {
        n,
        u: tn_piece(n, t_poly([(0, 1), (n + 2, -1)])),
        v: tn_piece(n, t_poly([(n + 1, -1), (2 * n + 1, 1)])),
        u_prime: tn_piece(n, t_poly([(0, 1), (n + 1, -1)])),
        v_prime: tn_piece(n, t_poly([(n + 2, -1), (2 * n + 1, 1)])),
    }
}

/// Kauffman bracket of T_n, in A.
pub fn bracket_tn(n: i64) -> LaurentPoly {
    let numer = t_poly([(0, 1), (n + 2, -1), (n + 1, -1), (2 * n + 1, 1)]);
    let q = over_one_minus_t2(&numer).expect("oval numerator is divisible by 1 - t^2");
    &tn_prefix(n) * &to_a(&q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumStrategy {
    Direct,
    Closed,
}

/// `<T_n> + A^{±2}<T_{n-2}> + ... + A^{±2m}<T_{n-2m}>`, the sign being `-`
/// when `primed`.
pub fn telescoped_sum(n: i64, m: i64, primed: bool, strategy: SumStrategy) -> Result<LaurentPoly> {
    if m < 0 {
        return Err(Error::constraint(format!("telescoped sum needs m ≥ 0, got {m}")));
    }
    let sign = if primed { -1 } else { 1 };
    match strategy {
        SumStrategy::Direct => {
            Ok((0..=m).map(|i| a_pow(sign * 2 * i).checked_mul(&bracket_tn(n - 2 * i)).unwrap()).sum())
        }
        SumStrategy::Closed => {
            let numer = if primed {
                let e = (m + 1) * (n - m + 2);
                t_poly([(0, 1), (n + 1, -1), (e, -1), (e + n - 2 * m - 1, 1)])
            } else {
                let e = (m + 1) * (n - m + 1);
                t_poly([(0, 1), (n + 2, -1), (e, -1), (e + n - 2 * m, 1)])
            };
            Ok(&tn_prefix(n) * &to_a(&over_one_minus_t2(&numer)?))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BracketStrategy {
    Recursion,
    Closed,
}

/// Insert-only memo for the skein recursion, keyed on `(family, a, b)`.
///
/// Values are deterministic, so two threads racing to fill a key store the
/// same polynomial and either write may win.
#[derive(Debug, Default)]
pub struct BracketMemo {
    table: RwLock<HashMap<(Family, i64, i64), LaurentPoly>>,
}

impl BracketMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static BracketMemo {
        static MEMO: OnceLock<BracketMemo> = OnceLock::new();
        MEMO.get_or_init(BracketMemo::new)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: (Family, i64, i64)) -> Option<LaurentPoly> {
        self.table.read().expect("memo lock").get(&key).cloned()
    }

    fn insert(&self, key: (Family, i64, i64), value: LaurentPoly) {
        self.table.write().expect("memo lock").entry(key).or_insert(value);
    }

    /// Bracket by the skein recursion. Each step peels one arrow off each loop:
    ///
    /// K:   <K_{a,b}>   = A^2 <K_{a-1,b-1}>   + (A^-1 - A^3) <T_{a+b}>
    /// K':  <K'_{a,b}>  = A^-2 <K'_{a-1,b-1}> + (A - A^-3)   <T_{a+b-1}>
    /// K'': <K''_{a,b}> = A^2 <K''_{a+1,b-1}> + (A^-1 - A^3) <T_{a-b-1}>
    ///
    /// until `b = 0`, where the remaining kink contributes `-A^{±3}`.
    pub fn recursion(&self, which: Family, a: i64, b: i64) -> LaurentPoly {
        // (a, b) at b = 0, then walk back up to the requested pair.
        let step_a = match which {
            Family::K | Family::Kp => 1,
            Family::Kpp => -1,
        };
        let chain: Vec<(i64, i64)> = (0..=b).map(|j| (a - step_a * (b - j), j)).collect();
        let mut start = 0;
        let mut acc = None;
        for (idx, &(x, y)) in chain.iter().enumerate().rev() {
            if let Some(v) = self.get((which, x, y)) {
                start = idx + 1;
                acc = Some(v);
                break;
            }
        }
        let m = |lo: i64, hi: i64| LaurentPoly::from_terms(Var::A, [(lo, 1), (hi, -1)]);
        for &(x, y) in &chain[start..] {
            let value = if y == 0 {
                match which {
                    Family::K => bracket_tn(x).mul_monomial(3, -1),
                    Family::Kp => bracket_tn(x - 1).mul_monomial(-3, -1),
                    Family::Kpp => bracket_tn(x - 1).mul_monomial(3, -1),
                }
            } else {
                let prev = acc.take().expect("chain starts at b = 0");
                match which {
                    Family::K => &prev.shift(2) + &(&m(-1, 3) * &bracket_tn(x + y)),
                    Family::Kp => &prev.shift(-2) + &(&m(1, -3) * &bracket_tn(x + y - 1)),
                    Family::Kpp => &prev.shift(2) + &(&m(-1, 3) * &bracket_tn(x - y - 1)),
                }
            };
            self.insert((which, x, y), value.clone());
            acc = Some(value);
        }
        acc.expect("chain is nonempty")
    }
}

/// Kauffman bracket of a family member by the closed formula in `n = a + b`.
fn bracket_family_closed(which: Family, a: i64, b: i64) -> Result<LaurentPoly> {
    let n = a + b;
    // 1 - t^x - t^y (1 - t^z)
    let shape = |x: i64, y: i64, z: i64| t_poly([(0, 1), (x, -1), (y, -1), (y + z, 1)]);
    let (prefix_a, prefix_t, numer) = match which {
        Family::K => {
            let n1 = shape(n + 2, b * (a + 2), a - b + 2);
            let n2 = shape(n + 2, (b + 1) * (a + 1), a - b);
            (3 * n * (n + 1) - 1, n * (n - 1) / 2, &n1 - &n2.shift(-1))
        }
        Family::Kp => {
            let m1 = shape(n, b * (a + 2), a - b);
            let m2 = shape(n, (b + 1) * (a + 1), a - b - 2);
            (3 * n * (n - 1) + 1, (n - 1) * (n - 2) / 2, &m1 - &m2.shift(1))
        }
        Family::Kpp => {
            let p1 = shape(n - 2, b * a, a - b - 2);
            let p2 = shape(n, (b + 1) * (a + 1), a - b - 2);
            (3 * n * (n - 1) + 2 * b + 3, (n - 1) * (n - 2) / 2, &p1.shift(n + 2) - &p2)
        }
    };
    let body = to_a(&over_one_minus_t2(&numer)?.shift(prefix_t));
    Ok(body.shift(prefix_a))
}

pub fn bracket_family(which: Family, a: i64, b: i64, strategy: BracketStrategy) -> Result<LaurentPoly> {
    which.check(a, b)?;
    match strategy {
        BracketStrategy::Recursion => Ok(BracketMemo::global().recursion(which, a, b)),
        BracketStrategy::Closed => bracket_family_closed(which, a, b),
    }
}

/// Kauffman bracket of an arrow-diagram knot (T_n or a family member).
pub fn bracket(k: &KnotId) -> Result<LaurentPoly> {
    match k {
        KnotId::Tn(n) => Ok(bracket_tn(*n)),
        _ => match k.family() {
            Some((which, a, b)) => bracket_family(which, a, b, BracketStrategy::Closed),
            None => Err(Error::Unsupported(format!("no arrow-diagram bracket for {k}"))),
        },
    }
}

/// Writhe of the standard arrow diagram.
pub fn writhe(k: &KnotId) -> Result<i64> {
    k.validate()?;
    match *k {
        KnotId::Tn(n) => Ok(n * (n + 1)),
        KnotId::FamK(a, b) => Ok(1 + a * (a + 1) + b * (b + 1) - 2 * a * b),
        KnotId::FamKp(a, b) => Ok(-1 + a * (a - 1) + b * (b - 1) - 2 * a * b),
        KnotId::FamKpp(a, b) => Ok(1 + a * (a - 1) + b * (b + 1) + 2 * a * b),
        _ => Err(Error::Unsupported(format!("{k} carries no arrow-diagram framing"))),
    }
}

/// `(-A)^{-3w}` as a signed monomial.
pub fn framing_factor(w: i64) -> LaurentPoly {
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial(Var::A, -3 * w, sign)
}

/// `(s, N)` with `V = t^s N / (1 - t^2)` for a family member.
pub(crate) fn jones_family_numerator(which: Family, a: i64, b: i64) -> (i64, LaurentPoly) {
    let n = a + b;
    let shape = |x: i64, y: i64, z: i64| t_poly([(0, 1), (x, -1), (y, -1), (y + z, 1)]);
    match which {
        Family::K => {
            let n1 = shape(n + 2, b * (a + 2), a - b + 2);
            let n2 = shape(n + 2, (b + 1) * (a + 1), a - b);
            ((a * a + b * b - 4 * a * b - a - b) / 2, &n2 - &n1.shift(1))
        }
        Family::Kp => {
            let m1 = shape(n, b * (a + 2), a - b);
            let m2 = shape(n, (b + 1) * (a + 1), a - b - 2);
            ((a * a + b * b - 4 * a * b - 3 * a - 3 * b) / 2, &m2.shift(1) - &m1)
        }
        Family::Kpp => {
            let p1 = shape(n - 2, b * a, a - b - 2);
            let p2 = shape(n, (b + 1) * (a + 1), a - b - 2);
            (b + (n - 1) * (n - 2) / 2, &p2 - &p1.shift(n + 2))
        }
    }
}

/// Jones polynomial from the closed family formulas, in t.
fn jones_family(which: Family, a: i64, b: i64) -> Result<LaurentPoly> {
    let (shift, numer) = jones_family_numerator(which, a, b);
    Ok(over_one_minus_t2(&numer)?.shift(shift))
}

/// Jones polynomial in t. Iterated torus knots are handled by the cabling module.
pub fn jones(k: &KnotId) -> Result<LaurentPoly> {
    k.validate()?;
    match k {
        KnotId::Tn(n) => Ok(jones_tn(*n)),
        KnotId::Torus(m, n) => jones_torus(*m, *n),
        KnotId::FamK(a, b) => jones_family(Family::K, *a, *b),
        KnotId::FamKp(a, b) => jones_family(Family::Kp, *a, *b),
        KnotId::FamKpp(a, b) => jones_family(Family::Kpp, *a, *b),
        KnotId::Mirror(inner) => Ok(jones(inner)?.substitute_inverse()),
        KnotId::IteratedTorus(_) => {
            Err(Error::Unsupported("iterated torus knots go through colored Jones".into()))
        }
    }
}

/// Jones polynomial as `(-A)^{-3w} <K>`, converted to t.
pub fn jones_via_bracket(k: &KnotId, strategy: BracketStrategy) -> Result<LaurentPoly> {
    let br = match k.family() {
        Some((which, a, b)) => bracket_family(which, a, b, strategy)?,
        None => bracket(k)?,
    };
    let v = &framing_factor(writhe(k)?) * &br;
    v.convert(Var::T)
}
