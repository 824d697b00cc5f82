//! Colored Jones polynomials of iterated torus knots by cabling, the gap
//! calculus for their highest powers, and the classification of algebraic
//! knots with Hopf crossing number at most one.
//!
//! Cabling sums run over a half-integer index `j`; here `k = 2j` is used
//! throughout, so `4qj(jp+1) = qk(kp+2)` and the inner color `2pj+1 = pk+1`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::closedform::jones;
use crate::error::{Error, Result};
use crate::jclass::{identify, HopfInfo};
use crate::knot::{CableType, KnotId};
use crate::laurent::{LaurentPoly, Var};

/// `A^2 - A^-2`.
fn a2_minus() -> LaurentPoly {
    LaurentPoly::from_terms(Var::A, [(2, 1), (-2, -1)])
}

/// `[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})`.
pub fn quantum_integer(n: i64) -> LaurentPoly {
    let num = LaurentPoly::from_terms(Var::A, [(2 * n, 1), (-2 * n, -1)]);
    num.div_exact(&a2_minus()).expect("A^2 - A^-2 divides A^2n - A^-2n")
}

/// The k values `-(n-1), -(n-3), ..., n-1`.
fn doubled_indices(n: i64) -> impl Iterator<Item = i64> {
    (0..n).map(move |i| -(n - 1) + 2 * i)
}

type MemoKey = (Vec<(i64, i64)>, i64);

/// Insert-only table of colored Jones values keyed on `(stage prefix, color)`.
#[derive(Debug, Default)]
pub struct ColoredMemo {
    table: RwLock<HashMap<MemoKey, LaurentPoly>>,
}

impl ColoredMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static ColoredMemo {
        static MEMO: OnceLock<ColoredMemo> = OnceLock::new();
        MEMO.get_or_init(ColoredMemo::new)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `V(n)` of the knot obtained by applying `stages` to the unknot, for any integer color.
    pub fn colored(&self, stages: &[(i64, i64)], n: i64) -> LaurentPoly {
        if n < 0 {
            return -self.colored(stages, -n);
        }
        if n == 0 {
            return LaurentPoly::zero(Var::A);
        }
        let Some((&(p, q), inner)) = stages.split_last() else {
            return quantum_integer(n);
        };
        if n == 1 {
            return LaurentPoly::one(Var::A);
        }
        let key = (stages.to_vec(), n);
        if let Some(v) = self.table.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let mut sum = LaurentPoly::zero(Var::A);
        for k in doubled_indices(n) {
            let inner_v = self.colored(inner, p * k + 1);
            sum = &sum + &inner_v.shift(q * k * (k * p + 2));
        }
        let v = sum.shift(-p * q * (n * n - 1));
        debug_assert!(v.terms().iter().all(|(e, _)| (e - 2 * (n - 1)).rem_euclid(4) == 0));
        self.table.write().expect("memo lock").entry(key).or_insert_with(|| v.clone());
        v
    }
}

/// The cabling stages of a torus-type knot; empty for the unknot.
fn stages_of(k: &KnotId) -> Result<Vec<(i64, i64)>> {
    k.validate()?;
    match k {
        KnotId::Tn(n) => {
            let n = if *n < 0 { -n - 1 } else { *n };
            Ok(if n <= 1 { vec![] } else { vec![(n, n + 1)] })
        }
        KnotId::Torus(1, _) => Ok(vec![]),
        KnotId::Torus(m, n) => Ok(vec![(*m, *n)]),
        KnotId::IteratedTorus(c) => Ok(c.cables().to_vec()),
        _ => Err(Error::Unsupported(format!("colored Jones is implemented for torus-type knots, not {k}"))),
    }
}

/// Colored Jones `V_K(n)` in A, normalized so the unknot gives `[n]`.
pub fn colored_jones(k: &KnotId, n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::constraint(format!("color must be positive, got {n}")));
    }
    Ok(ColoredMemo::global().colored(&stages_of(k)?, n))
}

/// `J_K(n) = (A^2 - A^-2) V_K(n)`.
pub fn j_colored(k: &KnotId, n: i64) -> Result<LaurentPoly> {
    Ok(&a2_minus() * &colored_jones(k, n)?)
}

/// `J_{T(p,q)}(n)` as a single sum, without going through the unknot's colors.
pub fn colored_torus_direct(p: i64, q: i64, n: i64) -> Result<LaurentPoly> {
    if p < 1 || q < 1 || p.gcd(&q) != 1 {
        return Err(Error::constraint(format!("T({p},{q}): gcd(p,q)=1 and p,q ≥ 1 required")));
    }
    if n < 1 {
        return Err(Error::constraint(format!("color must be positive, got {n}")));
    }
    let mut sum = LaurentPoly::zero(Var::A);
    for k in doubled_indices(n) {
        let e = q * k * (k * p + 2);
        let pair = LaurentPoly::from_terms(Var::A, [(e + 2 * p * k + 2, 1), (e - 2 * p * k - 2, -1)]);
        sum = &sum + &pair;
    }
    Ok(sum.shift(-p * q * (n * n - 1)))
}

/// Ordinary Jones polynomial in t of any supported knot, iterated torus knots included.
pub fn jones_any(k: &KnotId) -> Result<LaurentPoly> {
    match k {
        KnotId::IteratedTorus(_) => {
            let v2 = colored_jones(k, 2)?;
            v2.div_exact(&quantum_integer(2))?.convert(Var::T)
        }
        KnotId::Mirror(inner) if matches!(**inner, KnotId::IteratedTorus(_)) => {
            Ok(jones_any(inner)?.substitute_inverse())
        }
        _ => jones(k),
    }
}

/// `J` for any supported knot: t-form of `J_K(2)`, shifted to lowest degree zero.
pub fn j_from_colored(k: &KnotId) -> Result<LaurentPoly> {
    Ok(j_colored(k, 2)?.convert(Var::T)?.normalize_shift())
}

pub fn l_sequence(c: &CableType) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(c.stages());
    for (i, &(p, q)) in c.cables().iter().enumerate() {
        let l = if i == 0 { -2 * (q - 1) * (p - 1) + 2 } else { -2 * q * p + 2 * q + p * out[i - 1] };
        out.push(l);
    }
    out
}

/// Checks `-2 q_i p_i < l_i < 0` for every stage.
pub fn check_l_bounds(c: &CableType) -> Result<()> {
    for (i, (&(p, q), l)) in c.cables().iter().zip(l_sequence(c)).enumerate() {
        if !(-2 * q * p < l && l < 0) {
            return Err(Error::LemmaViolation(format!(
                "stage {}: l = {l} is outside (-2qp, 0) = ({}, 0)",
                i + 1,
                -2 * q * p
            )));
        }
    }
    Ok(())
}

/// `4 q_s - 4 (p_1 + q_1) p_2 ... p_s + 2 l_{s-1}`, defined for two or more stages.
pub fn lemma_ls_value(c: &CableType) -> Option<i64> {
    let cs = c.cables();
    let s = cs.len();
    if s < 2 {
        return None;
    }
    let tail: i64 = cs[1..].iter().map(|(p, _)| p).product();
    let (p1, q1) = cs[0];
    let l = l_sequence(c);
    Some(4 * cs[s - 1].1 - 4 * (p1 + q1) * tail + 2 * l[s - 2])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapPrediction {
    pub n: i64,
    /// Highest power of A in `J_{K_s}(n)`.
    pub top: i64,
    /// Gaps between the four highest powers, from the top; absent for n = 1.
    pub gaps: Option<[i64; 3]>,
}

pub fn predicted_gap_structure(c: &CableType, n: i64) -> Result<GapPrediction> {
    if n < 1 {
        return Err(Error::constraint(format!("color must be positive, got {n}")));
    }
    check_l_bounds(c)?;
    if let Some(v) = lemma_ls_value(c) {
        if v <= 0 {
            return Err(Error::LemmaViolation(format!("4q_s - 4(p_1+q_1)p_2…p_s + 2l_(s-1) = {v} ≤ 0")));
        }
    }
    let l = *l_sequence(c).last().expect("nonempty cable type");
    let top = (n - 1) * l + 2;
    let gaps = (n >= 2).then(|| {
        let cs = c.cables();
        let all: i64 = cs.iter().map(|(p, _)| p).product();
        let tail: i64 = cs[1..].iter().map(|(p, _)| p).product();
        let (p1, q1) = cs[0];
        [4 * all * (n - 1) + 4, 4 * (q1 - p1) * tail * (n - 1), 4 * all * (n - 1) - 4]
    });
    Ok(GapPrediction { n, top, gaps })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCheck {
    pub predicted: GapPrediction,
    pub actual_top: i64,
    pub actual_gaps: Vec<i64>,
}

impl GapCheck {
    pub fn matches(&self) -> bool {
        self.predicted.top == self.actual_top
            && self.predicted.gaps.is_none_or(|g| self.actual_gaps.len() >= 3 && g[..] == self.actual_gaps[..3])
    }
}

/// Compares the prediction with the computed `J_{K_s}(n)`.
pub fn check_gap_prediction(c: &CableType, n: i64) -> Result<GapCheck> {
    let predicted = predicted_gap_structure(c, n)?;
    let j = j_colored(&KnotId::IteratedTorus(c.clone()), n)?;
    let exps: Vec<i64> = j.terms().iter().rev().map(|(e, _)| *e).take(4).collect();
    let actual_top = *exps.first().ok_or(Error::ZeroPolynomial)?;
    let actual_gaps = exps.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(GapCheck { predicted, actual_top, actual_gaps })
}

/// J of the doubly iterated knot of type `{(p,p+1),(2,q)}`, like terms combined.
pub fn jk_double(p: i64, q: i64) -> Result<LaurentPoly> {
    let q0 = 2 * p * (p + 1) + 1;
    if p < 1 {
        return Err(Error::constraint(format!("p must be positive, got {p}")));
    }
    if q % 2 == 0 || q < q0 {
        return Err(Error::constraint(format!("q must be odd and at least 2p(p+1)+1 = {q0}, got {q}")));
    }
    let sq = p * p;
    Ok(LaurentPoly::from_terms(
        Var::T,
        [
            (0, 1),
            (2 * p + 1, -1),
            (2 * p + 3, -1),
            (4 * p + 2, 1),
            (sq + 3 * p + 1, 1),
            (sq + 3 * p + 2, -1),
            (q - sq + p + 1, -1),
            (q - sq + p + 2, 1),
        ],
    ))
}

/// `(q_1 - p_1) p_2 … p_s - 1`.
pub fn fiedler_bound(c: &CableType) -> i64 {
    let cs = c.cables();
    let tail: i64 = cs[1..].iter().map(|(p, _)| p).product();
    (cs[0].1 - cs[0].0) * tail - 1
}

/// The bound is stated for `q_1 < 2 p_1`.
pub fn fiedler_hypothesis_holds(c: &CableType) -> bool {
    let (p1, q1) = c.cables()[0];
    q1 < 2 * p1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicVerdict {
    pub h: HopfInfo,
    pub matched_knot: Option<KnotId>,
    pub c_alg: Option<i64>,
    pub fiedler_lower_bound: i64,
    pub fiedler_hypothesis: bool,
}

/// Whether the type is one the classification lists as having h ≤ 1:
/// `{(n,n+1)}`, `{(n,n+2)}`, `{(2,5)}` as a cable of `(1,2)`, or `{(p,p+1),(2,2p(p+1)+1)}`.
pub fn listed_low_hopf_type(c: &CableType) -> bool {
    match c.cables() {
        [(p, q)] => q - p == 1 || q - p == 2,
        [(1, 2), (2, 5)] => true,
        [(p, q), (2, q2)] => q - p == 1 && *q2 == 2 * p * (p + 1) + 1,
        _ => false,
    }
}

/// Decides h ≤ 1 membership by exact comparison of J with the census.
pub fn classify_algebraic(c: &CableType) -> Result<AlgebraicVerdict> {
    let k = KnotId::IteratedTorus(c.clone());
    let j = j_from_colored(&k)?;
    let found = identify(&j);
    let (h, matched_knot) = match found.matches.first() {
        Some(m) => {
            let h = if matches!(m, KnotId::Tn(_)) { 0 } else { 1 };
            (HopfInfo::exact(h), Some(m.clone()))
        }
        None => (HopfInfo::interval(2, None), None),
    };
    let c_alg = match (h.exact, h.lower) {
        (true, x) if x <= 1 => Some(x as i64),
        _ => None,
    };
    Ok(AlgebraicVerdict {
        h,
        matched_knot,
        c_alg,
        fiedler_lower_bound: fiedler_bound(c),
        fiedler_hypothesis: fiedler_hypothesis_holds(c),
    })
}
