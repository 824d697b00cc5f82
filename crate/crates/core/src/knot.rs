//! Knot identifiers shared by every module.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-crossing arrow-diagram family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    K,
    Kp,
    Kpp,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::K, Family::Kp, Family::Kpp];

    /// Checks the canonical parameter range: `a >= b >= 1` for K and K',
    /// `a > 1, b >= 1` for K''.
    pub fn check(self, a: i64, b: i64) -> Result<()> {
        match self {
            Family::K | Family::Kp if !(a >= b && b >= 1) => {
                Err(Error::constraint(format!("{}({a},{b}): a≥b≥1 required", self.symbol())))
            }
            Family::Kpp if !(a > 1 && b >= 1) => {
                Err(Error::constraint(format!("K''({a},{b}): a>1 and b≥1 required")))
            }
            _ => Ok(()),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::K => "K",
            Family::Kp => "K'",
            Family::Kpp => "K''",
        }
    }

    pub fn knot(self, a: i64, b: i64) -> Result<KnotId> {
        self.check(a, b)?;
        Ok(match self {
            Family::K => KnotId::FamK(a, b),
            Family::Kp => KnotId::FamKp(a, b),
            Family::Kpp => KnotId::FamKpp(a, b),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An iterated torus knot: successive `(p_i, q_i)` cablings, innermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CableType {
    cables: Vec<(i64, i64)>,
    trivial_first_stage: bool,
}

impl CableType {
    pub fn new(cables: Vec<(i64, i64)>) -> Result<Self> {
        Self::build(cables, false)
    }

    /// Like [`CableType::new`] but admits `p_1 = 1`, e.g. the (2,5) cable of
    /// the trivial (1,2) torus knot.
    pub fn with_trivial_first_stage(cables: Vec<(i64, i64)>) -> Result<Self> {
        Self::build(cables, true)
    }

    fn build(cables: Vec<(i64, i64)>, trivial_first_stage: bool) -> Result<Self> {
        if cables.is_empty() {
            return Err(Error::constraint("a cable type needs at least one (p,q) stage"));
        }
        for (i, &(p, q)) in cables.iter().enumerate() {
            let low = if i == 0 && trivial_first_stage { 1 } else { 2 };
            if !(p >= low && p < q) {
                return Err(Error::constraint(format!(
                    "stage {}: ({p},{q}) needs {}<p<q",
                    i + 1,
                    low - 1
                )));
            }
            if p.gcd(&q) != 1 {
                return Err(Error::constraint(format!("stage {}: gcd({p},{q}) ≠ 1", i + 1)));
            }
        }
        for (i, w) in cables.windows(2).enumerate() {
            let ((p, q), (p2, q2)) = (w[0], w[1]);
            if p * p2 * q >= q2 {
                return Err(Error::constraint(format!(
                    "stages {}-{}: p_i·p_(i+1)·q_i < q_(i+1) fails ({}·{}·{} ≥ {})",
                    i + 1,
                    i + 2,
                    p,
                    p2,
                    q,
                    q2
                )));
            }
        }
        let trivial_first_stage = trivial_first_stage && cables[0].0 == 1;
        Ok(CableType { cables, trivial_first_stage })
    }

    pub fn cables(&self) -> &[(i64, i64)] {
        &self.cables
    }

    pub fn stages(&self) -> usize {
        self.cables.len()
    }

    pub fn trivial_first_stage(&self) -> bool {
        self.trivial_first_stage
    }
}

impl fmt::Display for CableType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cable[")?;
        for (i, (p, q)) in self.cables.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "({p},{q})")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KnotId {
    /// Oval with `n` counterclockwise arrows (clockwise when negative); T(n,n+1).
    Tn(i64),
    Torus(i64, i64),
    FamK(i64, i64),
    FamKp(i64, i64),
    FamKpp(i64, i64),
    IteratedTorus(CableType),
    Mirror(Box<KnotId>),
}

impl KnotId {
    pub fn torus(m: i64, n: i64) -> Result<Self> {
        if !(1 <= m && m < n) {
            return Err(Error::constraint(format!("T({m},{n}): 1≤m<n required")));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::constraint(format!("T({m},{n}): gcd(m,n)=1 required")));
        }
        Ok(KnotId::Torus(m, n))
    }

    pub fn fam_k(a: i64, b: i64) -> Result<Self> {
        Family::K.knot(a, b)
    }

    pub fn fam_kp(a: i64, b: i64) -> Result<Self> {
        Family::Kp.knot(a, b)
    }

    pub fn fam_kpp(a: i64, b: i64) -> Result<Self> {
        Family::Kpp.knot(a, b)
    }

    /// Mirror image; mirroring twice gives back the original.
    pub fn mirror(k: KnotId) -> Self {
        match k {
            KnotId::Mirror(inner) => *inner,
            other => KnotId::Mirror(Box::new(other)),
        }
    }

    /// Re-checks the invariants of a value that may have been built directly.
    pub fn validate(&self) -> Result<()> {
        match self {
            KnotId::Tn(_) => Ok(()),
            KnotId::Torus(m, n) => KnotId::torus(*m, *n).map(|_| ()),
            KnotId::FamK(a, b) => Family::K.check(*a, *b),
            KnotId::FamKp(a, b) => Family::Kp.check(*a, *b),
            KnotId::FamKpp(a, b) => Family::Kpp.check(*a, *b),
            KnotId::IteratedTorus(c) => {
                CableType::build(c.cables.clone(), c.trivial_first_stage).map(|_| ())
            }
            KnotId::Mirror(inner) => match **inner {
                KnotId::Mirror(_) => Err(Error::constraint("mirror(mirror(K)) must be normalized to K")),
                _ => inner.validate(),
            },
        }
    }

    /// `(family, a, b)` for family members.
    pub fn family(&self) -> Option<(Family, i64, i64)> {
        match *self {
            KnotId::FamK(a, b) => Some((Family::K, a, b)),
            KnotId::FamKp(a, b) => Some((Family::Kp, a, b)),
            KnotId::FamKpp(a, b) => Some((Family::Kpp, a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for KnotId {
    /// The canonical knot expression, e.g. `K''(3,1)` or `mirror(T(2,5))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotId::Tn(n) => write!(f, "Tn({n})"),
            KnotId::Torus(m, n) => write!(f, "T({m},{n})"),
            KnotId::FamK(a, b) => write!(f, "K({a},{b})"),
            KnotId::FamKp(a, b) => write!(f, "K'({a},{b})"),
            KnotId::FamKpp(a, b) => write!(f, "K''({a},{b})"),
            KnotId::IteratedTorus(c) => write!(f, "{c}"),
            KnotId::Mirror(inner) => write!(f, "mirror({inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(KnotId::fam_k(1, 2).is_err());
        assert!(KnotId::fam_kp(0, 0).is_err());
        assert!(KnotId::fam_kpp(1, 1).is_err());
        assert_eq!(KnotId::fam_kpp(2, 5).unwrap(), KnotId::FamKpp(2, 5));
        assert!(KnotId::torus(2, 4).is_err());
        assert!(KnotId::torus(3, 2).is_err());
        assert_eq!(KnotId::torus(1, 7).unwrap(), KnotId::Torus(1, 7));
    }

    #[test]
    fn mirror_normalizes() {
        let k = KnotId::FamK(2, 1);
        assert_eq!(KnotId::mirror(KnotId::mirror(k.clone())), k);
        assert!(KnotId::Mirror(Box::new(KnotId::Mirror(Box::new(k)))).validate().is_err());
    }

    #[test]
    fn cable_validity() {
        assert!(CableType::new(vec![(2, 3), (2, 13)]).is_ok());
        assert!(CableType::new(vec![(2, 3), (2, 12)]).is_err());
        assert!(CableType::new(vec![(2, 3), (2, 11)]).is_err());
        assert!(CableType::new(vec![(1, 2), (2, 5)]).is_err());
        let c = CableType::with_trivial_first_stage(vec![(1, 2), (2, 5)]).unwrap();
        assert!(c.trivial_first_stage());
        assert!(CableType::new(vec![]).is_err());
        assert!(CableType::new(vec![(3, 3)]).is_err());
        assert_eq!(c.to_string(), "cable[(1,2);(2,5)]");
    }

    #[test]
    fn display_forms() {
        assert_eq!(KnotId::FamKpp(3, 1).to_string(), "K''(3,1)");
        assert_eq!(KnotId::mirror(KnotId::Torus(2, 5)).to_string(), "mirror(T(2,5))");
        assert_eq!(KnotId::Tn(-3).to_string(), "Tn(-3)");
    }
}
