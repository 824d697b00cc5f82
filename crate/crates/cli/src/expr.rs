//! Knot expressions:
//! `T(m,n) | Tn(k) | K(a,b) | K'(a,b) | K''(a,b) | mirror(EXPR) | cable[(p,q);...]`.
//!
//! Whitespace is ignored between tokens. Errors carry the zero-based byte
//! offset where they were detected.

use std::fmt;

use hopfknot::{CableType, Error, Family, KnotId, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Torus(i64, i64),
    Tn(i64),
    Fam(Family, i64, i64),
    Mirror(Box<KnotExpr>),
    Cable(Vec<(i64, i64)>),
}

/// A parsed expression with the offset where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotExpr {
    pub kind: ExprKind,
    pub pos: usize,
}

impl KnotExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { src: text, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Builds the knot, reporting constraint violations at this node's offset.
    pub fn to_knot(&self) -> Result<KnotId> {
        let at = |e: Error| match e {
            Error::Constraint(m) => Error::Constraint(format!("at {}: {m}", self.pos)),
            other => other,
        };
        match &self.kind {
            ExprKind::Torus(m, n) => {
                let (m, n) = if m > n { (*n, *m) } else { (*m, *n) };
                KnotId::torus(m, n).map_err(at)
            }
            ExprKind::Tn(k) => Ok(KnotId::Tn(*k)),
            ExprKind::Fam(f, a, b) => f.knot(*a, *b).map_err(at),
            ExprKind::Mirror(inner) => Ok(KnotId::mirror(inner.to_knot()?)),
            ExprKind::Cable(cs) => {
                let c = if cs.first().is_some_and(|&(p, _)| p == 1) {
                    CableType::with_trivial_first_stage(cs.clone())
                } else {
                    CableType::new(cs.clone())
                };
                Ok(KnotId::IteratedTorus(c.map_err(at)?))
            }
        }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Torus(m, n) => write!(f, "T({m},{n})"),
            ExprKind::Tn(k) => write!(f, "Tn({k})"),
            ExprKind::Fam(fam, a, b) => write!(f, "{}({a},{b})", fam.symbol()),
            ExprKind::Mirror(inner) => write!(f, "mirror({inner})"),
            ExprKind::Cable(cs) => {
                let parts: Vec<String> = cs.iter().map(|(p, q)| format!("({p},{q})")).collect();
                write!(f, "cable[{}]", parts.join(";"))
            }
        }
    }
}

pub fn parse_knot_expr(text: &str) -> Result<KnotId> {
    KnotExpr::parse(text)?.to_knot()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        let text = &rest[..sign + digits];
        let v = text.parse().map_err(|_| self.err(format!("integer `{text}` out of range")))?;
        self.pos += sign + digits;
        Ok(v)
    }

    fn pair(&mut self) -> Result<(i64, i64)> {
        self.expect("(")?;
        let a = self.int()?;
        self.expect(",")?;
        let b = self.int()?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        self.skip_ws();
        let pos = self.pos;
        let kind = if self.eat("mirror") {
            self.expect("(")?;
            let inner = self.expr()?;
            self.expect(")")?;
            ExprKind::Mirror(Box::new(inner))
        } else if self.eat("cable") {
            self.expect("[")?;
            let mut cs = vec![self.pair()?];
            while self.eat(";") {
                cs.push(self.pair()?);
            }
            self.expect("]")?;
            ExprKind::Cable(cs)
        } else if self.eat("Tn") {
            self.expect("(")?;
            let k = self.int()?;
            self.expect(")")?;
            ExprKind::Tn(k)
        } else if self.eat("T") {
            let (m, n) = self.pair()?;
            ExprKind::Torus(m, n)
        } else if self.eat("K") {
            let fam = if self.eat("''") || self.eat("″") {
                Family::Kpp
            } else if self.eat("'") || self.eat("′") {
                Family::Kp
            } else {
                Family::K
            };
            let (a, b) = self.pair()?;
            ExprKind::Fam(fam, a, b)
        } else {
            return Err(self.err("expected T, Tn, K, K', K'', mirror or cable"));
        };
        Ok(KnotExpr { kind, pos })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert_eq!(parse_knot_expr("K''(3,1)").unwrap(), KnotId::FamKpp(3, 1));
        assert_eq!(parse_knot_expr("mirror(T(2,5))").unwrap(), KnotId::mirror(KnotId::Torus(2, 5)));
        assert_eq!(parse_knot_expr(" K ' ( 2 , 1 ) ").unwrap(), KnotId::FamKp(2, 1));
        assert_eq!(parse_knot_expr("Tn(-3)").unwrap(), KnotId::Tn(-3));
        assert_eq!(parse_knot_expr("T(5,2)").unwrap(), KnotId::Torus(2, 5));
        assert_eq!(parse_knot_expr("mirror(mirror(K(1,1)))").unwrap(), KnotId::FamK(1, 1));
        let c = parse_knot_expr("cable[(2,3);(2,13)]").unwrap();
        assert_eq!(c.to_string(), "cable[(2,3);(2,13)]");
        let trivial = parse_knot_expr("cable[(1,2);(2,5)]").unwrap();
        assert!(matches!(trivial, KnotId::IteratedTorus(ref c) if c.trivial_first_stage()));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_knot_expr("K(1,2)") {
            Err(Error::Constraint(m)) => assert!(m.contains("a≥b≥1 required"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_knot_expr("K(2,1"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_knot_expr("Q(1,1)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_knot_expr("T(2,3) x"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_knot_expr("cable[(2,3);(2,12)]"), Err(Error::Constraint(_))));
        assert!(matches!(parse_knot_expr("Tn(99999999999999999999)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["T(2,3)", "Tn(4)", "K(2,1)", "K'(2,2)", "K''(4,1)", "mirror(K''(2,1))", "cable[(3,4);(2,25)]"] {
            let e = KnotExpr::parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(e.to_knot().unwrap().to_string(), s);
        }
    }
}
