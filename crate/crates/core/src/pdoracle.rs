//! Brute-force Kauffman bracket of classical knot diagrams in PD notation.
//!
//! `X(a,b,c,d)` lists the four edges at a crossing counterclockwise, starting
//! from the incoming under-strand. The A-smoothing joins `a`-`b` and `c`-`d`,
//! the B-smoothing joins `a`-`d` and `b`-`c`. Loops are counted with a
//! union-find over edges for each of the `2^k` states.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Var};

/// Largest crossing count the state sum accepts.
pub const STATE_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    /// Components without crossings.
    free_loops: usize,
}

/// Traversal result: per crossing, whether the over strand runs from slot 3 to slot 1.
#[derive(Debug, Clone)]
struct Orientation {
    over_d_to_b: Vec<bool>,
    components: usize,
}

impl PlanarDiagram {
    pub fn new(crossings: Vec<[u32; 4]>, free_loops: usize) -> Result<Self> {
        let pd = PlanarDiagram { crossings, free_loops };
        pd.check_edges()?;
        pd.orientation()?;
        Ok(pd)
    }

    pub fn unknot() -> Self {
        PlanarDiagram { crossings: vec![], free_loops: 1 }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn check_edges(&self) -> Result<()> {
        if self.crossings.is_empty() && self.free_loops == 0 {
            return Err(Error::InvalidDiagram("empty diagram".into()));
        }
        let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &self.crossings {
            for e in x {
                *seen.entry(*e).or_default() += 1;
            }
        }
        if let Some((e, n)) = seen.iter().find(|(_, n)| **n != 2) {
            return Err(Error::InvalidDiagram(format!("edge {e} occurs {n} times, expected 2")));
        }
        Ok(())
    }

    /// Where each edge occurs, as `(crossing, slot)` pairs.
    fn occurrences(&self) -> HashMap<u32, Vec<(usize, usize)>> {
        let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for (s, e) in x.iter().enumerate() {
                occ.entry(*e).or_default().push((i, s));
            }
        }
        occ
    }

    /// Walks every component. Under-strands are oriented by the PD convention
    /// (slot 0 in, slot 2 out); over-strands inherit their direction from the walk.
    fn orientation(&self) -> Result<Orientation> {
        let occ = self.occurrences();
        let k = self.crossings.len();
        let mut over_dir: Vec<Option<bool>> = vec![None; k];
        let mut used = vec![[false; 4]; k];
        let mut components = self.free_loops;
        let other = |e: u32, here: (usize, usize)| -> (usize, usize) {
            let v = &occ[&e];
            if v[0] == here {
                v[1]
            } else {
                v[0]
            }
        };
        // Start walks from outgoing under-slots first, then any leftover slot.
        let starts: Vec<(usize, usize)> = (0..k)
            .map(|i| (i, 2))
            .chain((0..k).flat_map(|i| [(i, 1), (i, 3)]))
            .collect();
        for start in starts {
            if used[start.0][start.1] {
                continue;
            }
            components += 1;
            let mut exit = start;
            loop {
                let (ci, cs) = exit;
                if used[ci][cs] {
                    break;
                }
                used[ci][cs] = true;
                let e = self.crossings[ci][cs];
                let (ni, ns) = other(e, exit);
                if used[ni][ns] {
                    return Err(Error::InvalidDiagram(format!("edge {e} is traversed twice")));
                }
                used[ni][ns] = true;
                let out_slot = match ns {
                    0 => 2,
                    2 => {
                        return Err(Error::InvalidDiagram(format!(
                            "edge {e} enters crossing {} at its outgoing under-slot",
                            ni + 1
                        )))
                    }
                    1 => 3,
                    _ => 1,
                };
                if ns == 1 || ns == 3 {
                    let d_to_b = ns == 3;
                    if let Some(prev) = over_dir[ni] {
                        if prev != d_to_b {
                            return Err(Error::InvalidDiagram("inconsistent over-strand".into()));
                        }
                    }
                    over_dir[ni] = Some(d_to_b);
                }
                exit = (ni, out_slot);
            }
        }
        Ok(Orientation {
            over_d_to_b: over_dir.into_iter().map(|d| d.unwrap_or(true)).collect(),
            components,
        })
    }

    pub fn components(&self) -> usize {
        self.orientation().map(|o| o.components).unwrap_or(0)
    }

    /// Crossing signs: +1 when the over strand runs from slot 3 to slot 1.
    pub fn signs(&self) -> Vec<i64> {
        let o = self.orientation().expect("validated on construction");
        o.over_d_to_b.iter().map(|&p| if p { 1 } else { -1 }).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().sum()
    }

    /// Side-by-side union with `other`, whose edges are relabeled.
    pub fn disjoint_union(&self, other: &PlanarDiagram) -> PlanarDiagram {
        let offset = self.crossings.iter().flatten().max().map_or(0, |m| m + 1);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| x.map(|e| e + offset)));
        PlanarDiagram { crossings, free_loops: self.free_loops + other.free_loops }
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.crossings.iter().map(|[a, b, c, d]| format!("X({a},{b},{c},{d})")).collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        f.write_str(&parts.join(", "))
    }
}

impl FromStr for PlanarDiagram {
    type Err = Error;

    /// `X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)`, commas optional; square brackets and an outer
    /// `PD[...]` are accepted too, and `O` stands for a crossingless loop.
    fn from_str(s: &str) -> Result<Self> {
        let mut body = s.trim();
        if let Some(rest) = body.strip_prefix("PD[").or_else(|| body.strip_prefix("PD(")) {
            body = rest.strip_suffix(']').or_else(|| rest.strip_suffix(')')).ok_or_else(|| {
                Error::parse(s.len(), "unclosed PD wrapper")
            })?;
        }
        let base = s.len() - s.trim_start().len() + (s.trim().len() - body.len()).min(3);
        let bytes = body.as_bytes();
        let mut crossings = Vec::new();
        let mut free_loops = 0;
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && (bytes[*i] as char).is_whitespace() {
                *i += 1;
            }
        };
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                break;
            }
            match bytes[i] {
                b'O' => {
                    free_loops += 1;
                    i += 1;
                }
                b'X' => {
                    i += 1;
                    skip_ws(&mut i);
                    let close = match bytes.get(i) {
                        Some(b'(') => b')',
                        Some(b'[') => b']',
                        _ => return Err(Error::parse(base + i, "expected `(` after X")),
                    };
                    i += 1;
                    let mut nums = Vec::with_capacity(4);
                    loop {
                        skip_ws(&mut i);
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(Error::parse(base + i, "expected an edge label"));
                        }
                        let n: u32 = body[start..i]
                            .parse()
                            .map_err(|_| Error::parse(base + start, "edge label out of range"))?;
                        nums.push(n);
                        skip_ws(&mut i);
                        match bytes.get(i) {
                            Some(b',') => i += 1,
                            Some(&c) if c == close => {
                                i += 1;
                                break;
                            }
                            _ => return Err(Error::parse(base + i, "expected `,` or closing bracket")),
                        }
                    }
                    if nums.len() != 4 {
                        return Err(Error::parse(base + i, format!("crossing has {} edges, expected 4", nums.len())));
                    }
                    crossings.push([nums[0], nums[1], nums[2], nums[3]]);
                }
                _ => return Err(Error::parse(base + i, "expected `X(...)` or `O`")),
            }
            skip_ws(&mut i);
            // separators are optional: `X(..) X(..)` and `X(..),X(..)` both parse
            if bytes.get(i) == Some(&b',') {
                i += 1;
            }
        }
        PlanarDiagram::new(crossings, free_loops)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two classes merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// `<D>` normalized so the crossingless unknot is 1.
pub fn kauffman_bracket_pd(pd: &PlanarDiagram) -> Result<LaurentPoly> {
    let k = pd.crossings.len();
    if k > STATE_BUDGET {
        return Err(Error::StateBudgetExceeded { crossings: k, limit: STATE_BUDGET });
    }
    let mut index: HashMap<u32, usize> = HashMap::new();
    let dense: Vec<[usize; 4]> = pd
        .crossings
        .iter()
        .map(|x| {
            x.map(|e| {
                let next = index.len();
                *index.entry(e).or_insert(next)
            })
        })
        .collect();
    let n_edges = index.len();
    // counts[(#A - #B, loops)]
    let mut counts: BTreeMap<(i64, usize), u64> = BTreeMap::new();
    for state in 0u64..(1u64 << k) {
        let mut uf = UnionFind::new(n_edges);
        let mut classes = n_edges;
        let mut a_minus_b = 0i64;
        for (i, [a, b, c, d]) in dense.iter().enumerate() {
            let pairs = if state >> i & 1 == 0 {
                a_minus_b += 1;
                [(*a, *b), (*c, *d)]
            } else {
                a_minus_b -= 1;
                [(*a, *d), (*b, *c)]
            };
            for (x, y) in pairs {
                if uf.union(x, y) {
                    classes -= 1;
                }
            }
        }
        *counts.entry((a_minus_b, classes + pd.free_loops)).or_default() += 1;
    }
    let delta = LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)]);
    let max_loops = counts.keys().map(|(_, l)| *l).max().unwrap_or(1);
    let delta_pows: Vec<LaurentPoly> = std::iter::successors(Some(LaurentPoly::one(Var::A)), |p| Some(p * &delta))
        .take(max_loops)
        .collect();
    let mut acc = LaurentPoly::zero(Var::A);
    for ((e, loops), n) in counts {
        let term = delta_pows[loops - 1].mul_monomial(e, BigInt::from(n));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Jones polynomial `(-A)^{-3w} <D>` in t. The diagram must be a knot.
pub fn jones_from_pd(pd: &PlanarDiagram) -> Result<LaurentPoly> {
    let components = pd.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let br = kauffman_bracket_pd(pd)?;
    let w = pd.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    br.mul_monomial(-3 * w, sign).convert(Var::T)
}

/// A braid on `strands` strands; letter `i` is σ_i, `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::constraint("a braid needs at least one strand"));
        }
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::constraint(format!("generator {bad} out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// PD code of the closure, strands oriented upward.
    pub fn closure(&self) -> PlanarDiagram {
        let initial: Vec<u32> = (1..=self.strands as u32).collect();
        let mut cur = initial.clone();
        let mut next = self.strands as u32 + 1;
        let mut crossings = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            let (l_in, r_in) = (cur[i], cur[i + 1]);
            let (l_out, r_out) = (next, next + 1);
            next += 2;
            crossings.push(if g > 0 {
                [r_in, r_out, l_out, l_in]
            } else {
                [l_in, r_in, r_out, l_out]
            });
            cur[i] = l_out;
            cur[i + 1] = r_out;
        }
        let rename: HashMap<u32, u32> = cur.iter().zip(&initial).map(|(f, s)| (*f, *s)).collect();
        for x in &mut crossings {
            for e in x.iter_mut() {
                if let Some(r) = rename.get(e) {
                    *e = *r;
                }
            }
        }
        let free_loops = cur.iter().zip(&initial).filter(|(f, s)| f == s).count();
        PlanarDiagram { crossings, free_loops }
    }
}

/// T(m,n) as the closure of `(σ_1 … σ_{m-1})^n`.
pub fn torus_braid_pd(m: i64, n: i64) -> Result<PlanarDiagram> {
    if m < 2 || n < 1 {
        return Err(Error::constraint(format!("T({m},{n}) braid needs m ≥ 2, n ≥ 1")));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::constraint(format!("T({m},{n}): gcd(m,n)=1 required")));
    }
    let letters: Vec<i32> = (0..n).flat_map(|_| 1..m as i32).collect();
    Ok(BraidWord::new(m as usize, letters)?.closure())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::jones_torus;

    fn a(s: &str) -> LaurentPoly {
        LaurentPoly::parse_with_default(s, Var::A).unwrap()
    }

    #[test]
    fn unknot_and_kinks() {
        assert_eq!(kauffman_bracket_pd(&PlanarDiagram::unknot()).unwrap(), a("1"));
        let pos: PlanarDiagram = "X(1,1,2,2)".parse().unwrap();
        assert_eq!(pos.writhe(), 1);
        assert_eq!(kauffman_bracket_pd(&pos).unwrap(), a("-A^3"));
        let neg: PlanarDiagram = "X(1,2,2,1)".parse().unwrap();
        assert_eq!(neg.writhe(), -1);
        assert_eq!(kauffman_bracket_pd(&neg).unwrap(), a("-A^-3"));
        assert_eq!(jones_from_pd(&pos).unwrap(), "1".parse().unwrap());
    }

    #[test]
    fn trefoil_closure() {
        let pd = torus_braid_pd(2, 3).unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.writhe(), 3);
        assert_eq!(pd.components(), 1);
        assert_eq!(kauffman_bracket_pd(&pd).unwrap(), a("-A^5 - A^-3 + A^-7"));
        assert_eq!(jones_from_pd(&pd).unwrap(), jones_torus(2, 3).unwrap());
    }

    #[test]
    fn torus_closures() {
        let pd = torus_braid_pd(2, 5).unwrap();
        assert_eq!(pd.crossing_count(), 5);
        let pd = torus_braid_pd(3, 4).unwrap();
        assert_eq!(pd.crossing_count(), 8);
        assert_eq!(pd.components(), 1);
        assert_eq!(pd.writhe(), 8);
        assert_eq!(jones_from_pd(&pd).unwrap(), jones_torus(3, 4).unwrap());
        assert!(torus_braid_pd(2, 4).is_err());
    }

    #[test]
    fn multi_component_is_rejected() {
        let hopf = BraidWord::new(2, vec![1, 1]).unwrap().closure();
        assert_eq!(hopf.components(), 2);
        assert_eq!(jones_from_pd(&hopf), Err(Error::NotAKnot { components: 2 }));
        let split = BraidWord::new(3, vec![1]).unwrap().closure();
        assert_eq!(split.free_loops(), 1);
        assert_eq!(split.components(), 2);
    }

    #[test]
    fn reidemeister_two() {
        let base = BraidWord::new(3, vec![1, 2, 1, 2]).unwrap();
        let with_pair = BraidWord::new(3, vec![1, 2, 2, -2, 1, 2]).unwrap();
        assert_eq!(jones_from_pd(&base.closure()).unwrap(), jones_from_pd(&with_pair.closure()).unwrap());
        assert_eq!(kauffman_bracket_pd(&base.closure()).unwrap(), kauffman_bracket_pd(&with_pair.closure()).unwrap());
    }

    #[test]
    fn split_union_multiplies_by_delta() {
        let delta = a("-A^2 - A^-2");
        let t = torus_braid_pd(2, 3).unwrap();
        let u = t.disjoint_union(&PlanarDiagram::unknot());
        assert_eq!(kauffman_bracket_pd(&u).unwrap(), &delta * &kauffman_bracket_pd(&t).unwrap());
        let tt = t.disjoint_union(&t);
        let bt = kauffman_bracket_pd(&t).unwrap();
        assert_eq!(kauffman_bracket_pd(&tt).unwrap(), &(&delta * &bt) * &bt);
    }

    #[test]
    fn parse_and_render() {
        let pd: PlanarDiagram = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]".parse().unwrap();
        assert_eq!(pd.to_string(), "X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)");
        assert_eq!(pd.to_string().parse::<PlanarDiagram>().unwrap(), pd);
        assert_eq!(pd.crossing_count(), 3);
        assert!(matches!("X(1,2,3)".parse::<PlanarDiagram>(), Err(Error::Parse { .. })));
        assert!(matches!("X(1,2,3,4)".parse::<PlanarDiagram>(), Err(Error::InvalidDiagram(_))));
        assert!(matches!("Y(1,1,2,2)".parse::<PlanarDiagram>(), Err(Error::Parse { .. })));
        assert_eq!("O".parse::<PlanarDiagram>().unwrap(), PlanarDiagram::unknot());
        let spaced: PlanarDiagram = "X(1,4,2,5) X(3,6,4,1)X(5,2,6,3)".parse().unwrap();
        assert_eq!(spaced, pd);
    }

    #[test]
    fn state_budget() {
        let big = BraidWord::new(2, vec![1; 21]).unwrap().closure();
        assert_eq!(
            kauffman_bracket_pd(&big),
            Err(Error::StateBudgetExceeded { crossings: 21, limit: STATE_BUDGET })
        );
    }
}
