//! The acceptance suite: fifteen exact checks with their time limits.
//!
//! Every check returns a one-line detail string; [`run_suite`] runs them on
//! scoped threads and reports in criterion order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::cabling::{
    check_gap_prediction, check_l_bounds, classify_algebraic, colored_torus_direct, fiedler_bound,
    j_colored, j_from_colored, jk_double, l_sequence, lemma_ls_value,
};
use crate::closedform::{
    bracket_family, bracket_tn_parts, framing_factor, jones, jones_torus, telescoped_sum, writhe,
    BracketStrategy, SumStrategy,
};
use crate::jclass::{
    crossing_upper_bound, enumerate_family, hopf_number, identify, j_branch_terms, j_closed_branch,
    j_polynomial, max_jones_coefficient, mirror_status, rolfsen_table, HopfInfo, MirrorStatus,
};
use crate::knot::{CableType, Family, KnotId};
use crate::laurent::{a_pow, LaurentPoly, Var};
use crate::pdoracle::{jones_from_pd, torus_braid_pd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Reduced sweeps for a fast smoke run.
    Quick,
    /// The sweeps and limits exactly as stated.
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level `{other}` (expected quick or full)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> std::result::Result<(), String> {
    if elapsed > limit {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

pub const TITLES: [&str; 15] = [
    "PD oracle agrees with torus Jones",
    "bracket recursion equals closed form",
    "framing identity with writhe values",
    "UV cancellation and telescoped sums",
    "J branch audit",
    "eight-knot table",
    "J distinctness over the census",
    "Jones coefficient bound",
    "mirror classification",
    "torus Hopf numbers",
    "crossing bounds",
    "two-route colored torus Jones",
    "gap predictions",
    "doubly iterated closed form",
    "Fiedler bound not sharp",
];

fn family_sweep(max: i64) -> Vec<(Family, i64, i64)> {
    let mut out = Vec::new();
    for which in Family::ALL {
        for a in 1..=max {
            for b in 1..=max {
                if which.check(a, b).is_ok() {
                    out.push((which, a, b));
                }
            }
        }
    }
    out
}

fn c1_pd_oracle(_: Level) -> Check {
    for (m, n) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)] {
        let start = Instant::now();
        let pd = torus_braid_pd(m, n).map_err(|e| e.to_string())?;
        ensure!(pd.crossing_count() <= 10, "T({m},{n}) diagram has {} crossings", pd.crossing_count());
        let v = jones_from_pd(&pd).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let expected = jones_torus(m, n).map_err(|e| e.to_string())?;
        ensure!(v == expected, "T({m},{n}): state sum {v} but closed form {expected}");
        within(elapsed, Duration::from_secs(1), &format!("T({m},{n})"))?;
    }
    Ok("5 torus knots agree, each within 1 s".into())
}

fn c2_strategies(level: Level) -> Check {
    let max = if level == Level::Full { 25 } else { 12 };
    let start = Instant::now();
    let sweep = family_sweep(max);
    for &(which, a, b) in &sweep {
        let r = bracket_family(which, a, b, BracketStrategy::Recursion).map_err(|e| e.to_string())?;
        let c = bracket_family(which, a, b, BracketStrategy::Closed).map_err(|e| e.to_string())?;
        ensure!(r == c, "{which}({a},{b}): recursion and closed form differ");
    }
    within(start.elapsed(), Duration::from_secs(10), "bracket sweep")?;
    Ok(format!("{} diagrams, parameters ≤ {max}", sweep.len()))
}

fn c3_framing(level: Level) -> Check {
    let max = if level == Level::Full { 25 } else { 12 };
    let sweep = family_sweep(max);
    for &(which, a, b) in &sweep {
        let k = which.knot(a, b).map_err(|e| e.to_string())?;
        let w = writhe(&k).map_err(|e| e.to_string())?;
        if which == Family::K {
            ensure!(w == 1 + a * (a + 1) + b * (b + 1) - 2 * a * b, "writhe of {k} is {w}");
        }
        let br = bracket_family(which, a, b, BracketStrategy::Recursion).map_err(|e| e.to_string())?;
        let v = (&framing_factor(w) * &br).convert(Var::T).map_err(|e| format!("{k}: {e}"))?;
        ensure!(v == jones(&k).map_err(|e| e.to_string())?, "{k}: (-A)^(-3w)<K> differs from V");
    }
    Ok(format!("{} knots, parameters ≤ {max}", sweep.len()))
}

fn c4_uv(_: Level) -> Check {
    for n in -30..=30 {
        let here = bracket_tn_parts(n);
        let back = bracket_tn_parts(n - 2);
        let lhs = here.v.add(&back.u.mul(&a_pow(2)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(lhs.is_zero(), "V_{n} + A^2 U_{} ≠ 0", n - 2);
        let lhs = here
            .v_prime
            .add(&back.u_prime.mul(&a_pow(-2)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(lhs.is_zero(), "V'_{n} + A^-2 U'_{} ≠ 0", n - 2);
    }
    let mut count = 0;
    for n in -20..=20 {
        for m in 0..=10 {
            for primed in [false, true] {
                let d = telescoped_sum(n, m, primed, SumStrategy::Direct).map_err(|e| e.to_string())?;
                let c = telescoped_sum(n, m, primed, SumStrategy::Closed).map_err(|e| e.to_string())?;
                ensure!(d == c, "telescoped sum n={n} m={m} primed={primed} differs");
                count += 1;
            }
        }
    }
    Ok(format!("UV for |n| ≤ 30, {count} telescoped sums"))
}

fn c5_branches(level: Level) -> Check {
    let max = if level == Level::Full { 30 } else { 15 };
    let mut hit = BTreeSet::new();
    let sweep = family_sweep(max);
    for &(which, a, b) in &sweep {
        let (branch, _) = j_branch_terms(which, a, b).map_err(|e| e.to_string())?;
        hit.insert(branch.to_string());
        let k = which.knot(a, b).map_err(|e| e.to_string())?;
        let closed = j_closed_branch(which, a, b).map_err(|e| e.to_string())?;
        let jp = j_polynomial(&k).map_err(|e| e.to_string())?;
        ensure!(closed == jp, "{k} on branch {branch}: {closed} vs {jp}");
    }
    for (a, b) in [(1, 1), (2, 1), (3, 1), (4, 1)] {
        for which in Family::ALL {
            if which.check(a, b).is_ok() {
                ensure!(sweep.contains(&(which, a, b)), "special case {which}({a},{b}) missing");
            }
        }
    }
    ensure!(hit.len() == 20, "only {} of 20 branches exercised: {hit:?}", hit.len());
    Ok(format!("{} knots, all 20 branches", sweep.len()))
}

fn c6_table(_: Level) -> Check {
    let table = rolfsen_table();
    ensure!(table.len() == 8, "table has {} entries", table.len());
    for (k, name) in &table {
        let res = identify(&j_polynomial(k).map_err(|e| e.to_string())?);
        ensure!(res.matches.contains(k), "{k} ({name}) not identified");
        let pair = matches!(k, KnotId::FamK(2, 1) | KnotId::FamK(3, 1));
        if pair {
            ensure!(res.ambiguous && res.matches.len() == 2, "{k}: ambiguity not flagged");
        } else {
            ensure!(!res.ambiguous && res.matches.len() == 1, "{k}: matches {:?}", res.matches);
        }
    }
    Ok("8 knots identified, K(2,1)/K(3,1) flagged ambiguous".into())
}

fn c7_distinct(level: Level) -> Check {
    let span = if level == Level::Full { 60 } else { 30 };
    let start = Instant::now();
    let census = enumerate_family(span);
    let mut groups: HashMap<&LaurentPoly, Vec<&KnotId>> = HashMap::new();
    for (k, j) in &census {
        groups.entry(j).or_default().push(k);
    }
    let dups: Vec<Vec<&KnotId>> = groups.into_values().filter(|g| g.len() > 1).collect();
    let pair = [KnotId::FamK(2, 1), KnotId::FamK(3, 1)];
    ensure!(
        dups.len() == 1 && dups[0].len() == 2 && dups[0].iter().all(|k| pair.contains(k)),
        "coinciding J groups: {dups:?}"
    );
    within(start.elapsed(), Duration::from_secs(30), "census")?;
    Ok(format!("{} knots with J-span ≤ {span}, one coincidence", census.len()))
}

fn c8_coefficients(level: Level) -> Check {
    let max = if level == Level::Full { 40 } else { 20 };
    let two = BigInt::from(2);
    let mut attained = 0;
    for (which, a, b) in family_sweep(max) {
        let k = which.knot(a, b).map_err(|e| e.to_string())?;
        let m = max_jones_coefficient(&k).map_err(|e| e.to_string())?;
        ensure!(m <= two, "{k} has a Jones coefficient of size {m}");
        if m == two {
            attained += 1;
        }
    }
    ensure!(attained > 0, "no coefficient of size 2");
    let k41 = max_jones_coefficient(&KnotId::FamKpp(4, 1)).map_err(|e| e.to_string())?;
    let jk41 = j_polynomial(&KnotId::FamKpp(4, 1)).map_err(|e| e.to_string())?.max_abs_coeff();
    Ok(format!(
        "|c| ≤ 2 for parameters ≤ {max}, |c| = 2 in {attained} knots; K''(4,1): max |c| {k41} in V, {jk41} in J"
    ))
}

fn c9_mirror(level: Level) -> Check {
    let span = if level == Level::Full { 60 } else { 30 };
    let mut amphi = Vec::new();
    let mut paired = Vec::new();
    let census = enumerate_family(span);
    for (k, _) in &census {
        match mirror_status(k).map_err(|e| e.to_string())? {
            MirrorStatus::MirrorExceedsOne => {}
            MirrorStatus::Amphichiral => amphi.push(k.clone()),
            MirrorStatus::MirrorInFamily(m) => paired.push((k.clone(), m)),
        }
    }
    let unknot = KnotId::Tn(0);
    ensure!(
        amphi.iter().all(|k| *k == KnotId::FamK(1, 1) || *k == unknot) && amphi.contains(&KnotId::FamK(1, 1)),
        "amphichiral: {amphi:?}"
    );
    let expected = vec![(KnotId::Tn(2), KnotId::FamKp(1, 1)), (KnotId::FamKp(1, 1), KnotId::Tn(2))];
    ensure!(paired == expected, "mirror pairs: {paired:?}");
    Ok(format!("{} knots: K(1,1) amphichiral, Tn(2) ↔ K'(1,1), unknot trivially amphichiral", census.len()))
}

fn expected_torus_hopf(n: i64, k: i64) -> HopfInfo {
    match k {
        1 => HopfInfo::exact(0),
        2 => HopfInfo::exact(1),
        3 if n == 2 => HopfInfo::exact(1),
        3 => HopfInfo::exact(2),
        _ => {
            let upper = if n == 2 {
                (k - 1) / 2
            } else if k < n {
                k - 1
            } else {
                k - 2
            };
            HopfInfo::interval(2, Some(upper as u64))
        }
    }
}

fn c10_torus_hopf(_: Level) -> Check {
    let mut count = 0;
    for n in 2..=15 {
        for k in 1..=15 {
            if num_integer::gcd(n, n + k) != 1 {
                continue;
            }
            let got = hopf_number(&KnotId::Torus(n, n + k)).map_err(|e| e.to_string())?;
            let want = expected_torus_hopf(n, k);
            ensure!(got == want, "T({n},{}): got {got}, expected {want}", n + k);
            count += 1;
        }
    }
    ensure!(hopf_number(&KnotId::Torus(4, 7)).map_err(|e| e.to_string())? == HopfInfo::exact(2), "T(4,7)");
    ensure!(
        hopf_number(&KnotId::Torus(2, 9)).map_err(|e| e.to_string())? == HopfInfo::interval(2, Some(3)),
        "T(2,9)"
    );
    Ok(format!("{count} torus knots T(n,n+k), n,k ≤ 15"))
}

fn c11_crossings(_: Level) -> Check {
    let kp31 = crossing_upper_bound(1, 4, 0);
    let k21 = crossing_upper_bound(1, 0, 3);
    ensure!(kp31 == 13, "K'(3,1) bound {kp31}");
    ensure!(k21 == 9, "K(2,1) bound {k21}");
    ensure!(crossing_upper_bound(7, 0, 0) == 7, "bare diagram bound");
    Ok("K'(3,1) ≤ 13, K(2,1) ≤ 9".into())
}

fn c12_two_routes(_: Level) -> Check {
    let start = Instant::now();
    let mut count = 0;
    for p in [2i64, 3] {
        for q in p + 1..=7 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let k = KnotId::Torus(p, q);
            for n in 1..=6 {
                let direct = colored_torus_direct(p, q, n).map_err(|e| e.to_string())?;
                let cabled = j_colored(&k, n).map_err(|e| e.to_string())?;
                ensure!(direct == cabled, "T({p},{q}) color {n}: routes differ");
                count += 1;
            }
            let j = j_from_colored(&k).map_err(|e| e.to_string())?;
            ensure!(j == j_polynomial(&k).map_err(|e| e.to_string())?, "T({p},{q}): cabling J differs");
        }
    }
    within(start.elapsed(), Duration::from_secs(5), "two-route sweep")?;
    Ok(format!("{count} (p,q,n) triples, cabling J matches torus formula"))
}

pub fn gap_types() -> Vec<CableType> {
    [
        vec![(2, 3)],
        vec![(2, 5)],
        vec![(3, 4)],
        vec![(2, 3), (2, 13)],
        vec![(2, 3), (2, 15)],
        vec![(3, 4), (2, 25)],
    ]
    .into_iter()
    .map(|c| CableType::new(c).expect("listed types are valid"))
    .collect()
}

fn c13_gaps(_: Level) -> Check {
    for c in gap_types() {
        check_l_bounds(&c).map_err(|e| format!("{c}: {e}"))?;
        if let Some(v) = lemma_ls_value(&c) {
            ensure!(v > 0, "{c}: top-gap inequality value {v}");
        }
        for n in 2..=5 {
            let chk = check_gap_prediction(&c, n).map_err(|e| format!("{c}: {e}"))?;
            ensure!(
                chk.matches(),
                "{c} n={n}: predicted top {} gaps {:?}, actual top {} gaps {:?}",
                chk.predicted.top,
                chk.predicted.gaps,
                chk.actual_top,
                chk.actual_gaps
            );
        }
    }
    Ok(format!("6 types × n=2..5; l-sequence of {{(3,4),(2,25)}} = {:?}", l_sequence(&gap_types()[5])))
}

fn c14_double(_: Level) -> Check {
    let target: LaurentPoly = "1 - t^3 - t^6 + t^7".parse().expect("literal");
    let j15 = jk_double(1, 5).map_err(|e| e.to_string())?;
    ensure!(j15 == target, "jk_double(1,5) = {j15}");
    ensure!(j_polynomial(&KnotId::FamKpp(2, 1)).map_err(|e| e.to_string())? == target, "J of K''(2,1)");
    for p in 1..=6 {
        let q0 = 2 * p * (p + 1) + 1;
        let jd = jk_double(p, q0).map_err(|e| e.to_string())?;
        let jb = j_closed_branch(Family::Kpp, p + 1, p).map_err(|e| e.to_string())?;
        ensure!(jd == jb, "p={p}: {jd} vs {jb}");
    }
    Ok("jk_double(1,5) = J of K''(2,1); q0 case matches K''(p+1,p) for p ≤ 6".into())
}

fn c15_fiedler(_: Level) -> Check {
    let c = CableType::new(vec![(2, 3), (2, 15)]).expect("valid type");
    let bound = fiedler_bound(&c);
    ensure!(bound == 1, "Fiedler bound {bound}");
    let v = classify_algebraic(&c).map_err(|e| e.to_string())?;
    ensure!(v.h.lower >= 2 && !v.h.exact, "classification gave {}", v.h);
    Ok(format!("bound 1, classification {}", v.h))
}

type CheckFn = fn(Level) -> Check;

const CHECKS: [CheckFn; 15] = [
    c1_pd_oracle,
    c2_strategies,
    c3_framing,
    c4_uv,
    c5_branches,
    c6_table,
    c7_distinct,
    c8_coefficients,
    c9_mirror,
    c10_torus_hopf,
    c11_crossings,
    c12_two_routes,
    c13_gaps,
    c14_double,
    c15_fiedler,
];

/// Runs one criterion, `id` in `1..=15`.
pub fn run_criterion(id: u8, level: Level) -> Option<CriterionReport> {
    let idx = usize::from(id).checked_sub(1)?;
    let check = *CHECKS.get(idx)?;
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| check(level))
        .unwrap_or_else(|_| Err("check panicked".to_string()));
    let elapsed_ms = start.elapsed().as_millis();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionReport { id, title: TITLES[idx], passed, detail, elapsed_ms })
}

/// Runs all fifteen criteria in parallel; the reports come back in order.
pub fn run_suite(level: Level) -> Vec<CriterionReport> {
    thread::scope(|s| {
        let handles: Vec<_> = (1..=15u8).map(|id| s.spawn(move || run_criterion(id, level))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread").expect("valid id"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parse() {
        assert_eq!("quick".parse::<Level>().unwrap(), Level::Quick);
        assert!("slow".parse::<Level>().is_err());
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [6, 10, 11, 14, 15] {
            let r = run_criterion(id, Level::Quick).unwrap();
            assert!(r.passed, "{r}");
        }
        assert!(run_criterion(0, Level::Quick).is_none());
        assert!(run_criterion(16, Level::Quick).is_none());
    }

    #[test]
    fn torus_hopf_expectations() {
        assert_eq!(expected_torus_hopf(3, 1), HopfInfo::exact(0));
        assert_eq!(expected_torus_hopf(2, 7), HopfInfo::interval(2, Some(3)));
    }
}
