use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use hopfknot::cabling::{
    check_gap_prediction, classify_algebraic, colored_jones, j_from_colored, jones_any, l_sequence,
    lemma_ls_value,
};
use hopfknot::closedform::{bracket, bracket_family, writhe, BracketStrategy};
use hopfknot::jclass::{enumerate_family, hopf_number, identify, j_polynomial, rolfsen_name, rolfsen_table};
use hopfknot::pdoracle::{jones_from_pd, kauffman_bracket_pd, torus_braid_pd, PlanarDiagram};
use hopfknot::verify::{run_suite, Level};
use hopfknot::{CableType, Error, KnotId, LaurentPoly, Var};
use serde_json::{json, Value};

use crate::expr::parse_knot_expr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONSTRAINT: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hopfknot", version, about = "Exact Jones-type invariants of knots with small Hopf crossing number")]
struct Cli {
    /// Output format; csv applies to `table` and `enumerate` only.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VarArg {
    T,
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Recursion,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Jones polynomial.
    Jones {
        expr: String,
        #[arg(long, value_enum, ignore_case = true, default_value_t = VarArg::T)]
        var: VarArg,
    },
    /// Kauffman bracket of the standard arrow diagram, with its writhe.
    Bracket {
        expr: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Closed)]
        strategy: StrategyArg,
    },
    /// J-polynomial, (1 - t^2) V shifted to lowest degree zero.
    Jpoly { expr: String },
    /// Gap signature of the J-polynomial.
    Gaps { expr: String },
    /// Knots with Hopf crossing number at most one having the given J.
    Identify {
        #[arg(long)]
        poly: String,
    },
    /// The eight knots with h = 1 and at most ten crossings.
    Table,
    /// Census of canonical h ≤ 1 knots by J-span.
    Enumerate {
        #[arg(long)]
        max_span: i64,
    },
    /// Colored Jones polynomial V_K(n) in A.
    Colored {
        expr: String,
        #[arg(long)]
        color: i64,
    },
    /// Classification of an algebraic (iterated torus) knot.
    Algebraic { expr: String },
    /// Bracket and Jones polynomial of a planar diagram code.
    PdBracket {
        #[arg(long)]
        pd: String,
    },
    /// Planar diagram of T(m,n) as a braid closure.
    PdTorus { m: i64, n: i64 },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Include per-criterion wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

/// Result of one invocation: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Constraint(_)
        | Error::Unsupported(_)
        | Error::NestedUnsupported
        | Error::InvalidDiagram(_)
        | Error::NotAKnot { .. }
        | Error::StateBudgetExceeded { .. } => EXIT_CONSTRAINT,
        Error::LemmaViolation(_) => EXIT_VERIFY,
        _ => EXIT_INTERNAL,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(exit_code(&e), format!("error: {e}"))
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(EXIT_PARSE, text) } else { Outcome::ok(text) };
        }
    };
    if cli.format == Format::Csv && !matches!(cli.command, Command::Table | Command::Enumerate { .. }) {
        return Outcome::fail(EXIT_PARSE, "error: --format csv is only available for table and enumerate");
    }
    match dispatch(cli.command, cli.format) {
        Ok(o) => o,
        Err(e) => e.into(),
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json_line(v: &Value) -> String {
    line(serde_json::to_string(v).expect("JSON values serialize"))
}

fn poly_json(p: &LaurentPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn is_iterated(k: &KnotId) -> bool {
    match k {
        KnotId::IteratedTorus(_) => true,
        KnotId::Mirror(inner) => is_iterated(inner),
        _ => false,
    }
}

fn j_any(k: &KnotId) -> hopfknot::Result<LaurentPoly> {
    match k {
        KnotId::IteratedTorus(_) => j_from_colored(k),
        KnotId::Mirror(inner) if is_iterated(inner) => Ok(hopfknot::jclass::mirror_j(&j_from_colored(inner)?)),
        _ => j_polynomial(k),
    }
}

fn dispatch(cmd: Command, format: Format) -> hopfknot::Result<Outcome> {
    let json = format == Format::Json;
    Ok(match cmd {
        Command::Jones { expr, var } => {
            let k = parse_knot_expr(&expr)?;
            let mut v = jones_any(&k)?;
            if var == VarArg::A {
                v = v.convert(Var::A)?;
            }
            Outcome::ok(if json { json_line(&poly_json(&v)) } else { line(v) })
        }
        Command::Bracket { expr, strategy } => {
            let k = parse_knot_expr(&expr)?;
            let strategy = match strategy {
                StrategyArg::Recursion => BracketStrategy::Recursion,
                StrategyArg::Closed => BracketStrategy::Closed,
            };
            let br = match k.family() {
                Some((which, a, b)) => bracket_family(which, a, b, strategy)?,
                None => bracket(&k)?,
            };
            let w = writhe(&k)?;
            Outcome::ok(if json {
                json_line(&json!({"knot": k.to_string(), "bracket": poly_json(&br), "writhe": w}))
            } else {
                format!("bracket: {br}\nwrithe: {w}\n")
            })
        }
        Command::Jpoly { expr } => {
            let j = j_any(&parse_knot_expr(&expr)?)?;
            Outcome::ok(if json { json_line(&poly_json(&j)) } else { line(j) })
        }
        Command::Gaps { expr } => {
            let g = j_any(&parse_knot_expr(&expr)?)?.gap_signature()?;
            Outcome::ok(if json {
                json_line(&json!({
                    "lowest_sign": g.lowest_sign,
                    "gaps": g.gaps,
                    "coefficients": g.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }))
            } else {
                line(g)
            })
        }
        Command::Identify { poly } => {
            let q = LaurentPoly::parse_with_default(&poly, Var::T)?;
            if q.var() != Var::T {
                return Err(Error::Parse { pos: 0, msg: "J-polynomials are written in t".into() });
            }
            let r = identify(&q);
            let names: Vec<String> = r.matches.iter().map(|k| k.to_string()).collect();
            Outcome::ok(if json {
                json_line(&json!({"matches": names, "ambiguous": r.ambiguous, "note": r.note}))
            } else {
                let shown = if names.is_empty() { "none".to_string() } else { names.join(", ") };
                format!("matches: {shown}\nambiguous: {}\nnote: {}\n", r.ambiguous, r.note)
            })
        }
        Command::Table => {
            let rows = rolfsen_table().into_iter().map(|(k, name)| (k, Some(name))).collect();
            table_output(rows, format)?
        }
        Command::Enumerate { max_span } => {
            if max_span < 0 {
                return Err(Error::Constraint(format!("max span must be nonnegative, got {max_span}")));
            }
            let rows = enumerate_family(max_span).into_iter().map(|(k, _)| (k.clone(), rolfsen_name(&k))).collect();
            table_output(rows, format)?
        }
        Command::Colored { expr, color } => {
            let v = colored_jones(&parse_knot_expr(&expr)?, color)?;
            Outcome::ok(if json { json_line(&poly_json(&v)) } else { line(v) })
        }
        Command::Algebraic { expr } => algebraic(&expr, json)?,
        Command::PdBracket { pd } => {
            let d: PlanarDiagram = pd.parse()?;
            let br = kauffman_bracket_pd(&d)?;
            let comps = d.components();
            let v = if comps == 1 { Some(jones_from_pd(&d)?) } else { None };
            Outcome::ok(if json {
                json_line(&json!({
                    "crossings": d.crossing_count(),
                    "components": comps,
                    "writhe": d.writhe(),
                    "bracket": poly_json(&br),
                    "jones": v.as_ref().map(poly_json),
                }))
            } else {
                let mut s = format!(
                    "crossings: {}\ncomponents: {comps}\nwrithe: {}\nbracket: {br}\n",
                    d.crossing_count(),
                    d.writhe()
                );
                if let Some(v) = v {
                    let _ = writeln!(s, "jones: {v}");
                }
                s
            })
        }
        Command::PdTorus { m, n } => {
            let d = torus_braid_pd(m, n)?;
            let v = jones_from_pd(&d)?;
            Outcome::ok(if json {
                json_line(&json!({"pd": d.to_string(), "jones": poly_json(&v)}))
            } else {
                format!("pd: {d}\njones: {v}\n")
            })
        }
        Command::Verify { level, timings } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let reports = run_suite(level);
            let all = reports.iter().all(|r| r.passed);
            let out = if json {
                let items: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        let mut v = json!({"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail});
                        if timings {
                            v["elapsed_ms"] = json!(r.elapsed_ms as u64);
                        }
                        v
                    })
                    .collect();
                json_line(&json!({"level": level, "passed": all, "criteria": items}))
            } else {
                let mut s = String::new();
                for r in &reports {
                    let verdict = if r.passed { "PASS" } else { "FAIL" };
                    let _ = write!(s, "{verdict} {:>2} {}", r.id, r.title);
                    if timings {
                        let _ = write!(s, " ({} ms)", r.elapsed_ms);
                    }
                    let _ = writeln!(s, ": {}", r.detail);
                }
                s
            };
            Outcome { code: if all { EXIT_OK } else { EXIT_VERIFY }, stdout: out, stderr: String::new() }
        }
    })
}

fn row_fields(k: &KnotId) -> (String, String, String) {
    match (k, k.family()) {
        (_, Some((f, a, b))) => (f.symbol().to_string(), a.to_string(), b.to_string()),
        (KnotId::Tn(n), _) => ("Tn".to_string(), n.to_string(), String::new()),
        _ => (k.to_string(), String::new(), String::new()),
    }
}

fn table_output(rows: Vec<(KnotId, Option<&'static str>)>, format: Format) -> hopfknot::Result<Outcome> {
    let mut records = Vec::with_capacity(rows.len());
    for (k, name) in rows {
        let j = j_polynomial(&k)?;
        let (fam, a, b) = row_fields(&k);
        records.push([fam, a, b, name.unwrap_or("").to_string(), j.to_string()]);
    }
    const HEADER: [&str; 5] = ["family", "a", "b", "rolfsen", "j_polynomial"];
    Ok(Outcome::ok(match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADER).map_err(|e| Error::Unsupported(e.to_string()))?;
            for r in &records {
                w.write_record(r).map_err(|e| Error::Unsupported(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Unsupported(e.to_string()))?;
            String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8")
        }
        Format::Json => {
            let items: Vec<Value> = records
                .iter()
                .map(|r| {
                    let obj: serde_json::Map<String, Value> =
                        HEADER.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect();
                    Value::Object(obj)
                })
                .collect();
            json_line(&Value::Array(items))
        }
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let knot = if r[2].is_empty() { format!("{}({})", r[0], r[1]) } else { format!("{}({},{})", r[0], r[1], r[2]) };
                let name = if r[3].is_empty() { "-" } else { &r[3] };
                let _ = writeln!(s, "{knot:<10} {name:<24} {}", r[4]);
            }
            s
        }
    }))
}

fn algebraic(expr: &str, json: bool) -> hopfknot::Result<Outcome> {
    let k = parse_knot_expr(expr)?;
    let c = match &k {
        KnotId::IteratedTorus(c) => c.clone(),
        KnotId::Torus(p, q) => CableType::new(vec![(*p, *q)])?,
        _ => return Err(Error::Constraint(format!("{k} is not an iterated torus knot"))),
    };
    let verdict = classify_algebraic(&c)?;
    let ls = l_sequence(&c);
    let lemma = lemma_ls_value(&c);
    let mut gaps = Vec::new();
    let mut gap_note = None;
    let mut mismatch = false;
    for n in 2..=3 {
        match check_gap_prediction(&c, n) {
            Ok(chk) => {
                mismatch |= !chk.matches();
                gaps.push(chk);
            }
            Err(e @ Error::LemmaViolation(_)) => {
                gap_note = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let torus_h = match &k {
        KnotId::Torus(..) => Some(hopf_number(&k)?),
        _ => None,
    };
    let h = torus_h.unwrap_or(verdict.h);
    let out = if json {
        json_line(&json!({
            "type": c.to_string(),
            "l_sequence": ls,
            "lemma_ls": lemma,
            "gap_predictions": gaps.iter().map(|g| json!({
                "n": g.predicted.n,
                "top": g.predicted.top,
                "gaps": g.predicted.gaps,
                "actual_top": g.actual_top,
                "actual_gaps": g.actual_gaps,
                "matches": g.matches(),
            })).collect::<Vec<_>>(),
            "gap_note": gap_note,
            "h": {"lower": h.lower, "upper": h.upper, "exact": h.exact},
            "matched_knot": verdict.matched_knot.as_ref().map(|m| m.to_string()),
            "c_alg": verdict.c_alg,
            "fiedler_lower_bound": verdict.fiedler_lower_bound,
            "fiedler_hypothesis_holds": verdict.fiedler_hypothesis,
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "type: {c}");
        let ls_text: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(s, "l-sequence: ({})", ls_text.join(", "));
        if let Some(v) = lemma {
            let _ = writeln!(s, "lemma ls value: {v}");
        }
        for g in &gaps {
            let pred = g.predicted.gaps.map(|x| format!("{x:?}")).unwrap_or_default();
            let _ = writeln!(
                s,
                "gaps n={}: predicted top {} gaps {pred}, computed top {} gaps {:?}{}",
                g.predicted.n,
                g.predicted.top,
                g.actual_top,
                g.actual_gaps,
                if g.matches() { "" } else { "  MISMATCH" }
            );
        }
        if let Some(n) = &gap_note {
            let _ = writeln!(s, "gap predictions: not applicable ({n})");
        }
        let _ = writeln!(s, "hopf crossing number: {h}");
        if let Some(m) = &verdict.matched_knot {
            let _ = writeln!(s, "matched knot: {m}");
        }
        if let Some(x) = verdict.c_alg {
            let _ = writeln!(s, "c_alg: {x}");
        }
        let flag = if verdict.fiedler_hypothesis { "" } else { " (q1 < 2p1 fails, bound stated outside its hypothesis)" };
        let _ = writeln!(s, "fiedler lower bound: {}{flag}", verdict.fiedler_lower_bound);
        s
    };
    let code = if mismatch { EXIT_VERIFY } else { EXIT_OK };
    Ok(Outcome { code, stdout: out, stderr: String::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("hopfknot").chain(args.iter().copied()))
    }

    #[test]
    fn exit_code_table() {
        assert_eq!(exit_code(&Error::Parse { pos: 0, msg: String::new() }), EXIT_PARSE);
        assert_eq!(exit_code(&Error::Constraint(String::new())), EXIT_CONSTRAINT);
        assert_eq!(exit_code(&Error::LemmaViolation(String::new())), EXIT_VERIFY);
        assert_eq!(exit_code(&Error::NonzeroRemainder), EXIT_INTERNAL);
    }

    #[test]
    fn csv_only_for_tables() {
        assert_eq!(go(&["jones", "T(2,3)", "--format", "csv"]).code, EXIT_PARSE);
        assert_eq!(go(&["table", "--format", "csv"]).code, EXIT_OK);
    }

    #[test]
    fn torus_algebraic_uses_torus_rule() {
        let o = go(&["algebraic", "T(2,9)"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert!(o.stdout.contains("2 ≤ h ≤ 3"), "{}", o.stdout);
    }
}
