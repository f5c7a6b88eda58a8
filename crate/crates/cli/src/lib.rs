//! The `sturmkit` command line as a library: [`run`] maps an argument list to
//! an exit code and rendered output, so tests can drive it without a process.

mod args;
mod text;

use std::fmt;

use clap::Parser;
use num_bigint::BigInt;
use serde_json::{json, Value};

use sturmkit::cfrac::{self, ContinuedFraction};
use sturmkit::decision::Decision;
use sturmkit::denjoy::{self, DenjoyParams};
use sturmkit::iet::{self, IetSpec};
use sturmkit::moebius::{self, Mat2};
use sturmkit::realnum::parse_values;
use sturmkit::sturmian::{self, SturmianParams, Word};
use sturmkit::{decide, json as sj, Error, RealValue};

use args::{CfCmd, Cli, Command, DecideCmd, DenjoyCmd, DenjoyInput, DenjoyInput2, IetCmd, IetInput, IetInput2, MatCmd, SturmianCmd};

pub const EXIT_ERROR: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of one command before the output format is chosen.
struct Reply {
    json: Value,
    text: String,
    code: i32,
}

impl Reply {
    fn ok(json: Value, text: impl Into<String>) -> Reply {
        Reply { json, text: text.into(), code: 0 }
    }

    fn decision(d: &Decision) -> Reply {
        Reply { json: sj::decision(d), text: text::decision(d), code: d.verdict.exit_code() }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Input { input: String, pos: usize, msg: String },
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Input { input, pos, msg } => {
                let col = input.get(..*pos).map_or(*pos, |p| p.chars().count());
                write!(f, "parse error at byte {pos}: {msg}\n  {input}\n  {}^", " ".repeat(col))
            }
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl Failure {
    fn json(&self) -> Value {
        match self {
            Failure::Lib(e) => sj::error(e),
            Failure::Input { input, pos, msg } => {
                sj::document(json!({"error": format!("parse error at byte {pos}: {msg}"), "input": input, "pos": pos}))
            }
            Failure::Usage(m) => sj::document(json!({"error": m})),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run<S: AsRef<str>>(args: &[S]) -> Outcome {
    let argv = std::iter::once("sturmkit").chain(args.iter().map(|a| a.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    if let Command::Batch { file } = &cli.command {
        return batch(file);
    }
    match execute(&cli) {
        Ok(r) if cli.json => Outcome { code: r.code, stdout: format!("{}\n", sj::document(r.json)), stderr: String::new() },
        Ok(r) => Outcome { code: r.code, stdout: format!("{}\n", r.text), stderr: String::new() },
        Err(f) => {
            let code = if matches!(f, Failure::Usage(_)) { EXIT_USAGE } else { EXIT_ERROR };
            if cli.json {
                Outcome { code, stdout: format!("{}\n", f.json()), stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("error: {f}\n") }
            }
        }
    }
}

/// One JSON invocation per line, either `["cf", "expand", ...]` or
/// `{"argv": [...]}`; each yields one JSON line, in input order.
fn batch(file: &str) -> Outcome {
    let content = if file == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(file)
    };
    let content = match content {
        Ok(c) => c,
        Err(e) => return Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {file}: {e}\n") },
    };
    let mut stdout = String::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record = match batch_argv(line) {
            Ok(argv) if argv.first().map(String::as_str) == Some("batch") => {
                json!({"line": i + 1, "exit": EXIT_USAGE, "error": "nested batch"})
            }
            Ok(mut argv) => {
                if !argv.iter().any(|a| a == "--json") {
                    argv.push("--json".into());
                }
                let out = run(&argv);
                let result: Value = serde_json::from_str(out.stdout.trim()).unwrap_or(Value::Null);
                let mut r = json!({"line": i + 1, "argv": argv, "exit": out.code, "result": result});
                if !out.stderr.is_empty() {
                    r["error"] = json!(out.stderr.trim_end());
                }
                r
            }
            Err(e) => json!({"line": i + 1, "exit": EXIT_USAGE, "error": e}),
        };
        stdout.push_str(&sj::document(record).to_string());
        stdout.push('\n');
    }
    Outcome { code: 0, stdout, stderr: String::new() }
}

fn batch_argv(line: &str) -> std::result::Result<Vec<String>, String> {
    let v: Value = serde_json::from_str(line).map_err(|e| format!("bad JSON: {e}"))?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o.get("argv").and_then(Value::as_array).ok_or("object needs an \"argv\" array")?,
        _ => return Err("expected an array or an object".into()),
    };
    list.iter().map(|x| x.as_str().map(String::from).ok_or_else(|| "argv entries must be strings".to_string())).collect()
}

fn execute(cli: &Cli) -> CliResult<Reply> {
    let prec = cli.precision;
    match &cli.command {
        Command::Cf(c) => cf_cmd(c, prec),
        Command::Mat(c) => mat_cmd(c, prec),
        Command::Sturmian(c) => sturmian_cmd(c, prec),
        Command::Denjoy(c) => denjoy_cmd(c, prec),
        Command::Iet(c) => iet_cmd(c, prec),
        Command::Decide(c) => decide_cmd(c, prec),
        Command::Batch { .. } => unreachable!("handled in run"),
    }
}

// ------------------------------------------------------------- inputs

fn located(input: &str, e: Error) -> Failure {
    match e {
        Error::Parse { pos, msg } => Failure::Input { input: input.to_string(), pos, msg },
        other => Failure::Lib(other),
    }
}

fn num(text: &str, prec: u32) -> CliResult<RealValue> {
    Ok(parse_values(&[text], prec).map_err(|e| located(text, e))?.remove(0))
}

/// Parses several literals into one shared basis.
fn nums(texts: &[String], prec: u32) -> CliResult<Vec<RealValue>> {
    for t in texts {
        parse_values(&[t], prec).map_err(|e| located(t, e))?;
    }
    Ok(parse_values(texts, prec)?)
}

/// Splits on commas outside parentheses, so `root(2,3)` stays whole.
fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// `a,b,c,d` or `(a b / c d)` with rational entries.
fn matrix(s: &str) -> CliResult<Mat2> {
    let cleaned: String = s.chars().map(|c| if "()/,;".contains(c) { ' ' } else { c }).collect();
    let parts: Vec<&str> = cleaned.split_whitespace().collect();
    // `(1 1/2 / 0 1)` would be ambiguous; entries with fractions use the comma form
    let parts: Vec<String> = if s.contains(',') { split_list(s.trim_matches(|c| c == '(' || c == ')')) } else { parts.iter().map(|p| p.to_string()).collect() };
    if parts.len() != 4 {
        return Err(Failure::Usage(format!("matrix needs 4 entries, got {}", parts.len())));
    }
    let mut e = Vec::new();
    for p in &parts {
        let v = num(p, 100)?;
        e.push(v.rational_value().cloned().ok_or_else(|| Failure::Usage(format!("matrix entry {p} is not rational")))?);
    }
    let [a, b, c, d]: [_; 4] = e.try_into().expect("four entries");
    Ok(Mat2::new(a, b, c, d)?)
}

fn load_json(source: &str) -> CliResult<Value> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source).map_err(|e| Failure::Usage(format!("{source}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{source}: {e}")))
}

fn iet_from(perm: &Option<String>, lengths: &Option<String>, file: &Option<String>, prec: u32) -> CliResult<IetSpec> {
    match (perm, lengths, file) {
        (_, _, Some(f)) => Ok(sj::parse_iet(&load_json(f)?, prec)?),
        (Some(p), Some(l), None) => {
            let perm = split_list(p)
                .iter()
                .map(|x| x.parse::<usize>().map_err(|_| Failure::Usage(format!("bad permutation entry {x:?}"))))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(iet::new_iet(&perm, &nums(&split_list(l), prec)?)?)
        }
        _ => Err(Failure::Usage("an IET needs --perm and --lengths, or --iet".into())),
    }
}

fn iet1(t: &IetInput, prec: u32) -> CliResult<IetSpec> {
    iet_from(&t.perm, &t.lengths, &t.iet, prec)
}

fn iet2(t: &IetInput2, prec: u32) -> CliResult<IetSpec> {
    iet_from(&t.perm2, &t.lengths2, &t.iet2, prec)
        .map_err(|e| if let Failure::Usage(_) = e { Failure::Usage("the second IET needs --perm2 and --lengths2, or --iet2".into()) } else { e })
}

fn denjoy_from(rho: &Option<String>, reps: &Option<String>, file: &Option<String>, prec: u32) -> CliResult<DenjoyParams> {
    match (rho, file) {
        (_, Some(f)) => Ok(sj::parse_denjoy(&load_json(f)?, prec)?),
        (Some(r), None) => {
            let mut all = vec![r.clone()];
            all.extend(reps.as_deref().map(split_list).unwrap_or_default());
            let vals = nums(&all, prec)?;
            Ok(denjoy::normalize(&vals[0], &vals[1..])?)
        }
        _ => Err(Failure::Usage("Denjoy parameters need --rho [--reps], or --params".into())),
    }
}

fn denjoy1(p: &DenjoyInput, prec: u32) -> CliResult<DenjoyParams> {
    denjoy_from(&p.rho, &p.reps, &p.params, prec)
}

fn denjoy2(p: &DenjoyInput2, prec: u32) -> CliResult<DenjoyParams> {
    denjoy_from(&p.rho2, &p.reps2, &p.params2, prec)
        .map_err(|e| if let Failure::Usage(_) = e { Failure::Usage("the second system needs --rho2 [--reps2], or --params2".into()) } else { e })
}

/// A point given in actual coordinates, in the IET's basis.
fn point(t: &IetSpec, text: &str) -> CliResult<RealValue> {
    let x = sturmkit::realnum::parse::parse_in(text, &t.basis()).map_err(|e| located(text, e))?;
    Ok(x.div(t.scale())?)
}

// ------------------------------------------------------------- commands

fn cf_cmd(c: &CfCmd, prec: u32) -> CliResult<Reply> {
    match c {
        CfCmd::Expand { x, periodic: true, .. } => {
            let e = cfrac::expand_periodic(&num(x, prec)?)?;
            Ok(Reply::ok(sj::cf(&e), e.to_string()))
        }
        CfCmd::Expand { x, digits, .. } => {
            let d = cfrac::expand_prefix(&num(x, prec)?, *digits)?;
            Ok(Reply::ok(sj::digits(&d), text::digits(&d)))
        }
        CfCmd::From { cf } => {
            let e: ContinuedFraction = cf.parse().map_err(|e| located(cf, e))?;
            let v = cfrac::from_cf(&e)?;
            Ok(Reply::ok(json!({"value": sj::real(&v)}), v.to_string()))
        }
    }
}

fn mat_cmd(c: &MatCmd, prec: u32) -> CliResult<Reply> {
    match c {
        MatCmd::Apply { m, x } => {
            let v = moebius::apply(&matrix(m)?, &num(x, prec)?)?;
            Ok(Reply::ok(json!({"value": sj::real(&v)}), v.to_string()))
        }
        MatCmd::Smith { m } => {
            let f = moebius::smith_factor(&matrix(m)?)?;
            Ok(Reply::ok(sj::smith(&f), format!("U = {}\nm = {}\nV = {}", f.u, f.m, f.v)))
        }
        MatCmd::Stabilizer { x, pgl2 } => {
            let x = num(x, prec)?;
            let s = if *pgl2 { moebius::pgl2_stabilizer(&x)? } else { moebius::stabilizer_matrix(&x)? };
            Ok(Reply::ok(sj::matrix(&s), s.to_string()))
        }
        MatCmd::Pell { disc, m } => {
            let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Failure::Usage(format!("{s:?} is not an integer")));
            let sols = moebius::pell_fundamental(&parse(disc)?, &parse(m)?)?;
            Ok(Reply::ok(sj::pell(&sols), text::pell(&sols)))
        }
    }
}

fn sturmian_params(alpha: &str, prec: u32) -> CliResult<SturmianParams> {
    Ok(SturmianParams::new(num(alpha, prec)?)?)
}

fn sturmian_cmd(c: &SturmianCmd, prec: u32) -> CliResult<Reply> {
    match c {
        SturmianCmd::Window { alpha, i, j } => {
            let w = sturmian::sturmian_window(&sturmian_params(alpha, prec)?, *i, *j)?;
            Ok(Reply::ok(sj::word(&w), w.to_string()))
        }
        SturmianCmd::Factors { alpha, n } => {
            let fs = sturmian::factors(&sturmian_params(alpha, prec)?, *n)?;
            let text = fs.iter().map(Word::text).collect::<Vec<_>>().join("\n");
            Ok(Reply::ok(json!({"count": fs.len(), "factors": fs.iter().map(sj::word).collect::<Vec<_>>()}), text))
        }
        SturmianCmd::State { alpha } => {
            let m = sturmian::state_image(&sturmian_params(alpha, prec)?)?;
            Ok(Reply::ok(sj::zmodule(&m), text::zmodule(&m)))
        }
    }
}

fn denjoy_cmd(c: &DenjoyCmd, prec: u32) -> CliResult<Reply> {
    match c {
        DenjoyCmd::Normalize { p } => {
            let p = denjoy1(p, prec)?;
            let s = denjoy::state_image(&p)?;
            let mut j = sj::denjoy(&p);
            j["state_image"] = sj::denjoy_state(&s);
            Ok(Reply::ok(j, format!("{}\n{}", text::denjoy(&p), text::denjoy_state(&s))))
        }
        DenjoyCmd::Power { p, m } => {
            let p = denjoy::power_params(&denjoy1(p, prec)?, *m)?;
            Ok(Reply::ok(sj::denjoy(&p), text::denjoy(&p)))
        }
        DenjoyCmd::TwoAi { p, q } => Ok(Reply::decision(&denjoy::two_ai_equivalent(&denjoy1(p, prec)?, &denjoy2(q, prec)?)?)),
        DenjoyCmd::Flow { p, q, bound } => {
            Ok(Reply::decision(&denjoy::flow_equivalent(&denjoy1(p, prec)?, &denjoy2(q, prec)?, *bound)?))
        }
        DenjoyCmd::Verify { p, q, m } => {
            let ok = denjoy::verify_isogeny_certificate(&denjoy1(p, prec)?, &denjoy2(q, prec)?, &matrix(m)?)?;
            Ok(Reply { json: json!({"valid": ok}), text: if ok { "valid" } else { "invalid" }.into(), code: if ok { 0 } else { 1 } })
        }
    }
}

fn iet_cmd(c: &IetCmd, prec: u32) -> CliResult<Reply> {
    match c {
        IetCmd::Eval { t, x } => {
            let t = iet1(t, prec)?;
            let y = iet::evaluate(&t, &point(&t, x)?)?.mul(t.scale())?;
            Ok(Reply::ok(json!({"value": sj::real(&y)}), y.to_string()))
        }
        IetCmd::Orbit { t, x, n } => {
            let t = iet1(t, prec)?;
            let w = iet::orbit_word(&t, &point(&t, x)?, *n)?;
            Ok(Reply::ok(sj::word(&w), w.to_string()))
        }
        IetCmd::Keane { t, depth } => Ok(Reply::decision(&iet::keane_check(&iet1(t, prec)?, *depth)?)),
        IetCmd::Rauzy { t, depth } => {
            let p = iet::rauzy_path(&iet1(t, prec)?, *depth)?;
            Ok(Reply::ok(sj::rauzy(&p), text::rauzy(&p)))
        }
        IetCmd::Induce { t, a, b, word, cap } => {
            let t = iet1(t, prec)?;
            let induced = match (a, b, word) {
                (Some(a), Some(b), None) => iet::induce_interval(&t, &point(&t, a)?, &point(&t, b)?, *cap)?,
                (None, None, Some(w)) => iet::induced_on_cylinder(&t, &Word::parse(w, t.d() as u8)?, *cap)?,
                _ => return Err(Failure::Usage("induce needs --a and --b, or --word".into())),
            };
            Ok(Reply::ok(sj::iet(&induced), text::iet(&induced)?))
        }
        IetCmd::Minmodel { t } => {
            let m = iet::minimal_model(&iet1(t, prec)?)?;
            Ok(Reply::ok(sj::iet(&m), text::iet(&m)?))
        }
        IetCmd::Saf { t } => {
            let s = iet::saf(&iet1(t, prec)?)?;
            Ok(Reply::ok(sj::wedge(&s), text::wedge(&s)))
        }
        IetCmd::Invariants { t } => {
            let r = iet::rational_invariants(&iet1(t, prec)?)?;
            Ok(Reply::ok(sj::rational_invariants(&r), text::rational_invariants(&r)))
        }
        IetCmd::Conjugate { t, u, depth } => Ok(Reply::decision(&iet::ies_conjugate(&iet1(t, prec)?, &iet2(u, prec)?, *depth)?)),
        IetCmd::Flow { t, u, depth } => Ok(Reply::decision(&iet::ies_flow_equivalent(&iet1(t, prec)?, &iet2(u, prec)?, *depth)?)),
    }
}

fn decide_cmd(c: &DecideCmd, prec: u32) -> CliResult<Reply> {
    let pair = |a: &str, b: &str| -> CliResult<(RealValue, RealValue)> { Ok((num(a, prec)?, num(b, prec)?)) };
    let d = match c {
        DecideCmd::Conjugate { alpha, beta } => {
            let (a, b) = pair(alpha, beta)?;
            decide::sturmian_conjugate(&a, &b)?
        }
        DecideCmd::Flow { alpha, beta } => {
            let (a, b) = pair(alpha, beta)?;
            decide::sturmian_flow_equivalent(&a, &b)?
        }
        DecideCmd::EventualFlow { alpha, beta, n_max } => {
            let (a, b) = pair(alpha, beta)?;
            decide::sturmian_eventually_flow_equivalent(&a, &b, *n_max)?
        }
        DecideCmd::Isogeny { alpha, beta } => {
            let (a, b) = pair(alpha, beta)?;
            decide::sturmian_isogenous(&a, &b)?
        }
        DecideCmd::Selfmult { alpha, m } => decide::self_mult_equivalent(&num(alpha, prec)?, *m)?,
    };
    Ok(Reply::decision(&d))
}

