//! `mackey-witt`: norms, twisted Hochschild homology, Witt vectors and TR
//! towers for Green functors over cyclic groups.

mod table;

use std::fmt::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mackey_witt::arith::is_prime;
use mackey_witt::cycmonoid::{monoid_algebra, splitting_check, Levels, PointedGMonoid};
use mackey_witt::geomfix::tr_tower;
use mackey_witt::hochschild::{hh, twisted_cyclic_nerve};
use mackey_witt::mackey::json::{canonical_form, mackey_json, SCHEMA};
use mackey_witt::mackey::{burnside, fixed_point_green, ActionRing, GreenFunctor, GroupContext};
use mackey_witt::norm::norm_trivial_ring;
use mackey_witt::suites::{run_suite, SUITES};
use mackey_witt::wittcore::BaseRing;
use mackey_witt::wittgreen::{compare_with_classical, witt_green, witt_json};
use mackey_witt::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "mackey-witt", version, about = "Exact computations with Green functors over cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The norm of a ring with trivial action from e to C_n.
    Norm(Basic),
    /// Twisted Hochschild homology of the norm, degree by degree.
    Hh {
        #[command(flatten)]
        basic: Basic,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Witt vectors of the norm against classical big Witt vectors.
    Witt(Basic),
    /// The algebraic TR tower of a ring over C_{p^s}.
    Tr {
        #[arg(long)]
        ring: BaseRing,
        /// Prime; defaults to the characteristic of an F_p ring.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 3)]
        stages: u32,
        /// Homological degree.
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run property suites.
    Check {
        /// Suite names, comma separated, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Monoid algebra of a pointed C_n-monoid and the splitting comparison.
    Monoid {
        /// "Z", "Z/m", "F_p" (trivial action, fixed points) or "A" (Burnside).
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long)]
        n: u64,
        /// "trivial", "dual", "swap", a JSON file, or inline JSON.
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 0)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Basic {
    #[arg(long)]
    ring: BaseRing,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_)
            | Error::UnsupportedRing(_)
            | Error::Divisibility(..)
            | Error::ActionOrder(_)
            | Error::TorsionRing(_)
            | Error::TruncationTooShort { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            let reason: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with("Usage:") && !l.starts_with("For more")).collect();
            eprintln!("{}", reason.join(" "));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(1)
        }
    }
}

fn positive(n: u64) -> Result<u64, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(n)
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Norm(b) => norm(b),
        Command::Hh { basic, max_degree } => hochschild(basic, max_degree),
        Command::Witt(b) => witt(b),
        Command::Tr { ring, p, stages, degree, json } => tr(ring, p, stages, degree, json),
        Command::Check { suite, seed, json } => check(&suite, seed, json),
        Command::Monoid { ring, n, monoid, max_degree, json } => monoid_cmd(&ring, n, &monoid, max_degree, json),
    }
}

fn norm(b: Basic) -> Outcome {
    let n = positive(b.n)?;
    let norm = norm_trivial_ring(b.ring, n)?;
    if b.json {
        return Ok(pretty(&json!({
            "schema": SCHEMA,
            "command": "norm",
            "ring": b.ring.to_string(),
            "n": n,
            "functor": mackey_json(norm.mackey()),
        })));
    }
    Ok(table::mackey(&format!("norm of {} to C_{n}", b.ring), norm.mackey()))
}

fn hochschild(b: Basic, max_degree: usize) -> Outcome {
    let n = positive(b.n)?;
    let norm = norm_trivial_ring(b.ring, n)?;
    let nerve = twisted_cyclic_nerve(norm.green(), max_degree + 1)?;
    let groups = (0..=max_degree).map(|k| hh(&nerve, k)).collect::<Result<Vec<_>, _>>()?;
    if b.json {
        let degrees: Vec<Value> = groups.iter().enumerate().map(|(k, h)| json!({"degree": k, "functor": mackey_json(&h.functor)})).collect();
        return Ok(pretty(&json!({
            "schema": SCHEMA,
            "command": "hh",
            "ring": b.ring.to_string(),
            "n": n,
            "max_degree": max_degree,
            "homology": degrees,
        })));
    }
    let mut out = String::new();
    for (k, h) in groups.iter().enumerate() {
        if h.functor.is_zero() {
            writeln!(out, "HH_{k} = 0").unwrap();
        } else {
            out.push_str(&table::mackey(&format!("HH_{k} of the norm of {} to C_{n}", b.ring), &h.functor));
        }
    }
    Ok(out)
}

fn witt(b: Basic) -> Outcome {
    let n = positive(b.n)?;
    let w = witt_green(b.ring, n)?;
    let cmp = compare_with_classical(&w)?;
    let verdict = if cmp.passed() { "isomorphic" } else { "not isomorphic" };
    let out = if b.json {
        let mut v = witt_json(&w)?;
        let obj = v.as_object_mut().expect("object");
        obj.insert("command".into(), json!("witt"));
        obj.insert("verdict".into(), json!(verdict));
        pretty(&v)
    } else {
        let classical = w.norm().expect("built from a ring").mackey().level(n).canonical_form();
        let mut out = table::mackey(&format!("W_C_{n}({}) as a Green functor", b.ring), w.mackey());
        writeln!(out, "classical W_<{n}>({}): {classical}", b.ring).unwrap();
        writeln!(out, "Green top level:     {}", w.mackey().level(n).canonical_form()).unwrap();
        let how = if cmp.exhaustive { "all pairs" } else { "basis pairs" };
        writeln!(out, "products checked on {} {how}", cmp.pairs_checked).unwrap();
        if let Some(g) = cmp.ghost {
            writeln!(out, "ghost components agree: {g}").unwrap();
        }
        writeln!(out, "verdict: {verdict}").unwrap();
        out
    };
    if !cmp.passed() {
        print!("{out}");
        return Err(Failure::Internal(format!("Witt comparison failed for {} and n = {n}", b.ring)));
    }
    Ok(out)
}

fn tr(ring: BaseRing, p: Option<u64>, stages: u32, degree: usize, json_out: bool) -> Outcome {
    let p = match (p, ring) {
        (Some(p), _) => p,
        (None, BaseRing::IntegersMod(m)) if is_prime(m) => m,
        _ => return Err(Failure::Usage("tr needs --p when the ring is not F_p".into())),
    };
    if !is_prime(p) {
        return Err(Failure::Usage(format!("--p {p} is not prime")));
    }
    if stages == 0 {
        return Err(Failure::Usage("--stages must be at least 1".into()));
    }
    let tower = tr_tower(ring, p, stages, degree)?;
    if json_out {
        let mut v = tower.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.insert("ring".into(), json!(ring.to_string()));
        return Ok(pretty(&v));
    }
    let mut out = String::new();
    writeln!(out, "TR_{degree} of {ring} at p = {p}").unwrap();
    for (s, st) in tower.stages.iter().enumerate() {
        write!(out, "  C_{:<4} {}", st.n, st.group).unwrap();
        if s > 0 {
            write!(out, "   map to C_{}: {}", tower.stages[s - 1].n, table::matrix(&tower.maps[s - 1])).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "  limit: {} (precision {})", tower.limit.description, tower.limit.precision).unwrap();
    Ok(out)
}

fn check(suite: &str, seed: u64, json_out: bool) -> Outcome {
    let names: Vec<&str> = if suite.trim() == "all" { SUITES.to_vec() } else { suite.split(',').map(str::trim).collect() };
    if let Some(bad) = names.iter().find(|s| !SUITES.contains(s)) {
        return Err(Failure::Usage(format!("unknown suite {bad:?}; expected one of {} or all", SUITES.join(", "))));
    }
    let reports = names.iter().map(|s| run_suite(s, seed)).collect::<Result<Vec<_>, _>>().map_err(|e| Failure::Internal(e.to_string()))?;
    let healthy = reports.iter().all(|r| r.passed());
    let out = if json_out {
        let suites: Vec<Value> = reports.iter().map(|r| json!({"name": r.name, "cases": r.cases, "failures": r.failures, "passed": r.passed()})).collect();
        pretty(&json!({"schema": SCHEMA, "command": "check", "seed": seed, "suites": suites, "passed": healthy}))
    } else {
        let mut out = String::new();
        for r in &reports {
            writeln!(out, "{:<5} {:<12} {} cases", if r.passed() { "PASS" } else { "FAIL" }, r.name, r.cases).unwrap();
            for f in &r.failures {
                writeln!(out, "      {f}").unwrap();
            }
        }
        out
    };
    if !healthy {
        print!("{out}");
        return Err(Failure::Internal("property suite failures".into()));
    }
    Ok(out)
}

fn read_monoid(n: u64, input: &str) -> Result<PointedGMonoid, Failure> {
    let m = match input {
        "trivial" => PointedGMonoid::trivial(n),
        "dual" => PointedGMonoid::dual_numbers(n),
        "swap" => PointedGMonoid::swapped_square_zero(n)?,
        s if s.trim_start().starts_with('{') => PointedGMonoid::from_json(n, s)?,
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            PointedGMonoid::from_json(n, &text)?
        }
    };
    Ok(m)
}

fn coefficients(ring: &str, n: u64) -> Result<GreenFunctor, Failure> {
    let ctx = GroupContext::new(n)?;
    if ring.trim() == "A" {
        return Ok(burnside(ctx));
    }
    let action = match ring.parse::<BaseRing>()? {
        BaseRing::Integers => ActionRing::integers(),
        BaseRing::IntegersMod(m) => ActionRing::trivial_cyclic(m),
    };
    Ok(fixed_point_green(ctx, &action)?)
}

fn monoid_cmd(ring: &str, n: u64, input: &str, max_degree: usize, json_out: bool) -> Outcome {
    let n = positive(n)?;
    let m = read_monoid(n, input)?;
    let r = coefficients(ring, n)?;
    if !m.is_commutative() {
        return Err(Failure::Usage("the splitting comparison needs a commutative monoid".into()));
    }
    let algebra = monoid_algebra(&r, &m)?;
    let report = splitting_check(&r, &m, max_degree)?;
    let out = if json_out {
        let forms = |f: &Levels| -> Value { Value::Object(f.iter().map(|(d, cf)| (d.to_string(), canonical_form(cf))).collect()) };
        let degrees: Vec<Value> =
            report.degrees.iter().map(|(k, a, b)| json!({"degree": k, "monoid_algebra": forms(a), "cellular": forms(b), "agree": a == b})).collect();
        pretty(&json!({
            "schema": SCHEMA,
            "command": "monoid",
            "ring": ring.trim(),
            "n": n,
            "elements": m.names,
            "algebra": mackey_json(algebra.mackey()),
            "splitting": degrees,
            "passed": report.passed(),
        }))
    } else {
        let mut out = table::mackey(&format!("{}[M] over C_{n}, M = {{{}}}", ring.trim(), m.names.join(", ")), algebra.mackey());
        for (k, a, b) in &report.degrees {
            let show = |f: &Levels| f.iter().map(|(d, cf)| format!("C_{d}: {cf}")).collect::<Vec<_>>().join(", ");
            writeln!(out, "HH_{k} of R[M]:          {}", show(a)).unwrap();
            writeln!(out, "H_{k} of HC(R) [] C(N M): {}", show(b)).unwrap();
        }
        writeln!(out, "splitting: {}", if report.passed() { "agrees" } else { "disagrees" }).unwrap();
        out
    };
    if !report.passed() {
        print!("{out}");
        return Err(Failure::Internal("splitting comparison disagrees".into()));
    }
    Ok(out)
}
