//! Command-line front end. `run` takes the argument list and output sinks and returns
//! the process exit code: 0 success, 1 verification failure, 2 bad input.

use crate::algebra::{render_rational, Poly, Rational};
use crate::dessins::{correlator, genus_part, n_kl};
use crate::error::Error;
use crate::hurwitz::{strictly_monotone_hurwitz_capped, HurwitzQuery};
use crate::lue::lue_correlator;
use crate::partitions::Partition;
use crate::report::SCHEMA;
use crate::verify::{parse_suites, run_suite, Orders, SuiteReport};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const WEIGHT_CAP: u32 = 8;
pub const LAMBDA_CAP: u32 = 10;
pub const EPS_CAP: u32 = 8;
pub const PARTS_CAP: usize = 5;
pub const HURWITZ_DEGREE_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "dessin-toda", version, about = "Exact dessin counts, LUE correlators, monotone Hurwitz numbers and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// key=value file with defaults for any flag below; flags given on the command line win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// partition, comma separated (e.g. 3,1,1)
    #[arg(long, global = true)]
    mu: Option<String>,
    /// second partition (Hurwitz)
    #[arg(long, global = true)]
    nu: Option<String>,
    /// genus
    #[arg(long, global = true)]
    g: Option<u32>,
    /// largest |μ| checked by verify (default 8)
    #[arg(long, global = true)]
    weight: Option<u32>,
    /// λ^-k order for resolvent checks (default 10)
    #[arg(long = "lambda-order", global = true)]
    lambda_order: Option<u32>,
    /// ε order for the Barnes correction (default 8)
    #[arg(long = "eps-order", global = true)]
    eps_order: Option<u32>,
    /// output format (default json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// worker threads; output does not depend on it
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// N_{k,l}(μ) with genus labels
    Dessins,
    /// connected LUE correlator ⟨tr M^{μ1}⋯⟩_c in n and a
    Lue,
    /// strictly monotone double Hurwitz number h_g(μ, ν)
    Hurwitz,
    /// connected dessin correlator ⟨τ_μ⟩(n, w) and its genus parts
    Correlator,
    /// run a verification suite: oracles, virasoro, toda, hurwitz, genus, barnes or all
    Verify { suite: String },
}

/// Flags merged with the config file.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub mu: Option<Partition>,
    pub nu: Option<Partition>,
    pub g: Option<u32>,
    pub orders: Orders,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

const CONFIG_KEYS: [&str; 9] = ["mu", "nu", "g", "weight", "lambda-order", "eps-order", "format", "out", "threads"];

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("config line {}: expected key=value", i + 1)))?;
        let k = k.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&k.as_str()) {
            return Err(Error::Input(format!("config line {}: unknown key {:?}", i + 1, k)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.parse().map_err(|_| Error::Input(format!("{}: not a valid number: {:?}", key, v)))
}

fn parse_partition(key: &str, v: &str) -> Result<Partition, Error> {
    let p = Partition::parse(v).map_err(|e| Error::Input(format!("--{}: {}", key, e)))?;
    if p.is_empty() {
        return Err(Error::Input(format!("--{} must be a nonempty partition", key)));
    }
    Ok(p)
}

fn merge(cli: &Cli, file: &BTreeMap<String, String>) -> Result<RunConfig, Error> {
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
    let mut c = RunConfig::default();
    if let Some(v) = pick(cli.mu.clone(), "mu") {
        c.mu = Some(parse_partition("mu", &v)?);
    }
    if let Some(v) = pick(cli.nu.clone(), "nu") {
        c.nu = Some(parse_partition("nu", &v)?);
    }
    if let Some(v) = pick(cli.g.map(|x| x.to_string()), "g") {
        c.g = Some(parse_num("g", &v)?);
    }
    if let Some(v) = pick(cli.weight.map(|x| x.to_string()), "weight") {
        c.orders.weight = parse_num("weight", &v)?;
    }
    if let Some(v) = pick(cli.lambda_order.map(|x| x.to_string()), "lambda-order") {
        c.orders.lambda_order = parse_num("lambda-order", &v)?;
    }
    if let Some(v) = pick(cli.eps_order.map(|x| x.to_string()), "eps-order") {
        c.orders.eps_order = parse_num("eps-order", &v)?;
    }
    c.format = match cli.format {
        Some(f) => Some(f),
        None => match file.get("format") {
            Some(v) => Some(Format::from_str(v, true).map_err(|_| Error::Input(format!("format: expected json, csv or pretty, got {:?}", v)))?),
            None => None,
        },
    };
    c.out = cli.out.clone().or_else(|| file.get("out").map(PathBuf::from));
    if let Some(v) = pick(cli.threads.map(|x| x.to_string()), "threads") {
        c.threads = Some(parse_num("threads", &v)?);
    }
    for (name, v) in [("weight", c.orders.weight), ("lambda-order", c.orders.lambda_order), ("eps-order", c.orders.eps_order)] {
        if v == 0 {
            return Err(Error::Input(format!("--{} must be positive", name)));
        }
    }
    if c.threads == Some(0) {
        return Err(Error::Input("--threads must be positive".into()));
    }
    Ok(c)
}

fn caps_warnings(c: &RunConfig, cmd: &Command) -> Vec<String> {
    let mut w = Vec::new();
    let o = &c.orders;
    if matches!(cmd, Command::Verify { .. }) {
        if o.weight > WEIGHT_CAP {
            w.push(format!("weight {} is above the default cap {}", o.weight, WEIGHT_CAP));
        }
        if o.lambda_order > LAMBDA_CAP {
            w.push(format!("λ-order {} is above the default cap {}", o.lambda_order, LAMBDA_CAP));
        }
        if o.eps_order > EPS_CAP {
            w.push(format!("ε-order {} is above the default cap {}", o.eps_order, EPS_CAP));
        }
    }
    if let Some(mu) = &c.mu {
        if mu.len() > PARTS_CAP {
            w.push(format!("μ has {} parts, above the default cap {}", mu.len(), PARTS_CAP));
        }
        if matches!(cmd, Command::Hurwitz) && mu.weight() > HURWITZ_DEGREE_CAP {
            w.push(format!("degree {} is above the Hurwitz cap {}", mu.weight(), HURWITZ_DEGREE_CAP));
        } else if !matches!(cmd, Command::Hurwitz) && mu.weight() > WEIGHT_CAP {
            w.push(format!("|μ| = {} is above the default weight cap {}", mu.weight(), WEIGHT_CAP));
        }
    }
    w
}

/// Rendered output plus the exit code it should produce.
struct Output {
    body: String,
    code: i32,
    /// lines for stderr (timings, first failure)
    notes: Vec<String>,
}

#[derive(Serialize)]
struct DessinsJson<'a> {
    schema: &'a str,
    mu: &'a [u32],
    entries: &'a [crate::dessins::DessinCount],
}

#[derive(Serialize)]
struct PolyJson<'a> {
    schema: &'a str,
    mu: &'a [u32],
    value: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    genus_parts: Vec<GenusPart>,
}

#[derive(Serialize)]
struct GenusPart {
    g: u32,
    value: String,
}

#[derive(Serialize)]
struct HurwitzJson<'a> {
    schema: &'a str,
    g: u32,
    mu: &'a [u32],
    nu: &'a [u32],
    value: String,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    schema: &'a str,
    orders: &'a Orders,
    passed: bool,
    suites: Vec<SuiteJson<'a>>,
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    suite: String,
    passed: bool,
    checks: &'a [crate::verify::Check],
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn mu_text(mu: &Partition) -> String {
    mu.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn require<'a>(v: &'a Option<Partition>, name: &str) -> Result<&'a Partition, Error> {
    v.as_ref().ok_or_else(|| Error::Input(format!("--{} is required", name)))
}

fn cmd_dessins(c: &RunConfig, f: Format) -> Result<Output, Error> {
    let mu = require(&c.mu, "mu")?;
    let entries = n_kl(mu)?;
    let body = match f {
        Format::Json => json(&DessinsJson { schema: SCHEMA, mu: mu.parts(), entries: &entries }),
        Format::Csv => csv_rows(
            &["k", "l", "g", "value"],
            &entries
                .iter()
                .map(|e| vec![e.k.to_string(), e.l.to_string(), e.g.to_string(), render_rational(&e.value)])
                .collect::<Vec<_>>(),
        ),
        Format::Pretty => {
            let mut s = format!("N_{{k,l}}(μ) for μ = ({})\n{:>3} {:>3} {:>3}  value\n", mu_text(mu), "k", "l", "g");
            for e in &entries {
                s += &format!("{:>3} {:>3} {:>3}  {}\n", e.k, e.l, e.g, render_rational(&e.value));
            }
            s
        }
    };
    Ok(Output { body, code: 0, notes: Vec::new() })
}

fn genus_parts(mu: &Partition, p: &Poly) -> Vec<GenusPart> {
    let top = (mu.weight() + 2).saturating_sub(mu.len() as u32) / 2;
    (0..=top)
        .filter_map(|g| {
            let part = genus_part(mu.parts(), p, g);
            (!part.is_zero()).then(|| GenusPart { g, value: part.to_string() })
        })
        .collect()
}

fn poly_output(mu: &Partition, p: &Poly, parts: Vec<GenusPart>, f: Format, label: &str) -> String {
    match f {
        Format::Json => json(&PolyJson { schema: SCHEMA, mu: mu.parts(), value: p.to_string(), genus_parts: parts }),
        Format::Csv => {
            let mut rows = vec![vec![mu_text(mu), "all".to_string(), p.to_string()]];
            for gp in &parts {
                rows.push(vec![mu_text(mu), gp.g.to_string(), gp.value.clone()]);
            }
            csv_rows(&["mu", "g", "value"], &rows)
        }
        Format::Pretty => {
            let mut s = format!("{}({}) = {}\n", label, mu_text(mu), p);
            for gp in &parts {
                s += &format!("  genus {}: {}\n", gp.g, gp.value);
            }
            s
        }
    }
}

fn cmd_lue(c: &RunConfig, f: Format) -> Result<Output, Error> {
    let mu = require(&c.mu, "mu")?;
    let p = lue_correlator(mu.parts())?;
    Ok(Output { body: poly_output(mu, &p, Vec::new(), f, "<tr M^mu>_c"), code: 0, notes: Vec::new() })
}

fn cmd_correlator(c: &RunConfig, f: Format) -> Result<Output, Error> {
    let mu = require(&c.mu, "mu")?;
    let p = correlator(mu.parts())?;
    let parts = genus_parts(mu, &p);
    Ok(Output { body: poly_output(mu, &p, parts, f, "<tau_mu>"), code: 0, notes: Vec::new() })
}

fn cmd_hurwitz(c: &RunConfig, f: Format) -> Result<Output, Error> {
    let mu = require(&c.mu, "mu")?;
    let nu = require(&c.nu, "nu")?;
    let g = c.g.unwrap_or(0);
    let query = HurwitzQuery { g, mu: mu.clone(), nu: nu.clone() };
    let h = strictly_monotone_hurwitz_capped(&query, HURWITZ_DEGREE_CAP.max(mu.weight()))?;
    let value = h.to_string();
    let body = match f {
        Format::Json => json(&HurwitzJson { schema: SCHEMA, g, mu: mu.parts(), nu: nu.parts(), value }),
        Format::Csv => csv_rows(&["g", "mu", "nu", "value"], &[vec![g.to_string(), mu_text(mu), mu_text(nu), value]]),
        Format::Pretty => format!("{}\n", value),
    };
    Ok(Output { body, code: 0, notes: Vec::new() })
}

fn cmd_verify(c: &RunConfig, suite: &str, f: Format) -> Result<Output, Error> {
    let mut notes = Vec::new();
    let suites = parse_suites(suite)?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        let (r, timings) = run_suite(s, &c.orders)?;
        for (label, d) in timings {
            notes.push(format!("[{}] {}: {:.3}s", s, label, d.as_secs_f64()));
        }
        reports.push(r);
    }
    reports.sort_by_key(|r| r.suite);
    let passed = reports.iter().all(|r| r.passed());
    if let Some(fail) = reports.iter().find_map(|r| r.first_failure()) {
        notes.push(format!("first failure: {}{}", fail.name, fail.detail.as_ref().map(|d| format!(": {}", d)).unwrap_or_default()));
    }
    let body = match f {
        Format::Json => json(&VerifyJson {
            schema: SCHEMA,
            orders: &c.orders,
            passed,
            suites: reports
                .iter()
                .map(|r| SuiteJson { suite: r.suite.to_string(), passed: r.passed(), checks: &r.checks })
                .collect(),
        }),
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                for ch in &r.checks {
                    rows.push(vec![
                        r.suite.to_string(),
                        ch.name.clone(),
                        ch.passed.to_string(),
                        ch.gating.to_string(),
                        ch.detail.clone().unwrap_or_default(),
                    ]);
                }
            }
            csv_rows(&["suite", "check", "passed", "gating", "detail"], &rows)
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                s += &format!("{} {}\n", if r.passed() { "PASS" } else { "FAIL" }, r.suite);
                for ch in &r.checks {
                    let tag = match (ch.passed, ch.gating) {
                        (true, _) => "ok  ",
                        (false, true) => "FAIL",
                        (false, false) => "note",
                    };
                    s += &format!("  {} {}\n", tag, ch.name);
                    if let Some(d) = &ch.detail {
                        s += &format!("       {}\n", d);
                    }
                }
            }
            s += if passed { "PASS\n" } else { "FAIL\n" };
            s
        }
    };
    Ok(Output { body, code: if passed { 0 } else { 1 }, notes })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => 2,
        _ => 1,
    }
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run_parsed(&cli, err) {
        Ok((o, path)) => {
            for n in &o.notes {
                let _ = writeln!(err, "{}", n);
            }
            if let Some(path) = path {
                if let Err(e) = std::fs::write(&path, o.body.as_bytes()) {
                    let _ = writeln!(err, "error: cannot write {}: {}", path.display(), e);
                    return 2;
                }
            } else if out.write_all(o.body.as_bytes()).is_err() {
                return 1;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            exit_code(&e)
        }
    }
}

fn run_parsed(cli: &Cli, err: &mut dyn Write) -> Result<(Output, Option<PathBuf>), Error> {
    let file = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Input(format!("cannot read config {}: {}", p.display(), e)))?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let c = merge(cli, &file)?;
    for w in caps_warnings(&c, &cli.command) {
        let _ = writeln!(err, "warning: {}", w);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {}", e)))?;
    let f = c.format.unwrap_or(Format::Json);
    let o = pool.install(|| match &cli.command {
        Command::Dessins => cmd_dessins(&c, f),
        Command::Lue => cmd_lue(&c, f),
        Command::Hurwitz => cmd_hurwitz(&c, f),
        Command::Correlator => cmd_correlator(&c, f),
        Command::Verify { suite } => cmd_verify(&c, suite, f),
    })?;
    Ok((o, c.out))
}

/// Value of a rational as the CLI renders it.
pub fn render(r: &Rational) -> String {
    render_rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["dessin-toda"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dessins_json() {
        let (code, out, _) = call(&["dessins", "--mu", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], "dessin-toda/1");
        assert_eq!(v["mu"], serde_json::json!([2]));
        assert_eq!(v["entries"][0], serde_json::json!({"k": 2, "l": 1, "g": 0, "value": "1/2"}));
        assert_eq!(v["entries"][1], serde_json::json!({"k": 1, "l": 2, "g": 0, "value": "1/2"}));
    }

    #[test]
    fn dessins_csv() {
        let (code, out, _) = call(&["dessins", "--mu", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "k,l,g,value\n1,1,0,1\n");
    }

    #[test]
    fn small_commands() {
        let (code, out, _) = call(&["hurwitz", "--g", "0", "--mu", "1,1", "--nu", "2", "--format", "pretty"]);
        assert_eq!((code, out.as_str()), (0, "1\n"));
        let (code, out, _) = call(&["lue", "--mu", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "a*n + n^2");
        let (_, out, _) = call(&["dessins", "--mu", "1,1", "--format", "csv"]);
        assert_eq!(out, "k,l,g,value\n1,1,0,1\n");
    }

    #[test]
    fn bad_input_exits_2() {
        assert_eq!(call(&["dessins"]).0, 2);
        assert_eq!(call(&["dessins", "--mu", "2,x"]).0, 2);
        assert_eq!(call(&["hurwitz", "--mu", "2", "--nu", "1"]).0, 2);
        assert_eq!(call(&["verify", "nope"]).0, 2);
        assert_eq!(call(&["dessins", "--mu", "1", "--bogus"]).0, 2);
        assert_eq!(call(&["verify", "oracles", "--weight", "0"]).0, 2);
    }

    #[test]
    fn config_file_and_precedence() {
        let dir = std::env::temp_dir().join(format!("dessin-toda-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("run.conf");
        std::fs::write(&cfg, "# defaults\nmu = 2\nformat = csv\n").unwrap();
        let c = cfg.to_str().unwrap();
        let (code, out, _) = call(&["dessins", "--config", c]);
        assert_eq!(code, 0);
        assert_eq!(out, "k,l,g,value\n2,1,0,1/2\n1,2,0,1/2\n");
        let (_, out, _) = call(&["dessins", "--config", c, "--mu", "1"]);
        assert_eq!(out, "k,l,g,value\n1,1,0,1\n");
        std::fs::write(&cfg, "colour = blue\n").unwrap();
        assert_eq!(call(&["dessins", "--config", c, "--mu", "1"]).0, 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn warns_above_caps() {
        let (code, _, err) = call(&["correlator", "--mu", "1,1,1,1,1,1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(err.contains("warning"));
    }

    #[test]
    fn verify_small_is_deterministic() {
        let a = call(&["verify", "barnes", "--eps-order", "4", "--threads", "1"]);
        let b = call(&["verify", "barnes", "--eps-order", "4", "--threads", "3"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
    }
}
