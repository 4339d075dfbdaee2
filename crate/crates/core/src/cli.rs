//! Command-line front end, the family file format and sweep reports.
//!
//! Family files are plain text: a header line `n k count`, then `count`
//! lines of `k` strictly increasing vertices in `[1, n]`, separated by
//! single spaces. Exit codes: 0 success, 1 a requested check failed or an
//! I/O error, 2 violated precondition, 3 guard exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::bounds::{self, beta, format_rational, BoundReport};
use crate::constructions::{self, ATParams, ELParams, GParams};
use crate::error::{Error, Result};
use crate::family::{validate_family, GroundParams, SetFamily};
use crate::oracle::{self, OracleResult};
use crate::shifting::{full_shift, is_shifted, shift_once, ShiftPair};
use crate::transversal::{covering_number, TauVerdict};

// ---------------------------------------------------------------------------
// Family files

pub fn write_family(f: &SetFamily, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{} {} {}", f.n(), f.k(), f.len())?;
    for m in f.members() {
        let line: Vec<String> = m.elements().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn family_to_string(f: &SetFamily) -> String {
    let mut buf = Vec::new();
    write_family(f, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse { line: lineno, message: format!("not an integer: {tok:?}") })
        })
        .collect()
}

/// Reads a family file. Returns the canonical family and the number of
/// duplicate lines collapsed.
pub fn read_family(r: impl BufRead) -> Result<(SetFamily, usize)> {
    let mut lines = r.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(Error::Parse { line: 1, message: "missing header".into() }),
    };
    let head = parse_numbers(&header, 1)?;
    let [n, k, count] = head[..] else {
        return Err(Error::Parse { line: 1, message: "header must be `n k count`".into() });
    };
    if n < 1 || k < 1 || count < 0 {
        return Err(Error::Parse { line: 1, message: "header values out of range".into() });
    }
    let params = GroundParams::new(n as usize, k as usize)?;

    let mut raw = Vec::with_capacity(count as usize);
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        if raw.len() == count as usize {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse { line: lineno, message: format!("more than {count} member lines") });
        }
        let set = parse_numbers(&line, lineno)?;
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse { line: lineno, message: "elements must be strictly increasing".into() });
        }
        raw.push(set);
    }
    if raw.len() != count as usize {
        return Err(Error::Parse {
            line: raw.len() + 2,
            message: format!("expected {count} member lines, found {}", raw.len()),
        });
    }
    validate_family(&raw, params)
}

pub fn load_family(path: &Path) -> Result<(SetFamily, usize)> {
    read_family(BufReader::new(fs::File::open(path)?))
}

// ---------------------------------------------------------------------------
// Sweeps

/// One row of a parameter sweep: the largest construction known here with
/// covering number at least `tau`, against the product density bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub tau: usize,
    pub construction_size: BigUint,
    pub construction_name: String,
    /// `ln` of the density bound; `None` when not applicable.
    pub thmub_density_log: Option<f64>,
    pub applicable: bool,
}

pub const SWEEP_HEADER: &str = "n,k,tau,construction_size,construction_name,thmub_density_log,applicable";

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.tau,
            self.construction_size,
            self.construction_name,
            self.thmub_density_log.map(|v| format!("{v:.12e}")).unwrap_or_default(),
            self.applicable
        )
    }
}

/// Largest vector count `g_counts` is allowed to walk inside a sweep.
const SWEEP_G_LIMIT: u64 = 2_000_000;

/// Candidate constructions with covering number at least `tau` on `[n]`.
fn sweep_candidates(n: usize, k: usize, tau: usize) -> Vec<(String, BigUint)> {
    let (nu, ku) = (n as u64, k as u64);
    let mut out = Vec::new();
    if n < 2 * k {
        // Every two k-subsets of [n] meet; a cover must leave fewer than k
        // vertices uncovered.
        if n + 1 - k >= tau {
            out.push(("complete".to_string(), bounds::choose(nu, ku)));
        }
        return out;
    }
    if tau <= 1 {
        out.push(("star".to_string(), bounds::choose(nu - 1, ku - 1)));
    }
    let t = tau.saturating_sub(1).max(1);
    if let Ok(p) = ATParams::new(n, k, t) {
        out.push((format!("A_{t}"), p.size()));
    }
    if tau <= k && n >= k * (k + 1) / 2 {
        if let Ok(p) = ELParams::new(k) {
            out.push(("erdos_lovasz".to_string(), p.layer_sizes().into_iter().sum()));
        }
    }
    // G with matching k and n_G <= n.
    let windows_for = |m: usize| 2 * m + 1;
    for m in 1..=k {
        let w = windows_for(m);
        if w > k || !(k - 1).is_multiple_of(w) {
            continue;
        }
        let q = (k - 1) / w;
        for ell in 1..q {
            let Ok(p) = GParams::new(ell, m, q - 1 - ell) else { continue };
            if p.n > n || p.tau_formula() < tau {
                continue;
            }
            let vectors = bounds::choose((k + w) as u64, w as u64);
            if vectors > BigUint::from(SWEEP_G_LIMIT) {
                continue;
            }
            let c = constructions::g_counts(p);
            out.push((format!("G(l={},m={},f1={})", p.ell, p.m, p.f1), c.total()));
        }
    }
    out
}

pub fn sweep_row(n: usize, k: usize, tau: usize) -> Option<SweepRow> {
    if k < 2 || n < k || tau < 1 {
        return None;
    }
    let best = sweep_candidates(n, k, tau)
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    let (construction_name, construction_size) = best.unwrap_or_else(|| ("none".to_string(), BigUint::default()));
    let applicable = tau as i64 > beta(n as u64, k as u64);
    let thmub_density_log = if applicable {
        bounds::thmub_bound(n as u64, k as u64, tau as u64).ok().map(|r| r.log_value)
    } else {
        None
    };
    Some(SweepRow { n, k, tau, construction_size, construction_name, thmub_density_log, applicable })
}

/// Values one grid axis takes.
#[derive(Clone, Debug, PartialEq)]
enum Axis {
    Values(Vec<usize>),
    /// `tau = 1..=k`.
    All,
}

/// Parsed `--grid` argument, e.g. `n=10..40:5;k=4,6;tau=all`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    n: Vec<usize>,
    k: Vec<usize>,
    tau: Axis,
}

fn parse_axis(key: &str, spec: &str) -> Result<Axis> {
    let bad = || Error::params(format!("cannot parse grid axis {key}={spec}"));
    if spec == "all" {
        return if key == "tau" { Ok(Axis::All) } else { Err(bad()) };
    }
    let mut values = Vec::new();
    for part in spec.split(',') {
        if let Some((range, step)) = part.split_once("..").map(|(a, rest)| {
            let (b, step) = rest.split_once(':').unwrap_or((rest, "1"));
            ((a, b), step)
        }) {
            let lo: usize = range.0.trim().parse().map_err(|_| bad())?;
            let hi: usize = range.1.trim().parse().map_err(|_| bad())?;
            let step: usize = step.trim().parse().map_err(|_| bad())?;
            if step == 0 || lo > hi {
                return Err(bad());
            }
            values.extend((lo..=hi).step_by(step));
        } else {
            values.push(part.trim().parse().map_err(|_| bad())?);
        }
    }
    Ok(Axis::Values(values))
}

impl std::str::FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut n, mut k, mut tau) = (None, None, None);
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (key, spec) = part
                .split_once('=')
                .ok_or_else(|| Error::params(format!("grid entry {part:?} is not key=values")))?;
            let key = key.trim();
            let axis = parse_axis(key, spec.trim())?;
            match (key, axis) {
                ("n", Axis::Values(v)) => n = Some(v),
                ("k", Axis::Values(v)) => k = Some(v),
                ("tau", a) => tau = Some(a),
                _ => return Err(Error::params(format!("unknown grid key {key:?}"))),
            }
        }
        Ok(Grid {
            n: n.ok_or_else(|| Error::params("grid needs n"))?,
            k: k.ok_or_else(|| Error::params("grid needs k"))?,
            tau: tau.unwrap_or(Axis::All),
        })
    }
}

impl Grid {
    /// Points in grid order: n outermost, then k, then tau.
    pub fn points(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &k in &self.k {
                let taus: Vec<usize> = match &self.tau {
                    Axis::All => (1..=k).collect(),
                    Axis::Values(v) => v.clone(),
                };
                out.extend(taus.into_iter().map(|t| (n, k, t)));
            }
        }
        out
    }
}

pub fn sweep(grid: &Grid) -> Vec<SweepRow> {
    grid.points().into_iter().filter_map(|(n, k, t)| sweep_row(n, k, t)).collect()
}

// ---------------------------------------------------------------------------
// JSON

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn bound_json(r: &BoundReport) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let details: Map<String, Value> = r.details.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "name": r.name,
        "params": params,
        "exact": r.exact.as_ref().map(format_rational),
        "log_value": finite_or_null(r.log_value),
        "side_conditions": r.side_conditions.iter()
            .map(|c| json!({"condition": c.condition, "holds": c.holds}))
            .collect::<Vec<_>>(),
        "details": details,
    })
}

fn real_json(name: &str, params: Value, value: f64, extra: Value) -> Value {
    let mut obj = json!({
        "name": name,
        "params": params,
        "exact": Value::Null,
        "value": finite_or_null(value),
        "log_value": finite_or_null(value.ln()),
        "side_conditions": [],
    });
    if let (Value::Object(o), Value::Object(e)) = (&mut obj, extra) {
        o.extend(e);
    }
    obj
}

fn members_json(f: &SetFamily) -> Value {
    Value::Array(f.members().iter().map(|m| json!(m.to_vec())).collect())
}

fn oracle_json(r: &OracleResult, query: &str) -> Value {
    json!({
        "query": query,
        "n": r.n,
        "k": r.k,
        "tau": r.tau,
        "m_value": r.m_value,
        "witness": members_json(&r.witness),
        "families_examined": r.families_examined,
    })
}

// ---------------------------------------------------------------------------
// Argument parsing

#[derive(Parser, Debug)]
#[command(name = "taukit", version, about = "Intersecting families with prescribed covering number")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named family and write it as a family file.
    Construct(ConstructArgs),
    /// Validate a family file and optionally test properties.
    Verify {
        file: PathBuf,
        #[arg(long)]
        intersecting: bool,
        #[arg(long)]
        shifted: bool,
    },
    /// Exact covering number of a family file.
    Tau {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Apply one shift or compress to a shifted family.
    Shift(ShiftArgs),
    /// Evaluate a closed-form bound.
    Bound {
        #[command(subcommand)]
        which: BoundCmd,
    },
    /// Brute-force ground truth on tiny instances.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Tabulate constructions against the density bound over a grid.
    Sweep {
        /// e.g. `n=10..40:5;k=4,6;tau=all`
        #[arg(long)]
        grid: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionType {
    Star,
    A,
    El,
    G,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long = "type", value_enum)]
    kind: ConstructionType,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Star center.
    #[arg(long, default_value_t = 1)]
    x: usize,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    f1: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    file: PathBuf,
    #[arg(long, num_args = 2, value_names = ["I", "J"], conflicts_with = "full", required_unless_present = "full")]
    pair: Option<Vec<usize>>,
    #[arg(long)]
    full: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    Binomial {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    Ekr {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    Hm {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    F65 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    Thmub {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        tau: u64,
    },
    Corub {
        #[arg(long)]
        c: f64,
    },
    F {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        ell: f64,
    },
    Tail {
        #[arg(long)]
        mean: f64,
        #[arg(long)]
        t: f64,
    },
    ExactTail {
        #[arg(long)]
        population: u64,
        #[arg(long)]
        successes: u64,
        #[arg(long)]
        draws: u64,
        #[arg(long, allow_hyphen_values = true)]
        threshold: i64,
    },
    Corlb {
        #[arg(long)]
        c1: f64,
    },
    Mk {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// m(n,k,tau): largest intersecting family with covering number exactly tau.
    M {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        tau: usize,
        /// Covering number at least tau instead of exactly tau.
        #[arg(long)]
        at_least: bool,
    },
    /// Largest shifted intersecting family with covering number at least t.
    Shifted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// m(n,k,tau) for tau = 1..k.
    Profile {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// All maximal intersecting families.
    Maximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

// ---------------------------------------------------------------------------
// Dispatch

/// What a subcommand produced: a JSON value, its text rendering, and
/// whether every requested check passed.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Outcome { json, text: text.into(), ok: true }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = writeln!(err, "{}", json!({"error": {"kind": "usage", "message": e.to_string()}}));
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return 1;
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            exit_code(&e)
        }
    }
}

fn save_or_render(f: &SetFamily, out: &Option<PathBuf>) -> Result<Option<String>> {
    match out {
        Some(path) => {
            write_family(f, std::io::BufWriter::new(fs::File::create(path)?))?;
            Ok(None)
        }
        None => Ok(Some(family_to_string(f))),
    }
}

fn require(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::params(format!("--{name} is required for this construction")))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Construct(a) => construct(a, cli.json),
        Command::Verify { file, intersecting, shifted } => {
            let (f, dups) = load_family(file)?;
            let mut json = json!({"n": f.n(), "k": f.k(), "count": f.len(), "duplicates_collapsed": dups});
            let mut text = format!("valid family: n={} k={} count={} duplicates={}\n", f.n(), f.k(), f.len(), dups);
            let mut ok = true;
            if *intersecting {
                let v = f.is_intersecting();
                ok &= v;
                json["intersecting"] = json!(v);
                text += &format!("intersecting: {v}\n");
            }
            if *shifted {
                let v = is_shifted(&f);
                ok &= v;
                json["shifted"] = json!(v);
                text += &format!("shifted: {v}\n");
            }
            Ok(Outcome { json, text, ok })
        }
        Command::Tau { file, budget } => {
            let (f, _) = load_family(file)?;
            match covering_number(&f, *budget)? {
                TauVerdict::Exact(r) => Ok(Outcome::new(
                    json!({
                        "verdict": "exact",
                        "tau": r.tau,
                        "cover": r.optimal_cover.vertices.to_vec(),
                        "nodes_explored": r.nodes_explored,
                    }),
                    format!("tau {}\ncover {}\nnodes {}\n", r.tau, r.optimal_cover.vertices, r.nodes_explored),
                )),
                TauVerdict::ExceedsBudget { budget, nodes_explored } => Ok(Outcome::new(
                    json!({"verdict": "exceeds_budget", "budget": budget, "nodes_explored": nodes_explored}),
                    format!("tau > {budget}\nnodes {nodes_explored}\n"),
                )),
            }
        }
        Command::Shift(a) => {
            let (f, _) = load_family(&a.file)?;
            let (g, steps) = match &a.pair {
                Some(p) => {
                    let pair = ShiftPair::new(p[0], p[1], f.n())?;
                    let g = shift_once(&f, pair);
                    let changed = usize::from(g != f);
                    (g, changed)
                }
                None => {
                    let (g, log) = full_shift(&f);
                    (g, log.len())
                }
            };
            let rendered = save_or_render(&g, &a.out)?;
            let json = json!({
                "count": g.len(),
                "effective_steps": steps,
                "shifted": is_shifted(&g),
                "members": members_json(&g),
            });
            let text = rendered.unwrap_or_else(|| format!("wrote {} members, {steps} effective steps\n", g.len()));
            Ok(Outcome::new(json, text))
        }
        Command::Bound { which } => bound(which),
        Command::Oracle { which } => oracle_cmd(which),
        Command::Sweep { grid, csv } => {
            let grid: Grid = grid.parse()?;
            let rows = sweep(&grid);
            let mut body = String::from(SWEEP_HEADER);
            body.push('\n');
            for r in &rows {
                body += &r.csv_line();
                body.push('\n');
            }
            let text = match csv {
                Some(path) => {
                    fs::write(path, &body)?;
                    format!("wrote {} rows to {}\n", rows.len(), path.display())
                }
                None => body,
            };
            Ok(Outcome::new(json!({"rows": rows.len()}), text))
        }
    }
}

fn construct(a: &ConstructArgs, json_mode: bool) -> Result<Outcome> {
    let mut extra = Map::new();
    let (name, f) = match a.kind {
        ConstructionType::Star => {
            ("star", constructions::full_star(require(a.n, "n")?, require(a.k, "k")?, a.x)?)
        }
        ConstructionType::A => {
            let p = ATParams::new(require(a.n, "n")?, require(a.k, "k")?, require(a.t, "t")?)?;
            extra.insert("tau_expected".into(), json!(p.t + 1));
            ("a", constructions::a_family(p)?)
        }
        ConstructionType::El => {
            let e = constructions::erdos_lovasz(ELParams::new(require(a.k, "k")?)?)?;
            extra.insert(
                "layer_sizes".into(),
                json!(e.layers.iter().map(|l| l.len()).collect::<Vec<_>>()),
            );
            extra.insert("stated_size".into(), json!(e.stated_size().to_string()));
            extra.insert("size_discrepancy".into(), json!(e.size_discrepancy()));
            ("el", e.family)
        }
        ConstructionType::G => {
            let p = GParams::new(require(a.ell, "ell")?, require(a.m, "m")?, a.f1.unwrap_or(0))?;
            let g = constructions::fot_g(p)?;
            extra.insert("s".into(), json!(p.s));
            extra.insert("g1".into(), json!(g.g1));
            extra.insert("g2".into(), json!(g.g2));
            extra.insert("overlap".into(), json!(g.overlap));
            extra.insert("tau_formula".into(), json!(p.tau_formula()));
            extra.insert("tau_guarantee".into(), json!(format_rational(&p.tau_guarantee())));
            ("g", g.family)
        }
    };
    let mut json = json!({"construction": name, "n": f.n(), "k": f.k(), "count": f.len()});
    if let Value::Object(o) = &mut json {
        o.extend(extra);
    }
    let rendered = save_or_render(&f, &a.out)?;
    let text = match rendered {
        // Without --out the family file itself is the text output.
        Some(body) => body,
        None => format!("{name}: n={} k={} count={}\n", f.n(), f.k(), f.len()),
    };
    if json_mode && a.out.is_none() {
        json["members"] = members_json(&f);
    }
    Ok(Outcome::new(json, text))
}

fn bound(which: &BoundCmd) -> Result<Outcome> {
    let report = |r: BoundReport| Outcome::new(bound_json(&r), format!("{r}\n"));
    Ok(match *which {
        BoundCmd::Binomial { n, k } => {
            let v = bounds::binomial(n, k)?;
            Outcome::new(
                json!({"name": "binomial", "params": {"n": n, "k": k}, "exact": v.to_string(),
                       "log_value": finite_or_null(bounds::ln_biguint(&v)), "side_conditions": []}),
                format!("{v}\n"),
            )
        }
        BoundCmd::Ekr { n, k } => report(bounds::ekr_bound(n, k)),
        BoundCmd::Hm { n, k } => report(bounds::hm_bound(n, k)),
        BoundCmd::F65 { n, k, m } => report(bounds::f65_bound(n, k, m)?),
        BoundCmd::Thmub { n, k, tau } => report(bounds::thmub_bound(n, k, tau)?),
        BoundCmd::Corub { c } => {
            let v = bounds::corub_exponent(c)?;
            Outcome::new(real_json("corub", json!({"c": c}), v, json!({})), format!("{v}\n"))
        }
        BoundCmd::F { k, ell } => {
            let v = bounds::f_threshold(k, ell);
            Outcome::new(real_json("f", json!({"k": k, "ell": ell}), v, json!({})), format!("{v}\n"))
        }
        BoundCmd::Tail { mean, t } => {
            if !(mean > 0.0 && t >= 0.0) {
                return Err(Error::params("tail bound needs mean > 0 and t >= 0"));
            }
            let v = bounds::hypergeom_tail_bound(mean, t);
            Outcome::new(real_json("tail", json!({"mean": mean, "t": t}), v, json!({})), format!("{v}\n"))
        }
        BoundCmd::ExactTail { population, successes, draws, threshold } => {
            let v = bounds::hypergeom_exact_tail(population, successes, draws, threshold)?;
            Outcome::new(
                json!({"name": "exact_tail",
                       "params": {"population": population, "successes": successes, "draws": draws, "threshold": threshold},
                       "exact": format_rational(&v),
                       "log_value": finite_or_null(bounds::ln_rational(&v)),
                       "side_conditions": []}),
                format!("{}\n", format_rational(&v)),
            )
        }
        BoundCmd::Corlb { c1 } => {
            let p = bounds::corlb_params(c1)?;
            Outcome::new(
                real_json(
                    "corlb",
                    json!({"c1": c1}),
                    p.tau_fraction,
                    json!({"tau_fraction": p.tau_fraction, "density_denominator": p.density_denominator}),
                ),
                format!("tau_fraction {}\ndensity_denominator {}\n", p.tau_fraction, p.density_denominator),
            )
        }
        BoundCmd::Mk { k } => {
            let r = bounds::m_k_range(k)?;
            Outcome::new(
                json!({"name": "mk", "params": {"k": k},
                       "lower": r.lower.to_string(), "upper": r.upper.to_string(),
                       "construction_size": r.construction_size.to_string(),
                       "bracket_consistent": r.bracket_consistent,
                       "lower_matches_construction": r.lower_matches_construction,
                       "flagged": r.flagged()}),
                format!(
                    "{} <= m({k}) <= {}{}\n",
                    r.lower,
                    r.upper,
                    if r.flagged() { " [flagged]" } else { "" }
                ),
            )
        }
    })
}

fn oracle_text(label: &str, r: &OracleResult) -> String {
    let mut s = format!("{label} = {}\n", r.m_value);
    for m in r.witness.members() {
        s += &format!("  {m}\n");
    }
    s += &format!("examined {} in {:?}\n", r.families_examined, r.wall_time);
    s
}

fn oracle_cmd(which: &OracleCmd) -> Result<Outcome> {
    Ok(match *which {
        OracleCmd::M { n, k, tau, at_least } => {
            let (r, query) = if at_least {
                (oracle::brute_force_m_at_least(n, k, tau)?, "at_least")
            } else {
                (oracle::brute_force_m(n, k, tau)?, "exact")
            };
            let label = if at_least { format!("m({n},{k},>={tau})") } else { format!("m({n},{k},{tau})") };
            Outcome::new(oracle_json(&r, query), oracle_text(&label, &r))
        }
        OracleCmd::Shifted { n, k, t } => {
            let r = oracle::max_shifted_intersecting(n, k, t)?;
            Outcome::new(oracle_json(&r, "shifted_at_least"), oracle_text(&format!("shifted({n},{k},>={t})"), &r))
        }
        OracleCmd::Profile { n, k } => {
            let p = oracle::prop1_check(n, k)?;
            let values = p.values();
            let text = values
                .iter()
                .enumerate()
                .map(|(i, v)| format!("m({n},{k},{}) = {v}\n", i + 1))
                .collect::<String>()
                + &format!("monotone: {}\n", p.monotone());
            Outcome::new(json!({"n": n, "k": k, "values": values, "monotone": p.monotone()}), text)
        }
        OracleCmd::Maximal { n, k } => {
            let fams = oracle::enumerate_maximal_intersecting(n, k)?;
            let text = fams
                .iter()
                .map(|f| f.members().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ") + "\n")
                .collect::<String>();
            Outcome::new(
                json!({"n": n, "k": k, "count": fams.len(), "families": fams.iter().map(members_json).collect::<Vec<_>>()}),
                text,
            )
        }
    })
}
