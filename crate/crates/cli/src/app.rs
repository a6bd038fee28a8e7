//! Argument parsing and command dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use unionfam::bounds::{consistency_matrix, evaluate_bound, grid, BoundParams, BoundQuery, BoundValue, GridPoint, TheoremId};
use unionfam::constructions::{
    f_i_family, f_st_family, hm_family, hm_prime, hmnew3_extremal, j_1t_family, j_1t_r_family, j_family, ranked_l_family, star,
    star_restricted, star_restricted_multipartite, J1tAnchors, J1trMode, JAnchors,
};
use unionfam::random::random_family;
use unionfam::search::{branch_and_bound_max, enumerate_maximal, oracle_max_family, ConstraintSpec};
use unionfam::{Error, Family, KSet};

use crate::report::{LabelledFamily, Record, Report};
use crate::suites::{self, describe_spec, SuiteOutput};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    Violation = 1,
    Budget = 2,
    Usage = 64,
}

#[derive(Parser, Serialize, Debug, Clone)]
#[command(name = "unionfam", version, about = "Union-intersecting families of k-sets: constructions, bounds and exact verification")]
pub struct Cli {
    /// Seed for every randomized suite.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report format (defaults: json for reports, csv for consistency tables).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Print a named construction as a JSONL family record and a provenance line.
    Construct(ConstructArgs),
    /// Evaluate a closed-form bound exactly.
    Bound(BoundArgs),
    /// Cross-check formulas against each other and against enumeration on a grid.
    Consistency(ConsistencyArgs),
    /// Run a verification suite and write its report.
    Verify(VerifyArgs),
    /// Exact maximum or maximal families under constraints.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Print a seeded random family as JSONL.
    Random(RandomArgs),
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructName {
    Star,
    Hm,
    HmPrime,
    J,
    FI,
    FSt,
    StarRestricted,
    StarRestrictedR,
    J1t,
    J1tr,
    RankedL,
    Hmnew3,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Literal,
    Completed,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: ConstructName,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub beta: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Centre of a star.
    #[arg(long)]
    pub center: Option<u32>,
    /// The set B of the Hilton-Milner family, e.g. `2,3,4`.
    #[arg(long)]
    pub b: Option<String>,
    /// The set J of `J_i`.
    #[arg(long)]
    pub j: Option<String>,
    /// The set E of `J_i` or `J_i^{1,t}`.
    #[arg(long)]
    pub e: Option<String>,
    /// Distinguished elements `x_1,…,x_i`.
    #[arg(long)]
    pub xs: Option<String>,
    /// B-blocks, sets separated by `;` and blocks by `|`.
    #[arg(long)]
    pub blocks: Option<String>,
    /// Anchor sets separated by `;`, e.g. `2,3,4;5,6,7`.
    #[arg(long)]
    pub anchors: Option<String>,
    /// The sets `F_1,…,F_{t-1}` of `F_{s,t}`, separated by `;`.
    #[arg(long)]
    pub extra: Option<String>,
    #[arg(long, value_enum, default_value = "completed")]
    pub mode: Mode,
    #[arg(long, default_value_t = 200_000_000)]
    pub budget: u64,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct BoundArgs {
    /// Bound id, e.g. `thm1.9`, `hm`, `n_i`.
    #[arg(long)]
    pub id: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<i64>,
    /// Part sizes `s_1,…`, comma separated.
    #[arg(long)]
    pub parts: Option<String>,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct ConsistencyArgs {
    /// JSON file `{"n": [...], "k": [...], "t": [...]}`; default grid n 10..14, k 3..5, t 1..3.
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Constructions,
    Lemma22,
    Peel,
    PairsBound,
    Setpairs,
    Isomorphism,
    Oracle,
    All,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Sweep parameters for `lemma22`; all four or none (none runs the default sweeps).
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub beta: Option<u32>,
    /// Sample count for the seeded suites.
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(rename_all = "kebab-case")]
pub enum SearchCommand {
    /// Largest family satisfying the constraints.
    Max {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the exhaustive oracle instead of branch and bound.
        #[arg(long)]
        oracle: bool,
    },
    /// Maximal families, one per isomorphism class.
    Maximal {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    /// Forbidden pattern part sizes, e.g. `1,2`.
    #[arg(long, conflicts_with_all = ["s", "t"])]
    pub pattern: Option<String>,
    /// With `--t`: forbid `K_{s,t}`.
    #[arg(long, requires = "t")]
    pub s: Option<usize>,
    #[arg(long, requires = "s")]
    pub t: Option<usize>,
    /// Require `ℓ_r(F) >= ell_min`.
    #[arg(long)]
    pub ell_min: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Sets that must be members, separated by `;`.
    #[arg(long)]
    pub contain: Option<String>,
    /// Sets that must not be members, separated by `;`.
    #[arg(long)]
    pub avoid: Option<String>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub size: usize,
    /// Remove sets until this pattern (e.g. `1,2`) is absent.
    #[arg(long)]
    pub repair: Option<String>,
}

/// Text for standard output and standard error plus the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: ExitCode,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: ExitCode::Pass }
    }

    fn usage(msg: impl ToString) -> Self {
        Outcome { stdout: String::new(), stderr: msg.to_string(), code: ExitCode::Usage }
    }
}

fn error_outcome(e: Error) -> Outcome {
    let code = match e {
        Error::BudgetExceeded(_) | Error::TooLarge(_) | Error::LimitExceeded(_) => ExitCode::Budget,
        Error::TheoremViolation(_) | Error::NotUnionIntersecting { .. } | Error::SizeMismatch(_) | Error::Infeasible(_) => {
            ExitCode::Violation
        }
        _ => ExitCode::Usage,
    };
    Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code }
}

/// Parses `args` (program name first) and runs the command, writing output
/// and returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage } else { ExitCode::Pass };
            let _ = e.print();
            return code as i32;
        }
    };
    let out = execute(&cli);
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    match &cli.output {
        Some(path) if out.code != ExitCode::Usage || !out.stdout.is_empty() => {
            if let Err(e) = std::fs::write(path, &out.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::Usage as i32;
            }
        }
        _ => print!("{}", out.stdout),
    }
    out.code as i32
}

/// Runs a parsed command without touching the terminal.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Bound(a) => bound(a, cli.format),
        Command::Consistency(a) => consistency(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Search(s) => search(cli, s),
        Command::Random(a) => random(cli, a),
    };
    result.unwrap_or_else(|o| o)
}

type CmdResult = std::result::Result<Outcome, Outcome>;

fn lib<T>(r: unionfam::Result<T>) -> std::result::Result<T, Outcome> {
    r.map_err(error_outcome)
}

fn parse_set(s: &str) -> std::result::Result<Vec<u32>, Outcome> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Outcome::usage(format!("error: bad element {x:?} in {s:?}\n"))))
        .collect()
}

fn parse_sets(s: &str) -> std::result::Result<Vec<Vec<u32>>, Outcome> {
    s.split(';').filter(|x| !x.trim().is_empty()).map(parse_set).collect()
}

fn ksets(n: u32, s: &str) -> std::result::Result<Vec<KSet>, Outcome> {
    parse_sets(s)?.iter().map(|v| lib(KSet::new(n, v))).collect()
}

fn need<T: Copy>(v: Option<T>, name: &str) -> std::result::Result<T, Outcome> {
    v.ok_or_else(|| Outcome::usage(format!("error: --{name} is required here\n")))
}

fn render(cli: &Cli, report: &Report, default: Format) -> String {
    match cli.format.unwrap_or(default) {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Md => report.to_markdown(),
    }
}

fn config_echo(cli: &Cli) -> serde_json::Value {
    let mut v = serde_json::to_value(cli).expect("config serializes");
    if let Some(m) = v.as_object_mut() {
        m.remove("output");
    }
    v
}

/// Report output; failed checks give exit code 1 and their counterexamples on stderr.
fn report_outcome(cli: &Cli, out: SuiteOutput) -> Outcome {
    let report = Report::new(config_echo(cli), out.records, out.families);
    let stdout = render(cli, &report, Format::Json);
    if report.failed() {
        let mut stderr = String::new();
        for r in report.records.iter().filter(|r| r.verdict.is_fail()) {
            stderr.push_str(&format!("FAIL {} [{}]: expected {}, got {}\n", r.check, r.params_string(), r.expected, r.actual));
        }
        for f in report.families.iter().filter(|f| f.label.contains("counterexample")) {
            stderr.push_str(&serde_json::to_string(&f.family).expect("record serializes"));
            stderr.push('\n');
        }
        Outcome { stdout, stderr, code: ExitCode::Violation }
    } else {
        Outcome::ok(stdout)
    }
}

fn construct(a: &ConstructArgs) -> CmdResult {
    let (n, k) = (a.n, a.k);
    let mut extra = BTreeMap::new();
    let (family, description) = match a.name {
        ConstructName::Star => (lib(star(n, k, a.center.unwrap_or(1)))?, "all k-sets through the centre"),
        ConstructName::Hm => {
            let b = match &a.b {
                Some(b) => lib(KSet::new(n, &parse_set(b)?))?,
                None => lib(KSet::new(n, &(2..=k + 1).collect::<Vec<_>>()))?,
            };
            (lib(hm_family(n, k, &b))?, "Hilton-Milner family: sets through 1 meeting B, together with B")
        }
        ConstructName::HmPrime => (lib(hm_prime(n, k))?, "sets with at least two elements of {1,2,3}"),
        ConstructName::J => {
            let i = need(a.i, "i")?;
            let anchors = match (&a.j, &a.e) {
                (Some(j), Some(e)) => Some(JAnchors { j: parse_set(j)?, e: parse_set(e)? }),
                (None, None) => None,
                _ => return Err(Outcome::usage("error: --j and --e go together\n")),
            };
            (lib(j_family(n, k, i, anchors.as_ref()))?, "J_i built from an (i+1)-set J through 1 and a (k-1)-set E")
        }
        ConstructName::FI => (lib(f_i_family(n, k, need(a.i, "i")?))?, "F_i: two interval sets and the sets through 1 avoiding [2,k+i]"),
        ConstructName::FSt => {
            let sets = a.extra.as_deref().map(parse_sets).transpose()?;
            (
                lib(f_st_family(n, k, need(a.s, "s")?, need(a.t, "t")?, sets.as_deref()))?,
                "F_{s,t}: sets through 1 meeting [2,sk+1], s blocks, and t-1 further sets through 1",
            )
        }
        ConstructName::StarRestricted => {
            let anchors = ksets(n, a.anchors.as_deref().ok_or_else(|| Outcome::usage("error: --anchors is required here\n"))?)?;
            (lib(star_restricted(n, k, &anchors, need(a.s, "s")?))?, "sets through 1 disjoint from fewer than s anchors")
        }
        ConstructName::StarRestrictedR => {
            let anchors = ksets(n, a.anchors.as_deref().ok_or_else(|| Outcome::usage("error: --anchors is required here\n"))?)?;
            (
                lib(star_restricted_multipartite(n, k, &anchors, need(a.s, "s")?, need(a.r, "r")?))?,
                "sets through r avoiding [r-1] and disjoint from fewer than s anchors",
            )
        }
        ConstructName::J1t | ConstructName::J1tr => {
            let (i, t) = (need(a.i, "i")?, need(a.t, "t")?);
            let anchors = j1t_anchors(n, k, i, a)?;
            if a.name == ConstructName::J1t {
                (lib(j_1t_family(n, k, i, t, anchors.as_ref()))?, "J_i^{1,t}: J_i with t-1 star sets per anchor")
            } else {
                let mode = match a.mode {
                    Mode::Literal => J1trMode::Literal,
                    Mode::Completed => J1trMode::Completed,
                };
                extra.insert("mode", json!(a.mode));
                (
                    lib(j_1t_r_family(n, k, i, t, need(a.r, "r")?, mode, anchors.as_ref()))?,
                    "J_{i,r}^{1,t}: the multipartite analogue of J_i^{1,t}",
                )
            }
        }
        ConstructName::RankedL => {
            let anchors = ksets(n, a.anchors.as_deref().ok_or_else(|| Outcome::usage("error: --anchors is required here\n"))?)?;
            (
                lib(ranked_l_family(n, k, need(a.s, "s")?, need(a.t, "t")?, &anchors))?,
                "restricted star with its anchors and t-1 further sets through 1",
            )
        }
        ConstructName::Hmnew3 => {
            let (s, t, beta) = (need(a.s, "s")?, need(a.t, "t")?, need(a.beta, "beta")?);
            let ex = lib(hmnew3_extremal(n, k, s, t, beta, a.budget))?;
            extra.insert("anchors", json!(ex.anchors.iter().map(KSet::elements).collect::<Vec<_>>()));
            extra.insert("extra", json!(ex.extra.iter().map(KSet::elements).collect::<Vec<_>>()));
            extra.insert("beta_hat", json!(ex.beta_hat));
            extra.insert("floor", json!(ex.floor));
            (ex.family, "extremal family for the removal-restricted problem: restricted star, anchors and extra sets")
        }
    };
    let params: BTreeMap<&str, u32> = [("n", Some(n)), ("k", Some(k)), ("i", a.i), ("s", a.s), ("t", a.t), ("beta", a.beta), ("r", a.r)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    let provenance = json!({
        "provenance": {
            "construction": a.name,
            "description": description,
            "params": params,
            "size": family.len(),
            "details": extra,
        }
    });
    Ok(Outcome::ok(format!("{}\n{}\n", family.to_jsonl(), provenance)))
}

fn j1t_anchors(n: u32, k: u32, i: u32, a: &ConstructArgs) -> std::result::Result<Option<J1tAnchors>, Outcome> {
    if a.xs.is_none() && a.e.is_none() && a.blocks.is_none() {
        return Ok(None);
    }
    let base = lib(J1tAnchors::default_for(n, k, i, a.r.unwrap_or(1)))?;
    let blocks = match &a.blocks {
        Some(b) => Some(b.split('|').map(parse_sets).collect::<std::result::Result<Vec<_>, _>>()?),
        None => None,
    };
    Ok(Some(J1tAnchors {
        xs: a.xs.as_deref().map(parse_set).transpose()?.unwrap_or(base.xs),
        e: a.e.as_deref().map(parse_set).transpose()?.unwrap_or(base.e),
        blocks,
    }))
}

fn bound(a: &BoundArgs, format: Option<Format>) -> CmdResult {
    let id: TheoremId = lib(a.id.parse())?;
    let parts = match &a.parts {
        Some(p) => p
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Outcome::usage(format!("error: bad part size {x:?}\n"))))
            .collect::<std::result::Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let params = BoundParams {
        n: a.n,
        k: a.k,
        s: a.s,
        t: a.t,
        beta: a.beta,
        gamma: a.gamma,
        r: a.r,
        i: a.i,
        l: a.l,
        ell: a.ell,
        chi: a.chi,
        eta: a.eta,
        parts,
    };
    let v = lib(evaluate_bound(&BoundQuery::new(id, params.clone())))?;
    let text = match format {
        None => format!("{}\n", v.value()),
        Some(f) => {
            let mut body = json!({ "id": id.name(), "params": params, "value": v.value().to_string() });
            if let BoundValue::TwoCase { small_k, large_k, small_k_applies, large_k_applies } = &v {
                body["small_k"] = json!(small_k.to_string());
                body["large_k"] = json!(large_k.to_string());
                body["small_k_applies"] = json!(small_k_applies);
                body["large_k_applies"] = json!(large_k_applies);
            }
            match f {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&body).expect("json")),
                Format::Csv => format!("id,value\n{},{}\n", id.name(), v.value()),
                Format::Md => format!("| id | value |\n|---|---|\n| {} | {} |\n", id.name(), v.value()),
            }
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(serde::Deserialize)]
struct GridFile {
    n: Vec<u32>,
    k: Vec<u32>,
    t: Vec<u32>,
}

fn consistency_anchor(check: &str) -> &'static str {
    match check {
        "j_i-size" => "size of the J_i construction",
        "j_i^{1,t}-size" => "J_i^{1,t} adds i(t-1) star sets to J_i",
        "thm1.9-vs-cor1.10" => "restricted-star bound at s=1, beta=0 matches the union-intersecting bound",
        "thm1.14-at-t1" => "gamma bound at t=1 is N_gamma + gamma",
        "n_i-telescoping" => "N_i - N_{i+1} telescopes to binomial differences",
        _ => "restricted star lower bound never exceeds the upper bound",
    }
}

fn consistency(cli: &Cli, a: &ConsistencyArgs) -> CmdResult {
    let points: Vec<GridPoint> = match &a.grid {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("error: cannot read {}: {e}\n", path.display())))?;
            let g: GridFile = serde_json::from_str(&text).map_err(|e| Outcome::usage(format!("error: bad grid file: {e}\n")))?;
            grid(g.n, &g.k, &g.t)
        }
        None => grid(10..=14, &[3, 4, 5], &[1, 2, 3]),
    };
    let records = consistency_matrix(&points)
        .into_iter()
        .map(|row| {
            let p = row.point;
            Record::new(
                &row.check,
                consistency_anchor(&row.check),
                &[("n", p.n as i64), ("k", p.k as i64), ("i", p.i as i64), ("t", p.t as i64)],
                row.expected,
                row.actual,
                row.verdict,
            )
        })
        .collect();
    let report = Report::new(config_echo(cli), records, Vec::new());
    let stdout = render(cli, &report, Format::Csv);
    Ok(Outcome { stdout, stderr: String::new(), code: if report.failed() { ExitCode::Violation } else { ExitCode::Pass } })
}

fn verify(cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let sweep = match (a.n, a.k, a.s, a.beta) {
        (Some(n), Some(k), Some(s), Some(b)) => Some((n, k, s, b)),
        (None, None, None, None) => None,
        _ => return Err(Outcome::usage("error: give all of --n --k --s --beta or none\n")),
    };
    if sweep.is_some() && a.suite != Suite::Lemma22 {
        return Err(Outcome::usage("error: --n --k --s --beta apply to the lemma22 suite only\n"));
    }
    let seed = cli.seed;
    let out = match a.suite {
        Suite::Constructions => suites::constructions(),
        Suite::Lemma22 => match sweep {
            Some(c) => suites::lemma22(&[c]),
            None => suites::lemma22(&suites::LEMMA22_CASES),
        },
        Suite::Peel => suites::peel(seed, a.count.unwrap_or(suites::PEEL_COUNT)),
        Suite::PairsBound => suites::pairs_bound(seed, a.count.unwrap_or(suites::PAIRS_COUNT)),
        Suite::Setpairs => suites::setpairs(),
        Suite::Isomorphism => suites::isomorphism(seed, a.count.unwrap_or(suites::ISO_COUNT)),
        Suite::Oracle => suites::oracle(),
        Suite::All => suites::all(seed),
    };
    Ok(report_outcome(cli, out))
}

fn constraint_spec(a: &SpecArgs) -> std::result::Result<ConstraintSpec, Outcome> {
    let pattern = match (&a.pattern, a.s, a.t) {
        (Some(p), _, _) => Some(
            p.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Outcome::usage(format!("error: bad part size {x:?}\n"))))
                .collect::<std::result::Result<Vec<_>, _>>()?,
        ),
        (None, Some(s), Some(t)) => Some(vec![s, t]),
        _ => None,
    };
    let spec = ConstraintSpec {
        pattern,
        ell_min: a.ell_min.map(|c| (a.r, c)),
        must_contain: a.contain.as_deref().map(parse_sets).transpose()?.unwrap_or_default(),
        must_avoid: a.avoid.as_deref().map(parse_sets).transpose()?.unwrap_or_default(),
    };
    lib(spec.validate(a.n, a.k))?;
    Ok(spec)
}

const A_SEARCH: &str = "exact maximum under the constraints";
const A_MAXIMAL: &str = "maximal families under the constraints, one per isomorphism class";

fn search(cli: &Cli, cmd: &SearchCommand) -> CmdResult {
    match cmd {
        SearchCommand::Max { spec: a, oracle } => {
            let spec = constraint_spec(a)?;
            let r = if *oracle {
                lib(oracle_max_family(a.n, a.k, &spec))?
            } else {
                lib(branch_and_bound_max(a.n, a.k, &spec, a.budget))?
            };
            let p = [("n", a.n as i64), ("k", a.k as i64)];
            let verdict = if r.optimal {
                unionfam::bounds::Verdict::Pass
            } else {
                unionfam::bounds::Verdict::Skipped(format!("budget exhausted after {} nodes", r.nodes_explored))
            };
            let rec = Record::new("search-max", A_SEARCH, &p, "optimal", format!("{} ({} nodes)", r.max_size, r.nodes_explored), verdict)
                .with_text("constraints", describe_spec(&spec));
            let fam = LabelledFamily { label: "witness".into(), family: r.witness.to_record() };
            let mut out = report_outcome(cli, SuiteOutput { records: vec![rec], families: vec![fam] });
            if r.wall_budget_hit {
                out.code = ExitCode::Budget;
            }
            Ok(out)
        }
        SearchCommand::Maximal { spec: a, limit } => {
            let spec = constraint_spec(a)?;
            let fams: Vec<Family> = lib(enumerate_maximal(a.n, a.k, &spec, *limit))?;
            let mut out = SuiteOutput::default();
            for (idx, f) in fams.iter().enumerate() {
                out.records.push(
                    Record::new("search-maximal", A_MAXIMAL, &[("n", a.n as i64), ("k", a.k as i64), ("class", idx as i64)], "-", f.len(), unionfam::bounds::Verdict::Pass)
                        .with_text("constraints", describe_spec(&spec)),
                );
                out.families.push(LabelledFamily { label: format!("class {idx:04}"), family: f.to_record() });
            }
            Ok(report_outcome(cli, out))
        }
    }
}

fn random(_cli: &Cli, a: &RandomArgs) -> CmdResult {
    let spec = match &a.repair {
        Some(p) => Some(ConstraintSpec::pattern(
            &p.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Outcome::usage(format!("error: bad part size {x:?}\n"))))
                .collect::<std::result::Result<Vec<_>, _>>()?,
        )),
        None => None,
    };
    let f = lib(random_family(a.n, a.k, a.size, _cli.seed, spec.as_ref()))?;
    Ok(Outcome::ok(format!("{}\n", f.to_jsonl())))
}
