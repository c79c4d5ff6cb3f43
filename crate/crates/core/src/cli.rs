//! Command-line front end for the `fmdel` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::containment::find_minor;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::folio::{folio, folio_closure, pattern_universe, signature_of};
use crate::graph::{BoundariedGraph, Graph};
use crate::instances::{gen_gnp, gen_grid, gen_partial_ktree_with_drop, gen_wall, DEFAULT_DROP};
use crate::representatives::census::{row_from_build, summarise};
use crate::representatives::{build_rep_table, Caps};
use crate::solver::{
    oracle_solve, oracle_solve_with_cap, solve, verify_deletion_set, Compression, SolveOptions, DEFAULT_MAX_STATES,
};
use crate::treedecomp::{
    check_td, emit_gr, emit_td, exact::EXACT_TW_CAP, exact_tw, minfill_td, parse_gr_with_warnings, parse_td, to_nice,
    validate_td, TreeDecomposition,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "fmdel", version, about = "Minimum vertex deletion to exclude a finite set of minors")]
pub struct Cli {
    /// Worker threads for parallel table builds and cross-checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance exactly along a tree decomposition.
    Solve(SolveArgs),
    /// Brute-force minimum deletion set (small graphs only).
    Oracle(OracleArgs),
    /// Compare the solver with the brute-force oracle on random instances.
    Crosscheck(CrosscheckArgs),
    /// Build representative tables and a census for a range of boundary sizes.
    Reps(RepsArgs),
    /// Print the folio of a boundaried graph.
    Folio(FolioArgs),
    /// Test whether a pattern is a minor of a graph.
    MinorTest(MinorArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Validate a tree decomposition against a graph.
    ValidateTd(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Preset (vertex-cover, fvs, planarization) or names such as K4,C4.
    #[arg(long, default_value = "fvs")]
    pub family: String,
    /// Patterns in the boundaried-graph text encoding with t = 0.
    #[arg(long, conflicts_with = "family")]
    pub family_file: Option<PathBuf>,
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<Family> {
        match &self.family_file {
            Some(p) => Family::parse_patterns(&read(p)?),
            None => Family::preset(&self.family),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance in PACE `.gr` format.
    pub instance: PathBuf,
    /// Decomposition in PACE `.td` format; computed when omitted.
    #[arg(long)]
    pub td: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Folio detail (defaults to h of the family).
    #[arg(long)]
    pub d: Option<usize>,
    /// Key states by their canonical graph without representative replacement.
    #[arg(long)]
    pub no_compress: bool,
    #[arg(long)]
    pub no_dominance: bool,
    #[arg(long)]
    pub no_bound: bool,
    /// Skip back-pointers and the deletion set.
    #[arg(long)]
    pub no_recover: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,
    #[arg(long, hide = true)]
    pub inject_cost_fault: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = crate::solver::ORACLE_CAP)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Families to check, repeatable.
    #[arg(long = "family", default_values_t = vec!["fvs".to_string()])]
    pub families: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_cost_fault: bool,
}

#[derive(Debug, Args)]
pub struct RepsArgs {
    /// Largest boundary size; tables are built for 0..=t-max.
    #[arg(long, default_value_t = 3)]
    pub t_max: usize,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Vertex cap is t + n-extra; edge cap is one more than the vertex cap.
    #[arg(long, default_value_t = 6)]
    pub n_extra: usize,
    /// Directory for table files and the census CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FolioArgs {
    /// File holding one boundaried graph in the text encoding.
    pub graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// `enumerate` (pattern testing) or `closure` (downward closure).
    #[arg(long, default_value = "enumerate")]
    pub method: String,
}

#[derive(Debug, Args)]
pub struct MinorArgs {
    /// Host graph in `.gr` format.
    pub host: PathBuf,
    /// Named pattern such as K5 or K33.
    #[arg(long, default_value = "K3")]
    pub pattern: String,
    /// Pattern file in the boundaried-graph text encoding with t = 0.
    #[arg(long, conflicts_with = "pattern")]
    pub pattern_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Elementary wall of odd height r, optionally subdivided.
    Wall {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The a × b grid.
    Grid {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random partial k-tree with its width-k decomposition.
    Pkt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DROP)]
        drop: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erdős–Rényi graph G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub graph: PathBuf,
    pub td: PathBuf,
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn load_graph(p: &Path) -> Result<Graph> {
    let (g, warnings) = parse_gr_with_warnings(&read(p)?)?;
    for w in warnings {
        eprintln!("warning: {}: {w}", p.display());
    }
    Ok(g)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn announce(family: &Family, d: usize) {
    eprintln!("family {} (h = {}), folio detail d = {d}", family.descriptor(), family.h());
}

/// Decomposition used by `solve` when none is supplied.
pub fn default_td(g: &Graph) -> Result<TreeDecomposition> {
    if g.n() <= EXACT_TW_CAP {
        Ok(exact_tw(g)?.1)
    } else {
        Ok(minfill_td(g))
    }
}

/// Runs a parsed command, writing machine output to stdout. Returns the
/// process exit code for outcomes that are not errors (such as a failed
/// validation report).
pub fn run(cli: Cli) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli.command))
}

fn print_json(v: &impl Serialize) {
    print_text(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

// A closed downstream pipe is not an error for us.
fn print_text(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Solve(a) => cmd_solve(&a).map(|v| {
            print_json(&v);
            0
        }),
        Command::Oracle(a) => {
            let g = load_graph(&a.instance)?;
            let family = a.family.resolve()?;
            let (opt, set) = oracle_solve_with_cap(&g, &family, a.max_n)?;
            print_json(&json!({
                "schema": SCHEMA_VERSION,
                "instance": a.instance.display().to_string(),
                "family": family.descriptor(),
                "opt": opt,
                "deletion_set": one_based(&set),
            }));
            Ok(0)
        }
        Command::Crosscheck(a) => {
            let report = cmd_crosscheck(&a)?;
            print_json(&report);
            Ok(if report.mismatches.is_empty() { 0 } else { Error::Mismatch(String::new()).exit_code() })
        }
        Command::Reps(a) => cmd_reps(&a).map(|v| {
            print_json(&v);
            0
        }),
        Command::Folio(a) => cmd_folio(&a).map(|v| {
            print_json(&v);
            0
        }),
        Command::MinorTest(a) => {
            let host = load_graph(&a.host)?;
            let (name, pattern) = match &a.pattern_file {
                Some(p) => {
                    let f = Family::parse_patterns(&read(p)?)?;
                    (f.names()[0].clone(), f.patterns()[0].clone())
                }
                None => {
                    let f = Family::parse_names(&a.pattern)?;
                    (f.names()[0].clone(), f.patterns()[0].clone())
                }
            };
            let model = find_minor(&host, &pattern)?;
            if let Some(m) = &model {
                m.validate(&host, &pattern)?;
            }
            print_json(&json!({
                "schema": SCHEMA_VERSION,
                "pattern": name,
                "minor": model.is_some(),
                "branch_sets": model.as_ref().map(|m| m.branch_sets.iter().map(|b| one_based(b)).collect::<Vec<_>>()),
            }));
            Ok(0)
        }
        Command::Gen(g) => cmd_gen(g).map(|_| 0),
        Command::ValidateTd(a) => {
            let g = load_graph(&a.graph)?;
            let td = parse_td(&read(&a.td)?)?;
            if td.n != g.n() {
                return Err(Error::Validation(format!("decomposition is for {} vertices, graph has {}", td.n, g.n())));
            }
            let v = check_td(&g, &td);
            print_json(&json!({
                "schema": SCHEMA_VERSION,
                "valid": v.is_empty(),
                "width": td.width(),
                "violations": v.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }));
            Ok(if v.is_empty() { 0 } else { Error::Validation(String::new()).exit_code() })
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub schema: u32,
    pub instance: String,
    pub family: String,
    pub width: usize,
    pub d: usize,
    pub opt: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deletion_set: Option<Vec<usize>>,
    pub stats: crate::solver::SolveStats,
}

pub fn cmd_solve(a: &SolveArgs) -> Result<SolveReport> {
    let g = load_graph(&a.instance)?;
    let family = a.family.resolve()?;
    let td = match &a.td {
        Some(p) => {
            let td = parse_td(&read(p)?)?;
            validate_td(&g, &td)?;
            td
        }
        None => default_td(&g)?,
    };
    let nice = to_nice(&td)?;
    let opts = SolveOptions {
        d: a.d,
        compression: if a.no_compress { Compression::Off } else { Compression::Folio },
        dominance: !a.no_dominance,
        upper_bound: !a.no_bound,
        recover: !a.no_recover,
        max_states: a.max_states,
        inject_cost_fault: a.inject_cost_fault,
    };
    announce(&family, opts.d.unwrap_or_else(|| family.h()));
    let sol = solve(&g, &family, &nice, &opts)?;
    if let Some(s) = &sol.deletion_set {
        if !verify_deletion_set(&g, &family, s)? || s.len() != sol.opt {
            return Err(Error::Mismatch("recovered deletion set does not verify".into()));
        }
    }
    Ok(SolveReport {
        schema: SCHEMA_VERSION,
        instance: a.instance.display().to_string(),
        family: family.descriptor(),
        width: sol.width,
        d: sol.d,
        opt: sol.opt,
        deletion_set: sol.deletion_set.as_deref().map(one_based),
        stats: sol.stats,
    })
}

#[derive(Debug, Serialize)]
pub struct FamilyAgreement {
    pub family: String,
    pub agree: usize,
    pub total: usize,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub family: String,
    pub instance: usize,
    pub solver: usize,
    pub oracle: usize,
    pub graph: String,
}

#[derive(Debug, Serialize)]
pub struct CrosscheckReport {
    pub schema: u32,
    pub count: usize,
    pub n_max: usize,
    pub seed: u64,
    pub families: Vec<FamilyAgreement>,
    pub mismatches: Vec<Mismatch>,
}

/// Random instance `i` of a cross-check run: Erdős–Rényi graphs with an
/// exact decomposition alternate with partial 2- and 3-trees.
pub fn crosscheck_instance(seed: u64, i: usize, n_max: usize) -> Result<(Graph, TreeDecomposition)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
    let n = rng.gen_range(1..=n_max.max(1));
    let sub = rng.gen::<u64>();
    let k = rng.gen_range(2..=3usize);
    if i % 2 == 1 && n > k {
        gen_partial_ktree_with_drop(n, k, rng.gen_range(0.0..0.5), sub)
    } else {
        let g = gen_gnp(n, rng.gen_range(0.15..0.7), sub)?;
        let td = exact_tw(&g)?.1;
        Ok((g, td))
    }
}

pub fn cmd_crosscheck(a: &CrosscheckArgs) -> Result<CrosscheckReport> {
    if a.n_max > crate::solver::ORACLE_CAP {
        return Err(Error::Invalid(format!("n-max exceeds the oracle cap {}", crate::solver::ORACLE_CAP)));
    }
    let families: Vec<Family> = a.families.iter().map(|f| Family::preset(f)).collect::<Result<_>>()?;
    let opts = SolveOptions { inject_cost_fault: a.inject_cost_fault, ..Default::default() };
    let mut agreements = Vec::new();
    let mut mismatches = Vec::new();
    for family in &families {
        announce(family, family.h());
        let results: Vec<Result<Option<Mismatch>>> = (0..a.count)
            .into_par_iter()
            .map(|i| {
                let (g, td) = crosscheck_instance(a.seed, i, a.n_max)?;
                let sol = solve(&g, family, &to_nice(&td)?, &opts)?;
                let (oracle, _) = oracle_solve(&g, family)?;
                let set_ok = match &sol.deletion_set {
                    Some(s) => s.len() == sol.opt && verify_deletion_set(&g, family, s)?,
                    None => true,
                };
                Ok((sol.opt != oracle || !set_ok).then(|| Mismatch {
                    family: family.descriptor(),
                    instance: i,
                    solver: sol.opt,
                    oracle,
                    graph: emit_gr(&g),
                }))
            })
            .collect();
        let mut agree = 0;
        for r in results {
            match r? {
                Some(m) => mismatches.push(m),
                None => agree += 1,
            }
        }
        eprintln!("{}: {agree}/{} agree", family.descriptor(), a.count);
        agreements.push(FamilyAgreement { family: family.descriptor(), agree, total: a.count });
    }
    Ok(CrosscheckReport { schema: SCHEMA_VERSION, count: a.count, n_max: a.n_max, seed: a.seed, families: agreements, mismatches })
}

pub fn census_caps(t: usize, n_extra: usize) -> Caps {
    Caps { n_max: t + n_extra, m_max: t + n_extra + 1 }
}

pub fn cmd_reps(a: &RepsArgs) -> Result<crate::representatives::CensusReport> {
    let family = a.family.resolve()?;
    announce(&family, a.d);
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::new();
    for t in 0..=a.t_max {
        let caps = census_caps(t, a.n_extra);
        let start = std::time::Instant::now();
        let build = build_rep_table(t, a.d, &family, caps)?;
        let secs = start.elapsed().as_secs_f64();
        eprintln!("t = {t}: {} classes from {} graphs in {secs:.1}s", build.table.len(), build.enumerated);
        if let Some(dir) = &a.out {
            build.table.save(&dir.join(format!("table-t{t}-d{}.txt", a.d)))?;
        }
        rows.push(row_from_build(t, caps, &build, secs));
    }
    let report = summarise(a.d, &family, rows);
    if let Some(dir) = &a.out {
        fs::write(dir.join("census.csv"), report.to_csv())?;
        fs::write(dir.join("census.json"), serde_json::to_string_pretty(&report).expect("serializable"))?;
    }
    Ok(report)
}

pub fn cmd_folio(a: &FolioArgs) -> Result<serde_json::Value> {
    let g = BoundariedGraph::parse(&read(&a.graph)?)?;
    let f = match a.method.as_str() {
        "enumerate" => folio(&g, a.d)?,
        "closure" => folio_closure(&g, a.d)?,
        other => return Err(Error::Invalid(format!("unknown folio method {other:?}"))),
    };
    let u = pattern_universe(g.t(), a.d)?;
    let sig = signature_of(&g.boundary_edges(), &f, &u);
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "t": g.t(),
        "d": a.d,
        "signature": sig.to_hex(),
        "members": f.members().iter().map(|&i| u.pattern(i).to_inline()).collect::<Vec<_>>(),
    }))
}

fn write_instance(out: &Option<PathBuf>, g: &Graph, td: Option<&TreeDecomposition>, meta: serde_json::Value) -> Result<()> {
    match out {
        None => print_text(&emit_gr(g)),
        Some(prefix) => {
            if let Some(parent) = prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(prefix.with_extension("gr"), emit_gr(g))?;
            if let Some(td) = td {
                fs::write(prefix.with_extension("td"), emit_td(td))?;
            }
            fs::write(prefix.with_extension("json"), serde_json::to_string_pretty(&meta).expect("serializable"))?;
            print_json(&meta);
        }
    }
    Ok(())
}

pub fn cmd_gen(cmd: GenCommand) -> Result<()> {
    match cmd {
        GenCommand::Wall { r, subdivide, out } => {
            let w = gen_wall(r, subdivide)?;
            w.check()?;
            let meta = json!({"schema": SCHEMA_VERSION, "kind": "wall", "wall": w.meta()});
            write_instance(&out, &w.graph, None, meta)
        }
        GenCommand::Grid { a, b, out } => {
            let g = gen_grid(a, b)?;
            let td = minfill_td(&g);
            let meta = json!({"schema": SCHEMA_VERSION, "kind": "grid", "a": a, "b": b, "n": g.n(), "m": g.m(), "width": td.width()});
            write_instance(&out, &g, Some(&td), meta)
        }
        GenCommand::Pkt { n, k, seed, drop, out } => {
            let (g, td) = gen_partial_ktree_with_drop(n, k, drop, seed)?;
            let meta = json!({"schema": SCHEMA_VERSION, "kind": "pkt", "n": n, "k": k, "seed": seed, "drop": drop, "m": g.m(), "width": td.width()});
            write_instance(&out, &g, Some(&td), meta)
        }
        GenCommand::Gnp { n, p, seed, out } => {
            let g = gen_gnp(n, p, seed)?;
            let meta = json!({"schema": SCHEMA_VERSION, "kind": "gnp", "n": n, "p": p, "seed": seed, "m": g.m()});
            write_instance(&out, &g, None, meta)
        }
    }
}
