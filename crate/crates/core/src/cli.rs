//! Command-line front end. [`main_with`] holds the whole program so that
//! tests can drive it in-process.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::analysis::{Analysis, RingAnalysis};
use crate::corpus::{generate_corpus, CorpusSpec, CORPUS_ENV};
use crate::error::{Error, Result};
use crate::hunter::{hunt, HuntTarget};
use crate::lattice::{submodule_generated, SubmoduleLattice};
use crate::module::{Module, MODULE_ORDER_BOUND};
use crate::recipe::ModuleSpec;
use crate::ring::RING_ORDER_BOUND;
use crate::subset::SubSet;
use crate::suite::{run_suite, SuiteOptions};

/// Contents of a `--config` file. Every field is optional; each command
/// reads the ones it needs.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// The module analysed by `check` and `lattice`.
    pub module: Option<ModuleSpec>,
    pub label: Option<String>,
    /// Generators of a single submodule to report on in `check`.
    pub submodule: Option<Vec<usize>>,
    /// Claim IDs for `verify`.
    pub claims: Option<Vec<String>>,
    /// Corpus for `verify` and `hunt`.
    pub corpus: Option<CorpusSpec>,
    pub target: Option<HuntTarget>,
    pub budget: Option<usize>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "radform", version, about = "Prime radicals, envelopes and the radical formula on finite modules")]
struct Cli {
    /// JSON config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path for structured records (verify) or findings (hunt).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bound on ring order (corpus and constructed rings).
    #[arg(long, global = true)]
    max_ring_size: Option<usize>,
    /// Comma-separated claim IDs.
    #[arg(long, global = true, value_delimiter = ',')]
    filter: Option<Vec<String>>,
    /// Number of corpus instances to search.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include timings in the structured records.
    #[arg(long, global = true)]
    timings: bool,
    /// Evaluate the given claim with its conclusion negated.
    #[cfg(feature = "fault-injection")]
    #[arg(long, global = true)]
    negate: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full analysis of one module.
    Check,
    /// Evaluate the claim registry on a corpus.
    Verify,
    /// Search a corpus for instances of a target property.
    Hunt {
        /// Q1, Q2, RF_NOT_2PRIMAL or INCLUSION3_FAIL.
        #[arg(long)]
        target: Option<String>,
    },
    /// Submodule lattice with generators and cover relations.
    Lattice,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Verify => "verify",
            Command::Hunt { .. } => "hunt",
            Command::Lattice => "lattice",
        }
    }
}

/// Overrides available to in-process callers.
#[derive(Debug, Clone, Default)]
pub struct Hooks {
    pub negate: Option<String>,
}

/// Exit status for an error: 1 for internal inconsistencies, 2 for bad
/// input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistency(_) => 1,
        _ => 2,
    }
}

/// Runs the program on `args` (including the program name).
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, hooks: &Hooks) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let _ = writeln!(
        out,
        "# radform {} {} at unix time {stamp}",
        env!("CARGO_PKG_VERSION"),
        cli.command.name()
    );
    let result = load_config(cli.config.as_deref()).and_then(|cfg| run(&cli, cfg, out, hooks));
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    };
    let _ = writeln!(err, "finished in {:.2}s", start.elapsed().as_secs_f64());
    code
}

pub fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
        }
    }
}

fn run(cli: &Cli, cfg: RunConfig, out: &mut dyn Write, hooks: &Hooks) -> Result<i32> {
    match &cli.command {
        Command::Check => check(cli, &cfg, out),
        Command::Lattice => lattice(cli, &cfg, out),
        Command::Verify => verify(cli, cfg, out, hooks),
        Command::Hunt { target } => hunt_cmd(cli, cfg, target.as_deref(), out),
    }
}

fn build_module(cli: &Cli, cfg: &RunConfig) -> Result<(String, Arc<Module>)> {
    let spec = cfg
        .module
        .as_ref()
        .ok_or_else(|| Error::Config("the config must contain a \"module\"".into()))?;
    let m = spec.build_within(cli.max_ring_size.unwrap_or(RING_ORDER_BOUND), MODULE_ORDER_BOUND)?;
    let label = cfg.label.clone().unwrap_or_else(|| m.label().to_string());
    Ok((label, m))
}

fn corpus_spec(cli: &Cli, cfg: &RunConfig) -> Result<(String, CorpusSpec)> {
    let (label, mut spec) = match &cfg.corpus {
        Some(s) => ("config".to_string(), s.clone()),
        None => match std::env::var(CORPUS_ENV) {
            Ok(v) if !v.trim().is_empty() => (CORPUS_ENV.to_string(), CorpusSpec::from_env()?),
            _ => ("default".to_string(), CorpusSpec::default()),
        },
    };
    if let Some(n) = cli.max_ring_size {
        spec.ring_order_max = n;
    }
    Ok((label, spec))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(cli: &Cli, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let (label, m) = build_module(cli, cfg)?;
    let ra = Arc::new(RingAnalysis::new(m.ring().clone())?);
    let a = Analysis::new(m.clone(), ra.clone())?;
    let r = &ra.ring;
    writeln!(out, "module {label}: order {} over {} (order {})", m.order(), r.label(), r.order())?;
    writeln!(
        out,
        "ring: commutative={} ideals={} sqrt(0)={} beta(R)={} beta_co(R)={} J(R)={} 2-primal={}",
        yes(ra.commutative),
        ra.ideals.len(),
        ra.nil,
        ra.beta,
        ra.beta_co,
        ra.jacobson,
        yes(ra.two_primal)
    )?;
    let rf_all = a.rf_failure().is_none();
    writeln!(
        out,
        "lattice: {} submodules, {} cover edges",
        a.len(),
        a.ctx.lattice().hasse_edges().len()
    )?;
    writeln!(
        out,
        "module: 2-primal={} RF everywhere={} reduced={}/{}/{} beta(R)M={} beta_co(R)M={}",
        yes(a.two_primal_module()),
        yes(rf_all),
        yes(a.reduced[0]),
        yes(a.reduced[1]),
        yes(a.reduced[2]),
        a.sub(a.beta_r_m),
        a.sub(a.beta_co_r_m)
    )?;
    let only = match &cfg.submodule {
        None => None,
        Some(gens) => {
            if let Some(&x) = gens.iter().find(|&&x| x >= m.order()) {
                return Err(Error::Config(format!("submodule generator {x} is not an element of {label}")));
            }
            let s = submodule_generated(&m, &SubSet::from_indices(m.order(), gens.iter().copied()));
            Some(a.ctx.lattice().require(s.members())?)
        }
    };
    for i in (0..a.len()).filter(|&i| only.is_none_or(|o| o == i)) {
        let d = &a.subs[i];
        let ctx = &a.ctx;
        writeln!(out, "N{i} = {} = <{}>", a.sub(i), join(&ctx.lattice().generators(i)))?;
        writeln!(
            out,
            "  prime={} completely_prime={} semiprime={} completely_semiprime={}",
            yes(ctx.is_prime(i)),
            yes(ctx.is_completely_prime(i)),
            yes(ctx.is_semiprime(i)),
            yes(ctx.is_completely_semiprime(i))
        )?;
        let flags: Vec<String> = d.classes.flags().iter().map(|(k, v)| format!("{k}={}", yes(*v))).collect();
        writeln!(out, "  {}", flags.join(" "))?;
        for (k, w) in &d.classes.witnesses {
            writeln!(out, "  not {k}: witness ({})", join(w))?;
        }
        writeln!(
            out,
            "  beta={} beta_co={} E={} (submodule: {}) <E>={}",
            a.sub(ctx.beta(i)),
            a.sub(ctx.beta_co(i)),
            d.envelope.raw,
            yes(d.raw_is_submodule),
            a.sub(d.generated)
        )?;
        writeln!(out, "  RF={} 2-primal={}", yes(d.rf), yes(d.two_primal))?;
    }
    Ok(0)
}

fn lattice(cli: &Cli, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let (label, m) = build_module(cli, cfg)?;
    let lat = SubmoduleLattice::of(&m)?;
    let edges = lat.hasse_edges();
    writeln!(
        out,
        "lattice of {label}: {} submodules, {} cover edges",
        lat.len(),
        edges.len()
    )?;
    for (i, s) in lat.submodules().iter().enumerate() {
        writeln!(out, "N{i} = {s} = <{}>", join(&lat.generators(i)))?;
    }
    for (lo, hi) in edges {
        writeln!(out, "N{lo} < N{hi}")?;
    }
    Ok(0)
}

fn verify(cli: &Cli, cfg: RunConfig, out: &mut dyn Write, hooks: &Hooks) -> Result<i32> {
    let (label, spec) = corpus_spec(cli, &cfg)?;
    let corpus = generate_corpus(&spec)?;
    let claims = cli.filter.clone().or(cfg.claims);
    #[cfg(feature = "fault-injection")]
    let negate = cli.negate.clone().or(hooks.negate.clone());
    #[cfg(not(feature = "fault-injection"))]
    let negate = hooks.negate.clone();
    let opts = SuiteOptions {
        claims: claims.map(|v| v.into_iter().map(|s| s.trim().to_uppercase()).collect()),
        negate,
        timings: cli.timings,
    };
    let threads = cli.threads.or(cfg.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let report = pool.install(|| run_suite(&corpus, &label, &opts))?;
    write!(out, "{}", report.render_text())?;
    if let Some(path) = cli.out.clone().or(cfg.out) {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        report.write_jsonl(&mut f)?;
        f.flush()?;
    }
    Ok(report.exit_code())
}

fn hunt_cmd(cli: &Cli, cfg: RunConfig, target: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let target = match target {
        Some(t) => t.parse()?,
        None => cfg
            .target
            .ok_or_else(|| Error::Config("hunt needs --target or a \"target\" in the config".into()))?,
    };
    let (_, spec) = corpus_spec(cli, &cfg)?;
    let budget = cli.budget.or(cfg.budget);
    let threads = cli.threads.or(cfg.threads).unwrap_or(0);
    let findings = hunt(target, &spec, budget, threads)?;
    writeln!(
        out,
        "{target}: {} hits among {} examined instances ({} taken, {} skipped)",
        findings.hits.len(),
        findings.examined,
        findings.budget_consumed,
        findings.skipped.len()
    )?;
    writeln!(out, "target: {}", findings.description)?;
    for h in &findings.hits {
        writeln!(out, "hit {}", h.instance.id)?;
    }
    for (id, reason) in &findings.skipped {
        writeln!(out, "skipped {id}: {reason}")?;
    }
    if let Some(path) = cli.out.clone().or(cfg.out) {
        let mut text = serde_json::to_string_pretty(&findings).map_err(|e| Error::Config(e.to_string()))?;
        text.push('\n');
        std::fs::write(&path, text)?;
    }
    Ok(0)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
