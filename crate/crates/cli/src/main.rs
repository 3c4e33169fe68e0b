//! Command-line workbench around the exact free-algebra core.
//!
//! Exit codes: 0 when every asserted check passes, 1 on a failed assertion
//! (a lemma sweep with failures, an invalid schedule, a missed
//! certificate), 2 on configuration or resource errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use nilfree_core::checks::{
    self, convolution_suite, factor_suite, independence_suite, partition_suite, projection_suite,
    SuiteReport,
};
use nilfree_core::pipeline::{ExponentRule, ExponentRuleName, RunConfig};
use nilfree_core::report::{
    CertificateEntry, Report, TowerRouteEntry, TowerSection, VanishingLevel, VanishingSection,
};
use nilfree_core::rng::SplitMix64;
use nilfree_core::{
    build_tower, enumerate_algebra_elements, enumerate_binwords, enumerate_scalars,
    freeness_certificate, oracle_rank_check, poly_from_json, poly_to_json, run_construct,
    xy_expand, BinWord, FieldSpec, Poly, RTower, Schedule, ScheduleMode,
};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(
    name = "nilfree",
    version,
    about = "Exact-arithmetic workbench for graded free-algebra constructions"
)]
struct Cli {
    /// JSON run configuration; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Ground field: Q, F2, F5, ... (or Fp:<p>).
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,

    /// Schedule validation mode.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<ScheduleMode>,

    /// Record wall-clock timings in the report (off by default so that
    /// identical runs stay byte-identical).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structural lemma suites (convolution, independence, factor
    /// harness, projection contract, partitions, order laws).
    LemmaCheck(LemmaCheckArgs),
    /// Validate a schedule and, when it is buildable, realize its tower.
    Tower(TowerArgs),
    /// Random towers: check that the block-ideal sum vanishes one level up.
    Vanishing(VanishingArgs),
    /// Certificate searches per tower level plus freeness certificates for
    /// the configured construction.
    Certify(CertifyArgs),
    /// The full pipeline: enumerate, truncate the ideal, certify freeness.
    Construct,
    /// Expand a collapsed word through the commuting substitution.
    Expand(ExpandArgs),
    /// Print a field or algebra-element enumeration prefix.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct LemmaCheckArgs {
    /// Exhaustive sweeps go up to this collapsed-word degree.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Randomized sample count for the factor and projection suites.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Args)]
struct TowerArgs {
    /// Comma-separated block degrees, e.g. 2,4,8. Arbitrarily large values
    /// are fine for validation; realization needs small ones.
    #[arg(long, value_parser = parse_schedule)]
    schedule: Option<ScheduleArg>,
    /// Validate only; skip realization even for small schedules.
    #[arg(long)]
    validate_only: bool,
}

#[derive(Args)]
struct VanishingArgs {
    #[arg(long, value_parser = parse_schedule)]
    schedule: Option<ScheduleArg>,
    /// Number of distinguished elements drawn per level.
    #[arg(long, default_value_t = 2)]
    f_size: usize,
    /// Number of random towers to sweep.
    #[arg(long, default_value_t = 3)]
    towers: usize,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, value_parser = parse_schedule)]
    schedule: Option<ScheduleArg>,
    /// Number of distinguished elements drawn per level when the config
    /// supplies none.
    #[arg(long, default_value_t = 1)]
    f_size: usize,
    /// Certify freeness for all degrees up to this one.
    #[arg(long)]
    d_cert: Option<usize>,
    /// Certify against an explicit ideal description
    /// ({"generators": [...], "d_max": n}) instead of the enumerated
    /// construction.
    #[arg(long)]
    ideal: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Collapsed word over {x, y}, e.g. xyx.
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Enumerate field elements instead of algebra elements.
    #[arg(long, conflicts_with = "elements")]
    scalars: bool,
    /// Enumerate algebra elements (the default).
    #[arg(long)]
    elements: bool,
    #[arg(long, default_value_t = 10)]
    count: usize,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Q);
    }
    let digits = s
        .strip_prefix("Fp:")
        .or_else(|| s.strip_prefix("fp:"))
        .or_else(|| s.strip_prefix('F'))
        .or_else(|| s.strip_prefix('f'))
        .ok_or_else(|| format!("unknown field {s:?}; use Q, F<p>, or Fp:<p>"))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("cannot parse modulus in {s:?}"))?;
    FieldSpec::prime_field(p).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<ScheduleMode, String> {
    match s.to_ascii_lowercase().as_str() {
        "toy" => Ok(ScheduleMode::Toy),
        "strict" => Ok(ScheduleMode::Strict),
        other => Err(format!("unknown mode {other:?}; use toy or strict")),
    }
}

/// A comma-separated schedule, parsed as one argument value.
#[derive(Clone)]
struct ScheduleArg(Vec<BigUint>);

fn parse_schedule(s: &str) -> Result<ScheduleArg, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigUint>()
                .map_err(|_| format!("bad schedule entry {part:?}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(ScheduleArg)
}

/// Outcome of a subcommand: the report plus whether its assertions held.
struct Run {
    report: Report,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(run) => {
            let bytes = run.report.to_json_bytes();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &bytes) {
                    eprintln!("cannot write report to {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", String::from_utf8_lossy(&bytes));
            }
            if run.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Run> {
    let started = Instant::now();
    let cfg = load_config(cli)?;
    let mut run = match &cli.command {
        Command::LemmaCheck(args) => lemma_check(&cfg, args)?,
        Command::Tower(args) => tower_cmd(cli, &cfg, args)?,
        Command::Vanishing(args) => vanishing_cmd(cli, &cfg, args)?,
        Command::Certify(args) => certify_cmd(cli, &cfg, args)?,
        Command::Construct => {
            let report = run_construct(&cfg).map_err(pipeline_to_anyhow)?;
            let ok = report
                .ranks
                .as_ref()
                .map(|ranks| ranks.iter().all(|r| r.agrees_with_certificates))
                .unwrap_or(true);
            Run { report, ok }
        }
        Command::Expand(args) => expand_cmd(&cfg, args)?,
        Command::Enumerate(args) => enumerate_cmd(&cfg, args)?,
    };
    if cli.timings {
        let mut timings = BTreeMap::new();
        timings.insert("total_ms".to_string(), started.elapsed().as_millis() as u64);
        run.report.timings = Some(timings);
    }
    Ok(run)
}

/// Configuration resolution: file, then global flag overrides, then
/// defaults.
fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            serde_json::from_str::<RunConfig>(&text)
                .with_context(|| format!("cannot parse config {}", path.display()))?
        }
        None => RunConfig {
            field: FieldSpec::Fp { p: 2 },
            schedule: vec![2, 4],
            mode: ScheduleMode::Toy,
            exponents: ExponentRule::Named(ExponentRuleName::AutoEven),
            count: 3,
            d_max: 6,
            d_cert: 3,
            seed: 0,
            f_sets: None,
            auto_f_probe: None,
        },
    };
    if let Some(field) = cli.field {
        cfg.field = field;
    }
    if let Some(mode) = cli.mode {
        cfg.mode = mode;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn pipeline_to_anyhow(e: nilfree_core::PipelineError) -> anyhow::Error {
    anyhow!("{e}")
}

fn config_echo(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

fn lemma_check(cfg: &RunConfig, args: &LemmaCheckArgs) -> Result<Run> {
    let field = cfg.field;
    let d = args.max_degree;
    let mut suites: Vec<SuiteReport> = Vec::new();
    suites.push(checks::beta_suite(d.min(4)).map_err(|e| anyhow!("{e}"))?);
    suites.push(checks::order_suite(d.min(8)).map_err(|e| anyhow!("{e}"))?);
    suites.push(partition_suite(field, d.min(5)).map_err(|e| anyhow!("{e}"))?);
    suites.push(convolution_suite(field, d.min(6)).map_err(|e| anyhow!("{e}"))?);
    suites.push(independence_suite(field, d.min(5), d.min(4)).map_err(|e| anyhow!("{e}"))?);
    let factor_field = match field {
        FieldSpec::Q => FieldSpec::Fp { p: 5 },
        other => other,
    };
    suites.push(
        factor_suite(
            factor_field,
            args.samples,
            &[(1, 1), (1, 2), (2, 1)],
            cfg.seed,
        )
        .map_err(|e| anyhow!("{e}"))?,
    );
    suites
        .push(projection_suite(field, args.samples, 3, cfg.seed ^ 1).map_err(|e| anyhow!("{e}"))?);

    let ok = suites.iter().all(|s| s.ok);
    let mut report = Report::new(config_echo(cfg));
    report.lemma_results = Some(suites);
    Ok(Run { report, ok })
}

fn schedule_from(cli_schedule: &Option<ScheduleArg>, cfg: &RunConfig) -> Schedule {
    match cli_schedule {
        Some(m) => Schedule::new(m.0.clone(), cfg.mode),
        None => Schedule::new(
            cfg.schedule.iter().map(|&v| BigUint::from(v)).collect(),
            cfg.mode,
        ),
    }
}

fn config_f_sets(cfg: &RunConfig) -> Result<Option<Vec<Vec<Poly>>>> {
    match &cfg.f_sets {
        None => Ok(None),
        Some(sets) => {
            let mut out = Vec::new();
            for set in sets {
                let mut polys = Vec::new();
                for pj in set {
                    let p = poly_from_json(cfg.field, pj).map_err(|e| anyhow!("{e}"))?;
                    if !p.is_zero() {
                        polys.push(p);
                    }
                }
                out.push(polys);
            }
            Ok(Some(out))
        }
    }
}

fn random_f_sets(
    field: FieldSpec,
    degrees: &[usize],
    size: usize,
    seed: u64,
) -> Result<Vec<Vec<Poly>>> {
    let mut rng = SplitMix64::new(seed);
    let mut sets = Vec::new();
    for (i, &m) in degrees.iter().enumerate() {
        if i + 1 == degrees.len() {
            sets.push(Vec::new());
            continue;
        }
        let words = nilfree_core::enumerate_words(m).map_err(|e| anyhow!("{e}"))?;
        let mut set = Vec::new();
        for _ in 0..size {
            let n_terms = 1 + rng.usize_below(3);
            let terms = (0..n_terms).map(|_| {
                let w = words[rng.usize_below(words.len())];
                (w, checks::random_nonzero_scalar(field, &mut rng))
            });
            let p = Poly::from_terms(field, terms).map_err(|e| anyhow!("{e}"))?;
            if !p.is_zero() {
                set.push(p);
            }
        }
        sets.push(set);
    }
    Ok(sets)
}

fn tower_section(schedule: &Schedule, tower: Option<&RTower>, notes: Vec<String>) -> TowerSection {
    TowerSection {
        schedule: schedule.m.iter().map(|m| m.to_string()).collect(),
        validation: schedule.validate(),
        built: tower.is_some(),
        f_sizes: tower
            .map(|t| {
                (1..=t.levels())
                    .map(|l| t.f_set(l).map(|f| f.len()).unwrap_or(0))
                    .collect()
            })
            .unwrap_or_default(),
        coverage: Vec::new(),
        notes,
    }
}

fn tower_cmd(_cli: &Cli, cfg: &RunConfig, args: &TowerArgs) -> Result<Run> {
    let schedule = schedule_from(&args.schedule, cfg);
    let validation = schedule.validate();
    let mut notes = Vec::new();
    let mut tower = None;

    if validation.valid && !args.validate_only {
        let buildable = schedule
            .small_entries()
            .ok()
            .map(|ds| {
                ds.iter()
                    .all(|&d| d <= nilfree_core::tower::MAX_LEVEL_DEGREE)
            })
            .unwrap_or(false);
        if buildable {
            let f_sets = config_f_sets(cfg)?.unwrap_or_else(|| vec![Vec::new(); schedule.levels()]);
            match build_tower(cfg.field, &schedule, &f_sets) {
                Ok(t) => tower = Some(t),
                Err(e) => notes.push(format!("tower not built: {e}")),
            }
        } else {
            notes.push("schedule too large to realize; validated only".into());
        }
    }

    let ok = validation.valid;
    let mut report = Report::new(config_echo(cfg));
    report.tower = Some(tower_section(&schedule, tower.as_ref(), notes));
    Ok(Run { report, ok })
}

fn vanishing_cmd(_cli: &Cli, cfg: &RunConfig, args: &VanishingArgs) -> Result<Run> {
    let schedule = schedule_from(&args.schedule, cfg);
    let validation = schedule.validate();
    if !validation.valid {
        let mut report = Report::new(config_echo(cfg));
        report.tower = Some(tower_section(
            &schedule,
            None,
            vec!["invalid schedule".into()],
        ));
        return Ok(Run { report, ok: false });
    }
    let degrees = schedule.small_entries().map_err(|e| anyhow!("{e}"))?;

    let mut levels = Vec::new();
    let mut all_zero = true;
    for round in 0..args.towers {
        let f_sets = random_f_sets(
            cfg.field,
            &degrees,
            args.f_size,
            cfg.seed.wrapping_add(round as u64),
        )?;
        let t = build_tower(cfg.field, &schedule, &f_sets).map_err(|e| anyhow!("{e}"))?;
        for l in 1..t.levels() {
            let slice = t.block_sum_slice(l).map_err(|e| anyhow!("{e}"))?;
            let mut ok = true;
            for v in slice.basis() {
                if !t.apply(l + 1, v).map_err(|e| anyhow!("{e}"))?.is_zero() {
                    ok = false;
                }
            }
            all_zero &= ok;
            levels.push(VanishingLevel {
                level: l + 1,
                slice_degree: slice.degree(),
                slice_rank: slice.rank(),
                vectors_checked: slice.rank(),
                all_zero: ok,
            });
        }
    }

    let mut report = Report::new(config_echo(cfg));
    report.vanishing = Some(VanishingSection { levels, all_zero });
    Ok(Run {
        report,
        ok: all_zero,
    })
}

fn certify_cmd(_cli: &Cli, cfg: &RunConfig, args: &CertifyArgs) -> Result<Run> {
    let schedule = schedule_from(&args.schedule, cfg);
    let validation = schedule.validate();
    if !validation.valid {
        let mut report = Report::new(config_echo(cfg));
        report.tower = Some(tower_section(
            &schedule,
            None,
            vec!["invalid schedule".into()],
        ));
        return Ok(Run { report, ok: false });
    }
    let f_sets = match config_f_sets(cfg)? {
        Some(sets) => sets,
        None => {
            let degrees = schedule.small_entries().map_err(|e| anyhow!("{e}"))?;
            random_f_sets(cfg.field, &degrees, args.f_size, cfg.seed)?
        }
    };
    let tower = build_tower(cfg.field, &schedule, &f_sets).map_err(|e| anyhow!("{e}"))?;

    // Map-route searches for every collapsed word at every level degree.
    let mut certificates: Vec<CertificateEntry> = Vec::new();
    let mut all_found = true;
    for level in 1..=tower.levels() {
        let degree = tower.degrees()[level - 1];
        for w in enumerate_binwords(degree).map_err(|e| anyhow!("{e}"))? {
            let out = tower
                .certificate_search(level, &w)
                .map_err(|e| anyhow!("{e}"))?;
            all_found &= out.found();
            certificates.push(CertificateEntry {
                word: w.to_string(),
                n: out.witness.map(|n| n.0),
                ok: out.found(),
                tower: Some(TowerRouteEntry {
                    level,
                    n: out.witness.map(|n| n.0),
                    status: if out.found() { "found" } else { "failure" }.into(),
                }),
            });
        }
    }

    // Prefix-route freeness: either the enumerated construction or an
    // explicit ideal description.
    let ideal = match &args.ideal {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read ideal {}", path.display()))?;
            let json: nilfree_core::ideal::IdealJson = serde_json::from_str(&text)
                .with_context(|| format!("cannot parse ideal {}", path.display()))?;
            nilfree_core::ideal::ideal_from_json(cfg.field, &json).map_err(|e| anyhow!("{e}"))?
        }
        None => {
            nilfree_core::build_construction(cfg)
                .map_err(pipeline_to_anyhow)?
                .ideal
        }
    };
    let d_cert = args.d_cert.unwrap_or(cfg.d_cert).min(ideal.d_max());
    let mut ranks = Vec::new();
    for d in 1..=d_cert {
        let entries = freeness_certificate(&ideal, d, Some(&tower)).map_err(pipeline_to_anyhow)?;
        let all_ok = entries.iter().all(|e| e.ok);
        all_found &= all_ok;
        let mut rank = oracle_rank_check(&ideal, d).map_err(pipeline_to_anyhow)?;
        rank.agrees_with_certificates = rank.free == all_ok;
        certificates.extend(entries);
        ranks.push(rank);
    }

    let mut report = Report::new(config_echo(cfg));
    report.tower = Some(tower_section(&schedule, Some(&tower), Vec::new()));
    report.certificates = certificates;
    report.ranks = Some(ranks);
    Ok(Run {
        report,
        ok: all_found,
    })
}

fn expand_cmd(cfg: &RunConfig, args: &ExpandArgs) -> Result<Run> {
    let w: BinWord = args
        .word
        .parse()
        .map_err(|e| anyhow!("bad word {:?}: {e}", args.word))?;
    let ext = xy_expand(cfg.field, &w).map_err(|e| anyhow!("{e}"))?;
    let terms: Vec<serde_json::Value> = ext
        .terms()
        .iter()
        .map(|(mono, poly)| {
            serde_json::json!({
                "exponents": mono.0,
                "poly": poly_to_json(poly),
            })
        })
        .collect();
    let mut report = Report::new(config_echo(cfg));
    report.config_echo = serde_json::json!({
        "word": args.word,
        "field": format!("{}", cfg.field),
        "terms": terms,
    });
    Ok(Run { report, ok: true })
}

fn enumerate_cmd(cfg: &RunConfig, args: &EnumerateArgs) -> Result<Run> {
    let value = if args.scalars {
        let e = enumerate_scalars(cfg.field, args.count);
        serde_json::json!({
            "kind": "scalars",
            "field": format!("{}", cfg.field),
            "values": e.values.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "exhausted": e.exhausted,
        })
    } else {
        let els = enumerate_algebra_elements(cfg.field, args.count).map_err(pipeline_to_anyhow)?;
        serde_json::json!({
            "kind": "elements",
            "field": format!("{}", cfg.field),
            "values": els.iter().map(poly_to_json).collect::<Vec<_>>(),
        })
    };
    let report = Report::new(value);
    Ok(Run { report, ok: true })
}
