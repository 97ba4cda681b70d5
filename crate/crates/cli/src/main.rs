mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use ipolar::bounds::{bound_sweep, SnrAxis};
use ipolar::design::{db_to_linear, parse_sequence, select_unfrozen, REFERENCE_DESIGN_ES_N0_DB};
use ipolar::encode::Encoder;
use ipolar::outer::OuterCode;
use ipolar::sim::{estimates_to_csv, run_scenario, ScenarioConfig};
use ipolar::wef::coeff::Arithmetic;
use ipolar::wef::csv::{read_wef_csv, write_iowef_csv, write_wef_csv};
use ipolar::wef::ensemble::DEFAULT_TERM_BUDGET;
use ipolar::wef::enumerate::MAX_EXHAUSTIVE_K;
use ipolar::wef::{
    ensemble_iowef, ensemble_wef, enumerate_wef_exhaustive, power_iowef, power_wef, serial_concat_wef, Coeff,
    EnsembleOptions,
};
use ipolar::{CodeSpec, Error, IPolarCode, InterleaverSet};

use manifest::{content_digest, Manifest};

#[derive(Parser)]
#[command(name = "ipolar", version, about = "Interleaved polar code workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select an unfrozen set by Gaussian approximation or from a sequence file.
    Design(DesignArgs),
    /// Ensemble WEF of a code spec, or the exact WEF of one realization.
    Wef(WefArgs),
    /// Ensemble input-output WEF of a code spec.
    Iowef(EnsembleArgs),
    /// Average WEF of P outer codewords interleaved into Q inner blocks.
    ConcatWef(ConcatArgs),
    /// Exact WEF of one realization by listing all codewords.
    Enumerate(EnumerateArgs),
    /// Union and simple bounds from a WEF file.
    Bound(BoundArgs),
    /// BLER simulation of a scenario file.
    Simulate(SimulateArgs),
    /// Run the acceptance suite and print a pass/fail report.
    Repro(ReproArgs),
}

#[derive(Args)]
struct DesignArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Design Es/N0 in dB.
    #[arg(long, default_value_t = REFERENCE_DESIGN_ES_N0_DB, allow_negative_numbers = true)]
    design_snr_db: f64,
    /// Reliability sequence (most reliable first) used instead of GA.
    #[arg(long)]
    sequence_file: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    /// Code spec JSON file.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    d_cap: Option<usize>,
    #[arg(long, default_value = "rational")]
    mode: Arithmetic,
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    term_budget: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WefArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Enumerate this interleaver realization instead of averaging.
    #[arg(long)]
    interleavers: Option<PathBuf>,
}

#[derive(Args)]
struct ConcatArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Outer code JSON file.
    #[arg(long)]
    outer: PathBuf,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    q: usize,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Interleaver set JSON file; identity when neither this nor a seed is given.
    #[arg(long, conflicts_with = "interleaver_seed")]
    interleavers: Option<PathBuf>,
    #[arg(long)]
    interleaver_seed: Option<u64>,
    #[arg(long, default_value = "rational")]
    mode: Arithmetic,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// WEF CSV file.
    #[arg(long)]
    wef: PathBuf,
    /// Code dimension; read from the file's `k` header when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// `start:stop:step` or a comma-separated list, in dB.
    #[arg(long, default_value = "0:8:0.5", allow_hyphen_values = true)]
    snr_db: String,
    #[arg(long, default_value = "ebn0")]
    axis: SnrAxis,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario JSON file.
    scenario: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Overrides the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// Comma-separated criterion numbers; all when omitted.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) | Error::Parse(_) | Error::Json(_) => 2,
                Error::ResourceLimit(_) => 3,
                Error::Io(_) => 4,
            })
        }
    }
}

fn run(cmd: Command) -> ipolar::Result<ExitCode> {
    match cmd {
        Command::Design(a) => design(a),
        Command::Wef(a) => match &a.interleavers {
            Some(ils) => enumerate(EnumerateArgs {
                spec: a.ensemble.spec.clone(),
                interleavers: Some(ils.clone()),
                interleaver_seed: None,
                mode: a.ensemble.mode,
                out: a.ensemble.out.clone(),
            }),
            None => ensemble("wef", &a.ensemble),
        },
        Command::Iowef(a) => ensemble("iowef", &a),
        Command::ConcatWef(a) => concat_wef(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Bound(a) => bound(a),
        Command::Simulate(a) => simulate(a),
        Command::Repro(a) => repro(a),
    }
}

fn read(path: &Path) -> ipolar::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, text: &str) -> ipolar::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", p.display())))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_spec(path: &Path) -> ipolar::Result<(CodeSpec, String)> {
    let text = read(path)?;
    Ok((serde_json::from_str(&text)?, text))
}

fn set_jobs(jobs: Option<usize>) -> ipolar::Result<()> {
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Error::InvalidArgument("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    Ok(())
}

fn design(a: DesignArgs) -> ipolar::Result<ExitCode> {
    if !a.n.is_power_of_two() || a.n < 2 {
        return Err(Error::InvalidArgument(format!("N = {} is not a power of two >= 2", a.n)));
    }
    let m = a.n.trailing_zeros() as usize;
    let (spec, source) = match &a.sequence_file {
        Some(path) => {
            let text = read(path)?;
            let seq = parse_sequence(&text)?;
            (CodeSpec::from_sequence(m, &seq, a.k)?, json!({ "sequence_sha256": content_digest(&text) }))
        }
        None => (select_unfrozen(m, a.k, db_to_linear(a.design_snr_db))?.with_design_snr(a.design_snr_db), json!({ "design_snr_db": a.design_snr_db })),
    };
    let config = json!({ "n": a.n, "k": a.k, "source": source });
    let manifest = Manifest::new("design", &config, None);
    let mut doc = serde_json::to_value(&spec)?;
    doc["manifest"] = manifest.json();
    emit(a.out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn ensemble(kind: &str, a: &EnsembleArgs) -> ipolar::Result<ExitCode> {
    let (spec, text) = load_spec(&a.spec)?;
    let opts = EnsembleOptions { d_cap: a.d_cap, term_budget: a.term_budget };
    let config = json!({
        "spec_sha256": content_digest(&text),
        "d_cap": a.d_cap,
        "mode": a.mode.name(),
        "term_budget": a.term_budget,
    });
    let mut meta = Manifest::new(kind, &config, None).pairs();
    meta.push(("k".into(), spec.dimension().to_string()));
    meta.push(("d_cap".into(), a.d_cap.map_or("none".into(), |d| d.to_string())));
    let csv = match (kind, a.mode) {
        ("wef", Arithmetic::Rational) => write_wef_csv(&ensemble_wef::<BigRational>(&spec, opts)?, &meta),
        ("wef", Arithmetic::Float) => write_wef_csv(&ensemble_wef::<f64>(&spec, opts)?, &meta),
        (_, Arithmetic::Rational) => write_iowef_csv(&ensemble_iowef::<BigRational>(&spec, opts)?, &meta),
        (_, Arithmetic::Float) => write_iowef_csv(&ensemble_iowef::<f64>(&spec, opts)?, &meta),
    };
    emit(a.out.as_deref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn concat_csv<C: Coeff>(outer: &OuterCode, spec: &CodeSpec, a: &ConcatArgs, meta: &[(String, String)]) -> ipolar::Result<String> {
    let outer_wef = match outer.wef::<C>()? {
        Some(w) => w,
        None if outer.dimension() <= MAX_EXHAUSTIVE_K => enumerate_wef_exhaustive::<C>(outer)?,
        None => {
            return Err(Error::ResourceLimit(format!(
                "outer code has no closed-form WEF and K = {} is too large to enumerate",
                outer.dimension()
            )))
        }
    };
    let opts = EnsembleOptions { d_cap: a.ensemble.d_cap, term_budget: a.ensemble.term_budget };
    let inner = power_iowef(&ensemble_iowef::<C>(spec, opts)?, a.q)?;
    let total = serial_concat_wef(&power_wef(&outer_wef, a.p)?, &inner)?;
    Ok(write_wef_csv(&total, meta))
}

fn concat_wef(a: ConcatArgs) -> ipolar::Result<ExitCode> {
    let (spec, spec_text) = load_spec(&a.ensemble.spec)?;
    let outer_text = read(&a.outer)?;
    let outer: OuterCode = serde_json::from_str(&outer_text)?;
    let config = json!({
        "spec_sha256": content_digest(&spec_text),
        "outer_sha256": content_digest(&outer_text),
        "p": a.p,
        "q": a.q,
        "d_cap": a.ensemble.d_cap,
        "mode": a.ensemble.mode.name(),
        "term_budget": a.ensemble.term_budget,
    });
    let mut meta = Manifest::new("concat-wef", &config, None).pairs();
    meta.push(("k".into(), (a.p * outer.dimension()).to_string()));
    meta.push(("outer".into(), outer.describe()));
    meta.push(("d_cap".into(), a.ensemble.d_cap.map_or("none".into(), |d| d.to_string())));
    let csv = match a.ensemble.mode {
        Arithmetic::Rational => concat_csv::<BigRational>(&outer, &spec, &a, &meta)?,
        Arithmetic::Float => concat_csv::<f64>(&outer, &spec, &a, &meta)?,
    };
    emit(a.ensemble.out.as_deref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn enumerate(a: EnumerateArgs) -> ipolar::Result<ExitCode> {
    let (spec, spec_text) = load_spec(&a.spec)?;
    let (ils, ils_config) = match (&a.interleavers, a.interleaver_seed) {
        (Some(path), _) => {
            let text = read(path)?;
            (serde_json::from_str::<InterleaverSet>(&text)?, json!({ "interleavers_sha256": content_digest(&text) }))
        }
        (None, Some(seed)) => (InterleaverSet::sample(spec.m_exp(), seed), json!({ "interleaver_seed": seed })),
        (None, None) => (InterleaverSet::identity(spec.m_exp()), json!("identity")),
    };
    let code = IPolarCode::new(spec, ils)?;
    let config = json!({ "spec_sha256": content_digest(&spec_text), "interleavers": ils_config, "mode": a.mode.name() });
    let mut meta = Manifest::new("enumerate", &config, a.interleaver_seed).pairs();
    meta.push(("k".into(), code.dimension().to_string()));
    let csv = match a.mode {
        Arithmetic::Rational => write_wef_csv(&enumerate_wef_exhaustive::<BigRational>(&code)?, &meta),
        Arithmetic::Float => write_wef_csv(&enumerate_wef_exhaustive::<f64>(&code)?, &meta),
    };
    emit(a.out.as_deref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_grid(s: &str) -> ipolar::Result<Vec<f64>> {
    let bad = || Error::Parse(format!("bad SNR grid {s:?}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step <= 0.0 || stop < start {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=count).map(|i| start + step * i as f64).collect())
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(bad()),
    }
}

fn bound(a: BoundArgs) -> ipolar::Result<ExitCode> {
    let text = read(&a.wef)?;
    let (wef, meta) = read_wef_csv::<BigRational>(&text)?;
    let k = match a.k {
        Some(k) => k,
        None => meta
            .iter()
            .find(|(key, _)| key == "k")
            .and_then(|(_, v)| v.parse().ok())
            .ok_or_else(|| Error::InvalidArgument("WEF file has no k header; pass --k".into()))?,
    };
    let n = wef.len();
    let grid = parse_grid(&a.snr_db)?;
    let rows = bound_sweep(&wef, n, k, a.axis, &grid)?;
    let config = json!({ "wef_sha256": content_digest(&text), "k": k, "grid": grid, "axis": a.axis });
    let mut out = Manifest::new("bound", &config, None).csv_header();
    out.push_str(&format!("# n: {n}\n# k: {k}\n"));
    out.push_str(match a.axis {
        SnrAxis::EbN0 => "eb_n0_db,union,simple\n",
        SnrAxis::EsN0 => "es_n0_db,union,simple\n",
    });
    for r in rows {
        out.push_str(&format!("{},{:.6e},{:.6e}\n", r.snr_db, r.union, r.simple));
    }
    emit(a.out.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn simulate(a: SimulateArgs) -> ipolar::Result<ExitCode> {
    set_jobs(a.jobs)?;
    let text = read(&a.scenario)?;
    let mut cfg: ScenarioConfig = serde_json::from_str(&text)?;
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    let base = a.scenario.parent().unwrap_or(Path::new("."));
    let (scheme, rows) = run_scenario(&cfg, base)?;
    let config = json!({ "scenario": serde_json::to_value(&cfg)?, "scenario_sha256": content_digest(&text) });
    let mut out = Manifest::new("simulate", &config, Some(cfg.seed)).csv_header();
    out.push_str(&format!("# scheme: {}\n", scheme.describe()));
    out.push_str(&estimates_to_csv(&rows));
    emit(a.out.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn repro(a: ReproArgs) -> ipolar::Result<ExitCode> {
    set_jobs(a.jobs)?;
    let config = json!({ "only": a.only });
    let mut out = Manifest::new("repro", &config, None).csv_header();
    let mut failed = 0;
    for (id, title) in ipolar::repro::CRITERIA {
        if !a.only.is_empty() && !a.only.contains(&id) {
            continue;
        }
        let line = match ipolar::repro::run_criterion(id) {
            Ok(report) => {
                failed += !report.passed as usize;
                let mut s = format!("{report}\n");
                for d in &report.details {
                    s.push_str(&format!("       {d}\n"));
                }
                s
            }
            Err(e) => {
                failed += 1;
                format!("[FAIL] criterion {id:>2}: {title} (error: {e})\n")
            }
        };
        eprint!("{line}");
        out.push_str(&line);
    }
    if a.out.is_some() {
        emit(a.out.as_deref(), &out)?;
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1:2:0.5").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("-1,0.5").unwrap(), vec![-1.0, 0.5]);
        assert!(parse_grid("1:0:0.5").is_err());
        assert!(parse_grid("x").is_err());
    }
}
