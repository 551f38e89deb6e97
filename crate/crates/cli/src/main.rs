use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qorbit_core::orbit::{flatness_check, OrbitSpec, DEFAULT_SLACK};
use qorbit_core::report::{emit, CheckReport, Format, ANCHORS};
use qorbit_core::scalar::{parse_rational, Rational, Specialization, Sym};
use qorbit_core::suite::{self, Battery, SuiteConfig};
use qorbit_core::theta::Composition;
use qorbit_core::Error;
use serde_json::json;

/// Exact verification of reflection-equation algebra identities and
/// quantized orbit flatness.
#[derive(Parser)]
#[command(name = "qorbit", version)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutFormat,
    /// Seed recorded in every report and used for random specializations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Identity batteries.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// `s_1`, `s_2` are central.
    Centrality {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Newton identities between power traces and `σ_m`.
    Newton {
        #[arg(long)]
        n: usize,
    },
    /// Cayley–Hamilton at `t = 0`, at `q = 1`, and transported by the shift.
    CayleyHamilton {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Table of `ϑ_m` for a composition.
    Theta {
        #[arg(long)]
        comp: String,
        #[arg(long, default_value_t = 6)]
        m: usize,
        /// Use the `t`-shifted polynomials.
        #[arg(long)]
        t: bool,
    },
    /// Characters indexed by compositions of `n` into `k` parts.
    Characters {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Flatness of a quantized orbit against the commutative oracle.
    Orbit(OrbitArgs),
    /// Run the configured suite.
    RunAll {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (overrides `QORBIT_OUT` and the config file).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Verify {
    Ybe {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    Hecke {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    TraceNorm {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    Pbw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        params: Params,
    },
    ThetaIdentities {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        mmax: usize,
    },
}

#[derive(Args)]
struct Params {
    /// Rational value or `symbolic`.
    #[arg(long, default_value = "symbolic")]
    q: String,
    /// Rational value or `symbolic`.
    #[arg(long, default_value = "symbolic")]
    t: String,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    comp: String,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    deg: usize,
    #[command(flatten)]
    params: Params,
    /// Extra truncation degree for the quotient ideal.
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    slack: usize,
    /// Random rational `(q, t)` points for the cross-check.
    #[arg(long, default_value_t = 3)]
    points: usize,
    /// Write the flatness report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Input errors map to exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn value(s: &str) -> Result<Option<Rational>, Usage> {
    if s == "symbolic" {
        Ok(None)
    } else {
        Ok(Some(parse_rational(s)?))
    }
}

impl Params {
    fn values(&self) -> Result<(Option<Rational>, Option<Rational>), Usage> {
        Ok((value(&self.q)?, value(&self.t)?))
    }

    fn spec(&self) -> Result<Specialization, Usage> {
        let (q, t) = self.values()?;
        let mut s = Specialization::symbolic();
        if let Some(q) = q {
            if q == Rational::from_integer(0.into()) {
                return Err(Usage("q must be nonzero".into()));
            }
            s = s.with(Sym::Q, q);
        }
        if let Some(t) = t {
            s = s.with(Sym::T, t);
        }
        Ok(s)
    }
}

fn single(battery: Battery, seed: u64, tweak: impl FnOnce(&mut SuiteConfig)) -> Result<Vec<CheckReport>, Usage> {
    let mut c = SuiteConfig {
        batteries: vec![battery],
        seed,
        ..Default::default()
    };
    tweak(&mut c);
    Ok(suite::run_suite(&c)?)
}

fn orbit(args: &OrbitArgs, seed: u64) -> Result<Vec<CheckReport>, Usage> {
    let comp = Composition::parse(&args.comp)?;
    if comp.n() != args.n {
        return Err(Usage(format!("composition {comp} does not sum to n={}", args.n)));
    }
    let mu = args
        .mu
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    args.params.spec()?;
    let (q, t) = args.params.values()?;
    let case = suite::OrbitCase {
        comp: comp.parts().to_vec(),
        mu: mu.iter().map(|x| x.to_string()).collect(),
        degree: args.deg,
    };
    let slack = args.slack;
    limits(|c| {
        c.orbits = vec![case];
        c.slack = slack;
        c.random_points = args.points;
    })?;
    let spec = OrbitSpec::new(comp, mu)?.with_q(q).with_t(t);
    let mut r = CheckReport::new(
        "orbit-flatness",
        json!({ "spec": spec.describe(), "d": args.deg, "slack": args.slack }),
        ANCHORS[18],
        seed,
    );
    let start = std::time::Instant::now();
    match flatness_check(&spec, args.deg, args.slack, seed, args.points) {
        Ok(f) => {
            if let Some(path) = &args.report {
                let text = serde_json::to_string_pretty(&f).expect("serializable");
                std::fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            }
            r.ok = f.flat;
            r.witnesses = f.witnesses.clone();
            r.data = serde_json::to_value(&f).expect("serializable");
        }
        Err(e) => r.witnesses.push(format!("error: {e}")),
    }
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(vec![r])
}

fn run_all(config: Option<&Path>, out: Option<PathBuf>, seed: Option<u64>) -> Result<(Vec<CheckReport>, Option<PathBuf>), Usage> {
    let mut c = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<SuiteConfig>(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?
        }
        None => SuiteConfig::default(),
    };
    if let Some(s) = seed {
        c.seed = s;
    }
    let dir = out
        .or_else(|| std::env::var_os("QORBIT_OUT").map(PathBuf::from))
        .or_else(|| c.out_dir.clone());
    Ok((suite::run_suite(&c)?, dir))
}

fn write_reports(dir: &Path, reports: &[CheckReport]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("reports.json"), emit(reports, Format::Json))?;
    std::fs::write(dir.join("reports.md"), emit(reports, Format::Markdown))
}

/// Checks sizes against the suite's engine limits.
fn limits(tweak: impl FnOnce(&mut SuiteConfig)) -> Result<(), Usage> {
    let mut c = SuiteConfig::default();
    tweak(&mut c);
    Ok(c.validate()?)
}

fn run(cli: &Cli) -> Result<(Vec<CheckReport>, Option<PathBuf>), Usage> {
    let seed = cli.seed.unwrap_or_else(|| SuiteConfig::default().seed);
    let reports = match &cli.command {
        Command::Verify { what } => match what {
            Verify::Ybe { n } => single(Battery::Ybe, seed, |c| c.n_range = (*n, *n))?,
            Verify::Hecke { n } => single(Battery::Hecke, seed, |c| c.n_range = (*n, *n))?,
            Verify::TraceNorm { n } => single(Battery::TraceNorm, seed, |c| c.n_range = (*n, *n))?,
            Verify::Pbw { n, d, params } => {
                limits(|c| c.pbw = vec![(*n, *d)])?;
                vec![suite::pbw_report(*n, *d, &params.spec()?, seed)]
            }
            Verify::ThetaIdentities { n, k, mmax } => {
                limits(|c| (c.theta_n_max, c.theta_k_max, c.theta_m_max) = (*n, *k, *mmax))?;
                vec![suite::theta_identity_report(*n, *k, *mmax, seed)]
            }
        },
        Command::Centrality { n, params } => {
            limits(|c| c.centrality_n = vec![*n])?;
            vec![suite::centrality_report(*n, &params.spec()?, seed)]
        }
        Command::Newton { n } => single(Battery::Newton, seed, |c| {
            c.centrality_n = vec![*n];
            c.theta_n_max = *n;
        })?,
        Command::CayleyHamilton { n } => single(Battery::CayleyHamilton, seed, |c| c.cayley_hamilton_n = vec![*n])?,
        Command::Theta { comp, m, t } => {
            limits(|c| c.theta_m_max = *m)?;
            vec![suite::theta_table_report(&Composition::parse(comp)?, *m, *t, seed)]
        }
        Command::Characters { n, k } => {
            if *k == 0 {
                return Err(Usage("k must be positive".into()));
            }
            limits(|c| (c.theta_n_max, c.theta_k_max) = (*n, *k))?;
            vec![suite::characters_report(*n, *k, 4, seed)]
        }
        Command::Orbit(args) => orbit(args, seed)?,
        Command::RunAll { config, out } => return run_all(config.as_deref(), out.clone(), cli.seed),
    };
    Ok((reports, None))
}

/// 0 when every report passed, 1 otherwise.
fn exit_code(reports: &[CheckReport]) -> u8 {
    u8::from(!reports.iter().all(|r| r.ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Markdown => Format::Markdown,
    };
    match run(&cli) {
        Ok((reports, dir)) => {
            if let Some(dir) = dir {
                if let Err(e) = write_reports(&dir, &reports) {
                    eprintln!("error: {}: {e}", dir.display());
                    return ExitCode::from(2);
                }
            }
            println!("{}", emit(&reports, format));
            ExitCode::from(exit_code(&reports))
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn any_failure_exits_one() {
        let mut a = CheckReport::new("ybe", json!({}), ANCHORS[0], 0);
        a.ok = true;
        let b = CheckReport::new("hecke", json!({}), ANCHORS[1], 0);
        assert_eq!(exit_code(&[a.clone()]), 0);
        assert_eq!(exit_code(&[a, b]), 1);
    }
}
