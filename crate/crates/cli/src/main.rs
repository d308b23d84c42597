use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bindet::ansatz::{self, GuessOutcome, Identity, Shape, System};
use bindet::arith::parse_rational;
use bindet::closed_forms::{cf_det_no_delta, closed_form, CfId};
use bindet::epsilon::{eps_limit_direct, eps_limit_ratio, eps_limit_syseps, EpsLimitSpec, EpsTarget};
use bindet::families::{Family, FamilySpec};
use bindet::tilings::{build_region, cyclic_tiling_count, enumerate_paths, first_path_tuple, lgv_count, render_svg, PathProblem};
use bindet::verify::{emit_report, run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "bindet", version, about = "Exact binomial determinants with Kronecker-delta perturbations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Determinant of D, E or B at symbolic or rational μ.
    Det {
        #[arg(long)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        n: usize,
        /// Rational value for μ, e.g. 7 or 3/2.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Product formula by name, optionally compared against its determinants.
    ClosedForm {
        #[arg(long)]
        id: CfId,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        r: i64,
        /// (s, t, n) for det-no-delta.
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Also evaluate the determinant side and report equality.
        #[arg(long)]
        check: bool,
    },
    /// Run check suites and write a JSON report.
    Verify {
        #[arg(long = "suite", num_args = 1.., default_values_t = vec!["all".to_string()])]
        suites: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_m: i64,
        #[arg(long, default_value_t = 4)]
        max_r: i64,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads; 0 uses every core. BINDET_JOBS overrides.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    #[command(subcommand)]
    Ansatz(AnsatzCmd),
    /// ε-limit ratio of a t = −1 determinant quotient.
    EpsLimit {
        #[arg(long)]
        target: EpsTarget,
        #[arg(long, default_value_t = 0)]
        r: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value_t = Route::Ratio)]
        route: Route,
    },
    #[command(subcommand)]
    Tilings(TilingsCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Ratio,
    Direct,
    Syseps,
}

#[derive(Subcommand)]
enum AnsatzCmd {
    /// Solve a cofactor system with symbolic μ.
    Solve {
        #[arg(long)]
        system: System,
        #[arg(long, default_value = "D")]
        family: Family,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        n: usize,
    },
    /// Check a summation identity on the solved c-vector.
    Verify {
        #[arg(long)]
        identity: Identity,
        #[arg(long, default_value = "D")]
        family: Family,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        n: usize,
    },
    /// Fit recurrences to c-values at fixed μ, validating on held-out rows.
    Guess {
        #[arg(long, default_value = "sys1")]
        system: System,
        #[arg(long, default_value = "D")]
        family: Family,
        #[arg(long)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Largest n used for fitting.
        #[arg(long, default_value_t = 20)]
        train_n: usize,
        /// Largest n generated; rows above train_n are held out.
        #[arg(long, default_value_t = 22)]
        max_n: usize,
        /// One shape "AxB:D"; without it a bounded search runs.
        #[arg(long)]
        shape: Option<Shape>,
        #[arg(long, default_value_t = 4)]
        max_shifts: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

#[derive(Args)]
struct Region {
    #[arg(long)]
    s: i64,
    #[arg(long)]
    t: i64,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    mu: i64,
}

#[derive(Subcommand)]
enum TilingsCmd {
    /// Signed or plain count of cyclically symmetric tilings.
    Count {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        region: Region,
    },
    /// List nonintersecting path tuples; --deleted drops delta positions.
    Enumerate {
        #[command(flatten)]
        region: Region,
        #[arg(long, value_delimiter = ',')]
        deleted: Vec<usize>,
        #[arg(long, default_value_t = 5000)]
        cap: usize,
    },
    /// Write the lozenge and reduced region as SVG.
    Svg {
        #[command(flatten)]
        region: Region,
        #[arg(long)]
        out: PathBuf,
        /// Overlay the first path tuple.
        #[arg(long)]
        with_tiling: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Det { family, s, t, n, mu } => {
            let d = FamilySpec::new(family, s, t, n).determinant()?;
            match mu {
                Some(v) => println!("{}", d.eval(&parse_rational(&v)?)),
                None => println!("{}", d.pretty()),
            }
        }
        Cmd::ClosedForm { id, m, r, s, t, n, mu, check } => {
            let f = if id == CfId::DetNoDelta {
                let (Some(s), Some(t), Some(n)) = (s, t, n) else { bail!("det-no-delta needs --s, --t and --n") };
                cf_det_no_delta(s, t, n)?
            } else {
                closed_form(id, m, r)?
            };
            let value = f.expr.eval()?;
            match &mu {
                Some(v) => println!("{}", value.eval(&parse_rational(v)?)?),
                None => println!("{}", value.pretty()),
            }
            if check {
                match f.target.evaluate()? {
                    Some(d) if d == value => println!("equal"),
                    Some(d) => {
                        println!("differs: target {}", d.pretty());
                        return Ok(ExitCode::FAILURE);
                    }
                    None => println!("target is an ε-limit; use eps-limit"),
                }
            }
        }
        Cmd::Verify { suites, max_m, max_r, max_n, report, jobs } => {
            let cfg = SuiteConfig { suites, max_m, max_r, max_n, jobs, output: report.as_ref().map(|p| p.display().to_string()) };
            let rep = run_suite(&cfg)?;
            let text = emit_report(&rep);
            match &report {
                Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
                None => println!("{text}"),
            }
            let failed: Vec<_> = rep.failures().collect();
            eprintln!("{} checks, {} failed", rep.checks.len(), failed.len());
            for f in &failed {
                eprintln!("FAIL {} {:?} {}", f.check_id, f.params, f.error.as_deref().unwrap_or(""));
            }
            if !failed.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Ansatz(a) => return ansatz_cmd(a),
        Cmd::EpsLimit { target, r, m, route } => {
            let spec = EpsLimitSpec::new(target, r, m)?;
            let v = match route {
                Route::Ratio => eps_limit_ratio(&spec)?,
                Route::Direct => eps_limit_direct(&spec)?,
                Route::Syseps => eps_limit_syseps(&spec)?,
            };
            println!("{}", v.pretty());
            let expected = spec.expected()?;
            if v != expected {
                println!("differs from closed ratio {}", expected.pretty());
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Tilings(t) => tilings_cmd(t)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn ansatz_cmd(cmd: AnsatzCmd) -> Result<ExitCode> {
    match cmd {
        AnsatzCmd::Solve { system, family, s, n } => {
            let c = ansatz::solve_cofactor_system(system, family, s, n)?;
            for (k, v) in c.values.iter().enumerate() {
                println!("c_{} = {}", k + 1, v.pretty());
            }
        }
        AnsatzCmd::Verify { identity, family, s, n } => {
            let c = ansatz::verify_ansatz_identity(identity, family, s, n)?;
            println!("lhs = {}", c.lhs.pretty());
            println!("rhs = {}", c.rhs.pretty());
            println!("{}", if c.holds { "holds" } else { "fails" });
            if !c.holds {
                return Ok(ExitCode::FAILURE);
            }
        }
        AnsatzCmd::Guess { system, family, s, mu, train_n, max_n, shape, max_shifts, max_degree } => {
            if max_n <= train_n {
                bail!("--max-n must exceed --train-n so that rows are held out");
            }
            let data = ansatz::cofactor_data(system, family, s, &parse_rational(&mu)?, max_n)?;
            let found = match shape {
                Some(sh) => match ansatz::guess_recurrence(&data, train_n, sh)? {
                    GuessOutcome::Found(r) => Some(r),
                    other => {
                        println!("{sh:?}: {other:?}");
                        None
                    }
                },
                None => {
                    let (found, log) = ansatz::search_recurrence(&data, train_n, max_shifts, max_degree);
                    for step in &log {
                        match &step.outcome {
                            Ok(GuessOutcome::Found(_)) => println!("{:?}: found", step.shape),
                            Ok(o) => println!("{:?}: {o:?}", step.shape),
                            Err(e) => println!("{:?}: {e}", step.shape),
                        }
                    }
                    found
                }
            };
            match found {
                Some(r) => println!("{r}"),
                None => {
                    println!("no recurrence confirmed on held-out rows");
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tilings_cmd(cmd: TilingsCmd) -> Result<()> {
    match cmd {
        TilingsCmd::Count { family, region: Region { s, t, n, mu } } => {
            let c = cyclic_tiling_count(family, s, t, n, mu)?;
            println!("{} ({})", c.value, if c.weighted { "signed" } else { "plain" });
        }
        TilingsCmd::Enumerate { region: Region { s, t, n, mu }, deleted, cap } => {
            let p = PathProblem::with_deleted(mu, s, t, n, &deleted)?;
            let tuples = enumerate_paths(&p, cap)?;
            for (k, tuple) in tuples.iter().enumerate() {
                println!("#{}", k + 1);
                for path in tuple {
                    let pts: Vec<String> = path.iter().map(|(x, y)| format!("({x},{y})")).collect();
                    println!("  {}", pts.join(" "));
                }
            }
            println!("{} tuples, path-count determinant {}", tuples.len(), lgv_count(&p)?.value);
        }
        TilingsCmd::Svg { region: Region { s, t, n, mu }, out, with_tiling } => {
            let region = build_region(s, t, n, mu)?;
            let tiling = if with_tiling {
                let (ps, pt) = if region.switched { (t, s) } else { (s, t) };
                first_path_tuple(&PathProblem::full(mu, ps, pt, n)?)?
            } else {
                None
            };
            std::fs::write(&out, render_svg(&region, tiling.as_deref())).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}
