use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eicp::report::{
    cmd_check, cmd_family, cmd_localize, cmd_spectrum, exit_code, render_number_line, to_json_17,
    InstanceFile, ReportDocument, Requirement, SetKind, ShiftMode,
};
use eicp::spectrum::{EnumOptions, DEFAULT_N_MAX};
use eicp::{Error, FamilyParams, Interval, IntervalUnion, Result};

#[derive(Parser)]
#[command(name = "eicp", version, about = "Eigenvalue localization for symmetric complementarity problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify matrix classes of A and B.
    Check {
        /// Instance file, or `-` for stdin.
        input: PathBuf,
        /// Fail with exit code 3 unless these hold.
        #[arg(long, value_enum, value_delimiter = ',')]
        require: Vec<RequireArg>,
        #[arg(long)]
        json: bool,
    },
    /// Compute localization sets.
    Localize {
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "k1,k1cop,k2")]
        sets: Vec<SetArg>,
        /// `auto` or a nonnegative number; sets are reported in the original coordinates.
        #[arg(long)]
        shift: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the complementarity spectrum.
    Spectrum {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        nmax: usize,
        #[arg(long)]
        tol_feas: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a parametric instance.
    Family {
        #[arg(long)]
        prop: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long = "R")]
        r: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        /// Write the instance here; expected values go to `<path>.expected.json`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RequireArg {
    BSdd,
    BPd,
    APd,
    ACop,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    K1,
    K1cop,
    K2,
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Io(e.to_string()))?;
        InstanceFile::parse(&text)
    } else {
        InstanceFile::read(path)
    }
}

fn fmt_union(u: &IntervalUnion) -> String {
    u.intervals()
        .iter()
        .map(fmt_interval)
        .collect::<Vec<_>>()
        .join(" U ")
}

fn fmt_interval(i: &Interval) -> String {
    format!("[{:.6}, {:.6}]", i.lo(), i.hi())
}

fn print_certificates(doc: &ReportDocument) {
    for (name, c) in [("A", &doc.certificates.a), ("B", &doc.certificates.b)] {
        println!(
            "{name}: sdd={} dd={} pd={} copositivity={:?}",
            c.is_sdd, c.is_dd, c.is_pd, c.copositivity
        );
    }
}

fn print_localization(doc: &ReportDocument) {
    let Some(loc) = &doc.localization else { return };
    if let Some(mu) = doc.shift {
        println!("shift: {mu:.6} (sets shown in original coordinates)");
    }
    println!("K1    = {}", fmt_union(&loc.k1));
    if let Some(u) = &loc.k1_cop {
        println!("K1'   = {}", fmt_union(u));
    }
    if let Some(u) = &loc.k2 {
        println!("K2    = {}", fmt_union(u));
    }
    println!("Gamma = {}", fmt_interval(&loc.gamma));
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Check { input, require, json } => {
            let file = read_instance(&input)?;
            let req: Vec<Requirement> = require
                .into_iter()
                .map(|r| match r {
                    RequireArg::BSdd => Requirement::BSdd,
                    RequireArg::BPd => Requirement::BPd,
                    RequireArg::APd => Requirement::APd,
                    RequireArg::ACop => Requirement::ACopositive,
                })
                .collect();
            let doc = cmd_check(&file, &req)?;
            if json {
                println!("{}", doc.to_json());
            } else {
                print_certificates(&doc);
            }
        }
        Command::Localize { input, sets, shift, json } => {
            let file = read_instance(&input)?;
            let shift = match shift.as_deref() {
                None => ShiftMode::None,
                Some("auto") => ShiftMode::Auto,
                Some(s) => ShiftMode::Fixed(
                    s.parse()
                        .map_err(|_| Error::ParamOutOfRange(format!("bad shift {s:?}")))?,
                ),
            };
            let sets: Vec<SetKind> = sets
                .into_iter()
                .map(|s| match s {
                    SetArg::K1 => SetKind::K1,
                    SetArg::K1cop => SetKind::K1Cop,
                    SetArg::K2 => SetKind::K2,
                })
                .collect();
            let doc = cmd_localize(&file, &sets, shift)?;
            if json {
                println!("{}", doc.to_json());
            } else {
                print_localization(&doc);
                print!("{}", render_number_line(doc.localization.as_ref().unwrap(), None));
            }
        }
        Command::Spectrum { input, nmax, tol_feas, json } => {
            let file = read_instance(&input)?;
            let opts = EnumOptions {
                n_max: nmax,
                feas_tol: tol_feas,
                ..EnumOptions::default()
            };
            let doc = cmd_spectrum(&file, &opts)?;
            if json {
                println!("{}", doc.to_json());
                return Ok(());
            }
            let spec = doc.spectrum.as_ref().unwrap();
            println!("{} complementarity eigenvalue(s)", spec.values.len());
            for s in spec.witnesses() {
                let support: Vec<String> = s.support.iter().map(|i| (i + 1).to_string()).collect();
                println!("  lambda = {:.9}  support {{{}}}", s.lambda, support.join(","));
            }
            if !spec.degenerate_supports.is_empty() {
                println!("  {} support(s) with degenerate eigenspaces skipped", spec.degenerate_supports.len());
            }
            if let Some(loc) = &doc.localization {
                print_localization(&doc);
                print!("{}", render_number_line(loc, Some(&spec.values)));
            }
            if let Some(v) = &doc.verdicts {
                println!(
                    "Pi in K1: {}  Pi in K1': {}  Pi in K2: {}  Pi in Gamma: {}",
                    v.pi_in_k1, fmt_opt(v.pi_in_k1_cop), fmt_opt(v.pi_in_k2), v.pi_in_gamma
                );
            }
        }
        Command::Family { prop, n, eps, beta, r, c, emit } => {
            let need = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| Error::ParamOutOfRange(format!("--{name} is required for this family")))
            };
            let params = match prop {
                4 => FamilyParams::OnesShift { n, eps: need(eps, "eps")? },
                5 => FamilyParams::ScaledPair {
                    n,
                    beta: need(beta, "beta")?,
                    r: need(r, "R")?,
                    c: need(c, "c")?,
                },
                p => return Err(Error::ParamOutOfRange(format!("unknown family {p}"))),
            };
            let (file, sidecar) = cmd_family(params)?;
            match emit {
                Some(path) => {
                    let write = |p: &Path, text: String| {
                        std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
                    };
                    write(&path, to_json_17(&file))?;
                    let mut side = path.clone().into_os_string();
                    side.push(".expected.json");
                    write(Path::new(&side), to_json_17(&sidecar))?;
                }
                None => println!("{}", to_json_17(&file)),
            }
        }
    }
    Ok(())
}

fn fmt_opt(v: Option<bool>) -> String {
    v.map_or_else(|| "n/a".to_string(), |b| b.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eicp: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
