//! Command-line front end: compute inverses, run decompositions, verify
//! equation suites, test order relations and laws, solve linear systems, and
//! drive the fuzz harness.
//!
//! Exit codes: 0 on success, 1 when a verification fails (a counterexample
//! report is emitted), 2 on input or usage errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::decomp::{self, CnForm};
use crate::geninv::{self, GDParams, GdRoute};
use crate::harness::{self, FuzzConfig};
use crate::io::{self, IoError, MatrixFile};
use crate::laws::{self, TripleVariant};
use crate::matcore::{CMat, Rng, Tolerance};
use crate::orders::{self, OrderKind, OrderRelation};
use crate::report::{CheckReport, ItemStatus};
use crate::solve;
use crate::starfam;

#[derive(Parser)]
#[command(
    name = "gdstar",
    about = "Dense complex-matrix toolkit for generalized Drazin inverses, GD-star matrices, matrix partial orders, and order-law verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a generalized inverse or star-family matrix
    Compute {
        /// mp|drazin|group|gd|gdmp|mpgd|drazin-star|gd-star|dual-gd-star|gd-star-one
        #[arg(long)]
        what: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// GD witness file for the witness-dependent constructions
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Seed a witness draw instead of supplying one
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor a matrix
    Decompose {
        /// core-nilpotent|block-diagonal|hs
        #[arg(long)]
        form: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite on one matrix (with an optional witness)
    Verify {
        /// penrose|gd|gdmp|mpgd|sa3|dual|star-one|special|spectral
        #[arg(long)]
        suite: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate an order relation between two matrices
    Order {
        /// minus|star|group|drazin|gd|gd-star|d-dagger
        #[arg(long)]
        relation: String,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check an order/additive law on supplied matrices
    Law {
        /// reverse-gd|forward-gd|triple-reverse:{i..iv}|triple-forward:{i..iv}|reverse-gd-star|forward-gd-star|additive-gd|additive-gd-star|additive-necessary
        #[arg(long)]
        name: String,
        /// Two or three matrix files depending on the law
        matrices: Vec<PathBuf>,
        #[arg(long)]
        witness_a: Option<PathBuf>,
        #[arg(long)]
        witness_b: Option<PathBuf>,
        #[arg(long)]
        witness_c: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve a linear system through the GD family
    Solve {
        /// lsq|minnorm|gram
        #[arg(long)]
        mode: String,
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "b")]
        b: PathBuf,
        #[arg(long = "z")]
        z: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Stationary distribution of an ergodic row-stochastic chain
    Markov {
        #[arg(long = "T")]
        transition: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the fuzzing harness over the verification suites
    Fuzz {
        /// all | comma-separated list of suite names
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long = "max-size", default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the full JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum Failure {
    /// Input or usage problem: exit 2.
    Usage(String),
    /// A verification failed: exit 1.
    Verification(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parse argv and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version print to stdout and exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
    }
}

fn load_square(path: &Path) -> Result<CMat, Failure> {
    let m = io::read_matrix(path)?;
    if !m.is_square() {
        return Err(Failure::Usage(format!(
            "{} must contain a square matrix",
            path.display()
        )));
    }
    Ok(m)
}

fn obtain_witness(
    a: &CMat,
    witness: &Option<PathBuf>,
    seed: Option<u64>,
    tol: &Tolerance,
) -> Result<CMat, Failure> {
    match witness {
        Some(path) => {
            let x = io::read_matrix(path)?;
            if x.shape() != a.shape() {
                return Err(Failure::Usage("witness shape mismatch".into()));
            }
            Ok(x)
        }
        None => {
            let mut rng = Rng::seeded(seed.unwrap_or(0));
            let params = GDParams::seeded(a, &mut rng, tol)?;
            Ok(geninv::gd_sample(a, &params, tol, GdRoute::SimilarityGd2)?)
        }
    }
}

fn print_matrix(label: &str, m: &CMat) {
    println!("{label} ({}x{}):", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m.get(i, j);
                if z.im.abs() < 1e-14 {
                    format!("{:>12.6}", z.re)
                } else {
                    format!("{:>12.6}{:+.6}i", z.re, z.im)
                }
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }
}

fn emit(out: &Option<PathBuf>, label: &str, m: &CMat) -> Result<(), Failure> {
    print_matrix(label, m);
    if let Some(path) = out {
        io::write_matrix(path, m)?;
        println!("written to {}", path.display());
    }
    Ok(())
}

fn print_report(rep: &CheckReport) {
    for item in &rep.items {
        let tag = match item.status {
            ItemStatus::Passed => "pass",
            ItemStatus::Failed => "FAIL",
            ItemStatus::Skipped => "skip",
            ItemStatus::Info => "info",
        };
        println!("  [{tag}] {:<44} residual {:.3e}", item.name, item.residual);
    }
}

fn report_outcome(rep: &CheckReport, context: &str) -> Result<(), Failure> {
    print_report(rep);
    if rep.overall() {
        println!("{context}: pass");
        Ok(())
    } else {
        Err(Failure::Verification(context.to_string()))
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let tol = Tolerance::default();
    match cli.command {
        Command::Compute {
            what,
            input,
            witness,
            seed,
            out,
        } => {
            let a = load_square(&input)?;
            let result = match what.as_str() {
                "mp" => geninv::moore_penrose(&a, &tol),
                "drazin" => geninv::drazin(&a, &tol),
                "group" => geninv::group_inverse(&a, &tol)?,
                "drazin-star" => geninv::drazin_star(&a, &tol),
                "gd" => obtain_witness(&a, &witness, seed, &tol)?,
                "gdmp" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    geninv::gdmp(&a, &x, &tol)?
                }
                "mpgd" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    geninv::mpgd(&a, &x, &tol)?
                }
                "gd-star" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::gd_star(&a, &x, &tol)?
                }
                "dual-gd-star" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::dual_gd_star(&a, &x, &tol)?
                }
                "gd-star-one" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::gd_star_one(&a, &x, &tol)?
                }
                other => return Err(Failure::Usage(format!("unknown --what {other}"))),
            };
            emit(&out, &what, &result)
        }
        Command::Decompose { form, input, out } => {
            let a = load_square(&input)?;
            let json = match form.as_str() {
                "core-nilpotent" | "block-diagonal" => {
                    let cn_form = if form == "core-nilpotent" {
                        CnForm::Unitary
                    } else {
                        CnForm::Similarity
                    };
                    let cn = decomp::core_nilpotent(&a, &tol, cn_form)?;
                    print_matrix("P", &cn.p);
                    print_matrix("C", &cn.c);
                    if cn.s.fro_norm() > 0.0 {
                        print_matrix("S", &cn.s);
                    }
                    print_matrix("N", &cn.n);
                    println!("index k = {}", cn.k);
                    serde_json::json!({
                        "form": form,
                        "k": cn.k,
                        "straddle": cn.straddle,
                        "factors": {
                            "p": MatrixFile::from_cmat(&cn.p),
                            "pinv": MatrixFile::from_cmat(&cn.pinv),
                            "c": MatrixFile::from_cmat(&cn.c),
                            "s": MatrixFile::from_cmat(&cn.s),
                            "n": MatrixFile::from_cmat(&cn.n),
                        },
                    })
                }
                "hs" => {
                    let hs = decomp::hartwig_spindelboeck(&a, &tol)?;
                    print_matrix("U", &hs.u);
                    print_matrix("K", &hs.k_blk);
                    print_matrix("L", &hs.l_blk);
                    println!("rank r = {}, sigma = {:?}", hs.r, hs.sigma);
                    serde_json::json!({
                        "form": "hs",
                        "r": hs.r,
                        "sigma": hs.sigma,
                        "factors": {
                            "u": MatrixFile::from_cmat(&hs.u),
                            "k": MatrixFile::from_cmat(&hs.k_blk),
                            "l": MatrixFile::from_cmat(&hs.l_blk),
                        },
                    })
                }
                other => return Err(Failure::Usage(format!("unknown --form {other}"))),
            };
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&json).map_err(IoError::from)?)
                    .map_err(IoError::from)?;
                println!("written to {}", path.display());
            }
            Ok(())
        }
        Command::Verify {
            suite,
            input,
            witness,
            seed,
        } => {
            let a = load_square(&input)?;
            let rep = match suite.as_str() {
                "penrose" => {
                    let x = witness
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("penrose requires --witness".into()))
                        .and_then(|p| Ok(io::read_matrix(p)?))?;
                    geninv::penrose_report(&a, &x, &tol)
                }
                "gd" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    geninv::gd_verify(&a, &x, &tol)
                }
                "gdmp" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    let y = geninv::gdmp(&a, &x, &tol)?;
                    geninv::verify_gdmp_system(&a, &y, &tol)
                }
                "mpgd" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    let z = geninv::mpgd(&a, &x, &tol)?;
                    geninv::verify_mpgd_system(&a, &z, &tol)
                }
                "sa3" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::verify_lemma_sa3(&a, &x, &tol)?
                }
                "dual" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::verify_dual_lemma(&a, &x, &tol)?
                }
                "star-one" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::verify_star_one_lemma(&a, &x, &tol)?
                }
                "special" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::special_class_identities(&a, &x, &tol)?
                }
                "spectral" => {
                    let x = obtain_witness(&a, &witness, seed, &tol)?;
                    starfam::spectral_identities(&a, &x, &tol)?
                }
                other => return Err(Failure::Usage(format!("unknown --suite {other}"))),
            };
            report_outcome(&rep, &format!("verify {suite}"))
        }
        Command::Order {
            relation,
            a,
            b,
            witness,
        } => {
            let ma = load_square(&a)?;
            let mb = load_square(&b)?;
            let kind = match relation.as_str() {
                "minus" => OrderKind::Minus,
                "star" => OrderKind::Star,
                "group" => OrderKind::Group,
                "drazin" => OrderKind::DrazinPre,
                "gd" => OrderKind::GDPre,
                "gd-star" => OrderKind::GDStar,
                "d-dagger" => OrderKind::DDagger,
                other => return Err(Failure::Usage(format!("unknown --relation {other}"))),
            };
            let w = match &witness {
                Some(path) => Some(io::read_matrix(path)?),
                None => None,
            };
            if kind.needs_witness() && w.is_none() {
                return Err(Failure::Usage(format!(
                    "relation {relation} requires --witness"
                )));
            }
            let (holds, rep) = orders::leq(&ma, &mb, &OrderRelation::new(kind, w), &tol)?;
            print_report(&rep);
            if holds {
                println!("A <= B under the {relation} relation");
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "A is not below B under the {relation} relation"
                )))
            }
        }
        Command::Law {
            name,
            matrices,
            witness_a,
            witness_b,
            witness_c,
            seed,
        } => {
            let loaded: Vec<CMat> = matrices
                .iter()
                .map(|p| load_square(p))
                .collect::<Result<_, _>>()?;
            let need = if name.starts_with("triple") { 3 } else { 2 };
            if loaded.len() != need {
                return Err(Failure::Usage(format!(
                    "law {name} needs {need} matrices, got {}",
                    loaded.len()
                )));
            }
            let mut rng = Rng::seeded(seed);
            let mut get_witness = |m: &CMat, file: &Option<PathBuf>| -> Result<CMat, Failure> {
                match file {
                    Some(path) => Ok(io::read_matrix(path)?),
                    None => {
                        let params = GDParams::seeded(m, &mut rng, &tol)?;
                        Ok(geninv::gd_sample(m, &params, &tol, GdRoute::SimilarityGd2)?)
                    }
                }
            };
            let wa = get_witness(&loaded[0], &witness_a)?;
            let wb = get_witness(&loaded[1], &witness_b)?;
            let rep = match name.as_str() {
                "reverse-gd" => laws::reverse_gd(&loaded[0], &loaded[1], &wa, &wb, &tol),
                "forward-gd" => laws::forward_gd(&loaded[0], &loaded[1], &wa, &wb, &tol),
                "reverse-gd-star" => laws::reverse_gd_star(&loaded[0], &loaded[1], &wa, &wb, &tol),
                "forward-gd-star" => laws::forward_gd_star(&loaded[0], &loaded[1], &wa, &wb, &tol),
                "additive-gd" => laws::additive_gd(&loaded[0], &loaded[1], &wa, &wb, &tol),
                "additive-gd-star" => laws::additive_gd_star(&loaded[0], &loaded[1], &wa, &wb, &tol),
                "additive-necessary" => {
                    laws::additive_necessary(&loaded[0], &loaded[1], &wa, &wb, &tol)
                }
                other => {
                    let (base, variant) = other
                        .split_once(':')
                        .ok_or_else(|| Failure::Usage(format!("unknown --name {other}")))?;
                    let variant = match variant {
                        "i" => TripleVariant::I,
                        "ii" => TripleVariant::II,
                        "iii" => TripleVariant::III,
                        "iv" => TripleVariant::IV,
                        v => return Err(Failure::Usage(format!("unknown variant {v}"))),
                    };
                    let wc = get_witness(&loaded[2], &witness_c)?;
                    match base {
                        "triple-reverse" => laws::triple_reverse_gd(
                            &loaded[0], &loaded[1], &loaded[2], &wa, &wb, &wc, variant, &tol,
                        ),
                        "triple-forward" => laws::triple_forward_gd(
                            &loaded[0], &loaded[1], &loaded[2], &wa, &wb, &wc, variant, &tol,
                        ),
                        v => return Err(Failure::Usage(format!("unknown --name {v}"))),
                    }
                }
            };
            report_outcome(&rep, &format!("law {name}"))
        }
        Command::Solve {
            mode,
            a,
            b,
            z,
            witness,
            seed,
        } => {
            let ma = load_square(&a)?;
            let vb = io::read_matrix(&b)?;
            let x = obtain_witness(&ma, &witness, Some(seed), &tol)?;
            let sol = match mode.as_str() {
                "lsq" => solve::lsq_gdmp(&ma, &vb, &x, &tol)?,
                "minnorm" => solve::minnorm_mpgd(&ma, &vb, &x, &tol)?,
                "gram" => {
                    let vz = match &z {
                        Some(path) => io::read_matrix(path)?,
                        None => CMat::zeros(ma.nrows(), 1),
                    };
                    solve::gram_solve(&ma, &vb, &x, &vz, &tol)?
                }
                other => return Err(Failure::Usage(format!("unknown --mode {other}"))),
            };
            print_matrix("x", &sol.x);
            report_outcome(&sol.report, &format!("solve {mode}"))
        }
        Command::Markov { transition, seed } => {
            let t_mat = load_square(&transition)?;
            let mut rng = Rng::seeded(seed);
            let res = solve::markov_stationary(&t_mat, &mut rng, &tol)?;
            println!("stationary distribution: {:?}", res.w);
            report_outcome(&res.report, "markov")
        }
        Command::Fuzz {
            suites,
            n,
            max_size,
            seed,
            report,
        } => {
            let names: Vec<String> = if suites == "all" {
                harness::SUITE_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                let list: Vec<String> = suites.split(',').map(|s| s.trim().to_string()).collect();
                for s in &list {
                    if !harness::SUITE_NAMES.contains(&s.as_str()) {
                        return Err(Failure::Usage(format!(
                            "unknown suite {s}; expected one of {:?}",
                            harness::SUITE_NAMES
                        )));
                    }
                }
                list
            };
            if n == 0 || max_size < 2 {
                return Err(Failure::Usage("need --n >= 1 and --max-size >= 2".into()));
            }
            let cfg = FuzzConfig {
                suites: names,
                iterations: n,
                max_size,
                seed,
                tol,
            };
            let run = harness::run_fuzz(&cfg);
            for s in &run.suites {
                println!(
                    "suite {:<10} iterations {:>4}  passed {:>6}  failed {:>3}  skipped {:>5}  max residual {:.3e}",
                    s.name, s.iterations, s.passed, s.failed, s.skipped, s.max_residual
                );
            }
            println!("verdict: {}", run.verdict);
            if let Some(path) = &report {
                std::fs::write(path, serde_json::to_string_pretty(&run).map_err(IoError::from)?)
                    .map_err(IoError::from)?;
                println!("report written to {}", path.display());
            }
            if run.passed() {
                Ok(())
            } else {
                let summary = run
                    .counterexamples
                    .iter()
                    .map(|c| format!("{}[{}]", c.suite, c.iteration))
                    .collect::<Vec<_>>()
                    .join(", ");
                Err(Failure::Verification(format!(
                    "counterexamples in {summary}"
                )))
            }
        }
    }
}
