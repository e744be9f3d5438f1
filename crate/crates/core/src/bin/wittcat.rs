use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wittcat::cli::commands as cmd;
use wittcat::cli::{verify_all, Config, Report};
use wittcat::kernel::parse::parse_scalar_list;
use wittcat::kernel::Scalar;
use wittcat::Result;

#[derive(Parser)]
#[command(name = "wittcat", version, about = "Exact computations for Witt algebra modules")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
    /// Override the random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print JSON instead of the text view.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two vector fields.
    Bracket {
        x: String,
        y: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Normal form in the localized enveloping algebra.
    NormalForm {
        x: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Commutator of two elements of the localized enveloping algebra.
    Commutator {
        x: String,
        y: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Coordinates in the basis X-monomial * h^r * d^s.
    Decompose {
        x: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// z_i (one index), z_{i,j} (two) or z_{i,l,j} (three); one-based.
    MakeZ {
        #[arg(required = true, num_args = 1..=3)]
        indices: Vec<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// X_{m,j} with m given as "2,0" and one-based j.
    MakeX { m: String, j: usize },
    /// Ordered X-monomials up to the config degree.
    HBasis {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Image under phi in D_n (x) U(gl_n).
    Phi {
        x: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply x to poly (x) v_basis in T(P, V).
    TensorApply {
        x: String,
        /// trivial, natural, wedge:k or a highest weight "2,0".
        #[arg(long, default_value = "natural")]
        module: String,
        #[arg(long, default_value = "1")]
        poly: String,
        #[arg(long, default_value_t = 1)]
        basis: usize,
        /// Use P(mu) instead of A^a.
        #[arg(long)]
        laurent: bool,
    },
    /// pi o pi = 0 and equivariance of pi.
    ComplexCheck,
    /// Whittaker vectors of T(A^1, V), im pi_k ("image:k") or ker pi_k ("kernel:k").
    Whittaker {
        #[arg(long, default_value = "natural")]
        source: String,
    },
    /// Whittaker vectors of Q_1 by degree.
    Q1 {
        #[arg(long)]
        n: Option<usize>,
    },
    /// JSON form of a gl_n-module.
    Glrep {
        #[arg(default_value = "natural")]
        module: String,
    },
    /// Slice determinants of the induced weight module on a window.
    CuspidalCheck,
    /// Whether two weights lie in different blocks.
    Separation {
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Recover the input H-module from the induced weight module.
    Roundtrip,
    /// Run every check at the configured scale.
    VerifyAll,
    /// Apply a Weyl algebra expression to a (Laurent) polynomial.
    DmodApply {
        op: String,
        vec: String,
        #[arg(long)]
        laurent: bool,
    },
}

fn scalars(s: &Option<String>, default: &[Scalar], np: usize) -> Result<Vec<Scalar>> {
    match s {
        Some(s) => parse_scalar_list(s, Some(np)),
        None => Ok(default.to_vec()),
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let np = cfg.nparams();
    match &cli.command {
        Command::Bracket { x, y, n } => cmd::bracket(x, y, *n),
        Command::NormalForm { x, n } => cmd::normal_form(x, *n),
        Command::Commutator { x, y, n } => cmd::commutator(x, y, *n),
        Command::Decompose { x, n, bound } => cmd::decompose(x, *n, *bound),
        Command::MakeZ { indices, n } => cmd::make_z_cmd(n.unwrap_or(cfg.n), indices),
        Command::MakeX { m, j } => cmd::make_x_cmd(m, *j),
        Command::HBasis { n } => cmd::h_basis(n.unwrap_or(cfg.n), cfg.degree),
        Command::Phi { x, n } => cmd::phi_cmd(x, *n),
        Command::TensorApply {
            x,
            module,
            poly,
            basis,
            laurent,
        } => cmd::tensor_apply(x, module, poly, *basis, *laurent, &cfg),
        Command::ComplexCheck => cmd::complex_check(&cfg),
        Command::Whittaker { source } => cmd::whittaker(source, &cfg),
        Command::Q1 { n } => cmd::q1(n.unwrap_or(1), cfg.degree + 1),
        Command::Glrep { module } => cmd::glrep(module, cfg.n),
        Command::CuspidalCheck => cmd::cuspidal_check(&cfg),
        Command::Separation { gamma, lambda } => {
            let g = scalars(gamma, &cfg.gamma, np)?;
            let mut shifted = g.clone();
            shifted[0] = &shifted[0] + &Scalar::ratio(1, 2);
            let l = scalars(lambda, &shifted, np)?;
            cmd::separation(&g, &l)
        }
        Command::Roundtrip => cmd::roundtrip_cmd(&cfg),
        Command::VerifyAll => Ok(verify_all(&cfg)),
        Command::DmodApply { op, vec, laurent } => cmd::dmod_apply(op, vec, *laurent, &cfg),
    }
    .and_then(|r| {
        let target = cli.emit.as_ref().or(cfg.output.as_ref());
        if let Some(path) = target {
            std::fs::write(path, r.to_json()).map_err(|e| wittcat::Error::Io(format!("{}: {}", path.display(), e)))?;
        }
        Ok(r)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.render());
            }
            if r.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
