use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use qcartan::dsl::parse;
use qcartan::eval::Evaluator;
use qcartan::verify::{
    exit_code, load_instance, parse_q, render_json, render_text, ConfigError, Meta, Plan, EXIT_CONFIG, EXIT_FAIL,
};
use qcartan_core::dual::Normalization;
use qcartan_core::ncalg::frt::gl_q2;
use qcartan_core::suites::{Engine, Options, DEFAULT_WEDGE_CAP};

#[derive(Parser)]
#[command(
    name = "qcartan",
    version,
    about = "Exact checks of Cartan calculus on FRT quantum groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Norm {
    Lambda,
    Raw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    #[value(name = "gl-q2")]
    GlQ2,
}

#[derive(clap::Args)]
struct Common {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    /// Rational value of q; omit to stay symbolic.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, value_enum, default_value_t = Norm::Lambda)]
    normalization: Norm,
    /// Highest form degree of the exterior algebra.
    #[arg(long, default_value_t = DEFAULT_WEDGE_CAP)]
    degree_cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and report every check.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite name or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        report: Format,
    },
    /// Print a built-in instance as JSON.
    Instance {
        #[arg(value_enum, default_value_t = Builtin::GlQ2)]
        name: Builtin,
    },
    /// Evaluate one expression and print its normal form.
    Eval {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
}

impl Common {
    fn load(&self) -> Result<(qcartan_core::ncalg::Algebra, Options), ConfigError> {
        let q = self.q.as_deref().map(parse_q).transpose()?;
        let opts = Options {
            q,
            normalization: match self.normalization {
                Norm::Lambda => Normalization::Lambda,
                Norm::Raw => Normalization::Raw,
            },
            degree_cap: self.degree_cap,
        };
        Ok((load_instance(&self.instance)?, opts))
    }
}

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("qcartan: configuration error: {e}");
    ExitCode::from(EXIT_CONFIG as u8)
}

fn verify(common: &Common, suite: &str, report: Format) -> ExitCode {
    let (alg, opts) = match common.load() {
        Ok(x) => x,
        Err(e) => return config_error(e),
    };
    let plan = match Plan::new(alg, suite, opts) {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    let run = match plan.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qcartan: {e}");
            return ExitCode::from(EXIT_FAIL as u8);
        }
    };
    let meta = Meta {
        instance: &common.instance,
        suite,
        opts: plan.engine.options(),
    };
    match report {
        Format::Text => print!("{}", render_text(&run, &meta)),
        Format::Json => println!("{}", render_json(&run, &meta)),
    }
    ExitCode::from(exit_code(&run) as u8)
}

fn eval(common: &Common, src: &str) -> ExitCode {
    let (alg, opts) = match common.load() {
        Ok(x) => x,
        Err(e) => return config_error(e),
    };
    let expr = match parse(src) {
        Ok(e) => e,
        Err(e) => return config_error(e),
    };
    let engine = match Engine::new(Arc::new(alg), opts) {
        Ok(e) => e,
        Err(e) => return config_error(e),
    };
    let cartan = match engine.cartan() {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let ev = Evaluator::new(cartan);
    match ev.eval(&expr) {
        Ok(v) => {
            let v = match engine.options().q.as_ref() {
                Some(q0) => match ev.specialize(&v, q0) {
                    Ok(v) => v,
                    Err(e) => {
                        eprintln!("qcartan: {e}");
                        return ExitCode::from(EXIT_FAIL as u8);
                    }
                },
                None => v,
            };
            println!("{}", ev.show(&v));
            ExitCode::SUCCESS
        }
        Err(e) => config_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Verify { common, suite, report } => verify(common, suite, *report),
        Cmd::Eval { common, expr } => eval(common, expr),
        Cmd::Instance { name: Builtin::GlQ2 } => {
            println!("{}", gl_q2().to_json());
            ExitCode::SUCCESS
        }
    }
}
