mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use okb_core::exactlin::rational::parse_rational;
use okb_core::{DivisorClass, Rational};

#[derive(Parser, Debug)]
#[command(name = "okb", version, about = "Okounkov bodies and Zariski decompositions on blow-ups of the plane")]
struct Cli {
    /// Write the result to a file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the (-1)-classes on Xₙ.
    Curves {
        #[arg(short = 'n')]
        n: usize,
        /// Count classes by degree.
        #[arg(long)]
        histogram: bool,
        /// Cross-check against the Diophantine enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Multi-point Seshadri constant of a line.
    Seshadri {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Test a positivity property (default --psef), with a certificate.
    Test {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, conflicts_with_all = ["big", "ample", "psef"])]
        nef: bool,
        #[arg(long, conflicts_with_all = ["ample", "psef"])]
        big: bool,
        #[arg(long, conflicts_with = "psef")]
        ample: bool,
        #[arg(long)]
        psef: bool,
        #[arg(long)]
        json: bool,
    },
    /// Zariski decomposition D = P + N.
    Zariski {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        json: bool,
    },
    /// Okounkov body for the line-and-point flag.
    Body {
        #[arg(short = 'n')]
        n: usize,
        /// Divisor class "d,m1,...,mn".
        #[arg(short = 'D', allow_hyphen_values = true, conflicts_with_all = ["d", "m"])]
        class: Option<String>,
        #[arg(short = 'd', value_parser = rational, allow_hyphen_values = true, requires = "m")]
        d: Option<Rational>,
        #[arg(short = 'm', value_parser = rational, allow_hyphen_values = true, requires = "d")]
        m: Option<Rational>,
        #[arg(long)]
        json: bool,
    },
    /// Bodies of e₀ − ε·Σ eᵢ for n = 0..9.
    Dissect {
        #[arg(long = "eps", value_parser = rational, allow_hyphen_values = true)]
        eps: Rational,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = okb_core::figure::DEFAULT_SCALE)]
        scale: f64,
    },
    /// Vertical strip predicted for L_{n,d,m}, n ≥ 9.
    Nagata {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd', value_parser = rational, allow_hyphen_values = true)]
        d: Rational,
        #[arg(short = 'm', value_parser = rational, allow_hyphen_values = true)]
        m: Rational,
        #[arg(long)]
        json: bool,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(short = 'n')]
    n: usize,
    /// Divisor class "d,m1,...,mn".
    #[arg(short = 'D', allow_hyphen_values = true)]
    class: String,
}

impl ClassArgs {
    fn parse(&self) -> okb_core::Result<DivisorClass> {
        commands::class_for(self.n, &self.class)
    }
}

/// Property tested by `test`; pseudo-effectivity unless a flag says otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Property {
    Nef,
    Big,
    Ample,
    Psef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
    Tikz,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> okb_core::Result<commands::Output> {
    match &cli.command {
        Command::Curves { n, histogram, oracle, json } => commands::curves(*n, *histogram, *oracle, *json),
        Command::Seshadri { n, json } => commands::seshadri(*n, *json),
        Command::Test { class, nef, big, ample, psef: _, json } => {
            let prop = if *nef {
                Property::Nef
            } else if *big {
                Property::Big
            } else if *ample {
                Property::Ample
            } else {
                Property::Psef
            };
            commands::test(&class.parse()?, prop, *json)
        }
        Command::Zariski { class, json } => commands::zariski(&class.parse()?, *json),
        Command::Body { n, class, d, m, json } => match (class, d, m) {
            (Some(c), _, _) => commands::body_class(&commands::class_for(*n, c)?, *json),
            (None, Some(d), Some(m)) => commands::body_symmetric(*n, d, m, *json),
            _ => Err(okb_core::Error::parse("body", "give either -D <class> or -d <d> -m <m>")),
        },
        Command::Dissect { eps, format, scale } => commands::dissect(eps, *format, *scale),
        Command::Nagata { n, d, m, json } => commands::nagata(*n, d, m, *json),
        Command::Verify { suite, seed, json } => commands::verify(&suite.parse()?, *seed, *json),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
