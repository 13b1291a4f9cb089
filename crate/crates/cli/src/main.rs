use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use qrefine_core::{
    explain, f_recursive, nlog_value, prop3_rhs, q_binomial, q_int, run_grid, theorem1_lhs, theorem1_rhs,
    theorem2_lhs, theorem2_rhs, Error, FSumSpec, GridSpec, Identity, LaurentPoly, ParamRange, Params, QBinomialArgs,
    RenderStyle, SurfaceTag,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qrefine", version, about = "Exact evaluation and verification of q-binomial identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single quantity.
    Eval(EvalArgs),
    /// Check an identity on a parameter grid.
    Verify(VerifyArgs),
    /// List the summands of a left-hand side and their total.
    Explain(ExplainArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Qbinom,
    Qint,
    F,
    Lhs,
    Rhs,
    Nlog,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    fn style(self) -> RenderStyle {
        match self {
            Format::Text => RenderStyle::Plain,
            Format::Json => RenderStyle::Json,
            Format::Latex => RenderStyle::Latex,
        }
    }
}

#[derive(Args, Default)]
struct PointParams {
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i64>,
    /// Twice d0.
    #[arg(long = "D", allow_hyphen_values = true)]
    big_d: Option<i64>,
    #[arg(long)]
    d0: Option<i64>,
    #[arg(long)]
    d1: Option<i64>,
    #[arg(long)]
    d2: Option<i64>,
    #[arg(long)]
    k0: Option<i64>,
}

impl PointParams {
    fn to_params(&self) -> Params {
        [
            ("n", self.n),
            ("k", self.k),
            ("alpha", self.alpha),
            ("D", self.big_d),
            ("d0", self.d0),
            ("d1", self.d1),
            ("d2", self.d2),
            ("k0", self.k0),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name.to_string(), v)))
        .collect()
    }
}

#[derive(Args)]
struct EvalArgs {
    kind: Kind,
    #[command(flatten)]
    params: PointParams,
    /// Identity for `lhs` and `rhs`.
    #[arg(long)]
    identity: Option<Identity>,
    /// Surface for `nlog`: dP1_04 (uses --d0 --d1) or F0_04 (uses --d1 --d2).
    #[arg(long)]
    surface: Option<SurfaceTag>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ExplainArgs {
    #[arg(long)]
    identity: Identity,
    #[command(flatten)]
    params: PointParams,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    identity: Option<Identity>,
    #[arg(long)]
    d0: Option<ParamRange>,
    #[arg(long)]
    d1: Option<ParamRange>,
    #[arg(long)]
    d2: Option<ParamRange>,
    #[arg(long)]
    k0: Option<ParamRange>,
    #[arg(long = "D", allow_hyphen_values = true)]
    big_d: Option<ParamRange>,
    /// Termination order of the Saalschütz instances.
    #[arg(long = "N")]
    big_n: Option<ParamRange>,
    /// Saalschütz q-exponent ranges.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<ParamRange>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<ParamRange>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<ParamRange>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// `text` or `json` (line-delimited records plus a summary line).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Add 1 to every right-hand side; the run must then fail.
    #[arg(long)]
    selftest_corrupt: bool,
    /// Record wall-clock time per cell (output is no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// TOML file with the same keys; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    identity: Option<String>,
    jobs: Option<usize>,
    format: Option<Format>,
    output: Option<PathBuf>,
    #[serde(default)]
    selftest_corrupt: bool,
    #[serde(default)]
    timing: bool,
    #[serde(default)]
    ranges: BTreeMap<String, String>,
}

enum Failure {
    Usage(String),
    Domain(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn need(params: &Params, name: &str) -> Result<i64, Failure> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| Failure::Usage(format!("missing --{name}")))
}

fn nonneg(params: &Params, name: &str) -> Result<u32, Failure> {
    let v = need(params, name)?;
    u32::try_from(v).map_err(|_| Failure::Usage(format!("--{name} must be nonnegative")))
}

fn need_identity(identity: Option<Identity>) -> Result<Identity, Failure> {
    identity.ok_or_else(|| Failure::Usage("missing --identity".into()))
}

fn evaluate(args: &EvalArgs) -> Result<LaurentPoly, Failure> {
    let p = args.params.to_params();
    let value = match args.kind {
        Kind::Qbinom => q_binomial(QBinomialArgs {
            n: need(&p, "n")?,
            k: need(&p, "k")?,
        }),
        Kind::Qint => q_int(need(&p, "alpha")?).expand()?,
        Kind::F => f_recursive(FSumSpec::new(need(&p, "D")?, nonneg(&p, "d1")?, nonneg(&p, "k0")?)),
        Kind::Lhs => match need_identity(args.identity)? {
            Identity::Thm1 => theorem1_lhs(need(&p, "d0")?, need(&p, "d1")?)?,
            Identity::Thm2 => theorem2_lhs(need(&p, "d1")?, need(&p, "d2")?)?,
            Identity::Prop3 => {
                let spec = FSumSpec::new(need(&p, "D")?, nonneg(&p, "d1")?, nonneg(&p, "k0")?);
                f_recursive(spec)
            }
            Identity::Saalschutz => return Err(Failure::Usage("eval supports thm1, thm2 and prop3".into())),
        },
        Kind::Rhs => match need_identity(args.identity)? {
            Identity::Thm1 => theorem1_rhs(need(&p, "d0")?, need(&p, "d1")?)?,
            Identity::Thm2 => theorem2_rhs(need(&p, "d1")?, need(&p, "d2")?)?,
            Identity::Prop3 => prop3_rhs(need(&p, "D")?, need(&p, "d1")?, need(&p, "k0")?)?,
            Identity::Saalschutz => return Err(Failure::Usage("eval supports thm1, thm2 and prop3".into())),
        },
        Kind::Nlog => {
            let surface = args.surface.ok_or_else(|| Failure::Usage("missing --surface".into()))?;
            match surface {
                SurfaceTag::Dp1_04 => nlog_value(surface, need(&p, "d0")?, need(&p, "d1")?)?,
                SurfaceTag::F0_04 => nlog_value(surface, need(&p, "d1")?, need(&p, "d2")?)?,
            }
        }
    };
    Ok(value)
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let value = evaluate(&args)?;
    println!("{}", value.render(args.format.style()));
    Ok(())
}

fn cmd_explain(args: ExplainArgs) -> Result<(), Failure> {
    let e = explain(args.identity, &args.params.to_params())?;
    print!("{}", e.render(args.format.style()));
    Ok(())
}

fn load_config(path: &PathBuf) -> Result<ConfigFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let config = match &args.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let identity = match (args.identity, &config.identity) {
        (Some(id), _) => id,
        (None, Some(s)) => s.parse().map_err(Failure::Usage)?,
        (None, None) => return Err(Failure::Usage("missing --identity".into())),
    };
    let mut spec = GridSpec::new(identity);
    for (name, text) in &config.ranges {
        spec.ranges.insert(name.clone(), text.parse().map_err(Failure::Usage)?);
    }
    let flags = [
        ("d0", args.d0),
        ("d1", args.d1),
        ("d2", args.d2),
        ("k0", args.k0),
        ("D", args.big_d),
        ("N", args.big_n),
        ("a", args.a),
        ("b", args.b),
        ("c", args.c),
    ];
    for (name, range) in flags {
        if let Some(range) = range {
            spec.ranges.insert(name.to_string(), range);
        }
    }
    spec.jobs = args.jobs.or(config.jobs).unwrap_or(1);
    spec.corrupt = args.selftest_corrupt || config.selftest_corrupt;
    spec.timing = args.timing || config.timing;
    spec.validate().map_err(Failure::Usage)?;

    let report = run_grid(&spec)?;
    let rendered = match args.format.or(config.format).unwrap_or(Format::Text) {
        Format::Json => report.render_json_lines(),
        Format::Text => report.render_text(),
        Format::Latex => return Err(Failure::Usage("verify reports are text or json".into())),
    };
    match args.output.or(config.output) {
        Some(path) => fs::write(&path, rendered).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string()))?,
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Explain(a) => cmd_explain(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(EXIT_USAGE)
        }
    }
}
