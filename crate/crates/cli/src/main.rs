//! `moonlab`: build, inspect, count, enumerate and verify tournaments.

mod cache;
mod error;
mod output;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moonlab_core::families::{extremal_labels, path_labels};
use moonlab_core::trn::pair_bits;
use moonlab_core::verify::{replay, CheckParams};
use moonlab_core::{
    analyze, build_douglas, build_extremal, build_extremal_minus, build_hatted,
    build_path_extremal, build_transitive, census_with_strong, check, check_all, cycle_counts,
    cycle_counts_through, enumerate_tournaments, formula_c, formula_c_through,
    hamiltonian_path_count, parse_trn, strong_sub_counts, trn, DouglasParams, Filter,
    FormulaValue, HatKind, Outcome, Tournament, VertexLabeling,
};
use serde_json::{json, Value};

use error::{CliError, CliResult, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
use output::{envelope, length_map};

#[derive(Parser, Debug)]
#[command(name = "moonlab", version, about = "Exact circuit counts and exhaustive checks for tournaments")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Directory for enumeration caches.
    #[arg(long, global = true, env = cache::CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Trn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a named tournament and print it as TRN.
    Build(BuildArgs),
    /// Report strong connectivity, distances and critical vertices.
    Analyze {
        /// TRN file, or `-` for stdin.
        input: String,
    },
    /// Count circuits by length.
    Count(CountArgs),
    /// List one representative per isomorphism class.
    Enumerate(EnumerateArgs),
    /// Run exhaustive checks over all classes of an order.
    Verify(VerifyArgs),
    /// Evaluate the closed-form circuit counts of the extremal family.
    Formula(FormulaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Tt,
    Path,
    Extremal,
    ExtremalMinus,
    Hatted,
    Douglas,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Right,
    Left,
    Both,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// End(s) to modify for `hatted`.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Douglas parameters h_1,...,h_{n-d+1}.
    #[arg(long, value_delimiter = ',')]
    h: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// TRN file, or `-` for stdin.
    input: String,
    /// Also count circuits through this vertex.
    #[arg(long)]
    through: Option<usize>,
    /// Also count strong subtournaments by order.
    #[arg(long)]
    strong_subs: bool,
    /// Also count Hamiltonian paths.
    #[arg(long)]
    ham_paths: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    strong: bool,
    #[arg(long, conflicts_with = "diam_eq")]
    diam_le: Option<usize>,
    #[arg(long)]
    diam_eq: Option<usize>,
    /// Reuse or populate the enumeration cache.
    #[arg(long)]
    cache: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check identifier, e.g. `thm2`.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    check: Option<String>,
    #[arg(long, required_unless_present = "all")]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    /// Run every check for every order up to `--n-max`.
    #[arg(long, requires = "n_max", conflicts_with_all = ["n", "d", "ell", "h", "replay"])]
    all: bool,
    #[arg(long)]
    n_max: Option<usize>,
    /// Evaluate the check's clauses on one TRN file instead of scanning.
    #[arg(long)]
    replay: Option<String>,
}

#[derive(Args, Debug)]
struct FormulaArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, required_unless_present = "through")]
    ell: Option<usize>,
    /// The per-vertex count for the leading block of the minus tournament.
    #[arg(long, conflicts_with = "ell")]
    through: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.map_or(0, usize::from))
        .build()
        .expect("thread pool");
    match pool.install(|| run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("moonlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<u8> {
    let mut out = Sink::open(cli.output.as_ref())?;
    let code = match &cli.command {
        Command::Build(args) => build(cli, args, &mut out)?,
        Command::Analyze { input } => {
            format_of(cli, &[Format::Json])?;
            let t = read_trn(input)?;
            out.write(&envelope("analyze", &analyze(&t)))?;
            EXIT_OK
        }
        Command::Count(args) => count(cli, args, &mut out)?,
        Command::Enumerate(args) => enumerate(cli, args, &mut out)?,
        Command::Verify(args) => verify(cli, args, &mut out)?,
        Command::Formula(args) => formula(cli, args, &mut out)?,
    };
    out.finish()?;
    Ok(code)
}

/// The requested format if it is allowed, else the command's default (the
/// first entry of `allowed`).
fn format_of(cli: &Cli, allowed: &[Format]) -> CliResult<Format> {
    match cli.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Usage(format!(
            "format `{}` is not available for this command",
            f.to_possible_value().expect("named").get_name()
        ))),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} requires --{flag}")))
}

fn build(cli: &Cli, args: &BuildArgs, out: &mut Sink) -> CliResult<u8> {
    let format = format_of(cli, &[Format::Trn, Format::Json])?;
    let name = args.family.to_possible_value().expect("named").get_name().to_string();
    let n = need(args.n, "n", &name)?;
    let (t, labels): (Tournament, VertexLabeling) = match args.family {
        Family::Tt => (build_transitive(n)?, path_labels(n)),
        Family::Path => (build_path_extremal(n)?, path_labels(n)),
        Family::Extremal | Family::ExtremalMinus => {
            let d = need(args.d, "d", &name)?;
            let minus = args.family == Family::ExtremalMinus;
            let t = if minus { build_extremal_minus(d, n)? } else { build_extremal(d, n)? };
            let m = n.saturating_sub(d) + 1;
            let (first, last) = if minus { (m.div_ceil(2), m / 2) } else { (m / 2, m.div_ceil(2)) };
            (t, extremal_labels(d, first, last))
        }
        Family::Hatted => {
            let kind = match need(args.kind, "kind", &name)? {
                Kind::Right => HatKind::Right,
                Kind::Left => HatKind::Left,
                Kind::Both => HatKind::Both,
            };
            (build_hatted(kind, n)?, path_labels(n))
        }
        Family::Douglas => {
            let d = need(args.d, "d", &name)?;
            let h = args.h.clone().ok_or_else(|| CliError::Usage("--family douglas requires --h".into()))?;
            let t = build_douglas(&DouglasParams::new(d, n, h)?)?;
            let m = n - d + 1;
            let labels = VertexLabeling::indexed("w_", 1, m)
                .concat(VertexLabeling::indexed("v_", 1, d - 1))
                .expect("prefixes are distinct");
            (t, labels)
        }
    };
    match format {
        Format::Trn => out.write(&trn::to_trn(&t))?,
        _ => out.write(&envelope(
            "build",
            &json!({ "family": name, "n": n, "pair_bits": pair_bits(&t), "labels": labels.names() }),
        ))?,
    }
    Ok(EXIT_OK)
}

fn count(cli: &Cli, args: &CountArgs, out: &mut Sink) -> CliResult<u8> {
    let format = format_of(cli, &[Format::Json, Format::Csv])?;
    let t = read_trn(&args.input)?;
    let n = t.order();
    if format == Format::Csv {
        let census = census_with_strong(&t)?;
        let mut text = String::from("length,c,s\n");
        for l in 3..=n {
            text.push_str(&format!("{l},{},{}\n", census.c(l), census.s(l).unwrap_or(0)));
        }
        out.write(&text)?;
        return Ok(EXIT_OK);
    }
    let census = cycle_counts(&t)?;
    let mut result = json!({ "n": n, "c": length_map(&census.c) });
    if args.strong_subs {
        result["s"] = length_map(&strong_sub_counts(&t)?);
    }
    if let Some(w) = args.through {
        result["through"] = json!({ "vertex": w, "c": length_map(&cycle_counts_through(&t, w)?) });
    }
    if args.ham_paths {
        result["hamiltonian_paths"] = Value::from(hamiltonian_path_count(&t)?);
    }
    out.write(&envelope("count", &result))?;
    Ok(EXIT_OK)
}

fn enumerate(cli: &Cli, args: &EnumerateArgs, out: &mut Sink) -> CliResult<u8> {
    let format = format_of(cli, &[Format::Trn, Format::Json])?;
    let filter = match (args.diam_le, args.diam_eq) {
        (Some(d), _) => Filter::DiameterAtMost(d),
        (_, Some(d)) => Filter::DiameterExactly(d),
        _ if args.strong => Filter::Strong,
        _ => Filter::All,
    };
    let spec = filter.to_string();
    let dir = args.cache.then(|| {
        cli.cache_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from(".moonlab-cache"))
    });
    let cached = dir.as_deref().and_then(|d| cache::load(d, args.n, &spec));
    let text = match cached {
        Some(text) => text,
        None => {
            let mut text = trn::trnset_header(args.n, &spec);
            for t in enumerate_tournaments(args.n, filter)? {
                text.push_str(&pair_bits(&t));
                text.push('\n');
            }
            if let Some(d) = &dir {
                cache::store(d, args.n, &spec, &text)?;
            }
            text
        }
    };
    match format {
        Format::Trn => out.write(&text)?,
        _ => {
            let bodies: Vec<&str> = text.lines().skip(1).collect();
            out.write(&envelope(
                "enumerate",
                &json!({ "n": args.n, "filter": spec, "count": bodies.len(), "tournaments": bodies }),
            ))?
        }
    }
    Ok(EXIT_OK)
}

fn verify(cli: &Cli, args: &VerifyArgs, out: &mut Sink) -> CliResult<u8> {
    format_of(cli, &[Format::Json])?;
    let reports = if args.all {
        check_all(args.n_max.expect("required by clap"))?
    } else {
        let id = args.check.as_deref().expect("required by clap");
        let mut params = CheckParams::new(args.n.expect("required by clap"));
        params.d = args.d;
        params.ell = args.ell;
        params.h = args.h;
        if let Some(path) = &args.replay {
            let t = read_trn(path)?;
            let clause = replay(id, &params, &t)?;
            let refuted = clause.is_some();
            out.write(&envelope(
                "verify",
                &json!({ "check_id": id, "params": params, "replay": true, "violated_clause": clause }),
            ))?;
            return Ok(if refuted { EXIT_REFUTED } else { EXIT_OK });
        }
        vec![check(id, &params)?]
    };
    let mut code = EXIT_OK;
    for r in &reports {
        if r.outcome == Outcome::Refuted {
            code = EXIT_REFUTED;
        }
        out.write(&envelope("verify", r))?;
    }
    Ok(code)
}

fn formula(cli: &Cli, args: &FormulaArgs, out: &mut Sink) -> CliResult<u8> {
    let format = cli.format;
    if format.is_some_and(|f| f != Format::Json) {
        return Err(CliError::Usage("formula supports only --format json".into()));
    }
    let value = match args.ell {
        Some(l) => match formula_c(args.d, args.n, l)? {
            FormulaValue::Covered(v) => Value::from(v),
            FormulaValue::NotCovered => Value::from("not-covered"),
        },
        None => Value::from(formula_c_through(args.d, args.n)?),
    };
    if format.is_some() {
        let mut result = json!({ "d": args.d, "n": args.n, "value": value });
        match args.ell {
            Some(l) => result["ell"] = Value::from(l),
            None => result["through"] = Value::from(true),
        }
        out.write(&envelope("formula", &result))?;
    } else {
        match value {
            Value::String(s) => out.write(&format!("{s}\n"))?,
            v => out.write(&format!("{v}\n"))?,
        }
    }
    Ok(EXIT_OK)
}

fn read_trn(input: &str) -> CliResult<Tournament> {
    let (name, text) = if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdin>"),
            source,
        })?;
        ("<stdin>".to_string(), text)
    } else {
        let text = fs::read_to_string(input).map_err(|source| CliError::Io {
            path: PathBuf::from(input),
            source,
        })?;
        (input.to_string(), text)
    };
    parse_trn(&text).map_err(|source| CliError::Input { path: name, source })
}

/// Buffered stdout or output file.
struct Sink {
    path: Option<PathBuf>,
    inner: Box<dyn Write>,
}

impl Sink {
    fn open(path: Option<&PathBuf>) -> CliResult<Sink> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(fs::File::create(p).map_err(|source| {
                CliError::Io { path: p.clone(), source }
            })?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink { path: path.cloned(), inner })
    }

    fn io_error(&self, source: io::Error) -> CliError {
        CliError::Io {
            path: self.path.clone().unwrap_or_else(|| PathBuf::from("<stdout>")),
            source,
        }
    }

    fn write(&mut self, text: &str) -> CliResult<()> {
        self.inner.write_all(text.as_bytes()).map_err(|e| self.io_error(e))
    }

    fn finish(mut self) -> CliResult<()> {
        self.inner.flush().map_err(|e| self.io_error(e))
    }
}
