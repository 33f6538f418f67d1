//! `kmact`: batch front end printing one JSON report per invocation.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors. Both error kinds print
//! `{"error": {"kind", "message"}}` on standard output.

mod parse;
mod render;

use std::fmt::Debug;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmact_core::cartan::check_conditions;
use kmact_core::klr::{graded_dim_count, Normalizer, RelationCheckConfig};
use kmact_core::morphcalc::{decompose, sort_class, GradedClass, HomEngine, SortOptions, Strategy};
use kmact_core::paths::{
    canonical_path, is_middle_weight, reduce_appended, reduce_to_empty, slide_equivalent, Equivalence, PathError,
};
use kmact_core::qgrade::{qbinom, qint};
use kmact_core::{CartanDatum, Support};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kmact", version, about = "Weights, E/F words, KLR algebras and slide paths")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Cartan datum file (JSON, 0-based vertices).
    #[arg(long, global = true, value_name = "FILE")]
    cartan: Option<PathBuf>,
    /// Support file (JSON with "base_pairings" and "weights").
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "grassmannian")]
    support: Option<PathBuf>,
    /// Generate the support of Lambda^N(C^m (x) C^n) for sl_n.
    #[arg(long, global = true, value_name = "m,n,N")]
    grassmannian: Option<String>,
    /// Degree window.
    #[arg(long, global = true, value_name = "lo,hi", allow_hyphen_values = true)]
    window: Option<String>,
    /// Step, depth or search budget of the command.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// The quantum integer [n].
    Qint {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// The quantum binomial coefficient [n choose k].
    Qbinom { n: u32, k: u32 },
    /// Sorted class of a word, with unsupported summands dropped.
    Decompose {
        /// Letters such as "E1 F2 E1^2", optionally followed by "@ [a1,...]".
        #[arg(long)]
        word: String,
        /// Domain weight in root coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Sort without dropping summands or asserting effectiveness.
        #[arg(long)]
        no_drop: bool,
    },
    /// Graded dimensions of Hom(source, target<d>).
    Homdim {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Domain weight for words without "@".
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, value_enum, default_value = "combined")]
        strategy: StrategyArg,
    },
    /// Quiver Hecke algebra computations.
    #[command(subcommand)]
    Klr(KlrCommand),
    /// Slide paths and move certificates.
    #[command(subcommand)]
    Paths(PathsCommand),
    /// Supports and their conditions.
    #[command(subcommand)]
    Support(SupportCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Ascending,
    Descending,
    Combined,
}

#[derive(Subcommand)]
enum KlrCommand {
    /// Normal form of an element such as "e(1,2,1); t1 x2 t1 + 2 x1".
    Normalize { element: String },
    /// Checks every relation inside ambient diagrams.
    Check {
        #[arg(long)]
        max_strands: Option<usize>,
        #[arg(long)]
        max_ambient: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Spanning-set counts per degree over an idempotent such as "e(1,2,1)".
    Dim { idempotent: String },
}

#[derive(Subcommand)]
enum PathsCommand {
    /// The canonical minimal path between two supported weights.
    Canonical {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Certifies two paths with the same ends as slide equivalent.
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Reduces a zero-sum sequence to the empty one, or a path with an extra step to a shorter path.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long)]
        seq: String,
        /// An extra [sign, vertex] step appended to the path.
        #[arg(long)]
        extra: Option<String>,
    },
    /// Whether a weight is a middle weight; lists all of them without --weight.
    Middle {
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
}

#[derive(Subcommand)]
enum SupportCommand {
    /// Writes the Grassmannian support as a support file.
    Grassmannian {
        #[arg(value_name = "m,n,N")]
        spec: String,
    },
    /// Checks the support conditions.
    Check,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError::Usage(message)
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Usage(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("Usage", m.as_str()),
            CliError::Domain { kind, message } => (kind.as_str(), message.as_str()),
        };
        json!({"error": {"kind": kind, "message": message}})
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { kind: variant_name(&e), message: e.to_string() }
            }
        }
    )*};
}

domain_errors!(
    kmact_core::cartan::CartanError,
    kmact_core::qgrade::QError,
    kmact_core::morphcalc::MorphError,
    kmact_core::klr::KlrError,
    kmact_core::paths::PathError
);

fn variant_name(e: &impl Debug) -> String {
    format!("{e:?}").chars().take_while(|c| c.is_alphanumeric()).collect()
}

struct Context {
    global: Global,
}

impl Context {
    fn support(&self) -> Result<(Support, CartanDatum), CliError> {
        let (support, generated) = match (&self.global.support, &self.global.grassmannian) {
            (Some(path), _) => (parse::support_file(path)?, None),
            (None, Some(spec)) => {
                let (s, d) = parse::grassmannian(spec)?;
                (s, Some(d))
            }
            (None, None) => return Err(CliError::usage("this command needs --support or --grassmannian".into())),
        };
        let datum = match (&self.global.cartan, generated) {
            (Some(path), _) => parse::cartan_file(path)?,
            (None, Some(d)) => d,
            (None, None) => CartanDatum::type_a(support.rank()),
        };
        if datum.vertex_count() != support.rank() {
            return Err(CliError::usage(format!(
                "support has rank {} but the Cartan datum has {} vertices",
                support.rank(),
                datum.vertex_count()
            )));
        }
        Ok((support, datum))
    }

    /// The given datum, or type A on as many vertices as the largest label.
    fn datum_for_labels(&self, labels: &[usize]) -> Result<CartanDatum, CliError> {
        match &self.global.cartan {
            Some(path) => parse::cartan_file(path),
            None => Ok(CartanDatum::type_a(labels.iter().max().map_or(1, |m| m + 1))),
        }
    }

    fn window(&self) -> Result<Option<(i64, i64)>, CliError> {
        self.global.window.as_deref().map(parse::window).transpose()
    }
}

fn run(cli: Cli) -> Result<Value, CliError> {
    let ctx = Context { global: cli.global };
    match cli.command {
        Command::Qint { n } => Ok(json!({"laurent": render::laurent(&qint(n))})),
        Command::Qbinom { n, k } => {
            if k > n {
                return Err(CliError::usage(format!("qbinom needs k <= n, found n={n}, k={k}")));
            }
            Ok(json!({"laurent": render::laurent(qbinom(n, k)?.as_laurent())}))
        }
        Command::Decompose { word, weight, no_drop } => {
            let (support, datum) = ctx.support()?;
            let w = parse::word(&word, weight.as_deref(), &support)?;
            check_vertices(&w.letters.iter().map(|l| l.vertex()).collect::<Vec<_>>(), &datum)?;
            let class = if no_drop {
                let opts = SortOptions { drop_unsupported: false, ..SortOptions::default() };
                sort_class(&GradedClass::from_word(&w), &datum, &support, opts)?
            } else {
                decompose(&w, &datum, &support)?
            };
            Ok(render::class(&class))
        }
        Command::Homdim { source, target, weight, strategy } => {
            let (support, datum) = ctx.support()?;
            let s = parse::word(&source, weight.as_deref(), &support)?;
            let t = parse::word(&target, weight.as_deref(), &support)?;
            let vertices: Vec<usize> = s.letters.iter().chain(&t.letters).map(|l| l.vertex()).collect();
            check_vertices(&vertices, &datum)?;
            let strategy = match strategy {
                StrategyArg::Ascending => Strategy::Ascending,
                StrategyArg::Descending => Strategy::Descending,
                StrategyArg::Combined => Strategy::Combined,
            };
            let mut engine = HomEngine::new(&datum, &support).with_strategy(strategy);
            if let Some(b) = ctx.global.budget {
                engine = engine.with_depth_bound(b as usize);
            }
            let window = ctx.window()?;
            let table = if s.has_divided_powers() || t.has_divided_powers() {
                engine.hom_dim_divided(&s, &t, window)?
            } else {
                engine.hom_dim(&s, &t, window)?
            };
            Ok(json!({"table": render::table(&table)}))
        }
        Command::Klr(k) => run_klr(&ctx, k),
        Command::Paths(p) => run_paths(&ctx, p),
        Command::Support(s) => run_support(&ctx, s),
    }
}

fn check_vertices(vertices: &[usize], datum: &CartanDatum) -> Result<(), CliError> {
    match vertices.iter().find(|&&v| v >= datum.vertex_count()) {
        Some(&v) => Err(kmact_core::morphcalc::MorphError::VertexOutOfRange(v).into()),
        None => Ok(()),
    }
}

fn run_klr(ctx: &Context, cmd: KlrCommand) -> Result<Value, CliError> {
    match cmd {
        KlrCommand::Normalize { element } => {
            let e = parse::klr_element(&element)?;
            let datum = ctx.datum_for_labels(e.bottom())?;
            e.validate(&datum)?;
            let mut normalizer = Normalizer::new(&datum);
            if let Some(b) = ctx.global.budget {
                normalizer = normalizer.with_budget(b);
            }
            let nf = normalizer.normalize(&e)?;
            let mut out = render::element(&nf);
            out["degree"] = json!(nf.degree(&datum));
            Ok(out)
        }
        KlrCommand::Check { max_strands, max_ambient, samples, seed } => {
            let path = ctx.global.cartan.as_ref().ok_or_else(|| CliError::usage("klr check needs --cartan".into()))?;
            let datum = parse::cartan_file(path)?;
            let defaults = RelationCheckConfig::default();
            let config = RelationCheckConfig {
                max_strands: max_strands.unwrap_or(defaults.max_strands),
                max_ambient: max_ambient.unwrap_or(defaults.max_ambient),
                samples: samples.unwrap_or(defaults.samples),
                seed: seed.unwrap_or(defaults.seed),
                ..defaults
            };
            let report = kmact_core::klr::relation_check(&datum, &config)?;
            Ok(render::relation_report(&report))
        }
        KlrCommand::Dim { idempotent } => {
            let e = parse::klr_element(&idempotent)?;
            let bottom = e.bottom().to_vec();
            let datum = ctx.datum_for_labels(&bottom)?;
            e.validate(&datum)?;
            let m = bottom.len() as i64;
            let (lo, hi) = ctx.window()?.unwrap_or((-m * (m - 1), m * (m - 1) + 2 * m));
            let counts: Vec<Value> = graded_dim_count(&bottom, &datum, lo, hi)
                .into_iter()
                .map(|(d, n)| json!({"degree": d, "value": n}))
                .collect();
            Ok(json!({"idempotent": render::idempotent(&bottom), "counts": counts}))
        }
    }
}

const PATH_BUDGET: u64 = 1_000_000;

fn run_paths(ctx: &Context, cmd: PathsCommand) -> Result<Value, CliError> {
    let (support, datum) = ctx.support()?;
    let budget = ctx.global.budget.unwrap_or(PATH_BUDGET) as usize;
    match cmd {
        PathsCommand::Canonical { from, to } => {
            let mu = parse::weight(&from, &support)?;
            let lambda = parse::weight(&to, &support)?;
            let path = canonical_path(&mu, &lambda, &datum, &support)?;
            Ok(json!({"from": mu.coords(), "to": lambda.coords(), "path": render::steps(&path.steps)}))
        }
        PathsCommand::Equiv { base, first, second } => {
            let p = parse::sequence(&base, &first, &support)?;
            let q = parse::sequence(&base, &second, &support)?;
            for s in [&p, &q] {
                if !s.is_valid_path(&datum, &support) {
                    return Err(PathError::Precondition("both sequences must be valid paths").into());
                }
            }
            Ok(match slide_equivalent(&p, &q, &datum, &support, budget)? {
                Equivalence::Certified { forward, cert } => json!({
                    "status": "certified",
                    "direction": if forward { "first_to_second" } else { "second_to_first" },
                    "moves": render::moves(&cert),
                }),
                Equivalence::Undecided => json!({"status": "undecided"}),
            })
        }
        PathsCommand::Reduce { base, seq, extra } => {
            let s = parse::sequence(&base, &seq, &support)?;
            match extra {
                None => {
                    let cert = reduce_to_empty(&s, &datum, &support)?;
                    Ok(json!({"moves": render::moves(&cert)}))
                }
                Some(extra) => {
                    let (short, cert) = reduce_appended(&s, parse::step(&extra)?, &datum, &support, budget)?;
                    Ok(json!({"path": render::steps(&short.steps), "moves": render::moves(&cert)}))
                }
            }
        }
        PathsCommand::Middle { weight } => match weight {
            Some(w) => {
                let w = parse::weight(&w, &support)?;
                Ok(json!({"weight": w.coords(), "middle": is_middle_weight(&w, &datum, &support)}))
            }
            None => {
                let middle: Vec<Value> = support
                    .weights()
                    .filter(|w| is_middle_weight(w, &datum, &support))
                    .map(|w| json!(w.coords()))
                    .collect();
                Ok(json!({"middle_weights": middle}))
            }
        },
    }
}

fn run_support(ctx: &Context, cmd: SupportCommand) -> Result<Value, CliError> {
    match cmd {
        SupportCommand::Grassmannian { spec } => {
            let (support, _) = parse::grassmannian(&spec)?;
            let weights: Vec<Value> = support.weights().map(|w| json!(w.coords())).collect();
            Ok(json!({"base_pairings": support.base_pairings(), "weights": weights}))
        }
        SupportCommand::Check => {
            let (support, datum) = ctx.support()?;
            Ok(render::conditions(&check_conditions(&support, &datum)?))
        }
    }
}

fn print(value: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    println!("{}", text.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let pretty = cli.global.pretty;
    match run(cli) {
        Ok(v) => {
            print(&v, pretty);
            ExitCode::SUCCESS
        }
        Err(e) => {
            print(&e.to_json(), pretty);
            ExitCode::from(e.exit_code())
        }
    }
}
