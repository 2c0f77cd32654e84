//! `esakia`: dualize, classify, check and search from the command line.
//!
//! Exit codes: 0 success, 1 a law failed or an oracle disagreed, 2 bad input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use esakia::chainfrm::{
    validate_morphism, validate_shape, ChainMorphism, ChainShape, ChainSpace, DepthWindow, MorphTerm,
};
use esakia::checker::{search, sweep, Corpus, CorpusConfig};
use esakia::dlattice::{FinDLat, LatticeFile};
use esakia::hierarchy::{classify_chain, classify_lattice, Classification};
use esakia::poset::{FinPoset, PosetFile};
use esakia::priestley::{dual_space, properness_profile, FiniteSpace, PriestleySpace};
use esakia::spaces::{alexandroff_frame, classify_topspace, pt_space, FinTopSpace, SpaceFile};
use esakia::{Error, Mask};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "esakia", version, about = "Priestley duality for finite frames and complete chains")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice to its dual Priestley space, or a Priestley space to its lattice of clopen upsets.
    Dual(InputArgs),
    /// Completely prime filters of a lattice, as a space.
    Pt(InputArgs),
    /// Frame, Priestley and space classification of a lattice, a space or a chain shape.
    Classify(ClassifyArgs),
    /// Sweep the law registry over the corpus.
    Laws(LawsArgs),
    /// Look for a witness to a claim.
    Search(SearchArgs),
    /// Complete chains given by a shape such as "W,F1".
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Hasse diagram of a poset, lattice or Priestley space in DOT.
    ExportDot(ExportArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long = "in", conflicts_with_all = ["lattice", "space", "shape"])]
    input: Option<PathBuf>,
    #[arg(long)]
    lattice: Option<PathBuf>,
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    #[arg(long, default_value_t = 50_000)]
    hom_budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Leave the chain corpus out.
    #[arg(long)]
    no_chains: bool,
}

impl CorpusArgs {
    fn config(&self) -> CorpusConfig {
        CorpusConfig { max_size: self.max_size, hom_budget: self.hom_budget, seed: self.seed, chains: !self.no_chains }
    }
}

#[derive(Args)]
struct LawsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Only these law ids.
    #[arg(long = "law")]
    laws: Vec<String>,
    /// Report zero durations so that reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    claim: String,
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Subcommand)]
enum ChainCommand {
    /// Frame properties of the chain with the dual and localic readings.
    Classify(ShapeArgs),
    /// Sampled points of the dual space with their localic flags.
    Dual(ShapeArgs),
    /// Validate the closed forms against finite truncations.
    Truncate(TruncateArgs),
    /// Build a morphism from a JSON constructor term and validate it.
    Morphism(MorphismArgs),
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    shape: String,
}

#[derive(Args)]
struct TruncateArgs {
    #[arg(long)]
    shape: String,
    #[arg(long, default_value = "5..8")]
    depth_window: DepthWindow,
}

#[derive(Args)]
struct MorphismArgs {
    /// A file holding the constructor term.
    #[arg(long = "in", conflicts_with = "term")]
    input: Option<PathBuf>,
    /// The term inline.
    #[arg(long)]
    term: Option<String>,
    #[arg(long, default_value = "5..8")]
    depth_window: DepthWindow,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// For a lattice, draw its dual space instead.
    #[arg(long)]
    dual: bool,
}

/// Bad input of any sort; exit code 2.
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Run<T> = Result<T, Failure>;

/// What came out: a document and whether a law or oracle failed on it.
struct Output {
    body: String,
    failed: bool,
}

impl Output {
    fn ok(body: String) -> Output {
        Output { body, failed: false }
    }
}

/// The file kinds accepted by `--in`, told apart by their `kind` field.
enum Document {
    Lattice(FinDLat),
    Priestley(FinPoset),
    Space(FinPoset),
    Poset(FinPoset),
}

fn read_json(path: &Path) -> Run<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value) -> Run<T> {
    serde_json::from_value(v).map_err(|e| Failure::Input(e.to_string()))
}

fn read_document(path: &Path) -> Run<Document> {
    let v = read_json(path)?;
    let kind = v.get("kind").and_then(Value::as_str).map(str::to_owned);
    match kind.as_deref() {
        Some("tables") | Some("birkhoff") => Ok(Document::Lattice(parse::<LatticeFile>(v)?.build()?)),
        Some("priestley") => {
            let mut v = v;
            v.as_object_mut().map(|o| o.remove("kind"));
            Ok(Document::Priestley(parse::<PosetFile>(v)?.build()?))
        }
        Some("alexandroff") => Ok(Document::Space(parse::<SpaceFile>(v)?.build()?)),
        None => Ok(Document::Poset(parse::<PosetFile>(v)?.build()?)),
        Some(k) => Err(Failure::Input(format!("{}: unknown kind {k:?}", path.display()))),
    }
}

fn priestley_file(order: &FinPoset) -> Value {
    let f = order.to_file();
    json!({ "kind": "priestley", "n": f.n, "covers": f.covers })
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn space_points(x: &FiniteSpace) -> Vec<Value> {
    (0..x.len())
        .map(|p| json!({ "point": p, "localic": x.is_localic(p), "filter": x.point_contents(p).map(Mask::to_vec) }))
        .collect()
}

fn dual(args: &InputArgs, format: Format) -> Run<Output> {
    match read_document(&args.input)? {
        Document::Lattice(lat) => {
            let x = dual_space(&lat);
            Ok(Output::ok(match format {
                Format::Dot => x.to_dot(Some(x.localic_points())),
                Format::Text => format!("{}\n", x.describe()),
                Format::Json => {
                    let mut v = priestley_file(x.order());
                    v["points"] = Value::Array(space_points(&x));
                    to_json(&v)
                }
            }))
        }
        Document::Priestley(order) => {
            let x = FiniteSpace::from_poset(&order)?;
            Ok(Output::ok(match format {
                Format::Dot => x.lattice().to_dot(),
                Format::Text => format!("lattice of clopen upsets with {} elements\n", x.lattice().len()),
                Format::Json => to_json(&x.lattice().to_file()),
            }))
        }
        _ => Err(Failure::Input("dual takes a lattice or a Priestley space".into())),
    }
}

fn pt(args: &InputArgs, format: Format) -> Run<Output> {
    let Document::Lattice(lat) = read_document(&args.input)? else {
        return Err(Failure::Input("pt takes a lattice".into()));
    };
    let pts = pt_space(&lat);
    let space = pts.as_space()?;
    Ok(Output::ok(match format {
        Format::Dot => space.order().to_dot(&|x| format!("{:?}", pts.points[x].to_vec())),
        Format::Text => format!("{} completely prime filters\n", pts.points.len()),
        Format::Json => to_json(&json!({
            "points": pts.points.iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
            "zeta": pts.zeta.iter().map(|z| z.to_vec()).collect::<Vec<_>>(),
            "space": SpaceFile::from_poset(space.order()),
        })),
    }))
}

fn render_classification(c: &Classification, extra: Option<(&str, Value)>, format: Format) -> Run<Output> {
    match format {
        Format::Dot => Err(Failure::Input("classify has no DOT form".into())),
        Format::Text => Ok(Output::ok(c.text())),
        Format::Json => {
            let mut v = serde_json::to_value(c).expect("serializable");
            if let Some((k, x)) = extra {
                v[k] = x;
            }
            Ok(Output::ok(to_json(&v)))
        }
    }
}

fn classify(args: &ClassifyArgs, format: Format) -> Run<Output> {
    if let Some(shape) = &args.shape {
        let shape: ChainShape = shape.parse()?;
        return render_classification(&classify_chain(&shape)?, None, format);
    }
    let path = [&args.input, &args.lattice, &args.space]
        .into_iter()
        .flatten()
        .next()
        .ok_or_else(|| Failure::Input("give --in, --lattice, --space or --shape".into()))?;
    match read_document(path)? {
        Document::Lattice(lat) => render_classification(&classify_lattice(&lat), None, format),
        Document::Priestley(order) => {
            let x = FiniteSpace::from_poset(&order)?;
            render_classification(&classify_lattice(x.lattice()), None, format)
        }
        // a T0 space: its frame of opens, and the space itself
        Document::Space(order) | Document::Poset(order) => {
            let z = FinTopSpace::new(order);
            let (frame, _) = alexandroff_frame(&z)?;
            let top = classify_topspace(&z)?;
            render_classification(
                &classify_lattice(&frame),
                Some(("space", serde_json::to_value(top).expect("serializable"))),
                format,
            )
        }
    }
}

fn laws(args: &LawsArgs, format: Format) -> Run<Output> {
    let corpus = Corpus::build(args.corpus.config())?;
    let report = sweep(&corpus, &args.laws, !args.no_timing)?;
    let body = match format {
        Format::Text => report.table(),
        Format::Json => to_json(&report),
        Format::Dot => return Err(Failure::Input("laws has no DOT form".into())),
    };
    Ok(Output { body, failed: !report.passed() })
}

fn search_claim(args: &SearchArgs, format: Format) -> Run<Output> {
    let outcome = search(&args.claim, args.corpus.config())?;
    let body = match format {
        Format::Json => to_json(&outcome),
        Format::Text => {
            let mut s = String::new();
            for c in &outcome.certificates {
                s.push_str(&format!(
                    "exhausted {}: {} instances (max size {}, hom budget {}, seed {})\n",
                    c.scope, c.instances, c.max_size, c.hom_budget, c.seed
                ));
            }
            match &outcome.witness {
                Some(w) => s.push_str(&format!("witness: {} ({})\n", w.instance, w.detail)),
                None => s.push_str("no witness\n"),
            }
            s
        }
        Format::Dot => return Err(Failure::Input("search has no DOT form".into())),
    };
    Ok(Output::ok(body))
}

fn chain(cmd: &ChainCommand, format: Format) -> Run<Output> {
    if format == Format::Dot {
        return Err(Failure::Input("chain commands have no DOT form".into()));
    }
    match cmd {
        ChainCommand::Classify(a) => {
            let shape: ChainShape = a.shape.parse()?;
            render_classification(&classify_chain(&shape)?, Some(("shape", json!(shape.to_string()))), format)
        }
        ChainCommand::Dual(a) => {
            let s = ChainSpace::new(a.shape.parse()?)?;
            let pts: Vec<Value> = s
                .witness_points()
                .into_iter()
                .map(|p| json!({ "point": p.to_string(), "localic": s.is_localic(p) }))
                .collect();
            let v = json!({
                "shape": s.shape().to_string(),
                "points": pts,
                "nonlocalicPoints": s.nonlocalic_count(),
                "localicDense": s.props().is_SL,
            });
            Ok(Output::ok(match format {
                Format::Text => format!(
                    "{}: {} non-localic points, localic part dense: {}\n",
                    s.shape(),
                    s.nonlocalic_count(),
                    s.props().is_SL
                ),
                _ => to_json(&v),
            }))
        }
        ChainCommand::Truncate(a) => {
            let report = validate_shape(&a.shape.parse()?, a.depth_window)?;
            let failed = !report.passed();
            Ok(Output { body: oracle_body(&report, format), failed })
        }
        ChainCommand::Morphism(a) => {
            let term: MorphTerm = match (&a.input, &a.term) {
                (Some(p), _) => parse(read_json(p)?)?,
                (None, Some(t)) => serde_json::from_str(t).map_err(|e| Failure::Input(e.to_string()))?,
                (None, None) => return Err(Failure::Input("give --in or --term".into())),
            };
            let h = ChainMorphism::build(&term)?;
            let report = validate_morphism(&h, a.depth_window)?;
            let failed = !report.passed();
            if format == Format::Text {
                return Ok(Output { body: oracle_body(&report, format), failed });
            }
            let profile = esakia::chainfrm::ChainDualMap::new(h.clone()).and_then(|f| properness_profile(&f));
            let v = json!({
                "term": term,
                "source": h.source().to_string(),
                "target": h.target().to_string(),
                "proper": esakia::chainfrm::chain_is_proper(&h),
                "properWitness": h.properness_witness().map(|(a, b)| [a.to_string(), b.to_string()]),
                "profile": profile.ok(),
                "oracle": report,
            });
            Ok(Output { body: to_json(&v), failed })
        }
    }
}

fn oracle_body(report: &esakia::chainfrm::OracleReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = format!("{} over depths {}..{}\n", report.subject, report.window.start, report.window.end);
            for c in &report.checks {
                let status = if c.passed() { "stable" } else { "FAIL" };
                s.push_str(&format!("{:<22} {:>6} cases  {status}\n", c.name, c.cases));
            }
            s
        }
        _ => to_json(report),
    }
}

fn export_dot(args: &ExportArgs) -> Run<Output> {
    let dot = match read_document(&args.input)? {
        Document::Lattice(lat) if args.dual => {
            let x = dual_space(&lat);
            x.to_dot(Some(x.localic_points()))
        }
        Document::Lattice(lat) => lat.to_dot(),
        Document::Priestley(order) => {
            let x = FiniteSpace::from_poset(&order)?;
            x.to_dot(Some(x.localic_points()))
        }
        Document::Space(order) | Document::Poset(order) => order.to_dot(&|x| x.to_string()),
    };
    Ok(Output::ok(dot))
}

fn run(cli: &Cli) -> Run<Output> {
    match &cli.command {
        Command::Dual(a) => dual(a, cli.format),
        Command::Pt(a) => pt(a, cli.format),
        Command::Classify(a) => classify(a, cli.format),
        Command::Laws(a) => laws(a, cli.format),
        Command::Search(a) => search_claim(a, cli.format),
        Command::Chain(c) => chain(c, cli.format),
        Command::ExportDot(a) => export_dot(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &out.body).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{}", out.body);
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
