use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use topic_sentiment::pipeline::{run_pipeline, write_outputs, ReportFormat, RunConfig};
use topic_sentiment::{synthetic, InputFormat, PipelineError};

#[derive(Debug, Parser)]
#[command(
    name = "topic-sentiment",
    version,
    about = "Per-topic fuzzy sentiment for short posts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline and write the report.
    Run(Box<RunArgs>),
    /// Write a seeded synthetic corpus as JSON lines.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportArg {
    Json,
    Csv,
}

#[derive(Debug, Default, Args)]
struct RunArgs {
    /// TOML file with run settings; flags override its values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Number of topics K.
    #[arg(long, value_name = "K")]
    topics: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    min_chars: Option<usize>,
    /// TFN spread multiplier s.
    #[arg(long)]
    scale: Option<f64>,
    /// Opinion ramp p.
    #[arg(long)]
    ramp: Option<f64>,
    /// Softmax temperature for topic distributions.
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    lexicon: Option<PathBuf>,
    /// Precomputed document vectors (JSON lines of {"id", "vector"}).
    #[arg(long, value_name = "PATH")]
    vectors: Option<PathBuf>,
    /// Topic distribution CSV (post_id, then one column per topic).
    #[arg(long, value_name = "PATH")]
    dist_matrix: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    report: Option<ReportArg>,
    /// Also write tfn.svg.
    #[arg(long)]
    svg: bool,
    /// Topics to plot, comma separated; defaults to the five most prevalent.
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    svg_topics: Option<Vec<usize>>,
    #[arg(long, value_name = "N")]
    n_terms: Option<usize>,
    #[arg(long, value_name = "N")]
    neg_window: Option<usize>,
    #[arg(long, value_name = "N")]
    max_iters: Option<usize>,
    #[arg(long, value_name = "N")]
    restarts: Option<usize>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Output JSONL path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Number of generated groups; the three planted groups when omitted.
    #[arg(long)]
    groups: Option<usize>,
    #[arg(long, default_value_t = 20)]
    docs_per_group: usize,
    /// Truncate the corpus to this many posts.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn load_config(path: &Path) -> Result<RunConfig, PipelineError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PipelineError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))
}

fn resolve(args: RunArgs) -> Result<RunConfig, PipelineError> {
    let mut c = match &args.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = args.input {
        c.input = v;
    }
    if let Some(v) = args.format {
        c.format = match v {
            FormatArg::Jsonl => InputFormat::Jsonl,
            FormatArg::Csv => InputFormat::Csv,
        };
    }
    if let Some(v) = args.report {
        c.report = match v {
            ReportArg::Json => ReportFormat::Json,
            ReportArg::Csv => ReportFormat::Csv,
        };
    }
    c.topics = args.topics.or(c.topics);
    c.seed = args.seed.unwrap_or(c.seed);
    c.min_chars = args.min_chars.unwrap_or(c.min_chars);
    c.scale = args.scale.unwrap_or(c.scale);
    c.ramp = args.ramp.unwrap_or(c.ramp);
    c.temperature = args.temperature.unwrap_or(c.temperature);
    c.stopwords = args.stopwords.or(c.stopwords);
    c.lexicon = args.lexicon.or(c.lexicon);
    c.vectors = args.vectors.or(c.vectors);
    c.dist_matrix = args.dist_matrix.or(c.dist_matrix);
    c.out = args.out.unwrap_or(c.out);
    c.svg |= args.svg;
    c.svg_topics = args.svg_topics.or(c.svg_topics);
    c.n_terms = args.n_terms.unwrap_or(c.n_terms);
    c.neg_window = args.neg_window.unwrap_or(c.neg_window);
    c.max_iters = args.max_iters.unwrap_or(c.max_iters);
    c.restarts = args.restarts.unwrap_or(c.restarts);

    if c.input.as_os_str().is_empty() {
        return Err(PipelineError::Config("no input given (use --input)".into()));
    }
    Ok(c)
}

fn run(args: RunArgs) -> Result<(), PipelineError> {
    let config = resolve(args)?;
    let output = run_pipeline(&config)?;
    let written = write_outputs(&output)?;

    let m = &output.metadata;
    println!(
        "{} posts: {} too short, {} empty, {} excluded, {} topics",
        m.documents_in, m.filtered_short, m.empty_after_cleaning, m.excluded, m.topics
    );
    for r in &output.reports {
        let terms: Vec<&str> = r.top_terms.iter().take(3).map(|t| t.term.as_str()).collect();
        println!(
            "topic {:>3}  prevalence {:>9.3}  TFN ({:.3}, {:.3}, {:.3})  pos {:.3}  neg {:.3}  [{}]",
            r.topic,
            r.prevalence,
            r.tfn.a,
            r.tfn.m,
            r.tfn.b,
            r.positivity,
            r.negativity,
            terms.join(", ")
        );
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn synth(args: SynthArgs) -> Result<(), String> {
    let groups = match args.groups {
        Some(n) => synthetic::generated_groups(n, 15),
        None => synthetic::planted_groups(),
    };
    let mut posts = synthetic::corpus(&groups, args.docs_per_group, args.seed);
    if let Some(limit) = args.limit {
        posts.truncate(limit);
    }
    let io_err = |e: std::io::Error| format!("cannot write {}: {e}", args.out.display());
    let mut f = BufWriter::new(File::create(&args.out).map_err(io_err)?);
    for post in &posts {
        let line = serde_json::to_string(post).map_err(|e| e.to_string())?;
        writeln!(f, "{line}").map_err(io_err)?;
    }
    f.flush().map_err(io_err)?;
    println!("wrote {} posts to {}", posts.len(), args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(*args).map_err(|e| e.to_string()),
        Command::Synth(args) => synth(args).map_err(|e| format!("synth: {e}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
