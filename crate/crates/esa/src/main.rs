use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use esa::categorize;
use esa::corpus_io::parse_corpus;
use esa::datasets::{load_doc_pairs, load_labeled, load_word_pairs};
use esa::evaluate::{eval_docs, eval_words, EvalReport};
use esa::pipeline::build_index;
use esa::store::{load_index, save_index, sha256_hex, LoadedIndex};
use esa::Config;
use esa_core::semantics::{Interpreter, Order, RelatednessOptions};

#[derive(Parser)]
#[command(name = "esa", version, about = "Explicit semantic analysis over a concept corpus")]
struct Cli {
    /// TOML configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Index directory to read (or to write, for `build`).
    #[arg(long, global = true)]
    index: Option<PathBuf>,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Reserved; no command is randomized.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a JSONL concept corpus.
    Build {
        #[arg(long)]
        corpus: PathBuf,
        /// Output directory; defaults to --index.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write per-term posting pruning counts as CSV.
        #[arg(long)]
        prune_report: Option<PathBuf>,
    },
    /// List the strongest concepts of a text.
    Interpret {
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        order: OrderArgs,
        text: Vec<String>,
    },
    /// Print the relatedness of two texts.
    Relate {
        #[command(flatten)]
        order: OrderArgs,
        a: String,
        b: String,
    },
    /// Correlate word-pair relatedness with human scores (Spearman).
    EvalWords {
        #[arg(long)]
        pairs: PathBuf,
        /// Directory for report.txt, report.csv and scores.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Correlate document-pair relatedness with human scores (Pearson).
    EvalDocs {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        docs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Write word and concept features of a labeled train/test split.
    GenFeatures {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Concepts per context; overrides the config.
        #[arg(long)]
        top_k: Option<usize>,
        /// Also report the reference classifier's BEP with and without concepts.
        #[arg(long)]
        evaluate: bool,
    },
}

#[derive(Args)]
struct OrderArgs {
    /// Use second-order (link-expanded) vectors.
    #[arg(long)]
    second_order: bool,
    #[arg(long)]
    alpha: Option<f64>,
    /// Propagate only to more general concepts.
    #[arg(long)]
    generality_only: bool,
}

impl OrderArgs {
    fn options(&self, config: &Config) -> Result<RelatednessOptions> {
        let mut options = config.relatedness_options()?;
        if self.second_order {
            options.order = Order::Second;
        }
        if let Some(alpha) = self.alpha {
            if !(alpha >= 0.0) {
                bail!("--alpha must be non-negative");
            }
            options.alpha = alpha;
        }
        options.generality_only |= self.generality_only;
        Ok(options)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        log::debug!("seed {seed} ignored: no randomized component");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build()?;
    pool.install(|| dispatch(&cli, &config))
}

fn index_dir(cli: &Cli) -> Result<&Path> {
    cli.index.as_deref().context("--index is required")
}

fn open_index(cli: &Cli) -> Result<LoadedIndex> {
    let dir = index_dir(cli)?;
    load_index(dir).with_context(|| format!("loading index {}", dir.display()))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn write_eval(report: &EvalReport, data: &esa::datasets::PairDataset, out: Option<&Path>) -> Result<()> {
    print!("{}", report.to_text());
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write(&dir.join("report.txt"), report.to_text())?;
        write(&dir.join("report.csv"), report.to_csv()?)?;
        write(&dir.join("scores.csv"), report.scores_csv(data)?)?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, config: &Config) -> Result<()> {
    match &cli.command {
        Command::Build {
            corpus,
            out,
            prune_report,
        } => {
            let out = match out {
                Some(p) => p.as_path(),
                None => index_dir(cli).context("build needs --out or --index")?,
            };
            let bytes = fs::read(corpus).with_context(|| format!("reading {}", corpus.display()))?;
            let articles = parse_corpus(BufReader::new(bytes.as_slice()))
                .with_context(|| format!("parsing {}", corpus.display()))?;
            let stop_words = config.stop_words()?;
            let built = build_index(&articles, config, &stop_words)?;
            let r = &built.report;
            if r.redirect_warnings.missing_target + r.redirect_warnings.cycles > 0 {
                log::warn!(
                    "dropped {} redirects to missing titles and {} in cycles",
                    r.redirect_warnings.missing_target,
                    r.redirect_warnings.cycles
                );
            }
            if r.unknown_templates + r.template_depth_exceeded > 0 {
                log::warn!(
                    "{} unknown template references, {} expansions hit the depth cap",
                    r.unknown_templates,
                    r.template_depth_exceeded
                );
            }
            save_index(&built.index, &stop_words, config, &sha256_hex(&bytes), out)?;
            if let Some(path) = prune_report {
                write(path, r.term_pruning_csv()?)?;
            }
            print!("{}", r.to_text());
        }
        Command::Interpret { top, order, text } => {
            let loaded = open_index(cli)?;
            let esa = Interpreter::new(&loaded.index, &loaded.stop_words);
            let v = esa.interpret_with(&text.join(" "), &order.options(config)?)?;
            if v.is_empty() {
                println!("no concepts matched");
            }
            for (rank, (c, w)) in v.top_k(*top).into_iter().enumerate() {
                println!("{}\t{}\t{}\t{:.6}", rank + 1, c, loaded.index.title(c).unwrap_or(""), w);
            }
        }
        Command::Relate { order, a, b } => {
            let loaded = open_index(cli)?;
            let esa = Interpreter::new(&loaded.index, &loaded.stop_words);
            let r = esa.relatedness(a, b, &order.options(config)?)?;
            if r.empty {
                println!("{:.6}\tempty", r.score);
            } else {
                println!("{:.6}", r.score);
            }
        }
        Command::EvalWords { pairs, out, order } => {
            let loaded = open_index(cli)?;
            let esa = Interpreter::new(&loaded.index, &loaded.stop_words);
            let data = load_word_pairs(pairs)?;
            let report = eval_words(&esa, &data, &order.options(config)?)?;
            write_eval(&report, &data, out.as_deref())?;
        }
        Command::EvalDocs { pairs, docs, out, order } => {
            let loaded = open_index(cli)?;
            let esa = Interpreter::new(&loaded.index, &loaded.stop_words);
            let data = load_doc_pairs(pairs, docs)?;
            let report = eval_docs(&esa, &data, &order.options(config)?)?;
            write_eval(&report, &data.data, out.as_deref())?;
        }
        Command::GenFeatures {
            train,
            test,
            out,
            top_k,
            evaluate,
        } => {
            let mut config = config.clone();
            if let Some(k) = top_k {
                config.features.top_k = *k;
            }
            let loaded = open_index(cli)?;
            let esa = Interpreter::new(&loaded.index, &loaded.stop_words);
            let train = load_labeled(train)?;
            let test = load_labeled(test)?;
            let run = categorize::generate(&esa, &config, &train, &test)?;
            let selected = categorize::selected_concepts(&run, &train, &config);
            let (train_vectors, test_vectors) = categorize::weight(&run, &selected, &config);
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            write(&out.join("train.jsonl"), categorize::to_jsonl(&esa, &train, &train_vectors))?;
            write(&out.join("test.jsonl"), categorize::to_jsonl(&esa, &test, &test_vectors))?;
            let mut listing = String::from("id\ttitle\n");
            for c in &selected {
                listing.push_str(&format!("{}\t{}\n", c, loaded.index.title(*c).unwrap_or("")));
            }
            write(&out.join("selected.tsv"), listing)?;
            println!("train documents    {}", train.len());
            println!("test documents     {}", test.len());
            println!("selected concepts  {}", selected.len());
            if *evaluate {
                let cmp = categorize::compare(&run, &train, &test, &config)?;
                let text = format!(
                    "words            micro {:.6} macro {:.6}\nwords+concepts   micro {:.6} macro {:.6}\n",
                    cmp.words.micro, cmp.words.macro_, cmp.with_concepts.micro, cmp.with_concepts.macro_
                );
                print!("{text}");
                write(&out.join("bep.txt"), &text)?;
                write(&out.join("bep.csv"), cmp.to_csv()?)?;
            }
        }
    }
    Ok(())
}
