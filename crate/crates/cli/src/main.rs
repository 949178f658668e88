//! `khmer-search`: command-line front end over the khmer-search library.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 usage error, 2 data or file error.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use khmer_search::data;
use khmer_search::embedding::{self, EmbeddingConfig, EmbeddingModel};
use khmer_search::g2p::{homophones, transcribe, PronDict};
use khmer_search::ir::{build_index, read_corpus_jsonl, InvertedIndex};
use khmer_search::lexicon::Lexicon;
use khmer_search::pipeline::{
    expand, incremental_configs, raw_terms, run_experiment, ExpansionConfig, Resources, JSON_SCHEMA_VERSION,
};
use khmer_search::script::normalize_text;
use khmer_search::speller::DEFAULT_MAX_DISTANCE;

#[derive(Parser, Debug)]
#[command(name = "khmer-search", version, about = "Khmer-aware normalization, spellchecking and search")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Lexicon TSV (word<TAB>frequency); defaults to the bundled sample.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Pronunciation TSV (word<TAB>phonemes); defaults to the bundled sample.
    #[arg(long, global = true)]
    prondict: Option<PathBuf>,
    /// Word vectors in text format.
    #[arg(long, global = true)]
    vectors: Option<PathBuf>,
    /// Full embedding model written by `train-embeddings --model-out`.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Index file written by `index build`; defaults to the demo corpus.
    #[arg(long, global = true)]
    index: Option<PathBuf>,
    /// TOML file of key = value settings; flags win over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// More log output on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Grapheme,
    Phoneme,
    Both,
}

#[derive(Args, Debug, Clone, Default)]
struct ExpansionFlags {
    #[arg(long)]
    no_spellcheck: bool,
    #[arg(long)]
    no_homophones: bool,
    #[arg(long)]
    no_semantic: bool,
    #[arg(long)]
    max_corrections: Option<usize>,
    #[arg(long)]
    max_neighbors: Option<usize>,
    #[arg(long)]
    min_similarity: Option<f64>,
    /// Keep embedding neighbors that are not lexicon words.
    #[arg(long)]
    raw_neighbors: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print text with every cluster in canonical order (`-` or no argument reads stdin).
    Normalize { text: Option<String> },
    /// Ranked spelling suggestions.
    Spellcheck {
        word: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_MAX_DISTANCE)]
        max_distance: usize,
        #[arg(short = 'k', long, default_value_t = 10)]
        top: usize,
    },
    /// Phoneme string for a word.
    G2p { word: String },
    /// Other spellings with the same pronunciation.
    Homophones { word: String },
    /// Train subword embeddings on a pre-segmented corpus (one sentence per line).
    TrainEmbeddings {
        corpus: PathBuf,
        /// Text vector file.
        #[arg(long)]
        out: PathBuf,
        /// Also write the full model, which can embed unseen words.
        #[arg(long)]
        model_out: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        min_count: Option<u64>,
        #[arg(long)]
        buckets: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Nearest vocabulary words by cosine similarity.
    Neighbors {
        word: String,
        #[arg(short = 'k', default_value_t = 10)]
        k: usize,
    },
    /// Index operations.
    Index {
        #[command(subcommand)]
        command: IndexCommand,
    },
    /// OR-search the index; `--expand` adds corrections, homophones and neighbors.
    Search {
        query: String,
        #[arg(long)]
        expand: bool,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[command(flatten)]
        expansion: ExpansionFlags,
    },
    /// Hit counts per query as expansion stages are enabled in turn.
    Experiment {
        /// One query per line; `-` reads stdin.
        queries: PathBuf,
        #[command(flatten)]
        expansion: ExpansionFlags,
    },
}

#[derive(Subcommand, Debug)]
enum IndexCommand {
    /// Build an index from a JSON-lines corpus of {"id", "text"} objects.
    Build {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Index text as typed, without character-order normalization.
        #[arg(long)]
        no_normalize: bool,
    },
}

/// Settings read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lexicon: Option<PathBuf>,
    prondict: Option<PathBuf>,
    vectors: Option<PathBuf>,
    model: Option<PathBuf>,
    index: Option<PathBuf>,
    format: Option<Format>,
    enable_spellcheck: Option<bool>,
    enable_homophones: Option<bool>,
    enable_semantic: Option<bool>,
    max_corrections: Option<usize>,
    max_neighbors: Option<usize>,
    min_similarity: Option<f64>,
    post_spellcheck_neighbors: Option<bool>,
}

/// Resolved settings: file values overridden by flags.
#[derive(Debug)]
struct Settings {
    lexicon: Option<PathBuf>,
    prondict: Option<PathBuf>,
    vectors: Option<PathBuf>,
    model: Option<PathBuf>,
    index: Option<PathBuf>,
    format: Format,
    expansion: ExpansionConfig,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<khmer_search::Error> for Failure {
    fn from(e: khmer_search::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn settings(g: &Global) -> Result<Settings, Failure> {
    let file = match &g.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?;
            toml::from_str::<FileConfig>(&text).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let d = ExpansionConfig::default();
    let s = Settings {
        lexicon: g.lexicon.clone().or(file.lexicon),
        prondict: g.prondict.clone().or(file.prondict),
        vectors: g.vectors.clone().or(file.vectors),
        model: g.model.clone().or(file.model),
        index: g.index.clone().or(file.index),
        format: g.format.or(file.format).unwrap_or(Format::Text),
        expansion: ExpansionConfig {
            enable_spellcheck: file.enable_spellcheck.unwrap_or(d.enable_spellcheck),
            enable_homophones: file.enable_homophones.unwrap_or(d.enable_homophones),
            enable_semantic: file.enable_semantic.unwrap_or(d.enable_semantic),
            max_corrections: file.max_corrections.unwrap_or(d.max_corrections),
            max_neighbors: file.max_neighbors.unwrap_or(d.max_neighbors),
            min_similarity: file.min_similarity.unwrap_or(d.min_similarity),
            post_spellcheck_neighbors: file.post_spellcheck_neighbors.unwrap_or(d.post_spellcheck_neighbors),
        },
    };
    for p in [&s.lexicon, &s.prondict, &s.vectors, &s.model, &s.index].into_iter().flatten() {
        if !p.exists() {
            return Err(Failure::Data(format!("{}: no such file", p.display())));
        }
    }
    Ok(s)
}

fn apply_flags(mut cfg: ExpansionConfig, f: &ExpansionFlags) -> Result<ExpansionConfig, Failure> {
    cfg.enable_spellcheck &= !f.no_spellcheck;
    cfg.enable_homophones &= !f.no_homophones;
    cfg.enable_semantic &= !f.no_semantic;
    cfg.post_spellcheck_neighbors &= !f.raw_neighbors;
    if let Some(v) = f.max_corrections {
        cfg.max_corrections = v;
    }
    if let Some(v) = f.max_neighbors {
        cfg.max_neighbors = v;
    }
    if let Some(v) = f.min_similarity {
        cfg.min_similarity = v;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn load_lexicon(s: &Settings) -> Result<Lexicon, Failure> {
    Ok(match &s.lexicon {
        Some(p) => Lexicon::load(p)?.0,
        None => data::lexicon(),
    })
}

fn load_prondict(s: &Settings) -> Result<PronDict, Failure> {
    Ok(match &s.prondict {
        Some(p) => PronDict::load(p)?.0,
        None => data::prondict(),
    })
}

fn resources(s: &Settings) -> Result<Resources, Failure> {
    Ok(Resources::new(load_lexicon(s)?, load_prondict(s)?, None))
}

/// The configured model, or one trained on the demo corpus when none is given.
fn embedding_model(s: &Settings, res: &Resources) -> Result<EmbeddingModel, Failure> {
    if let Some(p) = &s.model {
        return Ok(embedding::load_model(p)?);
    }
    if let Some(p) = &s.vectors {
        return Ok(embedding::load_vectors(p)?);
    }
    log::info!("no --vectors or --model given; training on the demo corpus");
    Ok(data::train_demo_embedding(&res.segmenter, &data::demo_embedding_config())?)
}

fn load_or_build_index(s: &Settings, res: &Resources) -> Result<InvertedIndex, Failure> {
    match &s.index {
        Some(p) => Ok(InvertedIndex::load(p)?),
        None => Ok(data::demo_index(&res.segmenter, true)?),
    }
}

fn read_input(arg: Option<&str>) -> Result<String, Failure> {
    match arg {
        Some(t) if t != "-" => Ok(t.to_owned()),
        _ => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Data(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_path_or_stdin(p: &Path) -> Result<String, Failure> {
    if p == Path::new("-") {
        return read_input(None);
    }
    fs::read_to_string(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))
}

fn print_json(v: serde_json::Value) {
    println!("{v}");
}

fn run(cli: Cli) -> CmdResult {
    let s = settings(&cli.global)?;
    let json = s.format == Format::Json;
    match cli.command {
        Command::Normalize { text } => {
            let input = read_input(text.as_deref())?;
            let out: Vec<String> = input.lines().map(normalize_text).collect();
            if json {
                print_json(json!({"schema_version": JSON_SCHEMA_VERSION, "normalized": out}));
            } else {
                for l in out {
                    println!("{l}");
                }
            }
        }
        Command::Spellcheck {
            word,
            mode,
            max_distance,
            top,
        } => {
            let res = resources(&s)?;
            let mut rows = Vec::new();
            if mode == Mode::Both {
                for c in res.corrections(&word).into_iter().take(top) {
                    rows.push((c.word, c.distance, c.frequency, c.provenance.as_str()));
                }
            } else {
                let list = if mode == Mode::Grapheme {
                    res.grapheme.lookup(&word, max_distance, top)
                } else {
                    res.phonemes.lookup(&word, top)
                };
                let src = if mode == Mode::Grapheme {
                    "grapheme_correction"
                } else {
                    "phoneme_correction"
                };
                rows.extend(list.into_iter().map(|x| (x.word, x.distance, x.frequency, src)));
            }
            if json {
                let items: Vec<_> = rows
                    .iter()
                    .map(|(w, d, f, src)| json!({"word": w, "distance": d, "frequency": f, "source": src}))
                    .collect();
                print_json(json!({"schema_version": JSON_SCHEMA_VERSION, "suggestions": items}));
            } else {
                for (w, d, f, src) in rows {
                    println!("{w}\t{d}\t{f}\t{src}");
                }
            }
        }
        Command::G2p { word } => {
            let pd = load_prondict(&s)?;
            let p = transcribe(&word, &pd)?;
            if json {
                print_json(json!({
                    "schema_version": JSON_SCHEMA_VERSION,
                    "word": normalize_text(&word),
                    "phonemes": p.serialize(),
                    "source": format!("{:?}", p.source).to_lowercase(),
                }));
            } else {
                println!("{p}");
            }
        }
        Command::Homophones { word } => {
            let pd = load_prondict(&s)?;
            let h: Vec<String> = homophones(&word, &pd).into_iter().collect();
            if json {
                print_json(json!({"schema_version": JSON_SCHEMA_VERSION, "homophones": h}));
            } else {
                for w in h {
                    println!("{w}");
                }
            }
        }
        Command::TrainEmbeddings {
            corpus,
            out,
            model_out,
            dim,
            epochs,
            min_count,
            buckets,
            seed,
        } => {
            let d = EmbeddingConfig::default();
            let cfg = EmbeddingConfig {
                dim: dim.unwrap_or(d.dim),
                epochs: epochs.unwrap_or(d.epochs),
                min_word_count: min_count.unwrap_or(d.min_word_count),
                bucket_count: buckets.unwrap_or(d.bucket_count),
                seed: seed.unwrap_or(d.seed),
                ..d
            };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let sentences = embedding::read_corpus(&corpus)?;
            log::info!("training on {} sentences", sentences.len());
            let model = embedding::train(&sentences, &cfg)?;
            embedding::save_vectors(&model, &out)?;
            if let Some(m) = &model_out {
                embedding::save_model(&model, m)?;
            }
            let loss = model.epoch_losses().last().copied().unwrap_or_default();
            if json {
                print_json(json!({
                    "schema_version": JSON_SCHEMA_VERSION,
                    "words": model.vocab().len(),
                    "final_loss": loss,
                }));
            } else {
                println!("words\t{}\nfinal_loss\t{loss:.4}", model.vocab().len());
            }
        }
        Command::Neighbors { word, k } => {
            let res = resources(&s)?;
            let model = embedding_model(&s, &res)?;
            let n = model.nearest_neighbors(&word, k)?;
            if json {
                let items: Vec<_> = n.iter().map(|(w, c)| json!({"word": w, "similarity": c})).collect();
                print_json(json!({"schema_version": JSON_SCHEMA_VERSION, "neighbors": items}));
            } else {
                for (w, c) in n {
                    println!("{w}\t{c:.4}");
                }
            }
        }
        Command::Index {
            command:
                IndexCommand::Build {
                    corpus,
                    out,
                    no_normalize,
                },
        } => {
            let res = resources(&s)?;
            let docs = read_corpus_jsonl(&corpus)?;
            log::info!("indexing {} documents", docs.len());
            let index = build_index(
                docs.iter().map(|(i, t)| (i.as_str(), t.as_str())),
                &res.segmenter,
                !no_normalize,
            )?;
            index.save(&out)?;
            if json {
                print_json(json!({
                    "schema_version": JSON_SCHEMA_VERSION,
                    "documents": index.doc_count(),
                    "terms": index.term_count(),
                }));
            } else {
                println!("documents\t{}\nterms\t{}", index.doc_count(), index.term_count());
            }
        }
        Command::Search {
            query,
            expand: do_expand,
            limit,
            expansion,
        } => {
            let cfg = apply_flags(s.expansion.clone(), &expansion)?;
            let mut res = resources(&s)?;
            let index = load_or_build_index(&s, &res)?;
            let terms: Vec<String> = if do_expand {
                if cfg.enable_semantic {
                    let m = embedding_model(&s, &res)?;
                    res = res.with_embedding(m);
                }
                expand(&query, &res, &cfg).strings().into_iter().map(str::to_owned).collect()
            } else {
                raw_terms(&query, &res, &index)
            };
            let r = index.search(&terms);
            if json {
                let ranked: Vec<_> = r
                    .ranked
                    .iter()
                    .take(limit)
                    .map(|(id, sc)| json!({"id": id, "score": sc}))
                    .collect();
                print_json(json!({
                    "schema_version": JSON_SCHEMA_VERSION,
                    "terms": terms,
                    "hits": r.hits,
                    "ranked": ranked,
                }));
            } else {
                println!("terms\t{}", terms.join(" OR "));
                println!("hits\t{}", r.hits);
                for (id, sc) in r.ranked.iter().take(limit) {
                    println!("{id}\t{sc:.4}");
                }
            }
        }
        Command::Experiment { queries, expansion } => {
            let cfg = apply_flags(s.expansion.clone(), &expansion)?;
            let text = read_path_or_stdin(&queries)?;
            let queries: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            let mut res = resources(&s)?;
            let index = load_or_build_index(&s, &res)?;
            let configs: Vec<(String, ExpansionConfig)> = incremental_configs()
                .into_iter()
                .map(|(name, c)| {
                    let c = ExpansionConfig {
                        enable_spellcheck: c.enable_spellcheck && cfg.enable_spellcheck,
                        enable_homophones: c.enable_homophones && cfg.enable_homophones,
                        enable_semantic: c.enable_semantic && cfg.enable_semantic,
                        ..cfg.clone()
                    };
                    (name, c)
                })
                .collect();
            if cfg.enable_semantic {
                let m = embedding_model(&s, &res)?;
                res = res.with_embedding(m);
            }
            let report = run_experiment(&index, &queries, &configs, &res);
            if json {
                print!("{}", report.to_json_lines());
            } else {
                print!("{}", report.to_text());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // long-running commands report progress by default
    let level = match (&cli.command, cli.global.verbose) {
        (_, true) => "debug",
        (Command::TrainEmbeddings { .. } | Command::Index { .. }, false) => "info",
        _ => "warn",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
