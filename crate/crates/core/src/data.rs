//! The sample lexicon, pronunciation dictionary, 200-document demo corpus and
//! query list, compiled into the library.

use std::path::Path;

use crate::embedding::{train, EmbeddingConfig, EmbeddingModel};
use crate::error::Result;
use crate::g2p::PronDict;
use crate::ir::{parse_corpus_jsonl, InvertedIndex, Segmenter};
use crate::lexicon::Lexicon;
use crate::pipeline::Resources;

pub const LEXICON_TSV: &str = include_str!("../data/lexicon.tsv");
pub const PRONDICT_TSV: &str = include_str!("../data/prondict.tsv");
pub const DEMO_CORPUS_JSONL: &str = include_str!("../data/demo_corpus.jsonl");
pub const QUERIES_TXT: &str = include_str!("../data/queries.txt");

pub fn lexicon() -> Lexicon {
    let (lex, issues) = Lexicon::parse_tsv(LEXICON_TSV);
    debug_assert!(issues.is_empty(), "{issues:?}");
    lex
}

pub fn prondict() -> PronDict {
    let (pd, issues) = PronDict::parse_tsv(PRONDICT_TSV);
    debug_assert!(issues.is_empty(), "{issues:?}");
    pd
}

/// `(id, text)` pairs of the demo corpus.
pub fn demo_corpus() -> Vec<(String, String)> {
    parse_corpus_jsonl(DEMO_CORPUS_JSONL.as_bytes(), Path::new("demo_corpus.jsonl"))
        .expect("bundled corpus parses")
}

pub fn queries() -> Vec<String> {
    QUERIES_TXT
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Lexicon and pronunciation dictionary, no embedding model.
pub fn resources() -> Resources {
    Resources::new(lexicon(), prondict(), None)
}

pub fn demo_index(segmenter: &Segmenter, normalize: bool) -> Result<InvertedIndex> {
    let docs = demo_corpus();
    crate::ir::build_index(docs.iter().map(|(i, t)| (i.as_str(), t.as_str())), segmenter, normalize)
}

/// Splits documents at sentence marks and segments each sentence, giving
/// embedding training input.
pub fn sentences<'a, I>(texts: I, segmenter: &Segmenter) -> Vec<Vec<String>>
where
    I: IntoIterator<Item = &'a str>,
{
    texts
        .into_iter()
        .flat_map(|t| t.split(['។', '\n']).map(|s| segmenter.segment(s)).collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Small settings suited to the demo corpus; trains in well under a second.
pub fn demo_embedding_config() -> EmbeddingConfig {
    EmbeddingConfig {
        dim: 48,
        max_n: 3,
        bucket_count: 1 << 16,
        epochs: 10,
        min_word_count: 2,
        ..Default::default()
    }
}

pub fn train_demo_embedding(segmenter: &Segmenter, config: &EmbeddingConfig) -> Result<EmbeddingModel> {
    let docs = demo_corpus();
    train(&sentences(docs.iter().map(|(_, t)| t.as_str()), segmenter), config)
}
