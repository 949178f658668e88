//! Desk-scale retrieval: dictionary word segmentation, an inverted index that
//! normalizes at ingest, boolean-OR matching and TF-IDF ranking.

mod index;
mod segment;

pub use index::{
    build_index, parse_corpus_jsonl, read_corpus_jsonl, Document, InvertedIndex, Posting, SearchResult,
    INDEX_FORMAT_VERSION,
};
pub use segment::{segment_words, Segmenter};
