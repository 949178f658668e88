//! Khmer-aware search toolkit: cluster normalization, grapheme and phonemic
//! spelling correction, rule-backed G2P, subword embeddings, a small inverted
//! index and query expansion over all of them.

pub mod data;
pub mod distance;
pub mod embedding;
pub mod error;
pub mod g2p;
pub mod ir;
pub mod lexicon;
pub mod phoneme_speller;
pub mod pipeline;
pub mod script;
pub mod speller;
pub mod symspell;

pub use error::{Error, Result};
