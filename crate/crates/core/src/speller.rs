//! Grapheme spellchecker: a symmetric-delete index over normalized words,
//! with edit distance counted in Unicode scalars.

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::lexicon::{Lexicon, LexiconEntry};
use crate::script::normalize_text;
use crate::symspell::SymmetricDeleteIndex;

pub const DEFAULT_MAX_DISTANCE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suggestion {
    pub word: String,
    pub distance: usize,
    pub frequency: u64,
}

/// Sorts by distance, then frequency descending, then word.
pub fn rank_suggestions(s: &mut [Suggestion]) {
    s.sort_by(|a, b| {
        (a.distance, Reverse(a.frequency), &a.word).cmp(&(b.distance, Reverse(b.frequency), &b.word))
    });
}

#[derive(Debug, Clone)]
pub struct DeleteIndex {
    index: SymmetricDeleteIndex<char>,
    words: Vec<String>,
    lexicon: Lexicon,
}

/// Builds the index. Duplicate words have their frequencies summed.
pub fn build_index(lexicon: &[LexiconEntry], max_distance: usize) -> DeleteIndex {
    DeleteIndex::new(Lexicon::from_entries(lexicon.iter().cloned()), max_distance)
}

impl DeleteIndex {
    pub fn new(lexicon: Lexicon, max_distance: usize) -> Self {
        let max_distance = max_distance.max(1);
        let words: Vec<String> = lexicon.iter().map(|(w, _)| w.to_owned()).collect();
        let index = SymmetricDeleteIndex::build(words.iter().map(|w| w.chars().collect()), max_distance);
        DeleteIndex {
            index,
            words,
            lexicon,
        }
    }

    pub fn max_distance(&self) -> usize {
        self.index.max_distance()
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Number of distinct delete variants stored.
    pub fn variant_count(&self) -> usize {
        self.index.variant_count()
    }

    pub fn variant_keys(&self) -> impl Iterator<Item = String> + '_ {
        self.index.variants().map(|v| v.iter().collect())
    }

    /// Dictionary words stored under one delete variant.
    pub fn words_under(&self, variant: &str) -> Vec<&str> {
        let v: Vec<char> = variant.chars().collect();
        self.index
            .ids_for(&v)
            .iter()
            .map(|&id| self.words[id as usize].as_str())
            .collect()
    }

    /// Every dictionary word within `max_distance` of the normalized query,
    /// ranked and truncated to `top_k`.
    pub fn lookup(&self, query: &str, max_distance: usize, top_k: usize) -> Vec<Suggestion> {
        let q: Vec<char> = normalize_text(query.trim()).chars().collect();
        if max_distance > self.max_distance() {
            log::debug!(
                "lookup distance {max_distance} clamped to index distance {}",
                self.max_distance()
            );
        }
        let mut out: Vec<Suggestion> = self
            .index
            .candidates(&q, max_distance)
            .into_iter()
            .map(|(id, distance)| {
                let word = self.words[id as usize].clone();
                let frequency = self.lexicon.frequency(&word).unwrap_or(0);
                Suggestion {
                    word,
                    distance,
                    frequency,
                }
            })
            .collect();
        rank_suggestions(&mut out);
        out.truncate(top_k);
        out
    }
}
