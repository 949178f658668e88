//! Word-frequency lexicon and its TSV format (`word<TAB>frequency`).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::script::normalize_text;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    pub frequency: u64,
}

impl LexiconEntry {
    pub fn new(word: impl Into<String>, frequency: u64) -> Self {
        LexiconEntry {
            word: word.into(),
            frequency,
        }
    }
}

/// A skipped input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineIssue {
    pub line: usize,
    pub message: String,
}

/// Normalized words with summed corpus frequencies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    words: BTreeMap<String, u64>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = LexiconEntry>>(entries: I) -> Self {
        let mut lex = Lexicon::new();
        for e in entries {
            lex.add(&e.word, e.frequency);
        }
        lex
    }

    /// Adds a word (normalized here), summing frequency with any existing
    /// entry. Empty words are ignored.
    pub fn add(&mut self, word: &str, frequency: u64) {
        let w = normalize_text(word.trim());
        if w.is_empty() {
            return;
        }
        *self.words.entry(w).or_insert(0) += frequency;
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains_key(word) || self.words.contains_key(&normalize_text(word))
    }

    pub fn frequency(&self, word: &str) -> Option<u64> {
        self.words
            .get(word)
            .or_else(|| self.words.get(&normalize_text(word)))
            .copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in sorted order with their frequencies.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.words.iter().map(|(w, &f)| (w.as_str(), f))
    }

    pub fn entries(&self) -> Vec<LexiconEntry> {
        self.iter().map(|(w, f)| LexiconEntry::new(w, f)).collect()
    }

    /// Parses TSV text. `#` lines and blank lines are ignored; malformed lines
    /// are skipped and reported by 1-based line number.
    pub fn parse_tsv(text: &str) -> (Lexicon, Vec<LineIssue>) {
        let mut lex = Lexicon::new();
        let mut issues = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (word, freq) = match (cols.next(), cols.next(), cols.next()) {
                (Some(w), Some(f), None) => (w.trim(), f.trim()),
                _ => {
                    issues.push(LineIssue {
                        line: lineno,
                        message: "expected `word<TAB>frequency`".into(),
                    });
                    continue;
                }
            };
            if word.is_empty() {
                issues.push(LineIssue {
                    line: lineno,
                    message: "empty word".into(),
                });
                continue;
            }
            match freq.parse::<u64>() {
                Ok(f) => lex.add(word, f),
                Err(_) => issues.push(LineIssue {
                    line: lineno,
                    message: format!("bad frequency {freq:?}"),
                }),
            }
        }
        (lex, issues)
    }

    /// Loads a TSV file, logging a warning for each skipped line.
    pub fn load(path: impl AsRef<Path>) -> Result<(Lexicon, Vec<LineIssue>)> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let (lex, issues) = Lexicon::parse_tsv(&text);
        for issue in &issues {
            log::warn!("{}: line {}: {}", path.display(), issue.line, issue.message);
        }
        Ok((lex, issues))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (w, f) in self.iter() {
            out.push_str(w);
            out.push('\t');
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }
}
