use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use super::{PhonemeSequence, TranscriptionSource, VowelTable};
use crate::error::{Error, Result};
use crate::lexicon::LineIssue;
use crate::script::normalize_text;

/// Built-in phoneme symbols. Dictionaries may add more at load time.
pub const BUILTIN_INVENTORY: &[&str] = &[
    "k", "kh", "c", "ch", "t", "th", "d", "p", "ph", "b", "m", "n", "ɲ", "ŋ", "j", "r", "l", "w",
    "s", "h", "ʔ", "a", "aa", "e", "ee", "ə", "əə", "i", "ii", "o", "oo", "u", "uu", "ie", "uə",
    "ae", "ao", "aə", "ej", "ea", "ah", "eh", "ɑ", "ɔ", "ɨ", "ɨə", "ɛ",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inventory {
    symbols: BTreeSet<String>,
}

impl Default for Inventory {
    fn default() -> Self {
        Inventory {
            symbols: BUILTIN_INVENTORY.iter().map(|s| (*s).to_owned()).collect(),
        }
    }
}

impl Inventory {
    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.contains(symbol)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Returns true when the symbol was new.
    fn extend(&mut self, symbol: &str) -> bool {
        self.symbols.insert(symbol.to_owned())
    }
}

/// Pronunciation dictionary: normalized word to phoneme sequence, plus the
/// inverse multimap from serialized pronunciation to spellings.
#[derive(Debug, Clone, Default)]
pub struct PronDict {
    entries: BTreeMap<String, PhonemeSequence>,
    reverse: BTreeMap<String, BTreeSet<String>>,
    inventory: Inventory,
    vowels: VowelTable,
}

impl PronDict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vowel_table(mut self, table: VowelTable) -> Self {
        self.vowels = table;
        self
    }

    pub fn vowel_table(&self) -> &VowelTable {
        &self.vowels
    }

    pub fn inventory(&self) -> &Inventory {
        &self.inventory
    }

    /// Inserts or replaces an entry, keeping `reverse` in sync. Returns any
    /// phoneme symbols that were not yet in the inventory.
    pub fn insert(&mut self, word: &str, phonemes: PhonemeSequence) -> Vec<String> {
        let word = normalize_text(word.trim());
        let phonemes = PhonemeSequence {
            source: TranscriptionSource::Lexicon,
            ..phonemes
        };
        if let Some(old) = self.entries.remove(&word) {
            let key = old.serialize();
            if let Some(set) = self.reverse.get_mut(&key) {
                set.remove(&word);
                if set.is_empty() {
                    self.reverse.remove(&key);
                }
            }
        }
        let new_symbols: Vec<String> = phonemes
            .tokens()
            .into_iter()
            .filter(|t| self.inventory.extend(t))
            .map(str::to_owned)
            .collect();
        self.reverse
            .entry(phonemes.serialize())
            .or_default()
            .insert(word.clone());
        self.entries.insert(word, phonemes);
        new_symbols
    }

    pub fn get(&self, word: &str) -> Option<&PhonemeSequence> {
        self.entries.get(word)
    }

    pub fn words_for(&self, serialized: &str) -> Option<&BTreeSet<String>> {
        self.reverse.get(serialized)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &PhonemeSequence)> {
        self.entries.iter().map(|(w, p)| (w.as_str(), p))
    }

    /// Serialized pronunciation to spellings.
    pub fn reverse(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.reverse.iter().map(|(p, w)| (p.as_str(), w))
    }

    /// Parses `word<TAB>phonemes` lines. Unknown phoneme symbols extend the
    /// inventory and are reported as issues on the line that introduced them.
    pub fn parse_tsv(text: &str) -> (PronDict, Vec<LineIssue>) {
        let mut dict = PronDict::new();
        let mut issues = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((word, phon)) = line.split_once('\t') else {
                issues.push(LineIssue {
                    line: lineno,
                    message: "expected `word<TAB>phonemes`".into(),
                });
                continue;
            };
            let word = word.trim();
            let Some(seq) = PhonemeSequence::parse(phon, TranscriptionSource::Lexicon) else {
                issues.push(LineIssue {
                    line: lineno,
                    message: "empty pronunciation".into(),
                });
                continue;
            };
            if word.is_empty() || normalize_text(word).is_empty() {
                issues.push(LineIssue {
                    line: lineno,
                    message: "empty word".into(),
                });
                continue;
            }
            for sym in dict.insert(word, seq) {
                issues.push(LineIssue {
                    line: lineno,
                    message: format!("phoneme {sym:?} added to inventory"),
                });
            }
        }
        (dict, issues)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(PronDict, Vec<LineIssue>)> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let (dict, issues) = PronDict::parse_tsv(&text);
        for issue in &issues {
            log::warn!("{}: line {}: {}", path.display(), issue.line, issue.message);
        }
        Ok((dict, issues))
    }
}
