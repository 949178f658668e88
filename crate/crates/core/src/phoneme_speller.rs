//! Spellchecking in phoneme space: transcribe the query, find dictionary
//! pronunciations within a token edit distance, and map them back to their
//! spellings.
//!
//! Distance counts whole phoneme tokens, so a changed vowel costs 1 however
//! it is spelled. Syllable separators are ignored.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::g2p::{transcribe, PhonemeSequence, PronDict};
use crate::lexicon::Lexicon;
use crate::speller::{rank_suggestions, Suggestion};
use crate::symspell::SymmetricDeleteIndex;

pub const DEFAULT_PHONEMIC_MAX_DISTANCE: usize = 1;

#[derive(Debug, Clone)]
pub struct PhonemeIndex {
    index: SymmetricDeleteIndex<u32>,
    symbols: HashMap<String, u32>,
    /// Spellings per indexed pronunciation, aligned with the index ids.
    spellings: Vec<BTreeSet<String>>,
    frequencies: Vec<u64>,
    word_frequency: HashMap<String, u64>,
    prondict: PronDict,
}

impl PhonemeIndex {
    /// Indexes every pronunciation in `prondict`. A pronunciation's frequency
    /// is the sum of its spellings' lexicon frequencies (0 when unknown).
    pub fn build(prondict: &PronDict, lexicon: Option<&Lexicon>, max_distance: usize) -> Self {
        let max_distance = max_distance.max(1);
        let mut symbols: HashMap<String, u32> = HashMap::new();
        let mut by_tokens: BTreeMap<Vec<u32>, BTreeSet<String>> = BTreeMap::new();
        for (serialized, words) in prondict.reverse() {
            let Some(seq) = PhonemeSequence::parse(serialized, crate::g2p::TranscriptionSource::Lexicon)
            else {
                continue;
            };
            let ids: Vec<u32> = seq
                .tokens()
                .into_iter()
                .map(|t| {
                    let next = symbols.len() as u32;
                    *symbols.entry(t.to_owned()).or_insert(next)
                })
                .collect();
            by_tokens.entry(ids).or_default().extend(words.iter().cloned());
        }

        let freq_of = |w: &str| lexicon.and_then(|l| l.frequency(w)).unwrap_or(0);
        let mut word_frequency = HashMap::new();
        let mut keys = Vec::with_capacity(by_tokens.len());
        let mut spellings = Vec::with_capacity(by_tokens.len());
        let mut frequencies = Vec::with_capacity(by_tokens.len());
        for (k, words) in by_tokens {
            let mut total = 0;
            for w in &words {
                let f = freq_of(w);
                word_frequency.insert(w.clone(), f);
                total += f;
            }
            keys.push(k);
            spellings.push(words);
            frequencies.push(total);
        }

        PhonemeIndex {
            index: SymmetricDeleteIndex::build(keys, max_distance),
            symbols,
            spellings,
            frequencies,
            word_frequency,
            prondict: prondict.clone(),
        }
    }

    pub fn max_distance(&self) -> usize {
        self.index.max_distance()
    }

    pub fn prondict(&self) -> &PronDict {
        &self.prondict
    }

    /// Number of distinct indexed pronunciations.
    pub fn pronunciation_count(&self) -> usize {
        self.spellings.len()
    }

    pub fn variant_count(&self) -> usize {
        self.index.variant_count()
    }

    /// Summed lexicon frequency of the pronunciation with these tokens.
    pub fn pronunciation_frequency(&self, tokens: &[&str]) -> Option<u64> {
        let ids = self.encode(tokens);
        self.index
            .candidates(&ids, 0)
            .first()
            .map(|&(id, _)| self.frequencies[id as usize])
    }

    fn encode(&self, tokens: &[&str]) -> Vec<u32> {
        // symbols unknown to the index get ids that match nothing
        let mut unknown = u32::MAX;
        tokens
            .iter()
            .map(|t| {
                self.symbols.get(*t).copied().unwrap_or_else(|| {
                    unknown -= 1;
                    unknown
                })
            })
            .collect()
    }

    /// Dictionary spellings whose pronunciation lies within the index distance
    /// of the query's transcription (dictionary entry first, rules otherwise).
    pub fn lookup(&self, word: &str, top_k: usize) -> Vec<Suggestion> {
        let seq = match transcribe(word, &self.prondict) {
            Ok(s) => s,
            Err(e) => {
                log::debug!("phonemic lookup skipped: {e}");
                return Vec::new();
            }
        };
        self.lookup_sequence(&seq, top_k)
    }

    pub fn lookup_sequence(&self, seq: &PhonemeSequence, top_k: usize) -> Vec<Suggestion> {
        let ids = self.encode(&seq.tokens());
        let mut out = Vec::new();
        for (id, distance) in self.index.candidates(&ids, self.max_distance()) {
            for w in &self.spellings[id as usize] {
                out.push(Suggestion {
                    word: w.clone(),
                    distance,
                    frequency: self.word_frequency.get(w).copied().unwrap_or(0),
                });
            }
        }
        rank_suggestions(&mut out);
        out.truncate(top_k);
        out
    }
}

pub fn build_phoneme_index(prondict: &PronDict, lexicon: Option<&Lexicon>, max_distance: usize) -> PhonemeIndex {
    PhonemeIndex::build(prondict, lexicon, max_distance)
}

pub fn lookup_phonemic(index: &PhonemeIndex, word: &str, top_k: usize) -> Vec<Suggestion> {
    index.lookup(word, top_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::normalize_text;
    use crate::symspell::delete_variants;
    use std::collections::HashSet;

    fn dict(text: &str) -> PronDict {
        let (d, issues) = PronDict::parse_tsv(text);
        assert!(issues.is_empty(), "{issues:?}");
        d
    }

    #[test]
    fn homophones_share_one_pronunciation() {
        let d = dict("ជ័យជំនះ\tc e j . c u m . n e a h\nជ័យជម្នះ\tc e j . c u m . n e a h\n");
        let idx = PhonemeIndex::build(&d, None, 1);
        assert_eq!(idx.pronunciation_count(), 1);
        let s = idx.lookup("ជ័យជំនះ", 10);
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|x| x.distance == 0));
    }

    #[test]
    fn single_entry_variants() {
        let d = dict("កា\tk aa\n");
        let idx = PhonemeIndex::build(&d, None, 1);
        // {k aa}, {k}, {aa}
        assert_eq!(idx.variant_count(), 3);
    }

    #[test]
    fn variant_count_matches_enumeration() {
        let mut text = String::new();
        let cons = ["k", "c", "t", "p", "m", "n", "s", "l"];
        let vows = ["aa", "ie", "o", "ej", "uə"];
        let words = ["ក", "ខ", "គ", "ឃ", "ង", "ច", "ឆ", "ជ", "ឈ", "ញ"];
        let mut expected: HashSet<Vec<String>> = HashSet::new();
        for i in 0..50 {
            let toks = [cons[i % 8], vows[i % 5], cons[(i / 3) % 8]];
            let word = format!("{}{}", words[i % 10], words[(i / 10) % 10]);
            text.push_str(&format!("{word}\t{}\n", toks.join(" ")));
        }
        let d = dict(&text);
        for (_, p) in d.entries() {
            let t: Vec<String> = p.tokens().into_iter().map(str::to_owned).collect();
            expected.extend(delete_variants(&t, 1));
        }
        let idx = PhonemeIndex::build(&d, None, 1);
        assert_eq!(idx.variant_count(), expected.len());
    }

    #[test]
    fn finds_stacked_and_unstacked_for_misspelling() {
        let d = dict("ចម្រៀង\tc ɑ m . r ie ŋ\nចំរៀង\tc ɑ m . r ie ŋ\nកា\tk aa\n");
        let lex = Lexicon::parse_tsv("ចម្រៀង\t231\nចំរៀង\t14\n").0;
        let idx = PhonemeIndex::build(&d, Some(&lex), 1);
        let s = idx.lookup("ចាំរៀង", 5);
        let words: Vec<&str> = s.iter().map(|x| x.word.as_str()).collect();
        assert_eq!(words, vec![normalize_text("ចម្រៀង"), normalize_text("ចំរៀង")]);
        assert_eq!(s[0].distance, 1);
        assert_eq!(idx.pronunciation_frequency(&["c", "ɑ", "m", "r", "ie", "ŋ"]), Some(245));
    }

    #[test]
    fn rule_transcription_hits_distance_zero() {
        // rules: ក+ំ -> k ɑ m ; សា -> s aa ; final ន -> coda n
        let d = dict("កម្សាន្ត\tk ɑ m . s aa n\n");
        let idx = PhonemeIndex::build(&d, None, 1);
        let s = idx.lookup("កំសាន", 5);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].word, normalize_text("កម្សាន្ត"));
        assert_eq!(s[0].distance, 0);
    }

    #[test]
    fn non_khmer_is_empty() {
        let idx = PhonemeIndex::build(&dict("កា\tk aa\n"), None, 1);
        assert!(idx.lookup("hello", 5).is_empty());
        let empty = PhonemeIndex::build(&PronDict::new(), None, 1);
        assert!(empty.lookup("កា", 5).is_empty());
    }
}
