use std::collections::HashSet;

use crate::lexicon::Lexicon;
use crate::script::{normalize_text, segment_clusters, ClusterKind};

/// Forward longest-match word segmenter over cluster boundaries.
#[derive(Debug, Clone, Default)]
pub struct Segmenter {
    words: HashSet<String>,
    max_units: usize,
}

impl Segmenter {
    pub fn new<'a, I: IntoIterator<Item = &'a str>>(words: I) -> Self {
        let mut set = HashSet::new();
        let mut max_units = 1;
        for w in words {
            let w = normalize_text(w);
            let units = segment_clusters(&w).iter().filter(|c| c.is_khmer()).count();
            max_units = max_units.max(units);
            set.insert(w);
        }
        Segmenter {
            words: set,
            max_units,
        }
    }

    pub fn from_lexicon(lexicon: &Lexicon) -> Self {
        Segmenter::new(lexicon.iter().map(|(w, _)| w))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Normalizes, then segments.
    pub fn segment(&self, text: &str) -> Vec<String> {
        self.segment_with(text, true)
    }

    /// Segments with or without character-order normalization. Khmer runs are
    /// matched greedily against the lexicon; clusters that start no lexicon
    /// word become single-cluster tokens. Other text is split into
    /// alphanumeric runs.
    pub fn segment_with(&self, text: &str, normalize: bool) -> Vec<String> {
        self.split(text, normalize, false)
    }

    /// Like [`Segmenter::segment`], but adjacent clusters that start no
    /// lexicon word are kept together as one token, so a misspelled word
    /// stays whole.
    pub fn segment_query(&self, text: &str) -> Vec<String> {
        self.split(text, true, true)
    }

    pub fn segment_query_with(&self, text: &str, normalize: bool) -> Vec<String> {
        self.split(text, normalize, true)
    }

    fn split(&self, text: &str, normalize: bool, merge_unknown: bool) -> Vec<String> {
        let text = if normalize {
            normalize_text(text)
        } else {
            text.to_owned()
        };
        let clusters = segment_clusters(&text);
        let mut out = Vec::new();
        let mut run: Vec<&str> = Vec::new();
        for cl in &clusters {
            if cl.is_khmer() {
                run.push(&cl.raw);
                continue;
            }
            self.match_run(&run, merge_unknown, &mut out);
            run.clear();
            if cl.kind == ClusterKind::Foreign {
                out.extend(
                    cl.raw
                        .split(|c: char| !c.is_alphanumeric())
                        .filter(|s| !s.is_empty())
                        .map(str::to_owned),
                );
            }
        }
        self.match_run(&run, merge_unknown, &mut out);
        out
    }

    fn match_run(&self, units: &[&str], merge_unknown: bool, out: &mut Vec<String>) {
        let mut pending = String::new();
        let mut i = 0;
        while i < units.len() {
            let longest = self.max_units.min(units.len() - i);
            let mut taken = 1;
            for n in (2..=longest).rev() {
                if self.words.contains(&units[i..i + n].concat()) {
                    taken = n;
                    break;
                }
            }
            let piece = units[i..i + taken].concat();
            i += taken;
            if merge_unknown && taken == 1 && !self.words.contains(&piece) {
                pending.push_str(&piece);
                continue;
            }
            if !pending.is_empty() {
                out.push(std::mem::take(&mut pending));
            }
            out.push(piece);
        }
        if !pending.is_empty() {
            out.push(pending);
        }
    }
}

pub fn segment_words(text: &str, lexicon: &Lexicon) -> Vec<String> {
    Segmenter::from_lexicon(lexicon).segment(text)
}
