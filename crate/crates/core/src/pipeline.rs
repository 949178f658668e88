//! Query expansion: normalization, spelling correction, homophone alternatives
//! and embedding neighbors, each term tagged with the stage that produced it.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingModel;
use crate::error::{Error, Result};
use crate::g2p::{homophones, PronDict};
use crate::ir::{InvertedIndex, Segmenter, INDEX_FORMAT_VERSION};
use crate::lexicon::Lexicon;
use crate::phoneme_speller::{PhonemeIndex, DEFAULT_PHONEMIC_MAX_DISTANCE};
use crate::script::contains_khmer;
use crate::speller::{DeleteIndex, DEFAULT_MAX_DISTANCE};

/// Version stamped on JSON output; moves with the index format.
pub const JSON_SCHEMA_VERSION: u32 = INDEX_FORMAT_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExpansionConfig {
    pub enable_spellcheck: bool,
    pub enable_homophones: bool,
    pub enable_semantic: bool,
    pub max_corrections: usize,
    pub max_neighbors: usize,
    pub min_similarity: f64,
    pub post_spellcheck_neighbors: bool,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        ExpansionConfig {
            enable_spellcheck: true,
            enable_homophones: true,
            enable_semantic: true,
            max_corrections: 3,
            max_neighbors: 5,
            min_similarity: 0.5,
            post_spellcheck_neighbors: true,
        }
    }
}

impl ExpansionConfig {
    /// Every stage off: the expansion is the normalized query alone.
    pub fn disabled() -> Self {
        ExpansionConfig {
            enable_spellcheck: false,
            enable_homophones: false,
            enable_semantic: false,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_corrections == 0 || self.max_neighbors == 0 {
            return Err(Error::InvalidConfig(
                "max_corrections and max_neighbors must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.min_similarity) {
            return Err(Error::InvalidConfig("min_similarity must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// The configurations evaluated one after another in an experiment, each
/// enabling one more stage than the previous.
pub fn incremental_configs() -> Vec<(String, ExpansionConfig)> {
    let base = ExpansionConfig::disabled();
    let spell = ExpansionConfig {
        enable_spellcheck: true,
        ..base.clone()
    };
    let homo = ExpansionConfig {
        enable_homophones: true,
        ..spell.clone()
    };
    let sem = ExpansionConfig {
        enable_semantic: true,
        ..homo.clone()
    };
    vec![
        ("normalized".into(), base),
        ("+spellcheck".into(), spell),
        ("+homophones".into(), homo),
        ("+semantic".into(), sem),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Original,
    Normalized,
    GraphemeCorrection,
    PhonemeCorrection,
    Homophone,
    SemanticNeighbor,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Original => "original",
            Provenance::Normalized => "normalized",
            Provenance::GraphemeCorrection => "grapheme_correction",
            Provenance::PhonemeCorrection => "phoneme_correction",
            Provenance::Homophone => "homophone",
            Provenance::SemanticNeighbor => "semantic_neighbor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpandedTerm {
    pub term: String,
    pub provenance: Provenance,
    /// Edit distance for corrections, cosine similarity for neighbors.
    pub score: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpandedQuery {
    pub terms: Vec<ExpandedTerm>,
}

impl ExpandedQuery {
    /// Appends `term` unless already present. Returns whether it was added.
    fn push(&mut self, term: &str, provenance: Provenance, score: Option<f64>) -> bool {
        if term.is_empty() || self.contains(term) {
            return false;
        }
        self.terms.push(ExpandedTerm {
            term: term.to_owned(),
            provenance,
            score,
        });
        true
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.iter().any(|t| t.term == term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn strings(&self) -> Vec<&str> {
        self.terms.iter().map(|t| t.term.as_str()).collect()
    }
}

/// A correction from either speller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub word: String,
    pub distance: usize,
    pub frequency: u64,
    pub provenance: Provenance,
}

/// Everything `expand` reads. Immutable once built.
#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub grapheme: DeleteIndex,
    pub prondict: PronDict,
    pub phonemes: PhonemeIndex,
    pub embedding: Option<EmbeddingModel>,
    pub segmenter: Segmenter,
}

impl Resources {
    pub fn new(lexicon: Lexicon, prondict: PronDict, embedding: Option<EmbeddingModel>) -> Self {
        let phonemes = PhonemeIndex::build(&prondict, Some(&lexicon), DEFAULT_PHONEMIC_MAX_DISTANCE);
        let mut words: Vec<String> = lexicon.iter().map(|(w, _)| w.to_owned()).collect();
        words.extend(prondict.entries().map(|(w, _)| w.to_owned()));
        let segmenter = Segmenter::new(words.iter().map(String::as_str));
        Resources {
            grapheme: DeleteIndex::new(lexicon.clone(), DEFAULT_MAX_DISTANCE),
            lexicon,
            prondict,
            phonemes,
            embedding,
            segmenter,
        }
    }

    pub fn with_embedding(mut self, model: EmbeddingModel) -> Self {
        self.embedding = Some(model);
        self
    }

    /// Grapheme and phonemic suggestions merged: grapheme exact matches,
    /// then phonemic exact matches, then the rest by distance (grapheme
    /// before phonemic on ties). Each word appears once.
    pub fn corrections(&self, word: &str) -> Vec<Correction> {
        let tag = |p: Provenance| {
            move |s: crate::speller::Suggestion| Correction {
                word: s.word,
                distance: s.distance,
                frequency: s.frequency,
                provenance: p,
            }
        };
        let g: Vec<Correction> = self
            .grapheme
            .lookup(word, self.grapheme.max_distance(), usize::MAX)
            .into_iter()
            .map(tag(Provenance::GraphemeCorrection))
            .collect();
        let p: Vec<Correction> = self
            .phonemes
            .lookup(word, usize::MAX)
            .into_iter()
            .map(tag(Provenance::PhonemeCorrection))
            .collect();
        let rank = |c: &Correction| {
            let exact = c.distance == 0;
            let phon = c.provenance == Provenance::PhonemeCorrection;
            (!exact, if exact { phon as usize } else { c.distance }, phon)
        };
        let mut all: Vec<Correction> = g.into_iter().chain(p).collect();
        // stable: each speller's own ranking survives within a group
        all.sort_by_key(|c| rank(c));
        let mut seen = HashSet::new();
        all.retain(|c| seen.insert(c.word.clone()));
        all
    }

    /// Lexicon form for an embedding neighbor: the word itself when listed,
    /// otherwise its best correction within distance 1, if any.
    fn checked_neighbor(&self, word: &str) -> Option<String> {
        if self.lexicon.contains(word) {
            return Some(word.to_owned());
        }
        self.grapheme
            .lookup(word, 1, 1)
            .into_iter()
            .next()
            .map(|s| s.word)
    }
}

fn add_homophones(out: &mut ExpandedQuery, word: &str, res: &Resources) {
    for h in homophones(word, &res.prondict) {
        out.push(&h, Provenance::Homophone, None);
    }
}

/// Expands each segmented word of `query` and returns the union of terms.
pub fn expand(query: &str, res: &Resources, config: &ExpansionConfig) -> ExpandedQuery {
    let mut out = ExpandedQuery::default();
    let words = res.segmenter.segment_query(query);
    // normalized forms of every word first
    for w in &words {
        let p = if contains_khmer(w) {
            Provenance::Normalized
        } else {
            Provenance::Original
        };
        out.push(w, p, None);
    }
    for w in &words {
        if !contains_khmer(w) {
            continue;
        }
        let mut retained = Vec::new();
        if res.lexicon.contains(w) {
            retained.push(w.clone());
            if config.enable_homophones {
                add_homophones(&mut out, w, res);
            }
        } else if config.enable_spellcheck {
            for c in res.corrections(w).into_iter().take(config.max_corrections) {
                out.push(&c.word, c.provenance, Some(c.distance as f64));
                add_homophones(&mut out, &c.word, res);
                retained.push(c.word);
            }
        }
        if !config.enable_semantic {
            continue;
        }
        let Some(model) = &res.embedding else {
            continue;
        };
        for t in &retained {
            let neighbors = match model.nearest_neighbors(t, model.vocab().len()) {
                Ok(n) => n,
                Err(e) => {
                    log::debug!("no neighbors for {t}: {e}");
                    continue;
                }
            };
            let mut added = 0;
            for (n, sim) in neighbors {
                if added == config.max_neighbors || sim < config.min_similarity {
                    break;
                }
                let term = if config.post_spellcheck_neighbors {
                    match res.checked_neighbor(&n) {
                        Some(c) => c,
                        None => continue,
                    }
                } else {
                    n
                };
                if out.push(&term, Provenance::SemanticNeighbor, Some(sim)) {
                    added += 1;
                }
            }
        }
    }
    out
}

/// Terms of the unexpanded query as the index would see them.
pub fn raw_terms(query: &str, res: &Resources, index: &InvertedIndex) -> Vec<String> {
    res.segmenter.segment_query_with(query, index.normalizes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub schema_version: u32,
    pub query: String,
    pub config: String,
    pub raw_hits: usize,
    pub expanded_hits: usize,
    pub terms: Vec<ExpandedTerm>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    /// Rows for one query in config order.
    pub fn for_query<'a>(&'a self, query: &'a str) -> impl Iterator<Item = &'a ExperimentRow> + 'a {
        self.rows.iter().filter(move |r| r.query == query)
    }

    pub fn to_text(&self) -> String {
        let qw = self
            .rows
            .iter()
            .map(|r| r.query.chars().count())
            .max()
            .unwrap_or(0)
            .max(5);
        let cw = self.rows.iter().map(|r| r.config.len()).max().unwrap_or(0).max(6);
        let mut s = String::new();
        let _ = writeln!(s, "{:<qw$}  {:<cw$}  {:>8}  {:>8}  terms", "query", "config", "raw", "expanded");
        for r in &self.rows {
            let pad = qw - r.query.chars().count();
            let terms: Vec<&str> = r.terms.iter().map(|t| t.term.as_str()).collect();
            let _ = writeln!(
                s,
                "{}{}  {:<cw$}  {:>8}  {:>8}  {}",
                r.query,
                " ".repeat(pad),
                r.config,
                r.raw_hits,
                r.expanded_hits,
                terms.join(" OR ")
            );
        }
        s
    }

    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&serde_json::to_string(r).expect("report rows serialize"));
            s.push('\n');
        }
        s
    }
}

/// Hit counts for each query under each configuration.
pub fn run_experiment<S: AsRef<str>>(
    index: &InvertedIndex,
    queries: &[S],
    configs: &[(String, ExpansionConfig)],
    res: &Resources,
) -> ExperimentReport {
    let mut rows = Vec::new();
    for q in queries {
        let q = q.as_ref().trim();
        if q.is_empty() {
            continue;
        }
        let raw_hits = index.hits(&raw_terms(q, res, index));
        for (name, cfg) in configs {
            let e = expand(q, res, cfg);
            rows.push(ExperimentRow {
                schema_version: JSON_SCHEMA_VERSION,
                query: q.to_owned(),
                config: name.clone(),
                raw_hits,
                expanded_hits: index.hits(&e.strings()),
                terms: e.terms,
            });
        }
    }
    ExperimentReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2p::PhonemeSequence;
    use crate::g2p::TranscriptionSource;
    use crate::lexicon::LexiconEntry;
    use crate::script::normalize_text;

    fn resources() -> Resources {
        let lex = Lexicon::from_entries([
            LexiconEntry::new("ចម្រៀង", 231),
            LexiconEntry::new("ចំរៀង", 14),
            LexiconEntry::new("សាលា", 50),
        ]);
        let mut pd = PronDict::new();
        for (w, p) in [("ចម្រៀង", "c ɑ m . r ie ŋ"), ("ចំរៀង", "c ɑ m . r ie ŋ"), ("សាលា", "s aa . l aa")] {
            pd.insert(w, PhonemeSequence::parse(p, TranscriptionSource::Lexicon).unwrap());
        }
        Resources::new(lex, pd, None)
    }

    #[test]
    fn identity_when_disabled() {
        let r = resources();
        let e = expand("សាលា", &r, &ExpansionConfig::disabled());
        assert_eq!(
            e.terms,
            vec![ExpandedTerm {
                term: "សាលា".into(),
                provenance: Provenance::Normalized,
                score: None
            }]
        );
    }

    #[test]
    fn misspelling_gets_both_forms() {
        let r = resources();
        let cfg = ExpansionConfig {
            enable_spellcheck: true,
            ..ExpansionConfig::disabled()
        };
        let e = expand("ចាំរៀង", &r, &cfg);
        assert_eq!(e.terms[0].term, normalize_text("ចាំរៀង"));
        assert!(e.contains("ចម្រៀង") && e.contains("ចំរៀង"));
    }

    #[test]
    fn homophones_for_valid_words() {
        let r = resources();
        let cfg = ExpansionConfig {
            enable_homophones: true,
            ..ExpansionConfig::disabled()
        };
        let e = expand("ចំរៀង", &r, &cfg);
        assert_eq!(e.strings(), vec!["ចំរៀង", "ចម្រៀង"]);
        assert_eq!(e.terms[1].provenance, Provenance::Homophone);
    }

    #[test]
    fn merge_order() {
        let r = resources();
        let c = r.corrections("ចំរៀង");
        assert_eq!(c[0].word, "ចំរៀង");
        assert_eq!(c[0].provenance, Provenance::GraphemeCorrection);
        assert_eq!(c[1].word, "ចម្រៀង");
        assert_eq!(c[1].distance, 0);
        assert_eq!(c[1].provenance, Provenance::PhonemeCorrection);
        let words: HashSet<&str> = c.iter().map(|c| c.word.as_str()).collect();
        assert_eq!(words.len(), c.len());
    }

    #[test]
    fn foreign_tokens_kept() {
        let r = resources();
        let e = expand("abc សាលា", &r, &ExpansionConfig::default());
        assert_eq!(e.terms[0].term, "abc");
        assert_eq!(e.terms[0].provenance, Provenance::Original);
        assert_eq!(e.terms[1].term, "សាលា");
    }

    #[test]
    fn config_validation() {
        assert!(ExpansionConfig::default().validate().is_ok());
        let bad = ExpansionConfig {
            min_similarity: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ExpansionConfig {
            max_neighbors: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn incremental_configs_are_nested() {
        let c = incremental_configs();
        let flags = |c: &ExpansionConfig| [c.enable_spellcheck, c.enable_homophones, c.enable_semantic];
        for w in c.windows(2) {
            let (a, b) = (flags(&w[0].1), flags(&w[1].1));
            assert!(a.iter().zip(&b).all(|(x, y)| !x || *y));
            assert_ne!(a, b);
        }
    }
}
