//! Grapheme-to-phoneme conversion.
//!
//! Words found in the pronunciation dictionary use the stored transcription.
//! Anything else goes through a per-cluster rule fallback: onset from the
//! base (plus subscripts, in stack order), nucleus from a vowel-by-series
//! table, and a word-final bare cluster folded in as the coda.

mod prondict;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use prondict::{Inventory, PronDict};

use crate::error::{Error, Result};
use crate::lexicon::LineIssue;
use crate::script::{
    classify_codepoint, khmer_units, normalize_text, CodepointClass, KhmerCluster, MUUSIKATOAN,
    NIKAHIT, REAHMUK, SAMYOK_SANNYA, TOANDAKHIAT, TRIISAP, YUUKALEAPINTU,
};

pub const SYLLABLE_SEPARATOR: &str = ".";

const VOWEL_TABLE: &str = include_str!("../../data/vowels.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConsonantSeries {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TranscriptionSource {
    Lexicon,
    Rule,
}

/// Syllabified phoneme tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhonemeSequence {
    pub syllables: Vec<Vec<String>>,
    pub source: TranscriptionSource,
}

impl PhonemeSequence {
    /// Parses `c e j . c u m`; empty syllables are dropped.
    pub fn parse(s: &str, source: TranscriptionSource) -> Option<PhonemeSequence> {
        let mut syllables = Vec::new();
        let mut cur: Vec<String> = Vec::new();
        for tok in s.split_whitespace() {
            if tok == SYLLABLE_SEPARATOR {
                if !cur.is_empty() {
                    syllables.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(tok.to_owned());
            }
        }
        if !cur.is_empty() {
            syllables.push(cur);
        }
        (!syllables.is_empty()).then_some(PhonemeSequence { syllables, source })
    }

    /// Phoneme tokens with syllable boundaries removed.
    pub fn tokens(&self) -> Vec<&str> {
        self.syllables.iter().flatten().map(String::as_str).collect()
    }

    pub fn serialize(&self) -> String {
        self.syllables
            .iter()
            .map(|s| s.join(" "))
            .collect::<Vec<_>>()
            .join(" . ")
    }
}

impl fmt::Display for PhonemeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Default series of a base consonant, flipped by a register shifter:
/// muusikatoan forces first series, triisap forces second.
pub fn series_of(base: char, shifter: Option<char>) -> Result<ConsonantSeries> {
    use ConsonantSeries::*;
    let default = match base {
        'ក' | 'ខ' | 'ច' | 'ឆ' | 'ដ' | 'ឋ' | 'ណ' | 'ត' | 'ថ' | 'ប' | 'ផ' | 'ឝ' | 'ឞ' | 'ស' | 'ហ'
        | 'ឡ' | 'អ' => First,
        'គ' | 'ឃ' | 'ង' | 'ជ' | 'ឈ' | 'ញ' | 'ឌ' | 'ឍ' | 'ទ' | 'ធ' | 'ន' | 'ព' | 'ភ' | 'ម' | 'យ'
        | 'រ' | 'ល' | 'វ' => Second,
        _ => return Err(Error::NotAConsonant(base)),
    };
    Ok(match shifter {
        Some(MUUSIKATOAN) => First,
        Some(TRIISAP) => Second,
        _ => default,
    })
}

/// Onset phoneme of a consonant.
pub fn consonant_phoneme(c: char) -> Option<&'static str> {
    Some(match c {
        'ក' | 'គ' => "k",
        'ខ' | 'ឃ' => "kh",
        'ង' => "ŋ",
        'ច' | 'ជ' => "c",
        'ឆ' | 'ឈ' => "ch",
        'ញ' => "ɲ",
        'ដ' | 'ឌ' => "d",
        'ឋ' | 'ឍ' | 'ថ' | 'ធ' => "th",
        'ណ' | 'ន' => "n",
        'ត' | 'ទ' => "t",
        'ប' => "b",
        'ផ' | 'ភ' => "ph",
        'ព' => "p",
        'ម' => "m",
        'យ' => "j",
        'រ' => "r",
        'ល' | 'ឡ' => "l",
        'វ' => "w",
        'ឝ' | 'ឞ' | 'ស' => "s",
        'ហ' => "h",
        'អ' => "ʔ",
        _ => return None,
    })
}

/// Final (coda) phoneme of a consonant; `None` for silent finals.
pub fn coda_phoneme(c: char) -> Option<&'static str> {
    Some(match c {
        'ក' | 'ខ' | 'គ' | 'ឃ' => "k",
        'ង' => "ŋ",
        'ច' | 'ឆ' | 'ជ' | 'ឈ' => "c",
        'ញ' => "ɲ",
        'ដ' | 'ឋ' | 'ឌ' | 'ឍ' | 'ត' | 'ថ' | 'ទ' | 'ធ' => "t",
        'ណ' | 'ន' => "n",
        'ប' | 'ផ' | 'ព' | 'ភ' => "p",
        'ម' => "m",
        'យ' => "j",
        'ល' | 'ឡ' => "l",
        'វ' => "w",
        'ឝ' | 'ឞ' | 'ស' | 'ហ' => "h",
        'អ' => "ʔ",
        _ => return None,
    })
}

fn independent_vowel(c: char) -> Option<&'static [&'static str]> {
    Some(match c {
        'ឥ' => &["ʔ", "e"],
        'ឦ' => &["ʔ", "ej"],
        'ឧ' | 'ឨ' | 'ឩ' => &["ʔ", "o"],
        'ឪ' => &["ʔ", "a", "w"],
        'ឫ' => &["r", "ɨ"],
        'ឬ' => &["r", "ɨ"],
        'ឭ' => &["l", "ɨ"],
        'ឮ' => &["l", "ɨ"],
        'ឯ' => &["ʔ", "ae"],
        'ឰ' => &["ʔ", "a", "j"],
        'ឱ' | 'ឲ' => &["ʔ", "ao"],
        'ឳ' => &["ʔ", "a", "w"],
        _ => return None,
    })
}

fn is_nucleus_sign(c: char) -> bool {
    matches!(c, NIKAHIT | REAHMUK | YUUKALEAPINTU | SAMYOK_SANNYA)
}

/// Vowel-by-series nucleus table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VowelTable {
    rows: HashMap<String, [Vec<String>; 2]>,
}

impl Default for VowelTable {
    fn default() -> Self {
        let (t, issues) = VowelTable::parse_tsv(VOWEL_TABLE);
        debug_assert!(issues.is_empty(), "bundled vowel table: {issues:?}");
        t
    }
}

impl VowelTable {
    pub fn parse_tsv(text: &str) -> (VowelTable, Vec<LineIssue>) {
        let mut rows = HashMap::new();
        let mut issues = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 || cols[1].trim().is_empty() || cols[2].trim().is_empty() {
                issues.push(LineIssue {
                    line: i + 1,
                    message: "expected `key<TAB>first<TAB>second`".into(),
                });
                continue;
            }
            let toks = |s: &str| s.split_whitespace().map(str::to_owned).collect::<Vec<_>>();
            rows.insert(cols[0].trim().to_owned(), [toks(cols[1]), toks(cols[2])]);
        }
        (VowelTable { rows }, issues)
    }

    pub fn get(&self, key: &str, series: ConsonantSeries) -> Option<&[String]> {
        self.rows.get(key).map(|r| match series {
            ConsonantSeries::First => r[0].as_slice(),
            ConsonantSeries::Second => r[1].as_slice(),
        })
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.rows.values().flatten().flatten().map(String::as_str)
    }

    fn nucleus(&self, cl: &KhmerCluster, series: ConsonantSeries) -> Vec<String> {
        let vowel: String = cl.vowel.map(String::from).unwrap_or_default();
        let sign = cl.diacritics.iter().copied().find(|&d| is_nucleus_sign(d));
        if let Some(sign) = sign {
            let key = format!("{vowel}{sign}");
            if let Some(t) = self.get(&key, series) {
                return t.to_vec();
            }
        }
        let mut out = self.get(&vowel, series).map(<[String]>::to_vec).unwrap_or_default();
        match sign {
            Some(NIKAHIT) => out.push("m".into()),
            Some(REAHMUK) => out.push("h".into()),
            Some(YUUKALEAPINTU) => out.push("ʔ".into()),
            _ => {}
        }
        out
    }
}

fn cluster_onset(cl: &KhmerCluster) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(p) = cl.base.and_then(consonant_phoneme) {
        out.push(p.to_owned());
    }
    out.extend(cl.subscripts.iter().filter_map(|&s| consonant_phoneme(s)).map(str::to_owned));
    out
}

/// Rule-only transcription.
pub fn transcribe_rules(word: &str, table: &VowelTable) -> Result<PhonemeSequence> {
    let units: Vec<KhmerCluster> = khmer_units(word)
        .into_iter()
        .filter(|c| c.base.is_some())
        .filter(|c| !c.diacritics.contains(&TOANDAKHIAT))
        .collect();
    if units.is_empty() {
        return Err(Error::NoKhmerContent(word.to_owned()));
    }

    let mut syllables: Vec<Vec<String>> = Vec::new();
    let last = units.len() - 1;
    for (i, cl) in units.iter().enumerate() {
        let base = cl.base.expect("filtered above");
        let is_consonant = classify_codepoint(base) == CodepointClass::BaseConsonant;

        if i == last && i > 0 && is_consonant && !cl.has_nucleus() {
            if let Some(coda) = coda_phoneme(base) {
                syllables.last_mut().expect("i > 0").push(coda.to_owned());
            }
            continue;
        }

        let syl = if let Some(iv) = independent_vowel(base) {
            iv.iter().map(|s| (*s).to_owned()).collect()
        } else {
            let series = series_of(base, cl.shifter)?;
            let mut s = cluster_onset(cl);
            s.extend(table.nucleus(cl, series));
            s
        };
        if !syl.is_empty() {
            syllables.push(syl);
        }
    }
    Ok(PhonemeSequence {
        syllables,
        source: TranscriptionSource::Rule,
    })
}

/// Dictionary-first transcription with rule fallback.
pub fn transcribe(word: &str, prondict: &PronDict) -> Result<PhonemeSequence> {
    let norm = normalize_text(word.trim());
    if let Some(p) = prondict.get(&norm) {
        return Ok(p.clone());
    }
    transcribe_rules(&norm, prondict.vowel_table())
}

/// Other dictionary spellings pronounced exactly like `word`.
pub fn homophones(word: &str, prondict: &PronDict) -> BTreeSet<String> {
    let norm = normalize_text(word.trim());
    let Ok(p) = transcribe(&norm, prondict) else {
        return BTreeSet::new();
    };
    prondict
        .words_for(&p.serialize())
        .map(|set| set.iter().filter(|w| **w != norm).cloned().collect())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(word: &str) -> String {
        transcribe_rules(word, &VowelTable::default()).unwrap().serialize()
    }

    #[test]
    fn series_table() {
        assert_eq!(series_of('ក', None).unwrap(), ConsonantSeries::First);
        assert_eq!(series_of('គ', None).unwrap(), ConsonantSeries::Second);
        assert_eq!(series_of('ប', Some(TRIISAP)).unwrap(), ConsonantSeries::Second);
        assert_eq!(series_of('ម', Some(MUUSIKATOAN)).unwrap(), ConsonantSeries::First);
        assert!(matches!(series_of('ា', None), Err(Error::NotAConsonant('ា'))));
        for cp in 0x1780u32..=0x17A2 {
            let c = char::from_u32(cp).unwrap();
            assert!(series_of(c, None).is_ok(), "{c}");
            assert!(consonant_phoneme(c).is_some(), "{c}");
        }
    }

    #[test]
    fn bundled_table_parses() {
        let (t, issues) = VowelTable::parse_tsv(VOWEL_TABLE);
        assert!(issues.is_empty(), "{issues:?}");
        assert_eq!(t.get("", ConsonantSeries::First).unwrap(), ["aa"]);
        assert_eq!(t.get("", ConsonantSeries::Second).unwrap(), ["oo"]);
        assert_eq!(t.get("ា", ConsonantSeries::Second).unwrap(), ["ie"]);
    }

    #[test]
    fn first_and_second_series_aa() {
        assert_eq!(rules("កា"), "k aa");
        assert_eq!(rules("គា"), "k ie");
        assert_eq!(rules("ក"), "k aa");
        assert_eq!(rules("គ"), "k oo");
    }

    #[test]
    fn final_bare_cluster_is_coda() {
        assert_eq!(rules("កាត់"), "k aa t");
        assert_eq!(rules("រៀង"), "r ie ŋ");
        assert_eq!(rules("ចាំរៀង"), "c a m . r ie ŋ");
        assert_eq!(rules("ចំរៀង"), "c ɑ m . r ie ŋ");
    }

    #[test]
    fn stacked_onsets_in_order() {
        assert_eq!(rules("ស្ត្រី"), "s t r ej");
        assert_eq!(rules("ស្រ្តី"), "s t r ej");
    }

    #[test]
    fn subscripted_final_is_single_coda() {
        assert_eq!(rules("កំសាន"), "k ɑ m . s aa n");
        assert_eq!(rules("សាន្ត"), "s aa n");
    }

    #[test]
    fn toandakhiat_silences_cluster() {
        assert_eq!(rules("កាត៍"), rules("កា"));
        // robat is not a silencer
        assert_eq!(rules("ពណ៌"), "p oo n");
    }

    #[test]
    fn shifter_changes_vowel() {
        // ប + triisap takes second-series vowels
        assert_eq!(rules("ប៊ា"), "b ie");
        assert_eq!(rules("បា"), "b aa");
    }

    #[test]
    fn independent_vowel_base() {
        assert_eq!(rules("ឮ"), "l ɨ");
    }

    #[test]
    fn non_khmer_is_error() {
        assert!(matches!(
            transcribe_rules("hello", &VowelTable::default()),
            Err(Error::NoKhmerContent(_))
        ));
    }

    #[test]
    fn parse_and_serialize() {
        let p = PhonemeSequence::parse("c e j . c u m . n e a h", TranscriptionSource::Lexicon).unwrap();
        assert_eq!(p.syllables.len(), 3);
        assert_eq!(p.serialize(), "c e j . c u m . n e a h");
        assert_eq!(p.tokens().len(), 10);
        assert!(PhonemeSequence::parse(" . ", TranscriptionSource::Rule).is_none());
    }
}
