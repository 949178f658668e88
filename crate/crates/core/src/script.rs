//! Khmer codepoint classification, orthographic-syllable (KCC) segmentation
//! and character-order normalization.
//!
//! A cluster is decomposed into base, subscripts, shifter, diacritics and
//! vowel. Normalization re-serializes the parts in one canonical order so that
//! differently typed sequences which render identically compare equal:
//!
//! ```text
//! base + (coeng + subscript)* + shifter? + diacritic* + vowel?
//! ```
//!
//! Subscripts and diacritics are sorted by scalar value. Only the matching
//! form is canonical; callers keep the original text for display.

use serde::{Deserialize, Serialize};

pub const COENG: char = '\u{17D2}';
pub const MUUSIKATOAN: char = '\u{17C9}';
pub const TRIISAP: char = '\u{17CA}';
pub const NIKAHIT: char = '\u{17C6}';
pub const REAHMUK: char = '\u{17C7}';
pub const YUUKALEAPINTU: char = '\u{17C8}';
pub const BANTOC: char = '\u{17CB}';
pub const TOANDAKHIAT: char = '\u{17CD}';
pub const SAMYOK_SANNYA: char = '\u{17D0}';

const ZERO_WIDTH_SPACE: char = '\u{200B}';
const ZERO_WIDTH_NON_JOINER: char = '\u{200C}';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodepointClass {
    BaseConsonant,
    IndependentVowel,
    DependentVowel,
    Coeng,
    DiacriticSign,
    RegisterShifter,
    Digit,
    Other,
}

pub fn classify_codepoint(cp: char) -> CodepointClass {
    use CodepointClass::*;
    match cp {
        '\u{1780}'..='\u{17A2}' => BaseConsonant,
        '\u{17A5}'..='\u{17B3}' => IndependentVowel,
        '\u{17B6}'..='\u{17C5}' => DependentVowel,
        COENG => Coeng,
        MUUSIKATOAN | TRIISAP => RegisterShifter,
        '\u{17C6}'..='\u{17D3}' | '\u{17DD}' => DiacriticSign,
        '\u{17E0}'..='\u{17E9}' => Digit,
        _ => Other,
    }
}

/// True for scalars that start a new cluster.
pub fn is_cluster_base(cp: char) -> bool {
    matches!(
        classify_codepoint(cp),
        CodepointClass::BaseConsonant | CodepointClass::IndependentVowel
    )
}

fn is_cluster_mark(cp: char) -> bool {
    matches!(
        classify_codepoint(cp),
        CodepointClass::DependentVowel
            | CodepointClass::Coeng
            | CodepointClass::DiacriticSign
            | CodepointClass::RegisterShifter
    )
}

fn is_zero_width(cp: char) -> bool {
    cp == ZERO_WIDTH_SPACE || cp == ZERO_WIDTH_NON_JOINER
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClusterKind {
    /// Well-formed orthographic syllable with a base.
    Syllable,
    /// Khmer marks that do not fit the cluster model: an orphan coeng, marks
    /// with no preceding base, or a second vowel/shifter.
    Malformed,
    /// A run of non-Khmer text (including digits and punctuation).
    Foreign,
    /// A run of zero-width separators.
    ZeroWidth,
}

/// One orthographic syllable, or a pass-through run of other text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KhmerCluster {
    pub base: Option<char>,
    pub subscripts: Vec<char>,
    pub shifter: Option<char>,
    pub diacritics: Vec<char>,
    pub vowel: Option<char>,
    pub raw: String,
    pub kind: ClusterKind,
}

impl KhmerCluster {
    fn empty(kind: ClusterKind) -> Self {
        KhmerCluster {
            base: None,
            subscripts: Vec::new(),
            shifter: None,
            diacritics: Vec::new(),
            vowel: None,
            raw: String::new(),
            kind,
        }
    }

    /// Builds a well-formed cluster from parts; `raw` is the canonical-order
    /// serialization of the parts in the order given.
    pub fn from_parts(
        base: char,
        subscripts: Vec<char>,
        shifter: Option<char>,
        diacritics: Vec<char>,
        vowel: Option<char>,
    ) -> Self {
        let mut c = KhmerCluster {
            base: Some(base),
            subscripts,
            shifter,
            diacritics,
            vowel,
            raw: String::new(),
            kind: ClusterKind::Syllable,
        };
        c.raw = c.serialize_fields();
        c
    }

    pub fn is_well_formed(&self) -> bool {
        self.kind == ClusterKind::Syllable
    }

    pub fn is_khmer(&self) -> bool {
        matches!(self.kind, ClusterKind::Syllable | ClusterKind::Malformed)
    }

    /// Serializes the decomposed fields in canonical slot order without
    /// sorting within slots.
    fn serialize_fields(&self) -> String {
        let mut out = String::with_capacity(self.raw.len().max(8));
        if let Some(b) = self.base {
            out.push(b);
        }
        for &s in &self.subscripts {
            out.push(COENG);
            out.push(s);
        }
        if let Some(sh) = self.shifter {
            out.push(sh);
        }
        out.extend(self.diacritics.iter());
        if let Some(v) = self.vowel {
            out.push(v);
        }
        out
    }

    /// Whether the cluster carries a nucleus: a dependent vowel or a sign that
    /// implies one.
    pub fn has_nucleus(&self) -> bool {
        self.vowel.is_some()
            || self
                .diacritics
                .iter()
                .any(|&d| matches!(d, NIKAHIT | REAHMUK | YUUKALEAPINTU | SAMYOK_SANNYA))
    }
}

/// Splits text into clusters. Concatenating every cluster's `raw` gives back
/// the input unchanged.
pub fn segment_clusters(text: &str) -> Vec<KhmerCluster> {
    let mut out: Vec<KhmerCluster> = Vec::new();
    let mut cur: Option<KhmerCluster> = None;
    let mut chars = text.chars().peekable();

    while let Some(c) = chars.next() {
        if is_cluster_base(c) {
            out.extend(cur.take());
            let mut cl = KhmerCluster::empty(ClusterKind::Syllable);
            cl.base = Some(c);
            cl.raw.push(c);
            cur = Some(cl);
            continue;
        }

        if is_cluster_mark(c) {
            let cl = match cur.as_mut() {
                Some(cl) if cl.is_khmer() => cl,
                _ => {
                    out.extend(cur.take());
                    cur.insert(KhmerCluster::empty(ClusterKind::Malformed))
                }
            };
            cl.raw.push(c);
            if cl.kind == ClusterKind::Malformed {
                // Absorb a following subscript consonant so it does not start a
                // spurious cluster.
                if c == COENG {
                    if let Some(&next) = chars.peek() {
                        if classify_codepoint(next) == CodepointClass::BaseConsonant {
                            cl.raw.push(next);
                            chars.next();
                        }
                    }
                }
                continue;
            }
            match classify_codepoint(c) {
                CodepointClass::Coeng => match chars.peek() {
                    Some(&next) if classify_codepoint(next) == CodepointClass::BaseConsonant => {
                        cl.raw.push(next);
                        cl.subscripts.push(next);
                        chars.next();
                    }
                    _ => cl.kind = ClusterKind::Malformed,
                },
                CodepointClass::RegisterShifter => {
                    if cl.shifter.is_some() {
                        cl.kind = ClusterKind::Malformed;
                    } else {
                        cl.shifter = Some(c);
                    }
                }
                CodepointClass::DependentVowel => {
                    if cl.vowel.is_some() {
                        cl.kind = ClusterKind::Malformed;
                    } else {
                        cl.vowel = Some(c);
                    }
                }
                _ => cl.diacritics.push(c),
            }
            continue;
        }

        let kind = if is_zero_width(c) {
            ClusterKind::ZeroWidth
        } else {
            ClusterKind::Foreign
        };
        match cur.as_mut() {
            Some(cl) if cl.kind == kind => cl.raw.push(c),
            _ => {
                out.extend(cur.take());
                let mut cl = KhmerCluster::empty(kind);
                cl.raw.push(c);
                cur = Some(cl);
            }
        }
    }
    out.extend(cur);
    out
}

/// Returns the canonical form of a well-formed cluster. Anything else comes
/// back unchanged.
pub fn normalize_cluster(c: &KhmerCluster) -> KhmerCluster {
    if !c.is_well_formed() || c.base.is_none() {
        return c.clone();
    }
    let mut n = c.clone();
    n.subscripts.sort_unstable();
    n.diacritics.sort_unstable();
    n.raw = n.serialize_fields();
    n
}

/// Normalizes character order cluster by cluster. Zero-width spaces and
/// non-joiners are removed first; non-Khmer text and malformed clusters pass
/// through untouched.
pub fn normalize_text(text: &str) -> String {
    let stripped: String = if text.chars().any(is_zero_width) {
        text.chars().filter(|&c| !is_zero_width(c)).collect()
    } else {
        text.to_owned()
    };
    let mut out = String::with_capacity(stripped.len());
    for cl in segment_clusters(&stripped) {
        if cl.is_well_formed() {
            out.push_str(&normalize_cluster(&cl).raw);
        } else {
            out.push_str(&cl.raw);
        }
    }
    out
}

/// Khmer clusters of an already-normalized word, with non-Khmer runs dropped.
pub fn khmer_units(word: &str) -> Vec<KhmerCluster> {
    segment_clusters(&normalize_text(word))
        .into_iter()
        .filter(KhmerCluster::is_khmer)
        .collect()
}

pub fn contains_khmer(text: &str) -> bool {
    text.chars().any(|c| {
        matches!(
            classify_codepoint(c),
            CodepointClass::BaseConsonant | CodepointClass::IndependentVowel
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_ranges() {
        assert_eq!(classify_codepoint('ស'), CodepointClass::BaseConsonant);
        assert_eq!(classify_codepoint(COENG), CodepointClass::Coeng);
        assert_eq!(classify_codepoint('A'), CodepointClass::Other);
        assert_eq!(classify_codepoint('\u{17A3}'), CodepointClass::Other);
        assert_eq!(classify_codepoint('ឥ'), CodepointClass::IndependentVowel);
        assert_eq!(classify_codepoint('ា'), CodepointClass::DependentVowel);
        assert_eq!(classify_codepoint('៉'), CodepointClass::RegisterShifter);
        assert_eq!(classify_codepoint('៊'), CodepointClass::RegisterShifter);
        assert_eq!(classify_codepoint('ំ'), CodepointClass::DiacriticSign);
        assert_eq!(classify_codepoint('៓'), CodepointClass::DiacriticSign);
        assert_eq!(classify_codepoint('\u{17DD}'), CodepointClass::DiacriticSign);
        assert_eq!(classify_codepoint('។'), CodepointClass::Other);
        assert_eq!(classify_codepoint('៥'), CodepointClass::Digit);
    }

    #[test]
    fn segments_school() {
        let cl = segment_clusters("សាលា");
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].base, Some('ស'));
        assert_eq!(cl[0].vowel, Some('ា'));
        assert_eq!(cl[1].base, Some('ល'));
        assert_eq!(cl[1].vowel, Some('ា'));
    }

    #[test]
    fn segments_three_consonant_stack() {
        let cl = segment_clusters("ស្ត្រី");
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].base, Some('ស'));
        assert_eq!(cl[0].subscripts, vec!['ត', 'រ']);
        assert_eq!(cl[0].vowel, Some('ី'));
        assert!(cl[0].is_well_formed());
    }

    #[test]
    fn empty_input() {
        assert!(segment_clusters("").is_empty());
        assert_eq!(normalize_text(""), "");
    }

    #[test]
    fn orphan_coeng_is_malformed() {
        let cl = segment_clusters("ក្");
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].kind, ClusterKind::Malformed);
        assert_eq!(cl[0].raw, "ក្");
        assert_eq!(normalize_text("ក្ x"), "ក្ x");
    }

    #[test]
    fn leading_vowel_is_malformed() {
        let cl = segment_clusters("ាក");
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].kind, ClusterKind::Malformed);
        assert_eq!(cl[0].base, None);
        assert_eq!(cl[1].base, Some('ក'));
    }

    #[test]
    fn foreign_runs_pass_through() {
        let cl = segment_clusters("hello ស្ត្រី!");
        assert_eq!(cl.len(), 3);
        assert_eq!(cl[0].kind, ClusterKind::Foreign);
        assert_eq!(cl[0].raw, "hello ");
        assert_eq!(cl[2].raw, "!");
        assert_eq!(normalize_text("hello ស្រ្តី"), "hello ស្ត្រី");
    }

    #[test]
    fn subscript_order_collapses() {
        let a = "ស\u{17D2}\u{179A}\u{17D2}\u{178F}\u{17B8}";
        let b = "ស\u{17D2}\u{178F}\u{17D2}\u{179A}\u{17B8}";
        let c = "ស\u{17B8}\u{17D2}\u{178F}\u{17D2}\u{179A}";
        assert_ne!(a, b);
        assert_eq!(normalize_text(a), normalize_text(b));
        assert_eq!(normalize_text(c), normalize_text(b));
        assert_eq!(normalize_text(a), b);
    }

    #[test]
    fn normalize_cluster_sorts_subscripts() {
        let c = KhmerCluster::from_parts('ស', vec!['រ', 'ត'], None, vec![], Some('ី'));
        let n = normalize_cluster(&c);
        assert_eq!(n.raw, "ស\u{17D2}ត\u{17D2}រ\u{17B8}");
        assert_eq!(n.subscripts, vec!['ត', 'រ']);

        let plain = KhmerCluster::from_parts('ក', vec![], None, vec![], Some('ា'));
        assert_eq!(normalize_cluster(&plain), plain);
    }

    #[test]
    fn diacritics_precede_vowel() {
        // ចាំ: vowel then nikahit as typed, nikahit then vowel canonically
        assert_eq!(normalize_text("ចាំ"), "ច\u{17C6}\u{17B6}");
        assert_eq!(normalize_text("ច\u{17C6}\u{17B6}"), "ច\u{17C6}\u{17B6}");
    }

    #[test]
    fn zero_width_handling() {
        let t = "សាលា\u{200B}រៀន";
        let joined: String = segment_clusters(t).iter().map(|c| c.raw.as_str()).collect();
        assert_eq!(joined, t);
        assert_eq!(normalize_text(t), "សាលារៀន");
        // a zero-width space typed inside a cluster does not orphan the coeng
        assert_eq!(normalize_text("ស\u{200B}\u{17D2}ត\u{17B8}"), "ស\u{17D2}ត\u{17B8}");
    }

    #[test]
    fn second_vowel_flags_cluster() {
        let cl = segment_clusters("កេា");
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].kind, ClusterKind::Malformed);
        assert_eq!(normalize_text("កេា"), "កេា");
    }

    #[test]
    fn has_nucleus_counts_signs() {
        let cl = &segment_clusters("ចំ")[0];
        assert!(cl.has_nucleus());
        let cl = &segment_clusters("ត់")[0];
        assert!(!cl.has_nucleus());
    }
}
