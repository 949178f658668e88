use crate::script::{normalize_text, segment_clusters, ClusterKind};

pub const BOW: &str = "<";
pub const EOW: &str = ">";

/// Subword units of a word: one per Khmer cluster, one per character of any
/// non-Khmer run, wrapped in boundary markers.
pub fn marked_units(word: &str) -> Vec<String> {
    let mut units = vec![BOW.to_owned()];
    for cl in segment_clusters(&normalize_text(word)) {
        match cl.kind {
            ClusterKind::Syllable | ClusterKind::Malformed => units.push(cl.raw),
            ClusterKind::Foreign => units.extend(cl.raw.chars().filter(|c| !c.is_whitespace()).map(String::from)),
            ClusterKind::ZeroWidth => {}
        }
    }
    units.push(EOW.to_owned());
    units
}

/// All contiguous runs of `min_n..=max_n` marked units, shortest first and
/// left to right, excluding the whole marked word.
pub fn extract_ngrams(word: &str, min_n: usize, max_n: usize) -> Vec<String> {
    let units = marked_units(word);
    if units.len() <= 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n in min_n.max(1)..=max_n {
        if n > units.len() {
            break;
        }
        for start in 0..=units.len() - n {
            if n == units.len() {
                continue;
            }
            out.push(units[start..start + n].concat());
        }
    }
    out
}

/// 32-bit FNV-1a, as used for bucket hashing by the reference subword model.
pub fn fnv1a(s: &str) -> u32 {
    let mut h: u32 = 2166136261;
    for &b in s.as_bytes() {
        h ^= u32::from(b);
        h = h.wrapping_mul(16777619);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn school_unigrams_and_bigrams() {
        let got = extract_ngrams("សាលា", 1, 2);
        assert_eq!(got, vec!["<", "សា", "លា", ">", "<សា", "សាលា", "លា>"]);
    }

    #[test]
    fn single_cluster_bigrams() {
        assert_eq!(extract_ngrams("ក", 2, 2), vec!["<ក", "ក>"]);
        assert_eq!(extract_ngrams("ក", 1, 1), vec!["<", "ក", ">"]);
        // the whole marked word is never emitted
        assert_eq!(extract_ngrams("ក", 3, 3), Vec::<String>::new());
    }

    #[test]
    fn empty_word_has_none() {
        assert!(extract_ngrams("", 1, 4).is_empty());
    }

    #[test]
    fn shared_ngrams_away_from_differing_unit() {
        // same clusters except the last one
        let a: BTreeSet<String> = extract_ngrams("សាលារៀន", 1, 3).into_iter().collect();
        let b: BTreeSet<String> = extract_ngrams("សាលាភៅ", 1, 3).into_iter().collect();
        let a_units = marked_units("សាលារៀន");
        for n in 1..=3 {
            for s in 0..=a_units.len() - n {
                let run = &a_units[s..s + n];
                if !run.iter().any(|u| u == "រៀ" || u == "ន") {
                    let g = run.concat();
                    assert!(b.contains(&g), "{g} missing");
                }
            }
        }
        assert!(!b.contains("រៀ"));
        assert!(a.contains("រៀ"));
    }

    #[test]
    fn normalizes_before_splitting() {
        assert_eq!(extract_ngrams("ស្រ្តី", 1, 2), extract_ngrams("ស្ត្រី", 1, 2));
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(""), 0x811c9dc5);
        assert_eq!(fnv1a("a"), 0xe40c292c);
    }
}
