mod common;

use khmer_search::data;
use khmer_search::g2p::{homophones, transcribe};
use khmer_search::pipeline::{expand, ExpansionConfig, Provenance, Resources};
use khmer_search::script::normalize_text;

use common::osa_oracle;

fn resources() -> Resources {
    data::resources()
}

#[test]
fn homophones_are_symmetric() {
    let pd = data::prondict();
    let mut pairs = 0;
    for (w, _) in pd.entries() {
        for h in homophones(w, &pd) {
            assert_ne!(h, w);
            assert!(homophones(&h, &pd).contains(w), "{w} -> {h}");
            assert_eq!(transcribe(&h, &pd).unwrap(), transcribe(w, &pd).unwrap());
            pairs += 1;
        }
    }
    assert!(pairs >= 14, "{pairs}");
}

#[test]
fn expansion_is_deterministic() {
    let res = resources();
    let cfg = ExpansionConfig {
        enable_semantic: false,
        ..Default::default()
    };
    for q in data::queries() {
        assert_eq!(expand(&q, &res, &cfg), expand(&q, &res, &cfg), "{q}");
    }
}

#[test]
fn disabled_keeps_only_query_tokens() {
    let res = resources();
    for q in data::queries() {
        let e = expand(&q, &res, &ExpansionConfig::disabled());
        assert!(!e.is_empty());
        for t in &e.terms {
            assert!(matches!(t.provenance, Provenance::Normalized | Provenance::Original));
            assert_eq!(normalize_text(&t.term), t.term);
        }
    }
}

#[test]
fn provenance_is_sound() {
    let res = resources();
    let pd = &res.prondict;
    let cfg = ExpansionConfig {
        enable_semantic: false,
        ..Default::default()
    };
    for q in data::queries() {
        let e = expand(&q, &res, &cfg);
        let first = &e.terms[0];
        let qn: Vec<char> = normalize_text(&q).chars().collect();
        assert_eq!(first.term, normalize_text(&q));
        let mut seen = vec![first.term.clone()];
        for t in &e.terms[1..] {
            match t.provenance {
                Provenance::GraphemeCorrection => {
                    assert!(res.lexicon.contains(&t.term));
                    let d = osa_oracle(&qn, &t.term.chars().collect::<Vec<_>>());
                    assert_eq!(Some(d as f64), t.score, "{q} -> {}", t.term);
                    assert!(d <= 2);
                }
                Provenance::PhonemeCorrection => assert!(res.lexicon.contains(&t.term)),
                Provenance::Homophone => {
                    let p = transcribe(&t.term, pd).unwrap();
                    assert!(
                        seen.iter().any(|s| transcribe(s, pd).ok().as_ref() == Some(&p)),
                        "{q}: {} has no earlier homophone",
                        t.term
                    );
                }
                other => panic!("{q}: unexpected {other:?} for {}", t.term),
            }
            assert!(!seen.contains(&t.term));
            seen.push(t.term.clone());
        }
    }
}

#[test]
fn corrections_capped() {
    let res = resources();
    let cfg = ExpansionConfig {
        enable_semantic: false,
        enable_homophones: false,
        max_corrections: 1,
        ..Default::default()
    };
    let e = expand("ចាំរៀង", &res, &cfg);
    let corrections = e
        .terms
        .iter()
        .filter(|t| matches!(t.provenance, Provenance::GraphemeCorrection | Provenance::PhonemeCorrection))
        .count();
    assert_eq!(corrections, 1);
}

#[test]
fn semantic_neighbors_respect_threshold() {
    let res = resources();
    let seg = res.segmenter.clone();
    let res = res.with_embedding(data::train_demo_embedding(&seg, &data::demo_embedding_config()).unwrap());
    let cfg = ExpansionConfig {
        min_similarity: 0.6,
        max_neighbors: 2,
        post_spellcheck_neighbors: false,
        ..Default::default()
    };
    let e = expand("ចម្រៀង", &res, &cfg);
    let neighbors: Vec<_> = e.terms.iter().filter(|t| t.provenance == Provenance::SemanticNeighbor).collect();
    assert!(!neighbors.is_empty());
    for n in neighbors {
        assert!(n.score.unwrap() >= 0.6);
    }
}
