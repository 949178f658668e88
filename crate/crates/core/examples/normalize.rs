//! Cluster segmentation and character-order normalization.
//!
//!     cargo run --example normalize [-- TEXT]

use khmer_search::script::{normalize_text, segment_clusters};

fn codepoints(s: &str) -> String {
    s.chars().map(|c| format!("U+{:04X}", c as u32)).collect::<Vec<_>>().join(" ")
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        // three typings of the same visible word
        vec![
            "ស\u{17D2}ត\u{17D2}រ\u{17B8}".to_owned(),
            "ស\u{17D2}រ\u{17D2}ត\u{17B8}".to_owned(),
            "ស\u{17B8}\u{17D2}ត\u{17D2}រ".to_owned(),
        ]
    } else {
        args
    };
    for text in &inputs {
        let norm = normalize_text(text);
        println!("input       {text}  [{}]", codepoints(text));
        println!("normalized  {norm}  [{}]", codepoints(&norm));
        for cl in segment_clusters(text) {
            println!("  {:<10} {:?}", cl.raw, cl.kind);
        }
    }
    if inputs.len() > 1 {
        let first = normalize_text(&inputs[0]);
        let same = inputs.iter().all(|t| normalize_text(t) == first);
        println!("all inputs normalize to one string: {same}");
    }
}
