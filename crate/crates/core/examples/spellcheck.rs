//! Grapheme and phonemic suggestions for a word, and the merged list the
//! query pipeline uses.
//!
//!     cargo run --example spellcheck [-- WORD]

use khmer_search::data;

fn main() {
    let word = std::env::args().nth(1).unwrap_or_else(|| "ចាំរៀង".to_owned());
    let res = data::resources();

    println!("grapheme suggestions for {word}:");
    for s in res.grapheme.lookup(&word, 2, 10) {
        println!("  {}  distance {}  frequency {}", s.word, s.distance, s.frequency);
    }
    println!("phonemic suggestions:");
    for s in res.phonemes.lookup(&word, 10) {
        println!("  {}  distance {}  frequency {}", s.word, s.distance, s.frequency);
    }
    println!("merged:");
    for c in res.corrections(&word) {
        println!("  {}  {}  distance {}", c.word, c.provenance.as_str(), c.distance);
    }
}
