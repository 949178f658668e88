//! Transcription (dictionary first, rules otherwise) and homophone lookup.
//!
//!     cargo run --example g2p_homophones [-- WORD...]

use khmer_search::data;
use khmer_search::g2p::{homophones, transcribe};

fn main() {
    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = ["ចំរៀង", "ជ័យជំនះ", "សំលៀកបំពាក់", "ចាំរៀង", "កំសាន"]
            .map(str::to_owned)
            .to_vec();
    }
    let pd = data::prondict();
    for w in &words {
        match transcribe(w, &pd) {
            Ok(p) => {
                let h: Vec<String> = homophones(w, &pd).into_iter().collect();
                println!("{w}\t/{p}/\t{:?}\thomophones: {}", p.source, h.join(", "));
            }
            Err(e) => println!("{w}\terror: {e}"),
        }
    }
}
