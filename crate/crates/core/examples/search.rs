//! Builds the demo index and runs a query with and without expansion.
//!
//!     cargo run --example search [-- QUERY]

use khmer_search::data;
use khmer_search::pipeline::{expand, raw_terms, ExpansionConfig};

fn main() -> khmer_search::Result<()> {
    let query = std::env::args().nth(1).unwrap_or_else(|| "ចំរៀង".to_owned());
    let res = data::resources();
    let index = data::demo_index(&res.segmenter, true)?;
    println!("{} documents, {} terms", index.doc_count(), index.term_count());

    let plain = index.search(&raw_terms(&query, &res, &index));
    println!("{query}: {} hits", plain.hits);
    for (id, score) in plain.ranked.iter().take(3) {
        println!("  {id}  {score:.3}");
    }

    let cfg = ExpansionConfig {
        enable_semantic: false,
        ..Default::default()
    };
    let e = expand(&query, &res, &cfg);
    let expanded = index.search(&e.strings());
    println!("{}: {} hits", e.strings().join(" OR "), expanded.hits);
    for t in &e.terms {
        println!("  {}  {}", t.term, t.provenance.as_str());
    }
    Ok(())
}
