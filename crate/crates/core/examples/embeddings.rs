//! Trains subword embeddings on the demo corpus, then prints neighbors and a
//! vector for a word the model never saw.
//!
//!     cargo run --release --example embeddings [-- WORD]

use khmer_search::data;
use khmer_search::embedding::{cosine, save_vectors};

fn main() -> khmer_search::Result<()> {
    env_logger::init();
    let word = std::env::args().nth(1).unwrap_or_else(|| "ចម្រៀង".to_owned());
    let res = data::resources();
    let cfg = data::demo_embedding_config();
    let model = data::train_demo_embedding(&res.segmenter, &cfg)?;
    println!(
        "vocabulary {} words, loss {:.3} -> {:.3}",
        model.vocab().len(),
        model.epoch_losses()[0],
        model.epoch_losses().last().copied().unwrap_or_default()
    );

    println!("neighbors of {word}:");
    for (n, sim) in model.nearest_neighbors(&word, 5)? {
        println!("  {n}  {sim:.3}");
    }

    // a misspelling is out of vocabulary but still has n-grams
    let oov = "ចាំរៀង";
    let v = model.vector_of(oov)?;
    let sim = cosine(&v, &model.vector_of("ចំរៀង")?)?;
    println!("{oov} is in vocabulary: {}; cosine to ចំរៀង {sim:.3}", model.contains(oov));

    let dir = std::env::temp_dir().join("khmer-search-example.vec");
    save_vectors(&model, &dir)?;
    println!("vectors written to {}", dir.display());
    Ok(())
}
