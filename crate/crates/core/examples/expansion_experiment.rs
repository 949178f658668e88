//! Hit counts for the bundled queries as expansion stages are switched on
//! one after another.
//!
//!     cargo run --example expansion_experiment [-- --json]

use khmer_search::data;
use khmer_search::pipeline::{incremental_configs, run_experiment};

fn main() -> khmer_search::Result<()> {
    env_logger::init();
    let json = std::env::args().any(|a| a == "--json");

    let res = data::resources();
    let index = data::demo_index(&res.segmenter, true)?;
    let model = data::train_demo_embedding(&res.segmenter, &data::demo_embedding_config())?;
    let res = res.with_embedding(model);

    let report = run_experiment(&index, &data::queries(), &incremental_configs(), &res);
    if json {
        print!("{}", report.to_json_lines());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}
