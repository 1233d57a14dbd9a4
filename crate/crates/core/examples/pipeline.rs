//! The whole assembly line with its JSON report.
//!
//!     cargo run --example pipeline -- Trivial32

use fpforge::pipeline::{emit_report, load_corpus, run_pipeline, PipelineOptions};

fn main() -> fpforge::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A5".into());
    let a = run_pipeline(&load_corpus(&name)?, &PipelineOptions::default())?;
    eprintln!("{:?}", a.counts);
    println!("{}", emit_report(&a));
    Ok(())
}
