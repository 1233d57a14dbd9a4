//! Index of <S> in G x G by coset enumeration, with and without the
//! diagonal copies (a_i, a_i) of the kernel generators.
//!
//!     cargo run --release --example fibre_index -- Trivial32 1000000

use fpforge::fibre::kernel_diagonal;
use fpforge::pipeline::{load_corpus, run_pipeline, PipelineOptions};
use fpforge::probe::{todd_coxeter, Strategy};

fn main() -> fpforge::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "Trivial32".into());
    let limit: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let a = run_pipeline(&load_corpus(&name)?, &PipelineOptions::default())?;

    let s = a.fibre_gens.elements.clone();
    let mut full = s.clone();
    full.extend(kernel_diagonal(&a.doubled, &a.rips));
    for (what, sub) in [("S", &s), ("S + (a_i,a_i)", &full)] {
        let t = std::time::Instant::now();
        let table = todd_coxeter(a.gamma(), sub, limit, Strategy::Hlt)?;
        println!("{name}: [Gamma : <{what}>] {:?} ({:?})", table.index().ok_or(table.status), t.elapsed());
    }
    Ok(())
}
