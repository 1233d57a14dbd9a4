//! Profinite comparison evidence for the fibre product in the A5 branch.

use fpforge::pipeline::{load_corpus, run_pipeline, seed_hom, PipelineOptions};
use fpforge::probe::compare_completions;

fn main() -> fpforge::Result<()> {
    let a = run_pipeline(&load_corpus("A5")?, &PipelineOptions::default())?;
    let lambda = seed_hom(&a.seed, 5).expect("A5 acts on 5 points");
    let hom = a.canonical_hom(&lambda);
    print!("{}", hom.to_text(a.gamma()));
    let r = compare_completions(a.gamma(), &a.fibre_gens.elements, 0, Some(&[hom]))?;
    let w = r.witness.as_ref().expect("diagonal is proper");
    println!("{:?}: subgroup image {} inside {}", r.verdict, w.subgroup_order, w.group_order);
    Ok(())
}
