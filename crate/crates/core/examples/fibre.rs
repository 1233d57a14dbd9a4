//! Doubling, the kernel and fibre-product generators, and the H_2 witness.

use fpforge::fibre::{double, fibre_generators, homology_witness, kernel_generators};
use fpforge::pipeline::load_corpus;
use fpforge::rips::rips_wise;
use fpforge::uce::universal_central_extension;
use fpforge::word::Word;

fn main() -> fpforge::Result<()> {
    let seed = load_corpus("A5")?;
    let uce = universal_central_extension(&seed)?;
    let rips = rips_wise(&uce.presentation)?;
    let d = double(&rips.presentation)?;
    println!("G x G: {} gens, {} relators ({} commutators)", d.presentation.num_gens(), d.presentation.num_relators(), d.commutator_count);

    let n = kernel_generators(&uce.central_words, &rips)?;
    let base: Vec<Word> = (0..seed.num_gens()).map(Word::gen).collect();
    let s = fibre_generators(&d, &n, &base);
    println!("S has {} elements:", s.size);
    for e in s.to_json(&rips.presentation, &d) {
        println!("  ({}, {})  =  {}", e.left, e.right, e.word);
    }

    for asserted in [false, true] {
        let w = homology_witness(&seed, asserted);
        println!("aspherical asserted {asserted}: rank {}, witness {:?}", w.complex_h2_rank, w.witness.map(|z| z.description));
    }
    Ok(())
}
