//! Permutation quotients: homomorphism search, spectra, Schreier-Sims.

use fpforge::pipeline::load_corpus;
use fpforge::probe::{enumerate_homs, perm_group_order, quotient_spectrum, Perm};

fn main() -> fpforge::Result<()> {
    let a5 = load_corpus("A5")?;
    for h in enumerate_homs(&a5, 5, true) {
        println!("a -> {}, b -> {}   image order {}", h.images[0], h.images[1], h.image_order);
    }
    for name in ["A5", "Higman", "Trivial32"] {
        let s = quotient_spectrum(&load_corpus(name)?, 5);
        println!("{name:10} spectrum up to degree 5: {:?}", s.orders().iter().map(|o| o.to_string()).collect::<Vec<_>>());
    }
    let m = [Perm::parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11)?, Perm::parse_cycles("(3 7 11 8)(4 10 5 6)", 11)?];
    println!("|<{}, {}>| = {}", m[0], m[1], perm_group_order(&m));
    Ok(())
}
