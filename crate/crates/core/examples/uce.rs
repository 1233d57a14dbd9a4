//! Universal central extension of A5: the binary icosahedral group.

use fpforge::pipeline::load_corpus;
use fpforge::probe::{todd_coxeter, Strategy};
use fpforge::uce::universal_central_extension;

fn main() -> fpforge::Result<()> {
    let a5 = load_corpus("A5")?;
    let u = universal_central_extension(&a5)?;
    print!("{}", u.presentation.to_text());
    for (x, n) in u.solver_exponents.iter().enumerate() {
        println!("rho_{} exponents {:?}", a5.alphabet().name(x), n);
    }

    let whole = todd_coxeter(&u.presentation, &[], 100_000, Strategy::Hlt)?;
    let over_kernel = todd_coxeter(&u.presentation, &u.central_words, 100_000, Strategy::Hlt)?;
    println!("|uce| = {:?}, index of the central kernel = {:?}", whole.index(), over_kernel.index());

    let trivial = universal_central_extension(&load_corpus("Trivial32")?)?;
    println!("uce of the trivial seed: {} relators, order {:?}",
        trivial.presentation.num_relators(),
        todd_coxeter(&trivial.presentation, &[], 1000, Strategy::Hlt)?.index());
    Ok(())
}
