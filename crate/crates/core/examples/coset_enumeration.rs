//! Todd-Coxeter, HLT with lookahead against Felsch.

use fpforge::presentation::Presentation;
use fpforge::probe::{perm_group_order, todd_coxeter, Strategy};

fn main() -> fpforge::Result<()> {
    let p = Presentation::parse("gens: a b\na^2\nb^3\n(a b)^5")?;
    for (sub, name) in [(vec![], "1"), (vec![p.word("b")?], "<b>"), (vec![p.word("a")?, p.word("b a b^-1")?], "D5")] {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = todd_coxeter(&p, &sub, 10_000, s)?;
            println!("[A5 : {name:3}] {s:?}: {:?}", t.index());
        }
    }
    let t = todd_coxeter(&p, &[], 10_000, Strategy::Hlt)?;
    println!("order of the coset action: {}", perm_group_order(&t.action));
    println!("with 10 cosets: {:?}", todd_coxeter(&p, &[], 10, Strategy::Hlt)?.status);
    Ok(())
}
