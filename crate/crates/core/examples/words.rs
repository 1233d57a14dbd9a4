//! Free-group words: parsing, reduction, cyclic reduction, commutators.

use fpforge::word::{commutator, parse_word, print_word, reduce, Alphabet, Letter};

fn main() -> fpforge::Result<()> {
    let abc = Alphabet::new(["a", "b", "c"])?;

    let w = parse_word("(a*b)^5", &abc)?;
    println!("(a*b)^5        = {}  ({} letters)", print_word(&w, &abc), w.len());

    let raw = [Letter::new(0, false), Letter::new(1, false), Letter::new(1, true), Letter::new(0, false)];
    println!("a b b^-1 a     = {}", print_word(&reduce(&raw, &abc)?, &abc));

    let v = parse_word("a b c b^-1 a^-1", &abc)?;
    let (core, conj) = v.cyclic_reduce();
    println!("{} = ({}) {} ({})^-1", print_word(&v, &abc), print_word(&conj, &abc), print_word(&core, &abc), print_word(&conj, &abc));

    let (a, b) = (parse_word("a", &abc)?, parse_word("b", &abc)?);
    println!("[a,b]          = {}", print_word(&commutator(&a, &b), &abc));
    println!("[ab,b]         = {}", print_word(&commutator(&a.mul(&b), &b), &abc));
    println!("[a,a]          = {}", print_word(&commutator(&a, &a), &abc));

    match parse_word("a^", &abc) {
        Err(e) => println!("a^             -> {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
