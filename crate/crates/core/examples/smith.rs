//! Smith normal form, integer solving, abelianization and H_2 of the 2-complex.

use fpforge::intlinalg::{abelian_invariants, complex_h2_rank, snf, solve_left, IntMatrix};
use fpforge::pipeline::load_corpus;
use num_bigint::BigInt;

fn main() -> fpforge::Result<()> {
    let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    let s = snf(&m);
    println!("D = {:?}, invariant factors {:?}", s.d, s.invariant_factors);
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);

    let a5 = load_corpus("A5")?;
    let rows = a5.exponent_matrix().matrix().clone();
    let b = [BigInt::from(1), BigInt::from(0)];
    let n = solve_left(&rows, &b)?.expect("perfect, so e_x is in the row lattice");
    println!("n * M = (1, 0) with n = {n:?}");
    println!("[[2]] x = 1 solvable: {}", solve_left(&IntMatrix::from_rows(&[vec![2]]), &[BigInt::from(1)])?.is_some());

    for name in ["A5", "Higman", "Trivial32"] {
        let p = load_corpus(name)?;
        println!("{name:10} H_1 = {:8}  h2 rank of complex = {}", abelian_invariants(&p).to_string(), complex_h2_rank(&p));
    }
    Ok(())
}
