//! Presentations of universal central extensions of perfect groups.
//!
//! For a perfect group `<A | B>` the output is `<A | [x, b] (x in A, b in B), rho_x (x in A)>`
//! where `rho_x` is a product of powers of the input relators whose exponent
//! vector is the basis vector `e_x`. The commutators make every `b` central;
//! the `rho_x` cut the free abelian part of the relation module down to the
//! Schur multiplier. The input relators remain central and generate the
//! kernel of the map onto the input group.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::{abelian_invariants, snf, solve_left_with};
use crate::presentation::Presentation;
use crate::word::{commutator, Word};

/// How an output relator was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelatorTag {
    /// `[x, b]` with `x = gen` and `b` the input relator `relator`.
    Commutator { gen: usize, relator: usize },
    /// `rho_gen`, a product of powers of input relators.
    RelatorPower { gen: usize },
}

#[derive(Clone, Debug)]
pub struct UceResult {
    pub presentation: Presentation,
    /// The input relators; their images are central and generate the kernel.
    pub central_words: Vec<Word>,
    /// Per generator `x`, the row `n_x` with `rho_x = prod_i b_i^{n_x[i]}`.
    pub solver_exponents: Vec<Vec<BigInt>>,
    pub tags: Vec<RelatorTag>,
}

pub fn is_perfect(p: &Presentation) -> bool {
    abelian_invariants(p).is_trivial()
}

pub fn universal_central_extension(p: &Presentation) -> Result<UceResult> {
    if !is_perfect(p) {
        return Err(Error::NotPerfect(p.label().to_string()));
    }
    let gens = p.num_gens();
    let bars = p.relators();
    let m = p.exponent_matrix();
    let decomposition = snf(m.matrix());

    let mut relators = Vec::with_capacity(gens * (1 + bars.len()));
    let mut tags = Vec::with_capacity(relators.capacity());
    for x in 0..gens {
        let xw = Word::gen(x);
        for (i, b) in bars.iter().enumerate() {
            relators.push(commutator(&xw, b));
            tags.push(RelatorTag::Commutator { gen: x, relator: i });
        }
    }

    let kernel: Vec<Vec<BigInt>> = (decomposition.rank..m.matrix().rows()).map(|i| decomposition.u.row(i).to_vec()).collect();
    let weights: Vec<usize> = bars.iter().map(Word::len).collect();
    let mut solver_exponents = Vec::with_capacity(gens);
    for x in 0..gens {
        let mut e = vec![BigInt::zero(); gens];
        e[x] = BigInt::one();
        let n = solve_left_with(&decomposition, &e).ok_or(Error::InternalSolveFailure(x))?;
        let n = shorten(n, &kernel, &weights);
        let mut rho = Word::identity();
        for (b, k) in bars.iter().zip(&n) {
            let k = k.to_i64().ok_or_else(|| Error::ExponentOverflow(k.to_string()))?;
            rho.append(&b.pow(k));
        }
        relators.push(rho);
        tags.push(RelatorTag::RelatorPower { gen: x });
        solver_exponents.push(n);
    }

    let presentation = Presentation::with_identity_relators(p.alphabet().clone(), relators, p.derived_label("uce"))?;
    Ok(UceResult { presentation, central_words: bars.to_vec(), solver_exponents, tags })
}

/// Greedy size reduction of a solution against the left kernel: moves along
/// each kernel vector while the weighted exponent norm decreases. Any element
/// of `n + kernel` is an equally valid solution.
fn shorten(mut n: Vec<BigInt>, kernel: &[Vec<BigInt>], weights: &[usize]) -> Vec<BigInt> {
    let cost = |v: &[BigInt]| -> BigInt { v.iter().zip(weights).map(|(x, &w)| x.abs() * BigInt::from(w)).sum() };
    let mut best = cost(&n);
    loop {
        let mut improved = false;
        for k in kernel {
            for sign in [1i64, -1] {
                loop {
                    let cand: Vec<BigInt> = n.iter().zip(k).map(|(a, b)| a + b * sign).collect();
                    let c = cost(&cand);
                    if c < best {
                        best = c;
                        n = cand;
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !improved {
            return n;
        }
    }
}

impl UceResult {
    /// Checks that the exponent vector of every `rho_x` is `e_x`.
    pub fn exponent_law_holds(&self) -> bool {
        let p = &self.presentation;
        let gens = p.num_gens();
        p.relators().iter().zip(&self.tags).all(|(r, tag)| match tag {
            RelatorTag::RelatorPower { gen } => (0..gens).all(|j| r.exponent_sum(j) == i64::from(j == *gen)),
            RelatorTag::Commutator { .. } => (0..gens).all(|j| r.exponent_sum(j) == 0),
        })
    }

    /// Re-derives every output relator from its tag and the central words.
    /// Stored relators are cyclic reductions, i.e. conjugates, of the derived words.
    pub fn conservativity_holds(&self) -> bool {
        self.presentation.relators().iter().zip(&self.tags).all(|(r, tag)| match *tag {
            RelatorTag::Commutator { gen, relator } => {
                *r == commutator(&Word::gen(gen), &self.central_words[relator]).cyclic_reduce().0
            }
            RelatorTag::RelatorPower { gen } => {
                let mut rho = Word::identity();
                for (b, k) in self.central_words.iter().zip(&self.solver_exponents[gen]) {
                    rho.append(&b.pow(k.to_i64().unwrap_or(0)));
                }
                rho.cyclic_reduce().0 == *r
            }
        })
    }

    /// The output presentation with the central words added back; it presents
    /// the input group via the identity map on generators.
    pub fn collapse(&self) -> Result<Presentation> {
        let mut rels = self.presentation.relators().to_vec();
        rels.extend(self.central_words.iter().cloned());
        Presentation::with_identity_relators(self.presentation.alphabet().clone(), rels, self.presentation.derived_label("collapsed"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> Presentation {
        Presentation::parse("gens: a b\na^2\nb^3\n(a*b)^5").unwrap()
    }

    #[test]
    fn perfectness() {
        assert!(is_perfect(&a5()));
        let higman = Presentation::parse("gens: a b c d\nb^-1 a b a^-2\nc^-1 b c b^-2\nd^-1 c d c^-2\na^-1 d a d^-2").unwrap();
        assert!(is_perfect(&higman));
        assert!(!is_perfect(&Presentation::parse("gens: a b\n[a,b]").unwrap()));
    }

    #[test]
    fn a5_counts_and_laws() {
        let u = universal_central_extension(&a5()).unwrap();
        assert_eq!(u.presentation.num_gens(), 2);
        assert_eq!(u.presentation.num_relators(), 8);
        assert_eq!(u.presentation.label(), "uce");
        assert!(u.exponent_law_holds());
        assert!(u.conservativity_holds());
        assert!(is_perfect(&u.presentation));
        let m = a5().exponent_matrix();
        for (x, n) in u.solver_exponents.iter().enumerate() {
            let row = m.matrix().left_mul_vec(n);
            assert!(row.iter().enumerate().all(|(j, v)| *v == BigInt::from(i64::from(j == x))));
        }
        // relator order: commutators grouped by generator, then rho_x
        assert_eq!(u.tags[0], RelatorTag::Commutator { gen: 0, relator: 0 });
        assert_eq!(u.tags[3], RelatorTag::Commutator { gen: 1, relator: 0 });
        assert_eq!(u.tags[6], RelatorTag::RelatorPower { gen: 0 });
    }

    #[test]
    fn empty_presentation() {
        let p = Presentation::parse("gens:").unwrap();
        let u = universal_central_extension(&p).unwrap();
        assert_eq!(u.presentation.num_gens(), 0);
        assert_eq!(u.presentation.num_relators(), 0);
    }

    #[test]
    fn rejects_non_perfect() {
        let p = Presentation::parse("gens: a b\n[a,b]").unwrap().with_label("Z2");
        assert_eq!(universal_central_extension(&p).unwrap_err(), Error::NotPerfect("Z2".into()));
    }

    #[test]
    fn trivial_seed_keeps_identity_commutators() {
        let p = Presentation::parse("gens: x y\nx\ny\nx y").unwrap();
        let u = universal_central_extension(&p).unwrap();
        assert_eq!(u.presentation.num_relators(), 8);
        assert!(u.presentation.relators()[0].is_identity());
        assert!(u.exponent_law_holds());
        assert_eq!(u.collapse().unwrap().num_relators(), 11);
    }
}
