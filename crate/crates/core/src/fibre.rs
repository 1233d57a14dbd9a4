//! Direct squares `G x G`, the fibre-product generating set, and the
//! homology obstruction to injectivity on profinite completions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::{big_to_json, complex_h2_rank, left_kernel_basis};
use crate::presentation::Presentation;
use crate::rips::RipsResult;
use crate::word::{commutator, Alphabet, Word};

#[derive(Clone, Debug)]
pub struct DoubledPresentation {
    pub presentation: Presentation,
    /// Index in the doubled alphabet of each input generator, left copy.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub commutator_count: usize,
}

impl DoubledPresentation {
    pub fn embed_left(&self, w: &Word) -> Word {
        w.relabel(|g| self.left[g])
    }

    pub fn embed_right(&self, w: &Word) -> Word {
        w.relabel(|g| self.right[g])
    }

    pub fn embed_pair(&self, left: &Word, right: &Word) -> Word {
        self.embed_left(left).mul(&self.embed_right(right))
    }
}

/// `<X_L, X_R | R_L, R_R, [x_L, y_R] for all x, y>`.
pub fn double(p: &Presentation) -> Result<DoubledPresentation> {
    let l = p.rename_disjoint("_L")?;
    let r = p.rename_disjoint("_R")?;
    let g = p.num_gens();
    let mut names = l.alphabet().names().to_vec();
    names.extend(r.alphabet().names().iter().cloned());
    let alphabet = Alphabet::new(names)?;
    let left: Vec<usize> = (0..g).collect();
    let right: Vec<usize> = (g..2 * g).collect();
    let mut relators: Vec<Word> = p.relators().iter().map(|w| w.relabel(|i| left[i])).collect();
    relators.extend(p.relators().iter().map(|w| w.relabel(|i| right[i])));
    for &x in &left {
        for &y in &right {
            relators.push(commutator(&Word::gen(x), &Word::gen(y)));
        }
    }
    let label = p.derived_label("double");
    let presentation = if p.permits_identity() {
        Presentation::with_identity_relators(alphabet, relators, label)?
    } else {
        Presentation::new(alphabet, relators, label)?
    };
    Ok(DoubledPresentation { presentation, left, right, commutator_count: g * g })
}

/// `a1, a2, a3` followed by the central words, as words of the Rips group.
pub fn kernel_generators(central_words: &[Word], rips: &RipsResult) -> Result<Vec<Word>> {
    let y = rips.ses.quotient.num_gens();
    if let Some(w) = central_words.iter().find(|w| w.max_gen().is_some_and(|g| g >= y)) {
        return Err(Error::AlphabetMismatch(format!(
            "central word {} uses a generator outside the {y} generators of the Rips quotient",
            rips.ses.quotient.print(w)
        )));
    }
    let mut out = rips.ses.kernel_subgroup_gens.clone();
    out.extend(central_words.iter().cloned());
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FibreGenSet {
    /// `(k, 1)` for each kernel generator, then `(x, x)` for each base generator.
    pub pairs: Vec<(Word, Word)>,
    /// The pairs as words in the doubled alphabet.
    pub elements: Vec<Word>,
    pub size: usize,
}

#[derive(Serialize)]
pub struct FibrePairJson {
    pub left: String,
    pub right: String,
    pub word: String,
}

impl FibreGenSet {
    /// Pair form rendered over the factor alphabet, with the flattened word.
    pub fn to_json(&self, factor: &Presentation, doubled: &DoubledPresentation) -> Vec<FibrePairJson> {
        self.pairs
            .iter()
            .zip(&self.elements)
            .map(|((l, r), w)| FibrePairJson { left: factor.print(l), right: factor.print(r), word: doubled.presentation.print(w) })
            .collect()
    }
}

pub fn fibre_generators(doubled: &DoubledPresentation, kernel_gens: &[Word], base_gens: &[Word]) -> FibreGenSet {
    let mut pairs: Vec<(Word, Word)> = kernel_gens.iter().map(|k| (k.clone(), Word::identity())).collect();
    pairs.extend(base_gens.iter().map(|x| (x.clone(), x.clone())));
    let elements: Vec<Word> = pairs.iter().map(|(l, r)| doubled.embed_pair(l, r)).collect();
    FibreGenSet { size: pairs.len(), pairs, elements }
}

/// `(a_i, a_i)` for the three kernel generators. With these added, `S` spans
/// all of `(N x 1) . diag(G)`; without them only `(N x 1) . diag(<X>)`.
pub fn kernel_diagonal(doubled: &DoubledPresentation, rips: &RipsResult) -> Vec<Word> {
    rips.kernel_indices().iter().map(|&k| doubled.embed_pair(&Word::gen(k), &Word::gen(k))).collect()
}

/// A surjection `Z^rank -> Z/2` on the second homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Witness {
    pub description: String,
    /// Basis of `H_2` of the presentation complex: integer relations among relators.
    #[serde(serialize_with = "ser_rows")]
    pub h2_basis: Vec<Vec<BigInt>>,
    /// Image in `Z/2` of each basis vector.
    pub map: Vec<u8>,
    pub fibre_quotient: String,
}

fn ser_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    rows.iter().map(|r| r.iter().map(big_to_json).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
}

impl Z2Witness {
    /// Image in `Z/2` of a homology class given by its coordinates in the basis.
    pub fn evaluate(&self, coords: &[BigInt]) -> u8 {
        let s: BigInt = coords.iter().zip(&self.map).map(|(c, &m)| c * BigInt::from(m)).sum();
        s.mod_floor(&BigInt::from(2)).to_u8().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyWitness {
    pub complex_h2_rank: usize,
    pub aspherical_asserted: bool,
    pub witness: Option<Z2Witness>,
}

pub fn homology_witness(q: &Presentation, aspherical_asserted: bool) -> HomologyWitness {
    let rank = complex_h2_rank(q);
    let witness = (rank > 0 && aspherical_asserted).then(|| {
        let basis = left_kernel_basis(q.exponent_matrix().matrix());
        debug_assert_eq!(basis.len(), rank);
        let mut map = vec![0u8; rank];
        map[0] = 1;
        Z2Witness {
            description: format!("N/I = H_2 = Z^{rank} ->> Z/2, first basis class to 1"),
            h2_basis: basis,
            map,
            fibre_quotient: "P/(I x I) = H_2 x Q~ ->> Z/2 through the H_2 factor".into(),
        }
    });
    HomologyWitness { complex_h2_rank: rank, aspherical_asserted, witness }
}

/// Whether `coords * M = 0`, i.e. the coordinates describe a 2-cycle.
pub fn is_two_cycle(q: &Presentation, coords: &[BigInt]) -> bool {
    q.exponent_matrix().matrix().left_mul_vec(coords).iter().all(Zero::is_zero)
}
