//! Rips construction (Wise's version): every finitely presented `Q` as `G / I`
//! with `G` a C'(1/6) small-cancellation group and `I = <a1, a2, a3>`.

pub mod metric;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Alphabet, Word};

pub use metric::{check_metric_condition, MetricReport, WorstPair};

pub const KERNEL_NAMES: [&str; 3] = ["a1", "a2", "a3"];
pub const BLOCKS_PER_WORD: i64 = 10;
pub const MAX_RETRIES: usize = 5;

/// `1 -> N -> G -> Q -> 1` at the level of presentations.
#[derive(Clone, Debug)]
pub struct SesData {
    pub total: Presentation,
    pub quotient: Presentation,
    /// Image in `quotient`'s alphabet of each generator of `total`.
    pub quotient_map: Vec<Word>,
    pub kernel_subgroup_gens: Vec<Word>,
}

impl SesData {
    pub fn map_to_quotient(&self, w: &Word) -> Word {
        w.substitute(&self.quotient_map)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordParams {
    pub offset: i64,
    pub attempts: usize,
    pub words: usize,
    pub first_block: i64,
    pub last_block: i64,
}

/// Origin of an output relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RipsTag {
    /// `sigma * W^-1` for input relator `relator`.
    Relator { relator: usize },
    /// `y^-1 a_i y W^-1` (`inverse_first`) or `y a_i y^-1 W^-1`.
    Conjugation { gen: usize, kernel: usize, inverse_first: bool },
}

#[derive(Clone, Debug)]
pub struct RipsResult {
    pub presentation: Presentation,
    pub ses: SesData,
    pub word_params: WordParams,
    pub metric: MetricReport,
    pub tags: Vec<RipsTag>,
    pub fresh_words: Vec<Word>,
}

impl RipsResult {
    /// Indices of `a1, a2, a3` in the output alphabet.
    pub fn kernel_indices(&self) -> [usize; 3] {
        let y = self.ses.quotient.num_gens();
        [y, y + 1, y + 2]
    }
}

/// `count` positive words in `a1, a2, a3` (generator indices given by
/// `alphabet3`); word `j` is `B_m` for ten consecutive `m` starting at
/// `offset + 10 j`, with `B_m = a1 a2^m a3^m`.
pub fn generate_sc_words(count: usize, alphabet3: &[usize], offset: i64) -> Result<Vec<Word>> {
    let &[a1, a2, a3] = alphabet3 else {
        return Err(Error::InvalidArgument(format!("need exactly 3 letters, got {}", alphabet3.len())));
    };
    if offset < 2 {
        return Err(Error::InvalidArgument(format!("offset must be at least 2, got {offset}")));
    }
    let mut out = Vec::with_capacity(count);
    for j in 0..count as i64 {
        let start = offset + BLOCKS_PER_WORD * j;
        let mut w = Word::identity();
        for m in start..start + BLOCKS_PER_WORD {
            w.push(a1, 1);
            w.push(a2, m);
            w.push(a3, m);
        }
        out.push(w);
    }
    Ok(out)
}

/// Default offset for the fresh words.
pub const DEFAULT_OFFSET: i64 = 2;

pub fn rips_wise(q: &Presentation) -> Result<RipsResult> {
    rips_wise_with(q, DEFAULT_OFFSET)
}

/// As [`rips_wise`], starting from `offset` and doubling it after each
/// failed metric check.
pub fn rips_wise_with(q: &Presentation, offset: i64) -> Result<RipsResult> {
    let q = if KERNEL_NAMES.iter().any(|n| q.alphabet().contains(n)) { q.rename_disjoint("_q")? } else { q.clone() };
    let y = q.num_gens();
    let mut names: Vec<String> = q.alphabet().names().to_vec();
    names.extend(KERNEL_NAMES.iter().map(|s| s.to_string()));
    let alphabet = Alphabet::new(names)?;
    let kernel = [y, y + 1, y + 2];

    let need = q.num_relators() + 6 * y;
    let mut offset = offset;
    let mut last = None;
    for attempt in 1..=MAX_RETRIES + 1 {
        let fresh = generate_sc_words(need, &kernel, offset)?;
        let mut fw = fresh.iter();
        let mut relators = Vec::with_capacity(need);
        let mut tags = Vec::with_capacity(need);
        for (i, sigma) in q.relators().iter().enumerate() {
            relators.push(sigma.mul(&fw.next().unwrap().inverse()));
            tags.push(RipsTag::Relator { relator: i });
        }
        for g in 0..y {
            let yw = Word::gen(g);
            for (k, &a) in kernel.iter().enumerate() {
                for inverse_first in [true, false] {
                    let by = if inverse_first { yw.inverse() } else { yw.clone() };
                    let conj = by.mul(&Word::gen(a)).mul(&by.inverse());
                    relators.push(conj.mul(&fw.next().unwrap().inverse()));
                    tags.push(RipsTag::Conjugation { gen: g, kernel: k, inverse_first });
                }
            }
        }
        let presentation = Presentation::new(alphabet.clone(), relators, q.derived_label("rips"))?;
        let metric = check_metric_condition(&presentation, 6);
        if metric.passes_sixth {
            let mut quotient_map: Vec<Word> = (0..y).map(Word::gen).collect();
            quotient_map.extend([Word::identity(), Word::identity(), Word::identity()]);
            let ses = SesData {
                total: presentation.clone(),
                quotient: q.clone(),
                quotient_map,
                kernel_subgroup_gens: kernel.iter().map(|&a| Word::gen(a)).collect(),
            };
            let word_params = WordParams {
                offset,
                attempts: attempt,
                words: need,
                first_block: offset,
                last_block: offset + BLOCKS_PER_WORD * need as i64 - 1,
            };
            return Ok(RipsResult { presentation, ses, word_params, metric, tags, fresh_words: fresh });
        }
        last = Some(metric.max_piece_ratio);
        offset *= 2;
    }
    let r = last.unwrap();
    Err(Error::MetricFailure { attempts: MAX_RETRIES + 1, ratio: format!("{}/{}", r.numer(), r.denom()) })
}
