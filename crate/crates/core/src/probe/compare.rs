//! Surjectivity evidence for a subgroup against its ambient group's
//! finite quotients.

use num_bigint::BigUint;
use serde::Serialize;

use super::homs::{enumerate_homs, ser_big, PermHom};
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub max_degree: usize,
    pub provided_homs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub hom: PermHom,
    #[serde(serialize_with = "ser_big")]
    pub group_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub subgroup_order: BigUint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Witness,
    NoWitnessUpToBound,
}

/// Image orders `(degree, group, subgroup)` of each examined homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Examined {
    pub degree: usize,
    #[serde(serialize_with = "ser_big")]
    pub group: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub subgroup: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub bound: Bound,
    pub gamma_quotients: Vec<Examined>,
    pub witness: Option<Witness>,
    pub verdict: Verdict,
}

/// Looks for a finite quotient of `gamma` on which `<subgens>` has a proper
/// image. Provided homomorphisms are tried first, then every nontrivial
/// homomorphism of degree `2..=max_degree` in increasing degree. The search
/// stops at the first witness.
pub fn compare_completions(
    gamma: &Presentation,
    subgens: &[Word],
    max_degree: usize,
    provided_homs: Option<&[PermHom]>,
) -> Result<ComparisonReport> {
    if let Some(w) = subgens.iter().find(|w| w.max_gen().is_some_and(|g| g >= gamma.num_gens())) {
        return Err(Error::AlphabetMismatch(format!("subgroup word {w:?} is not over the group's alphabet")));
    }
    let provided = provided_homs.unwrap_or(&[]);
    for h in provided {
        if h.images.len() != gamma.num_gens() {
            return Err(Error::InvalidHom(format!("{} images for {} generators", h.images.len(), gamma.num_gens())));
        }
        if let Some(i) = h.failing_relator(gamma) {
            return Err(Error::InvalidHom(format!("relator {} is not killed", i + 1)));
        }
    }
    let bound = Bound { max_degree, provided_homs: provided.len() };
    let mut examined = Vec::new();
    let mut check = |h: PermHom| -> Option<Witness> {
        let sub = h.subgroup_order(subgens);
        examined.push(Examined { degree: h.degree, group: h.image_order.clone(), subgroup: sub.clone() });
        (sub < h.image_order).then(|| Witness { group_order: h.image_order.clone(), subgroup_order: sub, hom: h })
    };
    let mut witness = None;
    for h in provided {
        witness = check(h.clone());
        if witness.is_some() {
            break;
        }
    }
    if witness.is_none() {
        'search: for d in 2..=max_degree {
            for h in enumerate_homs(gamma, d, true) {
                witness = check(h);
                if witness.is_some() {
                    break 'search;
                }
            }
        }
    }
    let verdict = if witness.is_some() { Verdict::Witness } else { Verdict::NoWitnessUpToBound };
    Ok(ComparisonReport { bound, gamma_quotients: examined, witness, verdict })
}

/// Parses the hom file format: one `name: cycles` line per generator, `#` comments.
/// The degree is `degree` if given, else the largest point mentioned.
pub fn parse_hom(text: &str, p: &Presentation, degree: Option<usize>) -> Result<PermHom> {
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (name, cyc) = line
            .split_once(':')
            .ok_or_else(|| Error::InvalidHom(format!("line {}: expected `name: cycles`", k + 1)))?;
        let gen = p
            .alphabet()
            .index_of(name.trim())
            .ok_or_else(|| Error::UnknownGenerator(name.trim().to_string()))?;
        lines.push((gen, cyc.trim().to_string()));
    }
    let degree = degree.unwrap_or_else(|| lines.iter().map(|(_, c)| Perm::max_point(c)).max().unwrap_or(1).max(1));
    let mut images: Vec<Option<Perm>> = vec![None; p.num_gens()];
    for (gen, cyc) in lines {
        if images[gen].is_some() {
            return Err(Error::InvalidHom(format!("generator `{}` given twice", p.alphabet().name(gen))));
        }
        images[gen] = Some(Perm::parse_cycles(&cyc, degree)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| Error::InvalidHom(format!("no image for `{}`", p.alphabet().name(i)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermHom::new(degree, images))
}
