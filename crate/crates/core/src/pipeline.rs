//! Seed `<X | S>` -> universal central extension -> Rips -> `G x G`, with the
//! fibre-product generators and a JSON report.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fibre::{double, fibre_generators, homology_witness, kernel_generators, DoubledPresentation, FibreGenSet, HomologyWitness};
use crate::presentation::Presentation;
use crate::probe::{enumerate_homs, Perm, PermHom, Strategy};
use crate::rips::{rips_wise_with, RipsResult, DEFAULT_OFFSET};
use crate::uce::{universal_central_extension, UceResult};
use crate::word::Word;

pub const CORPUS: [(&str, &str); 3] = [
    ("A5", "gens: a b\na^2\nb^3\n(a*b)^5\n"),
    ("Higman", "gens: a b c d\nb^-1 a b a^-2\nc^-1 b c b^-2\nd^-1 c d c^-2\na^-1 d a d^-2\n"),
    ("Trivial32", "gens: x y\nx\ny\nx y\n"),
];

pub fn corpus_names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(n, _)| *n)
}

/// A corpus entry by name, or else a presentation file. Files may contain
/// identity relators; the label defaults to the file stem.
pub fn load_corpus(name_or_path: &str) -> Result<Presentation> {
    if let Some((name, text)) = CORPUS.iter().find(|(n, _)| *n == name_or_path) {
        return Ok(Presentation::parse(text)?.with_label(*name));
    }
    let path = Path::new(name_or_path);
    if !path.is_file() {
        return Err(Error::UnknownName(name_or_path.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let p = Presentation::parse_with(&text, true)?;
    if p.label().is_empty() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
        Ok(p.with_label(stem))
    } else {
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub aspherical: bool,
    pub offset: i64,
    pub strategy: Strategy,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { aspherical: false, offset: DEFAULT_OFFSET, strategy: Strategy::Hlt }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub gens: usize,
    pub seed_rels: usize,
    pub uce_rels: usize,
    pub rips_rels: usize,
    pub doubled_rels: usize,
    pub fibre_gens: usize,
}

impl Counts {
    /// Counts predicted from `|X|` and `|S|` alone.
    pub fn predicted(gens: usize, seed_rels: usize) -> Counts {
        let uce_rels = gens * (1 + seed_rels);
        let rips_rels = uce_rels + 6 * gens;
        Counts {
            gens,
            seed_rels,
            uce_rels,
            rips_rels,
            doubled_rels: 2 * rips_rels + (gens + 3) * (gens + 3),
            fibre_gens: 3 + seed_rels + gens,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineArtifacts {
    pub seed: Presentation,
    pub uce: UceResult,
    pub rips: RipsResult,
    pub doubled: DoubledPresentation,
    pub kernel_gens: Vec<Word>,
    pub fibre_gens: FibreGenSet,
    pub counts: Counts,
    pub witness: HomologyWitness,
    pub options: PipelineOptions,
}

pub fn run_pipeline(seed: &Presentation, options: &PipelineOptions) -> Result<PipelineArtifacts> {
    let uce = universal_central_extension(seed)?;
    let rips = rips_wise_with(&uce.presentation, options.offset)?;
    let doubled = double(&rips.presentation)?;
    let kernel_gens = kernel_generators(&uce.central_words, &rips)?;
    let base: Vec<Word> = (0..seed.num_gens()).map(Word::gen).collect();
    let fibre_gens = fibre_generators(&doubled, &kernel_gens, &base);
    let counts = Counts {
        gens: seed.num_gens(),
        seed_rels: seed.num_relators(),
        uce_rels: uce.presentation.num_relators(),
        rips_rels: rips.presentation.num_relators(),
        doubled_rels: doubled.presentation.num_relators(),
        fibre_gens: fibre_gens.size,
    };
    let witness = homology_witness(seed, options.aspherical);
    Ok(PipelineArtifacts { seed: seed.clone(), uce, rips, doubled, kernel_gens, fibre_gens, counts, witness, options: *options })
}

impl PipelineArtifacts {
    /// `Gamma` as a presentation: the doubled Rips group.
    pub fn gamma(&self) -> &Presentation {
        &self.doubled.presentation
    }

    /// `Gamma -> Lambda x Lambda` on `2d` points: `a_i -> 1` and each seed
    /// generator to its image under `seed_hom`, on points `1..d` for the left
    /// copy and `d+1..2d` for the right.
    pub fn canonical_hom(&self, seed_hom: &PermHom) -> PermHom {
        let d = seed_hom.degree;
        let x = self.seed.num_gens();
        let g = self.rips.presentation.num_gens();
        let mut images = vec![Perm::identity(2 * d); 2 * g];
        for i in 0..x {
            images[self.doubled.left[i]] = seed_hom.images[i].shifted(0, 2 * d);
            images[self.doubled.right[i]] = seed_hom.images[i].shifted(d, 2 * d);
        }
        PermHom::new(2 * d, images)
    }
}

/// A nontrivial permutation image of the seed of largest order at `degree`.
pub fn seed_hom(seed: &Presentation, degree: usize) -> Option<PermHom> {
    let homs = enumerate_homs(seed, degree, true);
    let best = homs.iter().map(|h| h.image_order.clone()).max()?;
    homs.into_iter().find(|h| h.image_order == best)
}

#[derive(Serialize)]
struct SeedJson<'a> {
    label: &'a str,
    presentation: String,
}

#[derive(Serialize)]
struct Presentations {
    uce: String,
    rips: String,
    doubled: String,
}

#[derive(Serialize)]
struct Provenance {
    version: &'static str,
    seed_sha: String,
    offset: i64,
    strategy: Strategy,
}

#[derive(Serialize)]
struct Report<'a> {
    seed: SeedJson<'a>,
    counts: Counts,
    presentations: Presentations,
    fibre_generators: Vec<crate::fibre::FibrePairJson>,
    metric_report: &'a crate::rips::MetricReport,
    homology_witness: &'a HomologyWitness,
    provenance: Provenance,
}

pub fn seed_sha(seed: &Presentation) -> String {
    let digest = Sha256::digest(seed.to_text().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Pretty-printed JSON report; keys in schema order.
pub fn emit_report(a: &PipelineArtifacts) -> String {
    let report = Report {
        seed: SeedJson { label: a.seed.label(), presentation: a.seed.to_text() },
        counts: a.counts,
        presentations: Presentations {
            uce: a.uce.presentation.to_text(),
            rips: a.rips.presentation.to_text(),
            doubled: a.doubled.presentation.to_text(),
        },
        fibre_generators: a.fibre_gens.to_json(&a.rips.presentation, &a.doubled),
        metric_report: &a.rips.metric,
        homology_witness: &a.witness,
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION"),
            seed_sha: seed_sha(&a.seed),
            offset: a.rips.word_params.offset,
            strategy: a.options.strategy,
        },
    };
    serde_json::to_string_pretty(&report).expect("report serializes")
}
