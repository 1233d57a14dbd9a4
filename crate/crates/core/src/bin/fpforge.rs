use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use fpforge::fibre::{double, homology_witness};
use fpforge::intlinalg::{abelian_invariants, big_to_json};
use fpforge::pipeline::{emit_report, load_corpus, run_pipeline, PipelineOptions};
use fpforge::presentation::Presentation;
use fpforge::probe::{compare_completions, parse_hom, quotient_spectrum, todd_coxeter, Status, Strategy};
use fpforge::rips::{check_metric_condition, rips_wise_with, DEFAULT_OFFSET};
use fpforge::uce::universal_central_extension;
use fpforge::word::Word;
use fpforge::{Error, Result};

/// Presentations of universal central extensions, Rips groups, doubles and
/// fibre products, with finite-quotient probes.
///
/// `<PRES>` is a corpus name (A5, Higman, Trivial32) or a presentation file.
#[derive(Parser)]
#[command(name = "fpforge", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants of the abelianization.
    Abelianize { pres: String },
    /// Rank of H_2 of the presentation complex, with the Z/2 witness.
    H2 {
        pres: String,
        #[arg(long)]
        aspherical: bool,
    },
    /// Universal central extension of a perfect group.
    Uce {
        pres: String,
        /// Write the presentation here and the JSON sidecar next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rips construction with the C'(1/6) report.
    Rips {
        pres: String,
        #[arg(long, default_value_t = DEFAULT_OFFSET)]
        offset: i64,
        /// Only run the metric check on the input.
        #[arg(long)]
        check_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct square G x G.
    Double {
        pres: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fibre-product generators of the pipeline over a seed.
    Fibregen {
        seed: String,
        #[arg(long, default_value_t = DEFAULT_OFFSET)]
        offset: i64,
    },
    /// Image orders of nontrivial homomorphisms to S_2 .. S_d.
    Quotients {
        pres: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    /// Index of a subgroup by coset enumeration.
    Index {
        pres: String,
        /// One subgroup generator per line.
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
    },
    /// Look for a finite quotient on which the subgroup has a proper image.
    Compare {
        pres: String,
        #[arg(long)]
        sub: PathBuf,
        /// Homomorphism file, `name: cycles` per generator.
        #[arg(long)]
        hom: Vec<PathBuf>,
        #[arg(long, default_value_t = 7)]
        degree: usize,
    },
    /// Seed -> UCE -> Rips -> double, with the JSON report.
    Pipeline {
        seed: String,
        #[arg(long)]
        aspherical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_OFFSET)]
        offset: i64,
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Writes `pres` to `out` and `sidecar` to `out.json`, or both to stdout.
fn emit(pres: &Presentation, sidecar: serde_json::Value, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            write(path, &pres.to_text())?;
            let mut side = path.as_os_str().to_owned();
            side.push(".json");
            write(Path::new(&side), &pretty(&sidecar))
        }
        None => {
            print!("{}", pres.to_text());
            println!("{}", pretty(&sidecar));
            Ok(())
        }
    }
}

fn read_words(path: &Path, p: &Presentation) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for (k, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if !line.is_empty() {
            out.push(p.word(line).map_err(|e| e.at_line(k + 1))?);
        }
    }
    Ok(out)
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Abelianize { pres } => {
            let p = load_corpus(&pres)?;
            let inv = abelian_invariants(&p);
            println!("{}", pretty(&json!({ "label": p.label(), "invariants": inv, "group": inv.to_string(), "perfect": inv.is_trivial() })));
        }
        Cmd::H2 { pres, aspherical } => {
            let p = load_corpus(&pres)?;
            println!("{}", pretty(&homology_witness(&p, aspherical)));
        }
        Cmd::Uce { pres, out } => {
            let p = load_corpus(&pres)?;
            let u = universal_central_extension(&p)?;
            let sidecar = json!({
                "counts": { "gens": p.num_gens(), "input_rels": p.num_relators(), "output_rels": u.presentation.num_relators() },
                "solver_exponents": u.solver_exponents.iter().map(|r| r.iter().map(big_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "central_words": u.central_words.iter().map(|w| p.print(w)).collect::<Vec<_>>(),
                "tags": u.tags,
            });
            emit(&u.presentation, sidecar, out.as_deref())?;
        }
        Cmd::Rips { pres, offset, check_only, out } => {
            let p = load_corpus(&pres)?;
            if check_only {
                let m = check_metric_condition(&p, 6);
                println!("{}", pretty(&m));
                return Ok(if m.passes_sixth { 0 } else { 4 });
            }
            let r = rips_wise_with(&p, offset)?;
            let sidecar = json!({
                "counts": { "input_gens": p.num_gens(), "input_rels": p.num_relators(), "output_rels": r.presentation.num_relators() },
                "word_params": r.word_params,
                "metric_report": r.metric,
                "kernel_generators": r.ses.kernel_subgroup_gens.iter().map(|w| r.presentation.print(w)).collect::<Vec<_>>(),
                "note": "metric condition certified; residual finiteness is not checked",
            });
            emit(&r.presentation, sidecar, out.as_deref())?;
        }
        Cmd::Double { pres, out } => {
            let p = load_corpus(&pres)?;
            let d = double(&p)?;
            let sidecar = json!({
                "counts": { "gens": d.presentation.num_gens(), "rels": d.presentation.num_relators(), "commutators": d.commutator_count },
            });
            emit(&d.presentation, sidecar, out.as_deref())?;
        }
        Cmd::Fibregen { seed, offset } => {
            let s = load_corpus(&seed)?;
            let a = run_pipeline(&s, &PipelineOptions { offset, ..Default::default() })?;
            let gens = a.fibre_gens.to_json(&a.rips.presentation, &a.doubled);
            println!("{}", pretty(&json!({ "size": a.fibre_gens.size, "elements": gens })));
        }
        Cmd::Quotients { pres, degree } => {
            let p = load_corpus(&pres)?;
            println!("{}", pretty(&quotient_spectrum(&p, degree)));
        }
        Cmd::Index { pres, sub, limit, strategy } => {
            let p = load_corpus(&pres)?;
            let words = match sub {
                Some(path) => read_words(&path, &p)?,
                None => Vec::new(),
            };
            let t = todd_coxeter(&p, &words, limit, strategy)?;
            println!("{}", pretty(&json!({ "status": t.status, "index": t.index(), "cosets": t.cosets, "strategy": strategy })));
            if let Status::Exhausted(_) = t.status {
                return Ok(3);
            }
        }
        Cmd::Compare { pres, sub, hom, degree } => {
            let p = load_corpus(&pres)?;
            let words = read_words(&sub, &p)?;
            let homs = hom.iter().map(|h| parse_hom(&read(h)?, &p, None)).collect::<Result<Vec<_>>>()?;
            let report = compare_completions(&p, &words, degree, Some(&homs))?;
            println!("{}", pretty(&report));
        }
        Cmd::Pipeline { seed, aspherical, out, offset, strategy } => {
            let s = load_corpus(&seed)?;
            let a = run_pipeline(&s, &PipelineOptions { aspherical, offset, strategy })?;
            let report = emit_report(&a);
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                    write(&dir.join("seed.txt"), &a.seed.to_text())?;
                    write(&dir.join("uce.txt"), &a.uce.presentation.to_text())?;
                    write(&dir.join("rips.txt"), &a.rips.presentation.to_text())?;
                    write(&dir.join("doubled.txt"), &a.doubled.presentation.to_text())?;
                    let sub: String = a.fibre_gens.elements.iter().map(|w| a.gamma().print(w) + "\n").collect();
                    write(&dir.join("fibre_gens.txt"), &sub)?;
                    write(&dir.join("report.json"), &(report + "\n"))?;
                }
                None => println!("{report}"),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fpforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
