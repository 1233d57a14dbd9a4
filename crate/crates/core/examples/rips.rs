//! Rips construction and the C'(1/6) check.

use fpforge::pipeline::load_corpus;
use fpforge::presentation::Presentation;
use fpforge::rips::{check_metric_condition, rips_wise};

fn main() -> fpforge::Result<()> {
    for p in [load_corpus("A5")?, Presentation::parse("gens: x\nx")?.with_label("Z1")] {
        let r = rips_wise(&p)?;
        let m = &r.metric;
        println!(
            "{}: {} gens, {} relators; max piece {} (passes: {})",
            r.presentation.label(),
            r.presentation.num_gens(),
            r.presentation.num_relators(),
            m.max_piece_ratio,
            m.passes_sixth
        );
        if let Some(w) = &m.worst_pair {
            println!("  worst piece {} between relators {:?}", w.piece, w.relators);
        }
    }

    for t in ["gens: a b\n[a,b]", "gens: a\na^7"] {
        let p = Presentation::parse(t)?;
        println!("{p}: max piece ratio {}", check_metric_condition(&p, 6).max_piece_ratio);
    }
    Ok(())
}
