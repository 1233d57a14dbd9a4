//! Presentation files, validation and the exponent matrix.

use fpforge::presentation::Presentation;

const TEXT: &str = "\
gens: a b
# the alternating group of degree 5
a^2
b^3
(a b)^5
";

fn main() -> fpforge::Result<()> {
    let p = Presentation::parse(TEXT)?.with_label("A5");
    println!("{p}");
    println!("exponent matrix {:?}", p.exponent_matrix().matrix());

    let renamed = p.rename_disjoint("_L")?;
    print!("{}", renamed.to_text());
    assert!(p.rename_disjoint("").is_err());

    // unnormalised input is reported and fixed up in a copy
    let raw = fpforge::presentation::parse_raw("gens: a b\nb a b^-1\na a^-1")?;
    let report = raw.validate();
    println!("valid: {}", report.is_valid());
    for issue in &report.issues {
        println!("  {issue:?}");
    }
    Ok(())
}
