//! The d-form on the canonical pairs of each arrow.

use iqgroth::fixtures::dform_cases;
use iqgroth::groth::d_form;
use iqgroth::inks::Inks;
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    let q = preset(&std::env::args().nth(1).unwrap_or_else(|| "a2".into())).expect("unknown preset");
    let k = Inks::new(&q)?;
    for &(i, j) in q.arrows() {
        println!("arrow {} -> {}", i + 1, j + 1);
        for (label, p1, p2, want) in dform_cases(&k, i, j)?.into_iter().flatten() {
            println!("  {label:<28} {} (expected {want})", d_form(&k, &p1, &p2)?);
        }
    }
    Ok(())
}
