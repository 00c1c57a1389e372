//! Images of the defining relations under the generator map.

use iqgroth::groth::{Groth, RelationOutcome};
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    let q = preset(&std::env::args().nth(1).unwrap_or_else(|| "a3-flip".into())).expect("unknown preset");
    let g = Groth::standard(&q)?;
    for r in g.relation_instances() {
        let status = match g.evaluate_relation(&r)? {
            RelationOutcome::Zero => "ZERO".to_string(),
            RelationOutcome::Nonzero(e) => format!("NONZERO {}", e.fmt_with(g.inks())),
        };
        println!("{}({},{}) {status}", r.id, r.i + 1, r.j + 1);
    }
    Ok(())
}
