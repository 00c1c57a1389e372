//! Normal forms in the reduced ring, symbolic and specialized.

use iqgroth::groth::{Groth, HalfLaurent, Varsigma};
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    for name in ["a2", "a3-flip"] {
        let q = preset(name).expect("preset");
        let g = Groth::standard(&q)?;
        let n = q.n();
        let x = g.multiply(&g.l_cartan(0), &g.l_simple(n - 1))?;
        let y = g.multiply(&g.l_cartan(0), &g.l_cartan(q.rho(0)))?;
        let sym = vec![Varsigma::Symbol; n];
        let one = vec![Varsigma::Value(HalfLaurent::one()); n];
        println!("{}", q.label());
        println!("  K1 L{n}       {}", g.reduce(&x, &sym)?.fmt_with(&g));
        println!("  ς = 1       {}", g.reduce(&x, &one)?.fmt_with(&g));
        println!("  K1 K{}       {}", q.rho(0) + 1, g.reduce(&y, &sym)?.fmt_with(&g));
    }
    Ok(())
}
