//! Knit ZQ and compare Σϱ̂ with powers of τ.

use iqgroth::dercat::{knit_zq, DerivedObject};
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "a3-flip".into());
    let q = preset(&name).expect("unknown preset");
    let knit = knit_zq(&q);
    println!("{}: window {:?}", q.label(), knit.window());
    for v in knit.vertices().into_iter().filter(|v| (0..3).contains(&v.1)) {
        println!("  {:?} {}", v, knit.label(v).unwrap());
    }
    let roots = q.positive_roots();
    let (x, y) = (DerivedObject::module(roots[0].clone()), DerivedObject::module(roots[roots.len() - 1].clone()));
    println!("hom({x}, {y}) = {}, ext1 = {}", knit.hom_dq(&x, &y)?, knit.ext1(&x, &y)?);
    println!("tau {x} = {}", knit.tau(&x)?);
    println!("Σϱ̂ as a power of τ: {:?}", knit.table1_order()?);
    println!("(Σϱ̂)² = τ^-h: {}", knit.sigma_rho_squared_is_tau_h()?);
    Ok(())
}
