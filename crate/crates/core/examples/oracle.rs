//! Explicit representations cross-checking the knitted Hom calculus.

use iqgroth::inks::Inks;
use iqgroth::oracle::{crosscheck, Oracle};
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    println!("seed {seed}");
    for name in ["a3", "a3-flip", "d4"] {
        let q = preset(name).expect("preset");
        let r = crosscheck(&q, seed)?;
        println!("{name}: {} checks, {} mismatches", r.checks, r.mismatches.len());
    }
    let q = preset("a3-flip").expect("preset");
    let o = Oracle::build(&q, seed)?;
    let k = Inks::new(&q)?;
    for &(i, j) in q.arrows() {
        println!("v{}{} from ranks: {}", i + 1, j + 1, k.fmt_v(&o.vij(&k, i, j)?));
    }
    Ok(())
}
