//! Canonical vectors `v^i`, `v^{ij}` and the strongly l-dominant pairs of a grade.

use iqgroth::inks::Inks;
use iqgroth::rootdata::{parse_vector, preset};

fn main() -> iqgroth::Result<()> {
    let mut args = std::env::args().skip(1);
    let q = preset(&args.next().unwrap_or_else(|| "a3-flip".into())).expect("unknown preset");
    let k = Inks::new(&q)?;
    for i in 0..k.n() {
        println!("v{} = {}", i + 1, k.fmt_v(k.vi(i)));
    }
    for &(i, j) in q.arrows() {
        let p = k.canonical_vij(i, j)?;
        println!("v{}{} = {}, slack {}", i + 1, j + 1, k.fmt_v(&p.v), k.fmt_v(&k.slack(&p)?));
    }
    let w = match args.next() {
        Some(s) => parse_vector(&s)?,
        None => vec![1; k.n()],
    };
    let pairs = k.enumerate_pairs(&w)?;
    println!("{} pairs at w = {}", pairs.len(), k.fmt_w(&w));
    for p in pairs.iter() {
        let (plus, zero) = k.decompose_pair(p)?;
        println!("  {}  =  {} + {}", k.fmt_pair(p), k.fmt_pair(&plus), k.fmt_pair(&zero));
    }
    Ok(())
}
