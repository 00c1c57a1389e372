//! The π/L transition matrix of one grade, with the catalog facts it used.

use iqgroth::groth::Groth;
use iqgroth::rootdata::{parse_vector, preset};

fn main() -> iqgroth::Result<()> {
    let mut args = std::env::args().skip(1);
    let q = preset(&args.next().unwrap_or_else(|| "a2".into())).expect("unknown preset");
    let g = Groth::standard(&q)?;
    let k = g.inks();
    let w = match args.next() {
        Some(s) => parse_vector(&s)?,
        None => k.w_of(&[0, 0, 1]),
    };
    let t = g.solve_transition(&w)?;
    println!("grade {} : {:?}", k.fmt_w(&w), t.status);
    for (r, p) in t.pairs.iter().enumerate() {
        let row: Vec<String> = t.a[r].iter().map(|c| c.as_ref().map_or("?".into(), |x| x.to_string())).collect();
        println!("  π{:<24} {}", k.fmt_v(&p.v), row.join(" | "));
    }
    for (r, c, why) in &t.from_catalog {
        println!("  entry ({r},{c}) from {why}");
    }
    Ok(())
}
