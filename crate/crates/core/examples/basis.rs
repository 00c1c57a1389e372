//! The filtration basis `L(v⁺,w⁺)·L(v⁰,w⁰)` and expansion of an element in it.

use iqgroth::groth::Groth;
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    let q = preset("a3-flip").expect("preset");
    let g = Groth::standard(&q)?;
    let k = g.inks();
    let w = vec![1, 1, 1];
    for t in g.filtration_basis(&w)? {
        println!("L{} · L{} = {}", k.fmt_pair(&t.plus), k.fmt_pair(&t.zero), g.basis_product(&t)?.fmt_with(k));
    }
    let x = g.multiply(&g.l_simple(0), &g.l_simple(2))?;
    println!("L1 L3 = {}", x.fmt_with(k));
    for ((plus, a), c) in g.to_filtration_basis(&x)? {
        println!("  ({c}) L{} · K^{a:?}", k.fmt_pair(&plus));
    }
    Ok(())
}
