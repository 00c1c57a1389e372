//! Products in the L-basis: rank-two tables and the ϱ-pair product.

use iqgroth::groth::Groth;
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    for name in ["a2", "a3-flip"] {
        let q = preset(name).expect("preset");
        let g = Groth::standard(&q)?;
        let k = g.inks();
        println!("== {}", q.label());
        for &(i, j) in q.arrows() {
            for (a, b) in [(i, j), (j, i)] {
                let x = g.multiply(&g.l_simple(a), &g.l_simple(b))?;
                println!("L{} L{} = {}", a + 1, b + 1, x.fmt_with(k));
            }
            let li = g.l_simple(i);
            let x = g.product(&[li.clone(), li, g.l_simple(j)])?;
            println!("L{0} L{0} L{1} = {2}", i + 1, j + 1, x.fmt_with(k));
        }
        for i in q.i_rho() {
            let r = q.rho(i);
            if r != i {
                let x = g.multiply(&g.l_simple(i), &g.l_simple(r))?;
                println!("L{} L{} = {}", i + 1, r + 1, x.fmt_with(k));
            }
        }
    }
    Ok(())
}
