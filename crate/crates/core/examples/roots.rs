//! Positive roots, Cartan matrix and Euler form of a Dynkin quiver.

use iqgroth::rootdata::{preset, root_string, unit};

fn main() -> iqgroth::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "d4".into());
    let q = preset(&name).expect("unknown preset");
    println!("{} with h = {}", q.label(), q.coxeter_number());
    for row in q.cartan() {
        println!("  {row:?}");
    }
    let n = q.n();
    for i in 0..n {
        let row: Vec<i64> = (0..n).map(|j| q.euler_form(&unit(n, i), &unit(n, j)).unwrap()).collect();
        println!("  <S{},-> = {row:?}", i + 1);
    }
    let roots = q.positive_roots();
    println!("{} positive roots", roots.len());
    for r in roots {
        println!("  {}", root_string(&r));
    }
    Ok(())
}
