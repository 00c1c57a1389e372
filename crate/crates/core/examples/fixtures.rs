//! Run the fixture suite on one iquiver and print failures.

use iqgroth::fixtures::quiver_suite;
use iqgroth::rootdata::preset;

fn main() -> iqgroth::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "a3-flip".into());
    let res = quiver_suite(&preset(&name).expect("unknown preset"))?;
    let failed: Vec<_> = res.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        println!("FAIL {} {}: {}", r.group, r.id, r.detail);
    }
    println!("{name}: {} fixtures, {} failed", res.len(), failed.len());
    Ok(())
}
