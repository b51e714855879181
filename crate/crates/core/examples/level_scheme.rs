//! Lowest levels of the squeezed spectrum for sodium-like parameters, and
//! where a strong squeeze starts to reorder a shell.

use qvfo::qho::{energy, QuantumNumbers};
use qvfo::spectrum::detect_inversion;
use qvfo::{build_scheme, QhoParams};

fn main() -> qvfo::Result<()> {
    let p = QhoParams::unit_scale(0.038, 0.006)?;
    let scheme = build_scheme(&p, 26)?;
    println!("{} levels, {} states", scheme.levels().len(), scheme.total_capacity());
    println!("{:>3} {:>3} {:>10} {:>5} {:>6}", "n", "l", "E'", "cap", "filled");
    let mut filled = 0;
    for lv in scheme.levels().iter().take(15) {
        filled += lv.capacity;
        println!("{:>3} {:>3} {:>10.5} {:>5} {:>6}", lv.n, lv.l, lv.energy, lv.capacity, filled);
    }

    let top = QuantumNumbers::new(26, 26)?;
    println!("bare E(26,26) = {:.5}", energy(top, &p));

    for eps in [0.006, 0.007, 0.008] {
        let p = QhoParams::unit_scale(0.038, eps)?;
        match detect_inversion(&p, 40) {
            Some(n) => println!("eps={eps}: shell {n} is the first whose l=n member is not lowest"),
            None => println!("eps={eps}: no inversion below n=40"),
        }
    }
    Ok(())
}
