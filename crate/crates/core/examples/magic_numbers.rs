//! Magic numbers for the four sodium-like and four aluminium-like parameter sets.

use qvfo::golden::MAGIC_COLUMNS;
use qvfo::{build_scheme, magic_numbers, QhoParams, DEFAULT_DELTA};

fn main() -> qvfo::Result<()> {
    for col in &MAGIC_COLUMNS {
        let scheme = build_scheme(&QhoParams::unit_scale(col.tau, col.epsilon)?, col.n_max)?;
        let magic = magic_numbers(&scheme, DEFAULT_DELTA);
        let shown: Vec<String> = magic.numbers().iter().map(ToString::to_string).collect();
        println!(
            "tau={} eps={} n_max={} N_max={} ({} closures)\n  {}",
            col.tau,
            col.epsilon,
            col.n_max,
            scheme.total_capacity(),
            magic.len(),
            shown.join(" ")
        );
    }
    Ok(())
}
