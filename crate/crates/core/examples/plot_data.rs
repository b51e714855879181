//! Plot-ready columns for the cube-root plot and the shell-energy plot.
//!
//! `cargo run --example plot_data -- /tmp/plots`

use std::path::PathBuf;

use qvfo::cli::{emit_plot_data, PlotSource};
use qvfo::{build_scheme, magic_numbers, shell_decomposition, QhoParams, DEFAULT_DELTA};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "plots".into()));
    std::fs::create_dir_all(&dir)?;
    for (tau, eps, n_max, n_cut) in [(0.038, 0.0, 26, 3009), (0.038, 0.006, 26, 3009), (0.05, 0.005, 26, 2008)] {
        let scheme = build_scheme(&QhoParams::unit_scale(tau, eps)?, n_max)?;
        let magic = magic_numbers(&scheme, DEFAULT_DELTA);
        let dec = shell_decomposition(&scheme, n_cut)?;
        let stem = format!("tau{tau}_eps{eps}");
        std::fs::write(dir.join(format!("{stem}_cbrt.csv")), emit_plot_data(PlotSource::Magic(&magic))?)?;
        std::fs::write(dir.join(format!("{stem}_shell.csv")), emit_plot_data(PlotSource::Shells(&dec))?)?;
        println!("{stem}: {} closures, {} shell samples", magic.len(), dec.samples.len());
    }
    println!("written to {}", dir.display());
    Ok(())
}
