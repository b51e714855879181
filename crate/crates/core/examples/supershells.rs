//! Liquid-drop fit, shell energy and supershell node.
//!
//! `cargo run --example supershells -- 0.05 0.0055 25 2008`

use qvfo::shells::{beat_node, envelope};
use qvfo::{build_scheme, shell_decomposition, QhoParams};

fn main() -> qvfo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |k: usize, d: &str| args.get(k).cloned().unwrap_or_else(|| d.to_string());
    let tau: f64 = arg(0, "0.038").parse().expect("tau");
    let eps: f64 = arg(1, "0.006").parse().expect("epsilon");
    let n_max: u32 = arg(2, "26").parse().expect("n_max");
    let n_cut: usize = arg(3, "3009").parse().expect("n_cut");

    let scheme = build_scheme(&QhoParams::unit_scale(tau, eps)?, n_max)?;
    let dec = shell_decomposition(&scheme, n_cut)?;
    println!("{} window means up to N={}", dec.fit.n_points, dec.fit.n_cut);
    for (k, a) in dec.fit.coefficients.iter().enumerate() {
        println!("a{} = {a:+.6}", k + 1);
    }
    println!("sigma = {:.4}", dec.fit.sigma);

    // coarse text plot of E_shell against N^(1/3)
    let scale = dec.samples.iter().map(|s| s.e_shell.abs()).fold(0.0, f64::max);
    for s in dec.samples.iter().step_by(4) {
        let col = (30.0 + 30.0 * s.e_shell / scale).round() as usize;
        println!("{:>5} {:>6.3} {}*", s.n, (s.n as f64).cbrt(), " ".repeat(col));
    }

    let env = envelope(&dec)?;
    println!("{} envelope points", env.len());
    match beat_node(&dec) {
        Ok(n) => println!("supershell node near N = {n}"),
        Err(e) => println!("no node: {e}"),
    }
    Ok(())
}
