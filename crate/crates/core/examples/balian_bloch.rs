//! Periodic-orbit slope of `N_i^(1/3)` against `i`, and the slope change
//! produced by the squeeze.

use qvfo::orbits::{
    balian_bloch_slope, fit_cuberoot_line, orbit_length, CavityModel, Intercept, OrbitKind,
    CALIBRATED_SLOPE,
};
use qvfo::{build_scheme, magic_numbers, QhoParams, DEFAULT_DELTA};

fn main() -> qvfo::Result<()> {
    let unit = CavityModel::unit(1.0)?;
    println!(
        "orbit lengths at N=1000: triangle {:.3}, square {:.3}",
        orbit_length(&unit, 1000, OrbitKind::Triangle),
        orbit_length(&unit, 1000, OrbitKind::Square)
    );
    println!("geometric slope factor {:.6}, calibrated {CALIBRATED_SLOPE}", balian_bloch_slope(&unit));

    let sodium = magic_numbers(&build_scheme(&QhoParams::unit_scale(0.038, 0.0)?, 26)?, DEFAULT_DELTA);
    for mode in [Intercept::Origin, Intercept::Free] {
        let fit = fit_cuberoot_line(&sodium, 1, 14, mode)?;
        println!("sodium i=1..14 {mode:?}: slope {:.4}, rms {:.4}", fit.slope, fit.rms);
    }

    for eps in [0.0, 0.006, 0.007] {
        let m = magic_numbers(&build_scheme(&QhoParams::unit_scale(0.038, eps)?, 26)?, DEFAULT_DELTA);
        let fit = fit_cuberoot_line(&m, 1, m.len(), Intercept::Free)?;
        println!("eps={eps}: full column slope {:.4} over {} closures", fit.slope, m.len());
    }

    let al = magic_numbers(&build_scheme(&QhoParams::unit_scale(0.05, 0.005)?, 26)?, DEFAULT_DELTA);
    let fit = fit_cuberoot_line(&al, 9, al.len(), Intercept::Free)?;
    println!("aluminium i>=9: slope {:.4}", fit.slope);
    Ok(())
}
