//! Published reference values and the comparison behind `--golden`.
//!
//! Eight magic-number columns (`delta = 0.38`, `hbar_omega0 = 1`) and eight
//! liquid-drop fits. Coefficients are stored unscaled.

use crate::error::Result;
use crate::qho::QhoParams;
use crate::shells::shell_decomposition;
use crate::spectrum::{build_scheme, magic_numbers, DEFAULT_DELTA};

/// One printed magic-number column.
#[derive(Debug, Clone, Copy)]
pub struct MagicColumn {
    pub tau: f64,
    pub epsilon: f64,
    pub n_max: u32,
    pub capacity: usize,
    pub numbers: &'static [usize],
}

/// One printed liquid-drop fit.
#[derive(Debug, Clone, Copy)]
pub struct FitRow {
    pub tau: f64,
    pub epsilon: f64,
    /// Shell cut of the level scheme the energies come from.
    pub n_max: u32,
    pub n_cut: usize,
    pub coefficients: [f64; 6],
    pub sigma: f64,
}

pub const MAGIC_COLUMNS: [MagicColumn; 8] = [
    MagicColumn {
        tau: 0.038,
        epsilon: 0.0,
        n_max: 26,
        capacity: 4658,
        numbers: &[
            2, 8, 20, 34, 40, 58, 92, 138, 198, 254, 268, 338, 440, 556, 562, 676, 694, 832, 912, 1012,
            1100, 1206, 1284, 1314, 1410, 1502, 1516, 1660, 1760, 2018, 2048, 2178, 2334, 2368, 2654,
            2672, 2722, 2796, 3028, 3050, 3190, 3404, 3438, 3464, 3610, 3848, 3886, 4052, 4312, 4326,
            4374, 4552,
        ],
    },
    MagicColumn {
        tau: 0.038,
        epsilon: 0.006,
        n_max: 26,
        capacity: 4658,
        numbers: &[
            2, 8, 20, 34, 40, 58, 92, 138, 198, 254, 338, 440, 676, 832, 912, 1012, 1100, 1206, 1660,
            1760, 2048, 2368, 3028, 3438, 3886, 4052, 4374,
        ],
    },
    MagicColumn {
        tau: 0.038,
        epsilon: 0.007,
        n_max: 26,
        capacity: 4658,
        numbers: &[
            2, 8, 20, 40, 58, 92, 138, 198, 254, 338, 440, 676, 832, 912, 1012, 1100, 1206, 1660, 1760,
            2048, 2368, 3028, 3438, 3886, 4374,
        ],
    },
    MagicColumn {
        tau: 0.038,
        epsilon: 0.008,
        n_max: 25,
        capacity: 4154,
        numbers: &[
            2, 8, 20, 40, 58, 92, 138, 198, 254, 338, 440, 676, 832, 912, 1012, 1100, 1206, 1660, 1760,
            2048, 2368, 3028, 3438, 3886,
        ],
    },
    MagicColumn {
        tau: 0.050,
        epsilon: 0.0,
        n_max: 26,
        capacity: 4778,
        numbers: &[
            2, 8, 20, 34, 40, 58, 92, 138, 186, 254, 338, 398, 440, 486, 542, 612, 676, 748, 832, 890,
            912, 1006, 1074, 1100, 1206, 1284, 1314, 1410, 1502, 1516, 1614, 1660, 1734, 1760, 1778,
            1940, 2018, 2048, 2178, 2334, 2368, 2510, 2672, 2684, 2722, 2876, 3028, 3050, 3112, 3190,
            3244, 3438, 3464, 3528, 3622, 3680, 3886, 3916, 3988, 4088, 4156, 4374, 4408, 4462, 4488,
            4578, 4596,
        ],
    },
    MagicColumn {
        tau: 0.050,
        epsilon: 0.0050,
        n_max: 26,
        capacity: 4778,
        numbers: &[
            2, 8, 20, 34, 40, 58, 92, 138, 186, 254, 338, 398, 440, 542, 612, 676, 748, 832, 912, 1006,
            1074, 1100, 1284, 1314, 1410, 1502, 1516, 1760, 2018, 2048, 2178, 2334, 2368, 2510, 2672,
            2722, 3028, 3050, 3112, 3438, 3464, 3886, 3916, 3988, 4374, 4408,
        ],
    },
    MagicColumn {
        tau: 0.050,
        epsilon: 0.0053,
        n_max: 25,
        capacity: 4258,
        numbers: &[
            2, 8, 20, 34, 40, 58, 92, 138, 186, 254, 338, 398, 440, 542, 612, 676, 748, 832, 912, 1006,
            1074, 1100, 1284, 1314, 1410, 1502, 1760, 2018, 2048, 2178, 2334, 2368, 2510, 2672, 2722,
            3028, 3050, 3112, 3438, 3464, 3886, 3916,
        ],
    },
    MagicColumn {
        tau: 0.050,
        epsilon: 0.0055,
        n_max: 25,
        capacity: 4258,
        numbers: &[
            2, 8, 20, 34, 40, 58, 92, 138, 186, 254, 338, 398, 440, 542, 612, 676, 748, 832, 912, 1006,
            1074, 1100, 1284, 1410, 1502, 1760, 2018, 2048, 2178, 2334, 2368, 2510, 2672, 2722, 3028,
            3050, 3112, 3438, 3464, 3886, 3916,
        ],
    },
];

pub const FIT_ROWS: [FitRow; 8] = [
    FitRow {
        tau: 0.038,
        epsilon: 0.0,
        n_max: 26,
        n_cut: 3009,
        coefficients: [-21.035, 18.295, -7.295, 1.9521, -0.06082, 0.0040857],
        sigma: 8.904,
    },
    FitRow {
        tau: 0.038,
        epsilon: 0.006,
        n_max: 26,
        n_cut: 3009,
        coefficients: [24.756, -20.883, 5.201, 0.0493, 0.07946, -0.0008993],
        sigma: 5.758,
    },
    FitRow {
        tau: 0.038,
        epsilon: 0.007,
        n_max: 26,
        n_cut: 3009,
        coefficients: [32.475, -27.496, 7.306, -0.2704, 0.10297, -0.0017326],
        sigma: 5.297,
    },
    FitRow {
        tau: 0.038,
        epsilon: 0.008,
        n_max: 25,
        n_cut: 3009,
        coefficients: [39.762, -33.786, 9.329, -0.5806, 0.12597, -0.0025559],
        sigma: 4.834,
    },
    FitRow {
        tau: 0.050,
        epsilon: 0.0,
        n_max: 26,
        n_cut: 2008,
        coefficients: [-24.946, 24.641, -10.384, 2.6117, -0.13000, 0.0082558],
        sigma: 7.328,
    },
    FitRow {
        tau: 0.050,
        epsilon: 0.0050,
        n_max: 26,
        n_cut: 2008,
        coefficients: [14.051, -13.208, 3.323, 0.2409, 0.07006, 0.0006484],
        sigma: 5.286,
    },
    FitRow {
        tau: 0.050,
        epsilon: 0.0053,
        n_max: 25,
        n_cut: 2008,
        coefficients: [16.795, -15.857, 4.264, 0.0817, 0.08320, 0.0001634],
        sigma: 5.175,
    },
    FitRow {
        tau: 0.050,
        epsilon: 0.0055,
        n_max: 25,
        n_cut: 2008,
        coefficients: [18.589, -17.556, 4.862, -0.0188, 0.09150, -0.0001464],
        sigma: 5.098,
    },
];

/// Relative tolerance on the fitted rms deviation.
pub const SIGMA_TOLERANCE: f64 = 0.15;
/// Relative tolerance on each fitted coefficient (signs must agree).
pub const COEFFICIENT_TOLERANCE: f64 = 0.20;

/// Outcome of one golden comparison.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GoldenLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn params(tau: f64, epsilon: f64) -> Result<QhoParams> {
    QhoParams::unit_scale(tau, epsilon)
}

/// Capacity and magic numbers of one column against the printed values.
pub fn check_magic_column(col: &MagicColumn) -> Result<GoldenLine> {
    let scheme = build_scheme(&params(col.tau, col.epsilon)?, col.n_max)?;
    let got = magic_numbers(&scheme, DEFAULT_DELTA).numbers();
    let prefix_ok = got.len() >= col.numbers.len() && got[..col.numbers.len()] == *col.numbers;
    let capacity_ok = scheme.total_capacity() == col.capacity;
    let mut detail = format!(
        "N_max {} (want {}), {} magic numbers (printed {})",
        scheme.total_capacity(),
        col.capacity,
        got.len(),
        col.numbers.len()
    );
    if !prefix_ok {
        if let Some(k) = (0..col.numbers.len()).find(|&k| got.get(k) != Some(&col.numbers[k])) {
            detail.push_str(&format!(
                "; first difference at i={}: got {:?}, want {}",
                k + 1,
                got.get(k),
                col.numbers[k]
            ));
        }
    }
    Ok(GoldenLine {
        name: format!("magic tau={} eps={} n_max={}", col.tau, col.epsilon, col.n_max),
        pass: prefix_ok && capacity_ok,
        detail,
    })
}

/// Relative deviation `got / want - 1`, with a sign check.
pub fn within(got: f64, want: f64, tol: f64) -> bool {
    got.signum() == want.signum() && ((got - want) / want).abs() <= tol
}

/// Liquid-drop fit of one row against the printed sigma and coefficients.
pub fn check_fit_row(row: &FitRow) -> Result<GoldenLine> {
    let scheme = build_scheme(&params(row.tau, row.epsilon)?, row.n_max)?;
    let fit = shell_decomposition(&scheme, row.n_cut)?.fit;
    let sigma_ok = within(fit.sigma, row.sigma, SIGMA_TOLERANCE);
    let mut detail = format!("sigma {:.3} (want {:.3})", fit.sigma, row.sigma);
    let mut pass = sigma_ok;
    for (k, (&got, &want)) in fit.coefficients.iter().zip(&row.coefficients).enumerate() {
        if !within(got, want, COEFFICIENT_TOLERANCE) {
            pass = false;
            detail.push_str(&format!("; a{} = {:.6} vs {} ({:+.1}%)", k + 1, got, want, 100.0 * (got / want - 1.0)));
        }
    }
    Ok(GoldenLine {
        name: format!("fit tau={} eps={} N_cut={}", row.tau, row.epsilon, row.n_cut),
        pass,
        detail,
    })
}

/// Every magic-number column followed by every fit row, in printed order.
pub fn run_all() -> Result<Vec<GoldenLine>> {
    let magic = std::thread::scope(|s| {
        let handles: Vec<_> = MAGIC_COLUMNS
            .iter()
            .map(|c| s.spawn(move || check_magic_column(c)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Result<Vec<_>>>()
    })?;
    let fits = std::thread::scope(|s| {
        let handles: Vec<_> = FIT_ROWS.iter().map(|r| s.spawn(move || check_fit_row(r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Result<Vec<_>>>()
    })?;
    Ok(magic.into_iter().chain(fits).collect())
}
