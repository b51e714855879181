//! Periodic orbits of electrons in a spherical cavity and the magic-number
//! slope test.
//!
//! A cluster of `N` atoms is a sphere of radius `R = r_s N^(1/3)`. Interference
//! of the triangular and square orbits predicts `N_i^(1/3) ~ 0.605 i` for the
//! `i`-th shell closure of an alkali cluster.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::spectrum::MagicTable;

/// Slope of `N_i^(1/3)` against `i` with the universal alkali constant folded in.
pub const CALIBRATED_SLOPE: f64 = 0.605;

fn sqrt3() -> f64 {
    3f64.sqrt()
}

/// Spherical cavity of a metal cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityModel {
    /// Wigner–Seitz radius.
    pub r_s: f64,
    pub v_f: f64,
    pub m_e: f64,
    pub h: f64,
}

impl CavityModel {
    pub fn new(r_s: f64, v_f: f64, m_e: f64, h: f64) -> Result<Self> {
        for (name, v) in [("r_s", r_s), ("v_f", v_f), ("m_e", m_e), ("h", h)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and > 0, got {v}"),
                });
            }
        }
        Ok(Self { r_s, v_f, m_e, h })
    }

    /// Model whose `h / (m v_F r_s)` equals one.
    pub fn unit(r_s: f64) -> Result<Self> {
        Self::new(r_s, 1.0 / r_s, 1.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Triangle,
    Square,
}

impl OrbitKind {
    /// Orbit length in units of the cavity radius.
    pub fn perimeter_factor(self) -> f64 {
        match self {
            OrbitKind::Triangle => 3.0 * sqrt3(),
            OrbitKind::Square => 4.0 * SQRT_2,
        }
    }
}

pub fn cavity_radius(model: &CavityModel, n: usize) -> f64 {
    model.r_s * (n as f64).cbrt()
}

pub fn orbit_length(model: &CavityModel, n: usize, kind: OrbitKind) -> f64 {
    kind.perimeter_factor() * cavity_radius(model, n)
}

/// `h / (m v_F r_s) * 2 / (3 sqrt3 + 4 sqrt2)`.
pub fn balian_bloch_slope(model: &CavityModel) -> f64 {
    let prefactor = model.h / (model.m_e * model.v_f * model.r_s);
    prefactor * 2.0 / (OrbitKind::Triangle.perimeter_factor() + OrbitKind::Square.perimeter_factor())
}

/// How the line through `(i, N_i^(1/3))` is anchored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Intercept {
    /// Ordinary least squares with a fitted intercept.
    #[default]
    Free,
    /// Proportional fit `N_i^(1/3) = s i`.
    Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms: f64,
    pub i_range: (usize, usize),
}

impl SlopeFit {
    pub fn predict(&self, i: f64) -> f64 {
        self.intercept + self.slope * i
    }
}

fn cube_root_points(magic: &MagicTable, i_from: usize, i_to: usize) -> Result<Vec<(f64, f64)>> {
    let len = magic.entries.len();
    if i_from < 1 || i_to > len || i_to <= i_from {
        return Err(Error::RangeOutOfTable {
            from: i_from,
            to: i_to,
            len,
        });
    }
    Ok(magic.entries[i_from - 1..i_to]
        .iter()
        .map(|&(i, n)| (i as f64, (n as f64).cbrt()))
        .collect())
}

/// Least-squares line `y = b + s x`; returns `(s, b, rms)`.
pub fn fit_line(pts: &[(f64, f64)], intercept: Intercept) -> (f64, f64, f64) {
    let k = pts.len() as f64;
    let (slope, b) = match intercept {
        Intercept::Free => {
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
            let s = sxy / sxx;
            (s, my - s * mx)
        }
        Intercept::Origin => {
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            (sxy / sxx, 0.0)
        }
    };
    let rms = (pts.iter().map(|p| (p.1 - b - slope * p.0).powi(2)).sum::<f64>() / k).sqrt();
    (slope, b, rms)
}

/// Least-squares line through `(i, N_i^(1/3))` for `i_from <= i <= i_to`.
pub fn fit_cuberoot_line(
    magic: &MagicTable,
    i_from: usize,
    i_to: usize,
    intercept: Intercept,
) -> Result<SlopeFit> {
    let pts = cube_root_points(magic, i_from, i_to)?;
    let (slope, b, rms) = fit_line(&pts, intercept);
    Ok(SlopeFit {
        slope,
        intercept: b,
        rms,
        i_range: (i_from, i_to),
    })
}

/// Residual step around a candidate supershell node.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PhaseShiftReport {
    /// Last index before the candidate node.
    pub split: usize,
    pub mean_before: f64,
    pub mean_after: f64,
    /// `(mean_after - mean_before) / slope`, in units of the running index.
    pub shift_in_index: f64,
}

/// Compare mean residuals of `fit` on either side of `split`.
///
/// Crossing a supershell node is expected to shift the closures by about
/// half a unit of `i`; the report gives the size of the step and leaves the
/// judgement to the caller.
pub fn phase_shift_report(magic: &MagicTable, fit: &SlopeFit, split: usize) -> Result<PhaseShiftReport> {
    let (from, to) = fit.i_range;
    if split < from || split >= to {
        return Err(Error::RangeOutOfTable {
            from: split,
            to: split + 1,
            len: magic.entries.len(),
        });
    }
    let pts = cube_root_points(magic, from, to)?;
    let resid = |p: &(f64, f64)| p.1 - fit.predict(p.0);
    let (before, after): (Vec<_>, Vec<_>) = pts.iter().partition(|p| p.0 <= split as f64);
    let mean = |v: &[&(f64, f64)]| v.iter().map(|p| resid(p)).sum::<f64>() / v.len() as f64;
    let mean_before = mean(&before);
    let mean_after = mean(&after);
    Ok(PhaseShiftReport {
        split,
        mean_before,
        mean_after,
        shift_in_index: (mean_after - mean_before) / fit.slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(numbers: &[usize]) -> MagicTable {
        MagicTable {
            entries: numbers.iter().enumerate().map(|(k, &n)| (k + 1, n)).collect(),
            delta: 0.38,
        }
    }

    #[test]
    fn radius_examples() {
        let one = CavityModel::unit(1.0).unwrap();
        let two = CavityModel::unit(2.0).unwrap();
        assert!((cavity_radius(&one, 1) - 1.0).abs() < 1e-15);
        assert!((cavity_radius(&two, 8) - 4.0).abs() < 1e-14);
        assert!((cavity_radius(&one, 1000) - 10.0).abs() < 1e-13);
    }

    #[test]
    fn orbit_lengths() {
        let m = CavityModel::unit(1.0).unwrap();
        assert!((orbit_length(&m, 1, OrbitKind::Triangle) - 5.196_152_42).abs() < 1e-8);
        assert!((orbit_length(&m, 1, OrbitKind::Square) - 5.656_854_25).abs() < 1e-8);
        let want = 4.0 * SQRT_2 / (3.0 * sqrt3());
        for n in [1, 20, 1000, 4658] {
            let t = orbit_length(&m, n, OrbitKind::Triangle);
            let s = orbit_length(&m, n, OrbitKind::Square);
            assert!(t < s);
            assert!((s / t - want).abs() < 1e-14);
        }
    }

    #[test]
    fn slope_formula() {
        let unit = CavityModel::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((balian_bloch_slope(&unit) - 0.184_281).abs() < 1e-5);
        let wider = CavityModel::new(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!((balian_bloch_slope(&wider) - balian_bloch_slope(&unit) / 2.0).abs() < 1e-15);
        // calibrating h/(m v_F r_s) to 0.605/0.184281 reproduces the alkali slope
        let k = CALIBRATED_SLOPE / balian_bloch_slope(&unit);
        let alkali = CavityModel::new(1.0, 1.0, 1.0, k).unwrap();
        assert!((balian_bloch_slope(&alkali) - CALIBRATED_SLOPE).abs() < 1e-12);
        assert!(CavityModel::new(0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn exact_line_recovery() {
        let pts: Vec<(f64, f64)> = (1..=14).map(|i| (i as f64, 0.61 * i as f64)).collect();
        for mode in [Intercept::Free, Intercept::Origin] {
            let (slope, b, rms) = fit_line(&pts, mode);
            assert!((slope - 0.61).abs() < 1e-12);
            assert!(b.abs() < 1e-12);
            assert!(rms < 1e-12);
        }
        let cubes = fit_cuberoot_line(&table(&[1, 8, 27, 64, 125]), 1, 5, Intercept::Free).unwrap();
        assert!((cubes.slope - 1.0).abs() < 1e-12);
        assert!(cubes.intercept.abs() < 1e-12);
        assert!(cubes.rms < 1e-12);
    }

    #[test]
    fn range_checks() {
        let t = table(&[2, 8, 20]);
        assert!(matches!(
            fit_cuberoot_line(&t, 1, 4, Intercept::Free),
            Err(Error::RangeOutOfTable { .. })
        ));
        assert!(fit_cuberoot_line(&t, 2, 2, Intercept::Free).is_err());
        assert!(fit_cuberoot_line(&t, 0, 2, Intercept::Free).is_err());
        assert!(fit_cuberoot_line(&t, 1, 2, Intercept::Free).is_ok());
    }

    #[test]
    fn slope_ignores_index_shift() {
        let numbers = [2, 8, 20, 34, 40, 58, 92, 138, 198, 254];
        let base = fit_cuberoot_line(&table(&numbers), 1, 10, Intercept::Free).unwrap();
        let mut shifted = table(&numbers);
        for e in &mut shifted.entries {
            e.0 += 7;
        }
        let pts: Vec<(f64, f64)> = shifted.entries.iter().map(|&(i, n)| (i as f64, (n as f64).cbrt())).collect();
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
            / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
        assert!((slope - base.slope).abs() < 1e-12);
    }

    #[test]
    fn phase_shift_step() {
        // closures on 0.6 i, then on 0.6 (i + 1/2) beyond i = 6
        let numbers: Vec<usize> = (1..=12)
            .map(|i| {
                let x = if i <= 6 { 0.6 * i as f64 } else { 0.6 * (i as f64 + 0.5) };
                (x.powi(3) * 1000.0).round() as usize
            })
            .collect();
        let t = table(&numbers);
        // cube roots carry the factor 10 from the 1000 scale
        let fit = SlopeFit {
            slope: 6.0,
            intercept: 0.0,
            rms: 0.0,
            i_range: (1, 12),
        };
        let rep = phase_shift_report(&t, &fit, 6).unwrap();
        assert!((rep.shift_in_index - 0.5).abs() < 0.01, "{rep:?}");
        assert!(rep.mean_before.abs() < 0.01);
        let free = fit_cuberoot_line(&t, 1, 12, Intercept::Free).unwrap();
        assert!(phase_shift_report(&t, &free, 6).unwrap().shift_in_index > 0.0);
        assert!(phase_shift_report(&t, &fit, 12).is_err());
    }
}
