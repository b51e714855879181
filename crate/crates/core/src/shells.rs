//! Total energies, liquid-drop smoothing and the oscillating shell energy.
//!
//! `E(N)` is the sum of the `N` cheapest single-particle states. It is
//! averaged over 11-point windows centred at `N = 6, 17, 28, ...`, the
//! averages are fitted with a six-term expansion in powers of `N^(1/3)`, and
//! the shell energy is what the smooth fit leaves behind.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectrum::LevelScheme;

/// Number of liquid-drop coefficients.
pub const LIQUID_DROP_TERMS: usize = 6;

/// Total energies `E(1), E(2), ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySeries {
    values: Vec<f64>,
}

impl EnergySeries {
    pub fn from_values(values: Vec<f64>) -> Self {
        Self { values }
    }

    /// Largest `N` covered.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `E(N)` for `1 <= N <= len()`.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    /// `E(1..=len)` in order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Cumulative sums of the first `n_cut` single-particle energies.
pub fn total_energy_series(scheme: &LevelScheme, n_cut: usize) -> Result<EnergySeries> {
    if n_cut > scheme.total_capacity() {
        return Err(Error::CutExceedsScheme {
            n_cut,
            capacity: scheme.total_capacity(),
        });
    }
    let values = scheme
        .states()
        .take(n_cut)
        .scan(0.0, |acc, e| {
            *acc += e;
            Some(*acc)
        })
        .collect();
    Ok(EnergySeries { values })
}

/// Where and how `E(N)` is averaged before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct WindowSpec {
    /// First window centre.
    pub start: usize,
    /// Distance between centres.
    pub stride: usize,
    /// Points on each side of the centre; the window holds `2 * half_width + 1`.
    pub half_width: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            start: 6,
            stride: 11,
            half_width: 5,
        }
    }
}

impl WindowSpec {
    /// Centres `start, start + stride, ...` up to and including `last`.
    pub fn centers(&self, last: usize) -> impl Iterator<Item = usize> {
        (self.start..=last).step_by(self.stride.max(1))
    }
}

/// Centred window means `(N, mean E(N - h ..= N + h))` for every centre whose
/// full window lies inside the series.
pub fn window_samples(series: &EnergySeries, spec: WindowSpec) -> Vec<(usize, f64)> {
    let h = spec.half_width;
    let last = series.len().saturating_sub(h);
    spec.centers(last)
        .filter(|&c| c > h)
        .map(|c| {
            let window = &series.values[c - h - 1..c + h];
            (c, window.iter().sum::<f64>() / window.len() as f64)
        })
        .collect()
}

/// Coefficients of `E_av(N) = a1 N^(1/3) + a2 N^(2/3) + ... + a6 N^2`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LiquidDropFit {
    pub coefficients: [f64; LIQUID_DROP_TERMS],
    /// Root-mean-square residual over the fitted points.
    pub sigma: f64,
    pub n_points: usize,
    /// Largest particle number among the fitted points.
    pub n_cut: usize,
}

impl LiquidDropFit {
    pub fn eval(&self, n: f64) -> f64 {
        let x = n.cbrt();
        // Horner in x: x (a1 + x (a2 + ... + x a6))
        x * self
            .coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &a| acc * x + a)
    }
}

fn basis_row(n: f64) -> [f64; LIQUID_DROP_TERMS] {
    let x = n.cbrt();
    let mut row = [0.0; LIQUID_DROP_TERMS];
    let mut p = 1.0;
    for slot in row.iter_mut() {
        p *= x;
        *slot = p;
    }
    row
}

/// Least-squares fit of the liquid-drop expansion.
///
/// Columns are normalised and the system is solved through a Householder QR
/// factorisation, so the near-collinear power basis never forms normal
/// equations.
pub fn liquid_drop_fit(samples: &[(usize, f64)]) -> Result<LiquidDropFit> {
    let mut distinct: Vec<usize> = samples.iter().map(|&(n, _)| n).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < LIQUID_DROP_TERMS || distinct[0] == 0 {
        return Err(Error::RankDeficient {
            independent: distinct.iter().filter(|&&n| n > 0).count(),
            unknowns: LIQUID_DROP_TERMS,
        });
    }

    let m = samples.len();
    let mut a = DMatrix::<f64>::zeros(m, LIQUID_DROP_TERMS);
    for (i, &(n, _)) in samples.iter().enumerate() {
        for (j, v) in basis_row(n as f64).into_iter().enumerate() {
            a[(i, j)] = v;
        }
    }
    let b = DVector::from_iterator(m, samples.iter().map(|&(_, e)| e));

    let scale: Vec<f64> = (0..LIQUID_DROP_TERMS).map(|j| a.column(j).norm()).collect();
    for (j, s) in scale.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }

    let qr = a.clone().qr();
    let r = qr.r();
    let r_max = r.diagonal().amax();
    let independent = r
        .diagonal()
        .iter()
        .filter(|d| d.abs() > 1e-12 * r_max)
        .count();
    if independent < LIQUID_DROP_TERMS {
        return Err(Error::RankDeficient {
            independent,
            unknowns: LIQUID_DROP_TERMS,
        });
    }
    let qtb = qr.q().transpose() * &b;
    let y = r
        .solve_upper_triangular(&qtb)
        .ok_or(Error::RankDeficient {
            independent,
            unknowns: LIQUID_DROP_TERMS,
        })?;

    let mut coefficients = [0.0; LIQUID_DROP_TERMS];
    for (j, c) in coefficients.iter_mut().enumerate() {
        *c = y[j] / scale[j];
    }
    let residual = &b - &a * &y;
    let sigma = (residual.norm_squared() / m as f64).sqrt();

    Ok(LiquidDropFit {
        coefficients,
        sigma,
        n_points: m,
        n_cut: distinct[distinct.len() - 1],
    })
}

/// One sampled point of the decomposition `E = E_av + E_shell`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ShellSample {
    pub n: usize,
    pub e: f64,
    pub e_av: f64,
    pub e_shell: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ShellDecomposition {
    pub samples: Vec<ShellSample>,
    pub fit: LiquidDropFit,
    pub window: WindowSpec,
}

/// Window, fit and split the total energy up to particle number `n_cut`.
///
/// Window centres run up to `n_cut` inclusive. A window around a centre
/// near `n_cut` reads up to `half_width` states beyond it, so the scheme
/// must hold `n_cut + half_width` particles.
pub fn shell_decomposition(scheme: &LevelScheme, n_cut: usize) -> Result<ShellDecomposition> {
    shell_decomposition_with(scheme, n_cut, WindowSpec::default())
}

pub fn shell_decomposition_with(
    scheme: &LevelScheme,
    n_cut: usize,
    window: WindowSpec,
) -> Result<ShellDecomposition> {
    let needed = n_cut + window.half_width;
    if needed > scheme.total_capacity() {
        return Err(Error::CutExceedsScheme {
            n_cut: needed,
            capacity: scheme.total_capacity(),
        });
    }
    let series = total_energy_series(scheme, needed)?;
    let averaged: Vec<(usize, f64)> = window_samples(&series, window)
        .into_iter()
        .filter(|&(n, _)| n <= n_cut)
        .collect();
    let fit = liquid_drop_fit(&averaged)?;
    let samples = averaged
        .into_iter()
        .map(|(n, e)| {
            let e_av = fit.eval(n as f64);
            ShellSample {
                n,
                e,
                e_av,
                e_shell: e - e_av,
            }
        })
        .collect();
    Ok(ShellDecomposition {
        samples,
        fit,
        window,
    })
}

/// Particle number of the supershell node: where the oscillation amplitude
/// of `E_shell` is smallest.
///
/// The envelope is read off the local maxima of `|E_shell|`, smoothed with a
/// three-peak running mean, and divided by a power law `c N^p` fitted to the
/// peaks (shell amplitudes grow with `N`). The node is the envelope minimum
/// strictly between its first and last local maxima.
pub fn beat_node(dec: &ShellDecomposition) -> Result<usize> {
    let peaks = envelope(dec)?;
    let values: Vec<f64> = peaks.iter().map(|p| p.1).collect();
    let maxima: Vec<usize> = (1..values.len() - 1)
        .filter(|&j| values[j] >= values[j - 1] && values[j] > values[j + 1])
        .collect();
    let (first, last) = match (maxima.first(), maxima.last()) {
        (Some(&a), Some(&b)) if b > a + 1 => (a, b),
        _ => return Err(Error::TooFewExtrema),
    };
    let node = (first + 1..last)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .ok_or(Error::TooFewExtrema)?;
    Ok(peaks[node].0)
}

/// Normalised amplitude envelope `(N, a(N))` at the peaks of `|E_shell|`.
pub fn envelope(dec: &ShellDecomposition) -> Result<Vec<(usize, f64)>> {
    let mag: Vec<f64> = dec.samples.iter().map(|s| s.e_shell.abs()).collect();
    let peaks: Vec<usize> = (1..mag.len().saturating_sub(1))
        .filter(|&i| mag[i] >= mag[i - 1] && mag[i] > mag[i + 1])
        .collect();
    if peaks.len() < 3 {
        return Err(Error::TooFewExtrema);
    }
    let raw: Vec<f64> = peaks.iter().map(|&i| mag[i]).collect();
    let k = raw.len();
    let smooth: Vec<f64> = (0..k)
        .map(|j| {
            let lo = j.saturating_sub(1);
            let hi = (j + 1).min(k - 1);
            raw[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect();

    // log a = log c + p log N
    let xs: Vec<f64> = peaks.iter().map(|&i| (dec.samples[i].n as f64).ln()).collect();
    let ys: Vec<f64> = smooth.iter().map(|a| a.max(f64::MIN_POSITIVE).ln()).collect();
    let (slope, intercept) = simple_line(&xs, &ys);

    Ok(peaks
        .iter()
        .zip(xs.iter().zip(&smooth))
        .map(|(&i, (&x, &a))| (dec.samples[i].n, a / (intercept + slope * x).exp()))
        .collect())
}

fn simple_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qho::QhoParams;
    use crate::spectrum::build_scheme;
    use proptest::prelude::*;

    fn scheme(tau: f64, eps: f64, n_max: u32) -> LevelScheme {
        build_scheme(&QhoParams::unit_scale(tau, eps).unwrap(), n_max).unwrap()
    }

    #[test]
    fn undeformed_series() {
        let s = scheme(0.0, 0.0, 3);
        let e = total_energy_series(&s, 8).unwrap();
        assert_eq!(e.get(1), Some(0.0));
        assert_eq!(e.get(2), Some(0.0));
        assert_eq!(e.get(8), Some(6.0));
        assert_eq!(e.get(0), None);
        assert_eq!(e.get(9), None);
    }

    #[test]
    fn cut_beyond_scheme_is_rejected() {
        let s = scheme(0.0, 0.0, 1);
        assert_eq!(
            total_energy_series(&s, 9).unwrap_err(),
            Error::CutExceedsScheme { n_cut: 9, capacity: 8 }
        );
    }

    #[test]
    fn increments_are_sorted_state_energies() {
        let s = scheme(0.038, 0.006, 20);
        let e = total_energy_series(&s, s.total_capacity()).unwrap();
        let inc: Vec<f64> = std::iter::once(e.values()[0])
            .chain(e.values().windows(2).map(|w| w[1] - w[0]))
            .collect();
        assert!(inc.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    }

    #[test]
    fn window_abscissae_and_means() {
        let constant = EnergySeries::from_values(vec![3.5; 60]);
        let w = window_samples(&constant, WindowSpec::default());
        assert_eq!(w.iter().map(|p| p.0).take(3).collect::<Vec<_>>(), vec![6, 17, 28]);
        assert!(w.iter().all(|p| (p.1 - 3.5).abs() < 1e-14));
        // last centre whose window fits in 60 points is 50 (45..=55)
        assert_eq!(w.last().unwrap().0, 50);

        let linear = EnergySeries::from_values((1..=60).map(|n| 0.75 * n as f64).collect());
        for (n, v) in window_samples(&linear, WindowSpec::default()) {
            assert!((v - 0.75 * n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_model_recovery() {
        let truth = [-21.035, 18.295, -7.295, 1.9521, -0.06082, 0.0040857];
        let model = LiquidDropFit {
            coefficients: truth,
            sigma: 0.0,
            n_points: 0,
            n_cut: 0,
        };
        let samples: Vec<(usize, f64)> = (0..274)
            .map(|k| 6 + 11 * k)
            .map(|n| (n, model.eval(n as f64)))
            .collect();
        let fit = liquid_drop_fit(&samples).unwrap();
        for (got, want) in fit.coefficients.iter().zip(truth) {
            assert!(((got - want) / want).abs() < 1e-8, "{got} vs {want}");
        }
        assert!(fit.sigma < 1e-7);
        assert_eq!(fit.n_cut, 3009);
    }

    #[test]
    fn too_few_samples_is_rank_deficient() {
        let samples: Vec<(usize, f64)> = (1..=5).map(|n| (n, n as f64)).collect();
        assert!(matches!(liquid_drop_fit(&samples), Err(Error::RankDeficient { .. })));
        let repeated = vec![(5, 1.0); 20];
        assert!(matches!(liquid_drop_fit(&repeated), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn residuals_are_orthogonal_to_basis() {
        let s = scheme(0.038, 0.0, 26);
        let dec = shell_decomposition(&s, 3009).unwrap();
        let scale: f64 = dec.samples.iter().map(|x| x.e.abs()).fold(0.0, f64::max);
        for j in 0..LIQUID_DROP_TERMS {
            let mut dot = 0.0;
            let mut norm = 0.0;
            for smp in &dec.samples {
                let b = basis_row(smp.n as f64)[j];
                dot += b * smp.e_shell;
                norm += b * b;
            }
            let rel = dot.abs() / (norm.sqrt() * scale);
            assert!(rel < 1e-6, "column {j}: {rel}");
        }
    }

    #[test]
    fn decomposition_is_exact_split() {
        let s = scheme(0.05, 0.005, 26);
        let dec = shell_decomposition(&s, 2008).unwrap();
        assert_eq!(dec.samples.first().unwrap().n, 6);
        assert_eq!(dec.samples.last().unwrap().n, 2008);
        for smp in &dec.samples {
            assert_eq!(smp.e - smp.e_av - smp.e_shell, 0.0);
        }
    }

    #[test]
    fn decomposition_needs_states_past_the_cut() {
        let s = scheme(0.0, 0.0, 4);
        // 70 states; the window around 61 reads up to 66
        assert!(shell_decomposition(&s, 61).is_ok());
        assert!(matches!(
            shell_decomposition(&s, 66),
            Err(Error::CutExceedsScheme { .. })
        ));
    }

    #[test]
    fn beat_node_of_synthetic_beat() {
        // sin(aN) cos(bN); cos(bN) vanishes at N = pi / (2b)
        let a = 2.0 * std::f64::consts::PI / 90.0;
        let b = std::f64::consts::PI / 2.0 / 1000.0;
        let samples = (0..274)
            .map(|k| 6 + 11 * k)
            .map(|n| {
                let x = n as f64;
                ShellSample {
                    n,
                    e: 0.0,
                    e_av: 0.0,
                    e_shell: 5.0 * (a * x).sin() * (b * x).cos(),
                }
            })
            .collect();
        let dec = ShellDecomposition {
            samples,
            fit: LiquidDropFit {
                coefficients: [0.0; 6],
                sigma: 0.0,
                n_points: 0,
                n_cut: 0,
            },
            window: WindowSpec::default(),
        };
        let node = beat_node(&dec).unwrap() as f64;
        // peaks sit every half period of sin(aN), so the nearest one is within 45
        assert!((node - 1000.0).abs() <= 45.0 + 11.0, "node={node}");
    }

    #[test]
    fn beat_node_needs_extrema() {
        let samples = (1..10)
            .map(|n| ShellSample {
                n,
                e: 0.0,
                e_av: 0.0,
                e_shell: n as f64,
            })
            .collect();
        let dec = ShellDecomposition {
            samples,
            fit: LiquidDropFit {
                coefficients: [0.0; 6],
                sigma: 0.0,
                n_points: 0,
                n_cut: 0,
            },
            window: WindowSpec::default(),
        };
        assert_eq!(beat_node(&dec), Err(Error::TooFewExtrema));
    }

    proptest! {
        #[test]
        fn adding_a_point_on_the_curve_never_raises_sigma(k in 0usize..200, frac in 0.0f64..1.0) {
            let s = scheme(0.038, 0.007, 22);
            let series = total_energy_series(&s, 1200).unwrap();
            let mut samples = window_samples(&series, WindowSpec::default());
            let fit = liquid_drop_fit(&samples).unwrap();
            let n = 1 + k * 5 + (frac * 4.0) as usize;
            samples.push((n, fit.eval(n as f64)));
            let refit = liquid_drop_fit(&samples).unwrap();
            prop_assert!(refit.sigma <= fit.sigma * (1.0 + 1e-9));
        }
    }
}
