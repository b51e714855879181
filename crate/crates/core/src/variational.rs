//! Energies obtained by minimising over a quantum-number dependent
//! collective parameter (hbar = 1 throughout).
//!
//! * Variable moment of inertia: `E(J) = J(J+1) / (2 Theta) + C/2 (Theta - Theta0)^2`,
//!   minimised over `Theta` at fixed `J`.
//! * Variable frequency oscillator: `E(n) = omega (n + 1/2) + C/2 (omega - omega0)^2`,
//!   minimised over `omega`, which gives a Morse-like spectrum.
//! * The same construction on the q-deformed oscillator, where `n + 1/2` is
//!   replaced by `e_q(n, l)`; it reproduces `E - epsilon E^2` with
//!   `epsilon = 1 / (2 C omega0^2)`.

use crate::error::{Error, Result};
use crate::qho::{e_q, QuantumNumbers};

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and > 0, got {v}"),
        })
    }
}

/// Stiffness against stretching the moment of inertia, and its ground-state value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VmiParams {
    pub stiffness: f64,
    pub theta0: f64,
}

impl VmiParams {
    pub fn new(stiffness: f64, theta0: f64) -> Result<Self> {
        positive("C", stiffness)?;
        if !(theta0.is_finite() && theta0 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "theta0",
                reason: format!("must be finite and >= 0, got {theta0}"),
            });
        }
        Ok(Self { stiffness, theta0 })
    }

    /// `C Theta^2 (Theta - Theta0) - J(J+1)/2`; zero at the equilibrium moment.
    pub fn equilibrium_residual(&self, j: u32, theta: f64) -> f64 {
        self.stiffness * theta * theta * (theta - self.theta0) - half_jj1(j)
    }
}

fn half_jj1(j: u32) -> f64 {
    let j = f64::from(j);
    j * (j + 1.0) / 2.0
}

/// Moment of inertia that minimises the VMI energy at spin `j`.
///
/// The stationarity condition is the cubic `C Theta^2 (Theta - Theta0) = J(J+1)/2`,
/// whose left side increases monotonically past `Theta0`. The root is
/// bisected on `[Theta0, Theta0 + cbrt(J(J+1) / (2C)) + 1]` down to adjacent
/// floating-point values.
pub fn vmi_theta(j: u32, p: &VmiParams) -> f64 {
    if j == 0 {
        return p.theta0;
    }
    let mut lo = p.theta0;
    let mut hi = p.theta0 + (half_jj1(j) / p.stiffness).cbrt() + 1.0;
    debug_assert!(p.equilibrium_residual(j, hi) > 0.0);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p.equilibrium_residual(j, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // pick the endpoint with the smaller residual
    if p.equilibrium_residual(j, lo).abs() <= p.equilibrium_residual(j, hi).abs() {
        lo
    } else {
        hi
    }
}

/// VMI level energy at the equilibrium moment of inertia.
pub fn vmi_energy(j: u32, p: &VmiParams) -> f64 {
    if j == 0 {
        return 0.0;
    }
    let theta = vmi_theta(j, p);
    half_jj1(j) / theta + 0.5 * p.stiffness * (theta - p.theta0).powi(2)
}

/// `J(J+1) / (2 Theta0)`.
pub fn rigid_rotor_energy(j: u32, theta0: f64) -> f64 {
    half_jj1(j) / theta0
}

/// Stiffness `C` against frequency changes and the ground-state frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VfoParams {
    pub stiffness: f64,
    pub omega0: f64,
}

impl VfoParams {
    pub fn new(stiffness: f64, omega0: f64) -> Result<Self> {
        Ok(Self {
            stiffness: positive("C", stiffness)?,
            omega0: positive("omega0", omega0)?,
        })
    }

    /// Squeeze coefficient `1 / (2 C omega0^2)` of `E - epsilon E^2`.
    pub fn epsilon(&self) -> f64 {
        1.0 / (2.0 * self.stiffness * self.omega0 * self.omega0)
    }
}

/// Frequency minimising the oscillator energy at level `n`: `omega0 - (n + 1/2) / C`.
pub fn vho_frequency(n: u32, p: &VfoParams) -> f64 {
    p.omega0 - (f64::from(n) + 0.5) / p.stiffness
}

/// `omega0 (n + 1/2) - (n + 1/2)^2 / (2C)`.
pub fn vho_spectrum(n: u32, p: &VfoParams) -> f64 {
    let v = f64::from(n) + 0.5;
    p.omega0 * v - v * v / (2.0 * p.stiffness)
}

/// Variable-frequency energy before minimisation, at an arbitrary `omega`.
pub fn vho_energy_at(n: u32, p: &VfoParams, omega: f64) -> f64 {
    omega * (f64::from(n) + 0.5) + 0.5 * p.stiffness * (omega - p.omega0).powi(2)
}

/// Morse well `V(x) = D (1 - exp(-alpha x))^2` for a particle of mass `mass`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    pub depth: f64,
    pub alpha: f64,
    pub mass: f64,
}

impl MorseParams {
    pub fn new(depth: f64, alpha: f64, mass: f64) -> Result<Self> {
        Ok(Self {
            depth: positive("D", depth)?,
            alpha: positive("alpha", alpha)?,
            mass: positive("mass", mass)?,
        })
    }

    /// `alpha sqrt(2D / m)`.
    pub fn omega(&self) -> f64 {
        self.alpha * (2.0 * self.depth / self.mass).sqrt()
    }

    /// Anharmonicity `alpha / (2 sqrt(2 m D))`.
    pub fn x_e(&self) -> f64 {
        0.5 * self.alpha / (2.0 * self.mass * self.depth).sqrt()
    }

    /// Highest `n` with a rising spectrum, `floor(1 / (2 x_e) - 1/2)`.
    pub fn n_bound(&self) -> u32 {
        let top = 1.0 / (2.0 * self.x_e()) - 0.5;
        if top < 0.0 {
            0
        } else {
            top.floor() as u32
        }
    }

    /// Oscillator with the same spectrum: `omega0 = omega`, `C = 1 / (2 omega x_e)`.
    pub fn equivalent_vfo(&self) -> VfoParams {
        let omega = self.omega();
        VfoParams {
            stiffness: 1.0 / (2.0 * omega * self.x_e()),
            omega0: omega,
        }
    }
}

/// `omega [(n + 1/2) - x_e (n + 1/2)^2]`.
pub fn morse_spectrum(n: u32, p: &MorseParams) -> f64 {
    let v = f64::from(n) + 0.5;
    p.omega() * (v - p.x_e() * v * v)
}

/// Level frequency from minimising the deformed energy: `omega(0,0) - e_q / C`.
pub fn qvfo_frequency(qn: QuantumNumbers, tau: f64, p: &VfoParams) -> f64 {
    p.omega0 - e_q(qn, tau) / p.stiffness
}

/// Level frequency written as `omega0 (1 - epsilon omega0 e_q)` with
/// `epsilon = 1 / (2 C omega0^2)`, i.e. `omega0 - e_q / (2C)`.
///
/// Multiplied by `e_q` this gives the same level energy as [`qvfo_energy`];
/// the frequency itself is half as far from `omega0` as [`qvfo_frequency`].
pub fn squeezed_frequency(qn: QuantumNumbers, tau: f64, p: &VfoParams) -> f64 {
    p.omega0 * (1.0 - p.epsilon() * p.omega0 * e_q(qn, tau))
}

/// `omega e_q + C/2 (omega - omega(0,0))^2` at an arbitrary `omega`.
pub fn qvfo_energy_at(qn: QuantumNumbers, tau: f64, p: &VfoParams, omega: f64) -> f64 {
    omega * e_q(qn, tau) + 0.5 * p.stiffness * (omega - p.omega0).powi(2)
}

/// Minimised deformed energy `omega(0,0) e_q - e_q^2 / (2C)`.
pub fn qvfo_energy(qn: QuantumNumbers, tau: f64, p: &VfoParams) -> f64 {
    let e = e_q(qn, tau);
    p.omega0 * e - e * e / (2.0 * p.stiffness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qho::{energy, vfo_energy, QhoParams};
    use proptest::prelude::*;

    /// Plain bisection on `t^3 - t^2 - 3` over [1, 3], independent of the solver.
    fn oracle_theta_j2() -> f64 {
        let f = |t: f64| t * t * t - t * t - 3.0;
        let (mut lo, mut hi) = (1.0f64, 3.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid
            } else {
                lo = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn vmi_examples() {
        let p = VmiParams::new(1.0, 1.0).unwrap();
        assert_eq!(vmi_theta(0, &p), 1.0);
        assert_eq!(vmi_energy(0, &p), 0.0);
        let theta = vmi_theta(2, &p);
        let oracle = oracle_theta_j2();
        assert!((theta - oracle).abs() < 1e-10);
        assert!((theta - 1.8637).abs() < 1e-4);
        let e = vmi_energy(2, &p);
        assert!((e - (3.0 / oracle + 0.5 * (oracle - 1.0).powi(2))).abs() < 1e-10);
        assert!((e - 1.9828).abs() < 1e-3);
    }

    #[test]
    fn vmi_rigid_limit() {
        let stiff = VmiParams::new(1e12, 1.0).unwrap();
        assert!((vmi_theta(2, &stiff) - 1.0).abs() < 1e-3);
        assert!((vmi_energy(2, &stiff) - 3.0).abs() < 1e-3);
        let zero = VmiParams::new(2.0, 0.0).unwrap();
        assert_eq!(vmi_energy(0, &zero), 0.0);
        assert!((vmi_theta(3, &zero) - (6.0f64 / 2.0).cbrt()).abs() < 1e-12);
    }

    #[test]
    fn vmi_theta_stretches_and_residual_vanishes() {
        for (c, t0) in [(0.1, 0.0), (1.0, 1.0), (25.0, 4.0), (1e4, 0.3)] {
            let p = VmiParams::new(c, t0).unwrap();
            let mut prev = vmi_theta(0, &p);
            for j in 1..=40 {
                let t = vmi_theta(j, &p);
                assert!(t > prev, "C={c} J={j}");
                assert!(p.equilibrium_residual(j, t).abs() <= 1e-10, "C={c} J={j}");
                assert!(vmi_energy(j, &p) < rigid_rotor_energy(j, t0) || t0 == 0.0);
                prev = t;
            }
        }
    }

    #[test]
    fn vho_examples() {
        let p = VfoParams::new(1.0, 1.0).unwrap();
        assert!((vho_spectrum(0, &p) - 0.375).abs() < 1e-15);
        assert!((vho_frequency(0, &p) - 0.5).abs() < 1e-15);
        let stiff = VfoParams::new(1e15, 2.0).unwrap();
        for n in 0..10 {
            assert!((vho_spectrum(n, &stiff) - 2.0 * (n as f64 + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn vho_is_stationary_in_omega() {
        let p = VfoParams::new(7.0, 3.0).unwrap();
        for n in 0..12 {
            let w = vho_frequency(n, &p);
            let h = 1e-5;
            let d = (vho_energy_at(n, &p, w + h) - vho_energy_at(n, &p, w - h)) / (2.0 * h);
            assert!(d.abs() < 1e-8);
            assert!((vho_energy_at(n, &p, w) - vho_spectrum(n, &p)).abs() < 1e-12);
        }
    }

    #[test]
    fn vho_second_difference_is_minus_one_over_c() {
        let p = VfoParams::new(4.0, 1.5).unwrap();
        for n in 1..20 {
            let d2 = vho_spectrum(n + 1, &p) - 2.0 * vho_spectrum(n, &p) + vho_spectrum(n - 1, &p);
            assert!((d2 + 1.0 / p.stiffness).abs() < 1e-12);
        }
    }

    #[test]
    fn morse_examples() {
        let p = MorseParams::new(2.0, 1.0, 1.0).unwrap();
        assert!((p.omega() - 2.0).abs() < 1e-15);
        assert!((p.x_e() - 0.25).abs() < 1e-15);
        assert!((morse_spectrum(0, &p) - 0.875).abs() < 1e-15);
        for d in [0.5, 2.0, 30.0] {
            let q = MorseParams::new(d, 1.3, 0.7).unwrap();
            assert!((q.omega() * q.x_e() - 1.3 * 1.3 / (2.0 * 0.7)).abs() < 1e-14);
        }
    }

    #[test]
    fn morse_matches_variable_frequency_oscillator() {
        let p = MorseParams::new(12.0, 0.8, 1.5).unwrap();
        let v = p.equivalent_vfo();
        for n in 0..=p.n_bound() {
            let a = morse_spectrum(n, &p);
            let b = vho_spectrum(n, &v);
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }

    #[test]
    fn deformed_frequency_examples() {
        let p = VfoParams::new(50.0, 1.0).unwrap();
        let g = QuantumNumbers::new(0, 0).unwrap();
        let first = QuantumNumbers::new(1, 1).unwrap();
        assert_eq!(qvfo_frequency(g, 0.038, &p), 1.0);
        assert!((qvfo_frequency(first, 0.038, &p) - (1.0 - 1.0 / 50.0)).abs() < 1e-14);
        assert_eq!(qvfo_energy(g, 0.05, &p), 0.0);
        assert!((qvfo_energy(first, 0.05, &p) - (1.0 - 1.0 / 100.0)).abs() < 1e-14);
        // both frequency readings give the same level energy
        let qn = QuantumNumbers::new(9, 5).unwrap();
        let e = e_q(qn, 0.038);
        assert!((squeezed_frequency(qn, 0.038, &p) * e - qvfo_energy(qn, 0.038, &p)).abs() < 1e-12);
        let shift30 = p.omega0 - qvfo_frequency(qn, 0.038, &p);
        let shift13 = p.omega0 - squeezed_frequency(qn, 0.038, &p);
        assert!((shift30 - 2.0 * shift13).abs() < 1e-12);
    }

    #[test]
    fn deformed_energy_is_stationary_in_omega() {
        let p = VfoParams::new(80.0, 1.3).unwrap();
        for qn in QuantumNumbers::up_to(8) {
            let w = qvfo_frequency(qn, 0.05, &p);
            let h = 1e-5;
            let d = (qvfo_energy_at(qn, 0.05, &p, w + h) - qvfo_energy_at(qn, 0.05, &p, w - h)) / (2.0 * h);
            assert!(d.abs() < 1e-7);
            assert!((qvfo_energy_at(qn, 0.05, &p, w) - qvfo_energy(qn, 0.05, &p)).abs() < 1e-10);
        }
    }

    #[test]
    fn deformed_energy_equals_squeezed_spectrum_on_grid() {
        for tau in [0.038, 0.05] {
            for c in [50.0, 100.0, 500.0] {
                let v = VfoParams::new(c, 1.0).unwrap();
                let q = QhoParams::from_stiffness(tau, c, 1.0).unwrap();
                for qn in QuantumNumbers::up_to(10) {
                    let a = qvfo_energy(qn, tau, &v);
                    let b = vfo_energy(energy(qn, &q), &q);
                    assert!((a - b).abs() <= 1e-12 * a.abs(), "{qn:?} tau={tau} C={c}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn deformed_energy_equals_squeezed_spectrum(
            n in 0u32..30, k in 0u32..15, tau in -0.1f64..0.1, c in 5.0f64..2000.0, w in 0.2f64..5.0,
        ) {
            let l = n - 2 * (k.min(n / 2));
            let qn = QuantumNumbers::new(n, l).unwrap();
            let v = VfoParams::new(c, w).unwrap();
            let q = QhoParams::from_stiffness(tau, c, w).unwrap();
            let a = qvfo_energy(qn, tau, &v);
            let b = vfo_energy(energy(qn, &q), &q);
            // bound by the size of the two terms, which may cancel
            let e = e_q(qn, tau);
            let scale = w * e.abs() + e * e / (2.0 * c);
            prop_assert!((a - b).abs() <= 1e-12 * scale.max(1e-300));
        }
    }
}
