//! The three-dimensional q-deformed harmonic oscillator.
//!
//! Single-particle energies are closed-form in the deformation `tau`
//! (with `q = e^tau`):
//!
//! ```text
//! e_q(n, l) = [n] q^(n+1) - q (q - 1/q) / [2] * [l] [l+1]
//! [x]       = (q^x - q^-x) / (q - 1/q) = sinh(tau x) / sinh(tau)
//! ```
//!
//! and the variable-frequency extension adds a quadratic squeeze,
//! `E' = E - epsilon E^2`.

use crate::error::{Error, Result};

/// Below this `|tau|` the sinh ratio is replaced by its second-order series.
pub const SMALL_TAU: f64 = 1e-6;

/// Model configuration: deformation, anharmonicity and energy scale.
///
/// `epsilon` is measured in units of `1 / hbar_omega0`, so the squeeze term is
/// `epsilon * E^2 / hbar_omega0` and the spectrum scales linearly with
/// `hbar_omega0`. With the default scale of 1 this is the plain `E - epsilon E^2`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QhoParams {
    pub tau: f64,
    pub epsilon: f64,
    pub hbar_omega0: f64,
}

impl QhoParams {
    pub fn new(tau: f64, epsilon: f64, hbar_omega0: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::InvalidParameter {
                name: "tau",
                reason: format!("must be a finite real number, got {tau}"),
            });
        }
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                reason: format!("must be finite and >= 0, got {epsilon}"),
            });
        }
        if !(hbar_omega0.is_finite() && hbar_omega0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "hbar_omega0",
                reason: format!("must be finite and > 0, got {hbar_omega0}"),
            });
        }
        Ok(Self {
            tau,
            epsilon,
            hbar_omega0,
        })
    }

    /// `hbar_omega0 = 1`.
    pub fn unit_scale(tau: f64, epsilon: f64) -> Result<Self> {
        Self::new(tau, epsilon, 1.0)
    }

    /// Parameters of the oscillator obtained by minimising the energy with
    /// respect to a level-dependent frequency with stiffness `stiffness` and
    /// ground-state frequency `omega00` (hbar = 1).
    ///
    /// The squeeze coefficient is `1 / (2 C omega00^2)` in energy units, i.e.
    /// `1 / (2 C omega00)` in units of `1 / hbar_omega0`.
    pub fn from_stiffness(tau: f64, stiffness: f64, omega00: f64) -> Result<Self> {
        if !(stiffness.is_finite() && stiffness > 0.0) {
            return Err(Error::InvalidParameter {
                name: "C",
                reason: format!("must be finite and > 0, got {stiffness}"),
            });
        }
        let epsilon_energy = 1.0 / (2.0 * stiffness * omega00 * omega00);
        Self::new(tau, epsilon_energy * omega00, omega00)
    }

    pub fn q(&self) -> f64 {
        self.tau.exp()
    }
}

/// Oscillator quanta `n` and angular momentum `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if l > n || !(n - l).is_multiple_of(2) {
            return Err(Error::InvalidQuantumNumbers { n, l });
        }
        Ok(Self { n, l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// All valid `(n, l)` with `n <= n_max`, shell by shell, `l` descending.
    pub fn up_to(n_max: u32) -> impl Iterator<Item = QuantumNumbers> {
        (0..=n_max).flat_map(|n| allowed_l(n).into_iter().map(move |l| QuantumNumbers { n, l }))
    }
}

/// q-number `[x] = sinh(tau x) / sinh(tau)`.
pub fn q_number(x: f64, tau: f64) -> f64 {
    if tau.abs() < SMALL_TAU {
        // sinh ratio -> x (1 + tau^2 (x^2 - 1) / 6) + O(tau^4)
        x * (1.0 + tau * tau * (x * x - 1.0) / 6.0)
    } else {
        (tau * x).sinh() / tau.sinh()
    }
}

/// Angular momenta `n, n-2, ..., 0 or 1` present in shell `n`.
pub fn allowed_l(n: u32) -> Vec<u32> {
    (0..=n).rev().step_by(2).collect()
}

/// Dimensionless eigenvalue `e_q(n, l)`.
pub fn e_q(qn: QuantumNumbers, tau: f64) -> f64 {
    let q = tau.exp();
    let n = f64::from(qn.n);
    let l = f64::from(qn.l);
    let coupling = q * (q - 1.0 / q) / q_number(2.0, tau);
    q_number(n, tau) * q.powf(n + 1.0) - coupling * q_number(l, tau) * q_number(l + 1.0, tau)
}

/// Oscillator energy `hbar_omega0 * e_q`.
pub fn energy(qn: QuantumNumbers, p: &QhoParams) -> f64 {
    p.hbar_omega0 * e_q(qn, p.tau)
}

/// Squeezed energy `E - epsilon E^2 / hbar_omega0`.
///
/// Only order-preserving below `E = hbar_omega0 / (2 epsilon)`; see
/// [`vfo_turning_energy`].
pub fn vfo_energy(e: f64, p: &QhoParams) -> f64 {
    e - p.epsilon * e * e / p.hbar_omega0
}

/// Energy above which `vfo_energy` stops increasing (`+inf` when `epsilon = 0`).
pub fn vfo_turning_energy(p: &QhoParams) -> f64 {
    if p.epsilon == 0.0 {
        f64::INFINITY
    } else {
        p.hbar_omega0 / (2.0 * p.epsilon)
    }
}

/// Second-order small-`tau` expansion of `e_q`.
pub fn taylor_energy(qn: QuantumNumbers, tau: f64) -> f64 {
    let n = f64::from(qn.n);
    let l = f64::from(qn.l);
    let ll = l * (l + 1.0);
    n - tau * (ll - n * (n + 1.0)) - tau * tau * (ll - n * (n + 1.0) * (2.0 * n + 1.0) / 3.0)
}
