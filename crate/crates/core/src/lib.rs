//! Shell structure of metal clusters from a three-dimensional q-deformed
//! harmonic oscillator, with a variable-frequency squeeze `E' = E - eps E^2`.
//!
//! The pipeline is: [`qho`] level energies, a truncated and sorted
//! [`spectrum::LevelScheme`], magic numbers at wide gaps, the
//! [`shells`] split of the total energy into a liquid-drop average and a shell
//! correction, and the [`orbits`] periodic-orbit slope of `N_i^(1/3)` against `i`.
//! [`variational`] holds the energy-minimisation models the squeeze comes from.

pub mod cli;
pub mod error;
pub mod golden;
pub mod orbits;
pub mod qho;
pub mod shells;
pub mod spectrum;
pub mod variational;

pub use error::{Error, Result};
pub use qho::{QhoParams, QuantumNumbers};
pub use shells::{shell_decomposition, ShellDecomposition};
pub use spectrum::{build_scheme, magic_numbers, LevelScheme, MagicTable, DEFAULT_DELTA};
