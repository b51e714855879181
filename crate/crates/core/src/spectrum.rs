//! Level schemes, level-order inversion and magic numbers.

use crate::error::{Error, Result};
use crate::qho::{allowed_l, energy, vfo_energy, vfo_turning_energy, QhoParams, QuantumNumbers};

/// Default gap threshold for a shell closure, in units of `hbar_omega0`.
pub const DEFAULT_DELTA: f64 = 0.38;

/// One `(n, l)` level of the squeezed spectrum.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    /// `E'_q(n, l)`.
    pub energy: f64,
    /// `2 (2l + 1)`: spin times magnetic substates.
    pub capacity: usize,
}

impl Level {
    fn new(qn: QuantumNumbers, p: &QhoParams) -> Self {
        Level {
            n: qn.n(),
            l: qn.l(),
            energy: vfo_energy(energy(qn, p), p),
            capacity: 2 * (2 * qn.l() as usize + 1),
        }
    }
}

/// Energy-sorted levels truncated at the `(n_max, n_max)` level.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LevelScheme {
    params: QhoParams,
    n_max: u32,
    levels: Vec<Level>,
    total_capacity: usize,
}

impl LevelScheme {
    pub fn params(&self) -> &QhoParams {
        &self.params
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Number of particles the retained levels hold.
    pub fn total_capacity(&self) -> usize {
        self.total_capacity
    }

    /// Single-particle state energies in filling order, one entry per particle.
    pub fn states(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels
            .iter()
            .flat_map(|lv| std::iter::repeat_n(lv.energy, lv.capacity))
    }
}

/// Build the truncated level scheme for `n <= n_max`.
///
/// Every level with `E' <= E'(n_max, n_max)` is kept, which can drop the
/// upper members of the last few shells. The cut is only meaningful while
/// `l = n` is the lowest member of every shell, so an inversion at or below
/// `n_max` is an error.
pub fn build_scheme(p: &QhoParams, n_max: u32) -> Result<LevelScheme> {
    if let Some(shell) = detect_inversion(p, n_max) {
        return Err(Error::InversionBeforeNmax { shell, n_max });
    }
    let top = QuantumNumbers::new(n_max, n_max)?;
    let cut = Level::new(top, p).energy;
    let turning = vfo_turning_energy(p);

    let mut levels = Vec::new();
    for qn in QuantumNumbers::up_to(n_max) {
        let level = Level::new(qn, p);
        if level.energy > cut {
            continue;
        }
        let bare = energy(qn, p);
        if bare >= turning {
            return Err(Error::NonMonotoneVfo {
                n: qn.n(),
                l: qn.l(),
                energy: bare,
                turning,
            });
        }
        levels.push(level);
    }
    levels.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.n.cmp(&b.n))
            .then(a.l.cmp(&b.l))
    });
    let total_capacity = levels.iter().map(|lv| lv.capacity).sum();
    Ok(LevelScheme {
        params: *p,
        n_max,
        levels,
        total_capacity,
    })
}

/// First shell `n <= n_limit` whose lowest level is not the `l = n` member.
pub fn detect_inversion(p: &QhoParams, n_limit: u32) -> Option<u32> {
    (0..=n_limit).find(|&n| {
        let mut members = allowed_l(n).into_iter().map(|l| {
            let qn = QuantumNumbers::new(n, l).expect("allowed_l yields valid l");
            (l, Level::new(qn, p).energy)
        });
        let (_, stretched) = members.next().expect("every shell has l = n");
        members.any(|(_, e)| e < stretched)
    })
}

/// Shell closures `(i, N_i)` found at gaps wider than `delta`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MagicTable {
    pub entries: Vec<(usize, usize)>,
    pub delta: f64,
}

impl MagicTable {
    /// Just the `N_i`.
    pub fn numbers(&self) -> Vec<usize> {
        self.entries.iter().map(|&(_, n)| n).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Walk the sorted scheme and record the filled count below every gap
/// `E(k+1) - E(k) > delta`. The edge above the last level is never a gap.
pub fn magic_numbers(scheme: &LevelScheme, delta: f64) -> MagicTable {
    let mut entries = Vec::new();
    let mut filled = 0;
    for pair in scheme.levels.windows(2) {
        filled += pair[0].capacity;
        if pair[1].energy - pair[0].energy > delta {
            entries.push((entries.len() + 1, filled));
        }
    }
    MagicTable { entries, delta }
}
