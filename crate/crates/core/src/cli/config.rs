use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::orbits::Intercept;
use crate::qho::QhoParams;
use crate::spectrum::DEFAULT_DELTA;

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    /// Sorted, truncated level scheme.
    Levels,
    /// Shell closures `i,N`.
    Magic,
    /// Line through `(i, N_i^(1/3))`.
    Slope,
    /// Liquid-drop fit and shell energy.
    Shells,
    /// Variable-moment-of-inertia band.
    Vmi,
    /// Morse spectrum and its oscillator equivalent.
    Morse,
    /// Frequency minimisation behind the squeezed spectrum.
    VfoDerive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterceptArg {
    Free,
    Origin,
}

impl From<InterceptArg> for Intercept {
    fn from(a: InterceptArg) -> Self {
        match a {
            InterceptArg::Free => Intercept::Free,
            InterceptArg::Origin => Intercept::Origin,
        }
    }
}

/// Raw command line. Everything except the subcommand may also come from `--config`.
#[derive(Debug, Parser)]
#[command(name = "qvfo", version, about = "Shell structure of metal clusters from the q-deformed oscillator")]
pub struct Args {
    #[arg(value_enum, required_unless_present = "golden")]
    pub subcommand: Option<Subcommand>,

    /// Compare against the built-in reference tables and exit.
    #[arg(long)]
    pub golden: bool,

    /// `key = value` file with the same keys as the long flags.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long = "hbar-omega0")]
    pub hbar_omega0: Option<f64>,
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub ncut: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit plot-ready columns instead of the table (`magic`, `shells`).
    #[arg(long)]
    pub plot: bool,

    #[arg(long = "i-from")]
    pub i_from: Option<usize>,
    #[arg(long = "i-to")]
    pub i_to: Option<usize>,
    #[arg(long, value_enum)]
    pub intercept: Option<InterceptArg>,

    /// Stiffness `C` (vmi, vfo-derive).
    #[arg(long)]
    pub stiffness: Option<f64>,
    #[arg(long)]
    pub theta0: Option<f64>,
    #[arg(long = "j-max")]
    pub j_max: Option<u32>,
    #[arg(long)]
    pub omega0: Option<f64>,
    #[arg(long)]
    pub depth: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
}

/// Fully merged and validated run configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub subcommand: Option<Subcommand>,
    pub golden: bool,
    pub tau: Option<f64>,
    pub epsilon: f64,
    pub hbar_omega0: f64,
    pub n_max: Option<u32>,
    pub delta: f64,
    pub n_cut: Option<usize>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub plot: bool,
    pub i_from: Option<usize>,
    pub i_to: Option<usize>,
    pub intercept: Intercept,
    pub stiffness: f64,
    pub theta0: f64,
    pub j_max: u32,
    pub omega0: f64,
    pub depth: f64,
    pub alpha: f64,
    pub mass: f64,
}

impl RunConfig {
    /// Config for `sub` with every default filled in.
    pub fn new(sub: Subcommand) -> Self {
        Self {
            subcommand: Some(sub),
            golden: false,
            tau: None,
            epsilon: 0.0,
            hbar_omega0: 1.0,
            n_max: None,
            delta: DEFAULT_DELTA,
            n_cut: None,
            output_format: Format::Csv,
            output_path: None,
            plot: false,
            i_from: None,
            i_to: None,
            intercept: Intercept::Free,
            stiffness: 100.0,
            theta0: 1.0,
            j_max: 10,
            omega0: 1.0,
            depth: 10.0,
            alpha: 1.0,
            mass: 1.0,
        }
    }

    pub fn golden() -> Self {
        Self {
            subcommand: None,
            golden: true,
            ..Self::new(Subcommand::Magic)
        }
    }

    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let mut cfg = match args.subcommand {
            Some(s) => Self::new(s),
            None => Self::golden(),
        };
        cfg.golden = args.golden;
        if let Some(path) = &args.config {
            cfg.apply_file(path)?;
        }
        macro_rules! over {
            ($($field:ident <- $arg:ident),* $(,)?) => {
                $(if let Some(v) = args.$arg { cfg.$field = v.into(); })*
            };
        }
        if args.tau.is_some() {
            cfg.tau = args.tau;
        }
        if args.nmax.is_some() {
            cfg.n_max = args.nmax;
        }
        if args.ncut.is_some() {
            cfg.n_cut = args.ncut;
        }
        if args.out.is_some() {
            cfg.output_path = args.out;
        }
        if args.i_from.is_some() {
            cfg.i_from = args.i_from;
        }
        if args.i_to.is_some() {
            cfg.i_to = args.i_to;
        }
        over!(
            epsilon <- epsilon,
            hbar_omega0 <- hbar_omega0,
            delta <- delta,
            output_format <- format,
            intercept <- intercept,
            stiffness <- stiffness,
            theta0 <- theta0,
            j_max <- j_max,
            omega0 <- omega0,
            depth <- depth,
            alpha <- alpha,
            mass <- mass,
        );
        cfg.plot |= args.plot;
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    /// Apply `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", k + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", k + 1)))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("`{key}`: cannot parse `{v}`"))
        }
        fn choice<T: ValueEnum>(key: &str, v: &str) -> Result<T, String> {
            T::from_str(v, false).map_err(|_| format!("`{key}`: unknown value `{v}`"))
        }
        match key {
            "tau" => self.tau = Some(num(key, value)?),
            "epsilon" => self.epsilon = num(key, value)?,
            "hbar-omega0" | "hbar_omega0" => self.hbar_omega0 = num(key, value)?,
            "nmax" | "n_max" => self.n_max = Some(num(key, value)?),
            "delta" => self.delta = num(key, value)?,
            "ncut" | "n_cut" => self.n_cut = Some(num(key, value)?),
            "format" => self.output_format = choice(key, value)?,
            "out" => self.output_path = Some(PathBuf::from(value)),
            "plot" => self.plot = num(key, value)?,
            "i-from" | "i_from" => self.i_from = Some(num(key, value)?),
            "i-to" | "i_to" => self.i_to = Some(num(key, value)?),
            "intercept" => self.intercept = choice::<InterceptArg>(key, value)?.into(),
            "stiffness" => self.stiffness = num(key, value)?,
            "theta0" => self.theta0 = num(key, value)?,
            "j-max" | "j_max" => self.j_max = num(key, value)?,
            "omega0" => self.omega0 = num(key, value)?,
            "depth" => self.depth = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "mass" => self.mass = num(key, value)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Reject out-of-range values instead of clamping them.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if let Some(tau) = self.tau {
            QhoParams::new(tau, self.epsilon, self.hbar_omega0).map_err(|e| CliError::Config(e.to_string()))?;
        } else {
            QhoParams::new(0.0, self.epsilon, self.hbar_omega0).map_err(|e| CliError::Config(e.to_string()))?;
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return bad(format!("delta must be finite and > 0, got {}", self.delta));
        }
        if self.n_cut == Some(0) {
            return bad("ncut must be positive".into());
        }
        if let Some(n) = self.n_max {
            if n > MAX_NMAX {
                return bad(format!("nmax must be <= {MAX_NMAX}, got {n}"));
            }
        }
        if self.i_from == Some(0) {
            return bad("i-from counts from 1".into());
        }
        for (name, v) in [
            ("stiffness", self.stiffness),
            ("omega0", self.omega0),
            ("depth", self.depth),
            ("alpha", self.alpha),
            ("mass", self.mass),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be finite and > 0, got {v}"));
            }
        }
        if !(self.theta0.is_finite() && self.theta0 >= 0.0) {
            return bad(format!("theta0 must be finite and >= 0, got {}", self.theta0));
        }
        let needs_spectrum = matches!(
            self.subcommand,
            Some(Subcommand::Levels | Subcommand::Magic | Subcommand::Slope | Subcommand::Shells)
        );
        if !self.golden && needs_spectrum {
            if self.tau.is_none() {
                return bad("--tau is required".into());
            }
            if self.n_max.is_none() {
                return bad("--nmax is required".into());
            }
        }
        if !self.golden && self.subcommand == Some(Subcommand::Shells) && self.n_cut.is_none() {
            return bad("--ncut is required for shells".into());
        }
        if !self.golden && self.subcommand == Some(Subcommand::VfoDerive) && self.n_max.is_none() {
            return bad("--nmax is required".into());
        }
        Ok(())
    }

    pub fn qho(&self) -> Result<QhoParams, CliError> {
        QhoParams::new(self.tau.unwrap_or(0.0), self.epsilon, self.hbar_omega0)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Largest accepted shell cut; `n_max = 200` already holds about 1.4 million states.
pub const MAX_NMAX: u32 = 200;

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let a = Args::try_parse_from(std::iter::once("qvfo").chain(args.iter().copied()))
            .map_err(|e| CliError::Config(e.to_string()))?;
        RunConfig::from_args(a)
    }

    #[test]
    fn defaults() {
        let c = parse(&["magic", "--tau", "0.038", "--nmax", "26"]).unwrap();
        assert_eq!(c.delta, 0.38);
        assert_eq!(c.epsilon, 0.0);
        assert_eq!(c.hbar_omega0, 1.0);
        assert_eq!(c.output_format, Format::Csv);
        assert_eq!(c.output_path, None);
    }

    #[test]
    fn negative_tau_is_a_value() {
        assert_eq!(parse(&["levels", "--tau", "-0.05", "--nmax", "3"]).unwrap().tau, Some(-0.05));
    }

    #[test]
    fn rejects_out_of_range() {
        for args in [
            &["magic", "--tau", "0.038", "--nmax", "26", "--epsilon", "-0.1"][..],
            &["magic", "--tau", "0.038", "--nmax", "26", "--delta", "0"],
            &["magic", "--tau", "0.038", "--nmax", "-3"],
            &["magic", "--tau", "NaN", "--nmax", "3"],
            &["magic", "--tau", "0.038", "--nmax", "100000"],
            &["shells", "--tau", "0.038", "--nmax", "26"],
            &["magic", "--nmax", "26"],
            &["slope", "--tau", "0.038", "--nmax", "26", "--i-from", "0"],
            &["vmi", "--stiffness", "0"],
        ] {
            assert!(matches!(parse(args), Err(CliError::Config(_))), "{args:?}");
        }
    }

    #[test]
    fn file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# sodium\ntau = 0.038\nnmax = 26\nepsilon = 0.006 # squeezed\nformat = json\n").unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["magic", "--config", p, "--epsilon", "0.007"]).unwrap();
        assert_eq!(c.tau, Some(0.038));
        assert_eq!(c.n_max, Some(26));
        assert_eq!(c.epsilon, 0.007);
        assert_eq!(c.output_format, Format::Json);
    }

    #[test]
    fn file_errors() {
        let mut c = RunConfig::new(Subcommand::Magic);
        assert!(c.apply_text("tau 0.038").is_err());
        assert!(c.apply_text("colour = red").is_err());
        assert!(c.apply_text("nmax = -1").is_err());
        assert!(c.apply_text("format = xml").is_err());
        c.apply_text("intercept = origin\n\n").unwrap();
        assert_eq!(c.intercept, Intercept::Origin);
    }

    #[test]
    fn golden_needs_no_subcommand() {
        let c = parse(&["--golden"]).unwrap();
        assert!(c.golden);
        assert!(parse(&[]).is_err());
    }
}
