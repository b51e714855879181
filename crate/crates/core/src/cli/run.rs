use crate::golden::{self, GoldenLine};
use crate::orbits::fit_cuberoot_line;
use crate::qho::{e_q, vfo_energy, QuantumNumbers};
use crate::shells::{beat_node, shell_decomposition};
use crate::spectrum::{build_scheme, magic_numbers, LevelScheme};
use crate::variational::{
    morse_spectrum, qvfo_energy, qvfo_frequency, rigid_rotor_energy, squeezed_frequency, vho_frequency,
    vho_spectrum, vmi_energy, vmi_theta, MorseParams, VfoParams, VmiParams,
};

use super::config::{Format, RunConfig, Subcommand};
use super::output::{emit_plot_data, PlotSource, Table};
use super::CliError;

/// What a run produced, already rendered.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub text: String,
    /// Set by `--golden` when some comparison failed.
    pub mismatch: bool,
}

fn scheme(cfg: &RunConfig) -> Result<LevelScheme, CliError> {
    let n_max = cfg.n_max.ok_or_else(|| CliError::Config("--nmax is required".into()))?;
    Ok(build_scheme(&cfg.qho()?, n_max)?)
}

fn render(cfg: &RunConfig, table: &Table) -> String {
    match cfg.output_format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(cfg),
    }
}

/// Dispatch on the subcommand and render the result.
pub fn run(cfg: &RunConfig) -> Result<Artifact, CliError> {
    cfg.validate()?;
    if cfg.golden {
        let lines = golden::run_all()?;
        return Ok(golden_report(&lines));
    }
    let sub = cfg
        .subcommand
        .ok_or_else(|| CliError::Config("no subcommand given".into()))?;
    let text = match sub {
        Subcommand::Levels => render(cfg, &levels_table(&scheme(cfg)?)),
        Subcommand::Magic => {
            let m = magic_numbers(&scheme(cfg)?, cfg.delta * cfg.hbar_omega0);
            if cfg.plot {
                emit_plot_data(PlotSource::Magic(&m))?
            } else {
                let mut t = Table::new(&["i", "N"]);
                for &(i, n) in &m.entries {
                    t.push(vec![i.into(), n.into()]);
                }
                render(cfg, &t)
            }
        }
        Subcommand::Slope => {
            let m = magic_numbers(&scheme(cfg)?, cfg.delta * cfg.hbar_omega0);
            let from = cfg.i_from.unwrap_or(1);
            let to = cfg.i_to.unwrap_or(m.len());
            let fit = fit_cuberoot_line(&m, from, to, cfg.intercept)?;
            let mut t = Table::new(&["i_from", "i_to", "slope", "intercept", "rms"]);
            t.push(vec![from.into(), to.into(), fit.slope.into(), fit.intercept.into(), fit.rms.into()]);
            render(cfg, &t)
        }
        Subcommand::Shells => {
            let n_cut = cfg.n_cut.ok_or_else(|| CliError::Config("--ncut is required".into()))?;
            let dec = shell_decomposition(&scheme(cfg)?, n_cut)?;
            if cfg.plot {
                emit_plot_data(PlotSource::Shells(&dec))?
            } else {
                let mut t = Table::new(&["N", "E", "E_av", "E_shell"]);
                for s in &dec.samples {
                    t.push(vec![s.n.into(), s.e.into(), s.e_av.into(), s.e_shell.into()]);
                }
                for (k, a) in dec.fit.coefficients.iter().enumerate() {
                    t.footer.push((format!("a{}", k + 1), (*a).into()));
                }
                t.footer.push(("sigma".into(), dec.fit.sigma.into()));
                if let Ok(node) = beat_node(&dec) {
                    t.footer.push(("node".into(), node.into()));
                }
                render(cfg, &t)
            }
        }
        Subcommand::Vmi => {
            let p = VmiParams::new(cfg.stiffness, cfg.theta0)?;
            let mut t = Table::new(&["J", "theta", "E", "E_rigid"]);
            for j in 0..=cfg.j_max {
                let rigid = if cfg.theta0 > 0.0 {
                    rigid_rotor_energy(j, cfg.theta0)
                } else {
                    f64::INFINITY
                };
                t.push(vec![j.into(), vmi_theta(j, &p).into(), vmi_energy(j, &p).into(), rigid.into()]);
            }
            render(cfg, &t)
        }
        Subcommand::Morse => {
            let p = MorseParams::new(cfg.depth, cfg.alpha, cfg.mass)?;
            let v = p.equivalent_vfo();
            let mut t = Table::new(&["n", "E_morse", "E_vfo", "omega_n"]);
            for n in 0..p.n_bound() {
                t.push(vec![
                    n.into(),
                    morse_spectrum(n, &p).into(),
                    vho_spectrum(n, &v).into(),
                    vho_frequency(n, &v).into(),
                ]);
            }
            t.footer.push(("omega".into(), p.omega().into()));
            t.footer.push(("x_e".into(), p.x_e().into()));
            t.footer.push(("C".into(), v.stiffness.into()));
            render(cfg, &t)
        }
        Subcommand::VfoDerive => {
            let p = VfoParams::new(cfg.stiffness, cfg.omega0)?;
            let tau = cfg.tau.unwrap_or(0.0);
            let squeeze = crate::qho::QhoParams::new(tau, p.epsilon() * p.omega0, p.omega0)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let n_max = cfg.n_max.ok_or_else(|| CliError::Config("--nmax is required".into()))?;
            let mut t = Table::new(&["n", "l", "e_q", "omega_min", "omega_squeezed", "E_min", "E_squeezed"]);
            for qn in QuantumNumbers::up_to(n_max) {
                let e = e_q(qn, tau);
                t.push(vec![
                    qn.n().into(),
                    qn.l().into(),
                    e.into(),
                    qvfo_frequency(qn, tau, &p).into(),
                    squeezed_frequency(qn, tau, &p).into(),
                    qvfo_energy(qn, tau, &p).into(),
                    vfo_energy(p.omega0 * e, &squeeze).into(),
                ]);
            }
            t.footer.push(("epsilon".into(), p.epsilon().into()));
            render(cfg, &t)
        }
    };
    Ok(Artifact { text, mismatch: false })
}

fn levels_table(s: &LevelScheme) -> Table {
    let mut t = Table::new(&["n", "l", "energy", "capacity", "filled"]);
    let mut filled = 0;
    for lv in s.levels() {
        filled += lv.capacity;
        t.push(vec![lv.n.into(), lv.l.into(), lv.energy.into(), lv.capacity.into(), filled.into()]);
    }
    t
}

fn golden_report(lines: &[GoldenLine]) -> Artifact {
    let mut text = String::new();
    let mut failed = 0;
    for l in lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!l.pass);
        text.push_str(&format!("{tag} {}: {}\n", l.name, l.detail));
    }
    text.push_str(&format!("{} of {} comparisons passed\n", lines.len() - failed, lines.len()));
    Artifact {
        text,
        mismatch: failed > 0,
    }
}
