//! Variable moment of inertia, Morse versus the variable-frequency
//! oscillator, and the squeezed q-oscillator obtained by minimising over the frequency.

use qvfo::qho::{energy, vfo_energy, QuantumNumbers};
use qvfo::variational::{
    morse_spectrum, qvfo_energy, qvfo_frequency, rigid_rotor_energy, vho_spectrum, vmi_energy, vmi_theta, MorseParams,
    VfoParams, VmiParams,
};
use qvfo::QhoParams;

fn main() -> qvfo::Result<()> {
    let vmi = VmiParams::new(1.0, 1.0)?;
    println!("J  Theta     E_vmi     E_rigid");
    for j in (0..=10).step_by(2) {
        println!(
            "{j:<2} {:<9.5} {:<9.5} {:.5}",
            vmi_theta(j, &vmi),
            vmi_energy(j, &vmi),
            rigid_rotor_energy(j, 1.0)
        );
    }

    let morse = MorseParams::new(10.0, 1.0, 1.0)?;
    let vfo = morse.equivalent_vfo();
    println!("\nMorse omega={} x_e={} -> C={}", morse.omega(), morse.x_e(), vfo.stiffness);
    for n in 0..morse.n_bound() {
        println!("n={n}: Morse {:.6}  VFO {:.6}", morse_spectrum(n, &morse), vho_spectrum(n, &vfo));
    }

    let (tau, c, w0) = (0.038, 80.0, 1.0);
    let p = VfoParams::new(c, w0)?;
    let squeezed = QhoParams::from_stiffness(tau, c, w0)?;
    println!("\nC={c}: epsilon = {:.6}", p.epsilon());
    for (n, l) in [(2, 2), (5, 1), (10, 10)] {
        let qn = QuantumNumbers::new(n, l)?;
        println!(
            "({n},{l}): omega {:.5}, minimised {:.8}, squeezed {:.8}",
            qvfo_frequency(qn, tau, &p),
            qvfo_energy(qn, tau, &p),
            vfo_energy(energy(qn, &squeezed), &squeezed)
        );
    }
    Ok(())
}
