//! # Mass of area measures near the pole
//!
//! Compares how `S_i(K, {t > 1 - ε})` decays for smooth spheroids and for a
//! body with a flat cap.

use zonalval::bodies::RevolutionBody;
use zonalval::integral_geometry::{cap_mass, cap_mass_slope};

fn main() -> zonalval::Result<()> {
    let eps = [1e-2, 1e-3, 1e-4];
    for (n, i) in [(4, 1), (5, 2)] {
        let flat = RevolutionBody::minkowski_sum(&[(1.0, RevolutionBody::ball(n, 0.5)?), (1.0, RevolutionBody::disk(n)?)])?;
        for (name, body) in [("spheroid(0.5,1)", RevolutionBody::spheroid(n, 0.5, 1.0)?), ("ball(0.5)+disk", flat)] {
            let masses: Vec<String> = eps.iter().map(|&e| cap_mass(&body, i, e).map(|m| format!("{m:.3e}"))).collect::<zonalval::Result<_>>()?;
            println!(
                "n = {n}, i = {i}, {name:<16} masses [{}]  slope {:.3}",
                masses.join(", "),
                cap_mass_slope(&body, i, &eps)?
            );
        }
    }
    Ok(())
}
