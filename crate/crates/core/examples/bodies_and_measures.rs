//! # Bodies of revolution and their measures
//!
//! Walks the body zoo in `R^4`, printing support values, the disk-mixed
//! volumes `V(K[i], D[n-i])`, and the total masses of the mixed area
//! measures. Also writes the surface measure of a spheroid as CSV.

use zonalval::bodies::{body_zoo, RevolutionBody};
use zonalval::measures::{mixed_measure, mixed_volume_disk, surface_measure, volume, Mixer};

fn main() -> zonalval::Result<()> {
    let n = 4;
    for (name, body) in body_zoo(n)? {
        let vols: Vec<String> = (0..=n)
            .map(|i| mixed_volume_disk(&body, i).map(|v| format!("{v:.6}")))
            .collect::<zonalval::Result<_>>()?;
        let mass = mixed_measure(&body, 1, Mixer::Disk)?.total_mass()?;
        println!(
            "{name:<16} h(1) = {:<8.4} vol = {:<10.6} V_i = [{}]  |S_1(K,D)| = {mass:.6}",
            body.support(1.0),
            volume(&body)?,
            vols.join(", ")
        );
    }

    let spheroid = RevolutionBody::spheroid(n, 0.5, 1.0)?;
    let csv = surface_measure(&spheroid)?.to_csv(8);
    println!("\nsurface measure of spheroid(0.5, 1):\n{csv}");
    Ok(())
}
