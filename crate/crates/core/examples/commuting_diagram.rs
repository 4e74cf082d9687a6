//! # Projections commute with `T_α`
//!
//! Restricting a zonal valuation to `e_n`-containing subspaces turns the ball
//! kernel into `π_{α,B} f` and the disk kernel into `π_{α,D} g`. For
//! `g = T_α f` both give the same function.

use zonalval::kernel::ZonalKernel;
use zonalval::transforms::{pi_ball, pi_disk, t_alpha};

fn main() -> zonalval::Result<()> {
    for alpha in [1.0, 2.0, 3.0] {
        for f in [ZonalKernel::constant(1.0), ZonalKernel::cos(), ZonalKernel::exp()] {
            let ball = pi_ball(&f, alpha)?;
            let disk = pi_disk(&t_alpha(&f, alpha)?, alpha)?;
            let worst = (0..=198)
                .map(|k| -0.99 + f64::from(k) * 0.01)
                .map(|s| (ball.eval(s) - disk.eval(s)).abs())
                .fold(0.0, f64::max);
            println!("alpha = {alpha}, f = {:<8} pi_ball(0.5) = {:.12}  max gap {worst:.1e}", f.name(), ball.eval(0.5));
        }
    }
    Ok(())
}
