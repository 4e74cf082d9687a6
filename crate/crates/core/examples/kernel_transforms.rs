//! # Kernel transforms
//!
//! `T_α` maps area-measure kernels to disk kernels, `T_α^{-1}` inverts it,
//! and `R_{a,b}` / `Q_{a,b}` are the weighted averaging operator and its
//! inverse. The example prints each on a few points and the round trips.

use zonalval::kernel::ZonalKernel;
use zonalval::transforms::{q_ab, r_ab, t_alpha, t_alpha_inv};

fn main() -> zonalval::Result<()> {
    let pts = [-1.0, -0.5, 0.0, 0.5, 1.0];

    let t2 = t_alpha(&ZonalKernel::constant(1.0), 2.0)?;
    println!("T_2[1](t) vs 1 + t^2:");
    for t in pts {
        println!("  {t:>5}: {:.15} {:.15}", t2.eval(t), 1.0 + t * t);
    }

    let lin = t_alpha(&ZonalKernel::linear(1.0), 3.0)?;
    println!("T_3[t] at 0.5 = {:.15} (linear kernels are fixed)", lin.eval(0.5));

    // singular kernels are allowed when they lie in D^α
    let sing = ZonalKernel::power_sing(0.25);
    let ts = t_alpha(&sing, 2.0)?;
    println!("T_2[(1-t^2)^(-1/4)] at 0, 0.9, 1: {:.12} {:.12} {:.12}", ts.eval(0.0), ts.eval(0.9), ts.eval(1.0));

    for alpha in [0.5, 1.0, 2.0, 3.0] {
        let back = t_alpha_inv(&t_alpha(&ZonalKernel::exp(), alpha)?, alpha)?;
        let err = pts[1..4].iter().map(|&t| (back.eval(t) - t.exp()).abs()).fold(0.0, f64::max);
        println!("alpha = {alpha}: max |T^-1 T exp - exp| = {err:.2e}");
    }

    for (a, b) in [(1.0, 1.0), (2.0, 0.5), (3.0, 2.0)] {
        let back = q_ab(&r_ab(&ZonalKernel::cos(), a, b)?, a, b)?;
        let err = pts.iter().map(|&t| (back.eval(t) - t.cos()).abs()).fold(0.0, f64::max);
        println!("(a, b) = ({a}, {b}): max |Q R cos - cos| = {err:.2e}");
    }
    Ok(())
}
