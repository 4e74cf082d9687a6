//! # Zonal valuations on cones
//!
//! A cone `C_s` is the convex hull of the unit disk in `e_n^⊥` and the apex
//! `(sqrt(1 - s^2)/s) e_n`. Both representations of a zonal valuation, by an
//! area-measure kernel `f` or a disk-mixed kernel `g = T_α f`, have closed
//! forms on cones. This example tabulates them and checks the constant-kernel
//! value `κ_{n-1}(1 + s)^2 / s` for `n = 4`, `i = 1`.

use zonalval::kernel::ZonalKernel;
use zonalval::special::kappa;
use zonalval::transforms::t_alpha;
use zonalval::valuations::{eval_cone_ball, eval_cone_disk};

fn main() -> zonalval::Result<()> {
    let one = ZonalKernel::constant(1.0);
    println!("{:>5} {:>20} {:>20}", "s", "phi(C_s)", "k3 (1+s)^2/s");
    for k in 1..=9 {
        let s = f64::from(k) / 10.0;
        let v = eval_cone_ball(4, 1, &one, s)?;
        println!("{s:>5.1} {v:>20.14} {:>20.14}", kappa(3) * (1.0 + s).powi(2) / s);
    }

    let (n, i) = (5, 2);
    let f = ZonalKernel::cos();
    let g = t_alpha(&f, f64::from(n - i - 1))?;
    println!("\nn = {n}, i = {i}, f = cos");
    for s in [-0.9, -0.4, 0.2, 0.7, 1.0] {
        let ball = eval_cone_ball(n, i, &f, s)?;
        let disk = eval_cone_disk(n, i, &g, s)?;
        println!("s = {s:>5}: ball {ball:.14}  disk {disk:.14}  diff {:.1e}", (ball - disk).abs());
    }
    Ok(())
}
