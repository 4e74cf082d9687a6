//! # Singular ball kernels
//!
//! `f(t) = (1 - t^2)^{-α/4}` is not integrable against every area measure,
//! but the truncated integrals over `|t| <= 1 - ε` converge. The example
//! prints the truncation ladder, the extrapolated limit, and the value of
//! the equivalent disk representation.

use zonalval::bodies::RevolutionBody;
use zonalval::kernel::ZonalKernel;
use zonalval::measures::mixed_disk_valuation;
use zonalval::transforms::t_alpha;
use zonalval::valuations::pv_eval;

fn main() -> zonalval::Result<()> {
    let (n, i) = (4, 1);
    let alpha = f64::from(n - i - 1);
    let f = ZonalKernel::power_sing(alpha / 4.0);
    let body = RevolutionBody::spheroid(n, 2.0, 1.0)?;

    let pv = pv_eval(n, i, &f, &body)?;
    println!("{:>12} {:>20} {:>20}", "eps", "truncated", "extrapolated");
    for ((eps, raw), est) in pv.truncations.iter().zip(&pv.estimates) {
        println!("{eps:>12.3e} {raw:>20.14} {est:>20.14}");
    }
    let disk = mixed_disk_valuation(&body, i, &t_alpha(&f, alpha)?)?;
    println!("principal value {:.14} (gap {:.1e}), disk side {disk:.14}", pv.value, pv.gap);
    Ok(())
}
