//! # Recovering a kernel from a black-box valuation
//!
//! Evaluating a valuation on cones, the disk and the cylinder determines its
//! disk kernel up to a linear term. Here the evaluator is `ψ_{2,g}` with
//! `g = exp` on `R^4`, and the recovered kernel is `g(s) + g(-1) s`.

use zonalval::bodies::RevolutionBody;
use zonalval::kernel::ZonalKernel;
use zonalval::valuations::{eval, extract_disk_kernel, ValuationSpec};

fn main() -> zonalval::Result<()> {
    let (n, i) = (4, 2);
    let g = ZonalKernel::exp();
    let spec = ValuationSpec::disk(n, i, g.clone())?;
    let recovered = extract_disk_kernel(|b: &RevolutionBody| eval(&spec, b), n, i)?;
    for s in [-1.0, -0.6, -0.1, 0.0, 0.3, 0.8, 1.0] {
        let want = g.eval(s) + g.eval(-1.0) * s;
        println!("s = {s:>5}: recovered {:.14}  expected {want:.14}", recovered.eval(s));
    }
    Ok(())
}
