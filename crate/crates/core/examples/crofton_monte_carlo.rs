//! # Crofton-type formula by Monte Carlo
//!
//! Averages the support function at `e_n` of sections `K ∩ E` over random
//! affine `j`-flats `E` and compares with `a_{n,j} V(K[n-j+1], D[j-1])`.
//! Usage: `crofton_monte_carlo [samples] [seed]`.

use zonalval::bodies::RevolutionBody;
use zonalval::integral_geometry::crofton_mc;

fn main() -> zonalval::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);

    let bodies = [
        ("ball(1)", 3, RevolutionBody::ball(3, 1.0)?),
        ("ball(1)", 4, RevolutionBody::ball(4, 1.0)?),
        ("spheroid(2,1)", 4, RevolutionBody::spheroid(4, 2.0, 1.0)?),
    ];
    for (name, n, body) in bodies {
        for j in 1..n {
            let e = crofton_mc(n, j, &body, samples, seed)?;
            println!(
                "n = {n}, j = {j}, {name:<14} estimate {:.6} ± {:.6}  formula {:.6}  ({:.2} stderr)",
                e.estimate,
                e.stderr,
                e.rhs,
                e.z_score()
            );
        }
    }
    Ok(())
}
