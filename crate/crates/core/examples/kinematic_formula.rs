//! # Additive kinematic formula for zonal bodies
//!
//! For `K`, `L` of revolution, `ψ_{j,g}(K + L)/κ_{n-1}` equals a sum over
//! degrees of double integrals of `q(s, t) = max(s, t) g(min(s, t))` against
//! disk-mixed area measures. Cone pairs have closed forms; smooth pairs go
//! through nested quadrature.

use zonalval::bodies::RevolutionBody;
use zonalval::integral_geometry::{kinematic_check, kinematic_cone_pair, kinematic_lhs_terms, kinematic_rhs_terms, KinematicKernel};
use zonalval::kernel::ZonalKernel;

fn main() -> zonalval::Result<()> {
    let g = ZonalKernel::exp();
    let (n, j) = (4, 2);
    for ((l, s), (m, t)) in [((1.0, 0.3), (1.0, 0.8)), ((2.0, 0.8), (0.5, -0.3)), ((1.0, -0.3), (2.0, -0.8))] {
        let c = kinematic_cone_pair(n, j, &g, (l, s), (m, t))?;
        println!("{l} C({s}) + {m} C({t}): lhs {:.12} rhs {:.12}", c.lhs, c.rhs);
    }

    let k = RevolutionBody::spheroid(n, 0.5, 1.0)?;
    let b = RevolutionBody::ball(n, 1.0)?;
    let c = kinematic_check(n, j, &g, &k, &b)?;
    println!("spheroid + ball: lhs {:.12} rhs {:.12}", c.lhs, c.rhs);

    let lhs = kinematic_lhs_terms(n, j, &g, &k, &b)?;
    let rhs = kinematic_rhs_terms(n, j, &KinematicKernel::new(g)?, &k, &b)?;
    for (i, (a, r)) in lhs.iter().zip(&rhs).enumerate() {
        println!("  degree {i}: {a:.12} {r:.12}");
    }
    Ok(())
}
