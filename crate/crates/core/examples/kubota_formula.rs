//! # Kubota-type formula
//!
//! The intrinsic volume of the projection onto an `i`-plane containing
//! `e_n` equals `n κ_{i-1}/(i κ_{n-1}) V(K[i], D[n-i])`.

use zonalval::bodies::body_zoo;
use zonalval::integral_geometry::kubota_check;

fn main() -> zonalval::Result<()> {
    let n = 4;
    for (name, body) in body_zoo(n)? {
        let cols: Vec<String> = (1..n)
            .map(|i| kubota_check(n, i, &body).map(|c| format!("{:.10}/{:.10}", c.lhs, c.rhs)))
            .collect::<zonalval::Result<_>>()?;
        println!("{name:<16} {}", cols.join("  "));
    }
    Ok(())
}
