//! The sampling oracle: Chebyshev coefficients from values on extreme points,
//! and an exact integer null space.
//!
//! cargo run --example dct_oracle

use hermipade::oracle::{dct_cheb_coeffs, dct_cheb_u_coeffs, exact_nullspace};
use hermipade::scalar::rational;
use std::f64::consts::PI;

fn main() -> hermipade::Result<()> {
    let nodes = 33;
    let xs: Vec<f64> = (0..nodes).map(|k| (k as f64 * PI / (nodes - 1) as f64).cos()).collect();

    let t = dct_cheb_coeffs(&xs.iter().map(|x| 1.0 / (1.25 - x)).collect::<Vec<_>>())?;
    println!("T coefficients of 1/(5/4 - x): {:?}", &t[..6].iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());

    let u = dct_cheb_u_coeffs(&xs.iter().map(|x| 0.5 / (1.25 - x)).collect::<Vec<_>>())?;
    println!("U coefficients of (1/2)/(5/4 - x): {:?}", &u[..6].iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());

    let ns = exact_nullspace(&[vec![rational(1, 1), rational(1, 2)]]);
    println!("null space of [1, 1/2]: {:?}", ns.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    Ok(())
}
