//! Hermite–Padé approximants of the exponential series, by both routes.
//!
//! cargo run --example pade_exp

use hermipade::scalar::rational;
use hermipade::*;

fn main() -> Result<()> {
    let mut fact = 1i64;
    let coeffs = (0..16)
        .map(|l| {
            if l > 0 {
                fact *= l as i64;
            }
            rational(1, fact)
        })
        .collect();
    let system = SeriesSystem::new(vec![TruncatedSeries::new(Basis::Power, coeffs)?])?;

    for (n, m) in [(1, 1), (2, 2), (3, 2)] {
        let idx = MultiIndex::new(n, vec![m])?;
        let null = solve_nullspace(&system, &idx)?;
        let closed = qp_via_determinants(&system, &idx)?;
        let show = |v: &[Rational]| v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", ");
        println!("(n, m) = ({n}, {m})");
        println!("  Q = [{}]", show(&null.q));
        println!("  P = [{}]", show(&null.p[0]));
        println!("  determinant route agrees: {}", closed.q == null.q && closed.p == null.p);
        let window = residual_window(&null, &system, &idx, 4)?;
        let f = &window.functions[0];
        println!(
            "  Q f - P vanishes through z^{}; next coefficients [{}]",
            window.contact,
            show(&f.window)
        );
    }
    Ok(())
}
