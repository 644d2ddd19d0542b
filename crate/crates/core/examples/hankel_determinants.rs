//! Block-Hankel determinants and the existence test for a pair of series.
//!
//! cargo run --example hankel_determinants

use hermipade::scalar::rational;
use hermipade::*;

fn main() -> Result<()> {
    let mut fact = 1i64;
    let exp: Vec<Rational> = (0..12)
        .map(|l| {
            if l > 0 {
                fact *= l as i64;
            }
            rational(1, fact)
        })
        .collect();
    let geometric = vec![rational(1, 1); 12];
    let system = SeriesSystem::new(vec![
        TruncatedSeries::new(Basis::Power, exp)?,
        TruncatedSeries::new(Basis::Power, geometric)?,
    ])?;
    let idx = MultiIndex::new(1, vec![1, 1])?;
    let h = build_hankel(&system, &idx)?;
    for block in &h.blocks {
        println!("block for f_{}:", block.function);
        for row in block.square.to_rows() {
            println!("  {:?}", row.iter().map(Scalar::to_text).collect::<Vec<_>>());
        }
    }
    let det = hadamard_det(&h);
    println!("H = {}", det.value.to_text());

    let cert = jacobi_exists(&system, &idx)?;
    println!("exists: {} ({})", cert.exists, cert.certificate);

    // 1 + z^2 at (1, (1)): the linear problem is solvable, the divided one is not
    let degenerate = SeriesSystem::new(vec![TruncatedSeries::new(
        Basis::Power,
        vec![rational(1, 1), rational(0, 1), rational(1, 1), rational(0, 1)],
    )?])?;
    let cert = jacobi_exists(&degenerate, &MultiIndex::new(1, vec![1])?)?;
    println!("1 + z^2 at (1, (1)): exists {}, H = {}", cert.exists, cert.determinant.value.to_text());
    println!("  {}", cert.certificate);
    Ok(())
}
