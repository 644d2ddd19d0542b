//! Trigonometric approximants of the first and second kind from an algebraic
//! one, checked pointwise against the complex products they come from.
//!
//! cargo run --example trig_jacobi

use hermipade::poly;
use hermipade::scalar::rational;
use hermipade::*;
use num::complex::Complex64;

fn main() -> Result<()> {
    // f(z) = log(1 + z/2) / z style data: 1, -1/4, 1/12, -1/32, ...
    let coeffs: Vec<Rational> =
        (0..24).map(|l| rational(if l % 2 == 0 { 1 } else { -1 }, (l as i64 + 1) * (1 << l))).collect();
    let power = SeriesSystem::new(vec![TruncatedSeries::new(Basis::Power, coeffs.clone())?])?;
    let idx = MultiIndex::new(2, vec![2])?;
    let a = solve_nullspace(&power, &idx)?;
    let first = trig_first_kind(&a, &idx)?;
    let second = trig_second_kind(&a, &idx)?;
    let show = |v: &[Rational]| v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", ");
    println!("Q^t (cos)   = [{}]", show(&first.q));
    println!("P^t (cos)   = [{}]", show(&first.p[0]));
    println!("P^t (sin)   = [{}]", show(&second.p[0]));

    let q: Vec<f64> = a.q.iter().map(Scalar::to_f64).collect();
    let p: Vec<f64> = a.p[0].iter().map(Scalar::to_f64).collect();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let x = -std::f64::consts::PI + i as f64 * std::f64::consts::PI / 100.0;
        let z = Complex64::from_polar(1.0, x);
        let pq = poly::eval_complex(&p, z) * poly::eval_complex(&q, z).conj();
        worst = worst.max((first.eval_p(0, x) - pq.re).abs()).max((second.eval_p(0, x) - pq.im).abs());
    }
    println!("max |coefficient form - complex product| over 200 points: {worst:.2e}");

    let cosine = SeriesSystem::new(vec![TruncatedSeries::new(Basis::Cosine, coeffs)?])?;
    let report = trig_residual_order(&cosine, &first, &idx, 4, 257)?;
    let f = &report.functions[0];
    println!(
        "f - P^t/Q^t: harmonics 0..={} vanish, next {:?}, first nonzero {:?}, sampled check {:.2e}",
        report.contact,
        f.window.iter().map(Scalar::to_text).collect::<Vec<_>>(),
        f.first_nonzero,
        report.sampled_low_order.unwrap()[0]
    );
    Ok(())
}
