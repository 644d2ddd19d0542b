//! The second-kind chain for `f(x) = sum_{l>=1} r^l U_l(x)` with `r = 1/2`,
//! where `U_l(cos t) = sin(l t) / sin t`. The approximant reproduces
//! `f(x) = r / (1 + r^2 - 2 r x)` exactly.
//!
//! cargo run --example chebyshev_second_kind

use hermipade::scalar::rational;
use hermipade::*;

fn main() -> Result<()> {
    let coeffs = (0..64).map(|l| if l == 0 { rational(0, 1) } else { rational(1, 1i64 << l.min(62)) }).collect();
    let f = SeriesSystem::new(vec![TruncatedSeries::new(Basis::ChebyshevU, coeffs)?])?;
    let idx = MultiIndex::new(1, vec![1])?;
    let (power, _) = associate_system(&f)?;
    let a = solve_nullspace(&power, &idx)?;
    let t = trig_second_kind(&a, &idx)?;
    let c = cheb_second_kind(&t)?;
    let show = |v: &[Rational]| v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", ");
    println!("Q (T basis) = [{}]", show(&c.q));
    println!("P (U basis) = [{}]", show(&c.p[0]));
    for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let series = evaluate(&f.functions()[0], x)?;
        println!("x = {x:5.2}: series {series:.15}, approximant {:.15}", c.eval(0, x)?);
    }
    let report = cheb_residual_order(&f, &c, &idx, 8, 257)?;
    println!("residual window all zero: {}", report.all_windows_zero());
    Ok(())
}
