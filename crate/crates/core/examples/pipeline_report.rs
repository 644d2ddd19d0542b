//! The full pipeline on a first-kind Chebyshev series, in exact and float mode,
//! including a case where the pole condition fails.
//!
//! cargo run --example pipeline_report

use hermipade::scalar::rational;
use hermipade::*;

fn summarize<S: Scalar>(label: &str, r: &PipelineReport<S>) {
    let c = &r.conditions;
    println!("{label}");
    println!("  H = {} (nullity {}), exists: {}", c.determinant, c.nullity, c.jacobi_exists);
    println!("  radius: {} - {}", c.radius.pass, c.radius.notes);
    if let Some(p) = &c.poles {
        println!("  poles outside the closed disk: {} (smallest modulus {:.4})", p.pass, p.min_modulus);
    }
    println!("  lowest terms: {:?}, all pass: {}", c.lowest_terms, c.all_pass);
    if let (Some(cheb), Some(res)) = (&r.cheb, &r.cheb_residual) {
        println!("  Q (T) = {:?}", cheb.q.iter().map(Scalar::to_text).collect::<Vec<_>>());
        println!("  P (T) = {:?}", cheb.p[0].iter().map(Scalar::to_text).collect::<Vec<_>>());
        println!(
            "  residual: first nonzero index {:?}, sampled low-order max {:.2e}",
            res.functions[0].first_nonzero,
            res.sampled_low_order.as_ref().map_or(0.0, |v| v[0])
        );
    }
}

fn main() -> Result<()> {
    // a_0/2 + sum a_l T_l(x) with a_l = 3^-l: a rational function of x
    let coeffs: Vec<Rational> = (0..32).map(|l| rational(1, 3i64.pow(l))).collect();
    let f = SeriesSystem::new(vec![TruncatedSeries::new(Basis::ChebyshevT, coeffs)?.with_halved_constant(true)])?;
    let idx = MultiIndex::new(2, vec![1])?;
    let radii = AnalyticityInfo::new(vec![3.0], &f)?;
    summarize("exact, a_l = 3^-l", &full_pipeline(&f, &idx, &radii, &Options::default())?);
    let ff = f.map(Scalar::to_f64);
    summarize("float, a_l = 3^-l", &full_pipeline(&ff, &idx, &radii, &Options::default())?);

    // a_l = 2^l: the approximant's denominator has its root at z = 1/2
    let coeffs: Vec<Rational> = (0..32).map(|l| rational(1i64 << l, 1)).collect();
    let g = SeriesSystem::new(vec![TruncatedSeries::new(Basis::ChebyshevT, coeffs)?])?;
    let radii = AnalyticityInfo::new(vec![f64::INFINITY], &g)?;
    summarize("exact, a_l = 2^l", &full_pipeline(&g, &MultiIndex::new(1, vec![1])?, &radii, &Options::default())?);
    Ok(())
}
