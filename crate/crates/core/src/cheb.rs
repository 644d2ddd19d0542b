//! Nonlinear Hermite–Chebyshev approximants and the end-to-end pipeline.
//!
//! Substituting `x = cos t` turns a cosine sum into a `T` sum and a sine sum
//! into a `U` sum (with `U_l(cos t) = sin(l t) / sin t`), coefficient for
//! coefficient. The denominator is `|Q(e^{it})|^2`, so it never changes sign
//! on `[-1, 1]` and vanishes there only when `Q` has a root on the unit circle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite_pade::{jacobi_exists, residual_from_coeffs, AlgebraicApproximant, ResidualReport};
use crate::oracle;
use crate::poly;
use crate::scalar::{max_magnitude, Scalar};
use crate::series::{
    associate_system, clenshaw_t, clenshaw_u, AnalyticityInfo, Basis, MultiIndex, SeriesSystem,
    DEFAULT_GUARD,
};
use crate::trig::{
    check_linearized_quotient, check_poles, check_poles_cancelled, check_radius, quotient_expansion,
    trig_first_kind, trig_product, trig_residual_order, trig_second_kind, Kind, PoleCertificate,
    RadiusCheck, TrigApproximant, POLE_TOL,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ChebApproximant<S> {
    /// `T` coefficients of the denominator.
    pub q: Vec<S>,
    /// `T` (first kind) or `U` (second kind) coefficients of each numerator.
    pub p: Vec<Vec<S>>,
    pub kind: Kind,
    pub source: AlgebraicApproximant<S>,
}

impl<S: Scalar> ChebApproximant<S> {
    pub fn numerator_basis(&self) -> Basis {
        self.kind.chebyshev_basis()
    }

    pub fn eval_q(&self, x: f64) -> Result<f64> {
        in_segment(x)?;
        Ok(clenshaw_t(&to_f64(&self.q), x))
    }

    pub fn eval_p(&self, j: usize, x: f64) -> Result<f64> {
        in_segment(x)?;
        let c = to_f64(&self.p[j]);
        Ok(match self.kind {
            Kind::First => clenshaw_t(&c, x),
            Kind::Second => clenshaw_u(&c, x),
        })
    }

    /// Value of `P_j / Q` at `x` in `[-1, 1]`.
    pub fn eval(&self, j: usize, x: f64) -> Result<f64> {
        Ok(self.eval_p(j, x)? / self.eval_q(x)?)
    }
}

fn in_segment(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(x))
    }
}

fn to_f64<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

fn map_kind<S: Scalar>(t: &TrigApproximant<S>, kind: Kind) -> Result<ChebApproximant<S>> {
    if t.kind != kind {
        return Err(Error::KindMismatch {
            expected: match kind {
                Kind::First => "first",
                Kind::Second => "second",
            },
        });
    }
    Ok(ChebApproximant { q: t.q.clone(), p: t.p.clone(), kind, source: t.source.clone() })
}

/// `T`-numerator approximant from a first-kind trigonometric one.
pub fn cheb_first_kind<S: Scalar>(t: &TrigApproximant<S>) -> Result<ChebApproximant<S>> {
    map_kind(t, Kind::First)
}

/// `U`-numerator approximant from a second-kind trigonometric one.
pub fn cheb_second_kind<S: Scalar>(t: &TrigApproximant<S>) -> Result<ChebApproximant<S>> {
    map_kind(t, Kind::Second)
}

/// Confirms the denominator has no zero on `[-1, 1]`. Exact scalars use a
/// Sturm count; floats use companion-matrix real roots plus a sampled sign test.
pub fn check_segment<S: Scalar>(q_t: &[S]) -> Result<()> {
    let power = poly::trimmed(&poly::chebyshev_t_to_power(q_t));
    if power.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if S::EXACT {
        let roots = poly::sturm_count(&power, &S::from_i64(-1), &S::one())?;
        if roots > 0 {
            return Err(Error::PoleOnSegment);
        }
        return Ok(());
    }
    let scale = max_magnitude(&power);
    let real_root_inside = poly::complex_roots(&power)?
        .iter()
        .any(|z| z.im.abs() <= 1e-7 && z.re.abs() <= 1.0 + 1e-9);
    let sign_change = (0..=1000)
        .map(|i| poly::eval_f64(&power, -1.0 + 2.0 * i as f64 / 1000.0))
        .any(|v| v <= 1e-12 * scale);
    if real_root_inside || sign_change {
        Err(Error::PoleOnSegment)
    } else {
        Ok(())
    }
}

/// Order-of-contact check on the Chebyshev side.
///
/// `f` is the Chebyshev system the approximant was built from. Coefficients of
/// `f_j - P_j/Q` in the numerator basis are computed exactly from the quotient
/// expansion and confirmed through the product rules
/// `T_a T_b = (T_{a+b} + T_{|a-b|}) / 2` and `T_a U_b = (U_{a+b} + U_{b-a}) / 2`
/// with `U_{-k} = -U_k`. A positive `grid` also samples the residual on
/// Chebyshev nodes and transforms it.
pub fn cheb_residual_order<S: Scalar>(
    f: &SeriesSystem<S>,
    c: &ChebApproximant<S>,
    idx: &MultiIndex,
    guard: usize,
    grid: usize,
) -> Result<ResidualReport<S>> {
    let basis = c.numerator_basis();
    if f.basis() != basis {
        return Err(Error::BasisMismatch { expected: basis.to_string(), found: f.basis() });
    }
    idx.check_system(f)?;
    check_segment(&c.q)?;
    let len = idx.contact() + guard + 1;
    f.require_length(len)?;
    let sine = c.kind == Kind::Second;
    let mut functions = Vec::with_capacity(f.k());
    let mut sampled = Vec::new();
    for (j, fj) in f.functions().iter().enumerate() {
        let mut g = quotient_expansion(&c.source, j, len + c.q.len())?;
        if sine {
            g[0] = S::zero();
        }
        check_linearized_quotient(j, &c.q, &g, &c.p[j], len, |a, b, n| trig_product(a, b, sine, n))?;
        let fc = fj.effective_coeffs();
        let r: Vec<S> = (0..len).map(|l| fc[l].clone() - g[l].clone()).collect();
        let scale = max_magnitude(&fc).max(max_magnitude(&g[..len]));
        functions.push(residual_from_coeffs(j, &r, idx.contact(), guard, scale)?);
        if grid > 0 {
            let fx = to_f64(&fc);
            let residual = |theta: f64| {
                let x = theta.cos();
                let (fv, pv) = match c.kind {
                    Kind::First => (clenshaw_t(&fx, x), clenshaw_t(&to_f64(&c.p[j]), x)),
                    Kind::Second => (clenshaw_u(&fx, x), clenshaw_u(&to_f64(&c.p[j]), x)),
                };
                let v = fv - pv / clenshaw_t(&to_f64(&c.q), x);
                if sine {
                    v * theta.sin()
                } else {
                    v
                }
            };
            let s = fx.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
            let coeffs = oracle::sampled_expansion(&residual, sine, grid, idx.contact(), s)?;
            sampled.push(coeffs.iter().take(idx.contact() + 1).fold(0.0f64, |a, v| a.max(v.abs())) / s);
        }
    }
    Ok(ResidualReport {
        basis,
        contact: idx.contact(),
        functions,
        sampled_low_order: (grid > 0).then_some(sampled),
    })
}

/// Pipeline settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    /// Extra residual coefficients reported past the contact order.
    pub guard: usize,
    /// Starting node count of the sampled cross-check; zero disables it.
    pub grid: usize,
    pub pole_tol: f64,
    /// Cancel common factors of `P_j` and `Q` before the pole test.
    pub cancel_common_factors: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { guard: DEFAULT_GUARD, grid: 257, pole_tol: POLE_TOL, cancel_common_factors: false }
    }
}

/// Outcome of every precondition, in the order they are checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub upper_table: bool,
    pub jacobi_exists: bool,
    pub jacobi_certificate: String,
    pub determinant: String,
    pub determinant_vanishes: bool,
    pub determinant_warning: Option<String>,
    pub nullity: usize,
    pub radius: RadiusCheck,
    pub poles: Option<PoleCertificate>,
    /// `gcd(P_j, Q)` is constant, one entry per function.
    pub lowest_terms: Vec<bool>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport<S> {
    pub kind: Kind,
    pub conditions: ConditionReport,
    pub algebraic: Option<AlgebraicApproximant<S>>,
    pub trig: Option<TrigApproximant<S>>,
    pub cheb: Option<ChebApproximant<S>>,
    pub trig_residual: Option<ResidualReport<S>>,
    pub cheb_residual: Option<ResidualReport<S>>,
}

/// Runs existence, radius and pole checks, then builds the trigonometric and
/// Chebyshev approximants and verifies their order of contact.
///
/// A failed condition yields a partial report with `all_pass == false`;
/// malformed input (wrong basis, short series, lower table) is an error.
pub fn full_pipeline<S: Scalar>(
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
    radii: &AnalyticityInfo,
    options: &Options,
) -> Result<PipelineReport<S>> {
    let kind = match system.basis() {
        Basis::ChebyshevT => Kind::First,
        Basis::ChebyshevU => Kind::Second,
        other => return Err(Error::BasisMismatch { expected: "chebyshev_t or chebyshev_u".into(), found: other }),
    };
    idx.check_system(system)?;
    idx.require_upper()?;
    system.require_length(idx.required_length(options.guard))?;
    let (power, trig_system) = associate_system(system)?;

    let jacobi = jacobi_exists(&power, idx)?;
    let radius = check_radius(system, radii);
    let mut conditions = ConditionReport {
        upper_table: true,
        jacobi_exists: jacobi.exists,
        jacobi_certificate: jacobi.certificate.clone(),
        determinant: jacobi.determinant.value.to_text(),
        determinant_vanishes: jacobi.determinant.vanishes,
        determinant_warning: jacobi.determinant.warning.clone(),
        nullity: jacobi.nullity,
        radius,
        poles: None,
        lowest_terms: Vec::new(),
        all_pass: false,
    };
    let mut report = PipelineReport {
        kind,
        conditions: conditions.clone(),
        algebraic: None,
        trig: None,
        cheb: None,
        trig_residual: None,
        cheb_residual: None,
    };
    let Some(algebraic) = jacobi.approximant else {
        return Ok(report);
    };
    let poles = if options.cancel_common_factors {
        check_poles_cancelled(&algebraic, options.pole_tol)?
    } else {
        check_poles(&algebraic.q, options.pole_tol)?
    };
    conditions.lowest_terms = algebraic.p.iter().map(|pj| lowest_terms(pj, &algebraic.q)).collect();
    conditions.all_pass = conditions.radius.pass && poles.pass;
    conditions.poles = Some(poles);
    report.conditions = conditions;
    report.algebraic = Some(algebraic.clone());
    if !report.conditions.all_pass {
        return Ok(report);
    }

    let trig = match kind {
        Kind::First => trig_first_kind(&algebraic, idx)?,
        Kind::Second => trig_second_kind(&algebraic, idx)?,
    };
    let cheb = match kind {
        Kind::First => cheb_first_kind(&trig)?,
        Kind::Second => cheb_second_kind(&trig)?,
    };
    report.trig_residual = Some(trig_residual_order(&trig_system, &trig, idx, options.guard, options.grid)?);
    report.cheb_residual = Some(cheb_residual_order(system, &cheb, idx, options.guard, options.grid)?);
    report.trig = Some(trig);
    report.cheb = Some(cheb);
    Ok(report)
}

fn lowest_terms<S: Scalar>(p: &[S], q: &[S]) -> bool {
    if poly::is_zero(p) {
        // 0 / Q reduces to 0 / 1; treat it as reduced only when Q is constant.
        return poly::degree(q) == Some(0);
    }
    poly::gcd(p, q).len() <= 1
}
