//! Trigonometric Hermite–Jacobi approximants built from algebraic ones.
//!
//! With `z = e^{ix}` and real-coefficient `Q`, `P_j`:
//!
//! * denominator `|Q(e^{ix})|^2 = sum_s sum_l q_s q_l cos((l - s) x)`,
//! * first-kind numerator `Re{P_j conj(Q)} = sum_l sum_s p_l q_s cos((l - s) x)`,
//! * second-kind numerator `Im{P_j conj(Q)} = sum_l sum_s p_l q_s sin((l - s) x)`.
//!
//! In the upper table (`n >= max m_j`) these have degrees at most `m` and `n_j`.

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite_pade::{residual_from_coeffs, AlgebraicApproximant, ResidualReport};
use crate::oracle;
use crate::poly;
use crate::scalar::{max_magnitude, Scalar};
use crate::series::{divide_coeffs, AnalyticityInfo, Basis, MultiIndex, SeriesSystem, TruncatedSeries};

/// Default modulus tolerance for the closed-disk pole test.
pub const POLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    First,
    Second,
}

impl Kind {
    pub fn trig_basis(self) -> Basis {
        match self {
            Kind::First => Basis::Cosine,
            Kind::Second => Basis::Sine,
        }
    }

    pub fn chebyshev_basis(self) -> Basis {
        match self {
            Kind::First => Basis::ChebyshevT,
            Kind::Second => Basis::ChebyshevU,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigApproximant<S> {
    /// Cosine coefficients of the denominator, `q_0..q_m`.
    pub q: Vec<S>,
    /// Numerator coefficients, cosine (first kind) or sine (second kind), `0..=n_j`.
    pub p: Vec<Vec<S>>,
    pub kind: Kind,
    /// The algebraic approximant the products were formed from.
    pub source: AlgebraicApproximant<S>,
}

impl<S: Scalar> TrigApproximant<S> {
    /// Denominator value at `x`.
    pub fn eval_q(&self, x: f64) -> f64 {
        cosine_sum(&self.q, x)
    }

    pub fn eval_p(&self, j: usize, x: f64) -> f64 {
        match self.kind {
            Kind::First => cosine_sum(&self.p[j], x),
            Kind::Second => sine_sum(&self.p[j], x),
        }
    }
}

fn cosine_sum<S: Scalar>(c: &[S], x: f64) -> f64 {
    c.iter().enumerate().map(|(l, v)| v.to_f64() * (l as f64 * x).cos()).sum()
}

fn sine_sum<S: Scalar>(c: &[S], x: f64) -> f64 {
    c.iter().enumerate().map(|(l, v)| v.to_f64() * (l as f64 * x).sin()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleCertificate {
    /// Roots with `|z| <= 1 + tol`, as `(re, im)`.
    pub roots_inside: Vec<(f64, f64)>,
    pub all_roots: Vec<(f64, f64)>,
    /// Largest modulus among the roots inside the closed disk, zero if none.
    pub max_modulus_inside: f64,
    /// Smallest root modulus overall; infinite for a constant denominator.
    pub min_modulus: f64,
    pub pass: bool,
}

/// Tests that the denominator has no root in the closed unit disk.
pub fn check_poles<S: Scalar>(q: &[S], tol: f64) -> Result<PoleCertificate> {
    let roots = poly::complex_roots(q)?;
    Ok(certificate_from_roots(&roots, tol))
}

fn certificate_from_roots(roots: &[Complex64], tol: f64) -> PoleCertificate {
    let inside: Vec<Complex64> = roots.iter().copied().filter(|z| z.norm() <= 1.0 + tol).collect();
    let pair = |z: &Complex64| (z.re, z.im);
    PoleCertificate {
        roots_inside: inside.iter().map(pair).collect(),
        all_roots: roots.iter().map(pair).collect(),
        max_modulus_inside: inside.iter().map(|z| z.norm()).fold(0.0, f64::max),
        min_modulus: roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
        pass: inside.is_empty(),
    }
}

/// Pole test on each reduced fraction `P_j / Q` after cancelling common
/// factors by polynomial GCD. Rigorous in exact mode only.
pub fn check_poles_cancelled<S: Scalar>(
    approx: &AlgebraicApproximant<S>,
    tol: f64,
) -> Result<PoleCertificate> {
    let mut roots = Vec::new();
    for pj in &approx.p {
        let g = poly::gcd(pj, &approx.q);
        let reduced = if g.is_empty() { approx.q.clone() } else { poly::divrem(&approx.q, &g)?.0 };
        for z in poly::complex_roots(&reduced)? {
            if !roots.iter().any(|w: &Complex64| (w - z).norm() < 1e-9) {
                roots.push(z);
            }
        }
    }
    Ok(certificate_from_roots(&roots, tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusCheck {
    pub pass: bool,
    pub notes: String,
}

/// Requires every declared radius to exceed one. The root-test estimate is
/// advisory and only produces warnings.
pub fn check_radius<S: Scalar>(system: &SeriesSystem<S>, info: &AnalyticityInfo) -> RadiusCheck {
    let mut notes = Vec::new();
    let mut pass = true;
    for j in 0..system.k() {
        let declared = info.declared[j];
        let estimated = info.estimated[j];
        if declared <= 1.0 {
            pass = false;
            notes.push(format!(
                "series {j}: declared radius {declared} does not exceed 1; substitute f_{j}(rho z) \
                 with 0 < rho < {declared} on every series of the system to move the singularities \
                 off the closed unit disk"
            ));
        } else if estimated <= 1.0 {
            notes.push(format!(
                "series {j}: declared radius {declared} but the root test over the stored \
                 coefficients suggests {estimated:.3}"
            ));
        }
    }
    if notes.is_empty() {
        notes.push("all declared radii exceed 1".into());
    }
    RadiusCheck { pass, notes: notes.join("; ") }
}

/// Cosine coefficients of `|Q(e^{ix})|^2`.
pub fn squared_modulus<S: Scalar>(q: &[S]) -> Vec<S> {
    (0..q.len())
        .map(|h| {
            let sum = (0..q.len() - h).fold(S::zero(), |acc, s| acc + q[s].clone() * q[s + h].clone());
            if h == 0 {
                sum
            } else {
                S::from_i64(2) * sum
            }
        })
        .collect()
}

/// Coefficients of `Re{P conj(Q)}` (cosine) or `Im{P conj(Q)}` (sine) on harmonics `0..len`.
fn cross_product<S: Scalar>(p: &[S], q: &[S], kind: Kind, len: usize) -> Vec<S> {
    let at = |v: &[S], i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
    (0..len)
        .map(|h| {
            let span = p.len().max(q.len());
            match (kind, h) {
                (Kind::First, 0) => (0..span).fold(S::zero(), |acc, l| acc + at(p, l) * at(q, l)),
                (Kind::Second, 0) => S::zero(),
                (Kind::First, _) => (0..span).fold(S::zero(), |acc, s| {
                    acc + at(p, s + h) * at(q, s) + at(p, s) * at(q, s + h)
                }),
                (Kind::Second, _) => (0..span).fold(S::zero(), |acc, s| {
                    acc + at(p, s + h) * at(q, s) - at(p, s) * at(q, s + h)
                }),
            }
        })
        .collect()
}

fn transform<S: Scalar>(
    approx: &AlgebraicApproximant<S>,
    idx: &MultiIndex,
    kind: Kind,
) -> Result<TrigApproximant<S>> {
    idx.require_upper()?;
    if approx.p.len() != idx.k() || approx.q.len() != idx.order() + 1 {
        return Err(Error::Invalid("approximant does not match the multi-index".into()));
    }
    let q = squared_modulus(&approx.q);
    let p = approx
        .p
        .iter()
        .enumerate()
        .map(|(j, pj)| cross_product(pj, &approx.q, kind, idx.numerator_degree(j) + 1))
        .collect();
    Ok(TrigApproximant { q, p, kind, source: approx.clone() })
}

/// First-kind (cosine) trigonometric approximant.
pub fn trig_first_kind<S: Scalar>(
    approx: &AlgebraicApproximant<S>,
    idx: &MultiIndex,
) -> Result<TrigApproximant<S>> {
    transform(approx, idx, Kind::First)
}

/// Second-kind (sine numerator) trigonometric approximant.
pub fn trig_second_kind<S: Scalar>(
    approx: &AlgebraicApproximant<S>,
    idx: &MultiIndex,
) -> Result<TrigApproximant<S>> {
    transform(approx, idx, Kind::Second)
}

/// Harmonic coefficients `0..len` of `cos`-series `a` times `b`, where `b` is a
/// cosine series (`sine = false`) or a sine series (`sine = true`).
///
/// `cos(a x) cos(b x) = (cos((a+b)x) + cos((a-b)x)) / 2`,
/// `cos(a x) sin(b x) = (sin((a+b)x) + sin((b-a)x)) / 2`.
pub fn trig_product<S: Scalar>(a: &[S], b: &[S], sine: bool, len: usize) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    let half = S::ratio(1, 2);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (l, bl) in b.iter().enumerate() {
            let v = half.clone() * ai.clone() * bl.clone();
            if i + l < len {
                out[i + l] = out[i + l].clone() + v.clone();
            }
            let diff = l as isize - i as isize;
            let idx = diff.unsigned_abs();
            if idx < len {
                if !sine || diff > 0 {
                    out[idx] = out[idx].clone() + v;
                } else if diff < 0 {
                    out[idx] = out[idx].clone() - v;
                }
            }
        }
    }
    out
}

/// Expansion coefficients of the quotient `P_j / Q` of the algebraic source,
/// which are also the harmonic coefficients of the trigonometric quotient.
pub(crate) fn quotient_expansion<S: Scalar>(
    source: &AlgebraicApproximant<S>,
    j: usize,
    len: usize,
) -> Result<Vec<S>> {
    divide_coeffs(&source.p[j], &source.q, len)
}

/// Verifies `den * g = num` on harmonics `0..len` by product-to-sum
/// linearization. Reports the first harmonic where it fails.
pub(crate) fn check_linearized_quotient<S: Scalar>(
    function: usize,
    den: &[S],
    g: &[S],
    num: &[S],
    len: usize,
    product: impl Fn(&[S], &[S], usize) -> Vec<S>,
) -> Result<()> {
    let prod = product(den, g, len);
    let diff = poly::sub(&prod, num);
    let scale = max_magnitude(den) * max_magnitude(g) * den.len() as f64 + max_magnitude(num);
    for (index, d) in diff.iter().enumerate().take(len) {
        if !d.is_negligible(scale) {
            return Err(Error::ContractViolation { function, index, value: d.to_text() });
        }
    }
    Ok(())
}

/// Order-of-contact check for a trigonometric approximant.
///
/// The harmonic coefficients of `f_j - P_j/Q` are computed exactly: the
/// quotient expansion is taken from the algebraic source and confirmed by
/// multiplying back with the trigonometric denominator. Harmonics `0..=n+m`
/// must vanish; the next `guard` are reported. A positive `grid` also runs
/// the sampled transform cross-check starting from that many nodes.
pub fn trig_residual_order<S: Scalar>(
    f_t: &SeriesSystem<S>,
    t: &TrigApproximant<S>,
    idx: &MultiIndex,
    guard: usize,
    grid: usize,
) -> Result<ResidualReport<S>> {
    let basis = t.kind.trig_basis();
    if f_t.basis() != basis {
        return Err(Error::BasisMismatch { expected: basis.to_string(), found: f_t.basis() });
    }
    idx.check_system(f_t)?;
    let len = idx.contact() + guard + 1;
    f_t.require_length(len)?;
    let sine = t.kind == Kind::Second;
    let mut functions = Vec::with_capacity(f_t.k());
    let mut sampled = Vec::new();
    for (j, f) in f_t.functions().iter().enumerate() {
        let g = quotient_expansion(&t.source, j, len + t.q.len())?;
        let g = if sine { zero_first(g) } else { g };
        check_linearized_quotient(j, &t.q, &g, &t.p[j], len, |a, b, n| trig_product(a, b, sine, n))?;
        let fc = f.effective_coeffs();
        let r: Vec<S> = (0..len).map(|l| fc[l].clone() - g[l].clone()).collect();
        let scale = max_magnitude(&fc).max(max_magnitude(&g[..len]));
        functions.push(residual_from_coeffs(j, &r, idx.contact(), guard, scale)?);
        if grid > 0 {
            sampled.push(sampled_trig_low_order(f, t, j, idx.contact(), grid)?);
        }
    }
    Ok(ResidualReport {
        basis,
        contact: idx.contact(),
        functions,
        sampled_low_order: (grid > 0).then_some(sampled),
    })
}

fn zero_first<S: Scalar>(mut g: Vec<S>) -> Vec<S> {
    if let Some(first) = g.first_mut() {
        *first = S::zero();
    }
    g
}

/// Largest harmonic `0..=contact` of the sampled residual, relative to the
/// largest input coefficient.
fn sampled_trig_low_order<S: Scalar>(
    f: &TruncatedSeries<S>,
    t: &TrigApproximant<S>,
    j: usize,
    contact: usize,
    grid: usize,
) -> Result<f64> {
    let fc: Vec<f64> = f.effective_coeffs().iter().map(Scalar::to_f64).collect();
    let residual = |x: f64| {
        let fx = match t.kind {
            Kind::First => fc.iter().enumerate().map(|(l, c)| c * (l as f64 * x).cos()).sum::<f64>(),
            Kind::Second => fc.iter().enumerate().map(|(l, c)| c * (l as f64 * x).sin()).sum::<f64>(),
        };
        fx - t.eval_p(j, x) / t.eval_q(x)
    };
    let scale = fc.iter().fold(0.0f64, |a, c| a.max(c.abs())).max(f64::MIN_POSITIVE);
    let coeffs = oracle::sampled_expansion(&residual, t.kind == Kind::Second, grid, contact, scale)?;
    Ok(coeffs.iter().take(contact + 1).fold(0.0f64, |a, c| a.max(c.abs())) / scale)
}
