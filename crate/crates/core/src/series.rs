//! Truncated series in the power, trigonometric and Chebyshev bases.
//!
//! Chebyshev polynomials of the second kind follow the sine-quotient indexing
//! `U_l(cos t) = sin(l t) / sin t`, so `U_0 = 0`, `U_1 = 1`, `U_2 = 2x`. A
//! second-kind series `sum b_l U_l` therefore shares its coefficient list with
//! the sine series `sum b_l sin(l t)` and the power series `sum b_l z^l`.
//!
//! First-kind series carry the `a_0 / 2` constant convention as a flag: the
//! stored coefficient is `a_0` and consumers read the halved value through
//! [`TruncatedSeries::effective`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Guard length added on top of `n + 2m` by the default length policy.
pub const DEFAULT_GUARD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Power,
    Cosine,
    Sine,
    ChebyshevT,
    ChebyshevU,
}

impl Basis {
    /// Bases whose index-0 element vanishes identically.
    pub fn starts_at_one(self) -> bool {
        matches!(self, Basis::Sine | Basis::ChebyshevU)
    }

    pub fn is_chebyshev(self) -> bool {
        matches!(self, Basis::ChebyshevT | Basis::ChebyshevU)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Basis::Power => "power",
            Basis::Cosine => "cosine",
            Basis::Sine => "sine",
            Basis::ChebyshevT => "chebyshev_T",
            Basis::ChebyshevU => "chebyshev_U",
        };
        f.write_str(name)
    }
}

fn expect_basis(found: Basis, allowed: &[Basis]) -> Result<()> {
    if allowed.contains(&found) {
        Ok(())
    } else {
        let expected = allowed
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" or ");
        Err(Error::BasisMismatch { expected, found })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    basis: Basis,
    coeffs: Vec<S>,
    halved_constant: bool,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn new(basis: Basis, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a series needs at least one coefficient".into()));
        }
        if basis.starts_at_one() && !coeffs[0].is_zero() {
            return Err(Error::Invalid(format!(
                "{basis} series must have a zero coefficient at index 0"
            )));
        }
        Ok(Self { basis, coeffs, halved_constant: false })
    }

    /// Marks the stored constant as `a_0` of an `a_0 / 2 + ...` expansion.
    pub fn with_halved_constant(mut self, halved: bool) -> Self {
        self.halved_constant = halved;
        self
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Stored coefficients, verbatim.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn halved_constant(&self) -> bool {
        self.halved_constant
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient `i` of the represented function, zero past the stored tail.
    pub fn effective(&self, i: usize) -> S {
        match self.coeffs.get(i) {
            Some(c) if i == 0 && self.halved_constant => c.clone() / S::from_i64(2),
            Some(c) => c.clone(),
            None => S::zero(),
        }
    }

    pub fn effective_coeffs(&self) -> Vec<S> {
        (0..self.len()).map(|i| self.effective(i)).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        TruncatedSeries {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(f).collect(),
            halved_constant: self.halved_constant,
        }
    }

    /// The same coefficient list reinterpreted in another basis.
    fn rebased(&self, basis: Basis) -> Self {
        Self { basis, coeffs: self.coeffs.clone(), halved_constant: self.halved_constant }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSystem<S> {
    functions: Vec<TruncatedSeries<S>>,
}

impl<S: Scalar> SeriesSystem<S> {
    pub fn new(functions: Vec<TruncatedSeries<S>>) -> Result<Self> {
        let first = functions
            .first()
            .ok_or_else(|| Error::Invalid("a system needs at least one series".into()))?;
        if let Some(other) = functions.iter().find(|f| f.basis != first.basis) {
            return Err(Error::BasisMismatch {
                expected: first.basis.to_string(),
                found: other.basis,
            });
        }
        Ok(Self { functions })
    }

    pub fn functions(&self) -> &[TruncatedSeries<S>] {
        &self.functions
    }

    pub fn k(&self) -> usize {
        self.functions.len()
    }

    pub fn basis(&self) -> Basis {
        self.functions[0].basis
    }

    /// Shortest stored length across the system.
    pub fn min_len(&self) -> usize {
        self.functions.iter().map(TruncatedSeries::len).min().unwrap_or(0)
    }

    pub fn require_length(&self, need: usize) -> Result<()> {
        for (function, f) in self.functions.iter().enumerate() {
            if f.len() < need {
                return Err(Error::Length { function, have: f.len(), need });
            }
        }
        Ok(())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> SeriesSystem<T> {
        SeriesSystem { functions: self.functions.iter().map(|s| s.map(f)).collect() }
    }

    /// Multiplies every function by the same scalar.
    pub fn scaled(&self, c: &S) -> Self {
        let functions = self
            .functions
            .iter()
            .map(|s| TruncatedSeries {
                basis: s.basis,
                coeffs: s.coeffs.iter().map(|v| v.clone() * c.clone()).collect(),
                halved_constant: s.halved_constant,
            })
            .collect();
        Self { functions }
    }
}

/// The index pair `(n, m_vec)` with order `m = sum m_j` and numerator degrees
/// `n_j = n + m - m_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiIndex {
    n: usize,
    m: Vec<usize>,
}

impl MultiIndex {
    pub fn new(n: usize, m: Vec<usize>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Invalid("multi-index needs at least one component".into()));
        }
        if m.iter().sum::<usize>() == 0 {
            return Err(Error::Invalid("multi-index order m must be at least 1".into()));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_vec(&self) -> &[usize] {
        &self.m
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    /// The order `m`.
    pub fn order(&self) -> usize {
        self.m.iter().sum()
    }

    /// `n + m`, the last index every contract forces to vanish.
    pub fn contact(&self) -> usize {
        self.n + self.order()
    }

    pub fn numerator_degree(&self, j: usize) -> usize {
        self.contact() - self.m[j]
    }

    pub fn max_m(&self) -> usize {
        self.m.iter().copied().max().unwrap_or(0)
    }

    pub fn is_upper(&self) -> bool {
        self.n >= self.max_m()
    }

    pub fn require_upper(&self) -> Result<()> {
        if self.is_upper() {
            Ok(())
        } else {
            Err(Error::UpperTable { n: self.n, max_m: self.max_m() })
        }
    }

    /// Input length demanded by the truncation policy: `n + 2m + guard`.
    pub fn required_length(&self, guard: usize) -> usize {
        self.n + 2 * self.order() + guard
    }

    pub fn check_system<S: Scalar>(&self, system: &SeriesSystem<S>) -> Result<()> {
        if system.k() != self.k() {
            return Err(Error::Invalid(format!(
                "multi-index has {} components but the system has {} series",
                self.k(),
                system.k()
            )));
        }
        Ok(())
    }
}

/// Declared and root-test estimated radii of convergence, one per function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticityInfo {
    pub declared: Vec<f64>,
    pub estimated: Vec<f64>,
}

impl AnalyticityInfo {
    pub fn new<S: Scalar>(declared: Vec<f64>, system: &SeriesSystem<S>) -> Result<Self> {
        if declared.len() != system.k() {
            return Err(Error::Invalid(format!(
                "{} radii declared for {} series",
                declared.len(),
                system.k()
            )));
        }
        if let Some(r) = declared.iter().find(|r| r.is_nan() || **r <= 0.0) {
            return Err(Error::Invalid(format!("declared radius {r} must be positive")));
        }
        let estimated = system.functions().iter().map(estimate_radius).collect();
        Ok(Self { declared, estimated })
    }
}

/// Root-test estimate `1 / max |f_l|^(1/l)` over the upper half of the stored
/// coefficients. Infinite when that tail is zero.
pub fn estimate_radius<S: Scalar>(s: &TruncatedSeries<S>) -> f64 {
    let len = s.len();
    let start = (len / 2).max(1);
    let root = (start..len)
        .map(|l| s.effective(l).abs_f64().powf(1.0 / l as f64))
        .fold(0.0, f64::max);
    if root == 0.0 {
        f64::INFINITY
    } else {
        1.0 / root
    }
}

/// Cauchy product of two power series truncated to `len` coefficients.
pub fn truncated_multiply<S: Scalar>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
    len: usize,
) -> Result<TruncatedSeries<S>> {
    expect_basis(a.basis, &[Basis::Power])?;
    expect_basis(b.basis, &[Basis::Power])?;
    let a = a.effective_coeffs();
    let b = b.effective_coeffs();
    TruncatedSeries::new(Basis::Power, convolve(&a, &b, len))
}

/// Power-series quotient `num / den` to `len` coefficients.
pub fn series_divide<S: Scalar>(
    num: &TruncatedSeries<S>,
    den: &TruncatedSeries<S>,
    len: usize,
) -> Result<TruncatedSeries<S>> {
    expect_basis(num.basis, &[Basis::Power])?;
    expect_basis(den.basis, &[Basis::Power])?;
    let q = divide_coeffs(&num.effective_coeffs(), &den.effective_coeffs(), len)?;
    TruncatedSeries::new(Basis::Power, q)
}

/// Convolution of two coefficient lists keeping the first `len` terms.
pub(crate) fn convolve<S: Scalar>(a: &[S], b: &[S], len: usize) -> Vec<S> {
    (0..len)
        .map(|i| {
            let lo = i.saturating_sub(b.len().saturating_sub(1));
            let hi = i.min(a.len().saturating_sub(1));
            let mut acc = S::zero();
            if !a.is_empty() && !b.is_empty() {
                for p in lo..=hi {
                    if i - p < b.len() {
                        acc = acc + a[p].clone() * b[i - p].clone();
                    }
                }
            }
            acc
        })
        .collect()
}

/// Quotient coefficients of `num / den` by forward substitution.
pub(crate) fn divide_coeffs<S: Scalar>(num: &[S], den: &[S], len: usize) -> Result<Vec<S>> {
    let scale = crate::scalar::max_magnitude(den);
    let d0 = match den.first() {
        Some(d) if !d.is_negligible(scale) => d.clone(),
        _ => return Err(Error::DivisionByNonUnit),
    };
    let mut q: Vec<S> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = num.get(i).cloned().unwrap_or_else(S::zero);
        for p in 1..=i.min(den.len().saturating_sub(1)) {
            acc = acc - den[p].clone() * q[i - p].clone();
        }
        q.push(acc / d0.clone());
    }
    Ok(q)
}

/// Power and trigonometric series sharing the coefficients of a Chebyshev
/// series: `T -> (power, cosine)` and `U -> (power, sine)`.
pub fn associate_series<S: Scalar>(
    s: &TruncatedSeries<S>,
) -> Result<(TruncatedSeries<S>, TruncatedSeries<S>)> {
    expect_basis(s.basis, &[Basis::ChebyshevT, Basis::ChebyshevU])?;
    let trig = if s.basis == Basis::ChebyshevT { Basis::Cosine } else { Basis::Sine };
    Ok((s.rebased(Basis::Power), s.rebased(trig)))
}

/// Applies [`associate_series`] to every member of a Chebyshev system.
pub fn associate_system<S: Scalar>(
    system: &SeriesSystem<S>,
) -> Result<(SeriesSystem<S>, SeriesSystem<S>)> {
    let (power, trig): (Vec<_>, Vec<_>) = system
        .functions()
        .iter()
        .map(associate_series)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok((SeriesSystem::new(power)?, SeriesSystem::new(trig)?))
}

/// Evaluates a series at a real point. Chebyshev bases require `x` in `[-1, 1]`.
pub fn evaluate<S: Scalar>(s: &TruncatedSeries<S>, x: f64) -> Result<f64> {
    let c: Vec<f64> = s.effective_coeffs().iter().map(Scalar::to_f64).collect();
    if s.basis.is_chebyshev() && !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(x));
    }
    Ok(match s.basis {
        Basis::Power => c.iter().rev().fold(0.0, |acc, v| acc * x + v),
        Basis::Cosine => c.iter().enumerate().map(|(l, v)| v * (l as f64 * x).cos()).sum(),
        Basis::Sine => c.iter().enumerate().map(|(l, v)| v * (l as f64 * x).sin()).sum(),
        Basis::ChebyshevT => clenshaw_t(&c, x),
        Basis::ChebyshevU => clenshaw_u(&c, x),
    })
}

/// `sum c_l T_l(x)` by Clenshaw's recurrence.
pub fn clenshaw_t(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or(0.0) + x * b1 - b2
}

/// `sum c_l U_l(x)` with `U_l(cos t) = sin(l t)/sin t`. Index `l` is the
/// classical `U_{l-1}`, so the recurrence runs on the shifted list and never
/// divides by `sqrt(1 - x^2)`.
pub fn clenshaw_u(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1
}
