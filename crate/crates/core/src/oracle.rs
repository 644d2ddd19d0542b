//! Independent reference computations used to cross-check the main routines:
//! integer null spaces, brute-force residuals, FFT-based cosine and sine
//! transforms, and random test systems.

use std::sync::Arc;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::integer::Integer;
use num::traits::{Signed, Zero};
use rand::Rng;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::hermite_pade::{constraint_matrix, solve_nullspace, AlgebraicApproximant};
use crate::linalg::{rank, Matrix};
use crate::scalar::{rational, Rational, Scalar};
use crate::series::{Basis, MultiIndex, SeriesSystem, TruncatedSeries};

/// Largest node count the adaptive transform will use.
pub const MAX_NODES: usize = (1 << 17) + 1;

/// Outcome of comparing a computation against its oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub agree: bool,
    pub max_abs_diff: f64,
    pub detail: String,
}

/// Null space of a rational matrix by fraction-free integer elimination.
/// Each basis vector has integer entries with gcd one and a positive first
/// nonzero entry.
pub fn exact_nullspace(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    // clear denominators row by row
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
            r.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let (x, y) = (a[row][col].clone(), a[r][col].clone());
            for c in 0..cols {
                a[r][c] = &a[r][c] * &x - &a[row][c] * &y;
            }
            let g = a[r].iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !g.is_zero() {
                a[r].iter_mut().for_each(|v| *v = &*v / &g);
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            // x_free = lcm of pivot entries; each pivot variable solves its row.
            let l = pivots.iter().enumerate().fold(BigInt::from(1), |acc, (i, &p)| acc.lcm(&a[i][p]));
            let mut v = vec![BigInt::zero(); cols];
            v[free] = l.clone();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -(&a[i][free] * &l) / &a[i][p];
            }
            primitive(v)
        })
        .collect()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        v.iter_mut().for_each(|x| *x = &*x / &g);
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    v
}

/// Coefficients `0..len` of `Q f_j - P_j` by the schoolbook double loop.
pub fn brute_residual<S: Scalar>(
    approx: &AlgebraicApproximant<S>,
    system: &SeriesSystem<S>,
    len: usize,
) -> Vec<Vec<S>> {
    system
        .functions()
        .iter()
        .zip(&approx.p)
        .map(|(f, pj)| {
            let mut out = vec![S::zero(); len];
            for (i, qi) in approx.q.iter().enumerate() {
                for (l, slot) in out.iter_mut().enumerate().skip(i) {
                    if l - i < f.len() {
                        *slot = slot.clone() + qi.clone() * f.effective(l - i);
                    }
                }
            }
            for (l, pl) in pj.iter().enumerate().take(len) {
                out[l] = out[l].clone() - pl.clone();
            }
            out
        })
        .collect()
}

fn forward_fft(len: usize) -> Arc<dyn Fft<f64>> {
    FftPlanner::new().plan_fft_forward(len)
}

fn check_nodes(samples: &[f64]) -> Result<usize> {
    let nodes = samples.len();
    if nodes < 3 || !(nodes - 1).is_power_of_two() {
        return Err(Error::Invalid(format!("transform needs 2^p + 1 nodes, got {nodes}")));
    }
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(nodes - 1)
}

/// Cosine coefficients `a_0..=a_M` of `g(theta) = sum a_l cos(l theta)` from
/// samples at `theta_k = k pi / M`, via an FFT of the even extension.
pub fn dct1(samples: &[f64]) -> Result<Vec<f64>> {
    let m = check_nodes(samples)?;
    let mut buf: Vec<Complex64> = samples
        .iter()
        .chain(samples[1..m].iter().rev())
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    forward_fft(2 * m).process(&mut buf);
    Ok((0..=m)
        .map(|l| {
            let y = buf[l].re / m as f64;
            if l == 0 || l == m {
                y / 2.0
            } else {
                y
            }
        })
        .collect())
}

/// Sine coefficients `b_0..=b_M` (with `b_0 = b_M = 0`) of
/// `g(theta) = sum b_l sin(l theta)` from samples at `theta_k = k pi / M`,
/// via an FFT of the odd extension.
pub fn dst1(samples: &[f64]) -> Result<Vec<f64>> {
    let m = check_nodes(samples)?;
    let mut buf = vec![Complex64::new(0.0, 0.0); 2 * m];
    for k in 1..m {
        buf[k] = Complex64::new(samples[k], 0.0);
        buf[2 * m - k] = Complex64::new(-samples[k], 0.0);
    }
    forward_fft(2 * m).process(&mut buf);
    Ok((0..=m)
        .map(|l| if l == 0 || l == m { 0.0 } else { -buf[l].im / m as f64 })
        .collect())
}

/// `T` coefficients from samples at the Chebyshev extreme points
/// `x_k = cos(k pi / (N - 1))`, `N = 2^p + 1`. The constant is not halved.
pub fn dct_cheb_coeffs(samples: &[f64]) -> Result<Vec<f64>> {
    dct1(samples)
}

/// `U` coefficients (with `U_l(cos t) = sin(l t) / sin t`) from samples at the
/// same nodes. The endpoint samples are not used.
pub fn dct_cheb_u_coeffs(samples: &[f64]) -> Result<Vec<f64>> {
    let m = check_nodes(samples)?;
    let weighted: Vec<f64> = samples
        .iter()
        .enumerate()
        .map(|(k, v)| if k == 0 || k == m { 0.0 } else { v * (k as f64 * std::f64::consts::PI / m as f64).sin() })
        .collect();
    dst1(&weighted)
}

/// Cosine (or sine) coefficients `0..=count` of `g(theta)`, sampled on a grid
/// of `nodes` points that doubles until the coefficients change by at most
/// `1e-13 * scale` or the node limit is reached.
pub fn sampled_expansion(
    g: &dyn Fn(f64) -> f64,
    sine: bool,
    nodes: usize,
    count: usize,
    scale: f64,
) -> Result<Vec<f64>> {
    let mut m = (nodes.max(3) - 1).next_power_of_two().max(2 * (count + 1).next_power_of_two());
    let transform = |m: usize| -> Result<Vec<f64>> {
        let samples: Vec<f64> = (0..=m).map(|k| g(k as f64 * std::f64::consts::PI / m as f64)).collect();
        if sine {
            dst1(&samples)
        } else {
            dct1(&samples)
        }
    };
    let mut prev = transform(m)?;
    while m + 1 < MAX_NODES {
        m *= 2;
        let next = transform(m)?;
        let scale = next.iter().fold(scale, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
        let settled = (0..=count).all(|l| (next[l] - prev[l]).abs() <= 1e-13 * scale);
        prev = next;
        if settled {
            break;
        }
    }
    prev.truncate(count + 1);
    Ok(prev)
}

/// Checks that the denominator from [`solve_nullspace`] lies in the span of
/// the integer null space of the constraint matrix.
pub fn check_against_oracle(system: &SeriesSystem<Rational>, idx: &MultiIndex) -> Result<OracleResult> {
    let approx = solve_nullspace(system, idx)?;
    let basis: Vec<Vec<Rational>> = exact_nullspace(&constraint_matrix(system, idx).to_rows())
        .into_iter()
        .map(|v| v.into_iter().map(Rational::from_integer).collect())
        .collect();
    let mut q = approx.q.clone();
    q.resize(idx.order() + 1, Rational::zero());
    let cols = q.len();
    let r0 = rank(&Matrix::from_rows(basis.clone(), cols));
    let mut rows = basis;
    rows.push(q);
    let agree = rank(&Matrix::from_rows(rows, cols)) == r0 && r0 == approx.nullity;
    Ok(OracleResult {
        agree,
        max_abs_diff: if agree { 0.0 } else { f64::INFINITY },
        detail: format!("oracle nullity {r0}, solver nullity {}", approx.nullity),
    })
}

/// Random rational power-series system with entries `a/b`, `|a| <= 5`,
/// `1 <= b <= 5`. The constant terms are nonzero.
pub fn random_system(rng: &mut impl Rng, k: usize, len: usize) -> SeriesSystem<Rational> {
    let functions = (0..k)
        .map(|_| {
            let coeffs = (0..len)
                .map(|l| loop {
                    let v = rational(rng.gen_range(-5..=5), rng.gen_range(1..=5));
                    if l > 0 || !v.is_zero() {
                        break v;
                    }
                })
                .collect();
            TruncatedSeries::new(Basis::Power, coeffs).expect("nonempty power series")
        })
        .collect();
    SeriesSystem::new(functions).expect("nonempty system")
}

/// Random multi-index with `k` entries, `n <= max_n`, every `m_j >= 1` and
/// total `m <= max(max_m, k)`.
pub fn random_index(rng: &mut impl Rng, k: usize, max_n: usize, max_m: usize) -> MultiIndex {
    let total = rng.gen_range(k..=max_m.max(k));
    let mut m = vec![1; k];
    for _ in k..total {
        m[rng.gen_range(0..k)] += 1;
    }
    MultiIndex::new(rng.gen_range(0..=max_n), m).expect("valid multi-index")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exact_nullspace_fixture() {
        let ns = exact_nullspace(&[vec![rational(1, 1), rational(1, 2)]]);
        assert_eq!(ns, vec![vec![BigInt::from(1), BigInt::from(-2)]]);
        let ns = exact_nullspace(&[vec![rational(2, 1), rational(4, 1), rational(6, 1)]]);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((BigInt::from(2) * &v[0] + BigInt::from(4) * &v[1] + BigInt::from(6) * &v[2]).is_zero());
        }
        assert!(exact_nullspace(&[vec![rational(1, 1), rational(0, 1)], vec![rational(0, 1), rational(1, 1)]]).is_empty());
    }

    #[test]
    fn transforms_recover_coefficients() {
        let m = 16;
        let x: Vec<f64> = (0..=m).map(|k| k as f64 * PI / m as f64).collect();
        let c: Vec<f64> = x.iter().map(|t| 3.0 + 2.0 * t.cos() - 0.5 * (5.0 * t).cos()).collect();
        let a = dct1(&c).unwrap();
        assert!((a[0] - 3.0).abs() < 1e-14 && (a[1] - 2.0).abs() < 1e-14 && (a[5] + 0.5).abs() < 1e-14);
        let s: Vec<f64> = x.iter().map(|t| t.sin() + 0.25 * (7.0 * t).sin()).collect();
        let b = dst1(&s).unwrap();
        assert!((b[1] - 1.0).abs() < 1e-14 && (b[7] - 0.25).abs() < 1e-14 && b[2].abs() < 1e-14);
        assert!(dct1(&[1.0; 10]).is_err());
        assert!(matches!(dct1(&[1.0, f64::NAN, 1.0]), Err(Error::NonFinite(1))));
    }

    #[test]
    fn chebyshev_transforms() {
        let m = 32;
        let xs: Vec<f64> = (0..=m).map(|k| (k as f64 * PI / m as f64).cos()).collect();
        // 1/(5/4 - x) has U coefficients 2 (1/2)^{l-1}... check the T side on x^2 = (T_0 + T_2)/2
        let t = dct_cheb_coeffs(&xs.iter().map(|x| x * x).collect::<Vec<_>>()).unwrap();
        assert!((t[0] - 0.5).abs() < 1e-14 && (t[2] - 0.5).abs() < 1e-14);
        // 4x^2 - 1 is the U coefficient list (0, 0, 0, 1)
        let u = dct_cheb_u_coeffs(&xs.iter().map(|x| 4.0 * x * x - 1.0).collect::<Vec<_>>()).unwrap();
        assert!((u[3] - 1.0).abs() < 1e-13 && u[1].abs() < 1e-13);
    }

    #[test]
    fn adaptive_sampling_settles() {
        let g = |t: f64| 1.0 / (1.25 - t.cos());
        let c = sampled_expansion(&g, false, 17, 4, 1.0).unwrap();
        // 1/(5/4 - cos t) = 4/3 (1 + 2 sum 2^{-l} cos l t)
        assert!((c[0] - 4.0 / 3.0).abs() < 1e-13);
        assert!((c[3] - 8.0 / 3.0 / 8.0).abs() < 1e-13);
    }
}
