//! Hermite–Padé approximants of a system of power series.
//!
//! Given `f_1..f_k` and a multi-index `(n, m_vec)`, find `Q` with `deg Q <= m`
//! and `P_j` with `deg P_j <= n_j` such that `Q f_j - P_j = O(z^{n+m+1})`.
//! Two independent routes are provided: the null space of the linear
//! constraints on the coefficients of `Q`, and the closed form in which every
//! coefficient of `Q` is a signed maximal minor of the block matrix `F`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{determinant, nullspace, rank, Matrix};
use crate::poly;
use crate::scalar::{max_magnitude, Scalar};
use crate::series::{divide_coeffs, Basis, MultiIndex, SeriesSystem, TruncatedSeries};

/// One block `H^j` (rows `m_j`, columns `m`) and its extension `F^j` with the
/// extra trailing column.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelBlock<S> {
    pub function: usize,
    pub square: Matrix<S>,
    pub extended: Matrix<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HankelSystem<S> {
    pub blocks: Vec<HankelBlock<S>>,
    /// `H_{n,m}`: the blocks stacked, `m x m`.
    pub square: Matrix<S>,
    /// `F_{n,m}`: the extended blocks stacked, `m x (m + 1)`.
    pub extended: Matrix<S>,
}

/// Coefficient `p` of `f`, zero for negative or unstored indices.
fn coeff<S: Scalar>(f: &TruncatedSeries<S>, p: isize) -> S {
    if p < 0 {
        S::zero()
    } else {
        f.effective(p as usize)
    }
}

fn require_power<S: Scalar>(system: &SeriesSystem<S>) -> Result<()> {
    if system.basis() == Basis::Power {
        Ok(())
    } else {
        Err(Error::BasisMismatch { expected: Basis::Power.to_string(), found: system.basis() })
    }
}

fn require_inputs<S: Scalar>(system: &SeriesSystem<S>, idx: &MultiIndex, need: usize) -> Result<()> {
    require_power(system)?;
    idx.check_system(system)?;
    system.require_length(need)
}

pub fn build_hankel<S: Scalar>(system: &SeriesSystem<S>, idx: &MultiIndex) -> Result<HankelSystem<S>> {
    require_inputs(system, idx, idx.contact() + 1)?;
    let n = idx.n() as isize;
    let m = idx.order();
    let mut blocks = Vec::new();
    let (mut square_rows, mut extended_rows) = (Vec::new(), Vec::new());
    for (j, f) in system.functions().iter().enumerate() {
        let mj = idx.m_vec()[j];
        if mj == 0 {
            continue;
        }
        let ext: Vec<Vec<S>> = (0..mj)
            .map(|r| (0..=m).map(|c| coeff(f, n - mj as isize + 1 + (r + c) as isize)).collect())
            .collect();
        let sq: Vec<Vec<S>> = ext.iter().map(|row| row[..m].to_vec()).collect();
        square_rows.extend(sq.iter().cloned());
        extended_rows.extend(ext.iter().cloned());
        blocks.push(HankelBlock {
            function: j,
            square: Matrix::from_rows(sq, m),
            extended: Matrix::from_rows(ext, m + 1),
        });
    }
    Ok(HankelSystem {
        blocks,
        square: Matrix::from_rows(square_rows, m),
        extended: Matrix::from_rows(extended_rows, m + 1),
    })
}

/// Value of `H_{n,m}` together with the zero verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardDet<S> {
    pub value: S,
    pub vanishes: bool,
    pub warning: Option<String>,
}

pub fn hadamard_det<S: Scalar>(h: &HankelSystem<S>) -> HadamardDet<S> {
    let value = determinant(&h.square);
    if S::EXACT {
        let vanishes = value.is_zero();
        return HadamardDet { value, vanishes, warning: None };
    }
    // Float mode: compare against the natural size of an m x m determinant.
    let scale = h.square.frobenius().powi(h.square.rows() as i32);
    let vanishes = scale == 0.0 || value.abs_f64() <= 1e-10 * scale;
    let warning = vanishes.then(|| {
        format!(
            "|H| = {:e} is below 1e-10 of its scale {:e}; treated as zero, rerun in exact mode to decide",
            value.abs_f64(),
            scale
        )
    });
    HadamardDet { value, vanishes, warning }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Nullspace,
    Determinant,
}

/// How the raw solution was scaled: every coefficient was divided by
/// `divisor`, the coefficient of `Q` at `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization<S> {
    pub degree: usize,
    pub divisor: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicApproximant<S> {
    /// Denominator coefficients `q_0..q_m`.
    pub q: Vec<S>,
    /// Numerators, `p[j]` holding `n_j + 1` coefficients.
    pub p: Vec<Vec<S>>,
    pub provenance: Provenance,
    pub normalization: Normalization<S>,
    /// Null space of the constraints is one-dimensional.
    pub unique: bool,
    pub nullity: usize,
}

impl<S: Scalar> AlgebraicApproximant<S> {
    pub fn denominator_at_zero_vanishes(&self) -> bool {
        self.q[0].is_negligible(max_magnitude(&self.q))
    }
}

/// Constraint matrix on `(q_0..q_m)`: for each `j`, the coefficients of
/// `z^{n_j+1}..z^{n+m}` in `Q f_j`.
pub fn constraint_matrix<S: Scalar>(system: &SeriesSystem<S>, idx: &MultiIndex) -> Matrix<S> {
    let m = idx.order();
    let mut rows = Vec::new();
    for (j, f) in system.functions().iter().enumerate() {
        for t in idx.numerator_degree(j) + 1..=idx.contact() {
            rows.push((0..=m).map(|p| coeff(f, t as isize - p as isize)).collect());
        }
    }
    Matrix::from_rows(rows, m + 1)
}

/// Truncations of `Q f_j` to degree `n_j`.
fn numerators<S: Scalar>(q: &[S], system: &SeriesSystem<S>, idx: &MultiIndex) -> Vec<Vec<S>> {
    system
        .functions()
        .iter()
        .enumerate()
        .map(|(j, f)| {
            crate::series::convolve(q, &f.effective_coeffs(), idx.numerator_degree(j) + 1)
        })
        .collect()
}

/// Scales so that `Q(0) = 1`, or the lowest nonzero coefficient of `Q` is one.
fn normalize<S: Scalar>(q: Vec<S>, p: Vec<Vec<S>>) -> (Vec<S>, Vec<Vec<S>>, Normalization<S>) {
    let scale = max_magnitude(&q);
    let degree = q.iter().position(|c| !c.is_negligible(scale)).unwrap_or(0);
    let divisor = q[degree].clone();
    let div = |v: &[S]| v.iter().map(|c| c.clone() / divisor.clone()).collect::<Vec<_>>();
    let q_n = div(&q);
    let p_n = p.iter().map(|pj| div(pj)).collect();
    (q_n, p_n, Normalization { degree, divisor })
}

fn assemble<S: Scalar>(
    q: Vec<S>,
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
    provenance: Provenance,
    nullity: usize,
) -> AlgebraicApproximant<S> {
    let p = numerators(&q, system, idx);
    let (q, p, normalization) = normalize(q, p);
    AlgebraicApproximant { q, p, provenance, normalization, unique: nullity == 1, nullity }
}

/// Null-space vectors reordered so the last one has the smallest possible
/// degree of `Q` in the span.
fn echelon_by_degree<S: Scalar>(basis: &[Vec<S>]) -> Vec<Vec<S>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let cols = basis[0].len();
    let reversed: Vec<Vec<S>> = basis.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let mut m = Matrix::from_rows(reversed, cols);
    let pivots = crate::linalg::rref(&mut m);
    (0..pivots.len()).map(|r| m.row(r).iter().rev().cloned().collect()).collect()
}

/// Solves the Hermite–Padé problem through the null space of its constraints.
pub fn solve_nullspace<S: Scalar>(
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
) -> Result<AlgebraicApproximant<S>> {
    require_inputs(system, idx, idx.contact() + 1)?;
    let basis = nullspace(&constraint_matrix(system, idx));
    let nullity = basis.len();
    // m + 1 unknowns, m equations: the null space is never trivial.
    let q = echelon_by_degree(&basis).pop().expect("nontrivial null space");
    Ok(assemble(q, system, idx, Provenance::Nullspace, nullity))
}

/// Cofactors of the appended last row of `[F; row]`: entry `c` multiplies
/// column `c` of the row in the Laplace expansion.
fn last_row_cofactors<S: Scalar>(f: &Matrix<S>) -> Vec<S> {
    let m = f.rows();
    (0..=m)
        .map(|c| {
            let minor = determinant(&f.without_column(c));
            if (m + c) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect()
}

/// Closed-form approximant: `Q = det[F; E(z)]`, `P_j = det[F; E_{m_j}(z)]`,
/// both expanded along the appended row.
pub fn qp_via_determinants<S: Scalar>(
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
) -> Result<AlgebraicApproximant<S>> {
    let h = build_hankel(system, idx)?;
    let m = idx.order();
    let n = idx.n() as isize;
    let cof = last_row_cofactors(&h.extended);
    if poly::is_zero(&cof) {
        return Err(Error::Degenerate("every maximal minor of F vanishes".into()));
    }
    // E(z) = (z^m, ..., z, 1): column c carries z^{m-c}.
    let q: Vec<S> = (0..=m).map(|p| cof[m - p].clone()).collect();
    // E_{m_j}(z), column c: z^{m-c} times f_j truncated to degree n - m_j + c.
    let p: Vec<Vec<S>> = system
        .functions()
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let nj = idx.numerator_degree(j);
            let mut pj = vec![S::zero(); nj + 1];
            for (c, cc) in cof.iter().enumerate() {
                let top = n - idx.m_vec()[j] as isize + c as isize;
                for l in 0..=top.max(-1) {
                    let deg = m - c + l as usize;
                    pj[deg] = pj[deg].clone() + cc.clone() * coeff(f, l);
                }
            }
            pj
        })
        .collect();
    let nullity = m + 1 - rank(&h.extended);
    let (q, p, normalization) = normalize(q, p);
    Ok(AlgebraicApproximant {
        q,
        p,
        provenance: Provenance::Determinant,
        normalization,
        unique: nullity == 1,
        nullity,
    })
}

/// Residual coefficients `d^j_l`, `l = 1..=count`, each the determinant of
/// `F` with the row `(f^j_{n+l}, ..., f^j_{n+m+l})` appended. They are the
/// coefficients of `z^{n+m+l}` in `Q f_j - P_j` for the unnormalized
/// determinant denominator.
pub fn residual_determinants<S: Scalar>(
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
    count: usize,
) -> Result<Vec<Vec<S>>> {
    require_inputs(system, idx, idx.contact() + count + 1)?;
    let h = build_hankel(system, idx)?;
    let cof = last_row_cofactors(&h.extended);
    let n = idx.n();
    Ok(system
        .functions()
        .iter()
        .map(|f| {
            (1..=count)
                .map(|l| {
                    cof.iter().enumerate().fold(S::zero(), |acc, (c, cc)| {
                        acc + cc.clone() * f.effective(n + l + c)
                    })
                })
                .collect()
        })
        .collect())
}

/// Residual coefficients of one function.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionResidual<S> {
    /// Coefficients at indices `window_start..window_start + window.len()`.
    pub window: Vec<S>,
    /// First index past the contact order with a nonzero coefficient, if the
    /// window contains one.
    pub first_nonzero: Option<usize>,
    /// Largest magnitude among the indices that must vanish.
    pub low_order_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<S> {
    pub basis: Basis,
    /// `n + m`; every index up to and including it vanishes.
    pub contact: usize,
    pub functions: Vec<FunctionResidual<S>>,
    /// Largest low-order coefficient of the sampled residual, relative to the
    /// input scale, one per function; present when the sampled cross-check ran.
    pub sampled_low_order: Option<Vec<f64>>,
}

impl<S: Scalar> ResidualReport<S> {
    pub fn window_start(&self) -> usize {
        self.contact + 1
    }

    pub fn all_windows_zero(&self) -> bool {
        self.functions.iter().all(|f| f.first_nonzero.is_none())
    }
}

/// Checks that `coeffs[0..=contact]` vanish and packages the next `guard`
/// coefficients. `scale` sets the float-mode tolerance.
pub(crate) fn residual_from_coeffs<S: Scalar>(
    function: usize,
    coeffs: &[S],
    contact: usize,
    guard: usize,
    scale: f64,
) -> Result<FunctionResidual<S>> {
    let mut low_order_max = 0.0f64;
    for (index, c) in coeffs.iter().enumerate().take(contact + 1) {
        if !c.is_negligible(scale) {
            return Err(Error::ContractViolation { function, index, value: c.to_text() });
        }
        low_order_max = low_order_max.max(c.abs_f64());
    }
    let window: Vec<S> = coeffs.iter().skip(contact + 1).take(guard).cloned().collect();
    let first_nonzero = window
        .iter()
        .position(|c| !c.is_negligible(scale))
        .map(|i| i + contact + 1);
    Ok(FunctionResidual { window, first_nonzero, low_order_max })
}

/// Coefficients of `Q f_j - P_j` on `(n+m, n+m+guard]` after checking that
/// everything up to `n + m` vanishes.
pub fn residual_window<S: Scalar>(
    approx: &AlgebraicApproximant<S>,
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
    guard: usize,
) -> Result<ResidualReport<S>> {
    let len = idx.contact() + guard + 1;
    require_inputs(system, idx, len)?;
    let functions = system
        .functions()
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let fc = f.effective_coeffs();
            let qf = crate::series::convolve(&approx.q, &fc, len);
            let r = poly::sub(&qf, &approx.p[j]);
            let scale = max_magnitude(&approx.q) * max_magnitude(&fc) * (approx.q.len() as f64)
                + max_magnitude(&approx.p[j]);
            residual_from_coeffs(j, &r, idx.contact(), guard, scale)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport { basis: Basis::Power, contact: idx.contact(), functions, sampled_low_order: None })
}

/// Outcome of the existence test for Hermite–Jacobi approximants.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiCertificate<S> {
    pub exists: bool,
    pub approximant: Option<AlgebraicApproximant<S>>,
    pub determinant: HadamardDet<S>,
    pub nullity: usize,
    pub certificate: String,
}

/// Removes the largest power of `z` dividing `q` and every `p_j`.
fn strip_common_z<S: Scalar>(q: &[S], p: &[Vec<S>]) -> (Vec<S>, Vec<Vec<S>>, usize) {
    let lowest = |v: &[S]| {
        let s = max_magnitude(v);
        v.iter().position(|c| !c.is_negligible(s)).unwrap_or(usize::MAX)
    };
    let shift = p.iter().map(|pj| lowest(pj)).chain([lowest(q)]).min().unwrap_or(0);
    let shift = if shift == usize::MAX { 0 } else { shift };
    let cut = |v: &[S]| v.iter().skip(shift).cloned().collect::<Vec<_>>();
    (cut(q), p.iter().map(|pj| cut(pj)).collect(), shift)
}

/// Checks `f_j - P_j / Q = O(z^{n+m+1})` directly by series division.
fn passes_direct_check<S: Scalar>(
    q: &[S],
    p: &[Vec<S>],
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
) -> bool {
    let (q, p, _) = strip_common_z(q, p);
    let len = idx.contact() + 1;
    system.functions().iter().zip(&p).all(|(f, pj)| {
        let Ok(ratio) = divide_coeffs(pj, &q, len) else {
            return false;
        };
        let fc = f.effective_coeffs();
        let scale = max_magnitude(&fc).max(max_magnitude(&ratio));
        (0..len).all(|i| (fc[i].clone() - ratio[i].clone()).is_negligible(scale))
    })
}

/// Decides whether Hermite–Jacobi approximants exist for `(n, m_vec)`.
///
/// A nonzero `H_{n,m}` settles it: the approximant exists, is unique and
/// equals the Hermite–Padé one. Otherwise each null-space solution is tested
/// directly against the divided contract. Pairs that do not solve the linear
/// problem are not searched.
pub fn jacobi_exists<S: Scalar>(
    system: &SeriesSystem<S>,
    idx: &MultiIndex,
) -> Result<JacobiCertificate<S>> {
    let h = build_hankel(system, idx)?;
    let det = hadamard_det(&h);
    if !det.vanishes {
        let approx = solve_nullspace(system, idx)?;
        let nullity = approx.nullity;
        return Ok(JacobiCertificate {
            exists: true,
            approximant: Some(approx),
            determinant: det,
            nullity,
            certificate: "H is nonzero: the approximant exists, is unique and coincides with the Hermite-Pade approximant".into(),
        });
    }

    let basis = nullspace(&constraint_matrix(system, idx));
    let nullity = basis.len();
    let mut candidates = echelon_by_degree(&basis);
    candidates.reverse();
    candidates.extend(basis);
    for q in candidates {
        let p = numerators(&q, system, idx);
        if passes_direct_check(&q, &p, system, idx) {
            let (q, p, normalization) = normalize(q, p);
            return Ok(JacobiCertificate {
                exists: true,
                approximant: Some(AlgebraicApproximant {
                    q,
                    p,
                    provenance: Provenance::Nullspace,
                    normalization,
                    unique: nullity == 1,
                    nullity,
                }),
                determinant: det,
                nullity,
                certificate: format!(
                    "H vanishes; a null-space solution (nullity {nullity}) satisfies the divided contract directly"
                ),
            });
        }
    }
    Ok(JacobiCertificate {
        exists: false,
        approximant: None,
        determinant: det,
        nullity,
        certificate: format!(
            "determinant zero, no candidate passed (nullity {nullity}; only solutions of the linear problem were searched)"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn series(c: Vec<Rational>) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(Basis::Power, c).unwrap()
    }

    fn exp(len: usize) -> TruncatedSeries<Rational> {
        let mut fact = 1i64;
        series(
            (0..len)
                .map(|l| {
                    if l > 0 {
                        fact *= l as i64;
                    }
                    rational(1, fact)
                })
                .collect(),
        )
    }

    fn geometric(len: usize) -> TruncatedSeries<Rational> {
        series(vec![rational(1, 1); len])
    }

    fn sys(f: Vec<TruncatedSeries<Rational>>) -> SeriesSystem<Rational> {
        SeriesSystem::new(f).unwrap()
    }

    fn q(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(a, b)| rational(a, b)).collect()
    }

    #[test]
    fn hankel_single_entry() {
        let h = build_hankel(&sys(vec![exp(12)]), &MultiIndex::new(1, vec![1]).unwrap()).unwrap();
        assert_eq!(h.square.to_rows(), vec![q(&[(1, 1)])]);
        assert_eq!(h.extended.to_rows(), vec![q(&[(1, 1), (1, 2)])]);
    }

    #[test]
    fn hankel_two_blocks() {
        let s = sys(vec![exp(12), geometric(12)]);
        let h = build_hankel(&s, &MultiIndex::new(1, vec![1, 1]).unwrap()).unwrap();
        assert_eq!(h.square.to_rows(), vec![q(&[(1, 1), (1, 2)]), q(&[(1, 1), (1, 1)])]);
        assert_eq!(hadamard_det(&h).value, rational(1, 2));
    }

    #[test]
    fn hankel_negative_index_padding() {
        let h = build_hankel(&sys(vec![exp(12)]), &MultiIndex::new(0, vec![2]).unwrap()).unwrap();
        assert_eq!(h.square.get(0, 0), &rational(0, 1));
        assert_eq!(h.square.get(0, 1), &rational(1, 1));
    }

    #[test]
    fn hankel_omits_empty_blocks() {
        let s = sys(vec![exp(12), geometric(12)]);
        let h = build_hankel(&s, &MultiIndex::new(2, vec![0, 2]).unwrap()).unwrap();
        assert_eq!(h.blocks.len(), 1);
        assert_eq!(h.blocks[0].function, 1);
        assert_eq!(h.square.rows(), 2);
    }

    #[test]
    fn hankel_rejects_short_input() {
        let err = build_hankel(&sys(vec![exp(2)]), &MultiIndex::new(1, vec![1]).unwrap());
        assert!(matches!(err, Err(Error::Length { need: 3, .. })));
    }

    #[test]
    fn zero_row_gives_zero_determinant() {
        let s = sys(vec![exp(12), series(vec![rational(0, 1); 12])]);
        let h = build_hankel(&s, &MultiIndex::new(1, vec![1, 1]).unwrap()).unwrap();
        assert!(hadamard_det(&h).vanishes);
    }

    #[test]
    fn nullspace_fixtures() {
        let idx = MultiIndex::new(1, vec![1]).unwrap();
        let a = solve_nullspace(&sys(vec![geometric(12)]), &idx).unwrap();
        assert_eq!(a.q, q(&[(1, 1), (-1, 1)]));
        assert_eq!(a.p, vec![q(&[(1, 1), (0, 1)])]);
        assert!(a.unique);

        let a = solve_nullspace(&sys(vec![exp(12)]), &idx).unwrap();
        assert_eq!(a.q, q(&[(1, 1), (-1, 2)]));
        assert_eq!(a.p, vec![q(&[(1, 1), (1, 2)])]);

        // r z / (1 - r z) with r = 1/3
        let r = rational(1, 3);
        let c = (0..12).map(|l| if l == 0 { rational(0, 1) } else { num::traits::pow(r.clone(), l) });
        let a = solve_nullspace(&sys(vec![series(c.collect())]), &idx).unwrap();
        assert_eq!(a.q, q(&[(1, 1), (-1, 3)]));
        assert_eq!(a.p, vec![q(&[(0, 1), (1, 3)])]);
    }

    #[test]
    fn determinant_route_fixtures() {
        let idx = MultiIndex::new(1, vec![1]).unwrap();
        let a = qp_via_determinants(&sys(vec![exp(12)]), &idx).unwrap();
        assert_eq!(a.provenance, Provenance::Determinant);
        assert_eq!(a.q, q(&[(1, 1), (-1, 2)]));
        assert_eq!(a.p, vec![q(&[(1, 1), (1, 2)])]);
        // raw Q = det[[1, 1/2], [z, 1]] = 1 - z/2
        assert_eq!(a.normalization.divisor, rational(1, 1));

        let a = qp_via_determinants(&sys(vec![geometric(12)]), &idx).unwrap();
        assert_eq!(a.q, q(&[(1, 1), (-1, 1)]));
        // raw Q = det[[1, 1], [z, 1]] = 1 - z
        assert_eq!(a.normalization.divisor, rational(1, 1));
    }

    #[test]
    fn determinant_route_two_functions() {
        let s = sys(vec![exp(12), geometric(12)]);
        let idx = MultiIndex::new(1, vec![1, 1]).unwrap();
        let det = qp_via_determinants(&s, &idx).unwrap();
        let null = solve_nullspace(&s, &idx).unwrap();
        assert_eq!(det.q, null.q);
        assert_eq!(det.p, null.p);
        let report = residual_window(&det, &s, &idx, 8).unwrap();
        assert_eq!(report.window_start(), 4);
    }

    #[test]
    fn determinant_route_degenerate() {
        let s = sys(vec![series(vec![rational(0, 1); 12])]);
        let err = qp_via_determinants(&s, &MultiIndex::new(1, vec![1]).unwrap());
        assert!(matches!(err, Err(Error::Degenerate(_))));
    }

    #[test]
    fn residual_window_fixtures() {
        let idx = MultiIndex::new(1, vec![1]).unwrap();
        let s = sys(vec![geometric(12)]);
        let a = solve_nullspace(&s, &idx).unwrap();
        let r = residual_window(&a, &s, &idx, 8).unwrap();
        assert!(r.all_windows_zero());
        assert_eq!(r.functions[0].window.len(), 8);

        let s = sys(vec![exp(12)]);
        let a = solve_nullspace(&s, &idx).unwrap();
        let r = residual_window(&a, &s, &idx, 8).unwrap();
        // coefficient of z^3 in (1 - z/2) e^z - (1 + z/2) is 1/6 - 1/4
        assert_eq!(r.functions[0].window[0], rational(-1, 12));
        assert_eq!(r.functions[0].first_nonzero, Some(3));
    }

    #[test]
    fn residual_window_flags_violation() {
        let idx = MultiIndex::new(1, vec![1]).unwrap();
        let s = sys(vec![exp(12)]);
        let mut a = solve_nullspace(&s, &idx).unwrap();
        a.p[0][1] = rational(1, 3);
        assert!(matches!(
            residual_window(&a, &s, &idx, 8),
            Err(Error::ContractViolation { function: 0, index: 1, .. })
        ));
    }

    #[test]
    fn residual_determinants_match_window() {
        let s = sys(vec![exp(16), geometric(16)]);
        let idx = MultiIndex::new(2, vec![1, 1]).unwrap();
        let a = qp_via_determinants(&s, &idx).unwrap();
        let window = residual_window(&a, &s, &idx, 6).unwrap();
        let d = residual_determinants(&s, &idx, 6).unwrap();
        for (j, dj) in d.iter().enumerate() {
            let scaled: Vec<Rational> =
                window.functions[j].window.iter().map(|v| v * &a.normalization.divisor).collect();
            assert_eq!(&scaled, dj);
        }
    }

    #[test]
    fn jacobi_nonzero_determinant() {
        let c = jacobi_exists(&sys(vec![exp(12)]), &MultiIndex::new(1, vec![1]).unwrap()).unwrap();
        assert!(c.exists);
        assert_eq!(c.determinant.value, rational(1, 1));
        assert_eq!(c.approximant.unwrap().q, q(&[(1, 1), (-1, 2)]));
    }

    #[test]
    fn jacobi_constant_denominator() {
        // f = 1 + z^2, (n, m) = (0, (1)): Q is constant and f - 1 = z^2
        let s = sys(vec![series(q(&[(1, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1)]))]);
        let c = jacobi_exists(&s, &MultiIndex::new(0, vec![1]).unwrap()).unwrap();
        assert!(c.exists);
        let a = c.approximant.unwrap();
        assert_eq!(a.q, q(&[(1, 1), (0, 1)]));
        assert_eq!(a.p, vec![q(&[(1, 1)])]);
    }

    #[test]
    fn jacobi_missing_when_every_candidate_fails() {
        // f = 1 + z^2 at (1, (1)): H = [f_1] = 0 and the only solution is Q = z
        let s = sys(vec![series(q(&[(1, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1)]))]);
        let c = jacobi_exists(&s, &MultiIndex::new(1, vec![1]).unwrap()).unwrap();
        assert!(!c.exists);
        assert!(c.determinant.vanishes);
        assert!(c.certificate.starts_with("determinant zero, no candidate passed"));
    }

    #[test]
    fn jacobi_zero_determinant_with_passing_candidate() {
        // f = 1: H = [[1, 0], [0, 0]] at (1, (2)), nullity 2, Q = 1 works
        let s = sys(vec![series(q(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]))]);
        let c = jacobi_exists(&s, &MultiIndex::new(1, vec![2]).unwrap()).unwrap();
        assert!(c.determinant.vanishes);
        assert_eq!(c.nullity, 2);
        assert!(c.exists);
        assert!(!c.approximant.unwrap().unique);
    }

    #[test]
    fn float_mode_matches_exact() {
        let s = sys(vec![exp(12), geometric(12)]);
        let idx = MultiIndex::new(2, vec![1, 1]).unwrap();
        let exact = solve_nullspace(&s, &idx).unwrap();
        let float = solve_nullspace(&s.map(|v| Scalar::to_f64(v)), &idx).unwrap();
        for (a, b) in exact.q.iter().zip(&float.q) {
            assert!((Scalar::to_f64(a) - b).abs() < 1e-12);
        }
        let h = build_hankel(&s.map(|v| Scalar::to_f64(v)), &idx).unwrap();
        assert!(!hadamard_det(&h).vanishes);
    }
}
