//! Dense polynomial helpers. A polynomial is a coefficient list indexed by
//! degree in the power basis, or by basis index for the Chebyshev bases.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{max_magnitude, Scalar};

/// Degree of the highest non-negligible coefficient, `None` for the zero polynomial.
pub fn degree<S: Scalar>(p: &[S]) -> Option<usize> {
    let scale = max_magnitude(p);
    p.iter().rposition(|c| !c.is_negligible(scale))
}

pub fn trimmed<S: Scalar>(p: &[S]) -> Vec<S> {
    match degree(p) {
        Some(d) => p[..=d].to_vec(),
        None => Vec::new(),
    }
}

pub fn is_zero<S: Scalar>(p: &[S]) -> bool {
    degree(p).is_none()
}

pub fn mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    crate::series::convolve(a, b, a.len() + b.len() - 1)
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(S::zero);
            let y = b.get(i).cloned().unwrap_or_else(S::zero);
            x - y
        })
        .collect()
}

pub fn scale<S: Scalar>(p: &[S], c: &S) -> Vec<S> {
    p.iter().map(|v| v.clone() * c.clone()).collect()
}

pub fn derivative<S: Scalar>(p: &[S]) -> Vec<S> {
    p.iter().enumerate().skip(1).map(|(i, c)| c.clone() * S::from_i64(i as i64)).collect()
}

/// Euclidean division `a = q b + r` with `deg r < deg b`.
pub fn divrem<S: Scalar>(a: &[S], b: &[S]) -> Result<(Vec<S>, Vec<S>)> {
    let b = trimmed(b);
    let db = b.len().checked_sub(1).ok_or(Error::ZeroPolynomial)?;
    let lead = b[db].clone();
    let mut r = trimmed(a);
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![S::zero(); r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone() / lead.clone();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bi.clone();
        }
        r[shift + db] = S::zero();
        q[shift] = c;
    }
    r.truncate(db);
    Ok((q, trimmed(&r)))
}

/// Monic greatest common divisor. Meaningful in exact mode; in float mode the
/// relative zero test decides when a remainder vanishes.
pub fn gcd<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let (mut x, mut y) = (trimmed(a), trimmed(b));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    match x.last().cloned() {
        Some(lead) => x.into_iter().map(|c| c / lead.clone()).collect(),
        None => Vec::new(),
    }
}

/// Evaluates a real-coefficient power polynomial at a complex point.
pub fn eval_complex<S: Scalar>(p: &[S], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64())
}

pub fn eval_f64<S: Scalar>(p: &[S], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
}

/// Complex roots from the eigenvalues of the companion matrix, each polished
/// by a few Newton steps.
pub fn complex_roots<S: Scalar>(p: &[S]) -> Result<Vec<Complex64>> {
    let p: Vec<f64> = trimmed(p).iter().map(Scalar::to_f64).collect();
    let deg = p.len().checked_sub(1).ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    let mut companion = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -p[i] / lead;
    }
    let dp = derivative(&p);
    let roots = companion
        .complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let d = eval_complex(&dp, z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = eval_complex(&p, z) / d;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z -= step;
            }
            if (eval_complex(&p, z)).norm() <= (eval_complex(&p, z0)).norm() {
                z
            } else {
                z0
            }
        })
        .collect();
    Ok(roots)
}

/// Converts `sum c_l T_l` to the power basis.
pub fn chebyshev_t_to_power<S: Scalar>(c: &[S]) -> Vec<S> {
    recurrence_to_power(c, vec![S::one()], vec![S::zero(), S::one()])
}

/// Converts `sum c_l U_l` (with `U_0 = 0`, `U_1 = 1`) to the power basis.
pub fn chebyshev_u_to_power<S: Scalar>(c: &[S]) -> Vec<S> {
    recurrence_to_power(c, Vec::new(), vec![S::one()])
}

fn recurrence_to_power<S: Scalar>(c: &[S], first: Vec<S>, second: Vec<S>) -> Vec<S> {
    let mut out = vec![S::zero(); c.len().max(1)];
    let (mut prev, mut cur) = (first, second);
    let two_x = [S::zero(), S::from_i64(2)];
    for (l, cl) in c.iter().enumerate() {
        let basis = match l {
            0 => prev.clone(),
            1 => cur.clone(),
            _ => {
                let next = sub(&mul(&two_x, &cur), &prev);
                prev = std::mem::replace(&mut cur, next);
                cur.clone()
            }
        };
        for (i, b) in basis.iter().enumerate() {
            if i >= out.len() {
                out.resize(i + 1, S::zero());
            }
            out[i] = out[i].clone() + cl.clone() * b.clone();
        }
    }
    out
}

/// Number of distinct real roots in the closed interval `[lo, hi]` by Sturm's
/// theorem. Exact scalars only give a rigorous count.
pub fn sturm_count<S: Scalar>(p: &[S], lo: &S, hi: &S) -> Result<usize> {
    let p = trimmed(p);
    if p.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut chain = vec![p.clone(), trimmed(&derivative(&p))];
    while !chain.last().map(|c| c.is_empty()).unwrap_or(true) {
        let n = chain.len();
        let (_, r) = divrem(&chain[n - 2], &chain[n - 1])?;
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain.retain(|c| !c.is_empty());
    let changes = |x: &S| {
        let signs: Vec<i8> = chain
            .iter()
            .map(|c| horner(c, x))
            .filter(|v| !v.is_negligible(1.0))
            .map(|v| v.sign())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let interior = changes(lo).saturating_sub(changes(hi));
    let at_lo = usize::from(horner(&p, lo).is_negligible(1.0));
    Ok(interior + at_lo)
}

pub fn horner<S: Scalar>(p: &[S], x: &S) -> S {
    p.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}
