//! Cross-checks for the exact algorithms. Each oracle reaches the same
//! number by a different route (cofactor expansion, floating eigenvalues,
//! Künneth products) and reads matrices only entrywise.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line_bundle::LineBundleClass;
use crate::linalg::{AlternatingForm, Inertia, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub subject: String,
    pub main: String,
    pub oracle: String,
    pub agreement: bool,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloatInertia {
    Conclusive(Inertia),
    Inconclusive,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
const MAX_NAIVE_SIZE: usize = 8;

/// Signed Pfaffian by expansion along the first row. Exponential, so
/// capped at 8×8.
pub fn naive_pfaffian(form: &AlternatingForm) -> Result<BigInt> {
    let m = form.matrix();
    let n = m.rows();
    if n > MAX_NAIVE_SIZE {
        return Err(Error::TooLarge(format!("naive Pfaffian of a {n}x{n} form")));
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(expand(&|i, j| m[(i, j)].clone(), &idx))
}

fn expand(a: &dyn Fn(usize, usize) -> BigInt, idx: &[usize]) -> BigInt {
    if idx.is_empty() {
        return BigInt::from(1);
    }
    let first = idx[0];
    let mut total = BigInt::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let entry = a(first, j);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().filter(|&k| k != first && k != j).collect();
        let term = entry * expand(a, &rest);
        // pos is 1-based j - 1, and the sign is (-1)^(j) with 1-based j
        if pos % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Counts eigenvalues of `s` below `-tol`, within `[-tol, tol]` and above
/// `tol`. Gives up when an eigenvalue sits within a factor of ten of `tol`,
/// or when the entries span more orders of magnitude than `tol` can
/// resolve.
pub fn float_inertia(s: &RatMatrix, tol: f64) -> FloatInertia {
    let n = s.rows();
    let values: Vec<f64> = s.entries().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return FloatInertia::Inconclusive;
    }
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if values.iter().any(|&v| v != 0.0 && v.abs() < 10.0 * tol * scale) {
        return FloatInertia::Inconclusive;
    }
    if n == 0 {
        return FloatInertia::Conclusive(Inertia { n_plus: 0, n_zero: 0, n_minus: 0 });
    }
    let eigen = DMatrix::from_row_slice(n, n, &values).symmetric_eigen();
    let mut out = Inertia { n_plus: 0, n_zero: 0, n_minus: 0 };
    for &lambda in eigen.eigenvalues.iter() {
        let mag = lambda.abs();
        if mag > tol / 10.0 && mag <= 10.0 * tol {
            return FloatInertia::Inconclusive;
        }
        if lambda > tol {
            out.n_plus += 1;
        } else if lambda < -tol {
            out.n_minus += 1;
        } else {
            out.n_zero += 1;
        }
    }
    FloatInertia::Conclusive(out)
}

/// h-vector of a class on a product of elliptic curves that splits along
/// the factors, as the convolution of the factor h-vectors.
pub fn kunneth_h_vector(l: &LineBundleClass) -> Result<Vec<BigInt>> {
    let j = l.torus().complex_structure();
    let e = l.form().matrix();
    let n = e.rows();
    let outside_blocks = |i: usize, k: usize| i / 2 != k / 2;
    for i in 0..n {
        for k in 0..n {
            if outside_blocks(i, k) && (!j[(i, k)].is_zero() || !e[(i, k)].is_zero()) {
                return Err(Error::NotDecomposable);
            }
        }
    }
    let mut h = vec![BigInt::from(1)];
    for f in 0..n / 2 {
        let (a, b) = (2 * f, 2 * f + 1);
        let degree = e[(b, a)].clone();
        let factor = if degree.is_zero() {
            let trivial = l.xi().entries()[a].is_zero() && l.xi().entries()[b].is_zero();
            if trivial {
                vec![BigInt::from(1), BigInt::from(1)]
            } else {
                vec![BigInt::zero(), BigInt::zero()]
            }
        } else {
            // E(J e_a, e_a) > 0 exactly when the factor is ample
            let positivity = &j[(b, a)] * num_rational::BigRational::from_integer(e[(b, a)].clone());
            if positivity.is_positive() {
                vec![degree.abs(), BigInt::zero()]
            } else {
                vec![BigInt::zero(), degree.abs()]
            }
        };
        h = convolve(&h, &factor);
    }
    Ok(h)
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

pub fn check_pfaffian(subject: &str, l: &LineBundleClass) -> Result<OracleReport> {
    let main = l.pfaffian_magnitude().clone();
    let oracle = naive_pfaffian(l.form())?;
    Ok(OracleReport {
        subject: subject.to_string(),
        main: main.to_string(),
        oracle: oracle.to_string(),
        agreement: main == oracle.abs(),
        note: "|naive Pfaffian| = Pfaffian magnitude".into(),
    })
}

pub fn check_inertia(subject: &str, l: &LineBundleClass, tol: f64) -> OracleReport {
    let main = l.inertia();
    let show = |i: &Inertia| format!("({},{},{})", i.n_plus, i.n_zero, i.n_minus);
    match float_inertia(l.realified_form(), tol) {
        FloatInertia::Conclusive(f) => OracleReport {
            subject: subject.to_string(),
            main: show(&main),
            oracle: show(&f),
            agreement: f == main,
            note: format!("float eigenvalues, tol {tol:e}"),
        },
        FloatInertia::Inconclusive => OracleReport {
            subject: subject.to_string(),
            main: show(&main),
            oracle: "inconclusive".into(),
            agreement: true,
            note: format!("float eigenvalues inconclusive at tol {tol:e}; exact result stands"),
        },
    }
}

pub fn check_h_vector(subject: &str, l: &LineBundleClass) -> Result<OracleReport> {
    let main = l.h_vector()?;
    let oracle = kunneth_h_vector(l)?;
    let show = |v: &[BigInt]| format!("{v:?}");
    Ok(OracleReport {
        subject: subject.to_string(),
        main: show(&main),
        oracle: show(&oracle),
        agreement: main == oracle,
        note: "Kunneth convolution of factor h-vectors".into(),
    })
}
