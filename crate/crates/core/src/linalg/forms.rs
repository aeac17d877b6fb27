use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, RatMatrix};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// An integral alternating form on `Z^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingForm {
    matrix: IntMatrix,
}

impl AlternatingForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "alternating form needs an even square matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_alternating() {
            return Err(Error::NotAlternating);
        }
        Ok(AlternatingForm { matrix })
    }

    pub fn zero(half_dim: usize) -> Self {
        AlternatingForm { matrix: IntMatrix::zeros(2 * half_dim, 2 * half_dim) }
    }

    /// `[[0, -d], [d, 0]]` blocks along the diagonal.
    pub fn standard(divisors: &[i64]) -> Self {
        let blocks: Vec<_> = divisors
            .iter()
            .map(|&d| IntMatrix::from_rows(&[&[0, -d], &[d, 0]]))
            .collect();
        AlternatingForm { matrix: IntMatrix::block_diagonal(&blocks) }
    }

    pub fn half_dim(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `Uᵀ · M · U`; stays alternating for any square `U` of matching size.
    pub fn transform(&self, u: &IntMatrix) -> Self {
        AlternatingForm { matrix: u.congruence(&self.matrix) }
    }

    pub fn neg(&self) -> Self {
        AlternatingForm { matrix: -&self.matrix }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        AlternatingForm { matrix: self.matrix.scale(n) }
    }
}

/// `|Pf(M)| = √det(M)`, read off the Smith form. Zero iff degenerate.
pub fn pfaffian_magnitude(form: &AlternatingForm) -> BigInt {
    let snf = smith_normal_form(form.matrix());
    let factors = snf.invariant_factors();
    if factors.len() < form.matrix().rows() {
        return BigInt::zero();
    }
    let det: BigInt = factors.iter().product();
    let root = det.sqrt();
    assert_eq!(&root * &root, det, "determinant of an alternating form must be a square");
    root
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

/// Sylvester inertia of a rational symmetric matrix by symmetric Gaussian
/// elimination. A zero diagonal with a nonzero off-diagonal entry `a` is
/// eliminated as the 2×2 block `[[0, a], [a, 0]]`, which has one positive
/// and one negative eigenvalue.
pub fn inertia(s: &RatMatrix) -> Result<Inertia> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut a = s.clone();
    let mut active: Vec<usize> = (0..a.rows()).collect();
    let mut out = Inertia { n_plus: 0, n_zero: 0, n_minus: 0 };

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = active.remove(pos);
            let pivot = a[(p, p)].clone();
            if pivot.is_positive() {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            for &r in &active {
                if a[(r, p)].is_zero() {
                    continue;
                }
                let f = &a[(r, p)] / &pivot;
                for &c in &active {
                    let v = &a[(r, c)] - &(&f * &a[(p, c)]);
                    a[(r, c)] = v;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[(i, j)].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.n_zero += active.len();
            break;
        };
        active.retain(|&k| k != i && k != j);
        let off = a[(i, j)].clone();
        out.n_plus += 1;
        out.n_minus += 1;
        // Schur complement of the block [[0, off], [off, 0]]
        let updates: Vec<(usize, usize, BigRational)> = active
            .iter()
            .flat_map(|&r| active.iter().map(move |&c| (r, c)))
            .map(|(r, c)| {
                let corr = (&a[(r, i)] * &a[(c, j)] + &a[(r, j)] * &a[(c, i)]) / &off;
                (r, c, &a[(r, c)] - &corr)
            })
            .collect();
        for (r, c, v) in updates {
            a[(r, c)] = v;
        }
    }
    Ok(out)
}
