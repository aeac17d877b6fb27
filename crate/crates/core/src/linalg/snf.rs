//! Smith normal form and the lattice operations built on it: saturated
//! kernels, basis completion and Hermite reduction of bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{unimodular_inverse, IntMatrix};
use crate::error::{Error, Result};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | … | d_k`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for j in 0..m.cols() {
        let delta = factor * &m[(source, j)];
        m[(target, j)] -= delta;
    }
}

fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for i in 0..m.rows() {
        let delta = factor * &m[(i, source)];
        m[(i, target)] -= delta;
    }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_row_multiple(&mut d, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                add_col_multiple(&mut d, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived; promote it
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    add_row_multiple(&mut d, t, i, &minus_one);
                    add_row_multiple(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            for j in 0..cols {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..rows {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form of the row lattice of `m`: echelon rows
/// with positive pivots and reduced entries above each pivot. Zero rows
/// are dropped.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let Some(p) = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()))
            else {
                break;
            };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                add_row_multiple(&mut a, i, r, &q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            for j in 0..cols {
                a[(r, j)] = -a[(r, j)].clone();
            }
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            add_row_multiple(&mut a, i, r, &q);
        }
        r += 1;
    }
    a.submatrix(0, r, 0, cols)
}

/// Basis (as columns) of `ker(M) ∩ Zⁿ`, in Hermite-reduced form.
pub fn kernel_saturated(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let raw = snf.v.submatrix(0, n, r, n);
    hermite_rows(&raw.transpose()).transpose()
}

/// Extends a basis of a saturated sublattice (given as columns) to a
/// unimodular matrix whose leading columns are exactly `basis`.
pub fn complete_to_basis(basis: &IntMatrix) -> Result<IntMatrix> {
    let (n, k) = (basis.rows(), basis.cols());
    if k == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let snf = smith_normal_form(basis);
    let factors = snf.invariant_factors();
    if factors.len() < k {
        return Err(Error::DependentColumns);
    }
    if factors.iter().any(|f| !f.is_one()) {
        return Err(Error::NotSaturated);
    }
    let u_inv = unimodular_inverse(&snf.u)
        .ok_or_else(|| Error::Internal("Smith transform is not unimodular".into()))?;
    let completed = basis.hstack(&u_inv.submatrix(0, n, k, n))?;
    if !completed.det().abs().is_one() {
        return Err(Error::Internal("basis completion is not unimodular".into()));
    }
    Ok(completed)
}
