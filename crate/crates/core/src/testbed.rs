//! Seeded generators of desk-scale instances on products of the Gaussian
//! curve `C/Z[i]` and on tori isogenous to them.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line_bundle::{HomogeneousClass, LineBundleClass};
use crate::linalg::{unimodular_inverse, AlternatingForm, IntMatrix};
use crate::semihom::SemihomBundle;
use crate::torus::{cm_product, quotient_by_subtorus, ComplexTorus, GaussianInt, Isogeny};

/// How a class was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    Hermitian,
    LowRank,
    BaseChanged,
    Pullback,
    Product,
}

impl ClassKind {
    pub const ALL: [ClassKind; 5] =
        [ClassKind::Hermitian, ClassKind::LowRank, ClassKind::BaseChanged, ClassKind::Pullback, ClassKind::Product];
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianInt {
    Complex::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, g: usize, bound: i64) -> Vec<GaussianInt> {
    (0..g).map(|_| gaussian(rng, bound)).collect()
}

/// Any integral Hermitian matrix with entries bounded by `bound`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, g: usize, bound: i64) -> Vec<Vec<GaussianInt>> {
    let mut h = vec![vec![Complex::new(0, 0); g]; g];
    for j in 0..g {
        h[j][j] = Complex::new(rng.gen_range(-bound..=bound), 0);
        for k in j + 1..g {
            let z = gaussian(rng, bound);
            h[j][k] = z;
            h[k][j] = z.conj();
        }
    }
    h
}

/// `Σ ±v v*` over `rank` random vectors, so the rank is at most `rank`.
pub fn random_low_rank_hermitian<R: Rng + ?Sized>(
    rng: &mut R,
    g: usize,
    rank: usize,
    bound: i64,
) -> Vec<Vec<GaussianInt>> {
    let mut h = vec![vec![Complex::new(0, 0); g]; g];
    for _ in 0..rank {
        let v = gaussian_vector(rng, g, bound);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        for j in 0..g {
            for k in 0..g {
                h[j][k] += v[j] * v[k].conj() * sign;
            }
        }
    }
    h
}

/// `sign · (1 + Σ v v*)`: positive definite for `sign = 1`, negative
/// definite for `sign = -1`.
pub fn random_definite_hermitian<R: Rng + ?Sized>(
    rng: &mut R,
    g: usize,
    sign: i64,
    bound: i64,
) -> Vec<Vec<GaussianInt>> {
    let mut pd = vec![vec![Complex::new(0, 0); g]; g];
    for (j, row) in pd.iter_mut().enumerate() {
        row[j] = Complex::new(1, 0);
    }
    for _ in 0..g {
        let v = gaussian_vector(rng, g, bound);
        for j in 0..g {
            for k in 0..g {
                pd[j][k] += v[j] * v[k].conj();
            }
        }
    }
    pd.into_iter().map(|row| row.into_iter().map(|z| z * sign).collect()).collect()
}

/// A product of elementary integer row operations.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        m = IntMatrix::from_fn(n, n, |r, col| {
            if r == i {
                &m[(i, col)] + &c * &m[(j, col)]
            } else {
                m[(r, col)].clone()
            }
        });
        if rng.gen_bool(0.2) {
            m.swap_rows(i, j);
        }
    }
    m
}

/// The real matrix of a random `Z[i]`-linear automorphism of `Z[i]^g`;
/// it commutes with the standard complex structure.
pub fn random_gaussian_automorphism<R: Rng + ?Sized>(rng: &mut R, g: usize, steps: usize) -> IntMatrix {
    let mut m = vec![vec![Complex::new(0i64, 0); g]; g];
    for (j, row) in m.iter_mut().enumerate() {
        row[j] = Complex::new(1, 0);
    }
    for _ in 0..steps {
        if g < 2 {
            break;
        }
        let i = rng.gen_range(0..g);
        let mut j = rng.gen_range(0..g - 1);
        if j >= i {
            j += 1;
        }
        let c = gaussian(rng, 1);
        for col in 0..g {
            let add = c * m[j][col];
            m[i][col] += add;
        }
    }
    if g > 0 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..g);
        for z in m[i].iter_mut() {
            *z *= Complex::new(0, 1);
        }
    }
    IntMatrix::from_fn(2 * g, 2 * g, |r, c| {
        let z = m[r / 2][c / 2];
        let v = match (r % 2, c % 2) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        };
        BigInt::from(v)
    })
}

/// A torsion character whose entries have denominators up to `max_order`.
pub fn random_torsion<R: Rng + ?Sized>(rng: &mut R, len: usize, max_order: i64) -> HomogeneousClass {
    let order = rng.gen_range(1..=max_order);
    HomogeneousClass::new(
        (0..len)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(0..order)), BigInt::from(order)))
            .collect(),
    )
}

/// Transports a class along the lattice automorphism `u`, producing the
/// same variety with the complex structure `u⁻¹ J u`.
pub fn base_change(class: &LineBundleClass, u: &IntMatrix) -> Result<LineBundleClass> {
    let (_, f) = class.torus().sublattice(u)?;
    if !f.degree().is_one() {
        return Err(Error::Internal("base change by a non-unimodular matrix".into()));
    }
    class.pullback(f.as_hom())
}

/// `π*(M) ⊗ ξ` with `π` the quotient of `E^g` by a `k`-dimensional subtorus
/// in general position and `M` ample on the quotient.
pub fn pullback_of_ample<R: Rng + ?Sized>(rng: &mut R, g: usize, k: usize) -> Result<LineBundleClass> {
    let x = ComplexTorus::gaussian_power(g);
    let a = random_gaussian_automorphism(rng, g, 2 * g);
    let a_inv = unimodular_inverse(&a).ok_or_else(|| Error::Internal("automorphism is not unimodular".into()))?;
    let n = 2 * g;
    let basis = &a * &IntMatrix::identity(n).submatrix(0, n, 2 * (g - k), n);
    let quotient = quotient_by_subtorus(&x, &basis)?;

    let mut h = vec![vec![Complex::new(0i64, 0); g]; g];
    let ample = random_definite_hermitian(rng, g - k, 1, 1);
    for (j, row) in ample.iter().enumerate() {
        h[j][..g - k].copy_from_slice(row);
    }
    let (_, form) = cm_product(&h)?;
    let moved = a_inv.congruence(form.matrix());
    let m = LineBundleClass::from_form(
        quotient.torus().clone(),
        AlternatingForm::new(quotient.lift().congruence(&moved))?,
    )?;
    if !m.is_ample() {
        return Err(Error::Internal("descended form is not ample".into()));
    }
    let xi = random_torsion(rng, n, 6);
    m.pullback(quotient.projection())?.twist(&xi)
}

/// Factorwise classes `⊠ L_i` on `E^g` with per-factor twists.
pub fn product_class<R: Rng + ?Sized>(rng: &mut R, g: usize, bound: i64) -> Result<LineBundleClass> {
    let degrees: Vec<i64> = (0..g).map(|_| rng.gen_range(-bound..=bound)).collect();
    let mut xi = Vec::with_capacity(2 * g);
    for _ in 0..g {
        if rng.gen_bool(0.5) {
            xi.extend([BigRational::zero(), BigRational::zero()]);
        } else {
            xi.extend(random_torsion(rng, 2, 4).entries().iter().cloned());
        }
    }
    LineBundleClass::new(
        ComplexTorus::gaussian_power(g),
        AlternatingForm::standard(&degrees),
        HomogeneousClass::new(xi),
    )
}

pub fn random_class_of_kind<R: Rng + ?Sized>(rng: &mut R, kind: ClassKind, g: usize) -> Result<LineBundleClass> {
    let n = 2 * g;
    match kind {
        ClassKind::Hermitian => {
            LineBundleClass::from_hermitian(&random_hermitian(rng, g, 3))?.twist(&random_torsion(rng, n, 6))
        }
        ClassKind::LowRank => {
            let rank = rng.gen_range(0..g.max(1));
            LineBundleClass::from_hermitian(&random_low_rank_hermitian(rng, g, rank, 2))?
                .twist(&random_torsion(rng, n, 6))
        }
        ClassKind::BaseChanged => {
            let rank = rng.gen_range(0..=g);
            let l = LineBundleClass::from_hermitian(&random_low_rank_hermitian(rng, g, rank, 2))?;
            let u = random_unimodular(rng, n, n);
            base_change(&l, &u)?.twist(&random_torsion(rng, n, 4))
        }
        ClassKind::Pullback => {
            let k = rng.gen_range(0..=g);
            pullback_of_ample(rng, g, k)
        }
        ClassKind::Product => product_class(rng, g, 3),
    }
}

pub fn random_class<R: Rng + ?Sized>(rng: &mut R, g: usize) -> Result<(ClassKind, LineBundleClass)> {
    let kind = ClassKind::ALL[rng.gen_range(0..ClassKind::ALL.len())];
    Ok((kind, random_class_of_kind(rng, kind, g)?))
}

/// A full-rank integer matrix with `|det| ≤ max_degree`: an upper
/// triangular core between two unimodular factors.
pub fn random_isogeny_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u64) -> IntMatrix {
    let mut budget = max_degree.max(1);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut diag = vec![1u64; n];
    for &i in &order {
        let d = rng.gen_range(1..=budget.min(4));
        diag[i] = d;
        budget /= d;
    }
    let core = IntMatrix::from_fn(n, n, |r, c| {
        if r == c {
            BigInt::from(diag[r])
        } else if r < c && rng.gen_bool(0.3) {
            BigInt::from(rng.gen_range(-2i64..=2))
        } else {
            BigInt::zero()
        }
    });
    let left = random_unimodular(rng, n, n);
    let right = random_unimodular(rng, n, n);
    &(&left * &core) * &right
}

/// `f: Y → X` with `X = E^g` and `Y` the sublattice given by a random
/// matrix of degree at most `max_degree`.
pub fn random_isogeny<R: Rng + ?Sized>(rng: &mut R, g: usize, max_degree: u64) -> Result<Isogeny> {
    let x = ComplexTorus::gaussian_power(g);
    let a = random_isogeny_matrix(rng, 2 * g, max_degree);
    Ok(x.sublattice(&a)?.1)
}

/// `f_*(L)` with `L` the primitive part of the pullback of a random class
/// on the target, twisted by a random torsion character.
pub fn random_semihom<R: Rng + ?Sized>(rng: &mut R, g: usize, max_degree: u64) -> Result<SemihomBundle> {
    let f = random_isogeny(rng, g, max_degree)?;
    let on_x = LineBundleClass::from_hermitian(&random_hermitian(rng, g, 2))?;
    let pulled = on_x.pullback(f.as_hom())?;
    let content = pulled.form().matrix().content();
    let form = if content.is_zero() || content.is_one() {
        pulled.form().clone()
    } else {
        let m = pulled.form().matrix().map(|x| x.div_floor(&content));
        AlternatingForm::new(m)?
    };
    let n = 2 * g;
    let class = LineBundleClass::new(f.source().clone(), form, random_torsion(rng, n, 4))?;
    SemihomBundle::new(f, class)
}
