//! Complex tori as lattices with a rational complex structure, the maps
//! between them, duals and quotients by subtori.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{complete_to_basis, unimodular_inverse, AlternatingForm, IntMatrix, RatMatrix};

pub type GaussianInt = Complex<i64>;

/// `(Z^{2g}, J)` with `J² = -1` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexTorus {
    j: RatMatrix,
}

impl ComplexTorus {
    pub fn new(j: RatMatrix) -> Result<Self> {
        if !j.is_square() || j.rows() % 2 != 0 {
            return Err(Error::NotComplexStructure(format!(
                "J must be square of even size, got {}x{}",
                j.rows(),
                j.cols()
            )));
        }
        let minus_id = -&RatMatrix::identity(j.rows());
        if &j * &j != minus_id {
            return Err(Error::NotComplexStructure(format!("{j:?}")));
        }
        Ok(ComplexTorus { j })
    }

    /// The curve `C/(Z + iZ)` in the basis `(1, i)`.
    pub fn gaussian_curve() -> Self {
        ComplexTorus { j: RatMatrix::from_i64(2, 2, &[0, -1, 1, 0]).unwrap() }
    }

    /// `C^g / (Z + iZ)^g`, basis `(1, i)` in each coordinate.
    pub fn gaussian_power(g: usize) -> Self {
        let blocks = vec![Self::gaussian_curve().j; g];
        ComplexTorus { j: RatMatrix::block_diagonal(&blocks) }
    }

    pub fn point() -> Self {
        ComplexTorus { j: RatMatrix::zeros(0, 0) }
    }

    pub fn product(factors: &[ComplexTorus]) -> Self {
        let blocks: Vec<_> = factors.iter().map(|t| t.j.clone()).collect();
        ComplexTorus { j: RatMatrix::block_diagonal(&blocks) }
    }

    pub fn dim(&self) -> usize {
        self.j.rows() / 2
    }

    pub fn rank(&self) -> usize {
        self.j.rows()
    }

    pub fn complex_structure(&self) -> &RatMatrix {
        &self.j
    }

    /// The dual torus, with complex structure `-Jᵀ` on the dual lattice.
    pub fn dual(&self) -> DualTorus {
        DualTorus { torus: ComplexTorus { j: -&self.j.transpose() } }
    }

    /// `Jᵀ E J = E`, equivalently `Jᵀ E` symmetric.
    pub fn is_compatible(&self, form: &AlternatingForm) -> bool {
        if form.matrix().rows() != self.rank() {
            return false;
        }
        let e = form.matrix().to_rational();
        self.j.congruence(&e) == e
    }

    /// Torus with lattice `A·Z^{2g}` seen in its own basis, so that `A`
    /// becomes a homomorphism onto `self`. Returns `(source, map)`.
    pub fn sublattice(&self, a: &IntMatrix) -> Result<(ComplexTorus, Isogeny)> {
        if a.rows() != self.rank() || !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} lattice map on a rank {} torus",
                a.rows(),
                a.cols(),
                self.rank()
            )));
        }
        let inv = a.to_rational().inverse().ok_or(Error::NotIsogeny)?;
        let j = &(&inv * &self.j) * &a.to_rational();
        let source = ComplexTorus::new(j)?;
        let f = Isogeny::new(source.clone(), self.clone(), a.clone())?;
        Ok((source, f))
    }
}

/// A torus tagged as the dual of another.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualTorus {
    torus: ComplexTorus,
}

impl DualTorus {
    pub fn torus(&self) -> &ComplexTorus {
        &self.torus
    }

    pub fn into_torus(self) -> ComplexTorus {
        self.torus
    }

    /// The double dual, identified with the original torus.
    pub fn dual(&self) -> ComplexTorus {
        self.torus.dual().into_torus()
    }
}

/// A lattice map `A` with `A·J_source = J_target·A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: ComplexTorus,
    target: ComplexTorus,
    matrix: IntMatrix,
}

impl Homomorphism {
    pub fn new(source: ComplexTorus, target: ComplexTorus, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix between tori of rank {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let a = matrix.to_rational();
        if &a * &source.j != &target.j * &a {
            return Err(Error::NotHolomorphic);
        }
        Ok(Homomorphism { source, target, matrix })
    }

    pub fn identity(torus: &ComplexTorus) -> Self {
        Homomorphism {
            source: torus.clone(),
            target: torus.clone(),
            matrix: IntMatrix::identity(torus.rank()),
        }
    }

    pub fn source(&self) -> &ComplexTorus {
        &self.source
    }

    pub fn target(&self) -> &ComplexTorus {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.target != self.source {
            return Err(Error::DomainMismatch(
                "target of the inner map differs from the source of the outer map".into(),
            ));
        }
        Ok(Homomorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    /// Transpose map between the duals, `target^ → source^`.
    pub fn dual(&self) -> Homomorphism {
        let dual = Homomorphism {
            source: self.target.dual().into_torus(),
            target: self.source.dual().into_torus(),
            matrix: self.matrix.transpose(),
        };
        let a = dual.matrix.to_rational();
        assert!(
            &a * &dual.source.j == &dual.target.j * &a,
            "transpose of a holomorphic map must intertwine the dual structures"
        );
        dual
    }
}

/// A homomorphism between tori of equal dimension with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isogeny {
    hom: Homomorphism,
    degree: BigInt,
}

impl Isogeny {
    pub fn new(source: ComplexTorus, target: ComplexTorus, matrix: IntMatrix) -> Result<Self> {
        Self::from_hom(Homomorphism::new(source, target, matrix)?)
    }

    pub fn from_hom(hom: Homomorphism) -> Result<Self> {
        if !hom.matrix.is_square() {
            return Err(Error::DimensionMismatch("isogeny between tori of different dimension".into()));
        }
        let degree = hom.matrix.det().abs();
        if degree.is_zero() {
            return Err(Error::NotIsogeny);
        }
        Ok(Isogeny { hom, degree })
    }

    pub fn identity(torus: &ComplexTorus) -> Self {
        Isogeny { hom: Homomorphism::identity(torus), degree: BigInt::one() }
    }

    /// Multiplication by `n ≠ 0`.
    pub fn multiplication(torus: &ComplexTorus, n: i64) -> Result<Self> {
        let m = IntMatrix::identity(torus.rank()).scale(&BigInt::from(n));
        Isogeny::new(torus.clone(), torus.clone(), m)
    }

    pub fn as_hom(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn source(&self) -> &ComplexTorus {
        &self.hom.source
    }

    pub fn target(&self) -> &ComplexTorus {
        &self.hom.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.hom.matrix
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn compose(&self, inner: &Isogeny) -> Result<Isogeny> {
        let hom = self.hom.compose(&inner.hom)?;
        Ok(Isogeny { hom, degree: &self.degree * &inner.degree })
    }

    pub fn dual(&self) -> Isogeny {
        Isogeny { hom: self.hom.dual(), degree: self.degree.clone() }
    }

    pub fn inverse_rational(&self) -> RatMatrix {
        self.matrix()
            .to_rational()
            .inverse()
            .expect("isogeny matrix is invertible over Q")
    }
}

pub fn compose_isogenies(outer: &Isogeny, inner: &Isogeny) -> Result<Isogeny> {
    outer.compose(inner)
}

pub fn dual_isogeny(f: &Isogeny) -> Isogeny {
    f.dual()
}

pub fn dual_torus(x: &ComplexTorus) -> DualTorus {
    x.dual()
}

/// Quotient `X → X/Y` by a subtorus `Y` given by a saturated lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    projection: Homomorphism,
    kernel_basis: IntMatrix,
    lift: IntMatrix,
}

impl Quotient {
    pub fn torus(&self) -> &ComplexTorus {
        self.projection.target()
    }

    pub fn projection(&self) -> &Homomorphism {
        &self.projection
    }

    /// Columns span the sublattice of `Y`.
    pub fn kernel_basis(&self) -> &IntMatrix {
        &self.kernel_basis
    }

    /// Lifts of the quotient lattice basis; `projection · lift = 1`.
    pub fn lift(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.cols() / 2
    }
}

pub fn quotient_by_subtorus(x: &ComplexTorus, basis: &IntMatrix) -> Result<Quotient> {
    let n = x.rank();
    if basis.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis vectors of length {} in a rank {} lattice",
            basis.rows(),
            n
        )));
    }
    let k = basis.cols();
    let b = basis.to_rational();
    if b.rank() != k {
        return Err(Error::DependentColumns);
    }
    let jb = &x.j * &b;
    if b.hstack(&jb)?.rank() != k {
        return Err(Error::NotJStable);
    }
    let w = complete_to_basis(basis)?;
    let w_inv = unimodular_inverse(&w)
        .ok_or_else(|| Error::Internal("completed basis is not unimodular".into()))?;
    let p = w_inv.submatrix(k, n, 0, n);
    let lift = w.submatrix(0, n, k, n);
    let j_quot = &(&p.to_rational() * &x.j) * &lift.to_rational();
    let target = ComplexTorus::new(j_quot)
        .map_err(|e| Error::Internal(format!("induced complex structure: {e}")))?;
    let projection = Homomorphism::new(x.clone(), target, p)
        .map_err(|e| Error::Internal(format!("quotient projection: {e}")))?;
    Ok(Quotient { projection, kernel_basis: basis.clone(), lift })
}

/// The product `E^g` of the Gaussian curve with the integral alternating
/// form `Im H` of a Hermitian matrix `H` over `Z[i]`.
///
/// Coordinates are ordered `(1, i)` per factor, and the form pairs basis
/// vectors `u·e_j`, `v·e_k` to `Im(u · H_jk · conj(v))`.
pub fn cm_product(hermitian: &[Vec<GaussianInt>]) -> Result<(ComplexTorus, AlternatingForm)> {
    let g = hermitian.len();
    if hermitian.iter().any(|row| row.len() != g) {
        return Err(Error::DimensionMismatch("Hermitian matrix must be square".into()));
    }
    for j in 0..g {
        for k in 0..g {
            if hermitian[j][k] != hermitian[k][j].conj() {
                return Err(Error::NotHermitian);
            }
        }
    }
    let units = [Complex::new(1i64, 0), Complex::new(0, 1)];
    let e = IntMatrix::from_fn(2 * g, 2 * g, |r, c| {
        let (j, a) = (r / 2, r % 2);
        let (k, b) = (c / 2, c % 2);
        BigInt::from((units[a] * hermitian[j][k] * units[b].conj()).im)
    });
    let form = AlternatingForm::new(e)?;
    let torus = ComplexTorus::gaussian_power(g);
    debug_assert!(torus.is_compatible(&form));
    Ok((torus, form))
}

/// Convenience for rational literals in tests and testbeds.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianInt {
        Complex::new(re, im)
    }

    #[test]
    fn validates_complex_structure() {
        let e = ComplexTorus::new(RatMatrix::from_i64(2, 2, &[0, -1, 1, 0]).unwrap()).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(matches!(
            ComplexTorus::new(RatMatrix::identity(2)),
            Err(Error::NotComplexStructure(_))
        ));
        assert!(ComplexTorus::new(RatMatrix::identity(3)).is_err());
        let prod = ComplexTorus::new(RatMatrix::block_diagonal(&[
            e.complex_structure().clone(),
            e.complex_structure().clone(),
        ]))
        .unwrap();
        assert_eq!(prod.dim(), 2);
        // a non-integral structure: lattice Z + 2iZ
        let j = RatMatrix::new(2, 2, vec![rat(0, 1), rat(-1, 2), rat(2, 1), rat(0, 1)]).unwrap();
        assert!(ComplexTorus::new(j).is_ok());
    }

    #[test]
    fn dual_torus_examples() {
        let e = ComplexTorus::gaussian_curve();
        assert_eq!(e.dual().torus().complex_structure(), e.complex_structure());
        let x = ComplexTorus::gaussian_power(2);
        assert_eq!(
            x.dual().into_torus(),
            ComplexTorus::product(&[e.dual().into_torus(), e.dual().into_torus()])
        );
        let (y, _) = x.sublattice(&IntMatrix::from_rows(&[
            &[1, 0, 0, 0],
            &[0, 2, 0, 0],
            &[0, 0, 1, 1],
            &[0, 0, 0, 1],
        ]))
        .unwrap();
        assert_eq!(y.dual().dual(), y);
    }

    #[test]
    fn composition_and_degrees() {
        let e = ComplexTorus::gaussian_curve();
        let two = Isogeny::multiplication(&e, 2).unwrap();
        assert_eq!(two.compose(&Isogeny::identity(&e)).unwrap(), two);
        // 1 + i has degree 2, multiplication by 3 has degree 9
        let one_plus_i = Isogeny::new(e.clone(), e.clone(), IntMatrix::from_rows(&[&[1, -1], &[1, 1]])).unwrap();
        assert_eq!(*one_plus_i.degree(), BigInt::from(2));
        let three = Isogeny::multiplication(&e, 3).unwrap();
        assert_eq!(*three.compose(&one_plus_i).unwrap().degree(), BigInt::from(18));

        let (y, f) = e.sublattice(&IntMatrix::from_rows(&[&[1, 0], &[0, 3]])).unwrap();
        assert_eq!(*f.degree(), BigInt::from(3));
        let g2 = Isogeny::multiplication(&ComplexTorus::gaussian_power(2), 2).unwrap();
        assert!(matches!(f.compose(&g2), Err(Error::DomainMismatch(_))));
        assert!(matches!(compose_isogenies(&f, &f), Err(Error::DomainMismatch(_))));
        assert_eq!(f.compose(&Isogeny::identity(&y)).unwrap(), f);
    }

    #[test]
    fn rejects_non_holomorphic_maps() {
        let e = ComplexTorus::gaussian_curve();
        let err = Isogeny::new(e.clone(), e.clone(), IntMatrix::from_rows(&[&[1, 0], &[0, 2]]));
        assert_eq!(err, Err(Error::NotHolomorphic));
        let err = Isogeny::new(e.clone(), e, IntMatrix::zeros(2, 2));
        assert_eq!(err, Err(Error::NotIsogeny));
    }

    #[test]
    fn dual_isogeny_examples() {
        let x = ComplexTorus::gaussian_power(2);
        let n = Isogeny::multiplication(&x, 5).unwrap();
        assert_eq!(n.dual().matrix(), n.matrix());
        let e = ComplexTorus::gaussian_curve();
        let f = Isogeny::new(e.clone(), e, IntMatrix::from_rows(&[&[1, -1], &[1, 1]])).unwrap();
        assert_eq!(*f.dual().degree(), BigInt::from(2));
        assert_eq!(f.dual().matrix().det().abs(), BigInt::from(2));
        assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn quotient_examples() {
        let x = ComplexTorus::gaussian_power(2);
        let first = IntMatrix::from_rows(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let q = quotient_by_subtorus(&x, &first).unwrap();
        assert_eq!(*q.torus(), ComplexTorus::gaussian_curve());
        assert_eq!(
            *q.projection().matrix(),
            IntMatrix::from_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(q.torus().rank() + q.kernel_basis().cols(), x.rank());

        let q = quotient_by_subtorus(&x, &IntMatrix::identity(4)).unwrap();
        assert_eq!(q.torus().dim(), 0);

        // the plane spanned by (1,0,0,0) and (0,0,1,0) is not a complex line
        let plane = IntMatrix::from_rows(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]);
        assert_eq!(quotient_by_subtorus(&x, &plane), Err(Error::NotJStable));

        let doubled = IntMatrix::from_rows(&[&[2, 0], &[0, 2], &[0, 0], &[0, 0]]);
        assert_eq!(quotient_by_subtorus(&x, &doubled), Err(Error::NotSaturated));
    }

    #[test]
    fn cm_product_examples() {
        let (t, e) = cm_product(&[vec![gi(1, 0)]]).unwrap();
        assert_eq!(*e.matrix(), IntMatrix::from_rows(&[&[0, -1], &[1, 0]]));
        assert!(t.is_compatible(&e));

        let (_, e) = cm_product(&[vec![gi(0, 0), gi(0, 0)], vec![gi(0, 0), gi(0, 0)]]).unwrap();
        assert!(e.is_zero());

        let h = vec![vec![gi(2, 0), gi(1, -3)], vec![gi(1, 3), gi(-1, 0)]];
        let (t, e) = cm_product(&h).unwrap();
        assert!(t.is_compatible(&e));

        let bad = vec![vec![gi(1, 0), gi(1, 1)], vec![gi(1, 1), gi(1, 0)]];
        assert_eq!(cm_product(&bad), Err(Error::NotHermitian));
        assert_eq!(cm_product(&[vec![gi(0, 1)]]), Err(Error::NotHermitian));
    }

    #[test]
    fn compatibility_check() {
        let t = ComplexTorus::gaussian_power(2);
        let mixed = AlternatingForm::new(IntMatrix::from_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 0],
        ]))
        .unwrap();
        assert!(!t.is_compatible(&mixed));
    }
}
