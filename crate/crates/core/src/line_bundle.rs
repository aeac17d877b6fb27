//! Line bundle classes: Euler characteristic, `K(L)`, cohomological index,
//! Kempf decomposition, positivity and the Fourier–Mukai (WIT) record.
//!
//! A class is a pair `(E, ξ)`: the Néron–Severi form `E = Im H` and a
//! torsion point `ξ` of the dual torus. The Hermitian form is recovered as
//! the symmetric matrix `S = Jᵀ E` (its real part), normalised so that the
//! principal class `H(z, w) = z·w̄` on `C/(Z + iZ)` has `S = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_serde;
use crate::linalg::{
    inertia, kernel_saturated, pfaffian_magnitude, smith_normal_form, AlternatingForm, Inertia,
    IntMatrix, RatMatrix,
};
use crate::torus::{cm_product, quotient_by_subtorus, ComplexTorus, GaussianInt, Homomorphism, Isogeny, Quotient};

/// A torsion point of the dual torus: a character `Λ → Q/Z`, stored as a
/// rational vector with entries in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomogeneousClass {
    #[serde(with = "exact_serde::rational_vec")]
    xi: Vec<BigRational>,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl HomogeneousClass {
    pub fn new(xi: Vec<BigRational>) -> Self {
        HomogeneousClass { xi: xi.iter().map(frac).collect() }
    }

    pub fn zero(len: usize) -> Self {
        HomogeneousClass { xi: vec![BigRational::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.xi
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "characters on lattices of different rank");
        HomogeneousClass::new(self.xi.iter().zip(&other.xi).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        HomogeneousClass::new(self.xi.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let n = BigRational::from_integer(n.clone());
        HomogeneousClass::new(self.xi.iter().map(|a| a * &n).collect())
    }

    /// `ξ ∘ A`, i.e. `Aᵀ ξ` in coordinates.
    pub fn pullback(&self, a: &IntMatrix) -> Self {
        HomogeneousClass::new(a.transpose().to_rational().mul_vec(&self.xi))
    }

    /// `ξ(v) ∈ Q/Z` before reduction.
    pub fn pair(&self, v: &[BigInt]) -> BigRational {
        self.xi
            .iter()
            .zip(v)
            .map(|(x, c)| x * BigRational::from_integer(c.clone()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Whether `ξ` is trivial on every column of `basis`.
    pub fn kills(&self, basis: &IntMatrix) -> bool {
        (0..basis.cols()).all(|c| self.pair(&basis.column(c)).is_integer())
    }

    /// Order in the dual torus.
    pub fn order(&self) -> BigInt {
        self.xi.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

#[derive(Clone, Debug)]
struct Cached {
    realified: RatMatrix,
    inertia: Inertia,
    rank: usize,
    pfaffian: BigInt,
    divisors: Vec<BigInt>,
}

/// A line bundle class `(E, ξ)` on a torus; `E` is of type (1,1).
#[derive(Clone, Debug)]
pub struct LineBundleClass {
    torus: ComplexTorus,
    form: AlternatingForm,
    xi: HomogeneousClass,
    cached: Cached,
}

impl PartialEq for LineBundleClass {
    fn eq(&self, other: &Self) -> bool {
        self.torus == other.torus && self.form == other.form && self.xi == other.xi
    }
}

impl Eq for LineBundleClass {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub nondegenerate: bool,
    pub nef: bool,
    pub ample: bool,
}

/// The three independent characterisations of nefness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefWitnesses {
    pub semidefinite: bool,
    pub index_equals_k: bool,
    pub kempf_factor_ample: bool,
}

impl NefWitnesses {
    pub fn agree(&self) -> bool {
        self.semidefinite == self.index_equals_k && self.index_equals_k == self.kempf_factor_ample
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleReport {
    #[serde(with = "exact_serde::bigint")]
    pub chi: BigInt,
    pub k_dim: usize,
    pub index: usize,
    pub nondegenerate: bool,
    pub nef: bool,
    pub ample: bool,
    /// Elementary divisors of `E`, each listed twice.
    #[serde(with = "exact_serde::bigint_vec")]
    pub divisors: Vec<BigInt>,
}

/// Index/support bookkeeping of the Fourier–Mukai transform of `L`: it is
/// the transform of the Kempf factor, pushed into the dual torus and
/// translated by `ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub wit_index: usize,
    pub support_dim: usize,
    #[serde(with = "exact_serde::bigint")]
    pub generic_rank: BigInt,
    pub support_translate: HomogeneousClass,
}

/// `L = π*(M) ⊗ ξ` with `π: X → X/Y`, `Y` the connected kernel of `E`,
/// and `M` nondegenerate on `X/Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempfDecomposition {
    pub quotient: Quotient,
    pub factor: LineBundleClass,
    pub xi: HomogeneousClass,
}

impl KempfDecomposition {
    /// `π*(M) ⊗ ξ`.
    pub fn reassemble(&self) -> Result<LineBundleClass> {
        self.factor.pullback(self.quotient.projection())?.twist(&self.xi)
    }

    pub fn kernel_dim(&self) -> usize {
        self.quotient.kernel_dim()
    }
}

impl LineBundleClass {
    pub fn new(torus: ComplexTorus, form: AlternatingForm, xi: HomogeneousClass) -> Result<Self> {
        if form.matrix().rows() != torus.rank() || xi.len() != torus.rank() {
            return Err(Error::DimensionMismatch(format!(
                "class data of size {}/{} on a rank {} torus",
                form.matrix().rows(),
                xi.len(),
                torus.rank()
            )));
        }
        let realified = &torus.complex_structure().transpose() * &form.matrix().to_rational();
        let inertia = inertia(&realified).map_err(|_| Error::IncompatibleClass)?;
        if inertia.n_minus % 2 != 0 || inertia.n_plus % 2 != 0 {
            return Err(Error::Internal(format!("odd inertia {inertia:?} of a Hermitian form")));
        }
        let snf = smith_normal_form(form.matrix());
        let divisors = snf.invariant_factors();
        let rank = divisors.len();
        let pfaffian = pfaffian_magnitude(&form);
        Ok(LineBundleClass {
            torus,
            form,
            xi,
            cached: Cached { realified, inertia, rank, pfaffian, divisors },
        })
    }

    pub fn from_form(torus: ComplexTorus, form: AlternatingForm) -> Result<Self> {
        let n = torus.rank();
        Self::new(torus, form, HomogeneousClass::zero(n))
    }

    /// The class `Im H` on the Gaussian product `E^g`, with trivial twist.
    pub fn from_hermitian(h: &[Vec<GaussianInt>]) -> Result<Self> {
        let (torus, form) = cm_product(h)?;
        Self::from_form(torus, form)
    }

    /// The class of `O_X ⊗ ξ`.
    pub fn homogeneous(torus: &ComplexTorus, xi: HomogeneousClass) -> Result<Self> {
        Self::new(torus.clone(), AlternatingForm::zero(torus.dim()), xi)
    }

    pub fn torus(&self) -> &ComplexTorus {
        &self.torus
    }

    pub fn form(&self) -> &AlternatingForm {
        &self.form
    }

    pub fn xi(&self) -> &HomogeneousClass {
        &self.xi
    }

    pub fn dim(&self) -> usize {
        self.torus.dim()
    }

    /// `S = Jᵀ E`; symmetric because `E` is of type (1,1).
    pub fn realified_form(&self) -> &RatMatrix {
        &self.cached.realified
    }

    pub fn inertia(&self) -> Inertia {
        self.cached.inertia
    }

    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.cached.divisors
    }

    pub fn pfaffian_magnitude(&self) -> &BigInt {
        &self.cached.pfaffian
    }

    /// Dimension of the connected component of `K(L)`.
    pub fn k_dim(&self) -> usize {
        self.dim() - self.cached.rank / 2
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.k_dim() == 0
    }

    /// `dim K(L) + (negative eigenvalues of H)`.
    pub fn index(&self) -> usize {
        self.k_dim() + self.cached.inertia.n_minus / 2
    }

    /// `(-1)^{i(L)} |Pf E|` for nondegenerate classes, zero otherwise.
    pub fn euler_characteristic(&self) -> BigInt {
        if !self.is_nondegenerate() {
            return BigInt::zero();
        }
        let flip = cfg!(feature = "mutate-chi-sign");
        if (self.index() % 2 == 1) != flip {
            -self.cached.pfaffian.clone()
        } else {
            self.cached.pfaffian.clone()
        }
    }

    pub fn is_ample(&self) -> bool {
        self.cached.inertia.n_plus == self.torus.rank()
    }

    pub fn is_nef(&self) -> bool {
        self.cached.inertia.n_minus == 0
    }

    pub fn nef_witnesses(&self) -> Result<NefWitnesses> {
        let kempf = self.kempf_decompose()?;
        Ok(NefWitnesses {
            semidefinite: self.cached.inertia.n_minus == 0,
            index_equals_k: self.index() == self.k_dim(),
            kempf_factor_ample: kempf.factor.is_ample(),
        })
    }

    /// Nondegeneracy, nefness and ampleness. Nefness is computed three
    /// ways and the answers must coincide.
    pub fn predicates(&self) -> Result<Predicates> {
        let w = self.nef_witnesses()?;
        if !w.agree() {
            return Err(Error::Internal(format!("nef characterisations disagree: {w:?}")));
        }
        let nondegenerate = !self.euler_characteristic().is_zero();
        let ample = self.is_ample();
        if nondegenerate != self.is_nondegenerate() || (ample && !w.semidefinite) {
            return Err(Error::Internal("predicate bookkeeping is inconsistent".into()));
        }
        Ok(Predicates { nondegenerate, nef: w.semidefinite, ample })
    }

    pub fn report(&self) -> Result<LineBundleReport> {
        let p = self.predicates()?;
        Ok(LineBundleReport {
            chi: self.euler_characteristic(),
            k_dim: self.k_dim(),
            index: self.index(),
            nondegenerate: p.nondegenerate,
            nef: p.nef,
            ample: p.ample,
            divisors: self.cached.divisors.clone(),
        })
    }

    pub fn kempf_decompose(&self) -> Result<KempfDecomposition> {
        let e = self.form.matrix();
        let kernel = kernel_saturated(e);
        let j_kernel = (self.torus.complex_structure() * &kernel.to_rational()).hstack(&kernel.to_rational())?;
        if j_kernel.rank() != kernel.cols() {
            return Err(Error::Internal("kernel of E is not a complex subspace".into()));
        }
        let quotient = quotient_by_subtorus(&self.torus, &kernel)?;
        let induced = quotient.lift().congruence(e);
        let form = AlternatingForm::new(induced)
            .map_err(|err| Error::Internal(format!("induced form: {err}")))?;
        let factor = LineBundleClass::from_form(quotient.torus().clone(), form)
            .map_err(|err| Error::Internal(format!("Kempf factor: {err}")))?;
        if !factor.is_nondegenerate() {
            return Err(Error::Internal("Kempf factor is degenerate".into()));
        }
        if quotient.projection().matrix().congruence(factor.form.matrix()) != *e {
            return Err(Error::Internal("Kempf factor does not pull back to E".into()));
        }
        Ok(KempfDecomposition { quotient, factor, xi: self.xi.clone() })
    }

    /// `f*(L)` for `L` on the target of `f`.
    pub fn pullback(&self, f: &Homomorphism) -> Result<LineBundleClass> {
        if *f.target() != self.torus {
            return Err(Error::DomainMismatch("class does not live on the target of the map".into()));
        }
        let form = self.form.transform(f.matrix());
        let xi = self.xi.pullback(f.matrix());
        let pulled = LineBundleClass::new(f.source().clone(), form, xi)?;
        debug_assert!(pulled.torus.is_compatible(&pulled.form));
        Ok(pulled)
    }

    pub fn dual(&self) -> LineBundleClass {
        LineBundleClass::new(self.torus.clone(), self.form.neg(), self.xi.neg())
            .expect("negating a compatible class keeps it compatible")
    }

    pub fn twist(&self, xi: &HomogeneousClass) -> Result<LineBundleClass> {
        if xi.len() != self.torus.rank() {
            return Err(Error::DimensionMismatch("twist of the wrong length".into()));
        }
        LineBundleClass::new(self.torus.clone(), self.form.clone(), self.xi.add(xi))
    }

    /// `L^n` for `n ≥ 1`.
    pub fn power(&self, n: i64) -> Result<LineBundleClass> {
        if n < 1 {
            return Err(Error::NonPositivePower(n));
        }
        let n = BigInt::from(n);
        LineBundleClass::new(self.torus.clone(), self.form.scale(&n), self.xi.scale(&n))
    }

    /// `h^i(L)` for `i = 0..=g`.
    ///
    /// A degenerate class has cohomology only when `ξ` is trivial on the
    /// kernel torus, in which case it is `H*(M) ⊗ Λ^*(C^k)`.
    pub fn h_vector(&self) -> Result<Vec<BigInt>> {
        let g = self.dim();
        let mut h = vec![BigInt::zero(); g + 1];
        if self.is_nondegenerate() {
            h[self.index()] = self.cached.pfaffian.clone();
            return Ok(h);
        }
        let kempf = self.kempf_decompose()?;
        if !self.xi.kills(kempf.quotient.kernel_basis()) {
            return Ok(h);
        }
        let k = kempf.kernel_dim();
        let shift = kempf.factor.index();
        let chi_m = kempf.factor.euler_characteristic().abs();
        for (j, slot) in h.iter_mut().enumerate().skip(shift).take(k + 1) {
            *slot = binomial(k, j - shift) * &chi_m;
        }
        Ok(h)
    }

    pub fn wit_record(&self) -> Result<TransformRecord> {
        let kempf = self.kempf_decompose()?;
        Ok(TransformRecord {
            wit_index: self.index(),
            support_dim: self.dim() - self.k_dim(),
            generic_rank: kempf.factor.euler_characteristic().abs(),
            support_translate: self.xi.clone(),
        })
    }

    /// `φ_L: X → X̂`, the form `E` read as a map into the dual lattice.
    pub fn polarization_isogeny(&self) -> Result<Isogeny> {
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateClass);
        }
        let dual = self.torus.dual().into_torus();
        Isogeny::new(self.torus.clone(), dual, self.form.matrix().clone())
            .map_err(|e| Error::Internal(format!("polarization map: {e}")))
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::rat;
    use num_complex::Complex;

    fn gi(re: i64, im: i64) -> GaussianInt {
        Complex::new(re, im)
    }

    fn principal() -> LineBundleClass {
        LineBundleClass::from_hermitian(&[vec![gi(1, 0)]]).unwrap()
    }

    /// `p₁*(principal)` on `E × E`.
    fn first_factor_pullback() -> LineBundleClass {
        LineBundleClass::from_hermitian(&[vec![gi(1, 0), gi(0, 0)], vec![gi(0, 0), gi(0, 0)]]).unwrap()
    }

    fn indefinite() -> LineBundleClass {
        LineBundleClass::from_hermitian(&[vec![gi(1, 0), gi(0, 0)], vec![gi(0, 0), gi(-1, 0)]]).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn realified_form_examples() {
        assert_eq!(*principal().realified_form(), RatMatrix::identity(2));
        let zero = LineBundleClass::homogeneous(&ComplexTorus::gaussian_power(2), HomogeneousClass::zero(4)).unwrap();
        assert!(zero.realified_form().is_zero());
        let l = indefinite();
        assert_eq!(*l.dual().realified_form(), -l.realified_form());
    }

    #[test]
    fn rejects_incompatible_forms() {
        let t = ComplexTorus::gaussian_power(2);
        let mixed = AlternatingForm::new(IntMatrix::from_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 0],
        ]))
        .unwrap();
        assert_eq!(LineBundleClass::from_form(t, mixed).unwrap_err(), Error::IncompatibleClass);
    }

    #[test]
    fn k_dim_examples() {
        assert_eq!(principal().k_dim(), 0);
        for g in 1..4 {
            let t = ComplexTorus::gaussian_power(g);
            assert_eq!(LineBundleClass::homogeneous(&t, HomogeneousClass::zero(2 * g)).unwrap().k_dim(), g);
        }
        assert_eq!(first_factor_pullback().k_dim(), 1);
    }

    #[test]
    fn index_examples() {
        assert_eq!(principal().index(), 0);
        let t = ComplexTorus::gaussian_power(3);
        assert_eq!(LineBundleClass::homogeneous(&t, HomogeneousClass::zero(6)).unwrap().index(), 3);
        let l = indefinite();
        assert_eq!(l.inertia(), Inertia { n_plus: 2, n_zero: 0, n_minus: 2 });
        assert_eq!(l.index(), 1);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(principal().euler_characteristic(), big(1));
        assert_eq!(principal().dual().euler_characteristic(), big(-1));
        assert_eq!(first_factor_pullback().euler_characteristic(), big(0));
        assert_eq!(indefinite().euler_characteristic(), big(-1));
    }

    #[test]
    fn predicate_examples() {
        let p = principal().predicates().unwrap();
        assert_eq!((p.nondegenerate, p.nef, p.ample), (true, true, true));
        let t = ComplexTorus::gaussian_power(2);
        let p = LineBundleClass::homogeneous(&t, HomogeneousClass::zero(4)).unwrap().predicates().unwrap();
        assert_eq!((p.nondegenerate, p.nef, p.ample), (false, true, false));
        let p = indefinite().predicates().unwrap();
        assert_eq!((p.nondegenerate, p.nef, p.ample), (true, false, false));
    }

    #[test]
    fn kempf_examples() {
        let l = first_factor_pullback();
        let k = l.kempf_decompose().unwrap();
        assert_eq!(k.kernel_dim(), 1);
        assert_eq!(*k.quotient.torus(), ComplexTorus::gaussian_curve());
        assert_eq!(k.factor, principal());
        assert_eq!(k.reassemble().unwrap(), l);

        let p = principal();
        let k = p.kempf_decompose().unwrap();
        assert_eq!(k.quotient.torus(), p.torus());
        assert_eq!(k.factor.form(), p.form());

        let t = ComplexTorus::gaussian_power(2);
        let xi = HomogeneousClass::new(vec![rat(1, 2), rat(0, 1), rat(1, 3), rat(0, 1)]);
        let o = LineBundleClass::homogeneous(&t, xi).unwrap();
        let k = o.kempf_decompose().unwrap();
        assert_eq!(k.quotient.torus().dim(), 0);
        assert_eq!(k.factor.euler_characteristic(), big(1));
        assert_eq!(k.reassemble().unwrap(), o);
    }

    #[test]
    fn pullback_examples() {
        let l = principal();
        let e = l.torus().clone();
        assert_eq!(l.pullback(&Homomorphism::identity(&e)).unwrap(), l);
        let two = Isogeny::multiplication(&e, 2).unwrap();
        let l2 = l.pullback(two.as_hom()).unwrap();
        assert_eq!(*l2.form(), l.form().scale(&big(4)));
        assert_eq!(l2.euler_characteristic(), big(4));
        let one_plus_i = Isogeny::new(e.clone(), e, IntMatrix::from_rows(&[&[1, -1], &[1, 1]])).unwrap();
        assert_eq!(l.pullback(one_plus_i.as_hom()).unwrap().euler_characteristic(), big(2));
        let other = Isogeny::multiplication(&ComplexTorus::gaussian_power(2), 2).unwrap();
        assert!(matches!(l.pullback(other.as_hom()), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn index_arithmetic_examples() {
        let p = principal();
        assert_eq!(p.dual().index(), 1);
        let xi = HomogeneousClass::new(vec![rat(1, 3), rat(2, 5)]);
        assert_eq!(p.twist(&xi).unwrap().index(), p.index());
        assert_eq!(p.power(0).unwrap_err(), Error::NonPositivePower(0));

        // degenerate, i = 1, k = 1
        let l = first_factor_pullback();
        assert_eq!((l.index(), l.k_dim()), (1, 1));
        assert_eq!(l.dual().index(), 2);
        assert_eq!(l.dual().index(), l.dim() + l.k_dim() - l.index());
    }

    #[test]
    fn h_vector_examples() {
        assert_eq!(principal().h_vector().unwrap(), vec![big(1), big(0)]);
        let l = first_factor_pullback();
        assert_eq!(l.h_vector().unwrap(), vec![big(1), big(1), big(0)]);
        let xi = HomogeneousClass::new(vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1)]);
        assert_eq!(l.twist(&xi).unwrap().h_vector().unwrap(), vec![big(0); 3]);
        // a twist pulled back from the first factor keeps the cohomology
        let xi = HomogeneousClass::new(vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(l.twist(&xi).unwrap().h_vector().unwrap(), vec![big(1), big(1), big(0)]);
        let t = ComplexTorus::gaussian_power(2);
        let o = LineBundleClass::homogeneous(&t, HomogeneousClass::zero(4)).unwrap();
        assert_eq!(o.h_vector().unwrap(), vec![big(1), big(2), big(1)]);
    }

    #[test]
    fn wit_record_examples() {
        let l = LineBundleClass::from_hermitian(&[vec![gi(2, 0), gi(1, 1)], vec![gi(1, -1), gi(3, 0)]]).unwrap();
        assert!(l.is_ample());
        let r = l.wit_record().unwrap();
        assert_eq!((r.wit_index, r.support_dim), (0, 2));
        assert_eq!(r.generic_rank, l.euler_characteristic().abs());
        assert!(r.support_translate.is_zero());

        let t = ComplexTorus::gaussian_power(3);
        let r = LineBundleClass::homogeneous(&t, HomogeneousClass::zero(6)).unwrap().wit_record().unwrap();
        assert_eq!((r.wit_index, r.support_dim, r.generic_rank.clone()), (3, 0, big(1)));

        let r = first_factor_pullback().wit_record().unwrap();
        assert_eq!((r.wit_index, r.support_dim, r.generic_rank), (1, 1, big(1)));
    }

    #[test]
    fn polarization_isogeny_examples() {
        assert_eq!(*principal().polarization_isogeny().unwrap().degree(), big(1));
        let l = LineBundleClass::from_hermitian(&[vec![gi(2, 0)]]).unwrap();
        assert_eq!(l.euler_characteristic(), big(2));
        assert_eq!(*l.polarization_isogeny().unwrap().degree(), big(4));
        assert_eq!(first_factor_pullback().polarization_isogeny().unwrap_err(), Error::DegenerateClass);
    }

    #[test]
    fn homogeneous_class_arithmetic() {
        let a = HomogeneousClass::new(vec![rat(3, 2), rat(-1, 3)]);
        assert_eq!(a.entries(), &[rat(1, 2), rat(2, 3)]);
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.order(), big(6));
        assert!(a.scale(&big(6)).is_zero());
        assert!(a.kills(&IntMatrix::from_rows(&[&[2], &[0]])));
        assert!(!a.kills(&IntMatrix::from_rows(&[&[1], &[0]])));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(3, 0), big(1));
        assert_eq!(binomial(2, 3), big(0));
    }
}
