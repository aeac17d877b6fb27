//! Simple semihomogeneous bundles in their pushforward presentation
//! `E = f_*(L)` for an isogeny `f: Y → X` and a line bundle class `L` on `Y`.
//! Every invariant is read off the determinant line bundle `Q = det E`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_serde;
use crate::line_bundle::{HomogeneousClass, LineBundleClass, LineBundleReport};
use crate::linalg::{AlternatingForm, IntMatrix, RatMatrix};
use crate::torus::Isogeny;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemihomBundle {
    isogeny: Isogeny,
    class: LineBundleClass,
}

/// Stability is not decided by an algorithm; it is a theorem about every
/// simple semihomogeneous bundle, recorded here with its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub provenance: Vec<String>,
}

pub const STABLE_SEMIHOMOGENEOUS: &str =
    "Mukai: simple semihomogeneous vector bundles are Gieseker stable for every polarization";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemihomReport {
    #[serde(with = "exact_serde::bigint")]
    pub rank: BigInt,
    #[serde(with = "exact_serde::int_matrix")]
    pub determinant_form: IntMatrix,
    pub determinant_xi: HomogeneousClass,
    pub determinant: LineBundleReport,
    #[serde(with = "exact_serde::bigint")]
    pub chi: BigInt,
    pub index: usize,
    pub nondegenerate: bool,
    pub nef: bool,
    pub ample: bool,
    pub satisfies_it: bool,
    pub stable: bool,
    pub stability: StabilityVerdict,
}

/// `d · A⁻ᵀ · E · A⁻¹` with `d = |det A|`: the form whose pullback along `A`
/// is `d · E`.
pub fn transfer_form(a: &IntMatrix, form: &RatMatrix) -> Result<IntMatrix> {
    let inv = a
        .to_rational()
        .inverse()
        .ok_or(Error::NotIsogeny)?;
    let d = BigRational::from_integer(num_traits::Signed::abs(&a.det()));
    let pushed = inv.congruence(form).scale(&d);
    pushed.to_integer().ok_or(Error::NonIntegralDeterminant)
}

impl SemihomBundle {
    pub fn new(isogeny: Isogeny, class: LineBundleClass) -> Result<Self> {
        if class.torus() != isogeny.source() {
            return Err(Error::DomainMismatch("line bundle does not live on the isogeny source".into()));
        }
        Ok(SemihomBundle { isogeny, class })
    }

    /// A line bundle viewed as a rank-one bundle.
    pub fn line_bundle(class: LineBundleClass) -> Self {
        let isogeny = Isogeny::identity(class.torus());
        SemihomBundle { isogeny, class }
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    pub fn class(&self) -> &LineBundleClass {
        &self.class
    }

    pub fn dim(&self) -> usize {
        self.class.dim()
    }

    pub fn rank(&self) -> BigInt {
        self.isogeny.degree().clone()
    }

    /// `E ⊗ ξ = f_*(L ⊗ f*ξ)` for `ξ` on the base.
    pub fn twist(&self, xi: &HomogeneousClass) -> Result<SemihomBundle> {
        let class = self.class.twist(&xi.pullback(self.isogeny.matrix()))?;
        SemihomBundle::new(self.isogeny.clone(), class)
    }

    /// `Q` with `f*(Q) ≡ L^d` numerically. The torsion part is transported
    /// as `d · A⁻ᵀ ξ_L`, which is well defined modulo `Z` because `d·A⁻¹` is
    /// integral.
    pub fn determinant_class(&self) -> Result<LineBundleClass> {
        let a = self.isogeny.matrix();
        let e_q = transfer_form(a, &self.class.form().matrix().to_rational())?;
        let form = AlternatingForm::new(e_q)
            .map_err(|e| Error::Internal(format!("determinant form: {e}")))?;
        let d = BigRational::from_integer(self.rank());
        let xi = self
            .isogeny
            .inverse_rational()
            .transpose()
            .scale(&d)
            .mul_vec(self.class.xi().entries());
        let q = LineBundleClass::new(self.isogeny.target().clone(), form, HomogeneousClass::new(xi))
            .map_err(|e| Error::Internal(format!("determinant class: {e}")))?;
        let pulled_back = a.congruence(q.form().matrix());
        if pulled_back != self.class.form().matrix().scale(&self.rank()) {
            return Err(Error::Internal("f*(Q) is not numerically L^d".into()));
        }
        Ok(q)
    }

    /// `χ(E) = χ(L)`; also checked against `χ(Q) / r^{g-1}`.
    pub fn euler_characteristic(&self) -> Result<BigInt> {
        let chi = self.class.euler_characteristic();
        let q = self.determinant_class()?;
        check_determinant_formula(&chi, &q.euler_characteristic(), &self.rank(), self.dim())?;
        Ok(chi)
    }

    pub fn index(&self) -> Result<usize> {
        Ok(self.determinant_class()?.index())
    }

    /// Nondegenerate bundles satisfy IT; the rest only WIT.
    pub fn is_it(&self) -> Result<bool> {
        Ok(self.determinant_class()?.is_nondegenerate())
    }

    pub fn report(&self) -> Result<SemihomReport> {
        let q = self.determinant_class()?;
        let rank = self.rank();
        let chi = self.class.euler_characteristic();
        check_determinant_formula(&chi, &q.euler_characteristic(), &rank, self.dim())?;
        if self.class.index() != q.index() {
            return Err(Error::Internal("index of L differs from index of det".into()));
        }
        let det_report = q.report()?;
        Ok(SemihomReport {
            rank,
            determinant_form: q.form().matrix().clone(),
            determinant_xi: q.xi().clone(),
            chi,
            index: det_report.index,
            nondegenerate: det_report.nondegenerate,
            nef: det_report.nef,
            ample: det_report.ample,
            satisfies_it: det_report.nondegenerate,
            stable: true,
            stability: StabilityVerdict {
                stable: true,
                provenance: vec![STABLE_SEMIHOMOGENEOUS.to_string()],
            },
            determinant: det_report,
        })
    }
}

/// `χ(E) · r^{g-1} = χ(Q)`, exactly.
fn check_determinant_formula(chi: &BigInt, chi_q: &BigInt, rank: &BigInt, g: usize) -> Result<()> {
    let scale: BigInt = if g == 0 { BigInt::one() } else { rank.pow(g as u32 - 1) };
    if (chi * &scale) != *chi_q {
        return Err(Error::Internal(format!(
            "χ(E)·r^(g-1) = {} but χ(Q) = {}",
            chi * &scale,
            chi_q
        )));
    }
    if !chi_q.is_zero() && (chi_q % &scale) != BigInt::zero() {
        return Err(Error::Internal("χ(Q) is not divisible by r^(g-1)".into()));
    }
    Ok(())
}
