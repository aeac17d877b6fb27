//! Verdicts for the transforms `G_n = R^g p₁*(p₂*(L^{-n}) ⊗ E)` of very
//! negative line bundles on a fine moduli space `Y` of simple
//! semihomogeneous bundles on `X`.
//!
//! The moduli space itself is never built. Everything is computed from the
//! determinant `Q` of any fiber `E|_{X×{y}}`: `G_n` is nondegenerate of
//! index `i(Q) - dim K(Q)`, hence ample exactly when the fibers are nef.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line_bundle::{HomogeneousClass, LineBundleClass};
use crate::semihom::{SemihomBundle, StabilityVerdict, STABLE_SEMIHOMOGENEOUS};
use crate::torus::ComplexTorus;

pub const GN_SEMIHOMOGENEOUS: &str =
    "G_n is the transform of an IT line bundle under a Fourier-Mukai equivalence, hence simple semihomogeneous";
pub const GN_INDEX: &str = "i(G_n) = i(Q) - dim K(Q), Q the determinant of a fiber";
pub const GN_AMPLE: &str = "G_n ample <=> i(G_n) = 0 <=> i(Q) = dim K(Q) <=> fibers nef";
pub const GN_THRESHOLD: &str = "valid for n >= n0; no effective n0 is known";

/// A fine moduli space, represented by one of its fibers. `n` is the
/// tensor power in `L^{-n}`; no output depends on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliSetup {
    pub fiber: SemihomBundle,
    pub n: u32,
}

impl ModuliSetup {
    pub fn new(fiber: SemihomBundle) -> Self {
        ModuliSetup { fiber, n: 1 }
    }

    pub fn dim(&self) -> usize {
        self.fiber.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnReport {
    pub g: usize,
    pub n: u32,
    pub it_index_of_ln: usize,
    pub determinant_index: usize,
    pub determinant_k_dim: usize,
    pub gn_index: usize,
    pub gn_ample: bool,
    pub fibers_nef: bool,
    pub gn_simple_semihom_stable: bool,
    pub stability: StabilityVerdict,
    pub citations: Vec<String>,
    pub threshold: String,
}

/// The `E`-index of `L^{-n}` for `n ≫ 0`: the dimension of `Y`, which
/// equals `g`.
pub fn ln_it_index(g: usize) -> usize {
    g
}

pub fn gn_report(setup: &ModuliSetup) -> Result<GnReport> {
    let g = setup.dim();
    let q = setup.fiber.determinant_class()?;
    let (i_q, k_q) = (q.index(), q.k_dim());
    if i_q < k_q || i_q > g {
        return Err(Error::Internal(format!("index {i_q} outside [{k_q}, {g}]")));
    }
    let gn_index = i_q - k_q;
    let fibers_nef = setup.fiber.report()?.nef;
    let gn_ample = fibers_nef;
    if (gn_index == 0) != gn_ample {
        return Err(Error::Internal(format!(
            "i(G_n) = {gn_index} but fibers_nef = {fibers_nef}"
        )));
    }
    let stability = stability_verdict(StabilitySubject::Transform);
    Ok(GnReport {
        g,
        n: setup.n,
        it_index_of_ln: ln_it_index(g),
        determinant_index: i_q,
        determinant_k_dim: k_q,
        gn_index,
        gn_ample,
        fibers_nef,
        gn_simple_semihom_stable: stability.stable,
        stability,
        citations: vec![GN_INDEX.to_string(), GN_AMPLE.to_string()],
        threshold: GN_THRESHOLD.to_string(),
    })
}

/// The dual torus with its Poincaré bundle: every fiber is the trivial
/// class `(E = 0, ξ = 0)`.
pub fn poincare_setup(x: &ComplexTorus) -> ModuliSetup {
    let trivial = LineBundleClass::homogeneous(x, HomogeneousClass::zero(x.rank()))
        .expect("the trivial class is compatible with every complex structure");
    ModuliSetup::new(SemihomBundle::line_bundle(trivial))
}

/// What "`fiber ⊗ ξ` looks like `fiber`" means for [`twisting_kernel_by`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelCriterion {
    /// Same determinant form and same determinant torsion character.
    DeterminantPresentation,
    /// Same determinant form only; every twist qualifies.
    NumericalClass,
}

const MAX_CANDIDATES: u64 = 1 << 22;

/// Torsion points `ξ` with `search_bound · ξ = 0` whose twist leaves the
/// determinant presentation of the fiber unchanged. This over-approximates
/// the kernel of `ξ ↦ E ⊗ ξ`, since only numerical data is compared.
pub fn twisting_kernel(fiber: &SemihomBundle, search_bound: u32) -> Result<Vec<HomogeneousClass>> {
    twisting_kernel_by(fiber, search_bound, KernelCriterion::DeterminantPresentation)
}

pub fn twisting_kernel_by(
    fiber: &SemihomBundle,
    search_bound: u32,
    criterion: KernelCriterion,
) -> Result<Vec<HomogeneousClass>> {
    if search_bound == 0 {
        return Err(Error::DimensionMismatch("search bound must be positive".into()));
    }
    let len = fiber.isogeny().target().rank();
    let total = (search_bound as u64).checked_pow(len as u32).filter(|&t| t <= MAX_CANDIDATES);
    let Some(total) = total else {
        return Err(Error::TooLarge(format!("{search_bound}^{len} candidate twists")));
    };
    let reference = fiber.determinant_class()?;
    let b = BigInt::from(search_bound);
    let mut found = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let xi: Vec<BigRational> = (0..len)
            .map(|_| {
                let digit = rest % search_bound as u64;
                rest /= search_bound as u64;
                BigRational::new(BigInt::from(digit), b.clone())
            })
            .collect();
        let xi = HomogeneousClass::new(xi);
        let q = fiber.twist(&xi)?.determinant_class()?;
        let same = match criterion {
            KernelCriterion::DeterminantPresentation => q == reference,
            KernelCriterion::NumericalClass => q.form() == reference.form(),
        };
        if same {
            found.push(xi);
        }
    }
    check_subgroup(&found)?;
    Ok(found)
}

fn check_subgroup(elements: &[HomogeneousClass]) -> Result<()> {
    let set: BTreeSet<Vec<BigRational>> = elements.iter().map(|x| x.entries().to_vec()).collect();
    if !elements.iter().any(HomogeneousClass::is_zero) {
        return Err(Error::Internal("twisting kernel misses 0".into()));
    }
    for a in elements {
        for b in elements {
            if !set.contains(a.add(b).entries()) {
                return Err(Error::Internal("twisting kernel is not closed under addition".into()));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub enum StabilitySubject<'a> {
    Bundle(&'a SemihomBundle),
    Transform,
}

/// Bookkeeping only: no stability algorithm is run.
pub fn stability_verdict(subject: StabilitySubject<'_>) -> StabilityVerdict {
    let provenance = match subject {
        StabilitySubject::Bundle(_) => vec![STABLE_SEMIHOMOGENEOUS.to_string()],
        StabilitySubject::Transform => vec![
            GN_SEMIHOMOGENEOUS.to_string(),
            STABLE_SEMIHOMOGENEOUS.to_string(),
        ],
    };
    StabilityVerdict { stable: true, provenance }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{AlternatingForm, IntMatrix};
    use crate::torus::{rat, GaussianInt};
    use num_complex::Complex;

    fn gi(re: i64, im: i64) -> GaussianInt {
        Complex::new(re, im)
    }

    #[test]
    fn ln_index_is_dimension() {
        assert_eq!(ln_it_index(1), 1);
        assert_eq!(ln_it_index(2), 2);
        assert_eq!(ln_it_index(3), 3);
    }

    #[test]
    fn poincare_prototype() {
        for g in 1..=4 {
            let r = gn_report(&poincare_setup(&ComplexTorus::gaussian_power(g))).unwrap();
            assert_eq!(
                (r.it_index_of_ln, r.gn_index, r.gn_ample, r.fibers_nef, r.gn_simple_semihom_stable),
                (g, 0, true, true, true)
            );
            assert_eq!((r.determinant_index, r.determinant_k_dim), (g, g));
        }
    }

    #[test]
    fn anti_ample_determinant() {
        let h = vec![vec![gi(2, 0), gi(1, 1)], vec![gi(1, -1), gi(3, 0)]];
        let l = LineBundleClass::from_hermitian(&h).unwrap().dual();
        let r = gn_report(&ModuliSetup::new(SemihomBundle::line_bundle(l))).unwrap();
        assert_eq!((r.gn_index, r.gn_ample, r.fibers_nef), (2, false, false));
    }

    #[test]
    fn nef_degenerate_determinant() {
        let l = LineBundleClass::from_hermitian(&[vec![gi(1, 0), gi(0, 0)], vec![gi(0, 0), gi(0, 0)]])
            .unwrap()
            .twist(&HomogeneousClass::new(vec![rat(0, 1), rat(1, 2), rat(1, 3), rat(0, 1)]))
            .unwrap();
        assert_eq!((l.index(), l.k_dim()), (1, 1));
        let r = gn_report(&ModuliSetup::new(SemihomBundle::line_bundle(l))).unwrap();
        assert_eq!((r.gn_index, r.gn_ample), (0, true));
    }

    #[test]
    fn twisting_kernel_examples() {
        let l = LineBundleClass::from_hermitian(&[vec![gi(1, 0)]]).unwrap();
        let k = twisting_kernel(&SemihomBundle::line_bundle(l), 1).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0].is_zero());

        let t = ComplexTorus::gaussian_power(2);
        let p = poincare_setup(&t).fiber;
        assert_eq!(twisting_kernel_by(&p, 3, KernelCriterion::NumericalClass).unwrap().len(), 81);
        // the determinant tracks the twist itself, so only 0 survives
        assert_eq!(twisting_kernel(&p, 3).unwrap().len(), 1);

        let e = ComplexTorus::gaussian_curve();
        let (y, f) = e.sublattice(&IntMatrix::from_rows(&[&[1, 0], &[0, 2]])).unwrap();
        let l = LineBundleClass::from_form(y, AlternatingForm::standard(&[1])).unwrap();
        let b = SemihomBundle::new(f, l).unwrap();
        let k = twisting_kernel(&b, 2).unwrap();
        // rank two: every 2-torsion twist fixes the determinant
        assert_eq!(k.len(), 4);
        assert!(k.iter().all(|x| x.order() == BigInt::from(1) || x.order() == BigInt::from(2)));
    }

    #[test]
    fn twist_does_not_change_verdict() {
        let h = vec![vec![gi(1, 0), gi(0, 1)], vec![gi(0, -1), gi(-2, 0)]];
        let b = SemihomBundle::line_bundle(LineBundleClass::from_hermitian(&h).unwrap());
        let base = gn_report(&ModuliSetup::new(b.clone())).unwrap();
        let xi = HomogeneousClass::new(vec![rat(1, 2), rat(0, 1), rat(2, 3), rat(1, 5)]);
        let twisted = gn_report(&ModuliSetup::new(b.twist(&xi).unwrap())).unwrap();
        assert_eq!(base, twisted);
    }

    #[test]
    fn verdicts_cite_stability() {
        let b = poincare_setup(&ComplexTorus::gaussian_curve()).fiber;
        let v = stability_verdict(StabilitySubject::Bundle(&b));
        assert!(v.stable);
        assert_eq!(v.provenance, vec![STABLE_SEMIHOMOGENEOUS.to_string()]);
        let v = stability_verdict(StabilitySubject::Transform);
        assert!(v.stable && v.provenance.len() == 2);
    }
}
