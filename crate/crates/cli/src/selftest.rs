//! Seeded property and oracle sweep over random instances.
//!
//! Case `i` draws from the ChaCha stream `i` of the seed, so every case is
//! reproducible on its own and the sweep can run in parallel without
//! changing its output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use semihom_core::fourier_mukai::{gn_report, ModuliSetup};
use semihom_core::line_bundle::{HomogeneousClass, LineBundleClass};
use semihom_core::linalg::AlternatingForm;
use semihom_core::oracles::{check_h_vector, check_inertia, check_pfaffian, OracleReport};
use semihom_core::semihom::SemihomBundle;
use semihom_core::testbed::{product_class, random_class_of_kind, random_semihom, ClassKind};
use semihom_core::torus::rat;
use semihom_core::Error;

use crate::instance::InstanceFile;

pub const MAX_DEGREE: u64 = 16;

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub count: usize,
    pub max_g: usize,
    pub tol: f64,
    /// `tol` as given on the command line, echoed in the summary.
    pub tol_text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    Generation,
    IndexArithmetic,
    NefAgreement,
    KempfRoundTrip,
    HVectorSum,
    WitRecord,
    OraclePfaffian,
    OracleInertia,
    OracleKunneth,
    DeterminantFormula,
    GnVerdict,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::Generation,
        Property::IndexArithmetic,
        Property::NefAgreement,
        Property::KempfRoundTrip,
        Property::HVectorSum,
        Property::WitRecord,
        Property::OraclePfaffian,
        Property::OracleInertia,
        Property::OracleKunneth,
        Property::DeterminantFormula,
        Property::GnVerdict,
    ];

    const CLASS: [Property; 8] = [
        Property::IndexArithmetic,
        Property::NefAgreement,
        Property::KempfRoundTrip,
        Property::HVectorSum,
        Property::WitRecord,
        Property::OraclePfaffian,
        Property::OracleInertia,
        Property::OracleKunneth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Generation => "generation",
            Property::IndexArithmetic => "index_arithmetic",
            Property::NefAgreement => "nef_agreement",
            Property::KempfRoundTrip => "kempf_round_trip",
            Property::HVectorSum => "h_vector_sum",
            Property::WitRecord => "wit_record",
            Property::OraclePfaffian => "oracle_pfaffian",
            Property::OracleInertia => "oracle_inertia",
            Property::OracleKunneth => "oracle_kunneth",
            Property::DeterminantFormula => "determinant_formula",
            Property::GnVerdict => "gn_verdict",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Skip,
    Fail(String),
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(detail())
    }
}

fn fail(e: Error) -> Verdict {
    Verdict::Fail(e.to_string())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub property: String,
    pub case: usize,
    pub detail: String,
    pub instance: InstanceFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestSummary {
    pub seed: u64,
    pub count: usize,
    pub max_g: usize,
    pub tol: String,
    pub passed: bool,
    pub classes_checked: usize,
    pub bundles_checked: usize,
    pub inconclusive_float_cases: usize,
    pub properties: Vec<PropertyTally>,
    pub failures: usize,
    pub counterexample: Option<Failure>,
    pub oracle_reports: Vec<OracleReport>,
}

/// A fixed twist used by the index-arithmetic check.
fn probe_twist(len: usize) -> HomogeneousClass {
    HomogeneousClass::new((0..len).map(|i| rat((i % 3) as i64, 3 + (i % 2) as i64)).collect())
}

pub fn check_class(
    p: Property,
    subject: &str,
    l: &LineBundleClass,
    tol: f64,
    reports: &mut Vec<OracleReport>,
) -> Verdict {
    let g = l.dim();
    match p {
        Property::IndexArithmetic => {
            let (i, k) = (l.index(), l.k_dim());
            if l.dual().index() != g + k - i {
                return Verdict::Fail(format!("i(L^-1) = {} but g + k - i = {}", l.dual().index(), g + k - i));
            }
            match l.twist(&probe_twist(l.torus().rank())) {
                Ok(t) if t.index() == i => {}
                Ok(t) => return Verdict::Fail(format!("i(L (x) xi) = {} but i(L) = {i}", t.index())),
                Err(e) => return fail(e),
            }
            for n in 1..=3 {
                match l.power(n) {
                    Ok(ln) if ln.index() == i => {}
                    Ok(ln) => return Verdict::Fail(format!("i(L^{n}) = {} but i(L) = {i}", ln.index())),
                    Err(e) => return fail(e),
                }
            }
            Verdict::Pass
        }
        Property::NefAgreement => match (l.nef_witnesses(), l.predicates()) {
            (Ok(w), Ok(_)) => verdict(w.agree(), || format!("nef witnesses disagree: {w:?}")),
            (Err(e), _) | (_, Err(e)) => fail(e),
        },
        Property::KempfRoundTrip => match l.kempf_decompose() {
            Ok(kempf) => {
                if !kempf.factor.is_nondegenerate() {
                    return Verdict::Fail("Kempf factor is degenerate".into());
                }
                if l.index() != l.k_dim() + kempf.factor.index() {
                    return Verdict::Fail("i(L) != dim K(L) + i(M)".into());
                }
                match kempf.reassemble() {
                    Ok(back) => verdict(back == *l, || "pi*(M) (x) xi does not reproduce (E, xi)".into()),
                    Err(e) => fail(e),
                }
            }
            Err(e) => fail(e),
        },
        Property::HVectorSum => match l.h_vector() {
            Ok(h) => {
                let alt: BigInt = h.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).sum();
                let chi = l.euler_characteristic();
                verdict(alt == chi, || format!("alternating sum of {h:?} is {alt}, chi is {chi}"))
            }
            Err(e) => fail(e),
        },
        Property::WitRecord => {
            let (w, kempf, h) = match (l.wit_record(), l.kempf_decompose(), l.h_vector()) {
                (Ok(w), Ok(k), Ok(h)) => (w, k, h),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return fail(e),
            };
            if w.support_dim + l.k_dim() != g {
                return Verdict::Fail(format!("support dim {} + k {} != g {g}", w.support_dim, l.k_dim()));
            }
            if w.generic_rank != kempf.factor.euler_characteristic().abs() {
                return Verdict::Fail("generic rank differs from |chi(M)|".into());
            }
            if l.is_nondegenerate() {
                let chi = l.euler_characteristic().abs();
                let concentrated = h.iter().enumerate().all(|(i, x)| {
                    if i == l.index() {
                        *x == chi
                    } else {
                        x.is_zero()
                    }
                });
                return verdict(concentrated, || format!("h-vector {h:?} is not |chi| at {}", l.index()));
            }
            Verdict::Pass
        }
        Property::OraclePfaffian => match check_pfaffian(subject, l) {
            Ok(r) => {
                let ok = r.agreement;
                reports.push(r);
                verdict(ok, || "Pfaffian oracle disagrees".into())
            }
            Err(Error::TooLarge(_)) => Verdict::Skip,
            Err(e) => fail(e),
        },
        Property::OracleInertia => {
            let r = check_inertia(subject, l, tol);
            let ok = r.agreement;
            reports.push(r);
            verdict(ok, || "floating inertia disagrees".into())
        }
        Property::OracleKunneth => match check_h_vector(subject, l) {
            Ok(r) => {
                let ok = r.agreement;
                reports.push(r);
                verdict(ok, || "Kunneth h-vector disagrees".into())
            }
            Err(Error::NotDecomposable) => Verdict::Skip,
            Err(e) => fail(e),
        },
        _ => Verdict::Skip,
    }
}

pub fn check_bundle(p: Property, e: &SemihomBundle) -> Verdict {
    let g = e.dim();
    match p {
        Property::DeterminantFormula => {
            let q = match e.determinant_class() {
                Ok(q) => q,
                Err(err) => return fail(err),
            };
            let r = e.rank();
            let scale = if g == 0 { BigInt::one() } else { num_traits::pow(r.clone(), g - 1) };
            let chi = e.class().euler_characteristic();
            if &chi * &scale != q.euler_characteristic() {
                return Verdict::Fail(format!("chi(E) r^(g-1) = {} but chi(Q) = {}", &chi * &scale, q.euler_characteristic()));
            }
            let pulled = e.isogeny().matrix().congruence(q.form().matrix());
            if pulled != e.class().form().matrix().scale(&r) {
                return Verdict::Fail("A^T E_Q A != d E_L".into());
            }
            match e.report() {
                Ok(rep) => verdict(rep.index == q.index() && rep.chi == chi, || "report disagrees with Q".into()),
                Err(err) => fail(err),
            }
        }
        Property::GnVerdict => {
            let (report, q) = match (gn_report(&ModuliSetup::new(e.clone())), e.determinant_class()) {
                (Ok(r), Ok(q)) => (r, q),
                (Err(err), _) | (_, Err(err)) => return fail(err),
            };
            let expected = q.index() - q.k_dim();
            let ok = report.gn_index == expected
                && report.gn_ample == q.is_nef()
                && (report.gn_index == 0) == report.gn_ample
                && report.gn_index <= g;
            verdict(ok, || format!("G_n report {report:?} inconsistent with Q"))
        }
        _ => Verdict::Skip,
    }
}

/// Simpler variants of a failing class, tried in order.
fn class_shrinks(l: &LineBundleClass) -> Vec<LineBundleClass> {
    let mut out = Vec::new();
    let zero = HomogeneousClass::zero(l.torus().rank());
    if !l.xi().is_zero() {
        if let Ok(c) = LineBundleClass::new(l.torus().clone(), l.form().clone(), zero.clone()) {
            out.push(c);
        }
    }
    let content = l.form().matrix().content();
    if content > BigInt::one() {
        let m = l.form().matrix().map(|x| x / &content);
        if let Ok(f) = AlternatingForm::new(m) {
            if let Ok(c) = LineBundleClass::new(l.torus().clone(), f, zero) {
                out.push(c);
            }
        }
    }
    out
}

fn shrink_class(p: Property, mut l: LineBundleClass, tol: f64) -> (LineBundleClass, String) {
    let mut scratch = Vec::new();
    let mut detail = match check_class(p, "shrink", &l, tol, &mut scratch) {
        Verdict::Fail(d) => d,
        _ => String::new(),
    };
    'outer: loop {
        for c in class_shrinks(&l) {
            if let Verdict::Fail(d) = check_class(p, "shrink", &c, tol, &mut scratch) {
                l = c;
                detail = d;
                continue 'outer;
            }
        }
        return (l, detail);
    }
}

fn size_key(instance: &InstanceFile) -> (usize, usize) {
    let g = instance.tori.iter().map(|t| t.g).max().unwrap_or(0);
    (g, instance.to_json().len())
}

#[derive(Default)]
struct CaseOutcome {
    verdicts: Vec<(Property, Verdict)>,
    reports: Vec<OracleReport>,
    failures: Vec<Failure>,
    classes: usize,
    bundles: usize,
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn run_case(cfg: &SelftestConfig, case: usize) -> CaseOutcome {
    let mut out = CaseOutcome::default();
    let mut rng = case_rng(cfg.seed, case);
    let g = rng.gen_range(1..=cfg.max_g.max(1));
    let kind = ClassKind::ALL[case % ClassKind::ALL.len()];

    let generated = (|| -> semihom_core::Result<_> {
        let class = random_class_of_kind(&mut rng, kind, g)?;
        let product = product_class(&mut rng, g, 3)?;
        let bundle = random_semihom(&mut rng, g, MAX_DEGREE)?;
        Ok((class, product, bundle))
    })();
    let (class, product, bundle) = match generated {
        Ok(x) => x,
        Err(e) => {
            out.verdicts.push((Property::Generation, Verdict::Fail(e.to_string())));
            out.failures.push(Failure {
                property: Property::Generation.name().into(),
                case,
                detail: format!("{kind:?} with g = {g}: {e}"),
                instance: InstanceFile::default(),
            });
            return out;
        }
    };
    out.verdicts.push((Property::Generation, Verdict::Pass));

    for (label, l) in [("class", &class), ("product", &product)] {
        out.classes += 1;
        let subject = format!("case {case} {label}");
        for p in Property::CLASS {
            let v = check_class(p, &subject, l, cfg.tol, &mut out.reports);
            if let Verdict::Fail(_) = v {
                let (small, detail) = shrink_class(p, l.clone(), cfg.tol);
                out.failures.push(Failure {
                    property: p.name().into(),
                    case,
                    detail,
                    instance: InstanceFile::of_class("L", &small),
                });
            }
            out.verdicts.push((p, v));
        }
    }

    out.bundles += 1;
    for p in [Property::DeterminantFormula, Property::GnVerdict] {
        let v = check_bundle(p, &bundle);
        if let Verdict::Fail(d) = &v {
            out.failures.push(Failure {
                property: p.name().into(),
                case,
                detail: d.clone(),
                instance: InstanceFile::of_bundle("E", &bundle),
            });
        }
        out.verdicts.push((p, v));
    }
    out
}

pub fn run(cfg: &SelftestConfig) -> SelftestSummary {
    let outcomes: Vec<CaseOutcome> = (0..cfg.count).into_par_iter().map(|case| run_case(cfg, case)).collect();

    let mut tallies: Vec<PropertyTally> = Property::ALL
        .iter()
        .map(|p| PropertyTally { name: p.name().into(), ..Default::default() })
        .collect();
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    let (mut classes, mut bundles) = (0, 0);
    for o in outcomes {
        for (p, v) in &o.verdicts {
            let t = &mut tallies[Property::ALL.iter().position(|q| q == p).expect("listed property")];
            match v {
                Verdict::Pass => t.passed += 1,
                Verdict::Skip => t.skipped += 1,
                Verdict::Fail(_) => t.failed += 1,
            }
        }
        reports.extend(o.reports);
        failures.extend(o.failures);
        classes += o.classes;
        bundles += o.bundles;
    }
    let inconclusive = reports.iter().filter(|r| r.oracle == "inconclusive").count();
    let failure_count = failures.len();
    let counterexample = failures.into_iter().min_by_key(|f| (size_key(&f.instance), f.case));
    SelftestSummary {
        seed: cfg.seed,
        count: cfg.count,
        max_g: cfg.max_g,
        tol: cfg.tol_text.clone(),
        passed: failure_count == 0,
        classes_checked: classes,
        bundles_checked: bundles,
        inconclusive_float_cases: inconclusive,
        properties: tallies,
        failures: failure_count,
        counterexample,
        oracle_reports: reports,
    }
}

pub fn render_human(s: &SelftestSummary) -> String {
    let mut out = format!(
        "selftest seed={} count={} max_g={} tol={}\n{} classes, {} bundles\n\n",
        s.seed, s.count, s.max_g, s.tol, s.classes_checked, s.bundles_checked
    );
    let width = s.properties.iter().map(|t| t.name.len()).max().unwrap_or(8);
    let _ = writeln!(out, "{:<width$}  {:>7}  {:>7}  {:>7}", "property", "passed", "failed", "skipped");
    for t in &s.properties {
        let _ = writeln!(out, "{:<width$}  {:>7}  {:>7}  {:>7}", t.name, t.passed, t.failed, t.skipped);
    }
    if s.inconclusive_float_cases > 0 {
        let _ = writeln!(
            out,
            "\nfloat inertia inconclusive on {} instance(s); exact inertia used",
            s.inconclusive_float_cases
        );
    }
    if let Some(f) = &s.counterexample {
        let _ = writeln!(
            out,
            "\n{} failure(s); smallest counterexample: {} in case {}: {}\n{}",
            s.failures,
            f.property,
            f.case,
            f.detail,
            f.instance.to_json()
        );
    }
    let _ = writeln!(out, "\nresult: {}", if s.passed { "PASS" } else { "FAIL" });
    out
}
