//! Report documents: a JSON form for machines and a two-column table for
//! people. Both are built from the same [`ReportDoc`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use semihom_core::exact_serde::{self, format_rational};
use semihom_core::fourier_mukai::{gn_report, GnReport, ModuliSetup};
use semihom_core::line_bundle::{LineBundleClass, LineBundleReport, NefWitnesses, TransformRecord};
use semihom_core::linalg::Inertia;
use semihom_core::semihom::{SemihomBundle, SemihomReport};
use semihom_core::torus::{ComplexTorus, Isogeny};

use crate::error::CliError;
use crate::instance::Object;

pub const CITE_CHI: &str = "chi(L) = (-1)^i(L) * |Pf(E)|, zero exactly when E is degenerate";
pub const CITE_INDEX: &str = "i(L) = dim K(L) + i(M) for the Kempf decomposition L = pi*(M) (x) xi";
pub const CITE_NEF: &str = "L nef <=> H semidefinite <=> i(L) = dim K(L) <=> Kempf factor ample";
pub const CITE_WIT: &str =
    "every line bundle satisfies WIT; the transform lives on a translate of the dual of X/K(L)_0";
pub const CITE_DET_CHI: &str = "chi(E) = chi(Q) / r^(g-1) with Q = det E";
pub const CITE_DET_INDEX: &str = "i(E) = i(Q), and E is ample iff Q is ample";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempfSummary {
    pub kernel_dim: usize,
    pub factor_index: usize,
    #[serde(with = "exact_serde::bigint")]
    pub factor_chi: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub name: String,
    pub g: usize,
    pub report: LineBundleReport,
    pub inertia: Inertia,
    pub nef_witnesses: NefWitnesses,
    pub kempf: KempfSummary,
    #[serde(with = "exact_serde::bigint_vec")]
    pub h_vector: Vec<BigInt>,
    pub transform: TransformRecord,
    pub citations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDoc {
    pub name: String,
    pub g: usize,
    pub report: SemihomReport,
    pub citations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDoc {
    pub name: String,
    pub g: usize,
    pub dual_j: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyDoc {
    pub name: String,
    #[serde(with = "exact_serde::bigint")]
    pub degree: BigInt,
    #[serde(with = "exact_serde::int_matrix")]
    pub dual_matrix: semihom_core::linalg::IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnDoc {
    pub name: String,
    pub report: GnReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportDoc {
    Torus(TorusDoc),
    Isogeny(IsogenyDoc),
    Class(ClassDoc),
    Bundle(BundleDoc),
    Gn(GnDoc),
}

fn semantic(name: &str, e: semihom_core::Error) -> CliError {
    CliError::Semantic(format!("'{name}': {e}"))
}

pub fn class_doc(name: &str, l: &LineBundleClass) -> Result<ClassDoc, CliError> {
    let err = |e| semantic(name, e);
    let kempf = l.kempf_decompose().map_err(err)?;
    Ok(ClassDoc {
        name: name.into(),
        g: l.dim(),
        report: l.report().map_err(err)?,
        inertia: l.inertia(),
        nef_witnesses: l.nef_witnesses().map_err(err)?,
        kempf: KempfSummary {
            kernel_dim: kempf.kernel_dim(),
            factor_index: kempf.factor.index(),
            factor_chi: kempf.factor.euler_characteristic(),
        },
        h_vector: l.h_vector().map_err(err)?,
        transform: l.wit_record().map_err(err)?,
        citations: [CITE_CHI, CITE_INDEX, CITE_NEF, CITE_WIT].map(String::from).to_vec(),
    })
}

pub fn bundle_doc(name: &str, e: &SemihomBundle) -> Result<BundleDoc, CliError> {
    let report = e.report().map_err(|err| semantic(name, err))?;
    let mut citations = vec![CITE_DET_CHI.to_string(), CITE_DET_INDEX.to_string()];
    citations.extend(report.stability.provenance.iter().cloned());
    Ok(BundleDoc { name: name.into(), g: e.dim(), report, citations })
}

fn torus_doc(name: &str, x: &ComplexTorus) -> TorusDoc {
    let dual = x.dual();
    let j = dual.torus().complex_structure();
    TorusDoc {
        name: name.into(),
        g: x.dim(),
        dual_j: (0..j.rows()).map(|i| j.row(i).iter().map(format_rational).collect()).collect(),
    }
}

fn isogeny_doc(name: &str, f: &Isogeny) -> IsogenyDoc {
    IsogenyDoc { name: name.into(), degree: f.degree().clone(), dual_matrix: f.dual().matrix().clone() }
}

pub fn object_doc(name: &str, object: Object<'_>) -> Result<ReportDoc, CliError> {
    Ok(match object {
        Object::Torus(x) => ReportDoc::Torus(torus_doc(name, x)),
        Object::Isogeny(f) => ReportDoc::Isogeny(isogeny_doc(name, f)),
        Object::Class(l) => ReportDoc::Class(class_doc(name, l)?),
        Object::Bundle(e) => ReportDoc::Bundle(bundle_doc(name, e)?),
    })
}

/// `G_n` for the family whose fibers look like `object`, a bundle or a
/// line bundle class.
pub fn gn_doc(name: &str, object: Object<'_>, n: u32) -> Result<ReportDoc, CliError> {
    let fiber = match object {
        Object::Bundle(e) => e.clone(),
        Object::Class(l) => SemihomBundle::line_bundle(l.clone()),
        _ => return Err(CliError::Semantic(format!("'{name}' is neither a bundle nor a class"))),
    };
    let mut setup = ModuliSetup::new(fiber);
    setup.n = n;
    let report = gn_report(&setup).map_err(|e| semantic(name, e))?;
    Ok(ReportDoc::Gn(GnDoc { name: name.into(), report }))
}

pub fn machine(doc: &ReportDoc) -> String {
    serde_json::to_string_pretty(doc).expect("reports always serialize")
}

fn ints(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

struct Table(Vec<(String, String)>);

impl Table {
    fn row(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self, title: &str, citations: &[String]) -> String {
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("{title}\n");
        for (k, v) in &self.0 {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        if !citations.is_empty() {
            out.push_str("citations:\n");
            for c in citations {
                let _ = writeln!(out, "  - {c}");
            }
        }
        out
    }
}

pub fn human(doc: &ReportDoc) -> String {
    let mut t = Table(Vec::new());
    match doc {
        ReportDoc::Torus(d) => {
            t.row("g", d.g).row("dual J", format!("{:?}", d.dual_j));
            t.render(&format!("torus {}", d.name), &[])
        }
        ReportDoc::Isogeny(d) => {
            t.row("degree", &d.degree).row("dual matrix", format!("{:?}", d.dual_matrix));
            t.render(&format!("isogeny {}", d.name), &[])
        }
        ReportDoc::Class(d) => {
            let r = &d.report;
            t.row("g", d.g)
                .row("chi", &r.chi)
                .row("k = dim K(L)", r.k_dim)
                .row("index", r.index)
                .row("nondegenerate", r.nondegenerate)
                .row("nef", r.nef)
                .row("ample", r.ample)
                .row("inertia (+,0,-)", format!("({}, {}, {})", d.inertia.n_plus, d.inertia.n_zero, d.inertia.n_minus))
                .row("elementary divisors", ints(&r.divisors))
                .row("Kempf factor", format!("dim {} index {} chi {}", d.g - d.kempf.kernel_dim, d.kempf.factor_index, d.kempf.factor_chi))
                .row("h-vector", ints(&d.h_vector))
                .row("WIT index", d.transform.wit_index)
                .row("support dim", d.transform.support_dim)
                .row("generic rank", &d.transform.generic_rank);
            t.render(&format!("line bundle class {}", d.name), &d.citations)
        }
        ReportDoc::Bundle(d) => {
            let r = &d.report;
            let xi: Vec<String> = r.determinant_xi.entries().iter().map(format_rational).collect();
            t.row("g", d.g)
                .row("rank", &r.rank)
                .row("chi", &r.chi)
                .row("index", r.index)
                .row("nondegenerate", r.nondegenerate)
                .row("IT", r.satisfies_it)
                .row("nef", r.nef)
                .row("ample", r.ample)
                .row("stable", r.stable)
                .row("det chi", &r.determinant.chi)
                .row("det k", r.determinant.k_dim)
                .row("det form", format!("{:?}", r.determinant_form))
                .row("det xi", format!("[{}]", xi.join(", ")));
            t.render(&format!("semihomogeneous bundle {}", d.name), &d.citations)
        }
        ReportDoc::Gn(d) => {
            let r = &d.report;
            t.row("g", r.g)
                .row("n", r.n)
                .row("index of L^-n", r.it_index_of_ln)
                .row("i(Q)", r.determinant_index)
                .row("dim K(Q)", r.determinant_k_dim)
                .row("i(G_n)", r.gn_index)
                .row("fibers nef", r.fibers_nef)
                .row("G_n ample", r.gn_ample)
                .row("G_n stable", r.gn_simple_semihom_stable)
                .row("note", &r.threshold);
            let mut cites = r.citations.clone();
            cites.extend(r.stability.provenance.iter().cloned());
            t.render(&format!("G_n for {}", d.name), &cites)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use semihom_core::torus::GaussianInt as Complex;

    #[test]
    fn machine_documents_round_trip() {
        let l = LineBundleClass::from_hermitian(&[vec![Complex::new(1, 0)]]).unwrap();
        let e = SemihomBundle::line_bundle(l.clone());
        for doc in [
            object_doc("L", Object::Class(&l)).unwrap(),
            object_doc("E", Object::Bundle(&e)).unwrap(),
            object_doc("X", Object::Torus(l.torus())).unwrap(),
            object_doc("f", Object::Isogeny(e.isogeny())).unwrap(),
            gn_doc("E", Object::Bundle(&e), 3).unwrap(),
        ] {
            let back: ReportDoc = serde_json::from_str(&machine(&doc)).unwrap();
            assert_eq!(back, doc);
            assert!(!human(&doc).is_empty());
        }
    }

    #[test]
    fn gn_needs_a_fiber() {
        let x = ComplexTorus::gaussian_curve();
        assert!(matches!(gn_doc("X", Object::Torus(&x), 1), Err(CliError::Semantic(_))));
    }
}
