//! Acceptance suite: one PASS/FAIL line per criterion. Every threshold is
//! a named constant below.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semihom_core::fourier_mukai::{gn_report, poincare_setup, ModuliSetup};
use semihom_core::line_bundle::LineBundleClass;
use semihom_core::oracles::{float_inertia, kunneth_h_vector, naive_pfaffian, FloatInertia};
use semihom_core::semihom::SemihomBundle;
use semihom_core::testbed::{
    product_class, pullback_of_ample, random_class_of_kind, random_definite_hermitian, random_isogeny,
    random_semihom, random_torsion, ClassKind,
};
use semihom_core::torus::ComplexTorus;

const POOL_SEED: u64 = 20_241;
const MIN_CLASSES: usize = 1000;
const POOL_CLASSES: usize = 1200;
const MAX_G: usize = 3;
const INDEX_BUDGET: Duration = Duration::from_secs(10);
const MIN_BUNDLES: usize = 200;
const BUNDLE_COUNT: usize = 240;
const MAX_DEGREE: u64 = 16;
const GN_PROTOTYPE_G: [usize; 4] = [1, 2, 3, 4];
const GN_RANDOM_PER_G: usize = 10;
const FLOAT_TOL: f64 = 1e-9;
const NAIVE_PFAFFIAN_MAX: usize = 8;
const SELFTEST_SEED: u64 = 42;
const SELFTEST_COUNT: usize = 1000;
const SELFTEST_MAX_G: usize = 3;
const SELFTEST_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn alternating_sum(h: &[BigInt]) -> BigInt {
    h.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).sum()
}

/// Classes cycling through every generator and `g = 1..=MAX_G`.
fn class_pool() -> Vec<(ClassKind, LineBundleClass)> {
    let mut rng = ChaCha8Rng::seed_from_u64(POOL_SEED);
    (0..POOL_CLASSES)
        .map(|i| {
            let kind = ClassKind::ALL[i % ClassKind::ALL.len()];
            let g = 1 + (i / ClassKind::ALL.len()) % MAX_G;
            (kind, random_class_of_kind(&mut rng, kind, g).expect("generator"))
        })
        .collect()
}

fn bundle_pool() -> Vec<SemihomBundle> {
    let mut rng = ChaCha8Rng::seed_from_u64(POOL_SEED + 1);
    (0..BUNDLE_COUNT).map(|i| random_semihom(&mut rng, 1 + i % MAX_G, MAX_DEGREE).expect("generator")).collect()
}

fn criterion_1(pool: &[(ClassKind, LineBundleClass)]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(POOL_SEED + 2);
    let mut bad = 0;
    let mut per_g = [0usize; MAX_G + 1];
    for (_, l) in pool {
        let (g, i, k) = (l.dim(), l.index(), l.k_dim());
        per_g[g] += 1;
        let xi = random_torsion(&mut rng, 2 * g, 7);
        let ok = l.dual().index() == g + k - i
            && l.twist(&xi).unwrap().index() == i
            && (1..=3).all(|n| l.power(n).unwrap().index() == i);
        bad += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    let every_g = per_g[1..].iter().all(|&c| c > 0);
    Outcome {
        id: 1,
        title: "index arithmetic: dual, twist and powers",
        passed: pool.len() >= MIN_CLASSES && every_g && bad == 0 && elapsed < INDEX_BUDGET,
        detail: format!(
            "{} classes (g=1:{} g=2:{} g=3:{}), {bad} violations, {:.2}s (budget {}s)",
            pool.len(),
            per_g[1],
            per_g[2],
            per_g[3],
            elapsed.as_secs_f64(),
            INDEX_BUDGET.as_secs()
        ),
    }
}

fn criterion_2(pool: &[(ClassKind, LineBundleClass)]) -> Outcome {
    let (mut raw, mut constructed, mut bad, mut nef) = (0, 0, 0, 0);
    for (kind, l) in pool {
        match kind {
            ClassKind::Hermitian | ClassKind::LowRank | ClassKind::BaseChanged | ClassKind::Product => raw += 1,
            ClassKind::Pullback => constructed += 1,
        }
        let w = l.nef_witnesses().unwrap();
        bad += usize::from(!w.agree() || l.predicates().is_err());
        nef += usize::from(w.semidefinite);
        if *kind == ClassKind::Pullback && !w.semidefinite {
            bad += 1;
        }
    }
    Outcome {
        id: 2,
        title: "nef: semidefinite = (i = dim K) = ample Kempf factor",
        passed: bad == 0 && raw > 0 && constructed > 0,
        detail: format!("{raw} raw + {constructed} pi*(ample)(x)xi instances, {nef} nef, {bad} disagreements"),
    }
}

fn criterion_3(pool: &[(ClassKind, LineBundleClass)]) -> Outcome {
    let (mut degenerate, mut bad) = (0, 0);
    for (_, l) in pool.iter().filter(|(_, l)| !l.is_nondegenerate()) {
        degenerate += 1;
        let kempf = l.kempf_decompose().unwrap();
        let ok = kempf.factor.is_nondegenerate() && kempf.reassemble().unwrap() == *l && kempf.xi == *l.xi();
        bad += usize::from(!ok);
    }
    Outcome {
        id: 3,
        title: "Kempf round trip pi*(M) (x) xi = (E, xi), M nondegenerate",
        passed: degenerate > 0 && bad == 0,
        detail: format!("{degenerate} degenerate instances, {bad} failures"),
    }
}

fn criterion_4(bundles: &[SemihomBundle]) -> Outcome {
    let (mut bad, mut max_deg, mut max_rank) = (0, BigInt::zero(), BigInt::zero());
    let mut too_big = 0;
    for e in bundles {
        let g = e.dim();
        let r = e.rank();
        let q = e.determinant_class().unwrap();
        let chi = e.euler_characteristic().unwrap();
        let lhs = &chi * num_traits::pow(r.clone(), g - 1);
        let entrywise = e.isogeny().matrix().congruence(q.form().matrix()) == e.class().form().matrix().scale(&r);
        bad += usize::from(lhs != q.euler_characteristic() || !entrywise);
        too_big += usize::from(g > MAX_G || r > BigInt::from(MAX_DEGREE));
        max_deg = max_deg.max(e.isogeny().degree().clone());
        max_rank = max_rank.max(r);
    }
    Outcome {
        id: 4,
        title: "determinant: chi(E) r^(g-1) = chi(Q), A^T E_Q A = d E_L",
        passed: bundles.len() >= MIN_BUNDLES && bad == 0 && too_big == 0 && max_rank > BigInt::from(1),
        detail: format!("{} bundles, max degree {max_deg}, {bad} violations, {too_big} out of range", bundles.len()),
    }
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for g in GN_PROTOTYPE_G {
        let r = gn_report(&poincare_setup(&ComplexTorus::gaussian_power(g))).unwrap();
        let good = r.gn_index == 0 && r.gn_ample && r.gn_simple_semihom_stable && r.it_index_of_ln == g;
        ok &= good;
        if !good {
            notes.push(format!("Poincare g={g}: {r:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(POOL_SEED + 3);
    let (mut anti, mut nef) = (0, 0);
    for g in 1..=MAX_G {
        for _ in 0..GN_RANDOM_PER_G {
            // anti-ample determinant, as a line bundle and as a pushforward
            let l = LineBundleClass::from_hermitian(&random_definite_hermitian(&mut rng, g, -1, 2)).unwrap();
            let f = random_isogeny(&mut rng, g, MAX_DEGREE).unwrap();
            let pushed = SemihomBundle::new(f.clone(), l.pullback(f.as_hom()).unwrap()).unwrap();
            for fiber in [SemihomBundle::line_bundle(l), pushed] {
                let r = gn_report(&ModuliSetup::new(fiber)).unwrap();
                let good = r.gn_index == g && !r.gn_ample && !r.fibers_nef;
                ok &= good;
                anti += 1;
                if !good {
                    notes.push(format!("anti-ample g={g}: gn_index {} ample {}", r.gn_index, r.gn_ample));
                }
            }
            // nef with a nontrivial kernel torus
            if g >= 2 {
                let k = rng.gen_range(1..g);
                let l = pullback_of_ample(&mut rng, g, k).unwrap();
                let r = gn_report(&ModuliSetup::new(SemihomBundle::line_bundle(l))).unwrap();
                let good = r.gn_index == 0 && r.gn_ample && r.determinant_k_dim == k;
                ok &= good;
                nef += 1;
                if !good {
                    notes.push(format!("nef degenerate g={g}: gn_index {} ample {}", r.gn_index, r.gn_ample));
                }
            }
        }
    }
    Outcome {
        id: 5,
        title: "G_n verdicts: Poincare, anti-ample, nef degenerate",
        passed: ok,
        detail: if notes.is_empty() {
            format!("{} prototypes, {anti} anti-ample fibers, {nef} nef degenerate fibers", GN_PROTOTYPE_G.len())
        } else {
            notes.join("; ")
        },
    }
}

fn criterion_6(pool: &[(ClassKind, LineBundleClass)], bundles: &[SemihomBundle]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(POOL_SEED + 4);
    let products: Vec<LineBundleClass> =
        (0..300).map(|i| product_class(&mut rng, 1 + i % MAX_G, 3).unwrap()).collect();
    let dets: Vec<LineBundleClass> = bundles.iter().map(|e| e.determinant_class().unwrap()).collect();
    let all: Vec<&LineBundleClass> = pool.iter().map(|(_, l)| l).chain(&products).chain(&dets).collect();

    let (mut pf_checked, mut pf_bad) = (0, 0);
    let (mut conclusive, mut inconclusive, mut inertia_bad) = (0, 0, 0);
    let (mut kunneth_checked, mut kunneth_bad) = (0, 0);
    let mut alt_bad = 0;
    for l in &all {
        if l.form().matrix().rows() <= NAIVE_PFAFFIAN_MAX {
            pf_checked += 1;
            pf_bad += usize::from(naive_pfaffian(l.form()).unwrap().abs() != *l.pfaffian_magnitude());
        }
        match float_inertia(l.realified_form(), FLOAT_TOL) {
            FloatInertia::Conclusive(f) => {
                conclusive += 1;
                inertia_bad += usize::from(f != l.inertia());
            }
            FloatInertia::Inconclusive => inconclusive += 1,
        }
        let h = l.h_vector().unwrap();
        alt_bad += usize::from(alternating_sum(&h) != l.euler_characteristic());
        if let Ok(k) = kunneth_h_vector(l) {
            kunneth_checked += 1;
            kunneth_bad += usize::from(k != h);
        }
    }
    Outcome {
        id: 6,
        title: "oracles: naive Pfaffian, float inertia, Kunneth h-vector",
        passed: pf_bad == 0
            && inertia_bad == 0
            && kunneth_bad == 0
            && alt_bad == 0
            && pf_checked == all.len()
            && kunneth_checked >= products.len(),
        detail: format!(
            "pfaffian {pf_checked} checked, {pf_bad} bad; inertia {conclusive} conclusive, {inertia_bad} bad, \
             {inconclusive} inconclusive (exact only, tol {FLOAT_TOL:e}); kunneth {kunneth_checked} checked, {kunneth_bad} bad; \
             alternating sum {alt_bad} bad over {} instances",
            all.len()
        ),
    }
}

fn criterion_7(pool: &[(ClassKind, LineBundleClass)]) -> Outcome {
    let (mut bad, mut nondegenerate) = (0, 0);
    for (_, l) in pool {
        let w = l.wit_record().unwrap();
        let m = l.kempf_decompose().unwrap().factor;
        let mut ok = w.support_dim + l.k_dim() == l.dim()
            && w.generic_rank == m.euler_characteristic().abs()
            && w.wit_index == l.index();
        if l.is_nondegenerate() {
            nondegenerate += 1;
            let h = l.h_vector().unwrap();
            let chi = l.euler_characteristic().abs();
            ok &= h.iter().enumerate().all(|(i, x)| if i == l.index() { *x == chi } else { x.is_zero() });
        }
        bad += usize::from(!ok);
    }
    Outcome {
        id: 7,
        title: "WIT record: support + k = g, rank |chi(M)|, IT concentration",
        passed: bad == 0 && nondegenerate > 0,
        detail: format!("{} instances ({nondegenerate} nondegenerate), {bad} violations", pool.len()),
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_semihom"))
        .args(["selftest", "--seed", &SELFTEST_SEED.to_string(), "--count", &SELFTEST_COUNT.to_string()])
        .args(["--max-g", &SELFTEST_MAX_G.to_string()])
        .output()
        .expect("run semihom");
    let elapsed = start.elapsed();
    let code = out.status.code();
    let last = String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or_default().to_string();
    Outcome {
        id: 8,
        title: "selftest --seed 42 --count 1000 --max-g 3",
        passed: code == Some(0) && elapsed < SELFTEST_BUDGET,
        detail: format!("exit {code:?}, {:.2}s (budget {}s), {last}", elapsed.as_secs_f64(), SELFTEST_BUDGET.as_secs()),
    }
}

fn main() -> ExitCode {
    let pool = class_pool();
    let bundles = bundle_pool();
    let outcomes = [
        criterion_1(&pool),
        criterion_2(&pool),
        criterion_3(&pool),
        criterion_4(&bundles),
        criterion_5(),
        criterion_6(&pool, &bundles),
        criterion_7(&pool),
        criterion_8(),
    ];
    for o in &outcomes {
        println!("{} [{}] {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {}/{} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
