//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use knotsplit::cli::{parse_matrix, verify_report_json, InvariantSummary, Report};
use knotsplit::concordance::{
    build_slice_certificate, derive_reduced_form, tau_chain_report, verify_metabolizer, Conclusion,
    DerivedFormCertificate, SliceCertificate, TauChainReport,
};
use knotsplit::qform::{
    find_primitive_isotropic, is_indefinite, symplectic_completion, IsotropicCertificate, QuadForm, SearchBudget,
};
use knotsplit::seifert::Omega;
use knotsplit::{
    torus_alexander_formula, torus_seifert_matrix, torus_signature_count, IntMatrix, IntVector, SeifertForm,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn t45() -> SeifertForm {
    torus_seifert_matrix(4, 5).unwrap()
}

fn t45_certificate() -> DerivedFormCertificate {
    derive_reduced_form(&t45(), &SearchBudget::default()).unwrap()
}

fn torus_construction() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_knotsplit"))
        .args(["torus", "4", "5", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || "torus 4 5 failed".into())?;
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let v: IntMatrix = serde_json::from_value(json["matrix"].clone()).map_err(|e| e.to_string())?;
    let v = SeifertForm::new(v, "T(4,5)").map_err(|e| e.to_string())?;
    ensure(v.dimension() == 12, || format!("dimension {}", v.dimension()))?;
    let det = (v.matrix() - &v.matrix().transpose()).det().unwrap();
    ensure(det.is_one(), || format!("det(V - V^T) = {det}"))?;
    ensure(v.genus() == 6, || format!("genus {}", v.genus()))?;
    let expected = torus_alexander_formula(4, 5).unwrap();
    ensure(v.alexander_polynomial() == expected, || {
        format!("Alexander {} vs {}", v.alexander_polynomial(), expected)
    })?;
    // the formula itself: (t^20 - 1)(t - 1) = Delta * (t^4 - 1)(t^5 - 1), shifted by t^6
    let t = |k: i64, c: &[i64]| knotsplit::LaurentPoly::from_i64s(k, c);
    let mut t20 = vec![0i64; 21];
    t20[0] = -1;
    t20[20] = 1;
    let lhs = &t(0, &t20) * &t(0, &[-1, 1]);
    let rhs = &(&expected.shift(6) * &t(0, &[-1, 0, 0, 0, 1])) * &t(0, &[-1, 0, 0, 0, 0, 1]);
    ensure(lhs == rhs, || "closed form does not divide".into())?;
    within(start, Duration::from_secs(1))
}

fn signature() -> Check {
    let start = Instant::now();
    let sigma = t45().signature();
    let count = torus_signature_count(4, 5).unwrap();
    ensure(sigma.abs() == 8, || format!("signature {sigma}"))?;
    ensure(sigma.abs() == count.abs(), || format!("count {count}"))?;
    within(start, Duration::from_secs(1))
}

fn meyer_step() -> Check {
    let start = Instant::now();
    let q = QuadForm::new(t45().symmetrize()).unwrap();
    ensure(is_indefinite(&q), || "Q is not indefinite".into())?;
    let first = find_primitive_isotropic(&q, &SearchBudget::default()).map_err(|e| e.to_string())?;
    let cert = first
        .certificate()
        .ok_or("no isotropic vector within the default budget")?;
    ensure(q.evaluate(&cert.z).unwrap().is_zero(), || "z Q z^T != 0".into())?;
    ensure(cert.z.content().is_one(), || "gcd(z) != 1".into())?;
    ensure(cert.verify(&q), || "certificate does not verify".into())?;
    for threads in [1, 2, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        let again = pool
            .install(|| find_primitive_isotropic(&q, &SearchBudget::default()))
            .map_err(|e| e.to_string())?;
        ensure(again == first, || {
            format!("search result changed with {threads} threads")
        })?;
    }
    within(start, Duration::from_secs(120))
}

fn symplectic_completion_check() -> Check {
    let v = t45();
    let j = v.intersection_form().unwrap();
    let q = QuadForm::new(v.symmetrize()).unwrap();
    let search = find_primitive_isotropic(&q, &SearchBudget::default()).map_err(|e| e.to_string())?;
    let z = search.certificate().ok_or("no z")?.z.clone();
    let start = Instant::now();
    let p = symplectic_completion(&j, &z).map_err(|e| e.to_string())?;
    let p = p.matrix();
    ensure(p.det().unwrap().is_one(), || "det P != 1".into())?;
    ensure(p.row(0) == z.entries(), || "first row of P is not z".into())?;
    ensure(p.congruence(&j).unwrap() == IntMatrix::standard_symplectic(12), || {
        "P J P^T != J_std".into()
    })?;
    within(start, Duration::from_secs(1))
}

fn genus_reduction() -> Check {
    let cert = t45_certificate();
    let v_star = cert.change.matrix().congruence(cert.original.matrix()).unwrap();
    ensure(&v_star == cert.derived.matrix(), || "V* != P V P^T".into())?;
    ensure(v_star.get(0, 0).is_zero(), || {
        format!("V*[0][0] = {}", v_star.get(0, 0))
    })?;
    ensure(cert.g4_bound() == 5, || format!("g4 bound {}", cert.g4_bound()))?;
    let chain = tau_chain_report(4, 5, &SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure(chain.g4_star_bound == 5, || {
        format!("report claims g4(T*) <= {}", chain.g4_star_bound)
    })
}

fn algebraic_concordance() -> Check {
    let cert = t45_certificate();
    let (v, w) = (&cert.original, &cert.derived);
    ensure(v.alexander_polynomial() == w.alexander_polynomial(), || {
        "Alexander differs".into()
    })?;
    ensure(v.signature() == w.signature(), || "signature differs".into())?;
    ensure(v.arf_invariant() == w.arf_invariant(), || "Arf differs".into())?;
    for omega in [Omega::MinusOne, Omega::I] {
        let (a, b) = (v.tristram_levine(omega), w.tristram_levine(omega));
        ensure(a.is_ok() && a == b, || {
            format!("Tristram-Levine at {omega}: {a:?} vs {b:?}")
        })?;
    }
    Ok(())
}

fn slice_certificate() -> Check {
    let cert = t45_certificate();
    let slice = build_slice_certificate(&cert).map_err(|e| e.to_string())?;
    let m = &slice.metabolizer;
    let p_inv = cert.change.matrix().inverse_unimodular().unwrap();
    let expected = IntMatrix::identity(12).hstack(&p_inv).unwrap();
    ensure(m == &expected, || "M != [I | P^-1]".into())?;
    let w = cert.original.connected_sum(&cert.derived.concordance_inverse());
    ensure(m.congruence(w.matrix()).unwrap().is_zero(), || "M W M^T != 0".into())?;
    let inv = m.smith_invariants();
    ensure(inv.len() == 12 && inv.iter().all(One::is_one), || {
        format!("Smith invariants {inv:?}")
    })?;
    ensure(verify_metabolizer(&w, m).unwrap_or(false), || {
        "verify_metabolizer rejected M".into()
    })
}

fn tau_chain() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_knotsplit"))
        .args(["paper-chain", "4", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    for line in [
        "tau_T=6",
        "g4_star_bound=5",
        "tau_difference_lower_bound=1",
        "conclusion=SUMMAND_ESTABLISHED",
    ] {
        ensure(text.lines().any(|l| l == line), || format!("report lacks {line}"))?;
    }
    Ok(())
}

fn congruence_invariance(rng: &mut ChaCha8Rng) -> Check {
    let omegas = [
        Omega::MinusOne,
        Omega::I,
        Omega::MinusI,
        Omega::root_of_unity(1, 3).unwrap(),
        Omega::root_of_unity(2, 7).unwrap(),
    ];
    for case in 0..200 {
        let g = rng.gen_range(1..=4);
        let v = random_seifert(rng, g, 3);
        let p = random_unimodular(rng, 2 * g, 4 * g);
        let w = v.congruence_transform(&p).map_err(|e| e.to_string())?;
        let same = v.alexander_polynomial() == w.alexander_polynomial()
            && v.signature() == w.signature()
            && v.arf_invariant() == w.arf_invariant()
            && omegas
                .iter()
                .all(|&o| v.tristram_levine(o).ok() == w.tristram_levine(o).ok());
        ensure(same, || {
            format!("case {case}: invariants of {:?} changed under {:?}", v.matrix(), p)
        })?;
    }
    Ok(())
}

fn formula_agreement() -> Check {
    for p in 2..=7u64 {
        for q in p + 1..=7 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let v = torus_seifert_matrix(p, q).unwrap();
            ensure(v.signature() == torus_signature_count(p, q).unwrap(), || {
                format!("signature of T({p},{q})")
            })?;
            ensure(
                v.alexander_polynomial() == torus_alexander_formula(p, q).unwrap(),
                || format!("Alexander of T({p},{q})"),
            )?;
            ensure(v.intersection_form().is_ok(), || format!("T({p},{q}) not unimodular"))?;
        }
    }
    Ok(())
}

fn additivity(rng: &mut ChaCha8Rng) -> Check {
    let mut forms: Vec<SeifertForm> = (0..20)
        .map(|_| {
            let g = rng.gen_range(1..=2);
            random_seifert(rng, g, 3)
        })
        .collect();
    forms.push(t45());
    forms.push(torus_seifert_matrix(2, 3).unwrap());
    forms.push(SeifertForm::unknot());
    for a in &forms {
        for b in forms.iter().step_by(3) {
            let s = a.connected_sum(b);
            ensure(s.signature() == a.signature() + b.signature(), || {
                "signature not additive".into()
            })?;
            ensure(s.arf_invariant() == (a.arf_invariant() + b.arf_invariant()) % 2, || {
                "Arf not additive".into()
            })?;
        }
    }
    Ok(())
}

fn certificates_reverify() -> Check {
    let budget = SearchBudget::default();
    let mut knots: Vec<SeifertForm> = vec![
        t45(),
        torus_seifert_matrix(3, 7).unwrap(),
        torus_seifert_matrix(5, 6).unwrap(),
        SeifertForm::new(mat(&[&[0, 1], &[0, 0]]), "band").unwrap(),
    ];
    knots.push(knots[3].connected_sum(&torus_seifert_matrix(2, 3).unwrap()));
    for v in &knots {
        let cert = derive_reduced_form(v, &budget).map_err(|e| format!("{}: {e}", v.label()))?;
        let back: DerivedFormCertificate = round_trip(&cert)?;
        back.verify().map_err(|e| e.to_string())?;
        ensure(back == cert, || "derived certificate changed in transit".into())?;
        let inv_a = InvariantSummary::of(&cert.original);
        let inv_b = InvariantSummary::of(&cert.derived);
        ensure(inv_a == inv_b, || {
            format!("{}: invariants of V and V* differ", v.label())
        })?;
        let slice = build_slice_certificate(&cert).map_err(|e| e.to_string())?;
        let back: SliceCertificate = round_trip(&slice)?;
        ensure(back.verify().unwrap_or(false), || {
            "slice certificate fails after round trip".into()
        })?;
        let q = QuadForm::new(v.symmetrize()).unwrap();
        let iso: IsotropicCertificate = round_trip(&cert.iso)?;
        ensure(iso.verify(&q), || "isotropic certificate fails after round trip".into())?;
    }
    for p in 2..=7u64 {
        for q in p + 1..=7 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let report = tau_chain_report(p, q, &budget).map_err(|e| e.to_string())?;
            let back: TauChainReport = round_trip(&report)?;
            back.verify().map_err(|e| format!("T({p},{q}): {e}"))?;
            let json = Report::from_serialize("paper-chain", &report).render_json();
            verify_report_json(&json).map_err(|e| e.message)?;
            if p == 4 && q == 5 {
                ensure(back.conclusion == Conclusion::SummandEstablished, || {
                    "T(4,5) not established".into()
                })?;
            }
        }
    }
    // matrix files
    let text = knotsplit::cli::format_matrix(t45().matrix());
    ensure(
        knotsplit::cli::format_matrix(&parse_matrix(&text).unwrap()) == text,
        || "matrix file round trip not byte-identical".into(),
    )?;
    let z = IntVector(vec![BigInt::from(3), BigInt::from(-4)]);
    let zt = knotsplit::cli::format_matrix(&z.as_row_matrix());
    ensure(zt == "1 2\n3 -4\n", || format!("vector file {zt:?}"))
}

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> Result<T, String> {
    let s = serde_json::to_string(x).map_err(|e| e.to_string())?;
    serde_json::from_str(&s).map_err(|e| e.to_string())
}

fn property_suites() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let parts: [(&str, Check); 4] = [
        ("a", congruence_invariance(&mut rng)),
        ("b", formula_agreement()),
        ("c", additivity(&mut rng)),
        ("d", certificates_reverify()),
    ];
    for (name, r) in parts {
        r.map_err(|e| format!("9{name}: {e}"))?;
    }
    within(start, Duration::from_secs(60))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 9] = [
        ("torus construction", torus_construction),
        ("signature", signature),
        ("indefiniteness and isotropic vector", meyer_step),
        ("symplectic completion", symplectic_completion_check),
        ("genus reduction witness", genus_reduction),
        ("algebraic concordance invariants", algebraic_concordance),
        ("slice certificate", slice_certificate),
        ("tau chain", tau_chain),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match &result {
            Ok(()) => println!("criterion {}: PASS ({name}, {:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
