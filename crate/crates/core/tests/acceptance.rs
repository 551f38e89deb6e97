//! Acceptance matrix: one line per criterion, exact comparisons only.
//! Lines marked `note` are informational and do not affect the exit code.

use std::process::ExitCode;
use std::time::Instant;

use qorbit_core::ere::Presentation;
use qorbit_core::center::cayley_hamilton_check;
use qorbit_core::qla::{hecke_symmetry, partial_quantum_trace, weight_matrix_for, PolyMatrix, TraceFactor};
use qorbit_core::report::CheckReport;
use qorbit_core::scalar::{qint, ParamPoly, RatFn, Specialization, Sym};
use qorbit_core::suite::{run_suite, SuiteConfig};

fn all_ok<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> (bool, usize) {
    let mut n = 0;
    let mut ok = true;
    for r in reports {
        n += 1;
        ok &= r.ok;
    }
    (ok && n > 0, n)
}

fn select<'a>(reports: &'a [CheckReport], check: &'a str) -> impl Iterator<Item = &'a CheckReport> + 'a {
    reports.iter().filter(move |r| r.check == check)
}

fn line(id: &str, ok: bool, text: &str) {
    println!("criterion {id}: {} | {text}", if ok { "PASS" } else { "FAIL" });
}

fn note(id: &str, ok: bool, text: &str) {
    println!("note {id}: {} | {text}", if ok { "PASS" } else { "FAIL" });
}

fn failures(reports: &[CheckReport]) {
    for r in reports.iter().filter(|r| !r.ok) {
        println!("    failing report {} {}: {:?}", r.check, r.params, r.witnesses);
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = SuiteConfig::default();
    let reports = run_suite(&config).expect("default config is valid");
    let mut pass = true;

    // 1
    let (a, na) = all_ok(select(&reports, "ybe").chain(select(&reports, "hecke")));
    let (b, nb) = all_ok(select(&reports, "trace-norm"));
    let mut literal_ok = true;
    for n in 2..=4 {
        let s = hecke_symmetry(n);
        let q1 = PolyMatrix::identity(n).scale(&ParamPoly::q_pow(1));
        match weight_matrix_for(&s, TraceFactor::Second) {
            Ok(d) => literal_ok &= partial_quantum_trace(&s, &d, TraceFactor::Second) == q1 && d.trace() == qint(n as i64),
            Err(_) => literal_ok = false,
        }
    }
    let ok1 = a && b && literal_ok;
    pass &= ok1;
    line(
        "1",
        ok1,
        &format!("YBE and Hecke exact for n=2,3,4 ({na} checks); trace D: (Tr_q⊗id)(S)=q·1 and Tr_q(1)=n̂ ({nb} checks); (id⊗Tr_q)(S)=q·1 solvable with Tr=n̂ for n=2,3,4"),
    );
    let literal_on_trace_d = select(&reports, "trace-norm").all(|r| r.data["second_factor_is_q"] == true);
    note(
        "1b",
        literal_on_trace_d,
        "(id⊗Tr_q)(S)=q·1 for the D used in Tr_q; the solution of this literal condition is the reversed diagonal, for which Tr(D L) is not central",
    );

    // 2
    let (ok2, n2) = all_ok(select(&reports, "pbw"));
    pass &= ok2;
    line("2", ok2, &format!("PBW counts equal Σ_e C(n²+e−1,e) for n=2 d≤4 and n=3 d≤3, q,t symbolic ({n2} cases)"));

    // 3
    let (c, nc) = all_ok(select(&reports, "centrality"));
    let ch: Vec<&CheckReport> = select(&reports, "cayley-hamilton").collect();
    let t0 = ch.iter().any(|r| r.params["t"] == "0" && r.ok);
    let q1_top = ch.iter().any(|r| r.params["q"] == "1" && r.ok);
    let ok3 = c && t0 && q1_top;
    pass &= ok3;
    line(
        "3",
        ok3,
        &format!("s1,s2 central for n=2,3 ({nc} cases); CH residual zero for n=2 at t=0; CH residual zero at degree-graded top for n=2 at q=1, t symbolic"),
    );
    let pq1 = Presentation::<RatFn>::ere(2, 3, &Specialization::symbolic().with_int(Sym::Q, 1)).unwrap();
    let full = cayley_hamilton_check(&pq1).unwrap();
    note(
        "3b",
        full.zero,
        &format!(
            "full CH residual at q=1, t symbolic with Newton σ: {}",
            full.witness.as_deref().unwrap_or("zero")
        ),
    );
    let shifted = select(&reports, "cayley-hamilton-shifted").all(|r| r.ok);
    note("3c", shifted, "CH transported by the shift L ↦ L − t/(1−q⁻²) vanishes for n=2, q,t symbolic");

    // 4
    let (ok4a, n4) = all_ok(select(&reports, "theta-identities"));
    let (ok4b, _) = all_ok(select(&reports, "newton").filter(|r| r.params["kind"] == "theta"));
    let ok4 = ok4a && ok4b;
    pass &= ok4;
    line("4", ok4, &format!("ϑ identity battery exact for n≤5, k≤3, m≤6 incl. lemma K=1 and Newton compatibility ({n4} reports)"));

    // 5
    let (ok5, _) = all_ok(select(&reports, "symmetric-orbit"));
    pass &= ok5;
    line("5", ok5, "theta_t((n1,n2), m=1) = n̂1μ1 + n̂2μ2 + t·n̂1n̂2 exactly for n1+n2 ≤ 5");

    // 6
    let (ok6, n6) = all_ok(select(&reports, "characters"));
    pass &= ok6;
    line("6", ok6, &format!("r_m(ϑ)=0 for k≤m≤k+4 and |{{n:k}}| = C(n+k−1,k−1), n≤5, k≤3 ({n6} cases)"));

    // 7
    let flat: Vec<&CheckReport> = select(&reports, "orbit-flatness").collect();
    let want = [("[1,1]", 4usize), ("[2,1]", 2), ("[1,1,1]", 2)];
    let mut ok7 = true;
    let mut shown = Vec::new();
    for (comp, d) in want {
        let hit = flat
            .iter()
            .find(|r| r.params["comp"].to_string() == comp && r.params["d"] == d);
        match hit {
            Some(r) => {
                ok7 &= r.ok;
                shown.push(format!("{comp} d≤{d} {}", r.data["quantum_profile"]));
            }
            None => ok7 = false,
        }
    }
    pass &= ok7;
    line("7", ok7, &format!("quantum = classical Hilbert profiles, q,t symbolic: {}", shown.join("; ")));

    // 8
    let (ok8, _) = all_ok(select(&reports, "kks").chain(select(&reports, "kks-orbit")));
    pass &= ok8;
    line("8", ok8, "at q=1, [L^i_j, L^k_l] = t(δ^k_j L^i_l − δ^i_l L^k_j) for n=2,3; commutative at t=0");

    // 9
    let again = run_suite(&config).expect("default config is valid");
    let strip = |v: &[CheckReport]| v.iter().map(CheckReport::without_timing).collect::<Vec<_>>();
    let ok9 = strip(&reports) == strip(&again)
        && serde_json::to_string(&strip(&reports)).unwrap() == serde_json::to_string(&strip(&again)).unwrap();
    pass &= ok9;
    line("9", ok9, &format!("two default runs with seed {} give identical reports ({} reports)", config.seed, reports.len()));

    failures(&reports);
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
