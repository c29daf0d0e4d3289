//! Acceptance criteria: one PASS/FAIL line per criterion, each with its time
//! limit. A criterion passes only if its suite passes within the limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use segalkit::suites::run_suite;

struct Criterion {
    id: usize,
    suite: &'static str,
    what: &'static str,
    limit: Duration,
}

const fn criterion(id: usize, suite: &'static str, what: &'static str, secs: u64) -> Criterion {
    Criterion {
        id,
        suite,
        what,
        limit: Duration::from_secs(secs),
    }
}

const CRITERIA: [Criterion; 11] = [
    criterion(1, "normal-form", "face/degeneracy composites in Δ^n (n ≤ 4) match monotone maps", 1),
    criterion(2, "slices", "hom(F(k), X) ≅ X_{k,*} levelwise, ≥ 10 bisimplicial sets, k ≤ 3", 10),
    criterion(3, "k-shriek", "k_! preserves 20 random monos; unit is a homology iso below N", 60),
    criterion(4, "coequalizer", "k_!(∂Δ²) equals the face coequalizer at N = 4", 10),
    criterion(5, "counit", "counit and k^! → J are trivial fibrations at bound 3", 120),
    criterion(6, "core", "J(B C) ≅ B(Iso C) for small categories", 60),
    criterion(7, "adjoint-formulas", "t^! slices and t_! generators match their formulas", 120),
    criterion(8, "segal", "discrete nerves are Segal; F(0) complete; F̂(2) not Segal", 60),
    criterion(9, "pullback", "core squares of ≥ 5 Kan fibrations are pullbacks", 60),
    criterion(10, "solver", "lifting solver agrees with enumeration on 100 problems", 120),
    criterion(11, "grothendieck", "Grothendieck laws; bisimplicial/presheaf round trip, N ≤ 3", 30),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_suite(c.suite).expect("known suite");
        let elapsed = start.elapsed();
        let ok = report.passed && elapsed <= c.limit;
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<17} {:>6} checks {:>8.2}s / {:>3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.suite,
            report.checked,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            c.what
        );
        for note in &report.notes {
            println!("       note: {note}");
        }
        for f in report.failures.iter().take(5) {
            println!("       failure: {f}");
        }
        if report.failures.len() > 5 {
            println!("       ... {} more failures", report.failures.len() - 5);
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
