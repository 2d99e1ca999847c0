//! Acceptance criteria: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chabauty_core::suites::{self, SuiteConfig, VerifyReport};

struct Criterion {
    id: u32,
    name: &'static str,
    budget_s: f64,
    run: fn(&SuiteConfig) -> Vec<VerifyReport>,
}

fn one(name: &str, cfg: &SuiteConfig) -> VerifyReport {
    suites::run_suite(name, cfg).unwrap_or_else(|e| panic!("suite {name}: {e}"))
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, name: "sl3 classification of 1000 random elements", budget_s: 10.0, run: |c| vec![one("classify-sl3", c)] },
    Criterion { id: 2, name: "sl4 classification of 1000 random subalgebras", budget_s: 30.0, run: |c| vec![one("classify-sl4", c)] },
    Criterion { id: 3, name: "Cartan limits in the four regimes", budget_s: 20.0, run: |c| vec![one("lemma53", c)] },
    Criterion { id: 4, name: "orbit limits of the non-open orbits", budget_s: 10.0, run: |c| vec![one("lemma57", c)] },
    Criterion { id: 5, name: "explicit sequences for the ten sl4 types", budget_s: 60.0, run: |c| vec![one("thm62", c)] },
    Criterion { id: 6, name: "normalizer and orbit dimensions", budget_s: 1.0, run: |c| vec![one("prop56", c)] },
    Criterion { id: 7, name: "real triangularization equivalence", budget_s: 30.0, run: |c| vec![one("prop33", c)] },
    Criterion { id: 8, name: "cell census, attaching degrees and pi1", budget_s: 5.0, run: |c| vec![one("cells", c), one("degrees", c)] },
    Criterion { id: 9, name: "dimension gap and abelian block construction", budget_s: 5.0, run: |c| vec![one("lemma34", c)] },
    Criterion { id: 10, name: "pi1 cardinality of the Cartan space", budget_s: 1.0, run: |c| vec![one("pi1card", c)] },
    Criterion { id: 11, name: "sl2 boundary lines and closure criterion", budget_s: 5.0, run: |c| vec![one("thm41-sl2", c), one("prop32-sl2", c)] },
    Criterion { id: 12, name: "continuity and injectivity of phi", budget_s: 30.0, run: |c| vec![one("continuity", c)] },
];

fn main() -> ExitCode {
    let seed = std::env::var("CHABAUTY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let cfg = SuiteConfig { seed, ..Default::default() };
    println!("acceptance suite, seed {seed}");
    let mut failed = 0;
    let total = Instant::now();
    for c in &CRITERIA {
        let t = Instant::now();
        let reports = (c.run)(&cfg);
        let elapsed: Duration = t.elapsed();
        let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
        let bad: Vec<String> = reports.iter().flat_map(|r| r.failures().map(|f| format!("{}/{}", r.suite, f.id))).collect();
        let in_budget = elapsed.as_secs_f64() < c.budget_s;
        let ok = bad.is_empty() && reports.iter().all(|r| r.all_pass) && in_budget;
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {:>2}: {} ({} cases, {:.2}s of {:.0}s budget){}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            cases,
            elapsed.as_secs_f64(),
            c.budget_s,
            if bad.is_empty() { String::new() } else { format!(" failing: {}", bad.join(", ")) },
        );
    }
    println!("{} of 12 criteria passed in {:.2}s", 12 - failed, total.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
