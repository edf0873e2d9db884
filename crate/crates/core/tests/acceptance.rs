//! Acceptance suite: one line per criterion, nonzero exit if any criterion
//! fails. Runs as a plain binary so the lines are printed even on success.

use std::time::{Duration, Instant};

use permorb_core::chars;
use permorb_core::orbifold::Verdict;
use permorb_core::suites::{self, IdentityGrid};
use permorb_core::verify;
use permorb_core::CheckReport;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Vec<CheckReport>,
}

fn determinant_identities() -> Vec<CheckReport> {
    vec![verify::verify_gamma_determinant()]
}

fn leading_terms() -> Vec<CheckReport> {
    vec![verify::verify_leading_terms()]
}

fn weight_one_determinant() -> Vec<CheckReport> {
    vec![verify::verify_det_weight1()]
}

fn weight_one_coefficients() -> Vec<CheckReport> {
    vec![verify::verify_weight1_product_coefficients()]
}

fn oracle_identities() -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = suites::heisenberg_identities(IdentityGrid::default())
        .into_iter()
        .filter(|r| matches!(r.name.as_str(), "associativity_expansion" | "commutator_formula" | "skew_symmetry"))
        .collect();
    out.extend(suites::virasoro_identities(5, 4));
    out
}

fn vanishing() -> Vec<CheckReport> {
    suites::vanishing_suite(12, 10)
}

fn quartic_identity() -> Vec<CheckReport> {
    vec![suites::quartic_product_suite(4, 3)]
}

fn omega_probe() -> Vec<CheckReport> {
    let (r, mut report) = suites::omega_probe(14, 4);
    if r.verdict != Verdict::StabilizedByCutoff {
        report.status = permorb_core::Status::Fail;
    }
    vec![report]
}

fn decomposition() -> Vec<CheckReport> {
    (1..=3).map(|k| chars::decomposition_check(k, 10)).collect()
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "gamma determinant equals the even/odd reference polynomials", budget: Duration::from_secs(30), run: determinant_identities },
        Criterion { id: 2, title: "gamma determinant leading terms 16k m^16/952560", budget: Duration::from_secs(30), run: leading_terms },
        Criterion { id: 3, title: "beta/gamma determinant closed form and f(p) != 0 on 7..=100", budget: Duration::from_secs(5), run: weight_one_determinant },
        Criterion { id: 4, title: "weight-one product coefficients on the even branch", budget: Duration::from_secs(30), run: weight_one_coefficients },
        Criterion { id: 5, title: "associativity expansion, commutator formula, skew symmetry", budget: Duration::from_secs(120), run: oracle_identities },
        Criterion { id: 6, title: "free-boson orbifold vanishing in C2", budget: Duration::from_secs(600), run: vanishing },
        Criterion { id: 7, title: "quartic product identity modulo C2", budget: Duration::from_secs(60), run: quartic_identity },
        Criterion { id: 8, title: "D(omega, omega) stabilizes by cutoff 14", budget: Duration::from_secs(120), run: omega_probe },
        Criterion { id: 9, title: "lattice square decomposition, k = 1..3, n <= 10", budget: Duration::from_secs(10), run: decomposition },
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());

    let mut failed = Vec::new();
    let mut lines = Vec::new();
    for c in criteria.iter().filter(|c| only.is_none_or(|o| o == c.id)) {
        let start = Instant::now();
        let reports = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= c.budget;
        let ok = in_budget && reports.iter().all(CheckReport::passed);
        for r in &reports {
            eprintln!("{r}");
        }
        if !in_budget {
            eprintln!("    over budget: {:.1}s > {}s", elapsed.as_secs_f64(), c.budget.as_secs());
        }
        let line = format!(
            "criterion {}: {} - {} ({:.1}s)",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64()
        );
        println!("{line}");
        lines.push(line);
        if !ok {
            failed.push(c.id);
        }
    }
    println!();
    for l in &lines {
        println!("{l}");
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
