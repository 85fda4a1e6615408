//! The ten acceptance criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use skdv_cli::{run, CheckReport, Settings, Status, Target};

struct Criterion {
    label: &'static str,
    budget: Duration,
    runs: Vec<(Target, Settings)>,
}

fn line(k: usize, c: &Criterion, reports: &[CheckReport], elapsed: Duration) -> (bool, String) {
    let within = elapsed <= c.budget;
    let ok = within && reports.iter().all(|r| r.status == Status::Pass);
    let n: usize = reports.iter().map(|r| r.comparisons.len()).sum();
    let bad: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().into_iter().map(move |f| format!("{}: {} expected {} got {}", r.target, f.item, f.expected, f.got)))
        .chain(reports.iter().filter(|r| r.status == Status::Inconclusive).flat_map(|r| r.notes.clone()))
        .collect();
    let mut s = format!(
        "{} criterion {k:>2} {}: {n} comparisons, {:.1} s (budget {} s)",
        if ok { "PASS" } else { "FAIL" },
        c.label,
        elapsed.as_secs_f64(),
        c.budget.as_secs()
    );
    if !within {
        s.push_str(", over budget");
    }
    for b in bad {
        s.push_str(&format!("\n       {b}"));
    }
    (ok, s)
}

#[test]
fn acceptance() {
    let base = Settings::default();
    let generic = Settings { generic_h: true, ..base.clone() };
    let criteria = vec![
        Criterion { label: "invariance", budget: Duration::from_secs(10), runs: vec![(Target::Invariants, base.clone())] },
        Criterion { label: "reversibility", budget: Duration::from_secs(10), runs: vec![(Target::Reversibility, base.clone())] },
        Criterion {
            label: "singularity patterns",
            budget: Duration::from_secs(60),
            runs: vec![(Target::Singularities, base.clone())],
        },
        Criterion {
            label: "multiplicity tables",
            budget: Duration::from_secs(300),
            runs: vec![(Target::Multiplicities, generic.clone()), (Target::Multiplicities, base.clone())],
        },
        Criterion { label: "proper classes", budget: Duration::from_secs(300), runs: vec![(Target::Classes, base.clone())] },
        Criterion { label: "pull-back matrix", budget: Duration::from_secs(300), runs: vec![(Target::Matrix, base.clone())] },
        Criterion { label: "growth certificate", budget: Duration::from_secs(300), runs: vec![(Target::Growth, base.clone())] },
        Criterion {
            label: "measured bidegrees",
            budget: Duration::from_secs(600),
            runs: vec![(Target::StabilityCertificate, base.clone())],
        },
        Criterion { label: "reduced-map degrees", budget: Duration::from_secs(600), runs: vec![(Target::PsiGrowth, base.clone())] },
        Criterion {
            label: "invariant recovery",
            budget: Duration::from_secs(600),
            runs: vec![(Target::InvariantFinder, generic.clone()), (Target::InvariantFinder, base.clone())],
        },
    ];
    let mut lines = Vec::new();
    let mut all = true;
    for (k, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let reports: Vec<CheckReport> = c.runs.iter().map(|(target, s)| run(*target, s)).collect();
        let (ok, l) = line(k + 1, c, &reports, t.elapsed());
        for r in &reports {
            for n in &r.notes {
                eprintln!("   [{}] {n}", r.target);
            }
        }
        println!("{l}");
        lines.push(l);
        all &= ok;
    }
    assert!(all, "\n{}", lines.join("\n"));
}
