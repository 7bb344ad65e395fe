//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when any criterion is red. The reasons behind known red
//! criteria are documented in the README.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use sphereprod::certify::{certify_many, Certificate, Target};
use sphereprod::verify::VerificationReport;

type Pick = fn(&VerificationReport) -> bool;

struct Criterion {
    title: &'static str,
    targets: Vec<Target>,
    /// Which reports of those targets count; `None` means all of them.
    pick: Option<Pick>,
}

fn all_of(targets: Vec<Target>) -> (Vec<Target>, Option<Pick>) {
    (targets, None)
}

fn criteria() -> Vec<Criterion> {
    let balanced = |ds: &[usize]| -> Vec<Target> {
        ds.iter()
            .map(|&d| Target::BalancedProduct {
                d,
                intermediates: false,
            })
            .collect()
    };
    let mut list = Vec::new();
    let mut add = |title, (targets, pick): (Vec<Target>, Option<Pick>)| list.push(Criterion { title, targets, pick });

    add(
        "cs construction, d = 5, 6",
        all_of(vec![Target::CsProduct { d: 5 }, Target::CsProduct { d: 6 }]),
    );
    add(
        "shelling certificates, d = 5, 6, 7, i <= ceil((d+1)/2)",
        all_of(
            (5..=7)
                .flat_map(|d| (1..=(d + 2) / 2).map(move |i| Target::Shelling { d, i }))
                .collect(),
        ),
    );
    add(
        "cycle antipodality, d = 5, 6, 7",
        all_of((5..=7).map(|d| Target::Cycle { d }).collect()),
    );
    add(
        "balanced f-numbers, d = 3..6",
        (
            balanced(&[3, 4, 5, 6]),
            Some(|r| matches!(r.check.as_str(), "construct" | "f0" | "f1" | "f-top")),
        ),
    );
    add(
        "balanced topology, d = 3..6",
        (
            balanced(&[3, 4, 5, 6]),
            Some(|r| {
                matches!(
                    r.check.as_str(),
                    "construct" | "two-octahedra" | "pseudomanifold" | "vertex-links" | "balanced" | "homology"
                )
            }),
        ),
    );
    let mut symmetry = balanced(&[4, 5]);
    symmetry.push(Target::CsSymmetry { d: 5 });
    add(
        "symmetry, d = 4, 5 and cs product d = 5",
        (
            symmetry,
            Some(|r| {
                let c = r.check.as_str();
                c.starts_with("automorphism-")
                    || c.starts_with("non-edges-")
                    || matches!(c, "construct" | "relation" | "group-order" | "vertex-transitive")
            }),
        ),
    );
    add(
        "B(i,d) properties, d <= 7",
        all_of(
            (3..=7)
                .flat_map(|d| (1..d).map(move |i| Target::BComplex { i, d }))
                .collect(),
        ),
    );
    add(
        "inductive machine",
        all_of(vec![
            Target::Inductive { i: 1, d: 4 },
            Target::Inductive { i: 1, d: 5 },
            Target::Inductive { i: 2, d: 5 },
            Target::InductiveCircle { d: 4 },
            Target::InductiveCircle { d: 5 },
        ]),
    );
    add(
        "homology engine",
        all_of(vec![Target::Engine { samples: 1000, seed: 0 }]),
    );
    list
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria = criteria();
    let mut unique: Vec<Target> = Vec::new();
    for t in criteria.iter().flat_map(|c| &c.targets) {
        if !unique.contains(t) {
            unique.push(t.clone());
        }
    }
    let results: BTreeMap<String, Result<Certificate, String>> = unique
        .iter()
        .zip(certify_many(&unique))
        .map(|(t, r)| (t.to_string(), r.map_err(|e| e.to_string())))
        .collect();

    let mut red = 0;
    for (n, c) in criteria.iter().enumerate() {
        let mut failure: Option<String> = None;
        let mut checked = 0;
        let mut failed = 0;
        for t in &c.targets {
            match &results[&t.to_string()] {
                Err(e) => failure = failure.or(Some(format!("{t}: undecided ({e})"))),
                Ok(cert) => {
                    for r in cert.reports.iter().filter(|r| c.pick.is_none_or(|p| p(r))) {
                        checked += 1;
                        if !r.passed {
                            failed += 1;
                            failure = failure.or_else(|| Some(format!("{t}: {r}")));
                        }
                    }
                }
            }
        }
        // every pipeline cross-checks Euler characteristics; they count toward the engine
        if n == 8 {
            for (t, cert) in results.iter().filter_map(|(t, r)| r.as_ref().ok().map(|c| (t, c))) {
                for r in cert.reports.iter().filter(|r| r.check.ends_with("-euler")) {
                    checked += 1;
                    if !r.passed {
                        failed += 1;
                        failure = failure.or_else(|| Some(format!("{t}: {r}")));
                    }
                }
            }
        }
        if checked == 0 {
            failure = failure.or(Some("no checks ran".into()));
        }
        match failure {
            None => println!("PASS [{}] {} ({checked} checks)", n + 1, c.title),
            Some(why) => {
                red += 1;
                println!(
                    "FAIL [{}] {} -- {failed} of {checked} checks red, first: {why}",
                    n + 1,
                    c.title
                );
            }
        }
    }
    println!(
        "{} of {} criteria pass ({:.1} s)",
        criteria.len() - red,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if red == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
