//! Plain-text rendering of reports. JSON output goes through serde.

use std::fmt::Write as _;

use crate::classify::{ClassificationReport, Outcome, RouteVerdict, TheoremReport};
use crate::enumerate::{CensusMode, CensusReport, SearchOutcome};

fn route_field(out: &mut String, v: Option<&RouteVerdict>, label: &str) {
    match v {
        Some(v) => write!(out, " {label}={}", v.holds).unwrap(),
        None => write!(out, " {label}=skipped").unwrap(),
    }
}

pub fn classification_text(report: &ClassificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "order: {}", report.order).unwrap();
    for c in &report.classes {
        write!(out, "{:<20}", c.class.name()).unwrap();
        route_field(&mut out, Some(&c.definitional), "definitional");
        route_field(&mut out, Some(&c.subset_singleton), "subset-1");
        route_field(&mut out, c.subset_all.as_ref(), "subset-2");
        route_field(&mut out, Some(&c.fuzzy), "fuzzy");
        writeln!(out, " agree={}", c.routes_agree).unwrap();

        let v = &c.definitional;
        if v.holds {
            let list: Vec<String> = v
                .witnesses
                .iter()
                .filter_map(|w| match &w.outcome {
                    Outcome::Holds { witnesses } => Some(format!(
                        "{}:{}",
                        w.element,
                        witnesses
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    )),
                    Outcome::Fails { .. } => None,
                })
                .collect();
            writeln!(out, "  witnesses {}", list.join(" ")).unwrap();
        } else if let Some(a) = v.failing_element() {
            writeln!(out, "  fails at {a}").unwrap();
        }
    }
    out
}

pub fn theorem_text(report: &TheoremReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "order: {} trials: {} seed: {}",
        report.order, report.trials, report.seed
    )
    .unwrap();
    for c in &report.classes {
        write!(
            out,
            "{:<20} verdict={} agree={} random_violations={}",
            c.class.name(),
            c.verdict,
            c.routes_agree,
            c.random_violations
        )
        .unwrap();
        if let Some(confirmed) = c.point_violation_confirmed {
            write!(out, " point_violation_confirmed={confirmed}").unwrap();
        }
        writeln!(out, " {}", if c.passed { "PASS" } else { "FAIL" }).unwrap();
        if let Some(f) = &c.counterexample {
            writeln!(out, "  counterexample f = {f}").unwrap();
        }
    }
    writeln!(out, "result: {}", if report.passed { "pass" } else { "fail" }).unwrap();
    out
}

pub fn census_text(report: &CensusReport) -> String {
    let mut out = String::new();
    writeln!(out, "order: {}", report.order).unwrap();
    match report.mode {
        CensusMode::Exhaustive => writeln!(out, "mode: exhaustive").unwrap(),
        CensusMode::Sampled { count, seed } => {
            writeln!(out, "mode: sampled count={count} seed={seed}").unwrap()
        }
    }
    writeln!(out, "tables: {}", report.tables_seen).unwrap();
    writeln!(out, "hypersemigroups: {}", report.hypersemigroups).unwrap();
    for c in &report.per_class {
        writeln!(out, "class {}: {}", c.class.name(), c.count).unwrap();
    }
    for c in &report.combinations {
        let names: Vec<&str> = c.classes.iter().map(|c| c.name()).collect();
        let label = if names.is_empty() {
            "none".to_string()
        } else {
            names.join("+")
        };
        writeln!(out, "combination {:05b} {label}: {}", c.mask, c.count).unwrap();
    }
    writeln!(
        out,
        "left+right quasi-regular but not semisimple: {}",
        report.quasi_regular_not_semisimple
    )
    .unwrap();
    writeln!(out, "route disagreements: {}", report.route_disagreements).unwrap();
    if let Some(table) = &report.first_disagreement {
        writeln!(out, "first disagreement:").unwrap();
        out.push_str(table);
    }
    out
}

pub fn search_text(outcome: &SearchOutcome) -> String {
    let mut out = String::new();
    writeln!(out, "order: {}", outcome.order).unwrap();
    writeln!(out, "examined: {}", outcome.examined).unwrap();
    match &outcome.finding {
        None => writeln!(out, "no divergence found").unwrap(),
        Some(f) => {
            writeln!(
                out,
                "divergence: {} definitional={} fuzzy_points={}",
                f.class.name(),
                f.definitional,
                f.fuzzy_points
            )
            .unwrap();
            if let Some(s) = &f.violating_subset {
                writeln!(out, "violating f = {s}").unwrap();
            }
            out.push_str(&f.table);
        }
    }
    out
}
