//! One pass/fail line per acceptance criterion, with timings. Exits nonzero
//! when any criterion fails.

use std::time::{Duration, Instant};

use dtc_core::algebra::{F2, Q};
use dtc_core::cli::{reproduction_table, ReproductionRow};
use dtc_core::homology::{fixtures, ring_invariants};
use dtc_core::planners::planner_by_name;
use dtc_core::symsquare::{diagonal_check, dold_check, sp2_bound_check, SymmetricSquare};
use dtc_core::verify::{
    audit_planner, branch_cut_circle_planner, continuity_profile, metric_axiom_suite, ContinuitySettings, MetricSource,
};

const SEED: u64 = 0;
const PLANNERS: [&str; 7] =
    ["rpn(2)", "rpn(3)", "circle", "odd_sphere(3)", "even_sphere(2)", "group_translation(T2)", "product(circle,circle)"];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(t: Duration, limit: f64) -> bool {
    t.as_secs_f64() < limit
}

fn lp_metric_suite() -> Outcome {
    let t = Instant::now();
    let r = metric_axiom_suite(&MetricSource::RandomRational { points: 4 }, 1000, 4, SEED);
    let el = t.elapsed();
    Outcome {
        pass: r.is_clean() && within(el, 10.0),
        detail: format!(
            "1000 ensembles, oracle violations {}, LP violations {}, {:.2}s (< 10s)",
            r.oracle_violations,
            r.lp_violations,
            el.as_secs_f64()
        ),
    }
}

fn audits() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for name in PLANNERS {
        let r = audit_planner(&planner_by_name(name).unwrap(), 10_000, SEED);
        if !r.is_clean() {
            bad.push(format!("{name}: {}", r.violation_count));
        }
    }
    let el = t.elapsed();
    Outcome {
        pass: bad.is_empty() && within(el, 60.0),
        detail: format!("7 planners x 10^4 samples, violations [{}], {:.2}s (< 60s)", bad.join(", "), el.as_secs_f64()),
    }
}

fn continuity() -> Outcome {
    let t = Instant::now();
    let settings = ContinuitySettings { seed: SEED, ..ContinuitySettings::default() };
    let mut parts = Vec::new();
    let mut pass = true;
    for name in PLANNERS {
        let p = continuity_profile(&planner_by_name(name).unwrap(), &settings).unwrap();
        let ok = p.non_increasing() && p.finest() < 0.05;
        pass &= ok;
        parts.push(format!("{name} {:.3}{}", p.finest(), if ok { "" } else { " FAIL" }));
    }
    let cut = continuity_profile(&branch_cut_circle_planner(), &settings).unwrap();
    let cut_ok = cut.moduli.iter().all(|&m| m > 0.5);
    pass &= cut_ok;
    parts.push(format!("branch_cut min {:.3}{}", cut.moduli.iter().cloned().fold(f64::INFINITY, f64::min), if cut_ok { "" } else { " FAIL" }));
    Outcome { pass, detail: format!("modulus at 0.025 (< 0.05): {}; {:.1}s", parts.join(", "), t.elapsed().as_secs_f64()) }
}

fn cup_lengths() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (name, cl) in [("Sigma2", 2), ("T2", 2), ("CP2", 2), ("S2", 1)] {
        let got = ring_invariants::<Q>(&fixtures::by_name(name).unwrap()).unwrap().cup_length;
        if got != cl {
            bad.push(format!("cl({name}) = {got}"));
        }
    }
    for (name, zcl) in [("S2", 2), ("S3", 1), ("Sigma2", 4), ("CP2", 4), ("figure_eight", 2), ("T2", 2)] {
        let got = ring_invariants::<Q>(&fixtures::by_name(name).unwrap()).unwrap().zero_divisor_cup_length;
        if got != zcl {
            bad.push(format!("zcl({name}) = {got}"));
        }
    }
    let rp2 = ring_invariants::<F2>(&fixtures::projective_plane()).unwrap().cup_length;
    if rp2 != 2 {
        bad.push(format!("cl_Z2(RP2) = {rp2}"));
    }
    let el = t.elapsed();
    Outcome {
        pass: bad.is_empty() && within(el, 120.0),
        detail: format!("11 values, mismatches [{}], {:.2}s (< 120s)", bad.join(", "), el.as_secs_f64()),
    }
}

fn sp2_suite() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (name, expected) in [("S1", vec![1, 1]), ("S2", vec![1, 0, 1, 0, 1])] {
        let sp = SymmetricSquare::new(&fixtures::by_name(name).unwrap(), None).unwrap();
        let b = sp.betti::<Q>();
        if b != expected || !sp.is_complete() {
            bad.push(format!("betti SP2({name}) = {b:?}"));
        }
    }
    for name in ["S1", "S2", "RP2"] {
        let k = fixtures::by_name(name).unwrap();
        if !dold_check::<Q>(&k, 0).unwrap().pass {
            bad.push(format!("xi2 over Q on {name}"));
        }
        if !dold_check::<F2>(&k, 0).unwrap().pass {
            bad.push(format!("xi2 over Z2 on {name}"));
        }
    }
    for name in ["S1", "S2"] {
        if !diagonal_check::<Q>(&fixtures::by_name(name).unwrap()).unwrap().surjective {
            bad.push(format!("delta2* over Q on {name}"));
        }
    }
    for name in ["Sigma2", "T2"] {
        if !sp2_bound_check::<Q>(&fixtures::by_name(name).unwrap()).unwrap().certifies_dcat_ge_2 {
            bad.push(format!("bound check on {name}"));
        }
    }
    let el = t.elapsed();
    Outcome {
        pass: bad.is_empty() && within(el, 300.0),
        detail: format!("betti, 6 split-mono, 2 surjectivity, 2 bound checks, failures [{}], {:.2}s (< 300s)", bad.join(", "), el.as_secs_f64()),
    }
}

fn table() -> Outcome {
    let t = Instant::now();
    let report = reproduction_table(2000, SEED).unwrap();
    let row = |space: &str| -> &ReproductionRow {
        report.rows.iter().find(|r| r.space == space && r.quantity == "dTC").expect("row present")
    };
    let pieces = |r: &ReproductionRow| r.witness.as_ref().filter(|w| w.clean).map(|w| w.pieces);
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    let rp2 = row("RP2");
    check(rp2.lower_bound == 1 && pieces(rp2) == Some(2) && rp2.tight, "RP2: dTC = 1 with a 2-piece witness");
    let s3 = row("S3");
    check(s3.lower_bound == 1 && pieces(s3) == Some(2) && s3.tight, "S3: dTC = 1 with a 2-piece witness");
    let s2 = row("S2");
    check(s2.lower_bound == 2 && pieces(s2) == Some(3) && s2.tight, "S2: dTC = 2, lower 2, 3 pieces");
    let t2 = row("T2");
    check(t2.lower_bound == 2 && pieces(t2) == Some(4) && t2.published_value == 2 && !t2.tight, "T2: lower 2, 4-piece product witness, not tight");
    let sigma = row("Sigma2");
    check(sigma.lower_bound == 4 && sigma.published_value == 4 && sigma.witness.is_none(), "Sigma2: dTC = 4 from bounds");
    check(report.rows.iter().all(|r| r.invariants_hold), "all rows consistent");
    Outcome {
        pass: bad.is_empty() && report.pass,
        detail: format!("{} rows, failures [{}], {:.2}s", report.rows.len(), bad.join("; "), t.elapsed().as_secs_f64()),
    }
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("LP metric suite", lp_metric_suite),
        ("planner audits", audits),
        ("continuity", continuity),
        ("cup-lengths", cup_lengths),
        ("symmetric-square suite", sp2_suite),
        ("reproduction table", table),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {} {}: {} ({})", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
