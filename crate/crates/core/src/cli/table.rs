use serde::Serialize;

use crate::algebra::{F2, Q};
use crate::homology::{betti, fixtures, ring_invariants, HomologyError, SimplicialComplex};
use crate::planners::{
    circle_contraction, circle_planner, contraction_from_planner, even_sphere_planner, odd_sphere_planner, product_planner,
    rpn_planner, torus_contraction, Contraction, Planner,
};
use crate::symsquare::sp2_bound_check;
use crate::verify::{audit_contraction, audit_planner, AuditReport};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub name: String,
    pub pieces: usize,
    pub audit_samples: usize,
    pub violations: usize,
    pub clean: bool,
}

impl Witness {
    fn from_audit(pieces: usize, a: &AuditReport) -> Self {
        Witness { name: a.name.clone(), pieces, audit_samples: a.samples, violations: a.violation_count, clean: a.is_clean() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproductionRow {
    pub space: String,
    pub fixture: String,
    pub quantity: String,
    pub published_value: usize,
    pub lower_bound: usize,
    pub lower_bound_source: String,
    pub witness: Option<Witness>,
    /// pieces − 1 of the witness
    pub upper_bound: Option<usize>,
    /// dcat ≥ 2 certified through classes pulled back from SP²
    pub sp2_certified: Option<bool>,
    /// lower bound and witness meet at the published value
    pub tight: bool,
    /// lower ≤ published, and any witness is clean with pieces − 1 ≥ published
    pub invariants_hold: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableReport {
    pub seed: u64,
    pub audit_samples: usize,
    pub rows: Vec<ReproductionRow>,
    pub pass: bool,
}

enum Wit {
    None,
    Planner(Planner),
    Contraction(Contraction),
}

struct RowDef {
    space: &'static str,
    fixture: &'static str,
    quantity: &'static str,
    published: usize,
    witness: Wit,
    sp2: bool,
    note: Option<&'static str>,
}

fn row_defs() -> Vec<RowDef> {
    let c = |p: Planner| {
        let x0 = p.space().basepoint();
        Wit::Contraction(contraction_from_planner(&p, &x0).expect("basepoint lies in the space"))
    };
    let even = || even_sphere_planner(2).expect("2 is even");
    let odd = || odd_sphere_planner(3).expect("3 is odd");
    let row = |space, fixture, quantity, published, witness| RowDef { space, fixture, quantity, published, witness, sp2: false, note: None };
    vec![
        row("S1", "S1", "dTC", 1, Wit::Planner(circle_planner())),
        row("S1", "S1", "dcat", 1, Wit::Contraction(circle_contraction())),
        row("S2", "S2", "dTC", 2, Wit::Planner(even())),
        row("S2", "S2", "dcat", 1, c(even())),
        row("S3", "S3", "dTC", 1, Wit::Planner(odd())),
        row("S3", "S3", "dcat", 1, c(odd())),
        RowDef {
            note: Some("the planner side covers RPn for every n; rpn(2) is audited"),
            ..row("RP2", "RP2", "dTC", 1, Wit::Planner(rpn_planner(2)))
        },
        row("RP2", "RP2", "dcat", 1, c(rpn_planner(2))),
        RowDef {
            note: Some("no 3-piece planner ships; the product witness has 4 pieces"),
            ..row("T2", "T2", "dTC", 2, Wit::Planner(product_planner(&circle_planner(), &circle_planner())))
        },
        RowDef {
            sp2: true,
            note: Some("no 3-piece contraction ships; the product contraction has 4 pieces"),
            ..row("T2", "T2", "dcat", 2, Wit::Contraction(torus_contraction(2)))
        },
        row("Sigma2", "Sigma2", "dTC", 4, Wit::None),
        RowDef { sp2: true, ..row("Sigma2", "Sigma2", "dcat", 2, Wit::None) },
        row("CP2", "CP2", "dTC", 4, Wit::None),
        row("CP2", "CP2", "dcat", 2, Wit::None),
        row("figure_eight", "figure_eight", "dTC", 2, Wit::None),
    ]
}

/// Lower bound from rational cup-lengths, raised to 1 when H̃(K; ℤ/2) ≠ 0
/// since a non-contractible space has dcat, dTC ≥ 1.
fn lower_bound(k: &SimplicialComplex, quantity: &str) -> Result<(usize, String), HomologyError> {
    let inv = ring_invariants::<Q>(k)?;
    let (rational, what) = if quantity == "dTC" {
        (inv.zero_divisor_cup_length, "rational zero-divisor cup-length")
    } else {
        (inv.cup_length, "rational cup-length")
    };
    let b = betti::<F2>(k);
    let reduced_nonzero = b[0] > 1 || b.iter().skip(1).any(|&x| x > 0);
    if rational == 0 && reduced_nonzero {
        return Ok((1, "not contractible (nonzero mod 2 homology)".into()));
    }
    Ok((rational, what.into()))
}

/// Every row's lower bound is computed from its fixture and every witness is
/// audited with `samples` random inputs.
pub fn reproduction_table(samples: usize, seed: u64) -> Result<TableReport, HomologyError> {
    let mut rows = Vec::new();
    for s in row_defs() {
        let k = fixtures::by_name(s.fixture).expect("registered fixture");
        let (lower_bound, lower_bound_source) = lower_bound(&k, s.quantity)?;
        let witness = match &s.witness {
            Wit::None => None,
            Wit::Planner(p) => Some(Witness::from_audit(p.pieces(), &audit_planner(p, samples, seed))),
            Wit::Contraction(h) => Some(Witness::from_audit(h.pieces(), &audit_contraction(h, samples, seed))),
        };
        let upper_bound = witness.as_ref().map(|w| w.pieces - 1);
        let sp2_certified = if s.sp2 { Some(sp2_bound_check::<Q>(&k)?.certifies_dcat_ge_2) } else { None };
        let tight = upper_bound == Some(lower_bound) && lower_bound == s.published;
        let witness_ok = witness.as_ref().is_none_or(|w| w.clean && w.pieces > s.published);
        let invariants_hold = lower_bound <= s.published && witness_ok && sp2_certified != Some(false);
        rows.push(ReproductionRow {
            space: s.space.into(),
            fixture: s.fixture.into(),
            quantity: s.quantity.into(),
            published_value: s.published,
            lower_bound,
            lower_bound_source,
            witness,
            upper_bound,
            sp2_certified,
            tight,
            invariants_hold,
            note: s.note.map(String::from),
        });
    }
    let pass = rows.iter().all(|r| r.invariants_hold);
    Ok(TableReport { seed, audit_samples: samples, rows, pass })
}
