//! Verification suites and their JSON report.

use serde::Serialize;
use serde_json::{json, Value};

use crate::case_studies::{verify_gl2, verify_gln_odd, verify_sl2, verify_un_odd, ScenarioReport};
use crate::char_engine::{
    conjecture_check, enumerate_configs, toral_invariant, Ramification, Status,
};
use crate::error::{Error, Result};
use crate::galois_lattices::{norm_quotient, prasad_torus_identity, TorusExpr, TowerField};
use crate::padic_fields::{
    hilbert_symbol, make_base, omega_quadratic, quadratic_extensions, ElementClass, SquareClass,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const SUITES: [&str; 7] = ["unramified", "sl2", "gl2", "gln", "un", "torus", "hilbert"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = records
            .iter()
            .filter(|r| r.verdict == Verdict::Pass)
            .count();
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            summary: Summary {
                pass,
                fail: records.len() - pass,
            },
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && !self.records.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn record(id: String, inputs: Value, expected: Value, got: Value, ok: bool) -> Record {
    Record {
        id,
        inputs,
        expected,
        got,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    }
}

/// Parameters of a suite run; `None` selects the default sweep.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteArgs {
    pub p: Option<u64>,
    pub n: Option<usize>,
}

fn primes(args: SuiteArgs, default: &[u64]) -> Vec<u64> {
    args.p.map_or_else(|| default.to_vec(), |p| vec![p])
}

fn ranks(args: SuiteArgs, default: &[usize]) -> Vec<usize> {
    args.n.map_or_else(|| default.to_vec(), |n| vec![n])
}

pub fn run_suite(name: &str, args: SuiteArgs) -> Result<Report> {
    let records = match name {
        "unramified" => unramified_records(),
        "sl2" => scenario_records(primes(args, &[3, 5, 7]).into_iter().map(verify_sl2))?,
        "gl2" => scenario_records(primes(args, &[3, 5, 7, 13]).into_iter().map(verify_gl2))?,
        "gln" => scenario_records(primes(args, &[3, 5, 7]).into_iter().flat_map(|p| {
            ranks(args, &[3, 5, 7])
                .into_iter()
                .map(move |n| verify_gln_odd(p, n))
        }))?,
        "un" => scenario_records(primes(args, &[3, 5, 7]).into_iter().flat_map(|p| {
            ranks(args, &[3, 5])
                .into_iter()
                .map(move |n| verify_un_odd(p, n))
        }))?,
        "torus" => torus_records()?,
        "hilbert" => hilbert_records(&primes(args, &[3, 5, 7, 11, 13]))?,
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(run_suite(s, args)?.records);
            }
            all
        }
        other => return Err(Error::Invalid(format!("unknown suite {other}"))),
    };
    Ok(Report::new(name, records))
}

fn unramified_records() -> Vec<Record> {
    enumerate_configs()
        .into_iter()
        .filter(|c| c.ef == Ramification::Unram)
        .map(|c| {
            let v = conjecture_check(&c);
            let ok = v.status == Status::SymbolicEqual && v.product == v.zeta;
            record(
                format!("unramified/{}", c.label()),
                json!(c),
                json!({"status": Status::SymbolicEqual, "product_equals_zeta": true}),
                json!({"status": v.status, "product": v.product.to_string(), "zeta": v.zeta.to_string()}),
                ok,
            )
        })
        .collect()
}

fn scenario_records(
    runs: impl Iterator<Item = Result<Vec<ScenarioReport>>>,
) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for run in runs {
        for s in run? {
            let expected = if s.expect_trivial {
                json!("every character trivial")
            } else {
                json!("kaletha * hakim * prasad = zeta pointwise")
            };
            let failing: Vec<&str> = s
                .checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| c.element.as_str())
                .collect();
            let got = json!({
                "elements": s.checks.len(),
                "failing_elements": failing,
                "side_checks": s.side_checks,
            });
            out.push(record(
                s.id.clone(),
                json!({"p": s.p, "config": s.config}),
                expected,
                got,
                s.passed(),
            ));
        }
    }
    Ok(out)
}

fn torus_records() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for s in TorusExpr::catalog() {
        for l in TowerField::ALL {
            let v = match prasad_torus_identity(&s, l) {
                Err(Error::Unsupported) => continue,
                other => other?,
            };
            out.push(record(
                format!("torus/{}/{}", s.name(), l.name()),
                json!({"torus": s.name(), "extension": l.name()}),
                json!("|ker res| = |coker of the dual map|"),
                json!(v),
                v.equal,
            ));
        }
    }
    let spots = [
        (TorusExpr::Gm(TowerField::F), 2),
        (TorusExpr::u1(TowerField::E, TowerField::F), 1),
        (TorusExpr::u1(TowerField::E1, TowerField::F), 2),
    ];
    for (s, order) in spots {
        let g = norm_quotient(&s, TowerField::E)?;
        out.push(record(
            format!("norm-quotient/{}/E", s.name()),
            json!({"torus": s.name(), "extension": "E"}),
            json!(order),
            json!(g.order()),
            g.order() == order,
        ));
    }
    Ok(out)
}

fn hilbert_records(primes: &[u64]) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let classes = SquareClass::all();
    for &p in primes {
        let f = make_base(p)?;
        let h = |a, b| hilbert_symbol(&f, a, b);
        let minus_one = f.minus_one();
        let mut bad = Vec::new();
        for a in classes {
            for b in classes {
                if h(a, b) != h(b, a) {
                    bad.push(format!("symmetry ({}, {})", a.name(), b.name()));
                }
                for c in classes {
                    if h(a, b.mul(c)) != h(a, b) * h(a, c) {
                        bad.push(format!(
                            "bilinearity ({}, {}, {})",
                            a.name(),
                            b.name(),
                            c.name()
                        ));
                    }
                }
            }
            if h(a, minus_one.mul(a)) != 1 {
                bad.push(format!("(a, -a) at {}", a.name()));
            }
            if !a.is_trivial() && classes.iter().all(|&b| h(a, b) == 1) {
                bad.push(format!("degenerate at {}", a.name()));
            }
        }
        out.push(record(
            format!("hilbert/axioms/p={p}"),
            json!({"p": p}),
            json!([]),
            json!(bad),
            bad.is_empty(),
        ));

        let mut bad = Vec::new();
        for ext in quadratic_extensions(&f) {
            for v in 0..4i64 {
                for u in [false, true] {
                    let t = ElementClass::new(v, u);
                    if omega_quadratic(&ext, t) != h(t.square_class(), ext.disc) {
                        bad.push(format!("ω at disc {} v={v} u={u}", ext.disc.name()));
                    }
                }
            }
        }
        out.push(record(
            format!("hilbert/omega/p={p}"),
            json!({"p": p}),
            json!([]),
            json!(bad),
            bad.is_empty(),
        ));

        let mut bad = Vec::new();
        for a in classes.into_iter().filter(|a| !a.is_trivial()) {
            for b in classes {
                if toral_invariant(&f, a, b)? != h(a, b) {
                    bad.push(format!("toral ({}, {})", a.name(), b.name()));
                }
            }
        }
        out.push(record(
            format!("hilbert/toral/p={p}"),
            json!({"p": p}),
            json!([]),
            json!(bad),
            bad.is_empty(),
        ));
    }
    Ok(out)
}
