use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use quadchar::char_engine::{enumerate_configs, realizable, untabulated};
use quadchar::root_orbits::{
    classify_orbits, op_twist, realized_towers, table5_check, ComparisonRow, Degree,
    GaloisQuotient, SignedPerm, Symmetry, TwistedRootSystem,
};
use quadchar::tables::builtin_tables;

fn degree(s: &str) -> Degree {
    match s {
        "1" => Degree::One,
        "2 ur" => Degree::TwoUr,
        "2 r" => Degree::TwoR,
        _ => panic!("unknown degree {s}"),
    }
}

fn symmetry(s: &str) -> Symmetry {
    match s {
        "asym" => Symmetry::Asym,
        "sym ur" => Symmetry::SymUr,
        "sym r" => Symmetry::SymR,
        _ => panic!("unknown symmetry {s}"),
    }
}

fn transcribed_comparison() -> Vec<ComparisonRow> {
    let t = builtin_tables().into_iter().find(|t| t.id == 5).unwrap();
    t.rows
        .iter()
        .map(|r| ComparisonRow {
            degree: degree(&r[0]),
            sym_f: symmetry(&r[1]),
            sym_e: symmetry(&r[2]),
            sym_fop: symmetry(&r[3]),
            degree_op: degree(&r[4]),
        })
        .collect()
}

#[test]
fn every_comparison_row_is_realized_and_agrees() {
    let expected = transcribed_comparison();
    let report = table5_check(&expected);
    assert!(report.unrealized.is_empty(), "{:?}", report.unrealized);
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    assert_eq!(report.rows, expected);
}

#[test]
fn realized_classes_are_the_enumerated_ones_plus_one() {
    let realized: BTreeSet<_> = realized_towers().into_iter().map(|(c, _)| c).collect();
    let enumerated: BTreeSet<_> = enumerate_configs()
        .into_iter()
        .map(|c| (c.degree, c.sym_f, c.sym_e, c.ef))
        .collect();
    let extra: Vec<_> = realized.difference(&enumerated).copied().collect();
    assert!(enumerated.is_subset(&realized));
    assert_eq!(extra.len(), 1);
    let (d, f, e, ef) = extra[0];
    assert!(untabulated(d, f, e, ef));
    for (d, f, e, ef) in &realized {
        assert!(realizable(*d, *f, *e, *ef));
    }
}

fn a1_pair_perms() -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for p in [vec![0, 1], vec![1, 0]] {
        for s in [[1i8, 1], [1, -1], [-1, 1], [-1, -1]] {
            out.push(SignedPerm::new(p.clone(), s.to_vec()).unwrap());
        }
    }
    out
}

fn a2_perms() -> Vec<SignedPerm> {
    // Coordinate shifts of e_0, e_1, e_2 and their negatives.
    (0..3)
        .flat_map(|k| [SignedPerm::shift(3, k), SignedPerm::shift(3, k).negated()])
        .collect()
}

fn a2_roots() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut v = vec![0; 3];
                v[i] = 1;
                v[j] = -1;
                out.push(v);
            }
        }
    }
    out
}

fn system(
    a2: bool,
    orders: [u32; 2],
    a: usize,
    b: usize,
    off: [bool; 2],
    inertia: usize,
) -> Option<TwistedRootSystem> {
    let (perms, roots) = if a2 {
        (a2_perms(), a2_roots())
    } else {
        (
            a1_pair_perms(),
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        )
    };
    let q = GaloisQuotient::from_abelian(
        &orders,
        &[
            perms[a % perms.len()].clone(),
            perms[b % perms.len()].clone(),
        ],
        &off,
    )
    .ok()?;
    let x = inertia % q.order();
    TwistedRootSystem::new(roots, q, &[x]).ok()
}

/// Every valid system over the searched parameters.
fn all_systems() -> &'static [TwistedRootSystem] {
    static SYSTEMS: OnceLock<Vec<TwistedRootSystem>> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        let mut out = Vec::new();
        for a2 in [false, true] {
            for orders in [[1u32, 2], [1, 4], [2, 2], [2, 4], [3, 2], [6, 2], [4, 4]] {
                for a in 0..8 {
                    for b in 0..8 {
                        for off in [[false, true], [true, false], [true, true]] {
                            for x in 0..(orders[0] * orders[1]) as usize {
                                out.extend(system(a2, orders, a, b, off, x));
                            }
                        }
                    }
                }
            }
        }
        out
    })
}

fn arb_system() -> impl Strategy<Value = &'static TwistedRootSystem> {
    (0..all_systems().len()).prop_map(|i| &all_systems()[i])
}

fn e_orbit(r: &TwistedRootSystem, alpha: &[i64]) -> BTreeSet<Vec<i64>> {
    let g = r.group();
    (0..g.order())
        .filter(|&h| g.in_e(h))
        .map(|h| g.action(h).apply(alpha))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn symmetric_over_e_implies_symmetric_over_f(sys in arb_system()) {
        for rec in classify_orbits(sys) {
            prop_assert!(!rec.sym_e.is_sym() || rec.sym_f.is_sym());
        }
    }

    #[test]
    fn orbits_partition_the_roots(sys in arb_system()) {
        let recs = classify_orbits(sys);
        let q = sys.group().order();
        let mut union = BTreeSet::new();
        let mut total = 0;
        for rec in &recs {
            prop_assert_eq!(q % rec.orbit.len(), 0);
            total += rec.orbit.len();
            union.extend(rec.orbit.iter().cloned());
        }
        let all: BTreeSet<Vec<i64>> = sys.roots().iter().cloned().collect();
        prop_assert_eq!(total, all.len());
        prop_assert_eq!(union, all);
    }

    #[test]
    fn twisting_is_an_involution(sys in arb_system()) {
        let back = op_twist(&op_twist(sys));
        for g in 0..sys.group().order() {
            prop_assert_eq!(sys.group().action(g), back.group().action(g));
        }
        prop_assert_eq!(classify_orbits(sys), classify_orbits(&back));
    }

    #[test]
    fn twisting_preserves_e_orbits(sys in arb_system()) {
        let op = op_twist(sys);
        for alpha in sys.roots() {
            prop_assert_eq!(e_orbit(sys, alpha), e_orbit(&op, alpha));
        }
    }

    #[test]
    fn twisting_keeps_the_field_of_plus_minus(sys in arb_system()) {
        for alpha in sys.roots() {
            let f = sys.fields_of(alpha);
            prop_assert_eq!(&f.f_pm, &f.f_pm_op);
        }
    }
}
