//! End-to-end oracle: the hand-built case tables against the blind search.

use immersed_morse::catalog::{
    build_single_curve_catalog, build_two_curve_catalog, cross_validate, diff_keys,
    enumerate_structures, structure_canonical, validate_structure, GroupRef,
};
use immersed_morse::distinguish::{stratum_cycle, StratumRef};
use immersed_morse::reeb::{betti, validate_reeb};
use immersed_morse::strata::{
    closure_surface, enumerate_pairings, enumerate_trees, feasible_stratifications,
    min_critical_points,
};

#[test]
fn single_curve_table_has_thirteen_classes() {
    let entries = build_single_curve_catalog();
    assert_eq!(entries.len(), 13);
    assert_eq!(entries.iter().filter(|e| e.case_label.contains("/pair-")).count(), 7);
    assert_eq!(entries.iter().filter(|e| e.case_label.contains("/loop-")).count(), 6);
}

#[test]
fn two_curve_table_has_eleven_classes() {
    let entries = build_two_curve_catalog();
    assert_eq!(entries.len(), 11);
    assert_eq!(entries.iter().filter(|e| e.case_label.contains("/spider/")).count(), 8);
    assert_eq!(entries.iter().filter(|e| e.case_label.contains("/chain/")).count(), 3);
}

#[test]
fn search_agrees_with_tables_at_minimal_budget() {
    let report = cross_validate(4);
    for r in &report.reports {
        assert!(
            r.matches(),
            "stratification {}:\n  missing in search: {:?}\n  unexpected in search: {:?}",
            r.stratification,
            r.missing_in_search,
            r.unexpected_in_search,
        );
        let expected = match (r.curves, r.stratification.contains("0-1")) {
            (1, _) => 13,
            _ if r.detailed.len() == 8 => 8,
            _ => 3,
        };
        assert_eq!(r.searched.len(), expected, "{}", r.stratification);
    }
    assert!(report.pass);
    assert_eq!(report.reports.len(), 3);
    let total: usize = report.reports.iter().map(|r| r.searched.len()).sum();
    assert_eq!(total, 24);
}

#[test]
fn corrupted_table_is_flagged() {
    let entries = build_single_curve_catalog();
    let full: Vec<String> = entries.iter().map(|e| e.key.clone()).collect();
    let mut dropped = full.clone();
    let lost = dropped.remove(4);
    let (missing, unexpected) = diff_keys(&dropped, &full);
    assert_eq!((missing.len(), unexpected.len()), (0, 1));
    assert_eq!(unexpected, vec![lost.clone()]);

    let mut altered = full.clone();
    altered[7] = format!("{}-tampered", altered[7]);
    let (missing, unexpected) = diff_keys(&altered, &full);
    assert_eq!(missing, vec![altered[7].clone()]);
    assert_eq!(unexpected, vec![full[7].clone()]);
}

#[test]
fn catalogs_are_deterministic() {
    let a = build_single_curve_catalog();
    let b = build_single_curve_catalog();
    assert!(a.iter().zip(&b).all(|(x, y)| x.key == y.key && x.case_label == y.case_label));
    let a = build_two_curve_catalog();
    let b = build_two_curve_catalog();
    assert!(a.iter().zip(&b).all(|(x, y)| x.key == y.key && x.case_label == y.case_label));

    for ct in feasible_stratifications(4) {
        let r1: Vec<String> = enumerate_structures(&ct, 4).iter().map(structure_canonical).collect();
        let r2: Vec<String> = enumerate_structures(&ct, 4).iter().map(structure_canonical).collect();
        assert_eq!(r1, r2);
    }
}

#[test]
fn every_entry_validates_and_smooths_to_legal_graphs() {
    let entries: Vec<_> = build_single_curve_catalog()
        .into_iter()
        .chain(build_two_curve_catalog())
        .collect();
    for e in &entries {
        assert!(validate_structure(&e.structure).is_empty(), "{}", e.case_label);
        for piece in &e.structure.pieces {
            let surface = closure_surface(&e.structure.stratification, piece.vertex).unwrap();
            assert_eq!(betti(&piece.dg.reeb), Ok(surface.genus), "{}", e.case_label);
            let smooth = piece.dg.reeb.smoothed();
            assert_eq!(validate_reeb(&smooth), Vec::new(), "{}", e.case_label);
            assert_eq!(betti(&smooth), Ok(surface.genus), "{}", e.case_label);
        }
    }
}

#[test]
fn four_point_circles_sit_in_the_one_lawful_position() {
    let entries: Vec<_> = build_single_curve_catalog()
        .into_iter()
        .chain(build_two_curve_catalog())
        .collect();
    let mut seen = 0;
    for e in &entries {
        for piece in &e.structure.pieces {
            for st in &piece.strata {
                let GroupRef::Quad(i) = st.group else { continue };
                let cycle = stratum_cycle(&piece.dg, StratumRef::Quad(i)).unwrap();
                let ranks: Vec<u8> = cycle.iter().map(|&v| piece.ranks[v as usize]).collect();
                assert_eq!(ranks, vec![0, 2, 1, 3], "{}", e.case_label);
                seen += 1;
            }
        }
    }
    // six loop entries with three four-point circles each
    assert_eq!(seen, 18);
}

#[test]
fn infeasible_two_curve_colorings_yield_nothing() {
    let mut skipped = 0;
    for t in enumerate_trees(4).unwrap() {
        for ct in enumerate_pairings(&t).unwrap() {
            if min_critical_points(&ct) > 4 {
                assert!(enumerate_structures(&ct, 4).is_empty());
                skipped += 1;
            }
        }
    }
    // star, the other spider coloring, two chain colorings
    assert_eq!(skipped, 4);
}
