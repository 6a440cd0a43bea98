//! Oracles and randomized properties for trees, pairings, and feasibility.

use immersed_morse::strata::{
    closure_surface, enumerate_pairings, enumerate_trees, feasible_stratifications,
    min_critical_points, point_distributions, tree_canonical, ColoredTree, Tree,
};
use proptest::prelude::*;

/// Standard Prüfer decode; every sequence over 0..n of length n-2 yields a
/// labelled tree on n vertices, so this samples trees uniformly.
fn tree_from_prufer(n: usize, seq: &[u8]) -> Tree {
    assert_eq!(seq.len() + 2, n);
    let mut deg = vec![1u32; n];
    for &s in seq {
        deg[s as usize] += 1;
    }
    let mut edges = Vec::new();
    for i in 0..seq.len() {
        let leaf = (0..n)
            .find(|&v| deg[v] == 1 && !seq[i..].iter().any(|&s| s as usize == v))
            .expect("a leaf always remains");
        edges.push((leaf as u8, seq[i]));
        deg[leaf] -= 1;
        deg[seq[i] as usize] -= 1;
    }
    let rest: Vec<u8> = (0..n as u8).filter(|&v| deg[v as usize] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n as u8, &edges).expect("Prüfer decode yields a tree")
}

fn relabel(t: &Tree, perm: &[u8]) -> Tree {
    let edges: Vec<(u8, u8)> = t
        .edges()
        .iter()
        .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
        .collect();
    Tree::new(t.vertex_count() as u8, &edges).expect("relabelling preserves treeness")
}

/// Brute-force isomorphism test, independent of the canonical key.
fn isomorphic_by_search(a: &Tree, b: &Tree) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    let mut perm: Vec<u8> = (0..n as u8).collect();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let check = |perm: &[u8]| {
        a.edges()
            .iter()
            .all(|&(x, y)| b.edge_index(perm[x as usize], perm[y as usize]).is_some())
    };
    if check(&perm) {
        return true;
    }
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                return true;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

#[test]
fn census_of_unlabelled_trees() {
    let expected = [1usize, 1, 2, 3, 6, 11];
    for (i, &want) in expected.iter().enumerate() {
        let got = enumerate_trees(i + 1).unwrap().len();
        assert_eq!(got, want, "trees with {} edges", i + 1);
    }
}

#[test]
fn canonical_key_agrees_with_brute_force_isomorphism() {
    for n_edges in 1..=6usize {
        let trees = enumerate_trees(n_edges).unwrap();
        for (i, a) in trees.iter().enumerate() {
            for b in &trees[i..] {
                let same_key = tree_canonical(a) == tree_canonical(b);
                assert_eq!(same_key, isomorphic_by_search(a, b));
            }
        }
    }
}

#[test]
fn pairing_counts_by_tree_shape() {
    // one curve on the two-edge path
    let path2 = &enumerate_trees(2).unwrap()[0];
    assert_eq!(enumerate_pairings(path2).unwrap().len(), 1);
    // odd edge counts admit no perfect matching
    for t in enumerate_trees(3).unwrap() {
        assert!(enumerate_pairings(&t).is_err());
    }
    // star 1, spider 2, chain 3
    let mut counts: Vec<(usize, usize)> = enumerate_trees(4)
        .unwrap()
        .iter()
        .map(|t| {
            let max_deg = (0..t.vertex_count() as u8).map(|v| t.degree(v)).max().unwrap();
            (max_deg, enumerate_pairings(t).unwrap().len())
        })
        .collect();
    counts.sort_unstable();
    assert_eq!(counts, vec![(2, 3), (3, 2), (4, 1)]);
}

#[test]
fn pairing_representatives_cover_all_matchings_without_overlap() {
    for t in enumerate_trees(4).unwrap() {
        let reps = enumerate_pairings(&t).unwrap();
        let autos = t.automorphisms();
        // expand each representative's orbit
        let mut seen = std::collections::BTreeSet::new();
        for ct in &reps {
            let mut orbit = std::collections::BTreeSet::new();
            for auto in &autos {
                let mapped: std::collections::BTreeSet<(usize, usize)> = ct
                    .blocks()
                    .iter()
                    .map(|&(e1, e2)| {
                        let m = |e: usize| {
                            let (a, b) = t.edges()[e];
                            t.edge_index(auto[a as usize], auto[b as usize]).unwrap()
                        };
                        let (p, q) = (m(e1), m(e2));
                        (p.min(q), p.max(q))
                    })
                    .collect();
                orbit.insert(mapped);
            }
            for member in orbit {
                assert!(seen.insert(member), "orbits of distinct representatives overlap");
            }
        }
        // every perfect matching of the 4 edges lies in some orbit
        let all = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
        let total: usize = all
            .iter()
            .filter(|m| ColoredTree::new(t.clone(), *m).is_ok())
            .count();
        assert_eq!(seen.len(), total);
    }
}

fn all_colorings() -> Vec<ColoredTree> {
    let mut out = Vec::new();
    for n_edges in [2usize, 4] {
        for t in enumerate_trees(n_edges).unwrap() {
            out.extend(enumerate_pairings(&t).unwrap());
        }
    }
    out
}

#[test]
fn closure_surfaces_balance_genus_and_boundary_against_degree() {
    let colorings = all_colorings();
    assert_eq!(colorings.len(), 7);
    for ct in &colorings {
        for v in 0..ct.tree().vertex_count() as u8 {
            let s = closure_surface(ct, v).unwrap();
            assert_eq!(
                2 * s.genus as usize + s.boundaries as usize,
                ct.tree().degree(v),
                "2g + b must equal the number of incident edges"
            );
        }
    }
}

#[test]
fn minimal_point_counts_match_a_brute_force_scan() {
    let mut mins: Vec<(usize, u32)> = all_colorings()
        .iter()
        .map(|ct| {
            let direct = min_critical_points(ct);
            let scanned = (2..=10)
                .find(|&b| !point_distributions(ct, b).is_empty())
                .expect("every coloring is realizable by ten points");
            assert_eq!(direct, scanned);
            (ct.tree().edge_count(), direct)
        })
        .collect();
    mins.sort_unstable();
    assert_eq!(
        mins,
        vec![(2, 4), (4, 4), (4, 4), (4, 6), (4, 6), (4, 6), (4, 8)]
    );
}

#[test]
fn feasibility_thresholds() {
    assert_eq!(feasible_stratifications(3).len(), 0);
    let at4 = feasible_stratifications(4);
    assert_eq!(at4.len(), 3);
    let mut curves: Vec<usize> = at4.iter().map(|ct| ct.curve_count()).collect();
    curves.sort_unstable();
    assert_eq!(curves, vec![1, 2, 2]);
    assert_eq!(feasible_stratifications(8).len(), 7);
}

#[test]
fn minimal_distributions_put_the_required_points_on_the_curves() {
    for ct in feasible_stratifications(4) {
        for d in point_distributions(&ct, 4) {
            assert_eq!(d.total(), 4);
            for &c in &d.per_curve {
                assert!(c == 2 || c == 4, "each curve carries 2 or 4 points");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn canonical_key_survives_relabelling(
        (tree, perm) in (2usize..=8).prop_flat_map(|n| {
            let seq = prop::collection::vec(0..n as u8, n - 2)
                .prop_map(move |s| tree_from_prufer(n, &s));
            let perm = Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle();
            (seq, perm)
        })
    ) {
        let relabelled = relabel(&tree, &perm);
        prop_assert_eq!(tree_canonical(&tree), tree_canonical(&relabelled));
    }

    #[test]
    fn colored_canonical_key_survives_relabelling(
        (idx, perm) in (0usize..7).prop_flat_map(|i| {
            let n = all_colorings()[i].tree().vertex_count();
            (Just(i), Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle())
        })
    ) {
        let ct = &all_colorings()[idx];
        let rt = relabel(ct.tree(), &perm);
        let blocks: Vec<(usize, usize)> = ct
            .blocks()
            .iter()
            .map(|&(e1, e2)| {
                let m = |e: usize| {
                    let (a, b) = ct.tree().edges()[e];
                    rt.edge_index(perm[a as usize], perm[b as usize]).unwrap()
                };
                let (p, q) = (m(e1), m(e2));
                (p.min(q), p.max(q))
            })
            .collect();
        let rct = ColoredTree::new(rt, &blocks).unwrap();
        prop_assert_eq!(ct.canonical_key(), rct.canonical_key());
    }
}
