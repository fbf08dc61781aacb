//! Generative property tests for the core invariants.


use proptest::prelude::*;

use ramsey_core::bounds::{derive, BoundFact, BoundTable, DeriveOptions};
use ramsey_core::catalog::{parse, serialize, ColoringMetadata};
use ramsey_core::coloring::{Color, DistanceClasses};
use ramsey_core::constructions::block_stretch;
use ramsey_core::verifier::{find_mono_clique, max_mono_clique, naive_mono_clique};
use ramsey_core::{CliqueBoundVector, EdgeColoring};

fn coloring(max_n: usize, max_r: u8) -> impl Strategy<Value = EdgeColoring> {
    (1..=max_n, 1..=max_r).prop_flat_map(|(n, r)| {
        prop::collection::vec(1..=r, n * (n - 1) / 2).prop_map(move |colors| {
            let mut it = colors.into_iter();
            EdgeColoring::from_fn(n, r as usize, |_, _| it.next().unwrap()).unwrap()
        })
    })
}

fn permutation_of(r: usize) -> impl Strategy<Value = Vec<Color>> {
    Just((1..=r as Color).collect::<Vec<Color>>()).prop_shuffle()
}

/// A coloring plus a color permutation of matching length.
fn coloring_and_permutation(
    max_n: usize,
    max_r: u8,
) -> impl Strategy<Value = (EdgeColoring, Vec<Color>)> {
    coloring(max_n, max_r).prop_flat_map(|c| {
        let r = c.r();
        (Just(c), permutation_of(r))
    })
}

/// A coloring plus a nonempty vertex subset.
fn coloring_and_subset(
    max_n: usize,
    max_r: u8,
) -> impl Strategy<Value = (EdgeColoring, Vec<usize>)> {
    coloring(max_n, max_r).prop_flat_map(|c| {
        let n = c.n();
        let subset = prop::collection::btree_set(0..n, 1..=n)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just(c), subset)
    })
}

/// A vertex count plus a color for every distance class `1..=n/2`.
fn cyclic_setup(max_r: u8) -> impl Strategy<Value = (usize, DistanceClasses)> {
    (2usize..14).prop_flat_map(move |n| {
        prop::collection::vec(1..=max_r, n / 2).prop_map(move |owners| {
            let mut classes = DistanceClasses::new();
            for (i, color) in owners.into_iter().enumerate() {
                classes.entry(color).or_default().insert(i + 1);
            }
            classes.entry(1).or_default();
            (n, classes)
        })
    })
}

proptest! {
    #[test]
    fn color_views_partition_the_edge_set(c in coloring(12, 4)) {
        let total: usize = (1..=c.r() as Color)
            .map(|x| c.color_view(x).unwrap().edge_count())
            .sum();
        prop_assert_eq!(total, c.n() * (c.n() - 1) / 2);
    }

    #[test]
    fn relabel_is_natural_on_views((c, pi) in coloring_and_permutation(10, 4)) {
        let relabeled = c.relabel_colors(&pi).unwrap();
        for x in 1..=c.r() as Color {
            let before = c.color_view(x).unwrap();
            let after = relabeled.color_view(pi[x as usize - 1]).unwrap();
            for u in 0..c.n() {
                for v in u + 1..c.n() {
                    prop_assert_eq!(before.has_edge(u, v), after.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn restriction_composes((c, s) in coloring_and_subset(12, 3), raw in prop::collection::vec(0usize..12, 1..8)) {
        let first = c.restrict(&s).unwrap();
        // Map raw indices into the inner range and compose.
        let t: Vec<usize> = raw.iter().map(|&i| i % first.n()).collect();
        let twice = first.restrict(&t).unwrap();
        let image: Vec<usize> = {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            t.iter().map(|&i| sorted[i]).collect()
        };
        let direct = c.restrict(&image).unwrap();
        prop_assert_eq!(twice, direct);
    }

    #[test]
    fn cyclic_colorings_are_shift_invariant((n, classes) in cyclic_setup(3)) {
        let c = EdgeColoring::cyclic(n, &classes).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                prop_assert_eq!(c.color(u, v), c.color((u + 1) % n, (v + 1) % n));
            }
        }
    }

    #[test]
    fn explicit_files_round_trip(c in coloring(12, 4)) {
        let meta = ColoringMetadata::default();
        let (parsed, _) = parse(&serialize(&c, &meta)).unwrap();
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn cyclic_files_round_trip((n, classes) in cyclic_setup(3)) {
        let c = EdgeColoring::cyclic(n, &classes).unwrap();
        let text = serialize(&c, &ColoringMetadata::default());
        let (parsed, _) = parse(&text).unwrap();
        prop_assert_eq!(&parsed, &c);
        prop_assert_eq!(parsed.cyclic_classes(), c.cyclic_classes());
    }

    #[test]
    fn parsing_is_total(text in "\\PC*") {
        // Any input must yield Ok or a located error, never a panic.
        let _ = parse(&text);
    }

    #[test]
    fn table_parsing_is_total(text in "\\PC*") {
        let _ = BoundTable::parse_with_source(&text, "fuzz");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_agrees_with_the_oracle(c in coloring(9, 3), k in 1usize..=4, color_pick in 0usize..3) {
        let color = (color_pick % c.r()) as Color + 1;
        let fast = find_mono_clique(&c, color, k).unwrap();
        let slow = naive_mono_clique(&c, color, k).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        for w in [fast, slow].into_iter().flatten() {
            prop_assert_eq!(w.len(), k);
            prop_assert!(c.is_mono_clique(color, &w));
        }
    }

    #[test]
    fn search_is_relabel_invariant((c, pi) in coloring_and_permutation(9, 3), k in 1usize..=4) {
        let relabeled = c.relabel_colors(&pi).unwrap();
        for x in 1..=c.r() as Color {
            let before = find_mono_clique(&c, x, k).unwrap().is_some();
            let after = find_mono_clique(&relabeled, pi[x as usize - 1], k).unwrap().is_some();
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn restricted_witnesses_map_back((c, s) in coloring_and_subset(10, 3), k in 2usize..=4) {
        let sub = c.restrict(&s).unwrap();
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for color in 1..=c.r() as Color {
            if let Some(w) = find_mono_clique(&sub, color, k).unwrap() {
                let mapped: Vec<usize> = w.iter().map(|&i| sorted[i]).collect();
                prop_assert!(c.is_mono_clique(color, &mapped));
            }
        }
    }

    #[test]
    fn max_clique_size_matches_existence_frontier(c in coloring(9, 2)) {
        for color in 1..=c.r() as Color {
            let (size, witness) = max_mono_clique(&c, color).unwrap();
            prop_assert_eq!(witness.len(), size);
            if size == 0 {
                // Convention: an edgeless color reports 0 even though a
                // bare vertex is a K_1 for the existence query.
                prop_assert!(find_mono_clique(&c, color, 2).unwrap().is_none());
                prop_assert!(find_mono_clique(&c, color, 1).unwrap().is_some());
            } else {
                prop_assert!(c.is_mono_clique(color, &witness));
                prop_assert!(find_mono_clique(&c, color, size).unwrap().is_some());
                prop_assert!(find_mono_clique(&c, color, size + 1).unwrap().is_none());
            }
        }
    }

    #[test]
    fn derive_is_permutation_invariant_and_monotone(
        entries in prop::collection::vec(2usize..=7, 1..=4),
        extra_entries in prop::collection::vec(2usize..=7, 1..=3),
        extra_bound in 2u64..=60,
        perm_seed in prop::collection::vec(0usize..100, 4),
    ) {
        let table = BoundTable::sample();
        let target = CliqueBoundVector::new(entries.clone()).unwrap();
        let tree = derive(&target, &table, DeriveOptions::default()).unwrap();
        tree.validate().unwrap();

        // Permutation invariance under a cheap Fisher-Yates driven by seeds.
        let mut permuted = entries.clone();
        for (i, &s) in perm_seed.iter().enumerate() {
            let len = permuted.len();
            permuted.swap(i % len, s % len);
        }
        let tree2 = derive(
            &CliqueBoundVector::new(permuted).unwrap(),
            &table,
            DeriveOptions::default(),
        )
        .unwrap();
        prop_assert_eq!(&tree, &tree2);

        // Adding a fact never decreases the derived bound.
        let mut bigger = table.clone();
        bigger.insert(
            BoundFact::table(
                CliqueBoundVector::new(extra_entries).unwrap(),
                extra_bound,
                "extra",
            )
            .unwrap(),
        );
        let tree3 = derive(&target, &bigger, DeriveOptions::default()).unwrap();
        prop_assert!(tree3.lower_bound() >= tree.lower_bound());
    }

    #[test]
    fn stretch_pass_through_cliques_project_to_the_base(
        base in coloring(6, 3).prop_filter("stretch needs two base colors", |c| c.r() >= 2),
        t in 3usize..=4,
        stretched_pick in 0usize..3,
    ) {
        let stretched = (stretched_pick % base.r()) as Color + 1;
        let mut bv = vec![3usize; base.r()];
        bv[stretched as usize - 1] = 2;
        let base_bounds = CliqueBoundVector::new(bv).unwrap();
        let out = block_stretch(&base, &base_bounds, t, stretched).unwrap();

        // Recompute the canonical relabeling: stretched -> 3, rest ascending.
        let mut canon = vec![0 as Color; base.r()];
        canon[stretched as usize - 1] = 3;
        let mut next = 2;
        for c in 1..=base.r() as Color {
            if c != stretched {
                canon[c as usize - 1] = next;
                next = if next == 2 { 4 } else { next + 1 };
            }
        }

        for base_color in 1..=base.r() as Color {
            if base_color == stretched {
                continue;
            }
            let out_color = canon[base_color as usize - 1];
            let (size, witness) = max_mono_clique(&out.coloring, out_color).unwrap();
            if size < 2 {
                continue;
            }
            let mut reduced: Vec<usize> = witness.iter().map(|&v| v % base.n()).collect();
            reduced.sort_unstable();
            reduced.dedup();
            // Pass-through edges never join two copies of the same base
            // vertex, so the projection keeps its size and its edges.
            prop_assert_eq!(reduced.len(), witness.len());
            prop_assert!(base.is_mono_clique(base_color, &reduced));
        }
    }
}
