//! Randomized invariants of the public API, checked with proptest.

use std::mem::discriminant;

use proptest::prelude::*;

use spcolor::colorer::{self, two_fan_extend, ColorSet, ExtendError};
use spcolor::corpus;
use spcolor::multigraph::Multigraph;
use spcolor::oracle;
use spcolor::reducer::{self, DecideOptions, NoReason, Verdict};

/// The colors encoded by the low `k` bits of `mask`, as a set over `1..=k`.
fn mask_set(mask: u32, k: u64) -> ColorSet {
    ColorSet::from_colors(
        k,
        (0..k).filter(|bit| mask >> bit & 1 == 1).map(|bit| bit + 1),
    )
}

fn union_size(a: u32, b: u32) -> u64 {
    u64::from((a | b).count_ones())
}

/// The graph with every multiplicity scaled by `factor`.
fn scaled(g: &Multigraph, factor: u64) -> Multigraph {
    Multigraph::build(
        g.vertex_count(),
        g.classes().iter().map(|c| (c.u, c.v, c.mult * factor)),
    )
    .expect("scaling preserves validity")
}

proptest! {
    /// The two-fan extension succeeds exactly when its three inequalities
    /// hold, reports the first violated one otherwise, and on success
    /// returns disjoint in-range color groups avoiding the right sets.
    #[test]
    fn two_fan_extension_is_sound_and_complete(
        k in 1u64..=12,
        m1 in 0u64..=4,
        m2 in 0u64..=4,
        raw0 in any::<u32>(),
        raw1 in any::<u32>(),
        raw2 in any::<u32>(),
    ) {
        let keep = (1u32 << k) - 1;
        let (b0, b1, b2) = (raw0 & keep, raw1 & keep, raw2 & keep);
        let (s0, s1, s2) = (mask_set(b0, k), mask_set(b1, k), mask_set(b2, k));
        let result = two_fan_extend(k, m1, m2, &s0, &s1, &s2);
        let expected = if m1 + union_size(b0, b1) > k {
            Some(discriminant(&ExtendError::Side1 { lhs: 0, k: 0 }))
        } else if m2 + union_size(b0, b2) > k {
            Some(discriminant(&ExtendError::Side2 { lhs: 0, k: 0 }))
        } else if m1 + m2 + u64::from((b0 | (b1 & b2)).count_ones()) > k {
            Some(discriminant(&ExtendError::Joint { lhs: 0, k: 0 }))
        } else {
            None
        };
        match (result, expected) {
            (Ok((group1, group2)), None) => {
                prop_assert_eq!(group1.len() as u64, m1);
                prop_assert_eq!(group2.len() as u64, m2);
                let mut all: Vec<u64> = group1.iter().chain(&group2).copied().collect();
                all.sort_unstable();
                all.dedup();
                prop_assert_eq!(all.len(), group1.len() + group2.len());
                for &color in &all {
                    prop_assert!((1..=k).contains(&color));
                    prop_assert!(!s0.contains(color));
                }
                for &color in &group1 {
                    prop_assert!(!s1.contains(color));
                }
                for &color in &group2 {
                    prop_assert!(!s2.contains(color));
                }
            }
            (Err(err), Some(which)) => prop_assert_eq!(discriminant(&err), which),
            (got, want) => prop_assert!(false, "got {got:?}, wanted failure {want:?}"),
        }
    }

    /// Colorability is monotone in the palette size.
    #[test]
    fn decide_is_monotone_in_k(seed in any::<u64>(), n in 2usize..=8, max_mult in 1u64..=4) {
        let g = oracle::gen_sp(seed, n, max_mult);
        let mut seen_yes = false;
        let mut last = None;
        for k in corpus::palette_range(g.max_degree()) {
            let yes = matches!(reducer::decide(&g, k), Verdict::Yes);
            prop_assert!(yes || !seen_yes, "verdict flipped back to no at k={k}");
            seen_yes |= yes;
            last = Some(yes);
        }
        // The sweep extends past the worst-case chromatic index.
        prop_assert_eq!(last, Some(true));
    }

    /// Recognition only depends on the underlying simple graph.
    #[test]
    fn recognition_ignores_multiplicities(seed in any::<u64>(), n in 2usize..=8, max_mult in 1u64..=4) {
        let g = oracle::gen_sp(seed, n, max_mult);
        prop_assert!(g.is_series_parallel());
        prop_assert!(g.underlying_simple().is_series_parallel());
    }

    /// Scaling every multiplicity and the palette by the same factor leaves
    /// the verdict, the iteration count, and the shape of the reduction
    /// unchanged.
    #[test]
    fn decide_is_scale_invariant(
        seed in any::<u64>(),
        n in 2usize..=8,
        max_mult in 1u64..=4,
        factor in 2u64..=9,
    ) {
        let g = oracle::gen_sp(seed, n, max_mult);
        let big = scaled(&g, factor);
        let options = DecideOptions { collect_trace: true, ..DecideOptions::default() };
        for k in corpus::palette_range(g.max_degree()) {
            let base = reducer::decide_full(&g, k, &options);
            let scaled_run = reducer::decide_full(&big, k * factor, &options);
            prop_assert_eq!(base.iterations, scaled_run.iterations);
            prop_assert_eq!(base.trace.len(), scaled_run.trace.len());
            for (a, b) in base.trace.iter().zip(&scaled_run.trace) {
                prop_assert_eq!(discriminant(a), discriminant(b));
            }
            match (&base.verdict, &scaled_run.verdict) {
                (Verdict::Yes, Verdict::Yes) => {}
                (
                    Verdict::No(NoReason::DegreeExceeded { v: v1, .. }),
                    Verdict::No(NoReason::DegreeExceeded { v: v2, .. }),
                ) => prop_assert_eq!(v1, v2),
                (
                    Verdict::No(NoReason::LocalCheck { violation: a, .. }),
                    Verdict::No(NoReason::LocalCheck { violation: b, .. }),
                ) => prop_assert_eq!(a.triple, b.triple),
                (a, b) => prop_assert!(false, "verdicts diverged: {a:?} vs {b:?}"),
            }
        }
    }

    /// Generated graphs hit the requested size, stay series-parallel, stay
    /// connected, and respect the multiplicity cap.
    #[test]
    fn generated_graphs_are_well_formed(seed in any::<u64>(), n in 2usize..=40, max_mult in 1u64..=5) {
        let g = oracle::gen_sp(seed, n, max_mult);
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert!(g.is_series_parallel());
        for class in g.classes() {
            prop_assert!((1..=max_mult).contains(&class.mult));
        }
        // Breadth-first reachability from vertex 0 covers the graph.
        let mut seen = vec![false; n];
        let mut queue = vec![0u32];
        seen[0] = true;
        while let Some(v) = queue.pop() {
            for &(w, _) in g.adjacency(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        prop_assert!(seen.into_iter().all(|reached| reached));
    }

    /// A coloring constructed at the chromatic index verifies, and none
    /// exists below it.
    #[test]
    fn constructed_colorings_verify(seed in any::<u64>(), n in 2usize..=8, max_mult in 1u64..=4) {
        let g = oracle::gen_sp(seed, n, max_mult);
        let chi = reducer::chromatic_index(&g).expect("generated graphs are series-parallel");
        let coloring = colorer::find_coloring(&g, chi)
            .expect("series-parallel")
            .expect("colorable at the chromatic index");
        prop_assert_eq!(colorer::verify_coloring(&g, chi, &coloring), Ok(true));
        if chi > 0 {
            prop_assert!(colorer::find_coloring(&g, chi - 1).expect("series-parallel").is_none());
        }
    }

    /// Writing and parsing a graph or a coloring is the identity.
    #[test]
    fn formats_round_trip(seed in any::<u64>(), n in 2usize..=10, max_mult in 1u64..=4) {
        let g = oracle::gen_sp(seed, n, max_mult);
        let text = spcolor::formats::write_graph(&g);
        let back = spcolor::formats::parse_graph(&text).expect("own output parses");
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.classes(), g.classes());
        prop_assert_eq!(spcolor::formats::write_graph(&back), text);

        let chi = reducer::chromatic_index(&g).expect("series-parallel");
        let coloring = colorer::find_coloring(&g, chi).unwrap().unwrap();
        let text = spcolor::formats::write_coloring(&coloring);
        let back = spcolor::formats::parse_coloring(&text).expect("own output parses");
        prop_assert_eq!(back.k, coloring.k);
        prop_assert_eq!(&back.classes, &coloring.classes);
        prop_assert_eq!(spcolor::formats::write_coloring(&back), text);
    }

    /// The degree/density lower bound is tight on series-parallel graphs:
    /// rounding the full or the pruned density up gives the same bound.
    #[test]
    fn density_bound_agrees_between_full_and_pruned(seed in any::<u64>(), n in 1usize..=7) {
        let g = oracle::gen_random(seed, n, 3);
        let delta = g.max_degree();
        let bound = |pruned: bool| {
            let densest = oracle::gamma_exact(&g, pruned).expect("within subset limit");
            delta.max(densest.map_or(0, |r| r.density.ceil().to_integer()))
        };
        prop_assert_eq!(bound(false), bound(true));
    }
}
