use proptest::prelude::*;
use rayon::prelude::*;

use rainbow_core::coloring::classify_all;
use rainbow_core::partition::feasible_prefixes;
use rainbow_core::search::search;
use rainbow_core::{
    arc_count, canonical_form, color_stats, enumerate_arborescences, enumerate_colorings,
    enumerate_tournaments, extremal_coloring, has_rainbow_arborescence, merge_colors,
    proof_digraph, reachable_set, stirling2, ArcColoring, EnumerationLimits, RainbowOracle,
    SearchConfig, Tournament, VertexSet, VertexType,
};

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (3..=max_n, any::<u64>()).prop_map(|(n, seed)| Tournament::random(n, seed).unwrap())
}

/// A tournament together with a surjective coloring of its arcs.
fn colored(max_n: usize) -> impl Strategy<Value = (Tournament, ArcColoring)> {
    tournament(max_n).prop_flat_map(|t| {
        let m = t.arc_count();
        (Just(t), prop::collection::vec(0u32..m as u32, m))
            .prop_map(|(t, raw)| (t, ArcColoring::from_labels(&raw)))
    })
}

fn brute_delta3(t: &Tournament) -> usize {
    let d = t.in_degrees();
    let n = t.order();
    let mut best = usize::MAX;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                best = best.min(d[a] + d[b] + d[c]);
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn delta3_matches_triples_and_bounds_h(t in tournament(32)) {
        let (d, triples) = t.delta3_minus().unwrap();
        prop_assert!(d >= 3);
        prop_assert_eq!(d, brute_delta3(&t));
        prop_assert!(t.h_value().unwrap() < t.arc_count());
        for tr in &triples {
            let sum: usize = tr.vertices.iter().map(|&v| t.in_degree(v).unwrap()).sum();
            prop_assert_eq!(sum, d);
        }
    }

    #[test]
    fn reachable_set_is_monotone(t in tournament(12), extra in any::<u64>(), x in 0usize..12) {
        let n = t.order();
        let x = x % n;
        let mut arcs: Vec<(usize, usize)> = t.arcs().into_iter()
            .filter(|a| (extra >> (a.0 % 64)) & 1 == 1)
            .map(|(_, u, v)| (u, v))
            .collect();
        let before = reachable_set(n, &arcs, x);
        for (_, u, v) in t.arcs() {
            arcs.push((u, v));
            let after = reachable_set(n, &arcs, x);
            prop_assert!(before.is_subset(after));
        }
        prop_assert!(before.contains(x));
    }

    #[test]
    fn hamiltonian_path_is_valid(t in (1usize..=64, any::<u64>()).prop_map(|(n, s)| Tournament::random(n, s).unwrap())) {
        let p = t.hamiltonian_path();
        prop_assert_eq!(p.len(), t.order());
        prop_assert_eq!(p.iter().copied().collect::<VertexSet>(), VertexSet::full(t.order()));
        prop_assert!(p.windows(2).all(|w| t.has_arc(w[0], w[1])));
    }

    #[test]
    fn canonical_form_ignores_labels(t in tournament(8), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..t.order()).collect();
        perm.shuffle(&mut rainbow_core::rng::rng(perm_seed));
        let u = t.permute(&perm).unwrap();
        prop_assert_eq!(canonical_form(&t).unwrap(), canonical_form(&u).unwrap());
    }

    #[test]
    fn colors_at_are_exclusive((t, g) in colored(9)) {
        let stats = color_stats(&t, &g).unwrap();
        for x in 0..t.order() {
            for &c in &stats.colors_at[x] {
                for (i, u, v) in t.arcs() {
                    if g.color(i) == c {
                        prop_assert!(u == x || v == x);
                    }
                }
            }
        }
    }

    #[test]
    fn rainbow_coloring_types(t in tournament(12)) {
        let types = classify_all(&t, &ArcColoring::rainbow(t.arc_count())).unwrap();
        for (x, ty) in types.iter().enumerate() {
            let expected = if t.in_degree(x).unwrap() > 0 { VertexType::Type1 } else { VertexType::Type3 };
            prop_assert_eq!(*ty, expected);
        }
    }

    #[test]
    fn extremal_coloring_uses_h_minus_one(t in tournament(20)) {
        let h = t.h_value().unwrap();
        for tr in t.delta3_minus().unwrap().1.iter().take(5) {
            prop_assert_eq!(extremal_coloring(&t, tr.vertices).unwrap().num_colors(), h - 1);
        }
    }

    #[test]
    fn merge_keeps_other_classes((t, g) in colored(7), a in any::<u32>(), b in any::<u32>()) {
        let k = g.num_colors() as u32;
        prop_assume!(k >= 2);
        let (keep, drop) = (a % k, b % k);
        prop_assume!(keep != drop);
        let merged = merge_colors(&g, keep, drop).unwrap();
        prop_assert_eq!(merged.num_colors() as u32, k - 1);
        let m = t.arc_count();
        for i in 0..m {
            for j in 0..m {
                let same = g.color(i) == g.color(j);
                let touched = |x: usize| g.color(x) == keep || g.color(x) == drop;
                if !touched(i) && !touched(j) {
                    prop_assert_eq!(same, merged.color(i) == merged.color(j));
                } else if touched(i) && touched(j) {
                    prop_assert_eq!(merged.color(i), merged.color(j));
                }
            }
        }
    }

    #[test]
    fn search_agrees_with_enumeration_and_witnesses_validate((t, g) in colored(6)) {
        let out = has_rainbow_arborescence(&t, &g).unwrap();
        let oracle = RainbowOracle::new(&t).unwrap();
        prop_assert_eq!(out.found(), oracle.has_rainbow(&g));
        if let Some(w) = &out.witness {
            w.validate(&t).unwrap();
            prop_assert!(w.is_rainbow(&g));
        }
        prop_assert_eq!(out, has_rainbow_arborescence(&t, &g).unwrap());
    }

    #[test]
    fn proof_digraph_is_rainbow_and_maximal((t, g) in colored(10), pick in any::<usize>()) {
        let (x, y) = t.arc(pick % t.arc_count());
        let d = proof_digraph(&t, &g, x, y).unwrap();
        let colors: Vec<u32> = d.arc_ids.iter().map(|&i| g.color(i)).collect();
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(distinct.len(), colors.len());
        for (i, _, head) in t.arcs() {
            if head != x && head != y && !d.arc_ids.contains(&i) {
                prop_assert!(colors.contains(&g.color(i)));
            }
        }
        prop_assert_eq!(d.arcs.len() + d.k_xy, g.num_colors());
    }
}

#[test]
fn labeled_enumeration_is_complete_and_distinct() {
    for n in 1..=5 {
        let all: Vec<_> = enumerate_tournaments(n, false, EnumerationLimits::default())
            .unwrap()
            .map(|t| t.orientation())
            .collect();
        assert_eq!(all.len(), 1 << arc_count(n));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn coloring_enumeration_counts() {
    // Independent recurrence, kept separate from the library's table.
    let mut s = vec![vec![0u64; 12]; 12];
    s[0][0] = 1;
    for m in 1..=10 {
        for k in 1..=m {
            s[m][k] = k as u64 * s[m - 1][k] + s[m - 1][k - 1];
        }
    }
    for m in 1..=10 {
        for k in 1..=m {
            let all: Vec<Vec<u32>> = enumerate_colorings(m, k).unwrap().collect();
            assert_eq!(all.len() as u64, s[m][k], "S({m},{k})");
            assert_eq!(stirling2(m, k), s[m][k] as u128);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

/// For every isomorphism class with n <= 5 and every coloring up to
/// renaming with h - 1 or h colors, the search agrees with enumeration.
#[test]
fn search_matches_enumeration_on_every_coloring_near_h() {
    for n in 3..=5 {
        for t in enumerate_tournaments(n, true, EnumerationLimits::default()).unwrap() {
            let oracle = RainbowOracle::new(&t).unwrap();
            let h = t.h_value().unwrap();
            let m = t.arc_count();
            for k in [h - 1, h] {
                let mismatches: usize = feasible_prefixes(m, k, 5)
                    .unwrap()
                    .par_iter()
                    .map(|p| {
                        rainbow_core::RestrictedGrowth::with_prefix(m, k, p)
                            .unwrap()
                            .filter(|c| {
                                let g = ArcColoring::new(c.clone()).unwrap();
                                let found = search(&t, &g, SearchConfig::default()).unwrap().found();
                                found != oracle.has_rainbow(&g)
                            })
                            .count()
                    })
                    .sum();
                assert_eq!(mismatches, 0, "n = {n}, k = {k}, {t:?}");
            }
        }
    }
}

#[test]
fn every_tournament_has_some_arborescence() {
    for n in 1..=6 {
        for t in enumerate_tournaments(n, true, EnumerationLimits::default()).unwrap() {
            let total: usize = (0..n).map(|r| enumerate_arborescences(&t, r).unwrap().len()).sum();
            assert!(total >= 1);
        }
    }
}
