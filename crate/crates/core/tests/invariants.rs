mod common;

use gallai::constructions::substitution_product;
use gallai::format::{from_json, from_text, to_json, to_text};
use gallai::partition::{find_gallai_partition, find_min_parts_partition, spanning_connected_color, verify_partition};
use gallai::probabilistic::{biased_random_coloring, event_bounds, resample_search, EventParams, ResampleProblem};
use gallai::search::{canonical_key, exists_good_coloring, is_isomorphic, Mode, SearchProblem, Verdict};
use gallai::{EdgeColoring, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_coloring(n: usize, k: usize, seed: u64) -> EdgeColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EdgeColoring::from_fn(n, k, |_, _| rng.gen_range(1..=k)).unwrap()
}

// Blowing up a 2-colored base with Gallai parts keeps it Gallai, and every
// Gallai coloring arises this way, so this reaches the whole class.
fn random_gallai(n: usize, k: usize, rng: &mut ChaCha8Rng) -> EdgeColoring {
    if n == 1 {
        return EdgeColoring::monochromatic(1, k, 1).unwrap();
    }
    let m = rng.gen_range(2..=n.min(4));
    let mut sizes = vec![1; m];
    for _ in m..n {
        sizes[rng.gen_range(0..m)] += 1;
    }
    let (a, b) = (rng.gen_range(1..=k), rng.gen_range(1..=k));
    let base = EdgeColoring::from_fn(m, k, |_, _| if rng.gen_bool(0.5) { a } else { b }).unwrap();
    let parts: Vec<EdgeColoring> = sizes.iter().map(|&s| random_gallai(s, k, rng)).collect();
    substitution_product(&base, &parts).unwrap().coloring
}

fn relabel(g: &EdgeColoring, seed: u64) -> EdgeColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    let mut colors: Vec<u8> = (1..=g.k() as u8).collect();
    colors.shuffle(&mut rng);
    let map: Vec<u8> = std::iter::once(0).chain(colors).collect();
    g.permute_vertices(&perm).unwrap().recolor(g.k(), &map).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_key_ignores_labels(n in 1usize..=10, k in 1usize..=4, seed: u64, shuffle: u64) {
        let g = random_coloring(n, k, seed);
        let h = relabel(&g, shuffle);
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn canonical_key_separates_classes(n in 2usize..=5, k in 2usize..=3, a: u64, b: u64, twin: bool) {
        let g = random_coloring(n, k, a);
        let h = if twin { relabel(&g, b) } else { random_coloring(n, k, b) };
        let naive = common::brute_canon(&common::to_upper(&g), n) == common::brute_canon(&common::to_upper(&h), n);
        prop_assert_eq!(canonical_key(&g) == canonical_key(&h), naive);
    }

    #[test]
    fn gallai_structure(n in 2usize..=11, k in 2usize..=6, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gallai(n, k, &mut rng);
        prop_assert!(g.is_gallai());
        for mask in 1u64..1 << n {
            let s = VertexSet(mask);
            if s.len() >= 2 {
                prop_assert!(g.colors_on_subset(s).unwrap().len() < s.len());
                prop_assert!(g.induced(s).unwrap().is_gallai());
            }
        }
        let p = find_gallai_partition(&g).unwrap();
        prop_assert_eq!(verify_partition(&g, &p).unwrap(), None);
        prop_assert!(p.quotient.is_gallai());
        prop_assert!(p.cross_colors.len() <= 2);
        let m = find_min_parts_partition(&g).unwrap();
        prop_assert_ne!(m.partition.blocks.len(), 3);
        prop_assert!(m.partition.blocks.len() <= p.blocks.len());
        spanning_connected_color(&g).unwrap();
        let used = g.used_colors().to_vec();
        if used.len() >= 2 {
            let (merged, _) = g.unify_colors(used[0], used[1]).unwrap();
            prop_assert!(merged.is_gallai());
        }
    }

    #[test]
    fn file_formats_round_trip(n in 1usize..=12, k in 1usize..=9, seed: u64) {
        let g = random_coloring(n, k, seed);
        prop_assert_eq!(from_text(&to_text(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn biased_draws_are_seeded(n in 1usize..=20, k in 2usize..=6, r in 0.01f64..0.99, seed: u64) {
        prop_assert_eq!(biased_random_coloring(n, k, r, seed).unwrap(), biased_random_coloring(n, k, r, seed).unwrap());
    }

    #[test]
    fn event_bounds_move_with_bias(s in 3usize..=6, q in 1usize..=3, lo in 0.01f64..0.5, step in 0.01f64..0.45) {
        let k = s * (s - 1) / 2 + 2 * q + 1;
        let hi = lo + step;
        let at = |r| event_bounds(&EventParams { s, k, q, p: 12.0, r }, 1000.0).unwrap();
        prop_assert!(at(hi).ln_pr_a > at(lo).ln_pr_a);
        prop_assert!(at(hi).ln_pr_b < at(lo).ln_pr_b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parallel_search_matches_sequential(n in 2usize..=7, k in 2usize..=4, p in 3usize..=5, q in 1usize..=3) {
        let seq = exists_good_coloring(&SearchProblem::new(n, k, p, q)).unwrap();
        let par = exists_good_coloring(&SearchProblem { mode: Mode::Parallel { jobs: Some(3) }, ..SearchProblem::new(n, k, p, q) }).unwrap();
        prop_assert_eq!(&seq.verdict, &par.verdict);
        prop_assert_eq!(&seq.stats.census, &par.stats.census);
        if let Verdict::Sat(g) = &seq.verdict {
            prop_assert!(common::is_good(&common::to_upper(g), n, p, q));
        }
    }

    #[test]
    fn resampling_is_seeded(seed: u64) {
        let problem = ResampleProblem { n: 6, k: 3, s: 3, p: 3, q: 1, r: 0.6, seed, max_rounds: 200 };
        let (a, b) = (resample_search(&problem).unwrap(), resample_search(&problem).unwrap());
        prop_assert_eq!(&a, &b);
        if let Verdict::Sat(g) = &a.verdict {
            prop_assert!(common::is_good(&common::to_upper(g), 6, 3, 1));
        }
    }
}
