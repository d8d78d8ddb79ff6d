mod common;

use cdbg_core::graph::{build, successors, GraphSpec};
use cdbg_core::words::{count_words, enumerate_words, is_t_constrained, Word, WordSpace};
use proptest::prelude::*;

/// `(d, t, n)` with at most `cap` words.
fn params(cap: u128) -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=7, 1usize..=7)
        .prop_flat_map(|(d, n)| (Just(d), 1..=d.min(n), Just(n)))
        .prop_filter("too many words", move |&(d, t, n)| {
            common::word_count(d as u128, t as u128, n as u128) <= cap
        })
}

fn graph_params(cap: u128) -> impl Strategy<Value = (usize, usize, usize)> {
    params(cap).prop_filter("graph needs d, n >= 2", |&(d, _, n)| d >= 2 && n >= 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_count((d, t, n) in params(20_000)) {
        let words = enumerate_words(d, t, n, 20_000).unwrap();
        prop_assert_eq!(words.len() as u128, common::word_count(d as u128, t as u128, n as u128));
        prop_assert_eq!(count_words(d, t, n).unwrap(), words.len().into());
        let brute: Vec<Word> = common::brute_words(d, t, n).into_iter().map(Word::new).collect();
        prop_assert_eq!(words, brute);
    }

    #[test]
    fn rank_unrank_bijection((d, t, n) in params(5_000)) {
        let space = WordSpace::new(d, t, n).unwrap();
        for i in 0..space.count() {
            let w = space.unrank(i).unwrap();
            prop_assert!(w.is_t_constrained(t));
            prop_assert_eq!(space.rank(&w).unwrap(), i);
        }
        prop_assert!(space.unrank(space.count()).is_err());
    }

    #[test]
    fn constraint_is_monotone(w in prop::collection::vec(1u8..=5, 1..8), t in 2usize..6) {
        if is_t_constrained(&w, t) {
            prop_assert!(is_t_constrained(&w, t - 1));
        }
    }

    #[test]
    fn out_regular((d, t, n) in graph_params(3_000)) {
        let g = build(GraphSpec::directed(d, t, n).unwrap()).unwrap();
        for v in 0..g.vertex_count() {
            prop_assert_eq!(g.adjacent(v).len(), d - t + 1);
        }
    }

    #[test]
    fn arcs_are_shifts((d, t, n) in graph_params(500)) {
        let g = build(GraphSpec::directed(d, t, n).unwrap()).unwrap();
        let words = common::brute_words(d, t, n);
        for (a, wa) in words.iter().enumerate() {
            let want: Vec<u32> = words
                .iter()
                .enumerate()
                .filter(|(_, wb)| common::is_arc(wa, wb))
                .map(|(b, _)| b as u32)
                .collect();
            let mut got = g.adjacent(a).to_vec();
            got.sort_unstable();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn subgraph_hierarchy((d, t, n) in graph_params(10_000).prop_filter("t >= 2", |p| p.1 >= 2)) {
        let small = build(GraphSpec::directed(d, t, n).unwrap()).unwrap();
        let big = build(GraphSpec::directed(d, t - 1, n).unwrap()).unwrap();
        let map: Vec<usize> = (0..small.vertex_count())
            .map(|v| big.index_of(&small.word(v)).unwrap())
            .collect();
        for (v, &bv) in map.iter().enumerate() {
            for &w in small.adjacent(v) {
                prop_assert!(big.adjacent(bv).contains(&(map[w as usize] as u32)));
            }
        }
    }

    #[test]
    fn undirected_symmetric_irreflexive((d, t, n) in graph_params(3_000)) {
        let g = build(GraphSpec::undirected(d, t, n).unwrap()).unwrap();
        for v in 0..g.vertex_count() {
            let adj = g.adjacent(v);
            prop_assert!(!adj.contains(&(v as u32)));
            prop_assert!(adj.windows(2).all(|p| p[0] < p[1]));
            for &w in adj {
                prop_assert!(g.adjacent(w as usize).contains(&(v as u32)));
            }
        }
    }

    #[test]
    fn successors_agree_with_graph((d, t, n) in graph_params(1_000), seed in any::<u64>()) {
        let spec = GraphSpec::directed(d, t, n).unwrap();
        let g = build(spec).unwrap();
        let v = (seed % g.vertex_count() as u64) as usize;
        let mut want: Vec<usize> = successors(&g.word(v), &spec)
            .unwrap()
            .iter()
            .map(|w| g.index_of(w).unwrap())
            .collect();
        want.sort_unstable();
        let mut got: Vec<usize> = g.adjacent(v).iter().map(|&w| w as usize).collect();
        got.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn word_text_round_trip(w in prop::collection::vec(1u8..=255, 1..10)) {
        let word = Word::new(w);
        prop_assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
    }
}

#[test]
fn permutations_when_t_equals_n() {
    for n in 1..=6 {
        let words = enumerate_words(n, n, n, 1_000).unwrap();
        assert_eq!(words.len() as u128, common::factorial(n as u128));
        for w in &words {
            let mut s = w.symbols().to_vec();
            s.sort_unstable();
            assert_eq!(s, (1..=n as u8).collect::<Vec<_>>());
        }
    }
}
