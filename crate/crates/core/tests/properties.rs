use oriented_turan_core::canon::{canonical_code, is_isomorphic};
use oriented_turan_core::containment::{contains_copy, is_free};
use oriented_turan_core::digraph::{decode, encode};
use oriented_turan_core::homomorphism::{compressibility, hom_exists, is_antidirected, longest_path_vertices};
use oriented_turan_core::regularize::{almost_regular_subdigraph, extract_bipartite};
use oriented_turan_core::{Error, OrientedGraph};
use proptest::prelude::*;

/// One ternary digit per unordered pair: none, `i -> j` or `j -> i`.
fn graph(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |digits| {
            let mut arcs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    match digits[k] {
                        1 => arcs.push((i, j)),
                        2 => arcs.push((j, i)),
                        _ => {}
                    }
                    k += 1;
                }
            }
            OrientedGraph::from_arcs(n, arcs).unwrap()
        })
    })
}

fn permuted(g: &OrientedGraph, perm: &[usize]) -> OrientedGraph {
    OrientedGraph::from_arcs(g.n(), g.arcs().into_iter().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn naive_isomorphic(g: &OrientedGraph, h: &OrientedGraph) -> bool {
    fn go(g: &OrientedGraph, h: &OrientedGraph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = g.n();
        if perm.len() == n {
            return g.arcs().iter().all(|&(a, b)| h.has_arc(perm[a], perm[b]));
        }
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                perm.push(t);
                if go(g, h, perm, used) {
                    return true;
                }
                perm.pop();
                used[t] = false;
            }
        }
        false
    }
    g.n() == h.n() && g.arc_count() == h.arc_count() && go(g, h, &mut Vec::new(), &mut vec![false; g.n()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_format_round_trips(g in graph(12)) {
        let back = decode(&encode(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        let p = g.degree_profile();
        let outs: usize = (0..g.n()).map(|v| g.out_degree(v)).sum();
        let ins: usize = (0..g.n()).map(|v| g.in_degree(v)).sum();
        prop_assert_eq!(outs, g.arc_count());
        prop_assert_eq!(ins, g.arc_count());
        prop_assert_eq!(p.arc_count(), g.arc_count());
    }

    #[test]
    fn code_is_invariant_under_relabelling(
        (g, perms) in graph(8).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), proptest::collection::vec(permutation(n), 100))
        })
    ) {
        let code = canonical_code(&g).unwrap();
        for perm in &perms {
            prop_assert_eq!(canonical_code(&permuted(&g, perm)).unwrap(), code);
        }
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(g in graph(5), h in graph(5)) {
        let h = if h.n() == g.n() { h } else { g.clone() };
        prop_assert_eq!(is_isomorphic(&g, &h).unwrap(), naive_isomorphic(&g, &h));
    }

    #[test]
    fn containment_survives_deleting_host_arcs(host in graph(7), f in graph(4), pick in any::<prop::sample::Index>()) {
        let arcs = host.arcs();
        prop_assume!(!arcs.is_empty());
        let (a, b) = arcs[pick.index(arcs.len())];
        let smaller = host.without_arc(a, b);
        if contains_copy(&smaller, &f).is_some() {
            prop_assert!(contains_copy(&host, &f).is_some());
        }
        if let Some(map) = contains_copy(&host, &f) {
            prop_assert!(map.is_embedding(&f, &host));
        } else {
            prop_assert!(is_free(&host, &f));
        }
    }

    #[test]
    fn compressibility_is_monotone_under_subgraphs(f in graph(4), pick in any::<prop::sample::Index>()) {
        let arcs = f.arcs();
        prop_assume!(arcs.len() >= 2);
        let (a, b) = arcs[pick.index(arcs.len())];
        let sub = f.without_arc(a, b);
        let whole = match compressibility(&f) {
            Err(Error::TooLarge { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let part = compressibility(&sub).unwrap();
        prop_assert!(part.rank() <= whole.rank(), "{:?} vs {:?}", part, whole);
    }

    #[test]
    fn compressibility_two_iff_antidirected(f in graph(4)) {
        prop_assume!(f.arc_count() > 0);
        let z = match compressibility(&f) {
            Err(Error::TooLarge { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert_eq!(z.value() == Some(2), is_antidirected(&f));
    }

    #[test]
    fn maps_into_transitive_tournaments_follow_longest_paths(f in graph(6), k in 1usize..7) {
        let target = OrientedGraph::transitive_tournament(k);
        let expected = longest_path_vertices(&f).is_some_and(|len| len <= k);
        let found = hom_exists(&f, &target);
        prop_assert_eq!(found.is_some(), expected);
        if let Some(map) = found {
            prop_assert!(map.is_homomorphism(&f, &target));
        }
    }

    #[test]
    fn extraction_and_regularization_invariants(g in graph(30), seed in any::<u64>()) {
        let h = extract_bipartite(&g, seed, 64).unwrap();
        prop_assert!(h.arc_count() >= g.arc_count().div_ceil(4));
        prop_assert!(h.u_len().abs_diff(h.w_len()) <= 1);
        if h.order() >= 4 && h.arc_count() > 0 {
            let c = 4.0 * h.arc_count() as f64 / (h.order() as f64).powf(1.5);
            if let Ok(res) = almost_regular_subdigraph(&h, c, 2, Some(2)) {
                prop_assert!(res.max_degree <= 40 * res.min_degree);
                prop_assert!(res.arcs as f64 >= res.c_exit / 10.0 * (res.n_s as f64).powf(1.5) - 1e-9);
            }
        }
    }
}
