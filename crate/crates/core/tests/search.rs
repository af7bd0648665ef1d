use std::collections::HashSet;

use wordrep::{
    generate, representation_number, search_k_word, FamilySpec, Graph, Pruning, SearchConfig, SearchStatus, Word,
};

/// Bit of pair `(u, v)`, `u < v`, in an edge mask.
fn pair_bit(n: usize, u: usize, v: usize) -> u32 {
    (u * (2 * n - u - 1) / 2 + (v - u - 1)) as u32
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let edges =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| mask >> pair_bit(n, u, v) & 1 == 1);
    Graph::from_edges(n, edges).unwrap()
}

/// Edge masks of every graph on `n` vertices with a `k`-uniform
/// representant, by enumerating all `k`-uniform words.
fn representable_masks(n: usize, k: usize) -> HashSet<u32> {
    fn extend(word: &mut Vec<usize>, left: &mut [usize], n: usize, out: &mut HashSet<u32>) {
        if left.iter().all(|&c| c == 0) {
            let mut mask = 0u32;
            for u in 0..n {
                for v in u + 1..n {
                    let r: Vec<usize> = word.iter().copied().filter(|&l| l == u || l == v).collect();
                    if r.windows(2).all(|p| p[0] != p[1]) {
                        mask |= 1 << pair_bit(n, u, v);
                    }
                }
            }
            out.insert(mask);
            return;
        }
        for x in 0..n {
            if left[x] > 0 {
                left[x] -= 1;
                word.push(x);
                extend(word, left, n, out);
                word.pop();
                left[x] += 1;
            }
        }
    }
    let mut out = HashSet::new();
    extend(&mut Vec::new(), &mut vec![k; n], n, &mut out);
    out
}

#[test]
fn search_agrees_with_brute_force_on_small_graphs() {
    let cases = (1..=5).flat_map(|n| [(n, 1), (n, 2)]).chain((1..=4).map(|n| (n, 3)));
    for (n, k) in cases {
        let masks = representable_masks(n, k);
        for mask in 0..1u32 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let expected = masks.contains(&mask);
            for sym in [true, false] {
                let out = search_k_word(&g, &SearchConfig::new(k).with_symmetry_breaking(sym)).unwrap();
                assert_ne!(out.status, SearchStatus::BudgetExceeded);
                assert_eq!(out.found(), expected, "n={n} k={k} mask={mask:#b} sym={sym}");
                if let Some(w) = out.word {
                    assert!(w.is_k_uniform(k) && w.represents(&g).unwrap());
                }
            }
        }
    }
}

fn rules_without(i: usize) -> Pruning {
    let mut p = Pruning::ALL;
    match i {
        0 => p.alternation = false,
        1 => p.count_gap = false,
        2 => p.capacity = false,
        3 => p.complete_nonedge = false,
        _ => p.precedence = false,
    }
    p
}

#[test]
fn each_rule_only_removes_nodes() {
    let cases = [
        (FamilySpec::cycle(5), 2),
        (FamilySpec::path(4), 2),
        (FamilySpec::prism(3), 2),
        (FamilySpec::ladder(3), 2),
        (FamilySpec::cycle(4), 3),
    ];
    for (spec, k) in cases {
        let g = generate(spec).unwrap();
        let all = search_k_word(&g, &SearchConfig::new(k)).unwrap();
        for i in 0..5 {
            let weaker = search_k_word(&g, &SearchConfig::new(k).with_pruning(rules_without(i))).unwrap();
            assert_eq!(weaker.status, all.status, "{spec} k={k} rule {i}");
            // pruning is sound, so the first word in branch order is the same
            assert_eq!(weaker.word, all.word, "{spec} k={k} rule {i}");
            assert!(weaker.nodes_expanded >= all.nodes_expanded, "{spec} k={k} rule {i}");
        }
    }
}

#[test]
fn unpruned_search_finds_the_same_word() {
    for (spec, k) in [(FamilySpec::cycle(4), 2), (FamilySpec::path(4), 2), (FamilySpec::complete(3), 2)] {
        let g = generate(spec).unwrap();
        let pruned = search_k_word(&g, &SearchConfig::new(k)).unwrap();
        let bare = search_k_word(&g, &SearchConfig::new(k).with_pruning(Pruning::NONE)).unwrap();
        assert_eq!((pruned.status, &pruned.word), (bare.status, &bare.word), "{spec}");
        assert!(bare.nodes_expanded >= pruned.nodes_expanded);
    }
}

#[test]
fn parallel_agrees_with_sequential() {
    for (spec, k) in
        [(FamilySpec::cycle(6), 2), (FamilySpec::prism(3), 2), (FamilySpec::grid(3, 3), 2), (FamilySpec::grid(2, 3), 3)]
    {
        let g = generate(spec).unwrap();
        let seq = search_k_word(&g, &SearchConfig::new(k)).unwrap();
        let par = search_k_word(&g, &SearchConfig::new(k).with_parallel(true)).unwrap();
        assert_eq!(seq.status, par.status, "{spec}");
        if let Some(w) = par.word {
            assert!(w.represents(&g).unwrap());
        }
    }
}

#[test]
fn grid_3x3_lower_bound_and_value() {
    let g = generate(FamilySpec::grid(3, 3)).unwrap();
    let out = search_k_word(&g, &SearchConfig::new(2)).unwrap();
    assert_eq!(out.status, SearchStatus::ExhaustedNoSolution);
    let r = representation_number(&g, 3, &SearchConfig::new(2)).unwrap();
    assert_eq!((r.value, r.lower_bound, r.upper_bound), (Some(3), 3, Some(3)));
}

#[test]
fn small_tori_have_3_uniform_representants() {
    for (m, n) in [(3, 3), (3, 4)] {
        let g = generate(FamilySpec::toroidal_grid(m, n)).unwrap();
        let out = search_k_word(&g, &SearchConfig::new(3)).unwrap();
        assert_eq!(out.status, SearchStatus::Found, "torus {m}x{n}");
        let w = out.word.unwrap();
        assert!(w.is_k_uniform(3) && w.graph().same_edges(&g));
    }
}

/// Found by an unbudgeted k = 3 search (about 1.7e7 nodes); row-major ids.
const TORUS_3X5_WORD: &str = "0 1 2 4 3 5 6 7 10 0 9 5 11 14 4 8 9 10 12 13 14 1 0 2 6 5 11 1 3 7 6 10 12 11 2 8 7 \
                              4 9 13 12 3 8 14 13";

#[test]
fn torus_3x5_has_a_3_uniform_representant() {
    let g = generate(FamilySpec::toroidal_grid(3, 5)).unwrap();
    let ids = TORUS_3X5_WORD.split_whitespace().map(|t| t.parse().unwrap());
    let w = Word::from_ids(ids, 15).unwrap();
    assert!(w.is_k_uniform(3));
    assert!(w.represents(&g).unwrap());
    assert!(w.check_fact1(&g));
}

#[test]
fn budgets_never_masquerade_as_exhaustion() {
    let g = generate(FamilySpec::toroidal_grid(3, 5)).unwrap();
    let out = search_k_word(&g, &SearchConfig::new(3).with_node_budget(20_000)).unwrap();
    assert_eq!(out.status, SearchStatus::BudgetExceeded);
    assert!(out.word.is_none());
    let timed =
        search_k_word(&g, &SearchConfig::new(3).with_time_budget(std::time::Duration::from_millis(50))).unwrap();
    assert_eq!(timed.status, SearchStatus::BudgetExceeded);
}
