use asdim_core::cover::{exact_min_bound, greedy_witness, is_r_disjoint, lebesgue_numbers, Cover, ExtNat};
use asdim_core::sampling::{random_connected_graph, rng_from_seed};
use asdim_core::{FiniteGraph, MetricView, VertexSubset, INF};
use proptest::prelude::*;

fn floyd(g: &FiniteGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
        for &w in g.neighbors(v) {
            row[w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Least `D` over every assignment of `n + 1` colors, each color class cut
/// into classes of the closure of `d < r`.
fn brute_force_bound(g: &FiniteGraph, r: u32, n: usize) -> u32 {
    let d = floyd(g);
    let m = g.vertex_count();
    let colors = n + 1;
    let total = colors.pow(m as u32);
    let mut best = INF;
    for code in 0..total {
        let mut c = code;
        let color: Vec<usize> = (0..m)
            .map(|_| {
                let x = c % colors;
                c /= colors;
                x
            })
            .collect();
        let mut comp: Vec<usize> = (0..m).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..m {
                for j in 0..m {
                    if color[i] == color[j] && d[i][j] < r && comp[j] < comp[i] {
                        comp[i] = comp[j];
                        changed = true;
                    }
                }
            }
        }
        let mut worst = 0;
        for i in 0..m {
            for j in 0..m {
                if comp[i] == comp[j] {
                    worst = worst.max(d[i][j]);
                }
            }
        }
        best = best.min(worst);
    }
    best
}

fn graph_strategy() -> impl Strategy<Value = FiniteGraph> {
    (any::<u64>(), 1usize..=7).prop_map(|(seed, n)| {
        let mut rng = rng_from_seed(seed);
        random_connected_graph(&mut rng, n, n / 2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn exact_bound_matches_brute_force(g in graph_strategy(), r in 1u32..=3, n in 0usize..=1) {
        let x = MetricView::whole(&g);
        let exact = exact_min_bound(&x, r, n).unwrap();
        prop_assert_eq!(exact.bound, brute_force_bound(&g, r, n));
        exact.witness.validate(&x).unwrap();
    }

    #[test]
    fn greedy_witnesses_are_valid_and_no_better_than_exact(g in graph_strategy(), r in 1u32..=3, n in 0usize..=2) {
        let x = MetricView::whole(&g);
        if let Some(w) = greedy_witness(&x, r, n).unwrap() {
            w.validate(&x).unwrap();
            for fam in &w.families {
                prop_assert!(is_r_disjoint(&x, fam, r).unwrap());
            }
            let exact = exact_min_bound(&x, r, n).unwrap();
            prop_assert!(w.bound >= exact.bound);
        }
    }

    #[test]
    fn greedy_is_deterministic(g in graph_strategy(), r in 1u32..=3) {
        let x = MetricView::whole(&g);
        prop_assert_eq!(greedy_witness(&x, r, 1).unwrap(), greedy_witness(&x, r, 1).unwrap());
    }

    #[test]
    fn lebesgue_numbers_match_oracle(g in graph_strategy(), seed in any::<u64>()) {
        use rand::Rng;
        let m = g.vertex_count();
        let mut rng = rng_from_seed(seed);
        let mut members: Vec<VertexSubset> = (0..m).map(VertexSubset::singleton).collect();
        for _ in 0..3 {
            members.push((0..m).filter(|_| rng.gen_bool(0.6)).collect());
        }
        members.retain(|u| !u.is_empty());
        let x = MetricView::whole(&g);
        let cover = Cover::new(&x, members.clone()).unwrap();
        let d = floyd(&g);
        let depth = |p: usize, u: &VertexSubset| (0..m).filter(|&y| !u.contains(y)).map(|y| d[p][y]).min().unwrap_or(INF);
        let per_member = members.iter().map(|u| u.iter().map(|p| depth(p, u)).max().unwrap()).min().unwrap();
        let standard = (0..m)
            .map(|p| members.iter().filter(|u| u.contains(p)).map(|u| depth(p, u)).max().unwrap())
            .min()
            .unwrap();
        let got = lebesgue_numbers(&x, &cover);
        prop_assert_eq!(got.per_member, ExtNat::from_distance(per_member));
        prop_assert_eq!(got.standard, ExtNat::from_distance(standard));
    }
}

#[test]
fn path_oracle_values() {
    let p = FiniteGraph::path(10);
    let x = MetricView::whole(&p);
    assert_eq!(exact_min_bound(&x, 3, 1).unwrap().bound, 1);
    assert_eq!(exact_min_bound(&x, 3, 0).unwrap().bound, 9);
}

#[test]
fn whole_space_cover_has_infinite_lebesgue_number() {
    let c = FiniteGraph::cycle(6);
    let x = MetricView::whole(&c);
    let cover = Cover::new(&x, vec![c.all_vertices()]).unwrap();
    assert_eq!(lebesgue_numbers(&x, &cover).standard, ExtNat::Infinite);
}
