use asdim_core::cover::{exact_min_bound, greedy_witness};
use asdim_core::sampling::rng_from_seed;
use asdim_core::{check_quasi_isometry, FiniteGraph, MetricView, QiFit, Rational, VertexMap, VertexSubset};
use proptest::prelude::*;
use rand::Rng;

/// A target graph for `P₁₀` and a vertex map into it: the path is stretched,
/// kept or folded in half, then decorated with pendant vertices and
/// triangles that leave distances between path vertices unchanged.
fn qi_fixture(seed: u64) -> (FiniteGraph, VertexMap) {
    let mut rng = rng_from_seed(seed);
    let (len, image): (usize, Box<dyn Fn(usize) -> usize>) = match rng.gen_range(0..3) {
        0 => (10, Box::new(|i| i)),
        1 => (19, Box::new(|i| 2 * i)),
        _ => (5, Box::new(|i| i / 2)),
    };
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    let mut n = len;
    for _ in 0..rng.gen_range(0..6) {
        let at = rng.gen_range(0..len);
        if rng.gen_bool(0.5) || at + 1 == len {
            edges.push((at, n));
        } else {
            edges.push((at, n));
            edges.push((at + 1, n));
        }
        n += 1;
    }
    let g = FiniteGraph::from_index_edges(n, &edges).unwrap();
    let map = VertexMap::new((0..10).map(|i| (i, image(i))).collect());
    (g, map)
}

fn two_one() -> QiFit {
    QiFit {
        gamma: Rational::from_integer(2),
        c: Rational::from_integer(1),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transported_witness_is_valid(seed in any::<u64>(), r in 4u32..=9, n in 0usize..=1) {
        let p = FiniteGraph::path(10);
        let src = MetricView::whole(&p);
        let (g, map) = qi_fixture(seed);
        let whole = MetricView::whole(&g);
        let fit = two_one();
        prop_assert!(check_quasi_isometry(&src, &whole, &map, fit.gamma, fit.c).unwrap());

        let witness = exact_min_bound(&src, r, n).unwrap().witness;
        let moved = witness.transport(&whole, &map, fit).unwrap();
        prop_assert_eq!(moved.r, r / 2 - 1);
        prop_assert_eq!(moved.bound, 2 * witness.bound + 1);
        prop_assert_eq!(moved.n, n);
        let image: VertexSubset = map.pairs.iter().map(|&(_, y)| y).collect();
        let target = MetricView::restricted(&g, image);
        moved.validate(&target).unwrap();
    }
}

#[test]
fn transport_rejects_vanishing_radius() {
    let p = FiniteGraph::path(10);
    let src = MetricView::whole(&p);
    let w = greedy_witness(&src, 3, 1).unwrap().unwrap();
    let map = VertexMap::new((0..10).map(|i| (i, i)).collect());
    assert!(w.transport(&src, &map, two_one()).is_err());
}
