use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use mz_core::charpoly::{cp_delete_contract, Engine};
use mz_core::gfq::FieldSpec;
use mz_core::harness::{
    gen_extension, leaf_extension, suite, verify_identities, verify_size_and_cocircuit_bounds,
};
use mz_core::matroid::{elements, full_mask, Matroid, MinorView, RankFn};
use mz_core::poly::{largest_real_root, sturm_positive_beyond, IntPolynomial};
use mz_core::projgeom::{extend, starfish_expansion, starfish_sum};
use mz_core::treedecomp::{exact_treewidth_small, reduce_trace, width, Tree, TreeDecomposition};

fn linear(q: u32, r: usize, cols: Vec<Vec<u8>>) -> Matroid {
    Matroid::from_columns(Arc::new(FieldSpec::gf(q).unwrap()), r, cols).unwrap()
}

fn matroid(max_n: usize) -> impl Strategy<Value = Matroid> {
    (
        prop::sample::select(vec![2u32, 3, 4, 5]),
        1usize..=4,
        1usize..=max_n,
    )
        .prop_flat_map(|(q, r, n)| {
            prop::collection::vec(prop::collection::vec(0..q as u8, r), n)
                .prop_map(move |c| linear(q, r, c))
        })
}

/// A random labelled tree from a Prüfer sequence.
fn tree(max_vertices: usize) -> impl Strategy<Value = Tree> {
    (1usize..=max_vertices).prop_flat_map(|v| {
        prop::collection::vec(0..v, v.saturating_sub(2)).prop_map(move |seq| {
            if v <= 2 {
                return Tree::path(v);
            }
            let mut degree = vec![1usize; v];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut edges = Vec::new();
            for &s in &seq {
                let leaf = (0..v).find(|&x| degree[x] == 1).unwrap();
                edges.push((leaf, s));
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..v).filter(|&x| degree[x] == 1).collect();
            edges.push((rest[0], rest[1]));
            Tree::new(v, edges).unwrap()
        })
    })
}

fn decomposed(
    max_n: usize,
    max_vertices: usize,
) -> impl Strategy<Value = (Matroid, TreeDecomposition)> {
    (matroid(max_n), tree(max_vertices)).prop_flat_map(|(m, t)| {
        let v = t.vertex_count();
        prop::collection::vec(0..v, m.size())
            .prop_map(move |tau| (m.clone(), TreeDecomposition::new(t.clone(), tau).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_axioms(m in matroid(7)) {
        let full = full_mask(m.size());
        prop_assert_eq!(m.rank(0), 0);
        for a in 0..=full {
            let ra = m.rank(a);
            prop_assert!(ra <= a.count_ones() as usize);
            for e in elements(full & !a) {
                let rae = m.rank(a | 1 << e);
                prop_assert!(rae == ra || rae == ra + 1);
            }
        }
        for a in (0..=full).step_by(3) {
            for b in (0..=full).step_by(5) {
                prop_assert!(m.rank(a | b) + m.rank(a & b) <= m.rank(a) + m.rank(b));
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator(m in matroid(8), a in any::<u32>(), b in any::<u32>()) {
        let full = full_mask(m.size());
        let (a, b) = (a & full, (a | b) & full);
        let ca = m.closure(a);
        prop_assert_eq!(ca & a, a);
        prop_assert_eq!(m.closure(ca), ca);
        prop_assert_eq!(m.rank(ca), m.rank(a));
        prop_assert_eq!(m.closure(b) & ca, ca);
    }

    #[test]
    fn deletion_and_contraction_commute(m in matroid(8), x in any::<u32>(), y in any::<u32>()) {
        let full = full_mask(m.size());
        let (d, c) = (x & full, y & full & !x);
        let v = MinorView::new(&m);
        let dc = v.delete(d).contract(c);
        let cd = v.contract(c).delete(d);
        let rest = full & !d & !c;
        let linear = m.contract_linear(c).unwrap();
        let kept: Vec<usize> = elements(full & !c).collect();
        let compact = |s: u32| {
            kept.iter().enumerate().filter(|(_, &e)| s >> e & 1 == 1).fold(0u32, |a, (i, _)| a | 1 << i)
        };
        let mut s = rest;
        loop {
            prop_assert_eq!(dc.rank(s), cd.rank(s));
            prop_assert_eq!(linear.rank(compact(s)), cd.rank(s));
            if s == 0 { break; }
            s = (s - 1) & rest;
        }
    }

    #[test]
    fn engines_agree(m in matroid(9)) {
        let polys: Vec<IntPolynomial> = Engine::ALL.iter().map(|e| e.compute(&m).unwrap()).collect();
        for p in &polys[1..] {
            prop_assert_eq!(p, &polys[0]);
        }
    }

    #[test]
    fn deletion_contraction_identity(m in matroid(9)) {
        let whole = cp_delete_contract(&m);
        let v = MinorView::new(&m);
        for e in 0..m.size() {
            if m.rank(1 << e) == 0 || m.is_coloop(e) {
                continue;
            }
            let del = Engine::Boolean.compute(&v.delete(1 << e)).unwrap();
            let con = Engine::Mobius.compute(&v.contract(1 << e)).unwrap();
            prop_assert_eq!(&del - &con, whole.clone());
        }
    }

    #[test]
    fn sturm_positivity_agrees_with_sampling(roots in prop::collection::vec(-6i64..=12, 1..6), lead in 1i64..4, b in -4i64..14) {
        // p = lead * Π (x − root) plus a monic quadratic factor without real roots
        let mut p = IntPolynomial::from_i64(&[lead]);
        for &r in &roots {
            p = &p * &IntPolynomial::linear_root(r);
        }
        p = &p * &IntPolynomial::from_i64(&[5, 2, 1]);
        let bound = BigRational::from_integer(BigInt::from(b));
        let positive = sturm_positive_beyond(&p, &bound);
        let max_root = *roots.iter().max().unwrap();
        prop_assert_eq!(positive, max_root <= b);
        let root = largest_real_root(&p, &BigRational::new(1.into(), 1024.into())).unwrap();
        prop_assert!(root.is_exact());
        prop_assert_eq!(root.lo, BigRational::from_integer(max_root.into()));
        for k in 1..20 {
            let x = &bound + BigRational::new(k.into(), 3.into());
            if positive {
                prop_assert!(p.eval_rational(&x) > BigRational::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn bag_rank_is_at_most_node_width((m, dec) in decomposed(9, 7)) {
        let rep = width(&m, &dec).unwrap();
        for v in 0..dec.tree().vertex_count() {
            let bag_rank = m.rank(dec.bag(v));
            prop_assert!(bag_rank <= rep.node_widths[v]);
            prop_assert!(bag_rank <= rep.width);
            if dec.tree().is_leaf(v) {
                prop_assert_eq!(bag_rank, rep.node_widths[v]);
            }
        }
        prop_assert_eq!(rep.width, rep.node_widths.iter().copied().max().unwrap());
    }

    #[test]
    fn reduction_is_monotone((m, dec) in decomposed(9, 8)) {
        let trace = reduce_trace(&m, &dec).unwrap();
        for pair in trace.windows(2) {
            prop_assert!(pair[1].tree().vertex_count() < pair[0].tree().vertex_count());
            prop_assert!(width(&m, &pair[1]).unwrap().width <= width(&m, &pair[0]).unwrap().width);
        }
        let last = trace.last().unwrap();
        for &(u, w) in last.tree().edges() {
            let (a, b) = last.displayed_sets_edge(u, w).unwrap();
            prop_assert!(a & !m.closure(b) != 0);
            prop_assert!(b & !m.closure(a) != 0);
        }
    }

    #[test]
    fn displayed_sets_partition((m, dec) in decomposed(9, 8)) {
        let full = full_mask(m.size());
        for v in 0..dec.tree().vertex_count() {
            let sets = dec.displayed_sets_vertex(v).unwrap();
            let mut union = dec.bag(v);
            for s in &sets {
                prop_assert_eq!(union & s, 0);
                union |= s;
            }
            prop_assert_eq!(union, full);
        }
        for &(u, w) in dec.tree().edges() {
            let (a, b) = dec.displayed_sets_edge(u, w).unwrap();
            prop_assert_eq!(a & b, 0);
            prop_assert_eq!(a | b, full);
            prop_assert_eq!(a & dec.bag(u), dec.bag(u));
        }
    }
}

fn extension_instance() -> impl Strategy<Value = mz_core::harness::InstanceRecord> {
    (
        prop::sample::select(vec![2u32, 3]),
        2usize..=3,
        any::<u64>(),
    )
        .prop_flat_map(|(q, b, seed)| {
            (1..b).prop_map(move |o| gen_extension(q, b, o, 0.8, seed).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_treewidth_is_minor_monotone(m in matroid(6)) {
        let tw = exact_treewidth_small(&m).unwrap().width;
        prop_assert!(tw <= m.full_rank().max(1));
        for e in 0..m.size() {
            prop_assert!(exact_treewidth_small(&m.delete(1 << e).unwrap()).unwrap().width <= tw);
            prop_assert!(exact_treewidth_small(&m.contract_linear(1 << e).unwrap()).unwrap().width <= tw);
        }
    }

    #[test]
    fn exact_treewidth_is_a_lower_bound((m, dec) in decomposed(6, 5)) {
        let ex = exact_treewidth_small(&m).unwrap();
        prop_assert_eq!(width(&m, &ex.witness).unwrap().width, ex.width);
        prop_assert!(ex.width <= width(&m, &dec).unwrap().width);
    }

    #[test]
    fn small_cocircuit_in_suite(q in 2u32..=3, k in 2usize..=3, seed in any::<u64>()) {
        let recs = suite(q, k, 4, seed).unwrap();
        for r in verify_size_and_cocircuit_bounds(&recs).unwrap() {
            prop_assert!(r.verdict, "{:?}", r);
        }
    }

    #[test]
    fn gluing_identities_hold(rec in extension_instance()) {
        for r in verify_identities(std::slice::from_ref(&rec)).unwrap() {
            prop_assert!(r.passed, "{:?}", r);
        }
    }

    #[test]
    fn telescoping_sum_ignores_neck_order(rec in extension_instance(), keys in prop::collection::vec(any::<u32>(), 64)) {
        let Some((ext, _, _)) = leaf_extension(&rec).unwrap() else {
            return Ok(());
        };
        let whole = Engine::Mobius.compute(ext.embedding().base()).unwrap();
        let mut order = ext.added().to_vec();
        order.sort_by_key(|&p| keys[p % keys.len()] ^ p as u32);
        let other = extend(ext.embedding(), &order).unwrap();
        prop_assert_eq!(starfish_sum(&starfish_expansion(&ext).unwrap()), whole.clone());
        prop_assert_eq!(starfish_sum(&starfish_expansion(&other).unwrap()), whole);
    }
}

#[test]
fn unbounded_roots_without_line_exclusion() {
    for n in 3..=14 {
        let p = Engine::DeleteContract
            .compute(&Matroid::uniform(2, n).unwrap())
            .unwrap();
        let root = largest_real_root(&p, &BigRational::new(1.into(), 1024.into())).unwrap();
        assert_eq!(root.lo, BigRational::from_integer(BigInt::from(n - 1)));
    }
}
