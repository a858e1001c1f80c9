mod common;

use common::{normalize, scope};
use credal_core::credal::{
    conditional_product, fiber, is_projective, marginalize, marginalize_dist, strong_product,
    vacuous_extend,
};
use credal_core::polytope::{euclidean_project, h_to_v, image, intersect, minimal_v, v_to_h};
use credal_core::rational::{int, ratio};
use credal_core::{
    commutes, compose, CredalSet, Distribution, LinearMap, Point, Rational, Scope, VertexSet,
};
use num_traits::Zero;
use proptest::prelude::*;

fn int_points(max_dim: usize, max_points: usize) -> impl Strategy<Value = VertexSet> {
    (1..=max_dim).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, d), 1..=max_points).prop_map(
            move |rows| {
                VertexSet::from_rows(
                    rows.into_iter()
                        .map(|r| r.into_iter().map(int).collect())
                        .collect(),
                )
                .unwrap()
            },
        )
    })
}

fn weights(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..5, n).prop_filter("some mass", |w| w.iter().any(|&x| x > 0))
}

fn credal(names: &'static [&'static str], max_vertices: usize) -> impl Strategy<Value = CredalSet> {
    let cells = 1 << names.len();
    prop::collection::vec(weights(cells), 1..=max_vertices).prop_map(move |rows| {
        CredalSet::from_rows(scope(names), rows.iter().map(|w| normalize(w)).collect()).unwrap()
    })
}

fn dist(names: &'static [&'static str]) -> impl Strategy<Value = Distribution> {
    weights(1 << names.len())
        .prop_map(move |w| Distribution::new(scope(names), Point::new(normalize(&w))).unwrap())
}

fn grid_point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-10i64..=10, d)
        .prop_map(|v| Point::new(v.into_iter().map(|x| ratio(x, 2)).collect()))
}

/// A partner for `m1` over X2X3 with the same X2 marginal: each marginal vertex is
/// split over X3 by one or two conditionals.
fn projective_partner(m1: &CredalSet, splits: &[(u32, u32)]) -> CredalSet {
    let marginal = marginalize(m1, &scope(&["X2"])).unwrap();
    let mut rows = Vec::new();
    for (i, v) in marginal.hull().points().iter().enumerate() {
        for k in 0..2 {
            let (r, s) = splits[(2 * i + k) % splits.len()];
            rows.push(vec![
                &v[0] * ratio(r as i64, 4),
                &v[0] * ratio(4 - r as i64, 4),
                &v[1] * ratio(s as i64, 4),
                &v[1] * ratio(4 - s as i64, 4),
            ]);
        }
    }
    CredalSet::from_rows(scope(&["X2", "X3"]), rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_gives_minimal_form(v in int_points(4, 7)) {
        let back = h_to_v(&v_to_h(&v)).unwrap();
        prop_assert_eq!(back, minimal_v(&v));
    }

    #[test]
    fn both_representations_agree_on_membership(
        (v, x) in int_points(3, 6).prop_flat_map(|v| { let d = v.dim(); (Just(v), grid_point(d)) })
    ) {
        prop_assert_eq!(v.contains(&x).unwrap(), v_to_h(&v).contains(&x).unwrap());
    }

    #[test]
    fn minimal_form_is_idempotent(v in int_points(4, 8)) {
        let once = minimal_v(&v);
        prop_assert_eq!(minimal_v(&once), once.clone());
        for p in v.points() {
            prop_assert!(once.contains(p).unwrap());
        }
    }

    #[test]
    fn intersection_is_conjunction(
        (a, b, x) in (1usize..=3).prop_flat_map(|d| {
            let pts = move || prop::collection::vec(prop::collection::vec(-4i64..=4, d), 1..=5);
            (pts(), pts(), grid_point(d))
        })
    ) {
        let to_v = |rows: Vec<Vec<i64>>| VertexSet::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap();
        let (a, b) = (to_v(a), to_v(b));
        let both = intersect(&v_to_h(&a), &v_to_h(&b)).unwrap();
        prop_assert_eq!(
            both.contains(&x).unwrap(),
            a.contains(&x).unwrap() && b.contains(&x).unwrap()
        );
    }

    #[test]
    fn image_is_hull_of_mapped_points(
        (v, m) in (1usize..=4).prop_flat_map(|d| (
            prop::collection::vec(prop::collection::vec(-4i64..=4, d), 1..=6),
            prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=3),
        ))
    ) {
        let d = v[0].len();
        let v = VertexSet::from_rows(v.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap();
        let map = LinearMap::new(m.into_iter().map(|r| r.into_iter().map(int).collect()).collect(), d).unwrap();
        let img = image(&v, &map).unwrap();
        for p in v.points() {
            prop_assert!(img.contains(&map.apply(p).unwrap()).unwrap());
        }
        for q in img.points() {
            prop_assert!(v.points().iter().any(|p| map.apply(p).unwrap() == *q));
        }
    }

    #[test]
    fn projection_is_nearest_point(
        (v, x) in int_points(4, 6).prop_flat_map(|v| { let d = v.dim(); (Just(v), grid_point(d)) })
    ) {
        let p = euclidean_project(&x, &v).unwrap();
        prop_assert!(v.contains(&p).unwrap());
        let r = x.sub(&p);
        for w in v.points() {
            prop_assert!(r.dot(&w.sub(&p)) <= Rational::zero());
        }
        if v.contains(&x).unwrap() {
            prop_assert_eq!(p, x);
        }
    }

    #[test]
    fn marginalization_is_transitive(m in credal(&["X1", "X2", "X3"], 4)) {
        let direct = marginalize(&m, &scope(&["X3"])).unwrap();
        let step = marginalize(&marginalize(&m, &scope(&["X2", "X3"])).unwrap(), &scope(&["X3"])).unwrap();
        prop_assert_eq!(direct, step);
    }

    #[test]
    fn extension_keeps_the_marginal(m in credal(&["X1", "X2"], 4)) {
        let big = scope(&["X1", "X2", "X3"]);
        let ext = vacuous_extend(&m, &big).unwrap();
        prop_assert_eq!(marginalize(&ext, m.scope()).unwrap(), m.clone());
        prop_assert_eq!(ext.scope(), &big);
    }

    #[test]
    fn conditional_product_has_both_marginals(p1 in dist(&["X1", "X2"]), r in 0i64..=4, t in 0i64..=4) {
        let q = marginalize_dist(&p1, &scope(&["X2"])).unwrap();
        let (q0, q1) = (&q.masses()[0], &q.masses()[1]);
        let masses = vec![q0 * ratio(r, 4), q0 * ratio(4 - r, 4), q1 * ratio(t, 4), q1 * ratio(4 - t, 4)];
        let p2 = Distribution::new(scope(&["X2", "X3"]), Point::new(masses)).unwrap();
        let prod = conditional_product(&p1, &p2).unwrap();
        prop_assert_eq!(marginalize_dist(&prod, p1.scope()).unwrap(), p1);
        prop_assert_eq!(marginalize_dist(&prod, p2.scope()).unwrap(), p2);
    }

    #[test]
    fn fiber_members_have_the_pinned_marginal(m in credal(&["X1", "X2"], 4), w in weights(4)) {
        let x2 = scope(&["X2"]);
        let marg = marginalize(&m, &x2).unwrap();
        // A convex combination of the marginal's vertices lies in the marginal.
        let pts = marg.hull().points();
        let lam = normalize(&w[..pts.len().min(4)].iter().map(|x| x + 1).collect::<Vec<_>>());
        let mut q = vec![Rational::zero(); 2];
        for (l, p) in lam.iter().zip(pts) {
            for (qi, pi) in q.iter_mut().zip(p.iter()) {
                *qi += l * pi;
            }
        }
        let q = Distribution::new(x2.clone(), Point::new(q)).unwrap();
        let f = fiber(&m, &q).unwrap();
        prop_assert!(f.is_subset_of(&m).unwrap());
        for v in f.vertices() {
            prop_assert_eq!(marginalize_dist(&v, &x2).unwrap(), q.clone());
        }
    }

    #[test]
    fn strong_product_marginals(a in credal(&["X1"], 3), b in credal(&["X2", "X3"], 3)) {
        let s = strong_product(&a, &b).unwrap();
        prop_assert_eq!(marginalize(&s, a.scope()).unwrap(), a);
        prop_assert_eq!(marginalize(&s, b.scope()).unwrap(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_keeps_first_marginal(m1 in credal(&["X1", "X2"], 4), m2 in credal(&["X2", "X3"], 4)) {
        let r = compose(&m1, &m2).unwrap();
        prop_assert_eq!(r.scope(), &scope(&["X1", "X2", "X3"]));
        for v in r.vertices() {
            prop_assert!(v.masses().iter().all(|x| *x >= Rational::zero()));
        }
        prop_assert_eq!(marginalize(&r, m1.scope()).unwrap(), m1.clone());
        prop_assert_eq!(compose(&m1, &m2).unwrap(), r);
    }

    #[test]
    fn commutation_iff_projective(m1 in credal(&["X1", "X2"], 4), m2 in credal(&["X2", "X3"], 4)) {
        prop_assert_eq!(commutes(&m1, &m2).unwrap(), is_projective(&m1, &m2).unwrap());
    }

    #[test]
    fn projective_pairs_commute(
        m1 in credal(&["X1", "X2"], 4),
        splits in prop::collection::vec((0u32..=4, 0u32..=4), 1..=4),
    ) {
        let m2 = projective_partner(&m1, &splits);
        prop_assert!(is_projective(&m1, &m2).unwrap());
        prop_assert!(commutes(&m1, &m2).unwrap());
    }

    #[test]
    fn same_scope_composition_is_identity(m1 in credal(&["X1", "X2"], 4), m2 in credal(&["X1", "X2"], 4)) {
        prop_assert_eq!(compose(&m1, &m2).unwrap(), m1);
    }

    #[test]
    fn dominated_singletons_give_the_product(p1 in dist(&["X1", "X2"]), p2 in dist(&["X2", "X3"])) {
        let x2 = scope(&["X2"]);
        let (a, b) = (marginalize_dist(&p1, &x2).unwrap(), marginalize_dist(&p2, &x2).unwrap());
        let dominated = credal_core::credal::abs_continuous(&a, &b).unwrap();
        let r = compose(&CredalSet::singleton(p1.clone()), &CredalSet::singleton(p2.clone())).unwrap();
        if dominated {
            prop_assert_eq!(r, CredalSet::singleton(conditional_product(&p1, &p2).unwrap()));
        } else {
            let union: Scope = scope(&["X1", "X2", "X3"]);
            prop_assert_eq!(r, vacuous_extend(&CredalSet::singleton(p1), &union).unwrap());
        }
    }

    #[test]
    fn disjoint_composition_recovers_strong_product(a in credal(&["X1"], 3), b in credal(&["X2", "X3"], 3)) {
        let m = strong_product(&a, &b).unwrap();
        let r = compose(&marginalize(&m, a.scope()).unwrap(), &marginalize(&m, b.scope()).unwrap()).unwrap();
        prop_assert_eq!(r, m);
    }
}
