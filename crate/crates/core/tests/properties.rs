use proptest::prelude::*;

use thompson_pingpong::exact::rat;
use thompson_pingpong::plmap::word::{r, x0, x1};
use thompson_pingpong::{ArcSet, PlMap};

fn arc() -> impl Strategy<Value = ArcSet> {
    (0i64..16, 0i64..16, any::<bool>(), any::<bool>()).prop_filter_map("degenerate", |(a, b, sc, ec)| {
        ArcSet::arc(&rat(a, 16), &rat(b, 16), sc, ec).ok()
    })
}

fn arc_set() -> impl Strategy<Value = ArcSet> {
    prop::collection::vec(arc(), 0..4).prop_map(|arcs| arcs.iter().fold(ArcSet::empty(), |acc, a| acc.union(a)))
}

fn element() -> impl Strategy<Value = PlMap> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..8).prop_map(|letters| {
        let gens = [x0(), x1(), r()];
        letters.iter().fold(PlMap::identity(), |acc, &(i, inv)| {
            if inv {
                acc.compose(&gens[i].inverse())
            } else {
                acc.compose(&gens[i])
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boolean_algebra(a in arc_set(), b in arc_set(), c in arc_set()) {
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.intersection(&b).complement(), a.complement().union(&b.complement()));
        prop_assert_eq!(a.intersection(&b.union(&c)), a.intersection(&b).union(&a.intersection(&c)));
        prop_assert_eq!(a.union(&a.intersection(&b)), a.clone());
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
        prop_assert!(a.union(&a.complement()).is_full());
        prop_assert!(a.intersection(&a.complement()).is_empty());
    }

    #[test]
    fn arc_set_text_round_trip(a in arc_set()) {
        let back: ArcSet = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn group_laws(f in element(), g in element(), h in element()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(&f).is_identity());
        prop_assert_eq!(f.compose(&PlMap::identity()), f.clone());
        prop_assert_eq!(PlMap::identity().compose(&f), f.clone());
        prop_assert!(f.is_thompson_t());
        let back: PlMap = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rotation_of_powers(f in element(), m in -6i64..=6) {
        let rot = f.rotation_number(64).unwrap();
        prop_assert_eq!(f.power(m).rotation_number(64).unwrap(), rot.times(m));
        let orbit = f.periodic_orbit_witness(&rot).unwrap();
        prop_assert_eq!(orbit.len() as u64, rot.denominator());
    }

    #[test]
    fn conjugation_invariance(f in element(), c in element()) {
        let k = f.conjugate(&c);
        prop_assert_eq!(k.rotation_number(64).unwrap(), f.rotation_number(64).unwrap());
        prop_assert_eq!(k.fixed_set(), c.image(&f.fixed_set()));
        prop_assert_eq!(k.support(), c.image(&f.support()));
    }

    #[test]
    fn set_transport(f in element(), g in element(), a in arc_set(), b in arc_set()) {
        prop_assert_eq!(f.image(&a.union(&b)), f.image(&a).union(&f.image(&b)));
        prop_assert_eq!(f.image(&a.intersection(&b)), f.image(&a).intersection(&f.image(&b)));
        prop_assert_eq!(f.image(&a.complement()), f.image(&a).complement());
        prop_assert_eq!(f.compose(&g).image(&a), f.image(&g.image(&a)));
        prop_assert_eq!(f.preimage(&f.image(&a)), a);
    }

    #[test]
    fn fixed_set_and_support_partition(f in element()) {
        let (fix, supp) = (f.fixed_set(), f.support());
        prop_assert!(fix.union(&supp).is_full());
        prop_assert!(fix.is_disjoint(&supp));
        prop_assert!(fix.is_closed());
        prop_assert!(supp.is_open());
    }
}
