//! Elements of Thompson's groups F and T (and rational PL circle
//! homeomorphisms in general): group operations, fixed sets and supports,
//! rotation numbers, and the generator-word syntax.

mod map;
mod rotation;
pub mod word;

pub use map::{Piece, PlMap};
pub(crate) use map::max_abs_log2_slope;
pub use rotation::RotationNumber;
pub use word::{parse_element, parse_word, random_word, Bindings, GeneratorWord, Token};

/// Default period bound for rotation-number searches.
pub const DEFAULT_Q_MAX: u32 = 64;

#[cfg(test)]
mod tests {
    use super::word::*;
    use super::*;
    use crate::arcset::ArcSet;
    use crate::exact::{int, rat, CirclePoint};

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::new(rat(n, d))
    }

    fn set(s: &str) -> ArcSet {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert!(r().compose(&r()).is_identity());
        let f = x0().compose(&g2());
        assert_eq!(f.compose(&PlMap::identity()), f);
        assert!(x1().compose(&x1().inverse()).is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert!(PlMap::identity().inverse().is_identity());
        assert_eq!(PlMap::rotation(&rat(1, 4)).inverse(), PlMap::rotation(&rat(3, 4)));
        // the inverse of x1 has the coordinate pairs swapped
        let inv = x1().inverse();
        let swapped: Vec<_> = x1().breakpoints().into_iter().map(|(x, y)| (y, x)).collect();
        let mut got = inv.breakpoints();
        got.sort();
        let mut want = swapped;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(x1().conjugate(&r()), g1());
        assert_eq!(g1().support(), set("(0,1/2)"));
        let f = x0();
        assert_eq!(f.conjugate(&PlMap::identity()), f);
        let c = x0().compose(&r());
        assert_eq!(x2().conjugate(&c).support(), c.image(&x2().support()));
    }

    #[test]
    fn power_examples() {
        assert!(r().power(2).is_identity());
        assert_eq!(x0().power(-1), x0().inverse());
        let p = pt(7, 8);
        let iterated = x1().evaluate(&x1().evaluate(&x1().evaluate(&p)));
        assert_eq!(x1().power(3).evaluate(&p), iterated);
        assert!(x0().power(0).is_identity());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(x1().evaluate(&pt(7, 8)), pt(15, 16));
        assert_eq!(PlMap::identity().evaluate(&pt(2, 7)), pt(2, 7));
        assert_eq!(r().evaluate(&pt(3, 4)), pt(1, 4));
        assert_eq!(x0().evaluate(&pt(1, 8)), pt(1, 4));
    }

    #[test]
    fn fixed_sets() {
        assert_eq!(x1().fixed_set(), set("(1/2,1)").complement());
        assert_eq!(x1().fixed_set(), set("[0,1/2]"));
        assert!(r().fixed_set().is_empty());
        // piece y = 4x - 3/4 on [3/16, 5/16], then slope 4/7 back round to 3/16;
        // solving x = 4x - 3/4 and x = 1/2 + 4/7 (x - 5/16) by hand gives 1/4 and 3/4
        let f = PlMap::from_pairs(&[(rat(3, 16), rat(0, 1)), (rat(5, 16), rat(1, 2))]).unwrap();
        assert_eq!(f.slopes(), vec![int(4), rat(4, 7)]);
        assert_eq!(f.fixed_set(), ArcSet::from_points([&pt(1, 4), &pt(3, 4)]));
        assert!(PlMap::identity().fixed_set().is_full());
    }

    #[test]
    fn supports() {
        assert_eq!(x2().support(), set("(3/4,1)"));
        assert!(PlMap::identity().support().is_empty());
        assert_eq!(g1().support(), set("(0,1/2)"));
        assert_eq!(g2().support(), set("(1/4,1/2)"));
        assert_eq!(x0().support(), set("(0,1)"));
    }

    #[test]
    fn images() {
        assert_eq!(r().image(&set("(0,1/2)")), set("(1/2,1)"));
        assert!(x0().image(&ArcSet::full()).is_full());
        assert_eq!(x1().image(&set("[3/4,1]")), set("[7/8,1]"));
        assert_eq!(x1().image(&set("(0,1)")), set("(0,1)"));
    }

    #[test]
    fn rotation_numbers() {
        assert!(PlMap::identity().rotation_number(1).unwrap().is_zero());
        for k in 1..=4 {
            for p in 0..(1i64 << k) {
                let f = PlMap::rotation(&rat(p, 1 << k));
                assert_eq!(f.rotation_number(64).unwrap().value(), &rat(p, 1 << k));
            }
        }
        assert!(x1().rotation_number(1).unwrap().is_zero());
        let rot = PlMap::rotation(&rat(1, 3));
        assert!(matches!(rot.rotation_number(2), Err(crate::Error::NotFoundWithinBound { .. })));
    }

    #[test]
    fn orbit_witnesses() {
        let id = PlMap::identity();
        let w = id.periodic_orbit_witness(&id.rotation_number(4).unwrap()).unwrap();
        assert_eq!(w, vec![CirclePoint::zero()]);
        let w = r().periodic_orbit_witness(&RotationNumber::new(rat(1, 2))).unwrap();
        assert_eq!(w, vec![CirclePoint::zero(), pt(1, 2)]);
        let w = x1().periodic_orbit_witness(&RotationNumber::new(rat(0, 1))).unwrap();
        assert_eq!(w.len(), 1);
        assert!(x1().fixed_set().contains(&w[0]));
        assert!(x1().periodic_orbit_witness(&RotationNumber::new(rat(1, 2))).is_err());
        assert!(id.periodic_orbit_witness(&RotationNumber::new(rat(1, 2))).is_err());
    }

    #[test]
    fn thompson_membership() {
        assert!(x1().is_thompson_t());
        assert!(!PlMap::rotation(&rat(1, 3)).is_thompson_t());
        let slope3 = PlMap::from_pairs(&[(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(3, 4))]).unwrap();
        assert!(slope3.thompson_t_check().unwrap_err().contains("slope"));
    }

    #[test]
    fn commutation() {
        let f = x0().compose(&r());
        assert!(f.commutes(&f.power(3)));
        assert!(g1().commutes(&x1()));
        assert!(!x0().commutes(&x1()));
    }

    #[test]
    fn words() {
        let b = Bindings::builtin();
        assert!(parse_word("r r", &b).unwrap().is_identity());
        assert!(parse_word("x1^-1 x1", &b).unwrap().is_identity());
        assert_eq!(parse_word("g1 x1", &b).unwrap(), g1().compose(&x1()));
        assert_eq!(parse_word("x0^2", &b).unwrap(), x0().compose(&x0()));
        assert!(matches!(parse_word("y1", &b), Err(crate::Error::UnboundName(_))));
        match parse_word("x1 ^", &b) {
            Err(crate::Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(GeneratorWord::parse("x1 x1^-1 g1^2 g1").unwrap().to_string(), "g1^3");
    }

    #[test]
    fn serialization() {
        let s = x1().to_string();
        assert_eq!(s, "plmap{(0,0),(1/2,1/2),(5/8,3/4),(3/4,7/8)}");
        assert_eq!(s.parse::<PlMap>().unwrap(), x1());
        assert_eq!(r().to_string(), "plmap{(0,1/2)}");
        assert!("plmap{(0,0),(1/2,3/4),(3/4,1/2)}".parse::<PlMap>().is_err());
        assert!("plmap{(0,0)(1/2,1/2)}".parse::<PlMap>().is_err());
    }
}
