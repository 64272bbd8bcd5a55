use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{half, is_dyadic, pow2, CirclePoint, Rational};
use crate::plmap::PlMap;

/// Cuts `[a, b]` into maximal standard dyadic intervals `[k/2^n, (k+1)/2^n]`.
fn standard_cuts(a: &Rational, b: &Rational) -> Vec<Rational> {
    let mut cuts = vec![a.clone()];
    let mut x = a.clone();
    while &x < b {
        let gap = b - &x;
        let mut n = 0i64;
        while !(&x * pow2(n)).is_integer() || pow2(-n) > gap {
            n += 1;
        }
        x += pow2(-n);
        cuts.push(x.clone());
    }
    cuts
}

fn split_longest(cuts: &mut Vec<Rational>) {
    let mut best = 0;
    for i in 1..cuts.len() - 1 {
        if &cuts[i + 1] - &cuts[i] > &cuts[best + 1] - &cuts[best] {
            best = i;
        }
    }
    let mid = half(&(&cuts[best] + &cuts[best + 1]));
    cuts.insert(best + 1, mid);
}

/// Breakpoints `(x, y)` of an orientation-preserving PL homeomorphism
/// `[a, b] -> [c, d]` with dyadic breakpoints and power-of-two slopes.
/// Both endpoints are included.
pub fn dyadic_homeomorphism(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Vec<(Rational, Rational)>> {
    if [a, b, c, d].iter().any(|x| !is_dyadic(x)) {
        return Err(Error::NotDyadic("interval endpoints must be dyadic".into()));
    }
    if a >= b || c >= d {
        return Err(Error::InvalidArgument("empty interval".into()));
    }
    let mut src = standard_cuts(a, b);
    let mut dst = standard_cuts(c, d);
    while src.len() < dst.len() {
        split_longest(&mut src);
    }
    while dst.len() < src.len() {
        split_longest(&mut dst);
    }
    Ok(src.into_iter().zip(dst).collect())
}

/// The map equal to `f` on the arc `[lo, hi]` (which `f` must preserve,
/// fixing both ends) and the identity elsewhere.
pub fn restrict(f: &PlMap, lo: &Rational, hi: &Rational) -> Result<PlMap> {
    let (l, h) = (CirclePoint::new(lo.clone()), CirclePoint::new(hi.clone()));
    if f.evaluate(&l) != l || f.evaluate(&h) != h {
        return Err(Error::InvalidArgument("restriction arc ends must be fixed".into()));
    }
    let span = hi - lo;
    if span <= Rational::from_integer(0.into()) || span > Rational::one() {
        return Err(Error::InvalidArgument("restriction arc must have length in (0, 1]".into()));
    }
    let mut pairs = vec![(lo.clone(), lo.clone()), (hi.clone(), hi.clone())];
    for (x, y) in f.breakpoints() {
        let t = l.forward_to(&x);
        if t > Rational::from_integer(0.into()) && t < span {
            pairs.push((x.into_value(), y.into_value()));
        }
    }
    if span.is_one() {
        pairs.remove(1);
    }
    PlMap::from_pairs(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{log2_exact, rat};

    #[test]
    fn standard_decomposition() {
        assert_eq!(standard_cuts(&rat(0, 1), &rat(1, 1)), vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(
            standard_cuts(&rat(1, 8), &rat(3, 4)),
            vec![rat(1, 8), rat(1, 4), rat(1, 2), rat(3, 4)]
        );
    }

    #[test]
    fn homeomorphism_is_dyadic_pl() {
        let pairs = dyadic_homeomorphism(&rat(1, 8), &rat(3, 4), &rat(3, 4), &rat(17, 16)).unwrap();
        assert_eq!(pairs.first().unwrap(), &(rat(1, 8), rat(3, 4)));
        assert_eq!(pairs.last().unwrap(), &(rat(3, 4), rat(17, 16)));
        for w in pairs.windows(2) {
            let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            assert!(log2_exact(&slope).is_some(), "slope {slope}");
        }
        assert!(dyadic_homeomorphism(&rat(0, 1), &rat(1, 3), &rat(0, 1), &rat(1, 2)).is_err());
    }

    #[test]
    fn restriction() {
        let f = crate::plmap::word::x0().conjugate(&PlMap::rotation(&rat(1, 4)));
        let g = restrict(&f, &rat(1, 4), &rat(5, 4)).unwrap();
        assert_eq!(g, f);
        let x1 = crate::plmap::word::x1();
        assert_eq!(restrict(&x1, &rat(1, 2), &rat(1, 1)).unwrap(), x1);
        assert!(restrict(&x1, &rat(1, 4), &rat(3, 4)).is_err());
    }
}
