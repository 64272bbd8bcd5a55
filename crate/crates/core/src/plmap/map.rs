use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arcset::ArcSet;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, frac, is_dyadic, log2_exact, parse_rational, CirclePoint, Rational};

/// An orientation-preserving piecewise-linear homeomorphism of the circle.
///
/// Stored as a lift `F: R -> R` with `F(x + 1) = F(x) + 1`, given by its
/// breakpoints `xs` (strictly increasing in `[0, 1)`) and lifted images `ys`
/// (strictly increasing, `ys[0]` in `[0, 1)`, `ys[n-1] < ys[0] + 1`). Between
/// consecutive breakpoints the lift is affine. The form is canonical: no
/// breakpoint has equal slopes on both sides, except that a rigid rotation
/// keeps the single breakpoint `x = 0`. Equality of maps is therefore
/// structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlMap {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

/// One affine piece of the lift on `[x0, x1]` (lift coordinates, `x0` in `[0,1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Piece {
    pub fn slope(&self) -> Rational {
        (&self.y1 - &self.y0) / (&self.x1 - &self.x0)
    }

    /// Lift value at `x` in `[x0, x1]`.
    pub fn at(&self, x: &Rational) -> Rational {
        &self.y0 + (x - &self.x0) * self.slope()
    }
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap::rotation(&Rational::zero())
    }

    /// Rigid rotation `x -> x + t`.
    pub fn rotation(t: &Rational) -> Self {
        PlMap { xs: vec![Rational::zero()], ys: vec![frac(t)] }
    }

    /// Builds a map from breakpoints given as circle pairs `(x, f(x))`.
    /// The images must go once around the circle in the same cyclic order.
    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidMap("a map needs at least one breakpoint".into()));
        }
        let mut pts: Vec<(Rational, Rational)> =
            pairs.iter().map(|(x, y)| (frac(x), frac(y))).collect();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidMap(format!(
                    "repeated breakpoint {}",
                    fmt_rational(&w[0].0)
                )));
            }
        }
        let mut ys = Vec::with_capacity(pts.len());
        ys.push(pts[0].1.clone());
        for i in 1..pts.len() {
            let step = frac(&(&pts[i].1 - &pts[i - 1].1));
            if step.is_zero() {
                return Err(Error::InvalidMap("images are not distinct".into()));
            }
            let next = &ys[i - 1] + step;
            ys.push(next);
        }
        if ys.last().unwrap() >= &(&ys[0] + Rational::one()) {
            return Err(Error::InvalidMap("images do not preserve the cyclic order".into()));
        }
        let xs = pts.into_iter().map(|p| p.0).collect();
        Ok(PlMap::canonical(xs, ys))
    }

    fn canonical(xs: Vec<Rational>, ys: Vec<Rational>) -> Self {
        let n = xs.len();
        debug_assert!(n >= 1 && ys.len() == n);
        let one = Rational::one();
        let slope = |i: usize| -> Rational {
            let (x1, y1) = if i + 1 < n {
                (xs[i + 1].clone(), ys[i + 1].clone())
            } else {
                (&xs[0] + &one, &ys[0] + &one)
            };
            (y1 - &ys[i]) / (x1 - &xs[i])
        };
        let slopes: Vec<Rational> = (0..n).map(slope).collect();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| slopes[(i + n - 1) % n] != slopes[i])
            .collect();
        let (mut xs2, mut ys2) = if keep.is_empty() {
            // rigid rotation: F(0) = ys[0] - xs[0] since the slope is 1
            (vec![Rational::zero()], vec![&ys[0] - &xs[0]])
        } else {
            (
                keep.iter().map(|&i| xs[i].clone()).collect::<Vec<_>>(),
                keep.iter().map(|&i| ys[i].clone()).collect::<Vec<_>>(),
            )
        };
        let shift = ys2[0].floor();
        if !shift.is_zero() {
            for y in ys2.iter_mut() {
                *y -= &shift;
            }
        }
        xs2.shrink_to_fit();
        PlMap { xs: xs2, ys: ys2 }
    }

    pub fn breakpoint_count(&self) -> usize {
        self.xs.len()
    }

    /// Breakpoints as circle pairs `(x, f(x))`, increasing in `x`.
    pub fn breakpoints(&self) -> Vec<(CirclePoint, CirclePoint)> {
        self.xs
            .iter()
            .zip(&self.ys)
            .map(|(x, y)| (CirclePoint::new(x.clone()), CirclePoint::new(y.clone())))
            .collect()
    }

    /// The affine pieces of the lift over one period starting at `xs[0]`.
    pub fn pieces(&self) -> Vec<Piece> {
        let n = self.xs.len();
        let one = Rational::one();
        (0..n)
            .map(|i| {
                let (x1, y1) = if i + 1 < n {
                    (self.xs[i + 1].clone(), self.ys[i + 1].clone())
                } else {
                    (&self.xs[0] + &one, &self.ys[0] + &one)
                };
                Piece { x0: self.xs[i].clone(), x1, y0: self.ys[i].clone(), y1 }
            })
            .collect()
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.pieces().iter().map(Piece::slope).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.xs.len() == 1 && self.ys[0] == self.xs[0]
    }

    pub fn is_rotation(&self) -> bool {
        self.xs.len() == 1
    }

    /// The lift evaluated at any real `t`.
    pub fn lift_eval(&self, t: &Rational) -> Rational {
        Self::eval_on(&self.xs, &self.ys, t)
    }

    /// The lift of the inverse evaluated at any real `t`.
    pub fn lift_eval_inverse(&self, t: &Rational) -> Rational {
        // the inverse lift has breakpoints ys (lifted) with images xs
        let k = (t - &self.ys[0]).floor();
        let u = t - &k;
        let n = self.ys.len();
        let i = match self.ys.binary_search(&u) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let one = Rational::one();
        let (y1, x1) = if i + 1 < n {
            (self.ys[i + 1].clone(), self.xs[i + 1].clone())
        } else {
            (&self.ys[0] + &one, &self.xs[0] + &one)
        };
        let v = &self.xs[i] + (&u - &self.ys[i]) * (x1 - &self.xs[i]) / (y1 - &self.ys[i]);
        v + k
    }

    fn eval_on(xs: &[Rational], ys: &[Rational], t: &Rational) -> Rational {
        let k = (t - &xs[0]).floor();
        let u = t - &k;
        let n = xs.len();
        let i = match xs.binary_search(&u) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if u == xs[i] {
            return &ys[i] + k;
        }
        let one = Rational::one();
        let (x1, y1) = if i + 1 < n {
            (xs[i + 1].clone(), ys[i + 1].clone())
        } else {
            (&xs[0] + &one, &ys[0] + &one)
        };
        let v = &ys[i] + (&u - &xs[i]) * (y1 - &ys[i]) / (x1 - &xs[i]);
        v + k
    }

    pub fn evaluate(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::new(self.lift_eval(p.value()))
    }

    pub fn evaluate_inverse(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::new(self.lift_eval_inverse(p.value()))
    }

    /// `self ∘ other`: apply `other` first (left actions).
    pub fn compose(&self, other: &PlMap) -> PlMap {
        let mut pts: Vec<Rational> = other.xs.clone();
        pts.extend(self.xs.iter().map(|x| frac(&other.lift_eval_inverse(x))));
        pts.sort();
        pts.dedup();
        let ys: Vec<Rational> = pts
            .iter()
            .map(|x| self.lift_eval(&other.lift_eval(x)))
            .collect();
        PlMap::canonical(pts, ys)
    }

    pub fn inverse(&self) -> PlMap {
        let pairs: Vec<(Rational, Rational)> = self
            .ys
            .iter()
            .zip(&self.xs)
            .map(|(y, x)| (y.clone(), x.clone()))
            .collect();
        PlMap::from_pairs(&pairs).expect("inverse of a homeomorphism is a homeomorphism")
    }

    /// `c ∘ self ∘ c⁻¹`, the conjugate of `self` by `c` (outer element last).
    pub fn conjugate(&self, c: &PlMap) -> PlMap {
        c.compose(&self.compose(&c.inverse()))
    }

    pub fn power(&self, n: i64) -> PlMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = PlMap::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn commutes(&self, other: &PlMap) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Closed set of fixed points, computed piece by piece: a slope-one piece
    /// with integer displacement contributes an arc, any other piece at most
    /// one point.
    pub fn fixed_set(&self) -> ArcSet {
        let mut acc = ArcSet::empty();
        for piece in self.pieces() {
            let d0 = &piece.y0 - &piece.x0;
            let d1 = &piece.y1 - &piece.x1;
            if d0 == d1 {
                if d0.is_integer() {
                    acc = acc.union(&ArcSet::closed(&piece.x0, &piece.x1));
                }
                continue;
            }
            let (lo, hi) = if d0 < d1 { (&d0, &d1) } else { (&d1, &d0) };
            let mut m = lo.ceil();
            while &m <= hi {
                // x with d0 + (x - x0) * (d1 - d0) / (x1 - x0) = m
                let x = &piece.x0 + (&m - &d0) * (&piece.x1 - &piece.x0) / (&d1 - &d0);
                acc = acc.union(&ArcSet::point(&CirclePoint::new(x)));
                m += Rational::one();
            }
        }
        acc
    }

    pub fn support(&self) -> ArcSet {
        self.fixed_set().complement()
    }

    /// Exact image of a set; homeomorphisms map components to components.
    pub fn image(&self, set: &ArcSet) -> ArcSet {
        if set.is_empty() || set.is_full() {
            return set.clone();
        }
        let mut acc = ArcSet::empty();
        for c in set.components() {
            let part = if c.is_point() {
                ArcSet::point(&self.evaluate(&c.start))
            } else {
                let (s, e) = c.lifted();
                let fs = self.lift_eval(&s);
                let fe = self.lift_eval(&e);
                ArcSet::arc(&fs, &fe, c.start_closed, c.end_closed)
                    .expect("image of a valid arc is valid")
            };
            acc = acc.union(&part);
        }
        acc
    }

    /// Preimage of a set.
    pub fn preimage(&self, set: &ArcSet) -> ArcSet {
        self.inverse().image(set)
    }

    /// Checks membership in Thompson's group T: dyadic breakpoints and
    /// images, power-of-two slopes. Returns the reason on failure.
    pub fn thompson_t_check(&self) -> std::result::Result<(), String> {
        for (x, y) in self.xs.iter().zip(&self.ys) {
            if !is_dyadic(x) {
                return Err(format!("breakpoint {} is not dyadic", fmt_rational(x)));
            }
            if !is_dyadic(y) {
                return Err(format!("image {} is not dyadic", fmt_rational(&frac(y))));
            }
        }
        for s in self.slopes() {
            if log2_exact(&s).is_none() {
                return Err(format!("slope {} is not a power of 2", fmt_rational(&s)));
            }
        }
        Ok(())
    }

    pub fn is_thompson_t(&self) -> bool {
        self.thompson_t_check().is_ok()
    }

    /// Largest and smallest slope.
    pub fn slope_range(&self) -> (Rational, Rational) {
        let s = self.slopes();
        let min = s.iter().min().unwrap().clone();
        let max = s.iter().max().unwrap().clone();
        (min, max)
    }

    /// True when the map fixes the point `p`.
    pub fn fixes(&self, p: &CirclePoint) -> bool {
        &self.evaluate(p) == p
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("plmap{")?;
        for (i, (x, y)) in self.xs.iter().zip(&self.ys).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", fmt_rational(x), fmt_rational(&frac(y)))?;
        }
        f.write_str("}")
    }
}

impl FromStr for PlMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            input: s.to_string(),
            position: pos,
            message: msg.to_string(),
        };
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        let body = t
            .strip_prefix("plmap{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| err(offset, "expected `plmap{(x,y),...}`"))?;
        let base = offset + "plmap{".len();
        let mut pairs = Vec::new();
        let mut rest = body;
        let mut pos = base;
        loop {
            let lead = rest.len() - rest.trim_start().len();
            rest = rest.trim_start();
            pos += lead;
            if rest.is_empty() {
                break;
            }
            let inner_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| err(pos, "expected `(x,y)`"))?;
            let inner = &rest[1..1 + inner_end];
            let (x, y) = inner.split_once(',').ok_or_else(|| err(pos, "expected `x,y`"))?;
            let x = parse_rational(x).map_err(|_| err(pos + 1, "bad rational"))?;
            let y = parse_rational(y).map_err(|_| err(pos + 1, "bad rational"))?;
            pairs.push((x, y));
            let consumed = inner_end + 2;
            rest = &rest[consumed..];
            pos += consumed;
            let lead = rest.len() - rest.trim_start().len();
            rest = rest.trim_start();
            pos += lead;
            if let Some(r) = rest.strip_prefix(',') {
                rest = r;
                pos += 1;
            } else if !rest.is_empty() {
                return Err(err(pos, "expected `,`"));
            }
        }
        PlMap::from_pairs(&pairs)
    }
}

/// Smallest `e >= 0` such that every slope of every map lies in
/// `[2^-e, 2^e]`.
pub(crate) fn max_abs_log2_slope(maps: &[&PlMap]) -> i64 {
    let mut best = 0i64;
    for m in maps {
        for s in m.slopes() {
            let mut e = 0i64;
            let mut v = s.clone();
            let two = Rational::from_integer(2.into());
            while v >= two {
                v /= &two;
                e += 1;
            }
            while v < Rational::one() && v.is_positive() {
                v *= &two;
                e += 1;
            }
            best = best.max(e);
        }
    }
    best
}
