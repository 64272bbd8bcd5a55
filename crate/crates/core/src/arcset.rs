//! Finite unions of arcs and points of the circle with exact rational
//! endpoints.
//!
//! A set is stored by its *critical points*: the finitely many points where
//! membership can change. Each critical point carries its own membership
//! flag and the membership of the open gap that follows it (going in the
//! positive direction up to the next critical point, wrapping through 0).
//! A critical point is kept only if its flag differs from one of its two
//! neighbouring gaps, which makes the representation unique: two sets are
//! equal iff their representations are equal.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, frac, half, parse_rational, CirclePoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Critical {
    at: Rational,
    member: bool,
    gap_after: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSet {
    /// Sorted by `at`, values in `[0, 1)`.
    points: Vec<Critical>,
    /// Only meaningful when `points` is empty.
    full: bool,
}

/// One connected component, going positively from `start` to `end`.
/// `start == end` with both ends closed is a single point; with both ends
/// open it is the circle minus that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: CirclePoint,
    pub end: CirclePoint,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl Arc {
    pub fn is_point(&self) -> bool {
        self.start == self.end && self.start_closed
    }

    /// Arc length in `[0, 1]`.
    pub fn length(&self) -> Rational {
        if self.start == self.end {
            if self.start_closed {
                Rational::zero()
            } else {
                Rational::one()
            }
        } else {
            self.start.forward_to(&self.end)
        }
    }

    /// Endpoint values in lift coordinates: `start` in `[0,1)` and
    /// `end = start + length`.
    pub fn lifted(&self) -> (Rational, Rational) {
        let s = self.start.value().clone();
        let e = &s + self.length();
        (s, e)
    }

    /// A point of the arc's interior (or the point itself).
    pub fn midpoint(&self) -> CirclePoint {
        let (s, e) = self.lifted();
        CirclePoint::new(half(&(s + e)))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.start);
        }
        let open = if self.start_closed { '[' } else { '(' };
        let close = if self.end_closed { ']' } else { ')' };
        let end = if self.end.value().is_zero() && !self.start.value().is_zero() {
            "1".to_string()
        } else {
            self.end.to_string()
        };
        write!(f, "{open}{},{end}{close}", self.start)
    }
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { points: Vec::new(), full: false }
    }

    pub fn full() -> Self {
        ArcSet { points: Vec::new(), full: true }
    }

    pub fn point(p: &CirclePoint) -> Self {
        ArcSet {
            points: vec![Critical { at: p.value().clone(), member: true, gap_after: false }],
            full: false,
        }
    }

    /// The arc going positively from `start` to `end` given as raw (unreduced)
    /// rationals. Equal raw values give a point (closed) or the punctured
    /// circle (open); raw values that differ by a non-zero integer give a
    /// full turn.
    pub fn arc(start: &Rational, end: &Rational, start_closed: bool, end_closed: bool) -> Result<Self> {
        let s = frac(start);
        let e = frac(end);
        if start == end {
            return match (start_closed, end_closed) {
                (true, true) => Ok(ArcSet::point(&CirclePoint::new(s))),
                (false, false) => Ok(ArcSet::point(&CirclePoint::new(s)).complement()),
                _ => Err(Error::InvalidArcSet(format!(
                    "half-open degenerate arc at {}",
                    fmt_rational(start)
                ))),
            };
        }
        if s == e {
            // a full turn
            return Ok(if start_closed || end_closed {
                ArcSet::full()
            } else {
                ArcSet::point(&CirclePoint::new(s)).complement()
            });
        }
        let mut pts = vec![
            Critical { at: s, member: start_closed, gap_after: true },
            Critical { at: e, member: end_closed, gap_after: false },
        ];
        pts.sort_by(|a, b| a.at.cmp(&b.at));
        Ok(ArcSet::normalized(pts, false))
    }

    /// Closed arc `[start, end]` (raw values, see [`ArcSet::arc`]).
    pub fn closed(start: &Rational, end: &Rational) -> Self {
        ArcSet::arc(start, end, true, true).expect("closed arcs are always valid")
    }

    /// Open arc `(start, end)` (raw values, see [`ArcSet::arc`]).
    pub fn open(start: &Rational, end: &Rational) -> Self {
        ArcSet::arc(start, end, false, false).expect("open arcs are always valid")
    }

    pub fn from_points<'a, I: IntoIterator<Item = &'a CirclePoint>>(pts: I) -> Self {
        pts.into_iter()
            .fold(ArcSet::empty(), |acc, p| acc.union(&ArcSet::point(p)))
    }

    fn normalized(mut pts: Vec<Critical>, full: bool) -> Self {
        loop {
            let n = pts.len();
            if n == 0 {
                return ArcSet { points: pts, full };
            }
            let mut keep = vec![true; n];
            let mut removed = false;
            for i in 0..n {
                let prev_gap = pts[(i + n - 1) % n].gap_after;
                if pts[i].member == prev_gap && pts[i].member == pts[i].gap_after {
                    keep[i] = false;
                    removed = true;
                }
            }
            if !removed {
                return ArcSet { points: pts, full: false };
            }
            let all_member = pts[0].member;
            let mut it = keep.iter();
            pts.retain(|_| *it.next().unwrap());
            if pts.is_empty() {
                // every point agreed with both gaps, so all flags were equal
                return ArcSet { points: pts, full: all_member };
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && !self.full
    }

    pub fn is_full(&self) -> bool {
        self.points.is_empty() && self.full
    }

    /// True when every component contains its endpoints.
    pub fn is_closed(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|i| {
            let c = &self.points[i];
            c.member || (!c.gap_after && !self.points[(i + n - 1) % n].gap_after)
        })
    }

    /// True when no component contains an endpoint.
    pub fn is_open(&self) -> bool {
        self.points.iter().all(|c| !c.member)
    }

    pub fn contains(&self, p: &CirclePoint) -> bool {
        let x = p.value();
        if self.points.is_empty() {
            return self.full;
        }
        match self.points.binary_search_by(|c| c.at.cmp(x)) {
            Ok(i) => self.points[i].member,
            Err(0) => self.points.last().unwrap().gap_after,
            Err(i) => self.points[i - 1].gap_after,
        }
    }

    fn combine(&self, other: &ArcSet, op: impl Fn(bool, bool) -> bool) -> ArcSet {
        let mut ats: Vec<Rational> = self
            .points
            .iter()
            .chain(other.points.iter())
            .map(|c| c.at.clone())
            .collect();
        ats.sort();
        ats.dedup();
        if ats.is_empty() {
            return ArcSet::normalized(Vec::new(), op(self.full, other.full));
        }
        let n = ats.len();
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let at = &ats[i];
            let next = if i + 1 < n { ats[i + 1].clone() } else { &ats[0] + Rational::one() };
            let mid = CirclePoint::new(half(&(at + &next)));
            let p = CirclePoint::new(at.clone());
            pts.push(Critical {
                at: at.clone(),
                member: op(self.contains(&p), other.contains(&p)),
                gap_after: op(self.contains(&mid), other.contains(&mid)),
            });
        }
        ArcSet::normalized(pts, false)
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> ArcSet {
        ArcSet {
            points: self
                .points
                .iter()
                .map(|c| Critical { at: c.at.clone(), member: !c.member, gap_after: !c.gap_after })
                .collect(),
            full: self.points.is_empty() && !self.full,
        }
    }

    pub fn is_subset(&self, other: &ArcSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Topological closure.
    pub fn closure(&self) -> ArcSet {
        let n = self.points.len();
        let pts = (0..n)
            .map(|i| {
                let c = &self.points[i];
                let prev = self.points[(i + n - 1) % n].gap_after;
                Critical { at: c.at.clone(), member: c.member || prev || c.gap_after, gap_after: c.gap_after }
            })
            .collect();
        ArcSet::normalized(pts, self.full)
    }

    /// Boundary points of the set (the endpoints of its components).
    pub fn boundary_points(&self) -> Vec<CirclePoint> {
        self.points.iter().map(|c| CirclePoint::new(c.at.clone())).collect()
    }

    /// Connected components in increasing order of their start point.
    pub fn components(&self) -> Vec<Arc> {
        let n = self.points.len();
        if n == 0 {
            return Vec::new();
        }
        // An index where a component starts: the point is in the set and the
        // preceding gap is not, or the point is out and the following gap is in.
        let mut out = Vec::new();
        for i in 0..n {
            let c = &self.points[i];
            let prev_gap = self.points[(i + n - 1) % n].gap_after;
            let starts_closed = c.member && !prev_gap;
            let starts_open = !c.member && c.gap_after;
            if !(starts_closed || starts_open) {
                continue;
            }
            if starts_closed && !c.gap_after {
                let p = CirclePoint::new(c.at.clone());
                out.push(Arc { start: p.clone(), end: p, start_closed: true, end_closed: true });
                continue;
            }
            // walk forward to the end of the component
            let mut j = (i + 1) % n;
            loop {
                let d = &self.points[j];
                if !d.member {
                    out.push(Arc {
                        start: CirclePoint::new(c.at.clone()),
                        end: CirclePoint::new(d.at.clone()),
                        start_closed: starts_closed,
                        end_closed: false,
                    });
                    break;
                }
                if !d.gap_after {
                    out.push(Arc {
                        start: CirclePoint::new(c.at.clone()),
                        end: CirclePoint::new(d.at.clone()),
                        start_closed: starts_closed,
                        end_closed: true,
                    });
                    break;
                }
                j = (j + 1) % n;
            }
        }
        out.sort_by(|a, b| a.start.cmp(&b.start));
        out
    }

    /// Minimum circular distance between two disjoint, closed, non-empty sets.
    pub fn separation(&self, other: &ArcSet) -> Result<Rational> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::InvalidArgument("separation of an empty set".into()));
        }
        if !self.is_closed() || !other.is_closed() {
            return Err(Error::InvalidArgument("separation requires closed sets".into()));
        }
        if !self.is_disjoint(other) {
            return Err(Error::InvalidArgument("separation of intersecting sets".into()));
        }
        // disjoint closed non-empty sets are proper subsets, so both have
        // endpoints and the distance is attained at a pair of endpoints
        let mut best: Option<Rational> = None;
        for p in self.boundary_points() {
            for q in other.boundary_points() {
                let d = p.distance(&q);
                if best.as_ref().is_none_or(|b| &d < b) {
                    best = Some(d);
                }
            }
        }
        Ok(best.expect("non-empty proper sets have endpoints"))
    }

    /// Circular distance from a point to a closed non-empty set.
    pub fn distance_to(&self, p: &CirclePoint) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        if self.contains(p) || self.is_full() {
            return Some(Rational::zero());
        }
        self.boundary_points().iter().map(|q| q.distance(p)).min()
    }

    /// Open `eps`-neighbourhood: all points at circular distance `< eps`.
    pub fn neighborhood(&self, eps: &Rational) -> Result<ArcSet> {
        if !eps.is_positive() {
            return Err(Error::InvalidArgument("neighbourhood radius must be positive".into()));
        }
        if self.is_full() {
            return Ok(ArcSet::full());
        }
        let mut acc = ArcSet::empty();
        for c in self.components() {
            let (s, e) = c.lifted();
            let total = &e - &s + eps + eps;
            let part = if total > Rational::one() {
                ArcSet::full()
            } else {
                ArcSet::open(&(&s - eps), &(&e + eps))
            };
            acc = acc.union(&part);
        }
        Ok(acc)
    }

    /// Canonical text form, e.g. `[0,1/4],(3/8,1/2),{7/8}`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("full");
        }
        if self.is_empty() {
            return f.write_str("empty");
        }
        let comps = self.components();
        let n = comps.len();
        for (i, c) in comps.iter().enumerate() {
            if c.start == c.end && !c.start_closed {
                write!(f, "({},{})", c.start, c.start)?;
            } else {
                write!(f, "{c}")?;
            }
            if i + 1 < n {
                f.write_str(",")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ArcSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src = s;
        let err = |pos: usize, msg: &str| Error::Parse {
            input: src.to_string(),
            position: pos,
            message: msg.to_string(),
        };
        let trimmed = s.trim();
        match trimmed {
            "full" => return Ok(ArcSet::full()),
            "empty" | "" => return Ok(ArcSet::empty()),
            _ => {}
        }
        let bytes = s.as_bytes();
        let mut acc = ArcSet::empty();
        let mut i = 0;
        let mut expect_item = true;
        while i < bytes.len() {
            let ch = bytes[i] as char;
            if ch.is_whitespace() {
                i += 1;
                continue;
            }
            if !expect_item {
                if ch != ',' {
                    return Err(err(i, "expected `,` between arcs"));
                }
                expect_item = true;
                i += 1;
                continue;
            }
            let close_for = match ch {
                '[' | '(' => [']', ')'],
                '{' => ['}', '}'],
                _ => {
                    let rest: String = s[i..].chars().take_while(|c| c.is_alphabetic()).collect();
                    match rest.as_str() {
                        "full" => {
                            acc = ArcSet::full();
                            i += 4;
                            expect_item = false;
                            continue;
                        }
                        "empty" => {
                            i += 5;
                            expect_item = false;
                            continue;
                        }
                        _ => return Err(err(i, "expected `[`, `(`, `{`, `full` or `empty`")),
                    }
                }
            };
            let start = i;
            let end = s[i + 1..]
                .find(|c| close_for.contains(&c))
                .map(|off| i + 1 + off)
                .ok_or_else(|| err(i, "unterminated arc"))?;
            let inner = &s[start + 1..end];
            let closing = bytes[end] as char;
            if ch == '{' {
                let p = parse_rational(inner).map_err(|_| err(start + 1, "bad point"))?;
                acc = acc.union(&ArcSet::point(&CirclePoint::new(p)));
            } else {
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| err(start + 1, "arc needs two endpoints"))?;
                let a = parse_rational(a).map_err(|_| err(start + 1, "bad start"))?;
                let b = parse_rational(b).map_err(|_| err(start + 1, "bad end"))?;
                let part = ArcSet::arc(&a, &b, ch == '[', closing == ']')
                    .map_err(|e| err(start, &e.to_string()))?;
                acc = acc.union(&part);
            }
            i = end + 1;
            expect_item = false;
        }
        if expect_item {
            return Err(err(s.len(), "trailing `,`"));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn a(s: &str) -> ArcSet {
        s.parse().unwrap()
    }

    #[test]
    fn union_examples() {
        let u = a("(0,1/2)").union(&a("(1/2,1)"));
        assert_eq!(u, ArcSet::from_points([&CirclePoint::zero(), &CirclePoint::new(rat(1, 2))]).complement());
        assert_eq!(u.to_string(), "(0,1/2),(1/2,1)");
        let x = a("[0,1/4],{7/8}");
        assert_eq!(x.union(&ArcSet::empty()), x);
        assert_eq!(a("(0,3/8]").union(&a("[3/8,5/8)")), a("(0,5/8)"));
    }

    #[test]
    fn intersection_examples() {
        assert!(a("(0,1/2)").intersection(&a("(1/2,1)")).is_empty());
        assert_eq!(a("(0,5/8)").intersection(&a("(1/2,1)")), a("(1/2,5/8)"));
        let x = a("[1/8,3/8),{3/4}");
        assert_eq!(x.intersection(&ArcSet::full()), x);
    }

    #[test]
    fn complement_examples() {
        let c = a("(0,1/2)").complement();
        assert_eq!(c, ArcSet::closed(&rat(1, 2), &int(1)));
        assert_eq!(c.to_string(), "[1/2,1]");
        assert!(ArcSet::full().complement().is_empty());
        let p = a("{1/4}").complement();
        assert_eq!(p.to_string(), "(1/4,1/4)");
        assert_eq!(p, a("(1/4,1/4)"));
        assert_eq!(p.components().len(), 1);
    }

    #[test]
    fn separation_examples() {
        assert_eq!(a("{0}").separation(&a("{1/2}")).unwrap(), rat(1, 2));
        assert_eq!(a("[0,1/4]").separation(&a("[3/8,1/2]")).unwrap(), rat(1, 8));
        let b = ArcSet::closed(&(rat(7, 8) + rat(1, 64)), &(rat(7, 8) + rat(1, 32)));
        let got = a("[0,1/8]").separation(&b).unwrap();
        // oracle: minimum over every endpoint pair, both directions round the circle
        let ends_a = [rat(0, 1), rat(1, 8)];
        let ends_b = [rat(57, 64), rat(58, 64)];
        let mut best = int(1);
        for x in &ends_a {
            for y in &ends_b {
                for d in [frac(&(x - y)), frac(&(y - x))] {
                    if d < best {
                        best = d;
                    }
                }
            }
        }
        assert_eq!(best, rat(3, 32));
        assert_eq!(got, best);
    }

    #[test]
    fn separation_errors() {
        assert!(ArcSet::empty().separation(&a("{0}")).is_err());
        assert!(a("(0,1/4)").separation(&a("{1/2}")).is_err());
        assert!(a("[0,1/2]").separation(&a("[1/4,3/4]")).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(a("{1/2}").neighborhood(&rat(1, 8)).unwrap(), a("(3/8,5/8)"));
        assert!(a("[0,1/8]").neighborhood(&rat(1, 2)).unwrap().is_full());
        assert_eq!(
            a("[1/4,3/8],{7/8}").neighborhood(&rat(1, 16)).unwrap(),
            a("(3/16,7/16),(13/16,15/16)")
        );
        assert!(a("{0}").neighborhood(&int(0)).is_err());
        assert!(ArcSet::empty().neighborhood(&rat(1, 4)).unwrap().is_empty());
    }

    #[test]
    fn wrapping_arcs() {
        let w = a("[7/8,1/8]");
        assert!(w.contains(&CirclePoint::zero()));
        assert!(!w.contains(&CirclePoint::new(rat(1, 2))));
        assert_eq!(w.to_string(), "[7/8,1/8]");
        assert_eq!(w.components()[0].length(), rat(1, 4));
        assert!(a("[0,1]").is_full());
        assert_eq!(a("(0,1)"), a("{0}").complement());
    }

    #[test]
    fn parse_errors() {
        assert!("[0,1/2".parse::<ArcSet>().is_err());
        assert!("[0,1/2],".parse::<ArcSet>().is_err());
        assert!("<0,1>".parse::<ArcSet>().is_err());
        assert!("[1/2,1/2)".parse::<ArcSet>().is_err());
    }

    #[test]
    fn closedness() {
        assert!(a("[0,1/4],{1/2}").is_closed());
        assert!(!a("[0,1/4)").is_closed());
        assert!(a("(0,1/4)").is_open());
        assert_eq!(a("(0,1/4),(1/4,1/2)").closure(), a("[0,1/2]"));
    }
}
