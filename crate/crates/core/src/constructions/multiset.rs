use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{frac, CirclePoint, Rational};
use crate::plmap::word::{g1, g2, x1, x2};
use crate::plmap::PlMap;

/// A finite multiset of circle maps, kept in canonical order (by the text
/// form of each element).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ElementMultiset {
    entries: Vec<(PlMap, u64)>,
}

impl ElementMultiset {
    pub fn new<I: IntoIterator<Item = (PlMap, u64)>>(entries: I) -> Self {
        let mut map: BTreeMap<String, (PlMap, u64)> = BTreeMap::new();
        for (f, m) in entries {
            if m == 0 {
                continue;
            }
            map.entry(f.to_string()).or_insert_with(|| (f, 0)).1 += m;
        }
        ElementMultiset { entries: map.into_values().collect() }
    }

    pub fn from_elements<I: IntoIterator<Item = PlMap>>(elements: I) -> Self {
        ElementMultiset::new(elements.into_iter().map(|f| (f, 1)))
    }

    pub fn entries(&self) -> &[(PlMap, u64)] {
        &self.entries
    }

    /// Elements repeated by multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = &PlMap> {
        self.entries
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f, *m as usize))
    }

    pub fn len(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, f: &PlMap) -> u64 {
        self.entries.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m)
    }

    pub fn contains_identity(&self) -> bool {
        self.entries.iter().any(|(f, _)| f.is_identity())
    }
}

impl fmt::Display for ElementMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            if *m == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g} x{m}")?;
            }
        }
        Ok(())
    }
}

/// The sets `H1`, `H2` and `E` of the non-amenability argument.
#[derive(Clone, Debug)]
pub struct HaagerupOlesenSets {
    pub h1: ElementMultiset,
    pub h2: ElementMultiset,
    pub e: ElementMultiset,
    /// Copies of the identity in `h2`. The listing `{e, g1 x1, g2 x2}` has
    /// one; the operator identity needs two.
    pub identity_multiplicity: u64,
}

/// `H1 = {g1, g2, x1, x2}`, `H2 = {e, e, g1 x1, g2 x2}`,
/// `E = {x1, x2, g1 x1, g2 x2}`.
pub fn haagerup_olesen_multisets() -> HaagerupOlesenSets {
    let g1x1 = g1().compose(&x1());
    let g2x2 = g2().compose(&x2());
    let h1 = ElementMultiset::from_elements([g1(), g2(), x1(), x2()]);
    let identity_multiplicity = 2;
    let h2 = ElementMultiset::new([
        (PlMap::identity(), identity_multiplicity),
        (g1x1.clone(), 1),
        (g2x2.clone(), 1),
    ]);
    let e = ElementMultiset::from_elements([x1(), x2(), g1x1, g2x2]);
    HaagerupOlesenSets { h1, h2, e, identity_multiplicity }
}

/// Where the two sides of a π-relation differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiWitness {
    /// A breakpoint whose image multisets differ.
    Point { at: CirclePoint, left: Vec<CirclePoint>, right: Vec<CirclePoint> },
    /// An open cell on which the affine restrictions `(slope, offset mod 1)`
    /// differ as multisets.
    Cell { lo: Rational, hi: Rational, left: Vec<(Rational, Rational)>, right: Vec<(Rational, Rational)> },
}

impl fmt::Display for PiWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts = |v: &[CirclePoint]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        let aff = |v: &[(Rational, Rational)]| {
            v.iter()
                .map(|(s, o)| format!("{}x+{}", crate::exact::fmt_rational(s), crate::exact::fmt_rational(o)))
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            PiWitness::Point { at, left, right } => {
                write!(f, "point {at}: left {{{}}} right {{{}}}", pts(left), pts(right))
            }
            PiWitness::Cell { lo, hi, left, right } => write!(
                f,
                "cell ({},{}): left {{{}}} right {{{}}}",
                crate::exact::fmt_rational(lo),
                crate::exact::fmt_rational(hi),
                aff(left),
                aff(right)
            ),
        }
    }
}

fn affine_on(f: &PlMap, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let three = Rational::from_integer(3.into());
    let four = Rational::from_integer(4.into());
    let u = (&three * lo + hi) / &four;
    let v = (lo + &three * hi) / &four;
    let (fu, fv) = (f.lift_eval(&u), f.lift_eval(&v));
    let slope = (&fv - &fu) / (&v - &u);
    let offset = frac(&(fu - &slope * &u));
    (slope, offset)
}

/// Decides `Σ_{H1} π(g) = Σ_{H2} π(h)`: the two image multisets must agree
/// at every point of the circle. Checked exactly on the cells between all
/// breakpoints and at the breakpoints themselves.
pub fn verify_pi_relation(h1: &ElementMultiset, h2: &ElementMultiset) -> Result<(), PiWitness> {
    let mut cuts: Vec<Rational> = vec![Rational::from_integer(0.into())];
    for f in h1.iter().chain(h2.iter()) {
        cuts.extend(f.breakpoints().into_iter().map(|(x, _)| x.into_value()));
    }
    cuts.sort();
    cuts.dedup();
    let n = cuts.len();
    for i in 0..n {
        let lo = cuts[i].clone();
        let hi = if i + 1 < n { cuts[i + 1].clone() } else { Rational::from_integer(1.into()) };
        let mut left: Vec<_> = h1.iter().map(|f| affine_on(f, &lo, &hi)).collect();
        let mut right: Vec<_> = h2.iter().map(|f| affine_on(f, &lo, &hi)).collect();
        left.sort();
        right.sort();
        if left != right {
            return Err(PiWitness::Cell { lo, hi, left, right });
        }
    }
    for x in &cuts {
        let p = CirclePoint::new(x.clone());
        let mut left: Vec<CirclePoint> = h1.iter().map(|f| f.evaluate(&p)).collect();
        let mut right: Vec<CirclePoint> = h2.iter().map(|f| f.evaluate(&p)).collect();
        left.sort();
        right.sort();
        if left != right {
            return Err(PiWitness::Point { at: p, left, right });
        }
    }
    Ok(())
}
