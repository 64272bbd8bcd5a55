use crate::arcset::ArcSet;
use crate::error::{Error, Result};
use crate::exact::{CirclePoint, Rational};
use crate::plmap::PlMap;
use crate::witness::Block;

/// Outcome of the disjoint-support check for one pair of conjugators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointSupportReport {
    /// `Supp(c1 h1 c1⁻¹) ∪ Supp(c2 h1 c2⁻¹)`.
    pub h1_union: ArcSet,
    /// `Supp(c1 h2 c1⁻¹) ∩ Supp(c2 h2 c2⁻¹)`.
    pub h2_intersection: ArcSet,
    /// Whether the union is the whole circle.
    pub covers: bool,
    /// Whether the two conjugates of `h2` commute.
    pub h2_conjugates_commute: bool,
}

impl DisjointSupportReport {
    /// The implication "union covers => intersection empty and the
    /// conjugates commute".
    pub fn holds(&self) -> bool {
        !self.covers || (self.h2_intersection.is_empty() && self.h2_conjugates_commute)
    }
}

pub fn disjoint_support_obstruction(h1: &PlMap, h2: &PlMap, c1: &PlMap, c2: &PlMap) -> Result<DisjointSupportReport> {
    if !h1.support().is_disjoint(&h2.support()) {
        return Err(Error::Precondition("h1 and h2 have overlapping supports".into()));
    }
    let h1_union = c1.image(&h1.support()).union(&c2.image(&h1.support()));
    let (k1, k2) = (h2.conjugate(c1), h2.conjugate(c2));
    let h2_intersection = k1.support().intersection(&k2.support());
    let covers = h1_union.is_full();
    let h2_conjugates_commute = !covers || k1.commutes(&k2);
    Ok(DisjointSupportReport { h1_union, h2_intersection, covers, h2_conjugates_commute })
}

/// The sets `X_ij = (c_j r⁻¹)·Fix(g_i)` and what was found in them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    /// `x[i][j]` for `i` in `0..2`, `j` in `0..4`.
    pub x: Vec<Vec<ArcSet>>,
    /// `(i, [a, b, c], point)` with the point in `X_ia ∩ X_ib ∩ X_ic`.
    pub triple: Option<(usize, [usize; 3], CirclePoint)>,
    /// Whether each `c_j` commutes with `s r`.
    pub commutes_with_sr: Vec<bool>,
    /// Number of sample points where `k_ij` was compared with `s r`.
    pub acts_as_sr_samples: usize,
    /// Whether `k_ij = c_j s g_i r c_j⁻¹` agreed with `s r` at every sample.
    pub acts_as_sr: bool,
}

impl ObstructionReport {
    pub fn to_block(&self) -> Block {
        let mut blk = Block::new("obstruction");
        for (i, row) in self.x.iter().enumerate() {
            for (j, set) in row.iter().enumerate() {
                blk.push(&format!("x_{}{}", i + 1, j + 1), set);
            }
        }
        match &self.triple {
            Some((i, t, p)) => {
                blk.push("triple", format!("i={} j={},{},{} point={p}", i + 1, t[0] + 1, t[1] + 1, t[2] + 1));
            }
            None => {
                blk.push("triple", "none");
            }
        }
        let flags: Vec<String> = self.commutes_with_sr.iter().map(|b| b.to_string()).collect();
        blk.push("commutes_with_sr", flags.join(","))
            .push("acts_as_sr", format!("{} ({} points)", self.acts_as_sr, self.acts_as_sr_samples));
        blk
    }
}

/// Boundary points of `set` and the midpoints of its components.
fn sample_points(set: &ArcSet) -> Vec<CirclePoint> {
    if set.is_full() {
        return vec![CirclePoint::zero(), CirclePoint::new(Rational::new(1.into(), 2.into()))];
    }
    let mut out: Vec<CirclePoint> = set.boundary_points().into_iter().filter(|p| set.contains(p)).collect();
    out.extend(set.components().iter().map(|c| c.midpoint()));
    out
}

pub fn four_conjugate_analysis(g1: &PlMap, g2: &PlMap, r: &PlMap, s: &PlMap, c: &[PlMap]) -> Result<ObstructionReport> {
    let half = Rational::new(1.into(), 2.into());
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    if g1.support() != ArcSet::open(&zero, &half) || g2.support() != ArcSet::open(&half, &one) {
        return Err(Error::Precondition("supports must be (0,1/2) and (1/2,1)".into()));
    }
    if c.len() != 4 {
        return Err(Error::Precondition("exactly four conjugators are needed".into()));
    }
    let sr = s.compose(r);
    let commutes_with_sr: Vec<bool> = c.iter().map(|cj| cj.commutes(&sr)).collect();
    if let Some(j) = commutes_with_sr.iter().position(|b| !b) {
        return Err(Error::Precondition(format!("c_{} does not commute with s r", j + 1)));
    }
    let r_inv = r.inverse();
    let gs = [g1, g2];
    let x: Vec<Vec<ArcSet>> = gs
        .iter()
        .map(|g| {
            let fix = g.fixed_set();
            c.iter().map(|cj| cj.compose(&r_inv).image(&fix)).collect()
        })
        .collect();
    const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut triple = None;
    'search: for (i, row) in x.iter().enumerate() {
        for t in TRIPLES {
            let sets = [&row[t[0]], &row[t[1]], &row[t[2]]];
            let common = sets[0].intersection(sets[1]).intersection(sets[2]);
            if common.is_empty() {
                continue;
            }
            let p = sample_points(&common).swap_remove(0);
            triple = Some((i, t, p));
            break 'search;
        }
    }
    let mut samples = 0;
    let mut acts_as_sr = true;
    for (i, g) in gs.iter().enumerate() {
        let core = s.compose(&g.compose(r));
        for (j, cj) in c.iter().enumerate() {
            let k = core.conjugate(cj);
            for p in sample_points(&x[i][j]) {
                samples += 1;
                acts_as_sr &= k.evaluate(&p) == sr.evaluate(&p);
            }
        }
    }
    Ok(ObstructionReport { x, triple, commutes_with_sr, acts_as_sr_samples: samples, acts_as_sr })
}
