use crate::arcset::ArcSet;
use crate::constructions::{ConstructionKind, ConstructionResult, ElementMultiset, PerElement};
use crate::error::{Error, Result};
use crate::exact::{lcm_all, pow2, simplest_dyadic_between, CirclePoint, Rational};
use crate::pingpong::{free_power_search, Limits};
use crate::plmap::{max_abs_log2_slope, PlMap};

fn common_support(h: &ElementMultiset) -> ArcSet {
    h.iter().fold(ArcSet::full(), |acc, f| acc.intersection(&f.support()))
}

/// A dyadic point inside `∩ Supp(h)`, or `None` if the intersection is
/// empty.
pub fn find_common_support_point(h: &ElementMultiset) -> Option<CirclePoint> {
    let common = common_support(h);
    if common.is_full() {
        return Some(CirclePoint::zero());
    }
    let c = common.components().into_iter().find(|c| !c.is_point())?;
    let (s, e) = c.lifted();
    Some(CirclePoint::new(simplest_dyadic_between(&s, &e)))
}

/// A map fixing exactly `p`, with rotation number 0: in the coordinate
/// `u = x - p` it has slope `2^m` on `[0, 2^-m - 2^-2m]`, slope 1 up to
/// `2^-m`, and slope `2^-m` on the rest.
pub fn build_step_like_g(h: &ElementMultiset, p: &CirclePoint, steepness: u32) -> Result<PlMap> {
    if steepness == 0 {
        return Err(Error::InvalidArgument("steepness must be at least 1".into()));
    }
    if !common_support(h).contains(p) {
        return Err(Error::Precondition(format!("{p} is not in the common support")));
    }
    Ok(step_map(p, steepness))
}

fn step_map(p: &CirclePoint, m: u32) -> PlMap {
    let w = pow2(-(m as i64));
    let ww = &w * &w;
    let a = &w - &ww;
    let x = p.value();
    PlMap::from_pairs(&[
        (x.clone(), x.clone()),
        (x + &a, x + Rational::from_integer(1.into()) - &w),
        (x + &w, x + Rational::from_integer(1.into()) - &w + &ww),
    ])
    .expect("the step map is a homeomorphism")
}

fn has_two_isolated_fixed_points(f: &PlMap) -> bool {
    let fix = f.fixed_set();
    let comps = fix.components();
    comps.len() == 2 && comps.iter().all(|c| c.is_point())
}

/// Largest dyadic window `(p - 2^-j, p + 2^-j)` inside the common support
/// that every `h^i`, `1 <= i < s_h`, moves off itself.
fn disjoint_window(h: &ElementMultiset, p: &CirclePoint, limits: &Limits) -> Result<(u32, ArcSet)> {
    let common = common_support(h);
    let periods: Vec<(PlMap, u64)> = h
        .iter()
        .map(|f| Ok((f.clone(), f.rotation_number(limits.q_max)?.denominator())))
        .collect::<Result<_>>()?;
    for j in 1..=limits.max_halvings {
        let r = pow2(-(j as i64));
        let win = ArcSet::open(&(p.value() - &r), &(p.value() + &r));
        if !win.is_subset(&common) {
            continue;
        }
        let ok = periods.iter().all(|(f, s)| {
            let mut img = win.clone();
            (1..*s).all(|_| {
                img = f.image(&img);
                img.is_disjoint(&win)
            })
        });
        if ok {
            return Ok((j, win));
        }
    }
    Err(Error::SearchBoundExceeded(format!("no window around {p} within {} halvings", limits.max_halvings)))
}

/// Builds `g` fixing exactly `p` and `c_1..c_n` commuting with `g` such that
/// `{c_i (g h) c_i⁻¹}` is a free basis of rank `n` for each `h`.
pub fn lemma_fixed_point_construct(h: &ElementMultiset, p: &CirclePoint, n: usize, limits: &Limits) -> Result<ConstructionResult> {
    if h.is_empty() {
        return Err(Error::Precondition("H is empty".into()));
    }
    if h.contains_identity() {
        return Err(Error::Precondition("H contains the identity".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if !common_support(h).contains(p) {
        return Err(Error::Precondition(format!("{p} is not in the common support")));
    }
    let (j, window) = disjoint_window(h, p, limits)?;
    let elems: Vec<&PlMap> = h.entries().iter().map(|(f, _)| f).collect();
    let start = j.max(max_abs_log2_slope(&elems) as u32 + 1);
    let mut found = None;
    for m in start..=limits.max_steepness.max(start) {
        let g = step_map(p, m);
        if elems.iter().all(|f| has_two_isolated_fixed_points(&g.compose(f))) {
            found = Some((m, g));
            break;
        }
    }
    let (steepness, g) = found.ok_or_else(|| {
        Error::SearchBoundExceeded(format!("no steepness up to {} gives two fixed points", limits.max_steepness))
    })?;
    let mut per_h = Vec::new();
    for f in &elems {
        let k = g.compose(f);
        let (rho, cert, _) = free_power_search(&k, &g, limits)?;
        per_h.push(PerElement { h: (*f).clone(), k: k.clone(), a: k, rho, cert });
    }
    let theta = lcm_all(per_h.iter().map(|e| e.rho));
    let conjugators = conjugators(&g, theta, n);
    let res = ConstructionResult {
        kind: ConstructionKind::FixedPoint { p: p.clone(), steepness, window },
        g,
        theta,
        conjugators,
        per_h,
    };
    res.verify()?;
    Ok(res)
}

pub(crate) fn conjugators(g: &PlMap, step: u64, n: usize) -> Vec<PlMap> {
    let base = g.power(step as i64);
    let mut out = Vec::with_capacity(n);
    let mut c = base.clone();
    for _ in 0..n {
        out.push(c.clone());
        c = c.compose(&base);
    }
    out
}
