use num_bigint::BigInt;

use crate::arcset::ArcSet;
use crate::constructions::dyadic::{dyadic_homeomorphism, restrict};
use crate::constructions::fixed_point::conjugators;
use crate::constructions::{ConstructionKind, ConstructionResult, ElementMultiset, PerElement};
use crate::error::{Error, Result};
use crate::exact::{lcm_all, pow2, CirclePoint, Rational};
use crate::pingpong::{free_power_search, Limits};
use crate::plmap::PlMap;

struct Element {
    f: PlMap,
    inv: PlMap,
    order_two: bool,
    /// Ends of the support components of `f^s`.
    ends: Vec<CirclePoint>,
}

/// Dyadics `k / 2^level` in `[0, 1)`, coarse levels first.
fn dyadic_enumeration(max_level: u32) -> impl Iterator<Item = Rational> {
    (0..=max_level).flat_map(|level| {
        let den = 1i64 << level;
        (0..den)
            .filter(move |k| level == 0 || k % 2 == 1)
            .map(move |k| Rational::new(BigInt::from(k), BigInt::from(den)))
    })
}

/// `{x} ∪ {h^±1 x}` over every element.
fn orbit_star(x: &CirclePoint, elems: &[Element]) -> Vec<CirclePoint> {
    let mut out = vec![x.clone()];
    for e in elems {
        out.push(e.f.evaluate(x));
        out.push(e.inv.evaluate(x));
    }
    out.sort();
    out.dedup();
    out
}

/// Picks `x_i ∈ Supp(h_i)` so that the sets `{x_i, h_j^±1 x_i}` are
/// pairwise disjoint, avoid every end of a support component of `h_j^{s_j}`,
/// and `h_j x_i ≠ h_j⁻¹ x_i` unless `h_j` has order two.
fn choose_points(elems: &[Element], max_level: u32) -> Result<Vec<CirclePoint>> {
    let mut chosen: Vec<CirclePoint> = Vec::new();
    let mut used: Vec<CirclePoint> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        let supp = e.f.support();
        let pick = dyadic_enumeration(max_level).map(CirclePoint::new).find(|x| {
            if !supp.contains(x) {
                return false;
            }
            let star = orbit_star(x, elems);
            if star.iter().any(|y| used.contains(y)) {
                return false;
            }
            if star.iter().any(|y| elems.iter().any(|f| f.ends.contains(y))) {
                return false;
            }
            elems
                .iter()
                .all(|f| f.order_two || f.f.fixes(x) || f.f.evaluate(x) != f.inv.evaluate(x))
        });
        let x = pick.ok_or_else(|| {
            Error::Construction(format!("no dyadic point of level <= {max_level} works for element {}", i + 1))
        })?;
        used.extend(orbit_star(&x, elems));
        chosen.push(x);
    }
    Ok(chosen)
}

fn interval(x: &CirclePoint, rho: &Rational) -> ArcSet {
    ArcSet::open(&(x.value() - rho), &(x.value() + rho))
}

/// Whether radius `rho` gives intervals `J_i` around the points such that
/// the images `h_j^±1 J_i` for different `i` are disjoint, `J_i` misses
/// `h_j^±1 J_i` when `h_j` moves `x_i`, `h_j J_i` misses `h_j⁻¹ J_i` unless
/// `h_j` has order two, and the closures of the `J_i` are disjoint.
fn radius_ok(points: &[CirclePoint], elems: &[Element], rho: &Rational) -> bool {
    let js: Vec<ArcSet> = points.iter().map(|x| interval(x, rho)).collect();
    let stars: Vec<ArcSet> = js
        .iter()
        .map(|j| {
            elems
                .iter()
                .fold(j.clone(), |acc, e| acc.union(&e.f.image(j)).union(&e.inv.image(j)))
        })
        .collect();
    for a in 0..js.len() {
        for b in a + 1..js.len() {
            if !stars[a].is_disjoint(&stars[b]) || !js[a].closure().is_disjoint(&js[b].closure()) {
                return false;
            }
        }
    }
    for (x, j) in points.iter().zip(&js) {
        for e in elems {
            if e.f.fixes(x) {
                continue;
            }
            let (fwd, back) = (e.f.image(j), e.inv.image(j));
            if !fwd.is_disjoint(j) || !back.is_disjoint(j) || (!e.order_two && !fwd.is_disjoint(&back)) {
                return false;
            }
        }
    }
    true
}

/// `g̃` with rotation number `1/p` whose only periodic orbit is the sorted
/// `points`, cycled in order, and with `g̃^p` moving every point of
/// `(x_1, x_2)` forward.
fn build_g_tilde(points: &[CirclePoint]) -> Result<PlMap> {
    let p = points.len();
    let one = Rational::from_integer(1.into());
    let x1 = points[0].value().clone();
    let x2 = if p == 1 { &x1 + &one } else { points[1].value().clone() };
    let len = &x2 - &x1;
    let quarter = Rational::new(1.into(), 4.into());
    // ψ: x0 rescaled affinely onto [x1, x2]
    let mut psi_pairs = vec![
        (x1.clone(), x1.clone()),
        (&x1 + &len * &quarter, &x1 + &len * &quarter * Rational::from_integer(2.into())),
        (&x1 + &len * &quarter * Rational::from_integer(2.into()), &x1 + &len * &quarter * Rational::from_integer(3.into())),
    ];
    if p == 1 {
        return PlMap::from_pairs(&psi_pairs);
    }
    psi_pairs.push((x2.clone(), x2.clone()));
    let psi = PlMap::from_pairs(&psi_pairs)?;
    // g0 maps [x_i, x_{i+1}] onto [x_{i+1}, x_{i+2}] by dyadic homeomorphisms
    let lifted: Vec<Rational> = (0..p + 2)
        .map(|i| points[i % p].value() + Rational::from_integer(BigInt::from(i / p)))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..p {
        let mut piece = dyadic_homeomorphism(&lifted[i], &lifted[i + 1], &lifted[i + 1], &lifted[i + 2])?;
        piece.pop();
        pairs.extend(piece);
    }
    let g0 = PlMap::from_pairs(&pairs)?;
    let gamma0 = g0.power(p as i64);
    let nu = restrict(&gamma0.inverse().compose(&psi), &x1, &x2)?;
    Ok(g0.compose(&nu))
}

/// For `H = {h_1..h_p}` builds `g` (rotation number `1/p`) and `c_i = g^{iz}`
/// such that `{c_i (g h) c_i⁻¹)^p}` is a free basis of rank `n` for each `h`.
pub fn lemma_powerfree_construct(h: &ElementMultiset, n: usize, limits: &Limits) -> Result<ConstructionResult> {
    if h.is_empty() {
        return Err(Error::Precondition("H is empty".into()));
    }
    if h.contains_identity() {
        return Err(Error::Precondition("H contains the identity".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let hs: Vec<PlMap> = h.entries().iter().map(|(f, _)| f.clone()).collect();
    let mut elems = Vec::new();
    for f in &hs {
        let s = f.rotation_number(limits.q_max)?.denominator();
        let fs = f.power(s as i64);
        elems.push(Element {
            inv: f.inverse(),
            order_two: s == 2 && fs.is_identity(),
            ends: fs.support().boundary_points(),
            f: f.clone(),
        });
    }
    let p = elems.len();
    let max_level = limits.max_halvings.min(24);
    let mut points = choose_points(&elems, max_level)?;
    points.sort();

    let mut rho = pow2(-2);
    let mut halvings = 0;
    while !radius_ok(&points, &elems, &rho) {
        if halvings >= limits.max_halvings {
            return Err(Error::Construction("no radius separates the intervals around the points".into()));
        }
        rho = &rho / Rational::from_integer(2.into());
        halvings += 1;
    }
    let u = points.iter().fold(ArcSet::empty(), |acc, x| acc.union(&interval(x, &rho)));
    let c = u.complement();
    if c.components().iter().any(|k| k.is_point()) {
        return Err(Error::Construction("a complementary interval of U is a single point".into()));
    }

    let g_tilde = build_g_tilde(&points)?;
    let rot = g_tilde.rotation_number(limits.q_max)?;
    let period_set = ArcSet::from_points(points.iter());
    if rot.denominator() != p as u64 || g_tilde.power(p as i64).fixed_set() != period_set {
        return Err(Error::Construction("g~ does not have the points as its only periodic orbit".into()));
    }
    let gamma = g_tilde.power(p as i64);
    let mut img = c.clone();
    let mut d = 0u64;
    while !img.is_subset(&u) || d == 0 {
        if d >= limits.max_power {
            return Err(Error::SearchBoundExceeded(format!("d exceeds {}", limits.max_power)));
        }
        img = gamma.image(&img);
        d += 1;
    }
    let g = gamma.power(d as i64).compose(&g_tilde);

    let mut per_h = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        let k = g.compose(&e.f);
        // the orbit of every point leaves the period set within p steps
        for (j, x) in points.iter().enumerate() {
            let mut y = x.clone();
            let left = (1..=p).any(|_| {
                y = k.evaluate(&y);
                !period_set.contains(&y)
            });
            if !left {
                return Err(Error::Construction(format!(
                    "x_{} stays among the points for {p} steps under k_{}",
                    j + 1,
                    i + 1
                )));
            }
        }
        let kp = k.power(p as i64);
        let (z, cert, _) = free_power_search(&kp, &g, limits)?;
        per_h.push(PerElement { h: e.f.clone(), k, a: kp, rho: z, cert });
    }
    let theta = lcm_all(per_h.iter().map(|e| e.rho));
    let res = ConstructionResult {
        kind: ConstructionKind::Powerfree { g_tilde, points, radius: rho, d, power: p as u64 },
        conjugators: conjugators(&g, theta, n),
        g,
        theta,
        per_h,
    };
    res.verify()?;
    Ok(res)
}
