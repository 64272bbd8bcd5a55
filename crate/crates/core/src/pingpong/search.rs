use std::fmt;

use crate::arcset::{Arc, ArcSet};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, half, parse_rational, Rational};
use crate::pingpong::certificate::{verify_certificate, PingPongCertificate, Split};
use crate::pingpong::{torsion_order, Limits};
use crate::plmap::PlMap;
use crate::witness::Block;

/// Which half of the proof produced the certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `a` has finite order `q`.
    Torsion { q: u64, epsilon: Rational, v: u64 },
    /// `a` has infinite order; `delta_window` is `Δ_N = [-N, N] \ {0}`.
    NonTorsion {
        f_a: ArcSet,
        epsilon: Rational,
        m: u64,
        n: u64,
        delta: Rational,
        z: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTrace {
    pub b1: PlMap,
    pub s: u64,
    pub branch: Branch,
    /// Width of the end intervals in the split of `x_b`.
    pub split_width: Rational,
    pub k: u64,
}

impl SearchTrace {
    pub fn delta_window(&self) -> Vec<i64> {
        match &self.branch {
            Branch::Torsion { .. } => Vec::new(),
            Branch::NonTorsion { n, .. } => window(*n),
        }
    }

    /// Re-checks the separation claims recorded in the trace against `a`.
    pub fn recheck(&self, a: &PlMap) -> Result<()> {
        let fix = self.b1.fixed_set();
        match &self.branch {
            Branch::Torsion { q, epsilon, .. } => {
                let u = fix.neighborhood(epsilon)?;
                for i in 1..*q {
                    let ui = a.power(i as i64).image(&fix).neighborhood(epsilon)?;
                    if !u.is_disjoint(&ui) {
                        return Err(Error::CertificateMismatch(format!("U meets U_{i}")));
                    }
                }
            }
            Branch::NonTorsion { f_a, epsilon, n, delta, .. } => {
                if delta >= epsilon {
                    return Err(Error::CertificateMismatch("delta is not below epsilon".into()));
                }
                let xb = fix.neighborhood(delta)?;
                if !xb.is_disjoint(&f_a.neighborhood(epsilon)?) {
                    return Err(Error::CertificateMismatch("N_delta(Fix b1) meets N_eps(F_a)".into()));
                }
                let v = window(*n)
                    .into_iter()
                    .fold(ArcSet::empty(), |acc, j| acc.union(&a.power(j).image(&xb)));
                if !v.is_disjoint(&xb) {
                    return Err(Error::CertificateMismatch("V_delta meets N_delta(Fix b1)".into()));
                }
            }
        }
        Ok(())
    }

    pub fn to_block(&self) -> Block {
        let mut blk = Block::new("trace");
        blk.push("b1", &self.b1).push("s", self.s);
        match &self.branch {
            Branch::Torsion { q, epsilon, v } => {
                blk.push("branch", "torsion")
                    .push("q", q)
                    .push("epsilon", fmt_rational(epsilon))
                    .push("v", v);
            }
            Branch::NonTorsion { f_a, epsilon, m, n, delta, z } => {
                blk.push("branch", "non-torsion")
                    .push("f_a", f_a)
                    .push("epsilon", fmt_rational(epsilon))
                    .push("m", m)
                    .push("n", n)
                    .push("delta_window", format!("-{n}..-1,1..{n}"))
                    .push("delta", fmt_rational(delta))
                    .push("z", z);
            }
        }
        blk.push("split_width", fmt_rational(&self.split_width)).push("k", self.k);
        blk
    }

    /// Inverse of [`SearchTrace::to_block`].
    pub fn from_block(blk: &Block) -> Result<SearchTrace> {
        if blk.kind != "trace" {
            return Err(Error::CertificateMismatch(format!("expected a trace block, got `{}`", blk.kind)));
        }
        let int = |key: &str| -> Result<u64> {
            blk.get(key)?
                .parse()
                .map_err(|_| Error::CertificateMismatch(format!("`{key}` is not an integer")))
        };
        let rational = |key: &str| parse_rational(blk.get(key)?);
        let branch = match blk.get("branch")? {
            "torsion" => Branch::Torsion { q: int("q")?, epsilon: rational("epsilon")?, v: int("v")? },
            "non-torsion" => Branch::NonTorsion {
                f_a: blk.get("f_a")?.parse()?,
                epsilon: rational("epsilon")?,
                m: int("m")?,
                n: int("n")?,
                delta: rational("delta")?,
                z: int("z")?,
            },
            other => return Err(Error::CertificateMismatch(format!("unknown branch `{other}`"))),
        };
        Ok(SearchTrace {
            b1: blk.get("b1")?.parse()?,
            s: int("s")?,
            branch,
            split_width: rational("split_width")?,
            k: int("k")?,
        })
    }
}

impl fmt::Display for SearchTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_block().fmt(f)
    }
}

fn window(n: u64) -> Vec<i64> {
    let n = n as i64;
    (-n..=n).filter(|j| *j != 0).collect()
}

/// Whether `f` pushes the interior of `c` towards its end point.
fn moves_forward(f: &PlMap, c: &Arc) -> bool {
    let m = c.midpoint();
    c.start.forward_to(&f.evaluate(&m)) > c.start.forward_to(&m)
}

/// `(start end, finish end)` open end intervals of width `w` inside `c`.
fn end_intervals(c: &Arc, w: &Rational) -> (ArcSet, ArcSet) {
    let (s, e) = c.lifted();
    if w >= &(&e - &s) {
        let all = ArcSet::arc(&s, &e, false, false).expect("open arcs are valid");
        return (all.clone(), all);
    }
    (ArcSet::open(&s, &(&s + w)), ArcSet::open(&(&e - w), &e))
}

/// Split of `N_w(Fix f)` into an `f`-invariant part (`Fix f` plus the
/// attracting ends of the support components) and an `f⁻¹`-invariant part.
pub(crate) fn end_split(f: &PlMap, w: &Rational) -> Split {
    let fix = f.fixed_set();
    let mut plus = fix.clone();
    let mut minus = fix;
    for c in f.support().components() {
        let (start, finish) = end_intervals(&c, w);
        if moves_forward(f, &c) {
            plus = plus.union(&finish);
            minus = minus.union(&start);
        } else {
            plus = plus.union(&start);
            minus = minus.union(&finish);
        }
    }
    Split { plus, minus }
}

/// Smallest `n ≥ 1` such that `f^n` maps the middle of every support
/// component (the part outside `N_w(Fix f)`) into the attracting end, and
/// `f^-n` into the repelling end.
pub(crate) fn push_power(f: &PlMap, w: &Rational, max: u64) -> Result<u64> {
    let inv = f.inverse();
    let mut need = 1u64;
    for c in f.support().components() {
        let (s, e) = c.lifted();
        let len = &e - &s;
        if len < (w + w) {
            continue;
        }
        let forward = moves_forward(f, &c);
        let first = crate::exact::CirclePoint::new(&s + w);
        let last = crate::exact::CirclePoint::new(&e - w);
        let far = &len - w;
        // forward: f^n(first) must pass e - w and f^-n(last) must pass s + w
        let (lead, trail) = if forward { (first, last) } else { (last, first) };
        for (g, start, toward_end) in [(f, lead, forward), (&inv, trail, !forward)] {
            let mut p = start;
            let mut n = 0u64;
            loop {
                let d = c.start.forward_to(&p);
                let done = if toward_end { d > far } else { d < *w };
                if done && n > 0 {
                    break;
                }
                if n >= max {
                    return Err(Error::SearchBoundExceeded(format!("push power exceeds {max}")));
                }
                p = g.evaluate(&p);
                n += 1;
            }
            need = need.max(n);
        }
    }
    Ok(need)
}

fn images(a: &PlMap, set: &ArcSet, powers: impl IntoIterator<Item = i64>) -> ArcSet {
    powers
        .into_iter()
        .fold(ArcSet::empty(), |acc, j| acc.union(&a.power(j).image(set)))
}

/// Finds `k` (a multiple of the denominator `s` of `Rot(b)`) and a
/// certificate that `⟨a, b^k⟩ = ⟨a⟩ ∗ ⟨b^k⟩`.
pub fn free_power_search(a: &PlMap, b: &PlMap, limits: &Limits) -> Result<(u64, PingPongCertificate, SearchTrace)> {
    let rot_a = a.rotation_number(limits.q_max)?;
    let rot_b = b.rotation_number(limits.q_max)?;
    let s = rot_b.denominator();
    let b1 = b.power(s as i64);
    if b1.is_identity() {
        return Err(Error::HypothesisViolated("b is torsion".into()));
    }
    if a.is_identity() {
        return Err(Error::HypothesisViolated("a is the identity".into()));
    }
    let fix = b1.fixed_set();
    let q = rot_a.denominator();
    let (k, cert, trace) = if torsion_order(a, q) == Some(q) {
        torsion_branch(a, &b1, s, q, &fix, limits)?
    } else {
        non_torsion_branch(a, &b1, s, q, &fix, limits)?
    };
    let bk = b.power(k as i64);
    let verdict = verify_certificate(a, &bk, &cert)?;
    if let Some(f) = verdict.failure {
        return Err(Error::Construction(format!("search produced an invalid certificate: {f}")));
    }
    Ok((k, cert, trace))
}

fn torsion_branch(
    a: &PlMap,
    b1: &PlMap,
    s: u64,
    q: u64,
    fix: &ArcSet,
    limits: &Limits,
) -> Result<(u64, PingPongCertificate, SearchTrace)> {
    let mut others = ArcSet::empty();
    for j in 1..q {
        let img = a.power(j as i64).image(fix);
        if !img.is_disjoint(fix) {
            return Err(Error::HypothesisViolated(format!("a^{j} Fix(b^s) meets Fix(b^s)")));
        }
        others = others.union(&img);
    }
    let epsilon = half(&fix.separation(&others)?);
    let mut x_b = fix.neighborhood(&epsilon)?;
    for i in 1..q {
        let ui = a.power(i as i64).image(fix).neighborhood(&epsilon)?;
        x_b = x_b.intersection(&a.power((q - i) as i64).image(&ui));
    }
    let x_a = images(a, &x_b, 1..q as i64);
    let w = fix.separation(&x_b.complement())?;
    let split = end_split(b1, &w);
    let v = push_power(b1, &w, limits.max_power)?;
    let k = v * s;
    let cert = PingPongCertificate {
        x_a,
        x_b,
        a_torsion_order: Some(q),
        b_torsion_order: None,
        a_split: None,
        b_split: Some(split),
    };
    let trace = SearchTrace {
        b1: b1.clone(),
        s,
        branch: Branch::Torsion { q, epsilon, v },
        split_width: w,
        k,
    };
    Ok((k, cert, trace))
}

/// `a`-forward-invariant (`plus`) and `a`-backward-invariant (`minus`)
/// sets made of `Fix(a^q)` and end intervals of width about `w` of the
/// components of `Supp(a^q)`, propagated along `⟨a⟩`-orbits.
fn orbit_ends(a: &PlMap, aq: &PlMap, w: &Rational) -> Split {
    let comps = aq.support().components();
    let mut seen = vec![false; comps.len()];
    let fix = aq.fixed_set();
    let mut plus = fix.clone();
    let mut minus = fix;
    let index_of = |p: crate::exact::CirclePoint| comps.iter().position(|c| ArcSet::arc(&c.lifted().0, &c.lifted().1, false, false).unwrap().contains(&p));
    for i in 0..comps.len() {
        if seen[i] {
            continue;
        }
        let c = &comps[i];
        let (start, finish) = end_intervals(c, w);
        let (mut p, mut m) = if moves_forward(aq, c) { (finish, start) } else { (start, finish) };
        let mut j = i;
        loop {
            seen[j] = true;
            plus = plus.union(&p);
            minus = minus.union(&m);
            let next = index_of(a.evaluate(&comps[j].midpoint())).expect("a permutes the support components of a^q");
            if next == i {
                break;
            }
            p = a.image(&p);
            m = a.image(&m);
            j = next;
        }
    }
    Split { plus, minus }
}

fn non_torsion_branch(
    a: &PlMap,
    b1: &PlMap,
    s: u64,
    q: u64,
    fix: &ArcSet,
    limits: &Limits,
) -> Result<(u64, PingPongCertificate, SearchTrace)> {
    let aq = a.power(q as i64);
    let f_a = aq.fixed_set();
    if !f_a.is_disjoint(fix) {
        return Err(Error::HypothesisViolated("Fix(a^q) meets Fix(b^s)".into()));
    }
    let epsilon = half(&fix.separation(&f_a)?);
    let nbhd = f_a.neighborhood(&epsilon)?;

    let aq_inv = aq.inverse();
    let (mut fwd, mut back) = (fix.clone(), fix.clone());
    let mut m = 0u64;
    while !(fwd.is_subset(&nbhd) && back.is_subset(&nbhd)) || m == 0 {
        if m >= limits.max_power {
            return Err(Error::SearchBoundExceeded(format!("m exceeds {}", limits.max_power)));
        }
        fwd = aq.image(&fwd);
        back = aq_inv.image(&back);
        m += 1;
    }

    let mut w = epsilon.clone();
    let mut ends = orbit_ends(a, &aq, &w);
    let mut halvings = 0;
    while !ends.plus.union(&ends.minus).is_subset(&nbhd) {
        if halvings >= limits.max_halvings {
            return Err(Error::SearchBoundExceeded("end intervals do not fit near Fix(a^q)".into()));
        }
        w = half(&w);
        ends = orbit_ends(a, &aq, &w);
        halvings += 1;
    }

    // smallest t with a^t K ⊆ plus and a^-t K ⊆ minus, K outside N_eps(F_a)
    let outside = nbhd.complement();
    let a_inv = a.inverse();
    let (mut fwd, mut back) = (outside.clone(), outside);
    let mut t = 0u64;
    while !(fwd.is_subset(&ends.plus) && back.is_subset(&ends.minus)) || t == 0 {
        if t >= limits.max_power {
            return Err(Error::SearchBoundExceeded(format!("N exceeds {}", limits.max_power)));
        }
        fwd = a.image(&fwd);
        back = a_inv.image(&back);
        t += 1;
    }
    let n = (t - 1).max(1);

    for j in window(n) {
        if !a.power(j).image(fix).is_disjoint(fix) {
            return Err(Error::HypothesisViolated(format!("a^{j} Fix(b^s) meets Fix(b^s)")));
        }
    }

    let mut delta = half(&epsilon);
    let mut halvings = 0;
    let (x_b, v_delta) = loop {
        let x_b = fix.neighborhood(&delta)?;
        let v = images(a, &x_b, window(n));
        if v.is_disjoint(&x_b) {
            break (x_b, v);
        }
        if halvings >= limits.max_halvings {
            return Err(Error::SearchBoundExceeded("no delta separates N_delta(Fix b1) from V_delta".into()));
        }
        delta = half(&delta);
        halvings += 1;
    };
    let x_a = nbhd.union(&v_delta);
    let a_split = Split {
        plus: images(a, &x_b, 1..=n as i64).union(&ends.plus),
        minus: images(a, &x_b, (1..=n as i64).map(|j| -j)).union(&ends.minus),
    };
    let b_split = end_split(b1, &delta);
    let z = push_power(b1, &delta, limits.max_power)?;
    let k = s * z;
    let cert = PingPongCertificate {
        x_a,
        x_b,
        a_torsion_order: None,
        b_torsion_order: None,
        a_split: Some(a_split),
        b_split: Some(b_split),
    };
    let trace = SearchTrace {
        b1: b1.clone(),
        s,
        branch: Branch::NonTorsion { f_a, epsilon, m, n, delta: delta.clone(), z },
        split_width: delta,
        k,
    };
    Ok((k, cert, trace))
}
