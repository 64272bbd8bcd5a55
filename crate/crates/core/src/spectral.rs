//! Trace moments of finitely supported elements of the group algebra and
//! the free-group return counts they are compared against.
//!
//! `tr(x)` is the coefficient of the identity. Products are split in the
//! middle, `tr(X^{a+b}) = Σ_g X^a(g) X^b(g⁻¹)`, so only distributions of
//! half the length are ever built.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, nth_root_bracket, Rational};
use crate::plmap::PlMap;

/// Default number of distribution entries expanded before a report is cut
/// short.
pub const DEFAULT_BUDGET: u64 = 1 << 20;
/// Default precision of root brackets, in decimal digits.
pub const DEFAULT_DIGITS: u32 = 4;

/// `Σ c_g λ(g)` with distinct `g` and non-zero `c_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedElement {
    terms: Vec<(Rational, PlMap)>,
}

impl WeightedElement {
    /// Merges repeated elements and drops zero coefficients.
    pub fn new<I: IntoIterator<Item = (Rational, PlMap)>>(terms: I) -> Self {
        let mut out: Vec<(Rational, PlMap)> = Vec::new();
        for (c, g) in terms {
            match out.iter_mut().find(|(_, h)| *h == g) {
                Some(slot) => slot.0 += c,
                None => out.push((c, g)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        WeightedElement { terms: out }
    }

    /// `Σ λ(g)` over the given elements, with multiplicity.
    pub fn indicator<I: IntoIterator<Item = PlMap>>(elems: I) -> Self {
        Self::new(elems.into_iter().map(|g| (Rational::one(), g)))
    }

    pub fn terms(&self) -> &[(Rational, PlMap)] {
        &self.terms
    }

    pub fn adjoint(&self) -> Self {
        WeightedElement { terms: self.terms.iter().map(|(c, g)| (c.clone(), g.inverse())).collect() }
    }

    /// `self · other` in the group algebra.
    pub fn product(&self, other: &WeightedElement) -> WeightedElement {
        let mut terms = Vec::new();
        for (c, g) in &self.terms {
            for (d, h) in &other.terms {
                terms.push((c * d, g.compose(h)));
            }
        }
        WeightedElement::new(terms)
    }

    /// `Σ |c_g|`, an upper bound for the reduced norm.
    pub fn l1_norm(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (c, _)| acc + c.abs())
    }
}

impl fmt::Display for WeightedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, g)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{g}", fmt_rational(c))?;
        }
        Ok(())
    }
}

type Dist<T> = HashMap<PlMap, T>;

/// Distributions of `X^0 .. X^depth` for `X = Σ steps`, cut short once more
/// than `budget` entries would be expanded (flag `false`).
fn layers<T>(steps: &[(T, PlMap)], depth: usize, budget: u64) -> (Vec<Dist<T>>, bool)
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    let mut out = vec![Dist::from([(PlMap::identity(), T::one())])];
    let mut spent = 0u64;
    while out.len() <= depth {
        let last = out.last().unwrap();
        spent += (last.len() * steps.len()) as u64;
        if spent > budget {
            return (out, false);
        }
        let mut next: Dist<T> = Dist::new();
        for (g, w) in last {
            for (c, s) in steps {
                let slot = next.entry(s.compose(g)).or_insert_with(T::zero);
                *slot = slot.clone() + c.clone() * w;
            }
        }
        next.retain(|_, v| !v.is_zero());
        out.push(next);
    }
    (out, true)
}

/// `Σ_g A(g) B(g⁻¹)`.
fn pair_trace<T>(a: &Dist<T>, b: &Dist<T>) -> T
where
    T: Clone + Zero + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    a.iter().fold(T::zero(), |acc, (g, w)| match b.get(&g.inverse()) {
        Some(v) => acc + w.clone() * v,
        None => acc,
    })
}

/// Number of words of each length whose product is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnCounts {
    /// `counts[L]` for `L = 0..=max_len` (fewer when incomplete).
    pub counts: Vec<u128>,
    pub complete: bool,
}

/// Identity-return counts of words over `gens` and their inverses, each
/// generator contributing two letters even when it is an involution.
pub fn identity_return_counts(gens: &[PlMap], max_len: usize, budget: u64) -> Result<ReturnCounts> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("at least one generator is needed".into()));
    }
    let steps: Vec<(u128, PlMap)> = gens.iter().flat_map(|g| [(1u128, g.clone()), (1u128, g.inverse())]).collect();
    let (dists, complete) = layers(&steps, max_len.div_ceil(2), budget);
    let reach = dists.len() - 1;
    let counts = (0..=max_len)
        .take_while(|l| l.div_ceil(2) <= reach)
        .map(|l| pair_trace(&dists[l.div_ceil(2)], &dists[l / 2]))
        .collect::<Vec<_>>();
    Ok(ReturnCounts { complete: complete && counts.len() == max_len + 1, counts })
}

/// Return counts of the simple walk on the free group of the given rank,
/// counted by reduced length: `2 rank` ways up from the identity, one way
/// down and `2 rank - 1` up elsewhere.
pub fn free_group_oracle_counts(rank: usize, max_len: usize) -> Vec<u128> {
    assert!(rank >= 1, "rank must be positive");
    let up = 2 * rank as u128;
    let mut walk = vec![0u128; max_len + 2];
    walk[0] = 1;
    let mut out = vec![1];
    for _ in 0..max_len {
        let mut next = vec![0u128; max_len + 2];
        for (d, &w) in walk.iter().enumerate() {
            if w == 0 {
                continue;
            }
            if d == 0 {
                next[1] += w * up;
            } else {
                next[d - 1] += w;
                if d + 1 < next.len() {
                    next[d + 1] += w * (up - 1);
                }
            }
        }
        walk = next;
        out.push(walk[0]);
    }
    out
}

/// `tr((T*T)^k)` for `k = 1..=k_max` and the bracketed `2k`-th roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub k_max: usize,
    pub moments: Vec<Rational>,
    /// `(lo, hi)` with `lo <= tr((T*T)^k)^(1/2k) <= hi`.
    pub lower_bounds: Vec<(Rational, Rational)>,
    pub digits: u32,
    /// `Σ |c_g|`.
    pub upper_bound: Rational,
    pub complete: bool,
}

impl MomentReport {
    /// Best certified lower bound for the norm.
    pub fn best_lower_bound(&self) -> Rational {
        self.lower_bounds.iter().map(|(lo, _)| lo.clone()).max().unwrap_or_else(Rational::zero)
    }

    fn rows(&self) -> Vec<[String; 4]> {
        self.moments
            .iter()
            .zip(&self.lower_bounds)
            .enumerate()
            .map(|(i, (m, (lo, hi)))| [(i + 1).to_string(), fmt_rational(m), decimal(lo, self.digits), decimal(hi, self.digits)])
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tmoment\tlow\thigh\n");
        for r in self.rows() {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MomentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = ["k".to_string(), "moment".into(), "low".into(), "high".into()];
        let rows = self.rows();
        let mut width = [0usize; 4];
        for r in std::iter::once(&head).chain(&rows) {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        for r in std::iter::once(&head).chain(&rows) {
            writeln!(f, "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}", r[0], r[1], r[2], r[3], w0 = width[0], w1 = width[1], w2 = width[2], w3 = width[3])?;
        }
        writeln!(f, "upper bound {}", fmt_rational(&self.upper_bound))?;
        if !self.complete {
            writeln!(f, "incomplete: budget reached after k = {}", self.moments.len())?;
        }
        Ok(())
    }
}

/// Fixed-point rendering of a rational with a power-of-ten denominator.
fn decimal(x: &Rational, digits: u32) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(digits);
    let n = (x * Rational::from_integer(scale.clone())).round().to_integer();
    let (q, r) = (&n / &scale, &n % &scale);
    if digits == 0 {
        return q.to_string();
    }
    format!("{q}.{:0>width$}", r.to_string(), width = digits as usize)
}

/// Moments of `T*T` and the lower bounds `tr((T*T)^k)^(1/2k) <= ‖T‖`.
pub fn moment_norm_lower_bound(t: &WeightedElement, k_max: usize, budget: u64, digits: u32) -> Result<MomentReport> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be positive".into()));
    }
    let x = t.adjoint().product(t);
    let steps: Vec<(Rational, PlMap)> = x.terms().to_vec();
    let (dists, complete) = layers(&steps, k_max.div_ceil(2), budget);
    let reach = dists.len() - 1;
    let mut moments = Vec::new();
    let mut lower_bounds = Vec::new();
    for k in 1..=k_max {
        if k.div_ceil(2) > reach {
            break;
        }
        let m = pair_trace(&dists[k.div_ceil(2)], &dists[k / 2]);
        let (lo, hi, _) = nth_root_bracket(&m, 2 * k as u32, digits);
        moments.push(m);
        lower_bounds.push((lo, hi));
    }
    Ok(MomentReport {
        k_max,
        complete: complete && moments.len() == k_max,
        moments,
        lower_bounds,
        digits,
        upper_bound: t.l1_norm(),
    })
}

/// `√(2n-1)/n`, the spectral radius of the simple walk on the free group of
/// rank `n`, as the pair `(2n-1, n)` with a rational bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KestenBound {
    pub radicand: u64,
    pub denominator: u64,
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
}

impl fmt::Display for KestenBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "sqrt({})/{} = {}", self.radicand, self.denominator, fmt_rational(&self.lo))
        } else {
            write!(f, "sqrt({})/{} in [{}, {}]", self.radicand, self.denominator, fmt_rational(&self.lo), fmt_rational(&self.hi))
        }
    }
}

pub fn kesten_bound(n: u64, digits: u32) -> Result<KestenBound> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let radicand = 2 * n - 1;
    let x = Rational::new(radicand.into(), (n * n).into());
    let (lo, hi, exact) = nth_root_bracket(&x, 2, digits);
    Ok(KestenBound { radicand, denominator: n, lo, hi, exact })
}
