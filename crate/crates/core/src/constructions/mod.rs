//! Free-subgroup constructions in Thompson's group T and the checks that
//! go with them: the π-relation for the multisets `H1`, `H2`, step-like
//! maps fixing one point, the fixed-point and p-th power constructions,
//! and the disjoint-support and four-conjugate obstructions.

mod dyadic;
mod fixed_point;
mod multiset;
mod obstruction;
mod powerfree;

pub use dyadic::{dyadic_homeomorphism, restrict};
pub use fixed_point::{build_step_like_g, find_common_support_point, lemma_fixed_point_construct};
pub use multiset::{haagerup_olesen_multisets, verify_pi_relation, ElementMultiset, HaagerupOlesenSets, PiWitness};
pub use obstruction::{disjoint_support_obstruction, four_conjugate_analysis, DisjointSupportReport, ObstructionReport};
pub use powerfree::lemma_powerfree_construct;

use crate::arcset::ArcSet;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, CirclePoint, Rational};
use crate::pingpong::{verify_certificate, PingPongCertificate};
use crate::plmap::PlMap;
use crate::witness::Block;

/// Data specific to each construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    FixedPoint {
        p: CirclePoint,
        steepness: u32,
        /// `(p - r, p + r)` with every `h^j` moving it off itself, `j < s_h`.
        window: ArcSet,
    },
    Powerfree {
        g_tilde: PlMap,
        points: Vec<CirclePoint>,
        radius: Rational,
        d: u64,
        /// `p = |H|`; the family generators are `k^p`.
        power: u64,
    },
}

/// One input element `h` with `k = g·h`, the generator `a` that plays
/// ping-pong against `g^rho` (`k` or `k^p`), and the certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerElement {
    pub h: PlMap,
    pub k: PlMap,
    pub a: PlMap,
    pub rho: u64,
    pub cert: PingPongCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub kind: ConstructionKind,
    pub g: PlMap,
    pub theta: u64,
    /// `c_i = g^{i θ}` for `i = 1..=n`.
    pub conjugators: Vec<PlMap>,
    pub per_h: Vec<PerElement>,
}

impl ConstructionResult {
    /// `{c_i a c_i⁻¹}` for the `index`-th input element.
    pub fn family(&self, index: usize) -> Vec<PlMap> {
        let a = &self.per_h[index].a;
        self.conjugators.iter().map(|c| a.conjugate(c)).collect()
    }

    /// Re-checks commutation of every conjugator with `g` and every
    /// certificate, both for `g^rho` and for `g^theta`.
    pub fn verify(&self) -> Result<()> {
        for (i, c) in self.conjugators.iter().enumerate() {
            if !c.commutes(&self.g) {
                return Err(Error::CertificateMismatch(format!("c_{} does not commute with g", i + 1)));
            }
        }
        let g_theta = self.g.power(self.theta as i64);
        for (i, e) in self.per_h.iter().enumerate() {
            if !self.theta.is_multiple_of(e.rho) {
                return Err(Error::CertificateMismatch(format!("rho_{} does not divide theta", i + 1)));
            }
            for b in [self.g.power(e.rho as i64), g_theta.clone()] {
                if let Some(f) = verify_certificate(&e.a, &b, &e.cert)?.failure {
                    return Err(Error::CertificateMismatch(format!("element {}: {f}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// A `construction` block followed by one `certificate` block per input
    /// element (for the pair `(a, g^rho)`).
    pub fn to_blocks(&self) -> Vec<Block> {
        let mut head = Block::new("construction");
        match &self.kind {
            ConstructionKind::FixedPoint { p, steepness, window } => {
                head.push("kind", "fixed-point")
                    .push("p", p)
                    .push("steepness", steepness)
                    .push("window", window);
            }
            ConstructionKind::Powerfree { g_tilde, points, radius, d, power } => {
                let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                head.push("kind", "powerfree")
                    .push("g_tilde", g_tilde)
                    .push("points", pts.join(","))
                    .push("radius", fmt_rational(radius))
                    .push("d", d)
                    .push("power", power);
            }
        }
        head.push("g", &self.g).push("theta", self.theta);
        for c in &self.conjugators {
            head.push("conjugator", c);
        }
        for e in &self.per_h {
            head.push("h", &e.h).push("rho", e.rho);
        }
        let mut out = vec![head];
        for e in &self.per_h {
            out.push(e.cert.to_block(&e.a, &self.g.power(e.rho as i64)));
        }
        out
    }
}
