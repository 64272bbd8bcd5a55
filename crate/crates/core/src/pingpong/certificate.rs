use crate::arcset::ArcSet;
use crate::error::{Error, Result};
use crate::pingpong::torsion_order;
use crate::plmap::PlMap;
use crate::witness::Block;

/// Attracting and repelling parts of a generator's ping-pong set:
/// `g·(plus ∪ X_other) ⊆ plus` and `g⁻¹·(minus ∪ X_other) ⊆ minus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub plus: ArcSet,
    pub minus: ArcSet,
}

/// Ping-pong data for a pair `(a, b)`. A torsion side is checked power by
/// power; a non-torsion side carries a [`Split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongCertificate {
    pub x_a: ArcSet,
    pub x_b: ArcSet,
    pub a_torsion_order: Option<u64>,
    pub b_torsion_order: Option<u64>,
    pub a_split: Option<Split>,
    pub b_split: Option<Split>,
}

/// Outcome of [`verify_certificate`]; `failure` names the first condition
/// that does not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub failure: Option<String>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(msg: String) -> Self {
        Verdict { failure: Some(msg) }
    }
}

fn check_side(
    name: &str,
    g: &PlMap,
    own: &ArcSet,
    other: &ArcSet,
    order: Option<u64>,
    split: Option<&Split>,
) -> Option<String> {
    match (order, split) {
        (Some(q), _) => {
            let mut img = other.clone();
            for n in 1..q {
                img = g.image(&img);
                if !img.is_subset(own) {
                    return Some(format!("{name}^{n} x_other is not inside x_{name}"));
                }
            }
            None
        }
        (None, Some(s)) => {
            if !s.plus.union(&s.minus).is_subset(own) {
                return Some(format!("{name} split is not inside x_{name}"));
            }
            if !g.image(&s.plus.union(other)).is_subset(&s.plus) {
                return Some(format!("{name} does not map plus ∪ x_other into plus"));
            }
            if !g.preimage(&s.minus.union(other)).is_subset(&s.minus) {
                return Some(format!("{name}^-1 does not map minus ∪ x_other into minus"));
            }
            None
        }
        (None, None) => Some(format!("{name} has neither a torsion order nor a split")),
    }
}

/// Exact check of every ping-pong condition for `(a, b)`. A valid verdict
/// means `⟨a, b⟩ = ⟨a⟩ ∗ ⟨b⟩`.
pub fn verify_certificate(a: &PlMap, b: &PlMap, cert: &PingPongCertificate) -> Result<Verdict> {
    if cert.x_a.is_empty() || cert.x_b.is_empty() {
        return Err(Error::InvalidArgument("empty ping-pong set".into()));
    }
    for (name, g, order) in [("a", a, cert.a_torsion_order), ("b", b, cert.b_torsion_order)] {
        if let Some(q) = order {
            if q == 0 || torsion_order(g, q) != Some(q) {
                return Err(Error::CertificateMismatch(format!("{name} is not of order {q}")));
            }
        }
    }
    if cert.x_a.is_subset(&cert.x_b) {
        return Ok(Verdict::fail("x_a is contained in x_b".into()));
    }
    if cert.x_b.is_subset(&cert.x_a) {
        return Ok(Verdict::fail("x_b is contained in x_a".into()));
    }
    if cert.a_torsion_order.is_some_and(|q| q <= 2) && cert.b_torsion_order.is_some_and(|q| q <= 2) {
        return Ok(Verdict::fail("both generators have order at most 2".into()));
    }
    if let Some(f) = check_side("a", a, &cert.x_a, &cert.x_b, cert.a_torsion_order, cert.a_split.as_ref()) {
        return Ok(Verdict::fail(f));
    }
    if let Some(f) = check_side("b", b, &cert.x_b, &cert.x_a, cert.b_torsion_order, cert.b_split.as_ref()) {
        return Ok(Verdict::fail(f));
    }
    Ok(Verdict { failure: None })
}

fn fmt_order(q: Option<u64>) -> String {
    q.map_or_else(|| "none".to_string(), |q| q.to_string())
}

fn fmt_split(s: Option<&Split>) -> String {
    s.map_or_else(|| "none".to_string(), |s| format!("{} ; {}", s.plus, s.minus))
}

fn parse_order(v: &str) -> Result<Option<u64>> {
    if v == "none" {
        return Ok(None);
    }
    v.parse()
        .map(Some)
        .map_err(|_| Error::CertificateMismatch(format!("bad torsion order `{v}`")))
}

fn parse_split(v: &str) -> Result<Option<Split>> {
    if v == "none" {
        return Ok(None);
    }
    let (p, m) = v
        .split_once(';')
        .ok_or_else(|| Error::CertificateMismatch(format!("bad split `{v}`")))?;
    Ok(Some(Split { plus: p.trim().parse()?, minus: m.trim().parse()? }))
}

impl PingPongCertificate {
    /// The `certificate` witness block for the pair `(a, b)`.
    pub fn to_block(&self, a: &PlMap, b: &PlMap) -> Block {
        let mut blk = Block::new("certificate");
        blk.push("a", a)
            .push("b", b)
            .push("x_a", &self.x_a)
            .push("x_b", &self.x_b)
            .push("a_torsion", fmt_order(self.a_torsion_order))
            .push("b_torsion", fmt_order(self.b_torsion_order))
            .push("a_split", fmt_split(self.a_split.as_ref()))
            .push("b_split", fmt_split(self.b_split.as_ref()));
        blk
    }

    /// Inverse of [`PingPongCertificate::to_block`]: `(a, b, certificate)`.
    pub fn from_block(blk: &Block) -> Result<(PlMap, PlMap, PingPongCertificate)> {
        if blk.kind != "certificate" {
            return Err(Error::CertificateMismatch(format!("expected a certificate block, got `{}`", blk.kind)));
        }
        let a = blk.get("a")?.parse()?;
        let b = blk.get("b")?.parse()?;
        let cert = PingPongCertificate {
            x_a: blk.get("x_a")?.parse()?,
            x_b: blk.get("x_b")?.parse()?,
            a_torsion_order: parse_order(blk.get("a_torsion")?)?,
            b_torsion_order: parse_order(blk.get("b_torsion")?)?,
            a_split: parse_split(blk.get("a_split")?)?,
            b_split: parse_split(blk.get("b_split")?)?,
        };
        Ok((a, b, cert))
    }
}
