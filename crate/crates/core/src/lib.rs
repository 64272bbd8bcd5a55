//! Exact piecewise-linear dynamics on the circle for Thompson's groups F
//! and T.
//!
//! Everything is computed with exact rationals: group operations and
//! canonical forms of PL circle homeomorphisms, fixed sets and supports as
//! unions of arcs, rational rotation numbers, ping-pong freeness
//! certificates, the free-subgroup constructions built on them, and
//! trace-moment lower bounds for norms in the reduced group C*-algebra.

pub mod arcset;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod pingpong;
pub mod plmap;
pub mod spectral;
pub mod witness;

pub use arcset::{Arc, ArcSet};
pub use error::{Error, Result};
pub use exact::{CirclePoint, Dyadic, Rational};
pub use pingpong::{free_power_search, verify_certificate, Limits, PingPongCertificate, SearchTrace};
pub use plmap::{Bindings, GeneratorWord, PlMap, RotationNumber};
