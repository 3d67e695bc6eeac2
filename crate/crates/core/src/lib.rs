//! Certified verification of Hasse-principle failures on Chatelet surfaces
//! and conic bundles over Q.
//!
//! * [`arith`]: exact rationals, p-adic valuations, Hilbert symbols, Hensel
//!   lifting.
//! * [`chatelet`]: Chatelet surfaces `y^2 - a z^2 = P(x)` and a certified
//!   local solvability decision at every place.
//! * [`brauer`]: local invariants of the quaternion class `(a, P1(x))` and
//!   the resulting Brauer-Manin verdict.
//! * [`threefold`]: the conic bundle over `P^1 x P^1` cut out by
//!   `u^2 P_inf(w,x) + v^2 P_0(w,x)`, its degeneracy curve and fibers.
//! * [`cohomology`]: brute-force integral cohomology of finite groups and
//!   the 2-extension machinery for four-term exact sequences.
//! * [`report`]: JSON reports and their replay.

pub mod arith;
pub mod brauer;
pub mod chatelet;
pub mod cohomology;
pub mod error;
pub mod report;
pub mod threefold;

pub use error::{Error, Result};
