//! Exact arithmetic over Q and its completions.

pub mod conic;
pub mod exact;
pub mod hensel;
pub mod place;
pub mod poly;
pub mod primes;
pub mod rational;
pub mod real;
pub mod symbols;

pub use hensel::{hensel_roots, HenselRoot};
pub use place::{Place, Prime};
pub use poly::Poly;
pub use rational::Rational;
pub use symbols::{hilbert_symbol, legendre, square_class, valuation, SquareClass};
