//! Integral cohomology of finite groups by brute force on the bar
//! resolution, and the 2-extension class of a four-term exact sequence.

pub mod abelian;
pub mod cochain;
pub mod diagram;
pub mod group;
pub mod matrix;
pub mod module;
pub mod sequence;

pub use abelian::AbelianGroup;
pub use cochain::{cohomology, cohomology_with_cap, connecting_map, ConnectingMap, Cohomology, ShortExactSequence};
pub use diagram::{key_diagram, verify_key_diagram, KeyDiagram, KeyDiagramReport};
pub use group::FiniteGroup;
pub use matrix::IntMatrix;
pub use module::{IntegralGModule, ModuleMap};
pub use sequence::{two_extension_class, verify_lemma_a1, verify_lemma_a2, FourTermSequence, TwoExtensionClass};
