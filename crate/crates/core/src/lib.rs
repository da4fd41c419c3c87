//! Computational topology of surgery: knot diagrams and their groups,
//! framed longitudes, surgery quotients, coset enumeration, and the
//! Morse-theoretic level-set dynamics of the local surgery process.
//!
//! The crate is organized around five subsystems:
//!
//! * [`knot`] — oriented knot diagrams: Gauss/PD/JSON codecs, writhe,
//!   Reidemeister moves, canonical serialization.
//! * [`group`] — finitely presented groups: words, presentations,
//!   combinators, Tietze elimination, Smith normal form, abelianization.
//! * [`surgery`] — Wirtinger presentations, blackboard/framed longitudes,
//!   surgery quotient groups, lens-space and connected-sum constructors.
//! * [`analysis`] — Todd–Coxeter coset enumeration and homomorphism
//!   counting into small symmetric groups.
//! * [`morse`] — local Morse forms, level-set sampling, component
//!   counting, stereographic projection and rotation geometry.

pub mod analysis;
pub mod group;
pub mod knot;
pub mod morse;
pub mod surgery;

pub use group::{AbelianInvariants, Presentation, Word};
pub use knot::KnotDiagram;
