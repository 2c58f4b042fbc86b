//! Brauer groups of singular del Pezzo surfaces over an algebraically closed
//! field, computed from the combinatorics of the Picard lattice.
//!
//! A generalised del Pezzo surface `X` of degree `d = 9 - n` has
//! `Pic X = Z^{n+1}` with the intersection form `diag(1, -1, ..., -1)`.
//! The sublattice `Q` orthogonal to the canonical class is a root lattice
//! (`E8`, `E7`, `E6`, `D5`, ... depending on the degree), and the
//! `(-2)`-curves contracted by `X -> Y` form a set of simple roots of a
//! sub-root system: a Pi-system in Dynkin's sense.  The Brauer group of the
//! contraction `Y` is the torsion of `Q / E`, where `E` is the span of those
//! roots, so everything reduces to enumerating Pi-systems up to lattice
//! invariants and taking Smith normal forms.
//!
//! Module map:
//! * [`pic`] — the Picard lattice, its pairing, canonical class and root basis;
//! * [`roots`] — root enumeration, reflections, Dynkin-diagram classification;
//! * [`intlin`] — exact integer linear algebra (Smith normal form, torsion);
//! * [`pisystems`] — Pi-system enumeration by elementary transformations,
//!   with an independent exhaustive search as an oracle;
//! * [`brauer`] — the Brauer-group formulas, local groups at singular points,
//!   and bad primes.

pub mod brauer;
pub mod error;
pub mod intlin;
pub mod pic;
pub mod pisystems;
pub mod roots;

pub use brauer::{brauer_table, BrauerResult};
pub use error::{Error, Result};
pub use intlin::{AbelianGroup, IntMatrix, SmithDecomposition};
pub use pic::PicLattice;
pub use pisystems::{ClassifiedSystem, InvariantKey, PiSystem};
pub use roots::{Component, DynkinType, Family, RootId, RootSystem};
