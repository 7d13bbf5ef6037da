//! Exact quiver Hecke algebras of types A, B and D.
//!
//! Elements are realised as twisted operators on `⊕_{i∈β} K[x_1..x_n]·1_i`; products
//! are computed by composing operators and reading off PBW normal forms.
//!
//! ```
//! use vvhecke::field::Field;
//! use vvhecke::quiver::{Group, Orbit, Quiver};
//! use vvhecke::vvalgebra::{verify_relations, Algebra, Element};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let q = Quiver::new(&["i", "I", "k"], &[("i", "I"), ("i", "k"), ("k", "I")], &[("i", "I")])?;
//! let seed = [q.vertex("i")? as u16, q.vertex("k")? as u16];
//! let orbit = Orbit::generate(q.theta_map(), &seed, Group::B);
//! let alg = Algebra::new_zero_params(q, orbit, Field::Rational)?;
//! assert!(verify_relations(&alg).all_pass());
//! let x = Element::psi(&alg, 0)?.mul(&Element::y(&alg, 1)?)?;
//! assert!(!x.is_zero());
//! # Ok(())
//! # }
//! ```

pub mod coxeter;
pub mod decomposition;
pub mod field;
pub mod quiver;
pub mod smash;
pub mod type_d;
pub mod vvalgebra;

#[cfg(test)]
pub(crate) mod testutil;
