//! Workbench for the finite Stone-type duality between distributive
//! c-posets and T0 topological spaces with a distinguished base.
//!
//! A *c-poset* is a poset carrying an algebraic closure operator `φ` with
//! `φ(∅) = ∅` and `x ≤ y ⟺ φ({x}) ⊆ φ({y})`; closure operators are
//! presented by enumeration-operator codes over Cantor pair codes.  The
//! spectrum of a distributive c-poset is the space of its prime φ-ideals
//! with the sets `V_a = {I | a ∉ I}` as base; conversely the base of a
//! space, ordered by inclusion and closed under "covered unions", is a
//! c-poset.  This crate materialises both directions at finite scale,
//! together with validators, morphism checks, witness searches, instance
//! generators and a deterministic acceptance suite.
//!
//! Everything is exact (no floats) and deterministic: subsets of a carrier
//! are bitmasks, exhaustive checks are refused above a configurable carrier
//! ceiling (default 16), and every search breaks ties by smallest bitmask.

pub mod dot;
pub mod duality;
pub mod encoding;
pub mod error;
pub mod generator;
pub mod io;
pub mod lattices;
pub mod limits;
pub mod mask;
pub mod order;
pub mod presentations;
pub mod spectrum;
pub mod suite;
pub mod topology;

pub use error::{Error, Result};
pub use order::{CPoset, Poset};
pub use topology::{SoberMode, Space};
