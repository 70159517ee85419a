//! Generalised Burnside rings of finite permutation groups.
//!
//! The crate enumerates subgroup lattices, binds coefficient functors on the
//! subgroup category, multiplies decorated basis elements by the double coset
//! formula and evaluates marks, duals and twisted Euler characteristics. The
//! [`cellsearch`] module runs exhaustive searches for effective elements with
//! prescribed permutation characters.

pub mod burnside;
pub mod cellsearch;
pub mod characters;
pub mod decorated_sets;
pub mod error;
pub mod functor_spec;
pub mod permgroup;
pub mod subgroups;

pub use error::{Error, Result};
