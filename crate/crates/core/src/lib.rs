//! Folding of simply-laced root data along diagram automorphisms, and exact
//! twining characters of irreducible representations.
//!
//! The crate computes, for a simply-laced datum with a diagram automorphism
//! `sigma` and a `sigma`-invariant dominant weight `lambda`, the trace of
//! `sigma` on every weight space of the irreducible module `V(lambda)`, and
//! compares it with the weight multiplicities of the irreducible module with
//! the same highest weight for the folded datum.
//!
//! Modules, bottom up:
//!
//! - [`rootdata`]: Cartan matrices, roots, Weyl orbits, the dimension formula.
//! - [`folding`]: diagram automorphisms and the folded datum.
//! - [`characters`]: Freudenthal multiplicities.
//! - [`hwmodule`]: explicit construction of `V(lambda)` with its contravariant
//!   form, and traces of `sigma` on its weight spaces.
//! - [`twining`]: twining characters, the folded comparison, the torus map.
//! - [`cli`]: command-line front end and the built-in verification catalog.

pub mod characters;
pub mod cli;
pub mod error;
pub mod folding;
pub mod hwmodule;
pub mod linalg;
pub mod rootdata;
pub mod twining;

pub use error::{Error, Result};
pub use rootdata::{make_datum, Coweight, RootDatum, Weight};
