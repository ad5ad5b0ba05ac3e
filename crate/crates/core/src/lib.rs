//! Exact construction and verification of 2-term L∞ structures: Lie 2-algebras,
//! split Lie 2-algebroids over polynomial models of `R^n`, representations up
//! to homotopy, abelian extensions, exact Courant algebroids, and the finite
//! 2-groupoid extensions integrating them.
//!
//! Every identity is checked over the rationals. Nothing is floating point.

pub mod courant;
pub mod error;
pub mod ext;
pub mod forms;
pub mod lie2;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod rational;
pub mod report;
pub mod rep;
pub mod twogroup;
pub mod io;

pub use error::{Error, Result};
pub use forms::{MatForm, PolyForm, PolyVectorField};
pub use linalg::{PMat, QMat};
pub use perm::{koszul_sign, unshuffles, Permutation};
pub use poly::Poly;
pub use rational::Rational;
