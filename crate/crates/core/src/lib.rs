//! Numerical constructions for light-like super multiplets of the Poincare
//! group: graded linear algebra, gamma matrices and spinor bundles over the
//! light cone, induced representations with their imprimitivity systems,
//! Weyl operators on Fock space, supersymmetric charge algebras and a
//! discrete-time boson/fermion correspondence.

pub mod clifford;
pub mod error;
pub mod fock;
pub mod induce;
pub mod linalg;
pub mod poincare;
pub mod random;
pub mod spinbundle;
pub mod supergrade;
pub mod susy;
pub mod qstoch;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use poincare::{E2Element, FourVector, PoincareElement, SL2};
