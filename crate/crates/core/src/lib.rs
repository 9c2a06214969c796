//! Exact computation of flagged factorial Q-functions, Schur-Pfaffians, and
//! vexillary type-C double Schubert polynomials.
//!
//! Every central object is computed by at least two independent routes —
//! tableau enumeration on one side, Pfaffian or determinant algebra on the
//! other — and the [`verify`] module runs grids of exact cross-checks
//! between them. All arithmetic is exact (arbitrary-precision integer
//! coefficients).
//!
//! # Example
//!
//! ```
//! use schurq::shapes::FlaggedStrictPartition;
//! use schurq::{pfaffian, tableaux};
//!
//! // The flagged Q-function for lambda = (3,1), f = (1,0) in two
//! // x-variables, by tableau enumeration and by the Schur-Pfaffian.
//! let shape = FlaggedStrictPartition::new(vec![3, 1], vec![1, 0]).unwrap();
//! let by_tableaux = tableaux::q_flagged_tableau(&shape, 2);
//! let by_pfaffian = pfaffian::q_flagged_pfaffian(&shape, 2).unwrap();
//! assert_eq!(by_tableaux, by_pfaffian);
//! ```
//!
//! With the default `parallel` feature, enumeration sums and verification
//! grids run on a rayon pool; without it the same entry points run
//! sequentially.

pub mod error;
mod exec;
pub mod paths;
pub mod pfaffian;
pub mod poly;
pub mod series;
pub mod shapes;
pub mod tableaux;
pub mod vexillary;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, VarClass, Variable};
