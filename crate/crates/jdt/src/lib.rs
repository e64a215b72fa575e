//! Jordan degree types of graded Artinian Gorenstein quotients of k[x,y,z].
//!
//! The crate computes rank matrices and Jordan degree types through the
//! Macaulay contraction duality with exact linear algebra, enumerates all
//! combinatorially admissible rank matrices for almost-constant Hilbert
//! functions (1,3,s^k,3,1), and carries a machine-readable encoding of the
//! known dual-generator families together with a verifier.

pub mod apolarity;
pub mod combinatorics;
pub mod enumerator;
pub mod field;
pub mod jordan;
pub mod poly;
pub mod tables;
