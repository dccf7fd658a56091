//! Decide whether a two-qudit density matrix is useful for quantum
//! teleportation, and when it is, construct the optimal teleportation witness.
//!
//! The useless states form a convex set (those whose maximal entangled
//! fraction stays at or below 1/d). This crate computes the Frobenius-distance
//! projection of an input state onto that set with a two-layer scheme:
//!
//! * [`projection`] — exact projection onto a relaxed set cut out by finitely
//!   many maximally-entangled-direction constraints (Dykstra's alternating
//!   projections over the spectrahedron and half-spaces);
//! * [`mef`] — a randomized fixed-point oracle that searches for the most
//!   violated constraint, i.e. estimates the maximal entangled fraction;
//! * [`solver`] — the cutting-plane driver alternating the two layers and
//!   reporting distance, verdict, and the projection point;
//! * [`witness`] — witness construction from the projection geometry plus
//!   Pauli/Gell-Mann decompositions;
//! * [`states`] — built-in state families (Werner, rank-3 MEMS, a two-qutrit
//!   non-maximally-entangled family) and random test states;
//! * [`qmat`] — dense complex matrix primitives shared by everything above.

pub mod basis;
mod error;
pub mod mef;
pub mod projection;
pub mod qmat;
pub mod solver;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use mef::{estimate_mef, fidelity, mef_to_avg_fidelity, MefEstimate, OracleParams};
pub use projection::{dykstra_project, ConstraintSet, DykstraOutcome, ProjectionParams};
pub use qmat::{C64, CMat, CVec, DensityMatrix, HermitianOperator, UnitaryMatrix};
pub use solver::{distance_curve, solve, CurvePoint, SolveParams, SolveReport};
pub use states::StateFamily;
pub use witness::{construct_witness, decompose, normalize_witness, WitnessOperator};
