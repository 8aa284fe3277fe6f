#![cfg_attr(not(feature = "std"), no_std)]

//! Certified matricial norm computations on dense complex matrices.
//!
//! The crate computes, at finite dimension, a family of norms on matrices and
//! on matrices over concrete operator spaces:
//!
//! - the numerical radius `w` and its block amplifications ([`radius`]),
//! - the operator norm `O` and amplified norms on concrete subspaces of
//!   `M_d(C)` ([`space`]),
//! - the affiliated norm family `W_min`, `W_max` (factorization search with
//!   certified brackets), and the one-parameter family `W_t` built from
//!   nilpotent shift generators ([`affiliated`]),
//! - Haagerup-type tensor norms `h`, `wh`, `wcb` on represented tensors
//!   ([`tensor`]),
//! - a randomized property-check harness for the norm axioms and
//!   completely-bounded norm estimates ([`axioms`]).
//!
//! Every computed norm is reported as a [`NormEstimate`] carrying certified
//! `lower`/`upper` brackets and a human-readable certificate of how each
//! bracket was obtained. Searched quantities (factorization and tensor norms)
//! never pretend to be exact: their upper brackets are the best value an
//! explicit witness achieves, and their lower brackets come from theorem-backed
//! spatial bounds.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default `std`
//! feature for embedded use. All randomized searches are deterministic for a
//! fixed seed.

extern crate alloc;

pub mod affiliated;
pub mod axioms;
pub mod error;
pub mod estimate;
pub mod matrix;
pub mod eigen;
pub mod optim;
pub mod radius;
pub mod sample;
pub mod space;
pub mod tensor;
pub mod tolerances;

pub use error::{Error, Result};
pub use estimate::NormEstimate;
pub use matrix::{assemble_block, Complex64, ComplexMatrix};
pub use eigen::{hermitian_eigenvalues, operator_norm, HermitianSpectrum};
pub use radius::{amplified_w, numerical_radius, numerical_radius_with_options, radius_lower_bound_sampling, radius_with_witness, rotated_real_part, RadiusOptions, RadiusOutcome};
pub use space::{direct_sum, o_norm, off_corner, realize, scalar_compress, w_norm, ConcreteOperatorSpace, MatrixOverX};
pub use affiliated::{shift_generator, two_by_two_generator, w_max, w_min, w_t_norm, Factorization, SearchConfig, ShiftGenerator};
pub use tensor::{haagerup_norm, realize_tensor, symmetric_chain, tensor_norms, wcb_norm, wh_alt_norm, wh_norm, SymmetricChain, SymmetricRep, TensorNorms, TensorRep};
pub use axioms::{cb_level_profile, cb_norm_estimate, check_oii, check_ow, check_wi, check_wii, check_wmin_functor, CbLevelProfile, CheckReport, LinearMap, NormKind, NormOracle, Violation};
