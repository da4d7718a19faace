//! Workbench for single-vertex 2-graph semigroups and their atomic
//! representations.
//!
//! The crate splits into exact and numerical halves:
//!
//! - [`theta`] and [`word`]: the semigroup `F_θ^+` itself — relation storage,
//!   confluent rewriting onto the normal form `e_u f_v`, degrees and
//!   enumeration.
//! - [`periodicity`]: the bijection criterion deciding periodicity, with
//!   verifiable witnesses and bounded aperiodicity certificates.
//! - [`atomic`], [`dilation`], [`mod@classify`], [`wandering`]: atomic
//!   representation graphs, their truncated Cuntz-type dilations, the type
//!   taxonomy and wandering-vector searches.
//! - [`matrix`], [`fock`]: sparse matrix models and the numerical
//!   verification kernels.

pub mod atomic;
pub mod classify;
pub mod dilation;
pub mod fock;
pub mod gallery;
pub mod matrix;
pub mod periodicity;
pub mod theta;
pub mod wandering;
pub mod word;

pub use atomic::{export_dot, twisted_pair, validate, AtomicGraph, Color, OneColourGraph};
pub use classify::{classify, RepClass, RepTag};
pub use dilation::{dilate, left_regular_graph, DilationError, DilationResult};
pub use fock::{
    build_left_regular, example_3_3_check, matrix_rep, star_commute_check, structure_check,
    structure_check_with_core, verify_commutation_numeric, verify_cuntz_interior, CheckReport,
    MatrixRep, RepModel, TruncatedFock,
};
pub use matrix::SparseMatrix;
pub use periodicity::{
    check_period, find_period, AperiodicityCertificate, PeriodWitness, Periodicity,
    DEFAULT_ENUMERATION_CAP,
};
pub use theta::Theta2Graph;
pub use wandering::{
    check_conditions, find_wandering, is_wandering, verify_no_wandering_periodic, Condition,
    WanderingReport, WanderingSearch,
};
pub use word::{anti_normal_form, concat, enumerate_words, normal_form, Letter, NormalWord};
