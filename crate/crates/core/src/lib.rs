//! Character sequences built from fractional linear maps over finite fields.
//!
//! A fixed-point-free map `ψ` of order `q + 1` walks the projective line
//! `GF(q) ∪ {∞}` in one cycle starting at 1. Pushing that walk through a
//! second map `φ` and a multiplicative character `χ` yields a sequence of
//! roots of unity of length `N = q + 1`. This crate builds those sequences
//! and families of them, measures periodic correlation, evaluates the Welch
//! and Sidelnikov-type lower bounds, and computes linear span with
//! Berlekamp-Massey.
//!
//! ```
//! use flseq_core::prelude::*;
//!
//! let field = Field::from_order(3).unwrap();
//! let psi = find_psi(&field).unwrap();
//! let chi = Character::quadratic(&field).unwrap();
//! let seq = build_sequence(&MoebiusMap::identity(&field), &psi, &chi).unwrap();
//! assert_eq!(seq.len(), 4);
//! assert_eq!(tmax_auto(&seq), 0.0);
//! ```
//!
//! With the default `parallel` feature, family construction and the
//! pairwise `T(A)` scan run on rayon when asked for [`ExecMode::Parallel`].

pub mod arith;
pub mod bounds;
pub mod characters;
pub mod correlation;
pub mod exec;
pub mod finite_field;
pub mod linear_span;
pub mod projective;
pub mod records;
pub mod sequence;

pub use exec::ExecMode;

pub mod prelude {
    pub use crate::bounds::{
        antipodal_code_bound, kerdock_check, kerdock_params, sidelnikov_estimate, simplified_bound,
        welch_bound, Alphabet, AntipodalBoundInput, BoundReport,
    };
    pub use crate::characters::{Character, CharacterSpec, UnitValue};
    pub use crate::correlation::{
        autocorrelation, autocorrelation_report, cross_correlation, tmax_auto, tmax_family,
        CorrelationReport, FamilyMaximum,
    };
    pub use crate::exec::ExecMode;
    pub use crate::finite_field::{Field, FieldElement};
    pub use crate::linear_span::{
        berlekamp_massey, lfsr_generate, to_symbol_stream, LinearSpanResult, SymbolStream,
    };
    pub use crate::projective::{
        enumerate_group, find_psi, projective_line, MoebiusMap, ProjPoint,
    };
    pub use crate::sequence::{
        build_family, build_sequence, cyclic_shift, select_phis, CharSequence, Family, PhiStrategy,
    };
}
