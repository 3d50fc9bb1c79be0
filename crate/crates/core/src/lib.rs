//! Finite-dimensional (Pegg-Barnett) oscillator algebra.
//!
//! The ladder operators truncated to `s+1` number states close, together with
//! their deformed commutator, onto su(s+1). This crate builds the operator
//! family, computes the Lie closure and certifies it, derives structure
//! constants, constructs the phase basis and phase operator, and checks the
//! supersymmetric multiphoton extension.
//!
//! Everything is generic over the real scalar (`f32` or `f64`) through
//! [`Real`]; the `*64` aliases below fix double precision.

pub mod error;
pub mod lie_closure;
pub mod linalg;
pub mod pb_operators;
pub mod phase;
pub mod report;
pub mod scalar;
pub mod susy;

pub use error::{Error, Result};
pub use lie_closure::{
    certify_su, close_algebra, gellmann_from_family, generalized_gellmann, group_element, inspect_su, span_basis,
    structure_constants, LieBasis, StructureConstants, SuCertificate, SuClause, DEFAULT_MAX_ROUNDS,
};
pub use linalg::{commutator, anticommutator, hs_inner, ComplexMatrix, Tolerance};
pub use pb_operators::{
    bosonic_limit_report, build_family, check_ladder_relations, derive_ladder, Generator, OscillatorFamily,
};
pub use phase::{build_phase_basis, number_phase_commutator, phase_distribution, phase_state, PhaseBasis};
pub use report::{RelationCheck, RelationReport, Scope};
pub use scalar::Real;
pub use susy::{
    build_susy_rep, jc_hamiltonian_direct, jc_hamiltonian_susy_form, nprime_eigen_check, quasialgebra_check,
    susy_pb_hamiltonian, JcParams, QuasiAlgebraCell, SusyRep,
};

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = ComplexMatrix<f64>;
pub type CMatrix32 = ComplexMatrix<f32>;
pub type Tolerance64 = Tolerance<f64>;
pub type Family64 = OscillatorFamily<f64>;
pub type LieBasis64 = LieBasis<f64>;
pub type PhaseBasis64 = PhaseBasis<f64>;
pub type SusyRep64 = SusyRep<f64>;
pub type JcParams64 = JcParams<f64>;
