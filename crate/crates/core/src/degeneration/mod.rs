//! The base-change action, one-parameter-subgroup limits, certificates and
//! necessary conditions for degenerations.

mod abelian;
mod action;
mod certificate;
mod compare;
mod fingerprint;
mod groebner;
mod ideal;
mod obstruction;

pub use abelian::{abelian_lower_bound, has_abelian_subalgebra};
pub use action::{
    apply_base_change, apply_base_change_with_inverse, lift, psg_limit, psg_limit_with_inverse,
    weight_matrix,
};
pub use certificate::{parse_certificate, verify_all, DegenerationCertificate, MatrixKind, Verdict};
pub use compare::{CertStore, Comparator, Comparison};
pub use fingerprint::InvariantFingerprint;
pub use groebner::{groebner_basis, is_inconsistent, MPoly, Monomial};
pub use ideal::{ideal_property_r, IdealProperty};
pub use obstruction::{
    central_quotient_obstruction, obstruction_battery, trace_obstruction, CriterionResult, CriterionVerdict,
    ObstructionReport,
};
