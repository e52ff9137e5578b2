//! Oriented Dedekind cuts over exact rationals.
//!
//! An [`OrientedReal`] is a lazily evaluated, strictly increasing rational
//! sequence with a declared strict upper bound; it stands for the left cut
//! of rationals it eventually exceeds. Order, membership, distance and
//! neighborhood questions are answered by fuel-bounded procedures returning a
//! [`Trilean`]: `Confirmed` and `Refuted` are sound and stable under more
//! fuel, `Unknown` only reports the effort spent.

pub mod almost;
pub mod approx;
pub mod continuity;
pub mod corpus;
pub mod error;
pub mod hyperfield;
pub mod lazy;
pub mod origin;
pub mod rational;
pub mod real;
pub mod record;
pub mod topology;
pub mod trilean;

pub use almost::{
    an_eq, an_le, ar_embed, ar_eq, ar_le, ar_min, stabilization_probe, threshold_phi, threshold_phi_scan,
    AlmostNatural, AlmostRational, Stabilization, ValueSet,
};
pub use approx::{approximate, inf_finite, monotone_limit, sup_enumerated, sup_of_list};
pub use continuity::{
    level_eq, ocp_modulus, totalc_modulus, verify_modulus, verify_totalc, MapDescriptor, MapValue, Outcome, Report,
};
pub use error::{Error, Result};
pub use hyperfield::{
    add, check_add, check_mul, mul_positive, neg_twosided, psi_member, psi_member_detail, psi_separator, GridProbe,
    RelationReport,
};
pub use lazy::LazySeq;
pub use origin::Origin;
pub use rational::{grid_floor, Rational};
pub use real::{
    cut_from_bounded_sequence, cut_from_cycle, cut_intersection, cut_witness, embed_rational, eq_o, le, le_rational,
    lt, lt_rational, OrientedReal,
};
pub use topology::{
    ball_member, compose_witness, d_check, interval_open_member, lt_signature, oriented_nbhd_member, validate_witness,
    DistanceCheck, MetricWitness, Signature, WitnessSource,
};
pub use trilean::{Confirmed, Refuted, Trilean};
