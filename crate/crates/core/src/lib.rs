//! Exact symbolic calculus for intersections with principal divisors on
//! polynomial rings over the rationals.
//!
//! The library computes cycle-level intersections `(u) ∩ (v) ∩ [A]` for
//! `A = Q[x_1, ..., x_n]`, the rational-equivalence witnesses that express the
//! failure of strict commutativity as a sum of divisors of explicit rational
//! functions, and the length identities behind those computations. Everything
//! is exact: coefficients are arbitrary-precision rationals, lengths are
//! integers (or a first-class infinity), and cycle equality is decidable.
//!
//! Three length back-ends are supported:
//! * monomial data localized at coordinate primes (staircase counts),
//! * plane curves at rational points (intersection multiplicities),
//! * modules over Q[t] localized at (t) (Smith normal form).

pub mod commutativity;
pub mod cycle;
pub mod error;
pub mod factored;
pub mod gen;
pub mod length;
pub mod mono;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod primes;
pub mod rat;
pub mod resultant;
pub mod tame;
pub mod vars;

pub use crate::commutativity::{
    commutator, verify_equal_orders, verify_local_balance, verify_pair_swap,
    verify_single_prime, verify_symbolic_power_lengths, verify_three_term,
    verify_witness_formula, Commutator, EqualOrdersReport, LocalBalanceReport, PairSwapReport,
    SinglePrimeReport, SymbolicPowerReport, ThreeTermReport, WitnessReport,
};
pub use crate::cycle::{cap, cycle_add, cycle_scale, cycle_sub, div_cycle, div_frac, div_pair, Cycle, PrimeRep};
pub use crate::error::{Error, Result};
pub use crate::factored::{FactoredElement, FracElement};
pub use crate::length::{
    check_chi, check_det_length, coord_local_length, pid_coker_length, plane_mult, CoordinatePrime, Length,
    PIDMatrix, PointPrime,
};
pub use crate::mono::Mono;
pub use crate::oracle::{
    cap_by_enumeration, commutator_by_enumeration, div_by_enumeration, enumeration_length,
    order_at, pid_length_by_truncation, plane_order_matches, sylvester_resultant,
    witness_rhs_by_enumeration, PlaneOrderReport,
};
pub use crate::poly::Poly;
pub use crate::primes::{
    alpha_sequence, make_witness, support_partition, valuation, AlphaData, HeightOnePrime, SupportPartition,
    Witness, WitnessEntry,
};
pub use crate::rat::Rat;
pub use crate::resultant::resultant;
pub use crate::tame::{gersten_compose, tame, TameEntry, TameOutput};
pub use crate::vars::Vars;
