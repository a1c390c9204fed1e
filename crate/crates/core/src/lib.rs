//! Exact computation of minimal syzygy degrees for monomial triples
//! (X^a1, Y^a2, Z^a3) on Fermat curves Z^d = X^d + Y^d over prime fields,
//! non-semistability tests for the bundles Syz(X^b, Y^b, Z^b) under
//! Frobenius, and density bounds for the primes where strong
//! semistability fails, driven by the multiplicative group mod d.
//!
//! Everything is exact: residues are canonical representatives in [0, p),
//! kernel computations use fraction-free Gaussian elimination with
//! deterministic pivoting, and densities are exact rationals.

pub mod curve;
pub mod density;
pub mod error;
pub mod ffield;
pub mod linalg;
pub mod plane;

pub use curve::{
    curve_mul, delta_fermat, delta_fermat_exhaustive, predicted_destabilizing_degree,
    remainder_criterion, remainder_one_matrix, strong_semistability_scan, twist_degree,
    verify_witness, CurveElem, DegreeSplit, DeltaOutcome, DirectCheck, ScanOutcome, ScanStep,
    SyzygyWitness, DEFAULT_COST_CEILING,
};
pub use density::{
    covered_count_via_subgroups, covered_remainders, exceptional_degrees, prime_class_report,
    prime_sieve, remainder_window, sophie_germain_density_check, sophie_germain_primes,
    square_in_window, window_subgroup_tally, ClassCount, GermainReport, PrimeClassReport,
    SophieGermainPair, SquareInWindow, UnitGroupReport,
};
pub use error::{Error, Result};
pub use ffield::{
    element_order, euler_phi, factorize, gcd, is_prime, is_quadratic_residue, mul_mod, pow_mod,
    FieldCtx,
};
pub use linalg::MatFp;
pub use plane::{
    delta_plane, fermat_power, min_multiplier_degree, reduce_mod_ideal, verify_plane_syzygy,
    HomogPoly, MonomialIdeal2, PlaneSyzygy,
};
