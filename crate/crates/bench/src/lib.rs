//! Fixed workloads shared by the benchmarks.

use bindet::epsilon::{EpsLimitSpec, EpsTarget};
use bindet::families::{Family, FamilySpec};

/// Family matrices of growing order, each with a delta on the diagonal band.
pub fn determinant_specs() -> Vec<FamilySpec> {
    [4usize, 8, 12].iter().flat_map(|&n| [FamilySpec::new(Family::D, 2, 1, n), FamilySpec::new(Family::E, 3, 3, n)]).collect()
}

pub fn eps_spec(m: i64) -> EpsLimitSpec {
    EpsLimitSpec::new(EpsTarget::Biglemma2A, 1, m).expect("r = 1 is in range for m ≥ 2")
}
