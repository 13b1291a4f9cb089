//! Fixtures shared by the benchmarks.

use qrefine_core::{FSumSpec, GridSpec, Identity, ParamRange};

/// Refined-sum parameters from small to the edge of the acceptance grid.
pub fn refined_specs() -> Vec<(&'static str, FSumSpec)> {
    vec![
        ("D=10 d1=4 k0=2", FSumSpec::new(10, 4, 2)),
        ("D=16 d1=6 k0=3", FSumSpec::new(16, 6, 3)),
        ("D=24 d1=8 k0=4", FSumSpec::new(24, 8, 4)),
    ]
}

/// A thm1 grid with `d0 <= max_d0`.
pub fn thm1_grid(max_d0: i64, jobs: usize) -> GridSpec {
    GridSpec::new(Identity::Thm1)
        .with_range("d0", ParamRange::new(2, max_d0))
        .with_range("d1", ParamRange::new(1, max_d0 - 1))
        .with_jobs(jobs)
}
