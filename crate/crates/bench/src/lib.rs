//! Inputs for the criterion benches. The fixtures live in
//! `llq_core::generate` so the CLI `bench` command measures the same ones.

pub use llq_core::generate::{
    conjugacy_fixture, orientable_fixture, spherical_fixture, three_partition_fixture,
};

/// Sizes for the linear-time groups.
pub const LINEAR_SIZES: [usize; 3] = [10_000, 100_000, 200_000];
