//! Exact Turaev–Viro invariants `TV(4,q)` of closed 3-manifold triangulations.
//!
//! The main entry point is [`tv4_compute`], which sums over Z2 cocycles and
//! evaluates each class through a quadratic form over Z2. [`tvr`] holds
//! brute-force state sums for cross-checking.

pub mod census;
pub mod fixtures;
pub mod homology;
pub mod triang;
pub mod tv4;
pub mod tvr;
pub mod z2;

pub use census::{CensusEntry, GroupingReport};
pub use homology::{betti_z2, integral_h1, HomologyError, IntegralH1};
pub use triang::{
    generate_bipyramid_lens_space, generate_lens_space, pachner_23, parse_triangulation, random_pachner_23, Triangulation,
};
pub use tv4::{tv4_compute, tv4_compute_with, Bucket, DyadicSqrt2, LaurentZ, TVReport, Tv4Error, Tv4Options};
pub use tvr::{tv4_bruteforce_exact, tv_r_bruteforce, ExactBruteForce, TvrError};
pub use z2::{FormKind, QuadraticFormZ2, Z2Matrix, Z2Vector};
