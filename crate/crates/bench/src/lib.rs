//! Shared inputs for the benchmarks.

/// The `(n, i)` spaces timed by the table benchmarks.
pub const TABLE_SPACES: &[(usize, usize)] = &[(6, 3), (7, 3), (8, 4)];

/// The largest space, used for the single-threaded comparison.
pub const TOP_SPACE: (usize, usize) = (8, 4);
