//! Distributed sparse-matrix indexing on a simulated 2D process grid.
//!
//! Permutation ([`ops::hip_perm`]), submatrix extraction ([`ops::hip_extract`]),
//! submatrix assignment ([`ops::hip_assign`]) and the fused assign-then-permute
//! ([`ops::hip_assign_perm`]) all follow the same three phases on every rank:
//! identify the destination of each local nonzero, exchange the resulting
//! triples with a single all-to-all, and build the new local block.
//!
//! Ranks are simulated by [`collectives::run_ranks`], which runs one program per
//! rank on its own thread and turns collectives into rendezvous points. Within a
//! rank the [`kernels`] are data-parallel over a caller-chosen thread count and
//! produce bitwise-identical output for any thread count.
//!
//! ```
//! use hipkernels::io::{collect, distribute, CooMatrix};
//! use hipkernels::ops::{hip_perm, DistVector};
//! use hipkernels::ProcGrid;
//!
//! let grid = ProcGrid::new(4)?;
//! let a = CooMatrix::new(3, 3, vec![(0, 1, 2.0), (2, 2, 5.0)])?;
//! let a = distribute(&a, grid)?;
//! // A'[i, j] = A[pvec[i], qvec[j]]
//! let pvec = DistVector::from_global(grid, &[2, 0, 1]);
//! let qvec = DistVector::from_global(grid, &[1, 2, 0]);
//! let out = hip_perm(&a, &pvec, &qvec, 2)?;
//! assert_eq!(out.report.triples_exchanged(), 2);
//! assert_eq!(collect(&out.matrix)?.entries(), &[(1, 0, 2.0), (0, 1, 5.0)]);
//! # Ok::<(), hipkernels::Error>(())
//! ```

#![warn(missing_debug_implementations, rust_2018_idioms)]

pub mod collectives;
pub mod dcsc;
pub mod error;
pub mod grid;
pub mod io;
pub mod kernels;
pub mod metrics;
pub mod ops;
pub mod oracle;
pub mod types;

pub use dcsc::LocalDcsc;
pub use error::{Error, Result};
pub use grid::{MatrixLayout, ProcGrid, VectorLayout};
pub use types::{apply_addop, AddOp, Triple, Value};
