//! Conformal maps and Hilbert transforms built on the rational solver.

mod conformal;
mod hilbert;

pub use conformal::{conformal_map, random_disk_points, ConformalDiagnostics, ConformalMap, ConformalOptions, InverseMap};
pub use hilbert::{
    abs_exp_conjugate, default_grid, graded_grid, hilbert_builtin, hilbert_transform, symmetric_log_grid, HilbertFunction,
    HilbertOptions, HilbertTransform,
};
