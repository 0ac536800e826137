//! Weights, support functions and planar boundaries of joint C-numerical
//! ranges. All geometry here concerns the convex hull `conv W_C(A)`.

pub mod boundary;
pub mod complement;
pub mod directions;
pub mod permutation;
pub mod support;
mod weight;

pub use boundary::{boundary2d, convex_hull, Boundary2d};
pub use complement::{wk_complement_check, wk_complement_residual};
pub use directions::sample_directions;
pub use permutation::{diagonal_vertices, max_over_points};
pub use support::{
    point_at, range_scale, real_point_at, support, support_sweep, support_value, top_k_support,
    BreakpointGap, Halfspace, SupportProbe,
};
pub use weight::{gamma_of, make_weight, WeightInput, WeightKind, WeightSpec};
