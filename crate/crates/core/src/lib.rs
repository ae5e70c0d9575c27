//! Division-free geometry in homogeneous coordinates.
//!
//! Joins, meets, barycentric coordinates and interpolation are all computed
//! with extended cross products, so no division happens until a caller asks
//! for Euclidean coordinates. Degenerate configurations show up as exactly
//! zero tuples and are reported as [`KernelError`]s.
//!
//! ```
//! use hkernel::{meet_lines, to_euclidean, HLine2};
//!
//! let x_axis = HLine2::new(0.0, 1.0, 0.0)?;
//! let diagonal = HLine2::new(1.0, -1.0, 2.0)?;
//! let p = meet_lines(x_axis, diagonal)?;
//! assert_eq!(to_euclidean(p)?, (-2.0, 0.0));
//! # Ok::<(), hkernel::KernelError>(())
//! ```

pub mod barycentric;
pub mod batch;
#[cfg(feature = "instrument")]
pub mod counting;
pub mod error;
pub mod hcoords;
pub mod interp;
pub mod joinmeet;
pub mod oracle;
pub mod xprod;

pub use barycentric::{bary_tetrahedron, bary_to_euclidean, bary_triangle, ProjBary, ProjBary3, ProjBary4};
pub use error::{KernelError, Result};
pub use hcoords::{
    canonicalize, from_euclidean, from_euclidean3, normalize_exponents, projectively_equal,
    to_euclidean, to_euclidean3, HLine2, HPlane, HPoint2, HPoint3, HomogeneousPoint, ScaledValue,
};
pub use interp::{lerp_monotonic, lerp_rational, HSegment};
pub use joinmeet::{
    join_points, line_from_points_3d, meet_lines, meet_three_planes, meet_two_planes,
    plane_from_points, ParametricLine3,
};
pub use xprod::{cross3, cross4, cross5, plucker_from_points, PluckerLine};
