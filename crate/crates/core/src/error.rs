use thiserror::Error;

/// Structured failures reported by the kernel.
///
/// Degeneracy is detected structurally (an exactly all-zero construction),
/// never through a magnitude threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
pub enum KernelError {
    #[error("point at infinity has no Euclidean coordinates")]
    IdealPoint,
    #[error("degenerate input: construction produced the zero tuple")]
    DegenerateInput,
    #[error("the two points do not span a line")]
    DegenerateLine,
    #[error("planes are parallel or identical")]
    ParallelPlanes,
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
    #[error("tetrahedron vertices are coplanar")]
    DegenerateTetrahedron,
    #[error("barycentric weight xi_w is zero")]
    DegenerateQuery,
    #[error("segment endpoint lies at infinity")]
    IdealEndpoint,
    #[error("segment endpoints have homogeneous weights of opposite sign")]
    SignConflict,
    #[error("interpolation parameter outside [0, 1]")]
    ParameterOutOfRange,
    #[error("non-finite component (overflow or NaN)")]
    NonFinite,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("tuple length does not match the operation")]
    ArityMismatch,
}

impl KernelError {
    /// Stable identifier used in serialized outputs.
    pub fn code(&self) -> &'static str {
        match self {
            KernelError::IdealPoint => "IdealPoint",
            KernelError::DegenerateInput => "DegenerateInput",
            KernelError::DegenerateLine => "DegenerateLine",
            KernelError::ParallelPlanes => "ParallelPlanes",
            KernelError::DegenerateTriangle => "DegenerateTriangle",
            KernelError::DegenerateTetrahedron => "DegenerateTetrahedron",
            KernelError::DegenerateQuery => "DegenerateQuery",
            KernelError::IdealEndpoint => "IdealEndpoint",
            KernelError::SignConflict => "SignConflict",
            KernelError::ParameterOutOfRange => "ParameterOutOfRange",
            KernelError::NonFinite => "NonFinite",
            KernelError::SingularMatrix => "SingularMatrix",
            KernelError::ArityMismatch => "ArityMismatch",
        }
    }
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;
