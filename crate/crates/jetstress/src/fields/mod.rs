//! Scalar, vector and form fields on box charts: exact polynomial
//! calculus, quadrature over boxes and their oriented boundaries, grid
//! `C^r` norms and neighborhoods, partition-of-unity gluing, and
//! embedding diagnostics.

pub mod domain;
pub mod forms;
pub mod polynomial;
pub mod pou;
pub mod sections;

pub use domain::{BoxDomain, Face, FaceEnd, SamplingGrid};
pub use forms::{FormField, MultiVectorField};
pub use polynomial::Polynomial;
pub use pou::{glue_sections, smoothstep, PartitionOfUnity, PiecewisePoly};
pub use sections::SectionField;
