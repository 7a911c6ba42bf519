//! Exact finite-dimensional ordered vector spaces.
//!
//! Cones are polyhedral and all arithmetic is over the rationals, so every
//! verdict (closedness, properness, semisimplicity, bipositivity) is
//! decided exactly.

pub mod cone;
pub mod dd;
pub mod error;
pub mod hereditary;
pub mod io;
pub mod lab;
pub mod linalg;
pub mod lp;
pub mod norms;
pub mod representation;
pub mod soc;

pub use cone::{PolyhedralCone, SemisimplicityReport};
pub use error::{Error, Result};
pub use hereditary::{
    product_cone, pullback_cone, pushforward_cone, quotient_semisimple, QuotientMap, SubspaceEmbedding,
};
pub use io::ConeSpecFile;
pub use linalg::{format_rational, parse_rational, rat, ratio, QMatrix, QVector, Rational};
pub use norms::{monotone_norm, normality_certificate, PolyhedralNorm};
pub use representation::{synthesize_bipositive, synthesize_positive, FiniteRepresentation, Synthesis};
pub use soc::{pushforward_membership, quotient_by_ray, QuotientClassification, RayQuotient, SocPoint};
