//! Exact computation of equivariant string-net spaces on triangulated
//! surfaces from the skeletal data of a group-graded spherical fusion
//! category, with independent cross-checks through the graded center and
//! its tube algebras.

pub mod category;
pub mod center;
pub mod diagram;
pub mod group;
pub mod matrix;
pub mod scalar;
pub mod stringnet;
pub mod surface;
pub mod tube;
