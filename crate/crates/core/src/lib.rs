//! Exact computations with graded modules over quantum affine spaces.

pub mod cech;
pub mod cli;
pub mod complex;
pub mod cousin;
pub mod linalg;
pub mod modpres;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod sections;
pub mod skewalg;
pub mod text;
