//! Workbench for computational algebraic topology: exact integer linear
//! algebra, simplicial (co)homology with Borel-Moore variants, spectral
//! sequences of filtered and double complexes, an axiomatized
//! Atiyah-Hirzebruch engine, discrete Cech-de Rham holonomy of line bundles
//! and gerbes, and Clifford/Pin/Spin algebra.
//!
//! Everything homological is computed over arbitrary-precision integers via
//! Smith normal form; holonomy formulas use `f64` with a fixed mod-1
//! tolerance; Clifford identities use exact rationals wherever no
//! trigonometry is involved.

pub mod cechgeom;
pub mod clifford;
pub mod complexes;
pub mod exactalg;
pub(crate) mod par;
pub mod simplicial;
pub mod spectral;

/// Default absolute tolerance for mod-1 comparisons of holonomy values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
