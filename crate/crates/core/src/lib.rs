//! Perfect squares in the Lucas sequences U_9 and U_12: descent, number-field and
//! elliptic-curve arithmetic, a p-adic formal-group engine with Strassman bounds,
//! and a brute-force oracle.

pub mod ellcurve;
pub mod error;
pub mod descent;
pub mod formal;
pub mod chabauty;
pub mod lucas;
pub mod numfield;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;

pub use numfield::{Nf, Padic, QCubic, QSqrt3, Rationals};

/// Q(√3).
pub type KElement = Nf<QSqrt3>;
/// Q(α), α³ = 3α + 1.
pub type LElement = Nf<QCubic>;
/// Z_7[√3] at fixed precision.
pub type Z7Sqrt3 = Padic<QSqrt3, 7>;
/// Z_2[α] at fixed precision.
pub type Z2Cubic = Padic<QCubic, 2>;
