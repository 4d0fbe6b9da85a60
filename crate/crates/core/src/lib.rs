//! Exact computational algebra for the qKZ tower on punctured link-pattern
//! modules of the extended affine Temperley-Lieb algebra (desk scale, n <= 6).

pub mod daha;
pub mod pattern;
pub mod perm;
pub mod qkz;
pub mod ring;
pub mod suite;
pub mod tlrep;
pub mod tower;
pub mod transfer;
