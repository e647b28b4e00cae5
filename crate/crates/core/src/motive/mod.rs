//! Exact arithmetic in `Q(v)` with `v = L^(1/2)`.

mod rat;
mod vpoly;

pub use rat::{vir_normalize, MotiveRat};
pub use vpoly::{gl_order, VPolynomial};
