//! Truncated power series and the generating series built from them.

mod generating;
mod qseries;
mod truncated;

pub use generating::*;
pub use qseries::*;
pub use truncated::TruncatedSeries;
