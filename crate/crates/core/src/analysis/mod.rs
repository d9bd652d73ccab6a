//! CHSH game evaluation and Monte-Carlo estimation.

pub mod chsh;
pub mod estimate;
