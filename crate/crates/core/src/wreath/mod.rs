//! The permutational wreath product `W ≀_X G`: elements, the standard
//! generating set, exact word length and ball enumeration.
//!
//! `W` is written multiplicatively throughout, whether or not it is abelian.

mod ball;
mod distortion;
mod element;
mod metric;

pub use ball::{wr_ball, BallEntry};
pub use distortion::{bilipschitz_compare, DistortionReport, DistortionViolation, FiberMap};
pub use element::{same_ambient, FinSupportFunction, WreathElement};
pub use metric::{FiberMetric, WreathGenerators, WreathMetric};

use crate::error::Result;
use crate::groups::GroupOps;

/// `a · b`.
pub fn wr_multiply(a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
    a.try_mul(b)
}

/// Word length of `a` over the metric's generating set.
pub fn wr_word_length(a: &WreathElement, metric: &WreathMetric) -> Result<usize> {
    metric.word_length(a)
}
