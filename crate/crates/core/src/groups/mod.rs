//! Concrete groups: exact element arithmetic and actions.

mod action;
mod descriptor;
pub mod dyadic;
mod element;
mod finite;
pub mod houghton;
mod perm;
pub mod thompson;

pub use action::{Domain, GroupAction, Window};
pub use descriptor::{symmetric_closure, GroupDescriptor};
pub use dyadic::Dyadic;
pub use element::{act, GroupElement, GroupOps, Point};
pub use finite::{ElemSet, FiniteGroup, DEFAULT_BUDGET};
pub use houghton::{HoughtonElement, RayPoint};
pub use perm::Perm;
pub use thompson::PlMap;
