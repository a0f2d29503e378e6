//! HTN planning combined with a geometric task planner.

pub mod bridge;
pub mod geo;
pub mod gtp;
pub mod harness;
pub mod htn;
pub mod librarian;
pub mod symbolic;
