//! Library backing the `seminorm` executable: request parsing and
//! validation, command dispatch, and report serialization.

pub mod execute;
pub mod request;

pub use execute::{execute, Report};
pub use request::{parse_input, Request};
