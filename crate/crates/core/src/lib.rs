pub mod action_models;
pub mod courant;
pub mod duality;
pub mod error;
pub mod frontend;
pub mod graded_algebra;
pub mod linalg;
pub mod orientation;
pub mod structures;
pub mod twisting;

pub use error::{Error, Result};
