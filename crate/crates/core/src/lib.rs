pub mod closed_forms;
pub mod error;
pub mod exact_linalg;
pub mod graded;
pub mod homology_oracle;
pub mod join_theory;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
