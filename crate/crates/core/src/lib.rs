pub mod brieskorn;
pub mod corpus;
pub mod dedekind;
pub mod error;
pub mod exact;
pub mod homology;
pub mod plumbing;
pub mod report;
pub mod seifert;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
