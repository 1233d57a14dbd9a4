pub mod error;
pub mod fibre;
pub mod intlinalg;
pub mod pipeline;
pub mod presentation;
pub mod probe;
pub mod rips;
pub mod uce;
pub mod word;

pub use error::{Error, Result};
