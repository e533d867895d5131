pub mod algebra;
pub mod coeff;
pub mod engine;
pub mod error;
pub mod freering;
pub mod oracle;
pub mod presentation;
pub mod strongbasis;

pub use error::{Error, Result};
