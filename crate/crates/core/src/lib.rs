pub mod coeff;
pub mod curve;
pub mod drinfeld;
pub mod error;
pub mod fq;
pub mod frac;
pub mod laurent;
pub mod poly;
pub mod powersum;
pub mod report;
pub mod symbolic;
pub mod tasks;
pub mod tate;

pub use error::{MzvError, Result};
