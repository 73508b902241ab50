pub mod complex;
pub mod cuts;
pub mod discrepancy;
pub mod error;
pub mod gf2;
pub mod l1cone;
pub mod randcx;
pub mod sparsify;
pub mod tolerance;
pub mod volumes;

pub use error::{Error, Result};
