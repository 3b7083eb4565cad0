pub mod distfn;
pub mod dual;
pub mod error;
pub mod interval;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod verifier;

pub use error::{Error, Result};
pub use interval::Interval;
