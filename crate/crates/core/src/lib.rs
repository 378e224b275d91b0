pub mod algebra;
pub mod closedform;
pub mod error;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod pipeline;
pub mod slices;
pub mod verify;

pub use error::{Error, Result};
