//! Command-line front end, file formats and property suites for
//! [`opcal_core`].

pub mod cli;
pub mod format;
pub mod maxinfo;
pub mod svg;
pub mod verify;

pub use cli::run;
pub use opcal_core;
