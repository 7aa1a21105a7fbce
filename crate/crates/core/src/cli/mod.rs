//! Library side of the command-line tool: catalog, file formats, exchange
//! graphs and verification suites.

pub mod catalog;
pub mod exchange;
pub mod formats;
pub mod verify;
