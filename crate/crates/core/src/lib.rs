pub mod error;
pub mod hkernel;
pub mod triangle;
pub mod pants;
pub mod surface;
pub mod curves;
pub mod deform;
pub mod estimates;
pub mod doubling;
pub mod cli;
