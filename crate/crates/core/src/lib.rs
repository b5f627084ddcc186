pub mod bounds;
pub mod error;
pub mod exec;
pub mod kernels;
pub mod landau;
pub mod potentials;
pub mod quadrature;
pub mod report;
pub mod testbed;
pub mod verify;
