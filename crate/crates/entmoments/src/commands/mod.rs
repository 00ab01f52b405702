pub mod distributions;
pub mod figures;
pub mod rabi;
pub mod selftest;
