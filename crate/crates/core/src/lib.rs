pub mod arith;
pub mod error;
pub mod poly;
pub mod padic;
pub mod limits;
pub mod knots;
pub mod curves;
pub mod cli;
