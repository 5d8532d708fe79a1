pub mod analysis;
pub mod arrangement;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod graded;
pub mod jacobian;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod syzygy;
