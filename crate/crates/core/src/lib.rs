//! Homogeneous foliations of the complex projective plane and the flatness
//! of their Legendre dual webs.

pub mod numfield;
pub mod poly;
pub mod parser;
pub mod report;
pub mod foliation;
pub mod oracle;
pub mod exec;
pub mod flatness;
pub mod models;
