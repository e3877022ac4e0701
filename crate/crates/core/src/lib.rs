pub mod cover;
mod enumerate;
pub mod family;
pub mod forcing;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod solvers;
pub mod structure;
