//! Weight graphs of nilpotent Lie algebras and 2-step solvability of their
//! extensions by diagonal tori.

pub mod catalog;
pub mod cli;
pub mod document;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod solvability;
pub mod torus;
pub mod verify;
