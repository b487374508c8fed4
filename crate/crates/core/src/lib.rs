pub mod action;
pub mod constructors;
pub mod error;
pub mod graph;
pub mod group;
pub mod input;
pub mod iso;
pub mod structure;
pub mod verifier;
