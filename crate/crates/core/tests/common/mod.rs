//! Independent oracles for the integration tests. Nothing here calls the
//! library's enumeration, canonical labelling or automorphism code.

#![allow(dead_code)]

pub mod graphs;
pub mod varieties;
