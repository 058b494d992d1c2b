//! Core algorithms for the normaliser decompositions of p-local finite groups
//! `(S, F_S(G), L_S(G))` attached to a finite group `G` at a prime `p`.
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! * [`group`]: finite groups given by Cayley tables, subgroups, Sylow
//!   subgroups, transporters, centralisers and `p'`-parts.
//! * [`fusion`]: the fusion system `F_S(G)`, saturation checks, centric and
//!   radical subgroups, collections.
//! * [`linking`]: the centric linking system `L_S(G)` restricted to a
//!   collection, with its axioms and distinguished inclusions.
//! * [`category`]: finite categories, functors, comma categories,
//!   Grothendieck constructions, homotopy Kan extensions and truncated nerves.
//! * [`homology`]: sparse chain complexes over `F_p`, Betti numbers and
//!   induced maps.
//! * [`subdivision`]: chains of subgroups, their conjugacy classes, the poset
//!   of classes and the subdivision category of a heighted EI category.
//! * [`decomposition`]: the two normaliser decompositions and the comparison
//!   with the transporter-category model.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod category;
pub mod decomposition;
pub mod error;
pub mod fusion;
pub mod group;
pub mod homology;
pub mod linking;
pub mod subdivision;

pub use error::{Error, Result};
