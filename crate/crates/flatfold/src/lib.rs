//! Workbench for flat-foldability of finite crease patterns and the
//! reconfiguration models built on top of it.
//!
//! The crate is organized around an exact rational geometry kernel
//! ([`geometry`]), the crease-pattern fold pipeline ([`foldcore`]), a
//! layering dynamic program over tree decompositions ([`layerdp`]) with a
//! brute-force oracle ([`oracle`]) for cross-validation, the flaps-and-flips
//! reconfiguration model ([`flapsflips`]) with its constraint-logic gadget
//! compiler ([`gadgetlib`]), nondeterministic constraint logic itself
//! ([`ncl`]), and a numeric cyclic-polygon/bipyramid realizer ([`bipyramid`]).

pub mod bipyramid;
pub mod flapsflips;
pub mod foldcore;
pub mod formats;
pub mod gadgetlib;
pub mod gen;
pub mod geometry;
pub mod layerdp;
pub mod ncl;
pub mod oracle;
pub mod svg;
pub mod treedecomp;
