#![doc = include_str!("../../../book/src/introduction.md")]

pub mod cli;
pub mod inertia;
pub mod io;
pub mod mesh;
pub mod pga;
pub mod reduce;
pub mod shapes;
pub mod simplex;
pub mod slicer;
