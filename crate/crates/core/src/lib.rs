pub mod charpoly;
pub mod error;
pub mod gfq;
pub mod harness;
pub mod io;
pub mod matroid;
pub mod poly;
pub mod projgeom;
pub mod treedecomp;
