//! Space adaptive search (SAS) for nonholonomic path planning.
//!
//! - [`gridmap`]: occupancy grids, map files, synthetic maps and the exact
//!   Euclidean distance transform.
//! - [`primitives`]: bicycle-model motion primitives and their scaling.
//! - [`search`]: the planner, in SAS and weighted-A* baseline modes.
//! - [`bench`]: scenarios, parameter sweeps, CSV metrics and PPM renderings.
//! - [`cli`]: the `sas` command-line front end.

pub mod bench;
pub mod cli;
pub mod gridmap;
pub mod primitives;
pub mod search;
