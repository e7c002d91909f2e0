//! Connectivity Preservation: choose a minimum-cost set of edges to protect so
//! that every terminal pair stays `p`-edge-connected after any `q` failures
//! among the unprotected edges.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, generators and the
//! command-line front end live in `connpres-cli`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod approx;
pub mod cuts;
pub mod error;
pub mod exact;
mod flow;
pub mod instance;
pub mod multigraph;
pub mod oracle;
pub mod reductions;
pub mod treemcf;

pub use error::{Error, Result};
pub use flow::UNCUTTABLE;
pub use instance::{CriticalCut, Instance, Solution, Terminals};
pub use multigraph::{Capacities, Cut, Edge, EdgeId, MultiGraph, VertexId};
