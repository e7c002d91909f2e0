//! File formats, generators, solver dispatch, reports and the benchmark
//! harness behind the `connpres` binary.

pub mod bench;
pub mod dispatch;
pub mod format;
pub mod gen;
pub mod report;
