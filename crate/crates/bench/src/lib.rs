//! Hosts shared by the benchmarks.

use std::sync::Arc;

use genlat::corpus::named;
use genlat::GenLattice;

/// A corpus host by name; panics on an unknown name.
pub fn host(name: &str) -> Arc<GenLattice> {
    named(name).unwrap_or_else(|| panic!("no corpus host {name}")).lattice
}
