//! Hamiltonian cycles: enumeration, counting, transitivity classes, Hamilton
//! compression and explicit witness cycles.

mod classes;
mod count;
mod cycle;
mod kappa;
mod witness;

pub use classes::{is_ham_transitive, orbit_classes, ClassCount, ClassReport, Method, SearchLimits};
pub use count::{count_ham_cycles, MAX_COUNT_VERTICES};
pub use cycle::{
    enumerate_ham_cycles, find_ham_cycle, for_each_ham_cycle, random_ham_cycle, semiregular_ham_cycle, Enumeration,
    HamCycle, DEFAULT_CYCLE_CAP,
};
pub use kappa::{kappa_of_cycle, kappa_of_graph, Kappa};
pub use witness::{boustrophedon_cycles, zigzag_cycle, BoustrophedonCycles, ZigzagSpec};
