//! Finite groups, the quantum-double gate `R`, R-circuit simulation,
//! Yang–Baxter checks and orbit computations.

mod gate;
mod group;
mod orbit;
mod sim;

pub use gate::{check_yang_baxter, gate_order, restrict_gate, ybe_search, PairGate};
pub use group::{GElem, GroupTable, MAX_CUSTOM_ORDER};
pub use orbit::{class_breakdown, generated_subgroup, orbit_under_r, ClassCount};
pub use sim::{r_gate, r_gate_inv, simulate, simulate_normal_form, DitState};
