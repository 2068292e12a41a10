//! Majorana zero modes in topological superconductors: operator algebra,
//! Bogoliubov-de Gennes solvers, braiding and hybrid transmon gates.

pub mod algebra;
pub mod bdg;
pub mod braid;
pub mod hybrid;
pub mod harness;
