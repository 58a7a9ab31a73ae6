//! Independent checks: exact joint laws by dynamic programming and by brute
//! enumeration, seeded Monte Carlo sampling, and searches for
//! counterexamples and for solutions of the parallelogram equation.

mod fe1;
mod joint_law;
mod sampling;
mod search;

pub use fe1::{fe1_nonnegative_solutions, rational_values, Fe1Search};
pub use joint_law::{joint_law, joint_law_enumerated, JointLaw};
pub use sampling::{sample_check, SampleConfig, SampleReport, SAMPLER_ALGORITHM};
pub use search::{probability_grid, search_nondegenerate, SearchConfig, SearchOutcome, WitnessGate};
