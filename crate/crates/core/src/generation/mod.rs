//! Master function, critical-point equations, fertility and the
//! degree-increasing multistep generation of polynomial tuples.

pub mod bethe;
pub mod cartan;
pub mod tuple;

pub use bethe::{critical_residuals, master_value, max_residual, polynomial_roots, tuple_roots, CriticalConfig};
pub use cartan::{degree_increasing_sequences, degree_transform, is_degree_increasing, CartanData, DegreeVector, GenSequence};
pub use tuple::{
    audit_generation, certify_generic, elementary_generate, generate_family, is_fertile, is_generic, multistep_generate, random_point,
    ElementaryGeneration, GeneratedFamily, GenerationStep, PolyTuple, StepAudit,
};
