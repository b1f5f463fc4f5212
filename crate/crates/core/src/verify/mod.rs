//! Exact evaluation of the mKdV flows on the cells of a generating
//! sequence, extraction of the polynomial cell vector fields and the
//! consistency checks that tie the flows to the Miura maps.

mod checks;
mod flow;
mod gamma;

pub use checks::{
    bracket, gauge_invariance_holds, kdv_check, kernel_consistency, route_comparison, unaffected_indices,
    IntertwiningReport, KernelConsistency, RouteComparison,
};
pub use flow::{
    classify_difference, conjugator_degree_support, field_difference_shape, flow_from_conjugator, mkdv_field,
    oper_at, prefix_family, zero_by_degree_support, DifferenceShape, FlowField,
};
pub use gamma::{
    decompose, gamma_extract, monomials, solve_at, verify_cell_flow, CellVectorField, SampleSolution,
    CellFlowReport, DEGREE_CAP, SAMPLE_BOUND,
};

#[cfg(test)]
mod tests;
