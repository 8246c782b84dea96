//! Classical simulation of the phase-estimation, induction and hidden-subgroup
//! sampling algorithms for symmetric-group multiplicities.

pub mod distributions;
pub mod gpe;
pub mod groups;
pub mod qft;
pub mod sampling;

pub use distributions::{
    hsp_distribution, induction_distribution, restriction_distribution,
    restriction_multiplicity_for, ExactDistribution,
};
pub use gpe::{simulate_gpe_dense, DenseDistribution};
pub use groups::{embedding, GroupKind, GroupSpec, IrrepLabel};
pub use qft::{beals_delta, beals_embedding_map, beals_offset, qft_matrix, qft_via_beals};
pub use sampling::{
    cost_comparison, estimate_multiplicity, required_shots, sample, search_nonzero_kronecker,
    Algorithm, CostComparison, Estimate, SampleReport, SearchResult,
};
