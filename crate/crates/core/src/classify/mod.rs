//! Left actions on a fixed right module, the quadratic constraints they
//! satisfy, the two ladder families and their classification.

pub mod ansatz;
pub mod families;
pub mod ladder;
pub mod lattice;
pub mod quadratic;

pub use ansatz::{
    block_offset, build_ansatz, projection_check, solve_left_linear, LeftActionAnsatz,
    LeftActionSolution, ProjectionPattern, ProjectionReport,
};
pub use families::{make_case1, make_case2, make_family, LadderFamily};
pub use ladder::enumerate_ladder_solutions;
pub use lattice::{
    commutant_dim, diagonal_isomorphism, extension_report, is_indecomposable,
    phi_matrix_analysis, subbimodules, ExtensionReport, IndecomposabilityCertificate,
    SubbimoduleReport, Verdict,
};
pub use quadratic::{quadratic_system, Polynomial, QuadraticSystem};
