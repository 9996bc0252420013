//! Modules over `W ⋉ Λ` with finite support, and the checks run on them.

pub mod algebra;
pub mod checks;
pub mod collapse;
pub mod corpus;
pub mod etheta;
pub mod linalg;
pub mod module;
pub mod support;

pub use algebra::{coinvariant_algebra, monomials, Poly, QuotientAlgebra};
pub use linalg::{restrict, Matrix, Subquotient};
pub use module::{
    exterior_power, joint_generalized_eigenspace, koszul_homology, HomologyGroup, KoszulFibers, LocalData, MellinModule,
};
pub use checks::{
    check_centrality, check_descent, CentralityMode, CentralityReport, DescentReport, PointCentrality,
    PointDescent, Violation,
};
pub use support::{support_points, AffineElement, SupportPoint};
pub use etheta::{build_e_theta, induce_local, verify_e_theta, EThetaReport};
pub use collapse::{
    find_isomorphism, hom_space, is_intertwiner, tensor_and_collapse, tor_modules, CollapseReport,
    DegreeCollapse,
};
pub use corpus::{generate_corpus, orbit_representatives, random_module, CorpusEntry};
