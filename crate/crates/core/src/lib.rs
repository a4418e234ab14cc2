//! Exact computations with braided Hopf algebras over cyclotomic fields:
//! braided vector spaces, tensor and symmetric algebras, structure-constant
//! bialgebras, relative Hopf filtrations, coinvariants and PBW verdicts.

pub mod braided_space;
pub mod coinvariants;
pub mod corpus;
pub mod error;
pub mod filtration;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod lincomb;
pub mod pbw;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod symmetric;
pub mod tensor_algebra;

pub use braided_space::{
    braid_check, diagonal_braiding, is_categorical, is_symmetric, validate_bicharacter, Bicharacter,
    BraidedSpaceSpec, FiniteAbelianGroup, GenericBraiding, GradedBasis, Generator,
};
pub use coinvariants::{check_braiding_collapse, compute_r, CoinvariantAlgebra, CollapseReport, CollapseStatus};
pub use error::{Error, Result};
pub use filtration::{
    associated_graded, check_commutator_filtration, coradical_filtration_connected, hopf_filtration, wedge,
    FiltrationLadder,
};
pub use hopf::{
    check_all, check_antipode, check_braided_algebra, check_braided_bialgebra, check_braided_coalgebra,
    check_lemma1, Element, StructureBialgebra,
};
pub use linalg::{Subspace, Vector};
pub use lincomb::{Braided, BraidedAlgebra, BraidedCoalgebra, HasAntipode, LinComb, Tensor};
pub use pbw::{compute_q, pbw_basis, pbw_verdict, PbwReport, QSpace, Verdict};
pub use pipeline::{run_pipeline, Expectations, PipelineReport};
pub use report::{ValidationReport, Violation};
pub use scalar::Scalar;
pub use symmetric::{oracle_dimension, SymmetricAlgebra};
pub use tensor_algebra::{TensorAlgebra, Word, DEFAULT_DEGREE_CAP};
