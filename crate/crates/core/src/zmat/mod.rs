//! Exact integer linear algebra.

mod entry;
mod group;
mod io;
mod lattice;
mod matrix;
mod smith;
mod sparse;

pub use group::{FinAbGroup, PrimePower};
pub use io::{read_matrix, write_matrix, write_matrix_with_comments};
pub(crate) use lattice::order_from_coordinates;
pub use lattice::{
    coker_structure, column_span_contains, element_order_in_coker, hermite_rows, kernel_basis,
    solve_in_lattice, ElementOrder,
};
pub use matrix::IntMatrix;
pub(crate) use smith::snf_tracking;
pub use smith::{snf, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZmatError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("column {column} is not in the integer column span")]
    NoIntegerSolution { column: usize },
    #[error("matrix text, line {line}: {message}")]
    Parse { line: usize, message: String },
}
