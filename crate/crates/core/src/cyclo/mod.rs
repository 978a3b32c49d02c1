//! Exact arithmetic in cyclotomic fields `Q(zeta_N)` and exact linear algebra.

mod elim;
mod field;
mod matrix;
mod num;
pub mod serial;

pub use elim::{rref_bareiss, rref_sparse, AffineSolution, Echelon, Rref};
pub use field::{cyclotomic_polynomial, Field};
pub use matrix::{sparse_axpy, sparse_from_dense, sparse_scale, sparse_to_dense, ExactMatrix, SparseVec};
pub(crate) use matrix::Accumulator;
pub use num::{format_rational, CycNum};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed cyclotomic orders {left} and {right}; embed into a common field first")]
    FieldMismatch { left: u32, right: u32 },
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    IncompatibleEmbedding { from: u32, to: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
}

/// Embed both operands into `Q(zeta_lcm)` and apply `op`.
pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum, CycError> {
    use num_integer::Integer;
    let target = Field::cyclotomic(a.order().lcm(&b.order()));
    let (x, y) = (a.embed(&target)?, b.embed(&target)?);
    match op {
        ArithOp::Add => x.checked_add(&y),
        ArithOp::Sub => x.checked_sub(&y),
        ArithOp::Mul => x.checked_mul(&y),
        ArithOp::Div => x.checked_div(&y),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}
