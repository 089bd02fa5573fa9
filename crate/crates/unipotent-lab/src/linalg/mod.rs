//! Exact linear algebra over the rationals and the integers.
//!
//! Every graded computation in the crate bottoms out here: rank/kernel/image of
//! rational matrices, subspace arithmetic (sum, intersection, preimage), and
//! Smith normal form of integer matrices for torsion certificates.

mod qmat;
mod snf;

pub use qmat::{rank_kernel_image, QMatrix};
pub use snf::{column_space_quotient, smith_normal_form, IntMatrix, InvariantFactors, SnfResult};

use crate::{Error, Result};

/// dim(span(ambient)) - dim(span(sub)), verifying containment first.
///
/// `ambient` and `sub` are column-span generating sets in the same coordinate
/// space.
pub fn quotient_dims(ambient: &QMatrix, sub: &QMatrix) -> Result<usize> {
    if ambient.rows() != sub.rows() {
        return Err(Error::Dimension(format!(
            "ambient has {} rows, sub has {}",
            ambient.rows(),
            sub.rows()
        )));
    }
    if !ambient.contains_subspace(sub) {
        return Err(Error::NotContained);
    }
    Ok(ambient.rank() - sub.rank())
}
