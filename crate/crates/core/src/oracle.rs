//! Algebraic group inverse through a full-rank factorization, and a checker
//! for the three defining equations. Independent of any graph structure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RMatrix;

/// Group inverse of a square matrix.
///
/// Factor `A = F·G` with `F` the pivot columns of `A` (full column rank `r`)
/// and `G` the nonzero rows of its reduced row echelon form (full row rank).
/// The group inverse exists iff `G·F` is invertible, and then equals
/// `F·(G·F)⁻²·G`.
pub fn group_inverse_oracle(a: &RMatrix) -> Result<RMatrix> {
    let n = a.ensure_square()?;
    let (reduced, pivots) = a.rref();
    let r = pivots.len();
    if r == 0 {
        return Ok(RMatrix::zeros(n, n));
    }
    let all: Vec<usize> = (0..n).collect();
    let head: Vec<usize> = (0..r).collect();
    let f = a.select(&all, &pivots);
    let g = reduced.select(&head, &all);
    let gf = g.mul(&f)?;
    let gf_inv = gf.inverse()?.ok_or(Error::NoGroupInverse { vanishing: Vec::new() })?;
    let gf_inv2 = gf_inv.mul(&gf_inv)?;
    f.mul(&gf_inv2)?.mul(&g)
}

/// Exact truth of `AXA = A`, `XAX = X` and `AX = XA`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axa_eq_a: bool,
    pub xax_eq_x: bool,
    pub ax_eq_xa: bool,
}

impl AxiomVerdict {
    pub fn all_hold(&self) -> bool {
        self.axa_eq_a && self.xax_eq_x && self.ax_eq_xa
    }
}

pub fn verify_group_axioms(a: &RMatrix, x: &RMatrix) -> Result<AxiomVerdict> {
    let n = a.ensure_square()?;
    if x.ensure_square()? != n {
        return Err(Error::DimensionMismatch(format!("A is {n}x{n}, X is {}x{}", x.rows(), x.cols())));
    }
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    Ok(AxiomVerdict {
        axa_eq_a: &ax.mul(a)? == a,
        xax_eq_x: &xa.mul(x)? == x,
        ax_eq_xa: ax == xa,
    })
}
