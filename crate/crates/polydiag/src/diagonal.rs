//! The diagonal on cellular chains of permutahedra.
//!
//! The top-cell diagonal sums `csgn(F) c(F) ⊗ r(F)` over all
//! configuration matrices; proper faces are handled through the
//! comultiplicative extension over their product-of-permutahedra
//! structure.  `verify_coderivation` checks executably that the
//! boundary is a coderivation with respect to the diagonal.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::matrices::enumerate_configurations;
use crate::partition::{Chain, Coeff, OrderedPartition, TensorChain};

/// Diagonal of the top cell of `P_{n+1}` (so `n` is the cell dimension).
///
/// Results are memoized; the table is tiny and every value immutable.
pub fn diagonal_top(n: u32) -> TensorChain {
    static CACHE: OnceLock<Mutex<HashMap<u32, TensorChain>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut out = TensorChain::zero();
    for (m, _, sign) in enumerate_configurations(n) {
        out.add(m.column_face(), m.row_face(), sign);
    }
    cache.lock().unwrap().insert(n, out.clone());
    out
}

/// Relabels a partition of `{1..k}` into an increasing ground set.
fn relabel(u: &OrderedPartition, ground: &[u32]) -> Vec<Vec<u32>> {
    u.blocks()
        .iter()
        .map(|b| b.iter().map(|&x| ground[x as usize - 1]).collect())
        .collect()
}

/// Diagonal of an arbitrary face, via the comultiplicative extension:
/// apply the top-cell diagonal inside each block (relabelled through
/// the increasing bijection) and interleave the factors with Koszul
/// signs.
pub fn diagonal_face(u: &OrderedPartition) -> TensorChain {
    // partial assembly state: blocks of both sides, accumulated sign,
    // and the total dimension of the right side so far
    let mut acc: Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>, Coeff, u32)> =
        vec![(Vec::new(), Vec::new(), 1, 0)];
    for block in u.blocks() {
        let m = block.len() as u32;
        let dt = diagonal_top(m - 1);
        let mut next = Vec::with_capacity(acc.len() * dt.len());
        for (left, right, coeff, right_dim) in &acc {
            for ((a, b), &c) in dt.iter() {
                // sliding the new left factor past the accumulated
                // right factors costs (-1)^{dim a * right_dim}
                let sign = if a.dim() * right_dim % 2 == 1 { -1 } else { 1 };
                let mut l2 = left.clone();
                l2.extend(relabel(a, block));
                let mut r2 = right.clone();
                r2.extend(relabel(b, block));
                next.push((l2, r2, coeff * c * sign, right_dim + b.dim()));
            }
        }
        acc = next;
    }
    let mut out = TensorChain::zero();
    for (left, right, coeff, _) in acc {
        out.add(
            OrderedPartition::new(left).expect("refined blocks partition the ground set"),
            OrderedPartition::new(right).expect("refined blocks partition the ground set"),
            coeff,
        );
    }
    out
}

/// Diagonal extended linearly over a chain.
pub fn diagonal_chain(c: &Chain) -> TensorChain {
    let mut out = TensorChain::zero();
    for (face, &coeff) in c.iter() {
        out.add_tensor(&diagonal_face(face), coeff);
    }
    out
}

/// Outcome of the coderivation check on `P_{n+1}`.
#[derive(Debug, Clone)]
pub struct CoderivationReport {
    pub ok: bool,
    /// `Δ(∂ top) - (∂⊗1 + 1⊗∂) Δ(top)`; empty exactly when `ok`.
    pub residual: TensorChain,
}

/// Checks that the boundary is a coderivation for the diagonal on the
/// top cell of `P_{n+1}`.
pub fn verify_coderivation(n: u32) -> CoderivationReport {
    let top = OrderedPartition::top(n + 1);
    let lhs = diagonal_chain(&top.boundary());
    let rhs = diagonal_top(n).tensor_boundary();
    let mut residual = lhs;
    residual.add_tensor(&rhs, -1);
    CoderivationReport {
        ok: residual.is_zero(),
        residual,
    }
}
