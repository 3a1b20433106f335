//! Symbolic tensor-product operations for A∞-(co)algebras, generated
//! from the associahedron diagonal, together with the quadratic
//! relation generators and an exact integer evaluator.
//!
//! A face of the associahedron corresponds to a composition of
//! operations, one per internal node: `φ^k` (arity-k multiplication
//! homotopy) on the algebra side, `ψ^k` on the coalgebra side.  The
//! operations `Ψ^n` on a tensor product `A ⊗ B` are the diagonal's
//! summands with each factor translated into such a composition.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::Coeff;
use crate::trees::{assoc_diagonal_direct, FaceWord, Tree};

/// Algebra operations compose towards the root; coalgebra operations
/// split away from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variance {
    Algebra,
    Coalgebra,
}

/// One padded application `1^{⊗left} ⊗ op^{arity} ⊗ 1^{⊗right}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub arity: u32,
    pub left: u32,
    pub right: u32,
}

/// A signed composition of padded operations on one tensor factor,
/// with steps listed in application order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompositionTerm {
    pub variance: Variance,
    pub sign: Coeff,
    pub steps: Vec<Step>,
}

/// One summand of a tensor-product operation: matching-width left and
/// right compositions under the unevaluated interleaving isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorOpTerm {
    pub sign: Coeff,
    pub width: u32,
    pub left: CompositionTerm,
    pub right: CompositionTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("operation matrix has the wrong shape: expected {0} rows, found {1}")]
    Dimension(usize, usize),
}

impl CompositionTerm {
    /// The identity composition.
    pub fn identity(variance: Variance) -> Self {
        CompositionTerm {
            variance,
            sign: 1,
            steps: Vec::new(),
        }
    }

    /// Tensor width before the first step.
    pub fn source_width(&self) -> u32 {
        match self.variance {
            Variance::Coalgebra => 1,
            Variance::Algebra => 1 + self.steps.iter().map(|s| s.arity - 1).sum::<u32>(),
        }
    }

    /// Tensor width after the last step.
    pub fn target_width(&self) -> u32 {
        match self.variance {
            Variance::Coalgebra => 1 + self.steps.iter().map(|s| s.arity - 1).sum::<u32>(),
            Variance::Algebra => 1,
        }
    }

    /// Total degree of the composition (`Σ (arity − 2)`).
    pub fn degree(&self) -> i64 {
        self.steps.iter().map(|s| s.arity as i64 - 2).sum()
    }

    /// Pads consistent with the running width?
    pub fn consistent(&self) -> bool {
        let mut width = self.source_width();
        for s in &self.steps {
            let consumed = match self.variance {
                Variance::Coalgebra => 1,
                Variance::Algebra => s.arity,
            };
            if s.left + consumed + s.right != width {
                return false;
            }
            width = match self.variance {
                Variance::Coalgebra => s.left + s.arity + s.right,
                Variance::Algebra => s.left + 1 + s.right,
            };
        }
        true
    }
}

impl fmt::Display for CompositionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = match self.variance {
            Variance::Algebra => "phi",
            Variance::Coalgebra => "psi",
        };
        if self.steps.is_empty() {
            return write!(f, "1");
        }
        let single = self.steps.len() == 1;
        for (t, s) in self.steps.iter().rev().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            // unpadded algebra steps print bare, as does a lone step
            let bare = s.left == 0
                && s.right == 0
                && (single || self.variance == Variance::Algebra);
            if bare {
                write!(f, "{symbol}^{}", s.arity)?;
            } else {
                write!(f, "{symbol}^{}_{}", s.arity, s.left)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for TensorOpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign >= 0 { '+' } else { '-' };
        write!(f, "{sign} {} (x) {}", self.left, self.right)
    }
}

/// Expands a tree into coalgebra steps: the root splits first, then
/// each child is expanded left to right.
fn coalgebra_steps(tree: &Tree) -> Vec<Step> {
    fn walk(t: &Tree, pos: u32, width: u32, steps: &mut Vec<Step>) -> (u32, u32) {
        match t {
            Tree::Leaf => (1, width),
            Tree::Node(ch) => {
                let arity = ch.len() as u32;
                steps.push(Step {
                    arity,
                    left: pos,
                    right: width - 1 - pos,
                });
                let mut w = width + arity - 1;
                let mut leaves = 0;
                for c in ch {
                    let (lv, w2) = walk(c, pos + leaves, w, steps);
                    leaves += lv;
                    w = w2;
                }
                (leaves, w)
            }
        }
    }
    let mut steps = Vec::new();
    walk(tree, 0, 1, &mut steps);
    steps
}

/// Translates a face word into the composition it acts by.  Algebra
/// compositions run leaves-to-root and carry the arity-parity twist of
/// the top-cell association; coalgebra compositions run root-to-leaves.
pub fn faceword_to_composition(word: &FaceWord, variance: Variance) -> CompositionTerm {
    let tree = word.to_tree().expect("well-formed face word");
    composition_of_tree(&tree, variance, word.leaves)
}

/// Composition attached to a planar rooted tree.
pub fn composition_of_tree(tree: &Tree, variance: Variance, width: u32) -> CompositionTerm {
    let mut steps = coalgebra_steps(tree);
    let sign = match variance {
        Variance::Coalgebra => 1,
        Variance::Algebra => {
            steps.reverse();
            if width % 2 == 0 {
                1
            } else {
                -1
            }
        }
    };
    let term = CompositionTerm {
        variance,
        sign,
        steps,
    };
    debug_assert!(term.consistent());
    term
}

/// The tensor-product operations `Φ^n` / `Ψ^n` on a two-factor tensor
/// product, one summand per diagonal term.  For `n = 1` these are the
/// two primitive summands of the differential.
pub fn tensor_operations(n: u32, variance: Variance) -> Vec<TensorOpTerm> {
    assert!(n >= 1);
    if n == 1 {
        let single = CompositionTerm {
            variance,
            sign: 1,
            steps: vec![Step {
                arity: 1,
                left: 0,
                right: 0,
            }],
        };
        return vec![
            TensorOpTerm {
                sign: 1,
                width: 1,
                left: single.clone(),
                right: CompositionTerm::identity(variance),
            },
            TensorOpTerm {
                sign: 1,
                width: 1,
                left: CompositionTerm::identity(variance),
                right: single,
            },
        ];
    }
    assoc_diagonal_direct(n - 2)
        .into_iter()
        .map(|term| {
            let left = faceword_to_composition(&term.left, variance);
            let right = faceword_to_composition(&term.right, variance);
            let sign = term.coeff * left.sign * right.sign;
            TensorOpTerm {
                sign,
                width: n,
                left: CompositionTerm { sign: 1, ..left },
                right: CompositionTerm { sign: 1, ..right },
            }
        })
        .collect()
}

/// One summand of the quadratic A∞ relation in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub sign: Coeff,
    pub composition: CompositionTerm,
}

/// All `(l, i)` summands of the quadratic relation: an inner operation
/// of arity `l+1` padded at position `i` against an outer operation of
/// arity `n-l`, with the variance-specific sign.
pub fn quadratic_relations(n: u32, variance: Variance) -> Vec<RelationTerm> {
    assert!(n >= 1);
    let mut out = Vec::new();
    for l in 0..n {
        for i in 0..=(n - l - 1) {
            let inner = Step {
                arity: l + 1,
                left: i,
                right: n - l - 1 - i,
            };
            let outer = Step {
                arity: n - l,
                left: 0,
                right: 0,
            };
            let (steps, exponent) = match variance {
                Variance::Algebra => (vec![inner, outer], l * (i + 1)),
                Variance::Coalgebra => (vec![outer, inner], l * (n + i + 1)),
            };
            out.push(RelationTerm {
                sign: if exponent % 2 == 0 { 1 } else { -1 },
                composition: CompositionTerm {
                    variance,
                    sign: 1,
                    steps,
                },
            });
        }
    }
    out
}

/// Dense integer matrix with explicit shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Coeff>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Coeff {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "composition shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &IntMatrix, scale: Coeff) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += scale * b;
        }
    }

    pub fn negate(&mut self) {
        for v in self.data.iter_mut() {
            *v = -*v;
        }
    }
}

/// A graded module with one integer matrix per operation arity.
/// Coalgebra operations `ψ^k` are matrices from the module to its
/// `k`-th tensor power in the lexicographic tensor basis; algebra
/// operations `φ^k` run the other way.
#[derive(Debug, Clone)]
pub struct GradedModel {
    pub degrees: Vec<i64>,
    pub ops: BTreeMap<u32, IntMatrix>,
}

impl GradedModel {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// The cellular chains of an interval: two vertices and an edge,
    /// with the boundary as `ψ^1` and the standard cellular coproduct
    /// as `ψ^2`; all higher operations vanish.
    pub fn interval() -> GradedModel {
        let degrees = vec![0, 0, 1]; // v0, v1, e
        let mut ops = BTreeMap::new();
        let mut d = IntMatrix::zero(3, 3);
        // ψ¹(e) = v1 − v0
        d.set(1, 2, 1);
        d.set(0, 2, -1);
        ops.insert(1, d);
        // basis of the square: v0v0, v0v1, v0e, v1v0, v1v1, v1e, ev0, ev1, ee
        let mut cop = IntMatrix::zero(9, 3);
        cop.set(0, 0, 1); // ψ²(v0) = v0⊗v0
        cop.set(4, 1, 1); // ψ²(v1) = v1⊗v1
        cop.set(2, 2, 1); // ψ²(e) = v0⊗e + e⊗v1
        cop.set(7, 2, 1);
        ops.insert(2, cop);
        GradedModel { degrees, ops }
    }

    /// Degrees of the lexicographic basis of the `w`-th tensor power.
    fn power_degrees(&self, w: u32) -> Vec<i64> {
        let mut out = vec![0i64];
        for _ in 0..w {
            let mut next = Vec::with_capacity(out.len() * self.dim());
            for &d in &out {
                for &e in &self.degrees {
                    next.push(d + e);
                }
            }
            out = next;
        }
        out
    }
}

/// Matrix of `1^{⊗left} ⊗ f ⊗ 1^{⊗right}` with the Koszul sign for
/// sliding `f` past the left factors.
fn padded(f: &IntMatrix, f_degree: i64, degrees: &[i64], left: u32, right: u32) -> IntMatrix {
    let dim = degrees.len();
    let left_dim = dim.pow(left);
    let right_dim = dim.pow(right);
    let rows = left_dim * f.rows * right_dim;
    let cols = left_dim * f.cols * right_dim;
    let mut out = IntMatrix::zero(rows, cols);
    let mut left_degrees = vec![0i64];
    for _ in 0..left {
        let mut next = Vec::with_capacity(left_degrees.len() * dim);
        for &d in &left_degrees {
            for &e in degrees {
                next.push(d + e);
            }
        }
        left_degrees = next;
    }
    for (li, &ld) in left_degrees.iter().enumerate() {
        let sign = if f_degree % 2 != 0 && ld % 2 != 0 { -1 } else { 1 };
        for fr in 0..f.rows {
            for fc in 0..f.cols {
                let v = f.get(fr, fc);
                if v == 0 {
                    continue;
                }
                for ri in 0..right_dim {
                    let r = (li * f.rows + fr) * right_dim + ri;
                    let c = (li * f.cols + fc) * right_dim + ri;
                    out.data[r * cols + c] += sign * v;
                }
            }
        }
    }
    out
}

/// Evaluates a composition term on a model, producing the matrix of
/// the composed multilinear map with all Koszul signs.
pub fn numeric_evaluate(
    term: &CompositionTerm,
    model: &GradedModel,
) -> Result<IntMatrix, ModelError> {
    let dim = model.dim();
    let src = dim.pow(term.source_width());
    let mut acc = IntMatrix::identity(src);
    for step in &term.steps {
        // an absent operation is the zero map (vanishing homotopy)
        let shape = match term.variance {
            Variance::Coalgebra => (dim.pow(step.arity), dim),
            Variance::Algebra => (dim, dim.pow(step.arity)),
        };
        let zero;
        let op = match model.ops.get(&step.arity) {
            Some(op) => op,
            None => {
                zero = IntMatrix::zero(shape.0, shape.1);
                &zero
            }
        };
        if (op.rows, op.cols) != shape {
            return Err(ModelError::Dimension(shape.0, op.rows));
        }
        let f_degree = step.arity as i64 - 2;
        let m = padded(op, f_degree, &model.degrees, step.left, step.right);
        acc = m.mul(&acc);
    }
    if term.sign == -1 {
        acc.negate();
    }
    Ok(acc)
}

/// Koszul-signed permutation matrix regrouping tensor factors of mixed
/// modules: target slot `t` holds source factor `perm[t]`.
fn permutation_matrix(
    perm: &[usize],
    factor_dims: &[usize],
    factor_degrees: &[Vec<i64>],
) -> IntMatrix {
    let total: usize = factor_dims.iter().product();
    let k = perm.len();
    let mut out = IntMatrix::zero(total, total);
    let mut posn = vec![0usize; k];
    for (t, &p) in perm.iter().enumerate() {
        posn[p] = t;
    }
    let mut idx = vec![0usize; k];
    loop {
        let mut src = 0usize;
        for t in 0..k {
            src = src * factor_dims[t] + idx[t];
        }
        let mut dst = 0usize;
        for t in 0..k {
            dst = dst * factor_dims[perm[t]] + idx[perm[t]];
        }
        let mut sign = 1i64;
        for i in 0..k {
            for j in i + 1..k {
                if posn[i] > posn[j]
                    && factor_degrees[i][idx[i]] % 2 != 0
                    && factor_degrees[j][idx[j]] % 2 != 0
                {
                    sign = -sign;
                }
            }
        }
        out.set(dst, src, sign);
        let mut t = k;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < factor_dims[t] {
                break;
            }
            idx[t] = 0;
        }
    }
}

/// Kronecker product of a pair of evaluated compositions `l ⊗ r` with
/// the Koszul sign of sliding `r` past the source factors of `l`.
fn signed_kronecker(
    l: &IntMatrix,
    r: &IntMatrix,
    r_degree: i64,
    l_source_degrees: &[i64],
) -> IntMatrix {
    assert_eq!(l.cols, l_source_degrees.len());
    let mut out = IntMatrix::zero(l.rows * r.rows, l.cols * r.cols);
    for lc in 0..l.cols {
        let sign = if r_degree % 2 != 0 && l_source_degrees[lc] % 2 != 0 {
            -1
        } else {
            1
        };
        for rc in 0..r.cols {
            let c = lc * r.cols + rc;
            for lr in 0..l.rows {
                let lv = l.get(lr, lc);
                if lv == 0 {
                    continue;
                }
                for rr in 0..r.rows {
                    let rv = r.get(rr, rc);
                    if rv != 0 {
                        out.data[(lr * r.rows + rr) * out.cols + c] += sign * lv * rv;
                    }
                }
            }
        }
    }
    out
}

/// Numeric `Ψ^n` or `Φ^n` on `A ⊗ B`: evaluates every tensor-product
/// summand and expands the interleaving isomorphism concretely.
pub fn numeric_tensor_op(
    n: u32,
    variance: Variance,
    a: &GradedModel,
    b: &GradedModel,
) -> Result<IntMatrix, ModelError> {
    let da = a.dim();
    let db = b.dim();
    let pair_dim = da * db;
    let (rows, cols) = match variance {
        Variance::Coalgebra => (pair_dim.pow(n), pair_dim),
        Variance::Algebra => (pair_dim, pair_dim.pow(n)),
    };
    let mut total = IntMatrix::zero(rows, cols);
    for term in tensor_operations(n, variance) {
        let l = numeric_evaluate(&term.left, a)?;
        let r = numeric_evaluate(&term.right, b)?;
        let kron = signed_kronecker(
            &l,
            &r,
            term.right.degree(),
            &a.power_degrees(term.left.source_width()),
        );
        let m = if n == 1 {
            // the two primitive summands already act on a single pair
            kron
        } else {
            // regroup between (A⊗B)^{⊗n} and A^{⊗n} ⊗ B^{⊗n}
            let mut sep_dims = vec![da; n as usize];
            sep_dims.extend(std::iter::repeat(db).take(n as usize));
            let mut sep_degs: Vec<Vec<i64>> = vec![a.degrees.clone(); n as usize];
            sep_degs.extend(std::iter::repeat(b.degrees.clone()).take(n as usize));
            // interleave: target slot 2t holds A_t, slot 2t+1 holds B_t
            let mut interleave = Vec::with_capacity(2 * n as usize);
            for t in 0..n as usize {
                interleave.push(t);
                interleave.push(n as usize + t);
            }
            match variance {
                Variance::Coalgebra => {
                    let sigma = permutation_matrix(&interleave, &sep_dims, &sep_degs);
                    sigma.mul(&kron)
                }
                Variance::Algebra => {
                    // the inverse regrouping feeds the separated map
                    let sigma = permutation_matrix(&interleave, &sep_dims, &sep_degs);
                    let mut inverse = IntMatrix::zero(sigma.cols, sigma.rows);
                    for r0 in 0..sigma.rows {
                        for c0 in 0..sigma.cols {
                            let v = sigma.get(r0, c0);
                            if v != 0 {
                                inverse.set(c0, r0, v);
                            }
                        }
                    }
                    kron.mul(&inverse)
                }
            }
        };
        total.add_scaled(&m, term.sign);
    }
    Ok(total)
}

/// Builds the tensor-square model `A ⊗ A` whose operations are the
/// numeric `Ψ^k` up to the given arity.
pub fn tensor_square_model(a: &GradedModel, max_arity: u32) -> Result<GradedModel, ModelError> {
    let mut degrees = Vec::with_capacity(a.dim() * a.dim());
    for &x in &a.degrees {
        for &y in &a.degrees {
            degrees.push(x + y);
        }
    }
    let mut ops = BTreeMap::new();
    for k in 1..=max_arity {
        ops.insert(k, numeric_tensor_op(k, Variance::Coalgebra, a, a)?);
    }
    Ok(GradedModel { degrees, ops })
}

/// Evaluates the quadratic relation of arity `n` on a model; the
/// result is the zero matrix exactly when the relation holds.
pub fn relation_residual(
    n: u32,
    variance: Variance,
    model: &GradedModel,
) -> Result<IntMatrix, ModelError> {
    let dim = model.dim();
    let (rows, cols) = match variance {
        Variance::Coalgebra => (dim.pow(n), dim),
        Variance::Algebra => (dim, dim.pow(n)),
    };
    let mut total = IntMatrix::zero(rows, cols);
    for term in quadratic_relations(n, variance) {
        let m = numeric_evaluate(&term.composition, model)?;
        total.add_scaled(&m, term.sign);
    }
    Ok(total)
}
