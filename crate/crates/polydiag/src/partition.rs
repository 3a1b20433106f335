//! Ordered partitions as faces of the permutahedron, the scalar sign
//! functions attached to them, and the cellular chain complex.
//!
//! A face of the permutahedron `P_n` is an ordered partition
//! `U_1|...|U_p` of `{1..n}`; its dimension is `n - p`.  Blocks are kept
//! in increasing order internally, so `971` on input normalizes to
//! `{1,7,9}`.  All coefficients are exact integers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exact integer coefficient type used throughout the crate.
pub type Coeff = i64;

/// Errors raised while building or parsing ordered partitions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("empty partition text")]
    EmptyInput,
    #[error("empty block in partition")]
    EmptyBlock,
    #[error("unexpected character {0:?} in partition text")]
    BadChar(char),
    #[error("element {0} appears more than once")]
    Duplicate(u32),
    #[error("element {0} is missing: blocks must cover 1..=n")]
    Missing(u32),
    #[error("element 0 is not allowed")]
    Zero,
    #[error("block index {0} out of range 1..={1}")]
    BlockIndex(usize, usize),
    #[error("face subset must be a proper non-empty subset of its block")]
    BadFaceSubset,
}

/// An ordered partition `U_1|...|U_p` of `{1..n}`, i.e. a face of `P_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct OrderedPartition {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawPartition {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

impl TryFrom<RawPartition> for OrderedPartition {
    type Error = PartitionError;

    fn try_from(raw: RawPartition) -> Result<Self, Self::Error> {
        let u = OrderedPartition::new(raw.blocks)?;
        if u.n != raw.n {
            return Err(PartitionError::Missing(u.n.max(raw.n)));
        }
        Ok(u)
    }
}

/// The four scalar signs attached to an ordered partition.
///
/// `psgn` is the Koszul sign of the permutation obtained by reading the
/// blocks left to right with every element in degree 1.  `rsgn` is the
/// product over blocks of the order-reversal sign.  `sgn1` and `sgn2`
/// are the signs produced by the right-most and left-most partitioning
/// procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signs {
    pub psgn: Coeff,
    pub rsgn: Coeff,
    pub sgn1: Coeff,
    pub sgn2: Coeff,
}

/// Which of the two dual face-operator families to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    /// `d_M`: the chosen subset lands in front of its complement.
    Left,
    /// `d^N`: the chosen subset lands behind its complement.
    Right,
}

/// A face together with the `±1` coefficient of the operator producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFace {
    pub coefficient: Coeff,
    pub face: OrderedPartition,
}

/// Sign of the shuffle that sorts the concatenation of two increasing
/// sequences; `(-1)` to the number of pairs `(a, b)` with `a > b`.
pub fn shuffle_sign(a: &[u32], b: &[u32]) -> Coeff {
    let mut inversions = 0usize;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of a sequence of distinct integers, by inversion count.
pub fn permutation_sign(seq: &[u32]) -> Coeff {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn binom2(k: usize) -> usize {
    k * (k.saturating_sub(1)) / 2
}

impl OrderedPartition {
    /// Builds a partition from blocks, sorting each block and checking
    /// that together they cover `{1..n}` with no repeats.
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self, PartitionError> {
        if blocks.is_empty() {
            return Err(PartitionError::EmptyInput);
        }
        let mut blocks: Vec<Vec<u32>> = blocks;
        let mut seen: Vec<u32> = Vec::new();
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 {
                    return Err(PartitionError::Zero);
                }
                seen.push(x);
            }
        }
        seen.sort_unstable();
        for (i, &x) in seen.iter().enumerate() {
            let want = (i + 1) as u32;
            if x > want {
                return Err(PartitionError::Missing(want));
            }
            if x < want {
                return Err(PartitionError::Duplicate(x));
            }
        }
        let n = seen.len() as u32;
        Ok(OrderedPartition { n, blocks })
    }

    /// The top-dimensional face of `P_n`: the single block `{1..n}`.
    pub fn top(n: u32) -> Self {
        assert!(n >= 1, "P_n needs n >= 1");
        OrderedPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// The vertex `a_1|...|a_n` given by a permutation.
    pub fn vertex(perm: &[u32]) -> Result<Self, PartitionError> {
        Self::new(perm.iter().map(|&a| vec![a]).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Cell dimension: `n` minus the number of blocks.
    pub fn dim(&self) -> u32 {
        self.n - self.blocks.len() as u32
    }

    pub fn is_vertex(&self) -> bool {
        self.blocks.len() as u32 == self.n
    }

    pub fn is_top(&self) -> bool {
        self.blocks.len() == 1
    }

    /// The vertex as a flat permutation, when every block is a singleton.
    pub fn as_permutation(&self) -> Option<Vec<u32>> {
        if self.is_vertex() {
            Some(self.blocks.iter().map(|b| b[0]).collect())
        } else {
            None
        }
    }

    /// Flat reading of the blocks, left to right.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Parses the `|`-separated block grammar.  Elements are single
    /// digits when no comma appears, comma-separated decimals otherwise.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PartitionError::EmptyInput);
        }
        let commas = text.contains(',');
        let mut blocks = Vec::new();
        for chunk in text.split('|') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            let mut block = Vec::new();
            if commas {
                for item in chunk.split(',') {
                    let item = item.trim();
                    let v: u32 = item
                        .parse()
                        .map_err(|_| PartitionError::BadChar(item.chars().next().unwrap_or(' ')))?;
                    block.push(v);
                }
            } else {
                for ch in chunk.chars() {
                    let d = ch.to_digit(10).ok_or(PartitionError::BadChar(ch))?;
                    block.push(d);
                }
            }
            blocks.push(block);
        }
        Self::new(blocks)
    }

    /// The four scalar signs of this partition; see [`Signs`].
    pub fn signs(&self) -> Signs {
        let psgn = permutation_sign(&self.flatten());
        let mut rsgn = 1;
        for b in &self.blocks {
            if binom2(b.len()) % 2 == 1 {
                rsgn = -rsgn;
            }
        }
        let p = self.blocks.len();
        let mut eps1 = 0usize;
        for i in 1..p {
            eps1 += i * self.blocks[p - 1 - i].len();
        }
        let sgn1 = if eps1 % 2 == 0 { psgn } else { -psgn };
        let sgn2 = if binom2(p - 1) % 2 == 0 { sgn1 } else { -sgn1 };
        Signs {
            psgn,
            rsgn,
            sgn1,
            sgn2,
        }
    }

    /// Applies a single face operator at block `k` (1-based, in display
    /// order) with respect to a proper non-empty subset of that block.
    ///
    /// The coefficient combines the Koszul sign for sliding past the
    /// blocks in front with the boundary sign inside the block.
    pub fn face(
        &self,
        k: usize,
        subset: &[u32],
        side: FaceSide,
    ) -> Result<SignedFace, PartitionError> {
        if k == 0 || k > self.blocks.len() {
            return Err(PartitionError::BlockIndex(k, self.blocks.len()));
        }
        let block = &self.blocks[k - 1];
        let mut m: Vec<u32> = subset.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.is_empty() || m.len() >= block.len() || !m.iter().all(|x| block.contains(x)) {
            return Err(PartitionError::BadFaceSubset);
        }
        let rest: Vec<u32> = block.iter().copied().filter(|x| !m.contains(x)).collect();
        let prefix: usize = self.blocks[..k - 1].iter().map(|b| b.len() - 1).sum();
        let (first, second) = match side {
            FaceSide::Left => (m, rest),
            FaceSide::Right => (rest, m),
        };
        let sign_exp = prefix + first.len();
        let mut coefficient = shuffle_sign(&first, &second);
        if sign_exp % 2 == 1 {
            coefficient = -coefficient;
        }
        let mut blocks = self.blocks.clone();
        blocks.splice(k - 1..k, [first, second]);
        Ok(SignedFace {
            coefficient,
            face: OrderedPartition {
                n: self.n,
                blocks,
            },
        })
    }

    /// All codimension-one faces with coefficients (left operators over
    /// every block and every proper non-empty subset).
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero();
        for (k, block) in self.blocks.iter().enumerate() {
            if block.len() < 2 {
                continue;
            }
            for mask in 1..(1u64 << block.len()) - 1 {
                let subset: Vec<u32> = block
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                let sf = self
                    .face(k + 1, &subset, FaceSide::Left)
                    .expect("proper subset");
                out.add(sf.face, sf.coefficient);
            }
        }
        out
    }

    /// All ordered partitions of `{1..n}`, optionally with a fixed block
    /// count, in (block count, lexicographic) order.
    pub fn enumerate(n: u32, p: Option<usize>) -> Result<Vec<Self>, PartitionError> {
        if n == 0 {
            return Err(PartitionError::Zero);
        }
        if let Some(p) = p {
            if p == 0 || p > n as usize {
                return Err(PartitionError::BlockIndex(p, n as usize));
            }
        }
        let mut out: Vec<OrderedPartition> = Vec::new();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        fn rec(n: u32, next: u32, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<OrderedPartition>) {
            if next > n {
                out.push(OrderedPartition {
                    n,
                    blocks: blocks.clone(),
                });
                return;
            }
            for i in 0..blocks.len() {
                blocks[i].push(next);
                rec(n, next + 1, blocks, out);
                blocks[i].pop();
            }
            for pos in 0..=blocks.len() {
                blocks.insert(pos, vec![next]);
                rec(n, next + 1, blocks, out);
                blocks.remove(pos);
            }
        }
        rec(n, 1, &mut blocks, &mut out);
        if let Some(p) = p {
            out.retain(|u| u.num_blocks() == p);
        }
        out.sort();
        out.sort_by_key(|u| u.num_blocks());
        Ok(out)
    }

    /// Canonical text form; inverse of [`OrderedPartition::parse`].
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let commas = self.n > 9;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, x) in block.iter().enumerate() {
                if commas && j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Integer linear combination of faces of one permutahedron.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Chain {
    terms: BTreeMap<OrderedPartition, Coeff>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn singleton(face: OrderedPartition) -> Self {
        let mut c = Chain::zero();
        c.add(face, 1);
        c
    }

    /// Adds `coeff * face`, combining like terms and dropping zeros.
    pub fn add(&mut self, face: OrderedPartition, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(face) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_chain(&mut self, other: &Chain, scale: Coeff) {
        for (face, &c) in other.iter() {
            self.add(face.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrderedPartition, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, face: &OrderedPartition) -> Coeff {
        self.terms.get(face).copied().unwrap_or(0)
    }

    /// Boundary extended linearly.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero();
        for (face, &c) in self.iter() {
            out.add_chain(&face.boundary(), c);
        }
        out
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (face, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}*{face}")?;
        }
        Ok(())
    }
}

/// Integer linear combination of `left ⊗ right` face pairs.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorChain {
    terms: BTreeMap<(OrderedPartition, OrderedPartition), Coeff>,
}

impl TensorChain {
    pub fn zero() -> Self {
        TensorChain::default()
    }

    pub fn add(&mut self, left: OrderedPartition, right: OrderedPartition, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry((left, right)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_tensor(&mut self, other: &TensorChain, scale: Coeff) {
        for ((l, r), &c) in other.iter() {
            self.add(l.clone(), r.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(OrderedPartition, OrderedPartition), &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &OrderedPartition, right: &OrderedPartition) -> Coeff {
        self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or(0)
    }

    /// `∂⊗1 + 1⊗∂` with the Koszul sign `(-1)^{dim left}` on the second
    /// summand.
    pub fn tensor_boundary(&self) -> TensorChain {
        let mut out = TensorChain::zero();
        for ((l, r), &c) in self.iter() {
            for (lf, &lc) in l.boundary().iter() {
                out.add(lf.clone(), r.clone(), c * lc);
            }
            let sign = if l.dim() % 2 == 0 { 1 } else { -1 };
            for (rf, &rc) in r.boundary().iter() {
                out.add(l.clone(), rf.clone(), c * rc * sign);
            }
        }
        out
    }
}

impl fmt::Debug for TensorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}*{l}(x){r}")?;
        }
        Ok(())
    }
}
