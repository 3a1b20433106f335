//! The permutahedral-set calculus: vertex-level projection and
//! embedding maps, the coface and codegeneracy operators they compose
//! to, set operations behind the structure relations, and the signs of
//! the associated chain complex.
//!
//! All maps here act on vertices (permutations); the image of the
//! vertices of a cell determines the cellular map.

use crate::partition::{shuffle_sign, Coeff, OrderedPartition};

/// Errors for the calculus operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalcError {
    #[error("expected a two-block partition")]
    NotTwoBlocks,
    #[error("arguments must be disjoint")]
    NotDisjoint,
    #[error("sizes are inconsistent: {0}")]
    SizeMismatch(String),
    #[error("the pair is already quadratic; no split applies")]
    AlreadyQuadratic,
    #[error("membership condition fails")]
    NotInFamily,
}

/// A face with literal labels over an arbitrary finite ground set,
/// used for images of the projections onto products.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubFace {
    pub blocks: Vec<Vec<u32>>,
}

impl SubFace {
    fn ground(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.blocks.iter().flatten().copied().collect();
        g.sort_unstable();
        g
    }

    pub fn dim(&self) -> usize {
        self.ground().len() - self.blocks.len()
    }

    pub fn render(&self) -> String {
        let commas = self.ground().iter().max().copied().unwrap_or(0) > 9;
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(if commas { "," } else { "" })
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// A vertex of the cube `I^{n-1}`: one ordered pair per coordinate
/// `i`, listing `i` and `i+1` in the order they occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalVertex {
    pub pairs: Vec<(u32, u32)>,
}

/// A decomposition `(n_1, ..., n_k)` of `n - 1` indexing a projection
/// onto a product of permutahedra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<u32>,
}

impl Decomposition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty());
        Decomposition { parts }
    }

    /// `n` with `n_(k) = n - 1`.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum::<u32>() + 1
    }

    fn partial(&self, i: usize) -> u32 {
        self.parts[..i].iter().sum()
    }

    /// `(p_i, q_i)` for the 1-based index `i`.
    pub fn pq(&self, i: usize) -> (u32, u32) {
        let p = 1 + self.partial(i - 1);
        let q = 1 + self.parts[i..].iter().sum::<u32>();
        (p, q)
    }

    /// The window `C_i = {p_i, ..., p_i + n_i}`.
    pub fn window(&self, i: usize) -> Vec<u32> {
        let (p, _) = self.pq(i);
        (p..=p + self.parts[i - 1]).collect()
    }
}

fn split_sub(blocks: &[Vec<u32>], keep: &[u32]) -> Vec<Vec<u32>> {
    blocks
        .iter()
        .map(|b| b.iter().copied().filter(|x| keep.contains(x)).collect())
        .filter(|b: &Vec<u32>| !b.is_empty())
        .collect()
}

/// Restriction of the projection `P_U -> P_{first r} x P_{last s}` to a
/// face, over an arbitrary increasing ground set `U` with
/// `r + s = #U + 1`.  Returns the two image faces (literal labels) and
/// whether the face degenerates (its image has lower dimension).
pub fn delta_rs_sub(blocks: &[Vec<u32>], ground: &[u32], r: usize, s: usize) -> (SubFace, SubFace, bool) {
    assert_eq!(r + s, ground.len() + 1, "r + s must be #ground + 1");
    let first: Vec<u32> = ground[..r].to_vec();
    let last: Vec<u32> = ground[r - 1..].to_vec();
    let first_strict = &first[..r - 1]; // the first r-1 elements
    let last_strict = &last[1..]; // the last s-1 elements
    if let Some(i) = blocks.iter().position(|b| first.iter().all(|x| b.contains(x))) {
        // the left factor is the whole of its permutahedron
        let mut right_blocks = blocks.to_vec();
        right_blocks[i].retain(|x| !first_strict.contains(x));
        return (
            SubFace { blocks: vec![first] },
            SubFace {
                blocks: right_blocks,
            },
            false,
        );
    }
    if blocks.iter().any(|b| last.iter().all(|x| b.contains(x))) {
        let mut left_blocks = blocks.to_vec();
        for b in left_blocks.iter_mut() {
            b.retain(|x| !last_strict.contains(x));
        }
        return (
            SubFace {
                blocks: left_blocks,
            },
            SubFace { blocks: vec![last] },
            false,
        );
    }
    let left = split_sub(blocks, &first);
    let right = split_sub(blocks, &last);
    let dim_in = ground.len() - blocks.len();
    let dim_out = (r - left.len()) + (s - right.len());
    (
        SubFace { blocks: left },
        SubFace { blocks: right },
        dim_out < dim_in,
    )
}

/// Restriction of the projection to a face of `P_n`.
pub fn delta_rs_face(u: &OrderedPartition, r: usize, s: usize) -> (SubFace, SubFace, bool) {
    let ground: Vec<u32> = (1..=u.n()).collect();
    delta_rs_sub(u.blocks(), &ground, r, s)
}

/// Cubical coordinates of a vertex: for each `i` the elements `i` and
/// `i+1` in order of appearance.
pub fn rho(v: &[u32]) -> CubicalVertex {
    let n = v.len() as u32;
    let mut pairs = Vec::with_capacity(v.len().saturating_sub(1));
    for i in 1..n {
        let a = v.iter().position(|&x| x == i).unwrap();
        let b = v.iter().position(|&x| x == i + 1).unwrap();
        if a < b {
            pairs.push((i, i + 1));
        } else {
            pairs.push((i + 1, i));
        }
    }
    CubicalVertex { pairs }
}

/// Inductive section of [`rho`]: build the permutation by appending
/// `k` on the right when the pair at `k-1` ends with `k`, prepending
/// otherwise.
pub fn gamma(c: &CubicalVertex) -> Vec<u32> {
    if c.pairs.is_empty() {
        return vec![1];
    }
    let mut out = vec![c.pairs[0].0, c.pairs[0].1];
    for k in 3..=(c.pairs.len() as u32 + 1) {
        let (_, b) = c.pairs[k as usize - 2];
        if b == k {
            out.push(k);
        } else {
            out.insert(0, k);
        }
    }
    out
}

/// Splits a two-block partition into the index data used by the
/// embedding and projection maps: `(first_labels, second_labels)`
/// for the product factors, ordered so the composite maps match up.
fn factor_labels(a: &[u32], b: &[u32], n: u32) -> (Vec<u32>, Vec<u32>) {
    if a.contains(&n) {
        (b.to_vec(), a.to_vec())
    } else {
        (a.to_vec(), b.to_vec())
    }
}

/// Presentation of the subcomplex a codimension-one face spans inside
/// its permutahedron: the two flag partitions that exhibit the product
/// structure.
pub fn embed_h(a: &[u32], b: &[u32]) -> Result<(OrderedPartition, OrderedPartition), CalcError> {
    let n = (a.len() + b.len()) as u32;
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a.iter().any(|x| b.contains(x)) {
        return Err(CalcError::NotDisjoint);
    }
    let first;
    let second;
    if a.contains(&n) {
        // singletons of A then the block B; the block A then singletons of B
        first = a
            .iter()
            .map(|&x| vec![x])
            .chain(std::iter::once(b.clone()))
            .collect::<Vec<_>>();
        second = std::iter::once(a.clone())
            .chain(b.iter().map(|&x| vec![x]))
            .collect::<Vec<_>>();
    } else {
        first = std::iter::once(a.clone())
            .chain(b.iter().map(|&x| vec![x]))
            .collect::<Vec<_>>();
        second = a
            .iter()
            .map(|&x| vec![x])
            .chain(std::iter::once(b.clone()))
            .collect::<Vec<_>>();
    }
    Ok((
        OrderedPartition::new(first).map_err(|e| CalcError::SizeMismatch(e.to_string()))?,
        OrderedPartition::new(second).map_err(|e| CalcError::SizeMismatch(e.to_string()))?,
    ))
}

/// Unshuffles a vertex into the two product coordinates of the face
/// `A|B` (literal labels; the factor order matches [`vertex_h`]).
pub fn project_phi(a: &[u32], b: &[u32], c: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = c.len() as u32;
    let (first_labels, second_labels) = factor_labels(a, b, n);
    let first: Vec<u32> = c.iter().copied().filter(|x| first_labels.contains(x)).collect();
    let second: Vec<u32> = c.iter().copied().filter(|x| second_labels.contains(x)).collect();
    (first, second)
}

/// Homeomorphism from the product onto the face `A|B`, on vertices:
/// concatenate the factors in block order.
pub fn vertex_h(a: &[u32], b: &[u32], first: &[u32], second: &[u32]) -> Vec<u32> {
    let n = (a.len() + b.len()) as u32;
    if a.contains(&n) {
        // the A-part (second factor) forms the first block
        second.iter().chain(first.iter()).copied().collect()
    } else {
        first.iter().chain(second.iter()).copied().collect()
    }
}

/// Relabels a permutation of an arbitrary set to `{1..k}` through the
/// increasing bijection.
fn to_standard(seq: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = seq.to_vec();
    sorted.sort_unstable();
    seq.iter()
        .map(|x| sorted.iter().position(|y| y == x).unwrap() as u32 + 1)
        .collect()
}

/// Relabels a permutation of `{1..k}` into an increasing label set.
fn from_standard(seq: &[u32], labels: &[u32]) -> Vec<u32> {
    seq.iter().map(|&x| labels[x as usize - 1]).collect()
}

/// Coface operator of the codimension-one face `A|B`: a vertex map
/// from the permutations on `n-1` letters to those on `n` letters.
pub fn coface_delta(a: &[u32], b: &[u32], x: &[u32]) -> Result<Vec<u32>, CalcError> {
    let n = (a.len() + b.len()) as u32;
    if x.len() as u32 != n - 1 {
        return Err(CalcError::SizeMismatch(format!(
            "expected a vertex on {} letters",
            n - 1
        )));
    }
    let (first_labels, second_labels) = factor_labels(a, b, n);
    let l = first_labels.len();
    let m = second_labels.len();
    let cube = rho(x);
    debug_assert_eq!(cube.pairs.len() + 2, (l + m) as usize + 0);
    // first factor: coordinates 1..l-1; second: the rest, shifted down
    let first_pairs = CubicalVertex {
        pairs: cube.pairs[..l - 1].to_vec(),
    };
    let second_pairs = CubicalVertex {
        pairs: cube.pairs[l - 1..]
            .iter()
            .map(|&(x, y)| (x - (l as u32 - 1), y - (l as u32 - 1)))
            .collect(),
    };
    let mut sorted_first = first_labels.clone();
    sorted_first.sort_unstable();
    let mut sorted_second = second_labels.clone();
    sorted_second.sort_unstable();
    let u = from_standard(&gamma(&first_pairs), &sorted_first);
    let v = from_standard(&gamma(&second_pairs), &sorted_second);
    Ok(vertex_h(a, b, &u, &v))
}

/// Codegeneracy operator of `A|B`: a vertex map from permutations on
/// `n` letters to those on `n-1` letters.
pub fn codegeneracy_beta(a: &[u32], b: &[u32], y: &[u32]) -> Result<Vec<u32>, CalcError> {
    let n = (a.len() + b.len()) as u32;
    if y.len() as u32 != n {
        return Err(CalcError::SizeMismatch(format!(
            "expected a vertex on {n} letters"
        )));
    }
    let (first, second) = project_phi(a, b, y);
    let l = first.len() as u32;
    let p1 = rho(&to_standard(&first));
    let p2 = rho(&to_standard(&second));
    let mut pairs = p1.pairs;
    pairs.extend(p2.pairs.iter().map(|&(x, v)| (x + l - 1, v + l - 1)));
    Ok(gamma(&CubicalVertex { pairs }))
}

/// Indexing map: positions (1-based) of the elements of `s` inside the
/// increasing set `m`.
pub fn index_in(m: &[u32], s: &[u32]) -> Vec<u32> {
    s.iter()
        .map(|x| m.iter().position(|y| y == x).expect("element of the set") as u32 + 1)
        .collect()
}

/// Inverse indexing: elements of `m` at the (1-based) positions `s`.
pub fn index_out(m: &[u32], s: &[u32]) -> Vec<u32> {
    s.iter().map(|&i| m[i as usize - 1]).collect()
}

fn setminus(u: &[u32], a: &[u32]) -> Vec<u32> {
    u.iter().copied().filter(|x| !a.contains(x)).collect()
}

/// Lower and upper disjoint unions of `a` and `b` with respect to the
/// ambient increasing set `u`.
pub fn disjoint_unions(a: &[u32], b: &[u32], u: &[u32]) -> Result<(Vec<u32>, Vec<u32>), CalcError> {
    if a.iter().any(|x| b.contains(x)) {
        return Err(CalcError::NotDisjoint);
    }
    if a.is_empty() || b.is_empty() {
        let mut both: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
        both.sort_unstable();
        return Ok((both.clone(), both));
    }
    let nu = u.len() as u32;
    let u_minus_a = setminus(u, a);
    let mut lower: Vec<u32> = index_in(&u_minus_a, b)
        .iter()
        .map(|x| x + a.len() as u32 - 1)
        .collect();
    if b.iter().min() == u_minus_a.iter().min() {
        let mut with_head: Vec<u32> = (1..=a.len() as u32).collect();
        with_head.extend(lower.iter().copied());
        with_head.sort_unstable();
        with_head.dedup();
        lower = with_head;
    }
    let u_minus_b = setminus(u, b);
    let mut upper: Vec<u32> = index_in(&u_minus_b, a);
    if a.iter().max() == u_minus_b.iter().max() {
        let tail: Vec<u32> = (nu - b.len() as u32..=nu - 1).collect();
        upper.extend(tail);
        upper.sort_unstable();
        upper.dedup();
    }
    Ok((lower, upper))
}

/// Box product of a set against a partition fragment: lower unions of
/// `a` into each block when `a` misses the maximum of the ambient set,
/// upper unions of each block against `a` when it attains it.
pub fn box_op(a: &[u32], bs: &[Vec<u32>]) -> Result<Vec<Vec<u32>>, CalcError> {
    let mut ambient: Vec<u32> = a.to_vec();
    for b in bs {
        ambient.extend(b.iter().copied());
    }
    let before = ambient.len();
    ambient.sort_unstable();
    ambient.dedup();
    if ambient.len() != before {
        return Err(CalcError::NotDisjoint);
    }
    let a_has_max = a.iter().max() == ambient.iter().max();
    bs.iter()
        .map(|b| {
            if a_has_max {
                Ok(disjoint_unions(b, a, &ambient)?.1)
            } else {
                Ok(disjoint_unions(a, b, &ambient)?.0)
            }
        })
        .collect()
}

/// The two coface factorizations of the vertex map of a partition with
/// `k+1` blocks: each is a list of two-block partitions, in
/// application order (innermost first).
pub fn faceword_factorizations(
    u: &OrderedPartition,
) -> Result<(Vec<(Vec<u32>, Vec<u32>)>, Vec<(Vec<u32>, Vec<u32>)>), CalcError> {
    let k = u.num_blocks() - 1;
    if k < 1 {
        return Err(CalcError::SizeMismatch("need at least two blocks".into()));
    }
    // upper-index recursion: repeatedly box the first block into the rest
    let mut word1: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut row: Vec<Vec<u32>> = u.blocks().to_vec();
    for _ in 1..=k {
        let a = row[0].clone();
        let rest: Vec<u32> = row[1..].iter().flatten().copied().collect();
        let mut rest_sorted = rest;
        rest_sorted.sort_unstable();
        word1.push((a.clone(), rest_sorted));
        if row.len() > 2 {
            row = {
                let mut next = box_op(&a, &row[1..])?;
                next.iter_mut().for_each(|b| b.sort_unstable());
                next
            };
        }
    }
    word1.reverse();
    // lower-index recursion: repeatedly box the last block into the front
    let mut word2: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut row: Vec<Vec<u32>> = u.blocks().to_vec();
    for _ in 1..=k {
        let last = row.last().unwrap().clone();
        let front: Vec<u32> = row[..row.len() - 1].iter().flatten().copied().collect();
        let mut front_sorted = front;
        front_sorted.sort_unstable();
        word2.push((front_sorted, last.clone()));
        if row.len() > 2 {
            row = {
                let mut next = box_op(&last, &row[..row.len() - 1])?;
                next.iter_mut().for_each(|b| b.sort_unstable());
                next
            };
        }
    }
    word2.reverse();
    Ok((word1, word2))
}

/// Composes a coface word (application order) into a single vertex
/// map, evaluated on one input vertex.
///
/// Inner vertices pass through the cubical normalization of each
/// subsequent coface, so two words carving out the same face need not
/// compose to the same pointwise map; see the factorization tests.
pub fn apply_coface_word(word: &[(Vec<u32>, Vec<u32>)], x: &[u32]) -> Result<Vec<u32>, CalcError> {
    let mut cur = x.to_vec();
    for (a, b) in word {
        cur = coface_delta(a, b, &cur)?;
    }
    Ok(cur)
}

/// Does `p_bar ⊆ one side` and `q_bar ⊆ one side` hold, i.e. is `U|V`
/// in the family indexed by `(p, q)` over `n` letters?
pub fn in_family(p: u32, q: u32, n: u32, u: &[u32], v: &[u32]) -> bool {
    let lower: Vec<u32> = (1..=p).collect();
    let upper: Vec<u32> = (n - q + 1..=n).collect();
    let contains = |set: &[u32], sub: &[u32]| sub.iter().all(|x| set.contains(x));
    (contains(u, &lower) || contains(v, &lower)) && (contains(u, &upper) || contains(v, &upper))
}

/// Quadratic composition bracket: when the pair of cofaces composes to
/// a single three-block face map, returns that partition.
pub fn quadratic_condition(
    a: &[u32],
    b: &[u32],
    c: &[u32],
    d: &[u32],
) -> Result<Option<OrderedPartition>, CalcError> {
    let n1 = (a.len() + b.len()) as u32; // = n + 1
    if n1 < 2 {
        return Err(CalcError::SizeMismatch("empty pair".into()));
    }
    let n = n1 - 1;
    if (c.len() + d.len()) as u32 != n {
        return Err(CalcError::SizeMismatch(
            "inner pair must live one letter down".into(),
        ));
    }
    let p = a.len() as u32;
    let q = b.len() as u32;
    let lower = |k: u32| -> Vec<u32> { (1..=k).collect() };
    let upper = |k: u32| -> Vec<u32> { (n - k + 1..=n).collect() };
    let inter = |s: &[u32], t: &[u32]| -> Vec<u32> {
        s.iter().copied().filter(|x| t.contains(x)).collect()
    };
    let shift = |s: &[u32], z: i64| -> Vec<u32> {
        s.iter().map(|&x| (x as i64 + z) as u32).collect()
    };
    let blocks = if a.contains(&n1) {
        if in_family(1, p, n, c, d) {
            let qc = inter(&lower(q), c);
            let qd = inter(&lower(q), d);
            vec![a.to_vec(), index_out(b, &qc), index_out(b, &qd)]
        } else if in_family(q, 1, n, c, d) {
            let pc = shift(&inter(&upper(p), c), -(q as i64) + 1);
            let pd = shift(&inter(&upper(p), d), -(q as i64) + 1);
            vec![index_out(a, &pc), index_out(a, &pd), b.to_vec()]
        } else {
            return Ok(None);
        }
    } else if in_family(p, 1, n, c, d) {
        let qc = shift(&inter(&upper(q), c), -(p as i64) + 1);
        let qd = shift(&inter(&upper(q), d), -(p as i64) + 1);
        vec![a.to_vec(), index_out(b, &qc), index_out(b, &qd)]
    } else if in_family(1, q, n, c, d) {
        let pc = inter(&lower(p), c);
        let pd = inter(&lower(p), d);
        vec![index_out(a, &pc), index_out(a, &pd), b.to_vec()]
    } else {
        return Ok(None);
    };
    if blocks.iter().any(|bl| bl.is_empty()) {
        return Ok(None);
    }
    Ok(Some(
        OrderedPartition::new(blocks).map_err(|e| CalcError::SizeMismatch(e.to_string()))?,
    ))
}

/// Splits a pair that is not quadratic for `(r, s)` into the three
/// partitions of the higher structure relation.
#[allow(clippy::type_complexity)]
pub fn multip_split(
    a: &[u32],
    b: &[u32],
    r: u32,
    s: u32,
) -> Result<((Vec<u32>, Vec<u32>), (Vec<u32>, Vec<u32>), (Vec<u32>, Vec<u32>)), CalcError> {
    let n = (a.len() + b.len()) as u32;
    if r + s != n + 1 {
        return Err(CalcError::SizeMismatch("need r + s = n + 1".into()));
    }
    if in_family(r, 1, n, a, b) || in_family(1, s, n, a, b) {
        return Err(CalcError::AlreadyQuadratic);
    }
    let lower: Vec<u32> = (1..=r).collect();
    let upper: Vec<u32> = (n - s + 1..=n).collect();
    let nm1: Vec<u32> = (1..=n - 1).collect();
    let inter = |s1: &[u32], s2: &[u32]| -> Vec<u32> {
        s1.iter().copied().filter(|x| s2.contains(x)).collect()
    };
    let union = |s1: &[u32], s2: &[u32]| -> Vec<u32> {
        let mut v: Vec<u32> = s1.iter().chain(s2.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let shift = |s1: &[u32], z: i64| -> Vec<u32> {
        s1.iter().map(|&x| (x as i64 + z) as u32).collect()
    };
    let r_in_a = a.contains(&r);
    let n_in_a = a.contains(&n);
    let kl = if r_in_a {
        (union(&inter(&lower, a), &upper), inter(&lower, b))
    } else {
        (inter(&lower, a), union(&inter(&lower, b), &upper))
    };
    let mn = if !r_in_a {
        let left = shift(&inter(&upper, a), -1);
        (left.clone(), setminus(&nm1, &left))
    } else if n_in_a {
        let right = shift(&inter(&upper, b), -(kl.1.len() as i64));
        (setminus(&nm1, &right), right)
    } else {
        let ground = setminus(&(1..=n).collect::<Vec<u32>>(), &kl.1);
        let left = index_in(&ground, &inter(a, &ground));
        (left.clone(), setminus(&nm1, &left))
    };
    let full: Vec<u32> = (1..=n).collect();
    let cd = match (r_in_a, n_in_a) {
        (false, false) => {
            let ground = setminus(&full, b);
            let right = index_in(&ground, &inter(&lower, a));
            (right.clone(), setminus(&nm1, &right))
        }
        (true, false) => {
            let ground = setminus(&full, a);
            let right = index_in(&ground, &inter(&upper, b));
            (right.clone(), setminus(&nm1, &right))
        }
        (false, true) => {
            let ground = setminus(&full, b);
            let right = index_in(&ground, &inter(&upper, a));
            (setminus(&nm1, &right), right)
        }
        (true, true) => {
            let ground = setminus(&full, a);
            let right = index_in(&ground, &inter(&lower, b));
            (setminus(&nm1, &right), right)
        }
    };
    Ok((kl, mn, cd))
}

/// Sign coefficient of one coface summand in the differential of the
/// chain complex attached to a decomposition.
pub fn differential_sign(
    a: &[u32],
    b: &[u32],
    decomposition: &Decomposition,
    i: usize,
) -> Result<Coeff, CalcError> {
    let n = decomposition.n();
    if (a.len() + b.len()) as u32 != n {
        return Err(CalcError::SizeMismatch("pair must partition n letters".into()));
    }
    let (p, q) = decomposition.pq(i);
    if !in_family(p, q, n, a, b) {
        return Err(CalcError::NotInFamily);
    }
    let window = decomposition.window(i);
    let ca: Vec<u32> = window.iter().copied().filter(|x| a.contains(x)).collect();
    let cb: Vec<u32> = window.iter().copied().filter(|x| b.contains(x)).collect();
    let n_prefix = decomposition.partial(i - 1);
    let n_i_prime = ca.len() as u32 - 1;
    let mut sign = -shuffle_sign(&ca, &cb);
    if (n_prefix + n_i_prime) % 2 == 1 {
        sign = -sign;
    }
    Ok(sign)
}
