//! Leveled and planar rooted trees, the Tonks projection onto the
//! associahedron, the multiplihedron projection, and the induced
//! diagonals.
//!
//! A face `U_1|...|U_p` of `P_n` is a planar tree with `n+1` leaves and
//! `p` levels: level-`j` nodes carry the labels `U_j`, where label `i`
//! marks the meeting point of the branches of leaves `i` and `i+1`.
//! Forgetting levels gives a planar rooted tree, i.e. a face of the
//! associahedron `K_{n+1}`; remembering only the level of the block
//! containing `1` gives a face of the multiplihedron `J_n`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::diagonal::{diagonal_face, diagonal_top};
use crate::partition::{Coeff, OrderedPartition};

/// Errors raised by face-word validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("face word batch is empty")]
    EmptyBatch,
    #[error("pair ({0},{1}) does not fit the current string")]
    PairOutOfRange(u32, u32),
    #[error("pairs in a batch must be disjoint and increasing")]
    BatchOrder,
    #[error("an operator may not enclose the whole string")]
    EnclosesEverything,
}

/// A composition of parenthesis-inserting face operators.
///
/// `batches[0]` is applied first (innermost parentheses); each batch
/// simultaneously inserts its `(i, l)` pairs, the pair enclosing the
/// `l+1` items starting after position `i` of the current string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceWord {
    pub leaves: u32,
    pub batches: Vec<Vec<(u32, u32)>>,
}

/// A planar rooted tree: a face of the associahedron with as many
/// leaves as the tree has.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

/// Paint status of a node relative to the level of the block
/// containing 1: strictly below it, on it, or strictly above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Paint {
    Below,
    On,
    Above,
}

/// A painted planar tree: the multiplihedron face obtained from a
/// leveled tree by deleting the leftmost leaf, recording for every
/// surviving node whether it sat below, on, or above the level of the
/// block containing 1, and contracting the node left with one child.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PaintedTree {
    Leaf,
    Node(Paint, Vec<PaintedTree>),
}

/// Which cellular projection of the permutahedron to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Projection {
    /// Tonks projection onto the associahedron (forget levels).
    Assoc,
    /// Projection onto the multiplihedron.
    Multi,
}

/// A face of the multiplihedron: the painted tree that classifies the
/// projection fiber, plus the least non-collapsing partition in it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JClass {
    pub key: PaintedTree,
    pub rep: OrderedPartition,
}

impl Tree {
    pub fn leaves(&self) -> u32 {
        match self {
            Tree::Leaf => 1,
            Tree::Node(ch) => ch.iter().map(Tree::leaves).sum(),
        }
    }

    pub fn internal_nodes(&self) -> u32 {
        match self {
            Tree::Leaf => 0,
            Tree::Node(ch) => 1 + ch.iter().map(Tree::internal_nodes).sum::<u32>(),
        }
    }

    /// Dimension as a face of the associahedron on `leaves()` leaves.
    pub fn dim(&self) -> u32 {
        self.leaves() - 1 - self.internal_nodes()
    }

    pub fn corolla(leaves: u32) -> Tree {
        Tree::Node((0..leaves).map(|_| Tree::Leaf).collect())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "•"),
            Tree::Node(ch) => {
                write!(f, "(")?;
                for c in ch {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PaintedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaintedTree::Leaf => write!(f, "•"),
            PaintedTree::Node(paint, ch) => {
                let mark = match paint {
                    Paint::Below => "",
                    Paint::On => "~",
                    Paint::Above => "'",
                };
                write!(f, "(")?;
                for c in ch {
                    write!(f, "{c}")?;
                }
                write!(f, "){mark}")
            }
        }
    }
}

impl fmt::Debug for PaintedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PaintedTree {
    fn arity_dim(&self) -> i64 {
        match self {
            PaintedTree::Leaf => 0,
            PaintedTree::Node(paint, ch) => {
                let own = ch.len() as i64 - 2 + if *paint == Paint::On { 1 } else { 0 };
                own + ch.iter().map(PaintedTree::arity_dim).sum::<i64>()
            }
        }
    }

    /// Dimension of the multiplihedron face this tree indexes.
    pub fn dim(&self) -> u32 {
        self.arity_dim() as u32
    }
}

/// Level of each element: `levels[x-1]` is the 1-based index of the
/// block containing `x`.
fn levels_of(u: &OrderedPartition) -> Vec<usize> {
    let mut levels = vec![0usize; u.n() as usize];
    for (j, block) in u.blocks().iter().enumerate() {
        for &x in block {
            levels[x as usize - 1] = j + 1;
        }
    }
    levels
}

/// Splits the level-`j` block into the label sets of its nodes: two
/// consecutive labels share a node exactly when every element between
/// them lies at a strictly lower level.
fn node_runs(u: &OrderedPartition, levels: &[usize], j: usize) -> Vec<Vec<u32>> {
    let block = &u.blocks()[j - 1];
    let mut runs: Vec<Vec<u32>> = Vec::new();
    for &x in block {
        let joined = match runs.last() {
            Some(run) => {
                let prev = *run.last().unwrap();
                (prev + 1..x).all(|c| levels[c as usize - 1] < j)
            }
            None => false,
        };
        if joined {
            runs.last_mut().unwrap().push(x);
        } else {
            runs.push(vec![x]);
        }
    }
    runs
}

/// One pass over the levels of a partition: merges tree items level by
/// level, reporting each node's `(i, l)` pair through a callback and
/// producing the final merged item.
fn fold_levels<T, F, G>(u: &OrderedPartition, leaf: F, mut merge: G) -> T
where
    F: Fn(u32) -> T,
    G: FnMut(usize, usize, Vec<T>) -> T,
{
    let levels = levels_of(u);
    let p = u.num_blocks();
    let mut items: Vec<(T, u32, u32)> = (1..=u.n() + 1).map(|i| (leaf(i), i, i)).collect();
    for j in 1..=p {
        let runs = node_runs(u, &levels, j);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for run in &runs {
            let lo_leaf = run[0];
            let hi_leaf = run[run.len() - 1] + 1;
            let first = items
                .iter()
                .position(|&(_, lo, hi)| lo <= lo_leaf && lo_leaf <= hi)
                .unwrap();
            let last = items
                .iter()
                .position(|&(_, lo, hi)| lo <= hi_leaf && hi_leaf <= hi)
                .unwrap();
            pairs.push((first, last));
        }
        // merge right to left so earlier indices stay valid
        for &(a, b) in pairs.iter().rev() {
            let merged: Vec<(T, u32, u32)> = items.splice(a..=b, std::iter::empty()).collect();
            let lo = merged.first().unwrap().1;
            let hi = merged.last().unwrap().2;
            let node = merge(j, a, merged.into_iter().map(|(t, _, _)| t).collect());
            items.insert(a, (node, lo, hi));
        }
    }
    debug_assert_eq!(items.len(), 1);
    items.pop().unwrap().0
}

/// Face word of a partition: one batch per non-root level, pairs in
/// the coordinates of the string collapsed by the previous levels.
pub fn partition_to_faceword(u: &OrderedPartition) -> FaceWord {
    let levels = levels_of(u);
    let p = u.num_blocks();
    let mut items: Vec<(u32, u32)> = (1..=u.n() + 1).map(|i| (i, i)).collect();
    let mut batches = Vec::new();
    for j in 1..=p {
        let runs = node_runs(u, &levels, j);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for run in &runs {
            let lo_leaf = run[0];
            let hi_leaf = run[run.len() - 1] + 1;
            let first = items
                .iter()
                .position(|&(lo, hi)| lo <= lo_leaf && lo_leaf <= hi)
                .unwrap();
            let last = items
                .iter()
                .position(|&(lo, hi)| lo <= hi_leaf && hi_leaf <= hi)
                .unwrap();
            pairs.push((first, last));
        }
        if j < p {
            batches.push(
                pairs
                    .iter()
                    .map(|&(a, b)| (a as u32, (b - a) as u32))
                    .collect(),
            );
        }
        for &(a, b) in pairs.iter().rev() {
            let lo = items[a].0;
            let hi = items[b].1;
            items.splice(a..=b, std::iter::empty());
            items.insert(a, (lo, hi));
        }
    }
    FaceWord {
        leaves: u.n() + 1,
        batches,
    }
}

/// Planar rooted tree of a partition (levels forgotten).
pub fn partition_tree(u: &OrderedPartition) -> Tree {
    fold_levels(u, |_| Tree::Leaf, |_, _, children| Tree::Node(children))
}

impl FaceWord {
    pub fn identity(leaves: u32) -> FaceWord {
        FaceWord {
            leaves,
            batches: Vec::new(),
        }
    }

    /// Checks the batch constraints; returns the item count remaining
    /// after every batch is applied.
    fn validate(&self) -> Result<usize, WordError> {
        let mut width = self.leaves as usize;
        for batch in &self.batches {
            if batch.is_empty() {
                return Err(WordError::EmptyBatch);
            }
            let mut consumed = 0usize;
            let mut prev_end: Option<u32> = None;
            for &(i, l) in batch {
                if l == 0 || (i + l + 1) as usize > width {
                    return Err(WordError::PairOutOfRange(i, l));
                }
                if let Some(end) = prev_end {
                    if i < end {
                        return Err(WordError::BatchOrder);
                    }
                }
                prev_end = Some(i + l + 1);
                consumed += l as usize;
            }
            width -= consumed;
            if width < 2 {
                return Err(WordError::EnclosesEverything);
            }
        }
        Ok(width)
    }

    /// The partition whose leveled tree realizes this word.
    pub fn to_partition(&self) -> Result<OrderedPartition, WordError> {
        self.validate()?;
        let n = self.leaves - 1;
        // items carry their leaf interval; a label's level is set when
        // the corresponding join happens
        let mut items: Vec<(u32, u32)> = (1..=self.leaves).map(|i| (i, i)).collect();
        let mut level = vec![0usize; n as usize];
        for (j, batch) in self.batches.iter().enumerate() {
            for &(i, l) in batch.iter().rev() {
                let (a, b) = (i as usize, (i + l) as usize);
                for item in &items[a..b] {
                    level[item.1 as usize - 1] = j + 1;
                }
                let lo = items[a].0;
                let hi = items[b].1;
                items.splice(a..=b, std::iter::empty());
                items.insert(a, (lo, hi));
            }
        }
        let root_level = self.batches.len() + 1;
        for item in &items[..items.len() - 1] {
            level[item.1 as usize - 1] = root_level;
        }
        let mut blocks = vec![Vec::new(); root_level];
        for x in 1..=n {
            blocks[level[x as usize - 1] - 1].push(x);
        }
        Ok(OrderedPartition::new(blocks).expect("levels cover 1..=n"))
    }

    /// The planar rooted tree realized by this word.
    pub fn to_tree(&self) -> Result<Tree, WordError> {
        self.validate()?;
        let mut items: Vec<Tree> = (0..self.leaves).map(|_| Tree::Leaf).collect();
        for batch in &self.batches {
            for &(i, l) in batch.iter().rev() {
                let merged: Vec<Tree> = items
                    .splice(i as usize..=(i + l) as usize, std::iter::empty())
                    .collect();
                items.insert(i as usize, Tree::Node(merged));
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Tree::Node(items)
        })
    }
}

impl fmt::Display for FaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.batches.is_empty() {
            return write!(f, "1");
        }
        for batch in self.batches.iter().rev() {
            write!(f, "d")?;
            for &(i, l) in batch {
                write!(f, "({i},{l})")?;
            }
        }
        Ok(())
    }
}

/// Canonical single-pair word of a planar rooted tree: collapse ready
/// nodes innermost first, rightmost first.
pub fn canonical_word(tree: &Tree) -> FaceWord {
    #[derive(Clone)]
    enum Item {
        Done,
        Pending(Vec<Item>),
    }
    fn build(t: &Tree) -> Item {
        match t {
            Tree::Leaf => Item::Done,
            Tree::Node(ch) => Item::Pending(ch.iter().map(build).collect()),
        }
    }
    struct Ready {
        path: Vec<usize>,
        start: usize,
        width: usize,
    }
    fn scan(
        item: &Item,
        start: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Ready>,
        is_root: bool,
    ) -> usize {
        match item {
            Item::Done => start + 1,
            Item::Pending(children) => {
                let mut pos = start;
                let mut all_done = true;
                for (idx, c) in children.iter().enumerate() {
                    path.push(idx);
                    pos = scan(c, pos, path, out, false);
                    path.pop();
                    if !matches!(c, Item::Done) {
                        all_done = false;
                    }
                }
                if all_done && !is_root {
                    out.push(Ready {
                        path: path.clone(),
                        start,
                        width: children.len(),
                    });
                }
                pos
            }
        }
    }
    fn collapse(item: &mut Item, path: &[usize]) {
        if path.is_empty() {
            *item = Item::Done;
            return;
        }
        if let Item::Pending(children) = item {
            collapse(&mut children[path[0]], &path[1..]);
        }
    }
    let leaves = tree.leaves();
    let mut batches: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut root = build(tree);
    loop {
        let mut ready = Vec::new();
        let mut path = Vec::new();
        scan(&root, 0, &mut path, &mut ready, true);
        let Some(pick) = ready.into_iter().max_by_key(|r| r.start) else {
            break;
        };
        batches.push(vec![(pick.start as u32, (pick.width - 1) as u32)]);
        collapse(&mut root, &pick.path);
    }
    FaceWord { leaves, batches }
}

/// Canonical non-degenerate partition projecting onto a planar rooted
/// tree (each level one node, canonical order).
pub fn canonical_assoc_rep(tree: &Tree) -> OrderedPartition {
    canonical_word(tree)
        .to_partition()
        .expect("canonical words are valid")
}

/// Renders a partition as a string of subscripted parentheses over
/// `n+1` bullets, one parenthesis level per tree level below the root.
pub fn render_parenthesization(u: &OrderedPartition) -> String {
    fn subscript(j: usize) -> String {
        const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        j.to_string()
            .chars()
            .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
            .collect()
    }
    let p = u.num_blocks();
    fold_levels(
        u,
        |_| "•".to_string(),
        |j, _, children| {
            let body: String = children.concat();
            if j < p {
                format!("({body}){}", subscript(j))
            } else {
                format!("({body})")
            }
        },
    )
}

/// Is the block at 1-based position `j` straddled by a later element?
fn exceptional(u: &OrderedPartition, j: usize) -> bool {
    let block = &u.blocks()[j - 1];
    let (lo, hi) = (block[0], *block.last().unwrap());
    u.blocks()[j..]
        .iter()
        .flatten()
        .any(|&x| lo < x && x < hi)
}

/// Degeneracy of a face under a projection, by the block criteria: for
/// the associahedron some block below the top is exceptional; for the
/// multiplihedron that block's minimum must additionally exceed the
/// minimum of everything later.
pub fn is_degenerate(u: &OrderedPartition, target: Projection) -> bool {
    let p = u.num_blocks();
    for j in 1..p {
        if !exceptional(u, j) {
            continue;
        }
        match target {
            Projection::Assoc => return true,
            Projection::Multi => {
                let later_min = u.blocks()[j..].iter().flatten().min().copied().unwrap();
                if u.blocks()[j - 1][0] > later_min {
                    return true;
                }
            }
        }
    }
    false
}

/// Same predicates read off the face word: a batch with several pairs
/// (associahedron), or one whose first pair misses the left edge
/// (multiplihedron).
pub fn is_degenerate_by_word(u: &OrderedPartition, target: Projection) -> bool {
    let word = partition_to_faceword(u);
    word.batches.iter().any(|batch| {
        batch.len() > 1
            && match target {
                Projection::Assoc => true,
                Projection::Multi => batch[0].0 > 0,
            }
    })
}

/// Dimension-drop degeneracy under the multiplihedron projection: some
/// level other than the level of `1` carries more than one node.
///
/// This is what actually collapses cells.  It strictly contains the
/// block criterion of [`is_degenerate`], which misses multi-node levels
/// sitting above the level of `1` with a small minimum (the edge
/// `1|24|3` collapses onto the vertex class of `1|2|4|3`, yet no block
/// passes the minimum test).  Fibers and pushforwards use this
/// predicate so that the quotient is an honest cell complex.
pub fn multi_collapses(u: &OrderedPartition) -> bool {
    let levels = levels_of(u);
    let j0 = levels[0];
    let p = u.num_blocks();
    (1..=p).any(|j| j != j0 && node_runs(u, &levels, j).len() > 1)
}

/// Painted tree of a partition; defined for every face, degenerate or
/// not, and constant on multiplihedron fibers.
pub fn painted_tree(u: &OrderedPartition) -> PaintedTree {
    let j0 = levels_of(u)[0];
    let full = fold_levels(u, |_| PaintedTree::Leaf, |j, _, children| {
        let paint = match j.cmp(&j0) {
            std::cmp::Ordering::Less => Paint::Below,
            std::cmp::Ordering::Equal => Paint::On,
            std::cmp::Ordering::Greater => Paint::Above,
        };
        PaintedTree::Node(paint, children)
    });
    drop_leftmost_leaf(full).expect("trees with at least two leaves survive")
}

/// Removes the leftmost leaf; a node left with a single child is
/// replaced by that child.
fn drop_leftmost_leaf(t: PaintedTree) -> Option<PaintedTree> {
    match t {
        PaintedTree::Leaf => None,
        PaintedTree::Node(paint, mut ch) => {
            let first = ch.remove(0);
            match drop_leftmost_leaf(first) {
                Some(kept) => ch.insert(0, kept),
                None => {
                    if ch.len() == 1 {
                        return Some(ch.pop().unwrap());
                    }
                }
            }
            Some(PaintedTree::Node(paint, ch))
        }
    }
}

type AssocTable = Arc<BTreeMap<Tree, Vec<OrderedPartition>>>;
type MultiTable = Arc<BTreeMap<PaintedTree, Vec<OrderedPartition>>>;

fn assoc_table(n: u32) -> AssocTable {
    static CACHE: OnceLock<Mutex<HashMap<u32, AssocTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut table: BTreeMap<Tree, Vec<OrderedPartition>> = BTreeMap::new();
    for u in OrderedPartition::enumerate(n, None).unwrap() {
        table.entry(partition_tree(&u)).or_default().push(u);
    }
    for members in table.values_mut() {
        members.sort();
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert(n, table.clone());
    table
}

fn multi_table(n: u32) -> MultiTable {
    static CACHE: OnceLock<Mutex<HashMap<u32, MultiTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut table: BTreeMap<PaintedTree, Vec<OrderedPartition>> = BTreeMap::new();
    for u in OrderedPartition::enumerate(n, None).unwrap() {
        table.entry(painted_tree(&u)).or_default().push(u);
    }
    for members in table.values_mut() {
        members.sort();
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert(n, table.clone());
    table
}

/// Image cell of a face under a projection, together with whether the
/// face collapses onto it (maps with a dimension drop).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedCell<T> {
    pub cell: T,
    pub degenerate: bool,
}

/// Image cell of a face under the Tonks projection.  The cell is the
/// underlying planar rooted tree; the face is degenerate exactly when
/// its dimension exceeds the cell's.
pub fn project_assoc(u: &OrderedPartition) -> ProjectedCell<Tree> {
    let cell = partition_tree(u);
    let degenerate = cell.dim() < u.dim();
    ProjectedCell { cell, degenerate }
}

/// Image cell under the Tonks projection when the face maps
/// homeomorphically; `None` when it collapses.  Pushforwards of chains
/// send collapsing faces to zero.
pub fn assoc_cell(u: &OrderedPartition) -> Option<Tree> {
    let img = project_assoc(u);
    (!img.degenerate).then_some(img.cell)
}

/// Node label sets of a non-collapsing face in level order, each with
/// the dimension of the cell factor the node carries.
fn level_node_factors(u: &OrderedPartition) -> Vec<(Vec<u32>, usize)> {
    let levels = levels_of(u);
    let mut out = Vec::new();
    for j in 1..=u.num_blocks() {
        for run in node_runs(u, &levels, j) {
            let dim = run.len() - 1;
            out.push((run, dim));
        }
    }
    out
}

/// Koszul sign of reordering the tensor factors of `from` into the
/// order of `to` (factors matched by node label set).
fn reorder_sign(from: &[(Vec<u32>, usize)], to: &[(Vec<u32>, usize)]) -> Coeff {
    let pos: Vec<usize> = from
        .iter()
        .map(|(labels, _)| {
            to.iter()
                .position(|(l, _)| l == labels)
                .expect("same node sets")
        })
        .collect();
    let mut sign = 1;
    for i in 0..from.len() {
        for j in i + 1..from.len() {
            if pos[i] > pos[j] && from[i].1 % 2 == 1 && from[j].1 % 2 == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Signed pushforward along the Tonks projection: the image cell and
/// the Koszul sign relating the face's orientation (its level order of
/// node factors) to the canonical representative's.
pub fn assoc_push(u: &OrderedPartition) -> Option<(Tree, Coeff)> {
    let tree = assoc_cell(u)?;
    let sign = reorder_sign(
        &level_node_factors(u),
        &level_node_factors(&canonical_assoc_rep(&tree)),
    );
    Some((tree, sign))
}

/// Signed pushforward along the multiplihedron projection.
pub fn multi_push(u: &OrderedPartition) -> Option<(PaintedTree, Coeff)> {
    if multi_collapses(u) {
        return None;
    }
    let key = painted_tree(u);
    let rep = multi_rep(u.n(), &key);
    let sign = reorder_sign(&level_node_factors(u), &level_node_factors(&rep));
    Some((key, sign))
}

/// Image cell of a face under the multiplihedron projection.
pub fn project_multi(u: &OrderedPartition) -> ProjectedCell<JClass> {
    let key = painted_tree(u);
    let rep = multi_rep(u.n(), &key);
    ProjectedCell {
        degenerate: multi_collapses(u),
        cell: JClass { key, rep },
    }
}

/// Multiplihedron image cell when the face maps homeomorphically.
pub fn multi_cell(u: &OrderedPartition) -> Option<PaintedTree> {
    (!multi_collapses(u)).then(|| painted_tree(u))
}

/// Groups every face of `P_n` by its image cell under the projection.
/// Classes are sorted by their least member; members are sorted too.
pub fn fibers(n: u32, target: Projection) -> Vec<Vec<OrderedPartition>> {
    let mut classes: Vec<Vec<OrderedPartition>> = match target {
        Projection::Assoc => assoc_table(n).values().cloned().collect(),
        Projection::Multi => multi_table(n).values().cloned().collect(),
    };
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    classes
}

/// A tensor chain over associahedron faces.
pub type AssocTensor = BTreeMap<(Tree, Tree), Coeff>;
/// A tensor chain over multiplihedron faces.
pub type MultiTensor = BTreeMap<(PaintedTree, PaintedTree), Coeff>;

pub(crate) fn add_term<K: Ord>(map: &mut BTreeMap<K, Coeff>, key: K, coeff: Coeff) {
    if coeff == 0 {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
    }
}

/// Associahedron diagonal of `e^m` in `C_m(K_{m+2})` by pushing the
/// permutahedral diagonal through the Tonks projection.
pub fn assoc_diagonal_projected(m: u32) -> AssocTensor {
    let mut out = AssocTensor::new();
    for ((l, r), &c) in diagonal_top(m).iter() {
        if let (Some((tl, sl)), Some((tr, sr))) = (assoc_push(l), assoc_push(r)) {
            add_term(&mut out, (tl, tr), c * sl * sr);
        }
    }
    out
}

/// One summand produced by the direct solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocTerm {
    pub coeff: Coeff,
    pub left: FaceWord,
    pub right: FaceWord,
}

/// Associahedron diagonal of `e^m` by direct enumeration of the index
/// system: backtrack over the right-hand tuples; the left-hand lengths
/// are forced once a bounded position is chosen.
pub fn assoc_diagonal_direct(m: u32) -> Vec<AssocTerm> {
    let n = m as i64;
    let leaves = m + 2;
    let mut out = Vec::new();
    for q in 1..=(n + 1) {
        let p = n + 2 - q;
        // (i'_j, l'_j) for j = 1..q-1: positions strictly decreasing
        // from below n+1, lengths within the remaining budget
        let mut right_stack: Vec<(Vec<(i64, i64)>, i64)> = vec![(Vec::new(), 0)];
        let mut rights: Vec<Vec<(i64, i64)>> = Vec::new();
        while let Some((tuple, lsum)) = right_stack.pop() {
            if tuple.len() as i64 == q - 1 {
                rights.push(tuple);
                continue;
            }
            let prev_i = tuple.last().map(|&(i, _)| i).unwrap_or(n + 1);
            for i in 1..prev_i {
                for l in 1..=(n + 1 - i - lsum) {
                    let mut t = tuple.clone();
                    t.push((i, l));
                    right_stack.push((t, lsum + l));
                }
            }
        }
        for right in rights {
            let iprime = |r: i64| -> i64 {
                if r == 0 {
                    n + 1
                } else if (r as usize) <= right.len() {
                    right[r as usize - 1].0
                } else {
                    0 // the final sentinel position
                }
            };
            let lprime_sum = |r: i64| -> i64 {
                if (r as usize) <= right.len() {
                    right[..r as usize].iter().map(|&(_, l)| l).sum()
                } else {
                    n + 1 // the full budget
                }
            };
            // complementary positions, increasing
            let used: Vec<i64> = right.iter().map(|&(i, _)| i).collect();
            let eps: Vec<i64> = (1..=n).filter(|x| !used.contains(x)).collect();
            debug_assert_eq!(eps.len() as i64, p - 1);
            let eps_at = |r: i64| -> i64 { if r == 0 { 0 } else { eps[r as usize - 1] } };
            let o = |u: i64| -> i64 {
                (0..=q).filter(|&r| iprime(r) >= eps_at(u)).max().unwrap()
            };
            let t_of = |u: i64| -> Option<i64> {
                (0..=q).find(|&r| {
                    iprime(r) + lprime_sum(r) - lprime_sum(o(u)) > eps_at(u) && eps_at(u) > iprime(r)
                })
            };
            let o_prime = |u: i64| -> i64 {
                (0..=(p - 1)).filter(|&r| eps_at(r) <= iprime(u)).max().unwrap()
            };
            // backtrack over the bounded left positions
            let mut left_stack: Vec<Vec<(i64, i64)>> = vec![Vec::new()];
            while let Some(tuple) = left_stack.pop() {
                let k = tuple.len() as i64 + 1;
                if k > p - 1 {
                    out.push(AssocTerm {
                        coeff: term_sign(&tuple, &right, q),
                        left: FaceWord {
                            leaves,
                            batches: tuple
                                .iter()
                                .map(|&(i, l)| vec![(i as u32, l as u32)])
                                .collect(),
                        },
                        right: FaceWord {
                            leaves,
                            batches: right
                                .iter()
                                .map(|&(i, l)| vec![(i as u32, l as u32)])
                                .collect(),
                        },
                    });
                    continue;
                }
                let Some(tk) = t_of(k) else {
                    continue;
                };
                let opk = o_prime(tk);
                let lsum = |r: i64, tuple: &[(i64, i64)]| -> i64 {
                    tuple[..r as usize].iter().map(|&(_, l)| l).sum()
                };
                let mut bound = iprime(tk) - lsum(opk, &tuple);
                for r in (opk + 1)..k {
                    bound = bound.min(tuple[r as usize - 1].0);
                }
                for ik in 0..=bound.max(-1) {
                    let lk = eps_at(k) - ik - lsum(k - 1, &tuple);
                    if lk < 1 {
                        continue;
                    }
                    let mut t = tuple.clone();
                    t.push((ik, lk));
                    left_stack.push(t);
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
    out
}

fn term_sign(left: &[(i64, i64)], right: &[(i64, i64)], q: i64) -> Coeff {
    let mut e = 0i64;
    for &(i, l) in left {
        e += i * (l + 1);
    }
    for (k0, &(i, l)) in right.iter().enumerate() {
        let k = k0 as i64 + 1;
        e += (i + k + q) * l;
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Direct-route terms folded into a tensor chain over trees.  A word
/// is a leveled representative and so carries an orientation; pushing
/// its partition keeps both routes in the same oriented basis.
pub fn assoc_direct_as_tensor(m: u32) -> AssocTensor {
    let mut out = AssocTensor::new();
    for term in assoc_diagonal_direct(m) {
        let lu = term.left.to_partition().expect("solver emits valid words");
        let ru = term.right.to_partition().expect("solver emits valid words");
        let (tl, sl) = assoc_push(&lu).expect("solver words are non-degenerate");
        let (tr, sr) = assoc_push(&ru).expect("solver words are non-degenerate");
        add_term(&mut out, (tl, tr), term.coeff * sl * sr);
    }
    out
}

/// Multiplihedron diagonal of the top cell of `P_{m+1}`: push the
/// permutahedral diagonal forward, dropping collapsing components.
pub fn multi_diagonal(m: u32) -> MultiTensor {
    let mut out = MultiTensor::new();
    for ((l, r), &c) in diagonal_top(m).iter() {
        if let (Some((tl, sl)), Some((tr, sr))) = (multi_push(l), multi_push(r)) {
            add_term(&mut out, (tl, tr), c * sl * sr);
        }
    }
    out
}

/// Least non-collapsing member of a multiplihedron fiber.
pub fn multi_rep(n: u32, key: &PaintedTree) -> OrderedPartition {
    multi_table(n)
        .get(key)
        .and_then(|members| members.iter().find(|m| !multi_collapses(m)))
        .cloned()
        .expect("every fiber key has a non-collapsing member")
}

/// Pushforward of the boundary of the top cell of `P_{n+1}` onto the
/// associahedron; the surviving summands are exactly the interval
/// faces.
pub fn boundary_projected_assoc(n: u32) -> BTreeMap<Tree, Coeff> {
    let mut out = BTreeMap::new();
    for (face, &c) in OrderedPartition::top(n + 1).boundary().iter() {
        if let Some((t, s)) = assoc_push(face) {
            add_term(&mut out, t, c * s);
        }
    }
    out
}

/// Pushforward of the boundary of the top cell of `P_{n+1}` onto the
/// multiplihedron.
pub fn boundary_projected_multi(n: u32) -> BTreeMap<PaintedTree, Coeff> {
    let mut out = BTreeMap::new();
    for (face, &c) in OrderedPartition::top(n + 1).boundary().iter() {
        if let Some((t, s)) = multi_push(face) {
            add_term(&mut out, t, c * s);
        }
    }
    out
}

/// Boundary of an associahedron face: push the boundary of its
/// canonical permutahedral representative.
pub fn assoc_boundary(t: &Tree) -> BTreeMap<Tree, Coeff> {
    let rep = canonical_assoc_rep(t);
    let mut out = BTreeMap::new();
    for (face, &c) in rep.boundary().iter() {
        if let Some((img, s)) = assoc_push(face) {
            add_term(&mut out, img, c * s);
        }
    }
    out
}

/// Boundary of a multiplihedron face via its least representative.
pub fn multi_boundary(n: u32, key: &PaintedTree) -> BTreeMap<PaintedTree, Coeff> {
    let rep = multi_rep(n, key);
    let mut out = BTreeMap::new();
    for (face, &c) in rep.boundary().iter() {
        if let Some((img, s)) = multi_push(face) {
            add_term(&mut out, img, c * s);
        }
    }
    out
}

/// Diagonal of an associahedron face by pushing the diagonal of its
/// representative.
pub fn assoc_diagonal_of_face(t: &Tree) -> AssocTensor {
    let rep = canonical_assoc_rep(t);
    let mut out = AssocTensor::new();
    for ((l, r), &c) in diagonal_face(&rep).iter() {
        if let (Some((tl, sl)), Some((tr, sr))) = (assoc_push(l), assoc_push(r)) {
            add_term(&mut out, (tl, tr), c * sl * sr);
        }
    }
    out
}

/// Diagonal of a multiplihedron face by pushing the diagonal of its
/// representative.
pub fn multi_diagonal_of_face(n: u32, key: &PaintedTree) -> MultiTensor {
    let rep = multi_rep(n, key);
    let mut out = MultiTensor::new();
    for ((l, r), &c) in diagonal_face(&rep).iter() {
        if let (Some((tl, sl)), Some((tr, sr))) = (multi_push(l), multi_push(r)) {
            add_term(&mut out, (tl, tr), c * sl * sr);
        }
    }
    out
}

/// Chain-map test at the associahedron level: the tensor boundary of
/// the diagonal equals the diagonal of the projected boundary.
pub fn verify_assoc_chain_map(m: u32) -> bool {
    let diag = assoc_diagonal_projected(m);
    let mut lhs = AssocTensor::new();
    for ((l, r), &c) in &diag {
        for (lb, &cb) in assoc_boundary(l).iter() {
            add_term(&mut lhs, (lb.clone(), r.clone()), c * cb);
        }
        let sign = if l.dim() % 2 == 0 { 1 } else { -1 };
        for (rb, &cb) in assoc_boundary(r).iter() {
            add_term(&mut lhs, (l.clone(), rb.clone()), c * cb * sign);
        }
    }
    let mut rhs = AssocTensor::new();
    for (t, &c) in boundary_projected_assoc(m).iter() {
        for ((l, r), &cd) in assoc_diagonal_of_face(t).iter() {
            add_term(&mut rhs, (l.clone(), r.clone()), c * cd);
        }
    }
    lhs == rhs
}

/// Chain-map test at the multiplihedron level.
pub fn verify_multi_chain_map(m: u32) -> bool {
    let n = m + 1;
    let diag = multi_diagonal(m);
    let mut lhs = MultiTensor::new();
    for ((l, r), &c) in &diag {
        for (lb, &cb) in multi_boundary(n, l).iter() {
            add_term(&mut lhs, (lb.clone(), r.clone()), c * cb);
        }
        let sign = if l.dim() % 2 == 0 { 1 } else { -1 };
        for (rb, &cb) in multi_boundary(n, r).iter() {
            add_term(&mut lhs, (l.clone(), rb.clone()), c * cb * sign);
        }
    }
    let mut rhs = MultiTensor::new();
    for (t, &c) in boundary_projected_multi(m).iter() {
        for ((l, r), &cd) in multi_diagonal_of_face(n, t).iter() {
            add_term(&mut rhs, (l.clone(), r.clone()), c * cd);
        }
    }
    lhs == rhs
}

/// Pushes a multiplihedron tensor chain on to the associahedron; the
/// factorization of the Tonks projection through the multiplihedron
/// makes this agree with the associahedron diagonal.
pub fn multi_to_assoc(n: u32, chain: &MultiTensor) -> AssocTensor {
    let mut out = AssocTensor::new();
    for ((l, r), &c) in chain {
        let lrep = multi_rep(n, l);
        let rrep = multi_rep(n, r);
        if let (Some((tl, sl)), Some((tr, sr))) = (assoc_push(&lrep), assoc_push(&rrep)) {
            add_term(&mut out, (tl, tr), c * sl * sr);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(text: &str) -> OrderedPartition {
        OrderedPartition::parse(text).unwrap()
    }

    // tiny recursive-descent parser for test fixtures
    fn tree(text: &str) -> Tree {
        fn parse(chars: &[char], pos: &mut usize) -> Tree {
            match chars[*pos] {
                '•' | '*' => {
                    *pos += 1;
                    Tree::Leaf
                }
                '(' => {
                    *pos += 1;
                    let mut ch = Vec::new();
                    while chars[*pos] != ')' {
                        ch.push(parse(chars, pos));
                    }
                    *pos += 1;
                    Tree::Node(ch)
                }
                c => panic!("bad tree char {c}"),
            }
        }
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        parse(&chars, &mut pos)
    }

    #[test]
    fn faceword_of_running_example() {
        let w = partition_to_faceword(&op("256|1|34"));
        assert_eq!(w.leaves, 7);
        assert_eq!(w.batches, vec![vec![(1, 1), (4, 2)], vec![(0, 1)]]);
        assert_eq!(w.to_string(), "d(0,1)d(1,1)(4,2)");
        assert_eq!(w.to_partition().unwrap(), op("256|1|34"));
    }

    #[test]
    fn faceword_of_top_and_small_faces() {
        let w = partition_to_faceword(&op("123"));
        assert!(w.batches.is_empty());
        assert_eq!(w.to_string(), "1");
        assert_eq!(partition_to_faceword(&op("12|3")).batches, vec![vec![(0, 2)]]);
        assert_eq!(
            partition_to_faceword(&op("13|2")).batches,
            vec![vec![(0, 1), (2, 1)]]
        );
    }

    #[test]
    fn faceword_round_trip_exhaustive() {
        for n in 1..=6u32 {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                let w = partition_to_faceword(&u);
                assert_eq!(w.to_partition().unwrap(), u, "at {u}");
            }
        }
    }

    #[test]
    fn bad_words_are_rejected() {
        // a single pair must not enclose the whole string
        let w = FaceWord {
            leaves: 3,
            batches: vec![vec![(0, 2)]],
        };
        assert!(w.to_partition().is_err());
        // overlapping pairs in one batch
        let w = FaceWord {
            leaves: 4,
            batches: vec![vec![(0, 1), (1, 1)]],
        };
        assert!(w.to_partition().is_err());
    }

    #[test]
    fn parenthesization_rendering() {
        assert_eq!(
            render_parenthesization(&op("256|1|34")),
            "((•(••)₁)₂•(•••)₁)"
        );
        assert_eq!(render_parenthesization(&op("123")), "(••••)");
        assert_eq!(render_parenthesization(&op("1|2")), "((••)₁•)");
    }

    #[test]
    fn degeneracy_examples() {
        assert!(is_degenerate(&op("13|24"), Projection::Assoc));
        assert!(!is_degenerate(&op("13|24"), Projection::Multi));
        assert!(!is_degenerate(&op("1|23"), Projection::Assoc));
        assert!(is_degenerate(&op("24|13"), Projection::Multi));
    }

    #[test]
    fn word_and_block_criteria_agree() {
        for n in 1..=6u32 {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                for target in [Projection::Assoc, Projection::Multi] {
                    assert_eq!(
                        is_degenerate(&u, target),
                        is_degenerate_by_word(&u, target),
                        "at {u} for {target:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn multi_collapse_refines_block_criterion() {
        // the block criterion misses collapses above the level of 1
        let u = op("1|24|3");
        assert!(!is_degenerate(&u, Projection::Multi));
        assert!(multi_collapses(&u));
        // but everything it does flag collapses
        for n in 1..=6u32 {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                if is_degenerate(&u, Projection::Multi) {
                    assert!(multi_collapses(&u), "at {u}");
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        // the exceptional edge collapses onto the vertex of the square
        // of brackets
        let img = project_assoc(&op("13|2"));
        assert_eq!(img.cell, tree("((••)(••))"));
        assert!(img.degenerate);
        let img = project_assoc(&op("12|4|3"));
        assert_eq!(img.cell, tree("((•••)(••))"));
        assert!(!img.degenerate);
        // the square face 124|3 collapses onto that same edge
        let img = project_assoc(&op("124|3"));
        assert_eq!(img.cell, tree("((•••)(••))"));
        assert!(img.degenerate);
        assert_eq!(assoc_cell(&op("123")), Some(tree("(••••)")));
        assert_eq!(assoc_cell(&op("13|24")), None);
    }

    #[test]
    fn tonks_fibers_p3() {
        let classes = fibers(3, Projection::Assoc);
        let multi: Vec<&Vec<OrderedPartition>> = classes.iter().filter(|c| c.len() > 1).collect();
        assert_eq!(multi.len(), 1);
        assert_eq!(multi[0], &vec![op("1|3|2"), op("13|2"), op("3|1|2")]);
        assert!(fibers(2, Projection::Assoc).iter().all(|c| c.len() == 1));
    }

    #[test]
    fn multiplihedron_is_permutahedron_in_low_rank() {
        for n in 1..=3u32 {
            for class in fibers(n, Projection::Multi) {
                assert_eq!(class.len(), 1, "J and P agree up to three letters: {class:?}");
            }
        }
    }

    #[test]
    fn multiplihedron_p4_identifications() {
        let classes = fibers(4, Projection::Multi);
        let multi: Vec<&Vec<OrderedPartition>> = classes.iter().filter(|c| c.len() > 1).collect();
        // three vertex pairs get identified through the edges that
        // collapse onto them, and one edge pair through the collapsing
        // square 24|13
        let expected = [
            vec![op("1|2|4|3"), op("1|24|3"), op("1|4|2|3")],
            vec![op("2|4|1|3"), op("24|1|3"), op("4|2|1|3")],
            vec![op("2|4|13"), op("24|13"), op("4|2|13")],
            vec![op("2|4|3|1"), op("24|3|1"), op("4|2|3|1")],
        ];
        assert_eq!(multi.len(), expected.len());
        for class in expected.iter() {
            assert!(multi.iter().any(|c| *c == class), "missing {class:?}");
        }
        // vertex count of the multiplihedron on four letters
        let vertices = classes
            .iter()
            .filter(|c| c.iter().any(|u| u.is_vertex()))
            .count();
        assert_eq!(vertices, 21);
    }

    #[test]
    fn assoc_vertices_are_catalan() {
        // independent oracle: count bracketings recursively
        fn binary_trees(leaves: u64) -> u64 {
            if leaves == 1 {
                return 1;
            }
            (1..leaves)
                .map(|k| binary_trees(k) * binary_trees(leaves - k))
                .sum()
        }
        for n in 1..=6u32 {
            let vertex_classes = fibers(n, Projection::Assoc)
                .iter()
                .filter(|class| class.iter().any(|u| u.is_vertex()))
                .count() as u64;
            assert_eq!(
                vertex_classes,
                binary_trees(n as u64 + 1),
                "vertex count on {} leaves",
                n + 1
            );
        }
    }

    #[test]
    fn canonical_word_shapes() {
        let w = canonical_word(&tree("(•(•(••)))"));
        assert_eq!(w.batches, vec![vec![(2, 1)], vec![(1, 1)]]);
        let w = canonical_word(&tree("((••)(••))"));
        assert_eq!(w.batches, vec![vec![(2, 1)], vec![(0, 1)]]);
        for n in 1..=5u32 {
            for t in assoc_table(n).keys() {
                let w = canonical_word(t);
                assert_eq!(&w.to_tree().unwrap(), t);
                assert!(!is_degenerate(
                    &w.to_partition().unwrap(),
                    Projection::Assoc
                ));
            }
        }
    }

    #[test]
    fn assoc_diagonal_k3() {
        let direct = assoc_diagonal_direct(1);
        assert_eq!(direct.len(), 2);
        let projected = assoc_diagonal_projected(1);
        assert_eq!(assoc_direct_as_tensor(1), projected);
        let left_tree = tree("((••)•)");
        let top = tree("(•••)");
        let right_tree = tree("(•(••))");
        assert_eq!(projected.get(&(left_tree, top.clone())), Some(&1));
        assert_eq!(projected.get(&(top, right_tree)), Some(&1));
    }

    #[test]
    fn assoc_diagonal_k4_six_terms() {
        let terms = assoc_diagonal_direct(2);
        let rendered: Vec<(String, String, Coeff)> = terms
            .iter()
            .map(|t| (t.left.to_string(), t.right.to_string(), t.coeff))
            .collect();
        let expected = [
            ("d(0,1)d(0,1)", "1", 1),
            ("1", "d(1,1)d(2,1)", 1),
            ("d(0,2)", "d(1,1)", 1),
            ("d(0,2)", "d(1,2)", 1),
            ("d(1,1)", "d(1,2)", 1),
            ("d(0,1)", "d(2,1)", -1),
        ];
        assert_eq!(rendered.len(), expected.len());
        for (l, r, c) in expected {
            assert!(
                rendered.contains(&(l.to_string(), r.to_string(), c)),
                "missing {c:+} {l} (x) {r}"
            );
        }
        assert_eq!(assoc_direct_as_tensor(2), assoc_diagonal_projected(2));
    }

    #[test]
    fn two_routes_agree() {
        for m in 0..=4u32 {
            assert_eq!(
                assoc_direct_as_tensor(m),
                assoc_diagonal_projected(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn multi_diagonal_low_rank() {
        // J agrees with P on up to three letters: nothing collapses
        for m in 1..=2u32 {
            let d = multi_diagonal(m);
            assert_eq!(d.len(), diagonal_top(m).len(), "m = {m}");
        }
        // pushing on to the associahedron recovers the K-diagonal
        for m in 0..=4u32 {
            assert_eq!(
                multi_to_assoc(m + 1, &multi_diagonal(m)),
                assoc_diagonal_projected(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn boundary_projections() {
        let b = boundary_projected_assoc(1);
        assert_eq!(b.get(&tree("(•(••))")), Some(&1));
        assert_eq!(b.get(&tree("((••)•)")), Some(&-1));
        assert_eq!(b.len(), 2);
        // pentagon: five codimension-one faces
        assert_eq!(boundary_projected_assoc(2).len(), 5);
    }

    #[test]
    fn projected_boundaries_square_to_zero() {
        for n in 1..=5u32 {
            let mut second = BTreeMap::new();
            for (t, &c) in boundary_projected_assoc(n).iter() {
                for (tb, &cb) in assoc_boundary(t).iter() {
                    add_term(&mut second, tb.clone(), c * cb);
                }
            }
            assert!(second.is_empty(), "assoc n = {n}");
            let mut second = BTreeMap::new();
            for (t, &c) in boundary_projected_multi(n - 1).iter() {
                for (tb, &cb) in multi_boundary(n, t).iter() {
                    add_term(&mut second, tb.clone(), c * cb);
                }
            }
            assert!(second.is_empty(), "multi n = {n}");
        }
    }

    #[test]
    fn chain_maps_hold() {
        for m in 1..=3u32 {
            assert!(verify_assoc_chain_map(m), "assoc m = {m}");
            assert!(verify_multi_chain_map(m), "multi m = {m}");
        }
    }

    #[test]
    fn multi_refines_assoc() {
        for n in 2..=5u32 {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                if multi_collapses(&u) {
                    continue;
                }
                let class = project_multi(&u);
                assert!(!class.degenerate);
                assert_eq!(
                    assoc_cell(&class.cell.rep),
                    assoc_cell(&u),
                    "at {u}"
                );
            }
        }
    }
}
