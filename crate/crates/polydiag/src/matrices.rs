//! Ordered, step and configuration matrices with their shift operators
//! and configuration signs.
//!
//! A `q x p` ordered matrix holds the values `1..=p+q-1`, each once,
//! increasing along rows (left to right) and columns (top to bottom),
//! with no empty row or column.  Step matrices are the staircase-shaped
//! ones; they are in bijection with permutations.  Configuration
//! matrices are derived from step matrices by constrained right/down
//! shifts and index the summands of the permutahedral diagonal.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::{Coeff, OrderedPartition};

/// Errors for matrix construction and the step recognizer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not ordered: {0}")]
    NotOrdered(String),
    #[error("matrix is not a step matrix")]
    NotStep,
    #[error("invalid permutation")]
    BadPermutation,
    #[error("index ({0},{1}) out of range for a {2}x{3} matrix")]
    OutOfRange(usize, usize, usize, usize),
}

/// Dense ordered matrix; `0` marks an empty cell, row 1 is on top.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct OrderedMatrix {
    q: usize,
    p: usize,
    rows: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawMatrix {
    q: usize,
    p: usize,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<RawMatrix> for OrderedMatrix {
    type Error = MatrixError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        let m = OrderedMatrix::new(raw.rows)?;
        if m.q != raw.q || m.p != raw.p {
            return Err(MatrixError::NotOrdered("declared shape disagrees".into()));
        }
        Ok(m)
    }
}

/// Shift direction for [`OrderedMatrix::shift`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    Down,
    Right,
}

/// Batched shift choices taking a step matrix to a configuration matrix:
/// right-moves per column, then down-moves per row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub base: OrderedMatrix,
    /// `right_moves[j]` is the set moved out of column `j+1` (1-based `j+1`).
    pub right_moves: Vec<Vec<u32>>,
    /// `down_moves[i]` is the set moved out of row `i+1` (1-based `i+1`).
    pub down_moves: Vec<Vec<u32>>,
}

impl OrderedMatrix {
    /// Builds and validates an ordered matrix from its dense rows.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, MatrixError> {
        let q = rows.len();
        if q == 0 {
            return Err(MatrixError::NotOrdered("no rows".into()));
        }
        let p = rows[0].len();
        if p == 0 || rows.iter().any(|r| r.len() != p) {
            return Err(MatrixError::NotOrdered("ragged or empty rows".into()));
        }
        let m = OrderedMatrix { q, p, rows };
        m.check_ordered()?;
        Ok(m)
    }

    fn check_ordered(&self) -> Result<(), MatrixError> {
        let total = self.p + self.q - 1;
        let mut seen = vec![false; total + 1];
        let mut count = 0usize;
        for r in &self.rows {
            for &x in r {
                if x == 0 {
                    continue;
                }
                if x as usize > total || seen[x as usize] {
                    return Err(MatrixError::NotOrdered(format!("bad entry {x}")));
                }
                seen[x as usize] = true;
                count += 1;
            }
        }
        if count != total {
            return Err(MatrixError::NotOrdered(format!(
                "expected entries 1..={total}"
            )));
        }
        for (i, r) in self.rows.iter().enumerate() {
            let vals: Vec<u32> = r.iter().copied().filter(|&x| x > 0).collect();
            if vals.is_empty() {
                return Err(MatrixError::NotOrdered(format!("row {} empty", i + 1)));
            }
            if !vals.windows(2).all(|w| w[0] < w[1]) {
                return Err(MatrixError::NotOrdered(format!("row {} not increasing", i + 1)));
            }
        }
        for j in 0..self.p {
            let vals: Vec<u32> = (0..self.q)
                .map(|i| self.rows[i][j])
                .filter(|&x| x > 0)
                .collect();
            if vals.is_empty() {
                return Err(MatrixError::NotOrdered(format!("column {} empty", j + 1)));
            }
            if !vals.windows(2).all(|w| w[0] < w[1]) {
                return Err(MatrixError::NotOrdered(format!(
                    "column {} not increasing",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i - 1][j - 1]
    }

    /// Ground-set size `p + q - 1`.
    pub fn ground(&self) -> u32 {
        (self.p + self.q - 1) as u32
    }

    /// Column face `U_1|...|U_p` (columns read left to right).
    pub fn column_face(&self) -> OrderedPartition {
        let blocks: Vec<Vec<u32>> = (0..self.p)
            .map(|j| {
                (0..self.q)
                    .map(|i| self.rows[i][j])
                    .filter(|&x| x > 0)
                    .collect()
            })
            .collect();
        OrderedPartition::new(blocks).expect("ordered matrix columns partition the ground set")
    }

    /// Row face `V_q|...|V_1` (rows read bottom to top).
    pub fn row_face(&self) -> OrderedPartition {
        let blocks: Vec<Vec<u32>> = (0..self.q)
            .rev()
            .map(|i| self.rows[i].iter().copied().filter(|&x| x > 0).collect())
            .collect();
        OrderedPartition::new(blocks).expect("ordered matrix rows partition the ground set")
    }

    pub fn transpose(&self) -> OrderedMatrix {
        let rows: Vec<Vec<u32>> = (0..self.p)
            .map(|j| (0..self.q).map(|i| self.rows[i][j]).collect())
            .collect();
        OrderedMatrix {
            q: self.p,
            p: self.q,
            rows,
        }
    }

    /// Applies the down- or right-shift operator at cell `(i, j)`
    /// (1-based).  Returns `None` when any of the operator's conditions
    /// fails, i.e. the operator acts as the identity there.
    pub fn shift(&self, kind: ShiftKind, i: usize, j: usize) -> Result<Option<OrderedMatrix>, MatrixError> {
        if i == 0 || i > self.q || j == 0 || j > self.p {
            return Err(MatrixError::OutOfRange(i, j, self.q, self.p));
        }
        let v = self.rows[i - 1][j - 1];
        match kind {
            ShiftKind::Down => {
                if i > self.q - 1 || v == 0 || self.rows[i][j - 1] != 0 {
                    return Ok(None);
                }
                // source must share its row with another non-zero entry
                if !(0..self.p).any(|k| k != j - 1 && self.rows[i - 1][k] > 0) {
                    return Ok(None);
                }
                // entries left of the target in the row below stay smaller
                for l in 0..j - 1 {
                    if self.rows[i][l] >= v {
                        return Ok(None);
                    }
                }
                // non-zero entries right of the target stay bigger
                for l in j..self.p {
                    let w = self.rows[i][l];
                    if w > 0 && w <= v {
                        return Ok(None);
                    }
                }
                let mut rows = self.rows.clone();
                rows[i][j - 1] = v;
                rows[i - 1][j - 1] = 0;
                Ok(Some(OrderedMatrix {
                    q: self.q,
                    p: self.p,
                    rows,
                }))
            }
            ShiftKind::Right => {
                if j > self.p - 1 || v == 0 || self.rows[i - 1][j] != 0 {
                    return Ok(None);
                }
                // source must share its column with another non-zero entry
                if !(0..self.q).any(|k| k != i - 1 && self.rows[k][j - 1] > 0) {
                    return Ok(None);
                }
                // entries above the target in the next column stay smaller
                for l in 0..i - 1 {
                    if self.rows[l][j] >= v {
                        return Ok(None);
                    }
                }
                // non-zero entries below the target stay bigger
                for l in i..self.q {
                    let w = self.rows[l][j];
                    if w > 0 && w <= v {
                        return Ok(None);
                    }
                }
                let mut rows = self.rows.clone();
                rows[i - 1][j] = v;
                rows[i - 1][j - 1] = 0;
                Ok(Some(OrderedMatrix {
                    q: self.q,
                    p: self.p,
                    rows,
                }))
            }
        }
    }

    /// Reads the staircase path of a step matrix back into a
    /// permutation, checking the recovery round trip.
    pub fn to_permutation(&self) -> Result<Vec<u32>, MatrixError> {
        let mut i = self.q;
        let mut j = 1usize;
        if self.get(i, j) == 0 {
            return Err(MatrixError::NotStep);
        }
        let mut seq = vec![self.get(i, j)];
        loop {
            if j < self.p && self.get(i, j + 1) != 0 {
                j += 1;
            } else if i > 1 && self.get(i - 1, j) != 0 {
                i -= 1;
            } else {
                break;
            }
            seq.push(self.get(i, j));
        }
        if seq.len() != self.p + self.q - 1 {
            return Err(MatrixError::NotStep);
        }
        if &step_from_permutation(&seq)? != self {
            return Err(MatrixError::NotStep);
        }
        Ok(seq)
    }

    pub fn is_step(&self) -> bool {
        self.to_permutation().is_ok()
    }

    /// A step matrix whose top-left entry is `1`; these correspond to
    /// the cubical vertices.
    pub fn is_edge_matrix(&self) -> bool {
        self.is_step() && self.rows[0][0] == 1
    }
}

impl fmt::Debug for OrderedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f)?;
            for &x in r {
                if x == 0 {
                    write!(f, "  .")?;
                } else {
                    write!(f, "{x:3}")?;
                }
            }
        }
        Ok(())
    }
}

/// Builds the unique step matrix of a permutation: start at the bottom
/// left; each ascent moves one column right, each descent one row up.
pub fn step_from_permutation(perm: &[u32]) -> Result<OrderedMatrix, MatrixError> {
    let m = perm.len();
    if m == 0 {
        return Err(MatrixError::BadPermutation);
    }
    let mut seen = vec![false; m + 1];
    for &x in perm {
        if x == 0 || x as usize > m || seen[x as usize] {
            return Err(MatrixError::BadPermutation);
        }
        seen[x as usize] = true;
    }
    let ascents = perm.windows(2).filter(|w| w[0] < w[1]).count();
    let p = ascents + 1;
    let q = m - ascents;
    let mut rows = vec![vec![0u32; p]; q];
    let mut i = q; // 1-based
    let mut j = 1usize;
    rows[i - 1][j - 1] = perm[0];
    for w in perm.windows(2) {
        if w[0] < w[1] {
            j += 1;
        } else {
            i -= 1;
        }
        rows[i - 1][j - 1] = w[1];
    }
    OrderedMatrix::new(rows)
}

/// Enumerates permutations of `{1..m}` in lexicographic order.
pub fn permutations(m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    let mut used = vec![false; m as usize + 1];
    fn rec(m: u32, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m as usize {
            out.push(cur.clone());
            return;
        }
        for x in 1..=m {
            if !used[x as usize] {
                used[x as usize] = true;
                cur.push(x);
                rec(m, cur, used, out);
                cur.pop();
                used[x as usize] = false;
            }
        }
    }
    rec(m, &mut cur, &mut used, &mut out);
    out
}

/// Configuration sign of `F` derived from the step matrix `E`.
pub fn csgn(f: &OrderedMatrix, derivation: &Derivation) -> Coeff {
    let e = &derivation.base;
    let ce = e.column_face().signs();
    let cf = f.column_face().signs();
    let rf = f.row_face().signs();
    let mut s = ce.rsgn * rf.sgn1 * ce.sgn2 * cf.sgn2;
    if f.q() * (f.q() - 1) / 2 % 2 == 1 {
        s = -s;
    }
    s
}

fn subsets_of(candidates: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(1 << candidates.len());
    for mask in 0..(1u64 << candidates.len()) {
        out.push(
            candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect(),
        );
    }
    out
}

fn current_column(m: &OrderedMatrix, j: usize) -> Vec<u32> {
    (0..m.q())
        .map(|i| m.rows()[i][j - 1])
        .filter(|&x| x > 0)
        .collect()
}

fn current_row(m: &OrderedMatrix, i: usize) -> Vec<u32> {
    m.rows()[i - 1].iter().copied().filter(|&x| x > 0).collect()
}

/// All configuration matrices over `{1..n+1}`, each with the derivation
/// that produced it and its configuration sign.
///
/// For every permutation the step matrix is expanded column by column
/// by batches of right moves, then row by row by batches of down moves.
/// Each batch is a proper subset of the *current* column (resp. row)
/// whose minimum exceeds the maximum of the next column (resp. row), so
/// an element arriving from an earlier batch may move again.  Duplicate
/// matrices are dropped; a collision must carry the same sign.
pub fn enumerate_configurations(n: u32) -> Vec<(OrderedMatrix, Derivation, Coeff)> {
    let mut seen: BTreeMap<OrderedMatrix, Coeff> = BTreeMap::new();
    let mut out = Vec::new();
    for perm in permutations(n + 1) {
        let e = step_from_permutation(&perm).expect("valid permutation");
        let mut after_right: Vec<(OrderedMatrix, Vec<Vec<u32>>)> = Vec::new();
        expand(
            e.clone(),
            ShiftKind::Right,
            1,
            e.p(),
            Vec::new(),
            &mut after_right,
        );
        for (m1, right_moves) in after_right {
            let mut finished: Vec<(OrderedMatrix, Vec<Vec<u32>>)> = Vec::new();
            expand(
                m1,
                ShiftKind::Down,
                1,
                e.q(),
                Vec::new(),
                &mut finished,
            );
            for (m2, down_moves) in finished {
                let derivation = Derivation {
                    base: e.clone(),
                    right_moves: right_moves.clone(),
                    down_moves,
                };
                let sign = csgn(&m2, &derivation);
                match seen.get(&m2) {
                    Some(&s) => assert_eq!(
                        s, sign,
                        "conflicting signs for one configuration matrix"
                    ),
                    None => {
                        seen.insert(m2.clone(), sign);
                        out.push((m2, derivation, sign));
                    }
                }
            }
        }
    }
    out
}

/// Expands one move phase: for each line index `k` in `1..count`,
/// choose a batch out of the current line `k` bounded below by the
/// maximum of line `k+1`, apply it, and recurse on the next line.
fn expand(
    m: OrderedMatrix,
    kind: ShiftKind,
    k: usize,
    count: usize,
    moves: Vec<Vec<u32>>,
    out: &mut Vec<(OrderedMatrix, Vec<Vec<u32>>)>,
) {
    if k >= count {
        out.push((m, moves));
        return;
    }
    let (line, next_line) = match kind {
        ShiftKind::Right => (current_column(&m, k), current_column(&m, k + 1)),
        ShiftKind::Down => (current_row(&m, k), current_row(&m, k + 1)),
    };
    let bound = *next_line.iter().max().unwrap();
    let candidates: Vec<u32> = line.iter().copied().filter(|&x| x > bound).collect();
    for mut set in subsets_of(&candidates) {
        if set.len() == line.len() {
            continue; // the line must stay non-empty
        }
        set.sort_unstable();
        let mut m2 = m.clone();
        let mut ok = true;
        for &x in &set {
            let (i, j) = locate(&m2, x);
            match m2.shift(kind, i, j).expect("located in range") {
                Some(next) => m2 = next,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut moves2 = moves.clone();
        moves2.push(set);
        expand(m2, kind, k + 1, count, moves2, out);
    }
}

fn locate(m: &OrderedMatrix, value: u32) -> (usize, usize) {
    for i in 1..=m.q() {
        for j in 1..=m.p() {
            if m.get(i, j) == value {
                return (i, j);
            }
        }
    }
    panic!("value {value} not present");
}

/// Brute-force closure of the shift relation: every matrix reachable
/// from a step matrix by words of admissible shifts, where down-shift
/// row indices and right-shift column indices weakly increase along the
/// word and each move obeys the composite-operator bound (the moved
/// value exceeds everything in the line it moves towards).  This is the
/// semantic reference for [`enumerate_configurations`]; exponential,
/// intended for small `n` only.
///
/// Without the bound, words such as a down shift of a small value next
/// to a larger neighbour become reachable and produce matrices that the
/// batched normal form excludes; those terms do not belong to the
/// diagonal (they break the coderivation property).
pub fn configurations_by_closure(n: u32) -> Vec<OrderedMatrix> {
    use std::collections::BTreeSet;
    let mut states: BTreeSet<(OrderedMatrix, usize, usize)> = BTreeSet::new();
    let mut frontier: Vec<(OrderedMatrix, usize, usize)> = Vec::new();
    for perm in permutations(n + 1) {
        let e = step_from_permutation(&perm).unwrap();
        frontier.push((e.clone(), 0, 0));
        states.insert((e, 0, 0));
    }
    while let Some((m, min_d_row, min_r_col)) = frontier.pop() {
        for i in 1..=m.q() {
            for j in 1..=m.p() {
                let v = m.rows()[i - 1][j - 1];
                if v == 0 {
                    continue;
                }
                if i >= min_d_row.max(1) && i < m.q() {
                    let bound_ok = current_row(&m, i + 1).iter().all(|&w| w < v);
                    if bound_ok {
                        if let Some(next) = m.shift(ShiftKind::Down, i, j).unwrap() {
                            let st = (next, i, min_r_col);
                            if states.insert(st.clone()) {
                                frontier.push(st);
                            }
                        }
                    }
                }
                if j >= min_r_col.max(1) && j < m.p() {
                    let bound_ok = current_column(&m, j + 1).iter().all(|&w| w < v);
                    if bound_ok {
                        if let Some(next) = m.shift(ShiftKind::Right, i, j).unwrap() {
                            let st = (next, min_d_row, j);
                            if states.insert(st.clone()) {
                                frontier.push(st);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out: BTreeSet<OrderedMatrix> = BTreeSet::new();
    for (m, _, _) in states {
        out.insert(m);
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::OrderedPartition;

    fn op(text: &str) -> OrderedPartition {
        OrderedPartition::parse(text).unwrap()
    }

    fn factorial(m: u64) -> u64 {
        (1..=m).product()
    }

    #[test]
    fn step_matrix_of_long_permutation() {
        let e = step_from_permutation(&[9, 7, 1, 3, 8, 4, 6, 5, 2]).unwrap();
        assert_eq!(e.q(), 6);
        assert_eq!(e.p(), 4);
        assert_eq!(
            e.rows(),
            &[
                vec![0, 0, 0, 2],
                vec![0, 0, 0, 5],
                vec![0, 0, 4, 6],
                vec![1, 3, 8, 0],
                vec![7, 0, 0, 0],
                vec![9, 0, 0, 0],
            ]
        );
        assert_eq!(e.column_face(), op("179|3|48|256"));
        assert_eq!(e.row_face(), op("9|7|138|46|5|2"));
        assert_eq!(e.to_permutation().unwrap(), vec![9, 7, 1, 3, 8, 4, 6, 5, 2]);
    }

    #[test]
    fn tiny_step_matrices() {
        let e = step_from_permutation(&[1]).unwrap();
        assert_eq!(e.rows(), &[vec![1]]);
        assert_eq!(e.to_permutation().unwrap(), vec![1]);
        let e = step_from_permutation(&[2, 1]).unwrap();
        assert_eq!(e.rows(), &[vec![1], vec![2]]);
        let e = step_from_permutation(&[1, 2]).unwrap();
        assert_eq!(e.rows(), &[vec![1, 2]]);
        assert_eq!(e.to_permutation().unwrap(), vec![1, 2]);
        assert!(step_from_permutation(&[1, 1]).is_err());
    }

    #[test]
    fn step_bijection_counts() {
        for m in 1..=7u32 {
            let mut count = 0u64;
            for perm in permutations(m) {
                let e = step_from_permutation(&perm).unwrap();
                assert_eq!(e.to_permutation().unwrap(), perm);
                count += 1;
            }
            assert_eq!(count, factorial(m as u64));
        }
    }

    #[test]
    fn non_step_is_recognized() {
        let step = OrderedMatrix::new(vec![vec![0, 2, 3], vec![1, 5, 0], vec![4, 0, 0]]).unwrap();
        assert!(step.is_step());
        let shifted = step.shift(ShiftKind::Right, 2, 2).unwrap().unwrap();
        assert!(!shifted.is_step());
        assert_eq!(shifted.column_face(), op("14|2|35"));
        assert!(shifted.to_permutation().is_err());
    }

    #[test]
    fn shifts_of_example_step_matrix() {
        let e = OrderedMatrix::new(vec![vec![0, 2, 3], vec![1, 5, 0], vec![4, 0, 0]]).unwrap();
        assert_eq!(e.column_face(), op("14|25|3"));
        assert_eq!(e.row_face(), op("4|15|23"));
        let r = e.shift(ShiftKind::Right, 2, 2).unwrap().unwrap();
        assert_eq!(r.column_face(), op("14|2|35"));
        let d = e.shift(ShiftKind::Down, 2, 2).unwrap().unwrap();
        assert_eq!(d.row_face(), op("45|1|23"));
        // occupied target: no action
        assert!(e.shift(ShiftKind::Down, 1, 2).unwrap().is_none());
        assert!(e.shift(ShiftKind::Right, 9, 1).is_err());
    }

    #[test]
    fn four_configurations_from_example_step_matrix() {
        let e = OrderedMatrix::new(vec![vec![0, 2, 3], vec![1, 5, 0], vec![4, 0, 0]]).unwrap();
        let all = enumerate_configurations(4);
        let from_e: Vec<_> = all
            .iter()
            .filter(|(_, d, _)| d.base == e)
            .collect();
        assert_eq!(from_e.len(), 4);
        let faces: Vec<(OrderedPartition, OrderedPartition)> = from_e
            .iter()
            .map(|(m, _, _)| (m.column_face(), m.row_face()))
            .collect();
        assert!(faces.contains(&(op("14|25|3"), op("4|15|23"))));
        assert!(faces.contains(&(op("14|2|35"), op("4|15|23"))));
        assert!(faces.contains(&(op("14|25|3"), op("45|1|23"))));
        assert!(faces.contains(&(op("14|2|35"), op("45|1|23"))));
    }

    #[test]
    fn configuration_counts_small() {
        assert_eq!(enumerate_configurations(0).len(), 1);
        assert_eq!(enumerate_configurations(1).len(), 2);
        // six step matrices plus the two shifted ones
        assert_eq!(enumerate_configurations(2).len(), 8);
    }

    #[test]
    fn enumeration_matches_brute_force_closure() {
        for n in 0..=3u32 {
            let canonical: Vec<OrderedMatrix> = {
                let mut v: Vec<OrderedMatrix> = enumerate_configurations(n)
                    .into_iter()
                    .map(|(m, _, _)| m)
                    .collect();
                v.sort();
                v
            };
            let closure = configurations_by_closure(n);
            assert_eq!(canonical, closure, "n = {n}");
        }
    }

    #[test]
    fn configurations_closed_under_transpose() {
        for n in 0..=5u32 {
            let set: std::collections::BTreeSet<OrderedMatrix> = enumerate_configurations(n)
                .into_iter()
                .map(|(m, _, _)| m)
                .collect();
            for m in &set {
                assert!(set.contains(&m.transpose()), "n = {n}");
            }
        }
    }

    #[test]
    fn shift_commutation() {
        // D_{i,j+1} R_{i,j} = R_{i+1,j} D_{i,j} wherever both sides act
        for n in 0..=4u32 {
            for (m, _, _) in enumerate_configurations(n) {
                for i in 1..=m.q() {
                    for j in 1..=m.p() {
                        let lhs = m
                            .shift(ShiftKind::Right, i, j)
                            .unwrap()
                            .and_then(|x| x.shift(ShiftKind::Down, i, j + 1).unwrap());
                        let rhs = m
                            .shift(ShiftKind::Down, i, j)
                            .unwrap()
                            .and_then(|x| x.shift(ShiftKind::Right, i + 1, j).unwrap());
                        if let (Some(a), Some(b)) = (lhs, rhs) {
                            assert_eq!(a, b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn csgn_small_cases() {
        // the two configuration matrices over {1,2}
        let row = step_from_permutation(&[1, 2]).unwrap();
        let d = Derivation {
            base: row.clone(),
            right_moves: vec![vec![]],
            down_moves: vec![],
        };
        assert_eq!(csgn(&row, &d), 1);
        let col = step_from_permutation(&[2, 1]).unwrap();
        let d = Derivation {
            base: col.clone(),
            right_moves: vec![],
            down_moves: vec![vec![]],
        };
        assert_eq!(csgn(&col, &d), 1);
    }

    #[test]
    fn incremental_sign_matches_recomputation() {
        // a single down- or right-shift changes csgn by the cut-count rule
        for n in 0..=5u32 {
            for (m, d, s) in enumerate_configurations(n) {
                for i in 1..=m.q() {
                    for j in 1..=m.p() {
                        let v = m.rows()[i - 1][j - 1];
                        if v == 0 {
                            continue;
                        }
                        if let Some(next) = m.shift(ShiftKind::Down, i, j).unwrap() {
                            let mut d2 = d.clone();
                            while d2.down_moves.len() < i {
                                d2.down_moves.push(Vec::new());
                            }
                            d2.down_moves[i - 1].push(v);
                            let s2 = csgn(&next, &d2);
                            let old_row_i: Vec<u32> = m.rows()[i - 1]
                                .iter()
                                .copied()
                                .filter(|&x| x > 0)
                                .collect();
                            let new_row_below: Vec<u32> = next.rows()[i]
                                .iter()
                                .copied()
                                .filter(|&x| x > 0)
                                .collect();
                            let cut = new_row_below.iter().filter(|&&x| x > v).count()
                                + old_row_i.iter().filter(|&&x| x < v).count();
                            let expect = if cut % 2 == 0 { -s } else { s };
                            assert_eq!(s2, expect, "down shift at ({i},{j}) of {m:?}");
                        }
                        if let Some(next) = m.shift(ShiftKind::Right, i, j).unwrap() {
                            let mut d2 = d.clone();
                            while d2.right_moves.len() < j {
                                d2.right_moves.push(Vec::new());
                            }
                            d2.right_moves[j - 1].push(v);
                            let s2 = csgn(&next, &d2);
                            let old_col_j: Vec<u32> = (0..m.q())
                                .map(|r| m.rows()[r][j - 1])
                                .filter(|&x| x > 0)
                                .collect();
                            let new_col_right: Vec<u32> = (0..next.q())
                                .map(|r| next.rows()[r][j])
                                .filter(|&x| x > 0)
                                .collect();
                            let cut = old_col_j.iter().filter(|&&x| x > v).count()
                                + new_col_right.iter().filter(|&&x| x < v).count();
                            let expect = if cut % 2 == 0 { -s } else { s };
                            assert_eq!(s2, expect, "right shift at ({i},{j}) of {m:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn edge_matrix_sign_is_shuffle_sign() {
        use crate::partition::shuffle_sign;
        for n in 1..=7u32 {
            for (m, d, s) in enumerate_configurations(n - 1) {
                if !m.is_edge_matrix() {
                    continue;
                }
                // column 1 = {1, b_2..b_q}, row 1 = {1, a_2..a_p}
                let bs: Vec<u32> = (1..m.q()).map(|i| m.rows()[i][0]).collect();
                let asq: Vec<u32> = (1..m.p()).map(|j| m.rows()[0][j]).collect();
                let mut bs_sorted = bs.clone();
                bs_sorted.sort_unstable();
                assert_eq!(csgn(&m, &d), shuffle_sign(&bs_sorted, &asq));
                assert_eq!(s, shuffle_sign(&bs_sorted, &asq));
            }
        }
    }

    #[test]
    fn faces_of_enumerated_matrices_are_valid() {
        for n in 0..=4u32 {
            for (m, _, _) in enumerate_configurations(n) {
                assert_eq!(m.column_face().n(), n + 1);
                assert_eq!(m.row_face().n(), n + 1);
            }
        }
    }
}
