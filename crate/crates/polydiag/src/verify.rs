//! Named verification suites over the whole library, used by the
//! `verify` subcommand.  Each check returns pass/fail; ranges scale
//! with the requested bound where enumeration would otherwise explode.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::ainfty::{
    quadratic_relations, relation_residual, tensor_operations, tensor_square_model, GradedModel,
    Variance,
};
use crate::diagonal::{diagonal_top, verify_coderivation};
use crate::matrices::{
    configurations_by_closure, csgn, enumerate_configurations, permutations, step_from_permutation,
    Derivation, OrderedMatrix, ShiftKind,
};
use crate::partition::{shuffle_sign, Chain, OrderedPartition};
use crate::permcalc::{
    apply_coface_word, box_op, codegeneracy_beta, coface_delta, delta_rs_sub,
    faceword_factorizations, gamma, in_family, project_phi, quadratic_condition, rho, vertex_h,
};
use crate::trees::{
    assoc_boundary, assoc_cell, assoc_diagonal_projected, assoc_direct_as_tensor,
    boundary_projected_assoc, boundary_projected_multi, fibers, is_degenerate,
    is_degenerate_by_word, multi_boundary, multi_collapses, multi_diagonal, multi_to_assoc,
    partition_to_faceword, project_multi, verify_assoc_chain_map, verify_multi_chain_map,
    Projection,
};

/// Outcome of one named suite.
pub struct CheckResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        ok,
        detail: detail.into(),
    }
}

/// Runs every suite with enumerations bounded by `max_n`.
pub fn run_all(max_n: u32) -> Vec<CheckResult> {
    let n_small = max_n.min(5);
    let mut out = Vec::new();

    // sign bookkeeping on partitions
    {
        let mut ok = true;
        for n in 1..=n_small {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                let s = u.signs();
                let p = u.num_blocks();
                let expect = if (p - 1) * p.saturating_sub(2) / 2 % 2 == 0 {
                    1
                } else {
                    -1
                };
                ok &= s.sgn2 * s.sgn1 == expect;
                ok &= s.psgn * s.psgn == 1 && s.rsgn * s.rsgn == 1;
            }
        }
        out.push(check("partition-signs", ok, format!("n <= {n_small}")));
    }

    // boundary: square zero, term counts, unit coefficients
    {
        let mut ok = true;
        for n in 1..=max_n.min(7) {
            let top = Chain::singleton(OrderedPartition::top(n));
            ok &= top.boundary().boundary().is_zero();
            if n >= 2 {
                let b = OrderedPartition::top(n).boundary();
                ok &= b.len() as u64 == (1u64 << n) - 2;
                ok &= b.iter().all(|(_, &c)| c.abs() == 1);
            }
        }
        out.push(check("boundary-squares-to-zero", ok, format!("n <= {}", max_n.min(7))));
    }

    // parse/render round trip
    {
        let mut ok = true;
        for n in 1..=n_small {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                ok &= OrderedPartition::parse(&u.to_string()).as_ref() == Ok(&u);
            }
        }
        out.push(check("parse-render-round-trip", ok, format!("n <= {n_small}")));
    }

    // step matrices: bijection with permutations
    {
        let mut ok = true;
        for m in 1..=max_n.min(7) {
            let mut count = 0u64;
            for perm in permutations(m) {
                let e = step_from_permutation(&perm).unwrap();
                ok &= e.to_permutation().as_ref() == Ok(&perm);
                count += 1;
            }
            ok &= count == (1..=m as u64).product::<u64>();
        }
        out.push(check("step-permutation-bijection", ok, format!("m <= {}", max_n.min(7))));
    }

    // configuration matrices: transpose closure, shift commutation,
    // incremental signs, valid faces
    {
        let mut ok = true;
        for n in 0..=n_small.min(4) {
            let all = enumerate_configurations(n);
            let set: BTreeSet<OrderedMatrix> = all.iter().map(|(m, _, _)| m.clone()).collect();
            for (m, d, s) in &all {
                ok &= set.contains(&m.transpose());
                ok &= m.column_face().n() == n + 1 && m.row_face().n() == n + 1;
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
                            ok &= a == b;
                        }
                        if let Some(next) = m.shift(ShiftKind::Down, i, j).unwrap() {
                            let v = m.rows()[i - 1][j - 1];
                            let d2 = Derivation {
                                base: d.base.clone(),
                                right_moves: d.right_moves.clone(),
                                down_moves: d.down_moves.clone(),
                            };
                            let s2 = csgn(&next, &d2);
                            let old_row: Vec<u32> =
                                m.rows()[i - 1].iter().copied().filter(|&x| x > 0).collect();
                            let new_below: Vec<u32> =
                                next.rows()[i].iter().copied().filter(|&x| x > 0).collect();
                            let cut = new_below.iter().filter(|&&x| x > v).count()
                                + old_row.iter().filter(|&&x| x < v).count();
                            let expect = if cut % 2 == 0 { -s } else { *s };
                            ok &= s2 == expect;
                        }
                    }
                }
            }
        }
        out.push(check("configuration-matrices", ok, format!("n <= {}", n_small.min(4))));
    }

    // canonical enumeration equals the bounded shift-word closure
    {
        let mut ok = true;
        for n in 0..=max_n.min(3) {
            let mut canonical: Vec<OrderedMatrix> = enumerate_configurations(n)
                .into_iter()
                .map(|(m, _, _)| m)
                .collect();
            canonical.sort();
            ok &= canonical == configurations_by_closure(n);
        }
        out.push(check("closure-oracle", ok, format!("n <= {}", max_n.min(3))));
    }

    // edge-matrix sign shortcut
    {
        let mut ok = true;
        for n in 1..=max_n.min(7) {
            for (m, _, s) in enumerate_configurations(n - 1) {
                if !m.is_edge_matrix() {
                    continue;
                }
                let bs: Vec<u32> = (1..m.q()).map(|i| m.rows()[i][0]).collect();
                let asq: Vec<u32> = (1..m.p()).map(|j| m.rows()[0][j]).collect();
                ok &= s == shuffle_sign(&bs, &asq);
            }
        }
        out.push(check("edge-matrix-signs", ok, format!("ground <= {}", max_n.min(7))));
    }

    // diagonal structure: unit coefficients, transpose closure,
    // primitives, degrees
    {
        let mut ok = true;
        for n in 0..=n_small {
            let d = diagonal_top(n);
            let keys: BTreeSet<_> = d.iter().map(|(k, _)| k.clone()).collect();
            for ((l, r), &c) in d.iter() {
                ok &= c.abs() == 1;
                ok &= l.dim() + r.dim() == n;
                let _ = (l, r);
            }
            for (m, _, _) in enumerate_configurations(n) {
                let t = m.transpose();
                ok &= keys.contains(&(t.column_face(), t.row_face()));
            }
            let top = OrderedPartition::top(n + 1);
            let id = OrderedPartition::vertex(&(1..=n + 1).collect::<Vec<_>>()).unwrap();
            let rev = OrderedPartition::vertex(&(1..=n + 1).rev().collect::<Vec<_>>()).unwrap();
            ok &= d.coeff(&id, &top) == 1;
            ok &= d.coeff(&top, &rev) == 1;
            ok &= d.iter().filter(|((l, _), _)| l.is_vertex()).count() == 1;
            ok &= d.iter().filter(|((_, r), _)| r.is_vertex()).count() == 1;
        }
        out.push(check("diagonal-structure", ok, format!("n <= {n_small}")));
    }

    // the boundary is a coderivation
    {
        let mut ok = true;
        for n in 1..=max_n.min(6) {
            ok &= verify_coderivation(n).ok;
        }
        out.push(check("coderivation", ok, format!("n <= {}", max_n.min(6))));
    }

    // trees: face word round trip, degeneracy criteria, catalan count
    {
        let mut ok = true;
        for n in 1..=max_n.min(6) {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                ok &= partition_to_faceword(&u).to_partition().as_ref() == Ok(&u);
                for target in [Projection::Assoc, Projection::Multi] {
                    ok &= is_degenerate(&u, target) == is_degenerate_by_word(&u, target);
                }
                if is_degenerate(&u, Projection::Multi) {
                    ok &= multi_collapses(&u);
                }
            }
        }
        fn binary_trees(leaves: u64) -> u64 {
            if leaves == 1 {
                return 1;
            }
            (1..leaves)
                .map(|k| binary_trees(k) * binary_trees(leaves - k))
                .sum()
        }
        for n in 1..=n_small {
            let vertex_classes = fibers(n, Projection::Assoc)
                .iter()
                .filter(|class| class.iter().any(|u| u.is_vertex()))
                .count() as u64;
            ok &= vertex_classes == binary_trees(n as u64 + 1);
        }
        out.push(check("tree-correspondences", ok, format!("n <= {}", max_n.min(6))));
    }

    // two diagonal routes on the associahedron
    {
        let mut ok = true;
        for m in 0..=max_n.min(5) {
            ok &= assoc_direct_as_tensor(m) == assoc_diagonal_projected(m);
        }
        out.push(check("assoc-two-routes", ok, format!("index <= {}", max_n.min(5))));
    }

    // chain maps and boundary squares downstream
    {
        let mut ok = true;
        for m in 1..=max_n.min(5) {
            ok &= verify_assoc_chain_map(m);
            ok &= verify_multi_chain_map(m);
            let mut second = BTreeMap::new();
            for (t, &c) in boundary_projected_assoc(m).iter() {
                for (tb, &cb) in assoc_boundary(t).iter() {
                    *second.entry(tb.clone()).or_insert(0i64) += c * cb;
                }
            }
            second.retain(|_, v| *v != 0);
            ok &= second.is_empty();
            let mut second = BTreeMap::new();
            for (t, &c) in boundary_projected_multi(m - 1).iter() {
                for (tb, &cb) in multi_boundary(m, t).iter() {
                    *second.entry(tb.clone()).or_insert(0i64) += c * cb;
                }
            }
            second.retain(|_, v| *v != 0);
            ok &= second.is_empty();
        }
        out.push(check("projected-chain-maps", ok, format!("index <= {}", max_n.min(5))));
    }

    // factorization of the Tonks projection through the multiplihedron
    {
        let mut ok = true;
        for m in 0..=max_n.min(5) {
            ok &= multi_to_assoc(m + 1, &multi_diagonal(m)) == assoc_diagonal_projected(m);
        }
        for n in 2..=n_small {
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                if multi_collapses(&u) {
                    continue;
                }
                ok &= assoc_cell(&project_multi(&u).cell.rep) == assoc_cell(&u);
            }
        }
        out.push(check("multi-refines-assoc", ok, format!("index <= {}", max_n.min(5))));
    }

    // vertex calculus: cubical fixed points, coassociativity, sections
    {
        let mut ok = true;
        fn cubical(n: u32) -> Vec<Vec<u32>> {
            if n == 1 {
                return vec![vec![1]];
            }
            let mut out = Vec::new();
            for v in cubical(n - 1) {
                let mut right = v.clone();
                right.push(n);
                let mut left = vec![n];
                left.extend(v);
                out.push(right);
                out.push(left);
            }
            out
        }
        for n in 1..=max_n.min(6) {
            let cubicals = cubical(n);
            for v in permutations(n) {
                ok &= (gamma(&rho(&v)) == v) == cubicals.contains(&v);
            }
        }
        for n in 3..=n_small {
            let ground: Vec<u32> = (1..=n).collect();
            for u in OrderedPartition::enumerate(n, None).unwrap() {
                for r in 1..=n as usize {
                    for s in 1..=n as usize {
                        for t in 1..=n as usize {
                            if r + s + t != n as usize + 2 {
                                continue;
                            }
                            let (x1, y1, _) = delta_rs_sub(u.blocks(), &ground, r + s - 1, t);
                            let (a1, b1, _) = delta_rs_sub(&x1.blocks, &x1_ground(&x1), r, s);
                            let (x2, y2, _) = delta_rs_sub(u.blocks(), &ground, r, s + t - 1);
                            let (b2, c2, _) = delta_rs_sub(&y2.blocks, &x1_ground(&y2), s, t);
                            ok &= a1 == x2 && b1 == b2 && y1 == c2;
                        }
                    }
                }
            }
        }
        out.push(check("vertex-calculus-projections", ok, format!("n <= {}", max_n.min(6))));
    }

    // embedding and unshuffle sections, coface/codegeneracy composite
    {
        let mut ok = true;
        for n in 2..=n_small {
            for u in OrderedPartition::enumerate(n, Some(2)).unwrap() {
                let (a, b) = (u.blocks()[0].clone(), u.blocks()[1].clone());
                for v in permutations(n) {
                    let va: Vec<u32> = v.iter().copied().filter(|x| a.contains(x)).collect();
                    if v[..a.len()] == va[..] {
                        let (x, y) = project_phi(&a, &b, &v);
                        ok &= vertex_h(&a, &b, &x, &y) == v;
                    }
                }
                for x in permutations(n - 1) {
                    let up = coface_delta(&a, &b, &x).unwrap();
                    let down = codegeneracy_beta(&a, &b, &up).unwrap();
                    ok &= down == gamma(&rho(&x));
                }
            }
        }
        out.push(check("coface-codegeneracy-sections", ok, format!("n <= {n_small}")));
    }

    // structure relations: brackets and factorizations at the level of
    // the carved faces
    {
        let mut ok = true;
        for n in 3..=max_n.min(6) {
            for u in OrderedPartition::enumerate(n, Some(3)).unwrap() {
                let (x, y, z) = (
                    u.blocks()[0].clone(),
                    u.blocks()[1].clone(),
                    u.blocks()[2].clone(),
                );
                let yz: Vec<u32> = {
                    let mut v = [y.clone(), z.clone()].concat();
                    v.sort_unstable();
                    v
                };
                let inner = box_op(&x, &[y.clone(), z.clone()]).unwrap();
                ok &= quadratic_condition(&x, &yz, &inner[0], &inner[1]).unwrap() == Some(u.clone());
            }
        }
        // printed factorization words carry the displayed coface pairs
        let (w1, w2) =
            faceword_factorizations(&OrderedPartition::parse("12|345|678").unwrap()).unwrap();
        ok &= w1
            == vec![
                (vec![1, 2, 3, 4], vec![5, 6, 7]),
                (vec![1, 2], vec![3, 4, 5, 6, 7, 8]),
            ];
        ok &= w2
            == vec![
                (vec![1, 2], vec![3, 4, 5, 6, 7]),
                (vec![1, 2, 3, 4, 5], vec![6, 7, 8]),
            ];
        // and every coface in them is quadratically admissible
        for w in [&w1, &w2] {
            let (a, b) = (&w[1].0, &w[1].1);
            let (c, d) = (&w[0].0, &w[0].1);
            let n = (a.len() + b.len()) as u32 - 1;
            ok &= in_family(a.len() as u32, 1, n, c, d)
                || in_family(1, b.len() as u32, n, c, d)
                || in_family(b.len() as u32, 1, n, c, d)
                || in_family(1, a.len() as u32, n, c, d);
        }
        let _ = apply_coface_word(&w1, &permutations(6)[0]).unwrap();
        out.push(check("structure-relations", ok, format!("n <= {}", max_n.min(6))));
    }

    // tensor operations and the numeric model
    {
        let mut ok = true;
        for n in 2..=max_n.min(4) {
            for t in tensor_operations(n, Variance::Coalgebra) {
                ok &= t.left.target_width() == n && t.right.target_width() == n;
                ok &= t.left.degree() + t.right.degree() == n as i64 - 2;
            }
        }
        for n in 1..=max_n.min(8) {
            ok &= quadratic_relations(n, Variance::Algebra).len() as u32 == n * (n + 1) / 2;
        }
        let interval = GradedModel::interval();
        let square = tensor_square_model(&interval, 4).unwrap();
        for n in 1..=3u32 {
            ok &= relation_residual(n, Variance::Coalgebra, &square)
                .unwrap()
                .is_zero();
        }
        out.push(check("tensor-operations", ok, "interval model, n <= 3"));
    }

    out
}

fn x1_ground(f: &crate::permcalc::SubFace) -> Vec<u32> {
    let mut g: Vec<u32> = f.blocks.iter().flatten().copied().collect();
    g.sort_unstable();
    g
}
