//! Independent brute-force skeletons for cross-checking, desk scale only.
//!
//! Vertices come from one LP per point (V input) or from exhaustive basis
//! enumeration (H input); edges from the pairwise LP
//! `max δ s.t. c·v = c·w >= c·u + δ, -1 <= c <= 1`, which certifies an edge
//! iff `δ* > 0`. None of this shares code with the oracle-driven skeleton
//! path, which is the point.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, format_vector, sub, zeros, Scalar, Vector};
use crate::linalg::{affine_rank, solve_square};
use crate::lp::{feasible_point, solve_lp, LpProblem, LpStatus, Sense};
use crate::oracle::{membership, VPolytopeOracle};
use crate::par::indexed_map;
use crate::skeleton::SkeletonGraph;

/// An explicitly represented bounded polytope.
#[derive(Clone, Debug)]
pub enum ExplicitPolytope {
    Points(Vec<Vector>),
    Inequalities { a: Vec<Vector>, b: Vector },
}

/// Extreme points, lexicographically sorted.
pub fn bf_vertices(p: &ExplicitPolytope) -> Result<Vec<Vector>> {
    match p {
        ExplicitPolytope::Points(points) => bf_vertices_from_points(points),
        ExplicitPolytope::Inequalities { a, b } => bf_vertices_from_rows(a, b),
    }
}

fn bf_vertices_from_points(points: &[Vector]) -> Result<Vec<Vector>> {
    let first = points.first().ok_or(Error::EmptyInput("point set"))?;
    let d = first.len();
    for p in points {
        crate::exact::check_dim(p, d)?;
    }
    // keep exactly the points not in the convex hull of the others
    let keep = indexed_map(points.len(), |i| {
        let others: Vec<&Vector> = points
            .iter()
            .enumerate()
            .filter(|(j, q)| *j != i && **q != points[i])
            .map(|(_, q)| q)
            .collect();
        if others.is_empty() {
            return true;
        }
        let mut rows = Vec::with_capacity(d + 1);
        for r in 0..d {
            let lhs: Vector = others.iter().map(|q| q[r].clone()).collect();
            rows.push((lhs, points[i][r].clone()));
        }
        rows.push((vec![Scalar::one(); others.len()], Scalar::one()));
        feasible_point(others.len(), rows).is_err()
    });
    let set: BTreeSet<Vector> = points
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p.clone())
        .collect();
    Ok(set.into_iter().collect())
}

fn bf_vertices_from_rows(a: &[Vector], b: &[Scalar]) -> Result<Vec<Vector>> {
    let first = a.first().ok_or(Error::EmptyInput("inequality system"))?;
    let d = first.len();
    if a.len() != b.len() {
        return Err(Error::MalformedLp("row/rhs count mismatch".into()));
    }

    // bounded iff every +-coordinate LP is bounded
    for j in 0..d {
        for sign in [1i64, -1] {
            let mut obj = zeros(d);
            obj[j] = Scalar::from_integer(sign.into());
            let r = solve_lp(&LpProblem {
                constraint_matrix: a.to_vec(),
                rhs: b.to_vec(),
                objective: obj,
                sense: Sense::Maximize,
            })?;
            match r.status {
                LpStatus::Unbounded => return Err(Error::Unbounded),
                LpStatus::Infeasible => return Err(Error::EmptyInput("inequality system")),
                LpStatus::Optimal => {}
            }
        }
    }

    // all d-subsets of rows; feasible solutions of the square systems
    let subsets = k_subsets(a.len(), d);
    let hits = indexed_map(subsets.len(), |s| -> Option<Vector> {
        let subset = &subsets[s];
        let m: Vec<Vector> = subset.iter().map(|&i| a[i].clone()).collect();
        let rhs: Vector = subset.iter().map(|&i| b[i].clone()).collect();
        let x = solve_square(m, rhs)?;
        let feasible = a.iter().zip(b).all(|(row, bi)| dot(row, &x) <= *bi);
        feasible.then_some(x)
    });
    let set: BTreeSet<Vector> = hits.into_iter().flatten().collect();
    if set.is_empty() {
        return Err(Error::EmptyInput("no basic feasible solution"));
    }
    Ok(set.into_iter().collect())
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Edge test between vertices `i` and `j` of an extreme point list:
/// `max δ s.t. c·(v_i - v_j) = 0, c·(u - v_i) + δ <= 0 for other u,
/// -1 <= c <= 1` has `δ* > 0` iff `{v_i, v_j}` is an edge.
pub fn certify_edge(vertices: &[Vector], i: usize, j: usize) -> Result<bool> {
    let d = vertices[i].len();
    // variables (c, δ)
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    let diff = sub(&vertices[i], &vertices[j]);
    let mut row: Vector = diff.clone();
    row.push(Scalar::zero());
    rows.push(row);
    rhs.push(Scalar::zero());
    let mut row: Vector = diff.iter().map(|x| -x).collect();
    row.push(Scalar::zero());
    rows.push(row);
    rhs.push(Scalar::zero());
    for (u, vertex) in vertices.iter().enumerate() {
        if u == i || u == j {
            continue;
        }
        let mut row: Vector = sub(vertex, &vertices[i]);
        row.push(Scalar::one());
        rows.push(row);
        rhs.push(Scalar::zero());
    }
    for r in 0..d {
        for sign in [1i64, -1] {
            let mut row = zeros(d + 1);
            row[r] = Scalar::from_integer(sign.into());
            rows.push(row);
            rhs.push(Scalar::one());
        }
    }
    let mut objective = zeros(d + 1);
    objective[d] = Scalar::one();
    let result = solve_lp(&LpProblem {
        constraint_matrix: rows,
        rhs,
        objective,
        sense: Sense::Maximize,
    })?;
    match result.status {
        LpStatus::Optimal => Ok(result.value.expect("optimal value").is_positive()),
        _ => Err(Error::Invalid("edge LP must be feasible and bounded".into())),
    }
}

/// All edges among an extreme point list, as index pairs `(i, j)`, `i < j`.
pub fn bf_edges(vertices: &[Vector]) -> Result<Vec<(usize, usize)>> {
    let n = vertices.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let verdicts = indexed_map(pairs.len(), |p| certify_edge(vertices, pairs[p].0, pairs[p].1));
    let mut edges = Vec::new();
    for ((i, j), verdict) in pairs.into_iter().zip(verdicts) {
        if verdict? {
            edges.push((i, j));
        }
    }
    Ok(edges)
}

/// Brute-force skeleton of an explicit polytope.
pub fn bf_skeleton(p: &ExplicitPolytope) -> Result<SkeletonGraph> {
    let vertices = bf_vertices(p)?;
    let edges = bf_edges(&vertices)?;
    let dimension = affine_rank(&vertices)?;
    Ok(SkeletonGraph {
        vertices,
        edges,
        dimension,
    })
}

/// Outcome of comparing a computed skeleton against the brute-force one.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub vertices_match: bool,
    pub edges_match: bool,
    pub first_divergence: Option<String>,
}

impl CrossCheckReport {
    pub fn ok(&self) -> bool {
        self.vertices_match && self.edges_match
    }
}

impl std::fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            write!(f, "OK")
        } else {
            write!(
                f,
                "MISMATCH: {}",
                self.first_divergence.as_deref().unwrap_or("unknown")
            )
        }
    }
}

/// Set-equality check of `graph` against the brute-force skeleton of `p`,
/// naming the first divergence. Extra non-vertex points are flagged with
/// their convex-combination certificate.
pub fn cross_check(p: &ExplicitPolytope, graph: &SkeletonGraph) -> Result<CrossCheckReport> {
    let reference = bf_skeleton(p)?;

    let got: BTreeSet<&Vector> = graph.vertices.iter().collect();
    let want: BTreeSet<&Vector> = reference.vertices.iter().collect();
    let mut first_divergence = None;
    let vertices_match = got == want;
    if !vertices_match {
        if let Some(missing) = want.difference(&got).next() {
            first_divergence = Some(format!("missing vertex {}", format_vector(missing)));
        } else if let Some(extra) = got.difference(&want).next() {
            let mut message = format!("extra point {}", format_vector(extra));
            // flag a non-vertex with its convex combination over the real ones
            let hull = VPolytopeOracle::new(reference.vertices.clone())?;
            if let Ok(result) = membership(&hull, extra) {
                if let Some(cert) = result.inside_certificate {
                    let parts: Vec<String> = cert
                        .iter()
                        .map(|(v, w)| {
                            format!("{} * {}", crate::exact::format_scalar(w), format_vector(v))
                        })
                        .collect();
                    message = format!("{message} = {}", parts.join(" + "));
                }
            }
            first_divergence = Some(message);
        }
    }

    let edge_pair = |g: &SkeletonGraph, (i, j): (usize, usize)| {
        let (a, b) = (&g.vertices[i], &g.vertices[j]);
        if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    };
    let got_edges: BTreeSet<(Vector, Vector)> =
        graph.edges.iter().map(|&e| edge_pair(graph, e)).collect();
    let want_edges: BTreeSet<(Vector, Vector)> = reference
        .edges
        .iter()
        .map(|&e| edge_pair(&reference, e))
        .collect();
    let edges_match = got_edges == want_edges;
    if edges_match && vertices_match {
        return Ok(CrossCheckReport {
            vertices_match,
            edges_match,
            first_divergence: None,
        });
    }
    if first_divergence.is_none() {
        if let Some((a, b)) = want_edges.difference(&got_edges).next() {
            first_divergence = Some(format!(
                "missing edge {} -- {}",
                format_vector(a),
                format_vector(b)
            ));
        } else if let Some((a, b)) = got_edges.difference(&want_edges).next() {
            first_divergence = Some(format!(
                "extra edge {} -- {}",
                format_vector(a),
                format_vector(b)
            ));
        }
    }
    Ok(CrossCheckReport {
        vertices_match,
        edges_match,
        first_divergence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, vec_i64};

    #[test]
    fn interior_point_dropped() {
        let p = ExplicitPolytope::Points(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[1, 0]),
            vec_i64(&[0, 1]),
            vec![ratio(1, 4), ratio(1, 4)],
        ]);
        let v = bf_vertices(&p).unwrap();
        assert_eq!(v, vec![vec_i64(&[0, 0]), vec_i64(&[0, 1]), vec_i64(&[1, 0])]);
    }

    #[test]
    fn h_square_has_four_vertices() {
        let p = ExplicitPolytope::Inequalities {
            a: vec![
                vec_i64(&[1, 0]),
                vec_i64(&[0, 1]),
                vec_i64(&[-1, 0]),
                vec_i64(&[0, -1]),
            ],
            b: vec_i64(&[1, 1, 0, 0]),
        };
        let v = bf_vertices(&p).unwrap();
        assert_eq!(v.len(), 4);
        let g = bf_skeleton(&p).unwrap();
        assert_eq!(g.edges.len(), 4);
        // diagonals excluded
        assert!(!g.edges.contains(&(0, 3)));
    }

    #[test]
    fn triangle_all_pairs_are_edges() {
        let vertices = vec![vec_i64(&[0, 0]), vec_i64(&[2, 0]), vec_i64(&[0, 3])];
        let e = bf_edges(&vertices).unwrap();
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn cube_has_twelve_edges() {
        let mut corners = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    corners.push(vec_i64(&[x, y, z]));
                }
            }
        }
        let e = bf_edges(&corners).unwrap();
        assert_eq!(e.len(), 12);
    }

    #[test]
    fn unbounded_h_input_detected() {
        let p = ExplicitPolytope::Inequalities {
            a: vec![vec_i64(&[1, 0]), vec_i64(&[0, 1])],
            b: vec_i64(&[1, 1]),
        };
        assert!(matches!(bf_vertices(&p), Err(Error::Unbounded)));
    }

    #[test]
    fn cross_check_reports() {
        let p = ExplicitPolytope::Points(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[1, 0]),
            vec_i64(&[0, 1]),
            vec_i64(&[1, 1]),
        ]);
        let good = bf_skeleton(&p).unwrap();
        let report = cross_check(&p, &good).unwrap();
        assert!(report.ok());
        assert_eq!(report.to_string(), "OK");

        let mut missing_edge = good.clone();
        missing_edge.edges.pop();
        let report = cross_check(&p, &missing_edge).unwrap();
        assert!(!report.ok());
        assert!(report.first_divergence.unwrap().contains("missing edge"));

        let mut extra_point = good.clone();
        extra_point.vertices.push(vec![ratio(1, 2), ratio(1, 2)]);
        let report = cross_check(&p, &extra_point).unwrap();
        assert!(!report.ok());
        let msg = report.first_divergence.unwrap();
        assert!(msg.contains("extra point"), "{msg}");
        assert!(msg.contains('*'), "certificate missing from: {msg}");
    }

    #[test]
    fn vertex_set_invariant_under_permutation_and_interior_points() {
        let base = vec![
            vec_i64(&[0, 0]),
            vec_i64(&[3, 0]),
            vec_i64(&[0, 3]),
            vec_i64(&[3, 3]),
        ];
        let reference = bf_vertices(&ExplicitPolytope::Points(base.clone())).unwrap();
        let mut shuffled = base.clone();
        shuffled.reverse();
        shuffled.push(vec_i64(&[1, 1]));
        shuffled.push(vec_i64(&[2, 2]));
        let with_noise = bf_vertices(&ExplicitPolytope::Points(shuffled)).unwrap();
        assert_eq!(reference, with_noise);
    }
}
