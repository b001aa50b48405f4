//! Edge-skeleton computation: breadth-first traversal over polytope
//! vertices, shooting rays along the candidate directions and certifying
//! true neighbors with the extremal-ray filter.
//!
//! At each vertex `v` one ray per direction produces a candidate set that is
//! guaranteed to contain every neighbor of `v`. A candidate `w` is a real
//! neighbor iff it lies on an extremal ray of the cone spanned by the
//! candidates; the test runs in an affine chart `x -> x' / (a·x')` for a
//! separating functional `a`, which preserves the extreme-ray structure
//! without any irrational rotation.

use std::collections::BTreeSet;

use num_traits::One;

use crate::direction::DirectionSet;
use crate::error::{Error, Result};
use crate::exact::{dot, scale, sub, zeros, Scalar, Vector};
use crate::linalg::affine_rank;
use crate::lp::{feasible_point, solve_lp, LpProblem, LpStatus, Sense};
use crate::oracle::{initial_vertex, ray_shoot_with, Oracle, RayShootConfig};
use crate::par::indexed_map;

/// Candidates found around one base vertex: `(direction index, hit point)`
/// for every direction whose ray does not exit immediately.
#[derive(Clone, Debug)]
pub struct NeighborCandidateSet {
    pub base_vertex: Vector,
    pub candidates: Vec<(usize, Vector)>,
}

/// The output graph: lexicographically sorted vertices, edges as index pairs
/// `(i, j)` with `i < j`, and the affine dimension of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonGraph {
    pub vertices: Vec<Vector>,
    pub edges: Vec<(usize, usize)>,
    pub dimension: usize,
}

impl SkeletonGraph {
    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == i || *b == i)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == i {
                    b
                } else if b == i {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// One ray per direction from `v`; hits equal to `v` are discarded.
/// The per-direction rays are independent and fan out in parallel; results
/// merge in direction-index order, so the output is deterministic.
pub fn candidate_neighbors(
    oracle: &dyn Oracle,
    v: &Vector,
    directions: &DirectionSet,
) -> Result<NeighborCandidateSet> {
    let config = RayShootConfig {
        assume_member: true,
        ..RayShootConfig::default()
    };
    let dirs = directions.directions();
    let hits = indexed_map(dirs.len(), |i| ray_shoot_with(oracle, v, &dirs[i], &config));
    let mut candidates = Vec::new();
    for (i, hit) in hits.into_iter().enumerate() {
        let w = hit?;
        if w != *v {
            candidates.push((i, w));
        }
    }
    Ok(NeighborCandidateSet {
        base_vertex: v.clone(),
        candidates,
    })
}

/// A vector `a` with `a·(q - v) >= 1` for every candidate `q`. Exists
/// because `v` is a vertex, so the candidate cone is pointed; infeasibility
/// therefore signals an internal inconsistency.
pub fn separating_functional(v: &Vector, candidates: &NeighborCandidateSet) -> Result<Vector> {
    if candidates.candidates.is_empty() {
        return Err(Error::EmptyInput("candidate set"));
    }
    let d = v.len();
    let mut rows = Vec::with_capacity(candidates.candidates.len());
    let mut rhs = Vec::with_capacity(candidates.candidates.len());
    let mut objective = zeros(d);
    for (_, q) in &candidates.candidates {
        let u = sub(q, v);
        objective = crate::exact::add(&objective, &u);
        rows.push(u.iter().map(|x| -x).collect());
        rhs.push(-Scalar::one());
    }
    let result = solve_lp(&LpProblem {
        constraint_matrix: rows,
        rhs,
        objective,
        sense: Sense::Minimize,
    })?;
    match result.status {
        LpStatus::Optimal => Ok(result.point.expect("optimal LP has a point")),
        LpStatus::Infeasible => Err(Error::NotAVertex),
        LpStatus::Unbounded => Err(Error::Invalid(
            "separating LP unbounded below; candidate set corrupt".into(),
        )),
    }
}

/// Keeps exactly the candidates lying on extremal rays of the candidate
/// cone: map each `q` to `(q - v) / (a·(q - v))` on the section `{a·x = 1}`
/// and keep those whose image is an extreme point of the image set.
pub fn filter_neighbors(v: &Vector, candidates: &NeighborCandidateSet) -> Result<Vec<Vector>> {
    match candidates.candidates.len() {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![candidates.candidates[0].1.clone()]),
        _ => {}
    }
    let a = separating_functional(v, candidates)?;
    let d = v.len();

    // Chart images; exact duplicates (candidates on one ray) merge, keeping
    // the farthest hit. Distinct canonical directions give distinct rays, so
    // duplicates cannot arise from a canonicalized direction set, but merged
    // input is handled anyway.
    let mut images: Vec<(Vector, usize, Scalar)> = Vec::new();
    for (idx, (_, q)) in candidates.candidates.iter().enumerate() {
        let u = sub(q, v);
        let s = dot(&a, &u);
        debug_assert!(s >= Scalar::one());
        let image = scale(&u, &(Scalar::one() / &s));
        match images.iter_mut().find(|(img, _, _)| *img == image) {
            Some(entry) => {
                if s > entry.2 {
                    entry.1 = idx;
                    entry.2 = s;
                }
            }
            None => images.push((image, idx, s)),
        }
    }

    if images.len() == 1 {
        let keeper = images[0].1;
        return Ok(vec![candidates.candidates[keeper].1.clone()]);
    }

    // Extremality LPs are independent; fan out.
    let keep = indexed_map(images.len(), |i| -> Result<bool> {
        let (target, _, _) = &images[i];
        let others: Vec<&Vector> = images
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (img, _, _))| img)
            .collect();
        let mut rows = Vec::with_capacity(d + 1);
        for r in 0..d {
            let lhs: Vector = others.iter().map(|z| z[r].clone()).collect();
            rows.push((lhs, target[r].clone()));
        }
        rows.push((vec![Scalar::one(); others.len()], Scalar::one()));
        // extreme iff the convex-combination system is infeasible
        Ok(feasible_point(others.len(), rows).is_err())
    });

    let mut neighbors = Vec::new();
    for (flag, (_, idx, _)) in keep.into_iter().zip(&images) {
        if flag? {
            neighbors.push(candidates.candidates[*idx].1.clone());
        }
    }
    Ok(neighbors)
}

/// Full edge-skeleton of the polytope behind `oracle`, assuming `directions`
/// contains a positive multiple of every edge direction. Vertices are
/// processed in lexicographic order and each exactly once, so the result is
/// bit-deterministic.
pub fn edge_skeleton(oracle: &dyn Oracle, directions: &DirectionSet) -> Result<SkeletonGraph> {
    let root = initial_vertex(oracle)?;
    let mut pending: BTreeSet<Vector> = BTreeSet::new();
    let mut done: BTreeSet<Vector> = BTreeSet::new();
    let mut edge_set: BTreeSet<(Vector, Vector)> = BTreeSet::new();
    pending.insert(root);

    while let Some(v) = pending.pop_first() {
        done.insert(v.clone());
        let candidates = candidate_neighbors(oracle, &v, directions)?;
        let neighbors = filter_neighbors(&v, &candidates)?;
        for w in neighbors {
            let pair = if w < v {
                (w.clone(), v.clone())
            } else {
                (v.clone(), w.clone())
            };
            edge_set.insert(pair);
            if !done.contains(&w) {
                pending.insert(w);
            }
        }
    }

    let vertices: Vec<Vector> = done.into_iter().collect();
    let index_of = |p: &Vector| vertices.binary_search(p).expect("edge endpoint is a vertex");
    let edges: Vec<(usize, usize)> = edge_set
        .iter()
        .map(|(p, q)| (index_of(p), index_of(q)))
        .collect();
    let dimension = affine_rank(&vertices)?;
    Ok(SkeletonGraph {
        vertices,
        edges,
        dimension,
    })
}

/// Post-pass diagnostic for the direction-superset contract: a violation is
/// not always detectable, but a vertex of degree below the dimension or a
/// disconnected graph proves the direction set was incomplete.
pub fn check_direction_completeness(graph: &SkeletonGraph) -> std::result::Result<(), String> {
    if graph.dimension >= 1 {
        for i in 0..graph.vertices.len() {
            let deg = graph.degree(i);
            if deg < graph.dimension {
                return Err(format!(
                    "directions likely incomplete: vertex {} has degree {} < dimension {}",
                    crate::exact::format_vector(&graph.vertices[i]),
                    deg,
                    graph.dimension
                ));
            }
        }
    }
    if !graph.is_connected() {
        return Err("directions likely incomplete: skeleton is disconnected".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::DirectionSource;
    use crate::exact::vec_i64;
    use crate::oracle::{HPolytopeOracle, MinkowskiOracle, SignedTerm, TermSign, VPolytopeOracle};

    fn unit_square_h() -> HPolytopeOracle {
        HPolytopeOracle::new(
            vec![
                vec_i64(&[1, 0]),
                vec_i64(&[0, 1]),
                vec_i64(&[-1, 0]),
                vec_i64(&[0, -1]),
            ],
            vec_i64(&[1, 1, 0, 0]),
        )
        .unwrap()
    }

    fn axis_directions() -> DirectionSet {
        DirectionSet::undirected(
            vec![vec_i64(&[1, 0]), vec_i64(&[0, 1])],
            DirectionSource::UserProvided,
        )
        .unwrap()
    }

    #[test]
    fn square_skeleton() {
        let g = edge_skeleton(&unit_square_h(), &axis_directions()).unwrap();
        assert_eq!(
            g.vertices,
            vec![
                vec_i64(&[0, 0]),
                vec_i64(&[0, 1]),
                vec_i64(&[1, 0]),
                vec_i64(&[1, 1]),
            ]
        );
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(g.dimension, 2);
        assert!(check_direction_completeness(&g).is_ok());
    }

    #[test]
    fn candidates_at_square_corner() {
        let sq = unit_square_h();
        let dirs = DirectionSet::directed(
            vec![
                vec_i64(&[1, 0]),
                vec_i64(&[0, 1]),
                vec_i64(&[-1, 0]),
                vec_i64(&[0, -1]),
            ],
            DirectionSource::UserProvided,
        )
        .unwrap();
        let c = candidate_neighbors(&sq, &vec_i64(&[0, 0]), &dirs).unwrap();
        let hits: Vec<Vector> = c.candidates.iter().map(|(_, w)| w.clone()).collect();
        assert_eq!(hits, vec![vec_i64(&[0, 1]), vec_i64(&[1, 0])]);
    }

    #[test]
    fn diagonal_candidate_is_filtered() {
        let sq = unit_square_h();
        let dirs = DirectionSet::directed(
            vec![vec_i64(&[1, 0]), vec_i64(&[0, 1]), vec_i64(&[1, 1])],
            DirectionSource::UserProvided,
        )
        .unwrap();
        let v = vec_i64(&[0, 0]);
        let c = candidate_neighbors(&sq, &v, &dirs).unwrap();
        let hits: Vec<Vector> = c.candidates.iter().map(|(_, w)| w.clone()).collect();
        assert_eq!(
            hits,
            vec![vec_i64(&[0, 1]), vec_i64(&[1, 0]), vec_i64(&[1, 1])]
        );
        let kept = filter_neighbors(&v, &c).unwrap();
        assert_eq!(kept, vec![vec_i64(&[0, 1]), vec_i64(&[1, 0])]);
    }

    #[test]
    fn separating_functional_examples() {
        let v = vec_i64(&[0, 0]);
        let set = NeighborCandidateSet {
            base_vertex: v.clone(),
            candidates: vec![(0, vec_i64(&[1, 0])), (1, vec_i64(&[0, 1]))],
        };
        assert_eq!(separating_functional(&v, &set).unwrap(), vec_i64(&[1, 1]));

        let single = NeighborCandidateSet {
            base_vertex: v.clone(),
            candidates: vec![(0, vec_i64(&[5, 0]))],
        };
        let a = separating_functional(&v, &single).unwrap();
        assert_eq!(a, vec![crate::exact::ratio(1, 5), crate::exact::int(0)]);

        let base = vec_i64(&[1, 1]);
        let three = NeighborCandidateSet {
            base_vertex: base.clone(),
            candidates: vec![
                (0, vec_i64(&[2, 1])),
                (1, vec_i64(&[1, 2])),
                (2, vec_i64(&[2, 2])),
            ],
        };
        let a = separating_functional(&base, &three).unwrap();
        for (_, q) in &three.candidates {
            assert!(dot(&a, &sub(q, &base)) >= Scalar::one());
        }
    }

    #[test]
    fn single_candidate_kept() {
        let v = vec_i64(&[0, 0]);
        let set = NeighborCandidateSet {
            base_vertex: v.clone(),
            candidates: vec![(0, vec_i64(&[3, 1]))],
        };
        assert_eq!(filter_neighbors(&v, &set).unwrap(), vec![vec_i64(&[3, 1])]);
    }

    #[test]
    fn triangle_neighbors_both_kept() {
        let v = vec_i64(&[0, 0]);
        let set = NeighborCandidateSet {
            base_vertex: v.clone(),
            candidates: vec![(0, vec_i64(&[2, 0])), (1, vec_i64(&[0, 1]))],
        };
        let kept = filter_neighbors(&v, &set).unwrap();
        assert_eq!(kept, vec![vec_i64(&[2, 0]), vec_i64(&[0, 1])]);
    }

    #[test]
    fn segment_endpoint_has_one_candidate() {
        let seg = VPolytopeOracle::new(vec![vec_i64(&[0, 0]), vec_i64(&[2, 2])]).unwrap();
        let dirs = DirectionSet::undirected(
            vec![vec_i64(&[1, 1])],
            DirectionSource::UserProvided,
        )
        .unwrap();
        let c = candidate_neighbors(&seg, &vec_i64(&[0, 0]), &dirs).unwrap();
        assert_eq!(c.candidates.len(), 1);
        let g = edge_skeleton(&seg, &dirs).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.dimension, 1);
    }

    #[test]
    fn single_point_polytope() {
        let p = VPolytopeOracle::new(vec![vec_i64(&[3, 7])]).unwrap();
        let dirs = axis_directions();
        let g = edge_skeleton(&p, &dirs).unwrap();
        assert_eq!(g.vertices, vec![vec_i64(&[3, 7])]);
        assert!(g.edges.is_empty());
        assert_eq!(g.dimension, 0);
    }

    #[test]
    fn minkowski_square_matches_corollary_rule() {
        // segment + segment with D = union of summand directions
        let b = VPolytopeOracle::new(vec![vec_i64(&[0, 0]), vec_i64(&[1, 0])]).unwrap();
        let c = VPolytopeOracle::new(vec![vec_i64(&[0, 0]), vec_i64(&[0, 1])]).unwrap();
        let db = DirectionSet::pairwise_differences(b.points()).unwrap();
        let dc = DirectionSet::pairwise_differences(c.points()).unwrap();
        let union = db.union(&dc);
        let m = MinkowskiOracle::new(vec![
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(b),
            },
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(c),
            },
        ])
        .unwrap();
        let g = edge_skeleton(&m, &union).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.edges.len(), 4);
        let reference = edge_skeleton(&unit_square_h(), &axis_directions()).unwrap();
        assert_eq!(g, reference);
    }

    #[test]
    fn deterministic_repeat() {
        let sq = unit_square_h();
        let dirs = axis_directions();
        let a = edge_skeleton(&sq, &dirs).unwrap();
        let b = edge_skeleton(&sq, &dirs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn incomplete_directions_reported() {
        // triangle with the vertical edge direction missing: two vertices
        // end with degree 1 < dimension 2
        let tri = VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[2, 0]),
            vec_i64(&[0, 2]),
        ])
        .unwrap();
        let dirs = DirectionSet::undirected(
            vec![vec_i64(&[1, 0]), vec_i64(&[1, -1])],
            DirectionSource::UserProvided,
        )
        .unwrap();
        let g = edge_skeleton(&tri, &dirs).unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edges.len(), 2);
        let err = check_direction_completeness(&g).unwrap_err();
        assert!(err.contains("directions likely incomplete"), "{err}");
    }

    #[test]
    fn edge_directions_close_into_input_set() {
        let g = edge_skeleton(&unit_square_h(), &axis_directions()).unwrap();
        let dirs = axis_directions();
        for &(i, j) in &g.edges {
            let e = sub(&g.vertices[j], &g.vertices[i]);
            assert!(dirs.contains_line(&e).unwrap());
        }
    }
}
