//! Space-efficient skeleton traversal by reverse search.
//!
//! A linear objective plus coordinatewise lexicographic tie-breaking gives a
//! total order on vertices; the order-best neighbor defines a parent
//! function whose tree is walked depth-first. Only the current path is
//! retained — there is no global visited set — and neighbor sets are
//! recomputed at every probe, which is the time-for-space trade of reverse
//! search. The summary reports the measured recompute count alongside the
//! retained-vertex peak.

use std::cmp::Ordering;
use std::io::Write;

use crate::direction::DirectionSet;
use crate::error::{Error, Result};
use crate::exact::{dot, format_scalar, Vector};
use crate::oracle::Oracle;
use crate::skeleton::{candidate_neighbors, filter_neighbors, SkeletonGraph};

/// Total order on vertices: objective value first, then lexicographic
/// coordinates. The tie-break makes the order total without any genericity
/// assumption on the objective.
#[derive(Clone, Debug)]
pub struct SearchOrder {
    pub objective: Vector,
}

impl SearchOrder {
    pub fn new(objective: Vector) -> Self {
        Self { objective }
    }

    pub fn cmp(&self, a: &Vector, b: &Vector) -> Ordering {
        dot(&self.objective, a)
            .cmp(&dot(&self.objective, b))
            .then_with(|| a.cmp(b))
    }
}

/// Receives the stream of discovered vertices and edges.
pub trait SkeletonSink {
    fn vertex(&mut self, v: &Vector) -> Result<()>;
    fn edge(&mut self, a: &Vector, b: &Vector) -> Result<()>;
}

/// Accumulates the stream into a [`SkeletonGraph`] (for tests and JSON
/// output); defeats the space bound on purpose.
#[derive(Default)]
pub struct CollectSink {
    pub vertices: Vec<Vector>,
    pub edges: Vec<(Vector, Vector)>,
}

impl CollectSink {
    pub fn into_graph(self) -> Result<SkeletonGraph> {
        let mut vertices = self.vertices;
        vertices.sort();
        let index_of = |p: &Vector| -> Result<usize> {
            vertices
                .binary_search(p)
                .map_err(|_| Error::Invalid("edge endpoint was never emitted as a vertex".into()))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for (a, b) in &self.edges {
            let (i, j) = (index_of(a)?, index_of(b)?);
            edges.push(if i < j { (i, j) } else { (j, i) });
        }
        edges.sort();
        edges.dedup();
        let dimension = crate::linalg::affine_rank(&vertices)?;
        Ok(SkeletonGraph {
            vertices,
            edges,
            dimension,
        })
    }
}

impl SkeletonSink for CollectSink {
    fn vertex(&mut self, v: &Vector) -> Result<()> {
        self.vertices.push(v.clone());
        Ok(())
    }

    fn edge(&mut self, a: &Vector, b: &Vector) -> Result<()> {
        self.edges.push((a.clone(), b.clone()));
        Ok(())
    }
}

/// Line-delimited streaming: `V <coords>` and `E <coords> <coords>`,
/// rationals as `p/q` separated by spaces.
pub struct LineSink<W: Write> {
    writer: W,
}

impl<W: Write> LineSink<W> {
    pub fn new(writer: W) -> Self {
        Self { writer }
    }

    fn coords(v: &[crate::exact::Scalar]) -> String {
        v.iter().map(format_scalar).collect::<Vec<_>>().join(" ")
    }
}

impl<W: Write> SkeletonSink for LineSink<W> {
    fn vertex(&mut self, v: &Vector) -> Result<()> {
        writeln!(self.writer, "V {}", Self::coords(v))
            .map_err(|e| Error::Invalid(format!("sink write failed: {e}")))
    }

    fn edge(&mut self, a: &Vector, b: &Vector) -> Result<()> {
        writeln!(self.writer, "E {} {}", Self::coords(a), Self::coords(b))
            .map_err(|e| Error::Invalid(format!("sink write failed: {e}")))
    }
}

fn neighbors_of(
    oracle: &dyn Oracle,
    directions: &DirectionSet,
    v: &Vector,
) -> Result<Vec<Vector>> {
    let candidates = candidate_neighbors(oracle, v, directions)?;
    filter_neighbors(v, &candidates)
}

/// The `j`-th neighbor of `v` (1-based) in order-descending enumeration, or
/// `None` when `v` has fewer than `j` neighbors. Recomputed on demand — no
/// caching.
pub fn adjacency(
    oracle: &dyn Oracle,
    directions: &DirectionSet,
    v: &Vector,
    j: usize,
    order: &SearchOrder,
) -> Result<Option<Vector>> {
    if j == 0 {
        return Err(Error::Invalid("adjacency index is 1-based".into()));
    }
    let mut neighbors = neighbors_of(oracle, directions, v)?;
    neighbors.sort_by(|a, b| order.cmp(b, a));
    Ok(neighbors.into_iter().nth(j - 1))
}

/// The order-best neighbor of a non-root vertex; strictly order-greater
/// than `v` by convexity. Calling it on the root is an error.
pub fn local_search(
    oracle: &dyn Oracle,
    directions: &DirectionSet,
    v: &Vector,
    order: &SearchOrder,
) -> Result<Vector> {
    let neighbors = neighbors_of(oracle, directions, v)?;
    let best = neighbors
        .into_iter()
        .max_by(|a, b| order.cmp(a, b))
        .ok_or_else(|| Error::Invalid("local search called on the root".into()))?;
    if order.cmp(&best, v) != Ordering::Greater {
        return Err(Error::Invalid("local search called on the root".into()));
    }
    Ok(best)
}

/// Traversal statistics. `peak_retained` counts vertices held by the
/// traversal itself (path stack plus loop temporaries) and never includes a
/// visited set; `peak_excess` is its measured distance from the DFS depth.
#[derive(Clone, Debug, Default)]
pub struct RsSummary {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub peak_depth: usize,
    pub peak_retained: usize,
    pub peak_excess: usize,
    /// Neighbor-set recomputations, the time cost of the space bound.
    pub adjacency_recomputes: usize,
}

struct Gauge {
    peak_depth: usize,
    peak_retained: usize,
    peak_excess: usize,
}

impl Gauge {
    fn sample(&mut self, depth: usize, temps: usize) {
        let retained = depth + temps;
        self.peak_depth = self.peak_depth.max(depth);
        self.peak_retained = self.peak_retained.max(retained);
        self.peak_excess = self.peak_excess.max(retained - depth);
    }
}

/// Streams every vertex and every edge of the skeleton exactly once.
///
/// The root is the order-maximal vertex; each edge is emitted while its
/// order-greater endpoint is being scanned; a vertex is emitted when the
/// parent check `local_search(w) == v` first succeeds.
pub fn rs_edge_skeleton(
    oracle: &dyn Oracle,
    directions: &DirectionSet,
    order: &SearchOrder,
    sink: &mut dyn SkeletonSink,
) -> Result<RsSummary> {
    let mut summary = RsSummary::default();
    let mut gauge = Gauge {
        peak_depth: 0,
        peak_retained: 0,
        peak_excess: 0,
    };

    // Order-maximal vertex: start from the oracle optimum for the objective
    // and climb while some neighbor is order-greater (the concrete oracles'
    // lexmax tie-break makes the climb a no-op, but oracles with other
    // deterministic tie-breaks may start on a tied, non-maximal vertex).
    let mut root = oracle.optimize(&order.objective)?;
    loop {
        summary.adjacency_recomputes += 1;
        let neighbors = neighbors_of(oracle, directions, &root)?;
        match neighbors.into_iter().max_by(|a, b| order.cmp(a, b)) {
            Some(best) if order.cmp(&best, &root) == Ordering::Greater => root = best,
            _ => break,
        }
    }

    sink.vertex(&root)?;
    summary.vertex_count += 1;

    // Path stack only: (vertex, next 1-based adjacency index to probe).
    let mut stack: Vec<(Vector, usize)> = vec![(root, 1)];
    gauge.sample(stack.len(), 0);

    while let Some(top) = stack.last_mut() {
        let j = top.1;
        top.1 += 1;
        let v = top.0.clone();
        gauge.sample(stack.len(), 1);

        summary.adjacency_recomputes += 1;
        let Some(w) = adjacency(oracle, directions, &v, j, order)? else {
            stack.pop();
            continue;
        };
        gauge.sample(stack.len(), 2);

        if order.cmp(&w, &v) == Ordering::Less {
            // v is the order-greater endpoint: emit the edge here, once.
            sink.edge(&v, &w)?;
            summary.edge_count += 1;
            summary.adjacency_recomputes += 1;
            let parent = local_search(oracle, directions, &w, order)?;
            gauge.sample(stack.len(), 3);
            if parent == v {
                sink.vertex(&w)?;
                summary.vertex_count += 1;
                stack.push((w, 1));
                gauge.sample(stack.len(), 0);
            }
        }
    }

    summary.peak_depth = gauge.peak_depth;
    summary.peak_retained = gauge.peak_retained;
    summary.peak_excess = gauge.peak_excess;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::DirectionSource;
    use crate::exact::{vec_i64, zeros};
    use crate::oracle::VPolytopeOracle;
    use crate::skeleton::edge_skeleton;

    fn square() -> VPolytopeOracle {
        VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[1, 0]),
            vec_i64(&[0, 1]),
            vec_i64(&[1, 1]),
        ])
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
    fn square_stream_matches_bfs() {
        let sq = square();
        let dirs = axis_directions();
        let order = SearchOrder::new(vec_i64(&[1, 1]));
        let mut sink = CollectSink::default();
        let summary = rs_edge_skeleton(&sq, &dirs, &order, &mut sink).unwrap();
        assert_eq!(summary.vertex_count, 4);
        assert_eq!(summary.edge_count, 4);
        let accumulated = sink.into_graph().unwrap();
        let reference = edge_skeleton(&sq, &dirs).unwrap();
        assert_eq!(accumulated, reference);
        assert!(summary.peak_excess <= 4);
    }

    #[test]
    fn each_vertex_emitted_once() {
        struct OnceSink(std::collections::BTreeSet<Vector>);
        impl SkeletonSink for OnceSink {
            fn vertex(&mut self, v: &Vector) -> Result<()> {
                assert!(self.0.insert(v.clone()), "vertex emitted twice");
                Ok(())
            }
            fn edge(&mut self, _: &Vector, _: &Vector) -> Result<()> {
                Ok(())
            }
        }
        let sq = square();
        let dirs = axis_directions();
        let order = SearchOrder::new(vec_i64(&[1, 1]));
        let mut sink = OnceSink(Default::default());
        rs_edge_skeleton(&sq, &dirs, &order, &mut sink).unwrap();
        assert_eq!(sink.0.len(), 4);
    }

    #[test]
    fn adjacency_descending_enumeration() {
        let sq = square();
        let dirs = axis_directions();
        let order = SearchOrder::new(vec_i64(&[1, 1]));
        let v = vec_i64(&[0, 0]);
        // both neighbors tie on the objective; lex puts (1,0) first
        assert_eq!(
            adjacency(&sq, &dirs, &v, 1, &order).unwrap(),
            Some(vec_i64(&[1, 0]))
        );
        assert_eq!(
            adjacency(&sq, &dirs, &v, 2, &order).unwrap(),
            Some(vec_i64(&[0, 1]))
        );
        assert_eq!(adjacency(&sq, &dirs, &v, 3, &order).unwrap(), None);
        assert!(adjacency(&sq, &dirs, &v, 0, &order).is_err());
    }

    #[test]
    fn segment_adjacency_and_local_search() {
        let seg = VPolytopeOracle::new(vec![vec_i64(&[0, 0]), vec_i64(&[2, 2])]).unwrap();
        let dirs = DirectionSet::undirected(
            vec![vec_i64(&[1, 1])],
            DirectionSource::UserProvided,
        )
        .unwrap();
        let order = SearchOrder::new(vec_i64(&[1, 1]));
        let endpoint = vec_i64(&[0, 0]);
        assert_eq!(
            adjacency(&seg, &dirs, &endpoint, 1, &order).unwrap(),
            Some(vec_i64(&[2, 2]))
        );
        assert_eq!(adjacency(&seg, &dirs, &endpoint, 2, &order).unwrap(), None);
        // non-root endpoint maps to the root
        assert_eq!(
            local_search(&seg, &dirs, &endpoint, &order).unwrap(),
            vec_i64(&[2, 2])
        );
        // and the root rejects local search
        assert!(local_search(&seg, &dirs, &vec_i64(&[2, 2]), &order).is_err());
    }

    #[test]
    fn local_search_strictly_increases_on_pentagon() {
        let pent = VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[4, 0]),
            vec_i64(&[6, 3]),
            vec_i64(&[2, 6]),
            vec_i64(&[-2, 3]),
        ])
        .unwrap();
        let dirs = DirectionSet::pairwise_differences(pent.points()).unwrap();
        let order = SearchOrder::new(vec_i64(&[1, 1]));
        let root = pent.optimize(&order.objective).unwrap();
        for v in pent.points() {
            if *v == root {
                continue;
            }
            let up = local_search(&pent, &dirs, v, &order).unwrap();
            assert_eq!(order.cmp(&up, v), Ordering::Greater);
        }
    }

    #[test]
    fn single_point_emits_one_vertex() {
        let p = VPolytopeOracle::new(vec![vec_i64(&[3, 7])]).unwrap();
        let dirs = axis_directions();
        let order = SearchOrder::new(vec_i64(&[1, 1]));
        let mut sink = CollectSink::default();
        let summary = rs_edge_skeleton(&p, &dirs, &order, &mut sink).unwrap();
        assert_eq!(summary.vertex_count, 1);
        assert_eq!(summary.edge_count, 0);
    }

    #[test]
    fn zero_objective_still_totally_ordered() {
        let sq = square();
        let dirs = axis_directions();
        let order = SearchOrder::new(zeros(2));
        let mut sink = CollectSink::default();
        let summary = rs_edge_skeleton(&sq, &dirs, &order, &mut sink).unwrap();
        assert_eq!(summary.vertex_count, 4);
        assert_eq!(summary.edge_count, 4);
        let graph = sink.into_graph().unwrap();
        assert_eq!(graph, edge_skeleton(&sq, &dirs).unwrap());
    }

    #[test]
    fn line_sink_format() {
        let mut out = Vec::new();
        {
            let mut sink = LineSink::new(&mut out);
            sink.vertex(&vec![crate::exact::ratio(1, 2), crate::exact::int(3)])
                .unwrap();
            sink.edge(&vec_i64(&[0, 0]), &vec_i64(&[1, 0])).unwrap();
        }
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "V 1/2 3\nE 0 0 1 0\n");
    }
}
