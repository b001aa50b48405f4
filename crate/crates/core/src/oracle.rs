//! Optimization oracles and the procedures derived from them.
//!
//! An [`Oracle`] answers one question: given an objective `c`, return a
//! vertex of the polytope maximizing `c·x`. Everything else the skeleton
//! algorithm needs — membership with certificates, separation, ray
//! shooting, an initial vertex — is built here from `optimize` alone, with
//! native shortcuts where a concrete representation has one.
//!
//! Membership runs exact column generation: grow an inner vertex set `S`,
//! test the query against `conv(S)` by LP, and turn each Farkas certificate
//! into either a separating functional (confirmed by one oracle call) or a
//! new vertex of `S`. One query spends at most `n_P + 1` oracle calls.
//!
//! Generic ray shooting runs a cutting-plane loop on top of membership: the
//! tightest known cut gives an outer intersection point; if membership
//! accepts it we are done, otherwise the returned separator strictly
//! tightens the bound. A configurable cap turns lack of progress into an
//! error rather than a wrong answer.

use num_traits::{Signed, Zero};

use crate::direction::{canonical_direction, DirectionMode};
use crate::error::{Error, Result};
use crate::exact::{
    add_scaled, check_dim, dot, is_zero_vector, ones, scalar_bits, sub, vector_bits, zeros,
    Scalar, Vector,
};
use crate::lp::{feasible_point, lex_optimize, solve_standard, StandardLp, StdResult};

/// Well-described-polytope bookkeeping: ambient dimension, a bit bound for
/// one inequality of some H-representation, and the derived encoding length.
/// Carried as metadata; no numeric tolerance is ever derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDescribedMeta {
    pub dimension: usize,
    pub facet_complexity: u64,
    pub encoding_length: u64,
}

impl WellDescribedMeta {
    pub fn new(dimension: usize, facet_complexity: u64) -> Self {
        Self {
            dimension,
            facet_complexity,
            encoding_length: dimension as u64 + facet_complexity,
        }
    }

    /// Bit bound every vertex of the polytope must respect.
    pub fn vertex_bit_bound(&self) -> u64 {
        4 * (self.dimension as u64).pow(2) * self.facet_complexity
    }
}

/// A linear optimization oracle over a nonempty bounded rational polytope.
///
/// `optimize` must return a vertex, deterministically. The concrete oracles
/// in this crate tie-break by returning the lexicographically largest
/// maximizer, which composes through signed Minkowski sums; the GKZ oracles
/// pin ties with a deterministic lifting refinement instead.
pub trait Oracle: Sync {
    fn ambient_dim(&self) -> usize;

    /// A vertex of `P` maximizing `c·x`. `c = 0` is allowed and returns a
    /// deterministic vertex.
    fn optimize(&self, c: &[Scalar]) -> Result<Vector>;

    fn meta(&self) -> WellDescribedMeta;

    /// Representation-specific ray shooting, if available. `None` routes the
    /// call to the generic cutting-plane path.
    fn native_ray_shoot(&self, _apex: &[Scalar], _direction: &[Scalar]) -> Option<Result<Vector>> {
        None
    }

    /// Generator points when the oracle is (a positive sum of) explicit
    /// V-polytopes; enables joint-LP shortcuts.
    fn as_v_points(&self) -> Option<&[Vector]> {
        None
    }
}

fn debug_check_vertex_bits(oracle: &dyn Oracle, v: &[Scalar]) {
    if cfg!(debug_assertions) {
        let meta = oracle.meta();
        debug_assert!(
            vector_bits(v) <= meta.vertex_bit_bound(),
            "vertex encoding {} exceeds well-described bound {}",
            vector_bits(v),
            meta.vertex_bit_bound()
        );
    }
}

// ---------------------------------------------------------------------------
// V-polytopes
// ---------------------------------------------------------------------------

/// Convex hull of an explicit point list.
#[derive(Clone, Debug)]
pub struct VPolytopeOracle {
    points: Vec<Vector>,
    dim: usize,
}

impl VPolytopeOracle {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("V-polytope"))?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::EmptyInput("V-polytope ambient dimension"));
        }
        for p in &points {
            check_dim(p, dim)?;
        }
        Ok(Self { points, dim })
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }
}

impl Oracle for VPolytopeOracle {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn optimize(&self, c: &[Scalar]) -> Result<Vector> {
        check_dim(c, self.dim)?;
        // lexicographically largest maximizer
        let mut best: Option<(Scalar, &Vector)> = None;
        for p in &self.points {
            let val = dot(c, p);
            let better = match &best {
                None => true,
                Some((bv, bp)) => val > *bv || (val == *bv && p > *bp),
            };
            if better {
                best = Some((val, p));
            }
        }
        Ok(best.expect("nonempty by construction").1.clone())
    }

    fn meta(&self) -> WellDescribedMeta {
        let nu = self.points.iter().map(|p| vector_bits(p)).max().unwrap_or(1);
        let d = self.dim as u64;
        WellDescribedMeta::new(self.dim, 3 * d * d * nu)
    }

    fn native_ray_shoot(&self, apex: &[Scalar], direction: &[Scalar]) -> Option<Result<Vector>> {
        Some(v_ray_shoot(&self.points, self.dim, apex, direction))
    }

    fn as_v_points(&self) -> Option<&[Vector]> {
        Some(&self.points)
    }
}

/// max t subject to `sum λ_i p_i - t e = v`, `sum λ = 1`, `λ, t >= 0`.
fn v_ray_shoot(points: &[Vector], d: usize, v: &[Scalar], e: &[Scalar]) -> Result<Vector> {
    check_dim(v, d)?;
    check_dim(e, d)?;
    if is_zero_vector(e) {
        return Err(Error::ZeroVector);
    }
    let n = points.len();
    let cols = n + 1;
    let mut rows = Vec::with_capacity(d + 1);
    for j in 0..d {
        let mut lhs: Vector = points.iter().map(|p| p[j].clone()).collect();
        lhs.push(-e[j].clone());
        rows.push((lhs, v[j].clone()));
    }
    let mut simplex_row = vec![Scalar::from_integer(1.into()); n];
    simplex_row.push(Scalar::zero());
    rows.push((simplex_row, Scalar::from_integer(1.into())));

    let mut objective = zeros(cols);
    objective[n] = Scalar::from_integer(1.into());
    match solve_standard(&StandardLp {
        cols,
        rows,
        objective: Some(objective),
        identity_block: None,
    }) {
        StdResult::Optimal { point, .. } => Ok(add_scaled(v, &point[n], e)),
        StdResult::Infeasible { .. } => Err(Error::NotInPolytope),
        StdResult::Unbounded { .. } => Err(Error::Unbounded),
    }
}

// ---------------------------------------------------------------------------
// H-polytopes
// ---------------------------------------------------------------------------

/// Bounded intersection `{x | Ax <= b}`.
#[derive(Clone, Debug)]
pub struct HPolytopeOracle {
    a: Vec<Vector>,
    b: Vector,
    dim: usize,
}

impl HPolytopeOracle {
    pub fn new(a: Vec<Vector>, b: Vector) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::MalformedLp(format!(
                "{} rows but {} right-hand sides",
                a.len(),
                b.len()
            )));
        }
        let first = a.first().ok_or(Error::EmptyInput("H-polytope rows"))?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::EmptyInput("H-polytope ambient dimension"));
        }
        for row in &a {
            check_dim(row, dim)?;
        }
        Ok(Self { a, b, dim })
    }

    pub fn rows(&self) -> (&[Vector], &[Scalar]) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        check_dim(x, self.dim)?;
        Ok(self.a.iter().zip(&self.b).all(|(row, bi)| dot(row, x) <= *bi))
    }
}

impl Oracle for HPolytopeOracle {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn optimize(&self, c: &[Scalar]) -> Result<Vector> {
        check_dim(c, self.dim)?;
        lex_optimize(&self.a, &self.b, &c.to_vec())
    }

    fn meta(&self) -> WellDescribedMeta {
        let phi = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| vector_bits(row) + scalar_bits(bi))
            .max()
            .unwrap_or(1);
        WellDescribedMeta::new(self.dim, phi)
    }

    fn native_ray_shoot(&self, apex: &[Scalar], direction: &[Scalar]) -> Option<Result<Vector>> {
        Some(self.h_ray_shoot(apex, direction))
    }
}

impl HPolytopeOracle {
    /// min over rows with `a_i·e > 0` of `(b_i - a_i·v) / (a_i·e)`.
    fn h_ray_shoot(&self, v: &[Scalar], e: &[Scalar]) -> Result<Vector> {
        check_dim(v, self.dim)?;
        check_dim(e, self.dim)?;
        if is_zero_vector(e) {
            return Err(Error::ZeroVector);
        }
        if !self.contains(v)? {
            return Err(Error::NotInPolytope);
        }
        let mut t_max: Option<Scalar> = None;
        for (row, bi) in self.a.iter().zip(&self.b) {
            let ae = dot(row, e);
            if ae.is_positive() {
                let t = (bi - dot(row, v)) / ae;
                if t_max.as_ref().is_none_or(|cur| t < *cur) {
                    t_max = Some(t);
                }
            }
        }
        match t_max {
            Some(t) => Ok(add_scaled(v, &t, e)),
            None => Err(Error::Unbounded),
        }
    }
}

// ---------------------------------------------------------------------------
// Signed Minkowski sums
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermSign {
    Positive,
    Negative,
}

impl TermSign {
    pub fn as_scalar(self) -> Scalar {
        match self {
            TermSign::Positive => Scalar::from_integer(1.into()),
            TermSign::Negative => Scalar::from_integer((-1).into()),
        }
    }
}

pub struct SignedTerm {
    pub sign: TermSign,
    pub oracle: Box<dyn Oracle>,
}

/// Oracle for `s_1 P_1 + ... + s_r P_r`.
///
/// `optimize(c)` is the signed sum of the summand vertices for the same
/// objective `c`; that this lands on a vertex of the sum follows from the
/// additivity of optimal faces, and each summand's lexmax tie-break keeps
/// the selection consistent across terms. Whether each subtracted polytope
/// really is a Minkowski summand of the positive part is *not* verified.
pub struct MinkowskiOracle {
    terms: Vec<SignedTerm>,
    dim: usize,
    /// Concatenated generator points when every term is a positive
    /// V-polytope; enables the joint-LP ray shoot.
    joint_points: Option<Vec<Vector>>,
    joint_sizes: Vec<usize>,
}

impl MinkowskiOracle {
    pub fn new(terms: Vec<SignedTerm>) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptyInput("Minkowski terms"))?;
        let dim = first.oracle.ambient_dim();
        if !terms.iter().any(|t| t.sign == TermSign::Positive) {
            return Err(Error::Invalid(
                "signed Minkowski sum needs at least one positive term".into(),
            ));
        }
        for t in &terms {
            if t.oracle.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: t.oracle.ambient_dim(),
                });
            }
        }
        // The pointwise joint LP is only valid without subtraction: the set
        // of pointwise differences strictly contains the Minkowski
        // difference, so any negative term disables the shortcut.
        let all_positive_v = terms
            .iter()
            .map(|t| {
                (t.sign == TermSign::Positive)
                    .then(|| t.oracle.as_v_points())
                    .flatten()
            })
            .collect::<Option<Vec<_>>>();
        let (joint_points, joint_sizes) = match all_positive_v {
            Some(point_sets) => {
                let sizes = point_sets.iter().map(|s| s.len()).collect();
                let flat = point_sets.into_iter().flatten().cloned().collect();
                (Some(flat), sizes)
            }
            None => (None, Vec::new()),
        };
        Ok(Self {
            terms,
            dim,
            joint_points,
            joint_sizes,
        })
    }

    pub fn terms(&self) -> &[SignedTerm] {
        &self.terms
    }
}

impl Oracle for MinkowskiOracle {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn optimize(&self, c: &[Scalar]) -> Result<Vector> {
        check_dim(c, self.dim)?;
        let mut acc = zeros(self.dim);
        for term in &self.terms {
            let v = term.oracle.optimize(c)?;
            match term.sign {
                TermSign::Positive => acc = crate::exact::add(&acc, &v),
                TermSign::Negative => acc = sub(&acc, &v),
            }
        }
        Ok(acc)
    }

    fn meta(&self) -> WellDescribedMeta {
        let d = self.dim as u64;
        let max_term = self
            .terms
            .iter()
            .map(|t| t.oracle.meta().encoding_length)
            .max()
            .unwrap_or(1);
        let r_bits = 64 - (self.terms.len() as u64).leading_zeros() as u64;
        WellDescribedMeta::new(self.dim, 12 * d.pow(4) * max_term + 3 * d * d * r_bits)
    }

    fn native_ray_shoot(&self, apex: &[Scalar], direction: &[Scalar]) -> Option<Result<Vector>> {
        let points = self.joint_points.as_ref()?;
        Some(self.joint_ray_shoot(points, apex, direction))
    }
}

impl MinkowskiOracle {
    /// max t subject to `sum_i sum_j λ^i_j p^i_j - t e = v`, each `λ^i` in
    /// the simplex. Valid because every term is a positive V-polytope.
    fn joint_ray_shoot(&self, flat: &[Vector], v: &[Scalar], e: &[Scalar]) -> Result<Vector> {
        check_dim(v, self.dim)?;
        check_dim(e, self.dim)?;
        if is_zero_vector(e) {
            return Err(Error::ZeroVector);
        }
        let n = flat.len();
        let cols = n + 1;
        let mut rows = Vec::with_capacity(self.dim + self.joint_sizes.len());
        for j in 0..self.dim {
            let mut lhs: Vector = flat.iter().map(|p| p[j].clone()).collect();
            lhs.push(-e[j].clone());
            rows.push((lhs, v[j].clone()));
        }
        let mut offset = 0;
        for &size in &self.joint_sizes {
            let mut lhs = zeros(cols);
            for slot in lhs.iter_mut().skip(offset).take(size) {
                *slot = Scalar::from_integer(1.into());
            }
            rows.push((lhs, Scalar::from_integer(1.into())));
            offset += size;
        }
        let mut objective = zeros(cols);
        objective[n] = Scalar::from_integer(1.into());
        match solve_standard(&StandardLp {
            cols,
            rows,
            objective: Some(objective),
            identity_block: None,
        }) {
            StdResult::Optimal { point, .. } => Ok(add_scaled(v, &point[n], e)),
            StdResult::Infeasible { .. } => Err(Error::NotInPolytope),
            StdResult::Unbounded { .. } => Err(Error::Unbounded),
        }
    }
}

// ---------------------------------------------------------------------------
// Derived procedures
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    Inside,
    Outside,
}

#[derive(Clone, Debug)]
pub struct MembershipResult {
    pub verdict: MembershipVerdict,
    /// Convex-combination weights over oracle vertices reproducing the query
    /// point exactly (`Inside`).
    pub inside_certificate: Option<Vec<(Vector, Scalar)>>,
    /// Separating functional `c` with threshold `γ = c·optimize(c)`, so
    /// `c·x <= γ` for all of `P` while `c·query > γ` (`Outside`).
    pub separating_functional: Option<(Vector, Scalar)>,
    /// Number of `optimize` calls spent; at most `n_P + 1`.
    pub oracle_calls: usize,
}

/// Exact membership with certificates, by column generation over the
/// oracle's vertices.
pub fn membership(oracle: &dyn Oracle, query: &[Scalar]) -> Result<MembershipResult> {
    let d = oracle.ambient_dim();
    check_dim(query, d)?;

    let mut inner: Vec<Vector> = vec![oracle.optimize(&zeros(d))?];
    let mut calls = 1usize;
    loop {
        // Is query in conv(inner)?
        let mut rows = Vec::with_capacity(d + 1);
        for j in 0..d {
            let lhs: Vector = inner.iter().map(|s| s[j].clone()).collect();
            rows.push((lhs, query[j].clone()));
        }
        rows.push((
            vec![Scalar::from_integer(1.into()); inner.len()],
            Scalar::from_integer(1.into()),
        ));
        match feasible_point(inner.len(), rows) {
            Ok(weights) => {
                let certificate: Vec<(Vector, Scalar)> = inner
                    .iter()
                    .zip(&weights)
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(s, w)| (s.clone(), w.clone()))
                    .collect();
                return Ok(MembershipResult {
                    verdict: MembershipVerdict::Inside,
                    inside_certificate: Some(certificate),
                    separating_functional: None,
                    oracle_calls: calls,
                });
            }
            Err(farkas) => {
                // farkas u: u·(S_i, 1) >= 0 per inner vertex, u·(query, 1) < 0,
                // so c = -u[..d] satisfies c·S_i <= u[d] < c·query.
                let c_raw: Vector = farkas[..d].iter().map(|x| -x).collect();
                let c = canonical_direction(&c_raw, DirectionMode::Directed)?;
                let support = oracle.optimize(&c)?;
                calls += 1;
                let gamma = dot(&c, &support);
                if gamma < dot(&c, query) {
                    return Ok(MembershipResult {
                        verdict: MembershipVerdict::Outside,
                        inside_certificate: None,
                        separating_functional: Some((c, gamma)),
                        oracle_calls: calls,
                    });
                }
                // support is a genuinely new vertex: c·support >= c·query,
                // strictly above every c·S_i.
                debug_assert!(!inner.contains(&support));
                inner.push(support);
            }
        }
    }
}

/// Options for the generic cutting-plane ray shoot.
#[derive(Clone, Copy, Debug)]
pub struct RayShootConfig {
    /// Hard cap on discovered cuts; exceeding it is an error, never a wrong
    /// answer.
    pub max_cuts: usize,
    /// Skip the `apex in P` membership precheck (callers that already hold a
    /// vertex of `P` set this).
    pub assume_member: bool,
}

impl Default for RayShootConfig {
    fn default() -> Self {
        Self {
            max_cuts: 1000,
            assume_member: false,
        }
    }
}

/// The farthest point of `P` along `apex + t * direction`, `t >= 0`.
/// Equals `apex` iff the ray exits immediately.
pub fn ray_shoot(oracle: &dyn Oracle, apex: &[Scalar], direction: &[Scalar]) -> Result<Vector> {
    ray_shoot_with(oracle, apex, direction, &RayShootConfig::default())
}

pub fn ray_shoot_with(
    oracle: &dyn Oracle,
    apex: &[Scalar],
    direction: &[Scalar],
    config: &RayShootConfig,
) -> Result<Vector> {
    let d = oracle.ambient_dim();
    check_dim(apex, d)?;
    check_dim(direction, d)?;
    if is_zero_vector(direction) {
        return Err(Error::ZeroVector);
    }
    if let Some(native) = oracle.native_ray_shoot(apex, direction) {
        return native;
    }

    if !config.assume_member {
        let probe = membership(oracle, apex)?;
        if probe.verdict == MembershipVerdict::Outside {
            return Err(Error::NotInPolytope);
        }
    }

    // Valid cuts (a, γ): a·x <= γ on all of P. Seeded with the direction
    // itself, which always bounds t for a bounded polytope.
    let seed = canonical_direction(direction, DirectionMode::Directed)?;
    let seed_gamma = dot(&seed, &oracle.optimize(&seed)?);
    let mut cuts: Vec<(Vector, Scalar, Scalar)> = Vec::new();
    let seed_ae = dot(&seed, direction);
    debug_assert!(seed_ae.is_positive());
    cuts.push((seed, seed_gamma, seed_ae));

    for _ in 0..config.max_cuts {
        let t_out = cuts
            .iter()
            .map(|(a, gamma, ae)| (gamma - dot(a, apex)) / ae)
            .min()
            .expect("at least the seed cut");
        let candidate = add_scaled(apex, &t_out, direction);
        let probe = membership(oracle, &candidate)?;
        match probe.verdict {
            MembershipVerdict::Inside => return Ok(candidate),
            MembershipVerdict::Outside => {
                let (c, gamma) = probe.separating_functional.expect("outside carries separator");
                let ce = dot(&c, direction);
                if !ce.is_positive() {
                    // Cannot happen for apex in P: the outer point violates
                    // the cut while apex satisfies it.
                    return Err(Error::Invalid(
                        "separating cut does not bound the ray".into(),
                    ));
                }
                cuts.push((c, gamma, ce));
            }
        }
    }
    Err(Error::UnresolvedRay(config.max_cuts))
}

/// Some vertex of `P`: optimize with the all-ones objective. The oracle's
/// deterministic tie-breaking turns degenerate objectives into a unique
/// vertex of the optimal face.
pub fn initial_vertex(oracle: &dyn Oracle) -> Result<Vector> {
    let v = oracle.optimize(&ones(oracle.ambient_dim()))?;
    debug_check_vertex_bits(oracle, &v);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio, vec_i64};

    fn unit_square_v() -> VPolytopeOracle {
        VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[1, 0]),
            vec_i64(&[0, 1]),
            vec_i64(&[1, 1]),
        ])
        .unwrap()
    }

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

    fn segment(a: &[i64], b: &[i64]) -> VPolytopeOracle {
        VPolytopeOracle::new(vec![vec_i64(a), vec_i64(b)]).unwrap()
    }

    #[test]
    fn v_optimize_examples() {
        let tri = VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[1, 0]),
            vec_i64(&[0, 1]),
        ])
        .unwrap();
        assert_eq!(tri.optimize(&vec_i64(&[1, 0])).unwrap(), vec_i64(&[1, 0]));
        // two maximizers (1,0) and (1,1): lexicographic rule selects (1,1)
        assert_eq!(
            unit_square_v().optimize(&vec_i64(&[1, 0])).unwrap(),
            vec_i64(&[1, 1])
        );
    }

    #[test]
    fn h_optimize_examples() {
        assert_eq!(
            unit_square_h().optimize(&vec_i64(&[1, 1])).unwrap(),
            vec_i64(&[1, 1])
        );
        // degenerate objective: lexmax of the optimal face
        assert_eq!(
            unit_square_h().optimize(&vec_i64(&[1, 0])).unwrap(),
            vec_i64(&[1, 1])
        );
    }

    #[test]
    fn minkowski_square_from_segments() {
        let m = MinkowskiOracle::new(vec![
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(segment(&[0, 0], &[1, 0])),
            },
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(segment(&[0, 0], &[0, 1])),
            },
        ])
        .unwrap();
        assert_eq!(m.optimize(&vec_i64(&[1, 1])).unwrap(), vec_i64(&[1, 1]));
    }

    #[test]
    fn minkowski_subtraction_identity_on_grid() {
        // (B+C) - B equals C, checked as OPT identities over a grid of c.
        let b = segment(&[0, 0], &[1, 0]);
        let c = segment(&[0, 0], &[0, 1]);
        let b_plus_c = MinkowskiOracle::new(vec![
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(b.clone()),
            },
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(c.clone()),
            },
        ])
        .unwrap();
        let signed = MinkowskiOracle::new(vec![
            SignedTerm {
                sign: TermSign::Positive,
                oracle: Box::new(b_plus_c),
            },
            SignedTerm {
                sign: TermSign::Negative,
                oracle: Box::new(b.clone()),
            },
        ])
        .unwrap();
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                let obj = vec_i64(&[x, y]);
                assert_eq!(
                    signed.optimize(&obj).unwrap(),
                    c.optimize(&obj).unwrap(),
                    "objective ({x},{y})"
                );
            }
        }
    }

    #[test]
    fn minkowski_single_term_is_identity() {
        let tri = VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[2, 0]),
            vec_i64(&[0, 3]),
        ])
        .unwrap();
        let m = MinkowskiOracle::new(vec![SignedTerm {
            sign: TermSign::Positive,
            oracle: Box::new(tri.clone()),
        }])
        .unwrap();
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                let obj = vec_i64(&[x, y]);
                assert_eq!(m.optimize(&obj).unwrap(), tri.optimize(&obj).unwrap());
            }
        }
    }

    #[test]
    fn minkowski_requires_positive_term() {
        let err = MinkowskiOracle::new(vec![SignedTerm {
            sign: TermSign::Negative,
            oracle: Box::new(segment(&[0, 0], &[1, 0])),
        }]);
        assert!(err.is_err());
    }

    #[test]
    fn membership_inside_centroid() {
        let sq = unit_square_v();
        let r = membership(&sq, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(r.verdict, MembershipVerdict::Inside);
        let cert = r.inside_certificate.unwrap();
        let mut total = Scalar::zero();
        let mut recon = zeros(2);
        for (v, w) in &cert {
            assert!(!w.is_negative());
            total += w;
            recon = add_scaled(&recon, w, v);
        }
        assert_eq!(total, int(1));
        assert_eq!(recon, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn membership_outside_with_separator() {
        let sq = unit_square_v();
        let r = membership(&sq, &vec_i64(&[2, 0])).unwrap();
        assert_eq!(r.verdict, MembershipVerdict::Outside);
        let (c, gamma) = r.separating_functional.unwrap();
        assert!(dot(&c, &vec_i64(&[2, 0])) > gamma);
        assert_eq!(gamma, dot(&c, &sq.optimize(&c).unwrap()));
    }

    #[test]
    fn membership_triangle_weights() {
        let tri = VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[4, 0]),
            vec_i64(&[0, 4]),
        ])
        .unwrap();
        let r = membership(&tri, &vec_i64(&[1, 1])).unwrap();
        assert_eq!(r.verdict, MembershipVerdict::Inside);
        // unique barycentric weights: 1/2, 1/4, 1/4
        let cert = r.inside_certificate.unwrap();
        let lookup = |p: &[i64]| {
            cert.iter()
                .find(|(v, _)| *v == vec_i64(p))
                .map(|(_, w)| w.clone())
                .unwrap_or_else(Scalar::zero)
        };
        assert_eq!(lookup(&[0, 0]), ratio(1, 2));
        assert_eq!(lookup(&[4, 0]), ratio(1, 4));
        assert_eq!(lookup(&[0, 4]), ratio(1, 4));
    }

    #[test]
    fn ray_shoot_square_examples() {
        let sq = unit_square_v();
        assert_eq!(
            ray_shoot(&sq, &vec_i64(&[0, 0]), &vec_i64(&[1, 0])).unwrap(),
            vec_i64(&[1, 0])
        );
        assert_eq!(
            ray_shoot(&sq, &vec_i64(&[0, 0]), &vec_i64(&[1, 1])).unwrap(),
            vec_i64(&[1, 1])
        );
    }

    #[test]
    fn ray_shoot_triangle_boundary_point() {
        let tri = VPolytopeOracle::new(vec![
            vec_i64(&[0, 0]),
            vec_i64(&[2, 0]),
            vec_i64(&[0, 1]),
        ])
        .unwrap();
        let w = ray_shoot(&tri, &vec_i64(&[0, 0]), &vec_i64(&[1, 1])).unwrap();
        assert_eq!(w, vec![ratio(2, 3), ratio(2, 3)]);
    }

    #[test]
    fn ray_shoot_h_polytope() {
        let sq = unit_square_h();
        assert_eq!(
            ray_shoot(&sq, &vec_i64(&[0, 0]), &vec_i64(&[1, 1])).unwrap(),
            vec_i64(&[1, 1])
        );
        // leaving immediately returns the apex
        assert_eq!(
            ray_shoot(&sq, &vec_i64(&[0, 0]), &vec_i64(&[-1, 0])).unwrap(),
            vec_i64(&[0, 0])
        );
    }

    /// Adapter hiding native shortcuts, to exercise the generic path.
    struct GenericOnly<'a>(&'a dyn Oracle);

    impl Oracle for GenericOnly<'_> {
        fn ambient_dim(&self) -> usize {
            self.0.ambient_dim()
        }
        fn optimize(&self, c: &[Scalar]) -> Result<Vector> {
            self.0.optimize(c)
        }
        fn meta(&self) -> WellDescribedMeta {
            self.0.meta()
        }
    }

    #[test]
    fn generic_ray_shoot_agrees_with_native() {
        let polys = vec![
            unit_square_v(),
            VPolytopeOracle::new(vec![
                vec_i64(&[0, 0]),
                vec_i64(&[3, 1]),
                vec_i64(&[1, 4]),
                vec_i64(&[-2, 2]),
            ])
            .unwrap(),
        ];
        let dirs = [[1, 0], [0, 1], [1, 1], [2, -1], [-1, 3]];
        for p in &polys {
            let start = initial_vertex(p).unwrap();
            for dir in &dirs {
                let e = vec_i64(dir);
                let native = ray_shoot(p, &start, &e).unwrap();
                let generic = ray_shoot(&GenericOnly(p), &start, &e).unwrap();
                assert_eq!(native, generic, "direction {dir:?}");
            }
        }
    }

    #[test]
    fn ray_shoot_maximality_probe() {
        let sq = unit_square_v();
        let w = ray_shoot(&sq, &vec_i64(&[0, 0]), &vec_i64(&[2, 1])).unwrap();
        assert_eq!(
            membership(&sq, &w).unwrap().verdict,
            MembershipVerdict::Inside
        );
        let eps = ratio(1, 1000);
        let beyond = add_scaled(&w, &eps, &vec_i64(&[2, 1]));
        assert_eq!(
            membership(&sq, &beyond).unwrap().verdict,
            MembershipVerdict::Outside
        );
    }

    #[test]
    fn ray_shoot_rejects_outside_apex() {
        let sq = unit_square_v();
        let err = ray_shoot(&GenericOnly(&sq), &vec_i64(&[5, 5]), &vec_i64(&[1, 0]));
        assert!(matches!(err, Err(Error::NotInPolytope)));
        let err = ray_shoot(&sq, &vec_i64(&[5, 5]), &vec_i64(&[1, 0]));
        assert!(matches!(err, Err(Error::NotInPolytope)));
    }

    #[test]
    fn initial_vertex_examples() {
        assert_eq!(initial_vertex(&unit_square_h()).unwrap(), vec_i64(&[1, 1]));
        let point = VPolytopeOracle::new(vec![vec_i64(&[3, 7])]).unwrap();
        assert_eq!(initial_vertex(&point).unwrap(), vec_i64(&[3, 7]));
        // objective constant on the segment: lexmax of the optimal face
        let seg = segment(&[0, 0], &[2, 2]);
        assert_eq!(seg.optimize(&vec_i64(&[1, -1])).unwrap(), vec_i64(&[2, 2]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            /// optimize lands on a listed point and attains the maximum.
            #[test]
            fn optimize_soundness(
                raw in proptest::collection::vec(
                    proptest::collection::vec(-10i64..=10, 3),
                    1..=8,
                ),
                c in proptest::collection::vec(-5i64..=5, 3),
            ) {
                let points: Vec<Vector> = raw.iter().map(|p| vec_i64(p)).collect();
                let oracle = VPolytopeOracle::new(points.clone()).unwrap();
                let obj = vec_i64(&c);
                let v = oracle.optimize(&obj).unwrap();
                prop_assert!(points.contains(&v));
                let best = points.iter().map(|p| dot(&obj, p)).max().unwrap();
                prop_assert_eq!(dot(&obj, &v), best);
            }

            /// Signed linearity of the Minkowski oracle.
            #[test]
            fn minkowski_linearity(
                a_raw in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 2), 1..=4),
                b_raw in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 2), 1..=4),
                c in proptest::collection::vec(-4i64..=4, 2),
            ) {
                let pa = VPolytopeOracle::new(a_raw.iter().map(|p| vec_i64(p)).collect()).unwrap();
                let pb = VPolytopeOracle::new(b_raw.iter().map(|p| vec_i64(p)).collect()).unwrap();
                let m = MinkowskiOracle::new(vec![
                    SignedTerm { sign: TermSign::Positive, oracle: Box::new(pa.clone()) },
                    SignedTerm { sign: TermSign::Positive, oracle: Box::new(pb.clone()) },
                ]).unwrap();
                let obj = vec_i64(&c);
                let lhs = m.optimize(&obj).unwrap();
                let rhs = crate::exact::add(
                    &pa.optimize(&obj).unwrap(),
                    &pb.optimize(&obj).unwrap(),
                );
                prop_assert_eq!(lhs.clone(), rhs);
                // and the sum is a vertex of the brute-force summed polytope
                let mut summed = Vec::new();
                for x in &a_raw {
                    for y in &b_raw {
                        summed.push(crate::exact::add(&vec_i64(x), &vec_i64(y)));
                    }
                }
                let sum_oracle = VPolytopeOracle::new(summed).unwrap();
                prop_assert_eq!(sum_oracle.optimize(&obj).unwrap(), lhs);
            }
        }
    }
}
