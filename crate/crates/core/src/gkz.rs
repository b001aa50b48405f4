//! Secondary and resultant polytopes: Cayley embeddings, regular
//! triangulations by lifting, GKZ coordinate vectors, and circuit-based
//! edge-direction supersets.
//!
//! Triangulations come from the lower hull of a lifted point configuration.
//! Heights are perturbed symbolically by `ε^(label+1)` with `ε` an
//! infinitesimal, so a non-generic lifting vector is refined into a full
//! triangulation by a fixed deterministic rule; the result always refines
//! the subdivision the unperturbed heights induce. With the lower-hull
//! convention, the subdivision induced by heights `w` *minimizes* the GKZ
//! pairing, so the optimization oracles lift by `-c` to maximize `c`.
//!
//! Everything here assumes the fixed-dimension regime: configurations live
//! in dimension at most four (Cayley embeddings at most eight).

use num_traits::{One, Signed, Zero};

use crate::direction::{canonical_direction, DirectionMode, DirectionSet, DirectionSource};
use crate::error::{Error, Result};
use crate::exact::{
    check_dim, is_integer_vector, neg, sub, vector_bits, zeros, Scalar, Vector,
};
use crate::linalg::{affine_rank, determinant, normalized_volume, nullspace, relative_volume};
use crate::lp::{feasible_point, solve_standard, StandardLp, StdResult};
use crate::oracle::{Oracle, WellDescribedMeta};
use crate::par::indexed_map;

/// Largest supported configuration dimension for triangulation machinery.
pub const MAX_CONFIG_DIM: usize = 4;

/// An ordered list of integer points in Z^k. The point order is fixed and
/// determines the coordinate order of every GKZ vector built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<Vector>,
    dim: usize,
}

impl PointConfiguration {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("point configuration"))?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::EmptyInput("point configuration dimension"));
        }
        for p in &points {
            check_dim(p, dim)?;
            if !is_integer_vector(p) {
                return Err(Error::Invalid(format!(
                    "configuration point {} is not integral",
                    crate::exact::format_vector(p)
                )));
            }
        }
        Ok(Self { points, dim })
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn simplex_points(&self, labels: &[usize]) -> Vec<Vector> {
        labels.iter().map(|&i| self.points[i].clone()).collect()
    }
}

/// Cayley embedding of supports A_0, ..., A_k in Z^k into Z^(2k): the j-th
/// support is placed at the j-th affine basis point (e_0 = 0).
#[derive(Clone, Debug)]
pub struct CayleyConfiguration {
    supports: Vec<Vec<Vector>>,
    embedded: PointConfiguration,
    /// global label -> (support index, index within support)
    origin: Vec<(usize, usize)>,
    k: usize,
}

impl CayleyConfiguration {
    pub fn new(supports: Vec<Vec<Vector>>) -> Result<Self> {
        let first = supports
            .first()
            .and_then(|s| s.first())
            .ok_or(Error::EmptyInput("Cayley supports"))?;
        let k = first.len();
        if supports.len() != k + 1 {
            return Err(Error::Invalid(format!(
                "{} supports supplied; points in Z^{k} need exactly {}",
                supports.len(),
                k + 1
            )));
        }
        let mut embedded = Vec::new();
        let mut origin = Vec::new();
        for (j, support) in supports.iter().enumerate() {
            if support.is_empty() {
                return Err(Error::EmptyInput("Cayley support"));
            }
            for (idx, p) in support.iter().enumerate() {
                check_dim(p, k)?;
                let mut q = Vec::with_capacity(2 * k);
                q.extend(p.iter().cloned());
                for r in 1..=k {
                    q.push(if r == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    });
                }
                embedded.push(q);
                origin.push((j, idx));
            }
        }
        Ok(Self {
            supports,
            embedded: PointConfiguration::new(embedded)?,
            origin,
            k,
        })
    }

    pub fn embedded(&self) -> &PointConfiguration {
        &self.embedded
    }

    pub fn supports(&self) -> &[Vec<Vector>] {
        &self.supports
    }

    pub fn origin(&self) -> &[(usize, usize)] {
        &self.origin
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// A triangulation given by its maximal simplices, each a sorted list of
/// point labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    fn new(mut simplices: Vec<Vec<usize>>) -> Self {
        for s in simplices.iter_mut() {
            s.sort_unstable();
        }
        simplices.sort();
        Self { simplices }
    }
}

// ---------------------------------------------------------------------------
// Regular triangulations by lifting
// ---------------------------------------------------------------------------

/// Determinant of the lifted orientation matrix for simplex `sigma` against
/// point `q`, with heights given by `h`. Linear in `h`.
fn lifted_det(
    config: &PointConfiguration,
    sigma: &[usize],
    q: usize,
    h: &dyn Fn(usize) -> Scalar,
) -> Scalar {
    let k = config.dim;
    let base = &config.points[sigma[0]];
    let h0 = h(sigma[0]);
    let mut rows = Vec::with_capacity(k + 1);
    for &i in &sigma[1..] {
        let mut row = sub(&config.points[i], base);
        row.push(h(i) - &h0);
        rows.push(row);
    }
    let mut row = sub(&config.points[q], base);
    row.push(h(q) - &h0);
    rows.push(row);
    determinant(rows)
}

/// Is `q` strictly above the hyperplane spanned by the lifted `sigma`,
/// under the symbolic perturbation `w_i + ε^(i+1)`? `base_sign` is the sign
/// of the unlifted orientation determinant of `sigma`.
fn lifted_above(
    config: &PointConfiguration,
    sigma: &[usize],
    base_sign: i8,
    q: usize,
    w: &[Scalar],
) -> bool {
    let d0 = lifted_det(config, sigma, q, &|i| w[i].clone());
    let s = crate::exact::sign(&d0);
    if s != 0 {
        return s == base_sign;
    }
    // Tie: the perturbation decides, lexicographically by label.
    let mut participating: Vec<usize> = sigma.to_vec();
    participating.push(q);
    participating.sort_unstable();
    for idx in participating {
        let di = lifted_det(config, sigma, q, &|i| {
            if i == idx {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let s = crate::exact::sign(&di);
        if s != 0 {
            return s == base_sign;
        }
    }
    unreachable!("perturbed lift admits no ties");
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n || k == 0 {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k - 1;
        while idx[i] == i + n - k {
            if i == 0 {
                return out;
            }
            i -= 1;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The regular triangulation induced by lifting point `i` to height `w_i`
/// and taking the lower hull. Non-generic heights are refined by the fixed
/// symbolic perturbation, so the result is always a triangulation refining
/// the `w`-subdivision, deterministically.
pub fn regular_triangulation(config: &PointConfiguration, w: &[Scalar]) -> Result<Triangulation> {
    let k = config.dim;
    if k > 2 * MAX_CONFIG_DIM {
        return Err(Error::Invalid(format!(
            "triangulations supported up to dimension {}",
            2 * MAX_CONFIG_DIM
        )));
    }
    check_dim(w, config.len())?;
    if affine_rank(config.points())? < k {
        return Err(Error::Degenerate(format!(
            "configuration does not span dimension {k}"
        )));
    }

    let subsets = k_subsets(config.len(), k + 1);
    let cells = indexed_map(subsets.len(), |s| -> Option<Vec<usize>> {
        let sigma = &subsets[s];
        let pts = config.simplex_points(sigma);
        let base = &pts[0];
        let diffs: Vec<Vector> = pts[1..].iter().map(|p| sub(p, base)).collect();
        let base_sign = crate::exact::sign(&determinant(diffs));
        if base_sign == 0 {
            return None;
        }
        let is_cell = (0..config.len())
            .filter(|q| !sigma.contains(q))
            .all(|q| lifted_above(config, sigma, base_sign, q, w));
        is_cell.then(|| sigma.clone())
    });
    Ok(Triangulation::new(cells.into_iter().flatten().collect()))
}

// ---------------------------------------------------------------------------
// GKZ vectors
// ---------------------------------------------------------------------------

fn check_simplices(config: &PointConfiguration, t: &Triangulation, size: usize) -> Result<()> {
    for sigma in &t.simplices {
        if sigma.len() != size {
            return Err(Error::Invalid(format!(
                "simplex with {} labels; expected {size}",
                sigma.len()
            )));
        }
        for &i in sigma {
            if i >= config.len() {
                return Err(Error::Invalid(format!(
                    "simplex label {i} outside configuration of {} points",
                    config.len()
                )));
            }
        }
    }
    Ok(())
}

/// φ-vector: coordinate `i` sums the normalized volumes of the simplices of
/// `t` having point `i` as a vertex.
pub fn phi_vector(config: &PointConfiguration, t: &Triangulation) -> Result<Vector> {
    check_simplices(config, t, config.dim + 1)?;
    let mut coords = zeros(config.len());
    for sigma in &t.simplices {
        let vol = normalized_volume(&config.simplex_points(sigma))?;
        for &i in sigma {
            coords[i] += &vol;
        }
    }
    Ok(coords)
}

/// ρ-vector of a Cayley configuration: coordinate `i` sums the normalized
/// volumes of the i-mixed simplices, those containing `p_i` from its
/// support and exactly two points from every other support.
pub fn rho_vector(cayley: &CayleyConfiguration, t: &Triangulation) -> Result<Vector> {
    let config = cayley.embedded();
    check_simplices(config, t, config.dim + 1)?;
    let n_supports = cayley.supports.len();
    let mut coords = zeros(config.len());
    for sigma in &t.simplices {
        let mut counts = vec![0usize; n_supports];
        for &i in sigma {
            counts[cayley.origin[i].0] += 1;
        }
        let mut single = None;
        let mut mixed = true;
        for (j, &c) in counts.iter().enumerate() {
            match c {
                2 => {}
                1 if single.is_none() => single = Some(j),
                _ => {
                    mixed = false;
                    break;
                }
            }
        }
        let Some(ell) = single else { continue };
        if !mixed {
            continue;
        }
        let vol = normalized_volume(&config.simplex_points(sigma))?;
        let i = sigma
            .iter()
            .copied()
            .find(|&i| cayley.origin[i].0 == ell)
            .expect("support ell contributes one point");
        coords[i] += &vol;
    }
    Ok(coords)
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

/// A minimally affinely dependent subset with its canonical dependence:
/// primitive integers, first nonzero coefficient positive, aligned with the
/// sorted support labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub support: Vec<usize>,
    pub dependence: Vector,
}

impl Circuit {
    pub fn positive_part(&self) -> Vec<usize> {
        self.support
            .iter()
            .zip(&self.dependence)
            .filter(|(_, l)| l.is_positive())
            .map(|(&i, _)| i)
            .collect()
    }

    pub fn negative_part(&self) -> Vec<usize> {
        self.support
            .iter()
            .zip(&self.dependence)
            .filter(|(_, l)| l.is_negative())
            .map(|(&i, _)| i)
            .collect()
    }

    /// Dependence as a full-length vector over `d` labels.
    pub fn embedded_dependence(&self, d: usize) -> Vector {
        let mut v = zeros(d);
        for (&i, l) in self.support.iter().zip(&self.dependence) {
            v[i] = l.clone();
        }
        v
    }
}

/// The affine dependence generator of a label subset, when the dependence
/// space is exactly one-dimensional with full support.
fn minimal_dependence(config: &PointConfiguration, labels: &[usize]) -> Result<Option<Vector>> {
    let k = config.dim;
    let mut rows = Vec::with_capacity(k + 1);
    for r in 0..k {
        rows.push(labels.iter().map(|&i| config.points[i][r].clone()).collect());
    }
    rows.push(vec![Scalar::one(); labels.len()]);
    let basis = nullspace(rows, labels.len());
    if basis.len() != 1 {
        return Ok(None);
    }
    let generator = &basis[0];
    if generator.iter().any(Zero::is_zero) {
        return Ok(None);
    }
    Ok(Some(canonical_direction(
        generator,
        DirectionMode::Undirected,
    )?))
}

/// All circuits of size at most k+2: every minimally affinely dependent
/// subset, each with its canonical dependence vector.
pub fn enumerate_circuits(config: &PointConfiguration) -> Result<Vec<Circuit>> {
    let k = config.dim;
    let mut subsets = Vec::new();
    for size in 2..=(k + 2).min(config.len()) {
        subsets.extend(k_subsets(config.len(), size));
    }
    let found = indexed_map(subsets.len(), |s| -> Result<Option<Circuit>> {
        Ok(minimal_dependence(config, &subsets[s])?.map(|dependence| Circuit {
            support: subsets[s].clone(),
            dependence,
        }))
    });
    let mut circuits = Vec::new();
    for c in found {
        if let Some(c) = c? {
            circuits.push(c);
        }
    }
    Ok(circuits)
}

/// True iff every subset of at most k+1 points is affinely independent.
pub fn genericity_check(config: &PointConfiguration) -> Result<bool> {
    let k = config.dim;
    for size in 2..=(k + 1).min(config.len()) {
        for subset in k_subsets(config.len(), size) {
            let pts = config.simplex_points(&subset);
            if affine_rank(&pts)? < size - 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// GKZ vector of the one-sided circuit triangulation `{C \ {a} : a in part}`
/// using volumes relative to the circuit's affine hull (lower-dimensional
/// circuits carry edges too when the configuration is not generic).
fn circuit_phi(config: &PointConfiguration, circuit: &Circuit, part: &[usize]) -> Result<Vector> {
    let mut coords = zeros(config.len());
    for &a in part {
        let cell: Vec<usize> = circuit.support.iter().copied().filter(|&i| i != a).collect();
        let vol = relative_volume(&config.simplex_points(&cell))?;
        for &i in &cell {
            coords[i] += &vol;
        }
    }
    Ok(coords)
}

/// Superset of the secondary polytope's edge directions: for every circuit
/// the difference of the φ-vectors of its two triangulations. All circuits
/// up to size k+2 participate, so the superset is valid even for
/// configurations not in generic position.
pub fn circuit_directions_secondary(config: &PointConfiguration) -> Result<DirectionSet> {
    let circuits = enumerate_circuits(config)?;
    let mut raw = Vec::with_capacity(circuits.len());
    for c in &circuits {
        let plus = circuit_phi(config, c, &c.positive_part())?;
        let minus = circuit_phi(config, c, &c.negative_part())?;
        raw.push(sub(&plus, &minus));
    }
    DirectionSet::undirected(raw, DirectionSource::Circuits)
}

/// The resultant-specific genericity required by the cubical-circuit method:
/// each support individually in generic position, and every two-per-support
/// selection of Cayley points minimally affinely dependent.
pub fn resultant_genericity(cayley: &CayleyConfiguration) -> Result<()> {
    for (j, support) in cayley.supports.iter().enumerate() {
        let config = PointConfiguration::new(support.clone())?;
        if !genericity_check(&config)? {
            return Err(Error::GenericityRequired(format!(
                "support {j} is not in generic position"
            )));
        }
    }
    for selection in cubical_selections(cayley) {
        if minimal_dependence(cayley.embedded(), &selection)?.is_none() {
            return Err(Error::GenericityRequired(format!(
                "cubical selection {selection:?} is not a circuit"
            )));
        }
    }
    Ok(())
}

/// All label selections taking exactly two points from every support.
fn cubical_selections(cayley: &CayleyConfiguration) -> Vec<Vec<usize>> {
    let mut offsets = Vec::with_capacity(cayley.supports.len());
    let mut off = 0;
    for s in &cayley.supports {
        offsets.push(off);
        off += s.len();
    }
    let mut selections: Vec<Vec<usize>> = vec![Vec::new()];
    for (j, support) in cayley.supports.iter().enumerate() {
        if support.len() < 2 {
            return Vec::new();
        }
        let pairs = k_subsets(support.len(), 2);
        let mut next = Vec::with_capacity(selections.len() * pairs.len());
        for sel in &selections {
            for pair in &pairs {
                let mut grown = sel.clone();
                grown.extend(pair.iter().map(|&i| offsets[j] + i));
                next.push(grown);
            }
        }
        selections = next;
    }
    selections
}

/// ρ-vector of a one-sided cubical-circuit triangulation. Every cell of
/// `{C \ {a}}` for `a` in one part is automatically i-mixed, `i` being the
/// removed point's partner within its support.
fn circuit_rho(cayley: &CayleyConfiguration, circuit: &Circuit, part: &[usize]) -> Result<Vector> {
    let config = cayley.embedded();
    let mut coords = zeros(config.len());
    for &a in part {
        let cell: Vec<usize> = circuit.support.iter().copied().filter(|&i| i != a).collect();
        let vol = normalized_volume(&config.simplex_points(&cell))?;
        let support_of_a = cayley.origin[a].0;
        let partner = cell
            .iter()
            .copied()
            .find(|&i| cayley.origin[i].0 == support_of_a)
            .expect("cubical circuit has two points per support");
        coords[partner] += &vol;
    }
    Ok(coords)
}

/// Superset of the resultant polytope's edge directions from cubical
/// circuits; requires generic position and refuses anything else.
pub fn circuit_directions_resultant(cayley: &CayleyConfiguration) -> Result<DirectionSet> {
    resultant_genericity(cayley)?;
    let selections = cubical_selections(cayley);
    let mut raw = Vec::new();
    for selection in &selections {
        let dependence = minimal_dependence(cayley.embedded(), selection)?
            .expect("selection verified by the genericity check");
        let circuit = Circuit {
            support: selection.clone(),
            dependence,
        };
        let plus = circuit_rho(cayley, &circuit, &circuit.positive_part())?;
        let minus = circuit_rho(cayley, &circuit, &circuit.negative_part())?;
        let diff = sub(&plus, &minus);
        if !crate::exact::is_zero_vector(&diff) {
            raw.push(diff);
        }
    }
    DirectionSet::undirected(raw, DirectionSource::Circuits)
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

fn volume_meta(dim: usize, total_volume: &Scalar) -> WellDescribedMeta {
    // every GKZ coordinate is bounded by the total normalized volume
    let bound = vec![total_volume.clone(); dim];
    let nu = vector_bits(&bound);
    let d = dim as u64;
    WellDescribedMeta::new(dim, 3 * d * d * nu)
}

/// Optimization oracle for the secondary polytope of a configuration:
/// `optimize(c)` lifts by `-c`, triangulates, and returns the φ-vector.
/// The deterministic lifting refinement makes the answer a vertex of the
/// optimal face even for non-generic objectives.
pub struct SecondaryOracle {
    config: PointConfiguration,
    total_volume: Scalar,
}

impl SecondaryOracle {
    pub fn new(config: PointConfiguration) -> Result<Self> {
        if config.dim() > MAX_CONFIG_DIM {
            return Err(Error::Invalid(format!(
                "secondary polytopes supported for dimension <= {MAX_CONFIG_DIM}"
            )));
        }
        let reference = regular_triangulation(&config, &zeros(config.len()))?;
        let mut total = Scalar::zero();
        for sigma in &reference.simplices {
            total += normalized_volume(&config.simplex_points(sigma))?;
        }
        Ok(Self {
            config,
            total_volume: total,
        })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }
}

impl Oracle for SecondaryOracle {
    fn ambient_dim(&self) -> usize {
        self.config.len()
    }

    fn optimize(&self, c: &[Scalar]) -> Result<Vector> {
        check_dim(c, self.config.len())?;
        let t = regular_triangulation(&self.config, &neg(c))?;
        phi_vector(&self.config, &t)
    }

    fn meta(&self) -> WellDescribedMeta {
        volume_meta(self.config.len(), &self.total_volume)
    }
}

/// Optimization oracle for the resultant polytope of `k+1` supports in Z^k:
/// `optimize(c)` lifts the Cayley configuration by `-c` and returns the
/// ρ-vector of the resulting triangulation.
pub struct ResultantOracle {
    cayley: CayleyConfiguration,
    total_volume: Scalar,
}

impl ResultantOracle {
    pub fn new(cayley: CayleyConfiguration) -> Result<Self> {
        if cayley.k() > MAX_CONFIG_DIM {
            return Err(Error::Invalid(format!(
                "resultant polytopes supported for k <= {MAX_CONFIG_DIM}"
            )));
        }
        let config = cayley.embedded();
        let reference = regular_triangulation(config, &zeros(config.len()))?;
        let mut total = Scalar::zero();
        for sigma in &reference.simplices {
            total += normalized_volume(&config.simplex_points(sigma))?;
        }
        Ok(Self {
            cayley,
            total_volume: total,
        })
    }

    pub fn cayley(&self) -> &CayleyConfiguration {
        &self.cayley
    }
}

impl Oracle for ResultantOracle {
    fn ambient_dim(&self) -> usize {
        self.cayley.embedded().len()
    }

    fn optimize(&self, c: &[Scalar]) -> Result<Vector> {
        check_dim(c, self.cayley.embedded().len())?;
        let t = regular_triangulation(self.cayley.embedded(), &neg(c))?;
        rho_vector(&self.cayley, &t)
    }

    fn meta(&self) -> WellDescribedMeta {
        volume_meta(self.cayley.embedded().len(), &self.total_volume)
    }
}

// ---------------------------------------------------------------------------
// Validation and exhaustive enumeration (test-grade, desk scale)
// ---------------------------------------------------------------------------

/// Do two simplices of the configuration intersect in a common face?
/// Improper intersections are certified by a barycentric coordinate outside
/// the shared label set that can be made positive inside the intersection.
fn face_to_face(config: &PointConfiguration, sigma: &[usize], tau: &[usize]) -> Result<bool> {
    let k = config.dim;
    let shared: Vec<usize> = sigma.iter().copied().filter(|i| tau.contains(i)).collect();
    let ns = sigma.len();
    let nt = tau.len();
    // feasibility variables: barycentric λ over sigma, μ over tau
    let mut base_rows: Vec<(Vector, Scalar)> = Vec::with_capacity(k + 2);
    for r in 0..k {
        let mut lhs = Vec::with_capacity(ns + nt);
        for &i in sigma {
            lhs.push(config.points[i][r].clone());
        }
        for &i in tau {
            lhs.push(-config.points[i][r].clone());
        }
        base_rows.push((lhs, Scalar::zero()));
    }
    let mut lhs = vec![Scalar::one(); ns];
    lhs.extend(std::iter::repeat_n(Scalar::zero(), nt));
    base_rows.push((lhs, Scalar::one()));
    let mut lhs = vec![Scalar::zero(); ns];
    lhs.extend(std::iter::repeat_n(Scalar::one(), nt));
    base_rows.push((lhs, Scalar::one()));

    for (pos, &i) in sigma.iter().enumerate() {
        if shared.contains(&i) {
            continue;
        }
        let mut objective = zeros(ns + nt);
        objective[pos] = Scalar::one();
        let outcome = solve_standard(&StandardLp {
            cols: ns + nt,
            rows: base_rows.clone(),
            objective: Some(objective),
            identity_block: None,
        });
        match outcome {
            StdResult::Optimal { value, .. } => {
                if value.is_positive() {
                    return Ok(false);
                }
            }
            StdResult::Infeasible { .. } => return Ok(true),
            StdResult::Unbounded { .. } => unreachable!("barycentric variables are bounded"),
        }
    }
    Ok(true)
}

/// Checks that `t` is a genuine triangulation of the configuration's convex
/// hull: nondegenerate cells, pairwise face-to-face intersections, and
/// total volume matching a reference triangulation.
pub fn validate_triangulation(config: &PointConfiguration, t: &Triangulation) -> Result<()> {
    check_simplices(config, t, config.dim + 1)?;
    let mut total = Scalar::zero();
    for sigma in &t.simplices {
        let vol = normalized_volume(&config.simplex_points(sigma))?;
        if vol.is_zero() {
            return Err(Error::Degenerate(format!("flat simplex {sigma:?}")));
        }
        total += vol;
    }
    let reference = regular_triangulation(config, &zeros(config.len()))?;
    let mut expected = Scalar::zero();
    for sigma in &reference.simplices {
        expected += normalized_volume(&config.simplex_points(sigma))?;
    }
    if total != expected {
        return Err(Error::Invalid(format!(
            "covered volume {total} differs from hull volume {expected}"
        )));
    }
    for (i, sigma) in t.simplices.iter().enumerate() {
        for tau in &t.simplices[i + 1..] {
            if !face_to_face(config, sigma, tau)? {
                return Err(Error::Invalid(format!(
                    "simplices {sigma:?} and {tau:?} do not meet face-to-face"
                )));
            }
        }
    }
    Ok(())
}

/// Exhaustively enumerates all triangulations of a small configuration
/// (regular or not) by searching exact covers of the hull volume by
/// pairwise face-to-face simplices. Strictly desk scale.
pub fn enumerate_all_triangulations(config: &PointConfiguration) -> Result<Vec<Triangulation>> {
    let k = config.dim;
    let candidates: Vec<Vec<usize>> = k_subsets(config.len(), k + 1)
        .into_iter()
        .filter(|s| {
            normalized_volume(&config.simplex_points(s))
                .map(|v| !v.is_zero())
                .unwrap_or(false)
        })
        .collect();
    let volumes: Vec<Scalar> = candidates
        .iter()
        .map(|s| normalized_volume(&config.simplex_points(s)))
        .collect::<Result<_>>()?;
    let reference = regular_triangulation(config, &zeros(config.len()))?;
    let mut target = Scalar::zero();
    for sigma in &reference.simplices {
        target += normalized_volume(&config.simplex_points(sigma))?;
    }

    // pairwise compatibility table
    let n = candidates.len();
    let mut compatible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let ok = face_to_face(config, &candidates[i], &candidates[j])?;
            compatible[i][j] = ok;
            compatible[j][i] = ok;
        }
    }

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn search(
        start: usize,
        acc: &Scalar,
        target: &Scalar,
        candidates: &[Vec<usize>],
        volumes: &[Scalar],
        compatible: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Triangulation>,
    ) {
        if acc == target {
            out.push(Triangulation::new(
                chosen.iter().map(|&i| candidates[i].clone()).collect(),
            ));
            return;
        }
        for i in start..candidates.len() {
            if &(acc + &volumes[i]) > target {
                continue;
            }
            if !chosen.iter().all(|&j| compatible[j][i]) {
                continue;
            }
            chosen.push(i);
            search(
                i + 1,
                &(acc + &volumes[i]),
                target,
                candidates,
                volumes,
                compatible,
                chosen,
                out,
            );
            chosen.pop();
        }
    }
    search(
        0,
        &Scalar::zero(),
        &target,
        &candidates,
        &volumes,
        &compatible,
        &mut chosen,
        &mut out,
    );
    Ok(out)
}

/// Exact membership of a point in the convex hull of a configuration;
/// used by tests.
pub fn in_hull(config: &PointConfiguration, x: &[Scalar]) -> Result<bool> {
    let n = config.len();
    let mut rows = Vec::with_capacity(config.dim + 1);
    for r in 0..config.dim {
        let lhs: Vector = config.points.iter().map(|p| p[r].clone()).collect();
        rows.push((lhs, x[r].clone()));
    }
    rows.push((vec![Scalar::one(); n], Scalar::one()));
    Ok(feasible_point(n, rows).is_ok())
}
