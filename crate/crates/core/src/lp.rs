//! Exact linear programming over the rationals.
//!
//! The public entry point is [`solve_lp`] on inequality-form problems
//! (maximize or minimize `c·x` subject to `Ax <= b`, `x` free). Internally a
//! two-phase tableau simplex with Bland's rule runs on equality standard
//! form, so every answer is exact and deterministic, and every status comes
//! with a checkable certificate:
//!
//! * `Optimal` — an optimal point plus the dual vector `y >= 0` with
//!   `A^T y = c` and `b·y` equal to the optimal value (for `Minimize` the
//!   dual is stated for the maximized `-c` form, so `b·y = -value`).
//! * `Infeasible` — a Farkas vector `y >= 0` with `y^T A = 0`, `y·b < 0`.
//! * `Unbounded` — a ray `r` with `Ar <= 0` improving the objective.
//!
//! Crate-internal callers with nonnegative variables use the equality-form
//! [`StandardLp`] directly, which avoids the free-variable split.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    /// m rows of length d.
    pub constraint_matrix: Vec<Vector>,
    /// Right-hand side, length m.
    pub rhs: Vector,
    /// Objective vector, length d.
    pub objective: Vector,
    pub sense: Sense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpResult {
    pub status: LpStatus,
    /// Optimal point when `Optimal`.
    pub point: Option<Vector>,
    /// Optimal objective value when `Optimal`.
    pub value: Option<Scalar>,
    /// Dual solution, Farkas vector, or unbounded ray (see module docs).
    pub certificate: Option<Vector>,
}

impl LpProblem {
    fn validate(&self) -> Result<usize> {
        let d = self.objective.len();
        if d == 0 {
            return Err(Error::MalformedLp("objective has dimension 0".into()));
        }
        if self.constraint_matrix.len() != self.rhs.len() {
            return Err(Error::MalformedLp(format!(
                "{} rows but {} right-hand sides",
                self.constraint_matrix.len(),
                self.rhs.len()
            )));
        }
        for row in &self.constraint_matrix {
            if row.len() != d {
                return Err(Error::MalformedLp(format!(
                    "row of length {} in dimension {d}",
                    row.len()
                )));
            }
        }
        Ok(d)
    }
}

/// Solves an inequality-form LP exactly. Deterministic: identical inputs give
/// bit-identical results.
pub fn solve_lp(problem: &LpProblem) -> Result<LpResult> {
    let d = problem.validate()?;
    let m = problem.constraint_matrix.len();

    // x = x+ - x-, slack per row: [A  -A  I] z = b, z >= 0.
    let cols = 2 * d + m;
    let mut rows = Vec::with_capacity(m);
    for (i, a) in problem.constraint_matrix.iter().enumerate() {
        let mut lhs = Vec::with_capacity(cols);
        lhs.extend(a.iter().cloned());
        lhs.extend(a.iter().map(|x| -x));
        for k in 0..m {
            lhs.push(if k == i { Scalar::one() } else { Scalar::zero() });
        }
        rows.push((lhs, problem.rhs[i].clone()));
    }

    let max_obj: Vector = match problem.sense {
        Sense::Maximize => problem.objective.clone(),
        Sense::Minimize => problem.objective.iter().map(|x| -x).collect(),
    };
    let mut objective = Vec::with_capacity(cols);
    objective.extend(max_obj.iter().cloned());
    objective.extend(max_obj.iter().map(|x| -x));
    objective.resize(cols, Scalar::zero());

    let std_lp = StandardLp {
        cols,
        rows,
        objective: Some(objective),
        identity_block: Some(2 * d),
    };
    let result = match solve_standard(&std_lp) {
        StdResult::Optimal { point, value, dual } => {
            let x: Vector = (0..d).map(|j| &point[j] - &point[d + j]).collect();
            let primal = dot(&problem.objective, &x);
            let signed_value = match problem.sense {
                Sense::Maximize => value.clone(),
                Sense::Minimize => -value.clone(),
            };
            debug_assert_eq!(primal, signed_value, "objective mismatch");
            // strong duality, exactly
            debug_assert_eq!(dot(&problem.rhs, &dual), value);
            LpResult {
                status: LpStatus::Optimal,
                point: Some(x),
                value: Some(signed_value),
                certificate: Some(dual),
            }
        }
        StdResult::Infeasible { farkas } => {
            debug_assert!(farkas.iter().all(|y| !y.is_negative()));
            debug_assert!(dot(&problem.rhs, &farkas).is_negative());
            LpResult {
                status: LpStatus::Infeasible,
                point: None,
                value: None,
                certificate: Some(farkas),
            }
        }
        StdResult::Unbounded { ray } => {
            let r: Vector = (0..d).map(|j| &ray[j] - &ray[d + j]).collect();
            LpResult {
                status: LpStatus::Unbounded,
                point: None,
                value: None,
                certificate: Some(r),
            }
        }
    };
    Ok(result)
}

/// The lexicographically largest maximizer of `c` over `{x | Ax <= b}`.
///
/// The optimal face is pinned coordinate by coordinate, so the result is a
/// vertex whenever the feasible region is pointed, independent of the pivot
/// path.
pub fn lex_optimize(a: &[Vector], b: &[Scalar], c: &Vector) -> Result<Vector> {
    let d = c.len();
    let mut matrix: Vec<Vector> = a.to_vec();
    let mut rhs: Vector = b.to_vec();

    let pin = |matrix: &mut Vec<Vector>, rhs: &mut Vector, obj: &Vector| -> Result<Scalar> {
        let result = solve_lp(&LpProblem {
            constraint_matrix: matrix.clone(),
            rhs: rhs.clone(),
            objective: obj.clone(),
            sense: Sense::Maximize,
        })?;
        match result.status {
            LpStatus::Optimal => {
                let v = result.value.unwrap();
                matrix.push(obj.clone());
                rhs.push(v.clone());
                matrix.push(obj.iter().map(|x| -x).collect());
                rhs.push(-v.clone());
                Ok(v)
            }
            LpStatus::Infeasible => Err(Error::MalformedLp("infeasible system".into())),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    };

    pin(&mut matrix, &mut rhs, c)?;
    let mut point = Vec::with_capacity(d);
    for j in 0..d {
        let ej = crate::exact::unit(d, j);
        point.push(pin(&mut matrix, &mut rhs, &ej)?);
    }
    Ok(point)
}

// ---------------------------------------------------------------------------
// Standard-form core
// ---------------------------------------------------------------------------

/// maximize objective·z subject to lhs·z = rhs per row, z >= 0.
/// `objective: None` solves feasibility only. When the columns starting at
/// `identity_block` form a +I slack block (one column per row), rows whose
/// right-hand side is nonnegative start from their slack instead of an
/// artificial variable, and phase I disappears entirely for feasible-origin
/// systems.
pub(crate) struct StandardLp {
    pub cols: usize,
    pub rows: Vec<(Vector, Scalar)>,
    pub objective: Option<Vector>,
    pub identity_block: Option<usize>,
}

pub(crate) enum StdResult {
    Optimal {
        point: Vector,
        value: Scalar,
        /// Row multipliers in the caller's row order and signs.
        dual: Vector,
    },
    Infeasible {
        /// y with y·(column j of lhs) >= 0 for every column and y·rhs < 0.
        farkas: Vector,
    },
    Unbounded {
        ray: Vector,
    },
}

struct Tableau {
    n_struct: usize,
    rows: Vec<Vector>,
    rhs: Vector,
    basis: Vec<usize>,
    obj: Vector,
    obj_val: Scalar,
    /// Original row index per live tableau row.
    row_ids: Vec<usize>,
    /// Per original row: (column whose reduced cost recovers the dual, flip).
    probes: Vec<(usize, bool)>,
}

enum RunOutcome {
    Optimal,
    Unbounded { entering: usize },
}

impl Tableau {
    fn pivot(&mut self, r: usize, jc: usize) {
        let piv = self.rows[r][jc].clone();
        debug_assert!(!piv.is_zero());
        if !piv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &piv;
                }
            }
            self.rhs[r] /= &piv;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][jc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.obj[jc].clone();
        if !f.is_zero() {
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.obj_val += &f * &pivot_rhs;
        }
        self.basis[r] = jc;
    }

    /// Reduced costs for `costs`, pricing out the current basis.
    fn price_out(&mut self, costs: &[Scalar]) {
        self.obj = costs.to_vec();
        self.obj_val = Scalar::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (x, p) in self.obj.iter_mut().zip(&self.rows[i]) {
                if !p.is_zero() {
                    *x -= &cb * p;
                }
            }
            self.obj_val += &cb * &self.rhs[i];
        }
    }

    /// Bland's rule until no structural column improves. Artificial columns
    /// never enter.
    fn run(&mut self) -> RunOutcome {
        loop {
            let entering = (0..self.n_struct).find(|&j| self.obj[j].is_positive());
            let Some(jc) = entering else {
                return RunOutcome::Optimal;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][jc].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][jc];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, jc),
                None => return RunOutcome::Unbounded { entering: jc },
            }
        }
    }

    fn basic_point(&self) -> Vector {
        let mut z = vec![Scalar::zero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                z[b] = self.rhs[i].clone();
            }
        }
        z
    }

    /// Row multipliers, in the caller's row order and signs, recovered from
    /// the probe columns: y_i = cost(probe_i) - reduced_cost(probe_i).
    fn duals(&self, n_rows_original: usize, costs: &[Scalar]) -> Vector {
        let mut y = vec![Scalar::zero(); n_rows_original];
        for &orig in &self.row_ids {
            let (probe, flip) = self.probes[orig];
            let mut yi = &costs[probe] - &self.obj[probe];
            if flip {
                yi = -yi;
            }
            y[orig] = yi;
        }
        y
    }
}

pub(crate) fn solve_standard(lp: &StandardLp) -> StdResult {
    let m = lp.rows.len();
    let n = lp.cols;

    // Sign-normalize rows so every right-hand side is nonnegative. Rows that
    // keep a +1 slack from the identity block start basic on it; the rest
    // get an artificial column.
    let mut signs = vec![1i8; m];
    let mut rows: Vec<Vector> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (lhs, b)) in lp.rows.iter().enumerate() {
        debug_assert_eq!(lhs.len(), n);
        if b.is_negative() {
            signs[i] = -1;
            rows.push(lhs.iter().map(|x| -x).collect());
            rhs.push(-b.clone());
        } else {
            rows.push(lhs.clone());
            rhs.push(b.clone());
        }
    }

    let mut basis = Vec::with_capacity(m);
    let mut probes = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    for i in 0..m {
        match lp.identity_block {
            Some(ib) if signs[i] > 0 => {
                basis.push(ib + i);
                probes.push((ib + i, false));
            }
            Some(ib) => {
                artificial_rows.push(i);
                basis.push(usize::MAX); // patched below
                probes.push((ib + i, false));
            }
            None => {
                artificial_rows.push(i);
                basis.push(usize::MAX);
                probes.push((usize::MAX, signs[i] < 0)); // patched below
            }
        }
    }
    let n_art = artificial_rows.len();
    let ncols = n + n_art;
    for (slot, &i) in artificial_rows.iter().enumerate() {
        let col = n + slot;
        basis[i] = col;
        if probes[i].0 == usize::MAX {
            probes[i] = (col, signs[i] < 0);
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(ncols, Scalar::zero());
        if basis[i] >= n {
            row[basis[i]] = Scalar::one();
        }
    }

    let mut t = Tableau {
        n_struct: n,
        rows,
        rhs,
        basis,
        obj: Vec::new(),
        obj_val: Scalar::zero(),
        row_ids: (0..m).collect(),
        probes,
    };

    if n_art > 0 {
        // Phase I: maximize -(sum of artificials).
        let mut phase1_costs = vec![Scalar::zero(); ncols];
        for c in phase1_costs.iter_mut().skip(n) {
            *c = -Scalar::one();
        }
        t.price_out(&phase1_costs);
        match t.run() {
            RunOutcome::Optimal => {}
            RunOutcome::Unbounded { .. } => unreachable!("phase I objective is bounded"),
        }
        if t.obj_val.is_negative() {
            let farkas = t.duals(m, &phase1_costs);
            debug_assert!(dot_rows(&lp.rows, &farkas).1.is_negative());
            return StdResult::Infeasible { farkas };
        }

        // Drive remaining artificials out of the basis; rows that cannot
        // pivot are redundant and get dropped.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= t.n_struct {
                match (0..t.n_struct).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        t.row_ids.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let Some(objective) = &lp.objective else {
        return StdResult::Optimal {
            point: t.basic_point(),
            value: Scalar::zero(),
            dual: vec![Scalar::zero(); m],
        };
    };

    // Phase II.
    let mut phase2_costs = objective.clone();
    phase2_costs.resize(ncols, Scalar::zero());
    t.price_out(&phase2_costs);
    match t.run() {
        RunOutcome::Optimal => {
            let dual = t.duals(m, &phase2_costs);
            StdResult::Optimal {
                point: t.basic_point(),
                value: t.obj_val.clone(),
                dual,
            }
        }
        RunOutcome::Unbounded { entering } => {
            let mut ray = vec![Scalar::zero(); t.n_struct];
            ray[entering] = Scalar::one();
            for (i, &b) in t.basis.iter().enumerate() {
                if b < t.n_struct {
                    ray[b] = -t.rows[i][entering].clone();
                }
            }
            debug_assert!(ray.iter().all(|x| !x.is_negative()));
            StdResult::Unbounded { ray }
        }
    }
}

/// (y·columns, y·rhs) over the caller's rows; used by debug checks.
fn dot_rows(rows: &[(Vector, Scalar)], y: &[Scalar]) -> (Vector, Scalar) {
    let n = rows.first().map_or(0, |(lhs, _)| lhs.len());
    let mut cols = vec![Scalar::zero(); n];
    let mut b = Scalar::zero();
    for ((lhs, rhs), yi) in rows.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        for (c, a) in cols.iter_mut().zip(lhs) {
            if !a.is_zero() {
                *c += yi * a;
            }
        }
        b += yi * rhs;
    }
    (cols, b)
}

/// Feasibility of `lhs·z = rhs, z >= 0`; `Ok` carries a feasible point,
/// `Err` the Farkas vector.
pub(crate) fn feasible_point(cols: usize, rows: Vec<(Vector, Scalar)>) -> std::result::Result<Vector, Vector> {
    let lp = StandardLp {
        cols,
        rows,
        objective: None,
        identity_block: None,
    };
    match solve_standard(&lp) {
        StdResult::Optimal { point, .. } => Ok(point),
        StdResult::Infeasible { farkas } => Err(farkas),
        StdResult::Unbounded { .. } => unreachable!("feasibility has no objective"),
    }
}
