//! The recovery pipeline: from a function that is affine along coordinate
//! lines and along a set of radial lines `R v`, certify global affinity,
//! produce a non-affine witness, or report the exact cancellation that is
//! unavailable in the ring.
//!
//! Stages, in order:
//!
//! 1. every line `m0 + R e_i` is checked; the function is then the
//!    multi-affine polynomial `Psi` of its finite differences at the origin;
//! 2. every radial line `R v` is checked;
//! 3. on each radial line the identity `sum_{k>=1} c_k r^k = 0` (for all `r`)
//!    is turned into `c_k = 0` by evaluating at nodes `r_1..r_d` whose
//!    Vandermonde-type determinant is regular;
//! 4. for each degree `k >= 2`, in increasing order, the linear system
//!    `sum_{|J| = k} a_J v^J = 0` (one row per direction) is solved exactly.

use std::collections::BTreeMap;

use crate::bh_sets::{verify_properties, BhCandidate};
use crate::error::{Error, Result};
use crate::linalg::{determinant, kernel_basis, rank, Matrix};
use crate::multiaffine::{
    all_points, line_affine_check, mask_string, psi_extract, subsets_of_size, FunctionOracle, Line, LineCheck,
    MultiAffinePoly, Point,
};
use crate::ring::{Ring, RingElem};

/// Row subsets tried when looking for a square block with regular
/// determinant over a ring that is not a field.
const SUBSET_BUDGET: usize = 20_000;

/// Where a [`DirectionSet`] came from; recovery checks the matching
/// hypotheses before using it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `m_J = sum_{j in J} c_j^J e_j` for every `|J| >= 2`, keyed by mask.
    Family(BTreeMap<u32, Vec<RingElem>>),
    /// `v_i = (s_1^{i-1}, ..., s_n^{i-1})`.
    Moment(Vec<RingElem>),
    Custom,
}

/// Nonzero test directions of a common arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSet {
    ring: Ring,
    arity: usize,
    dirs: Vec<Point>,
    provenance: Provenance,
}

impl DirectionSet {
    pub fn custom(ring: &Ring, arity: usize, dirs: Vec<Point>) -> Result<DirectionSet> {
        DirectionSet::build(ring, arity, dirs, Provenance::Custom)
    }

    fn build(ring: &Ring, arity: usize, dirs: Vec<Point>, provenance: Provenance) -> Result<DirectionSet> {
        for (i, d) in dirs.iter().enumerate() {
            if d.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: d.arity() });
            }
            if let Some(c) = d.coords().iter().find(|c| !ring.contains(c)) {
                return Err(Error::RingMismatch(format!("{c} is not an element of {ring}")));
            }
            if d.is_zero(ring) {
                return Err(Error::Precondition(format!("direction {} is zero", i + 1)));
            }
        }
        Ok(DirectionSet { ring: ring.clone(), arity, dirs, provenance })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dirs(&self) -> &[Point] {
        &self.dirs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// The same directions restricted to the given indices, as a custom set.
    pub fn subset(&self, keep: &[usize]) -> DirectionSet {
        DirectionSet {
            ring: self.ring.clone(),
            arity: self.arity,
            dirs: keep.iter().map(|&i| self.dirs[i].clone()).collect(),
            provenance: Provenance::Custom,
        }
    }
}

/// All masks with at least two variables, by size then lexicographically.
fn higher_masks(n: usize) -> Vec<u32> {
    (2..=n).flat_map(|k| subsets_of_size(n, k)).collect()
}

/// The `2^n - (n + 1)` directions `m_J = sum_{j in J} c_j^J e_j`.
///
/// `coeffs[J]` lists `c_j^J` for the variables of `J` in increasing order;
/// every coefficient must be regular.
pub fn family_directions(ring: &Ring, n: usize, coeffs: &BTreeMap<u32, Vec<RingElem>>) -> Result<DirectionSet> {
    if n == 0 || n > crate::multiaffine::MAX_ARITY {
        return Err(Error::Precondition(format!("arity {n} out of range")));
    }
    let mut dirs = Vec::new();
    for mask in higher_masks(n) {
        let cs = coeffs
            .get(&mask)
            .ok_or_else(|| Error::Precondition(format!("no coefficients for J = {}", mask_string(mask))))?;
        let vars: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        if cs.len() != vars.len() {
            return Err(Error::Precondition(format!(
                "J = {} needs {} coefficients, got {}",
                mask_string(mask),
                vars.len(),
                cs.len()
            )));
        }
        let mut d = Point::zero(ring, n);
        for (&j, c) in vars.iter().zip(cs) {
            if !ring.contains(c) || !ring.is_regular(c) {
                return Err(Error::Precondition(format!(
                    "coefficient c_{} = {c} for J = {} is not regular in {ring}",
                    j + 1,
                    mask_string(mask)
                )));
            }
            d.0[j] = c.clone();
        }
        dirs.push(d);
    }
    let provenance =
        Provenance::Family(coeffs.iter().filter(|(m, _)| m.count_ones() >= 2).map(|(m, c)| (*m, c.clone())).collect());
    DirectionSet::build(ring, n, dirs, provenance)
}

/// [`family_directions`] with every coefficient equal to one.
pub fn unit_family(ring: &Ring, n: usize) -> Result<DirectionSet> {
    let coeffs = higher_masks(n).into_iter().map(|m| (m, vec![ring.one(); m.count_ones() as usize])).collect();
    family_directions(ring, n, &coeffs)
}

/// `v_i = (s_1^{i-1}, ..., s_n^{i-1})` for `1 <= i <= count`.
pub fn moment_directions(ring: &Ring, s: &[RingElem], count: usize) -> Result<DirectionSet> {
    if s.is_empty() || count == 0 {
        return Err(Error::Precondition("moment directions need a nonempty set and count >= 1".into()));
    }
    let dirs = (0..count as u64).map(|i| Point(s.iter().map(|x| ring.pow(x, i)).collect())).collect();
    DirectionSet::build(ring, s.len(), dirs, Provenance::Moment(s.to_vec()))
}

/// The degree-`k` constraint system: row `i` is `(v_i^J)_{|J| = k}` over
/// masks in lexicographic order, right-hand side zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSystem {
    pub degree: usize,
    pub masks: Vec<u32>,
    pub rows: Matrix,
    /// `sum_{|J| = k} Psi_J v_i^J` for each row, i.e. the left-hand side
    /// evaluated at the extracted coefficients.
    pub observed: Vec<RingElem>,
}

/// Builds one [`DegreeSystem`] per degree `2..=n`.
pub fn build_degree_systems(psi: &MultiAffinePoly, dirs: &DirectionSet) -> Result<BTreeMap<usize, DegreeSystem>> {
    let n = psi.arity();
    if dirs.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: dirs.arity() });
    }
    let ring = psi.ring();
    let mut out = BTreeMap::new();
    for k in 2..=n {
        let masks = subsets_of_size(n, k);
        let rows: Matrix = dirs
            .dirs()
            .iter()
            .map(|v| {
                masks
                    .iter()
                    .map(|&m| (0..n).filter(|j| m >> j & 1 == 1).fold(ring.one(), |acc, j| ring.mul(&acc, &v.0[j])))
                    .collect()
            })
            .collect();
        let observed = rows
            .iter()
            .map(|row| {
                row.iter().zip(&masks).fold(ring.zero(), |acc, (e, &m)| ring.add(&acc, &ring.mul(e, &psi.coeff(m))))
            })
            .collect();
        out.insert(k, DegreeSystem { degree: k, masks, rows, observed });
    }
    Ok(out)
}

/// Result of solving a homogeneous system exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A square block of the system has the regular determinant `det`;
    /// multiplying by its adjugate gives `det * a = 0`, so `a = 0`.
    AllZero { det: RingElem },
    /// Over a field: a basis of the nonzero solution space.
    Kernel { basis: Vec<Vec<RingElem>> },
    /// Over a ring with zero divisors: no square block with regular
    /// determinant was found; `det` is the determinant of the first block tried.
    CannotCancel { det: RingElem },
}

/// Solves `rows * a = 0` exactly over `ring`.
pub fn solve_vandermonde_exact(rows: &Matrix, ncols: usize, ring: &Ring) -> Solution {
    let nrows = rows.len();
    if ncols == 0 {
        return Solution::AllZero { det: ring.one() };
    }
    if ring.is_field() {
        if nrows == ncols {
            let det = determinant(ring, rows);
            if ring.is_regular(&det) {
                return Solution::AllZero { det };
            }
        } else if nrows > ncols && rank(ring, rows, ncols) == ncols {
            // greedy independent rows form a square block with nonzero determinant
            let mut block: Matrix = Vec::new();
            for row in rows {
                block.push(row.clone());
                if rank(ring, &block, ncols) < block.len() {
                    block.pop();
                }
                if block.len() == ncols {
                    break;
                }
            }
            return Solution::AllZero { det: determinant(ring, &block) };
        }
        return Solution::Kernel { basis: kernel_basis(ring, rows, ncols) };
    }

    if nrows < ncols {
        return Solution::CannotCancel { det: ring.zero() };
    }
    // sparsest rows first; ties keep their order, so a dense system tries its
    // leading square block first
    let mut order: Vec<usize> = (0..nrows).filter(|&i| rows[i].iter().any(|e| !ring.is_zero(e))).collect();
    order.sort_by_key(|&i| rows[i].iter().filter(|e| !ring.is_zero(e)).count());
    let mut first_det = None;
    for pick in itertools::Itertools::combinations(order.iter().copied(), ncols).take(SUBSET_BUDGET) {
        let block: Matrix = pick.iter().map(|&i| rows[i].clone()).collect();
        let det = determinant(ring, &block);
        if ring.is_regular(&det) {
            return Solution::AllZero { det };
        }
        first_det.get_or_insert(det);
    }
    Solution::CannotCancel { det: first_det.unwrap_or_else(|| ring.zero()) }
}

/// How radial lines are checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConstraintMode {
    /// Every parameter `r` of a finite ring; symbolic over the rationals.
    #[default]
    Exhaustive,
    /// Only `r = 0, 1, ..., d` (integer images), with cancellation through
    /// the nodes `1..d` alone, exactly as in the classical argument.
    IntegerNodes,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecoverOptions {
    pub mode: ConstraintMode,
}

/// Evidence that a function is not affine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonAffineWitness {
    /// The function is not affine along `line`; see [`LineCheck::Witness`].
    Line { line: Line, params: [RingElem; 3], values: [RingElem; 3] },
    /// `a_J = value != 0` with `|J| = degree`, and the degree-`k` system
    /// leaves it unconstrained.
    Coefficient { degree: usize, mask: u32, value: RingElem },
}

/// Outcome of [`recover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `f(x) = constant + sum_i linear[i] x_i`, verified at every point.
    Affine {
        constant: RingElem,
        linear: Vec<RingElem>,
    },
    NonAffine(NonAffineWitness),
    /// Every line hypothesis holds but the degree-`degree` step needs to
    /// cancel `det`, which is a zero divisor.
    CannotCancel {
        degree: usize,
        det: RingElem,
    },
    HypothesisViolation(String),
}

impl Certificate {
    pub fn is_affine(&self) -> bool {
        matches!(self, Certificate::Affine { .. })
    }
}

/// Checks the hypotheses attached to the direction set's provenance.
fn provenance_violation(dirs: &DirectionSet) -> Result<Option<String>> {
    let ring = dirs.ring();
    match dirs.provenance() {
        Provenance::Moment(s) if s.len() >= 3 => {
            let cand = match BhCandidate::new(ring, s.clone()) {
                Ok(c) => c,
                Err(e) => return Ok(Some(format!("moment set invalid: {e}"))),
            };
            let report = verify_properties(&cand)?;
            Ok((!report.passes()).then(|| "moment set fails the B_h / regular-difference properties".to_string()))
        }
        Provenance::Moment(s) => {
            let bad = s.iter().find(|e| !ring.is_regular(e));
            Ok(bad.map(|e| format!("moment set element {e} is not regular")))
        }
        _ => Ok(None),
    }
}

/// Nodes `r_1..r_d`, regular with pairwise regular differences, so that the
/// matrix `(r_i^k)_{i,k = 1..d}` has a regular determinant.
///
/// The integers `1..d` are preferred. In `Z/m` they work exactly when every
/// prime factor of `m` exceeds `d`, and nothing else can work then; in a
/// field of characteristic `p <= d` any `d` distinct nonzero elements do.
fn cancellation_nodes(ring: &Ring, d: usize, mode: ConstraintMode) -> Option<Vec<RingElem>> {
    let ints: Vec<RingElem> = (1..=d as i64).map(|i| ring.from_int(i)).collect();
    if ring.characteristic_regular_upto(d as u64) {
        return Some(ints);
    }
    match (mode, ring.order()) {
        (ConstraintMode::Exhaustive, Some(q)) if ring.is_field() && q > d as u64 => {
            Some((1..=d as u64).map(RingElem::Residue).collect())
        }
        _ => None,
    }
}

fn node_matrix(ring: &Ring, nodes: &[RingElem]) -> Matrix {
    nodes.iter().map(|r| (1..=nodes.len() as u64).map(|k| ring.pow(r, k)).collect()).collect()
}

/// Runs the full pipeline on `f` with radial test directions `dirs`.
pub fn recover(f: &FunctionOracle, dirs: &DirectionSet, options: RecoverOptions) -> Result<Certificate> {
    let ring = f.ring().clone();
    let n = f.arity();
    if *dirs.ring() != ring {
        return Err(Error::RingMismatch(format!("oracle over {ring}, directions over {}", dirs.ring())));
    }
    if dirs.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: dirs.arity() });
    }
    if let Some(why) = provenance_violation(dirs)? {
        return Ok(Certificate::HypothesisViolation(why));
    }

    // Coordinate lines. A polynomial oracle is multi-affine, hence affine
    // along every e_i by construction.
    if let FunctionOracle::Table(_) = f {
        for i in 0..n {
            let e = Point::unit(&ring, n, i);
            for base in all_points(&ring, n)?.filter(|p| ring.is_zero(&p.0[i])) {
                let line = Line::new(&ring, base, e.clone())?;
                if let LineCheck::Witness { params, values } = line_affine_check(f, &line)? {
                    return Ok(Certificate::NonAffine(NonAffineWitness::Line { line, params, values }));
                }
            }
        }
    }

    let psi = psi_extract(f, &Point::zero(&ring, n))?;

    for v in dirs.dirs() {
        let line = Line::radial(&ring, v.clone())?;
        let check = match options.mode {
            ConstraintMode::Exhaustive => line_affine_check(f, &line)?,
            ConstraintMode::IntegerNodes => check_at_integer_nodes(f, &line)?,
        };
        if let LineCheck::Witness { params, values } = check {
            return Ok(Certificate::NonAffine(NonAffineWitness::Line { line, params, values }));
        }
    }

    // Univariate cancellation on each radial line.
    let max_support = dirs.dirs().iter().map(|v| support(&ring, v)).max().unwrap_or(0);
    for d in 2..=max_support {
        if !dirs.dirs().iter().any(|v| support(&ring, v) == d) {
            continue;
        }
        let Some(nodes) = cancellation_nodes(&ring, d, options.mode) else {
            let ints: Vec<RingElem> = (1..=d as i64).map(|i| ring.from_int(i)).collect();
            return Ok(Certificate::CannotCancel { degree: 2, det: determinant(&ring, &node_matrix(&ring, &ints)) });
        };
        let det = determinant(&ring, &node_matrix(&ring, &nodes));
        if !ring.is_regular(&det) {
            return Err(Error::Inconsistent(format!("node determinant {det} is not regular")));
        }
    }
    for v in dirs.dirs() {
        let b = psi.restrict_radial(v)?;
        if let Some(k) = (2..b.len()).find(|&k| !ring.is_zero(&b[k])) {
            return Err(Error::Inconsistent(format!(
                "radial line along {v} passed but degree-{k} coefficient is {}",
                b[k]
            )));
        }
    }

    for (k, sys) in build_degree_systems(&psi, dirs)? {
        let part = psi.homogeneous_part(k);
        match solve_vandermonde_exact(&sys.rows, sys.masks.len(), &ring) {
            Solution::AllZero { .. } => {
                if !part.is_zero() {
                    return Err(Error::Inconsistent(format!("degree-{k} system forces zero but Psi has {part}")));
                }
            }
            Solution::Kernel { .. } => {
                if let Some(&mask) = sys.masks.iter().find(|&&m| !ring.is_zero(&part.coeff(m))) {
                    return Ok(Certificate::NonAffine(NonAffineWitness::Coefficient {
                        degree: k,
                        mask,
                        value: part.coeff(mask),
                    }));
                }
            }
            Solution::CannotCancel { det } => return Ok(Certificate::CannotCancel { degree: k, det }),
        }
    }

    let origin = Point::zero(&ring, n);
    let constant = f.eval(&origin)?;
    let linear =
        (0..n).map(|i| Ok(ring.sub(&f.eval(&Point::unit(&ring, n, i))?, &constant))).collect::<Result<Vec<_>>>()?;
    let affine = affine_poly(&ring, &constant, &linear)?;
    verify_affine(f, &affine)?;
    Ok(Certificate::Affine { constant, linear })
}

fn support(ring: &Ring, v: &Point) -> usize {
    v.coords().iter().filter(|c| !ring.is_zero(c)).count()
}

fn check_at_integer_nodes(f: &FunctionOracle, line: &Line) -> Result<LineCheck> {
    let ring = f.ring();
    let d = support(ring, line.dir()) as i64;
    let at = |r: &RingElem| f.eval(&line.point_at(ring, r));
    let f0 = at(&ring.zero())?;
    let f1 = at(&ring.one())?;
    let slope = ring.sub(&f1, &f0);
    for r in 2..=d {
        let r = ring.from_int(r);
        let v = at(&r)?;
        if v != ring.add(&f0, &ring.mul(&slope, &r)) {
            return Ok(LineCheck::Witness { params: [ring.zero(), ring.one(), r], values: [f0, f1, v] });
        }
    }
    Ok(LineCheck::Affine { slope })
}

/// `constant + sum_i linear[i] x_i` as a polynomial.
pub fn affine_poly(ring: &Ring, constant: &RingElem, linear: &[RingElem]) -> Result<MultiAffinePoly> {
    let terms =
        std::iter::once((0u32, constant.clone())).chain(linear.iter().enumerate().map(|(i, c)| (1u32 << i, c.clone())));
    MultiAffinePoly::from_terms(ring, linear.len(), terms)
}

fn verify_affine(f: &FunctionOracle, affine: &MultiAffinePoly) -> Result<()> {
    match f {
        FunctionOracle::Poly(p) if p == affine => Ok(()),
        FunctionOracle::Poly(p) => {
            Err(Error::Inconsistent(format!("{p} differs from the affine certificate {affine}")))
        }
        FunctionOracle::Table(t) => {
            for (x, v) in t.entries() {
                if affine.evaluate(&x)? != *v {
                    return Err(Error::Inconsistent(format!("affine certificate disagrees with the table at {x}")));
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &Ring, n: usize, terms: &[(u32, i64)]) -> FunctionOracle {
        FunctionOracle::Poly(
            MultiAffinePoly::from_terms(ring, n, terms.iter().map(|&(m, c)| (m, ring.from_int(c)))).unwrap(),
        )
    }

    fn table(ring: &Ring, n: usize, terms: &[(u32, i64)]) -> FunctionOracle {
        FunctionOracle::Table(poly(ring, n, terms).to_table().unwrap())
    }

    fn ones(ring: &Ring, n: usize) -> DirectionSet {
        DirectionSet::custom(ring, n, vec![Point::from_ints(ring, &vec![1; n])]).unwrap()
    }

    #[test]
    fn family_examples() {
        let z5 = Ring::zmod(5).unwrap();
        let coeffs = BTreeMap::from([(0b11, vec![z5.one(), z5.from_int(2)])]);
        let d = family_directions(&z5, 2, &coeffs).unwrap();
        assert_eq!(d.dirs(), &[Point::from_ints(&z5, &[1, 2])]);

        let d = unit_family(&z5, 3).unwrap();
        let expect: Vec<Point> =
            [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]].iter().map(|v| Point::from_ints(&z5, v)).collect();
        assert_eq!(d.dirs(), expect.as_slice());

        let z4 = Ring::zmod(4).unwrap();
        let coeffs = BTreeMap::from([(0b11, vec![z4.from_int(2), z4.one()])]);
        let err = family_directions(&z4, 2, &coeffs).unwrap_err();
        assert!(err.to_string().contains("c_1 = 2"), "{err}");
    }

    #[test]
    fn moment_examples() {
        let f5 = Ring::prime_field(5).unwrap();
        let s: Vec<RingElem> = [1, 2, 4].iter().map(|&x| f5.from_int(x)).collect();
        let d = moment_directions(&f5, &s, 3).unwrap();
        let expect: Vec<Point> = [[1, 1, 1], [1, 2, 4], [1, 4, 1]].iter().map(|v| Point::from_ints(&f5, v)).collect();
        assert_eq!(d.dirs(), expect.as_slice());
        assert_eq!(moment_directions(&f5, &s, 1).unwrap().dirs(), &[Point::from_ints(&f5, &[1, 1, 1])]);
        let q = Ring::rationals();
        let s: Vec<RingElem> = [2, 3, 5].iter().map(|&x| q.from_int(x)).collect();
        let d = moment_directions(&q, &s, 2).unwrap();
        assert_eq!(d.dirs()[1], Point::from_ints(&q, &[2, 3, 5]));
    }

    #[test]
    fn degree_system_examples() {
        let z7 = Ring::zmod(7).unwrap();
        let FunctionOracle::Poly(p) = poly(&z7, 2, &[(0b11, 3)]) else { unreachable!() };
        let sys = build_degree_systems(&p, &ones(&z7, 2)).unwrap();
        assert_eq!(sys[&2].rows, vec![vec![z7.one()]]);
        assert_eq!(sys[&2].observed, vec![z7.from_int(3)]);

        let f5 = Ring::prime_field(5).unwrap();
        let s: Vec<RingElem> = [1, 2, 4].iter().map(|&x| f5.from_int(x)).collect();
        let dirs = moment_directions(&f5, &s, 3).unwrap();
        let zero = MultiAffinePoly::new(&f5, 3).unwrap();
        let sys = build_degree_systems(&zero, &dirs).unwrap();
        let ints = |rows: &[[i64; 3]]| -> Matrix {
            rows.iter().map(|r| r.iter().map(|&x| f5.from_int(x)).collect()).collect()
        };
        assert_eq!(sys[&2].rows, ints(&[[1, 1, 1], [2, 4, 3], [4, 1, 4]]));
        assert_eq!(sys[&3].rows[0], vec![f5.one()]);
    }

    #[test]
    fn solver_examples() {
        let q = Ring::rationals();
        let a: Matrix = (1..=3).map(|i: i64| vec![q.from_int(i), q.from_int(i * i), q.from_int(i * i * i)]).collect();
        assert_eq!(solve_vandermonde_exact(&a, 3, &q), Solution::AllZero { det: q.from_int(12) });

        for ring in [Ring::zmod(4).unwrap(), Ring::rationals(), Ring::prime_field(3).unwrap()] {
            assert_eq!(
                solve_vandermonde_exact(&vec![vec![ring.one()]], 1, &ring),
                Solution::AllZero { det: ring.one() }
            );
        }

        let z4 = Ring::zmod(4).unwrap();
        let a: Matrix = vec![vec![z4.from_int(1), z4.from_int(1)], vec![z4.from_int(2), z4.from_int(4)]];
        assert_eq!(solve_vandermonde_exact(&a, 2, &z4), Solution::CannotCancel { det: z4.from_int(2) });

        let f7 = Ring::prime_field(7).unwrap();
        let a: Matrix = vec![vec![f7.from_int(1), f7.from_int(1), f7.from_int(1)]];
        assert!(matches!(solve_vandermonde_exact(&a, 3, &f7), Solution::Kernel { basis } if basis.len() == 2));
    }

    #[test]
    fn recover_affine_zmod7() {
        let z7 = Ring::zmod(7).unwrap();
        let f = table(&z7, 2, &[(0, 1), (0b01, 3), (0b10, 2)]);
        assert_eq!(
            recover(&f, &ones(&z7, 2), RecoverOptions::default()).unwrap(),
            Certificate::Affine { constant: z7.from_int(1), linear: vec![z7.from_int(3), z7.from_int(2)] }
        );
    }

    #[test]
    fn recover_xy_zmod5() {
        let z5 = Ring::zmod(5).unwrap();
        let cert = recover(&table(&z5, 2, &[(0b11, 1)]), &ones(&z5, 2), RecoverOptions::default()).unwrap();
        let Certificate::NonAffine(NonAffineWitness::Line { line, params, .. }) = cert else { panic!("{cert:?}") };
        assert_eq!(line.dir(), &Point::from_ints(&z5, &[1, 1]));
        assert_eq!(params[2], z5.from_int(2));
    }

    #[test]
    fn recover_2xy_zmod4() {
        let z4 = Ring::zmod(4).unwrap();
        for mode in [ConstraintMode::Exhaustive, ConstraintMode::IntegerNodes] {
            let cert = recover(&table(&z4, 2, &[(0b11, 2)]), &ones(&z4, 2), RecoverOptions { mode }).unwrap();
            assert_eq!(cert, Certificate::CannotCancel { degree: 2, det: z4.from_int(2) });
        }
    }

    #[test]
    fn coordinate_line_failure_is_reported() {
        let z5 = Ring::zmod(5).unwrap();
        let t = TableOracleExt::squares(&z5);
        let cert = recover(&t, &ones(&z5, 2), RecoverOptions::default()).unwrap();
        let Certificate::NonAffine(NonAffineWitness::Line { line, .. }) = cert else { panic!("{cert:?}") };
        assert_eq!(line.dir(), &Point::unit(&z5, 2, 0));
    }

    struct TableOracleExt;
    impl TableOracleExt {
        /// x^2 + y is not multi-affine
        fn squares(ring: &Ring) -> FunctionOracle {
            FunctionOracle::Table(
                crate::multiaffine::TableOracle::from_fn(ring, 2, |p| ring.add(&ring.mul(&p.0[0], &p.0[0]), &p.0[1]))
                    .unwrap(),
            )
        }
    }

    #[test]
    fn too_few_directions_leave_coefficient_unforced() {
        // x1x2 - x1x3 vanishes along (1,1,1); one direction cannot pin degree 2
        let f7 = Ring::prime_field(7).unwrap();
        let f = poly(&f7, 3, &[(0b011, 1), (0b101, -1)]);
        let cert = recover(&f, &ones(&f7, 3), RecoverOptions::default()).unwrap();
        assert_eq!(
            cert,
            Certificate::NonAffine(NonAffineWitness::Coefficient { degree: 2, mask: 0b011, value: f7.one() })
        );
    }

    #[test]
    fn bad_moment_set_is_a_hypothesis_violation() {
        let z6 = Ring::zmod(6).unwrap();
        let s: Vec<RingElem> = [1, 2, 3].iter().map(|&x| z6.from_int(x)).collect();
        let dirs = moment_directions(&z6, &s, 3).unwrap();
        let cert = recover(&poly(&z6, 3, &[(0, 1)]), &dirs, RecoverOptions::default()).unwrap();
        assert!(matches!(cert, Certificate::HypothesisViolation(_)));
    }

    #[test]
    fn family_over_rationals() {
        let q = Ring::rationals();
        let dirs = unit_family(&q, 3).unwrap();
        let affine = poly(&q, 3, &[(0, 5), (0b010, -3)]);
        assert!(recover(&affine, &dirs, RecoverOptions::default()).unwrap().is_affine());
        let cubic = poly(&q, 3, &[(0b111, 1)]);
        assert!(matches!(
            recover(&cubic, &dirs, RecoverOptions::default()).unwrap(),
            Certificate::NonAffine(NonAffineWitness::Line { .. })
        ));
    }

    #[test]
    fn mismatches_are_errors() {
        let z5 = Ring::zmod(5).unwrap();
        let z7 = Ring::zmod(7).unwrap();
        assert!(matches!(
            recover(&poly(&z5, 2, &[]), &ones(&z7, 2), RecoverOptions::default()),
            Err(Error::RingMismatch(_))
        ));
        assert!(matches!(
            recover(&poly(&z5, 2, &[]), &ones(&z5, 3), RecoverOptions::default()),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(DirectionSet::custom(&z5, 2, vec![Point::zero(&z5, 2)]).is_err());
    }
}
