//! How many radial directions are needed, and why fewer fail.
//!
//! With moment directions `v_i = (s_j^{i-1})_j`, the degree-`k` system has
//! `C(n, k)` unknowns, so `N = C(n, ceil(n/2))` directions are necessary for
//! the middle degree and sufficient for every degree. Below `N`, the
//! degree-`ceil(n/2)` system has a nonzero kernel vector, which is a
//! multi-affine polynomial that every test line reports as affine.

use num::integer::binomial;

use crate::bh_sets::{verify_properties, BhCandidate};
use crate::error::{Error, Result};
use crate::linalg::{determinant, kernel_basis, Matrix};
use crate::multiaffine::{line_affine_check, subsets_of_size, FunctionOracle, Line, MultiAffinePoly, Point};
use crate::recovery::{build_degree_systems, moment_directions, DirectionSet};
use crate::ring::{Ring, RingElem};

/// `C(n, ceil(n/2))`, except that two variables need a single line.
pub fn minimal_direction_count(n: usize) -> Result<usize> {
    match n {
        0 | 1 => Err(Error::Precondition(format!("direction count needs n >= 2, got {n}"))),
        2 => Ok(1),
        _ => Ok(binomial(n, n.div_ceil(2))),
    }
}

/// A nonzero homogeneous polynomial of degree `k` that the directions `dirs`
/// cannot detect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessWitness {
    pub poly: MultiAffinePoly,
    pub degree: usize,
    pub dirs: DirectionSet,
}

fn field_large_enough(field: &Ring, n: usize) -> bool {
    match field.order() {
        None => true,
        Some(q) => n <= 64 && q > 1u64 << (n - 1),
    }
}

/// Builds a witness that the `|dirs| < N` directions do not suffice.
///
/// The witness is the first vector of the reduced-echelon kernel basis of
/// the degree-`ceil(n/2)` system, with masks in lexicographic order.
pub fn lower_bound_witness(n: usize, dirs: &DirectionSet, field: &Ring) -> Result<SharpnessWitness> {
    if n < 3 {
        return Err(Error::Precondition(format!("lower bound witnesses need n >= 3, got {n}")));
    }
    if !field.is_field() || !field_large_enough(field, n) {
        return Err(Error::Precondition(format!("{field} is not a field with more than 2^{} elements", n - 1)));
    }
    if dirs.ring() != field {
        return Err(Error::RingMismatch(format!("directions over {}, field {field}", dirs.ring())));
    }
    if dirs.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: dirs.arity() });
    }
    let bound = minimal_direction_count(n)?;
    if dirs.len() >= bound {
        return Err(Error::Precondition(format!("{} directions already meet the bound {bound}", dirs.len())));
    }
    let k = n.div_ceil(2);
    let zero = MultiAffinePoly::new(field, n)?;
    let systems = build_degree_systems(&zero, dirs)?;
    let sys = &systems[&k];
    let basis = kernel_basis(field, &sys.rows, sys.masks.len());
    let v = basis.first().ok_or_else(|| {
        Error::Inconsistent(format!("degree-{k} system with fewer rows than columns has trivial kernel"))
    })?;
    let poly = MultiAffinePoly::from_terms(field, n, sys.masks.iter().copied().zip(v.iter().cloned()))?;
    let witness = SharpnessWitness { poly, degree: k, dirs: dirs.clone() };
    validate_witness(&witness)?;
    Ok(witness)
}

/// Checks every witness invariant: nonzero, homogeneous of its degree,
/// identically zero on each test line `R v`, affine along coordinate lines
/// and along each `R v`, and not affine.
pub fn validate_witness(w: &SharpnessWitness) -> Result<()> {
    let p = &w.poly;
    let ring = p.ring();
    let fail = |why: String| Err(Error::Inconsistent(why));
    if p.is_zero() {
        return fail("witness is zero".into());
    }
    if p.terms().any(|(m, _)| m.count_ones() as usize != w.degree) {
        return fail(format!("witness {p} is not homogeneous of degree {}", w.degree));
    }
    if p.is_affine() {
        return fail(format!("witness {p} is affine"));
    }
    let oracle = FunctionOracle::Poly(p.clone());
    for v in w.dirs.dirs() {
        let b = p.restrict_radial(v)?;
        if b.iter().any(|c| !ring.is_zero(c)) {
            return fail(format!("witness does not vanish along {v}"));
        }
        if !line_affine_check(&oracle, &Line::radial(ring, v.clone())?)?.is_affine() {
            return fail(format!("witness is not affine along R({v})"));
        }
    }
    for i in 0..p.arity() {
        let line = Line::new(ring, Point::zero(ring, p.arity()), Point::unit(ring, p.arity(), i))?;
        if !line_affine_check(&oracle, &line)?.is_affine() {
            return fail(format!("witness is not affine along e_{}", i + 1));
        }
    }
    Ok(())
}

/// Outcome of [`certify_directions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Determinants of `A_2, ..., A_{n-1}` in order, then 1 for degree `n`.
    Ok {
        dets: Vec<RingElem>,
    },
    Failure {
        degree: usize,
        det: RingElem,
    },
}

/// `A_k` with `(i, J)` entry `pi_J^{i-1}`, `pi_J = prod_{j in J} s_j`,
/// for `i = 1..C(n, k)`.
pub fn moment_matrix(ring: &Ring, s: &[RingElem], k: usize) -> Matrix {
    let nodes = node_values(ring, s, k);
    (0..nodes.len() as u64).map(|i| nodes.iter().map(|pi| ring.pow(pi, i)).collect()).collect()
}

fn node_values(ring: &Ring, s: &[RingElem], k: usize) -> Vec<RingElem> {
    subsets_of_size(s.len(), k)
        .into_iter()
        .map(|m| (0..s.len()).filter(|j| m >> j & 1 == 1).fold(ring.one(), |acc, j| ring.mul(&acc, &s[j])))
        .collect()
}

/// Certifies that the `N` moment directions built from `s` make recovery
/// complete: each `A_k` (`2 <= k < n`) has a regular determinant, computed
/// by elimination and cross-checked against `prod_{J < J'} (pi_J' - pi_J)`.
pub fn certify_directions(n: usize, s: &BhCandidate) -> Result<Certification> {
    let ring = s.ring();
    if s.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: s.len() });
    }
    if n >= 3 && !verify_properties(s)?.passes() {
        return Err(Error::Precondition("set fails the B_h / regular-difference properties".into()));
    }
    let dirs = moment_directions(ring, s.elements(), minimal_direction_count(n.max(2))?)?;
    let systems = build_degree_systems(&MultiAffinePoly::new(ring, n)?, &dirs)?;
    let mut dets = Vec::new();
    for k in 2..n {
        let a = moment_matrix(ring, s.elements(), k);
        let det = determinant(ring, &a);
        let nodes = node_values(ring, s.elements(), k);
        let product = (0..nodes.len())
            .flat_map(|i| (i + 1..nodes.len()).map(move |j| (i, j)))
            .fold(ring.one(), |acc, (i, j)| ring.mul(&acc, &ring.sub(&nodes[j], &nodes[i])));
        if product != det {
            return Err(Error::Inconsistent(format!("degree {k}: elimination gives {det}, product formula {product}")));
        }
        if systems[&k].rows[..a.len()] != a[..] {
            return Err(Error::Inconsistent(format!("degree {k}: A_k disagrees with the direction rows")));
        }
        if !ring.is_regular(&det) {
            return Ok(Certification::Failure { degree: k, det });
        }
        dets.push(det);
    }
    // degree n: the row of v_1 is the single entry 1
    dets.push(ring.one());
    Ok(Certification::Ok { dets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(minimal_direction_count(2).unwrap(), 1);
        assert_eq!(minimal_direction_count(3).unwrap(), 3);
        assert_eq!(minimal_direction_count(4).unwrap(), 6);
        assert_eq!(minimal_direction_count(5).unwrap(), 10);
        assert!(minimal_direction_count(1).is_err());
    }

    #[test]
    fn witness_f7() {
        let f7 = Ring::prime_field(7).unwrap();
        let dirs =
            DirectionSet::custom(&f7, 3, vec![Point::from_ints(&f7, &[1, 1, 1]), Point::from_ints(&f7, &[1, 2, 4])])
                .unwrap();
        let w = lower_bound_witness(3, &dirs, &f7).unwrap();
        // a scalar multiple of 4*x1x2 + x1x3 + 2*x2x3
        let expect = [4, 1, 2];
        let scale = f7.mul(&w.poly.coeff(0b011), &f7.inv(&f7.from_int(4)).unwrap());
        for (m, e) in [0b011u32, 0b101, 0b110].into_iter().zip(expect) {
            assert_eq!(w.poly.coeff(m), f7.mul(&scale, &f7.from_int(e)));
        }
        assert_eq!(w.poly.to_string(), "2*x1*x2 + 4*x1*x3 + x2*x3");
    }

    #[test]
    fn witness_without_directions() {
        let f7 = Ring::prime_field(7).unwrap();
        let dirs = DirectionSet::custom(&f7, 3, vec![]).unwrap();
        let w = lower_bound_witness(3, &dirs, &f7).unwrap();
        assert_eq!(w.poly.terms().count(), 1);
        assert_eq!(w.degree, 2);
    }

    #[test]
    fn witness_preconditions() {
        let f3 = Ring::prime_field(3).unwrap();
        let dirs = DirectionSet::custom(&f3, 3, vec![]).unwrap();
        assert!(lower_bound_witness(3, &dirs, &f3).is_err());
        let f7 = Ring::prime_field(7).unwrap();
        let s: Vec<RingElem> = [1, 2, 4].iter().map(|&x| f7.from_int(x)).collect();
        let dirs = moment_directions(&f7, &s, 3).unwrap();
        assert!(matches!(lower_bound_witness(3, &dirs, &f7), Err(Error::Precondition(_))));
    }

    #[test]
    fn certify_examples() {
        let f5 = Ring::prime_field(5).unwrap();
        let s = BhCandidate::from_ints(&f5, &[1, 2, 4]).unwrap();
        assert_eq!(certify_directions(3, &s).unwrap(), Certification::Ok { dets: vec![f5.from_int(3), f5.one()] });
        let f17 = Ring::prime_field(17).unwrap();
        let s = BhCandidate::from_ints(&f17, &[1, 3, 9, 13]).unwrap();
        assert!(matches!(certify_directions(4, &s).unwrap(), Certification::Ok { .. }));
        let z6 = Ring::zmod(6).unwrap();
        let s = BhCandidate::from_ints(&z6, &[1, 2, 3]).unwrap();
        assert!(matches!(certify_directions(3, &s), Err(Error::Precondition(_))));
    }
}
