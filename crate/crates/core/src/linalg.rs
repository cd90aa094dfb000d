//! Dense exact linear algebra over a [`Ring`].
//!
//! Determinants over a field use Gaussian elimination. Over `Z/m` with `m`
//! composite there is no division, so entries are lifted to the integers,
//! the determinant is computed there with fraction-free (Bareiss) elimination
//! and reduced mod `m` at the end; the determinant is a polynomial in the
//! entries so the two agree.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{ToPrimitive, Zero};

use crate::ring::{Ring, RingElem, RingKind};

pub type Matrix = Vec<Vec<RingElem>>;

fn cols(m: &Matrix) -> usize {
    m.first().map_or(0, Vec::len)
}

/// Exact determinant of a square matrix. The empty matrix has determinant 1.
pub fn determinant(ring: &Ring, a: &Matrix) -> RingElem {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return ring.one();
    }
    match ring.kind() {
        RingKind::Zmod { modulus } if !ring.is_field() => {
            let lifted: Vec<Vec<BigInt>> =
                a.iter().map(|row| row.iter().map(|e| BigInt::from(e.code().expect("residue"))).collect()).collect();
            let d = bareiss(lifted).mod_floor(&BigInt::from(*modulus));
            RingElem::Residue(d.to_u64().expect("reduced residue"))
        }
        _ => field_determinant(ring, a),
    }
}

fn field_determinant(ring: &Ring, a: &Matrix) -> RingElem {
    let n = a.len();
    let mut m = a.clone();
    let mut det = ring.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !ring.is_zero(&m[r][c])) else {
            return ring.zero();
        };
        if p != c {
            m.swap(p, c);
            det = ring.neg(&det);
        }
        det = ring.mul(&det, &m[c][c]);
        let inv = ring.inv(&m[c][c]).expect("nonzero pivot in a field");
        for r in c + 1..n {
            if ring.is_zero(&m[r][c]) {
                continue;
            }
            let factor = ring.mul(&m[r][c], &inv);
            for j in c..n {
                let t = ring.mul(&factor, &m[c][j]);
                m[r][j] = ring.sub(&m[r][j], &t);
            }
        }
    }
    det
}

/// Fraction-free elimination over the integers.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn minor(a: &Matrix, skip_row: usize, skip_col: usize) -> Matrix {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// Classical adjugate: `adj(A)[i][j] = (-1)^{i+j} det(A with row j, column i removed)`.
pub fn adjugate(ring: &Ring, a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = determinant(ring, &minor(a, j, i));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        ring.neg(&d)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(ring: &Ring, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = cols(a);
    assert_eq!(inner, b.len(), "dimension mismatch");
    let out_cols = cols(b);
    a.iter()
        .map(|row| {
            (0..out_cols)
                .map(|j| (0..inner).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&row[k], &b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec(ring: &Ring, a: &Matrix, x: &[RingElem]) -> Vec<RingElem> {
    a.iter().map(|row| row.iter().zip(x).fold(ring.zero(), |acc, (r, v)| ring.add(&acc, &ring.mul(r, v)))).collect()
}

/// Reduced row echelon form over a field: the pivot columns and the nonzero
/// rows of the reduced matrix.
pub fn rref(ring: &Ring, a: &Matrix, ncols: usize) -> (Vec<usize>, Matrix) {
    assert!(ring.is_field(), "row reduction needs a field");
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !ring.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(p, row);
        let inv = ring.inv(&m[row][c]).expect("nonzero pivot in a field");
        for j in c..ncols {
            m[row][j] = ring.mul(&m[row][j], &inv);
        }
        for r in 0..m.len() {
            if r == row || ring.is_zero(&m[r][c]) {
                continue;
            }
            let factor = m[r][c].clone();
            for j in c..ncols {
                let t = ring.mul(&factor, &m[row][j]);
                m[r][j] = ring.sub(&m[r][j], &t);
            }
        }
        pivots.push(c);
        row += 1;
    }
    m.truncate(row);
    (pivots, m)
}

/// Kernel basis over a field, one vector per free column in increasing
/// column order; the free coordinate is set to 1.
pub fn kernel_basis(ring: &Ring, a: &Matrix, ncols: usize) -> Vec<Vec<RingElem>> {
    let (pivots, r) = rref(ring, a, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![ring.zero(); ncols];
            v[free] = ring.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(&r[row][free]);
            }
            v
        })
        .collect()
}

/// Rank over a field.
pub fn rank(ring: &Ring, a: &Matrix, ncols: usize) -> usize {
    rref(ring, a, ncols).0.len()
}
