//! Multi-affine polynomials, function oracles on `R^n`, finite-difference
//! coefficient extraction and per-line affinity checks.
//!
//! A subset `J` of the variables `{1..n}` is a bitmask: variable `j`
//! (1-based in all text output) is bit `j - 1`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

/// Largest arity a [`MultiAffinePoly`] may have.
pub const MAX_ARITY: usize = 16;
/// Largest number of points a [`TableOracle`] may hold.
pub const MAX_TABLE_POINTS: u64 = 1 << 24;

/// Masks of all `k`-subsets of `{0..n}`, in lexicographic order of their
/// sorted index lists.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0..n).combinations(k).map(|idx| idx.iter().fold(0u32, |m, &i| m | 1 << i)).collect()
}

/// 1-based variable indices of a mask, ascending.
pub fn mask_vars(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Renders a mask as `{1,2}`.
pub fn mask_string(mask: u32) -> String {
    format!("{{{}}}", mask_vars(mask).iter().join(","))
}

/// A point of `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<RingElem>);

impl Point {
    pub fn zero(ring: &Ring, n: usize) -> Point {
        Point(vec![ring.zero(); n])
    }

    /// The standard basis vector `e_i`, `i` 0-based.
    pub fn unit(ring: &Ring, n: usize, i: usize) -> Point {
        let mut p = Point::zero(ring, n);
        p.0[i] = ring.one();
        p
    }

    pub fn from_ints(ring: &Ring, xs: &[i64]) -> Point {
        Point(xs.iter().map(|&x| ring.from_int(x)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[RingElem] {
        &self.0
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.0.iter().all(|c| ring.is_zero(c))
    }

    pub fn add(&self, ring: &Ring, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| ring.add(a, b)).collect())
    }

    pub fn sub(&self, ring: &Ring, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| ring.sub(a, b)).collect())
    }

    pub fn scale(&self, ring: &Ring, r: &RingElem) -> Point {
        Point(self.0.iter().map(|a| ring.mul(r, a)).collect())
    }

    /// `self + r * dir`.
    pub fn along(&self, ring: &Ring, dir: &Point, r: &RingElem) -> Point {
        Point(self.0.iter().zip(&dir.0).map(|(a, d)| ring.add(a, &ring.mul(r, d))).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

/// The affine line `base + R * dir`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    base: Point,
    dir: Point,
}

impl Line {
    pub fn new(ring: &Ring, base: Point, dir: Point) -> Result<Line> {
        if base.arity() != dir.arity() {
            return Err(Error::ArityMismatch { expected: base.arity(), got: dir.arity() });
        }
        if dir.is_zero(ring) {
            return Err(Error::Precondition("line direction must be nonzero".into()));
        }
        Ok(Line { base, dir })
    }

    /// The line `R * dir` through the origin.
    pub fn radial(ring: &Ring, dir: Point) -> Result<Line> {
        Line::new(ring, Point::zero(ring, dir.arity()), dir)
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn dir(&self) -> &Point {
        &self.dir
    }

    pub fn point_at(&self, ring: &Ring, r: &RingElem) -> Point {
        self.base.along(ring, &self.dir, r)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + R({})", self.base, self.dir)
    }
}

/// A polynomial `sum_J a_J x^J` of degree at most one in each variable.
///
/// Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiAffinePoly {
    ring: Ring,
    arity: usize,
    coeffs: BTreeMap<u32, RingElem>,
}

impl MultiAffinePoly {
    pub fn new(ring: &Ring, arity: usize) -> Result<MultiAffinePoly> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::Precondition(format!("arity must be in 1..={MAX_ARITY}, got {arity}")));
        }
        Ok(MultiAffinePoly { ring: ring.clone(), arity, coeffs: BTreeMap::new() })
    }

    /// Builds a polynomial from `(mask, coefficient)` terms; repeated masks add up.
    pub fn from_terms<I>(ring: &Ring, arity: usize, terms: I) -> Result<MultiAffinePoly>
    where
        I: IntoIterator<Item = (u32, RingElem)>,
    {
        let mut p = MultiAffinePoly::new(ring, arity)?;
        for (mask, c) in terms {
            p.add_term(mask, &c)?;
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if (mask as u64) >> self.arity != 0 {
            return Err(Error::Precondition(format!(
                "mask {} mentions a variable beyond arity {}",
                mask_string(mask),
                self.arity
            )));
        }
        Ok(())
    }

    pub fn coeff(&self, mask: u32) -> RingElem {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn set(&mut self, mask: u32, c: RingElem) -> Result<()> {
        self.check_mask(mask)?;
        if !self.ring.contains(&c) {
            return Err(Error::RingMismatch(format!("{c} is not an element of {}", self.ring)));
        }
        if self.ring.is_zero(&c) {
            self.coeffs.remove(&mask);
        } else {
            self.coeffs.insert(mask, c);
        }
        Ok(())
    }

    pub fn add_term(&mut self, mask: u32, c: &RingElem) -> Result<()> {
        let sum = self.ring.add(&self.coeff(mask), c);
        self.set(mask, sum)
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &RingElem)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|J|` with `a_J != 0`, zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// True iff every stored term has at most one variable.
    pub fn is_affine(&self) -> bool {
        self.coeffs.keys().all(|m| m.count_ones() <= 1)
    }

    /// The terms of degree exactly `k`.
    pub fn homogeneous_part(&self, k: usize) -> MultiAffinePoly {
        MultiAffinePoly {
            ring: self.ring.clone(),
            arity: self.arity,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        if x.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: x.arity() });
        }
        if let Some(c) = x.0.iter().find(|c| !self.ring.contains(c)) {
            return Err(Error::RingMismatch(format!("{c} is not an element of {}", self.ring)));
        }
        Ok(())
    }

    fn monomial(&self, mask: u32, x: &[RingElem]) -> RingElem {
        let ring = &self.ring;
        (0..self.arity).filter(|j| mask >> j & 1 == 1).fold(ring.one(), |acc, j| ring.mul(&acc, &x[j]))
    }

    /// `sum_J a_J prod_{j in J} x_j`.
    pub fn evaluate(&self, x: &Point) -> Result<RingElem> {
        self.check_point(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    fn evaluate_unchecked(&self, x: &Point) -> RingElem {
        let ring = &self.ring;
        self.coeffs.iter().fold(ring.zero(), |acc, (mask, c)| ring.add(&acc, &ring.mul(c, &self.monomial(*mask, &x.0))))
    }

    /// Coefficients `b_0..b_n` of `r -> P(r v)`: `b_k = sum_{|J| = k} a_J v^J`.
    pub fn restrict_radial(&self, v: &Point) -> Result<Vec<RingElem>> {
        self.check_point(v)?;
        let ring = &self.ring;
        let mut b = vec![ring.zero(); self.arity + 1];
        for (mask, c) in &self.coeffs {
            let k = mask.count_ones() as usize;
            b[k] = ring.add(&b[k], &ring.mul(c, &self.monomial(*mask, &v.0)));
        }
        Ok(b)
    }

    /// Coefficients of `r -> P(base + r dir)`, lowest degree first, length `n + 1`.
    pub fn restrict_line(&self, line: &Line) -> Result<Vec<RingElem>> {
        self.check_point(line.base())?;
        self.check_point(line.dir())?;
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.arity + 1];
        for (mask, c) in &self.coeffs {
            // c * prod_{j in J} (base_j + r dir_j)
            let mut poly = vec![c.clone()];
            for j in (0..self.arity).filter(|j| mask >> j & 1 == 1) {
                let (b, d) = (&line.base().0[j], &line.dir().0[j]);
                let mut next = vec![ring.zero(); poly.len() + 1];
                for (i, a) in poly.iter().enumerate() {
                    next[i] = ring.add(&next[i], &ring.mul(a, b));
                    next[i + 1] = ring.add(&next[i + 1], &ring.mul(a, d));
                }
                poly = next;
            }
            for (i, a) in poly.into_iter().enumerate() {
                out[i] = ring.add(&out[i], &a);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MultiAffinePoly {
    /// Terms as `coef*x1*x2` (unit coefficients omitted), ascending by degree then lexicographically.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut masks: Vec<u32> = self.coeffs.keys().copied().collect();
        masks.sort_by_key(|m| (m.count_ones(), mask_vars(*m)));
        let terms = masks.iter().map(|m| {
            let c = &self.coeffs[m];
            let vars = mask_vars(*m).iter().map(|j| format!("x{j}")).join("*");
            if *m == 0 {
                c.to_string()
            } else if *c == self.ring.one() {
                vars
            } else {
                format!("{c}*{vars}")
            }
        });
        write!(f, "{}", terms.format(" + "))
    }
}

/// An exhaustive function table `R^n -> R` over a finite ring.
///
/// Values are indexed by the point's mixed-radix encoding with the first
/// coordinate most significant, so index order is lexicographic point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableOracle {
    ring: Ring,
    arity: usize,
    values: Vec<RingElem>,
}

/// Number of points of `R^n`, refusing anything beyond `limit`.
pub fn domain_size(ring: &Ring, n: usize, limit: u64) -> Result<u64> {
    let q = ring.order().ok_or_else(|| Error::Unsupported(format!("table oracles need a finite ring, got {ring}")))?;
    let mut size = 1u64;
    for _ in 0..n {
        size = size
            .checked_mul(q)
            .filter(|&s| s <= limit)
            .ok_or_else(|| Error::TooLarge(format!("{ring} in dimension {n} exceeds {limit} points")))?;
    }
    Ok(size)
}

/// The point with index `idx` in lexicographic order.
pub fn point_from_index(q: u64, n: usize, mut idx: u64) -> Point {
    let mut coords = vec![RingElem::Residue(0); n];
    for slot in coords.iter_mut().rev() {
        *slot = RingElem::Residue(idx % q);
        idx /= q;
    }
    Point(coords)
}

/// Every point of `R^n` in lexicographic order.
pub fn all_points(ring: &Ring, n: usize) -> Result<impl Iterator<Item = Point>> {
    let size = domain_size(ring, n, MAX_TABLE_POINTS)?;
    let q = ring.order().expect("finite");
    Ok((0..size).map(move |i| point_from_index(q, n, i)))
}

impl TableOracle {
    pub fn from_fn<F>(ring: &Ring, arity: usize, mut f: F) -> Result<TableOracle>
    where
        F: FnMut(&Point) -> RingElem,
    {
        if arity == 0 {
            return Err(Error::Precondition("arity must be positive".into()));
        }
        let values = all_points(ring, arity)?
            .map(|p| {
                let v = f(&p);
                if ring.contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::RingMismatch(format!("value {v} at {p} is not in {ring}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableOracle { ring: ring.clone(), arity, values })
    }

    /// Builds a table from explicit entries; every point must appear exactly once.
    pub fn from_entries<I>(ring: &Ring, arity: usize, entries: I) -> Result<TableOracle>
    where
        I: IntoIterator<Item = (Point, RingElem)>,
    {
        let size = domain_size(ring, arity, MAX_TABLE_POINTS)?;
        let mut values: Vec<Option<RingElem>> = vec![None; size as usize];
        for (p, v) in entries {
            let idx = index_of(ring, arity, &p)?;
            if !ring.contains(&v) {
                return Err(Error::RingMismatch(format!("value {v} at {p} is not in {ring}")));
            }
            if values[idx].replace(v).is_some() {
                return Err(Error::Precondition(format!("duplicate point {p}")));
            }
        }
        let q = ring.order().expect("finite");
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingPoint(point_from_index(q, arity, i as u64).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableOracle { ring: ring.clone(), arity, values })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, p: &Point) -> Result<RingElem> {
        Ok(self.values[index_of(&self.ring, self.arity, p)?].clone())
    }

    /// `(point, value)` pairs in lexicographic point order.
    pub fn entries(&self) -> impl Iterator<Item = (Point, &RingElem)> {
        let q = self.ring.order().expect("finite");
        self.values.iter().enumerate().map(move |(i, v)| (point_from_index(q, self.arity, i as u64), v))
    }
}

fn index_of(ring: &Ring, arity: usize, p: &Point) -> Result<usize> {
    if p.arity() != arity {
        return Err(Error::ArityMismatch { expected: arity, got: p.arity() });
    }
    let q = ring.order().expect("finite");
    let mut idx = 0u64;
    for c in &p.0 {
        match c.code() {
            Some(x) if x < q => idx = idx * q + x,
            _ => return Err(Error::RingMismatch(format!("{c} is not an element of {ring}"))),
        }
    }
    Ok(idx as usize)
}

/// A function `f : R^n -> R`, either tabulated or given by a multi-affine
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionOracle {
    Table(TableOracle),
    Poly(MultiAffinePoly),
}

impl FunctionOracle {
    pub fn ring(&self) -> &Ring {
        match self {
            FunctionOracle::Table(t) => t.ring(),
            FunctionOracle::Poly(p) => p.ring(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            FunctionOracle::Table(t) => t.arity(),
            FunctionOracle::Poly(p) => p.arity(),
        }
    }

    pub fn eval(&self, x: &Point) -> Result<RingElem> {
        match self {
            FunctionOracle::Table(t) => t.get(x),
            FunctionOracle::Poly(p) => p.evaluate(x),
        }
    }

    /// Tabulates a polynomial oracle over a finite ring; tables pass through.
    pub fn to_table(&self) -> Result<TableOracle> {
        match self {
            FunctionOracle::Table(t) => Ok(t.clone()),
            FunctionOracle::Poly(p) => TableOracle::from_fn(p.ring(), p.arity(), |x| p.evaluate_unchecked(x)),
        }
    }
}

/// Finite-difference coefficients `Psi_J^{(m0)}` of `f` on the cube
/// `m0 + {0,1}^n`, returned as a polynomial in the displacements.
///
/// `Psi_J = sum_{K subset J} (-1)^{|J|-|K|} f(m0 + sum_{k in K} e_k)`; the
/// sum is evaluated with an in-place subset-difference transform.
pub fn psi_extract(f: &FunctionOracle, m0: &Point) -> Result<MultiAffinePoly> {
    let n = f.arity();
    if m0.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: m0.arity() });
    }
    let ring = f.ring();
    let mut out = MultiAffinePoly::new(ring, n)?;
    let size = 1usize << n;
    let mut vals = Vec::with_capacity(size);
    for mask in 0..size as u32 {
        let mut x = m0.clone();
        for j in (0..n).filter(|j| mask >> j & 1 == 1) {
            x.0[j] = ring.add(&x.0[j], &ring.one());
        }
        vals.push(f.eval(&x)?);
    }
    for bit in 0..n {
        for mask in 0..size {
            if mask >> bit & 1 == 1 {
                vals[mask] = ring.sub(&vals[mask], &vals[mask ^ (1 << bit)]);
            }
        }
    }
    for (mask, v) in vals.into_iter().enumerate() {
        out.set(mask as u32, v)?;
    }
    Ok(out)
}

/// Outcome of checking `f` along one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineCheck {
    /// `f(m + r e) = f(m) + slope * r` for every `m` on the line and every `r`.
    Affine { slope: RingElem },
    /// With `params = (r1, r2, r3) = (0, 1, r)`, the values at `r1` and `r2`
    /// fix the only affine candidate and the value at `r3` disagrees with it.
    Witness { params: [RingElem; 3], values: [RingElem; 3] },
}

impl LineCheck {
    pub fn is_affine(&self) -> bool {
        matches!(self, LineCheck::Affine { .. })
    }
}

/// Decides whether `f` restricted to `line` is affine-linear.
///
/// Finite rings are checked at every parameter; polynomial oracles over the
/// rationals are checked symbolically.
pub fn line_affine_check(f: &FunctionOracle, line: &Line) -> Result<LineCheck> {
    let ring = f.ring().clone();
    if line.base().arity() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: line.base().arity() });
    }
    let f0 = f.eval(line.base())?;
    let f1 = f.eval(&line.point_at(&ring, &ring.one()))?;
    let slope = ring.sub(&f1, &f0);
    let fails_at = |r: &RingElem| -> Result<Option<RingElem>> {
        let v = f.eval(&line.point_at(&ring, r))?;
        let expected = ring.add(&f0, &ring.mul(&slope, r));
        Ok((v != expected).then_some(v))
    };
    let witness = |r: RingElem, v: RingElem| LineCheck::Witness {
        params: [ring.zero(), ring.one(), r],
        values: [f0.clone(), f1.clone(), v],
    };

    if ring.is_finite() {
        for r in ring.elements()? {
            if let Some(v) = fails_at(&r)? {
                return Ok(witness(r, v));
            }
        }
        return Ok(LineCheck::Affine { slope });
    }

    let FunctionOracle::Poly(p) = f else {
        return Err(Error::Unsupported("table oracles over the rationals; use a polynomial".into()));
    };
    let coeffs = p.restrict_line(line)?;
    if coeffs.iter().skip(2).all(|c| ring.is_zero(c)) {
        return Ok(LineCheck::Affine { slope });
    }
    // g(r) - f0 - slope*r is a nonzero polynomial of degree <= n vanishing at
    // 0 and 1, so it is nonzero at one of 2..=n+2.
    for r in 2..=(p.arity() as i64 + 2) {
        let r = ring.from_int(r);
        if let Some(v) = fails_at(&r)? {
            return Ok(witness(r, v));
        }
    }
    Err(Error::Inconsistent(format!("no witness found on {line}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &Ring, n: usize, terms: &[(u32, i64)]) -> MultiAffinePoly {
        MultiAffinePoly::from_terms(ring, n, terms.iter().map(|&(m, c)| (m, ring.from_int(c)))).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let z5 = Ring::zmod(5).unwrap();
        let xy = poly(&z5, 2, &[(0b11, 1)]);
        assert_eq!(xy.evaluate(&Point::from_ints(&z5, &[2, 3])).unwrap(), z5.from_int(1));
        let zero = MultiAffinePoly::new(&z5, 2).unwrap();
        assert_eq!(zero.evaluate(&Point::from_ints(&z5, &[4, 4])).unwrap(), z5.zero());
        let z7 = Ring::zmod(7).unwrap();
        let p = poly(&z7, 2, &[(0, 1), (0b01, 2)]);
        assert_eq!(p.evaluate(&Point::from_ints(&z7, &[3, 0])).unwrap(), z7.zero());
        assert!(matches!(p.evaluate(&Point::from_ints(&z7, &[1])), Err(Error::ArityMismatch { expected: 2, got: 1 })));
    }

    #[test]
    fn psi_of_xy() {
        let z5 = Ring::zmod(5).unwrap();
        let f = FunctionOracle::Table(TableOracle::from_fn(&z5, 2, |p| z5.mul(&p.0[0], &p.0[1])).unwrap());
        let psi = psi_extract(&f, &Point::zero(&z5, 2)).unwrap();
        assert_eq!(psi, poly(&z5, 2, &[(0b11, 1)]));
    }

    #[test]
    fn psi_of_constant() {
        let z7 = Ring::zmod(7).unwrap();
        let f = FunctionOracle::Table(TableOracle::from_fn(&z7, 3, |_| z7.from_int(4)).unwrap());
        let psi = psi_extract(&f, &Point::from_ints(&z7, &[1, 5, 2])).unwrap();
        assert_eq!(psi, poly(&z7, 3, &[(0, 4)]));
    }

    #[test]
    fn psi_two_variable_case_by_hand() {
        // coefficient of x1 x2 is f(m0+e1+e2) - f(m0+e1) - f(m0+e2) + f(m0)
        let z11 = Ring::zmod(11).unwrap();
        let mut seed = 3u64;
        let t = TableOracle::from_fn(&z11, 2, |_| {
            seed = seed * 7 % 101;
            z11.from_int(seed as i64)
        })
        .unwrap();
        let f = FunctionOracle::Table(t);
        let m0 = Point::from_ints(&z11, &[3, 8]);
        let at = |a: i64, b: i64| f.eval(&Point::from_ints(&z11, &[3 + a, 8 + b])).unwrap();
        let expected = z11.add(&z11.sub(&z11.sub(&at(1, 1), &at(1, 0)), &at(0, 1)), &at(0, 0));
        assert_eq!(psi_extract(&f, &m0).unwrap().coeff(0b11), expected);
        assert_eq!(psi_extract(&f, &m0).unwrap().coeff(0b01), z11.sub(&at(1, 0), &at(0, 0)));
    }

    #[test]
    fn line_checks() {
        let z4 = Ring::zmod(4).unwrap();
        let f = FunctionOracle::Poly(poly(&z4, 2, &[(0b11, 2)]));
        let diag = Line::radial(&z4, Point::from_ints(&z4, &[1, 1])).unwrap();
        assert_eq!(line_affine_check(&f, &diag).unwrap(), LineCheck::Affine { slope: z4.from_int(2) });

        let z5 = Ring::zmod(5).unwrap();
        let f = FunctionOracle::Poly(poly(&z5, 2, &[(0b11, 1)]));
        let diag = Line::radial(&z5, Point::from_ints(&z5, &[1, 1])).unwrap();
        let LineCheck::Witness { params, values } = line_affine_check(&f, &diag).unwrap() else {
            panic!("xy is not affine along the diagonal");
        };
        assert_eq!(params, [z5.from_int(0), z5.from_int(1), z5.from_int(2)]);
        assert_eq!(values, [z5.from_int(0), z5.from_int(1), z5.from_int(4)]);

        let c = FunctionOracle::Poly(poly(&z5, 2, &[(0, 3)]));
        let line = Line::new(&z5, Point::from_ints(&z5, &[2, 1]), Point::from_ints(&z5, &[3, 4])).unwrap();
        assert_eq!(line_affine_check(&c, &line).unwrap(), LineCheck::Affine { slope: z5.zero() });
    }

    #[test]
    fn symbolic_line_check_over_rationals() {
        let q = Ring::rationals();
        let f = FunctionOracle::Poly(poly(&q, 3, &[(0b011, 1), (0b110, -1), (0b001, 5)]));
        // along (1,1,1): r^2 - r^2 + 5r, affine
        let ones = Line::radial(&q, Point::from_ints(&q, &[1, 1, 1])).unwrap();
        assert_eq!(line_affine_check(&f, &ones).unwrap(), LineCheck::Affine { slope: q.from_int(5) });
        let other = Line::new(&q, Point::from_ints(&q, &[1, 0, 0]), Point::from_ints(&q, &[1, 2, 0])).unwrap();
        let check = line_affine_check(&f, &other).unwrap();
        assert!(matches!(check, LineCheck::Witness { .. }));
    }

    #[test]
    fn radial_restriction_examples() {
        let z7 = Ring::zmod(7).unwrap();
        let p = poly(&z7, 2, &[(0b11, 1), (0b01, 1)]);
        assert_eq!(p.restrict_radial(&Point::from_ints(&z7, &[1, 1])).unwrap(), Point::from_ints(&z7, &[0, 1, 1]).0);
        let q = Ring::rationals();
        let p = poly(&q, 3, &[(0b111, 1)]);
        assert_eq!(
            p.restrict_radial(&Point::from_ints(&q, &[2, 3, 5])).unwrap(),
            Point::from_ints(&q, &[0, 0, 0, 30]).0
        );
        let c = poly(&q, 3, &[(0, 9)]);
        assert_eq!(
            c.restrict_radial(&Point::from_ints(&q, &[2, 3, 5])).unwrap(),
            Point::from_ints(&q, &[9, 0, 0, 0]).0
        );
    }

    #[test]
    fn affinity_predicate() {
        let q = Ring::rationals();
        assert!(poly(&q, 3, &[(0, 3), (0b001, 2), (0b100, 1)]).is_affine());
        assert!(!poly(&q, 2, &[(0b11, 1)]).is_affine());
        assert!(MultiAffinePoly::new(&q, 2).unwrap().is_affine());
    }

    #[test]
    fn table_entries_validated() {
        let z3 = Ring::zmod(3).unwrap();
        let all: Vec<(Point, RingElem)> = all_points(&z3, 2).unwrap().map(|p| (p, z3.zero())).collect();
        assert!(TableOracle::from_entries(&z3, 2, all.clone()).is_ok());
        let missing = TableOracle::from_entries(&z3, 2, all[1..].to_vec());
        assert_eq!(missing, Err(Error::MissingPoint("0,0".into())));
        let mut dup = all.clone();
        dup.push(all[4].clone());
        assert!(matches!(TableOracle::from_entries(&z3, 2, dup), Err(Error::Precondition(_))));
        assert!(TableOracle::from_fn(&Ring::rationals(), 1, |_| Ring::rationals().zero()).is_err());
    }

    #[test]
    fn subset_order_is_lexicographic() {
        let names: Vec<String> = subsets_of_size(4, 2).into_iter().map(mask_string).collect();
        assert_eq!(names, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
    }

    #[test]
    fn display() {
        let z7 = Ring::zmod(7).unwrap();
        assert_eq!(poly(&z7, 3, &[(0b110, 2), (0, 1), (0b001, 3)]).to_string(), "1 + 3*x1 + 2*x2*x3");
    }
}
