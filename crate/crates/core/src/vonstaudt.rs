//! Maps `F^d -> F^e` over a small finite field that send affine lines onto
//! affine lines and keep every point off a line away from that line's image.
//! Such maps are injective and `tau`-affine: `f(v) = f(0) + sum_i tau(v_i) g_i`
//! for a field automorphism `tau`, which over `GF(p^k)` is a Frobenius power.
//!
//! Everything here is exhaustive, so fields are limited to `2 < q <= 9` and
//! tables to `d * e <= 6`. Over `F_2` a line has only two points, and any map
//! sends it to "a line"; the recovery argument needs a third scalar.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::multiaffine::{point_from_index, Line, Point};
use crate::ring::{Ring, RingElem};

const MAX_LINE_DOMAIN: u64 = 10_000;
const MAX_FIELD: u64 = 9;
const MAX_DIM_PRODUCT: usize = 6;

fn field_order(field: &Ring) -> Result<u64> {
    match (field.is_field(), field.order()) {
        (true, Some(q)) => Ok(q),
        _ => Err(Error::Precondition(format!("{field} is not a finite field"))),
    }
}

fn index_of(q: u64, p: &Point) -> usize {
    p.coords().iter().fold(0u64, |acc, c| acc * q + c.code().expect("finite field element")) as usize
}

/// Every affine line of `F^d` exactly once, as `base + F dir` where `dir`
/// has leading nonzero coordinate 1 and `base` is the lexicographically least
/// point of the line (zero at the leading index of `dir`). Sorted by base,
/// then direction.
pub fn enumerate_affine_lines(field: &Ring, d: usize) -> Result<Vec<Line>> {
    let q = field_order(field)?;
    if d == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let size = (q as u128)
        .checked_pow(d as u32)
        .filter(|&s| s <= MAX_LINE_DOMAIN as u128)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{d} points exceed the limit of {MAX_LINE_DOMAIN}")))?
        as u64;
    let points: Vec<Point> = (0..size).map(|i| point_from_index(q, d, i)).collect();
    let mut lines = Vec::new();
    for dir in &points {
        let Some(lead) = dir.coords().iter().position(|c| !field.is_zero(c)) else { continue };
        if dir.coords()[lead] != field.one() {
            continue;
        }
        for base in points.iter().filter(|b| field.is_zero(&b.coords()[lead])) {
            lines.push(Line::new(field, base.clone(), dir.clone())?);
        }
    }
    lines.sort_by(|a, b| (a.base(), a.dir()).cmp(&(b.base(), b.dir())));
    Ok(lines)
}

/// An exhaustive map `F_q^d -> F_q^e`, values in lexicographic point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorMapTable {
    field: Ring,
    d: usize,
    e: usize,
    values: Vec<Point>,
}

impl VectorMapTable {
    fn validate(field: &Ring, d: usize, e: usize) -> Result<u64> {
        let q = field_order(field)?;
        if q == 2 {
            return Err(Error::Precondition("F_2 is excluded: a line has only two points".into()));
        }
        if q > MAX_FIELD {
            return Err(Error::TooLarge(format!("field of order {q} exceeds {MAX_FIELD}")));
        }
        if d < 2 || e < 1 {
            return Err(Error::Precondition(format!("need d >= 2 and e >= 1, got d = {d}, e = {e}")));
        }
        if d * e > MAX_DIM_PRODUCT {
            return Err(Error::TooLarge(format!("d * e = {} exceeds {MAX_DIM_PRODUCT}", d * e)));
        }
        Ok(q)
    }

    pub fn from_fn<F>(field: &Ring, d: usize, e: usize, mut f: F) -> Result<VectorMapTable>
    where
        F: FnMut(&Point) -> Point,
    {
        let q = VectorMapTable::validate(field, d, e)?;
        let mut values = Vec::new();
        for i in 0..q.pow(d as u32) {
            let v = f(&point_from_index(q, d, i));
            check_vector(field, e, &v)?;
            values.push(v);
        }
        Ok(VectorMapTable { field: field.clone(), d, e, values })
    }

    /// Builds a table from `(point, value)` pairs covering every point once.
    pub fn from_entries<I>(field: &Ring, d: usize, e: usize, entries: I) -> Result<VectorMapTable>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let q = VectorMapTable::validate(field, d, e)?;
        let size = q.pow(d as u32) as usize;
        let mut values: Vec<Option<Point>> = vec![None; size];
        for (x, y) in entries {
            check_vector(field, d, &x)?;
            check_vector(field, e, &y)?;
            let slot = &mut values[index_of(q, &x)];
            if slot.is_some() {
                return Err(Error::Precondition(format!("point {x} given twice")));
            }
            *slot = Some(y);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingPoint(point_from_index(q, d, i as u64).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorMapTable { field: field.clone(), d, e, values })
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn domain_dim(&self) -> usize {
        self.d
    }

    pub fn codomain_dim(&self) -> usize {
        self.e
    }

    fn q(&self) -> u64 {
        self.field.order().expect("finite field")
    }

    pub fn get(&self, x: &Point) -> Result<&Point> {
        check_vector(&self.field, self.d, x)?;
        Ok(&self.values[index_of(self.q(), x)])
    }

    pub fn entries(&self) -> impl Iterator<Item = (Point, &Point)> {
        let (q, d) = (self.q(), self.d);
        self.values.iter().enumerate().map(move |(i, v)| (point_from_index(q, d, i as u64), v))
    }
}

fn check_vector(field: &Ring, dim: usize, v: &Point) -> Result<()> {
    if v.arity() != dim {
        return Err(Error::ArityMismatch { expected: dim, got: v.arity() });
    }
    if let Some(c) = v.coords().iter().find(|c| !field.contains(c)) {
        return Err(Error::RingMismatch(format!("{c} is not an element of {field}")));
    }
    Ok(())
}

/// First failed hypothesis, in line order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The image of `line` is not an affine line of the codomain.
    NotALine { line: Line, image: Vec<Point> },
    /// `point` lies off `line` but `f(point)` lies in `f(line)`.
    NotSeparated { line: Line, point: Point },
}

/// Checks that `f` maps each affine line onto an affine line and that
/// `f(v)` avoids `f(l)` for every `v` off `l`.
pub fn check_hypotheses(f: &VectorMapTable) -> Result<Option<Violation>> {
    let field = &f.field;
    let q = f.q();
    let scalars = field.elements()?;
    for line in enumerate_affine_lines(field, f.d)? {
        let on_line: Vec<Point> = scalars.iter().map(|r| line.point_at(field, r)).collect();
        let image: HashSet<&Point> = on_line.iter().map(|p| &f.values[index_of(q, p)]).collect();
        if !is_affine_line(field, &scalars, &image) {
            let mut image: Vec<Point> = image.into_iter().cloned().collect();
            image.sort();
            return Ok(Some(Violation::NotALine { line, image }));
        }
        let members: HashSet<usize> = on_line.iter().map(|p| index_of(q, p)).collect();
        for (i, value) in f.values.iter().enumerate() {
            if !members.contains(&i) && image.contains(value) {
                return Ok(Some(Violation::NotSeparated { line, point: point_from_index(q, f.d, i as u64) }));
            }
        }
    }
    Ok(None)
}

/// True iff `set` is `{x + l (y - x) : l in F}` for two of its points.
fn is_affine_line(field: &Ring, scalars: &[RingElem], set: &HashSet<&Point>) -> bool {
    if set.len() != scalars.len() {
        return false;
    }
    let mut it = set.iter();
    let (Some(x), Some(y)) = (it.next(), it.next()) else { return false };
    let step = y.sub(field, x);
    scalars.iter().all(|l| set.contains(&x.along(field, &step, l)))
}

/// Why a scalar table is not a field automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismFailure {
    /// `x != y` with the same image.
    NotBijective { x: RingElem, y: RingElem },
    /// `tau(x + y) != tau(x) + tau(y)`.
    NotAdditive { x: RingElem, y: RingElem },
    /// `tau(x y) != tau(x) tau(y)`.
    NotMultiplicative { x: RingElem, y: RingElem },
    /// An automorphism that matches no Frobenius power.
    NotFrobenius,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// `tau(x) = x^(p^j)`.
    Frobenius(u32),
    NotAutomorphism(AutomorphismFailure),
}

/// Identifies `tau`, given as its values on the field elements in encoding
/// order, as a Frobenius power.
pub fn identify_automorphism(field: &Ring, tau: &[RingElem]) -> Result<Automorphism> {
    let (_, k) = field.prime_power().ok_or_else(|| Error::Precondition(format!("{field} is not a finite field")))?;
    let elems = field.elements()?;
    if tau.len() != elems.len() || tau.iter().any(|t| !field.contains(t)) {
        return Err(Error::Precondition(format!("tau must list one element of {field} per field element")));
    }
    let at = |x: &RingElem| &tau[x.code().expect("finite field element") as usize];
    let fail = |w| Ok(Automorphism::NotAutomorphism(w));

    let mut seen: HashMap<&RingElem, &RingElem> = HashMap::new();
    for x in &elems {
        if let Some(y) = seen.insert(at(x), x) {
            return fail(AutomorphismFailure::NotBijective { x: y.clone(), y: x.clone() });
        }
    }
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            if *at(&field.add(x, y)) != field.add(at(x), at(y)) {
                return fail(AutomorphismFailure::NotAdditive { x: x.clone(), y: y.clone() });
            }
        }
    }
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            if *at(&field.mul(x, y)) != field.mul(at(x), at(y)) {
                return fail(AutomorphismFailure::NotMultiplicative { x: x.clone(), y: y.clone() });
            }
        }
    }
    for j in 0..k {
        if elems.iter().all(|x| field.frobenius(x, j).is_ok_and(|fx| fx == *at(x))) {
            return Ok(Automorphism::Frobenius(j));
        }
    }
    fail(AutomorphismFailure::NotFrobenius)
}

/// `f(v) = offset + sum_i tau(v_i) basis_images[i]` with `tau` the
/// `frobenius`-th Frobenius power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearCert {
    pub field: Ring,
    pub frobenius: u32,
    pub basis_images: Vec<Point>,
    pub offset: Point,
}

impl SemilinearCert {
    pub fn apply(&self, v: &Point) -> Result<Point> {
        let field = &self.field;
        let mut out = self.offset.clone();
        for (x, g) in v.coords().iter().zip(&self.basis_images) {
            out = out.along(field, g, &field.frobenius(x, self.frobenius)?);
        }
        Ok(out)
    }
}

/// Recovers the semilinear form of a map that satisfies
/// [`check_hypotheses`].
pub fn recover_semilinear(f: &VectorMapTable) -> Result<SemilinearCert> {
    if let Some(v) = check_hypotheses(f)? {
        return Err(Error::Precondition(format!("line hypotheses fail: {v:?}")));
    }
    let field = &f.field;
    let d = f.d;
    let scalars = field.elements()?;
    let offset = f.get(&Point::zero(field, d))?.clone();
    let g = |x: &Point| -> Result<Point> { Ok(f.get(x)?.sub(field, &offset)) };
    let basis_images = (0..d).map(|i| g(&Point::unit(field, d, i))).collect::<Result<Vec<_>>>()?;

    // tau(l) is the scalar with g(l e_1) = tau(l) g(e_1)
    let mut tau = Vec::with_capacity(scalars.len());
    for l in &scalars {
        let target = g(&Point::unit(field, d, 0).scale(field, l))?;
        let t = scalars
            .iter()
            .find(|m| basis_images[0].scale(field, m) == target)
            .ok_or_else(|| Error::Inconsistent(format!("g({l} e_1) = {target} is not a multiple of g(e_1)")))?;
        tau.push(t.clone());
    }
    for (i, gi) in basis_images.iter().enumerate().skip(1) {
        for (l, t) in scalars.iter().zip(&tau) {
            if g(&Point::unit(field, d, i).scale(field, l))? != gi.scale(field, t) {
                return Err(Error::Inconsistent(format!("scalar map along e_{} differs from e_1 at {l}", i + 1)));
            }
        }
    }
    let frobenius = match identify_automorphism(field, &tau)? {
        Automorphism::Frobenius(j) => j,
        Automorphism::NotAutomorphism(w) => {
            return Err(Error::Inconsistent(format!("recovered scalar map is not an automorphism: {w:?}")))
        }
    };
    let cert = SemilinearCert { field: field.clone(), frobenius, basis_images, offset };
    for (x, y) in f.entries() {
        if cert.apply(&x)? != *y {
            return Err(Error::Inconsistent(format!("semilinear form disagrees with the table at {x}")));
        }
    }
    Ok(cert)
}
