//! Exact coefficient rings: `Z/m`, prime fields, small Galois fields and the
//! rationals.
//!
//! Elements are plain values ([`RingElem`]); all arithmetic goes through a
//! [`Ring`] context, so one element type serves every ring. Finite-ring
//! elements are stored by their integer encoding: the residue in `[0, m)`,
//! or for `GF(p^k)` the integer `sum d_i p^i` of the coefficient digits
//! `d_0..d_{k-1}` in the polynomial basis. That encoding is also the
//! canonical total order and the textual form.
//!
//! The predicate that everything downstream leans on is [`Ring::is_regular`]:
//! `r` is regular when `x -> r*x` is injective. Zero is never regular.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Largest Galois field order accepted.
pub const MAX_GF_ORDER: u64 = 81;
/// Largest Galois field extension degree accepted.
pub const MAX_GF_DEGREE: u32 = 4;

/// An element of some [`Ring`], in canonical form.
///
/// `Residue` holds the integer encoding of a finite-ring element; `Fraction`
/// a fully reduced rational with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    Residue(u64),
    Fraction(BigRational),
}

impl RingElem {
    /// Integer encoding of a finite-ring element.
    pub fn code(&self) -> Option<u64> {
        match self {
            RingElem::Residue(c) => Some(*c),
            RingElem::Fraction(_) => None,
        }
    }

    pub fn rational(n: i64, d: i64) -> RingElem {
        RingElem::Fraction(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Residue(c) => write!(f, "{c}"),
            RingElem::Fraction(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            RingElem::Fraction(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// The ring families supported.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Zmod {
        modulus: u64,
    },
    PrimeField {
        p: u64,
    },
    /// `F_p[x] / (x^k + c_{k-1} x^{k-1} + ... + c_0)`, `modulus = [c_0, ..., c_{k-1}]`.
    GaloisField {
        p: u64,
        k: u32,
        modulus: Vec<u64>,
    },
    Rationals,
}

/// Binary operations accepted by [`Ring::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug)]
struct GfTables {
    order: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A coefficient ring. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring {
    kind: RingKind,
    gf: Option<Arc<GfTables>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn zmod(modulus: u64) -> Result<Ring> {
        if modulus < 2 {
            return Err(Error::InvalidRing(format!("zmod needs modulus >= 2, got {modulus}")));
        }
        Ok(Ring { kind: RingKind::Zmod { modulus }, gf: None })
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring { kind: RingKind::PrimeField { p }, gf: None })
    }

    /// `GF(p^k)` with modulus `x^k + modulus[k-1] x^{k-1} + ... + modulus[0]`.
    pub fn galois_field(p: u64, k: u32, modulus: Vec<u64>) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if k == 0 || k > MAX_GF_DEGREE {
            return Err(Error::InvalidRing(format!("extension degree must be in 1..={MAX_GF_DEGREE}, got {k}")));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_GF_ORDER)
            .ok_or_else(|| Error::InvalidRing(format!("GF({p}^{k}) exceeds order {MAX_GF_ORDER}")))?;
        if modulus.len() != k as usize {
            return Err(Error::InvalidRing(format!("modulus needs {k} coefficients, got {}", modulus.len())));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidRing(format!("modulus digit {c} not in [0, {p})")));
        }
        let mut monic = modulus.clone();
        monic.push(1);
        if let Some(factor) = find_factor(&monic, p) {
            return Err(Error::InvalidRing(format!(
                "modulus is reducible over F_{p}: divisible by {}",
                poly_string(&factor)
            )));
        }
        let tables = GfTables::build(p, k as usize, &modulus, order as usize);
        Ok(Ring { kind: RingKind::GaloisField { p, k, modulus }, gf: Some(Arc::new(tables)) })
    }

    pub fn rationals() -> Ring {
        Ring { kind: RingKind::Rationals, gf: None }
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, RingKind::Rationals)
    }

    pub fn is_field(&self) -> bool {
        match self.kind {
            RingKind::Zmod { modulus } => is_prime(modulus),
            _ => true,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match &self.kind {
            RingKind::Zmod { modulus } => Some(*modulus),
            RingKind::PrimeField { p } => Some(*p),
            RingKind::GaloisField { .. } => Some(self.tables().order as u64),
            RingKind::Rationals => None,
        }
    }

    /// `(p, k)` with `|F| = p^k` for finite fields.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match &self.kind {
            RingKind::Zmod { modulus } if is_prime(*modulus) => Some((*modulus, 1)),
            RingKind::PrimeField { p } => Some((*p, 1)),
            RingKind::GaloisField { p, k, .. } => Some((*p, *k)),
            _ => None,
        }
    }

    fn tables(&self) -> &GfTables {
        self.gf.as_deref().expect("galois field tables")
    }

    fn residue_modulus(&self) -> u64 {
        match self.kind {
            RingKind::Zmod { modulus } => modulus,
            RingKind::PrimeField { p } => p,
            _ => unreachable!("not a residue ring"),
        }
    }

    pub fn zero(&self) -> RingElem {
        match self.kind {
            RingKind::Rationals => RingElem::Fraction(BigRational::zero()),
            _ => RingElem::Residue(0),
        }
    }

    pub fn one(&self) -> RingElem {
        match self.kind {
            RingKind::Rationals => RingElem::Fraction(BigRational::one()),
            _ => RingElem::Residue(1),
        }
    }

    /// Image of the integer `n` under `Z -> R`.
    pub fn from_int(&self, n: i64) -> RingElem {
        match &self.kind {
            RingKind::Zmod { modulus: m } | RingKind::PrimeField { p: m } => {
                RingElem::Residue(n.rem_euclid(*m as i64) as u64)
            }
            // 1 is the constant polynomial, so n*1 sits in digit 0.
            RingKind::GaloisField { p, .. } => RingElem::Residue(n.rem_euclid(*p as i64) as u64),
            RingKind::Rationals => RingElem::Fraction(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Builds a finite-ring element from its encoding.
    pub fn elem(&self, code: u64) -> Result<RingElem> {
        match self.order() {
            Some(q) if code < q => Ok(RingElem::Residue(code)),
            Some(q) => Err(Error::RingMismatch(format!("{code} is not in [0, {q}) for {self}"))),
            None => Ok(self.from_int(code as i64)),
        }
    }

    pub fn contains(&self, a: &RingElem) -> bool {
        match (a, self.order()) {
            (RingElem::Residue(c), Some(q)) => *c < q,
            (RingElem::Fraction(_), None) => true,
            _ => false,
        }
    }

    fn check(&self, a: &RingElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{a} is not an element of {self}")))
        }
    }

    /// Checked binary arithmetic: both operands must belong to this ring.
    pub fn arith(&self, op: ArithOp, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    /// Checked negation.
    pub fn arith_neg(&self, a: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (&self.kind, a, b) {
            (RingKind::GaloisField { .. }, RingElem::Residue(x), RingElem::Residue(y)) => {
                let t = self.tables();
                RingElem::Residue(t.add[*x as usize * t.order + *y as usize] as u64)
            }
            (RingKind::Rationals, RingElem::Fraction(x), RingElem::Fraction(y)) => RingElem::Fraction(x + y),
            (_, RingElem::Residue(x), RingElem::Residue(y)) => {
                let m = self.residue_modulus() as u128;
                RingElem::Residue(((*x as u128 + *y as u128) % m) as u64)
            }
            _ => panic!("operands {a}, {b} do not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match (&self.kind, a) {
            (RingKind::GaloisField { .. }, RingElem::Residue(x)) => {
                RingElem::Residue(self.tables().neg[*x as usize] as u64)
            }
            (RingKind::Rationals, RingElem::Fraction(x)) => RingElem::Fraction(-x),
            (_, RingElem::Residue(x)) => {
                let m = self.residue_modulus();
                RingElem::Residue(if *x == 0 { 0 } else { m - x })
            }
            _ => panic!("operand {a} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (&self.kind, a, b) {
            (RingKind::GaloisField { .. }, RingElem::Residue(x), RingElem::Residue(y)) => {
                let t = self.tables();
                RingElem::Residue(t.mul[*x as usize * t.order + *y as usize] as u64)
            }
            (RingKind::Rationals, RingElem::Fraction(x), RingElem::Fraction(y)) => RingElem::Fraction(x * y),
            (_, RingElem::Residue(x), RingElem::Residue(y)) => {
                let m = self.residue_modulus() as u128;
                RingElem::Residue(((*x as u128 * *y as u128) % m) as u64)
            }
            _ => panic!("operands {a}, {b} do not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Residue(c) => *c == 0,
            RingElem::Fraction(q) => q.is_zero(),
        }
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: &RingElem) -> Option<RingElem> {
        if self.is_zero(a) {
            return None;
        }
        match (&self.kind, a) {
            (RingKind::GaloisField { .. }, RingElem::Residue(x)) => {
                Some(RingElem::Residue(self.tables().inv[*x as usize] as u64))
            }
            (RingKind::Rationals, RingElem::Fraction(q)) => Some(RingElem::Fraction(q.recip())),
            (_, RingElem::Residue(x)) => {
                let m = self.residue_modulus() as i128;
                let g = (*x as i128).extended_gcd(&m);
                if g.gcd != 1 {
                    return None;
                }
                Some(RingElem::Residue(g.x.rem_euclid(m) as u64))
            }
            _ => None,
        }
    }

    /// True iff multiplication by `r` is injective. Zero is never regular.
    pub fn is_regular(&self, r: &RingElem) -> bool {
        match (&self.kind, r) {
            (RingKind::Zmod { modulus }, RingElem::Residue(x)) => x.gcd(modulus) == 1,
            _ => !self.is_zero(r),
        }
    }

    /// True iff `1, 2, ..., n` (as sums of `1`) are all regular.
    pub fn characteristic_regular_upto(&self, n: u64) -> bool {
        match &self.kind {
            RingKind::Rationals => true,
            // A field: only the characteristic itself can vanish.
            RingKind::PrimeField { p } | RingKind::GaloisField { p, .. } => n < *p,
            RingKind::Zmod { modulus } => (1..=n).all(|i| i.gcd(modulus) == 1),
        }
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        let q = self.order().ok_or_else(|| Error::NotEnumerable(self.to_string()))?;
        Ok((0..q).map(RingElem::Residue).collect())
    }

    /// `x^(p^j)` in a finite field.
    pub fn frobenius(&self, x: &RingElem, j: u32) -> Result<RingElem> {
        let (p, _) = self
            .prime_power()
            .ok_or_else(|| Error::Unsupported(format!("Frobenius needs a finite field, got {self}")))?;
        self.check(x)?;
        let mut y = x.clone();
        for _ in 0..j {
            y = self.pow(&y, p);
        }
        Ok(y)
    }

    /// Coefficient digits `[d_0, ..., d_{k-1}]` of a Galois field element.
    pub fn digits(&self, a: &RingElem) -> Option<Vec<u64>> {
        match (&self.kind, a) {
            (RingKind::GaloisField { p, k, .. }, RingElem::Residue(c)) => Some(to_digits(*c, *p, *k as usize)),
            _ => None,
        }
    }

    /// Parses an element written in canonical form: an encoding in `[0, |R|)`
    /// for finite rings, `a`, `-a` or `a/b` for the rationals.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        let s = s.trim();
        match self.kind {
            RingKind::Rationals => parse_rational(s)
                .map(RingElem::Fraction)
                .ok_or_else(|| Error::RingMismatch(format!("`{s}` is not a rational"))),
            _ => {
                let code: u64 =
                    s.parse().map_err(|_| Error::RingMismatch(format!("`{s}` is not an element of {self}")))?;
                self.elem(code)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Zmod { modulus } => write!(f, "zmod {modulus}"),
            RingKind::PrimeField { p } => write!(f, "prime {p}"),
            RingKind::GaloisField { p, k, modulus } => {
                write!(f, "gf {p} {k}")?;
                for c in modulus {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
            RingKind::Rationals => write!(f, "rational"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Parses a ring literal: `zmod <m>`, `prime <p>`,
    /// `gf <p> <k> <c0> ... <c{k-1}>` or `rational`.
    fn from_str(s: &str) -> Result<Ring> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| -> Result<u64> {
            w.parse().map_err(|_| Error::InvalidRing(format!("`{w}` is not a non-negative integer")))
        };
        match words.as_slice() {
            ["zmod", m] => Ring::zmod(num(m)?),
            ["prime", p] => Ring::prime_field(num(p)?),
            ["gf", p, k, rest @ ..] => {
                let k = num(k)?;
                let k = u32::try_from(k).map_err(|_| Error::InvalidRing(format!("degree {k}")))?;
                let modulus = rest.iter().map(|w| num(w)).collect::<Result<Vec<_>>>()?;
                Ring::galois_field(num(p)?, k, modulus)
            }
            ["rational"] => Ok(Ring::rationals()),
            _ => Err(Error::InvalidRing(format!("unrecognised ring literal `{s}`"))),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Deterministic Miller-Rabin for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn to_digits(mut c: u64, p: u64, k: usize) -> Vec<u64> {
    let mut d = vec![0; k];
    for slot in d.iter_mut() {
        *slot = c % p;
        c /= p;
    }
    d
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`
/// (coefficients lowest degree first).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * lead % p) % p;
            }
        }
    }
    r
}

/// Exhaustive search for a monic factor of degree `1..=deg/2`.
fn find_factor(monic: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = monic.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut cand = to_digits(code, p, d);
            cand.push(1);
            if poly_rem(monic, &cand, p).iter().all(|&c| c == 0) {
                return Some(cand);
            }
        }
    }
    None
}

fn poly_string(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coef = if a == 1 && i > 0 { String::new() } else { a.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl GfTables {
    fn build(p: u64, k: usize, modulus: &[u64], order: usize) -> GfTables {
        let mut monic = modulus.to_vec();
        monic.push(1);
        let digits: Vec<Vec<u64>> = (0..order as u64).map(|c| to_digits(c, p, k)).collect();
        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<u64> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = from_digits(&s, p) as u8;
                let mut prod = vec![0u64; 2 * k - 1];
                for (i, x) in digits[a].iter().enumerate() {
                    for (j, y) in digits[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                mul[a * order + b] = from_digits(&poly_rem(&prod, &monic, p), p) as u8;
            }
        }
        let neg = (0..order)
            .map(|a| {
                let d: Vec<u64> = digits[a].iter().map(|x| (p - x) % p).collect();
                from_digits(&d, p) as u8
            })
            .collect();
        let mut inv = vec![0u8; order];
        for a in 1..order {
            inv[a] = (1..order).find(|&b| mul[a * order + b] == 1).expect("field inverse") as u8;
        }
        GfTables { order, add, mul, neg, inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Ring {
        Ring::galois_field(2, 2, vec![1, 1]).unwrap()
    }

    #[test]
    fn zmod_arith() {
        let r = Ring::zmod(4).unwrap();
        assert_eq!(r.mul(&RingElem::Residue(2), &RingElem::Residue(2)), RingElem::Residue(0));
        assert_eq!(r.sub(&RingElem::Residue(1), &RingElem::Residue(3)), RingElem::Residue(2));
    }

    #[test]
    fn gf4_t_squared() {
        let f = gf4();
        // t is encoded as 2, t+1 as 3
        assert_eq!(f.mul(&RingElem::Residue(2), &RingElem::Residue(2)), RingElem::Residue(3));
        assert_eq!(f.digits(&RingElem::Residue(3)), Some(vec![1, 1]));
    }

    #[test]
    fn rational_sum_is_reduced() {
        let q = Ring::rationals();
        let s = q.add(&RingElem::rational(1, 3), &RingElem::rational(1, 6));
        assert_eq!(s, RingElem::rational(1, 2));
        assert_eq!(s.to_string(), "1/2");
        assert_eq!(RingElem::rational(4, -2).to_string(), "-2");
    }

    #[test]
    fn mixed_operands_rejected() {
        let r = Ring::zmod(5).unwrap();
        let err = r.arith(ArithOp::Add, &RingElem::Residue(1), &RingElem::rational(1, 2));
        assert!(matches!(err, Err(Error::RingMismatch(_))));
        assert!(r.arith(ArithOp::Mul, &RingElem::Residue(7), &RingElem::Residue(1)).is_err());
    }

    #[test]
    fn regularity() {
        let r = Ring::zmod(12).unwrap();
        assert!(r.is_regular(&RingElem::Residue(5)));
        assert!(!r.is_regular(&RingElem::Residue(4)));
        assert!(!r.is_regular(&RingElem::Residue(0)));
        assert!(!Ring::rationals().is_regular(&Ring::rationals().zero()));
        assert!(!gf4().is_regular(&RingElem::Residue(0)));
    }

    #[test]
    fn characteristic() {
        assert!(!Ring::zmod(4).unwrap().characteristic_regular_upto(2));
        assert!(Ring::prime_field(5).unwrap().characteristic_regular_upto(4));
        assert!(!Ring::prime_field(5).unwrap().characteristic_regular_upto(5));
        assert!(Ring::rationals().characteristic_regular_upto(1000));
        assert!(Ring::zmod(35).unwrap().characteristic_regular_upto(4));
        assert!(!Ring::zmod(35).unwrap().characteristic_regular_upto(5));
    }

    #[test]
    fn enumeration() {
        let codes = |r: Ring| r.elements().unwrap().iter().map(|e| e.code().unwrap()).collect::<Vec<_>>();
        assert_eq!(codes(Ring::zmod(3).unwrap()), vec![0, 1, 2]);
        assert_eq!(codes(gf4()), vec![0, 1, 2, 3]);
        assert_eq!(codes(Ring::prime_field(2).unwrap()), vec![0, 1]);
        assert!(matches!(Ring::rationals().elements(), Err(Error::NotEnumerable(_))));
    }

    #[test]
    fn frobenius_examples() {
        let f = gf4();
        assert_eq!(f.frobenius(&RingElem::Residue(2), 1).unwrap(), RingElem::Residue(3));
        assert_eq!(f.frobenius(&RingElem::Residue(2), 0).unwrap(), RingElem::Residue(2));
        assert_eq!(f.frobenius(&RingElem::Residue(2), 2).unwrap(), RingElem::Residue(2));
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.frobenius(&RingElem::Residue(3), 1).unwrap(), RingElem::Residue(3));
        assert!(matches!(Ring::zmod(6).unwrap().frobenius(&RingElem::Residue(1), 1), Err(Error::Unsupported(_))));
        assert!(Ring::rationals().frobenius(&Ring::rationals().one(), 1).is_err());
    }

    #[test]
    fn galois_constructor_checks() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(Ring::galois_field(2, 2, vec![1, 0]).is_err());
        // x^2 + 1 is irreducible over F_3
        assert!(Ring::galois_field(3, 2, vec![1, 0]).is_ok());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2: no roots, still reducible
        assert!(Ring::galois_field(2, 4, vec![1, 0, 1, 0]).is_err());
        assert!(Ring::galois_field(2, 4, vec![1, 1, 0, 0]).is_ok());
        assert!(Ring::galois_field(2, 5, vec![1, 0, 1, 0, 0]).is_err());
        assert!(Ring::galois_field(5, 3, vec![2, 0, 0]).is_err()); // 125 > 81
        assert!(Ring::galois_field(4, 1, vec![1]).is_err());
        assert!(Ring::prime_field(9).is_err());
        assert!(Ring::zmod(1).is_err());
    }

    #[test]
    fn literals_roundtrip() {
        for lit in ["zmod 5", "prime 7", "gf 2 2 1 1", "gf 3 2 1 0", "rational"] {
            let r: Ring = lit.parse().unwrap();
            assert_eq!(r.to_string(), lit);
        }
        assert!("gf 2 2 1".parse::<Ring>().is_err());
        assert!("field 3".parse::<Ring>().is_err());
    }

    #[test]
    fn parse_elements() {
        let q = Ring::rationals();
        assert_eq!(q.parse_elem("3/1").unwrap(), q.from_int(3));
        assert_eq!(q.parse_elem("-2/4").unwrap(), RingElem::rational(-1, 2));
        assert!(q.parse_elem("1/0").is_err());
        let z = Ring::zmod(5).unwrap();
        assert!(z.parse_elem("5").is_err());
        assert!(z.parse_elem("-1").is_err());
        assert_eq!(z.parse_elem("4").unwrap(), RingElem::Residue(4));
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn inverses() {
        let z = Ring::zmod(12).unwrap();
        assert_eq!(z.inv(&RingElem::Residue(5)), Some(RingElem::Residue(5)));
        assert_eq!(z.inv(&RingElem::Residue(4)), None);
        let f = Ring::galois_field(3, 2, vec![1, 0]).unwrap();
        for a in f.elements().unwrap().into_iter().skip(1) {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }
}
