//! Weak multiplicative `B_h`-sets.
//!
//! A finite set `S` is a weak multiplicative `B_h`-set when distinct
//! `h`-element subsets of `S` have distinct products. The moment directions
//! used by the recovery pipeline need more: `S` must be such a set for every
//! `1 <= h <= n`, every element must be regular, and for `1 < h < n` every
//! difference of two distinct `h`-fold products must be regular.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ring::{is_prime, Ring, RingElem};

/// A candidate set: distinct elements of one ring, in the order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BhCandidate {
    ring: Ring,
    elements: Vec<RingElem>,
}

impl BhCandidate {
    pub fn new(ring: &Ring, elements: Vec<RingElem>) -> Result<BhCandidate> {
        if elements.is_empty() {
            return Err(Error::Precondition("a candidate set needs at least one element".into()));
        }
        if let Some(e) = elements.iter().find(|e| !ring.contains(e)) {
            return Err(Error::RingMismatch(format!("{e} is not an element of {ring}")));
        }
        if let Some(e) = elements.iter().duplicates().next() {
            return Err(Error::Precondition(format!("element {e} repeated")));
        }
        Ok(BhCandidate { ring: ring.clone(), elements })
    }

    pub fn from_ints(ring: &Ring, xs: &[i64]) -> Result<BhCandidate> {
        BhCandidate::new(ring, xs.iter().map(|&x| ring.from_int(x)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[RingElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn pick(&self, idx: &[usize]) -> Vec<RingElem> {
        idx.iter().map(|&i| self.elements[i].clone()).collect()
    }

    /// Products of all `h`-subsets, subsets (as index lists) in lexicographic order.
    pub fn subset_products(&self, h: usize) -> Vec<(Vec<usize>, RingElem)> {
        (0..self.len())
            .combinations(h)
            .map(|idx| {
                let p = idx.iter().fold(self.ring.one(), |acc, &i| self.ring.mul(&acc, &self.elements[i]));
                (idx, p)
            })
            .collect()
    }
}

/// Injectivity verdict for one `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BhVerdict {
    Ok,
    Collision { left: Vec<RingElem>, right: Vec<RingElem>, product: RingElem },
}

impl BhVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, BhVerdict::Ok)
    }
}

/// Checks that `J -> prod J` is injective on `h`-subsets. On failure returns
/// the lexicographically first colliding pair `(J, J')`, `J < J'`.
pub fn verify_bh(s: &BhCandidate, h: usize) -> Result<BhVerdict> {
    if h == 0 || h > s.len() {
        return Err(Error::Precondition(format!("h = {h} outside 1..={}", s.len())));
    }
    Ok(first_collision(&s.subset_products(h))
        .map(|(i, j, product)| BhVerdict::Collision { left: s.pick(i), right: s.pick(j), product })
        .unwrap_or(BhVerdict::Ok))
}

fn first_collision(products: &[(Vec<usize>, RingElem)]) -> Option<(&[usize], &[usize], RingElem)> {
    // first two positions per product value; the lexicographically least
    // colliding pair is the pair whose first member comes earliest
    let mut seen: HashMap<&RingElem, (usize, Option<usize>)> = HashMap::new();
    for (pos, (_, p)) in products.iter().enumerate() {
        seen.entry(p)
            .and_modify(|e| {
                e.1.get_or_insert(pos);
            })
            .or_insert((pos, None));
    }
    let (a, b) = seen.values().filter_map(|&(a, b)| b.map(|b| (a, b))).min()?;
    Some((&products[a].0, &products[b].0, products[a].1.clone()))
}

/// Outcome of the regular-difference condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DifferenceVerdict {
    Ok,
    NonRegularDifference { h: usize, left: Vec<RingElem>, right: Vec<RingElem>, value: RingElem },
}

/// Full report for a candidate set of size `n >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BhReport {
    /// `(h, verdict)` for `h = 1..=n`.
    pub per_h: Vec<(usize, BhVerdict)>,
    /// First element of `S` that is not regular, if any.
    pub irregular_element: Option<RingElem>,
    /// Differences of distinct `h`-fold products for `1 < h < n`.
    pub differences: DifferenceVerdict,
}

impl BhReport {
    pub fn passes(&self) -> bool {
        self.per_h.iter().all(|(_, v)| v.is_ok())
            && self.irregular_element.is_none()
            && self.differences == DifferenceVerdict::Ok
    }
}

/// Runs [`verify_bh`] for every `h`, checks each element is regular and that
/// differences of distinct `h`-fold products are regular for `1 < h < n`.
///
/// The degree-`n` case has a single subset and needs no difference check.
pub fn verify_properties(s: &BhCandidate) -> Result<BhReport> {
    let n = s.len();
    if n < 3 {
        return Err(Error::Precondition(format!("property check needs |S| >= 3, got {n}")));
    }
    let ring = s.ring();
    let per_h = (1..=n).map(|h| Ok((h, verify_bh(s, h)?))).collect::<Result<Vec<_>>>()?;
    let irregular_element = s.elements().iter().find(|e| !ring.is_regular(e)).cloned();
    let mut differences = DifferenceVerdict::Ok;
    'degrees: for h in 2..n {
        let products = s.subset_products(h);
        if ring.is_field() {
            // regular means nonzero, so only an equal pair can fail
            if let Some((i, j, _)) = first_collision(&products) {
                differences = DifferenceVerdict::NonRegularDifference {
                    h,
                    left: s.pick(i),
                    right: s.pick(j),
                    value: ring.zero(),
                };
                break;
            }
            continue;
        }
        for (a, (i, pi)) in products.iter().enumerate() {
            for (j, pj) in &products[a + 1..] {
                let d = ring.sub(pi, pj);
                if !ring.is_regular(&d) {
                    differences =
                        DifferenceVerdict::NonRegularDifference { h, left: s.pick(i), right: s.pick(j), value: d };
                    break 'degrees;
                }
            }
        }
    }
    Ok(BhReport { per_h, irregular_element, differences })
}

/// `S = {1, g, g^2, g^4, ..., g^(2^(n-2))}`, which passes
/// [`verify_properties`] whenever `g` and `g^k - 1` are regular for
/// `1 <= k <= 2^(n-1) - 1`: subset products are `g^e` with distinct
/// exponents `e < 2^(n-1)` by binary expansion.
pub fn construct_geometric(g: &RingElem, n: usize, ring: &Ring) -> Result<BhCandidate> {
    if !(2..=32).contains(&n) {
        return Err(Error::Precondition(format!("n must be in 2..=32, got {n}")));
    }
    if !ring.contains(g) {
        return Err(Error::RingMismatch(format!("{g} is not an element of {ring}")));
    }
    if !ring.is_regular(g) {
        return Err(Error::Precondition(format!("generator {g} is not regular")));
    }
    let top: u64 = (1 << (n - 1)) - 1;
    let mut power = ring.one();
    for k in 1..=top {
        power = ring.mul(&power, g);
        let d = ring.sub(&power, &ring.one());
        if !ring.is_regular(&d) {
            return Err(Error::Precondition(format!("g^{k} - 1 = {d} is not regular (k = {k})")));
        }
    }
    let mut elements = vec![ring.one()];
    elements.extend((0..n - 1).map(|j| ring.pow(g, 1 << j)));
    BhCandidate::new(ring, elements)
}

/// The first `n` primes as rationals.
pub fn construct_primes(n: usize) -> Result<BhCandidate> {
    let q = Ring::rationals();
    let primes: Vec<RingElem> = (2..).filter(|&k| is_prime(k)).take(n).map(|p| q.from_int(p as i64)).collect();
    BhCandidate::new(&q, primes)
}

/// Lexicographic search over `n`-subsets of a finite ring for the first set
/// passing [`verify_properties`], examining at most `budget` candidates.
///
/// Subsets containing a non-regular element cannot pass, so only subsets of
/// regular elements are enumerated (and counted against the budget).
pub fn search_bh(ring: &Ring, n: usize, budget: u64) -> Result<Option<BhCandidate>> {
    if !ring.is_finite() {
        return Err(Error::Unsupported(format!("search needs a finite ring, got {ring}; use construct_primes")));
    }
    if n < 3 {
        return Err(Error::Precondition(format!("search needs n >= 3, got {n}")));
    }
    let regular: Vec<RingElem> = ring.elements()?.into_iter().filter(|e| ring.is_regular(e)).collect();
    for subset in regular.into_iter().combinations(n).take(budget as usize) {
        let cand = BhCandidate::new(ring, subset)?;
        if verify_properties(&cand)?.passes() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}
