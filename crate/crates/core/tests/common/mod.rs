#![allow(dead_code)]

use affine_lines::multiaffine::MultiAffinePoly;
use affine_lines::ring::{Ring, RingElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf4() -> Ring {
    Ring::galois_field(2, 2, vec![1, 1]).unwrap()
}

pub fn gf8() -> Ring {
    Ring::galois_field(2, 3, vec![1, 1, 0]).unwrap()
}

pub fn gf9() -> Ring {
    Ring::galois_field(3, 2, vec![1, 0]).unwrap()
}

/// A spread of finite rings: fields, prime powers and composites.
pub fn finite_rings() -> Vec<Ring> {
    vec![
        Ring::zmod(4).unwrap(),
        Ring::zmod(6).unwrap(),
        Ring::zmod(9).unwrap(),
        Ring::prime_field(5).unwrap(),
        Ring::prime_field(7).unwrap(),
        gf4(),
        gf8(),
        gf9(),
    ]
}

pub fn all_rings() -> Vec<Ring> {
    let mut rings = finite_rings();
    rings.push(Ring::zmod(12).unwrap());
    rings.push(Ring::zmod(35).unwrap());
    rings.push(Ring::prime_field(101).unwrap());
    rings.push(Ring::galois_field(3, 4, vec![2, 0, 0, 1]).unwrap());
    rings.push(Ring::rationals());
    rings
}

pub fn random_elem(ring: &Ring, rng: &mut impl Rng) -> RingElem {
    match ring.order() {
        Some(q) => RingElem::Residue(rng.gen_range(0..q)),
        None => RingElem::rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
    }
}

/// Random polynomial; each coefficient is zero with probability one half.
pub fn random_poly(ring: &Ring, n: usize, rng: &mut impl Rng) -> MultiAffinePoly {
    let mut p = MultiAffinePoly::new(ring, n).unwrap();
    for mask in 0..1u32 << n {
        if rng.gen_bool(0.5) {
            p.set(mask, random_elem(ring, rng)).unwrap();
        }
    }
    p
}

pub fn random_affine(ring: &Ring, n: usize, rng: &mut impl Rng) -> MultiAffinePoly {
    let mut p = MultiAffinePoly::new(ring, n).unwrap();
    p.set(0, random_elem(ring, rng)).unwrap();
    for i in 0..n {
        p.set(1 << i, random_elem(ring, rng)).unwrap();
    }
    p
}

/// Random polynomial with at least one nonzero coefficient of degree >= 2.
pub fn random_nonaffine(ring: &Ring, n: usize, rng: &mut impl Rng) -> MultiAffinePoly {
    let mut p = random_poly(ring, n, rng);
    let higher: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() >= 2).collect();
    let mask = higher[rng.gen_range(0..higher.len())];
    let mut c = random_elem(ring, rng);
    while ring.is_zero(&c) {
        c = random_elem(ring, rng);
    }
    p.set(mask, c).unwrap();
    p
}
