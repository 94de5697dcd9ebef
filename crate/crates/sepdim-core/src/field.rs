//! Finite-field arithmetic for prime powers q = p^k.
//!
//! Elements are indices in `[0, q)` encoding coefficient vectors of
//! degree-<k polynomials over GF(p) in base p (constant term is the least
//! significant digit). Arithmetic is table-driven: the tables are built once
//! per [`FieldSpec`] by polynomial arithmetic modulo a monic irreducible
//! reduction polynomial.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Largest field order for which arithmetic tables are precomputed.
const MAX_TABLE_ORDER: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// GF(p^k) with precomputed O(1) arithmetic tables.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    reduction: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FieldSpec {
    /// GF(p^k) using the lexicographically smallest monic irreducible
    /// reduction polynomial of degree k.
    pub fn new(p: u32, k: u32) -> Result<FieldSpec, Error> {
        let reduction = find_irreducible(p, k)?;
        FieldSpec::with_reduction(p, k, reduction)
    }

    /// GF(q) for a prime power q.
    pub fn for_order(q: u32) -> Result<FieldSpec, Error> {
        let (p, k) = prime_power_decompose(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        FieldSpec::new(p as u32, k)
    }

    /// GF(p^k) with a caller-supplied monic irreducible reduction polynomial,
    /// given as coefficients c_0..c_k with c_k = 1. Irreducibility is checked.
    pub fn with_reduction(p: u32, k: u32, reduction: Vec<u32>) -> Result<FieldSpec, Error> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k < 1 {
            return Err(Error::Domain("field extension degree must be at least 1"));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_TABLE_ORDER);
        let q = q.ok_or(Error::Domain("field order too large for table construction"))? as u32;
        if reduction.len() != k as usize + 1
            || reduction[k as usize] != 1
            || reduction.iter().any(|&c| c >= p)
            || !is_irreducible(p, &reduction)
        {
            return Err(Error::Domain("reduction polynomial is not monic irreducible"));
        }

        let mut spec = FieldSpec {
            p,
            k,
            q,
            reduction,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        spec.build_tables();
        Ok(spec)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        for a in 0..q as u32 {
            let pa = self.decode(a);
            for b in 0..=a {
                let pb = self.decode(b);
                let sum = self.encode(&poly_add(self.p, &pa, &pb));
                let prod = self.encode(&poly_rem(
                    self.p,
                    &poly_mul(self.p, &pa, &pb),
                    &self.reduction,
                ));
                self.add[a as usize * q + b as usize] = sum;
                self.add[b as usize * q + a as usize] = sum;
                self.mul[a as usize * q + b as usize] = prod;
                self.mul[b as usize * q + a as usize] = prod;
                if prod == 1 {
                    self.inv[a as usize] = b;
                    self.inv[b as usize] = a;
                }
            }
            let pneg: Vec<u32> = pa.iter().map(|&c| (self.p - c) % self.p).collect();
            self.neg[a as usize] = self.encode(&pneg);
        }
    }

    fn decode(&self, mut idx: u32) -> Vec<u32> {
        let mut coeffs = vec![0u32; self.k as usize];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        coeffs
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Reduction polynomial coefficients c_0..c_k.
    pub fn reduction(&self) -> &[u32] {
        &self.reduction
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, Error> {
        if index >= self.q {
            return Err(Error::Domain("field element index out of range"));
        }
        Ok(FieldElement(index))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, Error> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldElement(self.inv[a.0 as usize]))
    }
}

/// Coefficients little-endian; leading zeros permitted in inputs.
fn poly_add(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p
        })
        .collect()
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of a modulo the monic polynomial m.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let md = poly_deg(m).expect("modulus must be nonzero");
    let mut rem = a.to_vec();
    while let Some(d) = poly_deg(&rem) {
        if d < md {
            break;
        }
        let lead = rem[d];
        for i in 0..=md {
            let sub = (lead * m[i]) % p;
            rem[d - md + i] = (rem[d - md + i] + p * p - sub) % p;
        }
    }
    rem.truncate(md);
    rem.resize(md, 0);
    rem
}

fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let k = match poly_deg(poly) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    // No monic divisor of degree 1..=k/2 may divide poly.
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut rest = idx;
            for c in g.iter_mut().take(d) {
                *c = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            g[d] = 1;
            if poly_deg(&poly_rem(p, poly, &g)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree k
/// over GF(p), as coefficients c_0..c_k ("smallest" compares the base-p
/// encoding of c_0..c_{k-1}). For k = 1 this is x.
pub fn find_irreducible(p: u32, k: u32) -> Result<Vec<u32>, Error> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k < 1 {
        return Err(Error::Domain("field extension degree must be at least 1"));
    }
    let count = (p as u64)
        .checked_pow(k)
        .ok_or(Error::Domain("field order too large for table construction"))?;
    for idx in 0..count {
        let mut poly = vec![0u32; k as usize + 1];
        let mut rest = idx;
        for c in poly.iter_mut().take(k as usize) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        poly[k as usize] = 1;
        if is_irreducible(p, &poly) {
            return Ok(poly);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes m as p^k for prime p, if possible.
pub fn prime_power_decompose(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut rest = m;
            let mut k = 0u32;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((m, 1))
}

pub fn is_prime_power(m: u64) -> bool {
    prime_power_decompose(m).is_some()
}
