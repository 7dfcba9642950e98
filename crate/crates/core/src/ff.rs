//! Arithmetic in small finite fields GF(p^k).
//!
//! Elements are polynomial residues modulo a fixed monic irreducible
//! polynomial, stored as fixed-width coefficient vectors so they can be used
//! directly as hash keys.  A [`FieldSpec`] owns full addition, multiplication,
//! negation, inversion, and Frobenius tables; all public operations are O(1)
//! lookups after construction.

use crate::error::Error;
use crate::Result;

/// Default upper bound on the field order.
pub const DEFAULT_ORDER_CAP: u64 = 121;

/// Largest supported extension degree; coefficient storage is sized by this.
pub const MAX_EXTENSION_DEGREE: usize = 8;

/// Element of GF(p^k): coefficients of a residue polynomial, constant term
/// first.  Slots at index >= k stay zero so derived equality and hashing
/// coincide with field equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    k: u8,
    coeffs: [u8; MAX_EXTENSION_DEGREE],
}

impl FieldElem {
    fn from_slice(k: usize, c: &[u64]) -> Self {
        let mut coeffs = [0u8; MAX_EXTENSION_DEGREE];
        for (i, &v) in c.iter().take(k).enumerate() {
            coeffs[i] = v as u8;
        }
        FieldElem { k: k as u8, coeffs }
    }

    /// Coefficient slice of length k, constant term first.
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs[..self.k as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

/// A concrete field GF(p^k) with precomputed operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    q: u64,
    /// Monic modulus polynomial, constant term first, length k+1.
    modulus: Vec<u64>,
    elems: Vec<FieldElem>,
    add_tab: Vec<FieldElem>,
    mul_tab: Vec<FieldElem>,
    neg_tab: Vec<FieldElem>,
    inv_tab: Vec<FieldElem>,
    frob_tab: Vec<FieldElem>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ----- polynomial helpers over GF(p), little-endian coefficient vectors -----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let f = r[dr] * lead_inv % p;
        for j in 0..=db {
            let idx = dr - db + j;
            r[idx] = (r[idx] + p - f * b[j] % p) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Decode rank v into the coefficient vector of the degree-<deg polynomial
/// with that index; constant term is the least significant digit.
fn poly_of_rank(mut v: u64, deg: usize, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; deg];
    for slot in c.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    c
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut div = poly_of_rank(v, d, p);
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Build GF(p^k) with the default order cap.
    ///
    /// The modulus is the first monic irreducible polynomial of degree k in
    /// rank order (coefficient vectors read as base-p integers, constant term
    /// least significant).
    pub fn new(p: u64, k: usize) -> Result<FieldSpec> {
        FieldSpec::with_cap(p, k, DEFAULT_ORDER_CAP)
    }

    /// Build GF(p^k) with an explicit order cap.
    pub fn with_cap(p: u64, k: usize, cap: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(Error::BadExtensionDegree(k));
        }
        if p > 251 {
            // Coefficients are stored as single bytes.
            return Err(Error::FieldCapExceeded { q: p, cap: 251 });
        }
        let q = p
            .checked_pow(k as u32)
            .ok_or(Error::FieldCapExceeded { q: u64::MAX, cap })?;
        if q > cap {
            return Err(Error::FieldCapExceeded { q, cap });
        }

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for v in 0..q {
                let mut cand = poly_of_rank(v, k, p);
                cand.push(1);
                if is_irreducible(&cand, p) {
                    found = Some(cand);
                    break;
                }
            }
            // Monic irreducibles of every degree exist over GF(p).
            found.expect("irreducible modulus exists")
        };

        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            elems: Vec::new(),
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
            neg_tab: Vec::new(),
            inv_tab: Vec::new(),
            frob_tab: Vec::new(),
        };

        spec.elems = (0..q)
            .map(|v| FieldElem::from_slice(k, &poly_of_rank(v, k, p)))
            .collect();

        let n = q as usize;
        spec.add_tab = Vec::with_capacity(n * n);
        spec.mul_tab = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                spec.add_tab.push(spec.add_raw(spec.elems[a], spec.elems[b]));
                spec.mul_tab.push(spec.mul_raw(spec.elems[a], spec.elems[b]));
            }
        }
        spec.neg_tab = (0..n).map(|a| spec.neg_raw(spec.elems[a])).collect();
        spec.inv_tab = (0..n)
            .map(|a| {
                if a == 0 {
                    spec.elems[0]
                } else {
                    spec.pow_raw(spec.elems[a], q - 2)
                }
            })
            .collect();
        spec.frob_tab = (0..n).map(|a| spec.pow_raw(spec.elems[a], p)).collect();
        Ok(spec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Field order q = p^k.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus polynomial, constant term first, length k+1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// All q elements in rank order: 0, 1, ..., p-1, x, x+1, ...
    pub fn elements(&self) -> &[FieldElem] {
        &self.elems
    }

    /// Index of an element in [`FieldSpec::elements`] order.
    pub fn rank(&self, a: FieldElem) -> u64 {
        let mut v = 0u64;
        for i in (0..self.k).rev() {
            v = v * self.p + a.coeffs[i] as u64;
        }
        v
    }

    /// Element with the given rank.
    pub fn from_rank(&self, v: u64) -> FieldElem {
        self.elems[(v % self.q) as usize]
    }

    /// Element from arbitrary integer coefficients (reduced mod p).
    pub fn from_coeffs(&self, c: &[u64]) -> FieldElem {
        let reduced: Vec<u64> = (0..self.k)
            .map(|i| c.get(i).copied().unwrap_or(0) % self.p)
            .collect();
        FieldElem::from_slice(self.k, &reduced)
    }

    /// Embed an integer scalar.
    pub fn scalar(&self, v: u64) -> FieldElem {
        self.from_coeffs(&[v])
    }

    pub fn zero(&self) -> FieldElem {
        self.elems[0]
    }

    pub fn one(&self) -> FieldElem {
        self.elems[1]
    }

    // ----- direct polynomial arithmetic (table construction and oracles) -----

    fn add_raw(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut c = [0u64; MAX_EXTENSION_DEGREE];
        for i in 0..self.k {
            c[i] = (a.coeffs[i] as u64 + b.coeffs[i] as u64) % self.p;
        }
        FieldElem::from_slice(self.k, &c)
    }

    fn neg_raw(&self, a: FieldElem) -> FieldElem {
        let mut c = [0u64; MAX_EXTENSION_DEGREE];
        for i in 0..self.k {
            c[i] = (self.p - a.coeffs[i] as u64) % self.p;
        }
        FieldElem::from_slice(self.k, &c)
    }

    fn mul_raw(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
        for i in 0..self.k {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + a.coeffs[i] as u64 * b.coeffs[j] as u64) % self.p;
            }
        }
        // Reduce modulo the monic modulus, folding high powers down.
        for i in (self.k..2 * self.k - 1).rev() {
            let f = prod[i];
            if f == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let m = self.modulus[j];
                prod[i - self.k + j] = (prod[i - self.k + j] + (self.p - m % self.p) * f) % self.p;
            }
        }
        FieldElem::from_slice(self.k, &prod)
    }

    fn pow_raw(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.elems[1];
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    // ----- table-backed public operations -----

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add_tab[(self.rank(a) * self.q + self.rank(b)) as usize]
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul_tab[(self.rank(a) * self.q + self.rank(b)) as usize]
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.neg_tab[self.rank(a) as usize]
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse(self.q));
        }
        Ok(self.inv_tab[self.rank(a) as usize])
    }

    /// Frobenius a -> a^p.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.frob_tab[self.rank(a) as usize]
    }

    /// Frobenius iterated t times: a -> a^(p^t).
    pub fn frobenius_iter(&self, a: FieldElem, t: usize) -> FieldElem {
        let mut x = a;
        for _ in 0..t {
            x = self.frobenius(x);
        }
        x
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Split q into (p, k) with p prime and q = p^k, rejecting 1 and non-powers.
pub fn factor_prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::BadFieldOrder(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0usize;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            if rest != 1 {
                return Err(Error::BadFieldOrder(q));
            }
            return Ok((p, k));
        }
        p += 1;
    }
    Ok((q, 1))
}
