//! Exact arithmetic in F_q and F_{q^n}, q = p^e.
//!
//! F_{q^n} is built as a single extension F_p[x]/(f) of degree e·n. Elements
//! are stored as packed base-p digit vectors (`Fe`), constant term in the
//! least significant position. F_q is the subfield fixed by x ↦ x^q; its
//! elements used as matrix entries get a compact encoding of their own, see
//! [`ScalarField`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree over F_p (p = 2 at 2^24 elements).
pub const MAX_DEGREE: usize = 24;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;

/// An element of F_{q^n}, packed as Σ c_i p^i over the power basis of the modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.0)
    }
}

pub type FieldRef = Arc<Field>;

/// Arithmetic in F_p[x]/(modulus) on packed digit vectors. Works whether or
/// not the modulus is irreducible, which the irreducibility test relies on.
#[derive(Clone, Debug)]
struct PolyRing {
    p: u32,
    degree: usize,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    modulus_bits: u64,
}

impl PolyRing {
    fn new(p: u32, modulus: Vec<u32>) -> Self {
        let degree = modulus.len() - 1;
        let mut pow_p = Vec::with_capacity(degree + 1);
        let mut acc = 1u64;
        for _ in 0..=degree {
            pow_p.push(acc as u32);
            acc = acc.saturating_mul(p as u64).min(u32::MAX as u64);
        }
        let modulus_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |b, (i, &c)| b | ((c as u64) << i))
        } else {
            0
        };
        PolyRing {
            p,
            degree,
            modulus,
            pow_p,
            modulus_bits,
        }
    }

    fn unpack(&self, a: Fe, out: &mut [u32; MAX_DEGREE]) {
        let mut v = a.0;
        if self.p == 2 {
            for (i, slot) in out.iter_mut().enumerate().take(self.degree) {
                *slot = (v >> i) & 1;
            }
        } else {
            for slot in out.iter_mut().take(self.degree) {
                *slot = v % self.p;
                v /= self.p;
            }
        }
    }

    fn pack(&self, digits: &[u32]) -> Fe {
        if self.p == 2 {
            Fe(digits
                .iter()
                .enumerate()
                .fold(0u32, |b, (i, &c)| b | ((c & 1) << i)))
        } else {
            Fe(digits
                .iter()
                .take(self.degree)
                .enumerate()
                .fold(0u32, |b, (i, &c)| b + c * self.pow_p[i]))
        }
    }

    fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y) = ([0u32; MAX_DEGREE], [0u32; MAX_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        for i in 0..self.degree {
            x[i] = ((x[i] as u64 + y[i] as u64) % self.p as u64) as u32;
        }
        self.pack(&x[..self.degree])
    }

    fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let mut x = [0u32; MAX_DEGREE];
        self.unpack(a, &mut x);
        for d in x.iter_mut().take(self.degree) {
            if *d != 0 {
                *d = self.p - *d;
            }
        }
        self.pack(&x[..self.degree])
    }

    /// Adds `c · b` to the digit accumulator `acc`.
    fn axpy_digits(&self, acc: &mut [u32; MAX_DEGREE], c: u32, b: &[u32]) {
        let p = self.p as u64;
        for i in 0..self.degree {
            acc[i] = ((acc[i] as u64 + c as u64 * b[i] as u64) % p) as u32;
        }
    }

    fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let d = self.degree;
        if self.p == 2 {
            let (mut x, y) = (a.0 as u64, b.0 as u64);
            let mut prod = 0u64;
            let mut shift = 0;
            while x != 0 {
                if x & 1 == 1 {
                    prod ^= y << shift;
                }
                x >>= 1;
                shift += 1;
            }
            for i in (d..2 * d).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= self.modulus_bits << (i - d);
                }
            }
            return Fe(prod as u32);
        }
        if a.0 < self.p && b.0 < self.p {
            // constants multiply without reduction
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let (mut x, mut y) = ([0u32; MAX_DEGREE], [0u32; MAX_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for i in (d..2 * d).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            let negc = p - c;
            for j in 0..d {
                prod[i - d + j] = (prod[i - d + j] + negc * self.modulus[j] as u64) % p;
            }
            prod[i] = 0;
        }
        let digits: Vec<u32> = prod[..d].iter().map(|&c| c as u32).collect();
        self.pack(&digits)
    }

    fn pow(&self, a: Fe, mut exp: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn one(&self) -> Fe {
        // for degree 1 with modulus x - c the constant 1 is still 1
        Fe(1)
    }

    /// The class of x, reduced.
    fn x(&self) -> Fe {
        if self.degree == 1 {
            let c = self.modulus[0];
            Fe(if c == 0 { 0 } else { self.p - c })
        } else {
            Fe(if self.p == 2 { 2 } else { self.p })
        }
    }
}

// Small dense-polynomial helpers over F_p, coefficients constant first.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while a.len() > db {
        let da = a.len() - 1;
        let c = a[da] as u64 * lead_inv % p64;
        for j in 0..=db {
            let idx = da - db + j;
            a[idx] = ((a[idx] as u64 + (p64 - c) * b[j] as u64) % p64) as u32;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(x, &y, p);
        x = y;
        y = r;
    }
    x
}

// (s, t) with s·a + t·b = gcd; returns (gcd, s).
fn poly_ext_gcd_inv(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let p64 = p as u64;
    let sub_mul = |x: &[u32], q: &[u32], y: &[u32]| -> Vec<u32> {
        // x - q*y
        let mut out = x.to_vec();
        let len = (q.len() + y.len()).max(x.len());
        out.resize(len, 0);
        for (i, &qi) in q.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                let t = qi as u64 * yj as u64 % p64;
                out[i + j] = ((out[i + j] as u64 + p64 - t) % p64) as u32;
            }
        }
        trim(&mut out);
        out
    };
    let divrem = |a: &[u32], b: &[u32]| -> (Vec<u32>, Vec<u32>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod_p(b[db], p) as u64;
        let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] as u64 * lead_inv % p64;
            q[dr - db] = c as u32;
            for j in 0..=db {
                let idx = dr - db + j;
                r[idx] = ((r[idx] as u64 + (p64 - c) * b[j] as u64) % p64) as u32;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    };
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut t0: Vec<u32> = vec![];
    let mut t1: Vec<u32> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let t2 = sub_mul(&t0, &q, &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_p(r0[0], p) as u64;
    Some(t0.iter().map(|&t| (t as u64 * c % p64) as u32).collect())
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn is_irreducible(ring: &PolyRing) -> bool {
    let d = ring.degree;
    if d == 1 {
        return true;
    }
    let p = ring.p as u64;
    let x = ring.x();
    // x^{p^i} mod f for i = 1..d
    let mut powers = Vec::with_capacity(d + 1);
    let mut cur = x;
    powers.push(cur);
    for _ in 0..d {
        cur = ring.pow(cur, p);
        powers.push(cur);
    }
    if powers[d] != x {
        return false;
    }
    let mut digits = [0u32; MAX_DEGREE];
    for r in prime_factors(d as u64) {
        let i = d / r as usize;
        let diff = ring.add(powers[i], ring.neg(x));
        ring.unpack(diff, &mut digits);
        let g = poly_gcd(&ring.modulus, &digits[..d], ring.p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Arithmetic in F_q for matrix entries.
///
/// Scalars are encoded as packed base-p digit vectors over (1, ζ, …, ζ^{e−1})
/// where ζ is the primitive element of F_q induced by the field generator.
/// For e = 1 this is just the residue mod p.
#[derive(Clone, Debug)]
pub struct ScalarField {
    p: u32,
    e: u32,
    q: u32,
    pow_p: Vec<u32>,
    tables: Option<ScalarTables>,
}

#[derive(Clone, Debug)]
struct ScalarTables {
    exp: Vec<u32>,
    log: Vec<u32>,
    embed: Vec<Fe>,
    project: HashMap<Fe, u32>,
}

impl ScalarField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0;
        let (mut x, mut y) = (a, b);
        for i in 0..self.e as usize {
            out += ((x % self.p + y % self.p) % self.p) * self.pow_p[i];
            x /= self.p;
            y /= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return a;
        }
        let mut out = 0;
        let mut x = a;
        for i in 0..self.e as usize {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * self.pow_p[i];
            x /= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            None => ((a as u64 * b as u64) % self.p as u64) as u32,
            Some(t) => {
                let k = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % (self.q as u64 - 1);
                t.exp[k as usize]
            }
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            None => inv_mod_p(a, self.p),
            Some(t) => {
                let k = (self.q - 1 - t.log[a as usize]) % (self.q - 1);
                t.exp[k as usize]
            }
        })
    }

    /// a^{p^rho}, the automorphisms of F_q.
    pub fn frobenius(&self, a: u32, rho: u32) -> u32 {
        match &self.tables {
            None => a,
            Some(t) => {
                if a == 0 {
                    return 0;
                }
                let mut k = t.log[a as usize] as u64;
                for _ in 0..(rho % self.e) {
                    k = k * self.p as u64 % (self.q as u64 - 1);
                }
                t.exp[k as usize]
            }
        }
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// All q scalars in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn embed(&self, a: u32) -> Fe {
        match &self.tables {
            None => Fe(a),
            Some(t) => t.embed[a as usize],
        }
    }

    pub fn project(&self, a: Fe) -> Option<u32> {
        match &self.tables {
            None => (a.0 < self.p).then_some(a.0),
            Some(t) => t.project.get(&a).copied(),
        }
    }
}

/// The field F_{q^n} with a verified modulus and a fixed primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    n: u32,
    q: u64,
    order: u64,
    ring: PolyRing,
    generator: Fe,
    // frob[j][t] = digits of (x^t)^{q^j}
    frob: Vec<Vec<[u32; MAX_DEGREE]>>,
    frob_packed: Vec<Vec<Fe>>,
    scalars: ScalarField,
}

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub generator: Vec<u32>,
}

impl Field {
    /// Builds F_{q^n}, q = p^e. Without a modulus, the lexicographically
    /// smallest monic irreducible of degree e·n is used (constant term
    /// compared first).
    pub fn new(p: u64, e: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 || n == 0 {
            return Err(Error::ParamViolation("e and n must be positive".into()));
        }
        let degree = (e as usize) * (n as usize);
        let order = (p as u128).checked_pow(degree as u32);
        if degree > MAX_DEGREE || order.is_none_or(|o| o > MAX_ORDER as u128) {
            return Err(Error::FieldTooLarge { p, degree });
        }
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree + 1 || m[degree] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus { expected: degree });
                }
                if !is_irreducible(&PolyRing::new(p, m.clone())) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => smallest_irreducible(p, degree),
        };
        let ring = PolyRing::new(p, modulus);
        let q = (p as u64).pow(e);
        let order = q.pow(n);
        let generator = smallest_primitive(&ring, order);

        let mut field = Field {
            p,
            e,
            n,
            q,
            order,
            ring,
            generator,
            frob: Vec::new(),
            frob_packed: Vec::new(),
            scalars: ScalarField {
                p,
                e,
                q: q as u32,
                pow_p: Vec::new(),
                tables: None,
            },
        };
        field.build_frobenius();
        field.build_scalars();
        Ok(Arc::new(field))
    }

    fn build_frobenius(&mut self) {
        let d = self.degree();
        let mut basis = Vec::with_capacity(d);
        let mut cur = Fe(1);
        let x = self.ring.x();
        for _ in 0..d {
            basis.push(cur);
            cur = self.ring.mul(cur, x);
        }
        let mut qj = 1u64;
        for _ in 0..self.n {
            let images: Vec<Fe> = basis.iter().map(|&b| self.ring.pow(b, qj)).collect();
            let digits = images
                .iter()
                .map(|&im| {
                    let mut buf = [0u32; MAX_DEGREE];
                    self.ring.unpack(im, &mut buf);
                    buf
                })
                .collect();
            self.frob_packed.push(images);
            self.frob.push(digits);
            qj *= self.q;
        }
    }

    fn build_scalars(&mut self) {
        let p = self.p;
        let e = self.e;
        let q = self.q as u32;
        let mut pow_p = vec![1u32; e as usize + 1];
        for i in 1..=e as usize {
            pow_p[i] = pow_p[i - 1] * p;
        }
        self.scalars.pow_p = pow_p.clone();
        if e == 1 {
            return;
        }
        let zeta = self.pow(self.generator, (self.order - 1) / (self.q - 1));
        let mut zeta_pows = vec![Fe(1)];
        for i in 1..e as usize {
            zeta_pows.push(self.mul(zeta_pows[i - 1], zeta));
        }
        let mut embed = Vec::with_capacity(q as usize);
        let mut project = HashMap::with_capacity(q as usize);
        for idx in 0..q {
            let mut acc = Fe::ZERO;
            let mut v = idx;
            for zp in zeta_pows.iter() {
                let d = v % p;
                v /= p;
                acc = self.add(acc, self.scale_prime(*zp, d));
            }
            embed.push(acc);
            project.insert(acc, idx);
        }
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = Fe(1);
        for k in 0..q - 1 {
            let idx = project[&cur];
            exp.push(idx);
            log[idx as usize] = k;
            cur = self.mul(cur, zeta);
        }
        self.scalars.tables = Some(ScalarTables {
            exp,
            log,
            embed,
            project,
        });
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// q = p^e.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// q^n, the number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Extension degree e·n over F_p.
    pub fn degree(&self) -> usize {
        self.ring.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.ring.modulus
    }

    /// The fixed primitive element ξ.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn scalars(&self) -> &ScalarField {
        &self.scalars
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            p: self.p,
            e: self.e,
            n: self.n,
            modulus: self.ring.modulus.clone(),
            generator: self.digits(self.generator),
        }
    }

    /// Coordinates over F_p in the power basis of the modulus, constant first.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut buf = [0u32; MAX_DEGREE];
        self.ring.unpack(a, &mut buf);
        buf[..self.degree()].to_vec()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fe> {
        if digits.len() > self.degree() || digits.iter().any(|&d| d >= self.p) {
            return Err(Error::Config(format!(
                "element digits must be {} values below {}",
                self.degree(),
                self.p
            )));
        }
        Ok(self.ring.pack(digits))
    }

    pub fn element(&self, index: u32) -> Option<Fe> {
        ((index as u64) < self.order).then_some(Fe(index))
    }

    /// All q^n elements.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order as u32).map(Fe)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.order as u32))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.order as u32))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.ring.add(a, b)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        self.ring.neg(a)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.ring.add(a, self.ring.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.ring.mul(a, b)
    }

    /// Multiplies by an element of the prime field.
    pub fn scale_prime(&self, a: Fe, c: u32) -> Fe {
        let c = c % self.p;
        if c == 0 {
            return Fe::ZERO;
        }
        if c == 1 {
            return a;
        }
        let mut x = [0u32; MAX_DEGREE];
        self.ring.unpack(a, &mut x);
        let p = self.p as u64;
        for d in x.iter_mut().take(self.degree()) {
            *d = (*d as u64 * c as u64 % p) as u32;
        }
        self.ring.pack(&x[..self.degree()])
    }

    /// Multiplies by an F_q scalar given in the scalar encoding.
    pub fn scale(&self, a: Fe, c: u32) -> Fe {
        if self.e == 1 {
            self.scale_prime(a, c)
        } else {
            self.mul(a, self.scalars.embed(c))
        }
    }

    pub fn pow(&self, a: Fe, exp: u64) -> Fe {
        self.ring.pow(a, exp)
    }

    /// Multiplicative inverse by extended Euclid; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let d = self.degree();
        let digits = self.digits(a);
        let t = poly_ext_gcd_inv(&digits, &self.ring.modulus, self.p)?;
        let mut buf = vec![0u32; d];
        for (i, c) in t.into_iter().enumerate().take(d) {
            buf[i] = c;
        }
        Some(self.ring.pack(&buf))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// a^{q^j}; j is reduced mod n and may be negative.
    pub fn frobenius(&self, a: Fe, j: i64) -> Fe {
        let j = j.rem_euclid(self.n as i64) as usize;
        if j == 0 || a.is_zero() {
            return a;
        }
        if self.p == 2 {
            let mut acc = 0u32;
            let mut v = a.0;
            let mut t = 0;
            while v != 0 {
                if v & 1 == 1 {
                    acc ^= self.frob_packed[j][t].0;
                }
                v >>= 1;
                t += 1;
            }
            return Fe(acc);
        }
        let mut x = [0u32; MAX_DEGREE];
        self.ring.unpack(a, &mut x);
        let mut acc = [0u32; MAX_DEGREE];
        for (t, &c) in x.iter().enumerate().take(self.degree()) {
            if c != 0 {
                self.ring.axpy_digits(&mut acc, c, &self.frob[j][t]);
            }
        }
        self.ring.pack(&acc[..self.degree()])
    }

    /// ∏_{i<n} a^{q^{si}}, which lies in F_q when gcd(s, n) = 1.
    pub fn relative_norm(&self, a: Fe, s: i64) -> Result<Fe> {
        if gcd(s.unsigned_abs(), self.n as u64) != 1 {
            return Err(Error::GcdViolation { s, n: self.n });
        }
        Ok((0..self.n as i64).fold(Fe(1), |acc, i| {
            self.mul(acc, self.frobenius(a, s * i))
        }))
    }

    /// Tr_{q^n/q}(a) as an element of F_{q^n}.
    pub fn trace(&self, a: Fe) -> Fe {
        (0..self.n as i64).fold(Fe::ZERO, |acc, i| self.add(acc, self.frobenius(a, i)))
    }

    pub fn trace_scalar(&self, a: Fe) -> u32 {
        self.scalars
            .project(self.trace(a))
            .expect("trace lies in F_q")
    }

    pub fn is_in_subfield(&self, a: Fe, l: u32) -> bool {
        self.frobenius(a, l as i64) == a
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, (self.order - 1) / 2) == Fe(1)
    }

    /// A primitive element of F_{q^l}, l | n.
    pub fn subfield_generator(&self, l: u32) -> Result<Fe> {
        if l == 0 || !self.n.is_multiple_of(l) {
            return Err(Error::NotADivisor { l, n: self.n });
        }
        let sub_order = self.q.pow(l);
        Ok(self.pow(self.generator, (self.order - 1) / (sub_order - 1)))
    }

    /// The q^l elements fixed by x ↦ x^{q^l}, sorted by index.
    pub fn subfield_elements(&self, l: u32) -> Result<Vec<Fe>> {
        let zeta = self.subfield_generator(l)?;
        let sub_order = self.q.pow(l);
        let mut out = Vec::with_capacity(sub_order as usize);
        out.push(Fe::ZERO);
        let mut cur = Fe(1);
        for _ in 0..sub_order - 1 {
            out.push(cur);
            cur = self.mul(cur, zeta);
        }
        out.sort();
        Ok(out)
    }

    /// The F_q-basis (1, ξ, …, ξ^{n−1}).
    pub fn power_basis(self: &FieldRef) -> Basis {
        let mut elems = Vec::with_capacity(self.n as usize);
        let mut cur = Fe(1);
        for _ in 0..self.n {
            elems.push(cur);
            cur = self.mul(cur, self.generator);
        }
        Basis::new(self, elems).expect("power basis of a primitive element is independent")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Fe) -> u64 {
        let mut ord = self.order - 1;
        for r in prime_factors(self.order - 1) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == Fe(1) {
                ord /= r;
            }
        }
        ord
    }

    pub(crate) fn same_as(&self, other: &Field) -> bool {
        self.p == other.p
            && self.e == other.e
            && self.n == other.n
            && self.ring.modulus == other.ring.modulus
    }
}

/// Digit vector of `idx` with c_0 the most significant digit, i.e. the
/// enumeration order that compares the constant term first.
fn lex_digits(idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    let mut v = idx;
    for slot in out.iter_mut().rev() {
        *slot = (v % p as u64) as u32;
        v /= p as u64;
    }
    out
}

fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let count = (p as u64).pow(degree as u32);
    for idx in 0..count {
        let mut m = lex_digits(idx, p, degree);
        m.push(1);
        if is_irreducible(&PolyRing::new(p, m.clone())) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn smallest_primitive(ring: &PolyRing, order: u64) -> Fe {
    let n_minus = order - 1;
    let primes = prime_factors(n_minus);
    for idx in 0..order {
        let a = ring.pack(&lex_digits(idx, ring.p, ring.degree));
        if a.is_zero() {
            continue;
        }
        if primes.iter().all(|&r| ring.pow(a, n_minus / r) != Fe(1)) {
            return a;
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

/// An F_q-basis of F_{q^n} with its trace-dual basis for coordinate extraction.
#[derive(Clone, Debug)]
pub struct Basis {
    field: FieldRef,
    elements: Vec<Fe>,
    dual: Vec<Fe>,
}

impl Basis {
    pub fn new(field: &FieldRef, elements: Vec<Fe>) -> Result<Basis> {
        let n = field.n() as usize;
        if elements.len() != n {
            return Err(Error::DependentBasis);
        }
        let sf = field.scalars();
        let mut gram = crate::linalg::Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = field.trace_scalar(field.mul(elements[i], elements[j]));
            }
        }
        let inv = gram.inverse(sf).ok_or(Error::DependentBasis)?;
        let dual = (0..n)
            .map(|j| {
                (0..n).fold(Fe::ZERO, |acc, k| {
                    field.add(acc, field.scale(elements[k], inv[(j, k)]))
                })
            })
            .collect();
        Ok(Basis {
            field: field.clone(),
            elements,
            dual,
        })
    }

    pub fn elements(&self) -> &[Fe] {
        &self.elements
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Coordinates of `a` over F_q.
    pub fn coords(&self, a: Fe) -> Vec<u32> {
        self.dual
            .iter()
            .map(|&d| self.field.trace_scalar(self.field.mul(a, d)))
            .collect()
    }

    pub fn combine(&self, coords: &[u32]) -> Fe {
        self.elements
            .iter()
            .zip(coords)
            .fold(Fe::ZERO, |acc, (&b, &c)| self.field.add(acc, self.field.scale(b, c)))
    }
}

/// Coordinates of `a` in `basis`; see [`Basis::coords`].
pub fn vec_repr(a: Fe, basis: &Basis) -> Vec<u32> {
    basis.coords(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_f2() {
        let f = Field::new(2, 1, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.generator(), Fe::ONE);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn f16_standard_modulus() {
        let f = Field::new(2, 1, 4, Some(vec![1, 1, 0, 0, 1])).unwrap();
        let xi = f.generator();
        assert_eq!(f.multiplicative_order(xi), 15);
        assert_eq!(f.pow(xi, 4), f.add(xi, Fe::ONE));
        assert_eq!(f.frobenius(xi, 1), f.mul(xi, xi));
    }

    #[test]
    fn f81_default() {
        let f = Field::new(3, 1, 4, None).unwrap();
        let xi = f.generator();
        // order 80 by exponentiation: xi^80 = 1 and xi^(80/r) != 1
        assert_eq!(f.pow(xi, 80), Fe::ONE);
        for r in [2u64, 5] {
            assert_ne!(f.pow(xi, 80 / r), Fe::ONE);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Field::new(4, 1, 2, None).unwrap_err(), Error::NonPrime(4));
        assert_eq!(
            Field::new(2, 1, 2, Some(vec![1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus
        );
        assert!(matches!(
            Field::new(2, 1, 25, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn default_modulus_is_lexicographically_smallest() {
        // constant term compared first: x^2 + 1 is reducible mod 2? (x+1)^2, so
        // the smallest irreducible quadratic over F_2 is x^2 + x + 1.
        let f = Field::new(2, 1, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // over F_3, x^2 + 1 is irreducible and has constant 1 then linear 0
        let f = Field::new(3, 1, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn inverse_and_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, e, n) in [(2u64, 1u32, 6u32), (3, 1, 4), (2, 2, 3), (5, 1, 3), (3, 2, 2)] {
            let f = Field::new(p, e, n, None).unwrap();
            for _ in 0..2000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                assert_eq!(f.frobenius(a, n as i64), a);
            }
        }
    }

    #[test]
    fn frobenius_is_power_map() {
        let f = Field::new(3, 2, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 1), f.pow(a, 9));
            assert_eq!(f.frobenius(a, -1), f.pow(a, 9));
        }
    }

    #[test]
    fn relative_norm_cases() {
        let f = Field::new(2, 1, 5, None).unwrap();
        for a in f.elements().skip(1) {
            for s in [1, 2, 3, 4] {
                assert_eq!(f.relative_norm(a, s).unwrap(), Fe::ONE);
            }
        }
        assert!(matches!(
            f.relative_norm(Fe::ONE, 5),
            Err(Error::GcdViolation { .. })
        ));
        let f = Field::new(3, 1, 4, None).unwrap();
        let two = Fe(2);
        let nonsquare = f.elements().find(|&a| !f.is_square(a)).unwrap();
        assert_eq!(f.relative_norm(nonsquare, 1).unwrap(), two);
        // a in F_q gives a^n
        assert_eq!(f.relative_norm(two, 1).unwrap(), f.pow(two, 4));
    }

    #[test]
    fn subfields() {
        let f = Field::new(2, 1, 6, None).unwrap();
        assert_eq!(f.subfield_elements(1).unwrap(), vec![Fe(0), Fe(1)]);
        assert_eq!(f.subfield_elements(6).unwrap().len(), 64);
        let f8 = f.subfield_elements(3).unwrap();
        assert_eq!(f8.len(), 8);
        for &a in &f8 {
            assert_eq!(f.frobenius(a, 3), a);
            for &b in &f8 {
                assert!(f8.binary_search(&f.add(a, b)).is_ok());
                assert!(f8.binary_search(&f.mul(a, b)).is_ok());
            }
        }
        assert_eq!(
            f.subfield_elements(4).unwrap_err(),
            Error::NotADivisor { l: 4, n: 6 }
        );
    }

    #[test]
    fn vec_repr_power_basis() {
        let f = Field::new(2, 1, 4, Some(vec![1, 1, 0, 0, 1])).unwrap();
        let basis = f.power_basis();
        let xi = f.generator();
        let a = f.add(f.mul(xi, xi), xi);
        assert_eq!(vec_repr(a, &basis), vec![0, 1, 1, 0]);
        assert_eq!(vec_repr(Fe::ZERO, &basis), vec![0; 4]);
        for (i, &b) in basis.elements().iter().enumerate() {
            let mut unit = vec![0; 4];
            unit[i] = 1;
            assert_eq!(vec_repr(b, &basis), unit);
        }
        assert_eq!(
            Basis::new(&f, vec![Fe(1), Fe(1), xi, a]).unwrap_err(),
            Error::DependentBasis
        );
    }

    #[test]
    fn scalar_field_extension_case() {
        let f = Field::new(2, 2, 2, None).unwrap();
        let sf = f.scalars();
        assert_eq!(sf.q(), 4);
        for a in sf.elements() {
            for b in sf.elements() {
                let prod = f.mul(sf.embed(a), sf.embed(b));
                assert_eq!(sf.embed(sf.mul(a, b)), prod);
                assert_eq!(sf.embed(sf.add(a, b)), f.add(sf.embed(a), sf.embed(b)));
            }
            assert_eq!(f.frobenius(sf.embed(a), 1), sf.embed(a));
        }
        let basis = f.power_basis();
        for a in f.elements() {
            assert_eq!(basis.combine(&basis.coords(a)), a);
        }
    }
}
