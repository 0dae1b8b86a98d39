//! Finite fields `F_{p^e}` with table-driven arithmetic.
//!
//! An element is stored as the packed integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! of its coefficients in the basis `1, t, ..., t^{e-1}`, where `t` is a root of
//! the modulus polynomial. The packed integer is also the enumeration order used
//! for every deterministic search (roots of unity, embeddings, default moduli).
//!
//! The field object owns the arithmetic; elements are plain `Copy` handles, so
//! [`Field::mul`], [`Field::add`] and friends are total functions on pairs.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field order for which arithmetic tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

/// A field element, as its packed coefficient index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
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

struct FieldInner {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    order: u32,
    // exp has length 2 * (order - 1) so that log sums never need reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// The finite field `F_p[t] / (modulus)`.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}{:?}", self.0.p, self.0.e, self.0.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// Dense polynomial helpers over F_p, constant coefficient first.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn inv_mod(x: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = x as u64 % p as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

/// Remainder of `num` modulo the monic polynomial `den`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = inv_mod(*den.last().unwrap(), p) as u64;
    while r.len() > dd && !(r.len() == 1 && r[0] == 0) {
        let top = r.len() - 1;
        let coef = r[top] as u64 * lead_inv % p as u64;
        if coef != 0 {
            let shift = top - dd;
            for (i, &dc) in den.iter().enumerate() {
                let sub = coef * dc as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(0);
    }
    trim(r)
}

fn digits(mut idx: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Irreducibility by trial division with every monic polynomial of degree at most `deg/2`.
fn find_factor(modulus: &[u32], p: u32) -> Option<Vec<u32>> {
    let deg = modulus.len() as u32 - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for k in 0..count {
            let mut cand = digits(k as u32, p, d);
            cand.push(1);
            let r = poly_rem(modulus, &cand, p);
            if r.len() == 1 && r[0] == 0 {
                return Some(cand);
            }
        }
    }
    None
}

fn slow_mul(x: &[u32], y: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * e];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(e, 0);
    r
}

fn slow_pow(x: &[u32], mut k: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut result = vec![0u32; e];
    result[0] = 1;
    let mut base = x.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            result = slow_mul(&result, &base, modulus, p);
        }
        base = slow_mul(&base, &base, modulus, p);
        k >>= 1;
    }
    result
}

impl Field {
    /// Builds `F_p[t]/(modulus)`, checking primality of `p` and irreducibility of the modulus.
    pub fn new(p: u32, e: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 || modulus.len() != e as usize + 1 {
            return Err(Error::DegreeMismatch {
                degree: e,
                expected: e as usize + 1,
                got: modulus.len(),
            });
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficients must lie in [0, {p})"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let order = (p as u64).pow(e);
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        if let Some(factor) = find_factor(modulus, p) {
            return Err(Error::ReducibleModulus { p, factor });
        }
        Ok(Field(Arc::new(build_tables(p, e, modulus.to_vec(), order as u32))))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, &[0, 1])
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.order).map(Fe)
    }

    pub fn element(&self, index: u32) -> Option<Fe> {
        (index < self.0.order).then_some(Fe(index))
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() != self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::BadElement(coeffs.to_vec()));
        }
        Ok(Fe(pack(coeffs, self.0.p)))
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        digits(x.0, self.0.p, self.0.e)
    }

    /// The class of `t` (the generator of the power basis).
    pub fn generator(&self) -> Fe {
        if self.0.e == 1 {
            // t is a root of the modulus t - m, i.e. t = -m_0.
            self.neg(Fe(self.0.modulus[0]))
        } else {
            Fe(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        let f = &*self.0;
        if f.e == 1 {
            let s = x.0 + y.0;
            return Fe(if s >= f.p { s - f.p } else { s });
        }
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        let n = f.order - 1;
        let lx = f.log[x.0 as usize];
        let ly = f.log[y.0 as usize];
        let d = if ly >= lx { ly - lx } else { ly + n - lx };
        let z = f.zech[d as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(f.exp[(lx + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, x: Fe) -> Fe {
        let f = &*self.0;
        if x.0 == 0 || f.p == 2 {
            return x;
        }
        if f.e == 1 {
            return Fe(f.p - x.0);
        }
        let n = f.order - 1;
        Fe(f.exp[(f.log[x.0 as usize] + n / 2) as usize])
    }

    #[inline]
    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        let f = &*self.0;
        if x.0 == 0 || y.0 == 0 {
            return Fe::ZERO;
        }
        if f.e == 1 {
            return Fe((x.0 as u64 * y.0 as u64 % f.p as u64) as u32);
        }
        Fe(f.exp[(f.log[x.0 as usize] + f.log[y.0 as usize]) as usize])
    }

    pub fn try_inv(&self, x: Fe) -> Option<Fe> {
        if x.0 == 0 {
            return None;
        }
        let f = &*self.0;
        let n = f.order - 1;
        let l = f.log[x.0 as usize];
        Some(Fe(f.exp[((n - l) % n) as usize]))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, x: Fe) -> Fe {
        self.try_inv(x).expect("inverse of zero")
    }

    pub fn div(&self, x: Fe, y: Fe) -> Fe {
        self.mul(x, self.inv(y))
    }

    pub fn pow(&self, x: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if x.0 == 0 {
            return Fe::ZERO;
        }
        let f = &*self.0;
        let n = (f.order - 1) as u64;
        let l = f.log[x.0 as usize] as u64;
        Fe(f.exp[(l * (k % n) % n) as usize])
    }

    /// `x^(-k)` for nonzero `x`.
    pub fn pow_neg(&self, x: Fe, k: u64) -> Fe {
        self.pow(self.inv(x), k)
    }

    /// Discrete logarithm with respect to the table's primitive element.
    pub fn log(&self, x: Fe) -> Option<u32> {
        (x.0 != 0).then(|| self.0.log[x.0 as usize])
    }

    pub fn exp(&self, k: u64) -> Fe {
        let n = (self.0.order - 1) as u64;
        Fe(self.0.exp[(k % n) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Fe) -> Option<u64> {
        let l = self.log(x)? as u64;
        let n = (self.0.order - 1) as u64;
        Some(n / gcd(l, n))
    }

    /// `dst += factor * src`, entrywise.
    #[inline]
    pub fn axpy(&self, dst: &mut [Fe], factor: Fe, src: &[Fe]) {
        if factor.0 == 0 {
            return;
        }
        let f = &*self.0;
        if f.e == 1 {
            let p = f.p as u64;
            let k = factor.0 as u64;
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    d.0 = ((d.0 as u64 + k * s.0 as u64) % p) as u32;
                }
            }
        } else {
            let lf = f.log[factor.0 as usize];
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    let t = Fe(f.exp[(lf + f.log[s.0 as usize]) as usize]);
                    *d = self.add(*d, t);
                }
            }
        }
    }

    pub fn scale_in_place(&self, v: &mut [Fe], factor: Fe) {
        for x in v.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    /// First element (in enumeration order) of exact multiplicative order `n`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<Fe> {
        let size = self.0.order as u64;
        if n == 0 || (size - 1) % n != 0 {
            return Err(Error::NoSuchRoot { order: n, size });
        }
        self.elements()
            .skip(1)
            .find(|&x| self.mult_order(x) == Some(n))
            .ok_or(Error::NoSuchRoot { order: n, size })
    }

    /// All `k`-th roots of `x` in this field.
    pub fn roots(&self, x: Fe, k: u64) -> Vec<Fe> {
        if x.0 == 0 {
            return vec![Fe::ZERO];
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[x.0 as usize] as u64;
        let g = gcd(k, n);
        if l % g != 0 {
            return Vec::new();
        }
        let m = n / g;
        let kk = (k / g) % m;
        let base = if m == 1 {
            0
        } else {
            (l / g) % m * modinv_u64(kk, m) % m
        };
        let mut out: Vec<Fe> = (0..g).map(|j| self.exp(base + j * m)).collect();
        out.sort();
        out
    }

    /// Evaluates a polynomial with coefficients in this field.
    pub fn eval_poly(&self, coeffs: &[Fe], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

fn modinv_u64(a: u64, m: u64) -> u64 {
    // extended Euclid; a and m coprime
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

fn build_tables(p: u32, e: u32, modulus: Vec<u32>, order: u32) -> FieldInner {
    let n = (order - 1) as u64;
    let factors = prime_factors(n);
    let one = {
        let mut v = vec![0u32; e as usize];
        v[0] = 1;
        v
    };
    let mut g = None;
    for idx in 1..order {
        let cand = digits(idx, p, e);
        if n == 1 || factors
            .iter()
            .all(|&r| slow_pow(&cand, n / r, &modulus, p) != one)
        {
            g = Some(cand);
            break;
        }
    }
    let g = g.expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![NO_LOG; order as usize];
    let mut cur = one.clone();
    for k in 0..n as usize {
        let idx = pack(&cur, p);
        exp[k] = idx;
        exp[k + n as usize] = idx;
        log[idx as usize] = k as u32;
        cur = slow_mul(&cur, &g, &modulus, p);
    }
    let mut zech = vec![NO_LOG; n as usize];
    for k in 0..n as usize {
        let v = exp[k];
        let d0 = v % p;
        let w = v - d0 + (d0 + 1) % p;
        zech[k] = if w == 0 { NO_LOG } else { log[w as usize] };
    }
    FieldInner {
        p,
        e,
        modulus,
        order,
        exp,
        log,
        zech,
    }
}

/// The default modulus for `F_{p^e}`: the first monic irreducible polynomial of
/// degree `e` when the lower coefficients are enumerated as packed integers.
/// For `e = 1` this is `t`.
pub fn default_modulus(p: u32, e: u32) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if order > MAX_FIELD_ORDER {
        return Err(Error::ExtensionUnavailable(order));
    }
    if e == 1 {
        return Ok(vec![0, 1]);
    }
    for k in 0..order as u32 {
        let mut m = digits(k, p, e);
        m.push(1);
        if m[0] != 0 && find_factor(&m, p).is_none() {
            return Ok(m);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The field `F_{p^e}` built from [`default_modulus`], cached per `(p, e)`.
pub fn default_field(p: u32, e: u32) -> Result<Field> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, e)) {
        return Ok(f.clone());
    }
    let f = Field::new(p, e, &default_modulus(p, e)?)?;
    cache.lock().unwrap().insert((p, e), f.clone());
    Ok(f)
}

/// A field embedding `src -> dst`, fixed by the image of the power-basis generator.
#[derive(Clone)]
pub struct Embedding {
    src: Field,
    dst: Field,
    map: Arc<Vec<Fe>>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.src, self.dst)
    }
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            src: field.clone(),
            dst: field.clone(),
            map: Arc::new(field.elements().collect()),
        }
    }

    /// Sends `t` to the first root of `src`'s modulus in `dst`.
    pub fn find(src: &Field, dst: &Field) -> Result<Embedding> {
        if src == dst {
            return Ok(Embedding::identity(src));
        }
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::NoEmbedding {
                p: src.p(),
                from: src.degree(),
                p2: dst.p(),
                to: dst.degree(),
            });
        }
        let modulus: Vec<Fe> = src.modulus().iter().map(|&c| Fe(c)).collect();
        let root = dst
            .elements()
            .find(|&x| dst.eval_poly(&modulus, x).is_zero())
            .expect("an irreducible polynomial splits in every extension of its degree");
        let e = src.degree() as usize;
        let mut powers = Vec::with_capacity(e);
        let mut cur = Fe::ONE;
        for _ in 0..e {
            powers.push(cur);
            cur = dst.mul(cur, root);
        }
        let map = src
            .elements()
            .map(|x| {
                src.coeffs(x)
                    .iter()
                    .zip(&powers)
                    .fold(Fe::ZERO, |acc, (&c, &pw)| {
                        dst.add(acc, dst.mul(Fe(c), pw))
                    })
            })
            .collect();
        Ok(Embedding {
            src: src.clone(),
            dst: dst.clone(),
            map: Arc::new(map),
        })
    }

    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    #[inline]
    pub fn apply(&self, x: Fe) -> Fe {
        self.map[x.0 as usize]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        assert_eq!(self.dst, other.src, "embeddings do not compose");
        Embedding {
            src: self.src.clone(),
            dst: other.dst.clone(),
            map: Arc::new(self.map.iter().map(|&x| other.apply(x)).collect()),
        }
    }
}

/// The order of the deformation parameter for exponent `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnityOrder {
    pub a: u64,
    /// The largest divisor of `a` coprime to the characteristic.
    pub a_prime: u64,
    /// `a / gcd(a, p)`, which differs from `a_prime` when `p^2 | a`.
    pub literal: u64,
}

impl UnityOrder {
    pub fn has_discrepancy(&self) -> bool {
        self.a_prime != self.literal
    }
}

pub fn compute_a_prime(a: u64, p: u64) -> UnityOrder {
    if p == 0 {
        return UnityOrder {
            a,
            a_prime: a,
            literal: a,
        };
    }
    let mut a_prime = a;
    while a_prime % p == 0 {
        a_prime /= p;
    }
    UnityOrder {
        a,
        a_prime,
        literal: a / gcd(a, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::prime(5).unwrap();
        let four = f.from_int(4);
        assert_eq!(f.mul(four, four), Fe::ONE);
        assert_eq!(f.neg(Fe::ONE), four);
        assert_eq!(f.generator(), Fe::ZERO);
    }

    #[test]
    fn f4_generator_satisfies_modulus() {
        let f = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let t = f.generator();
        assert_eq!(f.mul(t, t), f.add(t, Fe::ONE));
    }

    #[test]
    fn order_of_two_in_f7() {
        let f = Field::prime(7).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.pow(two, 3), Fe::ONE);
        assert_ne!(f.pow(two, 1), Fe::ONE);
        assert_ne!(f.pow(two, 2), Fe::ONE);
        assert_eq!(f.mult_order(two), Some(3));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::new(6, 1, &[0, 1]), Err(Error::NonPrime(6))));
        assert!(matches!(
            Field::new(2, 2, &[1, 0, 1]),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            Field::new(2, 3, &[1, 1, 1]),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(Field::new(3, 2, &[1, 0, 2]).is_err());
    }

    #[test]
    fn a_prime_values() {
        assert_eq!(compute_a_prime(2, 5).a_prime, 2);
        assert_eq!(compute_a_prime(2, 2).a_prime, 1);
        let u = compute_a_prime(4, 2);
        assert_eq!(u.a_prime, 1);
        assert_eq!(u.literal, 2);
        assert!(u.has_discrepancy());
        assert_eq!(compute_a_prime(6, 0).a_prime, 6);
    }

    #[test]
    fn char_two_has_no_element_of_order_two() {
        for e in 1..=2 {
            let f = default_field(2, e).unwrap();
            assert!(f.primitive_root_of_unity(2).is_err());
        }
    }

    #[test]
    fn roots_of_unity() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.primitive_root_of_unity(2).unwrap(), f5.from_int(4));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.primitive_root_of_unity(3).unwrap(), f7.from_int(2));
        assert_eq!(f7.primitive_root_of_unity(1).unwrap(), Fe::ONE);
        assert!(f7.primitive_root_of_unity(4).is_err());
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1), (2, 4)] {
            let f = default_field(p, e).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for &x in &els {
                assert_eq!(f.add(x, f.neg(x)), Fe::ZERO);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x)), Fe::ONE);
                }
                for &y in &els {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for &z in &els {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(
                            f.mul(x, f.add(y, z)),
                            f.add(f.mul(x, y), f.mul(x, z))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn k_th_roots() {
        let f = default_field(5, 2).unwrap();
        for x in f.elements() {
            for k in [2u64, 3, 4] {
                let rs = f.roots(x, k);
                for &r in &rs {
                    assert_eq!(f.pow(r, k), x);
                }
                let brute = f.elements().filter(|&r| f.pow(r, k) == x).count();
                assert_eq!(rs.len(), brute);
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let small = default_field(2, 2).unwrap();
        let big = default_field(2, 4).unwrap();
        let emb = Embedding::find(&small, &big).unwrap();
        for x in small.elements() {
            for y in small.elements() {
                assert_eq!(emb.apply(small.add(x, y)), big.add(emb.apply(x), emb.apply(y)));
                assert_eq!(emb.apply(small.mul(x, y)), big.mul(emb.apply(x), emb.apply(y)));
            }
        }
        assert!(Embedding::find(&small, &default_field(2, 3).unwrap()).is_err());
    }
}
