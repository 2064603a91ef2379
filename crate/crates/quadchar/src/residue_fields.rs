//! Small finite fields: `F_q` with log tables, the quadratic extension
//! `F_q[X]/(X^2 - u)`, and an exponent model of `F_{q^n}^x` for larger degrees.

use crate::error::{Error, Result};
use crate::padic_fields::{is_prime, least_nonresidue};

/// Largest field size built with explicit tables.
pub const MAX_Q: u64 = 10_000;

/// Splits `q = p^f` with `p` an odd prime.
pub fn odd_prime_power(q: u64) -> Result<(u64, u32)> {
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .ok_or(Error::NotPrimePower(q))?;
    if p == 2 {
        return Err(Error::NonOddPrime(2));
    }
    let mut f = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        f += 1;
    }
    if m != 1 || !is_prime(p) {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, f))
}

/// `F_q` with elements encoded as base-`p` digit strings of polynomial
/// coefficients modulo a primitive polynomial.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    f: u32,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, f) = odd_prime_power(q)?;
        let (exp, log) = primitive_tables(p, f, q);
        Ok(FiniteField { p, f, q, exp, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn minus_one(&self) -> u32 {
        (self.p - 1) as u32
    }

    pub fn generator(&self) -> u32 {
        self.exp[1 % (self.q as usize - 1)]
    }

    /// Canonical non-square: least non-residue for prime fields, the generator otherwise.
    pub fn canonical_nonsquare(&self) -> u32 {
        if self.f == 1 {
            least_nonresidue(self.p) as u32
        } else {
            self.generator()
        }
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.q as u32
    }

    fn digits(&self, mut a: u32) -> Vec<u64> {
        (0..self.f)
            .map(|_| {
                let d = a as u64 % self.p;
                a /= self.p as u32;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroUnit);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize] as u64) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u128;
        let k = (self.log[a as usize] as u128 * e as u128) % n;
        self.exp[k as usize]
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.pow(a, (self.q - 1) / 2) == 1
    }

    /// Multiplicative order of a unit, found by search.
    pub fn order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn mul_by_x(poly_low: &[u64], v: &mut [u64], p: u64) {
    // v * X mod (X^f + poly_low[f-1] X^(f-1) + ... + poly_low[0])
    let f = v.len();
    let top = v[f - 1];
    for i in (1..f).rev() {
        v[i] = v[i - 1];
    }
    v[0] = 0;
    for i in 0..f {
        v[i] = (v[i] + (p - poly_low[i]) * top) % p;
    }
}

fn primitive_tables(p: u64, f: u32, q: u64) -> (Vec<u32>, Vec<u32>) {
    let f = f as usize;
    let n = (q - 1) as usize;
    let encode = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32;
    for code in 0..q {
        let mut low = vec![0u64; f];
        let mut c = code;
        for d in low.iter_mut() {
            *d = c % p;
            c /= p;
        }
        if low[0] == 0 {
            continue;
        }
        // X generates the unit group iff its powers hit q-1 distinct values;
        // then the quotient ring has q-1 units, so the polynomial is irreducible.
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; q as usize];
        let mut v = vec![0u64; f];
        v[0] = 1;
        let mut ok = true;
        for i in 0..n {
            let e = encode(&v);
            if log[e as usize] != u32::MAX || e == 0 {
                ok = false;
                break;
            }
            log[e as usize] = i as u32;
            exp.push(e);
            mul_by_x(&low, &mut v, p);
        }
        if ok && encode(&v) == 1 {
            log[0] = 0;
            return (exp, log);
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

pub fn sgn_units(k: &FiniteField, x: u32) -> Result<i8> {
    if x == 0 {
        return Err(Error::ZeroUnit);
    }
    Ok(power_sign(k, k.pow(x, (k.q - 1) / 2)))
}

fn power_sign(k: &FiniteField, v: u32) -> i8 {
    if v == k.one() {
        1
    } else {
        debug_assert_eq!(v, k.minus_one());
        -1
    }
}

/// `a + b*s` with `s^2 = u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq2 {
    pub a: u32,
    pub b: u32,
}

/// `F_{q^2} = F_q[X]/(X^2 - u)` with `u` the canonical non-square.
#[derive(Debug, Clone)]
pub struct QuadraticExtension {
    pub base: FiniteField,
    pub u: u32,
}

impl QuadraticExtension {
    pub fn new(q: u64) -> Result<Self> {
        let base = FiniteField::new(q)?;
        let u = base.canonical_nonsquare();
        Ok(QuadraticExtension { base, u })
    }

    pub fn q(&self) -> u64 {
        self.base.q
    }

    pub fn one(&self) -> Fq2 {
        Fq2 { a: 1, b: 0 }
    }

    pub fn from_base(&self, a: u32) -> Fq2 {
        Fq2 { a, b: 0 }
    }

    pub fn sqrt_u(&self) -> Fq2 {
        Fq2 { a: 0, b: 1 }
    }

    pub fn is_zero(&self, x: Fq2) -> bool {
        x.a == 0 && x.b == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq2> + '_ {
        let q = self.q() as u32;
        (0..q).flat_map(move |a| (0..q).map(move |b| Fq2 { a, b }))
    }

    pub fn units(&self) -> impl Iterator<Item = Fq2> + '_ {
        self.elements().filter(|x| !(x.a == 0 && x.b == 0))
    }

    /// The order `q + 1` subgroup of `F_{q^2}^x`.
    pub fn norm_one(&self) -> impl Iterator<Item = Fq2> + '_ {
        self.units().filter(|&x| self.norm_to_base(x) == 1)
    }

    pub fn add(&self, x: Fq2, y: Fq2) -> Fq2 {
        Fq2 {
            a: self.base.add(x.a, y.a),
            b: self.base.add(x.b, y.b),
        }
    }

    pub fn mul(&self, x: Fq2, y: Fq2) -> Fq2 {
        let k = &self.base;
        let bd = k.mul(x.b, y.b);
        Fq2 {
            a: k.add(k.mul(x.a, y.a), k.mul(bd, self.u)),
            b: k.add(k.mul(x.a, y.b), k.mul(x.b, y.a)),
        }
    }

    pub fn pow(&self, x: Fq2, mut e: u64) -> Fq2 {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Fq2) -> Result<Fq2> {
        let n = self.norm_to_base(x);
        let n_inv = self.base.inv(n)?;
        let c = self.frobenius(x);
        Ok(Fq2 {
            a: self.base.mul(c.a, n_inv),
            b: self.base.mul(c.b, n_inv),
        })
    }

    /// `x^q`; since `s^q = u^((q-1)/2) s = -s` this is conjugation.
    pub fn frobenius(&self, x: Fq2) -> Fq2 {
        Fq2 {
            a: x.a,
            b: self.base.neg(x.b),
        }
    }

    /// `x^(q+1) = a^2 - u b^2`.
    pub fn norm_to_base(&self, x: Fq2) -> u32 {
        let k = &self.base;
        k.sub(k.mul(x.a, x.a), k.mul(self.u, k.mul(x.b, x.b)))
    }

    /// `x + x^q = 2a`.
    pub fn trace_to_base(&self, x: Fq2) -> u32 {
        self.base.add(x.a, x.a)
    }

    fn sign_of(&self, v: Fq2) -> i8 {
        if v == self.one() {
            1
        } else {
            debug_assert_eq!(v, self.from_base(self.base.minus_one()));
            -1
        }
    }

    /// Quadratic character of `F_{q^2}^x`: `x^((q^2-1)/2)`.
    pub fn sgn_units(&self, x: Fq2) -> Result<i8> {
        if self.is_zero(x) {
            return Err(Error::ZeroUnit);
        }
        let q = self.q();
        Ok(self.sign_of(self.pow(x, (q * q - 1) / 2)))
    }

    /// Quadratic character of the norm-one group: `x^((q+1)/2)`.
    pub fn sgn_norm_one(&self, x: Fq2) -> Result<i8> {
        if self.is_zero(x) || self.norm_to_base(x) != 1 {
            return Err(Error::NotNormOne);
        }
        Ok(self.sign_of(self.pow(x, self.q().div_ceil(2))))
    }
}

/// `F_{q^n}^x` as the cyclic group of exponents of a fixed generator `g`.
///
/// `F_q^x` is the subgroup generated by `h = g^((q^n-1)/(q-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicModel {
    pub q: u64,
    pub n: u32,
    pub order: u64,
}

impl CyclicModel {
    pub fn new(q: u64, n: u32) -> Result<Self> {
        odd_prime_power(q)?;
        if n == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        let size = (q as u128).pow(n);
        if size > u64::MAX as u128 / 4 {
            return Err(Error::FieldTooLarge(q));
        }
        Ok(CyclicModel {
            q,
            n,
            order: size as u64 - 1,
        })
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        match a.checked_mul(b) {
            Some(c) => c % self.order,
            None => ((a as u128 * b as u128) % self.order as u128) as u64,
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.order
    }

    pub fn div(&self, x: u64, y: u64) -> u64 {
        (x + self.order - y % self.order) % self.order
    }

    pub fn pow(&self, x: u64, e: u64) -> u64 {
        self.mulmod(x, e % self.order)
    }

    pub fn frobenius(&self, x: u64) -> u64 {
        self.mulmod(x, self.q)
    }

    /// Product of the `n` Frobenius conjugates.
    pub fn norm(&self, x: u64) -> u64 {
        let mut acc = 0;
        let mut conj = x;
        for _ in 0..self.n {
            acc = self.mul(acc, conj);
            conj = self.frobenius(conj);
        }
        acc
    }

    /// Exponent with respect to `h` if `x` lies in `F_q^x`.
    pub fn base_exponent(&self, x: u64) -> Option<u64> {
        let index = self.order / (self.q - 1);
        x.is_multiple_of(index).then_some(x / index)
    }

    /// `x^((q^n-1)/2)` as a sign.
    pub fn sgn(&self, x: u64) -> i8 {
        if self.pow(x, self.order / 2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Quadratic character of `F_q^x` applied to an element of the base field.
    pub fn sgn_base(&self, base_exp: u64) -> i8 {
        let m = self.q - 1;
        if (base_exp as u128 * (m / 2) as u128).is_multiple_of(m as u128) {
            1
        } else {
            -1
        }
    }
}
