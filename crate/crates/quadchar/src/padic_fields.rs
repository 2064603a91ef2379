//! Symbolic tame extensions of `Q_p` for odd `p`.
//!
//! A field is a descriptor `(p, e, f)`. Every character used by the crate is
//! quadratic and tame, so it factors through the square-class group
//! `F^x / (F^x)^2`, which has four elements: `{1, u, pi, u*pi}`.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| mod_pow(a, (p - 1) / 2, p) == p - 1)
        .expect("odd primes have non-residues")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LocalFieldDesc {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub label: String,
}

impl LocalFieldDesc {
    /// Cardinality of the residue field.
    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    /// `(-1)^((q-1)/2)` as a sign: whether -1 is a non-square unit.
    pub fn minus_one_nonsquare(&self) -> bool {
        self.q() % 4 == 3
    }

    pub fn minus_one(&self) -> SquareClass {
        SquareClass::new(false, self.minus_one_nonsquare())
    }
}

pub fn make_base(p: u64) -> Result<LocalFieldDesc> {
    if p == 2 {
        return Err(Error::NonOddPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(LocalFieldDesc {
        p,
        e: 1,
        f: 1,
        label: format!("Q_{p}"),
    })
}

/// An element of `F^x / (F^x)^2`, written `pi^v * u^n` with both exponents mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SquareClass {
    pub val_parity: bool,
    pub unit_nonsquare: bool,
}

impl SquareClass {
    pub const ONE: SquareClass = SquareClass::new(false, false);
    pub const U: SquareClass = SquareClass::new(false, true);
    pub const PI: SquareClass = SquareClass::new(true, false);
    pub const U_PI: SquareClass = SquareClass::new(true, true);

    pub const fn new(val_parity: bool, unit_nonsquare: bool) -> Self {
        SquareClass {
            val_parity,
            unit_nonsquare,
        }
    }

    pub fn all() -> [SquareClass; 4] {
        [Self::ONE, Self::U, Self::PI, Self::U_PI]
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: SquareClass) -> SquareClass {
        SquareClass::new(
            self.val_parity ^ other.val_parity,
            self.unit_nonsquare ^ other.unit_nonsquare,
        )
    }

    pub fn is_trivial(self) -> bool {
        self == Self::ONE
    }

    pub fn name(self) -> &'static str {
        match (self.val_parity, self.unit_nonsquare) {
            (false, false) => "1",
            (false, true) => "u",
            (true, false) => "pi",
            (true, true) => "u*pi",
        }
    }
}

/// An element of `F^x` known up to principal units: exact valuation and the
/// square class of its residue unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ElementClass {
    pub valuation: i64,
    pub unit_nonsquare: bool,
}

impl ElementClass {
    pub fn new(valuation: i64, unit_nonsquare: bool) -> Self {
        ElementClass {
            valuation,
            unit_nonsquare,
        }
    }

    pub fn square_class(self) -> SquareClass {
        SquareClass::new(self.valuation.rem_euclid(2) == 1, self.unit_nonsquare)
    }
}

impl From<SquareClass> for ElementClass {
    fn from(c: SquareClass) -> Self {
        ElementClass::new(c.val_parity as i64, c.unit_nonsquare)
    }
}

/// Residue representative of the canonical non-square unit `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitRep {
    /// Least positive non-residue mod p (residue degree 1).
    Integer(u64),
    /// Odd power of the fixed generator of `k_F^x` (residue degree > 1).
    GeneratorPower(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassRep {
    pub class: SquareClass,
    pub name: &'static str,
    pub unit: UnitRep,
}

pub fn square_classes(field: &LocalFieldDesc) -> [ClassRep; 4] {
    let unit = if field.f == 1 {
        UnitRep::Integer(least_nonresidue(field.p))
    } else {
        UnitRep::GeneratorPower(1)
    };
    SquareClass::all().map(|class| ClassRep {
        class,
        name: class.name(),
        unit,
    })
}

/// Square class of a nonzero integer in `Q_p`.
pub fn class_of_integer(p: u64, a: i64) -> Result<SquareClass> {
    if a == 0 {
        return Err(Error::ZeroUnit);
    }
    let mut v = 0u32;
    let mut m = a;
    while m % p as i64 == 0 {
        m /= p as i64;
        v += 1;
    }
    let residue = m.rem_euclid(p as i64) as u64;
    let nonsquare = mod_pow(residue, (p - 1) / 2, p) == p - 1;
    Ok(SquareClass::new(v % 2 == 1, nonsquare))
}

fn sign(negative: bool) -> i8 {
    if negative {
        -1
    } else {
        1
    }
}

/// Tame Hilbert symbol `(a, b)_F` for `p` odd.
///
/// With `a = pi^x u^m` and `b = pi^y u^n`:
/// `(a, b) = (-1)^(xy(q-1)/2) * (-1)^(my) * (-1)^(nx)`.
pub fn hilbert_symbol(field: &LocalFieldDesc, a: SquareClass, b: SquareClass) -> i8 {
    let pi_pi = a.val_parity && b.val_parity && field.minus_one_nonsquare();
    let unit_a = a.unit_nonsquare && b.val_parity;
    let unit_b = b.unit_nonsquare && a.val_parity;
    sign(pi_pi ^ unit_a ^ unit_b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExtKind {
    Unramified,
    Ramified,
}

impl ExtKind {
    pub fn is_ramified(self) -> bool {
        self == ExtKind::Ramified
    }
}

/// `E = F(sqrt(a))` for a nontrivial square class `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadExtDesc {
    pub base: LocalFieldDesc,
    pub disc: SquareClass,
    pub kind: ExtKind,
}

impl QuadExtDesc {
    pub fn new(base: &LocalFieldDesc, disc: SquareClass) -> Result<Self> {
        if disc.is_trivial() {
            return Err(Error::TrivialClass);
        }
        let kind = if disc.val_parity {
            ExtKind::Ramified
        } else {
            ExtKind::Unramified
        };
        Ok(QuadExtDesc {
            base: base.clone(),
            disc,
            kind,
        })
    }

    pub fn field(&self) -> LocalFieldDesc {
        let (e, f) = match self.kind {
            ExtKind::Unramified => (self.base.e, 2 * self.base.f),
            ExtKind::Ramified => (2 * self.base.e, self.base.f),
        };
        LocalFieldDesc {
            p: self.base.p,
            e,
            f,
            label: format!("{}(sqrt {})", self.base.label, self.disc.name()),
        }
    }
}

/// The three quadratic extensions of `F`, unramified first.
pub fn quadratic_extensions(field: &LocalFieldDesc) -> [QuadExtDesc; 3] {
    [SquareClass::U, SquareClass::PI, SquareClass::U_PI]
        .map(|c| QuadExtDesc::new(field, c).expect("nontrivial class"))
}

/// `omega_{E/F}(t)`, the character of `F^x` with kernel `Nm(E^x)`.
///
/// Unramified: `(-1)^v(t)`. Ramified: write `t = a^v w` with `a` the
/// discriminant uniformizer; then `omega(a) = omega(-1) = (-1)^((q-1)/2)` and
/// `omega(w)` is the Legendre symbol of the residue of `w`.
pub fn omega_quadratic(ext: &QuadExtDesc, t: ElementClass) -> i8 {
    let odd_v = t.valuation.rem_euclid(2) == 1;
    match ext.kind {
        ExtKind::Unramified => sign(odd_v),
        ExtKind::Ramified => {
            let omega_a = odd_v && ext.base.minus_one_nonsquare();
            let w_nonsquare = t.unit_nonsquare ^ (odd_v && ext.disc.unit_nonsquare);
            sign(omega_a ^ w_nonsquare)
        }
    }
}

/// Image of a square class of `F` in `E^x / (E^x)^2`, relative to the
/// uniformizer `sqrt(a)` when `E = F(sqrt a)` is ramified.
pub fn extend_class(ext: &QuadExtDesc, a: SquareClass) -> SquareClass {
    match ext.kind {
        ExtKind::Unramified => SquareClass::new(a.val_parity, false),
        ExtKind::Ramified => SquareClass::new(
            false,
            a.unit_nonsquare ^ (a.val_parity && ext.disc.unit_nonsquare),
        ),
    }
}

/// Square class in `F` of `Nm_{E/F}(t)` for `t` given by its class in `E`.
pub fn norm_class(ext: &QuadExtDesc, t: SquareClass) -> SquareClass {
    match ext.kind {
        ExtKind::Unramified => SquareClass::new(false, t.unit_nonsquare),
        ExtKind::Ramified => {
            let minus_a_unit = ext.disc.unit_nonsquare ^ ext.base.minus_one_nonsquare();
            SquareClass::new(t.val_parity, t.val_parity && minus_a_unit)
        }
    }
}

fn same_base(a: &LocalFieldDesc, b: &LocalFieldDesc) -> bool {
    a == b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiquadraticDiamond {
    pub base: LocalFieldDesc,
    pub quads: [QuadExtDesc; 3],
    pub top: LocalFieldDesc,
    /// `E_i / F` ramified.
    pub lower_ramified: [bool; 3],
    /// `K / E_i` ramified.
    pub upper_ramified: [bool; 3],
}

impl BiquadraticDiamond {
    pub fn unramified_index(&self) -> usize {
        self.lower_ramified
            .iter()
            .position(|r| !r)
            .expect("a tame biquadratic extension has an unramified quadratic subfield")
    }
}

pub fn biquadratic_diamond(e1: &QuadExtDesc, e2: &QuadExtDesc) -> Result<BiquadraticDiamond> {
    if !same_base(&e1.base, &e2.base) {
        return Err(Error::BaseMismatch);
    }
    if e1.disc == e2.disc {
        return Err(Error::SameExtension);
    }
    let base = e1.base.clone();
    let e3 = QuadExtDesc::new(&base, e1.disc.mul(e2.disc))?;
    let quads = [e1.clone(), e2.clone(), e3];
    let fields = quads.clone().map(|q| q.field());
    // K/F has degree 4 and contains both an unramified and a ramified quadratic step.
    let top = LocalFieldDesc {
        p: base.p,
        e: 2 * base.e,
        f: 2 * base.f,
        label: format!("{}.{}", fields[0].label, quads[1].disc.name()),
    };
    let lower_ramified = quads.clone().map(|q| q.kind.is_ramified());
    let upper_ramified = fields.clone().map(|k| top.e / k.e > 1);
    for k in &fields {
        debug_assert_eq!(
            (top.e / k.e) * (top.f / k.f),
            2,
            "each upper edge is quadratic"
        );
    }
    if lower_ramified.iter().filter(|r| !**r).count() != 1 {
        return Err(Error::PatternMismatch("expected one unramified subfield"));
    }
    Ok(BiquadraticDiamond {
        base,
        quads,
        top,
        lower_ramified,
        upper_ramified,
    })
}

pub fn lambda_unramified(n: u32) -> Result<i8> {
    if n == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    Ok(sign(n.is_multiple_of(2)))
}

/// One step of a tower, as far as its Langlands constant is concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaStep {
    Identity,
    Unramified(u32),
    Ramified,
}

impl LambdaStep {
    pub fn quadratic(ramified: bool) -> Self {
        if ramified {
            LambdaStep::Ramified
        } else {
            LambdaStep::Unramified(2)
        }
    }
}

pub fn lambda(step: LambdaStep) -> Result<i8> {
    match step {
        LambdaStep::Identity => Ok(1),
        LambdaStep::Unramified(n) => lambda_unramified(n),
        LambdaStep::Ramified => Err(Error::RamifiedLambda),
    }
}

/// `lambda_{K/F} = lambda_{K/E} * lambda_{E/F}^[K:E]`.
pub fn lambda_chain(upper: LambdaStep, lower: LambdaStep, upper_degree: u32) -> Result<i8> {
    let lo = lambda(lower)?;
    Ok(lambda(upper)? * lo.pow(upper_degree))
}

/// `lambda(sq)^2 / lambda(den)`; every available value is a sign.
pub fn lambda_ratio(sq: LambdaStep, den: LambdaStep) -> Result<i8> {
    let s = lambda(sq)?;
    Ok(s * s * lambda(den)?)
}

/// The zeta-data value `zeta(2a) = lambda^2_{F_op/F_pm} / lambda_{E_a/E_pm}` at a
/// symmetric ramified root, for a diamond `E_a / F_pm` whose intermediate fields
/// `quads[fop]` and `quads[epm]` play the roles of `F_op` and `E_pm`.
///
/// The chain rule along both sides of the diamond rewrites it as
/// `lambda^2_{E_pm/F_pm} / lambda_{E_a/F_op}`, which only involves unramified
/// steps when `E_a/E_pm` is ramified and `E_a/F_op` is unramified.
pub fn zeta_lambda_ratio(d: &BiquadraticDiamond, fop: usize, epm: usize) -> Result<i8> {
    if fop == epm || fop > 2 || epm > 2 {
        return Err(Error::Invalid(
            "need two distinct intermediate fields".into(),
        ));
    }
    if !d.upper_ramified[epm] {
        return Err(Error::PatternMismatch("E_a/E_pm must be ramified"));
    }
    if d.upper_ramified[fop] {
        return Err(Error::PatternMismatch("E_a/F_op must be unramified"));
    }
    lambda_ratio(
        LambdaStep::quadratic(d.lower_ramified[epm]),
        LambdaStep::quadratic(d.upper_ramified[fop]),
    )
}
