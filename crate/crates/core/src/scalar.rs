//! Field abstraction shared by the scalar formulas.
//!
//! Formulas are written once, generic over [`Scalar`], and evaluated either
//! exactly in Q(ζ_N) or as images in a prime field F_p with p ≡ 1 mod L and
//! ζ_L ↦ ω. The image map is a ring homomorphism on the elements we build, so a
//! nonzero image proves a nonzero value; a zero image (or a division whose
//! divisor maps to zero) is inconclusive and must be settled exactly.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::{CyclotomicNumber, RootOfUnity};

pub trait Scalar: Clone + fmt::Debug + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division by a value known to be nonzero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// An integer in the same ambient field as `self`.
    fn int(&self, n: i64) -> Self;
    /// A root of unity in the same ambient field as `self`.
    fn root(&self, r: RootOfUnity) -> Self;
    /// `Some(answer)` when the zero test on the true value is decided,
    /// `None` when inconclusive.
    fn zero_status(&self) -> Option<bool>;
    /// Zero in the representing ring itself (the residue, for images).
    fn vanishes(&self) -> bool;

    fn one(&self) -> Self {
        self.int(1)
    }

    fn inv(&self) -> Self {
        self.one().div(self)
    }

    fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = self.one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Scalar for CyclotomicNumber {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn int(&self, n: i64) -> Self {
        CyclotomicNumber::from_integer(n)
    }
    fn root(&self, r: RootOfUnity) -> Self {
        r.to_cyclotomic()
    }
    fn zero_status(&self) -> Option<bool> {
        Some(self.is_zero())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn pow(&self, e: i64) -> Self {
        CyclotomicNumber::pow(self, e)
    }
}

/// A prime p ≡ 1 mod L together with the powers of a primitive L-th root ω.
pub struct PrimeField {
    p: u64,
    order: u32,
    omega_pows: Vec<u64>,
}

const FIELD_LIMIT: usize = 2 * crate::cyclo::TABLE_LIMIT as usize;

static FIELDS: [OnceLock<PrimeField>; FIELD_LIMIT + 1] = [const { OnceLock::new() }; FIELD_LIMIT + 1];

impl PrimeField {
    /// The field attached to root-of-unity order `l` (values in μ_l).
    pub fn for_order(l: u32) -> &'static PrimeField {
        assert!((1..=FIELD_LIMIT as u32).contains(&l), "order {l} out of range");
        FIELDS[l as usize].get_or_init(|| PrimeField::build(l))
    }

    /// Like [`for_order`](Self::for_order), but `None` past the supported range.
    pub fn try_for_order(l: u32) -> Option<&'static PrimeField> {
        (1..=FIELD_LIMIT as u32)
            .contains(&l)
            .then(|| Self::for_order(l))
    }

    fn build(l: u32) -> PrimeField {
        let l64 = l as u64;
        let mut k = (1u64 << 62) / l64;
        let p = loop {
            let p = k * l64 + 1;
            if primal_check::miller_rabin(p) {
                break p;
            }
            k -= 1;
        };
        let factors = crate::cyclo::prime_factors(l);
        let omega = (2u64..)
            .map(|g| pow_mod(g, (p - 1) / l64, p))
            .find(|w| factors.iter().all(|q| pow_mod(*w, l64 / *q as u64, p) != 1))
            .expect("primitive root exists");
        let mut omega_pows = Vec::with_capacity(l as usize);
        let mut cur = 1u64;
        for _ in 0..l {
            omega_pows.push(cur);
            cur = mul_mod(cur, omega, p);
        }
        PrimeField {
            p,
            order: l,
            omega_pows,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn elem(&'static self, v: u64) -> ModP {
        ModP {
            v: v % self.p,
            field: self,
        }
    }

    /// Image of an algebraic number of conductor dividing the field order.
    /// Poisoned when the denominator vanishes mod p.
    pub fn image(&'static self, x: &CyclotomicNumber) -> ModP {
        let (n, num, den) = x.raw();
        assert!(
            self.order % n == 0,
            "conductor {n} does not divide {}",
            self.order
        );
        let step = (self.order / n) as usize;
        let p = self.p;
        let reduce = |b: &BigInt| -> u64 {
            let r = (b % p).to_i128().expect("residue fits");
            r.rem_euclid(p as i128) as u64
        };
        let mut acc = 0u64;
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = mul_mod(reduce(c), self.omega_pows[k * step], p);
            acc = (acc + t) % p;
        }
        self.elem(acc).div(&self.elem(reduce(den)))
    }

    pub fn root(&'static self, r: RootOfUnity) -> ModP {
        assert!(
            self.order % r.order() == 0,
            "root of order {} outside μ_{}",
            r.order(),
            self.order
        );
        let k = r.exponent() as usize * (self.order / r.order()) as usize;
        self.elem(self.omega_pows[k])
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

const POISON: u64 = u64::MAX;

/// Image of a value in F_p. A poisoned element records a division whose
/// divisor mapped to zero; every test on it is inconclusive.
#[derive(Clone, Copy)]
pub struct ModP {
    v: u64,
    field: &'static PrimeField,
}

impl ModP {
    fn with(&self, v: u64) -> ModP {
        ModP { v, field: self.field }
    }

    fn poisoned(&self, o: &ModP) -> bool {
        self.v == POISON || o.v == POISON
    }

    pub fn value(&self) -> Option<u64> {
        (self.v != POISON).then_some(self.v)
    }
}

impl fmt::Debug for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v} mod {}", self.field.p),
            None => write!(f, "<undetermined> mod {}", self.field.p),
        }
    }
}

impl Scalar for ModP {
    fn add(&self, o: &Self) -> Self {
        if self.poisoned(o) {
            return self.with(POISON);
        }
        let p = self.field.p;
        let s = self.v + o.v;
        self.with(if s >= p { s - p } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        if self.poisoned(o) {
            return self.with(POISON);
        }
        let p = self.field.p;
        self.with(if self.v >= o.v { self.v - o.v } else { self.v + p - o.v })
    }
    fn mul(&self, o: &Self) -> Self {
        if self.poisoned(o) {
            return self.with(POISON);
        }
        self.with(mul_mod(self.v, o.v, self.field.p))
    }
    fn div(&self, o: &Self) -> Self {
        if self.poisoned(o) || o.v == 0 {
            return self.with(POISON);
        }
        let p = self.field.p;
        self.with(mul_mod(self.v, pow_mod(o.v, p - 2, p), p))
    }
    fn neg(&self) -> Self {
        if self.v == POISON || self.v == 0 {
            return *self;
        }
        self.with(self.field.p - self.v)
    }
    fn int(&self, n: i64) -> Self {
        let p = self.field.p as i128;
        self.with((n as i128).rem_euclid(p) as u64)
    }
    fn root(&self, r: RootOfUnity) -> Self {
        self.field.root(r)
    }
    fn zero_status(&self) -> Option<bool> {
        match self.v {
            POISON | 0 => None,
            _ => Some(false),
        }
    }
    fn vanishes(&self) -> bool {
        assert!(self.v != POISON, "residue of an undetermined value");
        self.v == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_has_primitive_root() {
        for l in [1u32, 2, 3, 8, 60, 120, 360] {
            let f = PrimeField::for_order(l);
            assert_eq!((f.p - 1) % l as u64, 0);
            let w = f.root(RootOfUnity::new(1, l));
            assert_eq!(w.pow(l as i64).value(), Some(1));
        }
    }

    #[test]
    fn image_respects_cyclotomic_relations() {
        let f = PrimeField::for_order(12);
        let z3 = f.root(RootOfUnity::new(1, 3));
        let s = z3.one().add(&z3).add(&z3.mul(&z3));
        assert_eq!(s.value(), Some(0));
        assert_eq!(s.zero_status(), None);
        let i = f.root(RootOfUnity::new(1, 4));
        assert_eq!(i.mul(&i).value(), f.elem(f.p - 1).value());
    }

    #[test]
    fn image_is_a_homomorphism() {
        let f = PrimeField::for_order(24);
        let a = CyclotomicNumber::root(5, 24) + CyclotomicNumber::from_integer(3);
        let b = CyclotomicNumber::root(1, 8) - CyclotomicNumber::root(2, 3);
        let ab = &a * &b;
        assert_eq!(f.image(&ab).value(), f.image(&a).mul(&f.image(&b)).value());
        let q = &a / &b;
        assert_eq!(f.image(&q).value(), f.image(&a).div(&f.image(&b)).value());
    }

    #[test]
    fn division_by_zero_image_poisons() {
        let f = PrimeField::for_order(6);
        let one = f.elem(1);
        let zero = f.elem(0);
        let x = one.div(&zero);
        assert_eq!(x.zero_status(), None);
        assert_eq!(x.add(&one).zero_status(), None);
    }
}
