//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A value is stored in the power basis 1, ζ_N, …, ζ_N^{φ(N)−1} as integer
//! numerators over one positive common denominator, always at its minimal
//! conductor. Keeping the representation canonical makes equality and hashing
//! plain structural comparisons.

mod literal;
mod root;
pub(crate) mod table;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use literal::parse_literal;
pub use root::RootOfUnity;
pub use table::{canonical_conductor, divisors, gcd, lcm, prime_factors, totient, TABLE_LIMIT};

use table::{table, Table};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Default bound on the conductor of any intermediate value.
pub const DEFAULT_CONDUCTOR_CEILING: u32 = 360;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {required} exceeds the ceiling {ceiling}")]
    ConductorCeiling { required: u64, ceiling: u32 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// An element of Q(ζ_N), reduced modulo Φ_N at its minimal conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        CyclotomicNumber {
            conductor: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        CyclotomicNumber {
            conductor: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
    }

    /// ζ_n^k at its minimal conductor n / gcd(n, k).
    pub fn root(k: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity needs a positive order");
        Self::from_terms(n, [(k, BigInt::one())], BigInt::one())
    }

    /// Σ c·ζ_n^e over the given terms, divided by `den`. Any n is accepted,
    /// including n ≡ 2 mod 4.
    pub fn from_terms(
        n: u32,
        terms: impl IntoIterator<Item = (i64, BigInt)>,
        den: BigInt,
    ) -> Self {
        let c = canonical_conductor(n);
        let mut acc = vec![BigInt::zero(); c as usize];
        for (e, coeff) in terms {
            let e = e.rem_euclid(n as i64) as u64;
            let (neg, k) = if c == n {
                (false, e)
            } else {
                // ζ_{2c}^e = (−1)^e ζ_c^{e(c+1)/2}
                (e % 2 == 1, e * (c as u64 + 1) / 2 % c as u64)
            };
            if neg {
                acc[k as usize] -= coeff;
            } else {
                acc[k as usize] += coeff;
            }
        }
        Self::from_group_ring(c, acc, den)
    }

    /// Builds a value from coefficients of powers of ζ_n with n canonical;
    /// `acc` may be longer than φ(n).
    fn from_group_ring(n: u32, acc: Vec<BigInt>, den: BigInt) -> Self {
        let t = table(n);
        let num = reduce(t, acc);
        Self::normalized(n, num, den)
    }

    /// Rational coefficients at conductor `conductor`, which must be canonical.
    pub fn from_coefficients(conductor: u32, coeffs: &[Rational]) -> Self {
        assert_eq!(
            conductor,
            canonical_conductor(conductor),
            "conductor must not be 2 mod 4"
        );
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let acc = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_group_ring(conductor, acc, den)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients at the minimal conductor; length φ(conductor).
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.den.is_one() && self.num[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Multiplicative order if this is a root of unity.
    pub fn root_order(&self) -> Option<u32> {
        if !self.den.is_one() {
            return None;
        }
        let v: Option<Vec<i64>> = self.num.iter().map(ToPrimitive::to_i64).collect();
        table(self.conductor).root_order(&v?)
    }

    /// Whether this is a primitive n-th root of unity.
    pub fn root_membership(&self, n: u32) -> bool {
        self.root_order() == Some(n)
    }

    /// The exponent form, when this is a root of unity.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let order = self.root_order()?;
        // ζ_order is primitive; find k with ζ_order^k equal to self
        (0..order)
            .filter(|k| table::gcd(*k, order) == 1 || order == 1)
            .map(|k| RootOfUnity::new(k as i64, order))
            .find(|r| &r.to_cyclotomic() == self)
    }

    /// The same value expressed at conductor `m`, a multiple of the conductor.
    /// Returns the numerators and common denominator.
    pub fn lift(&self, m: u32) -> (Vec<BigInt>, BigInt) {
        assert!(m % self.conductor == 0, "lift target must be a multiple");
        assert_eq!(m, canonical_conductor(m), "lift target must be canonical");
        if m == self.conductor {
            return (self.num.clone(), self.den.clone());
        }
        let step = (m / self.conductor) as usize;
        let t = table(m);
        let mut acc = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (j, c) in self.num.iter().enumerate() {
            acc[j * step] = c.clone();
        }
        (reduce(t, acc), self.den.clone())
    }

    /// Conductor, integer numerators and common denominator.
    pub(crate) fn raw(&self) -> (u32, &[BigInt], &BigInt) {
        (self.conductor, &self.num, &self.den)
    }

    /// Multiplication by a root of unity, done as a rotation of exponents.
    pub fn mul_root(&self, r: RootOfUnity) -> Self {
        if r.is_one() || self.is_zero() {
            return self.clone();
        }
        let n = table::lcm(self.conductor, r.order()) as u32;
        let step = (n / self.conductor) as i64;
        let shift = (r.exponent() * (n / r.order())) as i64;
        let terms = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as i64 * step + shift, c.clone()));
        Self::from_terms(n, terms, self.den.clone())
    }

    /// Rational coefficients of the value lifted to conductor `m`.
    pub fn lifted_coefficients(&self, m: u32) -> Vec<Rational> {
        let (num, den) = self.lift(m);
        num.into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect()
    }

    fn joint_conductor(&self, other: &Self, ceiling: u32) -> Result<u32, CycloError> {
        let m = table::lcm(self.conductor, other.conductor);
        if m > ceiling as u64 || m > TABLE_LIMIT as u64 {
            return Err(CycloError::ConductorCeiling {
                required: m,
                ceiling,
            });
        }
        Ok(m as u32)
    }

    pub fn checked_add(&self, other: &Self, ceiling: u32) -> Result<Self, CycloError> {
        self.linear(other, false, ceiling)
    }

    pub fn checked_sub(&self, other: &Self, ceiling: u32) -> Result<Self, CycloError> {
        self.linear(other, true, ceiling)
    }

    fn linear(&self, other: &Self, subtract: bool, ceiling: u32) -> Result<Self, CycloError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(if subtract { -other.clone() } else { other.clone() });
        }
        let m = self.joint_conductor(other, ceiling)?;
        let (a, da) = self.lift(m);
        let (b, db) = other.lift(m);
        let (num, den) = if da == db {
            let num = a
                .into_iter()
                .zip(b)
                .map(|(x, y)| if subtract { x - y } else { x + y })
                .collect();
            (num, da)
        } else {
            let num = a
                .iter()
                .zip(&b)
                .map(|(x, y)| {
                    if subtract {
                        x * &db - y * &da
                    } else {
                        x * &db + y * &da
                    }
                })
                .collect();
            (num, da * db)
        };
        Ok(Self::normalized(m, num, den))
    }

    pub fn checked_mul(&self, other: &Self, ceiling: u32) -> Result<Self, CycloError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if self.is_rational() && other.is_rational() {
            let num = &self.num[0] * &other.num[0];
            return Ok(Self::normalized(1, vec![num], &self.den * &other.den));
        }
        let m = self.joint_conductor(other, ceiling)?;
        let (a, da) = self.lift(m);
        let (b, db) = other.lift(m);
        let mut acc = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let t = table(m);
        Ok(Self::normalized(m, reduce(t, acc), da * db))
    }

    pub fn checked_div(&self, other: &Self, ceiling: u32) -> Result<Self, CycloError> {
        let inv = other.inverse()?;
        self.checked_mul(&inv, ceiling)
    }

    /// Multiplicative inverse as x⁻¹ = (∏_{σ≠1} σ(x)) / N(x).
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        if let Some(r) = self.as_root_of_unity() {
            return Ok(r.inv().to_cyclotomic());
        }
        let others = self.conjugates_except_identity();
        let norm = (self * &others)
            .to_rational()
            .expect("the norm is rational");
        Ok(&others * &Self::from_rational(&norm.recip()))
    }

    /// ∏ σ(x) over the nontrivial automorphisms σ of Q(ζ_N).
    ///
    /// The Galois group is a product of cyclic groups ⟨g⟩ of order m; over each
    /// factor ∏_{0<j<m} g^j(y) is assembled by doubling.
    fn conjugates_except_identity(&self) -> Self {
        let n = self.conductor;
        let mut excluded = Self::one();
        for (g, m) in table::unit_group_generators(n) {
            // y runs over the full product on the group generated so far
            let y = self * &excluded;
            excluded = &excluded * &nontrivial_orbit_product(&y, g, m);
        }
        excluded
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self
                .inverse()
                .expect("negative power of zero")
                .pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies the Galois automorphism ζ ↦ ζ^k, gcd(k, conductor) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let terms = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as i64 * k, c.clone()));
        Self::from_terms(n, terms, self.den.clone())
    }

    fn normalized(n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in &mut num {
                *c /= &g;
            }
            den /= &g;
        }
        minimize(n, num, den)
    }
}

/// Polynomial remainder modulo Φ_n; result has length φ(n).
fn reduce(t: &Table, mut acc: Vec<BigInt>) -> Vec<BigInt> {
    let phi = t.phi;
    if acc.len() > phi {
        for k in (phi..acc.len()).rev() {
            if acc[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut acc[k]);
            for &(i, p) in &t.poly_sparse {
                acc[k - phi + i] -= &c * p;
            }
        }
    }
    acc.resize(phi, BigInt::zero());
    acc
}

/// Moves a reduced value at canonical conductor n down to its minimal conductor.
fn minimize(mut n: u32, mut num: Vec<BigInt>, den: BigInt) -> CyclotomicNumber {
    'outer: while n > 1 {
        for l in prime_factors(n) {
            let m = n / l;
            if m % l == 0 || l == 2 {
                // Φ_n(x) = Φ_m(x^l): membership in Q(ζ_m) is a support condition.
                if num.iter().enumerate().any(|(j, c)| j % l as usize != 0 && !c.is_zero()) {
                    continue;
                }
                let sub: Vec<BigInt> = num.iter().step_by(l as usize).cloned().collect();
                let (m2, sub) = if m % 4 == 2 { halve(m, sub) } else { (m, sub) };
                n = m2;
                num = sub;
                continue 'outer;
            }
            if let Some(sub) = descend_coprime(n, l, &num) {
                n = m;
                num = sub;
                continue 'outer;
            }
        }
        break;
    }
    CyclotomicNumber {
        conductor: n,
        num,
        den,
    }
}

/// Re-expresses coefficients at conductor m ≡ 2 mod 4 at conductor m/2.
fn halve(m: u32, coeffs: Vec<BigInt>) -> (u32, Vec<BigInt>) {
    let c = m / 2;
    let mut acc = vec![BigInt::zero(); c as usize];
    for (e, coeff) in coeffs.into_iter().enumerate() {
        let k = (e as u64 * (c as u64 + 1) / 2 % c as u64) as usize;
        if e % 2 == 1 {
            acc[k] -= coeff;
        } else {
            acc[k] += coeff;
        }
    }
    (c, reduce(table(c), acc))
}

/// For n = l·m with l an odd prime not dividing m, writes the value as
/// Σ_b ζ_l^b X_b with X_b ∈ Q(ζ_m) and tests whether it lies in Q(ζ_m).
fn descend_coprime(n: u32, l: u32, num: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = n / l;
    // 1 = s·l + t·m gives ζ_n = ζ_m^s ζ_l^t
    let g = (l as i64).extended_gcd(&(m as i64));
    let s = g.x.rem_euclid(m as i64) as u64;
    let t = g.y.rem_euclid(l as i64) as u64;
    let mut parts = vec![vec![BigInt::zero(); m as usize]; l as usize];
    for (j, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = (j as u64 * s % m as u64) as usize;
        let b = (j as u64 * t % l as u64) as usize;
        parts[b][a] += c;
    }
    let tm = table(m);
    let last = reduce(tm, parts[l as usize - 1].clone());
    for part in &parts[1..l as usize - 1] {
        if reduce(tm, part.clone()) != last {
            return None;
        }
    }
    let first = reduce(tm, parts[0].clone());
    Some(first.into_iter().zip(last).map(|(x, y)| x - y).collect())
}

/// ∏_{0<j<m} g^j(y), with O(log m) multiplications.
fn nontrivial_orbit_product(y: &CyclotomicNumber, g: i64, m: u32) -> CyclotomicNumber {
    // full = ∏_{j<k} g^j(y), part = ∏_{0<j<k} g^j(y), gk = g^k
    let mut full = y.clone();
    let mut part = CyclotomicNumber::one();
    let mut k = 1u32;
    let mut gk = g;
    let n = y.conductor.max(1) as i64;
    for bit in (0..31 - m.leading_zeros()).rev() {
        let shifted = full.galois(gk);
        part = &part * &shifted;
        full = &full * &shifted;
        k *= 2;
        gk = gk * gk % n;
        if (m >> bit) & 1 == 1 {
            let shifted = y.galois(gk);
            part = &part * &shifted;
            full = &full * &shifted;
            k += 1;
            gk = gk * g % n;
        }
    }
    debug_assert_eq!(k, m);
    part
}

impl Default for CyclotomicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

impl From<RootOfUnity> for CyclotomicNumber {
    fn from(r: RootOfUnity) -> Self {
        r.to_cyclotomic()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs, DEFAULT_CONDUCTOR_CEILING)
                    .unwrap_or_else(|e| panic!("cyclotomic {}: {e}", stringify!($f)))
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$f(rhs)
            }
        }
        impl $tr<CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$f(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(mut self) -> CyclotomicNumber {
        for c in &mut self.num {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -self.clone()
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        if let Some(r) = self.as_root_of_unity() {
            return write!(f, "{r}");
        }
        write!(f, "cyc{}[", self.conductor)?;
        for (i, c) in self.coefficients().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64, n: u32) -> CyclotomicNumber {
        CyclotomicNumber::root(k, n)
    }

    #[test]
    fn roots_reduce_to_minimal_conductor() {
        assert!(z(0, 5).is_one());
        assert_eq!(z(4, 8), CyclotomicNumber::from_integer(-1));
        let m = z(3, 6);
        assert_eq!(m.conductor(), 1);
        assert_eq!(m, CyclotomicNumber::from_integer(-1));
        assert_eq!(z(2, 8), z(1, 4));
        assert_eq!(z(1, 6).conductor(), 3);
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(z(1, 3) + z(2, 3), CyclotomicNumber::from_integer(-1));
        assert_eq!(z(1, 8) * z(1, 8), z(1, 4));
        let one = CyclotomicNumber::one();
        let a = &one - &z(1, 5);
        assert!((&a / &a).is_one());
        assert!((one.clone() + z(1, 3) + z(2, 3)).is_zero());
        assert!(!(one + z(1, 4)).is_zero());
    }

    #[test]
    fn mixed_conductors_collapse() {
        // ζ_12 · ζ_12^{-1} crosses through conductor 12 back to 1
        let a = z(1, 12) * z(-1, 12);
        assert!(a.is_one());
        // ζ_3 · ζ_4 = ζ_12^7
        assert_eq!(z(1, 3) * z(1, 4), z(7, 12));
        // √-3 = ζ_3 − ζ_3^2 lives in Q(ζ_3) even when built at conductor 12
        let s = z(4, 12) - z(8, 12);
        assert_eq!(s.conductor(), 3);
    }

    #[test]
    fn root_orders() {
        assert_eq!(CyclotomicNumber::from_integer(-1).root_order(), Some(2));
        assert_eq!(z(6, 30).root_order(), Some(5));
        assert_eq!(CyclotomicNumber::from_integer(2).root_order(), None);
        let w = CyclotomicNumber::one() + z(1, 3);
        assert_eq!(w.root_order(), Some(6));
        assert!(z(2, 8).root_membership(4));
        assert!(CyclotomicNumber::from_integer(-1).root_membership(2));
    }

    #[test]
    fn inverse_of_sum() {
        let a = CyclotomicNumber::from_integer(2) + z(1, 7);
        let b = a.inverse().unwrap();
        assert!((a * b).is_one());
        assert_eq!(
            CyclotomicNumber::zero().inverse(),
            Err(CycloError::DivisionByZero)
        );
    }

    #[test]
    fn inverse_in_large_conductors() {
        for n in [8u32, 9, 12, 15, 16, 45, 120, 360] {
            let a = &(&CyclotomicNumber::from_integer(3) + &z(1, n)) - &z(5, n).pow(2);
            let b = a.inverse().unwrap();
            assert!((&a * &b).is_one(), "conductor {n}");
        }
        assert_eq!(z(3, 8).inverse().unwrap(), z(5, 8));
    }

    #[test]
    fn unit_groups_are_generated() {
        for n in [3u32, 4, 8, 9, 12, 16, 20, 45, 120, 360] {
            let gens = table::unit_group_generators(n);
            let size: u32 = gens.iter().map(|g| g.1).product();
            assert_eq!(size, totient(n), "n = {n}");
            let mut reached = std::collections::BTreeSet::from([1i64]);
            for (g, m) in gens {
                let old: Vec<i64> = reached.iter().copied().collect();
                for x in old {
                    let mut y = x;
                    for _ in 0..m {
                        y = y * g % n as i64;
                        reached.insert(y);
                    }
                }
            }
            assert_eq!(reached.len() as u32, totient(n), "n = {n}");
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let a = z(1, 7);
        let b = z(1, 11);
        assert!(matches!(
            a.checked_mul(&b, 60),
            Err(CycloError::ConductorCeiling { required: 77, .. })
        ));
    }
}
