use std::fmt;

use num_integer::Integer;

use super::CyclotomicNumber;

/// ζ_order^exponent in lowest terms: gcd(exponent, order) = 1 and
/// `order` is the multiplicative order. The identity is (0, 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    exponent: u32,
    order: u32,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity needs a positive order");
        let k = k.rem_euclid(n as i64) as u32;
        let g = k.gcd(&n);
        RootOfUnity {
            exponent: k / g,
            order: n / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity {
            exponent: 0,
            order: 1,
        }
    }

    pub fn minus_one() -> Self {
        RootOfUnity {
            exponent: 1,
            order: 2,
        }
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn is_one(self) -> bool {
        self.order == 1
    }

    pub fn mul(self, o: Self) -> Self {
        let n = self.order.lcm(&o.order);
        let k = self.exponent as u64 * (n / self.order) as u64
            + o.exponent as u64 * (n / o.order) as u64;
        Self::new((k % n as u64) as i64, n)
    }

    pub fn inv(self) -> Self {
        Self::new(-(self.exponent as i64), self.order)
    }

    pub fn neg(self) -> Self {
        self.mul(Self::minus_one())
    }

    pub fn pow(self, e: i64) -> Self {
        let n = self.order as i64;
        let k = (self.exponent as i64 * e.rem_euclid(n)).rem_euclid(n);
        Self::new(k, self.order)
    }

    pub fn to_cyclotomic(self) -> CyclotomicNumber {
        CyclotomicNumber::root(self.exponent as i64, self.order)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}:{}", self.order, self.exponent)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = RootOfUnity::new(6, 30);
        assert_eq!((r.exponent(), r.order()), (1, 5));
        assert_eq!(RootOfUnity::new(0, 7), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(-1, 4), RootOfUnity::new(3, 4));
    }

    #[test]
    fn group_law() {
        let a = RootOfUnity::new(1, 6);
        let b = RootOfUnity::new(1, 4);
        assert_eq!(a.mul(b), RootOfUnity::new(5, 12));
        assert!(a.mul(a.inv()).is_one());
        assert_eq!(RootOfUnity::new(1, 3).neg(), RootOfUnity::new(5, 6));
        assert_eq!(a.pow(3), RootOfUnity::minus_one());
    }

    #[test]
    fn round_trips_through_cyclotomic() {
        for n in 1..=24u32 {
            for k in 0..n {
                let r = RootOfUnity::new(k as i64, n);
                let c = r.to_cyclotomic();
                assert_eq!(c.root_order(), Some(r.order()));
                assert_eq!(c.as_root_of_unity(), Some(r));
            }
        }
    }
}
