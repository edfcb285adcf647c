//! Rank-two diagonal braidings and the bicharacter χ on Z².

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{parse_literal, CycloError, CyclotomicNumber, RootOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error("braiding entry {0} is zero")]
    ZeroEntry(&'static str),
    #[error("entry {entry}: {source}")]
    Literal {
        entry: &'static str,
        #[source]
        source: CycloError,
    },
}

/// An element a·e_1 + b·e_2 of N_0².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct MultiDegree {
    pub a: u32,
    pub b: u32,
}

impl MultiDegree {
    pub const E1: MultiDegree = MultiDegree { a: 1, b: 0 };
    pub const E2: MultiDegree = MultiDegree { a: 0, b: 1 };

    pub fn new(a: u32, b: u32) -> Self {
        MultiDegree { a, b }
    }

    pub fn total(self) -> u32 {
        self.a + self.b
    }

    pub fn scale(self, k: u32) -> Self {
        MultiDegree::new(self.a * k, self.b * k)
    }

    pub fn signed(self) -> GroupDegree {
        GroupDegree(self.a as i64, self.b as i64)
    }

    pub fn checked_sub(self, o: MultiDegree) -> Option<MultiDegree> {
        Some(MultiDegree::new(self.a.checked_sub(o.a)?, self.b.checked_sub(o.b)?))
    }

    pub fn swapped(self) -> Self {
        MultiDegree::new(self.b, self.a)
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, o: MultiDegree) -> MultiDegree {
        MultiDegree::new(self.a + o.a, self.b + o.b)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// An element of Z², standing for g_1^a g_2^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupDegree(pub i64, pub i64);

impl Add for GroupDegree {
    type Output = GroupDegree;
    fn add(self, o: GroupDegree) -> GroupDegree {
        GroupDegree(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for GroupDegree {
    type Output = GroupDegree;
    fn sub(self, o: GroupDegree) -> GroupDegree {
        GroupDegree(self.0 - o.0, self.1 - o.1)
    }
}

impl std::ops::Neg for GroupDegree {
    type Output = GroupDegree;
    fn neg(self) -> GroupDegree {
        GroupDegree(-self.0, -self.1)
    }
}

impl From<MultiDegree> for GroupDegree {
    fn from(d: MultiDegree) -> Self {
        d.signed()
    }
}

/// The braiding matrix (q_ij) with respect to a canonical basis x_1, x_2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiagonalBraiding {
    q: [CyclotomicNumber; 4],
    roots: Option<[RootOfUnity; 4]>,
}

impl DiagonalBraiding {
    pub fn new(
        q11: CyclotomicNumber,
        q12: CyclotomicNumber,
        q21: CyclotomicNumber,
        q22: CyclotomicNumber,
    ) -> Result<Self, BraidingError> {
        let q = [q11, q12, q21, q22];
        for (v, name) in q.iter().zip(ENTRY_NAMES) {
            if v.is_zero() {
                return Err(BraidingError::ZeroEntry(name));
            }
        }
        let roots = q
            .iter()
            .map(CyclotomicNumber::as_root_of_unity)
            .collect::<Option<Vec<_>>>()
            .map(|v| [v[0], v[1], v[2], v[3]]);
        Ok(DiagonalBraiding { q, roots })
    }

    pub fn from_roots(q11: RootOfUnity, q12: RootOfUnity, q21: RootOfUnity, q22: RootOfUnity) -> Self {
        let roots = [q11, q12, q21, q22];
        DiagonalBraiding {
            q: roots.map(RootOfUnity::to_cyclotomic),
            roots: Some(roots),
        }
    }

    /// Parses the four entries from the literal grammar.
    pub fn parse(q11: &str, q12: &str, q21: &str, q22: &str) -> Result<Self, BraidingError> {
        let parse = |text: &str, entry: &'static str| {
            parse_literal(text).map_err(|source| BraidingError::Literal { entry, source })
        };
        Self::new(
            parse(q11, "q11")?,
            parse(q12, "q12")?,
            parse(q21, "q21")?,
            parse(q22, "q22")?,
        )
    }

    /// The representative (q11, r, 1, q22) of a twist class.
    pub fn from_twist_class(tc: &TwistClass) -> Result<Self, BraidingError> {
        Self::new(
            tc.q11.clone(),
            tc.q12q21.clone(),
            CyclotomicNumber::one(),
            tc.q22.clone(),
        )
    }

    pub fn q(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.q[2 * (i - 1) + (j - 1)]
    }

    pub fn q11(&self) -> &CyclotomicNumber {
        &self.q[0]
    }
    pub fn q12(&self) -> &CyclotomicNumber {
        &self.q[1]
    }
    pub fn q21(&self) -> &CyclotomicNumber {
        &self.q[2]
    }
    pub fn q22(&self) -> &CyclotomicNumber {
        &self.q[3]
    }

    /// Entries as roots of unity, when all four are.
    pub fn roots(&self) -> Option<[RootOfUnity; 4]> {
        self.roots
    }

    /// Order of the group generated by the entries, when all are roots of unity.
    pub fn root_order(&self) -> Option<u32> {
        self.roots.map(|r| {
            r.iter()
                .fold(1u64, |acc, x| num_integer::lcm(acc, x.order() as u64)) as u32
        })
    }

    /// χ(α, β) on signed degrees.
    pub fn chi_signed(&self, alpha: GroupDegree, beta: GroupDegree) -> CyclotomicNumber {
        let e = [
            alpha.0 * beta.0,
            alpha.0 * beta.1,
            alpha.1 * beta.0,
            alpha.1 * beta.1,
        ];
        if let Some(r) = self.chi_root_signed(alpha, beta) {
            return r.to_cyclotomic();
        }
        self.q
            .iter()
            .zip(e)
            .filter(|(_, k)| *k != 0)
            .fold(CyclotomicNumber::one(), |acc, (q, k)| &acc * &q.pow(k))
    }

    /// χ(α, β) as a root of unity, when the entries are roots of unity.
    pub fn chi_root_signed(&self, alpha: GroupDegree, beta: GroupDegree) -> Option<RootOfUnity> {
        let r = self.roots?;
        let e = [
            alpha.0 * beta.0,
            alpha.0 * beta.1,
            alpha.1 * beta.0,
            alpha.1 * beta.1,
        ];
        Some(
            r.iter()
                .zip(e)
                .fold(RootOfUnity::one(), |acc, (q, k)| acc.mul(q.pow(k))),
        )
    }

    pub fn chi(&self, alpha: MultiDegree, beta: MultiDegree) -> CyclotomicNumber {
        self.chi_signed(alpha.signed(), beta.signed())
    }

    pub fn chi_root(&self, alpha: MultiDegree, beta: MultiDegree) -> Option<RootOfUnity> {
        self.chi_root_signed(alpha.signed(), beta.signed())
    }

    /// Exchanges x_1 and x_2.
    pub fn swap_basis(&self) -> DiagonalBraiding {
        let [a, b, c, d] = self.q.clone();
        DiagonalBraiding {
            q: [d, c, b, a],
            roots: self.roots.map(|[a, b, c, d]| [d, c, b, a]),
        }
    }

    pub fn twist_class(&self) -> TwistClass {
        TwistClass {
            q11: self.q[0].clone(),
            q12q21: &self.q[1] * &self.q[2],
            q22: self.q[3].clone(),
        }
    }
}

const ENTRY_NAMES: [&str; 4] = ["q11", "q12", "q21", "q22"];

impl fmt::Debug for DiagonalBraiding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.q[0], self.q[1], self.q[2], self.q[3]
        )
    }
}

#[derive(Serialize, Deserialize)]
struct BraidingDoc {
    q11: String,
    q12: String,
    q21: String,
    q22: String,
}

impl Serialize for DiagonalBraiding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BraidingDoc {
            q11: self.q[0].to_string(),
            q12: self.q[1].to_string(),
            q21: self.q[2].to_string(),
            q22: self.q[3].to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalBraiding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = BraidingDoc::deserialize(d)?;
        DiagonalBraiding::parse(&doc.q11, &doc.q12, &doc.q21, &doc.q22)
            .map_err(serde::de::Error::custom)
    }
}

/// The triple (q11, q12·q21, q22).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistClass {
    pub q11: CyclotomicNumber,
    pub q12q21: CyclotomicNumber,
    pub q22: CyclotomicNumber,
}

impl TwistClass {
    pub fn new(q11: CyclotomicNumber, q12q21: CyclotomicNumber, q22: CyclotomicNumber) -> Self {
        TwistClass { q11, q12q21, q22 }
    }

    pub fn from_roots(q11: RootOfUnity, r: RootOfUnity, q22: RootOfUnity) -> Self {
        TwistClass::new(q11.to_cyclotomic(), r.to_cyclotomic(), q22.to_cyclotomic())
    }

    pub fn swapped(&self) -> TwistClass {
        TwistClass::new(self.q22.clone(), self.q12q21.clone(), self.q11.clone())
    }

    /// The entries as roots of unity, when they are.
    pub fn roots(&self) -> Option<[RootOfUnity; 3]> {
        Some([
            self.q11.as_root_of_unity()?,
            self.q12q21.as_root_of_unity()?,
            self.q22.as_root_of_unity()?,
        ])
    }
}

impl fmt::Display for TwistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.q11, self.q12q21, self.q22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64, n: u32) -> CyclotomicNumber {
        CyclotomicNumber::root(k, n)
    }

    #[test]
    fn chi_on_basis_vectors() {
        let br = DiagonalBraiding::new(z(1, 5), z(2, 7), z(1, 3), z(3, 8)).unwrap();
        assert_eq!(br.chi(MultiDegree::E1, MultiDegree::E1), z(1, 5));
        assert_eq!(br.chi(MultiDegree::E1, MultiDegree::E2), z(2, 7));
        assert_eq!(br.chi(MultiDegree::E2, MultiDegree::E1), z(1, 3));
        assert_eq!(br.chi(MultiDegree::E2, MultiDegree::E2), z(3, 8));
    }

    #[test]
    fn chi_agrees_on_generic_entries() {
        let two = CyclotomicNumber::from_integer(2);
        let br = DiagonalBraiding::new(two.clone(), z(1, 3), two.clone(), z(1, 4)).unwrap();
        let v = br.chi(MultiDegree::new(2, 1), MultiDegree::new(1, 1));
        // q11^2 q12^2 q21 q22
        let expected = &(&(&two.pow(2) * &z(2, 3)) * &two) * &z(1, 4);
        assert_eq!(v, expected);
    }

    #[test]
    fn zero_entries_rejected() {
        let r = DiagonalBraiding::new(
            CyclotomicNumber::zero(),
            z(0, 1),
            z(0, 1),
            z(0, 1),
        );
        assert_eq!(r, Err(BraidingError::ZeroEntry("q11")));
    }

    #[test]
    fn swap_and_twist_class() {
        let br = DiagonalBraiding::new(z(1, 3), z(1, 5), z(-1, 5), z(1, 2)).unwrap();
        let tc = br.twist_class();
        assert_eq!(tc, TwistClass::new(z(1, 3), z(0, 1), z(1, 2)));
        let sw = br.swap_basis();
        assert_eq!(sw.q11(), &z(1, 2));
        assert_eq!(sw.q12(), &z(-1, 5));
        assert_eq!(sw.swap_basis(), br);
    }

    #[test]
    fn braiding_json() {
        let br = DiagonalBraiding::parse("z8:2", "z8:1", "1", "z8:7").unwrap();
        let s = serde_json::to_string(&br).unwrap();
        assert_eq!(s, r#"{"q11":"z4:1","q12":"z8:1","q21":"1","q22":"z8:7"}"#);
        let back: DiagonalBraiding = serde_json::from_str(&s).unwrap();
        assert_eq!(back, br);
    }
}
