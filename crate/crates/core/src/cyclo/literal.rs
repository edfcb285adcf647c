//! Text literals (`zN:k`, `r/s`, `cycN[c0,c1,...]`) and the JSON form
//! `{"conductor": N, "coeffs": ["r/s", ...]}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycloError, CyclotomicNumber, Rational};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, CycloError> {
        Err(CycloError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CycloError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn digits(&mut self) -> Result<&'a str, CycloError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(&self.text[start..self.pos])
    }

    fn integer(&mut self) -> Result<BigInt, CycloError> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let d: BigInt = self.digits()?.parse().expect("digit string");
        Ok(if neg { -d } else { d })
    }

    fn small(&mut self) -> Result<i64, CycloError> {
        let at = self.pos;
        let v = self.integer()?;
        i64::try_from(v).or_else(|_| {
            self.pos = at;
            self.err("integer out of range")
        })
    }

    fn order(&mut self) -> Result<u32, CycloError> {
        let at = self.pos;
        let n: u32 = self.digits()?.parse().or_else(|_| {
            self.pos = at;
            self.err("order out of range")
        })?;
        if n == 0 || n > super::TABLE_LIMIT {
            self.pos = at;
            return self.err(format!("order must lie in 1..={}", super::TABLE_LIMIT));
        }
        Ok(n)
    }

    fn rational(&mut self) -> Result<Rational, CycloError> {
        let n = self.integer()?;
        if self.eat('/') {
            let at = self.pos;
            let d: BigInt = self.digits()?.parse().expect("digit string");
            if d == BigInt::from(0) {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }
}

/// Parses `zN:k` (ζ_N^k), `r/s` (a rational) or `cycN[c0,...]` (Σ c_i ζ_N^i).
pub fn parse_literal(text: &str) -> Result<CyclotomicNumber, CycloError> {
    let mut cur = Cursor { text, pos: 0 };
    let value = if cur.text.starts_with("cyc") {
        cur.pos = 3;
        let n = cur.order()?;
        cur.expect('[')?;
        let mut coeffs = Vec::new();
        if !cur.eat(']') {
            loop {
                coeffs.push(cur.rational()?);
                if cur.eat(']') {
                    break;
                }
                cur.expect(',')?;
            }
        }
        from_power_coefficients(n, &coeffs)
    } else if cur.eat('z') {
        let n = cur.order()?;
        cur.expect(':')?;
        let k = cur.small()?;
        CyclotomicNumber::root(k, n)
    } else {
        CyclotomicNumber::from_rational(&cur.rational()?)
    };
    if cur.pos != text.len() {
        return cur.err("unexpected trailing input");
    }
    Ok(value)
}

/// Σ c_i ζ_n^i for any n ≥ 1.
pub(crate) fn from_power_coefficients(n: u32, coeffs: &[Rational]) -> CyclotomicNumber {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (i as i64, c.numer() * (&den / c.denom())))
        .collect::<Vec<_>>();
    CyclotomicNumber::from_terms(n, terms, den)
}

impl std::str::FromStr for CyclotomicNumber {
    type Err = CycloError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literal(s)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonForm {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonForm {
            conductor: self.conductor(),
            coeffs: self.coefficients().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let form = JsonForm::deserialize(d)?;
        if form.conductor == 0 || form.conductor > super::TABLE_LIMIT {
            return Err(D::Error::custom("conductor out of range"));
        }
        let coeffs = form
            .coeffs
            .iter()
            .map(|c| {
                let mut cur = Cursor { text: c, pos: 0 };
                let r = cur.rational()?;
                if cur.pos != c.len() {
                    return cur.err("unexpected trailing input");
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>, CycloError>>()
            .map_err(D::Error::custom)?;
        Ok(from_power_coefficients(form.conductor, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_forms() {
        assert_eq!(parse_literal("z8:3").unwrap(), CyclotomicNumber::root(3, 8));
        let expected = CyclotomicNumber::from_rational(&Rational::new(1.into(), 2.into()))
            - CyclotomicNumber::root(2, 12);
        assert_eq!(parse_literal("cyc12[1/2,0,-1,0]").unwrap(), expected);
        assert_eq!(
            parse_literal("-3/6").unwrap(),
            CyclotomicNumber::from_rational(&Rational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_literal("z1:0").unwrap(), CyclotomicNumber::one());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_literal("z8;3") {
            Err(CycloError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_literal("cyc5[1,2").is_err());
        assert!(parse_literal("z0:1").is_err());
        assert!(parse_literal("1/0").is_err());
        assert!(parse_literal("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["z8:3", "cyc15[1,2/3,0,-1]", "7/2", "z6:1"] {
            let v = parse_literal(text).unwrap();
            assert_eq!(parse_literal(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn json_form() {
        let v = parse_literal("z4:1").unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"conductor":4,"coeffs":["0","1"]}"#);
        let back: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
