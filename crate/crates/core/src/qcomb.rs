//! q-integers, q-factorials and q-binomial coefficients.

use thiserror::Error;

use crate::cyclo::CyclotomicNumber;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcombError {
    #[error("q-binomial index out of range: j = {j} > i = {i}")]
    IndexError { i: usize, j: usize },
}

/// (i)_p = 1 + p + ... + p^{i-1}.
pub fn q_int<S: Scalar>(i: usize, p: &S) -> S {
    let mut acc = p.int(0);
    let mut pw = p.one();
    for _ in 0..i {
        acc = acc.add(&pw);
        pw = pw.mul(p);
    }
    acc
}

/// (i)!_p = (1)_p (2)_p ... (i)_p.
pub fn q_fact<S: Scalar>(i: usize, p: &S) -> S {
    (1..=i).fold(p.one(), |acc, k| acc.mul(&q_int(k, p)))
}

/// The q-binomial coefficient, built row by row from the q-Pascal rule
/// binom(i,j) = binom(i-1,j-1) + p^j binom(i-1,j). Defined even where the
/// factorial quotient degenerates to 0/0.
pub fn q_binom<S: Scalar>(i: usize, j: usize, p: &S) -> Result<S, QcombError> {
    if j > i {
        return Err(QcombError::IndexError { i, j });
    }
    let powers: Vec<S> = std::iter::successors(Some(p.one()), |x| Some(x.mul(p)))
        .take(j + 1)
        .collect();
    let mut row = vec![p.one()];
    for n in 1..=i {
        let mut next = Vec::with_capacity(n + 1);
        next.push(p.one());
        for k in 1..n.min(j + 1) {
            next.push(row[k - 1].add(&powers[k].mul(&row[k])));
        }
        if n <= j {
            next.push(p.one());
        }
        row = next;
    }
    Ok(row.swap_remove(j))
}

/// The symbol p of (i)_p, (i)!_p and binom(i, j)_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QValue(pub CyclotomicNumber);

impl QValue {
    pub fn int(&self, i: usize) -> CyclotomicNumber {
        q_int(i, &self.0)
    }

    pub fn fact(&self, i: usize) -> CyclotomicNumber {
        q_fact(i, &self.0)
    }

    pub fn binom(&self, i: usize, j: usize) -> Result<CyclotomicNumber, QcombError> {
        q_binom(i, j, &self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(3, &c(1)), c(3));
        assert!(q_int(2, &c(-1)).is_zero());
        assert!(q_int(4, &CyclotomicNumber::root(1, 4)).is_zero());
        assert!(q_int(0, &CyclotomicNumber::root(1, 7)).is_zero());
    }

    #[test]
    fn q_fact_values() {
        assert!(q_fact(0, &c(5)).is_one());
        assert_eq!(q_fact(3, &c(1)), c(6));
        for n in 2..=12u32 {
            assert!(q_fact(n as usize, &CyclotomicNumber::root(1, n)).is_zero());
        }
    }

    #[test]
    fn q_binom_values() {
        let q = CyclotomicNumber::root(1, 9);
        assert_eq!(q_binom(2, 1, &q).unwrap(), &c(1) + &q);
        assert_eq!(q_binom(4, 2, &c(1)).unwrap(), c(6));
        assert_eq!(
            q_binom(2, 3, &q),
            Err(QcombError::IndexError { i: 2, j: 3 })
        );
        // at p = i the factorial quotient is 0/0
        let i = CyclotomicNumber::root(1, 4);
        let v = q_binom(4, 2, &i).unwrap();
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let expected = &(&(&c(1) + &i) + &(&c(2) * &i.pow(2))) + &(&i.pow(3) + &i.pow(4));
        assert_eq!(v, expected);
    }
}
