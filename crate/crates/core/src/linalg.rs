//! Row-echelon profiles of matrices over Q(ζ_N).
//!
//! The exact path is fraction-free (Bareiss) elimination: after k pivot steps
//! every live entry is a (k+1)-minor, so the division by the previous pivot is
//! exact and entries stay algebraic integers when the input is. Pivots are the
//! first nonzero entry of the current column in row order.
//!
//! A prime-field image is tried first. Its rank r is a lower bound, witnessed
//! by an r×r minor that is nonzero mod p and hence nonzero. When r equals the
//! smaller matrix dimension that bound is the rank and the exact pass is skipped.

use crate::cyclo::CyclotomicNumber;
use crate::scalar::{ModP, PrimeField, Scalar};

/// Rank together with the rows and columns of a nonsingular maximal minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Exact fraction-free elimination.
pub fn fraction_free_echelon(mat: &[Vec<CyclotomicNumber>]) -> Echelon {
    let ncols = mat.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<CyclotomicNumber>> = mat.to_vec();
    let mut live: Vec<usize> = (0..rows.len()).collect();
    let mut prev_inv = CyclotomicNumber::one();
    let mut out = Echelon {
        rank: 0,
        pivot_rows: Vec::new(),
        pivot_cols: Vec::new(),
    };
    for col in 0..ncols {
        let Some(pos) = live.iter().position(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        let p = live.remove(pos);
        let pivot_row = std::mem::take(&mut rows[p]);
        let pivot = pivot_row[col].clone();
        for &r in &live {
            let lead = rows[r][col].clone();
            let row = &mut rows[r];
            for j in col + 1..ncols {
                let mut v = &pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&lead * &pivot_row[j]);
                }
                row[j] = &v * &prev_inv;
            }
            row[col] = CyclotomicNumber::zero();
        }
        prev_inv = pivot.inverse().expect("pivot is nonzero");
        rows[p] = pivot_row;
        out.rank += 1;
        out.pivot_rows.push(p);
        out.pivot_cols.push(col);
        if live.is_empty() {
            break;
        }
    }
    out
}

/// Gaussian elimination in F_p. Poisoned entries must not occur.
pub fn modular_echelon(mat: &[Vec<ModP>]) -> Echelon {
    let ncols = mat.first().map_or(0, Vec::len);
    let mut rows = mat.to_vec();
    let mut live: Vec<usize> = (0..rows.len()).collect();
    let mut out = Echelon {
        rank: 0,
        pivot_rows: Vec::new(),
        pivot_cols: Vec::new(),
    };
    for col in 0..ncols {
        let Some(pos) = live
            .iter()
            .position(|&r| rows[r][col].value().expect("unpoisoned") != 0)
        else {
            continue;
        };
        let p = live.remove(pos);
        let inv = rows[p][col].inv();
        let pivot_row: Vec<ModP> = rows[p].iter().map(|x| x.mul(&inv)).collect();
        for &r in &live {
            let lead = rows[r][col];
            if lead.value() == Some(0) {
                continue;
            }
            for j in col..ncols {
                rows[r][j] = rows[r][j].sub(&lead.mul(&pivot_row[j]));
            }
        }
        rows[p] = pivot_row;
        out.rank += 1;
        out.pivot_rows.push(p);
        out.pivot_cols.push(col);
        if live.is_empty() {
            break;
        }
    }
    out
}

/// Echelon profile with the certified modular shortcut. `field` must contain
/// the conductors of all entries.
pub fn echelon(mat: &[Vec<CyclotomicNumber>], field: &'static PrimeField) -> Echelon {
    let nrows = mat.len();
    let ncols = mat.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Echelon {
            rank: 0,
            pivot_rows: Vec::new(),
            pivot_cols: Vec::new(),
        };
    }
    let image: Option<Vec<Vec<ModP>>> = mat
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let v = field.image(x);
                    v.value().map(|_| v)
                })
                .collect()
        })
        .collect();
    if let Some(image) = image {
        let e = modular_echelon(&image);
        if e.rank == nrows.min(ncols) {
            return e;
        }
    }
    fraction_free_echelon(mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    #[test]
    fn integer_ranks() {
        let m = vec![
            vec![c(1), c(2), c(3)],
            vec![c(2), c(4), c(6)],
            vec![c(1), c(0), c(1)],
        ];
        let e = fraction_free_echelon(&m);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivot_rows, vec![0, 2]);
        assert_eq!(e.pivot_cols, vec![0, 1]);
        assert_eq!(echelon(&m, PrimeField::for_order(2)).rank, 2);
    }

    #[test]
    fn cyclotomic_rank_drop() {
        // rows (1, ζ) and (ζ², ζ³) are proportional
        let z = |k| CyclotomicNumber::root(k, 5);
        let m = vec![vec![z(0), z(1)], vec![z(2), z(3)]];
        assert_eq!(fraction_free_echelon(&m).rank, 1);
        assert_eq!(echelon(&m, PrimeField::for_order(10)).rank, 1);
        let m = vec![vec![z(0), z(1)], vec![z(2), z(4)]];
        assert_eq!(echelon(&m, PrimeField::for_order(10)).rank, 2);
    }

    #[test]
    fn skipped_columns_keep_divisions_exact() {
        let m = vec![
            vec![c(0), c(2), c(4), c(1)],
            vec![c(0), c(3), c(6), c(5)],
            vec![c(0), c(1), c(2), c(7)],
        ];
        let e = fraction_free_echelon(&m);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivot_cols, vec![1, 3]);
    }
}
