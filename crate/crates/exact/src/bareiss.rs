//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Scalar;
use crate::sparse::SparseMatrix;

/// Rank of an integer matrix by Bareiss elimination. Every intermediate
/// entry is a minor of the input, so division is always exact.
pub fn rank_integer(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v.div_floor(&prev);
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational sparse matrix: each row is scaled by the lcm of its
/// denominators and the integer matrix is eliminated fraction-free.
pub fn rank_rational(m: &SparseMatrix) -> usize {
    let dense: Vec<Vec<BigInt>> = m
        .rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, (_, x)| match x {
                Scalar::Rat(r) => acc.lcm(r.denom()),
                _ => panic!("rank_rational needs rational entries"),
            });
            let mut out = vec![BigInt::zero(); m.ncols];
            for (j, x) in row {
                if let Scalar::Rat(r) = x {
                    out[*j] = (r * BigRational::from_integer(l.clone())).to_integer();
                }
            }
            out
        })
        .collect();
    rank_integer(dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(rank_integer(vec![b(&[1, 2]), b(&[2, 4])]), 1);
        assert_eq!(rank_integer(vec![b(&[0, 1]), b(&[1, 0])]), 2);
        assert_eq!(rank_integer(vec![b(&[2, 3, 5]), b(&[4, 6, 10]), b(&[1, 1, 1])]), 2);
    }
}
