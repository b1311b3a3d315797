//! Fraction-free elimination over ℚ(i).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::Scalar;

/// Multiplies each row by the lcm of its denominators so every entry is a Gaussian integer.
fn clear_denominators(rows: &mut [Vec<Scalar>]) {
    for row in rows {
        let l = row.iter().fold(BigInt::one(), |acc, e| {
            acc.lcm(e.re.denom()).lcm(e.im.denom())
        });
        let factor = BigRational::from_integer(l);
        for e in row.iter_mut() {
            *e = Scalar::new(&e.re * &factor, &e.im * &factor);
        }
    }
}

/// Rank by Bareiss elimination: row i becomes (p·row_i − a·row_r)/p_prev. The
/// coefficient of row_i is a nonzero pivot, so rank is preserved, and dividing by
/// the previous pivot keeps the entries from growing.
pub fn exact_rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    clear_denominators(&mut a);
    let mut prev = Scalar::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for i in r + 1..rows {
            let lead = a[i][col].clone();
            for j in col + 1..cols {
                let v = (a[r][col].clone() * a[i][j].clone() - lead.clone() * a[r][j].clone()) / prev.clone();
                a[i][j] = v;
            }
            a[i][col] = Scalar::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{from_int, gaussian, rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| from_int(v)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(exact_rank(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), 3);
        assert_eq!(exact_rank(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(exact_rank(m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])), 2);
        // (1 + i)·(1 − i) = 2, so these rows are proportional over ℚ(i).
        let one_plus_i = gaussian(rational(1, 1), rational(1, 1));
        let one_minus_i = gaussian(rational(1, 1), rational(-1, 1));
        let rows = vec![
            vec![one_plus_i.clone(), from_int(2)],
            vec![from_int(1), one_minus_i],
        ];
        assert_eq!(exact_rank(rows), 1);
        let halves = vec![vec![gaussian(rational(1, 2), rational(0, 1)), from_int(1)], vec![from_int(1), from_int(2)]];
        assert_eq!(exact_rank(halves), 1);
    }
}
