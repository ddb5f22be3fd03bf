use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::rat::{lcm_of_denominators, Rat};

/// `det(lambda*I - Y) = sum_k coeffs[k] * lambda^(n-k)` together with the
/// adjugate expansion `adj(lambda*I - Y) = sum_{k>=1} adjugates[k-1] * lambda^(n-k)`.
#[derive(Clone, Debug)]
pub struct CharPoly {
    pub coeffs: Vec<Rat>,
    pub adjugates: Vec<QMatrix>,
}

fn int_matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i][k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k][j];
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

/// Faddeev-LeVerrier over the integers after scaling `Y` by the common
/// denominator `d`; coefficients of `dY` are `d^k` times those of `Y`.
fn faddeev_leverrier(y: &QMatrix, keep_adjugates: bool) -> CharPoly {
    assert!(y.is_square());
    let n = y.rows();
    let d = lcm_of_denominators(y.entries());
    let dq = Rat::from_integer(d.clone());
    let yi: Vec<Vec<BigInt>> = (0..n)
        .map(|i| y.row(i).iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();

    let mut coeffs_int = vec![BigInt::one()];
    let mut adj_int: Vec<Vec<Vec<BigInt>>> = Vec::new();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for k in 1..=n {
        if k > 1 {
            m = int_matmul(&yi, &m);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &coeffs_int[k - 1];
            }
        }
        let mut tr = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                if !yi[i][j].is_zero() && !m[j][i].is_zero() {
                    tr += &yi[i][j] * &m[j][i];
                }
            }
        }
        coeffs_int.push(-tr / BigInt::from(k));
        if keep_adjugates {
            adj_int.push(m.clone());
        }
    }

    let mut coeffs = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one();
    for c in coeffs_int {
        coeffs.push(Rat::new(c, scale.clone()));
        scale *= &d;
    }
    let mut adjugates = Vec::with_capacity(adj_int.len());
    let mut scale = BigInt::one();
    for mk in adj_int {
        let rows = mk
            .into_iter()
            .map(|row| row.into_iter().map(|x| Rat::new(x, scale.clone())).collect())
            .collect();
        adjugates.push(QMatrix::from_rows(rows));
        scale *= &d;
    }
    CharPoly { coeffs, adjugates }
}

pub fn charpoly(y: &QMatrix) -> Vec<Rat> {
    faddeev_leverrier(y, false).coeffs
}

pub fn charpoly_with_adjugates(y: &QMatrix) -> CharPoly {
    faddeev_leverrier(y, true)
}

/// `e_k(Y)`: the k-th elementary symmetric function of the eigenvalues,
/// i.e. `(-1)^k` times the charpoly coefficient of `lambda^(n-k)`.
pub fn elementary_symmetric(coeffs: &[Rat], k: usize) -> Rat {
    if k.is_multiple_of(2) {
        coeffs[k].clone()
    } else {
        -coeffs[k].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{frac, int};

    // Leibniz expansion, independent of the Faddeev-LeVerrier recurrence.
    fn det_leibniz(m: &QMatrix) -> Rat {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let term = (0..n).fold(Rat::one(), |acc, i| acc * &m[(i, p[i])]);
                if inversions % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn two_by_two() {
        let y = QMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let c = charpoly(&y);
        assert_eq!(c, vec![int(1), int(0), int(-1)]);
        assert_eq!(elementary_symmetric(&c, 2), int(-1));
    }

    #[test]
    fn determinant_and_trace_against_leibniz() {
        let y = QMatrix::from_rows(vec![
            vec![frac(1, 2), int(3), int(-1), int(0)],
            vec![int(2), frac(-2, 3), int(0), int(5)],
            vec![int(0), int(1), int(4), frac(1, 5)],
            vec![int(-3), int(0), int(2), int(1)],
        ]);
        let c = charpoly(&y);
        assert_eq!(elementary_symmetric(&c, 1), y.trace());
        assert_eq!(elementary_symmetric(&c, 4), det_leibniz(&y));
        // p(lambda) at lambda = 2 equals det(2I - Y)
        let two_minus_y = QMatrix::identity(4).scale(&int(2)).sub(&y);
        let p2: Rat = c.iter().enumerate().map(|(k, ck)| ck * int(1 << (4 - k))).sum();
        assert_eq!(p2, det_leibniz(&two_minus_y));
    }

    #[test]
    fn adjugate_expansion_inverts() {
        // (lambda I - Y) adj(lambda I - Y) = p(lambda) I at lambda = 3
        let y = QMatrix::from_rows(vec![
            vec![int(1), frac(1, 2), int(0)],
            vec![int(-2), int(0), int(1)],
            vec![int(4), int(1), frac(-1, 3)],
        ]);
        let cp = charpoly_with_adjugates(&y);
        let lam = int(3);
        let n = 3;
        let mut adj = QMatrix::zeros(n, n);
        for (k, mk) in cp.adjugates.iter().enumerate() {
            let pw = num_traits::pow(lam.clone(), n - (k + 1));
            adj = adj.add(&mk.scale(&pw));
        }
        let p: Rat = cp
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, ck)| ck * num_traits::pow(lam.clone(), n - k))
            .sum();
        let lhs = QMatrix::identity(n).scale(&lam).sub(&y).mul(&adj);
        assert_eq!(lhs, QMatrix::identity(n).scale(&p));
    }
}
