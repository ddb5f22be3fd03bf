use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::rat::{lcm_of_denominators, Rat};

/// Row expansion along the lowest remaining index, memoized by the bitmask
/// of remaining indices. One table serves every principal minor.
struct PfMemo<'a> {
    a: &'a [Vec<BigInt>],
    memo: Vec<Option<BigInt>>,
}

impl<'a> PfMemo<'a> {
    fn new(a: &'a [Vec<BigInt>]) -> Self {
        let n = a.len();
        assert!(n <= 24, "pfaffian expansion limited to size 24");
        Self {
            a,
            memo: vec![None; 1 << n],
        }
    }

    fn pf(&mut self, mask: usize) -> BigInt {
        if mask == 0 {
            return BigInt::one();
        }
        if mask.count_ones() % 2 == 1 {
            return BigInt::zero();
        }
        if let Some(v) = &self.memo[mask] {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = BigInt::zero();
        let mut pos = 0;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !self.a[i][j].is_zero() {
                let sub = self.pf(rest & !(1 << j));
                if !sub.is_zero() {
                    let term = &self.a[i][j] * sub;
                    if pos % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
            }
            pos += 1;
        }
        self.memo[mask] = Some(acc.clone());
        acc
    }
}

fn scaled_integer(a: &QMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    assert!(a.is_square());
    let d = lcm_of_denominators(a.entries());
    let dq = Rat::from_integer(d.clone());
    let rows = (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    (rows, d)
}

/// Pfaffian of a skew-symmetric matrix (zero for odd size).
pub fn pfaffian(a: &QMatrix) -> Rat {
    let n = a.rows();
    if n % 2 == 1 {
        return Rat::zero();
    }
    let (ai, d) = scaled_integer(a);
    let mut memo = PfMemo::new(&ai);
    let v = memo.pf((1 << n) - 1);
    Rat::new(v, num_traits::pow(d, n / 2))
}

/// Skew matrix `P` with `P[i][j] = d Pf / d a_ij` for `i < j`, so that the
/// derivative of `Pf` along a skew direction `D` is `sum_{i<j} P_ij D_ij`.
pub fn pfaffian_gradient(a: &QMatrix) -> QMatrix {
    let n = a.rows();
    let mut p = QMatrix::zeros(n, n);
    if n % 2 == 1 || n == 0 {
        return p;
    }
    let (ai, d) = scaled_integer(a);
    let mut memo = PfMemo::new(&ai);
    let full = (1usize << n) - 1;
    // minors have size n-2 and scale by d^(n/2 - 1)
    let scale = num_traits::pow(d, n / 2 - 1);
    for i in 0..n {
        for j in i + 1..n {
            let v = memo.pf(full & !(1 << i) & !(1 << j));
            if v.is_zero() {
                continue;
            }
            let mut r = Rat::new(v, scale.clone());
            if (i + j) % 2 == 0 {
                r = -r;
            }
            p[(j, i)] = -r.clone();
            p[(i, j)] = r;
        }
    }
    p
}

/// Unmemoized sum over perfect matchings, kept as an independent reference.
pub fn pfaffian_naive(a: &QMatrix) -> Rat {
    fn go(a: &QMatrix, idx: &[usize]) -> Rat {
        if idx.is_empty() {
            return Rat::one();
        }
        let (i, rest) = (idx[0], &idx[1..]);
        let mut acc = Rat::zero();
        for (p, &j) in rest.iter().enumerate() {
            let sub: Vec<usize> = rest.iter().copied().filter(|&k| k != j).collect();
            let term = &a[(i, j)] * go(a, &sub);
            if p % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    if a.rows() % 2 == 1 {
        return Rat::zero();
    }
    let idx: Vec<usize> = (0..a.rows()).collect();
    go(a, &idx)
}
