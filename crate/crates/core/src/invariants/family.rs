use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::exactcore::{charpoly_with_adjugates, elementary_symmetric, int, pfaffian, pfaffian_gradient, QMatrix, Rat};
use crate::liealg::{AlgebraBasis, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Sl,
    Gl,
    Sp,
    So,
}

/// Which polynomial of `Y` an invariant is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    /// `e_k(Y)`, with `det(t - Y) = t^N - e_1 t^(N-1) + e_2 t^(N-2) - ...`
    Coefficient(usize),
    /// `Pf(J Y)` for the defining form `J` of an even orthogonal algebra.
    Pfaffian,
}

/// Basic invariants `F_1, ..., F_l` of a classical algebra, ordered by
/// degree, evaluated at matrices `Y` or at functionals through
/// `Y(xi) = sum_a xi_a b^a`.
#[derive(Clone, Debug)]
pub struct InvariantFamily {
    algebra: Arc<AlgebraBasis>,
    mode: Mode,
    kinds: Vec<Kind>,
    degrees: Vec<usize>,
}

impl InvariantFamily {
    pub fn new(a: Arc<AlgebraBasis>) -> Self {
        let t = a.lie_type();
        let n = t.matrix_size();
        let l = t.rank;
        let (mode, kinds): (Mode, Vec<Kind>) = match t.family {
            Family::A => (Mode::Sl, (2..=n).map(Kind::Coefficient).collect()),
            Family::GL => (Mode::Gl, (1..=n).map(Kind::Coefficient).collect()),
            Family::C => (Mode::Sp, (1..=l).map(|i| Kind::Coefficient(2 * i)).collect()),
            Family::B => (Mode::So, (1..=l).map(|i| Kind::Coefficient(2 * i)).collect()),
            Family::D => {
                let mut k: Vec<Kind> = (1..l).map(|i| Kind::Coefficient(2 * i)).collect();
                let pos = k
                    .iter()
                    .position(|x| matches!(x, Kind::Coefficient(d) if *d > l))
                    .unwrap_or(k.len());
                k.insert(pos, Kind::Pfaffian);
                (Mode::So, k)
            }
        };
        let degrees = kinds
            .iter()
            .map(|k| match k {
                Kind::Coefficient(d) => *d,
                Kind::Pfaffian => l,
            })
            .collect();
        Self {
            algebra: a,
            mode,
            kinds,
            degrees,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraBasis> {
        &self.algebra
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn count(&self) -> usize {
        self.kinds.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn needs_pfaffian(&self) -> bool {
        self.kinds.contains(&Kind::Pfaffian)
    }

    fn pf_value(&self, y: &QMatrix) -> Rat {
        let j = self.algebra.form().expect("orthogonal form");
        pfaffian(&j.mul(y))
    }

    /// All values `F_i(Y)` from one characteristic polynomial.
    pub fn eval_matrix(&self, y: &QMatrix) -> Vec<Rat> {
        let coeffs = crate::exactcore::charpoly(y);
        let pf = self.needs_pfaffian().then(|| self.pf_value(y));
        self.kinds
            .iter()
            .map(|k| match k {
                Kind::Coefficient(d) => elementary_symmetric(&coeffs, *d),
                Kind::Pfaffian => pf.clone().unwrap(),
            })
            .collect()
    }

    /// Values and gradient matrices `G_i` with `dF_i[D] = tr(G_i D)`.
    ///
    /// For `e_k` the gradient is `(-1)^(k+1) M_k` from the adjugate
    /// expansion; for `Pf(JY)` it is `P^T J / 2` with `P` the matrix of
    /// signed sub-Pfaffians.
    pub fn eval_matrix_with_gradients(&self, y: &QMatrix) -> (Vec<Rat>, Vec<QMatrix>) {
        let cp = charpoly_with_adjugates(y);
        let mut pf = None;
        let mut values = Vec::with_capacity(self.count());
        let mut grads = Vec::with_capacity(self.count());
        for k in &self.kinds {
            match k {
                Kind::Coefficient(d) => {
                    values.push(elementary_symmetric(&cp.coeffs, *d));
                    let m = &cp.adjugates[d - 1];
                    grads.push(if d % 2 == 1 { m.clone() } else { m.scale(&-Rat::one()) });
                }
                Kind::Pfaffian => {
                    let (v, g) = pf.get_or_insert_with(|| {
                        let j = self.algebra.form().expect("orthogonal form");
                        let s = j.mul(y);
                        let p = pfaffian_gradient(&s);
                        let half = Rat::new(1.into(), 2.into());
                        (pfaffian(&s), p.transpose().mul(j).scale(&half))
                    });
                    values.push(v.clone());
                    grads.push(g.clone());
                }
            }
        }
        (values, grads)
    }

    pub fn point_matrix(&self, xi: &[Rat]) -> QMatrix {
        self.algebra.functional_to_matrix(xi)
    }

    pub fn eval_all(&self, xi: &[Rat]) -> Vec<Rat> {
        self.eval_matrix(&self.point_matrix(xi))
    }

    /// Gradients in the functional coordinates: `dF_i / dxi_a = tr(G_i b^a)`.
    pub fn gradients(&self, xi: &[Rat]) -> Vec<Vec<Rat>> {
        let (_, grads) = self.eval_matrix_with_gradients(&self.point_matrix(xi));
        grads.iter().map(|g| self.algebra.coords(g)).collect()
    }
}

/// `F_i` at the functional `xi`.
pub fn eval_invariant(f: &InvariantFamily, i: usize, xi: &[Rat]) -> Rat {
    f.eval_all(xi).swap_remove(i)
}

/// `F_i(-Y) = (-1)^deg F_i(Y)`; used as a parity sanity check.
pub fn parity_sign(deg: usize) -> Rat {
    if deg.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::interpolate;
    use num_traits::Zero;
    use crate::liealg::{build_algebra, LieType};
    use crate::sampling::{random_vector, rng};

    fn fam(f: Family, r: usize) -> InvariantFamily {
        InvariantFamily::new(Arc::new(build_algebra(LieType::new(f, r).unwrap())))
    }

    #[test]
    fn degrees_per_mode() {
        assert_eq!(fam(Family::A, 3).degrees(), &[2, 3, 4]);
        assert_eq!(fam(Family::GL, 2).degrees(), &[1, 2, 3]);
        assert_eq!(fam(Family::C, 3).degrees(), &[2, 4, 6]);
        assert_eq!(fam(Family::B, 3).degrees(), &[2, 4, 6]);
        assert_eq!(fam(Family::D, 4).degrees(), &[2, 4, 4, 6]);
        assert_eq!(fam(Family::D, 6).degrees(), &[2, 4, 6, 6, 8, 10]);
        assert_eq!(fam(Family::D, 3).kinds()[1], Kind::Pfaffian);
    }

    #[test]
    fn sl2_value() {
        // Y = diag(1, -1): e_2 = det = -1
        let f = fam(Family::A, 1);
        let y = QMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(f.eval_matrix(&y), vec![int(-1)]);
        let xi = f.algebra().functional_coords(&y);
        assert_eq!(eval_invariant(&f, 0, &xi), int(-1));
        assert!(f.eval_all(&[int(0), int(0), int(0)]).iter().all(Zero::is_zero));
    }

    #[test]
    fn parity_under_negation() {
        for f in [fam(Family::A, 3), fam(Family::C, 2), fam(Family::D, 3)] {
            let xi = random_vector(&mut rng(4), f.algebra().dim(), 30);
            let neg: Vec<Rat> = xi.iter().map(|x| -x).collect();
            let (a, b) = (f.eval_all(&xi), f.eval_all(&neg));
            for i in 0..f.count() {
                assert_eq!(&a[i] * parity_sign(f.degree(i)), b[i]);
            }
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant_up_to_sign() {
        let f = fam(Family::D, 3);
        let xi = random_vector(&mut rng(9), f.algebra().dim(), 20);
        let y = f.point_matrix(&xi);
        let v = f.eval_matrix(&y);
        let det = elementary_symmetric(&crate::exactcore::charpoly(&y), 6);
        let pf = &v[1];
        // det(JY) = det(J) det(Y) and det J = -1 for the 6x6 anti-diagonal
        assert_eq!(pf * pf, -det);
    }

    #[test]
    fn invariance_under_conjugation_by_algebra() {
        // d/du F(Y + u [x, Y]) at u = 0 vanishes
        for f in [fam(Family::A, 2), fam(Family::C, 2), fam(Family::B, 2), fam(Family::D, 3)] {
            let a = f.algebra().clone();
            let y = a.to_matrix(&random_vector(&mut rng(1), a.dim(), 20));
            let x = a.to_matrix(&random_vector(&mut rng(2), a.dim(), 20));
            let d = x.commutator(&y);
            let (_, grads) = f.eval_matrix_with_gradients(&y);
            for g in grads {
                assert!(g.mul(&d).trace().is_zero());
            }
        }
    }

    #[test]
    fn gradient_matches_interpolated_derivative() {
        for f in [fam(Family::A, 2), fam(Family::D, 3), fam(Family::C, 2)] {
            let d = f.algebra().dim();
            let xi = random_vector(&mut rng(5), d, 20);
            let dir = random_vector(&mut rng(6), d, 20);
            let grads = f.gradients(&xi);
            for i in 0..f.count() {
                let m = f.degree(i);
                let samples: Vec<(Rat, Rat)> = (0..=m as i64)
                    .map(|u| {
                        let p: Vec<Rat> = xi.iter().zip(&dir).map(|(a, b)| a + b * int(u)).collect();
                        (int(u), f.eval_all(&p)[i].clone())
                    })
                    .collect();
                let c = interpolate(&samples).unwrap();
                let lin: Rat = grads[i].iter().zip(&dir).map(|(g, v)| g * v).sum();
                assert_eq!(c.get(1).cloned().unwrap_or_default(), lin);
            }
        }
    }
}
