//! The contraction `q = p ⋉ n_-^a` of a parabolic decomposition, the family
//! of conjugated brackets degenerating `g` to `q`, and the coadjoint form
//! used for stabilizers and the index.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactcore::{QMatrix, Rat};
use crate::liealg::{ParabolicDecomposition, Part};
use crate::sampling::{derive_seed, random_vector, rng, DEFAULT_BOUND};

/// A point of `q*` in coordinates `xi_a = xi(b_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoadjointPoint {
    pub xi: Vec<Rat>,
    pub tag: Option<String>,
}

impl CoadjointPoint {
    pub fn new(xi: Vec<Rat>) -> Self {
        Self { xi, tag: None }
    }

    pub fn tagged(xi: Vec<Rat>, tag: impl Into<String>) -> Self {
        Self {
            xi,
            tag: Some(tag.into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ContractedAlgebra {
    pub parent: ParabolicDecomposition,
    structure_q: Vec<Vec<(usize, Rat)>>,
}

pub fn contract(p: &ParabolicDecomposition) -> ContractedAlgebra {
    let a = &p.algebra;
    let d = a.dim();
    let mut structure_q = vec![Vec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            let s = a.structure(i, j);
            structure_q[i * d + j] = match (p.in_p(i), p.in_p(j)) {
                (true, true) => s.to_vec(),
                (false, false) => Vec::new(),
                _ => s
                    .iter()
                    .filter(|(k, _)| p.part(*k) == Part::NMinus)
                    .cloned()
                    .collect(),
            };
        }
    }
    ContractedAlgebra {
        parent: p.clone(),
        structure_q,
    }
}

impl ContractedAlgebra {
    pub fn dim(&self) -> usize {
        self.parent.dim()
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.structure_q[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = self.structure(i, j);
                if s.is_empty() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in s {
                    out[*k] += &f * c;
                }
            }
        }
        out
    }

    /// `B(xi)[i][j] = xi([b_i, b_j]_q)`.
    pub fn coadjoint_form(&self, xi: &[Rat]) -> QMatrix {
        let d = self.dim();
        let mut b = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in i + 1..d {
                let v = self
                    .structure(i, j)
                    .iter()
                    .filter(|(k, _)| !xi[*k].is_zero())
                    .fold(Rat::zero(), |acc, (k, c)| acc + c * &xi[*k]);
                if !v.is_zero() {
                    b[(j, i)] = -v.clone();
                    b[(i, j)] = v;
                }
            }
        }
        b
    }

    /// `dim q_xi = dim q - rank B(xi)`.
    pub fn stabilizer_dim(&self, xi: &[Rat]) -> usize {
        self.dim() - self.coadjoint_form(xi).rank()
    }

    /// Stabilizer dimensions at `trials` seeded random points, in trial order.
    pub fn stabilizer_dims(&self, trials: usize, seed: u64) -> Vec<usize> {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let xi = random_vector(&mut rng(derive_seed(seed, t as u64)), self.dim(), DEFAULT_BOUND);
                self.stabilizer_dim(&xi)
            })
            .collect()
    }

    /// Minimum stabilizer dimension over random points: an upper bound for
    /// the index that is attained with overwhelming probability.
    pub fn index_of(&self, trials: usize, seed: u64) -> usize {
        assert!(trials >= 1);
        self.stabilizer_dims(trials, seed).into_iter().min().unwrap_or(0)
    }

    /// `(ad* b_x)(xi)`, whose a-th coordinate is `-xi([b_x, b_a]_q)`.
    pub fn coadjoint_derivative(&self, x: usize, xi: &[Rat]) -> Vec<Rat> {
        (0..self.dim())
            .map(|a| {
                -self
                    .structure(x, a)
                    .iter()
                    .filter(|(k, _)| !xi[*k].is_zero())
                    .fold(Rat::zero(), |acc, (k, c)| acc + c * &xi[*k])
            })
            .collect()
    }

    /// `[b_x, v]_q`.
    pub fn adjoint_derivative(&self, x: usize, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (j, vj) in v.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in self.structure(x, j) {
                out[*k] += vj * c;
            }
        }
        out
    }
}

/// `[x, y]_(t) = c_t^{-1} [c_t x, c_t y]` where `c_t` multiplies the
/// `n_-` coordinates by `t`.
pub fn family_bracket(p: &ParabolicDecomposition, x: &[Rat], y: &[Rat], t: &Rat) -> Result<Vec<Rat>> {
    if t.is_zero() {
        return Err(Error::OutOfRange("family bracket needs t != 0".into()));
    }
    let scale = |v: &[Rat]| -> Vec<Rat> {
        v.iter()
            .enumerate()
            .map(|(i, c)| if p.in_p(i) { c.clone() } else { c * t })
            .collect()
    };
    let mut z = p.algebra.bracket(&scale(x), &scale(y));
    for (i, c) in z.iter_mut().enumerate() {
        if !p.in_p(i) {
            *c /= t;
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{int, interpolate};
    use crate::liealg::{build_algebra, build_parabolic, Family, LieType, ParabolicSpec};
    use std::sync::Arc;

    fn decomp(f: Family, r: usize, comp: &[usize], central: Option<usize>) -> ParabolicDecomposition {
        let t = LieType::new(f, r).unwrap();
        let s = ParabolicSpec::for_type(t, comp.to_vec(), central).unwrap();
        build_parabolic(Arc::new(build_algebra(t)), s).unwrap()
    }

    fn unit(d: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); d];
        v[i] = int(1);
        v
    }

    #[test]
    fn nminus_is_abelian_ideal() {
        let p = decomp(Family::C, 3, &[2], Some(2));
        let q = contract(&p);
        for &i in &p.idx_nminus {
            for &j in &p.idx_nminus {
                assert!(q.structure(i, j).is_empty());
            }
            for j in 0..q.dim() {
                assert!(q.structure(j, i).iter().all(|(k, _)| p.part(*k) == Part::NMinus));
            }
        }
    }

    #[test]
    fn levi_component_is_killed() {
        // sl3, Borel: [E_01, E_10] = h_0 lies in the Levi, so vanishes in q
        let p = decomp(Family::A, 2, &[1, 1, 1], None);
        let q = contract(&p);
        let (e, f) = (0, p.algebra.dim() - 3);
        assert_eq!(p.algebra.position(e), (0, 1));
        assert_eq!(p.algebra.position(f), (1, 0));
        assert!(!p.algebra.structure(e, f).is_empty());
        assert!(q.structure(e, f).is_empty());
    }

    #[test]
    fn whole_algebra_is_unchanged() {
        let t = LieType::new(Family::B, 2).unwrap();
        let p = build_parabolic(Arc::new(build_algebra(t)), ParabolicSpec::whole(t)).unwrap();
        let q = contract(&p);
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                assert_eq!(q.structure(i, j), p.algebra.structure(i, j));
            }
        }
    }

    #[test]
    fn jacobi_holds_in_q() {
        let p = decomp(Family::A, 3, &[2, 1, 1], None);
        let q = contract(&p);
        let d = q.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (unit(d, i), unit(d, j), unit(d, k));
                    let a = q.bracket(&x, &q.bracket(&y, &z));
                    let b = q.bracket(&y, &q.bracket(&z, &x));
                    let c = q.bracket(&z, &q.bracket(&x, &y));
                    for m in 0..d {
                        assert!((&a[m] + &b[m] + &c[m]).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn family_bracket_limits() {
        let p = decomp(Family::A, 2, &[2, 1], None);
        let q = contract(&p);
        let d = p.dim();
        let x: Vec<Rat> = (0..d).map(|i| int(i as i64 - 3)).collect();
        let y: Vec<Rat> = (0..d).map(|i| int((i * i) as i64 % 5 - 2)).collect();
        assert_eq!(family_bracket(&p, &x, &y, &int(1)).unwrap(), p.algebra.bracket(&x, &y));
        assert!(family_bracket(&p, &x, &y, &int(0)).is_err());
        // each coordinate is quadratic in t; the constant term is the q-bracket
        let vals: Vec<Vec<Rat>> = (1..=3)
            .map(|t| family_bracket(&p, &x, &y, &int(t)).unwrap())
            .collect();
        let lim = q.bracket(&x, &y);
        for k in 0..d {
            let samples: Vec<(Rat, Rat)> = (0..3).map(|t| (int(t as i64 + 1), vals[t][k].clone())).collect();
            let c = interpolate(&samples).unwrap();
            assert_eq!(c.first().cloned().unwrap_or_default(), lim[k]);
        }
    }

    #[test]
    fn nminus_pair_carries_factor_t() {
        // sl3 (2,1): n_- = {E_20, E_21}; in g they commute, so check an
        // n_- pair against the hand expansion c_t^{-1}[t y, t y'] = t^2 [y,y']
        // after projection, which is zero here, and a mixed p/n_- pair.
        let p = decomp(Family::A, 2, &[2, 1], None);
        let d = p.dim();
        let (y1, y2) = (p.idx_nminus[0], p.idx_nminus[1]);
        let z = family_bracket(&p, &unit(d, y1), &unit(d, y2), &int(5)).unwrap();
        assert!(z.iter().all(Zero::is_zero));
        // E_02 (in n) with E_20 (in n_-): [E_02, t E_20] = t (E_00 - E_22) in the Levi
        let e02 = (0..d).find(|&i| p.algebra.position(i) == (0, 2)).unwrap();
        let e20 = (0..d).find(|&i| p.algebra.position(i) == (2, 0)).unwrap();
        let z3 = family_bracket(&p, &unit(d, e02), &unit(d, e20), &int(3)).unwrap();
        let z1 = p.algebra.bracket(&unit(d, e02), &unit(d, e20));
        let z1_scaled: Vec<Rat> = z1.iter().map(|v| v * int(3)).collect();
        assert_eq!(z3, z1_scaled);
    }

    #[test]
    fn coadjoint_form_basics() {
        let p = decomp(Family::C, 2, &[1], Some(2));
        let q = contract(&p);
        let d = q.dim();
        assert!(q.coadjoint_form(&vec![Rat::zero(); d]).is_zero());
        assert_eq!(q.stabilizer_dim(&vec![Rat::zero(); d]), d);
        let xi: Vec<Rat> = (0..d).map(|i| int(2 * i as i64 - 7)).collect();
        let b = q.coadjoint_form(&xi);
        assert_eq!(b.transpose(), b.scale(&int(-1)));
        assert_eq!(b.rank() % 2, 0);
    }

    #[test]
    fn index_examples() {
        for (f, r, comp, central) in [
            (Family::A, 2, vec![1, 1, 1], None),
            (Family::A, 2, vec![2, 1], None),
            (Family::C, 2, vec![2], Some(0)),
            (Family::C, 3, vec![1, 1, 1], Some(0)),
            (Family::B, 2, vec![1], Some(3)),
        ] {
            let q = contract(&decomp(f, r, &comp, central));
            assert_eq!(q.index_of(10, 0), r, "{f:?}{r} {comp:?}");
        }
    }

    #[test]
    fn derivatives() {
        // sl2 without contraction: ad*(e) applied to the f-functional
        let t = LieType::new(Family::A, 1).unwrap();
        let p = build_parabolic(Arc::new(build_algebra(t)), ParabolicSpec::whole(t)).unwrap();
        let q = contract(&p);
        // basis e, h, f; [e, h] = -2e, [e, f] = h
        let xi_f = unit(3, 2);
        let v = q.coadjoint_derivative(0, &xi_f);
        assert_eq!(v, vec![int(0), int(0), int(0)]);
        let xi_h = unit(3, 1);
        // a-th coordinate -xi_h([e, b_a]): a = f gives -1
        assert_eq!(q.coadjoint_derivative(0, &xi_h), vec![int(0), int(0), int(-1)]);
        let x = unit(3, 0);
        assert!(q.adjoint_derivative(0, &x).iter().all(Zero::is_zero));

        let p = decomp(Family::A, 2, &[2, 1], None);
        let q = contract(&p);
        let d = q.dim();
        let xi = random_vector(&mut rng(3), d, 50);
        // functionals vanishing on n_- are killed by ad* of n_-
        let xi_p: Vec<Rat> = (0..d).map(|i| if p.in_p(i) { xi[i].clone() } else { Rat::zero() }).collect();
        for &y in &p.idx_nminus {
            let mut v = vec![Rat::zero(); d];
            for &k in &p.idx_nminus {
                v[k] = xi[k].clone();
            }
            assert!(q.adjoint_derivative(y, &v).iter().all(Zero::is_zero));
            assert!(q.coadjoint_derivative(y, &xi_p).iter().all(Zero::is_zero));
        }
    }
}
