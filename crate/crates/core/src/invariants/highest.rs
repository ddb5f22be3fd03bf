use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::family::InvariantFamily;
use crate::error::{Error, Result};
use crate::exactcore::{Interpolator, QMatrix, Rat};
use crate::liealg::ParabolicDecomposition;
use crate::sampling::{derive_seed, random_vector, rng, DEFAULT_BOUND};

/// Bi-homogeneous components of one invariant at one point.
#[derive(Clone, Debug, Serialize)]
pub struct BiComponentProfile {
    pub index: usize,
    pub degree: usize,
    /// `values[j]`: the component of `n_-`-degree `j`.
    #[serde(skip)]
    pub values: Vec<Rat>,
    pub n_minus_degree: Option<usize>,
    pub p_degree: Option<usize>,
}

/// Splits `Y(xi)` into the parts carried by `p`-coordinates and by
/// `n_-`-coordinates of the functional.
pub fn split_point(p: &ParabolicDecomposition, xi: &[Rat]) -> (QMatrix, QMatrix) {
    let a = &p.algebra;
    let (mut xp, mut xn) = (xi.to_vec(), xi.to_vec());
    for i in 0..xi.len() {
        if p.in_p(i) {
            xn[i] = Rat::zero();
        } else {
            xp[i] = Rat::zero();
        }
    }
    (a.functional_to_matrix(&xp), a.functional_to_matrix(&xn))
}

/// `values[i][j]`: the coefficient of `s^j` in `F_i(Y_p + s Y_n)`.
pub fn bicomponent_values(f: &InvariantFamily, p: &ParabolicDecomposition, xi: &[Rat]) -> Vec<Vec<Rat>> {
    let ip = Interpolator::with_default_nodes(f.max_degree() + 1);
    let (yp, yn) = split_point(p, xi);
    let samples: Vec<Vec<Rat>> = ip
        .nodes()
        .par_iter()
        .map(|s| f.eval_matrix(&yp.add(&yn.scale(s))))
        .collect();
    (0..f.count())
        .map(|i| {
            let vals: Vec<Rat> = samples.iter().map(|v| v[i].clone()).collect();
            (0..=f.degree(i)).map(|j| ip.coefficient(j, &vals)).collect()
        })
        .collect()
}

pub fn bicomponents(f: &InvariantFamily, i: usize, p: &ParabolicDecomposition, xi: &[Rat]) -> BiComponentProfile {
    let values = bicomponent_values(f, p, xi).swap_remove(i);
    let b = values.iter().rposition(|v| !v.is_zero());
    BiComponentProfile {
        index: i,
        degree: f.degree(i),
        n_minus_degree: b,
        p_degree: b.map(|b| f.degree(i) - b),
        values,
    }
}

/// `b_i` for every invariant: the largest `n_-`-degree seen at `trials`
/// random points.
pub fn n_minus_degrees(f: &InvariantFamily, p: &ParabolicDecomposition, trials: usize, seed: u64) -> Result<Vec<usize>> {
    let d = p.dim();
    let per_trial: Vec<Vec<Option<usize>>> = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let xi = random_vector(&mut rng(derive_seed(seed, t as u64)), d, DEFAULT_BOUND);
            bicomponent_values(f, p, &xi)
                .iter()
                .map(|v| v.iter().rposition(|x| !x.is_zero()))
                .collect()
        })
        .collect();
    (0..f.count())
        .map(|i| {
            per_trial
                .iter()
                .filter_map(|r| r[i])
                .max()
                .ok_or_else(|| Error::Degenerate(format!("invariant {i} vanished at every trial point")))
        })
        .collect()
}

pub fn n_minus_degree(f: &InvariantFamily, i: usize, p: &ParabolicDecomposition, trials: usize, seed: u64) -> Result<usize> {
    Ok(n_minus_degrees(f, p, trials, seed)?[i])
}

/// `F_i•(xi)`: the component of `n_-`-degree `b_i`.
pub fn eval_highest(f: &InvariantFamily, i: usize, p: &ParabolicDecomposition, xi: &[Rat], b_i: usize) -> Rat {
    bicomponents(f, i, p, xi)
        .values
        .get(b_i)
        .cloned()
        .unwrap_or_default()
}

/// The highest components `F_1•, ..., F_l•` as functions on `q*`, with
/// gradients from the adjugate expansion at each interpolation node.
#[derive(Clone, Debug)]
pub struct HighestFamily {
    pub family: InvariantFamily,
    pub parabolic: ParabolicDecomposition,
    pub b: Vec<usize>,
    interp: Interpolator,
}

impl HighestFamily {
    pub fn new(family: InvariantFamily, parabolic: ParabolicDecomposition, b: Vec<usize>) -> Self {
        assert_eq!(b.len(), family.count());
        let interp = Interpolator::with_default_nodes(family.max_degree() + 1);
        Self {
            family,
            parabolic,
            b,
            interp,
        }
    }

    /// Measures `b` at random points, then builds the family.
    pub fn measured(family: InvariantFamily, parabolic: ParabolicDecomposition, trials: usize, seed: u64) -> Result<Self> {
        let b = n_minus_degrees(&family, &parabolic, trials, seed)?;
        Ok(Self::new(family, parabolic, b))
    }

    pub fn count(&self) -> usize {
        self.family.count()
    }

    pub fn p_degrees(&self) -> Vec<usize> {
        self.b
            .iter()
            .zip(self.family.degrees())
            .map(|(b, m)| m - b)
            .collect()
    }

    pub fn eval_all(&self, xi: &[Rat]) -> Vec<Rat> {
        let (yp, yn) = split_point(&self.parabolic, xi);
        let samples: Vec<Vec<Rat>> = self
            .interp
            .nodes()
            .par_iter()
            .map(|s| self.family.eval_matrix(&yp.add(&yn.scale(s))))
            .collect();
        (0..self.count())
            .map(|i| {
                let vals: Vec<Rat> = samples.iter().map(|v| v[i].clone()).collect();
                self.interp.coefficient(self.b[i], &vals)
            })
            .collect()
    }

    /// `dF_i• / dxi_a`. With `Y(s) = Y_p + s Y_n`, the derivative of
    /// `F_i(Y(s))` along `xi_a` is `tr(G_i(s) b^a)` for `a` in `p` and
    /// `s tr(G_i(s) b^a)` for `a` in `n_-`; take the `s^b_i` coefficient.
    pub fn gradients(&self, xi: &[Rat]) -> Vec<Vec<Rat>> {
        let a = &self.parabolic.algebra;
        let (yp, yn) = split_point(&self.parabolic, xi);
        // per node: per invariant: tr(G_i(s) b^a) over a
        let per_node: Vec<Vec<Vec<Rat>>> = self
            .interp
            .nodes()
            .par_iter()
            .map(|s| {
                let (_, grads) = self.family.eval_matrix_with_gradients(&yp.add(&yn.scale(s)));
                grads.iter().map(|g| a.coords(g)).collect()
            })
            .collect();
        let d = a.dim();
        (0..self.count())
            .map(|i| {
                let b = self.b[i];
                (0..d)
                    .map(|k| {
                        let vals: Vec<Rat> = per_node.iter().map(|n| n[i][k].clone()).collect();
                        if self.parabolic.in_p(k) {
                            self.interp.coefficient(b, &vals)
                        } else if b == 0 {
                            Rat::zero()
                        } else {
                            self.interp.coefficient(b - 1, &vals)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Top `p`-degree components on the adjoint side: the coefficient of the
/// highest power of `s` in `F_i(s X_p + X_n)` with `X = sum_a x_a b_a`.
#[derive(Clone, Debug)]
pub struct AdjointLoweredFamily {
    pub family: InvariantFamily,
    pub parabolic: ParabolicDecomposition,
    /// Certified top `s`-degree per invariant.
    pub top: Vec<usize>,
    interp: Interpolator,
}

fn split_vector(p: &ParabolicDecomposition, x: &[Rat]) -> (QMatrix, QMatrix) {
    let a = &p.algebra;
    let (mut xp, mut xn) = (x.to_vec(), x.to_vec());
    for i in 0..x.len() {
        if p.in_p(i) {
            xn[i] = Rat::zero();
        } else {
            xp[i] = Rat::zero();
        }
    }
    (a.to_matrix(&xp), a.to_matrix(&xn))
}

/// `s`-coefficients of `F_i(s X_p + X_n)` for every invariant.
pub fn adjoint_components(f: &InvariantFamily, p: &ParabolicDecomposition, x: &[Rat]) -> Vec<Vec<Rat>> {
    let ip = Interpolator::with_default_nodes(f.max_degree() + 1);
    let (xp, xn) = split_vector(p, x);
    let samples: Vec<Vec<Rat>> = ip
        .nodes()
        .par_iter()
        .map(|s| f.eval_matrix(&xp.scale(s).add(&xn)))
        .collect();
    (0..f.count())
        .map(|i| {
            let vals: Vec<Rat> = samples.iter().map(|v| v[i].clone()).collect();
            (0..=f.degree(i)).map(|j| ip.coefficient(j, &vals)).collect()
        })
        .collect()
}

impl AdjointLoweredFamily {
    pub fn measured(family: InvariantFamily, parabolic: ParabolicDecomposition, trials: usize, seed: u64) -> Result<Self> {
        let d = parabolic.dim();
        let per_trial: Vec<Vec<Option<usize>>> = (0..trials.max(1))
            .into_par_iter()
            .map(|t| {
                let x = random_vector(&mut rng(derive_seed(seed, t as u64)), d, DEFAULT_BOUND);
                adjoint_components(&family, &parabolic, &x)
                    .iter()
                    .map(|v| v.iter().rposition(|c| !c.is_zero()))
                    .collect()
            })
            .collect();
        let top = (0..family.count())
            .map(|i| {
                per_trial
                    .iter()
                    .filter_map(|r| r[i])
                    .max()
                    .ok_or_else(|| Error::Degenerate(format!("invariant {i} vanished at every trial point")))
            })
            .collect::<Result<Vec<_>>>()?;
        let interp = Interpolator::with_default_nodes(family.max_degree() + 1);
        Ok(Self {
            family,
            parabolic,
            top,
            interp,
        })
    }

    pub fn count(&self) -> usize {
        self.family.count()
    }

    pub fn eval_all(&self, x: &[Rat]) -> Vec<Rat> {
        let (xp, xn) = split_vector(&self.parabolic, x);
        let samples: Vec<Vec<Rat>> = self
            .interp
            .nodes()
            .par_iter()
            .map(|s| self.family.eval_matrix(&xp.scale(s).add(&xn)))
            .collect();
        (0..self.count())
            .map(|i| {
                let vals: Vec<Rat> = samples.iter().map(|v| v[i].clone()).collect();
                self.interp.coefficient(self.top[i], &vals)
            })
            .collect()
    }

    /// Derivative along `x_a` of `F_i(s X_p + X_n)` is `s tr(G_i b_a)` for
    /// `a` in `p` and `tr(G_i b_a)` for `a` in `n_-`.
    pub fn gradients(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let a = &self.parabolic.algebra;
        let (xp, xn) = split_vector(&self.parabolic, x);
        let per_node: Vec<Vec<Vec<Rat>>> = self
            .interp
            .nodes()
            .par_iter()
            .map(|s| {
                let (_, grads) = self.family.eval_matrix_with_gradients(&xp.scale(s).add(&xn));
                grads.iter().map(|g| a.functional_coords(g)).collect()
            })
            .collect();
        (0..self.count())
            .map(|i| {
                let top = self.top[i];
                (0..a.dim())
                    .map(|k| {
                        let vals: Vec<Rat> = per_node.iter().map(|n| n[i][k].clone()).collect();
                        if !self.parabolic.in_p(k) {
                            self.interp.coefficient(top, &vals)
                        } else if top == 0 {
                            Rat::zero()
                        } else {
                            self.interp.coefficient(top - 1, &vals)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `H_•(x)` for one invariant.
pub fn eval_adjoint_lowered(f: &AdjointLoweredFamily, i: usize, x: &[Rat]) -> Rat {
    f.eval_all(x).swap_remove(i)
}
