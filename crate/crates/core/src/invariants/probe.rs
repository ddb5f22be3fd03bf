use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::family::InvariantFamily;
use super::highest::{AdjointLoweredFamily, HighestFamily};
use crate::contraction::ContractedAlgebra;
use crate::exactcore::{fmt_rat, int, Interpolator, QMatrix, Rat};
use crate::sampling::{derive_seed, random_vector, rng, DEFAULT_BOUND};

/// A finite list of polynomial functions on a `dim`-dimensional space.
pub trait PolyFamily: Sync {
    fn dim(&self) -> usize;
    fn count(&self) -> usize;
    fn degree(&self, i: usize) -> usize;
    fn eval_all(&self, x: &[Rat]) -> Vec<Rat>;

    /// Row `i` holds the partial derivatives of function `i`.
    fn gradients(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = (0..self.dim())
            .into_par_iter()
            .map(|a| {
                let mut d = vec![Rat::zero(); self.dim()];
                d[a] = int(1);
                (0..self.count())
                    .map(|i| directional_derivative(self, i, x, &d))
                    .collect()
            })
            .collect();
        (0..self.count())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }
}

/// A single polynomial function.
pub trait PolyFn: Sync {
    fn dim(&self) -> usize;
    fn degree(&self) -> usize;
    fn eval(&self, x: &[Rat]) -> Rat;
}

impl<T: PolyFn> PolyFamily for T {
    fn dim(&self) -> usize {
        PolyFn::dim(self)
    }
    fn count(&self) -> usize {
        1
    }
    fn degree(&self, _: usize) -> usize {
        PolyFn::degree(self)
    }
    fn eval_all(&self, x: &[Rat]) -> Vec<Rat> {
        vec![self.eval(x)]
    }
}

/// One member of a family, viewed on its own.
pub struct Member<'a> {
    pub family: &'a dyn PolyFamily,
    pub index: usize,
}

impl PolyFn for Member<'_> {
    fn dim(&self) -> usize {
        self.family.dim()
    }
    fn degree(&self) -> usize {
        self.family.degree(self.index)
    }
    fn eval(&self, x: &[Rat]) -> Rat {
        self.family.eval_all(x).swap_remove(self.index)
    }
}

/// `x -> x[index]`.
#[derive(Clone, Debug)]
pub struct CoordinateFunction {
    pub dim: usize,
    pub index: usize,
}

impl PolyFn for CoordinateFunction {
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> usize {
        1
    }
    fn eval(&self, x: &[Rat]) -> Rat {
        x[self.index].clone()
    }
}

impl PolyFamily for InvariantFamily {
    fn dim(&self) -> usize {
        self.algebra().dim()
    }
    fn count(&self) -> usize {
        InvariantFamily::count(self)
    }
    fn degree(&self, i: usize) -> usize {
        InvariantFamily::degree(self, i)
    }
    fn eval_all(&self, x: &[Rat]) -> Vec<Rat> {
        InvariantFamily::eval_all(self, x)
    }
    fn gradients(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        InvariantFamily::gradients(self, x)
    }
}

impl PolyFamily for HighestFamily {
    fn dim(&self) -> usize {
        self.parabolic.dim()
    }
    fn count(&self) -> usize {
        HighestFamily::count(self)
    }
    fn degree(&self, i: usize) -> usize {
        self.family.degree(i)
    }
    fn eval_all(&self, x: &[Rat]) -> Vec<Rat> {
        HighestFamily::eval_all(self, x)
    }
    fn gradients(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        HighestFamily::gradients(self, x)
    }
}

impl PolyFamily for AdjointLoweredFamily {
    fn dim(&self) -> usize {
        self.parabolic.dim()
    }
    fn count(&self) -> usize {
        AdjointLoweredFamily::count(self)
    }
    fn degree(&self, i: usize) -> usize {
        self.family.degree(i)
    }
    fn eval_all(&self, x: &[Rat]) -> Vec<Rat> {
        AdjointLoweredFamily::eval_all(self, x)
    }
    fn gradients(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        AdjointLoweredFamily::gradients(self, x)
    }
}

/// Coefficient of `u` in `f_i(x + u d)`.
pub fn directional_derivative<F: PolyFamily + ?Sized>(f: &F, i: usize, x: &[Rat], d: &[Rat]) -> Rat {
    let ip = Interpolator::with_default_nodes(f.degree(i) + 1);
    let vals: Vec<Rat> = ip
        .nodes()
        .iter()
        .map(|u| {
            let pt: Vec<Rat> = x.iter().zip(d).map(|(a, b)| a + b * u).collect();
            f.eval_all(&pt).swap_remove(i)
        })
        .collect();
    ip.coefficient(1, &vals)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Rank of the matrix `(d_x f_i)(direction_j)`.
pub fn jacobian_rank<F: PolyFamily + ?Sized>(f: &F, x: &[Rat], directions: &[Vec<Rat>]) -> usize {
    let grads = f.gradients(x);
    let rows: Vec<Vec<Rat>> = grads
        .iter()
        .map(|g| directions.iter().map(|d| dot(g, d)).collect())
        .collect();
    if rows.is_empty() || directions.is_empty() {
        return 0;
    }
    QMatrix::from_rows(rows).rank()
}

/// Standard basis of `k^dim`.
pub fn unit_directions(dim: usize) -> Vec<Vec<Rat>> {
    (0..dim)
        .map(|a| {
            let mut d = vec![Rat::zero(); dim];
            d[a] = int(1);
            d
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Coadjoint,
    Adjoint,
}

/// A nonzero derivative found by the invariance probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeFailure {
    pub trial: usize,
    pub function: usize,
    pub basis_index: usize,
    pub value: String,
    pub point: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub action: Action,
    pub trials: usize,
    pub derivatives_checked: usize,
    pub failure_count: usize,
    /// The first few failures, with exact points.
    pub failures: Vec<ProbeFailure>,
    pub passed: bool,
}

const KEPT_FAILURES: usize = 4;

/// Checks that every derivative of `f` along the infinitesimal action of
/// each basis vector of `q` vanishes at `trials` random points.
pub fn invariance_probe<F: PolyFamily + ?Sized>(
    q: &ContractedAlgebra,
    f: &F,
    action: Action,
    trials: usize,
    seed: u64,
) -> ProbeReport {
    let d = q.dim();
    let per_trial: Vec<(usize, Vec<ProbeFailure>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let x = random_vector(&mut rng(derive_seed(seed, t as u64)), d, DEFAULT_BOUND);
            let grads = f.gradients(&x);
            let mut checked = 0;
            let mut fails = Vec::new();
            for b in 0..d {
                let dir = match action {
                    Action::Coadjoint => q.coadjoint_derivative(b, &x),
                    Action::Adjoint => q.adjoint_derivative(b, &x),
                };
                for (i, g) in grads.iter().enumerate() {
                    checked += 1;
                    let v = dot(g, &dir);
                    if !v.is_zero() {
                        fails.push(ProbeFailure {
                            trial: t,
                            function: i,
                            basis_index: b,
                            value: fmt_rat(&v),
                            point: x.iter().map(fmt_rat).collect(),
                        });
                    }
                }
            }
            (checked, fails)
        })
        .collect();
    let derivatives_checked = per_trial.iter().map(|(c, _)| c).sum();
    let all: Vec<ProbeFailure> = per_trial.into_iter().flat_map(|(_, f)| f).collect();
    ProbeReport {
        action,
        trials,
        derivatives_checked,
        failure_count: all.len(),
        passed: all.is_empty(),
        failures: all.into_iter().take(KEPT_FAILURES).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KostantRecord {
    pub tag: String,
    pub stab_dim: usize,
    pub jac_rank: usize,
    pub index: usize,
    pub consistent: bool,
}

/// Compares `dim q_xi = index` with full rank of the differentials at `xi`.
pub fn kostant_probe<F: PolyFamily + ?Sized>(q: &ContractedAlgebra, f: &F, xi: &[Rat], tag: &str) -> KostantRecord {
    let index = f.count();
    let stab_dim = q.stabilizer_dim(xi);
    let grads = f.gradients(xi);
    let jac_rank = if grads.is_empty() {
        0
    } else {
        QMatrix::from_rows(grads).rank()
    };
    KostantRecord {
        tag: tag.to_string(),
        stab_dim,
        jac_rank,
        index,
        consistent: (jac_rank == index) == (stab_dim == index),
    }
}
