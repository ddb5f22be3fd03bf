use num_traits::Zero;
use rayon::prelude::*;

use super::family::InvariantFamily;
use super::highest::HighestFamily;
use super::probe::PolyFamily;
use crate::error::{Error, Result};
use crate::exactcore::{int, interpolate, QMatrix, Rat};
use crate::liealg::ParabolicDecomposition;
use crate::sampling::{derive_seed, random_supported, rng, DEFAULT_BOUND};

/// `F_i•` at `e + v`, where `v` (basis coordinates) lies in `l + n_-`.
pub fn eval_slice(h: &HighestFamily, i: usize, e: &QMatrix, v: &[Rat]) -> Rat {
    SliceFamily::new(h.clone(), e.clone()).eval_all(v).swap_remove(i)
}

/// The highest components restricted to `e + p_-`, as functions of `v`.
#[derive(Clone, Debug)]
pub struct SliceFamily {
    pub highest: HighestFamily,
    pub e: QMatrix,
}

impl SliceFamily {
    pub fn new(highest: HighestFamily, e: QMatrix) -> Self {
        Self { highest, e }
    }

    /// `l + n_-` in basis indices.
    pub fn support(&self) -> Vec<usize> {
        let p = &self.highest.parabolic;
        let mut s: Vec<usize> = p.idx_levi.iter().chain(&p.idx_nminus).copied().collect();
        s.sort_unstable();
        s
    }

    fn point(&self, v: &[Rat]) -> Vec<Rat> {
        let a = &self.highest.parabolic.algebra;
        a.functional_coords(&self.e.add(&a.to_matrix(v)))
    }
}

impl PolyFamily for SliceFamily {
    fn dim(&self) -> usize {
        self.highest.parabolic.dim()
    }
    fn count(&self) -> usize {
        self.highest.count()
    }
    fn degree(&self, i: usize) -> usize {
        self.highest.family.degree(i)
    }
    fn eval_all(&self, v: &[Rat]) -> Vec<Rat> {
        self.highest.eval_all(&self.point(v))
    }
}

/// Degree in `u` of `eval_slice(u v)`, i.e. the degree of the restriction
/// along the ray through `v`. `None` if it vanishes identically there.
pub fn slice_degree(s: &SliceFamily, i: usize, v: &[Rat]) -> Result<Option<usize>> {
    let m = s.degree(i);
    let samples: Vec<(Rat, Rat)> = (0..=m as i64)
        .map(|u| {
            let pt: Vec<Rat> = v.iter().map(|x| x * int(u)).collect();
            (int(u), s.eval_all(&pt).swap_remove(i))
        })
        .collect();
    let c = interpolate(&samples)?;
    Ok(c.iter().rposition(|x| !x.is_zero()))
}

/// A random `y` in `n_-` (as a matrix) rescaled so that `tr(y e) = 1`.
pub fn normalized_y(p: &ParabolicDecomposition, e: &QMatrix, trials: usize, seed: u64) -> Result<QMatrix> {
    let a = &p.algebra;
    for t in 0..trials.max(1) {
        let c = random_supported(&mut rng(derive_seed(seed, t as u64)), p.dim(), &p.idx_nminus, DEFAULT_BOUND);
        let y = a.to_matrix(&c);
        let s = y.mul(e).trace();
        if !s.is_zero() {
            return Ok(y.scale(&(Rat::from_integer(1.into()) / s)));
        }
    }
    Err(Error::Degenerate("tr(y e) vanished for every sampled y in n_-".into()))
}

/// Coefficients in `c` of `F_i(Y' + c e)`, where `Y' = Y - tr(y Y) e` is
/// the component of `Y` in `e^perp`. The coefficient of `c^(m-k)` is the
/// component `H_k` of `F_i = sum_k y^(m-k) H_k`.
fn components_along_e(f: &InvariantFamily, i: usize, e: &QMatrix, y: &QMatrix, point: &QMatrix) -> Vec<Rat> {
    let m = f.degree(i);
    let base = point.sub(&e.scale(&y.mul(point).trace()));
    let samples: Vec<(Rat, Rat)> = (1..=m as i64 + 1)
        .map(|c| (int(c), f.eval_matrix(&base.add(&e.scale(&int(c))))[i].clone()))
        .collect();
    interpolate(&samples).expect("distinct nodes")
}

/// Minimal `k` with `H_k != 0`, certified over `trials` random points of
/// `l + n_-` shifted by `e`.
pub fn slodowy_min_index(
    f: &InvariantFamily,
    i: usize,
    p: &ParabolicDecomposition,
    e: &QMatrix,
    y: &QMatrix,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let a = &p.algebra;
    let mut support: Vec<usize> = p.idx_levi.iter().chain(&p.idx_nminus).copied().collect();
    support.sort_unstable();
    let top = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let v = random_supported(&mut rng(derive_seed(seed, t as u64)), p.dim(), &support, DEFAULT_BOUND);
            let c = components_along_e(f, i, e, y, &e.add(&a.to_matrix(&v)));
            c.iter().rposition(|x| !x.is_zero())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .max()
        .ok_or_else(|| Error::Degenerate(format!("invariant {i} vanished on the slice")))?;
    Ok(f.degree(i) - top)
}

/// `H_k` at the matrix point `point`, with `k` the certified minimal index.
pub fn slodowy_slice_eval(f: &InvariantFamily, i: usize, e: &QMatrix, y: &QMatrix, point: &QMatrix, k: usize) -> Rat {
    let c = components_along_e(f, i, e, y, point);
    c.get(f.degree(i) - k).cloned().unwrap_or_default()
}
