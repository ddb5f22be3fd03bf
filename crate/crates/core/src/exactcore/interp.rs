use num_traits::{One, Zero};

use super::rat::{int, Rat};
use crate::error::{Error, Result};

/// The small-integer node sequence 0, 1, -1, 2, -2, ...
pub fn default_nodes(k: usize) -> Vec<Rat> {
    (0..k)
        .map(|i| {
            let m = (i as i64 + 1) / 2;
            if i % 2 == 1 {
                int(m)
            } else {
                int(-m)
            }
        })
        .collect()
}

/// Horner evaluation of a coefficient list (constant term first).
pub fn evaluate_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Coefficients, constant term first and trailing zeros trimmed, of the
/// unique polynomial of degree below `samples.len()` through the samples.
pub fn interpolate(samples: &[(Rat, Rat)]) -> Result<Vec<Rat>> {
    if samples.is_empty() {
        return Err(Error::Interpolation("no samples".into()));
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::Interpolation(format!("duplicate node {x}")));
        }
    }
    let k = samples.len();
    // Newton divided differences, then expand the Newton form.
    let xs: Vec<&Rat> = samples.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rat> = samples.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    let mut coeffs = vec![Rat::zero(); k];
    for i in (0..k).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        for j in (1..k).rev() {
            let prev = coeffs[j - 1].clone();
            coeffs[j] = prev - xs[i] * &coeffs[j];
        }
        coeffs[0] = &dd[i] - xs[i] * &coeffs[0];
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Interpolation at a fixed node set with the inverse Vandermonde matrix
/// precomputed, so single coefficients come out as one dot product.
#[derive(Clone, Debug)]
pub struct Interpolator {
    nodes: Vec<Rat>,
    // weights[j][t]: contribution of the value at node t to coefficient j
    weights: Vec<Vec<Rat>>,
}

impl Interpolator {
    pub fn new(nodes: Vec<Rat>) -> Result<Self> {
        let k = nodes.len();
        let mut weights = vec![vec![Rat::zero(); k]; k];
        for t in 0..k {
            let samples: Vec<(Rat, Rat)> = nodes
                .iter()
                .enumerate()
                .map(|(u, x)| (x.clone(), if u == t { Rat::one() } else { Rat::zero() }))
                .collect();
            for (j, c) in interpolate(&samples)?.into_iter().enumerate() {
                weights[j][t] = c;
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn with_default_nodes(k: usize) -> Self {
        Self::new(default_nodes(k)).expect("default nodes are distinct")
    }

    pub fn nodes(&self) -> &[Rat] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn coefficient(&self, j: usize, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.nodes.len());
        if j >= self.nodes.len() {
            return Rat::zero();
        }
        self.weights[j]
            .iter()
            .zip(values)
            .filter(|(w, v)| !w.is_zero() && !v.is_zero())
            .fold(Rat::zero(), |acc, (w, v)| acc + w * v)
    }

    /// All coefficients, untrimmed (length equals the node count).
    pub fn coefficients(&self, values: &[Rat]) -> Vec<Rat> {
        (0..self.nodes.len())
            .map(|j| self.coefficient(j, values))
            .collect()
    }
}
