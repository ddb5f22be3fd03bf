use num_traits::{One, Zero};

use super::probe::PolyFamily;
use crate::exactcore::{charpoly_with_adjugates, elementary_symmetric, pfaffian, pfaffian_gradient, QMatrix, Rat};
use crate::liealg::{Family, LeviBlock, ParabolicDecomposition};

#[derive(Clone, Debug)]
enum LeviKind {
    Coefficient(usize),
    Pfaffian,
}

#[derive(Clone, Debug)]
struct BlockFunctions {
    start: usize,
    size: usize,
    kinds: Vec<LeviKind>,
    /// Restriction of the defining form, for the Pfaffian.
    form: Option<QMatrix>,
}

/// Basic invariants of the Levi factor, pulled back to functions on `q`
/// through the projection killing the `n` and `n_-` coordinates.
///
/// Each `gl` block contributes the coefficients of its characteristic
/// polynomial (the upper copy for the mirrored layouts), the central
/// `sp`/`so` block its even coefficients, plus a Pfaffian when the central
/// orthogonal block has even size. In type A the trace of the last block is
/// dropped.
#[derive(Clone, Debug)]
pub struct LeviInvariants {
    pub parabolic: ParabolicDecomposition,
    blocks: Vec<BlockFunctions>,
    degrees: Vec<usize>,
    owner: Vec<(usize, usize)>,
}

impl LeviInvariants {
    pub fn new(p: ParabolicDecomposition) -> Self {
        let t = p.lie_type();
        let form = p.algebra.form().cloned();
        let mut blocks = Vec::new();
        let mut start = 0;
        let levi = p.levi_blocks();
        for (bi, b) in levi.iter().enumerate() {
            let (size, kinds) = match *b {
                LeviBlock::Gl(k) => {
                    let last_a = t.family == Family::A && bi + 1 == levi.len();
                    let from = if last_a { 2 } else { 1 };
                    (k, (from..=k).map(LeviKind::Coefficient).collect::<Vec<_>>())
                }
                LeviBlock::Sp(m) => (m, (1..=m / 2).map(|j| LeviKind::Coefficient(2 * j)).collect()),
                LeviBlock::So(m) if m % 2 == 1 => (m, (1..=m / 2).map(|j| LeviKind::Coefficient(2 * j)).collect()),
                LeviBlock::So(m) => {
                    let mut k: Vec<LeviKind> = (1..m / 2).map(|j| LeviKind::Coefficient(2 * j)).collect();
                    k.push(LeviKind::Pfaffian);
                    (m, k)
                }
            };
            let block_form = match (b, &form) {
                (LeviBlock::So(m), Some(j)) if m % 2 == 0 => Some(submatrix(j, start, *m)),
                _ => None,
            };
            blocks.push(BlockFunctions {
                start,
                size,
                kinds,
                form: block_form,
            });
            start += size;
        }
        let mut owner = Vec::new();
        let mut degrees = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for (ki, k) in b.kinds.iter().enumerate() {
                owner.push((bi, ki));
                degrees.push(match k {
                    LeviKind::Coefficient(d) => *d,
                    LeviKind::Pfaffian => b.size / 2,
                });
            }
        }
        Self {
            parabolic: p,
            blocks,
            degrees,
            owner,
        }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    fn levi_matrix(&self, x: &[Rat]) -> QMatrix {
        let p = &self.parabolic;
        let masked: Vec<Rat> = (0..x.len())
            .map(|i| {
                if p.part(i) == crate::liealg::Part::Levi {
                    x[i].clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        p.algebra.to_matrix(&masked)
    }

    /// Values and, per function, the gradient matrix on the full space.
    fn eval_with_gradients(&self, x: &[Rat]) -> (Vec<Rat>, Vec<QMatrix>) {
        let big = self.levi_matrix(x);
        let n = big.rows();
        let mut values = Vec::new();
        let mut grads = Vec::new();
        for b in &self.blocks {
            let blk = submatrix(&big, b.start, b.size);
            let cp = charpoly_with_adjugates(&blk);
            for k in &b.kinds {
                let (v, g) = match k {
                    LeviKind::Coefficient(d) => {
                        let m = &cp.adjugates[d - 1];
                        let g = if d % 2 == 1 { m.clone() } else { m.scale(&-Rat::one()) };
                        (elementary_symmetric(&cp.coeffs, *d), g)
                    }
                    LeviKind::Pfaffian => {
                        let j = b.form.as_ref().expect("orthogonal block form");
                        let s = j.mul(&blk);
                        let half = Rat::new(1.into(), 2.into());
                        (pfaffian(&s), pfaffian_gradient(&s).transpose().mul(j).scale(&half))
                    }
                };
                values.push(v);
                grads.push(embed(&g, b.start, n));
            }
        }
        (values, grads)
    }
}

fn submatrix(m: &QMatrix, start: usize, size: usize) -> QMatrix {
    QMatrix::from_rows(
        (start..start + size)
            .map(|i| m.row(i)[start..start + size].to_vec())
            .collect(),
    )
}

fn embed(g: &QMatrix, start: usize, n: usize) -> QMatrix {
    let k = g.rows();
    let mut rows = vec![vec![Rat::zero(); n]; n];
    for i in 0..k {
        for j in 0..k {
            rows[start + i][start + j] = g[(i, j)].clone();
        }
    }
    QMatrix::from_rows(rows)
}

impl PolyFamily for LeviInvariants {
    fn dim(&self) -> usize {
        self.parabolic.dim()
    }
    fn count(&self) -> usize {
        self.owner.len()
    }
    fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }
    fn eval_all(&self, x: &[Rat]) -> Vec<Rat> {
        self.eval_with_gradients(x).0
    }
    /// `d/dx_a f(pr X) = tr(G b_a)` for Levi indices `a`, zero elsewhere.
    fn gradients(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let p = &self.parabolic;
        let (_, grads) = self.eval_with_gradients(x);
        grads
            .iter()
            .map(|g| {
                let full = p.algebra.functional_coords(g);
                full.into_iter()
                    .enumerate()
                    .map(|(a, v)| if p.part(a) == crate::liealg::Part::Levi { v } else { Rat::zero() })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contract;
    use crate::invariants::probe::{directional_derivative, invariance_probe, Action};
    use crate::liealg::{build_algebra, build_parabolic, levi_invariant_degrees, LieType, ParabolicSpec};
    use crate::sampling::{random_vector, rng};
    use std::sync::Arc;

    fn levi(f: Family, r: usize, comp: &[usize], central: Option<usize>) -> LeviInvariants {
        let t = LieType::new(f, r).unwrap();
        let a = Arc::new(build_algebra(t));
        let s = ParabolicSpec::for_type(t, comp.to_vec(), central).unwrap();
        LeviInvariants::new(build_parabolic(a, s).unwrap())
    }

    #[test]
    fn degrees_match_block_data() {
        for l in [
            levi(Family::A, 2, &[2, 1], None),
            levi(Family::C, 2, &[1], Some(2)),
            levi(Family::D, 4, &[2], Some(4)),
            levi(Family::B, 3, &[1, 1], Some(3)),
        ] {
            let p = &l.parabolic;
            assert_eq!(l.sorted_degrees(), levi_invariant_degrees(&p.spec, p.lie_type()));
        }
        assert_eq!(levi(Family::A, 2, &[2, 1], None).sorted_degrees(), vec![1, 2]);
        assert_eq!(levi(Family::C, 2, &[1], Some(2)).sorted_degrees(), vec![1, 2]);
    }

    #[test]
    fn invariant_under_contracted_adjoint_action() {
        for l in [
            levi(Family::A, 2, &[2, 1], None),
            levi(Family::C, 2, &[1], Some(2)),
            levi(Family::D, 4, &[2], Some(4)),
        ] {
            let q = contract(&l.parabolic);
            let r = invariance_probe(&q, &l, Action::Adjoint, 2, 0);
            assert!(r.passed, "{:?}", r.failures);
        }
    }

    #[test]
    fn gradient_matches_interpolation() {
        let l = levi(Family::D, 4, &[2], Some(4));
        let x = random_vector(&mut rng(1), l.dim(), 30);
        let d = random_vector(&mut rng(2), l.dim(), 30);
        let g = l.gradients(&x);
        for i in 0..l.count() {
            let lin: Rat = g[i].iter().zip(&d).map(|(a, b)| a * b).sum();
            assert_eq!(lin, directional_derivative(&l, i, &x, &d));
        }
    }
}
