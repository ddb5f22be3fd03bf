//! Richardson elements found by random search and certified by an exact
//! rank, their Jordan types, centralisers, and the centraliser invariants
//! (index, centre, derived algebra).

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::{QMatrix, Rat};
use crate::liealg::{build_parabolic, AlgebraBasis, Family, LieType, ParabolicDecomposition, ParabolicSpec};
use crate::partitions::Partition;
use crate::sampling::{derive_seed, random_supported, random_vector, rng, DEFAULT_BOUND};

/// Coordinate bound for candidate Richardson elements. Small entries keep
/// the later slice computations cheap; the certificate is exact anyway.
pub const RICHARDSON_BOUND: i64 = 100;

#[derive(Clone, Debug)]
pub struct RichardsonElement {
    /// Basis coordinates, supported on `n`.
    pub coords: Vec<Rat>,
    pub matrix: QMatrix,
    /// Rank of `p -> n, x -> [x, e]`.
    pub certificate: usize,
    pub seed: u64,
    pub trial: usize,
}

/// Rank of `x -> [x, e]` on `p`; equals `dim n` exactly for Richardson `e`.
pub fn certify_richardson(p: &ParabolicDecomposition, e: &[Rat]) -> usize {
    let a = &p.algebra;
    let pidx = p.p_indices();
    let mut m = QMatrix::zeros(p.dim_n(), pidx.len());
    let row_of: std::collections::HashMap<usize, usize> =
        p.idx_n.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    for (col, &x) in pidx.iter().enumerate() {
        for (j, ej) in e.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in a.structure(x, j) {
                let r = *row_of
                    .get(k)
                    .expect("[p, n] lies in n");
                m[(r, col)] += ej * c;
            }
        }
    }
    m.rank()
}

pub fn find_richardson(p: &ParabolicDecomposition, trials: usize, seed: u64) -> Result<RichardsonElement> {
    let d = p.dim();
    for trial in 0..trials.max(1) {
        let s = derive_seed(seed, trial as u64);
        let coords = random_supported(&mut rng(s), d, &p.idx_n, RICHARDSON_BOUND);
        let certificate = certify_richardson(p, &coords);
        if certificate == p.dim_n() {
            return Ok(RichardsonElement {
                matrix: p.algebra.to_matrix(&coords),
                coords,
                certificate,
                seed: s,
                trial,
            });
        }
    }
    Err(Error::SearchFailed(format!(
        "no Richardson element in {trials} draws for {}",
        p.spec.label(p.lie_type())
    )))
}

/// Jordan type of a nilpotent matrix from the ranks of its powers: the
/// number of parts of size at least `k` is `rank e^(k-1) - rank e^k`.
pub fn jordan_type(e: &QMatrix) -> Result<Partition> {
    let n = e.rows();
    let mut ranks = vec![n];
    let mut pw = QMatrix::identity(n);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(Error::NotNilpotent);
        }
        pw = pw.mul(e);
        let r = pw.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..at_least.len() {
        let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, exactly));
    }
    Partition::new(parts)
}

/// The centraliser `g_e` with its bracket data.
#[derive(Clone, Debug)]
pub struct CentraliserData {
    pub algebra: Arc<AlgebraBasis>,
    /// Basis vectors in the coordinates of `g`.
    pub basis: Vec<Vec<Rat>>,
    pub dim: usize,
    /// `brackets[i * dim + j] = [z_i, z_j]` in the coordinates of `g`.
    brackets: Vec<Vec<Rat>>,
    pub centre_dim: usize,
    pub derived_dim: usize,
}

pub fn centraliser(a: &Arc<AlgebraBasis>, e: &[Rat]) -> CentraliserData {
    let ad = a.ad_matrix(e);
    let basis = ad.kernel_basis();
    let k = basis.len();
    let d = a.dim();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let upper: Vec<Vec<Rat>> = pairs
        .par_iter()
        .map(|&(i, j)| a.bracket(&basis[i], &basis[j]))
        .collect();
    let mut brackets = vec![vec![Rat::zero(); d]; k * k];
    for (&(i, j), v) in pairs.iter().zip(upper) {
        brackets[j * k + i] = v.iter().map(|x| -x).collect();
        brackets[i * k + j] = v;
    }

    // centre: alpha with sum_i alpha_i [z_i, z_j] = 0 for all j
    let mut cm = QMatrix::zeros(k * d, k);
    for i in 0..k {
        for j in 0..k {
            for (c, v) in brackets[i * k + j].iter().enumerate() {
                if !v.is_zero() {
                    cm[(j * d + c, i)] = v.clone();
                }
            }
        }
    }
    let centre_dim = k - if k == 0 { 0 } else { cm.rank() };
    let span: Vec<Vec<Rat>> = pairs.iter().map(|&(i, j)| brackets[i * k + j].clone()).collect();
    let derived_dim = if span.is_empty() {
        0
    } else {
        QMatrix::from_rows(span).rank()
    };
    CentraliserData {
        algebra: a.clone(),
        basis,
        dim: k,
        brackets,
        centre_dim,
        derived_dim,
    }
}

impl CentraliserData {
    pub fn bracket(&self, i: usize, j: usize) -> &[Rat] {
        &self.brackets[i * self.dim + j]
    }

    /// Rank of `B_ij = xi([z_i, z_j])` for a functional on `g`.
    pub fn form_rank(&self, xi: &[Rat]) -> usize {
        let k = self.dim;
        let mut b = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in i + 1..k {
                let v = self
                    .bracket(i, j)
                    .iter()
                    .zip(xi)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
                b[(j, i)] = -v.clone();
                b[(i, j)] = v;
            }
        }
        b.rank()
    }

    /// Whether every basis vector vanishes outside the given positions.
    pub fn supported_in(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.basis
            .iter()
            .all(|v| v.iter().enumerate().all(|(i, x)| x.is_zero() || allowed(i)))
    }
}

/// `dim g_e` minus the largest coadjoint rank seen at random functionals.
pub fn subalgebra_index(c: &CentraliserData, trials: usize, seed: u64) -> usize {
    let d = c.algebra.dim();
    let best = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let xi = random_vector(&mut rng(derive_seed(seed, t as u64)), d, DEFAULT_BOUND);
            c.form_rank(&xi)
        })
        .max()
        .unwrap_or(0);
    c.dim - best
}

#[derive(Clone, Debug, Serialize)]
pub struct SubregularStructure {
    pub centre_dim: usize,
    pub derived_dim: usize,
    pub centre_ok: bool,
    pub derived_ok: bool,
}

/// Centre of dimension `l - 1` and a derived algebra of dimension at
/// least 2.
pub fn subregular_structure(c: &CentraliserData, l: usize) -> SubregularStructure {
    SubregularStructure {
        centre_dim: c.centre_dim,
        derived_dim: c.derived_dim,
        centre_ok: c.centre_dim + 1 == l,
        derived_ok: c.derived_dim >= 2,
    }
}

/// Every parabolic spec of a B, C or D algebra, with compositions in
/// lexicographic order.
pub fn all_specs(t: LieType) -> Vec<ParabolicSpec> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let n = t.matrix_size();
    let mut out = Vec::new();
    match t.family {
        Family::A | Family::GL => {
            for c in compositions(n) {
                out.push(ParabolicSpec::new(c, 0));
            }
        }
        _ => {
            for s in 0..=n / 2 {
                for c in compositions(s) {
                    let spec = ParabolicSpec::new(c, n - 2 * s);
                    if spec.validate(t).is_ok() {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.composition.cmp(&b.composition).then(a.central.cmp(&b.central)));
    out
}

/// Specs whose Richardson orbit has the given Jordan type and whose Levi
/// has the given dimension.
pub fn specs_with_jordan_type(
    a: &Arc<AlgebraBasis>,
    target: &Partition,
    dim_levi: Option<usize>,
    seed: u64,
) -> Result<Vec<ParabolicSpec>> {
    let t = a.lie_type();
    let candidates: Vec<ParabolicSpec> = all_specs(t)
        .into_iter()
        .filter(|s| {
            dim_levi.is_none_or(|want| {
                let blocks = s.levi_blocks(t);
                blocks.iter().map(|b| b.dimension()).sum::<usize>() == want
            })
        })
        .collect();
    let found: Vec<Option<ParabolicSpec>> = candidates
        .into_par_iter()
        .map(|s| -> Result<Option<ParabolicSpec>> {
            let p = build_parabolic(a.clone(), s.clone())?;
            let e = find_richardson(&p, 16, seed)?;
            Ok((jordan_type(&e.matrix)? == *target).then_some(s))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::int;
    use crate::liealg::{build_algebra, Part};
    use crate::partitions::{is_admissible_B, is_richardson_C, is_valid_nilpotent};

    fn decomp(f: Family, r: usize, comp: &[usize], central: Option<usize>) -> ParabolicDecomposition {
        let t = LieType::new(f, r).unwrap();
        let s = ParabolicSpec::for_type(t, comp.to_vec(), central).unwrap();
        build_parabolic(Arc::new(build_algebra(t)), s).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn borel_sl3_certificate() {
        let p = decomp(Family::A, 2, &[1, 1, 1], None);
        let a = &p.algebra;
        let find = |pos| (0..a.dim()).find(|&i| a.position(i) == pos).unwrap();
        let (e01, e12) = (find((0, 1)), find((1, 2)));
        let mut e = vec![Rat::zero(); a.dim()];
        e[e01] = int(1);
        e[e12] = int(1);
        assert_eq!(certify_richardson(&p, &e), 3);
        let mut single = vec![Rat::zero(); a.dim()];
        single[e01] = int(1);
        assert!(certify_richardson(&p, &single) < 3);
        assert_eq!(jordan_type(&a.to_matrix(&e)).unwrap(), part(&[3]));
    }

    #[test]
    fn whole_algebra_gives_zero() {
        let t = LieType::new(Family::C, 2).unwrap();
        let a = Arc::new(build_algebra(t));
        let p = build_parabolic(a.clone(), ParabolicSpec::whole(t)).unwrap();
        let e = find_richardson(&p, 1, 0).unwrap();
        assert_eq!(e.certificate, 0);
        assert!(e.matrix.is_zero());
        assert_eq!(jordan_type(&e.matrix).unwrap(), part(&[1, 1, 1, 1]));
        assert_eq!(centraliser(&a, &e.coords).dim, a.dim());
    }

    #[test]
    fn jordan_type_rejects_non_nilpotent() {
        assert!(jordan_type(&QMatrix::identity(2)).is_err());
        let m = QMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert!(jordan_type(&m).is_err());
    }

    #[test]
    fn sp12_example() {
        let p = decomp(Family::C, 6, &[3, 2, 1], Some(0));
        let e = find_richardson(&p, 5, 0).unwrap();
        assert_eq!(e.certificate, 32);
        let j = jordan_type(&e.matrix).unwrap();
        assert_eq!(j, part(&[6, 4, 2]));
        assert!(is_richardson_C(&j));
    }

    #[test]
    fn jordan_type_independent_of_seed() {
        let p = decomp(Family::B, 3, &[1, 1], Some(3));
        let types: Vec<Partition> = (0..4)
            .map(|s| jordan_type(&find_richardson(&p, 5, s).unwrap().matrix).unwrap())
            .collect();
        assert!(types.windows(2).all(|w| w[0] == w[1]));
        let t = p.lie_type();
        assert!(is_valid_nilpotent(t, &types[0]).unwrap());
        let b = decomp(Family::B, 8, &[5, 3], Some(1));
        let j = jordan_type(&find_richardson(&b, 5, 0).unwrap().matrix).unwrap();
        assert_eq!(j, part(&[5, 4, 4, 2, 2]));
        assert!(is_admissible_B(&j));
    }

    #[test]
    fn centraliser_properties() {
        let p = decomp(Family::A, 2, &[2, 1], None);
        let e = find_richardson(&p, 5, 0).unwrap();
        let c = centraliser(&p.algebra, &e.coords);
        assert_eq!(c.dim, p.dim() - 2 * p.dim_n());
        assert_eq!(c.dim, 4);
        assert!(c.supported_in(|i| p.part(i) != Part::NMinus));
        assert_eq!(subalgebra_index(&c, 5, 0), 2);
        let s = subregular_structure(&c, 2);
        assert_eq!(s.centre_dim, 1);
        assert!(s.centre_ok && s.derived_ok);
    }

    #[test]
    fn subregular_sp4_and_so7() {
        let p = decomp(Family::C, 2, &[1], Some(2));
        let e = find_richardson(&p, 5, 0).unwrap();
        let c = centraliser(&p.algebra, &e.coords);
        assert_eq!(c.dim, 4);
        let s = subregular_structure(&c, 2);
        assert!(s.centre_ok && s.derived_ok, "{s:?}");
        assert_eq!(subalgebra_index(&c, 5, 1), 2);

        let p = decomp(Family::B, 3, &[1, 1], Some(3));
        assert!(p.is_minimal());
        let e = find_richardson(&p, 5, 0).unwrap();
        let c = centraliser(&p.algebra, &e.coords);
        assert_eq!(c.centre_dim, 2);
    }

    #[test]
    fn all_specs_counts() {
        // sl3: compositions of 3
        assert_eq!(all_specs(LieType::new(Family::A, 2).unwrap()).len(), 4);
        // sp4: (;4) (1;2) (2;0) (1,1;0)
        assert_eq!(all_specs(LieType::new(Family::C, 2).unwrap()).len(), 4);
        // so8 excludes central block 2
        let d4 = all_specs(LieType::new(Family::D, 4).unwrap());
        assert!(d4.iter().all(|s| s.central != 2));
    }
}
