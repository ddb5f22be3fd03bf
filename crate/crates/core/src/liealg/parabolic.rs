use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::algebra::AlgebraBasis;
use super::types::{Family, LieType};
use crate::error::{Error, Result};

/// Flag data `n_1, ..., n_t` with an optional central block `m_0`.
///
/// For A and GL the blocks fill the diagonal directly. For B, C and D the
/// diagonal reads `n_1, ..., n_t, m_0, n_t, ..., n_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParabolicSpec {
    pub composition: Vec<usize>,
    pub central: usize,
}

/// A simple factor (or torus block) of a Levi subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LeviBlock {
    Gl(usize),
    Sp(usize),
    So(usize),
}

impl LeviBlock {
    /// Degrees of the basic invariants of the block.
    pub fn degrees(&self) -> Vec<usize> {
        match *self {
            LeviBlock::Gl(k) => (1..=k).collect(),
            LeviBlock::Sp(m) => (1..=m / 2).map(|i| 2 * i).collect(),
            LeviBlock::So(m) if m % 2 == 1 => (1..=m / 2).map(|i| 2 * i).collect(),
            LeviBlock::So(m) => {
                let r = m / 2;
                let mut d: Vec<usize> = (1..r).map(|i| 2 * i).collect();
                if r > 0 {
                    d.push(r);
                }
                d.sort_unstable();
                d
            }
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            LeviBlock::Gl(k) => k * k,
            LeviBlock::Sp(m) => m * (m + 1) / 2,
            LeviBlock::So(m) => m * m.saturating_sub(1) / 2,
        }
    }
}

impl fmt::Display for LeviBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeviBlock::Gl(k) => write!(f, "gl{k}"),
            LeviBlock::Sp(m) => write!(f, "sp{m}"),
            LeviBlock::So(m) => write!(f, "so{m}"),
        }
    }
}

/// Joins blocks as `gl3+gl2+sp4`.
pub fn format_levi(blocks: &[LeviBlock]) -> String {
    blocks
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

impl ParabolicSpec {
    pub fn new(composition: Vec<usize>, central: usize) -> Self {
        Self { composition, central }
    }

    /// Spec with the central block derived from the matrix size when absent.
    pub fn for_type(t: LieType, composition: Vec<usize>, central: Option<usize>) -> Result<Self> {
        let s: usize = composition.iter().sum();
        let central = match (central, t.family) {
            (Some(m), _) => m,
            (None, Family::A | Family::GL) => 0,
            (None, _) => t
                .matrix_size()
                .checked_sub(2 * s)
                .ok_or_else(|| Error::InvalidParabolic(format!("composition {composition:?} too large for {}", t.label())))?,
        };
        let spec = Self { composition, central };
        spec.validate(t)?;
        Ok(spec)
    }

    pub fn borel(t: LieType) -> Self {
        match t.family {
            Family::A | Family::GL => Self::new(vec![1; t.matrix_size()], 0),
            Family::B => Self::new(vec![1; t.rank], 1),
            Family::C | Family::D => Self::new(vec![1; t.rank], 0),
        }
    }

    /// The degenerate case `p = g`.
    pub fn whole(t: LieType) -> Self {
        match t.family {
            Family::A | Family::GL => Self::new(vec![t.matrix_size()], 0),
            _ => Self::new(Vec::new(), t.matrix_size()),
        }
    }

    pub fn validate(&self, t: LieType) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParabolic(msg));
        if self.composition.contains(&0) {
            return bad(format!("composition {:?} has a zero part", self.composition));
        }
        let s: usize = self.composition.iter().sum();
        let n = t.matrix_size();
        match t.family {
            Family::A | Family::GL => {
                if self.central != 0 {
                    return bad("central block must be 0 for types A and GL".into());
                }
                if s != n {
                    return bad(format!("composition sums to {s}, expected {n}"));
                }
            }
            Family::B | Family::C | Family::D => {
                if 2 * s + self.central != n {
                    return bad(format!(
                        "2*{s} + {} != {n} for {}",
                        self.central,
                        t.label()
                    ));
                }
                let want_odd = t.family == Family::B;
                if (self.central % 2 == 1) != want_odd {
                    return bad(format!(
                        "central block {} must be {} for {}",
                        self.central,
                        if want_odd { "odd" } else { "even" },
                        t.label()
                    ));
                }
                if t.family == Family::D && self.central == 2 {
                    return bad("central block 2 is not allowed in type D".into());
                }
            }
        }
        Ok(())
    }

    /// Block id of each matrix row, increasing along the diagonal.
    pub fn block_of_rows(&self, t: LieType) -> Vec<usize> {
        let mut sizes = self.composition.clone();
        if !matches!(t.family, Family::A | Family::GL) {
            if self.central > 0 {
                sizes.push(self.central);
            }
            sizes.extend(self.composition.iter().rev());
        }
        sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &k)| std::iter::repeat_n(b, k))
            .collect()
    }

    /// Levi factors: one `gl` per composition part, plus the central block.
    pub fn levi_blocks(&self, t: LieType) -> Vec<LeviBlock> {
        let mut out: Vec<LeviBlock> = self.composition.iter().map(|&k| LeviBlock::Gl(k)).collect();
        if self.central > 0 {
            match t.family {
                Family::C => out.push(LeviBlock::Sp(self.central)),
                Family::B | Family::D => out.push(LeviBlock::So(self.central)),
                _ => {}
            }
        }
        out
    }

    pub fn label(&self, t: LieType) -> String {
        let parts: Vec<String> = self.composition.iter().map(ToString::to_string).collect();
        match t.family {
            Family::A | Family::GL => format!("({})", parts.join(",")),
            _ => format!("({};{})", parts.join(","), self.central),
        }
    }
}

/// Degrees of the basic invariants of the Levi subalgebra. In type A one
/// degree-1 entry is dropped (the Levi of `sl` is traceless).
pub fn levi_invariant_degrees(s: &ParabolicSpec, t: LieType) -> Vec<usize> {
    let mut d: Vec<usize> = s.levi_blocks(t).iter().flat_map(LeviBlock::degrees).collect();
    d.sort_unstable();
    if t.family == Family::A {
        if let Some(p) = d.iter().position(|&x| x == 1) {
            d.remove(p);
        }
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    N,
    Levi,
    NMinus,
}

/// `g = n + l + n_-` as index sets into the basis.
#[derive(Clone, Debug)]
pub struct ParabolicDecomposition {
    pub algebra: Arc<AlgebraBasis>,
    pub spec: ParabolicSpec,
    pub idx_n: Vec<usize>,
    pub idx_levi: Vec<usize>,
    pub idx_nminus: Vec<usize>,
    part: Vec<Part>,
}

pub fn build_parabolic(a: Arc<AlgebraBasis>, s: ParabolicSpec) -> Result<ParabolicDecomposition> {
    let t = a.lie_type();
    s.validate(t)?;
    let block = s.block_of_rows(t);
    let mut part = Vec::with_capacity(a.dim());
    let (mut idx_n, mut idx_levi, mut idx_nminus) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..a.dim() {
        let (r, c) = a.position(i);
        let p = match block[r].cmp(&block[c]) {
            std::cmp::Ordering::Less => Part::N,
            std::cmp::Ordering::Equal => Part::Levi,
            std::cmp::Ordering::Greater => Part::NMinus,
        };
        debug_assert!(a
            .basis_entries(i)
            .iter()
            .all(|(r2, c2, _)| block[*r2].cmp(&block[*c2]) == block[r].cmp(&block[c])));
        match p {
            Part::N => idx_n.push(i),
            Part::Levi => idx_levi.push(i),
            Part::NMinus => idx_nminus.push(i),
        }
        part.push(p);
    }
    Ok(ParabolicDecomposition {
        algebra: a,
        spec: s,
        idx_n,
        idx_levi,
        idx_nminus,
        part,
    })
}

impl ParabolicDecomposition {
    pub fn lie_type(&self) -> LieType {
        self.algebra.lie_type()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn part(&self, i: usize) -> Part {
        self.part[i]
    }

    pub fn in_p(&self, i: usize) -> bool {
        self.part[i] != Part::NMinus
    }

    /// Indices of `p = l + n`, ascending.
    pub fn p_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.in_p(i)).collect()
    }

    pub fn dim_n(&self) -> usize {
        self.idx_n.len()
    }

    pub fn dim_levi(&self) -> usize {
        self.idx_levi.len()
    }

    pub fn dim_p(&self) -> usize {
        self.idx_n.len() + self.idx_levi.len()
    }

    pub fn levi_blocks(&self) -> Vec<super::LeviBlock> {
        self.spec.levi_blocks(self.lie_type())
    }

    pub fn is_whole(&self) -> bool {
        self.idx_n.is_empty()
    }

    /// Minimal (non-Borel) parabolic: the Levi has semisimple rank one.
    pub fn is_minimal(&self) -> bool {
        self.dim_levi() == self.lie_type().reductive_rank() + 2
    }

    pub fn is_borel(&self) -> bool {
        self.dim_levi() == self.lie_type().reductive_rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Rat;
    use crate::liealg::build_algebra;
    use num_traits::Zero;

    fn decomp(f: Family, r: usize, comp: &[usize], central: Option<usize>) -> ParabolicDecomposition {
        let t = LieType::new(f, r).unwrap();
        let s = ParabolicSpec::for_type(t, comp.to_vec(), central).unwrap();
        build_parabolic(Arc::new(build_algebra(t)), s).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let p = decomp(Family::A, 2, &[2, 1], None);
        assert_eq!((p.dim_n(), p.dim_levi()), (2, 4));
        let p = decomp(Family::C, 6, &[3, 2, 1], Some(0));
        assert_eq!((p.dim_n(), p.dim_levi()), (32, 14));
        let p = decomp(Family::B, 8, &[5, 3], Some(1));
        assert_eq!((p.dim_n(), p.dim_levi()), (51, 34));
        let p = decomp(Family::D, 6, &[4, 1, 1], Some(0));
        assert_eq!(p.dim_levi(), 18);
    }

    #[test]
    fn structural_invariants() {
        let cases = [
            decomp(Family::A, 3, &[2, 1, 1], None),
            decomp(Family::C, 3, &[1], None),
            decomp(Family::B, 3, &[1, 1], None),
            decomp(Family::D, 4, &[2, 1, 1], None),
            decomp(Family::GL, 2, &[1, 2], None),
        ];
        for p in &cases {
            let a = &p.algebra;
            assert_eq!(p.dim_n(), p.idx_nminus.len());
            assert_eq!(p.dim_p() + p.idx_nminus.len(), a.dim());
            assert_eq!(2 * p.dim_n(), a.dim() - p.dim_levi());
            let levi_dim: usize = p.levi_blocks().iter().map(LeviBlock::dimension).sum();
            let adj = usize::from(p.lie_type().family == Family::A);
            assert_eq!(levi_dim - adj, p.dim_levi());
            // [p, n] in n and [l, l] in l
            for &i in &p.p_indices() {
                for &j in &p.idx_n {
                    assert!(a.structure(i, j).iter().all(|(k, _)| p.part(*k) == Part::N));
                }
            }
            for &i in &p.idx_levi {
                for &j in &p.idx_levi {
                    assert!(a.structure(i, j).iter().all(|(k, _)| p.part(*k) == Part::Levi));
                }
            }
            // n pairs trivially with itself
            for &i in &p.idx_n {
                for &j in &p.idx_n {
                    assert!(a.gram()[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn whole_and_borel() {
        for t in [
            LieType::new(Family::A, 2).unwrap(),
            LieType::new(Family::C, 2).unwrap(),
            LieType::new(Family::B, 2).unwrap(),
            LieType::new(Family::D, 3).unwrap(),
        ] {
            let a = Arc::new(build_algebra(t));
            let w = build_parabolic(a.clone(), ParabolicSpec::whole(t)).unwrap();
            assert!(w.is_whole());
            assert_eq!(w.dim_levi(), a.dim());
            let b = build_parabolic(a.clone(), ParabolicSpec::borel(t)).unwrap();
            assert!(b.is_borel(), "{t}");
            assert_eq!(b.dim_n(), (a.dim() - t.rank) / 2);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let t = LieType::new(Family::C, 3).unwrap();
        assert!(ParabolicSpec::for_type(t, vec![2, 2], None).is_err());
        assert!(ParabolicSpec::for_type(t, vec![1], Some(3)).is_err());
        let d = LieType::new(Family::D, 3).unwrap();
        assert!(ParabolicSpec::for_type(d, vec![2], None).is_err());
        let a = LieType::new(Family::A, 2).unwrap();
        assert!(ParabolicSpec::for_type(a, vec![1, 1], None).is_err());
        assert!(ParabolicSpec::for_type(a, vec![0, 3], None).is_err());
    }

    #[test]
    fn levi_degree_examples() {
        let c6 = LieType::new(Family::C, 6).unwrap();
        let s = ParabolicSpec::new(vec![3, 2, 1], 0);
        assert_eq!(levi_invariant_degrees(&s, c6), vec![1, 1, 1, 2, 2, 3]);
        let c4 = LieType::new(Family::C, 4).unwrap();
        assert_eq!(levi_invariant_degrees(&ParabolicSpec::new(vec![2], 4), c4), vec![1, 2, 2, 4]);
        let b8 = LieType::new(Family::B, 8).unwrap();
        assert_eq!(
            levi_invariant_degrees(&ParabolicSpec::new(vec![5, 3], 1), b8),
            vec![1, 1, 2, 2, 3, 3, 4, 5]
        );
        let a2 = LieType::new(Family::A, 2).unwrap();
        assert_eq!(levi_invariant_degrees(&ParabolicSpec::new(vec![2, 1], 0), a2), vec![1, 2]);
        assert_eq!(LeviBlock::So(6).degrees(), vec![2, 3, 4]);
    }

    #[test]
    fn ideal_property_for_sample_element() {
        let p = decomp(Family::C, 3, &[1, 1], Some(2));
        let a = &p.algebra;
        let mut e = vec![Rat::zero(); a.dim()];
        for (k, &i) in p.idx_n.iter().enumerate() {
            e[i] = Rat::from_integer((k as i64 * 3 - 4).into());
        }
        for &i in &p.p_indices() {
            let mut x = vec![Rat::zero(); a.dim()];
            x[i] = Rat::from_integer(1.into());
            let br = a.bracket(&x, &e);
            for (k, v) in br.iter().enumerate() {
                if p.part(k) != Part::N {
                    assert!(v.is_zero());
                }
            }
        }
    }
}
