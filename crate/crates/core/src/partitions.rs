//! Partition combinatorics for nilpotent orbits of `gl`, `sp` and `so`:
//! validity, the Richardson and admissibility predicates, Levi types, and
//! the interval rule that predicts the degrees of the slice invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{Family, LeviBlock, LieType};
use crate::sampling::SeededRng;

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}: parts must be positive")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// 1-based part, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `dual_i = #{j : lambda_j >= i}`.
pub fn dual(l: &Partition) -> Partition {
    let first = l.parts[0];
    let parts = (1..=first)
        .map(|i| l.parts.iter().filter(|&&p| p >= i).count())
        .collect();
    Partition { parts }
}

/// The Lie type whose natural representation has dimension `|lambda|`.
pub fn lie_type_for(family: Family, l: &Partition) -> Result<LieType> {
    let n = l.total();
    let rank = match family {
        Family::A | Family::GL => n.checked_sub(1).filter(|&r| r > 0),
        Family::B => (n % 2 == 1 && n >= 3).then_some((n - 1) / 2),
        Family::C | Family::D => n.is_multiple_of(2).then_some(n / 2),
    };
    let rank = rank.ok_or_else(|| {
        Error::InvalidPartition(format!("no type {family} algebra has matrix size {n}"))
    })?;
    LieType::new(family, rank)
}

/// Multiplicity condition for nilpotent orbits: in `sp` odd parts, in `so`
/// even parts, occur an even number of times.
pub fn is_valid_nilpotent(t: LieType, l: &Partition) -> Result<bool> {
    if l.total() != t.matrix_size() {
        return Err(Error::InvalidPartition(format!(
            "{l} sums to {}, expected {} for {}",
            l.total(),
            t.matrix_size(),
            t.label()
        )));
    }
    let m = l.multiplicities();
    Ok(match t.family {
        Family::A | Family::GL => true,
        Family::C => m.iter().all(|(p, k)| p % 2 == 0 || k % 2 == 0),
        Family::B | Family::D => m.iter().all(|(p, k)| p % 2 == 1 || k % 2 == 0),
    })
}

/// `r = max{j : lambda_j odd}`, 0 when every part is even.
fn last_odd(l: &Partition) -> usize {
    l.parts
        .iter()
        .rposition(|p| p % 2 == 1)
        .map_or(0, |i| i + 1)
}

/// Richardson criterion for nilpotent orbits of `sp`.
#[allow(non_snake_case)]
pub fn is_richardson_C(l: &Partition) -> bool {
    let r = last_odd(l);
    if r % 2 == 1 {
        return false;
    }
    for j in 1..=r / 2 {
        if l.part(2 * j - 1) % 2 != l.part(2 * j) % 2 {
            return false;
        }
    }
    for j in 1..=r / 2 {
        let (a, b) = (l.part(2 * j), l.part(2 * j + 1));
        if 2 * j < r && a % 2 == 0 && b % 2 == 0 && a < b + 2 {
            return false;
        }
    }
    true
}

/// First part odd, all others even.
#[allow(non_snake_case)]
pub fn is_admissible_B(l: &Partition) -> bool {
    l.parts[0] % 2 == 1 && l.parts[1..].iter().all(|p| p % 2 == 0)
}

/// Shift each even pair `(lambda_{2j-1}, lambda_{2j})` with `2j <= r` to
/// `(lambda_{2j-1} + 1, lambda_{2j} - 1)`.
#[allow(non_snake_case)]
pub fn modified_partition_C(l: &Partition) -> Result<Partition> {
    if !is_richardson_C(l) {
        return Err(Error::InvalidPartition(format!("{l} is not Richardson in type C")));
    }
    let r = last_odd(l);
    let mut parts = l.parts.clone();
    for j in 1..=r / 2 {
        if parts[2 * j - 2].is_multiple_of(2) {
            parts[2 * j - 2] += 1;
            parts[2 * j - 1] -= 1;
        }
    }
    Partition::new(parts)
}

fn canonical(mut blocks: Vec<LeviBlock>) -> Vec<LeviBlock> {
    blocks.sort_by(|a, b| {
        let key = |x: &LeviBlock| match *x {
            LeviBlock::Gl(k) => (0, usize::MAX - k),
            LeviBlock::Sp(m) | LeviBlock::So(m) => (1, usize::MAX - m),
        };
        key(a).cmp(&key(b))
    });
    blocks
}

/// Checks the predicate each family requires before the Levi and degree
/// data are defined.
fn require_polarizable(t: LieType, l: &Partition) -> Result<()> {
    if !is_valid_nilpotent(t, l)? {
        return Err(Error::InvalidPartition(format!(
            "{l} is not a valid nilpotent partition for {}",
            t.label()
        )));
    }
    match t.family {
        Family::A | Family::GL => Ok(()),
        Family::C if is_richardson_C(l) => Ok(()),
        Family::C => Err(Error::InvalidPartition(format!("{l} is not Richardson in type C"))),
        Family::B if is_admissible_B(l) => Ok(()),
        Family::B => Err(Error::InvalidPartition(format!("{l} is not admissible in type B"))),
        Family::D => Err(Error::InvalidPartition(
            "degree combinatorics is not available in type D".into(),
        )),
    }
}

/// Levi type of a polarization of the orbit, canonically sorted
/// (`gl` blocks by decreasing size, then the central block).
pub fn levi_type(t: LieType, l: &Partition) -> Result<Vec<LeviBlock>> {
    require_polarizable(t, l)?;
    let blocks = match t.family {
        Family::A | Family::GL => dual(l).parts.iter().map(|&k| LeviBlock::Gl(k)).collect(),
        Family::C => {
            let r = last_odd(l);
            let cols = dual(&modified_partition_C(l)?);
            let mut out = Vec::new();
            for (v, m) in cols.multiplicities() {
                out.extend(std::iter::repeat_n(LeviBlock::Gl(v), m / 2));
                if m % 2 == 1 {
                    if v != r {
                        return Err(Error::InvalidPartition(format!(
                            "unpaired column {v} in {} differs from r = {r}",
                            cols
                        )));
                    }
                    out.push(LeviBlock::Sp(v));
                }
            }
            out
        }
        Family::B => {
            let (l1, l2) = (l.part(1), l.part(2));
            let s = l2 / 2;
            let k = (l1 - l2 - 1) / 2;
            let d = dual(l);
            let mut out: Vec<LeviBlock> = (1..=s).map(|j| LeviBlock::Gl(d.part(2 * j))).collect();
            out.extend(std::iter::repeat_n(LeviBlock::Gl(1), k));
            out
        }
        Family::D => unreachable!(),
    };
    Ok(canonical(blocks))
}

/// Degrees of `F_1, ..., F_l` as used by the interval rule.
fn invariant_degrees_for(t: LieType) -> Vec<usize> {
    t.invariant_degrees()
}

/// Interval rule: `deg eF_j = i` when
/// `lambda_1 + ... + lambda_{i-1} + 1 <= deg F_j <= lambda_1 + ... + lambda_i`.
fn interval_degree(l: &Partition, deg: usize) -> usize {
    let mut s = 0;
    for (i, &p) in l.parts.iter().enumerate() {
        s += p;
        if deg <= s {
            return i + 1;
        }
    }
    unreachable!("degree {deg} exceeds the partition total")
}

/// Multiset of `deg eF_j`, sorted.
pub fn e_degree_multiset(t: LieType, l: &Partition) -> Result<Vec<usize>> {
    let mut d: Vec<usize> = bidegree_table(t, l)?.into_iter().map(|(a, _)| a).collect();
    d.sort_unstable();
    Ok(d)
}

/// `(deg_p, deg_{n_-})` per invariant, in increasing `deg F` order.
pub fn bidegree_table(t: LieType, l: &Partition) -> Result<Vec<(usize, usize)>> {
    require_polarizable(t, l)?;
    interval_bidegrees(t, l)
}

/// The interval rule applied to any valid nilpotent partition, without the
/// Richardson or admissibility gate of [`bidegree_table`].
pub fn interval_bidegrees(t: LieType, l: &Partition) -> Result<Vec<(usize, usize)>> {
    if !is_valid_nilpotent(t, l)? {
        return Err(Error::InvalidPartition(format!(
            "{l} is not a valid nilpotent partition for {}",
            t.label()
        )));
    }
    Ok(invariant_degrees_for(t)
        .into_iter()
        .map(|deg| {
            let d = interval_degree(l, deg);
            (d, deg - d)
        })
        .collect())
}

/// Degree multiset of the basic invariants of a Levi given by its blocks,
/// with the type-A trace dropped.
pub fn levi_degrees_of(t: LieType, blocks: &[LeviBlock]) -> Vec<usize> {
    let mut d: Vec<usize> = blocks.iter().flat_map(LeviBlock::degrees).collect();
    d.sort_unstable();
    if t.family == Family::A {
        if let Some(p) = d.iter().position(|&x| x == 1) {
            d.remove(p);
        }
    }
    d
}

fn levi_dimension(t: LieType, blocks: &[LeviBlock]) -> usize {
    let d: usize = blocks.iter().map(LeviBlock::dimension).sum();
    if t.family == Family::A {
        d - 1
    } else {
        d
    }
}

/// Everything the degree combinatorics says about one orbit.
#[derive(Clone, Debug, Serialize)]
pub struct RichardsonProfile {
    pub lie_type: LieType,
    pub partition: Partition,
    pub dual: Partition,
    pub modified: Option<Partition>,
    pub levi_type: Vec<LeviBlock>,
    pub degree_multiset: Vec<usize>,
    pub bidegrees: Vec<(usize, usize)>,
    pub levi_degrees: Vec<usize>,
    pub dim_n: usize,
    pub dim_levi_borel: usize,
}

impl RichardsonProfile {
    pub fn compute(t: LieType, l: &Partition) -> Result<Self> {
        let levi = levi_type(t, l)?;
        let bidegrees = bidegree_table(t, l)?;
        let mut degree_multiset: Vec<usize> = bidegrees.iter().map(|(a, _)| *a).collect();
        degree_multiset.sort_unstable();
        let dim_levi = levi_dimension(t, &levi);
        let levi_degrees = levi_degrees_of(t, &levi);
        Ok(Self {
            lie_type: t,
            partition: l.clone(),
            dual: dual(l),
            modified: if t.family == Family::C {
                Some(modified_partition_C(l)?)
            } else {
                None
            },
            dim_n: (t.dimension() - dim_levi) / 2,
            dim_levi_borel: (dim_levi + levi_degrees.len()) / 2,
            levi_type: levi,
            degree_multiset,
            bidegrees,
            levi_degrees,
        })
    }

    pub fn sum_first(&self) -> usize {
        self.bidegrees.iter().map(|(a, _)| a).sum()
    }

    pub fn sum_second(&self) -> usize {
        self.bidegrees.iter().map(|(_, b)| b).sum()
    }

    /// The degree multiset equals the Levi one, the `n_-` degrees add up to
    /// `dim n` and the slice degrees add up to the dimension of a Borel of
    /// the Levi.
    pub fn is_consistent(&self) -> bool {
        self.degree_multiset == self.levi_degrees
            && self.sum_second() == self.dim_n
            && self.sum_first() == self.dim_levi_borel
            && self.sum_first() + self.sum_second() == self.lie_type.invariant_degrees().iter().sum::<usize>()
    }
}

pub fn degrees_match_levi(t: LieType, l: &Partition) -> Result<bool> {
    Ok(RichardsonProfile::compute(t, l)?.is_consistent())
}

/// Random partition of `n`: parts drawn uniformly from what remains.
pub fn random_partition(rng: &mut SeededRng, n: usize) -> Partition {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    Partition::new(parts).expect("positive parts")
}

/// Rejection-samples a partition of a random size in `min..=max` with
/// the given parity accepted by `keep`.
pub fn random_partition_where(
    rng: &mut SeededRng,
    min: usize,
    max: usize,
    odd_total: bool,
    keep: impl Fn(&Partition) -> bool,
) -> Partition {
    loop {
        let n = rng.gen_range(min..=max);
        if (n % 2 == 1) != odd_total {
            continue;
        }
        let l = random_partition(rng, n);
        if keep(&l) {
            return l;
        }
    }
}
