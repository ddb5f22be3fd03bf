use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::types::{Family, LieType};
use crate::exactcore::{QMatrix, Rat};

/// Sparse square matrix as a list of `(row, col, value)` entries.
pub type Entries = Vec<(usize, usize, Rat)>;

/// Position of a basis element relative to the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Triangle {
    Upper,
    Diagonal,
    Lower,
}

/// Matrix model of a classical Lie algebra with an ordered basis
/// (strictly upper, diagonal, strictly lower), its trace-dual basis and
/// sparse structure constants.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    lie_type: LieType,
    n: usize,
    form: Option<QMatrix>,
    basis: Vec<Entries>,
    dual: Vec<Entries>,
    triangle: Vec<Triangle>,
    position: Vec<(usize, usize)>,
    gram: QMatrix,
    structure: Vec<Vec<(usize, Rat)>>,
    // (r, c) -> [(a, w)]: basis coordinate a of X picks up w * X[r][c]
    coord_index: HashMap<(usize, usize), Vec<(usize, Rat)>>,
}

/// The bilinear form `J` defining `sp` or `so`: anti-diagonal, with signs
/// `+1` above and `-1` below the middle for `sp`.
fn invariant_form(t: LieType) -> Option<QMatrix> {
    let n = t.matrix_size();
    match t.family {
        Family::A | Family::GL => None,
        Family::B | Family::D => {
            let mut j = QMatrix::zeros(n, n);
            for i in 0..n {
                j[(i, n - 1 - i)] = Rat::one();
            }
            Some(j)
        }
        Family::C => {
            let mut j = QMatrix::zeros(n, n);
            for i in 0..n {
                j[(i, n - 1 - i)] = if i < n / 2 { Rat::one() } else { -Rat::one() };
            }
            Some(j)
        }
    }
}

fn triangle_of(i: usize, j: usize) -> Triangle {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Triangle::Upper,
        std::cmp::Ordering::Equal => Triangle::Diagonal,
        std::cmp::Ordering::Greater => Triangle::Lower,
    }
}

/// Basis elements as (representative position, entries), unordered.
fn raw_basis(t: LieType, form: Option<&QMatrix>) -> Vec<((usize, usize), Entries)> {
    let n = t.matrix_size();
    let one = Rat::one();
    let mut out = Vec::new();
    match t.family {
        Family::A | Family::GL => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(((i, j), vec![(i, j, one.clone())]));
                    }
                }
            }
            if t.family == Family::GL {
                for i in 0..n {
                    out.push(((i, i), vec![(i, i, one.clone())]));
                }
            } else {
                for i in 0..n - 1 {
                    out.push(((i, i), vec![(i, i, one.clone()), (i + 1, i + 1, -one.clone())]));
                }
            }
        }
        Family::B | Family::C | Family::D => {
            let j = form.expect("form for B/C/D");
            let jinv = j.inverse().expect("nondegenerate form");
            // E_ij - J^{-1} E_ji J = E_ij - sigma * E_{j'i'}
            for r in 0..n {
                for c in 0..n {
                    let (rp, cp) = (n - 1 - c, n - 1 - r);
                    if (rp, cp) < (r, c) {
                        continue;
                    }
                    let sigma = &jinv[(rp, c)] * &j[(r, n - 1 - r)];
                    if (rp, cp) == (r, c) {
                        if sigma == one {
                            continue;
                        }
                        out.push(((r, c), vec![(r, c, one.clone())]));
                    } else {
                        out.push(((r, c), vec![(r, c, one.clone()), (rp, cp, -sigma)]));
                    }
                }
            }
        }
    }
    out
}

fn sparse_product(a: &Entries, b: &Entries) -> BTreeMap<(usize, usize), Rat> {
    let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for (r, k, v) in a {
        for (k2, c, w) in b {
            if k == k2 {
                *acc.entry((*r, *c)).or_insert_with(Rat::zero) += v * w;
            }
        }
    }
    acc
}

fn sparse_commutator(a: &Entries, b: &Entries) -> Vec<((usize, usize), Rat)> {
    let mut ab = sparse_product(a, b);
    for (pos, v) in sparse_product(b, a) {
        *ab.entry(pos).or_insert_with(Rat::zero) -= v;
    }
    ab.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn sparse_trace_product(a: &Entries, b: &Entries) -> Rat {
    let mut s = Rat::zero();
    for (r, c, v) in a {
        for (r2, c2, w) in b {
            if c == r2 && r == c2 {
                s += v * w;
            }
        }
    }
    s
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Inverse of a symmetric matrix computed block by block over the
/// connected components of its sparsity graph.
fn blockwise_inverse(t: &QMatrix) -> QMatrix {
    let d = t.rows();
    let mut parent: Vec<usize> = (0..d).collect();
    for i in 0..d {
        for j in i + 1..d {
            if !t[(i, j)].is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..d {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut inv = QMatrix::zeros(d, d);
    for idx in comps.values() {
        let sub = QMatrix::from_rows(
            idx.iter()
                .map(|&i| idx.iter().map(|&j| t[(i, j)].clone()).collect())
                .collect(),
        );
        let sinv = sub.inverse().expect("trace form is nondegenerate");
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                inv[(i, j)] = sinv[(a, b)].clone();
            }
        }
    }
    inv
}

pub fn build_algebra(t: LieType) -> AlgebraBasis {
    let n = t.matrix_size();
    let form = invariant_form(t);
    let mut raw = raw_basis(t, form.as_ref());
    raw.sort_by_key(|((i, j), _)| {
        let tri = match triangle_of(*i, *j) {
            Triangle::Upper => 0,
            Triangle::Diagonal => 1,
            Triangle::Lower => 2,
        };
        (tri, *i, *j)
    });
    let position: Vec<(usize, usize)> = raw.iter().map(|(p, _)| *p).collect();
    let triangle: Vec<Triangle> = position.iter().map(|&(i, j)| triangle_of(i, j)).collect();
    let basis: Vec<Entries> = raw.into_iter().map(|(_, e)| e).collect();
    let dim = basis.len();
    debug_assert_eq!(dim, t.dimension());

    // entry index: (r, c) -> basis elements with a nonzero at (r, c)
    let mut at: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (a, e) in basis.iter().enumerate() {
        for (r, c, _) in e {
            at.entry((*r, *c)).or_default().push(a);
        }
    }
    let mut gram = QMatrix::zeros(dim, dim);
    for i in 0..dim {
        let mut partners: Vec<usize> = basis[i]
            .iter()
            .flat_map(|(r, c, _)| at.get(&(*c, *r)).cloned().unwrap_or_default())
            .collect();
        partners.sort_unstable();
        partners.dedup();
        for j in partners {
            gram[(i, j)] = sparse_trace_product(&basis[i], &basis[j]);
        }
    }
    let ginv = blockwise_inverse(&gram);

    // b^a = sum_j ginv[j][a] b_j
    let dual: Vec<Entries> = (0..dim)
        .map(|a| {
            let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
            for j in 0..dim {
                let w = &ginv[(j, a)];
                if w.is_zero() {
                    continue;
                }
                for (r, c, v) in &basis[j] {
                    *acc.entry((*r, *c)).or_insert_with(Rat::zero) += w * v;
                }
            }
            acc.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((r, c), v)| (r, c, v))
                .collect()
        })
        .collect();

    // x_a = tr(b^a X) = sum over entries (r, c, w) of b^a of w * X[c][r]
    let mut coord_index: HashMap<(usize, usize), Vec<(usize, Rat)>> = HashMap::new();
    for (a, e) in dual.iter().enumerate() {
        for (r, c, w) in e {
            coord_index.entry((*c, *r)).or_default().push((a, w.clone()));
        }
    }

    let mut alg = AlgebraBasis {
        lie_type: t,
        n,
        form,
        basis,
        dual,
        triangle,
        position,
        gram,
        structure: Vec::new(),
        coord_index,
    };
    let mut structure = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let comm = sparse_commutator(&alg.basis[i], &alg.basis[j]);
            let coords = alg.sparse_coords(&comm);
            let neg: Vec<(usize, Rat)> = coords.iter().map(|(k, v)| (*k, -v.clone())).collect();
            structure[i * dim + j] = coords;
            structure[j * dim + i] = neg;
        }
    }
    alg.structure = structure;
    alg
}

impl AlgebraBasis {
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    /// The form `J` with `X^T J + J X = 0`, absent for A and GL.
    pub fn form(&self) -> Option<&QMatrix> {
        self.form.as_ref()
    }

    pub fn basis_entries(&self, i: usize) -> &Entries {
        &self.basis[i]
    }

    pub fn dual_entries(&self, a: usize) -> &Entries {
        &self.dual[a]
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        self.triangle[i]
    }

    /// Representative matrix position of basis element `i`.
    pub fn position(&self, i: usize) -> (usize, usize) {
        self.position[i]
    }

    pub fn basis_matrix(&self, i: usize) -> QMatrix {
        self.entries_to_matrix(&self.basis[i])
    }

    pub fn dual_matrix(&self, a: usize) -> QMatrix {
        self.entries_to_matrix(&self.dual[a])
    }

    fn entries_to_matrix(&self, e: &Entries) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (r, c, v) in e {
            m[(*r, *c)] += v;
        }
        m
    }

    /// Trace Gram matrix `T[i][j] = tr(b_i b_j)`.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// `[b_i, b_j] = sum_k c(i,j,k) b_k` as a sparse list of `(k, c)`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.structure[i * self.dim() + j]
    }

    /// Bracket of two coordinate vectors.
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

    /// Matrix of `ad x` in the basis: column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[Rat]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..d {
                for (k, c) in self.structure(i, j) {
                    m[(*k, j)] += xi * c;
                }
            }
        }
        m
    }

    /// `sum_i x_i b_i`.
    pub fn to_matrix(&self, x: &[Rat]) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (r, c, v) in &self.basis[i] {
                m[(*r, *c)] += xi * v;
            }
        }
        m
    }

    /// `sum_a xi_a b^a`: the matrix representing the functional with
    /// `xi(b_a) = xi_a` under the trace pairing.
    pub fn functional_to_matrix(&self, xi: &[Rat]) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (a, xa) in xi.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (r, c, v) in &self.dual[a] {
                m[(*r, *c)] += xa * v;
            }
        }
        m
    }

    /// Basis coordinates `x_a = tr(b^a X)` of a matrix in the algebra.
    pub fn coords(&self, x: &QMatrix) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for r in 0..self.n {
            for c in 0..self.n {
                let v = &x[(r, c)];
                if v.is_zero() {
                    continue;
                }
                if let Some(list) = self.coord_index.get(&(r, c)) {
                    for (a, w) in list {
                        out[*a] += w * v;
                    }
                }
            }
        }
        out
    }

    fn sparse_coords(&self, entries: &[((usize, usize), Rat)]) -> Vec<(usize, Rat)> {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (pos, v) in entries {
            if let Some(list) = self.coord_index.get(pos) {
                for (a, w) in list {
                    *acc.entry(*a).or_insert_with(Rat::zero) += w * v;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Functional coordinates `xi_a = tr(b_a Y)` of a matrix `Y`.
    pub fn functional_coords(&self, y: &QMatrix) -> Vec<Rat> {
        self.basis
            .iter()
            .map(|e| {
                e.iter()
                    .fold(Rat::zero(), |acc, (r, c, v)| acc + v * &y[(*c, *r)])
            })
            .collect()
    }

    /// Whether a matrix satisfies the defining condition of the algebra.
    pub fn contains(&self, x: &QMatrix) -> bool {
        match (&self.form, self.lie_type.family) {
            (Some(j), _) => x.transpose().mul(j).add(&j.mul(x)).is_zero(),
            (None, Family::A) => x.trace().is_zero(),
            (None, _) => true,
        }
    }
}

/// Gram matrix of the trace form and the dual basis matrices.
pub fn trace_pairing(a: &AlgebraBasis) -> (QMatrix, Vec<QMatrix>) {
    let duals = (0..a.dim()).map(|i| a.dual_matrix(i)).collect();
    (a.gram().clone(), duals)
}
