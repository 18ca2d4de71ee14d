//! Dense exact matrices as morphisms H^{⊗m} → H^{⊗n}, plus sparse vectors for
//! evaluating big composites one basis tensor at a time.
//!
//! Tensor index convention, fixed everywhere: in a product of spaces with
//! dimensions (a, b) the basis tensor e_i ⊗ e_j has flat index i·b + j.

use std::fmt;

use thiserror::Error;

use crate::par;
use crate::scalars::FieldScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map has rank {0}, expected rank one")]
    NotRankOne(usize),
    #[error("matrix is singular")]
    Singular,
}

/// A dst_dim × src_dim matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinMap {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl LinMap {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldScalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        LinMap { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinMap { rows, cols, data: vec![FieldScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { FieldScalar::one() } else { FieldScalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> FieldScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        LinMap { rows, cols, data }
    }

    /// Builds a matrix from small integers, row by row.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| FieldScalar::from(rows[i][j]))
    }

    /// A point (column vector).
    pub fn column(v: Vec<FieldScalar>) -> Self {
        let n = v.len();
        LinMap::new(n, 1, v)
    }

    /// A copoint (row vector).
    pub fn row(v: Vec<FieldScalar>) -> Self {
        let n = v.len();
        LinMap::new(1, n, v)
    }

    pub fn from_sparse_columns(rows: usize, cols: &[SVec]) -> Self {
        let mut m = LinMap::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col {
                m.data[r * cols.len() + c] = x.clone();
            }
        }
        m
    }

    pub fn src_dim(&self) -> usize {
        self.cols
    }

    pub fn dst_dim(&self) -> usize {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldScalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.data
    }

    /// All entries of a point or copoint, in order.
    pub fn to_vec(&self) -> Vec<FieldScalar> {
        self.data.clone()
    }

    pub fn col_sparse(&self, c: usize) -> SVec {
        (0..self.rows)
            .filter_map(|r| {
                let x = self.get(r, c);
                (!x.is_zero()).then(|| (r, x.clone()))
            })
            .collect()
    }

    pub fn row_sparse(&self, r: usize) -> SVec {
        (0..self.cols)
            .filter_map(|c| {
                let x = self.get(r, c);
                (!x.is_zero()).then(|| (c, x.clone()))
            })
            .collect()
    }

    pub fn sparse(&self) -> SparseMap {
        SparseMap::from(self)
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, k: &FieldScalar) -> LinMap {
        LinMap { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        LinMap { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        LinMap { rows: self.rows, cols: self.cols, data }
    }

    /// Reshapes a point of dimension a·b into the a × b matrix with
    /// entry (i, j) the coefficient of e_i ⊗ e_j.
    pub fn reshape(&self, rows: usize, cols: usize) -> LinMap {
        assert_eq!(self.data.len(), rows * cols, "cannot reshape");
        LinMap { rows, cols, data: self.data.clone() }
    }

    /// First entry (row-major) where the two maps differ.
    pub fn first_difference(&self, other: &LinMap) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        self.data.iter().zip(&other.data).position(|(a, b)| a != b).map(|k| (k / self.cols, k % self.cols))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        reduce_rows(&mut rows, self.cols).len()
    }

    fn to_rows(&self) -> Vec<Vec<FieldScalar>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    /// Applies the map to a sparse vector.
    pub fn apply(&self, v: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (c, x) in v {
            for r in 0..self.rows {
                let a = self.get(r, *c);
                if !a.is_zero() {
                    terms.push((r, a * x));
                }
            }
        }
        normalize(terms)
    }
}

/// Matrix product g·f, i.e. g after f.
pub fn compose(g: &LinMap, f: &LinMap) -> Result<LinMap, LinError> {
    if f.rows != g.cols {
        return Err(LinError::DimensionMismatch(format!(
            "cannot compose {}x{} after {}x{}",
            g.rows, g.cols, f.rows, f.cols
        )));
    }
    let rows = par::map_range(g.rows, |r| {
        let grow = g.row_sparse(r);
        let mut out = vec![FieldScalar::zero(); f.cols];
        for (k, a) in &grow {
            for c in 0..f.cols {
                let b = f.get(*k, c);
                if !b.is_zero() {
                    out[c] += &(a * b);
                }
            }
        }
        out
    });
    Ok(LinMap { rows: g.rows, cols: f.cols, data: rows.into_iter().flatten().collect() })
}

/// Composes a chain of maps, rightmost applied first. Panics on a shape error.
pub fn chain(maps: &[&LinMap]) -> LinMap {
    let mut it = maps.iter().rev();
    let mut acc = (*it.next().expect("empty chain")).clone();
    for m in it {
        acc = compose(m, &acc).expect("shape mismatch in chain");
    }
    acc
}

/// Kronecker product f ⊗ g with the i·b + j convention.
pub fn kron(f: &LinMap, g: &LinMap) -> LinMap {
    let rows = f.rows * g.rows;
    let cols = f.cols * g.cols;
    let mut m = LinMap::zeros(rows, cols);
    for i1 in 0..f.rows {
        for j1 in 0..f.cols {
            let a = f.get(i1, j1);
            if a.is_zero() {
                continue;
            }
            for i2 in 0..g.rows {
                for j2 in 0..g.cols {
                    let b = g.get(i2, j2);
                    if !b.is_zero() {
                        m.data[(i1 * g.rows + i2) * cols + j1 * g.cols + j2] = a * b;
                    }
                }
            }
        }
    }
    m
}

/// The symmetry e_i ⊗ e_j ↦ e_j ⊗ e_i on a (dim a) ⊗ (dim b).
pub fn swap(a: usize, b: usize) -> LinMap {
    let mut m = LinMap::zeros(a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(j * a + i, i * b + j, FieldScalar::one());
        }
    }
    m
}

/// Fraction-free forward elimination followed by back substitution.
/// Leaves `rows` in reduced row echelon form (pivots 1, zero rows dropped)
/// and returns the pivot columns.
fn reduce_rows(rows: &mut Vec<Vec<FieldScalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = FieldScalar::one();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let piv = prow[c].clone();
        let prev_inv = prev.invert().expect("Bareiss pivot is nonzero");
        let update = |row: &mut Vec<FieldScalar>| {
            let f = row[c].clone();
            for j in 0..ncols {
                // Bareiss step: (piv·a_ij - a_ic·a_rj) / previous pivot
                let t = &piv * &row[j];
                let t = if f.is_zero() || prow[j].is_zero() { t } else { t - &f * &prow[j] };
                row[j] = if prev_inv.is_one() { t } else { t * &prev_inv };
            }
        };
        if tail.len() > 8 {
            par::for_each_mut(tail, update);
        } else {
            tail.iter_mut().for_each(update);
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    // back substitution to reduced form
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = rows[i][c].invert().expect("pivot is nonzero");
        for x in rows[i].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(i);
        let prow = &tail[0];
        let update = |row: &mut Vec<FieldScalar>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for j in 0..ncols {
                if !prow[j].is_zero() {
                    row[j] -= &(&f * &prow[j]);
                }
            }
        };
        if head.len() > 8 {
            par::for_each_mut(head, update);
        } else {
            head.iter_mut().for_each(update);
        }
    }
    pivots
}

/// Basis of the right null space. Each vector has its first nonzero
/// coordinate equal to 1; vectors are ordered by their free column.
pub fn kernel_basis(m: &LinMap) -> Vec<LinMap> {
    let mut rows = m.to_rows();
    let pivots = reduce_rows(&mut rows, m.cols);
    let mut is_pivot = vec![None; m.cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut out = Vec::new();
    for f in 0..m.cols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![FieldScalar::zero(); m.cols];
        v[f] = FieldScalar::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -&rows[i][f];
        }
        out.push(LinMap::column(normalize_leading(v)));
    }
    out
}

fn normalize_leading(v: Vec<FieldScalar>) -> Vec<FieldScalar> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) if !lead.is_one() => {
            let inv = lead.invert().unwrap();
            v.iter().map(|x| x * &inv).collect()
        }
        _ => v,
    }
}

/// Factors a rank-one map as u·v with u's first nonzero entry equal to 1.
pub fn rank_one_factor(m: &LinMap) -> Result<(LinMap, LinMap), LinError> {
    let rank = m.rank();
    if rank != 1 {
        return Err(LinError::NotRankOne(rank));
    }
    let r0 = (0..m.rows).find(|&r| (0..m.cols).any(|c| !m.get(r, c).is_zero())).unwrap();
    let c0 = (0..m.cols).find(|&c| !m.get(r0, c).is_zero()).unwrap();
    let lead = m.get(r0, c0).invert().unwrap();
    let u = LinMap::column((0..m.rows).map(|r| m.get(r, c0) * &lead).collect());
    let v = LinMap::row((0..m.cols).map(|c| m.get(r0, c).clone()).collect());
    Ok((u, v))
}

pub fn invert_matrix(m: &LinMap) -> Result<LinMap, LinError> {
    if m.rows != m.cols {
        return Err(LinError::DimensionMismatch(format!("cannot invert {}x{}", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut rows: Vec<Vec<FieldScalar>> = (0..n)
        .map(|r| {
            let mut row: Vec<FieldScalar> = (0..n).map(|c| m.get(r, c).clone()).collect();
            row.extend((0..n).map(|c| if c == r { FieldScalar::one() } else { FieldScalar::zero() }));
            row
        })
        .collect();
    let pivots = reduce_rows(&mut rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinError::Singular);
    }
    Ok(LinMap::from_fn(n, n, |r, c| rows[r][n + c].clone()))
}

/// Solves a·x = b for a column b. Returns a particular solution (free
/// variables set to zero) together with a kernel basis, or `None` when the
/// system is inconsistent.
pub fn solve(a: &LinMap, b: &LinMap) -> Result<Option<(LinMap, Vec<LinMap>)>, LinError> {
    if b.rows != a.rows || b.cols != 1 {
        return Err(LinError::DimensionMismatch("right-hand side must be a matching column".into()));
    }
    let n = a.cols;
    let mut rows: Vec<Vec<FieldScalar>> = (0..a.rows)
        .map(|r| {
            let mut row: Vec<FieldScalar> = (0..n).map(|c| a.get(r, c).clone()).collect();
            row.push(b.get(r, 0).clone());
            row
        })
        .collect();
    let pivots = reduce_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![FieldScalar::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Ok(Some((LinMap::column(x), kernel_basis(a))))
}

// ---------------------------------------------------------------------------
// sparse vectors in tensor powers

/// Sparse vector: strictly increasing indices, no zero coefficients.
pub type SVec = Vec<(usize, FieldScalar)>;

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize(mut terms: Vec<(usize, FieldScalar)>) -> SVec {
    terms.sort_by_key(|t| t.0);
    let mut out: SVec = Vec::with_capacity(terms.len());
    for (i, x) in terms {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn sv_basis(i: usize) -> SVec {
    vec![(i, FieldScalar::one())]
}

pub fn sv_from_dense(v: &[FieldScalar]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sv_to_dense(v: &SVec, n: usize) -> Vec<FieldScalar> {
    let mut out = vec![FieldScalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sv_add(a: &SVec, b: &SVec) -> SVec {
    normalize(a.iter().chain(b.iter()).cloned().collect())
}

pub fn sv_sub(a: &SVec, b: &SVec) -> SVec {
    normalize(a.iter().cloned().chain(b.iter().map(|(i, x)| (*i, -x))).collect())
}

pub fn sv_scale(a: &SVec, k: &FieldScalar) -> SVec {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * k)).collect()
}

/// a ⊗ b where b lives in a space of dimension `bdim`.
pub fn sv_kron(a: &SVec, b: &SVec, bdim: usize) -> SVec {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * bdim + j, x * y));
        }
    }
    out
}

/// Reorders tensor factors: factor k of the output is factor `perm[k]` of
/// the input, whose factor dimensions are `dims`.
pub fn sv_permute(v: &SVec, dims: &[usize], perm: &[usize]) -> SVec {
    let n = dims.len();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut digits = vec![0usize; n];
    let terms = v
        .iter()
        .map(|(idx, x)| {
            let mut rest = *idx;
            for k in (0..n).rev() {
                digits[k] = rest % dims[k];
                rest /= dims[k];
            }
            let mut out = 0;
            for k in 0..n {
                out = out * out_dims[k] + digits[perm[k]];
            }
            (out, x.clone())
        })
        .collect();
    normalize(terms)
}

/// Column-sparse copy of a map, for evaluating composites on basis tensors.
#[derive(Clone, Debug)]
pub struct SparseMap {
    pub rows: usize,
    pub cols: usize,
    col: Vec<SVec>,
}

impl From<&LinMap> for SparseMap {
    fn from(m: &LinMap) -> Self {
        SparseMap { rows: m.rows, cols: m.cols, col: (0..m.cols).map(|c| m.col_sparse(c)).collect() }
    }
}

impl SparseMap {
    pub fn from_columns(rows: usize, col: Vec<SVec>) -> Self {
        SparseMap { rows, cols: col.len(), col }
    }

    pub fn column(&self, c: usize) -> &SVec {
        &self.col[c]
    }

    pub fn to_dense(&self) -> LinMap {
        LinMap::from_sparse_columns(self.rows, &self.col)
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (c, x) in v {
            for (r, a) in &self.col[*c] {
                terms.push((*r, a * x));
            }
        }
        normalize(terms)
    }

    /// Applies id_left ⊗ self ⊗ id_right, where `left` and `right` are the
    /// total dimensions of the untouched factors.
    pub fn apply_at(&self, v: &SVec, left: usize, right: usize) -> SVec {
        let mut terms = Vec::new();
        for (idx, x) in v {
            let r = idx % right;
            let rest = idx / right;
            let a = rest % self.cols;
            let l = rest / self.cols;
            debug_assert!(l < left);
            for (b, y) in &self.col[a] {
                terms.push(((l * self.rows + b) * right + r, y * x));
            }
        }
        normalize(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> LinMap {
        LinMap::from_ints(rows)
    }

    #[test]
    fn compose_examples() {
        let i3 = LinMap::identity(3);
        assert_eq!(compose(&i3, &i3).unwrap(), i3);
        assert_eq!(compose(&ints(&[&[1, 1]]), &ints(&[&[1], &[1]])).unwrap(), ints(&[&[2]]));
        assert_eq!(compose(&swap(2, 2), &swap(2, 2)).unwrap(), LinMap::identity(4));
        assert!(matches!(compose(&i3, &LinMap::identity(2)), Err(LinError::DimensionMismatch(_))));
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&LinMap::identity(2), &LinMap::identity(3)), LinMap::identity(6));
        assert_eq!(kron(&ints(&[&[1], &[0]]), &ints(&[&[0], &[1]])), ints(&[&[0], &[1], &[0], &[0]]));
        assert_eq!(kron(&ints(&[&[0, 1], &[1, 0]]), &ints(&[&[2]])), ints(&[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap(1, 4), LinMap::identity(4));
        let s = swap(2, 2);
        assert!(s.get(2, 1).is_one());
        for a in 1..=4 {
            for b in 1..=4 {
                assert_eq!(compose(&swap(b, a), &swap(a, b)).unwrap(), LinMap::identity(a * b));
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&LinMap::identity(3)).is_empty());
        assert_eq!(kernel_basis(&ints(&[&[1, 1]])), vec![ints(&[&[1], &[-1]])]);
        assert_eq!(kernel_basis(&LinMap::zeros(2, 2)), vec![ints(&[&[1], &[0]]), ints(&[&[0], &[1]])]);
    }

    #[test]
    fn rank_one_examples() {
        assert_eq!(rank_one_factor(&LinMap::zeros(2, 2)), Err(LinError::NotRankOne(0)));
        assert_eq!(rank_one_factor(&LinMap::identity(2)), Err(LinError::NotRankOne(2)));
        let (u, v) = rank_one_factor(&ints(&[&[1, 2], &[2, 4]])).unwrap();
        assert_eq!(u, ints(&[&[1], &[2]]));
        assert_eq!(v, ints(&[&[1, 2]]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(invert_matrix(&LinMap::identity(4)).unwrap(), LinMap::identity(4));
        let p = ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(invert_matrix(&p).unwrap(), p);
        assert_eq!(invert_matrix(&ints(&[&[1, 2], &[2, 4]])), Err(LinError::Singular));
        let m = ints(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(compose(&m, &inv).unwrap(), LinMap::identity(3));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = ints(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &ints(&[&[1], &[3]])).unwrap().is_none());
        let (x, k) = solve(&a, &ints(&[&[1], &[2]])).unwrap().unwrap();
        assert_eq!(compose(&a, &x).unwrap(), ints(&[&[1], &[2]]));
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn sparse_apply_at_matches_kron() {
        let f = ints(&[&[1, 2], &[0, 3], &[4, 0]]);
        let big = kron(&kron(&LinMap::identity(2), &f), &LinMap::identity(3));
        let fs = f.sparse();
        for i in 0..big.src_dim() {
            assert_eq!(fs.apply_at(&sv_basis(i), 2, 3), big.col_sparse(i));
        }
    }

    #[test]
    fn permute_matches_swap() {
        let s = swap(2, 3);
        for i in 0..6 {
            assert_eq!(sv_permute(&sv_basis(i), &[2, 3], &[1, 0]), s.col_sparse(i));
        }
    }

    fn arb_map(r: usize, c: usize) -> impl Strategy<Value = LinMap> {
        prop::collection::vec(-3i64..4, r * c)
            .prop_map(move |v| LinMap::new(r, c, v.into_iter().map(FieldScalar::from).collect()))
    }

    proptest! {
        #[test]
        fn interchange_law(f1 in arb_map(2, 3), g1 in arb_map(2, 2), f2 in arb_map(3, 2), g2 in arb_map(1, 3)) {
            let lhs = kron(&compose(&g1, &f1).unwrap(), &compose(&g2, &f2).unwrap());
            let rhs = compose(&kron(&g1, &g2), &kron(&f1, &f2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn swap_is_natural(f in arb_map(2, 3), g in arb_map(3, 2)) {
            // f: 3 -> 2, g: 2 -> 3
            let lhs = compose(&swap(2, 3), &kron(&f, &g)).unwrap();
            let rhs = compose(&kron(&g, &f), &swap(3, 2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kernel_vectors_are_killed(m in arb_map(3, 5)) {
            let ker = kernel_basis(&m);
            prop_assert_eq!(ker.len(), 5 - m.rank());
            for k in &ker {
                prop_assert!(compose(&m, k).unwrap().is_zero());
                let lead = k.entries().iter().find(|x| !x.is_zero()).unwrap();
                prop_assert!(lead.is_one());
            }
        }

        #[test]
        fn rank_one_reproduces(u in prop::collection::vec(-3i64..4, 3), v in prop::collection::vec(-3i64..4, 4)) {
            let m = compose(
                &LinMap::column(u.into_iter().map(FieldScalar::from).collect()),
                &LinMap::row(v.into_iter().map(FieldScalar::from).collect()),
            ).unwrap();
            if let Ok((a, b)) = rank_one_factor(&m) {
                prop_assert_eq!(compose(&a, &b).unwrap(), m);
            } else {
                prop_assert!(m.is_zero());
            }
        }
    }
}
