//! Bialgebras and Hopf algebras given by structure constants, with exact
//! axiom checkers that report a witness entry for every violated law.
//!
//! Layout: `mult` is d × d² with entry (k, i·d + j) the coefficient of e_k in
//! e_i·e_j; `comult` is d² × d; `unit` is d × 1 and `counit` is 1 × d.

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::par;
use crate::scalars::{Field, FieldScalar};
use crate::tensorlin::{
    compose, invert_matrix, kron, normalize, solve, sv_basis, sv_from_dense, sv_kron, sv_permute, swap, LinError,
    LinMap, SVec, SparseMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("the antipode equation has no solution")]
    NoAntipode,
    #[error("the antipode equation holds on one side only")]
    AntipodeOneSided,
    #[error("cap and cup do not satisfy the snake equations")]
    SnakeFailure,
    #[error("input is not a bialgebra: {0}")]
    NotABialgebra(Report),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// One point where two composites disagree: output coordinate `row` of
/// input basis tensor `col`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: FieldScalar,
    pub rhs: FieldScalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: Witness,
}

/// The violated laws of a check; empty means everything held.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn laws(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.law.as_str()).collect()
    }

    pub fn push(&mut self, v: Option<Violation>) {
        self.violations.extend(v);
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "no violations");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                format!(
                    "{} (input {}, output {}: {} != {})",
                    v.law, v.witness.col, v.witness.row, v.witness.lhs, v.witness.rhs
                )
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Compares two composites on every basis input of a space of dimension
/// `src`. The witness is the first differing entry, scanning inputs in
/// order and then outputs in order.
pub fn check_law<L, R>(law: &str, src: usize, lhs: L, rhs: R) -> Option<Violation>
where
    L: Fn(usize) -> SVec + Sync + Send,
    R: Fn(usize) -> SVec + Sync + Send,
{
    par::find_first(src, |col| {
        let a = lhs(col);
        let b = rhs(col);
        if a == b {
            return None;
        }
        Some(first_mismatch(col, &a, &b))
    })
    .map(|witness| Violation { law: law.to_string(), witness })
}

fn first_mismatch(col: usize, a: &SVec, b: &SVec) -> Witness {
    let zero = FieldScalar::zero();
    let mut rows: Vec<usize> = a.iter().chain(b.iter()).map(|t| t.0).collect();
    rows.sort_unstable();
    rows.dedup();
    let find = |v: &SVec, r: usize| v.iter().find(|t| t.0 == r).map_or(zero.clone(), |t| t.1.clone());
    for r in rows {
        let (x, y) = (find(a, r), find(b, r));
        if x != y {
            return Witness { row: r, col, lhs: x, rhs: y };
        }
    }
    unreachable!("vectors differ")
}

/// Compares two dense maps of the same shape.
pub fn check_maps(law: &str, lhs: &LinMap, rhs: &LinMap) -> Option<Violation> {
    if lhs.src_dim() != rhs.src_dim() || lhs.dst_dim() != rhs.dst_dim() {
        return Some(Violation {
            law: law.to_string(),
            witness: Witness { row: 0, col: 0, lhs: FieldScalar::zero(), rhs: FieldScalar::zero() },
        });
    }
    lhs.first_difference(rhs).map(|(row, col)| Violation {
        law: law.to_string(),
        witness: Witness { row, col, lhs: lhs.get(row, col).clone(), rhs: rhs.get(row, col).clone() },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraData {
    pub dim: usize,
    pub field: Field,
    pub mult: LinMap,
    pub unit: LinMap,
    pub comult: LinMap,
    pub counit: LinMap,
    pub basis_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfData {
    pub bialgebra: BialgebraData,
    pub antipode: LinMap,
}

impl Deref for HopfData {
    type Target = BialgebraData;
    fn deref(&self) -> &BialgebraData {
        &self.bialgebra
    }
}

impl BialgebraData {
    /// Checks shapes and packages the data.
    pub fn new(
        field: Field,
        mult: LinMap,
        unit: LinMap,
        comult: LinMap,
        counit: LinMap,
        basis_names: Vec<String>,
    ) -> Result<Self, LinError> {
        let d = unit.dst_dim();
        let shapes = [
            (mult.dst_dim(), mult.src_dim(), d, d * d, "mult"),
            (unit.dst_dim(), unit.src_dim(), d, 1, "unit"),
            (comult.dst_dim(), comult.src_dim(), d * d, d, "comult"),
            (counit.dst_dim(), counit.src_dim(), 1, d, "counit"),
        ];
        for (r, c, er, ec, name) in shapes {
            if (r, c) != (er, ec) {
                return Err(LinError::DimensionMismatch(format!("{name} is {r}x{c}, expected {er}x{ec}")));
            }
        }
        if basis_names.len() != d {
            return Err(LinError::DimensionMismatch(format!("{} basis names for dimension {d}", basis_names.len())));
        }
        Ok(BialgebraData { dim: d, field, mult, unit, comult, counit, basis_names })
    }

    pub fn ops(&self) -> Ops {
        Ops::new(self, None)
    }
}

impl HopfData {
    pub fn new(bialgebra: BialgebraData, antipode: LinMap) -> Result<Self, LinError> {
        let d = bialgebra.dim;
        if (antipode.dst_dim(), antipode.src_dim()) != (d, d) {
            return Err(LinError::DimensionMismatch("antipode must be d x d".into()));
        }
        Ok(HopfData { bialgebra, antipode })
    }

    pub fn ops(&self) -> Ops {
        Ops::new(&self.bialgebra, Some(&self.antipode))
    }

    pub fn with_antipode(&self, antipode: LinMap) -> HopfData {
        HopfData { bialgebra: self.bialgebra.clone(), antipode }
    }
}

/// Sparse evaluators for the structure maps of one algebra.
#[derive(Clone, Debug)]
pub struct Ops {
    pub d: usize,
    pub m: SparseMap,
    pub unit: SVec,
    pub dl: SparseMap,
    pub counit: SVec,
    pub s: Option<SparseMap>,
}

impl Ops {
    pub fn new(b: &BialgebraData, s: Option<&LinMap>) -> Self {
        Ops {
            d: b.dim,
            m: b.mult.sparse(),
            unit: b.unit.col_sparse(0),
            dl: b.comult.sparse(),
            counit: b.counit.row_sparse(0),
            s: s.map(|s| s.sparse()),
        }
    }

    /// From raw maps, for structures that are not (yet) packaged.
    pub fn from_maps(mult: &LinMap, unit: &LinMap, comult: &LinMap, counit: &LinMap, s: Option<&LinMap>) -> Self {
        Ops {
            d: unit.dst_dim(),
            m: mult.sparse(),
            unit: unit.col_sparse(0),
            dl: comult.sparse(),
            counit: counit.row_sparse(0),
            s: s.map(|s| s.sparse()),
        }
    }

    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in self.m.column(i * self.d + j) {
                    terms.push((*k, c * &xy));
                }
            }
        }
        normalize(terms)
    }

    pub fn comul(&self, a: &SVec) -> SVec {
        self.dl.apply(a)
    }

    pub fn eps(&self, a: &SVec) -> FieldScalar {
        dot(&self.counit, a)
    }

    pub fn antipode(&self, a: &SVec) -> SVec {
        self.s.as_ref().expect("no antipode").apply(a)
    }

    /// The unit of H^{⊗k}.
    pub fn unit_k(&self, k: usize) -> SVec {
        let mut v = sv_basis(0);
        for _ in 0..k {
            v = sv_kron(&v, &self.unit, self.d);
        }
        v
    }

    /// Componentwise product in H^{⊗k}.
    pub fn mul_k(&self, a: &SVec, b: &SVec, k: usize) -> SVec {
        let d = self.d;
        let mut terms = Vec::new();
        let mut da = vec![0usize; k];
        let mut db = vec![0usize; k];
        for (ia, x) in a {
            digits(*ia, d, &mut da);
            for (ib, y) in b {
                digits(*ib, d, &mut db);
                let mut acc: SVec = vec![(0, x * y)];
                for t in 0..k {
                    acc = sv_kron(&acc, self.m.column(da[t] * d + db[t]), d);
                    if acc.is_empty() {
                        break;
                    }
                }
                terms.extend(acc);
            }
        }
        normalize(terms)
    }
}

/// Splits a flat tensor index into factor indices, leading factor first.
pub fn digits(mut idx: usize, d: usize, out: &mut [usize]) {
    for k in (0..out.len()).rev() {
        out[k] = idx % d;
        idx /= d;
    }
}

pub fn dot(a: &SVec, b: &SVec) -> FieldScalar {
    let mut acc = FieldScalar::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

fn scalar_sv(x: FieldScalar) -> SVec {
    if x.is_zero() {
        Vec::new()
    } else {
        vec![(0, x)]
    }
}

/// Monoid laws of (mult, unit) on a d-dimensional space.
pub fn check_monoid(o: &Ops) -> Report {
    let d = o.d;
    let mut r = Report::default();
    r.push(check_law(
        "assoc",
        d * d * d,
        |i| o.m.apply(&o.m.apply_at(&sv_basis(i), 1, d)),
        |i| o.m.apply(&o.m.apply_at(&sv_basis(i), d, 1)),
    ));
    r.push(check_law("unit_l", d, |i| o.mul(&o.unit, &sv_basis(i)), sv_basis));
    r.push(check_law("unit_r", d, |i| o.mul(&sv_basis(i), &o.unit), sv_basis));
    r
}

/// Comonoid laws of (comult, counit).
pub fn check_comonoid(o: &Ops) -> Report {
    let d = o.d;
    let counit_map = SparseMap::from_columns(1, (0..d).map(|i| scalar_sv(dot(&o.counit, &sv_basis(i)))).collect());
    let mut r = Report::default();
    r.push(check_law(
        "coassoc",
        d,
        |i| o.dl.apply_at(&o.comul(&sv_basis(i)), 1, d),
        |i| o.dl.apply_at(&o.comul(&sv_basis(i)), d, 1),
    ));
    r.push(check_law("counit_l", d, |i| counit_map.apply_at(&o.comul(&sv_basis(i)), 1, d), sv_basis));
    r.push(check_law("counit_r", d, |i| counit_map.apply_at(&o.comul(&sv_basis(i)), d, 1), sv_basis));
    r
}

/// The compatibility laws: copy, cocopy, bialg, scalar.
fn check_compat(o: &Ops) -> Report {
    let d = o.d;
    let mut r = Report::default();
    r.push(check_law("copy", 1, |_| o.comul(&o.unit), |_| sv_kron(&o.unit, &o.unit, d)));
    r.push(check_law(
        "cocopy",
        d * d,
        |i| scalar_sv(o.eps(&o.m.apply(&sv_basis(i)))),
        |i| scalar_sv(&o.eps(&sv_basis(i / d)) * &o.eps(&sv_basis(i % d))),
    ));
    r.push(check_law(
        "bialg",
        d * d,
        |i| o.comul(&o.m.apply(&sv_basis(i))),
        |i| o.mul_k(&o.comul(&sv_basis(i / d)), &o.comul(&sv_basis(i % d)), 2),
    ));
    r.push(check_law("scalar", 1, |_| scalar_sv(o.eps(&o.unit)), |_| sv_basis(0)));
    r
}

pub fn check_bialgebra(b: &BialgebraData) -> Report {
    let o = b.ops();
    let mut r = check_monoid(&o);
    r.extend(check_comonoid(&o));
    r.extend(check_compat(&o));
    r
}

/// Both sides of the Hopf law for the antipode in `o`.
pub fn check_hopf_law(o: &Ops) -> Report {
    let d = o.d;
    let s = o.s.as_ref().expect("no antipode");
    let ue = |i: usize| crate::tensorlin::sv_scale(&o.unit, &o.eps(&sv_basis(i)));
    let mut r = Report::default();
    r.push(check_law("hopf_l", d, |i| o.m.apply(&s.apply_at(&o.comul(&sv_basis(i)), 1, d)), ue));
    r.push(check_law("hopf_r", d, |i| o.m.apply(&s.apply_at(&o.comul(&sv_basis(i)), d, 1)), ue));
    r
}

pub fn check_hopf(h: &HopfData) -> Report {
    let mut r = check_bialgebra(&h.bialgebra);
    r.extend(check_hopf_law(&h.ops()));
    r
}

/// f ⋆ g = mult ∘ (f ⊗ g) ∘ comult.
pub fn convolution(f: &LinMap, g: &LinMap, b: &BialgebraData) -> Result<LinMap, LinError> {
    let d = b.dim;
    for m in [f, g] {
        if (m.dst_dim(), m.src_dim()) != (d, d) {
            return Err(LinError::DimensionMismatch("convolution needs d x d maps".into()));
        }
    }
    let o = b.ops();
    let fg = kron(f, g).sparse();
    let cols = par::map_range(d, |i| o.m.apply(&fg.apply(&o.comul(&sv_basis(i)))));
    Ok(LinMap::from_sparse_columns(d, &cols))
}

/// The linear system mult∘(S⊗id)∘comult = unit∘counit in the d² entries of
/// S, unknown S[k][i] at position k·d + i.
fn antipode_system(b: &BialgebraData, left: bool) -> (LinMap, LinMap) {
    let d = b.dim;
    let o = b.ops();
    let mut a = LinMap::zeros(d * d, d * d);
    let mut rhs = LinMap::zeros(d * d, 1);
    for x in 0..d {
        let ex = o.eps(&sv_basis(x));
        for (l, u) in &o.unit {
            rhs.set(x * d + l, 0, u * &ex);
        }
        for (ij, c) in o.comul(&sv_basis(x)) {
            let (i, j) = (ij / d, ij % d);
            for k in 0..d {
                // S(e_i) contributes S[k][i] e_k, multiplied against e_j
                let prod = if left { k * d + j } else { j * d + k };
                for (l, m) in o.m.column(prod) {
                    let cur = a.get(x * d + l, k * d + i).clone();
                    a.set(x * d + l, k * d + i, cur + &c * m);
                }
            }
        }
    }
    (a, rhs)
}

/// Dimension of the solution space of the homogeneous antipode system, or
/// `None` when the inhomogeneous system is inconsistent.
pub fn antipode_solution_dimension(b: &BialgebraData) -> Option<usize> {
    let (a, rhs) = antipode_system(b, true);
    solve(&a, &rhs).ok().flatten().map(|(_, k)| k.len())
}

/// Solves for the antipode from the left Hopf law and confirms the right one.
pub fn solve_antipode(b: &BialgebraData) -> Result<HopfData, HopfError> {
    let d = b.dim;
    let (a, rhs) = antipode_system(b, true);
    let (x, _) = solve(&a, &rhs)?.ok_or(HopfError::NoAntipode)?;
    let s = LinMap::from_fn(d, d, |k, i| x.get(k * d + i, 0).clone());
    let h = HopfData { bialgebra: b.clone(), antipode: s };
    if !check_hopf_law(&h.ops()).is_empty() {
        return Err(HopfError::AntipodeOneSided);
    }
    Ok(h)
}

fn op_bialgebra(b: &BialgebraData, swap_mult: bool, swap_comult: bool) -> BialgebraData {
    let d = b.dim;
    let p = swap(d, d);
    let mut out = b.clone();
    if swap_mult {
        out.mult = compose(&b.mult, &p).unwrap();
    }
    if swap_comult {
        out.comult = compose(&p, &b.comult).unwrap();
    }
    out
}

/// Both arguments swapped: multiplication and comultiplication reversed,
/// antipode solved again.
pub fn op_variant(h: &HopfData) -> Result<HopfData, HopfError> {
    solve_antipode(&op_bialgebra(&h.bialgebra, true, true))
}

/// Only the comultiplication reversed. Not necessarily Hopf.
pub fn sigma_variant(h: &HopfData) -> BialgebraData {
    op_bialgebra(&h.bialgebra, false, true)
}

/// Least k ≤ bound with s^k = id.
pub fn antipode_order(h: &HopfData, bound: usize) -> Option<usize> {
    let id = LinMap::identity(h.dim);
    let mut p = h.antipode.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k);
        }
        p = compose(&h.antipode, &p).unwrap();
    }
    None
}

pub fn is_commutative(b: &BialgebraData) -> bool {
    b.mult == compose(&b.mult, &swap(b.dim, b.dim)).unwrap()
}

pub fn is_cocommutative(b: &BialgebraData) -> bool {
    b.comult == compose(&swap(b.dim, b.dim), &b.comult).unwrap()
}

/// Σ e_i ⊗ e_i as a d² × 1 point.
pub fn standard_cap(d: usize) -> LinMap {
    LinMap::from_fn(d * d, 1, |r, _| if r / d == r % d { FieldScalar::one() } else { FieldScalar::zero() })
}

/// The row transpose of [`standard_cap`].
pub fn standard_cup(d: usize) -> LinMap {
    standard_cap(d).transpose()
}

fn reversal(m: usize, d: usize) -> LinMap {
    match m {
        0 => LinMap::identity(1),
        1 => LinMap::identity(d),
        2 => swap(d, d),
        _ => {
            let n = d.pow(m as u32);
            let dims = vec![d; m];
            let perm: Vec<usize> = (0..m).rev().collect();
            let cols: Vec<SVec> = (0..n).map(|i| sv_permute(&sv_basis(i), &dims, &perm)).collect();
            LinMap::from_sparse_columns(n, &cols)
        }
    }
}

fn kron_power(a: &LinMap, m: usize) -> LinMap {
    let mut out = LinMap::identity(1);
    for _ in 0..m {
        out = kron(&out, a);
    }
    out
}

/// Cap and cup as square matrices: `c[a][b]` is the coefficient of e_a ⊗ e_b
/// in the cap, `u[b][a]` the value of the cup on e_b ⊗ e_a.
pub fn duality_matrices(cap: &LinMap, cup: &LinMap, d: usize) -> Result<(LinMap, LinMap), HopfError> {
    if (cap.dst_dim(), cap.src_dim()) != (d * d, 1) || (cup.dst_dim(), cup.src_dim()) != (1, d * d) {
        return Err(HopfError::Lin(LinError::DimensionMismatch("cap must be d²x1 and cup 1xd²".into())));
    }
    let c = cap.reshape(d, d);
    let u = cup.reshape(d, d);
    let id = LinMap::identity(d);
    if compose(&c, &u)? != id || compose(&u, &c)? != id {
        return Err(HopfError::SnakeFailure);
    }
    Ok((c, u))
}

/// Bends every wire of f: H^{⊗m} → H^{⊗n} around the given duality,
/// producing the map (H*)^{⊗n} → (H*)^{⊗m} with nested ordering of the
/// dual factors.
pub fn dual_map(f: &LinMap, m: usize, n: usize, c: &LinMap, u: &LinMap) -> LinMap {
    let d = c.dst_dim();
    let left = compose(&reversal(m, d), &kron_power(&c.transpose(), m)).unwrap();
    let right = compose(&kron_power(&u.transpose(), n), &reversal(n, d)).unwrap();
    compose(&left, &compose(&f.transpose(), &right).unwrap()).unwrap()
}

/// The dual Hopf algebra on the same coordinate space, all structure maps
/// obtained by bending wires with the supplied cap and cup.
pub fn dual_hopf(h: &HopfData, cap: &LinMap, cup: &LinMap) -> Result<HopfData, HopfError> {
    let d = h.dim;
    let (c, u) = duality_matrices(cap, cup, d)?;
    let b = BialgebraData {
        dim: d,
        field: h.field,
        mult: dual_map(&h.comult, 1, 2, &c, &u),
        unit: dual_map(&h.counit, 1, 0, &c, &u),
        comult: dual_map(&h.mult, 2, 1, &c, &u),
        counit: dual_map(&h.unit, 0, 1, &c, &u),
        basis_names: h.basis_names.iter().map(|n| format!("{n}*")).collect(),
    };
    Ok(HopfData { bialgebra: b, antipode: dual_map(&h.antipode, 1, 1, &c, &u) })
}

/// Identities every Hopf algebra satisfies: the antipode reverses products
/// and coproducts, and the alternate bialgebra rule
/// Σ x₁y ⊗ x₂ = Σ (xy₁)₁ ⊗ (xy₁)₂ S(y₂).
pub fn check_antipode_properties(h: &HopfData) -> Report {
    let d = h.dim;
    let o = h.ops();
    let s = o.s.as_ref().unwrap();
    let mut r = Report::default();
    r.push(check_law(
        "anti_mult",
        d * d,
        |i| s.apply(&o.m.apply(&sv_basis(i))),
        |i| o.mul(&s.apply(&sv_basis(i % d)), &s.apply(&sv_basis(i / d))),
    ));
    r.push(check_law(
        "anti_comult",
        d,
        |i| o.comul(&s.apply(&sv_basis(i))),
        |i| {
            let ss = s.apply_at(&s.apply_at(&o.comul(&sv_basis(i)), 1, d), d, 1);
            sv_permute(&ss, &[d, d], &[1, 0])
        },
    ));
    r.push(check_law(
        "alt_bialg",
        d * d,
        |i| {
            // (x1 y) ⊗ x2
            let x1x2 = o.comul(&sv_basis(i / d));
            let mut terms = Vec::new();
            for (idx, c) in &x1x2 {
                let prod = o.mul(&sv_basis(idx / d), &sv_basis(i % d));
                for (k, v) in prod {
                    terms.push((k * d + idx % d, v * c));
                }
            }
            normalize(terms)
        },
        |i| {
            let x = sv_basis(i / d);
            let mut terms = Vec::new();
            for (idx, c) in &o.comul(&sv_basis(i % d)) {
                let xy1 = o.mul(&x, &sv_basis(idx / d));
                let right = crate::tensorlin::sv_kron(&o.unit, &s.apply(&sv_basis(idx % d)), d);
                let v = o.mul_k(&o.comul(&xy1), &right, 2);
                terms.extend(crate::tensorlin::sv_scale(&v, c));
            }
            normalize(terms)
        },
    ));
    r
}

/// A map as the dense form of its action on basis vectors, for small d.
pub fn map_from_fn(dst: usize, src: usize, f: impl Fn(usize) -> SVec + Sync + Send) -> LinMap {
    let cols = par::map_range(src, f);
    LinMap::from_sparse_columns(dst, &cols)
}

/// The inverse of the antipode, for callers that need s⁻¹.
pub fn antipode_inverse(h: &HopfData) -> Result<LinMap, LinError> {
    invert_matrix(&h.antipode)
}

/// A point of H built from a dense coordinate vector.
pub fn point(v: &[FieldScalar]) -> SVec {
    sv_from_dense(v)
}
