//! Example Hopf algebras: group algebras, function algebras on finite
//! groups, Taft algebras over Q(ζ_n) and the one-dimensional algebra.

use thiserror::Error;

use crate::hopfcore::{BialgebraData, HopfData};
use crate::scalars::{Field, FieldScalar};
use crate::tensorlin::{normalize, sv_basis, sv_kron, sv_scale, LinMap, SVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuilderError {
    #[error("not a group: {0}")]
    NotAGroup(String),
}

/// A finite group by its multiplication table: `table[i][j]` is the index
/// of the product of elements i and j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity_index: usize,
    pub names: Vec<String>,
}

impl CayleyTable {
    /// Validates closure, associativity, the identity and inverses.
    pub fn new(table: Vec<Vec<usize>>, identity_index: usize, names: Vec<String>) -> Result<Self, BuilderError> {
        let n = table.len();
        let err = |m: String| Err(BuilderError::NotAGroup(m));
        if n == 0 {
            return err("empty table".into());
        }
        if names.len() != n {
            return err(format!("{} names for {n} elements", names.len()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return err("table is not closed".into());
        }
        if identity_index >= n || (0..n).any(|i| table[identity_index][i] != i || table[i][identity_index] != i) {
            return err("identity does not act trivially".into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return err(format!("({a}{b}){c} != {a}({b}{c})"));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity_index && table[b][a] == identity_index) {
                return err(format!("element {a} has no inverse"));
            }
        }
        Ok(CayleyTable { order: n, table, identity_index, names })
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.table[a][b] == self.identity_index).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n).map(|i| power_name("g", i)).collect();
        CayleyTable::new(table, 0, names).unwrap()
    }

    /// The dihedral group of order 2n: r^i at index i, f·r^i at n + i,
    /// with r·f = f·r⁻¹.
    pub fn dihedral(n: usize) -> Self {
        let elt = |k: usize| (k / n, k % n);
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let ((s, i), (t, j)) = (elt(a), elt(b));
                        // f^s r^i f^t r^j = f^{s+t} r^{(-1)^t i + j}
                        let rot = if t == 0 { i + j } else { n - i + j };
                        ((s + t) % 2) * n + rot % n
                    })
                    .collect()
            })
            .collect();
        let names = (0..2 * n)
            .map(|k| {
                let (s, i) = elt(k);
                let r = power_name("r", i);
                match (s, r.as_str()) {
                    (0, _) => r,
                    (_, "1") => "f".into(),
                    _ => format!("f{r}"),
                }
            })
            .map(|s| if s == "1" { "e".into() } else { s })
            .collect();
        CayleyTable::new(table, 0, names).unwrap()
    }

    /// S_3 as permutations of {0,1,2}, ordered e, r, r², f, fr, fr² with
    /// r = (0 1 2) and f the transposition fixing 0. Products compose
    /// right to left.
    pub fn sym3() -> Self {
        type P = [usize; 3];
        let comp = |p: P, q: P| -> P { [p[q[0]], p[q[1]], p[q[2]]] };
        let e: P = [0, 1, 2];
        let r: P = [1, 2, 0];
        let f: P = [0, 2, 1];
        let r2 = comp(r, r);
        let els = [e, r, r2, f, comp(f, r), comp(f, r2)];
        let idx = |p: P| els.iter().position(|&q| q == p).unwrap();
        let table = els.iter().map(|&a| els.iter().map(|&b| idx(comp(a, b))).collect()).collect();
        let names = ["e", "r", "r^2", "f", "fr", "fr^2"].iter().map(|s| s.to_string()).collect();
        CayleyTable::new(table, 0, names).unwrap()
    }
}

fn power_name(sym: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => sym.into(),
        _ => format!("{sym}^{k}"),
    }
}

fn basis_point(d: usize, i: usize) -> LinMap {
    LinMap::from_fn(d, 1, |r, _| if r == i { FieldScalar::one() } else { FieldScalar::zero() })
}

/// The group algebra k[G]: group elements are grouplike, s(g) = g⁻¹.
pub fn group_algebra(t: &CayleyTable) -> HopfData {
    let d = t.order;
    let mut mult = LinMap::zeros(d, d * d);
    let mut comult = LinMap::zeros(d * d, d);
    let mut antipode = LinMap::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            mult.set(t.table[i][j], i * d + j, FieldScalar::one());
        }
        comult.set(i * d + i, i, FieldScalar::one());
        antipode.set(t.inverse(i), i, FieldScalar::one());
    }
    let b = BialgebraData {
        dim: d,
        field: Field::Rational,
        mult,
        unit: basis_point(d, t.identity_index),
        comult,
        counit: LinMap::row(vec![FieldScalar::one(); d]),
        basis_names: t.names.clone(),
    };
    HopfData { bialgebra: b, antipode }
}

/// Functions on G in the delta basis: pointwise product and
/// Δ(δ_g) = Σ_{hk=g} δ_h ⊗ δ_k.
pub fn function_algebra(t: &CayleyTable) -> HopfData {
    let d = t.order;
    let mut mult = LinMap::zeros(d, d * d);
    let mut comult = LinMap::zeros(d * d, d);
    let mut antipode = LinMap::zeros(d, d);
    for h in 0..d {
        mult.set(h, h * d + h, FieldScalar::one());
        for k in 0..d {
            comult.set(h * d + k, t.table[h][k], FieldScalar::one());
        }
        antipode.set(t.inverse(h), h, FieldScalar::one());
    }
    let b = BialgebraData {
        dim: d,
        field: Field::Rational,
        mult,
        unit: LinMap::column(vec![FieldScalar::one(); d]),
        comult,
        counit: LinMap::row((0..d).map(|g| FieldScalar::from((g == t.identity_index) as i64)).collect()),
        basis_names: t.names.iter().map(|n| format!("d_{n}")).collect(),
    };
    HopfData { bialgebra: b, antipode }
}

pub fn cyclic(n: usize) -> HopfData {
    group_algebra(&CayleyTable::cyclic(n))
}

pub fn dihedral(n: usize) -> HopfData {
    group_algebra(&CayleyTable::dihedral(n))
}

pub fn sym3() -> HopfData {
    group_algebra(&CayleyTable::sym3())
}

/// Dimension one, every structure map the scalar 1.
pub fn trivial() -> HopfData {
    let one = LinMap::identity(1);
    let b = BialgebraData {
        dim: 1,
        field: Field::Rational,
        mult: one.clone(),
        unit: one.clone(),
        comult: one.clone(),
        counit: one.clone(),
        basis_names: vec!["1".into()],
    };
    HopfData { bialgebra: b, antipode: one }
}

fn taft_name(b: usize, a: usize) -> String {
    let g = if b == 0 { String::new() } else { power_name("g", b) };
    let x = if a == 0 { String::new() } else { power_name("x", a) };
    let s = format!("{g}{x}");
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// The Taft algebra T_n over Q(ζ_n): x^n = 0, g^n = 1, gx = ζ·xg,
/// Δ(x) = 1⊗x + x⊗g, Δ(g) = g⊗g, s(x) = −xg⁻¹, s(g) = g⁻¹.
/// Basis g^β x^α sits at index β·n + α, so T_2 has basis (1, x, g, gx).
pub fn taft(n: usize) -> HopfData {
    assert!(n >= 2, "taft needs n >= 2");
    let d = n * n;
    let idx = |b: usize, a: usize| b * n + a;
    let z = Field::Cyclotomic(n as u32).root();
    let zpow: Vec<FieldScalar> = (0..n).map(|k| z.pow(k as i64)).collect();

    // x^a1 g^b2 = z^{-a1 b2} g^b2 x^a1
    let mut mult = LinMap::zeros(d, d * d);
    for b1 in 0..n {
        for a1 in 0..n {
            for b2 in 0..n {
                for a2 in 0..n - a1 {
                    let c = zpow[(n - (a1 * b2) % n) % n].clone();
                    mult.set(idx((b1 + b2) % n, a1 + a2), idx(b1, a1) * d + idx(b2, a2), c);
                }
            }
        }
    }
    let ms = mult.sparse();
    let mul = |a: &SVec, b: &SVec| -> SVec {
        let mut terms = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, c) in ms.column(i * d + j) {
                    terms.push((*k, c * &(x * y)));
                }
            }
        }
        normalize(terms)
    };
    let mul2 = |a: &SVec, b: &SVec| -> SVec {
        let mut terms = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let l = mul(&sv_basis(i / d), &sv_basis(j / d));
                let r = mul(&sv_basis(i % d), &sv_basis(j % d));
                terms.extend(sv_scale(&sv_kron(&l, &r, d), &(x * y)));
            }
        }
        normalize(terms)
    };

    let one = sv_basis(idx(0, 0));
    let g = sv_basis(idx(1, 0));
    let x = sv_basis(idx(0, 1));
    let ginv = sv_basis(idx(n - 1, 0));
    let dg = sv_kron(&g, &g, d);
    let dx = normalize([sv_kron(&one, &x, d), sv_kron(&x, &g, d)].concat());
    let sx = sv_scale(&mul(&x, &ginv), &FieldScalar::from(-1));

    let mut comult_cols = vec![Vec::new(); d];
    let mut antipode_cols = vec![Vec::new(); d];
    for b in 0..n {
        for a in 0..n {
            let mut v = sv_kron(&one, &one, d);
            for _ in 0..b {
                v = mul2(&v, &dg);
            }
            for _ in 0..a {
                v = mul2(&v, &dx);
            }
            comult_cols[idx(b, a)] = v;
            // s is an antihomomorphism: s(g^b x^a) = s(x)^a g^{-b}
            let mut s = one.clone();
            for _ in 0..a {
                s = mul(&sx, &s);
            }
            for _ in 0..b {
                s = mul(&s, &ginv);
            }
            antipode_cols[idx(b, a)] = s;
        }
    }
    let bialgebra = BialgebraData {
        dim: d,
        field: Field::Cyclotomic(n as u32),
        mult,
        unit: basis_point(d, 0),
        comult: LinMap::from_sparse_columns(d * d, &comult_cols),
        counit: LinMap::row((0..d).map(|i| FieldScalar::from((i % n == 0) as i64)).collect()),
        basis_names: (0..n).flat_map(|b| (0..n).map(move |a| taft_name(b, a))).collect(),
    };
    HopfData { bialgebra, antipode: LinMap::from_sparse_columns(d, &antipode_cols) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::{check_hopf, is_cocommutative, is_commutative};

    #[test]
    fn rejects_non_groups() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(CayleyTable::new(vec![vec![0, 1], vec![1, 1]], 0, names.clone()).is_err());
        assert!(CayleyTable::new(vec![vec![0, 1], vec![1, 2]], 0, names.clone()).is_err());
        assert!(CayleyTable::new(vec![vec![1, 0], vec![0, 1]], 0, names).is_err());
    }

    #[test]
    fn sym3_is_dihedral3() {
        assert_eq!(CayleyTable::sym3().table, CayleyTable::dihedral(3).table);
    }

    #[test]
    fn taft2_names_and_table() {
        let t = taft(2);
        assert_eq!(t.basis_names, vec!["1", "x", "g", "gx"]);
        assert_eq!(taft(3).basis_names[5], "gx^2");
    }

    #[test]
    fn builder_outputs_are_hopf() {
        let t = CayleyTable::sym3();
        for h in [trivial(), cyclic(1), cyclic(2), cyclic(4), dihedral(4), sym3(), function_algebra(&t), taft(2), taft(3)]
        {
            assert!(check_hopf(&h).is_empty(), "{}", check_hopf(&h));
        }
    }

    #[test]
    fn commutativity_pattern() {
        let s = sym3();
        assert!(is_cocommutative(&s) && !is_commutative(&s));
        let f = function_algebra(&CayleyTable::sym3());
        assert!(is_commutative(&f) && !is_cocommutative(&f));
        for n in 2..=4 {
            let t = taft(n);
            assert!(!is_commutative(&t) && !is_cocommutative(&t));
        }
        assert_eq!(cyclic(1).dim, 1);
    }
}
