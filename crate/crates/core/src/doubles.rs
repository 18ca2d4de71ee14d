//! The Drinfeld double on H ⊗ H*, its copy on H ⊗ H built from the red
//! structure, their R-matrices and the isomorphism id ⊗ ρ between them.
//!
//! Coordinates: the pair (a, f) sits at index a·d + f. The dual factor of
//! the classical double uses the coordinate duality ⟨eⁱ, x⟩ = xᵢ and the
//! nested dual Hopf algebra, with multiplication Δᵀ∘swap. Inside the double
//! it carries the comultiplication Mᵀ and antipode (S⁻¹)ᵀ, and
//!
//!   (1 ⊗ f)(b ⊗ 1) = Σ ⟨f₁, S b₃⟩ ⟨f₃, b₁⟩ b₂ ⊗ f₂.
//!
//! The red double replaces H* by (H, red mult, Λ, green comult, λ, s̄) and
//! the pairing by the red cup ψ.

use thiserror::Error;

use crate::hopfcore::{check_hopf, check_law, dual_hopf, standard_cap, standard_cup, BialgebraData, HopfData, Ops, Report};
use crate::hopffrobenius::{HfError, HopfFrobeniusData};
use crate::par;
use crate::scalars::FieldScalar;
use crate::tensorlin::{
    compose, invert_matrix, kron, normalize, solve, sv_basis, sv_kron, sv_permute, sv_to_dense, swap, LinMap, SVec, SparseMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error("the antipode is singular")]
    Singular,
    #[error("constructed structure fails its own checks: {0}")]
    InternalInconsistency(Report),
    #[error(transparent)]
    Hf(#[from] HfError),
}

/// A Hopf algebra on a two-factor carrier together with its R-matrix,
/// a point of the algebra tensored with itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTriangularData {
    pub hopf: HopfData,
    pub r_matrix: LinMap,
    /// Dimensions of the two carrier factors, (d, d) for either double.
    pub carrier: (usize, usize),
}

impl QuasiTriangularData {
    pub fn check(&self) -> Report {
        let mut r = check_hopf(&self.hopf);
        r.extend(check_quasitriangular(&self.hopf, &self.r_matrix));
        r
    }
}

/// The second factor of a double and how it crosses the first.
struct Factor {
    mult: SparseMap,
    unit: SVec,
    /// The comultiplication the double uses on this factor.
    comult: LinMap,
    counit: SVec,
    antipode: SparseMap,
    /// cross[b·d + f] = (1 ⊗ f)(b ⊗ 1), a point of H ⊗ K.
    cross: Vec<SVec>,
    names: Vec<String>,
}

/// Σ b₁ ⊗ b₂ ⊗ b₃ for every basis element, as (b₁, b₂, b₃, coefficient).
fn triples(dl: &SparseMap, d: usize) -> Vec<Vec<(usize, usize, usize, FieldScalar)>> {
    (0..d)
        .map(|b| {
            let once = dl.apply(&sv_basis(b));
            dl.apply_at(&once, 1, d)
                .into_iter()
                .map(|(idx, c)| (idx / (d * d), (idx / d) % d, idx % d, c))
                .collect()
        })
        .collect()
}

/// Builds cross terms from Σ pair(b₁, b₃, f₁, f₃) b₂ ⊗ f₂.
fn cross_terms<P>(h_dl: &SparseMap, k_dl: &SparseMap, d: usize, pair: P) -> Vec<SVec>
where
    P: Fn(usize, usize, usize, usize) -> FieldScalar + Sync + Send,
{
    let tb = triples(h_dl, d);
    let tf = triples(k_dl, d);
    par::map_range(d * d, |bf| {
        let (b, f) = (bf / d, bf % d);
        let mut terms = Vec::new();
        for (b1, b2, b3, cb) in &tb[b] {
            for (f1, f2, f3, cf) in &tf[f] {
                let c = pair(*b1, *b3, *f1, *f3);
                if !c.is_zero() {
                    terms.push((b2 * d + f2, c * cb * cf));
                }
            }
        }
        normalize(terms)
    })
}

fn assemble(h: &HopfData, k: &Factor) -> HopfData {
    let d = h.dim;
    let n = d * d;
    let o = h.ops();
    let mult_cols = par::map_range(n * n, |idx| {
        let (af, bg) = (idx / n, idx % n);
        let (a, f, b, g) = (af / d, af % d, bg / d, bg % d);
        let mut terms = Vec::new();
        for (bf2, c) in &k.cross[b * d + f] {
            let (b2, f2) = (bf2 / d, bf2 % d);
            let left = o.m.column(a * d + b2);
            let right = k.mult.column(f2 * d + g);
            for (p, x) in left {
                for (q, y) in right {
                    terms.push((p * d + q, c * x * y));
                }
            }
        }
        normalize(terms)
    });
    let mult = LinMap::from_sparse_columns(n, &mult_cols);
    let unit = LinMap::from_sparse_columns(n, &[sv_kron(&o.unit, &k.unit, d)]);
    let counit = LinMap::row(sv_to_dense(&sv_kron(&o.counit, &k.counit, d), n));
    let both = kron(&h.comult, &k.comult).sparse();
    let comult_cols: Vec<SVec> = (0..n).map(|x| sv_permute(both.column(x), &[d, d, d, d], &[0, 2, 1, 3])).collect();
    let comult = LinMap::from_sparse_columns(n * n, &comult_cols);
    let names = h
        .basis_names
        .iter()
        .flat_map(|a| k.names.iter().map(move |f| format!("{a} ⊗ {f}")))
        .collect();
    let bialgebra = BialgebraData { dim: n, field: h.field, mult, unit, comult, counit, basis_names: names };
    let dops = Ops::new(&bialgebra, None);
    let s = o.s.as_ref().unwrap();
    let anti_cols = par::map_range(n, |af| {
        let (a, f) = (af / d, af % d);
        let x = sv_kron(&o.unit, k.antipode.column(f), d);
        let y = sv_kron(s.column(a), &k.unit, d);
        dops.mul(&x, &y)
    });
    let antipode = LinMap::from_sparse_columns(n, &anti_cols);
    HopfData { bialgebra, antipode }
}

/// The Drinfeld double D(H) on H ⊗ H*.
pub fn drinfeld_double(h: &HopfData) -> Result<HopfData, DoubleError> {
    let d = h.dim;
    let sinv = invert_matrix(&h.antipode).map_err(|_| DoubleError::Singular)?;
    let k = dual_hopf(h, &standard_cap(d), &standard_cup(d)).expect("coordinate duality");
    let s = h.antipode.clone();
    let cross = cross_terms(&h.comult.sparse(), &k.comult.sparse(), d, |b1, b3, f1, f3| {
        if f3 == b1 {
            s.get(f1, b3).clone()
        } else {
            FieldScalar::zero()
        }
    });
    let factor = Factor {
        mult: k.mult.sparse(),
        unit: k.unit.col_sparse(0),
        comult: h.mult.transpose(),
        counit: k.counit.row_sparse(0),
        antipode: sinv.transpose().sparse(),
        cross,
        names: h.basis_names.iter().map(|n| format!("{n}*")).collect(),
    };
    Ok(assemble(h, &factor))
}

/// The red double D_r(H) on H ⊗ H:
///   (1 ⊗ y)(b ⊗ 1) = Σ ψ(y₁, b₁) ψ(y₃, S b₃) b₂ ⊗ y₂
/// with y split by the green comultiplication.
pub fn red_double(hf: &HopfFrobeniusData) -> HopfData {
    let h = &hf.green_hopf;
    let d = h.dim;
    let psi = hf.gamma_prime.reshape(d, d);
    // ψ(y, S b) for every y, b
    let psi_s = compose(&psi, &h.antipode).unwrap();
    let cross = cross_terms(&h.comult.sparse(), &hf.green_comult.sparse(), d, |b1, b3, y1, y3| {
        psi.get(y1, b1) * psi_s.get(y3, b3)
    });
    let factor = Factor {
        mult: hf.red_mult.sparse(),
        unit: hf.pair.cointegral.col_sparse(0),
        comult: hf.green_comult.clone(),
        counit: hf.pair.integral.row_sparse(0),
        antipode: hf.red_antipode.sparse(),
        cross,
        names: h.basis_names.clone(),
    };
    assemble(h, &factor)
}

/// R = Σᵢ (1 ⊗ eⁱ) ⊗ (eᵢ ⊗ 1) in D(H) ⊗ D(H).
pub fn classic_r_matrix(h: &HopfData) -> LinMap {
    let d = h.dim;
    let n = d * d;
    let unit = h.unit.col_sparse(0);
    // the unit of H* is ε
    let eps = h.counit.row_sparse(0);
    let terms = (0..d)
        .flat_map(|i| {
            let left = sv_kron(&unit, &sv_basis(i), d);
            let right = sv_kron(&sv_basis(i), &eps, d);
            sv_kron(&left, &right, n)
        })
        .collect();
    LinMap::from_sparse_columns(n * n, &[normalize(terms)])
}

/// R_r = Σ (1 ⊗ Λ₂) ⊗ (Λ₁ ⊗ Λ) where Σ Λ₁ ⊗ Λ₂ = ΔΛ.
pub fn red_r_matrix(hf: &HopfFrobeniusData) -> LinMap {
    let d = hf.dim();
    let n = d * d;
    let unit = hf.green_hopf.unit.col_sparse(0);
    let lam = hf.pair.cointegral.col_sparse(0);
    let terms = hf
        .beta_prime
        .col_sparse(0)
        .into_iter()
        .flat_map(|(pq, c)| {
            let left = sv_kron(&unit, &sv_basis(pq % d), d);
            let right = sv_kron(&sv_basis(pq / d), &lam, d);
            sv_kron(&left, &right, n).into_iter().map(move |(i, x)| (i, x * &c))
        })
        .collect();
    LinMap::from_sparse_columns(n * n, &[normalize(terms)])
}

pub fn classic_quasitriangular(h: &HopfData) -> Result<QuasiTriangularData, DoubleError> {
    let d = h.dim;
    Ok(QuasiTriangularData { hopf: drinfeld_double(h)?, r_matrix: classic_r_matrix(h), carrier: (d, d) })
}

pub fn red_quasitriangular(hf: &HopfFrobeniusData) -> QuasiTriangularData {
    let d = hf.dim();
    QuasiTriangularData { hopf: red_double(hf), r_matrix: red_r_matrix(hf), carrier: (d, d) }
}

/// Whether f: A → B preserves every structure map, as a report with laws
/// mult, unit, comult, counit, antipode.
pub fn hom_report(f: &LinMap, a: &HopfData, b: &HopfData) -> Report {
    let (da, db) = (a.dim, b.dim);
    let fs = f.sparse();
    let (oa, ob) = (a.ops(), b.ops());
    let ff = |v: &SVec| fs.apply_at(&fs.apply_at(v, 1, da), db, 1);
    let mut r = Report::default();
    r.push(check_law("mult", da * da, |i| fs.apply(oa.m.column(i)), |i| ob.m.apply(&ff(&sv_basis(i)))));
    r.push(check_law("unit", 1, |_| fs.apply(&oa.unit), |_| ob.unit.clone()));
    r.push(check_law("comult", da, |i| ff(oa.dl.column(i)), |i| ob.dl.apply(fs.column(i))));
    r.push(check_law("counit", da, |i| scalar(oa.eps(&sv_basis(i))), |i| scalar(ob.eps(fs.column(i)))));
    let (sa, sb) = (oa.s.as_ref().unwrap(), ob.s.as_ref().unwrap());
    r.push(check_law("antipode", da, |i| fs.apply(sa.column(i)), |i| sb.apply(fs.column(i))));
    r
}

fn scalar(x: FieldScalar) -> SVec {
    normalize(vec![(0, x)])
}

/// ρ = Ψᵀ and ρ̄ = Θᵀ, where Ψ and Θ are the red cup and cap as matrices.
/// ρ(a) is the functional b ↦ ψ(a, b).
pub fn rho_iso(hf: &HopfFrobeniusData) -> Result<(LinMap, LinMap), DoubleError> {
    let d = hf.dim();
    let rho = hf.gamma_prime.reshape(d, d).transpose();
    let rho_inv = hf.beta_prime.reshape(d, d).transpose();
    let id = LinMap::identity(d);
    let mut r = Report::default();
    r.push(crate::hopfcore::check_maps("rho.inverse_l", &compose(&rho, &rho_inv).unwrap(), &id));
    r.push(crate::hopfcore::check_maps("rho.inverse_r", &compose(&rho_inv, &rho).unwrap(), &id));
    let red = hf.red_hopf();
    let sbar_inv = invert_matrix(&red.antipode).map_err(|_| DoubleError::Singular)?;
    let red_sigma = HopfData {
        bialgebra: BialgebraData { comult: compose(&swap(d, d), &red.comult).unwrap(), ..red.bialgebra.clone() },
        antipode: sbar_inv,
    };
    let dual = dual_hopf(&hf.green_hopf, &standard_cap(d), &standard_cup(d)).expect("coordinate duality");
    let mut hom = hom_report(&rho, &red_sigma, &dual);
    for v in &mut hom.violations {
        v.law = format!("rho.{}", v.law);
    }
    r.extend(hom);
    if !r.is_empty() {
        return Err(DoubleError::InternalInconsistency(r));
    }
    Ok((rho, rho_inv))
}

/// Everything id ⊗ ρ has to preserve, from the red double to the classical
/// one, including the R-matrices.
pub fn iso_report(hf: &HopfFrobeniusData) -> Result<Report, DoubleError> {
    let (rho, _) = rho_iso(hf)?;
    let d = hf.dim();
    let n = d * d;
    let red = red_double(hf);
    let classic = drinfeld_double(&hf.green_hopf)?;
    let phi = kron(&LinMap::identity(d), &rho);
    let mut r = hom_report(&phi, &red, &classic);
    let ps = phi.sparse();
    let rr = red_r_matrix(hf).col_sparse(0);
    r.push(check_law(
        "r_matrix",
        1,
        |_| ps.apply_at(&ps.apply_at(&rr, 1, n), n, 1),
        |_| classic_r_matrix(&hf.green_hopf).col_sparse(0),
    ));
    Ok(r)
}

pub fn double_iso_check(hf: &HopfFrobeniusData) -> bool {
    matches!(iso_report(hf), Ok(r) if r.is_empty())
}

/// Largest H ⊗ H for which a failed (S ⊗ id)R is followed by a linear solve.
const DIRECT_INVERSE_LIMIT: usize = 256;

fn flip(v: &SVec, n: usize) -> SVec {
    sv_permute(v, &[n, n], &[1, 0])
}

/// R₁₂, R₁₃, R₂₃ as points of H⊗H⊗H.
fn legs(r: &SVec, o: &Ops) -> (SVec, SVec, SVec) {
    let n = o.d;
    let r12 = sv_kron(r, &o.unit, n);
    let r13 = sv_permute(&r12, &[n, n, n], &[0, 2, 1]);
    let r23 = sv_kron(&o.unit, r, n * n);
    (r12, r13, r23)
}

/// The three conditions on a universal R-matrix: invertible, Δᵒᵖ(x)R =
/// RΔ(x), and the two splitting rules (Δ⊗id)R = R₁₃R₂₃, (id⊗Δ)R = R₁₃R₁₂.
pub fn check_quasitriangular(h: &HopfData, r: &LinMap) -> Report {
    let o = h.ops();
    let n = h.dim;
    let rv = r.col_sparse(0);
    let one = o.unit_k(2);
    let mut rep = Report::default();

    let cand = o.s.as_ref().unwrap().apply_at(&rv, 1, n);
    let works = |x: &SVec| o.mul_k(&rv, x, 2) == one && o.mul_k(x, &rv, 2) == one;
    if !works(&cand) {
        let inverse = (n * n <= DIRECT_INVERSE_LIMIT)
            .then(|| {
                let cols: Vec<SVec> = (0..n * n).map(|x| o.mul_k(&rv, &sv_basis(x), 2)).collect();
                let left = LinMap::from_sparse_columns(n * n, &cols);
                let target = LinMap::from_sparse_columns(n * n, std::slice::from_ref(&one));
                solve(&left, &target).ok().flatten().map(|(x, _)| x.col_sparse(0))
            })
            .flatten();
        match inverse {
            Some(x) if works(&x) => {}
            _ => rep.push(check_law("r_invertible", 1, |_| o.mul_k(&rv, &cand, 2), |_| one.clone())),
        }
    }

    rep.push(check_law(
        "qcomm",
        n,
        |x| o.mul_k(&flip(o.dl.column(x), n), &rv, 2),
        |x| o.mul_k(&rv, o.dl.column(x), 2),
    ));
    let (r12, r13, r23) = legs(&rv, &o);
    rep.push(check_law("split1", 1, |_| o.dl.apply_at(&rv, 1, n), |_| o.mul_k(&r13, &r23, 3)));
    rep.push(check_law("split2", 1, |_| o.dl.apply_at(&rv, n, 1), |_| o.mul_k(&r13, &r12, 3)));
    rep
}

/// R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂.
pub fn yang_baxter_check(h: &HopfData, r: &LinMap) -> bool {
    let o = h.ops();
    let rv = r.col_sparse(0);
    let (r12, r13, r23) = legs(&rv, &o);
    let lhs = o.mul_k(&o.mul_k(&r12, &r13, 3), &r23, 3);
    let rhs = o.mul_k(&o.mul_k(&r23, &r13, 3), &r12, 3);
    lhs == rhs
}

/// unit ⊗ unit, an R-matrix for any cocommutative Hopf algebra.
pub fn trivial_r_matrix(h: &HopfData) -> LinMap {
    let u = h.unit.col_sparse(0);
    LinMap::from_sparse_columns(h.dim * h.dim, &[sv_kron(&u, &u, h.dim)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic, taft, trivial};
    use crate::hopffrobenius::build_hf;

    #[test]
    fn trivial_double() {
        let h = trivial();
        let dd = drinfeld_double(&h).unwrap();
        assert_eq!(dd.dim, 1);
        assert!(check_hopf(&dd).is_empty());
        let hf = build_hf(&h).unwrap();
        assert_eq!(rho_iso(&hf).unwrap().0, LinMap::identity(1));
        assert!(double_iso_check(&hf));
    }

    #[test]
    fn z2_doubles() {
        let h = cyclic(2);
        let dd = drinfeld_double(&h).unwrap();
        assert!(check_hopf(&dd).is_empty());
        assert!(crate::hopfcore::is_commutative(&dd) && crate::hopfcore::is_cocommutative(&dd));
        let r = classic_r_matrix(&h);
        assert!(check_quasitriangular(&dd, &r).is_empty());
        assert!(yang_baxter_check(&dd, &r));
        let hf = build_hf(&h).unwrap();
        assert!(check_hopf(&red_double(&hf)).is_empty());
        assert!(double_iso_check(&hf));
    }

    #[test]
    fn cocommutative_r() {
        let h = cyclic(2);
        let r = trivial_r_matrix(&h);
        assert!(check_quasitriangular(&h, &r).is_empty());
        assert!(yang_baxter_check(&h, &r));
        // e ⊗ g
        let bad = LinMap::from_sparse_columns(4, &[vec![(1, FieldScalar::one())]]);
        let rep = check_quasitriangular(&h, &bad);
        assert!(rep.contains("split1") || rep.contains("split2"), "{rep}");
    }

    #[test]
    fn sweedler_doubles() {
        let h = taft(2);
        let qt = classic_quasitriangular(&h).unwrap();
        assert_eq!(qt.hopf.dim, 16);
        assert!(qt.check().is_empty(), "{}", qt.check());
        let hf = build_hf(&h).unwrap();
        let red = red_quasitriangular(&hf);
        assert!(red.check().is_empty(), "{}", red.check());
        assert!(yang_baxter_check(&red.hopf, &red.r_matrix));
        let rep = iso_report(&hf).unwrap();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn wrong_r_is_caught() {
        let h = taft(2);
        let dd = drinfeld_double(&h).unwrap();
        let r = classic_r_matrix(&h);
        let flipped = LinMap::from_sparse_columns(256, &[flip(&r.col_sparse(0), 16)]);
        assert!(!check_quasitriangular(&dd, &flipped).is_empty());
    }
}
