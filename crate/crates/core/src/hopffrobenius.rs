//! The Hopf-Frobenius structure of a finite-dimensional Hopf algebra.
//!
//! From a normalized pair (Λ, λ) we get four forms:
//! * β(a, b) = λ(ab) and its inverse γ = (S ⊗ id)∘Δ∘Λ (the green cup and cap);
//! * θ = Δ∘Λ and its inverse ψ, with ψ(a, b) = λ(a S(b)) (the red cap and cup).
//!
//! These give the green comultiplication a ↦ Σ aγ₁ ⊗ γ₂, the red
//! multiplication (a, b) ↦ Σ a₁ ψ(a₂, b), and the red antipode
//! a ↦ Σ λ(aΛ₁) Λ₂.

use thiserror::Error;

use crate::hopfcore::{
    check_comonoid, check_hopf, check_law, check_maps, check_monoid, dual_map, duality_matrices, BialgebraData,
    HopfData, Ops, Report,
};
use crate::integrals::{frobenius_condition, green_cap, green_cup, is_cointegral, is_integral, IntegralError, IntegralPair};
use crate::scalars::FieldScalar;
use crate::tensorlin::{
    compose, invert_matrix, kron, solve, sv_basis, LinMap, SVec, SparseMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfError {
    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),
    #[error("constructed structure fails its own checks: {0}")]
    InternalInconsistency(Report),
    #[error("copoint is not coinvertible")]
    NotCoinvertible,
    #[error("not a Frobenius form: {0}")]
    InvalidForm(String),
}

impl From<IntegralError> for HfError {
    fn from(e: IntegralError) -> Self {
        HfError::DegeneratePairing(e.to_string())
    }
}

/// A monoid and comonoid on one space, meant to satisfy the Frobenius law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    pub mult: LinMap,
    pub unit: LinMap,
    pub comult: LinMap,
    pub counit: LinMap,
}

impl FrobeniusAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.dst_dim()
    }

    fn ops(&self) -> Ops {
        Ops::from_maps(&self.mult, &self.unit, &self.comult, &self.counit, None)
    }

    /// The cup ε∘mult.
    pub fn cup(&self) -> LinMap {
        compose(&self.counit, &self.mult).unwrap()
    }

    /// The cap comult∘unit.
    pub fn cap(&self) -> LinMap {
        compose(&self.comult, &self.unit).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfFrobeniusData {
    pub green_hopf: HopfData,
    pub pair: IntegralPair,
    pub green_comult: LinMap,
    pub red_mult: LinMap,
    pub red_antipode: LinMap,
    /// Green cup, 1 × d².
    pub beta: LinMap,
    /// Green cap, d² × 1.
    pub gamma: LinMap,
    /// Red cap θ, d² × 1.
    pub beta_prime: LinMap,
    /// Red cup ψ, 1 × d².
    pub gamma_prime: LinMap,
}

impl HopfFrobeniusData {
    pub fn dim(&self) -> usize {
        self.green_hopf.dim
    }

    /// (M, u, green comult, λ).
    pub fn green_frobenius(&self) -> FrobeniusAlgebra {
        FrobeniusAlgebra {
            mult: self.green_hopf.mult.clone(),
            unit: self.green_hopf.unit.clone(),
            comult: self.green_comult.clone(),
            counit: self.pair.integral.clone(),
        }
    }

    /// (red mult, Λ, Δ, ε).
    pub fn red_frobenius(&self) -> FrobeniusAlgebra {
        FrobeniusAlgebra {
            mult: self.red_mult.clone(),
            unit: self.pair.cointegral.clone(),
            comult: self.green_hopf.comult.clone(),
            counit: self.green_hopf.counit.clone(),
        }
    }

    /// (red mult, Λ, green comult, λ, red antipode).
    pub fn red_hopf(&self) -> HopfData {
        let g = &self.green_hopf;
        HopfData {
            bialgebra: BialgebraData {
                dim: g.dim,
                field: g.field,
                mult: self.red_mult.clone(),
                unit: self.pair.cointegral.clone(),
                comult: self.green_comult.clone(),
                counit: self.pair.integral.clone(),
                basis_names: g.basis_names.clone(),
            },
            antipode: self.red_antipode.clone(),
        }
    }
}

/// Runs the Frobenius condition and builds the full structure.
pub fn build_hf(h: &HopfData) -> Result<HopfFrobeniusData, HfError> {
    let pair = frobenius_condition(h)?;
    build_hf_with_pair(h, &pair)
}

/// Builds the structure from a chosen pair. The result is verified before
/// it is returned.
pub fn build_hf_with_pair(h: &HopfData, pair: &IntegralPair) -> Result<HopfFrobeniusData, HfError> {
    let d = h.dim;
    if !is_cointegral(h, &pair.cointegral) || !is_integral(h, &pair.integral) {
        return Err(HfError::DegeneratePairing("pair is not a cointegral and an integral".into()));
    }
    if !pair.pairing().is_one() {
        return Err(HfError::DegeneratePairing("λ(Λ) != 1".into()));
    }
    let beta = green_cup(h, pair);
    let gamma = green_cap(h, pair);
    if duality_matrices(&gamma, &beta, d).is_err() {
        return Err(HfError::DegeneratePairing("green forms are not inverse".into()));
    }
    let id = LinMap::identity(d);
    let green_comult = compose(&kron(&h.mult, &id), &kron(&id, &gamma)).unwrap();
    let theta = compose(&h.comult, &pair.cointegral).unwrap();
    let psi_mat = invert_matrix(&theta.reshape(d, d))
        .map_err(|_| HfError::DegeneratePairing("red cap is singular".into()))?;
    let psi = psi_mat.reshape(1, d * d);
    let red_mult = compose(&kron(&id, &psi), &kron(&h.comult, &id)).unwrap();
    let red_antipode = compose(&kron(&beta, &id), &kron(&id, &theta)).unwrap();
    let hf = HopfFrobeniusData {
        green_hopf: h.clone(),
        pair: pair.clone(),
        green_comult,
        red_mult,
        red_antipode,
        beta,
        gamma,
        beta_prime: theta,
        gamma_prime: psi,
    };
    let report = verify_hf(&hf);
    if !report.is_empty() {
        return Err(HfError::InternalInconsistency(report));
    }
    Ok(hf)
}

fn prefixed(prefix: &str, r: Report) -> Report {
    let mut out = r;
    for v in &mut out.violations {
        v.law = format!("{prefix}.{}", v.law);
    }
    out
}

/// (m⊗id)(id⊗Δ) = Δ∘m = (id⊗m)(Δ⊗id).
pub fn check_frobenius_law(m: &SparseMap, dl: &SparseMap, d: usize) -> Report {
    let mut r = Report::default();
    let mid = |i: usize| dl.apply(&m.apply(&sv_basis(i)));
    r.push(check_law("frobenius_l", d * d, |i| m.apply_at(&dl.apply_at(&sv_basis(i), d, 1), 1, d), mid));
    r.push(check_law("frobenius_r", d * d, |i| m.apply_at(&dl.apply_at(&sv_basis(i), 1, d), d, 1), mid));
    r
}

/// Rechecks every law the structure promises.
pub fn verify_hf(hf: &HopfFrobeniusData) -> Report {
    let d = hf.dim();
    let h = &hf.green_hopf;
    let id = LinMap::identity(d);
    let mut r = Report::default();

    r.extend(prefixed("green", check_hopf(h)));
    let red = hf.red_hopf();
    r.extend(prefixed("red", check_hopf(&red)));

    let green_ops = hf.green_frobenius().ops();
    r.extend(prefixed("green", check_comonoid(&green_ops)));
    r.extend(prefixed("green", check_frobenius_law(&green_ops.m, &green_ops.dl, d)));
    let red_ops = hf.red_frobenius().ops();
    r.extend(prefixed("red", check_monoid(&red_ops)));
    r.extend(prefixed("red", check_frobenius_law(&red_ops.m, &red_ops.dl, d)));

    // pre-HF: both forms are Frobenius forms with the stated inverses
    let bs = hf.beta.sparse();
    let ms = h.mult.sparse();
    r.push(check_law(
        "green.form_assoc",
        d * d * d,
        |i| bs.apply(&ms.apply_at(&sv_basis(i), 1, d)),
        |i| bs.apply(&ms.apply_at(&sv_basis(i), d, 1)),
    ));
    if duality_matrices(&hf.gamma, &hf.beta, d).is_err() {
        r.push(check_maps("green.form_snake", &compose(&hf.gamma.reshape(d, d), &hf.beta.reshape(d, d)).unwrap(), &id));
    }
    let ds = h.comult.sparse();
    let theta = hf.beta_prime.col_sparse(0);
    r.push(check_law("red.form_coassoc", 1, |_| ds.apply_at(&theta, 1, d), |_| ds.apply_at(&theta, d, 1)));
    if duality_matrices(&hf.beta_prime, &hf.gamma_prime, d).is_err() {
        r.push(check_maps(
            "red.form_snake",
            &compose(&hf.beta_prime.reshape(d, d), &hf.gamma_prime.reshape(d, d)).unwrap(),
            &id,
        ));
    }

    // the integrals themselves
    if !is_cointegral(h, &hf.pair.cointegral) || !is_integral(h, &hf.pair.integral) || !hf.pair.pairing().is_one() {
        r.push(check_maps("pair", &compose(&hf.pair.integral, &hf.pair.cointegral).unwrap(), &LinMap::identity(1)));
    }

    // s(a) = Σ γ₁ ψ(γ₂, a)
    let form_s = compose(&kron(&id, &hf.gamma_prime), &kron(&hf.gamma, &id)).unwrap();
    r.push(check_maps("antipode_form", &form_s, &h.antipode));

    // s̄ = (s⁻¹)ᵀ for the green duality
    match invert_matrix(&h.antipode) {
        Ok(sinv) => r.push(check_maps("red_antipode_transpose", &hf.red_antipode, &green_transpose(hf, &sinv))),
        Err(_) => r.push(check_maps("red_antipode_transpose", &h.antipode, &LinMap::identity(d))),
    }

    // green and red forms differ by the antipode
    let psi_from_beta = compose(&hf.beta, &kron(&id, &h.antipode)).unwrap();
    r.push(check_maps("cup_relation", &hf.gamma_prime, &psi_from_beta));
    let gamma_from_theta = compose(&kron(&h.antipode, &id), &hf.beta_prime).unwrap();
    r.push(check_maps("cap_relation", &hf.gamma, &gamma_from_theta));
    r
}

/// Transpose of f: H^{⊗m} → H^{⊗n} for the duality with cup β and cap γ.
pub fn green_transpose_map(hf: &HopfFrobeniusData, f: &LinMap, m: usize, n: usize) -> LinMap {
    let d = hf.dim();
    dual_map(f, m, n, &hf.gamma.reshape(d, d), &hf.beta.reshape(d, d))
}

pub fn green_transpose(hf: &HopfFrobeniusData, f: &LinMap) -> LinMap {
    green_transpose_map(hf, f, 1, 1)
}

/// The k with Λ₂ = kΛ₁ and λ₂ = k⁻¹λ₁, if both structures sit on the
/// same green Hopf algebra.
pub fn scalar_equivalence(hf1: &HopfFrobeniusData, hf2: &HopfFrobeniusData) -> Option<FieldScalar> {
    if hf1.green_hopf != hf2.green_hopf {
        return None;
    }
    let (l1, l2) = (&hf1.pair.cointegral, &hf2.pair.cointegral);
    let i = l1.entries().iter().position(|x| !x.is_zero())?;
    let k = l2.entries()[i].clone() / l1.entries()[i].clone();
    if k.is_zero() {
        return None;
    }
    let kinv = k.invert().ok()?;
    (l1.scale(&k) == *l2 && hf1.pair.integral.scale(&kinv) == hf2.pair.integral).then_some(k)
}

/// Whether hf2 is hf1 rescaled by k in the pattern forced by uniqueness:
/// Λ, γ, θ, the green comultiplication scale by k; λ, β, ψ, the red
/// multiplication by k⁻¹; the antipodes are unchanged.
pub fn scalar_pattern_holds(hf1: &HopfFrobeniusData, hf2: &HopfFrobeniusData, k: &FieldScalar) -> bool {
    let kinv = k.invert().unwrap();
    hf2.pair.cointegral == hf1.pair.cointegral.scale(k)
        && hf2.pair.integral == hf1.pair.integral.scale(&kinv)
        && hf2.gamma == hf1.gamma.scale(k)
        && hf2.beta_prime == hf1.beta_prime.scale(k)
        && hf2.green_comult == hf1.green_comult.scale(k)
        && hf2.beta == hf1.beta.scale(&kinv)
        && hf2.gamma_prime == hf1.gamma_prime.scale(&kinv)
        && hf2.red_mult == hf1.red_mult.scale(&kinv)
        && hf2.red_antipode == hf1.red_antipode
        && hf2.green_hopf.antipode == hf1.green_hopf.antipode
}

/// Solves (u ⊗ v)∘Δ = ε for v and confirms (v ⊗ u)∘Δ = ε.
pub fn coinverse(frob: &FrobeniusAlgebra, u: &LinMap) -> Result<LinMap, HfError> {
    let d = frob.dim();
    let mut a = LinMap::zeros(d, d);
    for x in 0..d {
        for p in 0..d {
            let up = u.get(0, p);
            if up.is_zero() {
                continue;
            }
            for q in 0..d {
                let c = frob.comult.get(p * d + q, x);
                if !c.is_zero() {
                    let cur = a.get(x, q).clone();
                    a.set(x, q, cur + up * c);
                }
            }
        }
    }
    let (v, _) = solve(&a, &frob.counit.transpose())
        .map_err(|_| HfError::NotCoinvertible)?
        .ok_or(HfError::NotCoinvertible)?;
    let v = v.transpose();
    let right = compose(&kron(&v, u), &frob.comult).unwrap();
    if right != frob.counit {
        return Err(HfError::NotCoinvertible);
    }
    Ok(v)
}

/// β(u) = u∘mult, with inverse Σ c₁ ⊗ v(c₂₍₁₎) c₂₍₂₎ where Σ c₁ ⊗ c₂ is
/// the algebra's cap and v the coinverse of u.
pub fn form_from_element(frob: &FrobeniusAlgebra, u: &LinMap) -> Result<(LinMap, LinMap), HfError> {
    let d = frob.dim();
    let v = coinverse(frob, u)?;
    let beta = compose(u, &frob.mult).unwrap();
    let id = LinMap::identity(d);
    let left_mult = compose(&kron(&v, &id), &frob.comult).unwrap();
    let inv = compose(&kron(&id, &left_mult), &frob.cap()).unwrap();
    if duality_matrices(&inv, &beta, d).is_err() {
        let mut r = Report::default();
        r.push(check_maps("form_inverse", &compose(&inv.reshape(d, d), &beta.reshape(d, d)).unwrap(), &id));
        return Err(HfError::InternalInconsistency(r));
    }
    Ok((beta, inv))
}

/// The copoint u = β∘(unit ⊗ id) of a Frobenius form.
pub fn element_from_form(frob: &FrobeniusAlgebra, beta: &LinMap, beta_inv: &LinMap) -> Result<LinMap, HfError> {
    let d = frob.dim();
    if (beta.dst_dim(), beta.src_dim()) != (1, d * d) || (beta_inv.dst_dim(), beta_inv.src_dim()) != (d * d, 1) {
        return Err(HfError::InvalidForm("wrong shapes".into()));
    }
    let bs = beta.sparse();
    let ms = frob.mult.sparse();
    let assoc = check_law(
        "form_assoc",
        d * d * d,
        |i| bs.apply(&ms.apply_at(&sv_basis(i), 1, d)),
        |i| bs.apply(&ms.apply_at(&sv_basis(i), d, 1)),
    );
    if assoc.is_some() {
        return Err(HfError::InvalidForm("β(ab, c) != β(a, bc)".into()));
    }
    if duality_matrices(beta_inv, beta, d).is_err() {
        return Err(HfError::InvalidForm("inverse fails the snake equations".into()));
    }
    Ok(compose(beta, &kron(&frob.unit, &LinMap::identity(d))).unwrap())
}

/// The copoint a ↦ ε(w a) for an element w.
pub fn copoint_from_element(frob: &FrobeniusAlgebra, w: &SVec) -> LinMap {
    let d = frob.dim();
    let o = frob.ops();
    let eps = frob.counit.row_sparse(0);
    LinMap::row((0..d).map(|a| crate::hopfcore::dot(&eps, &o.mul(w, &sv_basis(a)))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic, sym3, taft, trivial};
    use crate::tensorlin::swap;

    #[test]
    fn trivial_is_all_ones() {
        let hf = build_hf(&trivial()).unwrap();
        let one = LinMap::identity(1);
        for m in [&hf.green_comult, &hf.red_mult, &hf.red_antipode, &hf.beta, &hf.gamma] {
            assert_eq!(m, &one);
        }
        assert!(verify_hf(&hf).is_empty());
    }

    #[test]
    fn sweedler_structure() {
        let hf = build_hf(&taft(2)).unwrap();
        assert!(verify_hf(&hf).is_empty());
        assert_eq!(green_transpose_map(&hf, &hf.green_hopf.mult, 2, 1), hf.green_comult);
        let rs = compose(&hf.red_mult, &swap(4, 4)).unwrap();
        assert_eq!(green_transpose_map(&hf, &hf.green_hopf.comult, 1, 2), rs);
        assert_eq!(green_transpose(&hf, &LinMap::identity(4)), LinMap::identity(4));
    }

    #[test]
    fn red_identity_antipode_is_caught() {
        let mut hf = build_hf(&taft(2)).unwrap();
        hf.red_antipode = LinMap::identity(4);
        let r = verify_hf(&hf);
        assert!(r.contains("red.hopf_l"), "{r}");
    }

    #[test]
    fn z2_red_mult_matches_contraction() {
        let h = cyclic(2);
        let hf = build_hf(&h).unwrap();
        // independent contraction: rm(a, b) = Σ_{i,j} D[i,j | a] ψ(e_j, b) e_i
        let d = 2;
        let psi = &hf.gamma_prime;
        for a in 0..d {
            for b in 0..d {
                let mut expect = vec![FieldScalar::zero(); d];
                for i in 0..d {
                    for j in 0..d {
                        expect[i] += &(h.comult.get(i * d + j, a) * psi.get(0, j * d + b));
                    }
                }
                let got: Vec<FieldScalar> = (0..d).map(|k| hf.red_mult.get(k, a * d + b).clone()).collect();
                assert_eq!(got, expect);
            }
        }
        // match or vanish: g_a · g_b is nonzero only when a = b
        assert!(hf.red_mult.get(0, 1).is_zero() && hf.red_mult.get(1, 1).is_zero());
    }

    #[test]
    fn scalars() {
        let h = taft(3);
        let hf = build_hf(&h).unwrap();
        assert_eq!(scalar_equivalence(&hf, &hf), Some(FieldScalar::one()));
        let k = FieldScalar::frac(2, 3);
        let hf2 = build_hf_with_pair(&h, &hf.pair.rescaled(&k)).unwrap();
        assert_eq!(scalar_equivalence(&hf, &hf2), Some(k.clone()));
        assert!(scalar_pattern_holds(&hf, &hf2, &k));
        assert!(!scalar_pattern_holds(&hf, &hf2, &FieldScalar::from(2)));
        let other = build_hf(&sym3()).unwrap();
        assert_eq!(scalar_equivalence(&hf, &other), None);
    }

    #[test]
    fn form_element_bijection_on_sweedler() {
        let hf = build_hf(&taft(2)).unwrap();
        let frob = hf.green_frobenius();
        let lam = frob.counit.clone();
        let (b0, _) = form_from_element(&frob, &lam).unwrap();
        assert_eq!(b0, frob.cup());
        for w in [vec![(2usize, FieldScalar::one())], vec![(0, FieldScalar::one()), (1, FieldScalar::one())]] {
            let u = copoint_from_element(&frob, &w);
            let (b, inv) = form_from_element(&frob, &u).unwrap();
            assert_eq!(element_from_form(&frob, &b, &inv).unwrap(), u);
        }
        assert_eq!(form_from_element(&frob, &LinMap::zeros(1, 4)), Err(HfError::NotCoinvertible));
        assert!(matches!(
            element_from_form(&frob, &LinMap::zeros(1, 16), &LinMap::zeros(16, 1)),
            Err(HfError::InvalidForm(_))
        ));
        assert_eq!(element_from_form(&frob, &frob.cup(), &frob.cap()).unwrap(), lam);
    }
}
