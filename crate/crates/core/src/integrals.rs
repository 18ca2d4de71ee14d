//! Integrals and cointegrals, the integral morphism and the Frobenius
//! condition.
//!
//! Conventions (checked against the Sweedler algebra, where the cointegral
//! is x − gx and the integral is δ_x):
//! * a cointegral is a point Λ with Λ·a = ε(a) Λ for every a;
//! * an integral is a copoint λ with (id ⊗ λ)∘Δ = unit∘λ.

use thiserror::Error;

use crate::hopfcore::{duality_matrices, standard_cap, standard_cup, HopfData, HopfError};
use crate::par;
use crate::tensorlin::{
    compose, invert_matrix, kernel_basis, rank_one_factor, sv_basis, LinError, LinMap, SVec,
};
use crate::scalars::FieldScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntegralError {
    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),
    #[error("the antipode is singular")]
    Singular,
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// A cointegral Λ (d × 1) and an integral λ (1 × d), normalized so λ(Λ) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralPair {
    pub cointegral: LinMap,
    pub integral: LinMap,
}

impl IntegralPair {
    /// (kΛ, k⁻¹λ).
    pub fn rescaled(&self, k: &FieldScalar) -> IntegralPair {
        IntegralPair {
            cointegral: self.cointegral.scale(k),
            integral: self.integral.scale(&k.invert().expect("rescaling by zero")),
        }
    }

    pub fn pairing(&self) -> FieldScalar {
        compose(&self.integral, &self.cointegral).unwrap().get(0, 0).clone()
    }
}

/// Linear conditions whose kernel is the cointegral space.
fn cointegral_system(h: &HopfData) -> LinMap {
    let d = h.dim;
    let mut a = LinMap::zeros(d * d, d);
    for x in 0..d {
        let ex = h.counit.get(0, x).clone();
        for i in 0..d {
            for k in 0..d {
                let mut v = h.mult.get(k, i * d + x).clone();
                if i == k {
                    v -= &ex;
                }
                a.set(x * d + k, i, v);
            }
        }
    }
    a
}

/// Linear conditions whose kernel is the integral space (as columns).
fn integral_system(h: &HopfData) -> LinMap {
    let d = h.dim;
    let mut a = LinMap::zeros(d * d, d);
    for x in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut v = h.comult.get(i * d + j, x).clone();
                if j == x {
                    v -= h.unit.get(i, 0);
                }
                a.set(x * d + i, j, v);
            }
        }
    }
    a
}

pub fn cointegral_space(h: &HopfData) -> Vec<LinMap> {
    kernel_basis(&cointegral_system(h))
}

pub fn integral_space(h: &HopfData) -> Vec<LinMap> {
    kernel_basis(&integral_system(h)).into_iter().map(|k| k.transpose()).collect()
}

pub fn is_cointegral(h: &HopfData, p: &LinMap) -> bool {
    compose(&cointegral_system(h), p).unwrap().is_zero()
}

pub fn is_integral(h: &HopfData, l: &LinMap) -> bool {
    compose(&integral_system(h), &l.transpose()).unwrap().is_zero()
}

/// The integral morphism computed with the coordinate duality.
pub fn integral_morphism(h: &HopfData) -> LinMap {
    integral_morphism_with(h, &standard_cap(h.dim), &standard_cup(h.dim)).expect("coordinate duality")
}

/// The integral morphism
///   𝓘(a) = Σ y₍₂₎ ⟨y*, a · S²(y₍₁₎)⟩
/// where Σ y ⊗ y* is the cap and ⟨·,·⟩ the cup of the given duality.
pub fn integral_morphism_with(h: &HopfData, cap: &LinMap, cup: &LinMap) -> Result<LinMap, HopfError> {
    let d = h.dim;
    let (c, u) = duality_matrices(cap, cup, d)?;
    let o = h.ops();
    let s2 = compose(&h.antipode, &h.antipode).unwrap().sparse();
    let cols = par::map_range(d, |a| {
        let mut terms: SVec = Vec::new();
        for y in 0..d {
            for (pq, coef) in o.comul(&sv_basis(y)) {
                let (p, q) = (pq / d, pq % d);
                let w = o.mul(&sv_basis(a), &s2.apply(&sv_basis(p)));
                // Σ_b C[y][b] ⟨e*_b, w⟩
                let mut pairing = FieldScalar::zero();
                for b in 0..d {
                    let cyb = c.get(y, b);
                    if cyb.is_zero() {
                        continue;
                    }
                    for (k, wk) in &w {
                        let ubk = u.get(b, *k);
                        if !ubk.is_zero() {
                            pairing += &(cyb * &(ubk * wk));
                        }
                    }
                }
                if !pairing.is_zero() {
                    terms.push((q, &coef * &pairing));
                }
            }
        }
        crate::tensorlin::normalize(terms)
    });
    Ok(LinMap::from_sparse_columns(d, &cols))
}

/// Factors 𝓘 = Λ∘λ with λ(Λ) = 1 and checks both factors are (co)integrals.
pub fn frobenius_condition(h: &HopfData) -> Result<IntegralPair, IntegralError> {
    let i = integral_morphism(h);
    let (u, v) = rank_one_factor(&i).map_err(|e| IntegralError::DegeneratePairing(e.to_string()))?;
    let k = compose(&v, &u).unwrap().get(0, 0).clone();
    if k.is_zero() {
        return Err(IntegralError::DegeneratePairing("λ(Λ) = 0".into()));
    }
    let pair = IntegralPair { cointegral: u, integral: v.scale(&k.invert().unwrap()) };
    if compose(&pair.cointegral, &pair.integral).unwrap() != i {
        return Err(IntegralError::DegeneratePairing("integral morphism is not idempotent".into()));
    }
    if !is_cointegral(h, &pair.cointegral) || !is_integral(h, &pair.integral) {
        return Err(IntegralError::DegeneratePairing("factors are not (co)integrals".into()));
    }
    Ok(pair)
}

/// β = λ∘mult, the pairing β(a, b) = λ(ab).
pub fn green_cup(h: &HopfData, p: &IntegralPair) -> LinMap {
    compose(&p.integral, &h.mult).unwrap()
}

/// γ = (S ⊗ id)∘Δ∘Λ.
pub fn green_cap(h: &HopfData, p: &IntegralPair) -> LinMap {
    let theta = compose(&h.comult, &p.cointegral).unwrap();
    let d = h.dim;
    // (S⊗id) on a point of H⊗H is S·Θ as d×d matrices
    compose(&h.antipode, &theta.reshape(d, d)).unwrap().reshape(d * d, 1)
}

/// Whether β and γ are inverse to each other (both snake equations).
pub fn check_nondegenerate(h: &HopfData, p: &IntegralPair) -> bool {
    duality_matrices(&green_cap(h, p), &green_cup(h, p), h.dim).is_ok()
}

/// s⁻¹(a) = Σ Λ₁ λ(Λ₂ a), built from the integrals alone.
pub fn antipode_inverse_formula(h: &HopfData, p: &IntegralPair) -> Result<LinMap, IntegralError> {
    invert_matrix(&h.antipode).map_err(|e| match e {
        LinError::Singular => IntegralError::Singular,
        other => IntegralError::Hopf(other.into()),
    })?;
    let d = h.dim;
    let theta = compose(&h.comult, &p.cointegral).unwrap().col_sparse(0);
    let beta = green_cup(h, p);
    let cols = par::map_range(d, |a| {
        let terms = theta
            .iter()
            .map(|(pq, c)| (pq / d, c * beta.get(0, (pq % d) * d + a)))
            .collect();
        crate::tensorlin::normalize(terms)
    });
    Ok(LinMap::from_sparse_columns(d, &cols))
}

/// Both the cointegral and the integral space are one-dimensional.
pub fn equaliser_dimension_check(h: &HopfData) -> bool {
    cointegral_space(h).len() == 1 && integral_space(h).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic, sym3, taft, trivial};

    fn col(v: &[i64]) -> LinMap {
        LinMap::column(v.iter().map(|&x| FieldScalar::from(x)).collect())
    }

    #[test]
    fn sweedler_integrals() {
        let t = taft(2);
        assert_eq!(cointegral_space(&t), vec![col(&[0, 1, 0, -1])]);
        assert_eq!(integral_space(&t), vec![col(&[0, 1, 0, 0]).transpose()]);
        let p = frobenius_condition(&t).unwrap();
        assert_eq!(p.cointegral, col(&[0, 1, 0, -1]));
        assert_eq!(p.integral, col(&[0, 1, 0, 0]).transpose());
        assert!(p.pairing().is_one());
    }

    #[test]
    fn trivial_integrals() {
        let h = trivial();
        assert_eq!(cointegral_space(&h), vec![LinMap::identity(1)]);
        assert_eq!(integral_morphism(&h), LinMap::identity(1));
        let p = frobenius_condition(&h).unwrap();
        assert_eq!((p.cointegral.clone(), p.integral.clone()), (LinMap::identity(1), LinMap::identity(1)));
        assert!(check_nondegenerate(&h, &p));
        assert_eq!(antipode_inverse_formula(&h, &p).unwrap(), LinMap::identity(1));
        assert!(equaliser_dimension_check(&h));
    }

    #[test]
    fn group_algebra_integrals() {
        let z2 = cyclic(2);
        assert_eq!(integral_space(&z2), vec![col(&[1, 0]).transpose()]);
        assert_eq!(integral_morphism(&z2), LinMap::from_ints(&[&[1, 0], &[1, 0]]));
        let s = sym3();
        let p = frobenius_condition(&s).unwrap();
        assert_eq!(p.cointegral, col(&[1; 6]));
        assert_eq!(p.integral, col(&[1, 0, 0, 0, 0, 0]).transpose());
        assert!(check_nondegenerate(&s, &p));
        assert_eq!(antipode_inverse_formula(&z2, &frobenius_condition(&z2).unwrap()).unwrap(), z2.antipode);
    }

    #[test]
    fn sweedler_integral_morphism_is_rank_one() {
        let t = taft(2);
        let i = integral_morphism(&t);
        let (u, v) = rank_one_factor(&i).unwrap();
        assert_eq!(u, col(&[0, 1, 0, -1]));
        assert_eq!(v, col(&[0, 1, 0, 0]).transpose());
    }

    #[test]
    fn antipode_inverse_matches() {
        for h in [taft(2), taft(3), sym3()] {
            let p = frobenius_condition(&h).unwrap();
            assert!(check_nondegenerate(&h, &p));
            assert_eq!(antipode_inverse_formula(&h, &p).unwrap(), invert_matrix(&h.antipode).unwrap());
        }
    }

    #[test]
    fn equaliser() {
        assert!(equaliser_dimension_check(&taft(2)));
        assert!(equaliser_dimension_check(&taft(3)));
    }
}
