use hopfrob::builders::{cyclic, dihedral, function_algebra, sym3, taft, trivial, CayleyTable};
use hopfrob::hopfcore::{
    antipode_order, check_antipode_properties, check_hopf, dual_hopf, is_cocommutative, is_commutative, sigma_variant,
    solve_antipode, standard_cap, standard_cup,
};
use hopfrob::hopffrobenius::{build_hf, green_transpose, green_transpose_map, verify_hf};
use hopfrob::integrals::{equaliser_dimension_check, frobenius_condition};
use hopfrob::scalars::Field;
use hopfrob::tensorlin::{compose, invert_matrix, swap, LinMap};

#[test]
fn taft_cointegral_has_positive_powers() {
    // Λ = Σ z^i g^i x^{n-1}, normalized so the x^{n-1} coefficient is 1
    for n in 2..=5usize {
        let z = Field::Cyclotomic(n as u32).root();
        let mut expected = LinMap::zeros(n * n, 1);
        for i in 0..n {
            expected.set(i * n + n - 1, 0, z.pow(i as i64));
        }
        let lam = frobenius_condition(&taft(n)).unwrap().cointegral;
        let k = lam.get(n - 1, 0).clone();
        assert_eq!(lam, expected.scale(&k), "n = {n}");
    }
}

#[test]
fn solved_antipode_matches_builders() {
    for h in [taft(3), sym3(), dihedral(4), cyclic(5)] {
        assert_eq!(solve_antipode(&h.bialgebra).unwrap().antipode, h.antipode);
        assert!(check_antipode_properties(&h).is_empty());
        assert!(equaliser_dimension_check(&h));
    }
}

#[test]
fn function_algebra_of_s3() {
    let f = function_algebra(&CayleyTable::sym3());
    assert!(check_hopf(&f).is_empty());
    assert!(is_commutative(&f) && !is_cocommutative(&f));
    // the nested dual differs from the function algebra by reversing the coproduct
    let d = dual_hopf(&sym3(), &standard_cap(6), &standard_cup(6)).unwrap();
    assert_eq!(d.mult, f.mult);
    assert_eq!(d.comult, compose(&swap(6, 6), &f.comult).unwrap());
    let hf = build_hf(&f).unwrap();
    assert!(verify_hf(&hf).is_empty());
}

#[test]
fn sigma_variant_of_taft_has_inverse_antipode() {
    let h = taft(3);
    let s = solve_antipode(&sigma_variant(&h)).unwrap();
    assert_eq!(s.antipode, invert_matrix(&h.antipode).unwrap());
    assert_eq!(antipode_order(&s, 12), Some(6));
}

#[test]
fn green_transposes() {
    for h in [trivial(), cyclic(3), taft(2), taft(3)] {
        let d = h.dim;
        let hf = build_hf(&h).unwrap();
        assert_eq!(green_transpose_map(&hf, &h.mult, 2, 1), hf.green_comult);
        assert_eq!(
            green_transpose_map(&hf, &h.comult, 1, 2),
            compose(&hf.red_mult, &swap(d, d)).unwrap()
        );
        assert_eq!(green_transpose(&hf, &LinMap::identity(d)), LinMap::identity(d));
    }
}
