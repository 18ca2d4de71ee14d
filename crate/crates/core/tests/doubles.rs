use hopfrob::builders::{cyclic, sym3, taft, trivial};
use hopfrob::doubles::{
    check_quasitriangular, classic_quasitriangular, double_iso_check, drinfeld_double, red_quasitriangular, rho_iso,
    trivial_r_matrix, yang_baxter_check,
};
use hopfrob::hopfcore::{check_hopf, HopfData};
use hopfrob::hopffrobenius::build_hf;

fn both_doubles(h: &HopfData, dim: usize) {
    let classic = classic_quasitriangular(h).unwrap();
    assert_eq!(classic.hopf.dim, dim);
    let rep = classic.check();
    assert!(rep.is_empty(), "classic: {rep}");
    assert!(yang_baxter_check(&classic.hopf, &classic.r_matrix));

    let hf = build_hf(h).unwrap();
    let red = red_quasitriangular(&hf);
    assert_eq!(red.hopf.dim, dim);
    let rep = red.check();
    assert!(rep.is_empty(), "red: {rep}");
    assert!(yang_baxter_check(&red.hopf, &red.r_matrix));
    assert!(double_iso_check(&hf));
}

#[test]
fn doubles_of_small_examples() {
    both_doubles(&trivial(), 1);
    both_doubles(&cyclic(2), 4);
    both_doubles(&taft(2), 16);
}

#[test]
fn doubles_of_s3() {
    both_doubles(&sym3(), 36);
}

#[test]
fn rho_on_z2_is_invertible() {
    let hf = build_hf(&cyclic(2)).unwrap();
    let (rho, rho_inv) = rho_iso(&hf).unwrap();
    assert_eq!(hopfrob::tensorlin::compose(&rho, &rho_inv).unwrap(), hopfrob::tensorlin::LinMap::identity(2));
    assert_eq!(rho.rank(), 2);
}

#[test]
fn cocommutative_algebras_take_the_trivial_r() {
    for h in [cyclic(3), sym3()] {
        let r = trivial_r_matrix(&h);
        assert!(check_quasitriangular(&h, &r).is_empty());
        assert!(yang_baxter_check(&h, &r));
    }
}

#[test]
fn double_of_taft3_is_hopf() {
    let dd = drinfeld_double(&taft(3)).unwrap();
    assert!(check_hopf(&dd).is_empty());
}
