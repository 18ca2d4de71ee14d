use hopfrob::scalars::{Field, FieldScalar};
use hopfrob::tensorlin::{compose, invert_matrix, kernel_basis, kron, rank_one_factor, solve, swap, LinMap};

fn q(n: i64) -> FieldScalar {
    FieldScalar::from(n)
}

#[test]
fn cyclotomic_matrix_inverse() {
    let z = Field::Cyclotomic(5).root();
    let a = LinMap::new(2, 2, vec![q(1), z.clone(), z.pow(2), q(3)]);
    let inv = invert_matrix(&a).unwrap();
    assert_eq!(compose(&a, &inv).unwrap(), LinMap::identity(2));
    assert_eq!(compose(&inv, &a).unwrap(), LinMap::identity(2));
}

#[test]
fn kron_and_swap() {
    let a = LinMap::from_ints(&[&[1, 2], &[3, 4]]);
    let b = LinMap::from_ints(&[&[0, 1, 1]]);
    let lhs = compose(&swap(1, 2), &kron(&a, &b)).unwrap();
    let rhs = compose(&kron(&b, &a), &swap(2, 3)).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn solving_and_kernels() {
    let a = LinMap::from_ints(&[&[1, 1, 0], &[0, 1, 1]]);
    let b = LinMap::from_ints(&[&[2], &[3]]);
    let (x, kernel) = solve(&a, &b).unwrap().unwrap();
    assert_eq!(compose(&a, &x).unwrap(), b);
    assert_eq!(kernel, kernel_basis(&a));
    assert_eq!(kernel.len(), 1);
    let inconsistent = LinMap::from_ints(&[&[1, 1], &[1, 1]]);
    assert!(solve(&inconsistent, &LinMap::from_ints(&[&[1], &[2]])).unwrap().is_none());
}

#[test]
fn rank_one() {
    let u = LinMap::from_ints(&[&[0], &[2], &[-1]]);
    let v = LinMap::from_ints(&[&[1, 0, 3]]);
    let m = compose(&u, &v).unwrap();
    let (a, b) = rank_one_factor(&m).unwrap();
    assert_eq!(compose(&a, &b).unwrap(), m);
    assert!(rank_one_factor(&LinMap::identity(2)).is_err());
}

#[test]
fn scalar_text() {
    let f = Field::Cyclotomic(3);
    let x = FieldScalar::parse("1/2 + 3*z", f).unwrap();
    assert_eq!(FieldScalar::parse(&x.to_string(), f).unwrap(), x);
    assert!(FieldScalar::parse("z", Field::Rational).is_err());
}
