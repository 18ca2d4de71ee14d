//! Exact scalars: rationals and elements of cyclotomic fields Q(ζ_n).
//!
//! A [`FieldScalar`] is kept in canonical form. Anything whose value is
//! rational is stored as [`FieldScalar::Rat`], even if it came out of
//! cyclotomic arithmetic, so `==` is plain structural equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::LazyLock;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    ZeroDivision,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("scalar `{0}` does not live in the declared field")]
    FieldMismatch(String),
}

/// The ground field of an algebra instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Cyclotomic(u32),
}

impl Field {
    /// A primitive root of unity generating the field (1 for Q).
    pub fn root(&self) -> FieldScalar {
        match self {
            Field::Rational => FieldScalar::one(),
            Field::Cyclotomic(n) => FieldScalar::from(primitive_root(*n)),
        }
    }

    /// Whether `a` can be written in this field.
    pub fn contains(&self, a: &FieldScalar) -> bool {
        match (self, a) {
            (_, FieldScalar::Rat(_)) => true,
            (Field::Rational, FieldScalar::Cyc(_)) => false,
            (Field::Cyclotomic(n), FieldScalar::Cyc(c)) => c.order() == *n,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(n) => write!(f, "Q(z{n})"),
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// integer polynomials, low degree first

fn trim_int(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `num` by the monic `den`. Panics on a remainder.
fn div_monic_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        q[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    trim_int(&mut q);
    q
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

static PHI_CACHE: LazyLock<Mutex<HashMap<u32, Vec<BigInt>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial, coefficients from degree 0 upwards.
///
/// Computed as (t^n - 1) divided by every Φ_d with d a proper divisor of n.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        if d < n {
            den = mul_int(&den, &cyclotomic_poly(d));
        }
    }
    let phi = div_monic_int(&num, &den);
    PHI_CACHE.lock().unwrap().insert(n, phi.clone());
    phi
}

// ---------------------------------------------------------------------------
// cyclotomic fields

/// Q[t]/Φ_n with a precomputed reduction table for t^k, deg Φ_n ≤ k < 2 deg Φ_n.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    phi: Vec<BigInt>,
    reduce: Vec<Vec<BigRational>>,
}

impl CycloField {
    fn new(order: u32) -> Self {
        let phi = cyclotomic_poly(order);
        let m = phi.len() - 1;
        let mut reduce = Vec::new();
        // t^m = -(phi_0 + ... + phi_{m-1} t^{m-1})
        let mut cur: Vec<BigRational> = phi[..m].iter().map(|c| BigRational::from_integer(-c)).collect();
        for _ in 0..m.saturating_sub(1) {
            reduce.push(cur.clone());
            // multiply by t and reduce
            let top = cur[m - 1].clone();
            let mut next = vec![BigRational::zero(); m];
            for i in (1..m).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..m {
                    next[i] -= &top * BigRational::from_integer(phi[i].clone());
                }
            }
            cur = next;
        }
        if m >= 1 {
            reduce.push(cur);
        }
        CycloField { order, phi, reduce }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce_product(&self, prod: Vec<BigRational>) -> Vec<BigRational> {
        let m = self.degree();
        if prod.len() > m + self.reduce.len() {
            let phi: Vec<BigRational> = self.phi.iter().cloned().map(BigRational::from_integer).collect();
            let (_, mut r) = poly_divmod(&prod, &phi);
            r.resize(m, BigRational::zero());
            return r;
        }
        let mut out: Vec<BigRational> = prod.iter().take(m).cloned().collect();
        out.resize(m, BigRational::zero());
        for (k, c) in prod.iter().enumerate().skip(m) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduce[k - m]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }
}

static FIELD_CACHE: LazyLock<Mutex<HashMap<u32, Arc<CycloField>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn field_for(order: u32) -> Arc<CycloField> {
    let mut cache = FIELD_CACHE.lock().unwrap();
    cache.entry(order).or_insert_with(|| Arc::new(CycloField::new(order))).clone()
}

/// An element of Q(ζ_n) in the power basis of Q[t]/Φ_n.
#[derive(Clone)]
pub struct CycloScalar {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}({})", self.order(), poly_string(&self.coeffs))
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}
impl Eq for CycloScalar {}

impl CycloScalar {
    /// Reduces an arbitrary polynomial in t (low degree first) modulo Φ_n.
    pub fn from_poly(order: u32, poly: &[BigRational]) -> Self {
        let field = field_for(order);
        let coeffs = field.reduce_product(poly.to_vec());
        CycloScalar { field, coeffs }
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        Self::from_poly(order, &[q])
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "cyclotomic scalars of different orders cannot be mixed"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloScalar { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycloScalar { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let m = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloScalar { field: self.field.clone(), coeffs: self.field.reduce_product(prod) }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloScalar::from_rational(self.order(), rat(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm against Φ_n.
    pub fn invert(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDivision);
        }
        let phi: Vec<BigRational> = self.field.phi.iter().cloned().map(BigRational::from_integer).collect();
        // invariant: s_i * a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (phi, trim_rat(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![rat(1)]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_n is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
        Ok(CycloScalar::from_poly(self.order(), &inv))
    }

    fn constant_value(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

fn trim_rat(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_rat(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim_rat(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim_rat(rem));
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in b.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    (trim_rat(q), trim_rat(rem))
}

/// ζ_n, the class of t in Q[t]/Φ_n.
pub fn primitive_root(n: u32) -> CycloScalar {
    assert!(n >= 1, "primitive_root needs n >= 1");
    CycloScalar::from_poly(n, &[rat(0), rat(1)])
}

// ---------------------------------------------------------------------------
// the scalar type used everywhere else

#[derive(Clone, PartialEq, Eq)]
pub enum FieldScalar {
    Rat(BigRational),
    /// Always genuinely irrational; rational values are demoted to `Rat`.
    Cyc(CycloScalar),
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for FieldScalar {
    fn default() -> Self {
        FieldScalar::zero()
    }
}

impl From<CycloScalar> for FieldScalar {
    fn from(c: CycloScalar) -> Self {
        match c.constant_value() {
            Some(q) => FieldScalar::Rat(q),
            None => FieldScalar::Cyc(c),
        }
    }
}

impl From<BigRational> for FieldScalar {
    fn from(q: BigRational) -> Self {
        FieldScalar::Rat(q)
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        FieldScalar::Rat(rat(n))
    }
}

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldScalar::Rat(BigRational::one())
    }

    pub fn frac(p: i64, q: i64) -> Self {
        FieldScalar::Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rat(q) => q.is_zero(),
            FieldScalar::Cyc(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldScalar::Rat(q) if q.is_one())
    }

    /// Order of the cyclotomic field this value needs, if any.
    pub fn cyclotomic_order(&self) -> Option<u32> {
        match self {
            FieldScalar::Rat(_) => None,
            FieldScalar::Cyc(c) => Some(c.order()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rat(q) => Some(q),
            FieldScalar::Cyc(_) => None,
        }
    }

    /// Power-basis coefficients relative to the given cyclotomic order.
    pub fn coeffs_in(&self, order: u32) -> Vec<BigRational> {
        match self {
            FieldScalar::Rat(q) => {
                let mut v = vec![BigRational::zero(); field_for(order).degree()];
                v[0] = q.clone();
                v
            }
            FieldScalar::Cyc(c) => {
                assert_eq!(c.order(), order, "cyclotomic scalars of different orders cannot be mixed");
                c.coeffs.clone()
            }
        }
    }

    pub fn invert(&self) -> Result<FieldScalar, ScalarError> {
        invert(self)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> FieldScalar {
        let base = if e < 0 { invert(self).expect("zero to a negative power") } else { self.clone() };
        match &base {
            FieldScalar::Rat(q) => FieldScalar::Rat(num_traits::pow(q.clone(), e.unsigned_abs() as usize)),
            FieldScalar::Cyc(c) => FieldScalar::from(c.pow(e.unsigned_abs())),
        }
    }

    /// Parses the textual syntax: `p`, `p/q`, or a polynomial in `z`
    /// (for example `1 - z^2` or `3/2*z + 1`), reduced modulo Φ_n.
    pub fn parse(text: &str, field: Field) -> Result<FieldScalar, ScalarParseError> {
        let poly = parse_poly(text)?;
        if poly.len() > 1 {
            match field {
                Field::Rational => return Err(ScalarParseError::FieldMismatch(text.to_string())),
                Field::Cyclotomic(n) => return Ok(FieldScalar::from(CycloScalar::from_poly(n, &poly))),
            }
        }
        Ok(FieldScalar::Rat(poly.into_iter().next().unwrap_or_else(BigRational::zero)))
    }
}

/// Multiplicative inverse; errors on zero.
pub fn invert(a: &FieldScalar) -> Result<FieldScalar, ScalarError> {
    match a {
        FieldScalar::Rat(q) if q.is_zero() => Err(ScalarError::ZeroDivision),
        FieldScalar::Rat(q) => Ok(FieldScalar::Rat(q.recip())),
        FieldScalar::Cyc(c) => Ok(FieldScalar::from(c.invert()?)),
    }
}

fn add_s(a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
    use FieldScalar::*;
    match (a, b) {
        (Rat(x), Rat(y)) => Rat(x + y),
        (Cyc(x), Cyc(y)) => FieldScalar::from(x.add(y)),
        (Cyc(x), Rat(y)) | (Rat(y), Cyc(x)) => {
            let mut c = x.clone();
            c.coeffs[0] += y;
            Cyc(c)
        }
    }
}

fn neg_s(a: &FieldScalar) -> FieldScalar {
    match a {
        FieldScalar::Rat(x) => FieldScalar::Rat(-x),
        FieldScalar::Cyc(x) => FieldScalar::Cyc(x.neg()),
    }
}

fn sub_s(a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
    use FieldScalar::*;
    match (a, b) {
        (Rat(x), Rat(y)) => Rat(x - y),
        (Cyc(x), Cyc(y)) => FieldScalar::from(x.sub(y)),
        _ => add_s(a, &neg_s(b)),
    }
}

fn mul_s(a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
    use FieldScalar::*;
    match (a, b) {
        (Rat(x), Rat(y)) => Rat(x * y),
        (Cyc(x), Cyc(y)) => FieldScalar::from(x.mul(y)),
        (Cyc(x), Rat(y)) | (Rat(y), Cyc(x)) => {
            if y.is_zero() {
                Rat(BigRational::zero())
            } else {
                Cyc(x.scale(y))
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar {
                $f(self, rhs)
            }
        }
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar {
                $f(&self, rhs)
            }
        }
        impl $tr<FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                $f(self, &rhs)
            }
        }
    };
}

fn div_s(a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
    mul_s(a, &invert(b).expect("division by zero"))
}

binop!(Add, add, add_s);
binop!(Sub, sub, sub_s);
binop!(Mul, mul, mul_s);
binop!(Div, div, div_s);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        neg_s(&self)
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        neg_s(self)
    }
}

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        match (&mut *self, rhs) {
            (FieldScalar::Rat(x), FieldScalar::Rat(y)) => *x += y,
            _ => *self = add_s(self, rhs),
        }
    }
}

impl AddAssign<FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: FieldScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        match (&mut *self, rhs) {
            (FieldScalar::Rat(x), FieldScalar::Rat(y)) => *x -= y,
            _ => *self = sub_s(self, rhs),
        }
    }
}

impl MulAssign<&FieldScalar> for FieldScalar {
    fn mul_assign(&mut self, rhs: &FieldScalar) {
        *self = mul_s(self, rhs);
    }
}

impl Zero for FieldScalar {
    fn zero() -> Self {
        FieldScalar::zero()
    }
    fn is_zero(&self) -> bool {
        FieldScalar::is_zero(self)
    }
}

impl One for FieldScalar {
    fn one() -> Self {
        FieldScalar::one()
    }
}

impl std::iter::Sum for FieldScalar {
    fn sum<I: Iterator<Item = FieldScalar>>(iter: I) -> Self {
        let mut acc = FieldScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// text syntax

fn poly_string(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match k {
            0 => mag.to_string(),
            _ => {
                let var = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                if mag.is_one() {
                    var
                } else {
                    format!("{mag}*{var}")
                }
            }
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rat(q) => write!(f, "{q}"),
            FieldScalar::Cyc(c) => write!(f, "{}", poly_string(&c.coeffs)),
        }
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational, ScalarParseError> {
    let bad = || ScalarParseError::Malformed(whole.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let int = |t: &str| -> Result<BigInt, ScalarParseError> {
        let t = t.trim();
        if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(p)?, q))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

/// Parses a sum of signed terms `c`, `c*z^k`, `z^k`, `c*z`, `z` into
/// coefficients (low degree first, trailing zeros trimmed).
fn parse_poly(text: &str) -> Result<Vec<BigRational>, ScalarParseError> {
    let bad = || ScalarParseError::Malformed(text.to_string());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if ch == '+' || ch == '-' {
            if i == 0 {
                neg = ch == '-';
                continue;
            }
            if cur.is_empty() {
                return Err(bad());
            }
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    terms.push((neg, cur));
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero()];
    for (neg, term) in terms {
        let (coef, power) = match term.find('z') {
            None => (parse_rational(&term, text)?, 0usize),
            Some(pos) => {
                let (head, tail) = term.split_at(pos);
                let coef = if head.is_empty() {
                    BigRational::one()
                } else {
                    let head = head.strip_suffix('*').ok_or_else(bad)?;
                    parse_rational(head, text)?
                };
                let tail = &tail[1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    let p = tail.strip_prefix('^').ok_or_else(bad)?;
                    if p.is_empty() || !p.chars().all(|c| c.is_ascii_digit()) {
                        return Err(bad());
                    }
                    p.parse::<usize>().map_err(|_| bad())?
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::zero());
        }
        if neg {
            coeffs[power] -= coef;
        } else {
            coeffs[power] += coef;
        }
    }
    Ok(trim_rat(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    /// Long division of t^n - 1 by the product of lower Φ_d, done separately
    /// over the rationals so an integer-only shortcut would be caught.
    fn oracle_phi(n: u32) -> Vec<BigRational> {
        let mut num = vec![BigRational::zero(); n as usize + 1];
        num[0] = rat(-1);
        num[n as usize] = rat(1);
        for d in 1..n {
            if n.is_multiple_of(d) {
                let den: Vec<BigRational> = oracle_phi(d);
                let (q, r) = poly_divmod(&num, &den);
                assert!(r.iter().all(|c| c.is_zero()));
                num = q;
            }
        }
        num
    }

    #[test]
    fn phi_has_integer_coefficients_up_to_30() {
        for n in 1..=30 {
            let phi = cyclotomic_poly(n);
            let oracle = oracle_phi(n);
            assert_eq!(phi.len(), oracle.len(), "degree of phi_{n}");
            for (a, b) in phi.iter().zip(&oracle) {
                assert!(b.is_integer());
                assert_eq!(&BigRational::from_integer(a.clone()), b);
            }
            assert!(phi.last().unwrap().is_one());
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for n in 1..=12u32 {
            let z = FieldScalar::from(primitive_root(n));
            let mut p = FieldScalar::one();
            for m in 1..=n {
                p = &p * &z;
                if m < n {
                    assert!(!p.is_one(), "z_{n}^{m} should not be 1");
                }
            }
            assert!(p.is_one(), "z_{n}^{n} should be 1");
        }
    }

    #[test]
    fn small_roots_are_rational() {
        assert_eq!(FieldScalar::from(primitive_root(1)), FieldScalar::one());
        assert_eq!(FieldScalar::from(primitive_root(2)), FieldScalar::from(-1));
        let z = primitive_root(3);
        let s = z.mul(&z).add(&z).add(&CycloScalar::from_rational(3, rat(1)));
        assert!(s.is_zero());
    }

    #[test]
    fn inverses() {
        assert_eq!(invert(&FieldScalar::frac(2, 3)).unwrap(), FieldScalar::frac(3, 2));
        assert_eq!(invert(&FieldScalar::one()).unwrap(), FieldScalar::one());
        let z = FieldScalar::from(primitive_root(4));
        assert_eq!(invert(&z).unwrap(), -&z);
        assert_eq!(invert(&FieldScalar::zero()), Err(ScalarError::ZeroDivision));
    }

    #[test]
    fn text_round_trip() {
        let f = Field::Cyclotomic(5);
        for s in ["1 - z^2", "z", "-z^3", "3/2*z + 1", "0", "-7/3"] {
            let a = FieldScalar::parse(s, f).unwrap();
            let printed = a.to_string();
            assert_eq!(FieldScalar::parse(&printed, f).unwrap(), a, "{s} -> {printed}");
        }
        assert_eq!(FieldScalar::parse("3/2*z + 1", f).unwrap().to_string(), "1 + 3/2*z");
        // z^4 reduces modulo Φ_5
        assert_eq!(FieldScalar::parse("z^4", f).unwrap().to_string(), "-1 - z - z^2 - z^3");
        assert!(matches!(FieldScalar::parse("z", Field::Rational), Err(ScalarParseError::FieldMismatch(_))));
        for bad in ["", "1/0", "2z", "z^", "1 +", "x", "--1", "1//2"] {
            assert!(FieldScalar::parse(bad, f).is_err(), "{bad:?} should not parse");
        }
    }

    fn arb_scalar() -> impl Strategy<Value = FieldScalar> {
        prop_oneof![
            (-5i64..6, 1i64..4).prop_map(|(p, q)| FieldScalar::frac(p, q)),
            prop::collection::vec(-3i64..4, 1..6).prop_map(|v| {
                let poly: Vec<BigRational> = v.into_iter().map(rat).collect();
                FieldScalar::from(CycloScalar::from_poly(7, &poly))
            }),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &a), &FieldScalar::zero());
            if !a.is_zero() {
                prop_assert!((&a * &invert(&a).unwrap()).is_one());
            }
        }
    }
}
