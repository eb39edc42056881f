use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use super::rat::{parse_rat, Rat};
use super::CycloAlgebra;
use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn phi_cache() -> &'static Mutex<HashMap<u32, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The m-th cyclotomic polynomial, by exact division of `x^m - 1` by the
/// cyclotomic polynomials of the proper divisors of `m`.
pub fn cyclotomic_polynomial(m: u32) -> IntPoly {
    assert!(m >= 1, "cyclotomic_polynomial: m must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = IntPoly::monomial(BigInt::one(), m as usize).sub(&IntPoly::one());
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = num.div_rem_monic(&cyclotomic_polynomial(d));
        debug_assert!(r.is_zero());
        num = q;
    }
    phi_cache().lock().unwrap().insert(m, num.clone());
    num
}

/// Reduction data for `Q(z_m) = Q[x]/(Phi_m)`.
#[derive(Debug)]
struct Field {
    m: u32,
    /// `Phi_m`, lowest degree first; monic of degree `phi(m)`.
    modulus: Vec<Rat>,
}

impl Field {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

fn field(m: u32) -> Arc<Field> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(Default::default);
    if let Some(f) = fields.lock().unwrap().get(&m) {
        return f.clone();
    }
    let modulus = cyclotomic_polynomial(m)
        .coeffs()
        .iter()
        .map(|c| Rat::from_integer(c.clone()))
        .collect();
    let f = Arc::new(Field { m, modulus });
    fields.lock().unwrap().entry(m).or_insert(f).clone()
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Remainder of `a` modulo a monic `modulus`.
fn poly_rem_monic(mut a: Vec<Rat>, modulus: &[Rat]) -> Vec<Rat> {
    let d = modulus.len() - 1;
    for i in (d..a.len()).rev() {
        let c = std::mem::take(&mut a[i]);
        if c.is_zero() {
            continue;
        }
        for (j, mc) in modulus.iter().enumerate().take(d) {
            if !mc.is_zero() {
                a[i - d + j] -= &c * mc;
            }
        }
    }
    a.truncate(d);
    a
}

/// General division with remainder over `Q[x]`; `b` must be nonzero and trimmed.
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bc;
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (quot, rem)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len().max(b.len());
    let mut out: Vec<Rat> = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// An element of the cyclotomic field `Q(z_m)`, stored as its residue modulo
/// `Phi_m`, so that equal numbers at the same conductor have equal
/// coefficient vectors.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum(m={}, {})", self.field.m, self)
    }
}

impl CycloNum {
    /// The class of `sum coeffs[i] x^i` modulo `Phi_m`.
    pub fn new(m: u32, coeffs: Vec<Rat>) -> Self {
        let field = field(m);
        Self::reduce_in(field, coeffs)
    }

    fn reduce_in(field: Arc<Field>, coeffs: Vec<Rat>) -> Self {
        let mut c = poly_rem_monic(coeffs, &field.modulus);
        c.resize(field.degree(), Rat::zero());
        CycloNum { field, coeffs: c }
    }

    pub fn from_rat_in(m: u32, r: Rat) -> Self {
        Self::new(m, vec![r])
    }

    pub fn from_int_in(m: u32, i: i64) -> Self {
        Self::from_rat_in(m, Rat::from_integer(i.into()))
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Coefficients in the power basis `1, z_m, ..., z_m^{phi(m)-1}`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `Some(i)` when the number is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Re-expresses the number in `Q(z_l)`; requires `m | l`.
    pub fn lift(&self, l: u32) -> Result<Self> {
        let m = self.field.m;
        if l == m {
            return Ok(self.clone());
        }
        if l == 0 || !l.is_multiple_of(m) {
            return Err(Error::ConductorMismatch(m, l));
        }
        let step = (l / m) as usize;
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Ok(Self::new(l, coeffs))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let (a, b) = (self.field.m, other.field.m);
        let l = a.lcm(&b);
        (self.lift(l).unwrap(), other.lift(l).unwrap())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field.m == other.field.m {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.field.m, other.field.m))
        }
    }

    /// Addition without implicit lifting.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_same(other))
    }

    /// Multiplication without implicit lifting.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_same(other))
    }

    fn add_same(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.field.degree() == 1 {
            return CycloNum {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        Self::reduce_in(self.field.clone(), poly_mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(CycloNum {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // Invariant: s_i * a = r_i (mod Phi_m).
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Phi_m is irreducible, so the last nonzero remainder is a constant.
        let c = r1[0].recip();
        let s: Vec<Rat> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::reduce_in(self.field.clone(), s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::from_int_in(self.field.m, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
}

/// `z_m^e`, reduced modulo `Phi_m`.
pub fn root_of_unity(m: u32, e: i64) -> CycloNum {
    assert!(m >= 1, "root_of_unity: m must be positive");
    let e = e.rem_euclid(m as i64) as usize;
    let mut coeffs = vec![Rat::zero(); e + 1];
    coeffs[e] = Rat::one();
    CycloNum::new(m, coeffs)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.m == other.field.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloNum {}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        if self.field.m == rhs.field.m {
            self.add_same(rhs)
        } else {
            let (a, b) = self.aligned(rhs);
            a.add_same(&b)
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.field.m == rhs.field.m {
            self.mul_same(rhs)
        } else {
            let (a, b) = self.aligned(rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl super::Ring for CycloNum {
    fn zero() -> Self {
        CycloNum::from_int_in(1, 0)
    }
    fn one() -> Self {
        CycloNum::from_int_in(1, 1)
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        CycloNum::from_rat_in(1, r.clone())
    }
    fn as_rat(&self) -> Option<Rat> {
        self.to_rational()
    }
}

impl CycloAlgebra for CycloNum {
    fn from_cyclo(c: &CycloNum) -> Self {
        c.clone()
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let var = format!("z_{}", self.field.m);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{abs}*{var}")?,
                (_, true) => write!(f, "{var}^{i}")?,
                (_, false) => write!(f, "{abs}*{var}^{i}")?,
            }
        }
        Ok(())
    }
}

/// Wire form: conductor plus power-basis coefficients as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloRepr {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

impl From<&CycloNum> for CycloRepr {
    fn from(c: &CycloNum) -> Self {
        CycloRepr {
            conductor: c.conductor(),
            coeffs: c.coeffs.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<CycloRepr> for CycloNum {
    type Error = Error;
    fn try_from(r: CycloRepr) -> Result<Self> {
        if r.conductor == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloNum::new(r.conductor, coeffs))
    }
}

impl Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        CycloNum::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).degree(), Some(euler_phi(m) as usize));
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(2, 1), CycloNum::from_int_in(2, -1));
        let s = &(&root_of_unity(3, 0) + &root_of_unity(3, 1)) + &root_of_unity(3, 2);
        assert!(s.is_zero());
        let i = root_of_unity(4, 1);
        assert_eq!(&i * &i, CycloNum::from_int_in(4, -1));
        assert_eq!(root_of_unity(6, 6), CycloNum::from_int_in(6, 1));
        assert_eq!(root_of_unity(6, -1), root_of_unity(6, 5));
    }

    #[test]
    fn inverses() {
        assert_eq!(CycloNum::from_int_in(2, -1).inv().unwrap(), CycloNum::from_int_in(2, -1));
        assert_eq!(CycloNum::zero().inv(), Err(Error::DivisionByZero));
        for m in [3u32, 5, 7, 8, 12] {
            let x = CycloNum::new(m, vec![r(1, 2), r(-3, 1), r(2, 5)]);
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one(), "m={m}");
        }
        let z = root_of_unity(5, 2);
        assert_eq!(z.inv().unwrap(), root_of_unity(5, 3));
    }

    #[test]
    fn conductor_handling() {
        let a = root_of_unity(3, 1);
        let b = root_of_unity(2, 1);
        assert_eq!(a.checked_add(&b), Err(Error::ConductorMismatch(3, 2)));
        // z_3 * (-1) = -z_3, computed in Q(z_6)
        let prod = &a * &b;
        assert_eq!(prod.conductor(), 6);
        assert_eq!(prod, -&a);
        // z_6^2 = z_3
        assert_eq!(root_of_unity(6, 2), root_of_unity(3, 1));
        assert_eq!(CycloNum::from_int_in(1, 0), CycloNum::from_int_in(7, 0));
    }

    #[test]
    fn display() {
        assert_eq!(CycloNum::from_rat_in(5, r(-2, 3)).to_string(), "-2/3");
        assert_eq!(root_of_unity(6, 1).to_string(), "z_6");
        // z_6^2 = z_6 - 1
        assert_eq!(root_of_unity(6, 2).to_string(), "-1 + z_6");
        assert_eq!(root_of_unity(3, 2).to_string(), "-1 - z_3");
    }

    #[test]
    fn serde_round_trip() {
        let x = CycloNum::new(5, vec![r(1, 2), r(-3, 1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":5,"coeffs":["1/2","-3","0","0"]}"#);
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
