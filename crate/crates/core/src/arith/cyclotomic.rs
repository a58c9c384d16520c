use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::numtheory::{canonical_level, divisors, lcm};
use super::root::RootOfUnity;
use super::unipoly::UniPoly;
use super::ArithError;
use crate::scalar::Field;

/// Per-level data: the cyclotomic polynomial and its degree.
#[derive(Debug)]
struct Level {
    n: u64,
    phi: usize,
    /// Coefficients of the monic `Phi_n`, constant term first.
    cyclo: Vec<i128>,
}

fn level_cache() -> &'static RwLock<HashMap<u64, Arc<Level>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Level>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn level(n: u64) -> Arc<Level> {
    if let Some(l) = level_cache().read().expect("level cache poisoned").get(&n) {
        return l.clone();
    }
    let cyclo = cyclotomic_poly(n);
    let built = Arc::new(Level {
        n,
        phi: cyclo.len() - 1,
        cyclo,
    });
    level_cache()
        .write()
        .expect("level cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Vec<i128> {
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let q = if d == 1 {
            vec![-1, 1]
        } else {
            level(d).cyclo.clone()
        };
        p = exact_div_monic(&p, &q);
    }
    p
}

fn exact_div_monic(p: &[i128], q: &[i128]) -> Vec<i128> {
    let dq = q.len() - 1;
    let mut rem = p.to_vec();
    let mut quot = vec![0i128; p.len() - dq];
    for k in (dq..p.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        for (j, &qj) in q.iter().enumerate() {
            let t = c.checked_mul(qj).expect("cyclotomic coefficient overflow");
            rem[k - dq + j] = rem[k - dq + j]
                .checked_sub(t)
                .expect("cyclotomic coefficient overflow");
        }
        quot[k - dq] = c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Reduces an integer vector indexed by powers of `zeta_n` to the power basis.
fn reduce_coeffs(lv: &Level, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let n = lv.n as usize;
    if v.len() > n {
        let tail = v.split_off(n);
        for (k, c) in tail.into_iter().enumerate() {
            v[k % n] += c;
        }
    }
    let dq = lv.phi;
    for k in (dq..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for (j, &qj) in lv.cyclo[..dq].iter().enumerate() {
            if qj != 0 {
                v[k - dq + j] -= &c * qj;
            }
        }
    }
    v.resize(dq, BigInt::zero());
    v
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
///
/// Stored as `num / den` with `num` the integer coordinates in the power
/// basis `1, zeta_N, ..., zeta_N^{phi(N)-1}` and `den > 0` coprime to their
/// content. The level is never `2 mod 4`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    level: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(level: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut c = CyclotomicNumber { level, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let (n, d) = r.into_raw();
        Self::from_parts(1, vec![n], d)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_parts(1, vec![BigInt::from(v)], BigInt::one())
    }

    /// `zeta_m = e^{2 pi i/m}`.
    pub fn zeta(m: u64) -> Self {
        Self::root(&RootOfUnity::new(1, m as i64))
    }

    /// The root of unity `e^{2 pi i a/m}` as a field element.
    pub fn root(r: &RootOfUnity) -> Self {
        let m = r.denom() as u64;
        let a = r.numer() as u64;
        let lvl = canonical_level(m);
        let lv = level(lvl);
        let mut v = vec![BigInt::zero(); lvl as usize];
        if lvl == m {
            v[a as usize] = BigInt::one();
        } else if a.is_multiple_of(2) {
            v[(a / 2) as usize] = BigInt::one();
        } else {
            // e^{2 pi i a/(2h)} = -zeta_h^{(a+h)/2} for odd h
            v[(((a + lvl) / 2) % lvl) as usize] = -BigInt::one();
        }
        Self::from_parts(lvl, reduce_coeffs(&lv, v), BigInt::one())
    }

    /// Builds from rational coordinates in the power basis at `level`.
    pub fn from_coords(level_n: u64, coords: &[BigRational]) -> Result<Self, ArithError> {
        if level_n == 0 {
            return Err(ArithError::InvalidLevel(level_n));
        }
        let lv = level(level_n);
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let v: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let out = Self::from_parts(level_n, reduce_coeffs(&lv, v), den);
        Ok(out.embed_canonical())
    }

    /// Re-expresses an element whose level is `2 mod 4` at half that level.
    fn embed_canonical(self) -> Self {
        if self.level % 4 != 2 {
            return self;
        }
        let h = self.level / 2;
        let mut acc = Self::zero();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Self::root(&RootOfUnity::new(j as i64, self.level as i64));
            acc = acc + r.scale_int(c);
        }
        let mut out = acc;
        out.den *= &self.den;
        out.normalize();
        debug_assert!(out.level == 1 || h.is_multiple_of(out.level));
        out
    }

    fn scale_int(&self, c: &BigInt) -> Self {
        Self::from_parts(
            self.level,
            self.num.iter().map(|x| x * c).collect(),
            self.den.clone(),
        )
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Rational coordinates in the power basis at the current level.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerator coordinates and the common positive denominator.
    pub fn integer_coords(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// The same number expressed at level `m`, which must be a multiple of the current level.
    pub fn embed(&self, m: u64) -> Result<Self, ArithError> {
        if m == 0 || !m.is_multiple_of(self.level) {
            return Err(ArithError::LevelNotDivisible {
                level: self.level,
                target: m,
            });
        }
        let m = canonical_level(m);
        if m == self.level {
            return Ok(self.clone());
        }
        let step = (m / self.level) as usize;
        let lv = level(m);
        let mut v = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Ok(CyclotomicNumber {
            level: m,
            num: reduce_coeffs(&lv, v),
            den: self.den.clone(),
        })
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        if self.level == other.level {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.level, other.level);
        (
            self.embed(m).expect("lcm level"),
            other.embed(m).expect("lcm level"),
        )
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let lv = level(self.level);
        let a: UniPoly<BigRational> = UniPoly::from_coeffs(
            self.num
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        let phi: UniPoly<BigRational> = UniPoly::from_coeffs(
            lv.cyclo
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        );
        let (g, s, _) = a.ext_gcd(&phi);
        debug_assert_eq!(g.degree(), Some(0));
        let mut coords = s.into_coeffs();
        coords.resize(lv.phi, BigRational::zero());
        let den = BigRational::from_integer(self.den.clone());
        let coords: Vec<BigRational> = coords.into_iter().map(|c| c * &den).collect();
        Self::from_coords(self.level, &coords)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Galois automorphism `zeta_L -> zeta_L^k` applied at level `L`, where `L`
    /// is the current level and `gcd(k, L) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.level as i64;
        debug_assert_eq!(k.gcd(&n), 1);
        let lv = level(self.level);
        let mut v = vec![BigInt::zero(); self.level as usize];
        for (j, c) in self.num.iter().enumerate() {
            let idx = (j as i128 * k as i128).rem_euclid(n as i128) as usize;
            v[idx] += c;
        }
        Self::from_parts(self.level, reduce_coeffs(&lv, v), self.den.clone())
    }

    /// Multiplies by a root of unity.
    pub fn mul_root(&self, r: &RootOfUnity) -> Self {
        if r.is_one() {
            return self.clone();
        }
        self * &Self::root(r)
    }

    /// Complex value as `(re, im)`; may be non-finite for huge coordinates.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = TAU * j as f64 / self.level as f64;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }

    /// Sum of absolute values of the coordinates, as a float.
    pub fn abs_coord_sum(&self) -> f64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY) / den)
            .sum()
    }

    /// The same number at the smallest level whose field contains it.
    pub fn minimal_level(&self) -> Self {
        if self.level == 1 || self.is_zero() {
            return self.to_level_one_if_rational();
        }
        for d in divisors(self.level) {
            if d == self.level {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            if let Some(c) = self.descend(d) {
                return c;
            }
        }
        self.clone()
    }

    fn to_level_one_if_rational(&self) -> Self {
        match self.as_rational() {
            Some(r) => Self::from_rational(r),
            None => self.clone(),
        }
    }

    /// Expresses the number at level `d` (a divisor of the level), if possible.
    fn descend(&self, d: u64) -> Option<Self> {
        let lv_d = level(d);
        let phi_d = lv_d.phi;
        let phi_n = self.num.len();
        let step = (self.level / d) as usize;
        let lv = level(self.level);
        // columns: images of zeta_d^j at level N
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi_d);
        for j in 0..phi_d {
            let mut v = vec![BigInt::zero(); self.level as usize];
            v[j * step] = BigInt::one();
            cols.push(reduce_coeffs(&lv, v));
        }
        // augmented system rows: phi_n equations, phi_d unknowns
        let mut rows: Vec<Vec<BigRational>> = (0..phi_n)
            .map(|i| {
                let mut r: Vec<BigRational> = cols
                    .iter()
                    .map(|c| BigRational::from_integer(c[i].clone()))
                    .collect();
                r.push(BigRational::from_integer(self.num[i].clone()));
                r
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..phi_d {
            let Some(p) = (r..phi_n).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..phi_n {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                        *x = &*x - &f * y;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| !row[phi_d].is_zero()) {
            return None;
        }
        let mut sol = vec![BigRational::zero(); phi_d];
        for (i, &c) in pivot_cols.iter().enumerate() {
            sol[c] = rows[i][phi_d].clone() / BigRational::from_integer(self.den.clone());
        }
        let out = Self::from_coords(d, &sol).ok()?;
        Some(out.to_level_one_if_rational())
    }

    fn add_impl(&self, other: &Self) -> Self {
        let (a, b) = self.lift_pair(other);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Self::from_parts(a.level, num, &a.den * &b.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.num.len() == 1 || other.num.len() == 1 {
            let (s, t) = if self.num.len() == 1 {
                (self, other)
            } else {
                (other, self)
            };
            if s.level == 1 {
                let c = &s.num[0];
                return Self::from_parts(
                    t.level,
                    t.num.iter().map(|x| x * c).collect(),
                    &s.den * &t.den,
                );
            }
        }
        let (a, b) = self.lift_pair(other);
        let lv = level(a.level);
        let mut prod = vec![BigInt::zero(); 2 * lv.phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::from_parts(a.level, reduce_coeffs(&lv, prod), &a.den * &b.den)
    }

    fn neg_impl(&self) -> Self {
        CyclotomicNumber {
            level: self.level,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

/// Exact value of `sum c_i * r_i` for field elements `c_i` and roots of unity `r_i`.
pub fn root_combination(terms: &[(&CyclotomicNumber, RootOfUnity)]) -> CyclotomicNumber {
    let (l, v, den) = combination_numerators(terms);
    let lv = level(l);
    let num = reduce_coeffs(&lv, v);
    CyclotomicNumber::from_parts(l, num, den).embed_canonical()
}

/// Whether `sum c_i * r_i` vanishes. A floating-point screen settles most
/// nonzero cases; anything close to zero is decided exactly.
pub fn root_combination_is_zero(terms: &[(&CyclotomicNumber, RootOfUnity)]) -> bool {
    if terms.is_empty() {
        return true;
    }
    let mut re = 0.0;
    let mut im = 0.0;
    let mut scale = 0.0;
    for (c, r) in terms {
        let (a, b) = c.to_complex();
        let t = TAU * r.to_f64();
        let (s, co) = t.sin_cos();
        re += a * co - b * s;
        im += a * s + b * co;
        scale += c.abs_coord_sum();
    }
    let size = re.hypot(im);
    if size.is_finite() && scale.is_finite() && size > 1e-9 * scale {
        return false;
    }
    let (l, v, _) = combination_numerators(terms);
    let lv = level(l);
    reduce_coeffs(&lv, v).iter().all(Zero::is_zero)
}

fn combination_numerators(
    terms: &[(&CyclotomicNumber, RootOfUnity)],
) -> (u64, Vec<BigInt>, BigInt) {
    let mut l = 1u64;
    let mut den = BigInt::one();
    for (c, r) in terms {
        l = lcm(l, lcm(c.level, r.denom() as u64));
        if !c.den.is_one() {
            den = den.lcm(&c.den);
        }
    }
    let mut v = vec![BigInt::zero(); l as usize];
    for (c, r) in terms {
        let step = (l / c.level) as usize;
        let shift = (r.numer() as u64 * (l / r.denom() as u64)) as usize;
        let f = &den / &c.den;
        for (j, x) in c.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let pos = (j * step + shift) % l as usize;
            if f.is_one() {
                v[pos] += x;
            } else {
                v[pos] += x * &f;
            }
        }
    }
    (l, v, den)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.lift_pair(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl Zero for CyclotomicNumber {
    fn zero() -> Self {
        CyclotomicNumber {
            level: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl One for CyclotomicNumber {
    fn one() -> Self {
        Self::from_int(1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(rhs)
            }
        }
        impl $trait<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(&rhs)
            }
        }
        impl $trait<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(rhs)
            }
        }
        impl $trait<CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(&rhs)
            }
        }
    };
}

impl CyclotomicNumber {
    fn sub_impl(&self, other: &Self) -> Self {
        self.add_impl(&other.neg_impl())
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_impl()
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_impl()
    }
}

impl Field for CyclotomicNumber {
    fn inv(&self) -> Option<Self> {
        CyclotomicNumber::inv(self).ok()
    }

    fn from_integer(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let (sign, mag) = if q.is_negative() { ("-", -q) } else { ("+", q) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{j}", self.level)?,
                (_, false) => write!(f, "{mag}*z{}^{j}", self.level)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64, m: i64) -> CyclotomicNumber {
        CyclotomicNumber::root(&RootOfUnity::new(a, m))
    }

    fn int(v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(v)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn basic_identities() {
        assert_eq!(z(1, 4) * z(1, 4), int(-1));
        assert_eq!(z(1, 3) + z(2, 3), int(-1));
        assert_eq!(z(1, 8).inv().unwrap(), z(7, 8));
        assert_eq!(z(1, 6) + z(5, 6), int(1));
        assert_eq!(z(1, 2), int(-1));
        assert_eq!(z(0, 1), int(1));
    }

    #[test]
    fn embedding_examples() {
        let m1 = int(-1).embed(4).unwrap();
        assert_eq!(m1, z(2, 4));
        assert_eq!(m1.level(), 4);
        let e = z(1, 3).embed(12).unwrap();
        assert_eq!(e.level(), 12);
        assert_eq!(e, z(4, 12));
        assert_eq!(z(1, 4).embed(8).unwrap(), z(2, 8));
        assert!(matches!(
            z(1, 3).embed(8),
            Err(ArithError::LevelNotDivisible { .. })
        ));
    }

    #[test]
    fn level_two_mod_four_is_folded() {
        let w = z(1, 6);
        assert_eq!(w.level(), 3);
        assert_eq!(w.pow(6).unwrap(), int(1));
        assert_eq!(w.pow(3).unwrap(), int(-1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            CyclotomicNumber::zero().inv(),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn minimal_level_descends() {
        let a = z(1, 12).pow(4).unwrap() + int(3);
        assert_eq!(a.level(), 12);
        let m = a.minimal_level();
        assert_eq!(m.level(), 3);
        assert_eq!(m, a);
        let r = (z(1, 8) * z(7, 8)).minimal_level();
        assert_eq!(r.level(), 1);
        // sqrt 2 = z8 + z8^7 lives at level 8
        let s = z(1, 8) + z(7, 8);
        assert_eq!(s.minimal_level().level(), 8);
    }

    #[test]
    fn galois_action() {
        let w = z(1, 5);
        assert_eq!(w.galois(2), z(2, 5));
        let i = z(1, 4);
        assert_eq!(i.galois(3), -i.clone());
    }

    #[test]
    fn complex_value() {
        let (re, im) = z(1, 4).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn combinations() {
        let one = int(1);
        let terms = [
            (&one, RootOfUnity::new(1, 6)),
            (&one, RootOfUnity::new(5, 6)),
        ];
        assert_eq!(root_combination(&terms), int(1));
        let m1 = int(-1);
        let terms = [
            (&one, RootOfUnity::new(1, 6)),
            (&one, RootOfUnity::new(5, 6)),
            (&m1, RootOfUnity::ONE),
        ];
        assert!(root_combination_is_zero(&terms));
        let i = z(1, 4);
        let terms = [(&i, RootOfUnity::new(1, 4)), (&one, RootOfUnity::ONE)];
        assert!(root_combination_is_zero(&terms));
        let terms = [(&i, RootOfUnity::new(1, 4)), (&m1, RootOfUnity::ONE)];
        assert!(!root_combination_is_zero(&terms));
    }

    #[test]
    fn display() {
        assert_eq!(format!("{}", z(1, 4)), "z4^1");
        assert_eq!(format!("{}", int(-3)), "-3");
    }
}
