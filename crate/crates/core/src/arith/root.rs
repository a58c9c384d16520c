use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

/// A root of unity `e^{2 pi i a/m}`, stored as the reduced fraction `a/m` in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootOfUnity {
    num: i64,
    den: i64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    /// Builds `a/m mod 1`. Panics if `m <= 0`.
    pub fn new(a: i64, m: i64) -> Self {
        assert!(m > 0, "root of unity needs a positive denominator");
        Self::from_i128(a as i128, m as i128)
    }

    fn from_i128(a: i128, m: i128) -> Self {
        let a = a.rem_euclid(m);
        let g = a.gcd(&m);
        let (num, den) = if a == 0 { (0, 1) } else { (a / g, m / g) };
        RootOfUnity {
            num: i64::try_from(num).expect("root of unity exponent overflow"),
            den: i64::try_from(den).expect("root of unity order overflow"),
        }
    }

    /// `-1`.
    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Group product (sum of exponents).
    pub fn mul(&self, other: &Self) -> Self {
        let m = (self.den as i128).lcm(&(other.den as i128));
        let a =
            self.num as i128 * (m / self.den as i128) + other.num as i128 * (m / other.den as i128);
        Self::from_i128(a, m)
    }

    pub fn inv(&self) -> Self {
        Self::from_i128(-(self.num as i128), self.den as i128)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    /// The principal angle `a/m` as a float.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        Self::ONE
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.num as i128 * other.den as i128;
        let r = other.num as i128 * self.den as i128;
        l.cmp(&r).then(self.den.cmp(&other.den))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A point of the torus all of whose coordinates are roots of unity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct TorsionPoint(pub Vec<RootOfUnity>);

impl TorsionPoint {
    pub fn identity(n: usize) -> Self {
        TorsionPoint(vec![RootOfUnity::ONE; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[RootOfUnity] {
        &self.0
    }

    /// The character value `q^v`, i.e. `sum v_i q_i mod 1`.
    pub fn power(&self, v: &[i64]) -> RootOfUnity {
        assert_eq!(v.len(), self.0.len(), "exponent length mismatch");
        let m = self.order() as i128;
        let mut acc: i128 = 0;
        for (q, &e) in self.0.iter().zip(v) {
            let scaled = q.num as i128 * (m / q.den as i128);
            acc = (acc + scaled * (e as i128).rem_euclid(m)).rem_euclid(m);
        }
        RootOfUnity::from_i128(acc, m)
    }

    /// Order of the point: lcm of the coordinate orders.
    pub fn order(&self) -> i64 {
        self.0.iter().fold(1i64, |acc, q| acc.lcm(&q.den))
    }

    /// Coordinatewise product.
    pub fn mul(&self, other: &Self) -> Self {
        TorsionPoint(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn inv(&self) -> Self {
        TorsionPoint(self.0.iter().map(RootOfUnity::inv).collect())
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

/// Exponent `p` for which a primitive `m`-th root `w` satisfies
/// `w^p = -w` (4 | m), `w^p = -w^2` (m = 2k, k odd) or `w^p = w^2` (m odd).
pub fn conjugate_exponent(m: u64) -> u64 {
    assert!(m >= 1);
    if m.is_multiple_of(4) {
        m / 2 + 1
    } else if m.is_multiple_of(2) {
        m / 2 + 2
    } else {
        2
    }
}
