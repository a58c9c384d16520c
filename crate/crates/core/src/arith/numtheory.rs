//! Small integer helpers.

use num_integer::Integer;

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    assert!(n > 0);
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Smallest level `L` with `Q(zeta_L) = Q(zeta_m)`: halves `m` when `m = 2 mod 4`.
pub fn canonical_level(m: u64) -> u64 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

/// Extended gcd: `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = (a as i128).extended_gcd(&(b as i128));
    let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
    if g < 0 {
        g = -g;
        x = -x;
        y = -y;
    }
    (g as i64, x as i64, y as i64)
}
