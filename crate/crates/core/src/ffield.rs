//! Exact arithmetic in the prime field F_p and elementary number-theoretic
//! helpers (orders, totients, quadratic residues) shared by the other
//! modules.
//!
//! Residues are canonical representatives in `[0, p)`; every operation
//! normalizes its output so results compare bit-exactly. Moduli up to
//! `2^63` are supported with widened intermediate products.

use crate::error::{Error, Result};

/// `a * b mod m` with a widened intermediate product.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by square-and-multiply; `pow_mod(a, 0, m) = 1` (for m > 1).
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    debug_assert!(m >= 1);
    if m == 1 {
        return 0;
    }
    let mut base = a % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // These witnesses decide primality for all n < 3.3 * 10^24.
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as (prime, multiplicity) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut mult = 0;
            while n.is_multiple_of(q) {
                n /= q;
                mult += 1;
            }
            out.push((q, mult));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient by trial-division factoring.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (q, _) in factorize(n) {
        phi = phi / q * (q - 1);
    }
    phi
}

/// Multiplicative order of `r` modulo `d` (any modulus `d >= 2`): the
/// smallest `e >= 1` with `r^e = 1 mod d`. Starts from the group order
/// `phi(d)` and descends through its prime factors.
pub fn element_order(r: u64, d: u64) -> Result<u64> {
    assert!(d >= 2, "modulus must be at least 2");
    let r = r % d;
    if gcd(r, d) != 1 {
        return Err(Error::NotAUnit {
            residue: r,
            modulus: d,
        });
    }
    let phi = euler_phi(d);
    let mut e = phi;
    for (q, _) in factorize(phi) {
        while e.is_multiple_of(q) && pow_mod(r, e / q, d) == 1 {
            e /= q;
        }
    }
    Ok(e)
}

/// Euler's criterion: is `s` a square modulo the odd prime `d`?
///
/// Requires `d` an odd prime and `gcd(s, d) = 1`.
pub fn is_quadratic_residue(s: u64, d: u64) -> bool {
    debug_assert!(d % 2 == 1 && is_prime(d));
    debug_assert!(gcd(s % d, d) == 1);
    pow_mod(s, (d - 1) / 2, d) == 1
}

/// A prime field F_p. Construction verifies primality; all residue
/// operations normalize into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::OutOfRange {
                what: "field modulus",
                value: p,
            });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldCtx { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        mul_mod(a, b, self.p)
    }

    #[inline]
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        debug_assert!(a < self.p);
        pow_mod(a, e, self.p)
    }

    /// Multiplicative inverse via Fermat's little theorem.
    ///
    /// # Panics
    /// Panics on `a = 0`.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "cannot invert zero");
        self.pow(a % self.p, self.p - 2)
    }

    /// Binomial coefficient C(n, k) mod p by the base-p digit product.
    pub fn binom(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let (mut n, mut k) = (n, k);
        let mut acc = 1u64;
        while n > 0 || k > 0 {
            let nd = n % self.p;
            let kd = k % self.p;
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.binom_digit(nd, kd));
            n /= self.p;
            k /= self.p;
        }
        acc
    }

    // C(n, k) mod p for digits n, k < p, by the multiplicative formula.
    fn binom_digit(&self, n: u64, k: u64) -> u64 {
        let k = k.min(n - k);
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 1..=k {
            num = self.mul(num, (n - k + i) % self.p);
            den = self.mul(den, i % self.p);
        }
        if den == 0 {
            // unreachable for digits < p, but keep the kernel total
            return 0;
        }
        self.mul(num, self.inv(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_and_huge_moduli() {
        assert_eq!(FieldCtx::new(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldCtx::new(91), Err(Error::NotPrime(91)));
        assert!(matches!(
            FieldCtx::new(1 << 63),
            Err(Error::OutOfRange { .. })
        ));
        assert!(FieldCtx::new(2).is_ok());
        assert!(FieldCtx::new((1 << 61) - 1).is_ok());
    }

    #[test]
    fn basic_residue_ops() {
        assert_eq!(fp(7).inv(1), 1);
        assert_eq!(fp(31).mul(27, 23), 1); // 27 * 23 = 621 = 20 * 31 + 1
        assert_eq!(fp(11).add(6, 5), 0);
        assert_eq!(fp(11).sub(3, 7), 7);
        assert_eq!(fp(11).neg(0), 0);
    }

    #[test]
    fn pow_matches_hand_values() {
        let f = fp(31);
        assert_eq!(f.pow(3, 23), 11);
        assert_eq!(f.pow(3, 21), 15);
        assert_eq!(f.pow(0, 0), 1);
        for a in 0..31 {
            assert_eq!(f.pow(a, 1), a);
        }
    }

    #[test]
    fn inverses_of_all_units() {
        for p in [2u64, 3, 5, 7, 11, 13, 31, 97] {
            let f = fp(p);
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn binom_small_values() {
        let f = fp(11);
        assert_eq!(f.binom(4, 2), 6);
        assert_eq!(f.binom(5, 2), 10);
        assert_eq!(f.binom(3, 7), 0);
        for n in 0..40 {
            assert_eq!(f.binom(n, 0), 1);
        }
    }

    #[test]
    fn binom_agrees_with_pascal_triangle() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = fp(p);
            let n_max = 300usize;
            let mut row = vec![1u64];
            for n in 0..=n_max {
                for (k, &c) in row.iter().enumerate() {
                    assert_eq!(f.binom(n as u64, k as u64), c, "C({}, {}) mod {}", n, k, p);
                }
                let mut next = vec![1u64; n + 2];
                for k in 1..=n {
                    next[k] = f.add(row[k - 1], row[k]);
                }
                row = next;
            }
        }
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(14, 31).unwrap(), 15);
        assert_eq!(element_order(15, 31).unwrap(), 10);
        for d in [5u64, 12, 31, 100] {
            assert_eq!(element_order(1, d).unwrap(), 1);
        }
        assert_eq!(
            element_order(10, 15),
            Err(Error::NotAUnit {
                residue: 10,
                modulus: 15
            })
        );
    }

    #[test]
    fn element_order_is_minimal_exhaustively() {
        for d in 2..=200u64 {
            for r in 1..d {
                if gcd(r, d) != 1 {
                    continue;
                }
                let e = element_order(r, d).unwrap();
                assert_eq!(pow_mod(r, e, d), 1);
                let mut x = 1u64;
                for f in 1..e {
                    x = mul_mod(x, r, d);
                    assert_ne!(x, 1, "order of {} mod {} not minimal at {}", r, d, f);
                }
            }
        }
    }

    #[test]
    fn quadratic_residues() {
        assert!(is_quadratic_residue(4, 11));
        assert!(is_quadratic_residue(5, 11));
        for d in [7u64, 11, 19, 23, 31] {
            // -1 is a non-residue for d = 3 mod 4
            assert_eq!(is_quadratic_residue(d - 1, d), d % 4 == 1);
        }
    }

    #[test]
    fn residue_count_is_half_the_units() {
        for d in (3..=500u64).filter(|&d| is_prime(d)) {
            let count = (1..d).filter(|&s| is_quadratic_residue(s, d)).count() as u64;
            assert_eq!(count, (d - 1) / 2, "d = {}", d);
        }
    }

    #[test]
    fn phi_matches_unit_count() {
        for n in 2..=300u64 {
            let direct = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), direct, "phi({})", n);
        }
    }
}
