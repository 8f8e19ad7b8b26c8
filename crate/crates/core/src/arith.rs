//! Small integer helpers shared by the other modules.

use num_integer::Integer;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Smallest prime dividing `n`, or `None` for `n <= 1`.
pub fn smallest_prime(n: u32) -> Option<u32> {
    (n >= 2).then(|| (2..=n).find(|d| n.is_multiple_of(*d)).unwrap())
}

/// `k` with `n = p^k`, or `None` if `n` is not a power of `p`.
pub fn log_p(n: u32, p: u32) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

pub fn euler_phi(n: u32) -> u32 {
    match prime_power(n) {
        Some((p, _)) => n / p * (p - 1),
        None if n <= 1 => 1,
        None => (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32,
    }
}

/// The residues in `0..n` coprime to `n`; for `n = 1` this is `[0]`.
pub fn units(n: u32) -> Vec<u32> {
    (0..n).filter(|k| k.gcd(&n) == 1).collect()
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut acc, mut b) = (1u64, base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(log_p(1, 5), Some(0));
        assert_eq!(log_p(125, 5), Some(3));
    }

    #[test]
    fn phi_matches_unit_count() {
        for n in 1..200 {
            assert_eq!(euler_phi(n) as usize, units(n).len(), "n = {n}");
        }
    }
}
