//! Small integer helpers: primality, trial-division factorization and
//! arithmetic modulo a word-sized prime.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut b = base as u64 % p64;
    let mut acc = 1u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, (p - 2) as u64, p)
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: u32, p: u32) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, ((p - 1) / 2) as u64, p) == 1 {
        1
    } else {
        -1
    }
}

/// Reduces a signed integer into `[0, p)`.
pub fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn ipow(base: i128, exp: u32) -> i128 {
    base.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(3) && is_prime(5) && is_prime(7) && is_prime(2));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(15));
        assert_eq!(prime_factors(26), vec![2, 13]);
        assert_eq!(prime_factors(242), vec![2, 11]);
        assert_eq!(prime_factors(2186), vec![2, 1093]);
        assert_eq!(prime_factors(124), vec![2, 31]);
    }

    #[test]
    fn legendre_small() {
        assert_eq!(legendre(1, 3), 1);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(0, 7), 0);
        for p in [3u32, 5, 7, 11, 13] {
            let squares: Vec<u32> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                assert_eq!(legendre(a, p) == 1, squares.contains(&a));
            }
        }
    }

    #[test]
    fn inverses() {
        for p in [3u32, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }
}
