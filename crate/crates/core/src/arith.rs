//! Elementary integer arithmetic: modular powers and inverses, primality,
//! factorization and multiplicative orders.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Least nonnegative residue of `a` modulo `m` (`m >= 1`).
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

pub fn mod_mul(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

pub fn mod_pow(base: i64, mut exp: u64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    let mut b = modulo(base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, b, m);
        }
        b = mod_mul(b, b, m);
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let ext = modulo(a, m).extended_gcd(&m);
    if ext.gcd != 1 {
        return None;
    }
    Some(modulo(ext.x, m))
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in ascending order.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: i64) -> Vec<i64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: i64) -> i64 {
    factorize(n)
        .into_iter()
        .fold(n.abs(), |acc, (p, _)| acc / p * (p - 1))
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_power_of_two(n: i64) -> bool {
    n > 0 && n & (n - 1) == 0
}

/// Residues in `[0, n)` coprime to `n`, ascending. For `n = 1` this is `[0]`.
pub fn units_mod(n: i64) -> Vec<i64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

/// Multiplicative order of `k` modulo `n`.
pub fn mult_order(k: i64, n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::input(format!("modulus must be positive, got {n}")));
    }
    if n == 1 {
        return Ok(1);
    }
    if k.gcd(&n) != 1 {
        return Err(Error::input(format!("gcd({k}, {n}) != 1")));
    }
    // order divides phi(n): strip prime factors while the power stays 1
    let mut order = euler_phi(n);
    for (p, _) in factorize(order) {
        while order % p == 0 && mod_pow(k, (order / p) as u64, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Integer square root, floor.
pub fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Odd primes up to `bound`, ascending.
pub fn odd_primes_up_to(bound: i64) -> Vec<i64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (3..=n).filter(|&k| sieve[k]).map(|k| k as i64).collect()
}
