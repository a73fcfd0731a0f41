//! Square roots of a fixed `n` modulo every `m <= limit`.
//!
//! Prime powers are handled by Tonelli-Shanks plus Hensel lifting (or brute
//! force for `p = 2` and primes dividing `n`), composites by CRT over a
//! smallest-prime-factor sieve.

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Tonelli-Shanks for an odd prime `p` and `a` coprime to `p`.
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as u64
}

fn reduce(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}

fn roots_prime_power(n: i64, p: u64, e: u32, q: u64) -> Vec<u32> {
    let target = reduce(n, q);
    if p == 2 || target.is_multiple_of(p) {
        return (0..q)
            .filter(|r| r * r % q == target)
            .map(|r| r as u32)
            .collect();
    }
    let Some(mut r) = sqrt_mod_prime(target, p) else {
        return Vec::new();
    };
    let mut modulus = p;
    for _ in 1..e {
        let next = modulus * p;
        let t = reduce(n, next);
        // r <- r - (r^2 - n) / (2r) mod next
        let f = (r * r % next + next - t) % next;
        let inv = inv_mod(2 * r % next, next);
        r = (r + next - f * inv % next) % next;
        modulus = next;
    }
    let mut out = vec![r as u32, (q - r) as u32];
    out.sort_unstable();
    out.dedup();
    out
}

/// `table[m]` lists every `r` in `[0, m)` with `r^2 ≡ n (mod m)`, for `1 <= m <= limit`.
pub fn square_roots_mod_all(n: i64, limit: usize) -> Vec<Vec<u32>> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut table: Vec<Vec<u32>> = vec![Vec::new(); limit + 1];
    if limit >= 1 {
        table[1] = vec![0];
    }
    for m in 2..=limit {
        let p = spf[m] as usize;
        let mut q = 1usize;
        let mut e = 0u32;
        let mut rest = m;
        while rest % p == 0 {
            rest /= p;
            q *= p;
            e += 1;
        }
        if rest == 1 {
            table[m] = roots_prime_power(n, p as u64, e, q as u64);
            continue;
        }
        let (left, right) = (&table[q], &table[rest]);
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let (qm, rm) = (q as u64, rest as u64);
        let inv = inv_mod(qm % rm, rm);
        let mut combined = Vec::with_capacity(left.len() * right.len());
        for &a in left {
            for &b in right {
                let k = (b as u64 + rm - a as u64 % rm) % rm * inv % rm;
                combined.push((a as u64 + qm * k) as u32);
            }
        }
        combined.sort_unstable();
        table[m] = combined;
    }
    table
}
