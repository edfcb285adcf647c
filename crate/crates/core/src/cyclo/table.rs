//! Per-conductor constants: the cyclotomic polynomial, reductions of the
//! powers of ζ_N, and the lookup of roots of unity.
//!
//! Tables are write-once and immutable after initialization, so they are safe
//! to read from any number of worker threads.

use std::collections::HashMap;
use std::sync::OnceLock;

/// Largest conductor for which tables can be built.
pub const TABLE_LIMIT: u32 = 1024;

pub(crate) struct Table {
    pub n: u32,
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first; monic of degree `phi`.
    pub poly: Vec<i64>,
    /// Nonzero (index, coefficient) pairs of Φ_n below the leading term.
    pub poly_sparse: Vec<(usize, i64)>,
    /// `pow[k]` is x^k mod Φ_n for 0 ≤ k < n.
    pub pow: Vec<Vec<i64>>,
    roots: OnceLock<HashMap<Vec<i64>, u32>>,
}

static TABLES: [OnceLock<Table>; TABLE_LIMIT as usize + 1] =
    [const { OnceLock::new() }; TABLE_LIMIT as usize + 1];

pub(crate) fn table(n: u32) -> &'static Table {
    assert!(
        (1..=TABLE_LIMIT).contains(&n),
        "conductor {n} outside table range"
    );
    TABLES[n as usize].get_or_init(|| Table::build(n))
}

impl Table {
    fn build(n: u32) -> Table {
        let poly = cyclotomic_poly(n);
        let phi = poly.len() - 1;
        let poly_sparse = poly[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, *c))
            .collect();
        let mut pow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            pow.push(cur.clone());
            // multiply by x and reduce the overflowing top coefficient
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in poly[..phi].iter().enumerate() {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(*c).expect("power table overflow"))
                        .expect("power table overflow");
                }
            }
        }
        Table {
            n,
            phi,
            poly,
            poly_sparse,
            pow,
            roots: OnceLock::new(),
        }
    }

    /// Order of the root of unity whose reduced coefficient vector is `v`.
    pub fn root_order(&self, v: &[i64]) -> Option<u32> {
        let map = self.roots.get_or_init(|| {
            // The roots of unity in Q(ζ_n) are exactly ±ζ_n^k.
            let l = if self.n % 2 == 0 { self.n } else { 2 * self.n };
            let mut m = HashMap::with_capacity(l as usize);
            for e in 0..l {
                let (sign, k) = if l == self.n {
                    (1, e)
                } else {
                    // ζ_{2n}^e = (-1)^e ζ_n^{e(n+1)/2}
                    let k = (e as u64 * (self.n as u64 + 1) / 2 % self.n as u64) as u32;
                    (if e % 2 == 0 { 1 } else { -1 }, k)
                };
                let v: Vec<i64> = self.pow[k as usize].iter().map(|c| sign * c).collect();
                m.insert(v, l / gcd(l, e));
            }
            m
        });
        map.get(v).copied()
    }
}

/// Φ_n with integer coefficients, via exact division of x^n − 1 by Φ_d for
/// the proper divisors d of n.
fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        p = div_monic(&p, &table(d).poly);
    }
    p
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + db];
        q[k] = c;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|c| *c == 0), "inexact cyclotomic division");
    q
}

/// Generators of (Z/n)^× with their orders, one per cyclic factor of a direct
/// product decomposition. Each generator is ≡ 1 modulo the other prime powers.
pub(crate) fn unit_group_generators(n: u32) -> Vec<(i64, u32)> {
    let n64 = n as i64;
    let mut out = Vec::new();
    for p in prime_factors(n) {
        let mut pe = 1i64;
        while n64 % (pe * p as i64) == 0 {
            pe *= p as i64;
        }
        let rest = n64 / pe;
        // CRT lift: x ≡ g mod pe, x ≡ 1 mod rest
        let lift = |g: i64| -> i64 {
            (0..pe)
                .map(|t| 1 + t * rest)
                .find(|x| (x - g).rem_euclid(pe) == 0)
                .expect("moduli are coprime")
                .rem_euclid(n64)
        };
        if p == 2 {
            match pe {
                2 => {}
                4 => out.push((lift(3), 2)),
                _ => {
                    out.push((lift(pe - 1), 2));
                    out.push((lift(5), (pe / 4) as u32));
                }
            }
            continue;
        }
        let phi = (pe / p as i64) * (p as i64 - 1);
        let order_mod = |g: i64| -> i64 {
            let mut x = g % pe;
            let mut k = 1;
            while x != 1 {
                x = x * g % pe;
                k += 1;
            }
            k
        };
        let g = (2..pe)
            .find(|g| g % p as i64 != 0 && order_mod(*g) == phi)
            .expect("odd prime powers have primitive roots");
        out.push((lift(g), phi as u32));
    }
    out
}

pub fn gcd(a: u32, b: u32) -> u32 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u32, b: u32) -> u64 {
    num_integer::lcm(a as u64, b as u64)
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// The conductor of Q(ζ_n): n itself unless n ≡ 2 mod 4, where Q(ζ_n) = Q(ζ_{n/2}).
pub fn canonical_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}
