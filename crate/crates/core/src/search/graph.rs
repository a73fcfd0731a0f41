//! Square-compatibility graph on the candidate elements `[-B, B] \ {0}`.
//!
//! Vertices are indexed in ascending value order; each vertex only stores
//! its larger neighbours, so every clique is found exactly once.

use rayon::prelude::*;

use crate::arith::{isqrt_u128, sqrt_exact_i128};

use super::roots::square_roots_mod_all;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphStrategy {
    /// Dense scan for small bounds, root sieve otherwise.
    #[default]
    Auto,
    /// Test every pair.
    PairScan,
    /// Walk the residue classes `r^2 ≡ n (mod |x|)` for each `x`.
    RootSieve,
}

const PAIR_SCAN_MAX_BOUND: i64 = 1500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatGraph {
    pub n: i64,
    pub bound: i64,
    /// `up[i]`: sorted indices `j > i` with `value(i) * value(j) + n` a square.
    pub up: Vec<Vec<u32>>,
}

impl CompatGraph {
    pub fn build(n: i64, bound: i64, strategy: GraphStrategy) -> CompatGraph {
        let strategy = match strategy {
            GraphStrategy::Auto if bound <= PAIR_SCAN_MAX_BOUND => GraphStrategy::PairScan,
            GraphStrategy::Auto => GraphStrategy::RootSieve,
            s => s,
        };
        let up = match strategy {
            GraphStrategy::PairScan => pair_scan(n, bound),
            _ => root_sieve(n, bound),
        };
        CompatGraph { n, bound, up }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn value(&self, idx: u32) -> i64 {
        value_of(idx, self.bound)
    }

    pub fn edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// All 4-cliques as ascending value quadruples, lexicographically ordered.
    pub fn quadruples(&self, parallel: bool) -> Vec<[i64; 4]> {
        let from = |a: usize| self.quadruples_from(a);
        if parallel {
            (0..self.len())
                .into_par_iter()
                .flat_map_iter(from)
                .collect()
        } else {
            (0..self.len()).flat_map(from).collect()
        }
    }

    fn quadruples_from(&self, a: usize) -> Vec<[i64; 4]> {
        let mut out = Vec::new();
        let na = &self.up[a];
        if na.len() < 3 {
            return out;
        }
        let mut nab = Vec::new();
        let mut nabc = Vec::new();
        for &b in na {
            intersect(na, &self.up[b as usize], &mut nab);
            if nab.len() < 2 {
                continue;
            }
            for &c in &nab {
                intersect(&nab, &self.up[c as usize], &mut nabc);
                for &d in &nabc {
                    out.push([
                        self.value(a as u32),
                        self.value(b),
                        self.value(c),
                        self.value(d),
                    ]);
                }
            }
        }
        out
    }
}

fn intersect(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

#[inline]
fn value_of(idx: u32, bound: i64) -> i64 {
    let v = idx as i64 - bound;
    if v >= 0 {
        v + 1
    } else {
        v
    }
}

#[inline]
fn index_of(value: i64, bound: i64) -> u32 {
    debug_assert!(value != 0 && value.abs() <= bound);
    (if value < 0 {
        value + bound
    } else {
        value + bound - 1
    }) as u32
}

fn pair_scan(n: i64, bound: i64) -> Vec<Vec<u32>> {
    let size = (2 * bound) as u32;
    (0..size)
        .map(|i| {
            let x = value_of(i, bound) as i128;
            ((i + 1)..size)
                .filter(|&j| sqrt_exact_i128(x * value_of(j, bound) as i128 + n as i128).is_some())
                .collect()
        })
        .collect()
}

fn root_sieve(n: i64, bound: i64) -> Vec<Vec<u32>> {
    let table = square_roots_mod_all(n, bound as usize);
    let (n128, b128) = (n as i128, bound as i128);
    let mut up = vec![Vec::new(); (2 * bound) as usize];
    for m in 1..=bound {
        let roots = &table[m as usize];
        if roots.is_empty() {
            continue;
        }
        let m128 = m as i128;
        // x * y + n = r^2 with |y| <= B means r^2 lies in [n - mB, n + mB].
        let hi_sq = n128 + m128 * b128;
        if hi_sq < 0 {
            continue;
        }
        let r_hi = isqrt_u128(hi_sq as u128) as i128;
        let lo_sq = n128 - m128 * b128;
        let r_lo = if lo_sq <= 0 {
            0
        } else {
            let s = isqrt_u128(lo_sq as u128) as i128;
            if s * s == lo_sq {
                s
            } else {
                s + 1
            }
        };
        for x in [-m, m] {
            let xi = index_of(x, bound);
            let list = &mut up[xi as usize];
            let x128 = x as i128;
            let mut base = r_lo - r_lo % m128;
            while base <= r_hi {
                for &root in roots {
                    let r = base + root as i128;
                    if r < r_lo || r > r_hi {
                        continue;
                    }
                    let y = (r * r - n128) / x128;
                    if y > x as i128 && y != 0 && y <= b128 {
                        list.push(index_of(y as i64, bound));
                    }
                }
                base += m128;
            }
        }
    }
    for list in &mut up {
        list.sort_unstable();
        list.dedup();
    }
    up
}
