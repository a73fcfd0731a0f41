#![allow(dead_code)]

use std::collections::BTreeSet;

/// Square root of `v` if it is a perfect square, by Newton iteration on i128.
pub fn exact_sqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    if v < 2 {
        return Some(v);
    }
    let mut x = v;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + v / x) / 2;
    }
    (x * x == v).then_some(x)
}

fn ok(a: i64, b: i64, n: i64) -> bool {
    exact_sqrt(a as i128 * b as i128 + n as i128).is_some()
}

/// Every D(n)-quadruple inside `[-bound, bound] \ {0}`, by four nested loops.
pub fn naive_quadruples(n: i64, bound: i64) -> BTreeSet<[i64; 4]> {
    let vals: Vec<i64> = (-bound..=bound).filter(|&v| v != 0).collect();
    let mut out = BTreeSet::new();
    for (i, &a) in vals.iter().enumerate() {
        for (j, &b) in vals.iter().enumerate().skip(i + 1) {
            if !ok(a, b, n) {
                continue;
            }
            for (k, &c) in vals.iter().enumerate().skip(j + 1) {
                if !ok(a, c, n) || !ok(b, c, n) {
                    continue;
                }
                for &d in &vals[k + 1..] {
                    if ok(a, d, n) && ok(b, d, n) && ok(c, d, n) {
                        out.insert([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub fn as_i64(t: &dquad::tuples::Tuple) -> Vec<i64> {
    t.elements()
        .iter()
        .map(|e| e.to_string().parse().unwrap())
        .collect()
}
