//! Verifies a handful of known D(n)-tuples and prints their certificates.

use dquad::arith::Int;
use dquad::tuples::{verified, Metrics};

const FIXTURES: &[(i64, &[i64])] = &[
    (1, &[1, 3, 8, 120]),
    (-255, &[8, 32, 77, 203, 528]),
    (2985984, &[99, 315, 9920, 32768, 44460, 19534284]),
    (-208, &[1, 2912, 131977, 174097]),
    (-512, &[1, 16896, 1980161, 2362881]),
    (-944, &[1, 56640, 12525465, 14266673]),
    (1312164, &[468, 335, -85, -448]),
    (42849, &[188, 140, -160, -198]),
];

fn main() {
    for &(n, elements) in FIXTURES {
        let elements: Vec<Int> = elements.iter().map(|&e| Int::from(e)).collect();
        let (tuple, cert) = verified(elements, Int::from(n)).expect("fixture verifies");
        let m = Metrics::of(&tuple);
        println!(
            "D({n}) {:?}",
            tuple
                .elements()
                .iter()
                .map(Int::to_string)
                .collect::<Vec<_>>()
        );
        for p in &cert.roots {
            println!("    a{} * a{} + n = {}^2", p.i, p.j, p.r);
        }
        println!("    max|a| / n^2 = {:.6}", m.d_over_n2);
    }

    match verified(vec![1.into(), 2.into(), 3.into()], 1.into()) {
        Ok(_) => unreachable!(),
        Err(e) => println!("{{1, 2, 3}} with n = 1: {e}"),
    }
}
