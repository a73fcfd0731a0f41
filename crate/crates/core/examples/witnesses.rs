//! Quadruples whose log ratio lands near a chosen target.
//!
//! `cargo run --example witnesses -- [delta] [epsilon]`

use dquad::arith::parse_decimal;
use dquad::constructions::{execute_witness, plan_witness};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let targets: Vec<&str> = match args.first() {
        Some(d) => vec![d.as_str()],
        None => vec!["0.4", "0.45", "0.5", "1", "2", "2.9", "3"],
    };
    let epsilon: f64 = args.get(1).map_or(0.05, |e| e.parse().expect("epsilon"));

    for d in targets {
        let delta = parse_decimal(d).expect("delta");
        let plan = plan_witness(&delta, epsilon).expect("plan");
        let w = execute_witness(&plan).expect("witness");
        println!(
            "delta = {d:<5} {:<10} schedule ({}, {}) y = 2^{:<3} ratio = {:.6} n has {} digits",
            plan.family_id,
            plan.l1,
            plan.l2,
            w.y.bits() - 1,
            w.achieved_ratio,
            w.tuple.n().to_string().trim_start_matches('-').len()
        );
    }
}
