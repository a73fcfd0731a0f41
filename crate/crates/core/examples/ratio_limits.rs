//! How log max|a| / log|n| approaches each family's claimed limit.

use dquad::arith::Int;
use dquad::families::registry;

fn main() {
    let params: Vec<Int> = [10, 100, 1000, 10_000].into_iter().map(Int::from).collect();
    for f in registry() {
        let Some(claimed) = &f.claimed_ratio else {
            continue;
        };
        let series = f.ratio_limit(&params);
        let trail: Vec<String> = series
            .points
            .iter()
            .map(|p| p.log_ratio.map_or("-".into(), |r| format!("{r:.5}")))
            .collect();
        println!(
            "{:<12} -> {:<5} {}",
            f.id,
            claimed.to_string(),
            trail.join("  ")
        );
    }
}
