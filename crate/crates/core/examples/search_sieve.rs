//! Large-bound quadruple search with the ratio sieve.
//!
//! `cargo run --release --example search_sieve -- [n] [bound]`

use std::time::Instant;

use dquad::search::{search_range, SearchTask};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: i64 = args.next().map_or(-208, |a| a.parse().expect("n"));
    let bound: i64 = args.next().map_or(200_000, |a| a.parse().expect("bound"));

    let mut task = SearchTask::single(n, bound);
    task.min_d_over_n2 = Some(SearchTask::default_min_ratio());
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get());

    let start = Instant::now();
    let found = search_range(&task, workers).expect("valid task");
    println!(
        "n = {n}, bound = {bound}: {} quadruples with max|a| > 9/4 n^2 in {:.2?}",
        found.len(),
        start.elapsed()
    );
    for r in &found {
        let e: Vec<String> = r.tuple.elements().iter().map(|x| x.to_string()).collect();
        println!(
            "  {{{}}}  d/n^2 = {:.6}  regular triples: {}",
            e.join(", "),
            r.metrics.d_over_n2,
            r.regular_triples.len()
        );
    }
}
