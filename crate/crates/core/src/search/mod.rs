//! Exhaustive search for D(n)-quadruples with bounded elements, the sieves
//! applied to its output, and audits of the two known obstructions.

mod graph;
mod roots;

use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::Int;
use crate::tuples::{regular_triples, Certificate, Metrics, Tuple};

pub use graph::{CompatGraph, GraphStrategy};
pub use roots::square_roots_mod_all;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("n must be nonzero")]
    ZeroN,
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(i64),
    #[error("empty n range [{0}, {1}]")]
    EmptyRange(i64, i64),
    #[error("lower-bound audit needs n_max >= 17, got {0}")]
    LowerBoundPrecondition(i64),
    #[error("could not build a worker pool: {0}")]
    Pool(String),
    #[error("inconsistency: {tuple} contradicts the {obstruction} obstruction")]
    Inconsistency {
        obstruction: &'static str,
        tuple: Tuple,
    },
}

/// A found quadruple with everything needed to re-check and rank it.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchRecord {
    pub tuple: Tuple,
    pub certificate: Certificate,
    pub metrics: Metrics,
    pub regular_triples: Vec<[usize; 3]>,
}

impl SearchRecord {
    fn from_values(values: [i64; 4], n: i64) -> SearchRecord {
        let tuple = Tuple::new(values.iter().map(|&v| Int::from(v)).collect(), n.into())
            .expect("graph excludes zero and duplicates");
        let certificate = tuple.verify().expect("clique edges are square conditions");
        SearchRecord {
            metrics: tuple.metrics(),
            regular_triples: regular_triples(&tuple),
            tuple,
            certificate,
        }
    }
}

pub fn regular_triples_in(record: &SearchRecord) -> Vec<[usize; 3]> {
    regular_triples(&record.tuple)
}

/// A search job over a range of `n` with optional sieves.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchTask {
    pub n_from: i64,
    pub n_to: i64,
    pub bound: i64,
    /// Keep records with `max|a_i| / n^2` strictly above this value.
    pub min_d_over_n2: Option<BigRational>,
    pub require_regular_triple: bool,
    /// Keep records with some `|a_i| <= value`.
    pub require_small_element: Option<i64>,
    /// Skip `n ≡ 2 (mod 4)` without searching (there is nothing to find).
    pub skip_mod4_obstructed: bool,
    pub strategy: GraphStrategy,
}

impl SearchTask {
    pub fn single(n: i64, bound: i64) -> SearchTask {
        SearchTask::range(n, n, bound)
    }

    pub fn range(n_from: i64, n_to: i64, bound: i64) -> SearchTask {
        SearchTask {
            n_from,
            n_to,
            bound,
            min_d_over_n2: None,
            require_regular_triple: false,
            require_small_element: None,
            skip_mod4_obstructed: false,
            strategy: GraphStrategy::Auto,
        }
    }

    /// The sieve threshold used when the ratio filter is requested without a value.
    pub fn default_min_ratio() -> BigRational {
        BigRational::new(9.into(), 4.into())
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.bound < 2 {
            return Err(SearchError::BoundTooSmall(self.bound));
        }
        if self.n_from > self.n_to {
            return Err(SearchError::EmptyRange(self.n_from, self.n_to));
        }
        Ok(())
    }

    pub fn keeps(&self, rec: &SearchRecord) -> bool {
        if let Some(min) = &self.min_d_over_n2 {
            let n = rec.tuple.n();
            let ratio = BigRational::new(rec.metrics.max_abs.clone(), n * n);
            if ratio <= *min {
                return false;
            }
        }
        if self.require_regular_triple && rec.regular_triples.is_empty() {
            return false;
        }
        if let Some(small) = self.require_small_element {
            let small = Int::from(small);
            if !rec.tuple.elements().iter().any(|e| e.abs() <= small) {
                return false;
            }
        }
        true
    }

    fn ns(&self) -> impl Iterator<Item = i64> + '_ {
        (self.n_from..=self.n_to)
            .filter(|&n| n != 0 && !(self.skip_mod4_obstructed && n.rem_euclid(4) == 2))
    }
}

fn quadruples_with(
    n: i64,
    bound: i64,
    strategy: GraphStrategy,
    parallel: bool,
) -> Vec<SearchRecord> {
    let graph = CompatGraph::build(n, bound, strategy);
    graph
        .quadruples(parallel)
        .into_iter()
        .map(|q| SearchRecord::from_values(q, n))
        .collect()
}

/// Every D(n)-quadruple with all `|a_i| <= bound`, sorted, in lexicographic order.
pub fn find_quadruples(n: i64, bound: i64) -> Result<Vec<SearchRecord>, SearchError> {
    if n == 0 {
        return Err(SearchError::ZeroN);
    }
    if bound < 2 {
        return Err(SearchError::BoundTooSmall(bound));
    }
    Ok(quadruples_with(n, bound, GraphStrategy::Auto, false))
}

/// Runs a task on `workers` threads. Output order is by `n`, then
/// lexicographic, regardless of the worker count.
pub fn search_range(task: &SearchTask, workers: usize) -> Result<Vec<SearchRecord>, SearchError> {
    search_range_with_progress(task, workers, |_, _| {})
}

/// Like [`search_range`]; `progress(n, found)` fires as each `n` completes
/// (in completion order, not output order).
pub fn search_range_with_progress<F>(
    task: &SearchTask,
    workers: usize,
    progress: F,
) -> Result<Vec<SearchRecord>, SearchError>
where
    F: Fn(i64, usize) + Sync,
{
    task.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let ns: Vec<i64> = task.ns().collect();
    let single = ns.len() == 1;
    let per_n: Vec<Vec<SearchRecord>> = pool.install(|| {
        ns.par_iter()
            .map(|&n| {
                let found: Vec<SearchRecord> =
                    quadruples_with(n, task.bound, task.strategy, single && workers > 1)
                        .into_iter()
                        .filter(|r| task.keeps(r))
                        .collect();
                progress(n, found.len());
                found
            })
            .collect()
    });
    Ok(per_n.into_iter().flatten().collect())
}

/// Quadruple counts for every `n ≡ 2 (mod 4)` in a range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod4Report {
    pub n_from: i64,
    pub n_to: i64,
    pub bound: i64,
    pub counts: Vec<(i64, usize)>,
}

impl Mod4Report {
    pub fn hits(&self) -> usize {
        self.counts.iter().map(|&(_, c)| c).sum()
    }
}

/// Searches every `n ≡ 2 (mod 4)` in range; any quadruple found is an error.
pub fn audit_mod4(n_from: i64, n_to: i64, bound: i64) -> Result<Mod4Report, SearchError> {
    let task = SearchTask::range(n_from, n_to, bound);
    task.validate()?;
    let ns: Vec<i64> = (n_from..=n_to).filter(|n| n.rem_euclid(4) == 2).collect();
    let results: Vec<(i64, Vec<SearchRecord>)> = ns
        .par_iter()
        .map(|&n| (n, quadruples_with(n, bound, GraphStrategy::Auto, false)))
        .collect();
    let mut counts = Vec::with_capacity(results.len());
    for (n, found) in results {
        if let Some(rec) = found.into_iter().next() {
            return Err(SearchError::Inconsistency {
                obstruction: "n ≡ 2 (mod 4)",
                tuple: rec.tuple,
            });
        }
        counts.push((n, 0));
    }
    Ok(Mod4Report {
        n_from,
        n_to,
        bound,
        counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub n_max: i64,
    pub checked: usize,
    pub max_bound: i64,
    pub hits: usize,
}

/// Largest `B` with `B^4 < n`, i.e. `B < n^{1/4}`.
pub fn quarter_root_bound(n: i64) -> i64 {
    let mut b = (n as f64).powf(0.25) as i64 + 1;
    while b > 0 && (b as i128).pow(4) >= n as i128 {
        b -= 1;
    }
    b
}

/// For each `17 <= n <= n_max`, no D(n)-quadruple has every `|a_i| < n^{1/4}`.
pub fn audit_lower_bound(n_max: i64) -> Result<LowerBoundReport, SearchError> {
    if n_max < 17 {
        return Err(SearchError::LowerBoundPrecondition(n_max));
    }
    let ns: Vec<i64> = (17..=n_max).collect();
    let hits: Vec<SearchRecord> = ns
        .par_iter()
        .flat_map_iter(|&n| {
            quadruples_with(n, quarter_root_bound(n), GraphStrategy::PairScan, false)
        })
        .collect();
    if let Some(rec) = hits.into_iter().next() {
        return Err(SearchError::Inconsistency {
            obstruction: "d >= n^(1/4)",
            tuple: rec.tuple,
        });
    }
    Ok(LowerBoundReport {
        n_max,
        checked: ns.len(),
        max_bound: quarter_root_bound(n_max),
        hits: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(recs: &[SearchRecord]) -> Vec<Vec<i64>> {
        recs.iter()
            .map(|r| {
                r.tuple
                    .elements()
                    .iter()
                    .map(|e| i64::try_from(e).unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn finds_d_4k3_instance() {
        let recs = find_quadruples(7, 100).unwrap();
        assert!(values(&recs).contains(&vec![1, 18, 29, 93]));
        let mut sorted = values(&recs);
        sorted.sort();
        assert_eq!(sorted, values(&recs));
    }

    #[test]
    fn motivating_example_found() {
        let recs = find_quadruples(1312164, 500).unwrap();
        assert!(values(&recs).contains(&vec![-448, -85, 335, 468]));
    }

    #[test]
    fn obstructed_n_is_empty() {
        assert!(find_quadruples(10, 50).unwrap().is_empty());
        assert!(find_quadruples(2, 100).unwrap().is_empty());
        assert!(find_quadruples(-6, 100).unwrap().is_empty());
    }

    #[test]
    fn preconditions() {
        assert_eq!(find_quadruples(0, 10), Err(SearchError::ZeroN));
        assert_eq!(find_quadruples(3, 1), Err(SearchError::BoundTooSmall(1)));
        assert_eq!(
            search_range(&SearchTask::range(5, 4, 10), 1),
            Err(SearchError::EmptyRange(5, 4))
        );
        assert_eq!(
            audit_lower_bound(16),
            Err(SearchError::LowerBoundPrecondition(16))
        );
    }

    #[test]
    fn quarter_roots() {
        assert_eq!(quarter_root_bound(17), 2);
        assert_eq!(quarter_root_bound(81), 2);
        assert_eq!(quarter_root_bound(82), 3);
        assert_eq!(quarter_root_bound(10_000), 9);
        assert_eq!(quarter_root_bound(10_001), 10);
    }

    #[test]
    fn regular_filter() {
        let mut task = SearchTask::single(3, 10);
        let all = search_range(&task, 1).unwrap();
        task.require_regular_triple = true;
        let kept = search_range(&task, 1).unwrap();
        assert!(kept.iter().all(|r| !r.regular_triples.is_empty()));
        assert!(kept.iter().all(|r| all.contains(r)));
    }

    #[test]
    fn small_audits() {
        let r = audit_mod4(-50, 50, 60).unwrap();
        assert_eq!(r.counts.len(), 26);
        assert_eq!(r.hits(), 0);
        let r = audit_lower_bound(2000).unwrap();
        assert_eq!(r.hits, 0);
        assert_eq!(r.checked, 1984);
    }

    #[test]
    fn regular_triples_of_records() {
        let recs = find_quadruples(-208, 200).unwrap();
        for r in &recs {
            assert_eq!(regular_triples_in(r), r.regular_triples);
        }
    }
}
