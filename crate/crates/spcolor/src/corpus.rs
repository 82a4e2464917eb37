//! Randomized cross-checking of the linear-time decider against the
//! exhaustive oracles.
//!
//! A corpus run draws series-parallel instances from [`oracle::gen_sp`],
//! sweeps every palette size from one below the maximum degree up past the
//! worst-case chromatic index, and compares the decider's verdict with
//! exhaustive search. Yes-instances are additionally colored by replaying the
//! reduction trace and the result is verified edge by edge. The run also
//! confirms the closed form for the chromatic index and the internal
//! bookkeeping invariants (potential decrease, iteration bound, and
//! optionally shadow-graph agreement and configuration soundness).
//!
//! With the `parallel` feature the instances are checked across threads;
//! per-instance seeds are derived from the corpus seed alone, so sequential
//! and parallel runs produce the same report.

use crate::multigraph::Multigraph;
use crate::oracle::{self, OracleBudget};
use crate::reducer::{self, DecideOptions, Verdict};
use crate::colorer;

/// Parameters of a corpus run.
#[derive(Debug, Clone)]
pub struct CorpusOptions {
    /// Number of random instances to draw.
    pub instances: usize,
    /// Smallest vertex count to draw.
    pub min_vertices: usize,
    /// Largest vertex count to draw.
    pub max_vertices: usize,
    /// Largest edge-class multiplicity to draw.
    pub max_mult: u64,
    /// Seed of the whole run; instance seeds are derived from it.
    pub seed: u64,
    /// Size limits for the exhaustive oracle.
    pub budget: OracleBudget,
    /// Re-expand the encoding after every rewrite and compare against a
    /// directly maintained copy of the graph.
    pub check_shadow: bool,
    /// Check every detected configuration against the expanded graph.
    pub check_configs: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            instances: 200,
            min_vertices: 2,
            max_vertices: 8,
            max_mult: 4,
            seed: 0,
            budget: OracleBudget {
                max_vertices: 10,
                max_total_multiplicity: 64,
            },
            check_shadow: false,
            check_configs: false,
        }
    }
}

/// Tally of a corpus run. All violation counters of a clean run are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    /// Instances checked.
    pub instances: usize,
    /// `(graph, k)` pairs on which the decider was compared with the oracle.
    pub decisions: u64,
    /// Yes-verdicts that were replayed into explicit colorings.
    pub colorings: u64,
    /// Reduction steps taken across all runs.
    pub iterations: u64,
    /// Decider verdicts that contradict exhaustive search.
    pub decision_mismatches: u64,
    /// Instances where the decider's chromatic index, the oracle's, and the
    /// degree/density formula do not all agree.
    pub formula_mismatches: u64,
    /// Yes-verdicts whose replayed coloring failed to verify.
    pub replay_failures: u64,
    /// Reduction steps that did not strictly decrease the potential.
    pub potential_violations: u64,
    /// Rewrites after which the encoding and the shadow graph disagreed.
    pub shadow_violations: u64,
    /// Detected configurations that contradict the expanded graph.
    pub config_violations: u64,
    /// Runs that exceeded the linear iteration bound.
    pub iteration_bound_violations: u64,
    /// Oracle invocations rejected by the budget.
    pub oracle_errors: u64,
    /// Smallest instance index with a failure, and what went wrong there.
    pub first_failure: Option<(usize, String)>,
}

impl CorpusReport {
    /// True when no check failed.
    pub fn is_clean(&self) -> bool {
        self.decision_mismatches == 0
            && self.formula_mismatches == 0
            && self.replay_failures == 0
            && self.potential_violations == 0
            && self.shadow_violations == 0
            && self.config_violations == 0
            && self.iteration_bound_violations == 0
            && self.oracle_errors == 0
    }

    /// Folds another report into this one, keeping the earliest failure.
    pub fn merge(mut self, other: CorpusReport) -> CorpusReport {
        self.instances += other.instances;
        self.decisions += other.decisions;
        self.colorings += other.colorings;
        self.iterations += other.iterations;
        self.decision_mismatches += other.decision_mismatches;
        self.formula_mismatches += other.formula_mismatches;
        self.replay_failures += other.replay_failures;
        self.potential_violations += other.potential_violations;
        self.shadow_violations += other.shadow_violations;
        self.config_violations += other.config_violations;
        self.iteration_bound_violations += other.iteration_bound_violations;
        self.oracle_errors += other.oracle_errors;
        self.first_failure = match (self.first_failure.take(), other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    fn fail(&mut self, index: usize, message: impl Into<String>) {
        if self.first_failure.is_none() {
            self.first_failure = Some((index, message.into()));
        }
    }
}

/// SplitMix64 step; decorrelates the per-instance seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// The graph examined at `index` of a run.
pub fn instance_graph(options: &CorpusOptions, index: usize) -> Multigraph {
    let seed = mix(options.seed ^ mix(index as u64));
    let span = (options.max_vertices - options.min_vertices + 1) as u64;
    let n = options.min_vertices + (mix(seed) % span) as usize;
    oracle::gen_sp(seed, n, options.max_mult)
}

/// Palette sizes to sweep for a graph of maximum degree `delta`: from one
/// below the degree bound (always a no) past the worst-case chromatic index
/// of a series-parallel multigraph (always a yes).
pub fn palette_range(delta: u64) -> std::ops::RangeInclusive<u64> {
    delta.saturating_sub(1)..=delta.div_ceil(2) + delta + 1
}

/// Runs every check on one graph and reports the tally; `index` only labels
/// failures.
pub fn check_instance(g: &Multigraph, options: &CorpusOptions, index: usize) -> CorpusReport {
    let mut report = CorpusReport {
        instances: 1,
        ..CorpusReport::default()
    };
    let decide_options = DecideOptions {
        collect_trace: true,
        check_potential: true,
        check_shadow: options.check_shadow,
        check_configs: options.check_configs,
    };
    let delta = g.max_degree();
    let iteration_bound = 50 * (g.vertex_count() as u64 + g.class_count() as u64);
    let mut smallest_yes = None;
    for k in palette_range(delta) {
        let full = reducer::decide_full(g, k, &decide_options);
        report.decisions += 1;
        report.iterations += full.iterations;
        report.potential_violations += full.potential_violations;
        report.shadow_violations += full.shadow_violations;
        report.config_violations += full.config_violations;
        if full.potential_violations > 0 {
            report.fail(index, format!("potential increased at k={k}"));
        }
        if full.shadow_violations > 0 {
            report.fail(index, format!("shadow diverged at k={k}"));
        }
        if full.config_violations > 0 {
            report.fail(index, format!("unsound configuration at k={k}"));
        }
        if full.iterations > iteration_bound {
            report.iteration_bound_violations += 1;
            report.fail(
                index,
                format!("{} iterations at k={k}, bound {iteration_bound}", full.iterations),
            );
        }
        let fast = match full.verdict {
            Verdict::Yes => true,
            Verdict::No(_) => false,
            Verdict::NotSeriesParallel => {
                report.decision_mismatches += 1;
                report.fail(index, "generated graph judged not series-parallel");
                continue;
            }
        };
        match oracle::is_k_colorable_exact(g, k, &options.budget) {
            Ok(exact) if exact == fast => {}
            Ok(exact) => {
                report.decision_mismatches += 1;
                report.fail(
                    index,
                    format!("decide said {fast} but exhaustive search said {exact} at k={k}"),
                );
            }
            Err(err) => {
                report.oracle_errors += 1;
                report.fail(index, format!("oracle refused the instance: {err}"));
            }
        }
        if fast {
            smallest_yes.get_or_insert(k);
            report.colorings += 1;
            let good = colorer::replay_color(g, k, &full.trace)
                .ok()
                .and_then(|coloring| colorer::verify_coloring(g, k, &coloring).ok())
                == Some(true);
            if !good {
                report.replay_failures += 1;
                report.fail(index, format!("replayed coloring failed to verify at k={k}"));
            }
        }
    }

    // The closed form: the chromatic index is the larger of the maximum
    // degree and the rounded-up odd-set density.
    let by_reduction = reducer::chromatic_index(g).ok();
    let by_search = oracle::chi_exact(g, &options.budget).ok();
    let by_formula = oracle::gamma_exact(g, false).ok().map(|densest| {
        let density_bound = densest.map_or(0, |r| r.density.ceil().to_integer());
        delta.max(density_bound)
    });
    // The sweep always reaches the chromatic index, so the smallest yes
    // must coincide with it.
    if by_reduction.is_none()
        || by_reduction != by_search
        || by_search != by_formula
        || by_reduction != smallest_yes
    {
        report.formula_mismatches += 1;
        report.fail(
            index,
            format!(
                "chromatic index disagreement: reduction {by_reduction:?}, \
                 search {by_search:?}, formula {by_formula:?}, \
                 smallest yes in sweep {smallest_yes:?}"
            ),
        );
    }
    report
}

/// Checks `options.instances` freshly drawn graphs sequentially.
pub fn run_checks_sequential(options: &CorpusOptions) -> CorpusReport {
    (0..options.instances)
        .map(|index| check_instance(&instance_graph(options, index), options, index))
        .fold(CorpusReport::default(), CorpusReport::merge)
}

/// Checks `options.instances` freshly drawn graphs across threads. The
/// report is identical to the sequential one.
#[cfg(feature = "parallel")]
pub fn run_checks_parallel(options: &CorpusOptions) -> CorpusReport {
    use rayon::prelude::*;
    (0..options.instances)
        .into_par_iter()
        .map(|index| check_instance(&instance_graph(options, index), options, index))
        .reduce(CorpusReport::default, CorpusReport::merge)
}

/// Checks `options.instances` freshly drawn graphs, across threads when the
/// `parallel` feature is enabled.
pub fn run_checks(options: &CorpusOptions) -> CorpusReport {
    #[cfg(feature = "parallel")]
    {
        run_checks_parallel(options)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_checks_sequential(options)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_range_spans_the_interesting_band() {
        assert_eq!(palette_range(0), 0..=1);
        assert_eq!(palette_range(3), 2..=6);
        assert_eq!(palette_range(4), 3..=7);
    }

    #[test]
    fn small_run_is_clean() {
        let options = CorpusOptions {
            instances: 12,
            check_shadow: true,
            check_configs: true,
            ..CorpusOptions::default()
        };
        let report = run_checks_sequential(&options);
        assert_eq!(report.instances, 12);
        assert!(report.decisions > 0);
        assert!(report.colorings > 0);
        assert!(report.is_clean(), "{report:?}");
    }

    #[test]
    fn instance_graphs_cover_the_size_range() {
        let options = CorpusOptions {
            instances: 64,
            ..CorpusOptions::default()
        };
        let mut sizes = std::collections::BTreeSet::new();
        for index in 0..options.instances {
            let g = instance_graph(&options, index);
            assert!(g.is_series_parallel());
            sizes.insert(g.vertex_count());
        }
        assert!(sizes.len() >= 5, "sizes drawn: {sizes:?}");
        assert!(*sizes.first().unwrap() >= 2);
        assert!(*sizes.last().unwrap() <= 8);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_run_matches_sequential() {
        let options = CorpusOptions {
            instances: 10,
            seed: 7,
            ..CorpusOptions::default()
        };
        assert_eq!(run_checks_parallel(&options), run_checks_sequential(&options));
    }

    #[test]
    fn report_merge_keeps_earliest_failure() {
        let mut a = CorpusReport {
            instances: 1,
            decision_mismatches: 1,
            ..CorpusReport::default()
        };
        a.fail(5, "late");
        let mut b = CorpusReport {
            instances: 1,
            ..CorpusReport::default()
        };
        b.fail(2, "early");
        let merged = a.merge(b);
        assert_eq!(merged.instances, 2);
        assert_eq!(merged.first_failure, Some((2, "early".into())));
        assert!(!merged.is_clean());
    }
}
