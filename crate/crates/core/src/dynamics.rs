//! The dynamic tournament: bootstrap-resampled seasons, positive-payoff
//! counting, softmax reweighting, integer reallocation, and iteration history.
//!
//! Iteration 0 is the burn-in: a fixed population of 100 agents for each
//! strategy except popularity selection. Its measured weights seed iteration
//! 1, where popularity selection joins (entering as if it had zero positive
//! payoffs) and the population grows to the configured total. From then on
//! each iteration's allocation follows the softmax of the previous
//! iteration's positive-payoff counts, averaged over several bootstrap
//! repeats.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::contest::{PayoffStructure, StrategyRoster};
use crate::error::{Error, Result};
use crate::rng::{tag, Rng, StreamKey};
use crate::scoring::ScoringRules;
use crate::sim::run_season;
use crate::strategy::{StrategyId, StrategyParams};
use crate::types::{ConstraintSet, TournamentDataset};

/// Knobs of the dynamic tournament.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DynamicsConfig {
    /// Adaptive iterations after the burn-in.
    pub iterations: u32,
    /// Bootstrap seasons averaged per iteration.
    pub repeats_per_iteration: u32,
    /// Softmax temperature.
    pub temperature: f64,
    /// Population size from iteration 1 onward.
    pub total_agents: u32,
    /// Burn-in population per strategy (popularity selection sits out).
    pub agents_per_strategy: u32,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            iterations: 100,
            repeats_per_iteration: 6,
            temperature: 25.0,
            total_agents: 1500,
            agents_per_strategy: 100,
        }
    }
}

impl DynamicsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 || self.repeats_per_iteration == 0 {
            return Err(Error::Config("iterations and repeats must be at least 1".into()));
        }
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(Error::Config(format!(
                "softmax temperature must be positive, got {}",
                self.temperature
            )));
        }
        if (self.total_agents as usize) < StrategyId::ALL.len() {
            return Err(Error::Config(format!(
                "total_agents {} is below the {} strategies",
                self.total_agents,
                StrategyId::ALL.len()
            )));
        }
        if self.agents_per_strategy == 0 {
            return Err(Error::Config("agents_per_strategy must be at least 1".into()));
        }
        Ok(())
    }
}

/// One bootstrap season inside an iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepeatRecord {
    /// Match ids drawn (with replacement) for this season, in play order.
    pub bootstrap_match_ids: Vec<String>,
    /// Agents per strategy whose season-total net payoff was strictly
    /// positive, indexed by [`StrategyId::ALL`].
    pub positive_counts: Vec<u32>,
    /// Softmax weights of those counts.
    pub weights: Vec<f64>,
}

/// Full record of one iteration of the dynamic tournament.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    /// 0 is the burn-in.
    pub iteration: u32,
    /// Agents fielded per strategy, indexed by [`StrategyId::ALL`].
    pub entering_counts: Vec<u32>,
    pub repeats: Vec<RepeatRecord>,
    /// Mean of the repeats' weight vectors.
    pub averaged_weights: Vec<f64>,
    /// Allocation the averaged weights produce for the next iteration.
    pub next_counts: Vec<u32>,
}

/// `n` uniform draws with replacement from `0..len`.
pub fn bootstrap_indices(len: usize, n: usize, rng: &mut Rng) -> Result<Vec<usize>> {
    if len == 0 {
        return Err(Error::Parameter("cannot bootstrap from an empty list".into()));
    }
    Ok((0..n).map(|_| rng.random_range(0..len)).collect())
}

/// Bootstrap resample of a slice: `n` uniform draws with replacement.
pub fn bootstrap_sample<'a, T>(items: &'a [T], n: usize, rng: &mut Rng) -> Result<Vec<&'a T>> {
    Ok(bootstrap_indices(items.len(), n, rng)?.into_iter().map(|i| &items[i]).collect())
}

/// Softmax of `x / temperature`, computed with max-subtraction so large
/// counts cannot overflow. Weights are strictly positive and sum to 1.
pub fn softmax_reweight(x: &[f64], temperature: f64) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::Parameter("softmax over an empty vector".into()));
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::Parameter(format!(
            "softmax temperature must be positive, got {temperature}"
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parameter("softmax input must be finite".into()));
    }
    let peak = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = x.iter().map(|v| ((v - peak) / temperature).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.into_iter().map(|e| e / total).collect())
}

/// Largest-remainder apportionment of `total` agents over `weights`.
///
/// Quotas are floored, then the leftover agents go to the largest fractional
/// remainders, ties to the lower strategy index. The result always sums to
/// `total` exactly.
pub fn allocate_agents(weights: &[f64], total: u32) -> Result<Vec<u32>> {
    if weights.is_empty() {
        return Err(Error::Parameter("allocation over an empty weight vector".into()));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Parameter("allocation weights must be non-negative".into()));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Parameter(format!(
            "allocation weights must sum to 1 within 1e-9, got {sum}"
        )));
    }
    let quotas: Vec<f64> = weights.iter().map(|w| w * total as f64).collect();
    let mut counts: Vec<u32> = quotas.iter().map(|q| q.floor() as u32).collect();
    let assigned: u32 = counts.iter().sum();
    let leftover = total - assigned;

    let mut by_remainder: Vec<usize> = (0..weights.len()).collect();
    by_remainder.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).expect("remainders are finite").then(a.cmp(&b))
    });
    for &idx in by_remainder.iter().take(leftover as usize) {
        counts[idx] += 1;
    }
    Ok(counts)
}

/// Burn-in roster: every strategy except popularity selection.
pub fn burn_in_roster(agents_per_strategy: u32) -> StrategyRoster {
    let strategies: Vec<StrategyId> = StrategyId::ALL
        .into_iter()
        .filter(|s| *s != StrategyId::PopularitySelection)
        .collect();
    StrategyRoster::uniform(&strategies, agents_per_strategy)
}

/// Run the full dynamic tournament, returning one record per iteration
/// including the burn-in (`iterations + 1` records).
pub fn run_dynamic_tournament(
    dataset: &TournamentDataset,
    config: &DynamicsConfig,
    structure: &PayoffStructure,
    params: &StrategyParams,
    rules: &ScoringRules,
    constraints: &ConstraintSet,
    key: StreamKey,
) -> Result<Vec<IterationRecord>> {
    config.validate()?;
    if dataset.matches.is_empty() {
        return Err(Error::Config("dynamic tournament needs at least one match".into()));
    }
    if config.total_agents > structure.capacity() {
        return Err(Error::Config(format!(
            "total_agents {} exceeds contest capacity {}",
            config.total_agents,
            structure.capacity()
        )));
    }

    let n_strategies = StrategyId::ALL.len();
    let season_length = dataset.matches.len();
    let mut records = Vec::with_capacity(config.iterations as usize + 1);
    let mut roster = burn_in_roster(config.agents_per_strategy);

    for iteration in 0..=config.iterations {
        let iteration_key = key.child(iteration as u64);
        let mut repeats = Vec::with_capacity(config.repeats_per_iteration as usize);
        for repeat in 0..config.repeats_per_iteration {
            let repeat_key = iteration_key.child(repeat as u64);
            let sequence = bootstrap_indices(
                season_length,
                season_length,
                &mut repeat_key.child(tag::BOOTSTRAP).rng(),
            )?;
            let outcome = run_season(
                dataset, &sequence, &roster, structure, params, rules, constraints, repeat_key,
            )?;

            let agents = roster.agents();
            let mut positive_counts = vec![0u32; n_strategies];
            for (agent, &total) in agents.iter().zip(&outcome.agent_totals) {
                if total > 0 {
                    positive_counts[agent.strategy.index()] += 1;
                }
            }
            let x: Vec<f64> = positive_counts.iter().map(|&c| c as f64).collect();
            let weights = softmax_reweight(&x, config.temperature)?;
            repeats.push(RepeatRecord {
                bootstrap_match_ids: sequence
                    .iter()
                    .map(|&idx| dataset.matches[idx].match_id.clone())
                    .collect(),
                positive_counts,
                weights,
            });
        }

        let mut averaged = vec![0.0; n_strategies];
        for repeat in &repeats {
            for (avg, w) in averaged.iter_mut().zip(&repeat.weights) {
                *avg += w;
            }
        }
        for avg in &mut averaged {
            *avg /= repeats.len() as f64;
        }

        let next_counts = allocate_agents(&averaged, config.total_agents)?;
        records.push(IterationRecord {
            iteration,
            entering_counts: roster.counts().to_vec(),
            repeats,
            averaged_weights: averaged,
            next_counts: next_counts.clone(),
        });
        roster = StrategyRoster::new(next_counts)?;
    }

    Ok(records)
}

/// First iteration at which some strategy holds a strict majority of agents,
/// if any.
pub fn first_majority_iteration(records: &[IterationRecord]) -> Option<u32> {
    records.iter().find_map(|record| {
        let total: u32 = record.entering_counts.iter().sum();
        record
            .entering_counts
            .iter()
            .any(|&count| 2 * count > total)
            .then_some(record.iteration)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn softmax_uniform_for_equal_counts() {
        let weights = softmax_reweight(&[7.0; 15], 25.0).unwrap();
        for w in &weights {
            assert!((w - 1.0 / 15.0).abs() < 1e-12);
        }
    }

    #[test]
    fn softmax_matches_closed_form() {
        let mut x = vec![0.0; 15];
        x[0] = 100.0;
        let weights = softmax_reweight(&x, 25.0).unwrap();
        let expected = 4.0f64.exp() / (4.0f64.exp() + 14.0);
        assert!((weights[0] - expected).abs() < 1e-12);
        assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn softmax_is_shift_invariant() {
        let x = [3.0, 17.0, 0.0, 44.0];
        let shifted: Vec<f64> = x.iter().map(|v| v + 29.0).collect();
        let a = softmax_reweight(&x, 25.0).unwrap();
        let b = softmax_reweight(&shifted, 25.0).unwrap();
        for (wa, wb) in a.iter().zip(&b) {
            assert!((wa - wb).abs() < 1e-12);
        }
    }

    #[test]
    fn softmax_strictly_monotone_in_own_count() {
        let x = [5.0, 5.0, 5.0];
        let mut bumped = x;
        bumped[1] += 1.0;
        let a = softmax_reweight(&x, 25.0).unwrap();
        let b = softmax_reweight(&bumped, 25.0).unwrap();
        assert!(b[1] > a[1]);
        assert!(b[0] < a[0]);
    }

    #[test]
    fn allocation_exact_proportions() {
        assert_eq!(allocate_agents(&[0.5, 0.3, 0.2], 1500).unwrap(), vec![750, 450, 300]);
        assert_eq!(allocate_agents(&[1.0 / 15.0; 15], 1500).unwrap(), vec![100; 15]);
    }

    #[test]
    fn allocation_remainder_tie_goes_to_lower_index() {
        // Quotas 30.5, 30.5, 39.0: one leftover goes to index 0.
        assert_eq!(allocate_agents(&[0.305, 0.305, 0.39], 100).unwrap(), vec![31, 30, 39]);
    }

    #[test]
    fn allocation_rejects_bad_weights() {
        assert!(allocate_agents(&[0.5, 0.4], 10).is_err());
        assert!(allocate_agents(&[-0.5, 1.5], 10).is_err());
    }

    #[test]
    fn bootstrap_is_seeded_and_replaces() {
        let mut rng = StreamKey::root(5).child(tag::BOOTSTRAP).rng();
        let items: Vec<u32> = (0..71).collect();
        let sample = bootstrap_sample(&items, 71, &mut rng).unwrap();
        assert_eq!(sample.len(), 71);
        let mut rng2 = StreamKey::root(5).child(tag::BOOTSTRAP).rng();
        let sample2 = bootstrap_sample(&items, 71, &mut rng2).unwrap();
        assert_eq!(sample, sample2);
        let mut rng3 = StreamKey::root(6).child(tag::BOOTSTRAP).rng();
        let sample3 = bootstrap_sample(&items, 71, &mut rng3).unwrap();
        assert_ne!(sample, sample3);
    }

    #[test]
    fn bootstrap_rejects_empty_input() {
        let mut rng = Rng::seed_from_u64(1);
        assert!(bootstrap_sample::<u32>(&[], 5, &mut rng).is_err());
    }

    #[test]
    fn burn_in_roster_excludes_popularity() {
        let roster = burn_in_roster(100);
        assert_eq!(roster.total(), 1400);
        assert_eq!(roster.count(StrategyId::PopularitySelection), 0);
        assert_eq!(roster.count(StrategyId::Ma5), 100);
    }

    #[test]
    fn majority_detection() {
        let record = |iteration, counts: Vec<u32>| IterationRecord {
            iteration,
            entering_counts: counts,
            repeats: vec![],
            averaged_weights: vec![],
            next_counts: vec![],
        };
        let records = vec![
            record(0, vec![100, 100, 100]),
            record(1, vec![140, 100, 60]),
            record(2, vec![200, 60, 40]),
        ];
        assert_eq!(first_majority_iteration(&records), Some(2));
        assert_eq!(first_majority_iteration(&records[..2]), None);
    }
}
