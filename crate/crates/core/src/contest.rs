//! Single-match contests: agents enter in a random order, select teams under
//! their strategies, get scored, ranked with the earlier-entry tie-break, and
//! receive net payoffs from a prize-band structure.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{tag, StreamKey};
use crate::scoring::{score_team, PointTable, ScoringRules};
use crate::strategy::{
    select_team, EntryBoard, HistoryAt, MatchContext, StrategyId, StrategyParams,
};
use crate::types::{CareerTable, ConstraintSet, FantasyTeam, PlayerRecord, TeamId};

// ---------------------------------------------------------------------------
// Payoff structures
// ---------------------------------------------------------------------------

/// One contiguous rank band and its per-rank prize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrizeBand {
    pub rank_lo: u32,
    pub rank_hi: u32,
    pub prize: i64,
}

impl PrizeBand {
    pub fn width(&self) -> u32 {
        self.rank_hi - self.rank_lo + 1
    }
}

/// Entry fee plus a contiguous rank-band prize table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PayoffStructure {
    pub name: String,
    pub entry_fee: i64,
    pub bands: Vec<PrizeBand>,
}

impl PayoffStructure {
    /// Highest covered rank.
    pub fn capacity(&self) -> u32 {
        self.bands.last().map_or(0, |band| band.rank_hi)
    }

    /// Total prize money across all bands.
    pub fn prize_pool(&self) -> i64 {
        self.bands.iter().map(|band| band.width() as i64 * band.prize).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bands.is_empty() {
            return Err(Error::Structure(format!("{}: no prize bands", self.name)));
        }
        let mut expected_lo = 1;
        let mut previous_prize = i64::MAX;
        for band in &self.bands {
            if band.rank_lo != expected_lo {
                return Err(Error::Structure(format!(
                    "{}: band starting at rank {} leaves a gap after {}",
                    self.name,
                    band.rank_lo,
                    expected_lo - 1
                )));
            }
            if band.rank_hi < band.rank_lo {
                return Err(Error::Structure(format!(
                    "{}: band {}..{} is empty",
                    self.name, band.rank_lo, band.rank_hi
                )));
            }
            if band.prize > previous_prize {
                return Err(Error::Structure(format!(
                    "{}: prize rises to {} at rank {}",
                    self.name, band.prize, band.rank_lo
                )));
            }
            previous_prize = band.prize;
            expected_lo = band.rank_hi + 1;
        }
        Ok(())
    }

    /// Prize for an absolute rank; ranks past the table are a structure error.
    pub fn prize_for_rank(&self, rank: u32) -> Result<i64> {
        if rank == 0 || rank > self.capacity() {
            return Err(Error::Structure(format!(
                "{}: rank {rank} outside covered range 1..={}",
                self.name,
                self.capacity()
            )));
        }
        let idx = self
            .bands
            .partition_point(|band| band.rank_hi < rank);
        Ok(self.bands[idx].prize)
    }
}

/// The two reference contest formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContestKind {
    /// Top-heavy table: steep prizes up front, roughly 60% of entrants paid.
    Mega,
    /// Flat table: the top 20% each win four times the entry fee.
    FourX,
}

impl ContestKind {
    pub fn label(self) -> &'static str {
        match self {
            ContestKind::Mega => "mega",
            ContestKind::FourX => "fourx",
        }
    }
}

/// Build one of the two reference payoff structures.
pub fn make_payoff_structure(kind: ContestKind) -> PayoffStructure {
    let band = |rank_lo, rank_hi, prize| PrizeBand { rank_lo, rank_hi, prize };
    let structure = match kind {
        ContestKind::Mega => PayoffStructure {
            name: "mega".into(),
            entry_fee: 500,
            bands: vec![
                band(1, 1, 50_000),
                band(2, 2, 10_000),
                band(3, 3, 5_000),
                band(4, 4, 2_000),
                band(5, 5, 1_000),
                band(6, 10, 800),
                band(11, 25, 625),
                band(26, 50, 575),
                band(51, 100, 540),
                band(101, 300, 515),
                band(301, 599, 505),
                band(600, 900, 500),
                band(901, 1500, 0),
            ],
        },
        ContestKind::FourX => PayoffStructure {
            name: "fourx".into(),
            entry_fee: 100,
            bands: vec![band(1, 300, 400), band(301, 1500, 0)],
        },
    };
    debug_assert!(structure.validate().is_ok());
    structure
}

// ---------------------------------------------------------------------------
// Agents and rosters
// ---------------------------------------------------------------------------

/// Stable identity of one simulated participant within a season.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AgentId {
    pub strategy: StrategyId,
    pub ordinal: u32,
}

impl std::fmt::Display for AgentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}#{:03}", self.strategy, self.ordinal)
    }
}

/// How many agents each strategy fields, indexed by [`StrategyId::ALL`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyRoster {
    counts: Vec<u32>,
}

impl StrategyRoster {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.len() != StrategyId::ALL.len() {
            return Err(Error::Config(format!(
                "roster needs {} counts, got {}",
                StrategyId::ALL.len(),
                counts.len()
            )));
        }
        Ok(StrategyRoster { counts })
    }

    /// `per_strategy` agents for each listed strategy, zero elsewhere.
    pub fn uniform(strategies: &[StrategyId], per_strategy: u32) -> Self {
        let mut counts = vec![0; StrategyId::ALL.len()];
        for strategy in strategies {
            counts[strategy.index()] = per_strategy;
        }
        StrategyRoster { counts }
    }

    pub fn count(&self, strategy: StrategyId) -> u32 {
        self.counts[strategy.index()]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// All agents in canonical order (strategy order, then ordinal).
    pub fn agents(&self) -> Vec<AgentId> {
        let mut agents = Vec::with_capacity(self.total() as usize);
        for strategy in StrategyId::ALL {
            for ordinal in 0..self.count(strategy) {
                agents.push(AgentId { strategy, ordinal });
            }
        }
        agents
    }
}

// ---------------------------------------------------------------------------
// Contest execution
// ---------------------------------------------------------------------------

/// Per-agent result of one contest, in canonical agent order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentOutcome {
    pub agent: AgentId,
    /// Position in the entry sequence, 1-based; a permutation of `1..=N`.
    pub entry_order: u32,
    pub points: f64,
    /// Final rank, 1-based; a permutation of `1..=N`.
    pub rank: u32,
    pub prize: i64,
    /// Prize minus entry fee.
    pub net_payoff: i64,
    pub team: FantasyTeam,
}

/// A fully ranked and paid-out contest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContestResult {
    pub match_id: String,
    pub outcomes: Vec<AgentOutcome>,
}

impl ContestResult {
    pub fn total_net_payoff(&self) -> i64 {
        self.outcomes.iter().map(|o| o.net_payoff).sum()
    }

    pub fn total_prizes(&self) -> i64 {
        self.outcomes.iter().map(|o| o.prize).sum()
    }
}

/// Everything fixed about one match that a contest needs.
pub struct ContestEnv<'a> {
    pub match_id: &'a str,
    /// Selection pool, sorted by player id.
    pub pool: &'a [PlayerRecord],
    /// The two competing real teams, sorted.
    pub teams: &'a [TeamId; 2],
    /// History view at this match's position in the season sequence.
    pub history: HistoryAt<'a>,
    pub careers: &'a CareerTable,
    pub rules: &'a ScoringRules,
    pub params: &'a StrategyParams,
    pub constraints: &'a ConstraintSet,
    /// Fantasy points per rostered player once the match is played.
    pub point_table: &'a PointTable,
}

/// Assign ranks `1..=N`: points descending, ties to the earlier entrant.
pub fn rank_agents(entries: &[(f64, u32)]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| {
        entries[b]
            .0
            .partial_cmp(&entries[a].0)
            .expect("points are finite")
            .then(entries[a].1.cmp(&entries[b].1))
    });
    let mut ranks = vec![0u32; entries.len()];
    for (position, &idx) in order.iter().enumerate() {
        ranks[idx] = position as u32 + 1;
    }
    ranks
}

/// Net payoff (prize minus fee) for each rank.
pub fn assign_payoffs(ranks: &[u32], structure: &PayoffStructure) -> Result<Vec<i64>> {
    ranks
        .iter()
        .map(|&rank| Ok(structure.prize_for_rank(rank)? - structure.entry_fee))
        .collect()
}

/// Run one complete contest.
///
/// The roster's agents are shuffled into a uniform entry order; each selects a
/// team when its turn comes (popularity-driven agents see the entries made
/// before them), then everyone is scored, ranked and paid. The result is a
/// pure function of `(env, roster, structure, key)`.
pub fn run_contest(
    env: &ContestEnv<'_>,
    roster: &StrategyRoster,
    structure: &PayoffStructure,
    key: StreamKey,
) -> Result<ContestResult> {
    structure.validate()?;
    let agents = roster.agents();
    let n = agents.len();
    if n as u32 > structure.capacity() {
        return Err(Error::Structure(format!(
            "{} agents exceed contest capacity {}",
            n,
            structure.capacity()
        )));
    }

    // Uniform entry permutation: position -> agent index.
    let mut entry_sequence: Vec<usize> = (0..n).collect();
    entry_sequence.shuffle(&mut key.child(tag::SHUFFLE).rng());

    // Deterministic strategies produce one team per match; compute it once
    // and share it across their agents.
    let mut cached: Vec<Option<FantasyTeam>> = vec![None; StrategyId::ALL.len()];

    let mut board = EntryBoard::new();
    let mut teams: Vec<Option<FantasyTeam>> = vec![None; n];
    let mut entry_orders = vec![0u32; n];
    let agent_key = key.child(tag::AGENT);
    for (position, &agent_idx) in entry_sequence.iter().enumerate() {
        let agent = agents[agent_idx];
        entry_orders[agent_idx] = position as u32 + 1;
        let ctx = MatchContext {
            pool: env.pool,
            teams: env.teams,
            history: env.history,
            careers: env.careers,
            prior_entries: &board,
            rules: env.rules,
            constraints: env.constraints,
        };
        let team = if agent.strategy.is_deterministic() {
            match &cached[agent.strategy.index()] {
                Some(team) => team.clone(),
                None => {
                    let mut rng = agent_key.child(agent_idx as u64).rng();
                    let team = select_team(agent.strategy, &ctx, env.params, &mut rng)?;
                    cached[agent.strategy.index()] = Some(team.clone());
                    team
                }
            }
        } else {
            let mut rng = agent_key.child(agent_idx as u64).rng();
            select_team(agent.strategy, &ctx, env.params, &mut rng)?
        };
        board.push(team.clone());
        teams[agent_idx] = Some(team);
    }

    let mut scored = Vec::with_capacity(n);
    for (idx, team) in teams.iter().enumerate() {
        let team = team.as_ref().expect("every agent entered");
        scored.push((score_team(team, env.point_table)?, entry_orders[idx]));
    }
    let ranks = rank_agents(&scored);
    let payoffs = assign_payoffs(&ranks, structure)?;

    let outcomes = agents
        .into_iter()
        .enumerate()
        .map(|(idx, agent)| AgentOutcome {
            agent,
            entry_order: entry_orders[idx],
            points: scored[idx].0,
            rank: ranks[idx],
            prize: payoffs[idx] + structure.entry_fee,
            net_payoff: payoffs[idx],
            team: teams[idx].take().expect("team recorded"),
        })
        .collect();

    Ok(ContestResult { match_id: env.match_id.to_string(), outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mega_structure_matches_published_table() {
        let mega = make_payoff_structure(ContestKind::Mega);
        assert_eq!(mega.entry_fee, 500);
        assert_eq!(mega.capacity(), 1500);
        // Hand-sum of the band table.
        assert_eq!(mega.prize_pool(), 527_245);
        assert!(mega.validate().is_ok());
    }

    #[test]
    fn fourx_structure_pays_top_fifth() {
        let fourx = make_payoff_structure(ContestKind::FourX);
        assert_eq!(fourx.entry_fee, 100);
        assert_eq!(fourx.capacity(), 1500);
        assert_eq!(fourx.prize_pool(), 120_000);
        let winners: u32 = fourx
            .bands
            .iter()
            .filter(|b| b.prize > 0)
            .map(|b| b.width())
            .sum();
        assert_eq!(winners, 300); // top 20%
        assert_eq!(fourx.prize_for_rank(300).unwrap(), 400); // 4x the fee
    }

    #[test]
    fn net_payoff_examples() {
        let mega = make_payoff_structure(ContestKind::Mega);
        assert_eq!(mega.prize_for_rank(1).unwrap() - mega.entry_fee, 49_500);
        assert_eq!(mega.prize_for_rank(650).unwrap() - mega.entry_fee, 0);
        let fourx = make_payoff_structure(ContestKind::FourX);
        assert_eq!(fourx.prize_for_rank(301).unwrap() - fourx.entry_fee, -100);
    }

    #[test]
    fn rank_beyond_capacity_is_an_error() {
        let mega = make_payoff_structure(ContestKind::Mega);
        assert!(matches!(mega.prize_for_rank(1501), Err(Error::Structure(_))));
        assert!(matches!(mega.prize_for_rank(0), Err(Error::Structure(_))));
    }

    #[test]
    fn malformed_structures_are_rejected() {
        let gap = PayoffStructure {
            name: "gap".into(),
            entry_fee: 10,
            bands: vec![
                PrizeBand { rank_lo: 1, rank_hi: 3, prize: 100 },
                PrizeBand { rank_lo: 5, rank_hi: 10, prize: 0 },
            ],
        };
        assert!(gap.validate().is_err());
        let rising = PayoffStructure {
            name: "rising".into(),
            entry_fee: 10,
            bands: vec![
                PrizeBand { rank_lo: 1, rank_hi: 3, prize: 100 },
                PrizeBand { rank_lo: 4, rank_hi: 10, prize: 200 },
            ],
        };
        assert!(rising.validate().is_err());
    }

    #[test]
    fn ties_resolve_to_earlier_entrant() {
        // Points (90, 100, 100) entered at orders (3, 2, 1): the order-1
        // agent wins the tie, order-2 is second, the 90-pointer is last.
        let ranks = rank_agents(&[(90.0, 3), (100.0, 2), (100.0, 1)]);
        assert_eq!(ranks, vec![3, 2, 1]);
    }

    #[test]
    fn distinct_points_rank_by_points() {
        let ranks = rank_agents(&[(10.0, 1), (30.0, 2), (20.0, 3)]);
        assert_eq!(ranks, vec![3, 1, 2]);
    }

    #[test]
    fn all_tied_ranks_equal_entry_order() {
        let ranks = rank_agents(&[(50.0, 4), (50.0, 2), (50.0, 1), (50.0, 3)]);
        assert_eq!(ranks, vec![4, 2, 1, 3]);
    }
}
