//! The fifteen team-selection strategies and their shared machinery: recent
//! form, career point rates, MCDM ranking, exact mean-variance optimization,
//! popularity selection, and constraint-aware team completion.

pub mod context;
pub mod mcdm;
pub mod optimize;

use std::fmt;

use rand::seq::index::sample as index_sample;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::types::{
    cell_of, completion_exists, infeasibility_reason, pool_teams, ConstraintSet, FantasyTeam,
    PlayerRecord, PlayerRole, PoolCells, TeamId,
};

pub use context::{
    career_point_rate, compute_form, EntryBoard, HistoryAt, HistoryFigures, MatchContext,
    SeasonHistory, TournamentTotals,
};
pub use mcdm::{ahp_weights, shannon_entropy_weights, topsis_rank, AhpWeights, Orientation, TopsisRanking};
pub use optimize::mean_variance_select;

// ---------------------------------------------------------------------------
// Strategy identities
// ---------------------------------------------------------------------------

/// The fifteen selection strategies, in canonical index order.
///
/// Each is tagged variable or deterministic (does the rule randomize?) and
/// learning or non-learning (does it read season history?).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyId {
    /// Uniform random valid team.
    Random1,
    /// Ten players from a randomly favored side, one from the other.
    FavTeam,
    /// As many allrounders as the constraints allow, rest random.
    AllrounderSelectAll,
    /// Top players by mean points over the last five appearances.
    Ma5,
    /// Career batting-average and career-wicket leaders locked in, rest random.
    CareerAverages,
    /// Season leaders in runs, wickets and boundaries locked in, rest random.
    TournamentStats,
    /// Top players by per-innings career point rate.
    CareerPoints,
    /// Uniform random valid team with at least two batters.
    Random2,
    /// Top players by points in the previous appearance.
    Ma1,
    /// As [`StrategyId::Ma1`] with at least three allrounders.
    AllrounderPref,
    /// Exact maximizer of recent form penalized by its variance.
    MeanVarOptimization,
    /// TOPSIS ranking weighted by the synthesis scheme.
    TopsisSynthesis,
    /// TOPSIS ranking weighted by AHP pairwise comparison.
    TopsisAhp,
    /// TOPSIS ranking weighted by Shannon entropy.
    TopsisShannon,
    /// Most-picked players among teams already entered in the contest.
    PopularitySelection,
}

impl StrategyId {
    pub const ALL: [StrategyId; 15] = [
        StrategyId::Random1,
        StrategyId::FavTeam,
        StrategyId::AllrounderSelectAll,
        StrategyId::Ma5,
        StrategyId::CareerAverages,
        StrategyId::TournamentStats,
        StrategyId::CareerPoints,
        StrategyId::Random2,
        StrategyId::Ma1,
        StrategyId::AllrounderPref,
        StrategyId::MeanVarOptimization,
        StrategyId::TopsisSynthesis,
        StrategyId::TopsisAhp,
        StrategyId::TopsisShannon,
        StrategyId::PopularitySelection,
    ];

    pub fn index(self) -> usize {
        StrategyId::ALL.iter().position(|s| *s == self).expect("strategy is in ALL")
    }

    /// Does repeated application produce different teams for the same match?
    pub fn is_variable(self) -> bool {
        matches!(
            self,
            StrategyId::Random1
                | StrategyId::FavTeam
                | StrategyId::AllrounderSelectAll
                | StrategyId::CareerAverages
                | StrategyId::TournamentStats
                | StrategyId::Random2
                | StrategyId::PopularitySelection
        )
    }

    pub fn is_deterministic(self) -> bool {
        !self.is_variable()
    }

    /// Does the rule read earlier matches of the running season?
    pub fn is_learning(self) -> bool {
        matches!(
            self,
            StrategyId::Ma5
                | StrategyId::TournamentStats
                | StrategyId::Ma1
                | StrategyId::AllrounderPref
                | StrategyId::MeanVarOptimization
        )
    }

    /// Stable snake-case label used in reports and config files.
    pub fn label(self) -> &'static str {
        match self {
            StrategyId::Random1 => "random1",
            StrategyId::FavTeam => "fav_team",
            StrategyId::AllrounderSelectAll => "allrounder_select_all",
            StrategyId::Ma5 => "ma5",
            StrategyId::CareerAverages => "career_averages",
            StrategyId::TournamentStats => "tournament_stats",
            StrategyId::CareerPoints => "career_points",
            StrategyId::Random2 => "random2",
            StrategyId::Ma1 => "ma1",
            StrategyId::AllrounderPref => "allrounder_pref",
            StrategyId::MeanVarOptimization => "mean_var_optimization",
            StrategyId::TopsisSynthesis => "topsis_synthesis",
            StrategyId::TopsisAhp => "topsis_ahp",
            StrategyId::TopsisShannon => "topsis_shannon",
            StrategyId::PopularitySelection => "popularity_selection",
        }
    }

    /// The constraint set this strategy's teams are validated against.
    pub fn constraints(self, base: &ConstraintSet, params: &StrategyParams) -> ConstraintSet {
        match self {
            StrategyId::Random2 => base
                .with_role_minimum(PlayerRole::Batter, base.min_per_role.batter.max(2)),
            StrategyId::AllrounderPref => base.with_role_minimum(
                PlayerRole::Allrounder,
                base.min_per_role.allrounder.max(params.allrounder_min),
            ),
            _ => *base,
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// History-derived criterion used by the TOPSIS strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    BattingAverage,
    StrikeRate,
    Wickets,
    Economy,
}

impl CriterionKind {
    fn value(self, figures: &HistoryFigures) -> f64 {
        match self {
            CriterionKind::BattingAverage => figures.batting_average,
            CriterionKind::StrikeRate => figures.strike_rate,
            CriterionKind::Wickets => figures.wickets,
            CriterionKind::Economy => figures.economy,
        }
    }
}

/// A criterion together with its orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionDef {
    pub kind: CriterionKind,
    pub orientation: Orientation,
}

/// Criterion lists per role group. Batters and wicketkeepers are ranked on
/// the batting list, bowlers on the bowling list, allrounders on both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TopsisSettings {
    pub batting: Vec<CriterionDef>,
    pub bowling: Vec<CriterionDef>,
}

impl Default for TopsisSettings {
    fn default() -> Self {
        TopsisSettings {
            batting: vec![
                CriterionDef {
                    kind: CriterionKind::BattingAverage,
                    orientation: Orientation::Benefit,
                },
                CriterionDef { kind: CriterionKind::StrikeRate, orientation: Orientation::Benefit },
            ],
            bowling: vec![
                CriterionDef { kind: CriterionKind::Wickets, orientation: Orientation::Benefit },
                CriterionDef { kind: CriterionKind::Economy, orientation: Orientation::Cost },
            ],
        }
    }
}

/// Tunable strategy parameters with the documented defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StrategyParams {
    /// λ in the mean-variance objective.
    pub risk_aversion: f64,
    /// Allrounder minimum enforced by [`StrategyId::AllrounderPref`].
    pub allrounder_min: u32,
    /// Form assigned to players with no appearances yet.
    pub fallback_form: f64,
    /// Window of the long moving-average strategy.
    pub ma5_window: u32,
    /// Window of the short moving-average strategies.
    pub ma1_window: u32,
    /// Window of the mean-variance strategy.
    pub mean_var_window: u32,
    pub topsis: TopsisSettings,
    /// Pairwise comparison matrix over the combined criteria list
    /// (batting criteria then bowling criteria); `None` means all-ones,
    /// which yields uniform weights. Role groups use the corresponding
    /// principal submatrix.
    pub ahp_pairwise: Option<Vec<Vec<f64>>>,
}

impl Default for StrategyParams {
    fn default() -> Self {
        StrategyParams {
            risk_aversion: 0.5,
            allrounder_min: 3,
            fallback_form: 0.0,
            ma5_window: 5,
            ma1_window: 1,
            mean_var_window: 3,
            topsis: TopsisSettings::default(),
            ahp_pairwise: None,
        }
    }
}

impl StrategyParams {
    pub fn validate(&self) -> Result<()> {
        if !self.risk_aversion.is_finite() || self.risk_aversion < 0.0 {
            return Err(Error::Config(format!(
                "risk_aversion must be non-negative, got {}",
                self.risk_aversion
            )));
        }
        if self.ma5_window == 0 || self.ma1_window == 0 || self.mean_var_window == 0 {
            return Err(Error::Config("form windows must be at least 1".into()));
        }
        if self.topsis.batting.is_empty() || self.topsis.bowling.is_empty() {
            return Err(Error::Config("topsis criterion lists must be non-empty".into()));
        }
        if let Some(matrix) = &self.ahp_pairwise {
            let expected = self.topsis.batting.len() + self.topsis.bowling.len();
            if matrix.len() != expected || matrix.iter().any(|row| row.len() != expected) {
                return Err(Error::Config(format!(
                    "ahp_pairwise must be {expected}x{expected} to cover the combined criteria"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Selection machinery
// ---------------------------------------------------------------------------

const REJECTION_TRIES: usize = 4000;

/// Index-level view of the pool for constraint bookkeeping.
struct PoolView<'a> {
    pool: &'a [PlayerRecord],
    teams: [TeamId; 2],
    /// (role index, team index) per pool position.
    cells: Vec<(usize, usize)>,
}

impl<'a> PoolView<'a> {
    fn new(pool: &'a [PlayerRecord]) -> Result<Self> {
        let teams = pool_teams(pool)?;
        let cells = pool.iter().map(|p| cell_of(p, &teams)).collect();
        Ok(PoolView { pool, teams, cells })
    }

    fn avail_excluding(&self, taken: &[bool]) -> PoolCells {
        let mut avail = [[0u32; 2]; 4];
        for (idx, &(role, team)) in self.cells.iter().enumerate() {
            if !taken[idx] {
                avail[role][team] += 1;
            }
        }
        PoolCells { avail }
    }

    fn team_from_indices(&self, indices: &[usize]) -> Result<FantasyTeam> {
        FantasyTeam::new(indices.iter().map(|&i| self.pool[i].id.clone()))
    }
}

struct SelectionState {
    taken: Vec<bool>,
    chosen: Vec<usize>,
    role_counts: [u32; 4],
    team_counts: [u32; 2],
}

impl SelectionState {
    fn new(view: &PoolView<'_>, locked: &[usize]) -> Self {
        let mut state = SelectionState {
            taken: vec![false; view.pool.len()],
            chosen: Vec::new(),
            role_counts: [0; 4],
            team_counts: [0; 2],
        };
        for &idx in locked {
            state.add(view, idx);
        }
        state
    }

    fn add(&mut self, view: &PoolView<'_>, idx: usize) {
        debug_assert!(!self.taken[idx]);
        let (role, team) = view.cells[idx];
        self.taken[idx] = true;
        self.chosen.push(idx);
        self.role_counts[role] += 1;
        self.team_counts[team] += 1;
    }

    fn needs(&self, constraints: &ConstraintSet) -> ([u32; 4], [u32; 2]) {
        let minima = constraints.min_per_role.as_array();
        let mut need_role = [0u32; 4];
        for r in 0..4 {
            need_role[r] = minima[r].saturating_sub(self.role_counts[r]);
        }
        let need_team = [
            constraints.min_per_real_team.saturating_sub(self.team_counts[0]),
            constraints.min_per_real_team.saturating_sub(self.team_counts[1]),
        ];
        (need_role, need_team)
    }

    fn slots_left(&self, constraints: &ConstraintSet) -> u32 {
        constraints.team_size.saturating_sub(self.chosen.len() as u32)
    }
}

/// Greedy rank-order selection with constraint repair: for every slot, take
/// the highest-ranked unselected player whose addition still leaves the
/// remaining slots completable.
fn ranked_repair(
    view: &PoolView<'_>,
    order: &[usize],
    constraints: &ConstraintSet,
) -> Result<FantasyTeam> {
    constraints.validate()?;
    let mut state = SelectionState::new(view, &[]);
    {
        let (need_role, need_team) = state.needs(constraints);
        let avail = view.avail_excluding(&state.taken);
        if !completion_exists(&avail, need_role, need_team, constraints.team_size) {
            return Err(Error::Infeasible(infeasibility_reason(
                &avail,
                need_role,
                need_team,
                &view.teams,
                constraints.team_size,
            )));
        }
    }
    while state.slots_left(constraints) > 0 {
        let slots_after = state.slots_left(constraints) - 1;
        let mut accepted = None;
        for &candidate in order {
            if state.taken[candidate] {
                continue;
            }
            let (role, team) = view.cells[candidate];
            let (mut need_role, mut need_team) = state.needs(constraints);
            need_role[role] = need_role[role].saturating_sub(1);
            need_team[team] = need_team[team].saturating_sub(1);
            let mut avail = view.avail_excluding(&state.taken);
            avail.avail[role][team] -= 1;
            if completion_exists(&avail, need_role, need_team, slots_after) {
                accepted = Some(candidate);
                break;
            }
        }
        // A completion exists by the loop invariant, so some candidate from
        // it is always acceptable.
        let candidate = accepted.expect("feasible state always yields an acceptable candidate");
        state.add(view, candidate);
    }
    view.team_from_indices(&state.chosen)
}

/// Uniform random valid team containing `locked`: rejection-sample completions
/// until one satisfies the constraints, falling back to feasibility-guided
/// construction on exhaustion (degenerate pools only).
fn random_completion(
    view: &PoolView<'_>,
    locked: &[usize],
    constraints: &ConstraintSet,
    rng: &mut Rng,
) -> Result<FantasyTeam> {
    constraints.validate()?;
    let need = constraints.team_size as usize;
    if locked.len() > need {
        return Err(Error::Infeasible(format!(
            "{} locked players exceed team size {need}",
            locked.len()
        )));
    }
    let available: Vec<usize> =
        (0..view.pool.len()).filter(|i| !locked.contains(i)).collect();
    let fill = need - locked.len();
    if fill > available.len() {
        return constructive_fill(view, locked, constraints, rng);
    }

    let mut base_roles = [0u32; 4];
    let mut base_teams = [0u32; 2];
    for &idx in locked {
        let (role, team) = view.cells[idx];
        base_roles[role] += 1;
        base_teams[team] += 1;
    }
    let minima = constraints.min_per_role.as_array();
    for _ in 0..REJECTION_TRIES {
        let mut roles = base_roles;
        let mut teams = base_teams;
        let picks = index_sample(rng, available.len(), fill);
        for pos in picks.iter() {
            let (role, team) = view.cells[available[pos]];
            roles[role] += 1;
            teams[team] += 1;
        }
        let roles_ok = (0..4).all(|r| roles[r] >= minima[r]);
        let teams_ok = teams.iter().all(|&t| t >= constraints.min_per_real_team);
        if roles_ok && teams_ok {
            let mut indices: Vec<usize> = locked.to_vec();
            indices.extend(picks.iter().map(|pos| available[pos]));
            return view.team_from_indices(&indices);
        }
    }
    constructive_fill(view, locked, constraints, rng)
}

/// Sequential random fill that only ever picks players keeping the remaining
/// selection completable. Exact: fails only when no valid completion exists.
fn constructive_fill(
    view: &PoolView<'_>,
    locked: &[usize],
    constraints: &ConstraintSet,
    rng: &mut Rng,
) -> Result<FantasyTeam> {
    let mut state = SelectionState::new(view, locked);
    {
        let (need_role, need_team) = state.needs(constraints);
        let avail = view.avail_excluding(&state.taken);
        let slots = state.slots_left(constraints);
        if !completion_exists(&avail, need_role, need_team, slots) {
            return Err(Error::Infeasible(infeasibility_reason(
                &avail,
                need_role,
                need_team,
                &view.teams,
                slots,
            )));
        }
    }
    while state.slots_left(constraints) > 0 {
        let slots_after = state.slots_left(constraints) - 1;
        let mut feasible = Vec::new();
        for candidate in 0..view.pool.len() {
            if state.taken[candidate] {
                continue;
            }
            let (role, team) = view.cells[candidate];
            let (mut need_role, mut need_team) = state.needs(constraints);
            need_role[role] = need_role[role].saturating_sub(1);
            need_team[team] = need_team[team].saturating_sub(1);
            let mut avail = view.avail_excluding(&state.taken);
            avail.avail[role][team] -= 1;
            if completion_exists(&avail, need_role, need_team, slots_after) {
                feasible.push(candidate);
            }
        }
        let pick = feasible[rng.random_range(0..feasible.len())];
        state.add(view, pick);
    }
    view.team_from_indices(&state.chosen)
}

/// Indices ordered by score descending, player id ascending. The pool is
/// id-sorted, so index order is id order.
fn rank_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b].partial_cmp(&scores[a]).expect("scores are finite").then(a.cmp(&b))
    });
    order
}

fn argmax_by<F: Fn(usize) -> f64>(candidates: &[usize], score: F) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .max_by(|&a, &b| {
            score(a)
                .partial_cmp(&score(b))
                .expect("scores are finite")
                // Prefer the smaller index (= smaller id) on ties.
                .then(b.cmp(&a))
        })
}

// ---------------------------------------------------------------------------
// The dispatcher
// ---------------------------------------------------------------------------

/// Select a team for one match under the given strategy.
///
/// Deterministic strategies ignore `rng` entirely; variable strategies are a
/// deterministic function of `(ctx, params, rng state)`. Every returned team
/// satisfies [`StrategyId::constraints`] for the strategy.
pub fn select_team(
    strategy: StrategyId,
    ctx: &MatchContext<'_>,
    params: &StrategyParams,
    rng: &mut Rng,
) -> Result<FantasyTeam> {
    params.validate()?;
    let view = PoolView::new(ctx.pool)?;
    let constraints = strategy.constraints(ctx.constraints, params);
    match strategy {
        StrategyId::Random1 | StrategyId::Random2 => {
            random_completion(&view, &[], &constraints, rng)
        }
        StrategyId::FavTeam => fav_team(&view, &constraints, rng),
        StrategyId::AllrounderSelectAll => allrounder_select_all(&view, &constraints, rng),
        StrategyId::Ma5 => {
            let scores = form_scores(ctx, params.ma5_window, params.fallback_form);
            ranked_repair(&view, &rank_order(&scores), &constraints)
        }
        StrategyId::Ma1 => {
            let scores = form_scores(ctx, params.ma1_window, params.fallback_form);
            ranked_repair(&view, &rank_order(&scores), &constraints)
        }
        StrategyId::AllrounderPref => {
            let scores = form_scores(ctx, params.ma1_window, params.fallback_form);
            ranked_repair(&view, &rank_order(&scores), &constraints)
        }
        StrategyId::CareerAverages => career_averages(ctx, &view, &constraints, rng),
        StrategyId::TournamentStats => tournament_stats(ctx, &view, &constraints, rng),
        StrategyId::CareerPoints => {
            let scores: Vec<f64> = ctx
                .pool
                .iter()
                .map(|p| {
                    ctx.careers.get(&p.id).map_or(0.0, |career| career_point_rate(career, ctx.rules))
                })
                .collect();
            ranked_repair(&view, &rank_order(&scores), &constraints)
        }
        StrategyId::MeanVarOptimization => {
            let mut form = Vec::with_capacity(ctx.pool.len());
            let mut variance = Vec::with_capacity(ctx.pool.len());
            for player in ctx.pool {
                let (mean, var) = ctx
                    .history
                    .form_stats(&player.id, params.mean_var_window)
                    .unwrap_or((params.fallback_form, 0.0));
                form.push(mean);
                variance.push(var);
            }
            mean_variance_select(ctx.pool, &form, &variance, params.risk_aversion, &constraints)
        }
        StrategyId::TopsisSynthesis => topsis_strategy(ctx, &view, &constraints, params, WeightScheme::Synthesis),
        StrategyId::TopsisAhp => topsis_strategy(ctx, &view, &constraints, params, WeightScheme::Ahp),
        StrategyId::TopsisShannon => topsis_strategy(ctx, &view, &constraints, params, WeightScheme::Shannon),
        StrategyId::PopularitySelection => {
            if ctx.prior_entries.is_empty() {
                random_completion(&view, &[], &constraints, rng)
            } else {
                let scores: Vec<f64> = ctx
                    .pool
                    .iter()
                    .map(|p| ctx.prior_entries.popularity(&p.id) as f64)
                    .collect();
                ranked_repair(&view, &rank_order(&scores), &constraints)
            }
        }
    }
}

fn form_scores(ctx: &MatchContext<'_>, window: u32, fallback: f64) -> Vec<f64> {
    ctx.pool.iter().map(|p| ctx.history.form(&p.id, window, fallback)).collect()
}

fn fav_team(view: &PoolView<'_>, constraints: &ConstraintSet, rng: &mut Rng) -> Result<FantasyTeam> {
    constraints.validate()?;
    let favorite = rng.random_range(0..2usize);
    let minima = constraints.min_per_role.as_array();
    for team in [favorite, 1 - favorite] {
        let own: Vec<usize> =
            (0..view.pool.len()).filter(|&i| view.cells[i].1 == team).collect();
        let other: Vec<usize> =
            (0..view.pool.len()).filter(|&i| view.cells[i].1 != team).collect();
        let take_own = (constraints.team_size as usize).saturating_sub(1);
        if own.len() < take_own || other.is_empty() {
            continue;
        }
        for _ in 0..REJECTION_TRIES {
            let mut roles = [0u32; 4];
            let picks = index_sample(rng, own.len(), take_own);
            for pos in picks.iter() {
                roles[view.cells[own[pos]].0] += 1;
            }
            let outsider = other[rng.random_range(0..other.len())];
            roles[view.cells[outsider].0] += 1;
            if (0..4).all(|r| roles[r] >= minima[r]) {
                let mut indices: Vec<usize> = picks.iter().map(|pos| own[pos]).collect();
                indices.push(outsider);
                return view.team_from_indices(&indices);
            }
        }
    }
    Err(Error::Infeasible(
        "no ten-plus-one split of either side satisfies the role minima".into(),
    ))
}

fn allrounder_select_all(
    view: &PoolView<'_>,
    constraints: &ConstraintSet,
    rng: &mut Rng,
) -> Result<FantasyTeam> {
    let allrounders: Vec<usize> = (0..view.pool.len())
        .filter(|&i| view.cells[i].0 == PlayerRole::Allrounder.index())
        .collect();
    let other_minima: u32 = PlayerRole::ALL
        .iter()
        .filter(|r| **r != PlayerRole::Allrounder)
        .map(|r| constraints.min_per_role.get(*r))
        .sum();
    let k_min = constraints.min_per_role.allrounder;
    let k_max = (allrounders.len() as u32).min(constraints.team_size.saturating_sub(other_minima));
    let mut last_err = None;
    let mut k = k_max;
    while k >= k_min {
        // Lock all allrounders when they fit, otherwise a random subset.
        for _ in 0..3 {
            let locked: Vec<usize> = if k as usize >= allrounders.len() {
                allrounders.clone()
            } else {
                index_sample(rng, allrounders.len(), k as usize)
                    .iter()
                    .map(|pos| allrounders[pos])
                    .collect()
            };
            match random_completion(view, &locked, constraints, rng) {
                Ok(team) => return Ok(team),
                Err(err) => last_err = Some(err),
            }
            if k as usize >= allrounders.len() {
                break;
            }
        }
        if k == 0 {
            break;
        }
        k -= 1;
    }
    Err(last_err.unwrap_or_else(|| {
        Error::Infeasible("no allrounder count is compatible with the constraints".into())
    }))
}

fn career_averages(
    ctx: &MatchContext<'_>,
    view: &PoolView<'_>,
    constraints: &ConstraintSet,
    rng: &mut Rng,
) -> Result<FantasyTeam> {
    let by_role = |role: PlayerRole| -> Vec<usize> {
        (0..view.pool.len()).filter(|&i| view.cells[i].0 == role.index()).collect()
    };
    let batting_average = |idx: usize| -> f64 {
        ctx.careers.get(&view.pool[idx].id).map_or(0.0, |c| c.batting_average)
    };
    let career_wickets = |idx: usize| -> f64 {
        ctx.careers.get(&view.pool[idx].id).map_or(0.0, |c| c.career_wickets as f64)
    };

    let mut locked = Vec::new();
    if let Some(best) = argmax_by(&by_role(PlayerRole::Batter), batting_average) {
        locked.push(best);
    }
    if let Some(best) = argmax_by(&by_role(PlayerRole::Wicketkeeper), batting_average) {
        locked.push(best);
    }
    let allrounders = by_role(PlayerRole::Allrounder);
    let best_ar_bat = argmax_by(&allrounders, batting_average);
    if let Some(best) = best_ar_bat {
        locked.push(best);
    }
    if let Some(best) = argmax_by(&by_role(PlayerRole::Bowler), career_wickets) {
        locked.push(best);
    }
    // Second allrounder slot by wickets; collisions with the batting-average
    // pick fall through to the next-best distinct allrounder.
    let remaining_ars: Vec<usize> =
        allrounders.iter().copied().filter(|i| Some(*i) != best_ar_bat).collect();
    if let Some(best) = argmax_by(&remaining_ars, career_wickets) {
        locked.push(best);
    }
    random_completion(view, &locked, constraints, rng)
}

fn tournament_stats(
    ctx: &MatchContext<'_>,
    view: &PoolView<'_>,
    constraints: &ConstraintSet,
    rng: &mut Rng,
) -> Result<FantasyTeam> {
    let everyone: Vec<usize> = (0..view.pool.len()).collect();
    let totals: Vec<TournamentTotals> =
        ctx.pool.iter().map(|p| ctx.history.totals(&p.id)).collect();
    let mut locked = Vec::new();
    for leader in [
        argmax_by(&everyone, |i| totals[i].runs as f64),
        argmax_by(&everyone, |i| totals[i].wickets as f64),
        argmax_by(&everyone, |i| totals[i].boundaries as f64),
    ]
    .into_iter()
    .flatten()
    {
        if !locked.contains(&leader) {
            locked.push(leader);
        }
    }
    random_completion(view, &locked, constraints, rng)
}

#[derive(Clone, Copy)]
enum WeightScheme {
    Synthesis,
    Ahp,
    Shannon,
}

fn topsis_strategy(
    ctx: &MatchContext<'_>,
    view: &PoolView<'_>,
    constraints: &ConstraintSet,
    params: &StrategyParams,
    scheme: WeightScheme,
) -> Result<FantasyTeam> {
    let batting_len = params.topsis.batting.len();
    let combined: Vec<CriterionDef> = params
        .topsis
        .batting
        .iter()
        .chain(params.topsis.bowling.iter())
        .copied()
        .collect();
    let full_pairwise: Vec<Vec<f64>> = match &params.ahp_pairwise {
        Some(matrix) => matrix.clone(),
        None => vec![vec![1.0; combined.len()]; combined.len()],
    };

    // Criterion indices (into the combined list) per role group.
    let batting_indices: Vec<usize> = (0..batting_len).collect();
    let bowling_indices: Vec<usize> = (batting_len..combined.len()).collect();
    let all_indices: Vec<usize> = (0..combined.len()).collect();

    let figures: Vec<HistoryFigures> =
        ctx.pool.iter().map(|p| ctx.history.figures(&p.id)).collect();

    let mut closeness = vec![0.5; ctx.pool.len()];
    for (roles, criterion_indices) in [
        (vec![PlayerRole::Batter, PlayerRole::Wicketkeeper], &batting_indices),
        (vec![PlayerRole::Bowler], &bowling_indices),
        (vec![PlayerRole::Allrounder], &all_indices),
    ] {
        let members: Vec<usize> = (0..ctx.pool.len())
            .filter(|&i| roles.iter().any(|r| r.index() == view.cells[i].0))
            .collect();
        if members.is_empty() {
            continue;
        }
        let defs: Vec<CriterionDef> =
            criterion_indices.iter().map(|&c| combined[c]).collect();
        let matrix: Vec<Vec<f64>> = members
            .iter()
            .map(|&i| defs.iter().map(|d| d.kind.value(&figures[i])).collect())
            .collect();
        let orientations: Vec<Orientation> = defs.iter().map(|d| d.orientation).collect();
        let weights = match scheme {
            WeightScheme::Ahp => group_ahp_weights(&full_pairwise, criterion_indices)?,
            WeightScheme::Shannon => shannon_entropy_weights(&matrix)?,
            WeightScheme::Synthesis => {
                let ahp = group_ahp_weights(&full_pairwise, criterion_indices)?;
                let shannon = shannon_entropy_weights(&matrix)?;
                let mut blended: Vec<f64> =
                    ahp.iter().zip(&shannon).map(|(a, s)| (a + s) / 2.0).collect();
                let total: f64 = blended.iter().sum();
                for w in &mut blended {
                    *w /= total;
                }
                blended
            }
        };
        let ranking = topsis_rank(&matrix, &orientations, &weights)?;
        for (slot, &pool_idx) in members.iter().enumerate() {
            closeness[pool_idx] = ranking.closeness[slot];
        }
    }

    ranked_repair(view, &rank_order(&closeness), constraints)
}

fn group_ahp_weights(full: &[Vec<f64>], indices: &[usize]) -> Result<Vec<f64>> {
    let submatrix: Vec<Vec<f64>> = indices
        .iter()
        .map(|&i| indices.iter().map(|&j| full[i][j]).collect())
        .collect();
    Ok(ahp_weights(&submatrix)?.weights)
}
