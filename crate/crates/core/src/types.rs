//! Domain value types shared by every other module: players, scorecards,
//! careers, fantasy teams and their feasibility rules.
//!
//! All types are immutable values after construction and safe to share across
//! threads; the operations here are pure functions.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Identifiers
// ---------------------------------------------------------------------------

macro_rules! string_id {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(value: impl AsRef<str>) -> Self {
                $name(Arc::from(value.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(value: &str) -> Self {
                Self::new(value)
            }
        }

        impl From<String> for $name {
            fn from(value: String) -> Self {
                Self::new(value)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!(stringify!($name), "({})"), &self.0)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.serialize_str(&self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
                String::deserialize(deserializer).map(Self::from)
            }
        }
    };
}

string_id! {
    /// Unique identifier of a real player within a tournament dataset.
    PlayerId
}

string_id! {
    /// Identifier of a real-world team.
    TeamId
}

// ---------------------------------------------------------------------------
// Roles and players
// ---------------------------------------------------------------------------

/// The four player categories every selection rule is stated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlayerRole {
    Batter,
    Bowler,
    Allrounder,
    Wicketkeeper,
}

impl PlayerRole {
    pub const ALL: [PlayerRole; 4] = [
        PlayerRole::Batter,
        PlayerRole::Bowler,
        PlayerRole::Allrounder,
        PlayerRole::Wicketkeeper,
    ];

    pub fn index(self) -> usize {
        match self {
            PlayerRole::Batter => 0,
            PlayerRole::Bowler => 1,
            PlayerRole::Allrounder => 2,
            PlayerRole::Wicketkeeper => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlayerRole::Batter => "Batter",
            PlayerRole::Bowler => "Bowler",
            PlayerRole::Allrounder => "Allrounder",
            PlayerRole::Wicketkeeper => "Wicketkeeper",
        }
    }

    /// Map a source role string onto the closed enumeration.
    ///
    /// Input is trimmed and matched case-insensitively against a table of
    /// spellings seen in scorecard exports ("WK-Batsman", "All-Rounder", ...).
    pub fn parse(source: &str) -> Result<Self> {
        let canon = source.trim().to_ascii_lowercase().replace(['-', '_', ' '], "");
        let role = match canon.as_str() {
            "batter" | "batsman" | "bat" => PlayerRole::Batter,
            "bowler" | "bowl" => PlayerRole::Bowler,
            "allrounder" | "ar" | "battingallrounder" | "bowlingallrounder" => {
                PlayerRole::Allrounder
            }
            "wicketkeeper" | "wk" | "keeper" | "wkbatsman" | "wicketkeeperbatter" => {
                PlayerRole::Wicketkeeper
            }
            _ => {
                return Err(Error::parse(
                    "role",
                    format!("unrecognized player role {source:?}"),
                ))
            }
        };
        Ok(role)
    }
}

impl fmt::Display for PlayerRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identity, role and real-world team of a player.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlayerRecord {
    pub id: PlayerId,
    pub name: String,
    pub role: PlayerRole,
    pub team_id: TeamId,
}

// ---------------------------------------------------------------------------
// Match statistics
// ---------------------------------------------------------------------------

/// One player's on-field line in one match.
///
/// Bowling workload is stored in balls; `3.4` decimal overs from a source feed
/// is 22 balls (see [`crate::ingest::balls_from_overs`]).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerMatchStats {
    pub runs: u32,
    pub balls_faced: u32,
    pub fours: u32,
    pub sixes: u32,
    pub did_bat: bool,
    pub wickets: u32,
    pub balls_bowled: u32,
    pub maidens: u32,
    pub runs_conceded: u32,
    pub catches: u32,
    pub stumpings: u32,
    pub runouts: u32,
}

impl PlayerMatchStats {
    /// Completed overs bowled (a maiden can only be a completed over).
    pub fn completed_overs(&self) -> u32 {
        self.balls_bowled / 6
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.fours * 4 + self.sixes * 6 > self.runs {
            return Err(format!(
                "boundary runs exceed total: 4x{} + 6x{} > {} runs",
                self.fours, self.sixes, self.runs
            ));
        }
        if self.maidens > self.completed_overs() {
            return Err(format!(
                "{} maidens but only {} completed overs",
                self.maidens,
                self.completed_overs()
            ));
        }
        Ok(())
    }
}

/// Per-match roster (playing elevens plus participating impact players) and
/// the stat line of every rostered player.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchScorecard {
    pub match_id: String,
    /// Position in chronological order; strictly increasing within a dataset.
    pub match_index: u32,
    pub team_a: TeamId,
    pub team_b: TeamId,
    pub roster: Vec<(PlayerId, PlayerMatchStats)>,
}

impl MatchScorecard {
    pub fn validate(&self, players: &HashMap<PlayerId, PlayerRecord>) -> Result<()> {
        let mut seen = HashSet::new();
        let mut per_team = HashMap::new();
        for (id, stats) in &self.roster {
            if !seen.insert(id.clone()) {
                return Err(Error::DataIntegrity(format!(
                    "match {}: player {id} rostered twice",
                    self.match_id
                )));
            }
            let record = players.get(id).ok_or_else(|| {
                Error::DataIntegrity(format!(
                    "match {}: roster references unknown player {id}",
                    self.match_id
                ))
            })?;
            if record.team_id != self.team_a && record.team_id != self.team_b {
                return Err(Error::DataIntegrity(format!(
                    "match {}: player {id} belongs to {} which is not playing",
                    self.match_id, record.team_id
                )));
            }
            *per_team.entry(record.team_id.clone()).or_insert(0u32) += 1;
            stats.validate().map_err(|msg| {
                Error::DataIntegrity(format!("match {}: player {id}: {msg}", self.match_id))
            })?;
        }
        for team in [&self.team_a, &self.team_b] {
            let n = per_team.get(team).copied().unwrap_or(0);
            if !(11..=12).contains(&n) {
                return Err(Error::DataIntegrity(format!(
                    "match {}: team {team} rostered {n} players, expected 11 or 12",
                    self.match_id
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Careers
// ---------------------------------------------------------------------------

/// Long-run historical totals for one player.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CareerStats {
    pub player_id: PlayerId,
    pub innings_batted: u32,
    pub innings_bowled: u32,
    pub career_runs: u32,
    pub batting_average: f64,
    pub career_fours: u32,
    pub career_sixes: u32,
    pub career_wickets: u32,
    pub career_maidens: u32,
    pub career_catches: u32,
    pub career_stumpings: u32,
}

impl CareerStats {
    /// All-zero career, used for players absent from the career file.
    pub fn zero(player_id: PlayerId) -> Self {
        CareerStats {
            player_id,
            innings_batted: 0,
            innings_bowled: 0,
            career_runs: 0,
            batting_average: 0.0,
            career_fours: 0,
            career_sixes: 0,
            career_wickets: 0,
            career_maidens: 0,
            career_catches: 0,
            career_stumpings: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.batting_average.is_finite() || self.batting_average < 0.0 {
            return Err(Error::DataIntegrity(format!(
                "career of {}: batting average {} out of range",
                self.player_id, self.batting_average
            )));
        }
        if self.innings_batted == 0 && self.batting_average != 0.0 {
            return Err(Error::DataIntegrity(format!(
                "career of {}: batting average {} recorded with zero innings batted",
                self.player_id, self.batting_average
            )));
        }
        Ok(())
    }
}

/// Career lookup with an all-zero entry for every known player that is
/// missing from the career file.
#[derive(Clone, Debug)]
pub struct CareerTable {
    map: HashMap<PlayerId, CareerStats>,
}

impl CareerTable {
    pub fn new(players: &[PlayerRecord], careers: &[CareerStats]) -> Self {
        let mut map: HashMap<PlayerId, CareerStats> = players
            .iter()
            .map(|p| (p.id.clone(), CareerStats::zero(p.id.clone())))
            .collect();
        for career in careers {
            map.insert(career.player_id.clone(), career.clone());
        }
        CareerTable { map }
    }

    pub fn get(&self, id: &PlayerId) -> Option<&CareerStats> {
        self.map.get(id)
    }
}

// ---------------------------------------------------------------------------
// Fantasy teams and constraints
// ---------------------------------------------------------------------------

/// A selection of distinct players, stored in canonical (sorted) order.
///
/// Size and composition rules live in [`ConstraintSet`] and are checked by
/// [`validate_team`]; the type itself only guarantees distinctness.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FantasyTeam {
    members: Vec<PlayerId>,
}

impl FantasyTeam {
    pub fn new(members: impl IntoIterator<Item = PlayerId>) -> Result<Self> {
        let mut members: Vec<PlayerId> = members.into_iter().collect();
        members.sort();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DataIntegrity(format!(
                    "team lists player {} twice",
                    pair[0]
                )));
            }
        }
        Ok(FantasyTeam { members })
    }

    pub fn members(&self) -> &[PlayerId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: &PlayerId) -> bool {
        self.members.binary_search(id).is_ok()
    }
}

/// Per-role counts, indexed by [`PlayerRole`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RoleCounts {
    pub batter: u32,
    pub bowler: u32,
    pub allrounder: u32,
    pub wicketkeeper: u32,
}

impl RoleCounts {
    pub fn uniform(count: u32) -> Self {
        RoleCounts { batter: count, bowler: count, allrounder: count, wicketkeeper: count }
    }

    pub fn get(&self, role: PlayerRole) -> u32 {
        match role {
            PlayerRole::Batter => self.batter,
            PlayerRole::Bowler => self.bowler,
            PlayerRole::Allrounder => self.allrounder,
            PlayerRole::Wicketkeeper => self.wicketkeeper,
        }
    }

    pub fn set(&mut self, role: PlayerRole, count: u32) {
        match role {
            PlayerRole::Batter => self.batter = count,
            PlayerRole::Bowler => self.bowler = count,
            PlayerRole::Allrounder => self.allrounder = count,
            PlayerRole::Wicketkeeper => self.wicketkeeper = count,
        }
    }

    pub fn total(&self) -> u32 {
        self.batter + self.bowler + self.allrounder + self.wicketkeeper
    }

    pub fn as_array(&self) -> [u32; 4] {
        [self.batter, self.bowler, self.allrounder, self.wicketkeeper]
    }
}

impl Default for RoleCounts {
    fn default() -> Self {
        RoleCounts::uniform(1)
    }
}

/// Composition rules a fantasy team must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConstraintSet {
    pub min_per_role: RoleCounts,
    pub min_per_real_team: u32,
    pub team_size: u32,
}

impl Default for ConstraintSet {
    fn default() -> Self {
        ConstraintSet {
            min_per_role: RoleCounts::uniform(1),
            min_per_real_team: 1,
            team_size: 11,
        }
    }
}

impl ConstraintSet {
    pub fn validate(&self) -> Result<()> {
        // Two competing real teams contribute to the per-team minimum.
        let minima = self.min_per_role.total() + 2 * self.min_per_real_team;
        if minima > self.team_size {
            return Err(Error::Config(format!(
                "constraint minima sum to {minima}, exceeding team size {}",
                self.team_size
            )));
        }
        Ok(())
    }

    /// Copy with a raised role minimum, as strategy variants use.
    pub fn with_role_minimum(mut self, role: PlayerRole, minimum: u32) -> Self {
        self.min_per_role.set(role, minimum);
        self
    }
}

/// One broken rule found by [`validate_team`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TeamSize { expected: u32, actual: u32 },
    NotInPool { player: PlayerId },
    RoleMinimum { role: PlayerRole, required: u32, actual: u32 },
    TeamMinimum { team: TeamId, required: u32, actual: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TeamSize { expected, actual } => {
                write!(f, "team_size: expected {expected}, got {actual}")
            }
            Violation::NotInPool { player } => {
                write!(f, "not_in_pool: {player}")
            }
            Violation::RoleMinimum { role, required, actual } => {
                write!(f, "min_per_role[{role}]: required {required}, got {actual}")
            }
            Violation::TeamMinimum { team, required, actual } => {
                write!(f, "min_per_real_team[{team}]: required {required}, got {actual}")
            }
        }
    }
}

/// Check a team against a selection pool and constraints.
///
/// Returns the empty vector when the team is valid; otherwise every violated
/// rule is listed. Violations are data, not failures.
pub fn validate_team(
    team: &FantasyTeam,
    pool: &[PlayerRecord],
    constraints: &ConstraintSet,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    if team.len() as u32 != constraints.team_size {
        violations.push(Violation::TeamSize {
            expected: constraints.team_size,
            actual: team.len() as u32,
        });
    }

    let by_id: HashMap<&PlayerId, &PlayerRecord> = pool.iter().map(|p| (&p.id, p)).collect();
    let mut role_counts = RoleCounts::uniform(0);
    let mut team_counts: HashMap<&TeamId, u32> = HashMap::new();
    for member in team.members() {
        match by_id.get(member) {
            Some(record) => {
                role_counts.set(record.role, role_counts.get(record.role) + 1);
                *team_counts.entry(&record.team_id).or_insert(0) += 1;
            }
            None => violations.push(Violation::NotInPool { player: member.clone() }),
        }
    }

    for role in PlayerRole::ALL {
        let required = constraints.min_per_role.get(role);
        let actual = role_counts.get(role);
        if actual < required {
            violations.push(Violation::RoleMinimum { role, required, actual });
        }
    }

    if constraints.min_per_real_team > 0 {
        let mut real_teams: Vec<&TeamId> = pool.iter().map(|p| &p.team_id).collect();
        real_teams.sort();
        real_teams.dedup();
        for real_team in real_teams {
            let actual = team_counts.get(real_team).copied().unwrap_or(0);
            if actual < constraints.min_per_real_team {
                violations.push(Violation::TeamMinimum {
                    team: real_team.clone(),
                    required: constraints.min_per_real_team,
                    actual,
                });
            }
        }
    }

    violations
}

/// Join a match roster with the player table, producing the selection pool
/// for that match (both playing elevens plus participating impact players).
///
/// The pool is returned sorted by player id so that downstream tie-breaks are
/// deterministic.
pub fn build_selection_pool(
    scorecard: &MatchScorecard,
    players: &[PlayerRecord],
) -> Result<Vec<PlayerRecord>> {
    let by_id: HashMap<&PlayerId, &PlayerRecord> = players.iter().map(|p| (&p.id, p)).collect();
    let mut pool = Vec::with_capacity(scorecard.roster.len());
    let mut seen = HashSet::new();
    for (id, _) in &scorecard.roster {
        let record = by_id.get(id).ok_or_else(|| {
            Error::DataIntegrity(format!(
                "match {}: roster references unknown player {id}",
                scorecard.match_id
            ))
        })?;
        if !seen.insert(id.clone()) {
            return Err(Error::DataIntegrity(format!(
                "match {}: player {id} rostered twice",
                scorecard.match_id
            )));
        }
        pool.push((*record).clone());
    }
    pool.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(pool)
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// A complete tournament: players, careers and chronologically ordered
/// scorecards.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TournamentDataset {
    pub players: Vec<PlayerRecord>,
    pub careers: Vec<CareerStats>,
    pub matches: Vec<MatchScorecard>,
}

impl TournamentDataset {
    pub fn player_table(&self) -> HashMap<PlayerId, PlayerRecord> {
        self.players.iter().map(|p| (p.id.clone(), p.clone())).collect()
    }

    pub fn career_table(&self) -> CareerTable {
        CareerTable::new(&self.players, &self.careers)
    }

    pub fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        for player in &self.players {
            if !ids.insert(player.id.clone()) {
                return Err(Error::DataIntegrity(format!("duplicate player id {}", player.id)));
            }
        }
        let table = self.player_table();
        let mut career_ids = HashSet::new();
        for career in &self.careers {
            career.validate()?;
            if !career_ids.insert(career.player_id.clone()) {
                return Err(Error::DataIntegrity(format!(
                    "duplicate career row for {}",
                    career.player_id
                )));
            }
        }
        let mut last_index = None;
        for scorecard in &self.matches {
            scorecard.validate(&table)?;
            if let Some(prev) = last_index {
                if scorecard.match_index <= prev {
                    return Err(Error::DataIntegrity(format!(
                        "match {} index {} does not increase past {}",
                        scorecard.match_id, scorecard.match_index, prev
                    )));
                }
            }
            last_index = Some(scorecard.match_index);
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Completion feasibility
// ---------------------------------------------------------------------------

/// Availability of unselected pool players, bucketed by (role, real team).
///
/// Team axis order is the sorted pair of real team ids in the pool.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PoolCells {
    pub avail: [[u32; 2]; 4],
}

impl PoolCells {
    pub fn role_total(&self, role: usize) -> u32 {
        self.avail[role][0] + self.avail[role][1]
    }

    pub fn team_total(&self, team: usize) -> u32 {
        (0..4).map(|r| self.avail[r][team]).sum()
    }

    pub fn total(&self) -> u32 {
        self.avail.iter().map(|row| row[0] + row[1]).sum()
    }
}

/// Sorted pair of real team ids present in a pool.
///
/// Selection pools always span exactly the two competing sides; anything
/// else is an infeasibility.
pub fn pool_teams(pool: &[PlayerRecord]) -> Result<[TeamId; 2]> {
    let mut teams: Vec<TeamId> = pool.iter().map(|p| p.team_id.clone()).collect();
    teams.sort();
    teams.dedup();
    if teams.len() != 2 {
        return Err(Error::Infeasible(format!(
            "selection pool spans {} real teams, expected 2",
            teams.len()
        )));
    }
    Ok([teams[0].clone(), teams[1].clone()])
}

pub(crate) fn cell_of(record: &PlayerRecord, teams: &[TeamId; 2]) -> (usize, usize) {
    let team = if record.team_id == teams[0] { 0 } else { 1 };
    (record.role.index(), team)
}

/// Exact test: can `slots` more players be drawn from `avail` so that every
/// remaining role deficit and team deficit is covered?
///
/// Enumerates per-role totals (bounded compositions of `slots`) and reduces
/// the two-team split to an interval intersection, which is exact because
/// achievable team-0 totals form a contiguous range.
pub(crate) fn completion_exists(
    avail: &PoolCells,
    need_role: [u32; 4],
    need_team: [u32; 2],
    slots: u32,
) -> bool {
    if slots > avail.total() {
        return false;
    }
    if need_role.iter().sum::<u32>() > slots || need_team.iter().sum::<u32>() > slots {
        return false;
    }
    for r in 0..4 {
        if need_role[r] > avail.role_total(r) {
            return false;
        }
    }
    for t in 0..2 {
        if need_team[t] > avail.team_total(t) {
            return false;
        }
    }

    // y[r] = players taken from role r; try every bounded composition.
    let caps: Vec<u32> = (0..4).map(|r| avail.role_total(r).min(slots)).collect();
    let mut y = [0u32; 4];
    fn recurse(
        r: usize,
        remaining: u32,
        y: &mut [u32; 4],
        caps: &[u32],
        need_role: &[u32; 4],
        need_team: &[u32; 2],
        avail: &PoolCells,
        slots: u32,
    ) -> bool {
        if r == 3 {
            if remaining < need_role[3] || remaining > caps[3] {
                return false;
            }
            y[3] = remaining;
            // Per-role interval of players assignable to team 0.
            let mut lo_sum = 0u32;
            let mut hi_sum = 0u32;
            for role in 0..4 {
                let lo = y[role].saturating_sub(avail.avail[role][1]);
                let hi = y[role].min(avail.avail[role][0]);
                if lo > hi {
                    return false;
                }
                lo_sum += lo;
                hi_sum += hi;
            }
            // Team-0 total must cover need_team[0] and leave room for team 1.
            let want_lo = need_team[0];
            let want_hi = slots.saturating_sub(need_team[1]);
            lo_sum.max(want_lo) <= hi_sum.min(want_hi)
        } else {
            let min_r = need_role[r];
            let max_r = caps[r].min(remaining);
            if min_r > max_r {
                return false;
            }
            for take in min_r..=max_r {
                y[r] = take;
                if recurse(r + 1, remaining - take, y, caps, need_role, need_team, avail, slots) {
                    return true;
                }
            }
            false
        }
    }
    recurse(0, slots, &mut y, &caps, &need_role, &need_team, avail, slots)
}

/// Human-readable reason why completion is impossible, naming the first
/// failing role or team minimum.
pub(crate) fn infeasibility_reason(
    avail: &PoolCells,
    need_role: [u32; 4],
    need_team: [u32; 2],
    teams: &[TeamId; 2],
    slots: u32,
) -> String {
    for (r, role) in PlayerRole::ALL.iter().enumerate() {
        if need_role[r] > avail.role_total(r) {
            return format!(
                "min_per_role[{role}] unsatisfiable: need {} more, {} available",
                need_role[r],
                avail.role_total(r)
            );
        }
    }
    for t in 0..2 {
        if need_team[t] > avail.team_total(t) {
            return format!(
                "min_per_real_team[{}] unsatisfiable: need {} more, {} available",
                teams[t],
                need_team[t],
                avail.team_total(t)
            );
        }
    }
    if slots > avail.total() {
        return format!("{} slots to fill but only {} players available", slots, avail.total());
    }
    "role and team minima cannot be met simultaneously".to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn player(id: &str, role: PlayerRole, team: &str) -> PlayerRecord {
        PlayerRecord {
            id: PlayerId::from(id),
            name: id.to_string(),
            role,
            team_id: TeamId::from(team),
        }
    }

    /// 22-player pool: each team has 5 batters, 4 bowlers, 1 allrounder and
    /// 1 wicketkeeper.
    fn sample_pool() -> Vec<PlayerRecord> {
        let mut pool = Vec::new();
        for (team_idx, team) in ["TA", "TB"].iter().enumerate() {
            for i in 0..5 {
                pool.push(player(&format!("{team}-BAT{i}"), PlayerRole::Batter, team));
            }
            for i in 0..4 {
                pool.push(player(&format!("{team}-BWL{i}"), PlayerRole::Bowler, team));
            }
            pool.push(player(&format!("{team}-AR0"), PlayerRole::Allrounder, team));
            pool.push(player(&format!("{team}-WK0"), PlayerRole::Wicketkeeper, team));
            let _ = team_idx;
        }
        pool.sort_by(|a, b| a.id.cmp(&b.id));
        pool
    }

    fn team_of(ids: &[&str]) -> FantasyTeam {
        FantasyTeam::new(ids.iter().map(|s| PlayerId::from(*s))).unwrap()
    }

    #[test]
    fn valid_team_passes() {
        // 5 batters, 3 bowlers, 2 allrounders, 1 keeper; 6 from TA, 5 from TB.
        let pool = sample_pool();
        let team = team_of(&[
            "TA-BAT0", "TA-BAT1", "TA-BAT2", "TB-BAT0", "TB-BAT1", "TA-BWL0", "TA-BWL1",
            "TB-BWL0", "TA-AR0", "TB-AR0", "TA-WK0",
        ]);
        assert_eq!(validate_team(&team, &pool, &ConstraintSet::default()), vec![]);
    }

    #[test]
    fn missing_wicketkeeper_is_flagged() {
        let pool = sample_pool();
        let team = team_of(&[
            "TA-BAT0", "TA-BAT1", "TA-BAT2", "TA-BAT3", "TB-BAT0", "TB-BAT1", "TA-BWL0",
            "TA-BWL1", "TB-BWL0", "TA-AR0", "TB-AR0",
        ]);
        let violations = validate_team(&team, &pool, &ConstraintSet::default());
        assert_eq!(
            violations,
            vec![Violation::RoleMinimum {
                role: PlayerRole::Wicketkeeper,
                required: 1,
                actual: 0
            }]
        );
        assert_eq!(violations[0].to_string(), "min_per_role[Wicketkeeper]: required 1, got 0");
    }

    #[test]
    fn single_real_team_is_flagged() {
        let pool = sample_pool();
        let team = team_of(&[
            "TA-BAT0", "TA-BAT1", "TA-BAT2", "TA-BAT3", "TA-BAT4", "TA-BWL0", "TA-BWL1",
            "TA-BWL2", "TA-BWL3", "TA-AR0", "TA-WK0",
        ]);
        let violations = validate_team(&team, &pool, &ConstraintSet::default());
        assert_eq!(
            violations,
            vec![Violation::TeamMinimum {
                team: TeamId::from("TB"),
                required: 1,
                actual: 0
            }]
        );
    }

    #[test]
    fn duplicate_member_rejected_at_construction() {
        let err = FantasyTeam::new(vec![PlayerId::from("X"), PlayerId::from("X")]);
        assert!(matches!(err, Err(Error::DataIntegrity(_))));
    }

    #[test]
    fn stats_invariants() {
        let mut stats = PlayerMatchStats { runs: 10, fours: 2, sixes: 1, ..Default::default() };
        // 2*4 + 1*6 = 14 > 10
        assert!(stats.validate().is_err());
        stats.runs = 14;
        assert!(stats.validate().is_ok());
        stats.balls_bowled = 11;
        stats.maidens = 2;
        assert!(stats.validate().is_err()); // only 1 completed over
        stats.balls_bowled = 12;
        assert!(stats.validate().is_ok());
    }

    #[test]
    fn role_parsing_maps_source_spellings() {
        assert_eq!(PlayerRole::parse("Batter ").unwrap(), PlayerRole::Batter);
        assert_eq!(PlayerRole::parse("WK-Batsman").unwrap(), PlayerRole::Wicketkeeper);
        assert_eq!(PlayerRole::parse("Bowling Allrounder").unwrap(), PlayerRole::Allrounder);
        assert_eq!(PlayerRole::parse("all-rounder").unwrap(), PlayerRole::Allrounder);
        assert!(PlayerRole::parse("coach").is_err());
    }

    #[test]
    fn selection_pool_joins_roster() {
        let pool = sample_pool();
        let roster: Vec<(PlayerId, PlayerMatchStats)> = pool
            .iter()
            .map(|p| (p.id.clone(), PlayerMatchStats::default()))
            .collect();
        let scorecard = MatchScorecard {
            match_id: "M1".into(),
            match_index: 1,
            team_a: TeamId::from("TA"),
            team_b: TeamId::from("TB"),
            roster,
        };
        let joined = build_selection_pool(&scorecard, &pool).unwrap();
        assert_eq!(joined.len(), 22);
        assert!(joined.windows(2).all(|w| w[0].id < w[1].id));
        assert!(joined.iter().all(|p| p.team_id.as_str() == "TA" || p.team_id.as_str() == "TB"));
    }

    #[test]
    fn selection_pool_rejects_unknown_player() {
        let pool = sample_pool();
        let scorecard = MatchScorecard {
            match_id: "M1".into(),
            match_index: 1,
            team_a: TeamId::from("TA"),
            team_b: TeamId::from("TB"),
            roster: vec![(PlayerId::from("P999"), PlayerMatchStats::default())],
        };
        assert!(matches!(
            build_selection_pool(&scorecard, &pool),
            Err(Error::DataIntegrity(_))
        ));
    }

    #[test]
    fn completion_feasibility_cases() {
        // 2 batters/2 bowlers/1 ar/1 wk per team.
        let avail = PoolCells { avail: [[2, 2], [2, 2], [1, 1], [1, 1]] };
        assert!(completion_exists(&avail, [1, 1, 1, 1], [1, 1], 11));
        // 12 slots from 12 players: fine.
        assert!(completion_exists(&avail, [1, 1, 1, 1], [1, 1], 12));
        // 13 slots from 12 players: impossible.
        assert!(!completion_exists(&avail, [1, 1, 1, 1], [1, 1], 13));
        // Needing 2 wicketkeepers when only 2 exist is tight but possible.
        assert!(completion_exists(&avail, [0, 0, 0, 2], [0, 0], 2));
        // Needing 3 is not.
        assert!(!completion_exists(&avail, [0, 0, 0, 3], [0, 0], 3));
        // Six slots must all land on team 0 yet team 1 still needs one.
        assert!(!completion_exists(&avail, [0, 0, 0, 0], [6, 1], 6));
    }
}
