//! Exact constrained team optimization for the mean-variance strategy.
//!
//! The objective is additive per player, so the search space collapses onto
//! per-(role, team) cell counts: within a cell the best `k` players are always
//! the top `k` by utility. Enumerating bounded cell compositions is exhaustive
//! over pools of tournament size (at most a few tens of thousands of
//! compositions for a 24-player pool) and therefore exact.

use crate::error::{Error, Result};
use crate::types::{
    cell_of, infeasibility_reason, pool_teams, ConstraintSet, FantasyTeam, PlayerId, PlayerRecord,
    PoolCells,
};

/// Pick the team maximizing `Σ (form_i − λ · variance_i)` over all
/// constraint-satisfying selections.
///
/// `form` and `variance` are aligned with `pool`. Ties on the objective are
/// broken by the lexicographically smallest sorted member-id list. Returns an
/// infeasibility error naming the failing minimum when no valid team exists.
pub fn mean_variance_select(
    pool: &[PlayerRecord],
    form: &[f64],
    variance: &[f64],
    risk_aversion: f64,
    constraints: &ConstraintSet,
) -> Result<FantasyTeam> {
    if form.len() != pool.len() || variance.len() != pool.len() {
        return Err(Error::Parameter(format!(
            "form/variance lengths {}/{} do not match pool size {}",
            form.len(),
            variance.len(),
            pool.len()
        )));
    }
    if !risk_aversion.is_finite() || risk_aversion < 0.0 {
        return Err(Error::Parameter(format!(
            "risk aversion must be a non-negative real, got {risk_aversion}"
        )));
    }
    constraints.validate()?;

    let utility: Vec<f64> = form
        .iter()
        .zip(variance)
        .map(|(f, v)| f - risk_aversion * v)
        .collect();
    if utility.iter().any(|u| !u.is_finite()) {
        return Err(Error::Parameter("player utilities must be finite".into()));
    }

    let teams = pool_teams(pool)?;

    // Bucket players by (role, team); order each bucket by utility
    // descending, id ascending, so a prefix of a bucket is its best choice.
    let mut buckets: [[Vec<usize>; 2]; 4] = Default::default();
    for (idx, record) in pool.iter().enumerate() {
        let (role, team) = cell_of(record, &teams);
        buckets[role][team].push(idx);
    }
    for row in &mut buckets {
        for bucket in row {
            bucket.sort_by(|&a, &b| {
                utility[b]
                    .partial_cmp(&utility[a])
                    .expect("utilities are finite")
                    .then_with(|| pool[a].id.cmp(&pool[b].id))
            });
        }
    }

    let avail = PoolCells {
        avail: [
            [buckets[0][0].len() as u32, buckets[0][1].len() as u32],
            [buckets[1][0].len() as u32, buckets[1][1].len() as u32],
            [buckets[2][0].len() as u32, buckets[2][1].len() as u32],
            [buckets[3][0].len() as u32, buckets[3][1].len() as u32],
        ],
    };
    let need_role = constraints.min_per_role.as_array();
    let need_team = [constraints.min_per_real_team; 2];

    // Prefix utility sums per cell.
    let mut prefix: [[Vec<f64>; 2]; 4] = Default::default();
    for role in 0..4 {
        for team in 0..2 {
            let mut sums = Vec::with_capacity(buckets[role][team].len() + 1);
            sums.push(0.0);
            for &idx in &buckets[role][team] {
                sums.push(sums.last().unwrap() + utility[idx]);
            }
            prefix[role][team] = sums;
        }
    }

    // Enumerate compositions: counts[role][team], respecting minima.
    let size = constraints.team_size;
    let mut best: Option<(f64, [[u32; 2]; 4])> = None;
    let mut near_best: Vec<[[u32; 2]; 4]> = Vec::new();
    let scale: f64 = utility.iter().map(|u| u.abs()).sum::<f64>() + 1.0;
    let slack = 1e-9 * scale;

    let mut counts = [[0u32; 2]; 4];
    enumerate_cells(
        0,
        size,
        &mut counts,
        &avail,
        &need_role,
        &need_team,
        &mut |counts| {
            let value: f64 = (0..4)
                .map(|r| {
                    prefix[r][0][counts[r][0] as usize] + prefix[r][1][counts[r][1] as usize]
                })
                .sum();
            match &best {
                Some((best_value, _)) if value <= best_value - slack => {}
                _ => {
                    if best.map_or(true, |(bv, _)| value > bv) {
                        best = Some((value, *counts));
                    }
                    near_best.push(*counts);
                }
            }
        },
    );

    let Some((best_value, _)) = best else {
        return Err(Error::Infeasible(infeasibility_reason(
            &avail, need_role, need_team, &teams, size,
        )));
    };

    // Re-evaluate the near-optimal compositions canonically (members summed
    // in id order) so ties resolve identically to a brute-force scan, then
    // take the lexicographically smallest member list among exact maxima.
    let mut winner: Option<(f64, Vec<PlayerId>)> = None;
    for counts in near_best {
        let mut members: Vec<PlayerId> = Vec::with_capacity(size as usize);
        let mut indices: Vec<usize> = Vec::with_capacity(size as usize);
        for role in 0..4 {
            for team in 0..2 {
                for &idx in buckets[role][team].iter().take(counts[role][team] as usize) {
                    indices.push(idx);
                }
            }
        }
        indices.sort_by(|&a, &b| pool[a].id.cmp(&pool[b].id));
        let value: f64 = indices.iter().map(|&i| utility[i]).sum();
        if value < best_value - slack {
            continue;
        }
        members.extend(indices.iter().map(|&i| pool[i].id.clone()));
        let better = match &winner {
            None => true,
            Some((wv, wm)) => {
                value > *wv || (value == *wv && members < *wm)
            }
        };
        if better {
            winner = Some((value, members));
        }
    }

    let (_, members) = winner.expect("a feasible composition produces a candidate");
    FantasyTeam::new(members)
}

/// Visit every cell-count assignment summing to `size` that meets the role
/// and team minima, given per-cell availability.
fn enumerate_cells(
    role: usize,
    remaining: u32,
    counts: &mut [[u32; 2]; 4],
    avail: &PoolCells,
    need_role: &[u32; 4],
    need_team: &[u32; 2],
    visit: &mut impl FnMut(&[[u32; 2]; 4]),
) {
    if role == 4 {
        if remaining == 0
            && (0..2).all(|t| (0..4).map(|r| counts[r][t]).sum::<u32>() >= need_team[t])
        {
            visit(counts);
        }
        return;
    }
    // Lower bound on players needed by the remaining roles.
    let later_min: u32 = (role + 1..4).map(|r| need_role[r]).sum();
    let cap = avail.role_total(role).min(remaining.saturating_sub(later_min));
    for take in need_role[role]..=cap {
        let lo = take.saturating_sub(avail.avail[role][1]);
        let hi = take.min(avail.avail[role][0]);
        if lo > hi {
            continue;
        }
        for team0 in lo..=hi {
            counts[role][0] = team0;
            counts[role][1] = take - team0;
            enumerate_cells(role + 1, remaining - take, counts, avail, need_role, need_team, visit);
        }
    }
    counts[role] = [0, 0];
}
