//! Lottery rankings and simulated draft orders.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::RewindOutcome;
use crate::season::{seed_conference, Cutoff, LeagueConfig, SeasonLog, TeamId};

/// Picks decided by the weighted draw before the rest go by losses.
pub const DRAWN_PICKS: usize = 4;
pub const DEFAULT_LOTTERY_SIZE: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LotteryEntry {
    /// 1-based.
    pub rank: usize,
    pub team: TeamId,
    pub score: u32,
    pub total_losses: u32,
    /// Another eligible team has the same score.
    pub tiebreak_applied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LotteryRanking {
    pub entries: Vec<LotteryEntry>,
}

impl LotteryRanking {
    /// Orders by score (high first), then total losses (high first), then team code.
    pub fn from_scores(candidates: impl IntoIterator<Item = (TeamId, u32, u32)>) -> Self {
        let mut rows: Vec<(TeamId, u32, u32)> = candidates.into_iter().collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1).then(b.2.cmp(&a.2)).then_with(|| a.0.cmp(&b.0)));
        let entries = rows
            .iter()
            .enumerate()
            .map(|(i, (team, score, losses))| LotteryEntry {
                rank: i + 1,
                team: team.clone(),
                score: *score,
                total_losses: *losses,
                tiebreak_applied: rows.iter().filter(|r| r.1 == *score).count() > 1,
            })
            .collect();
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn teams(&self) -> impl Iterator<Item = &TeamId> {
        self.entries.iter().map(|e| &e.team)
    }

    pub fn rank_of(&self, team: &TeamId) -> Option<usize> {
        self.entries.iter().find(|e| &e.team == team).map(|e| e.rank)
    }
}

/// Ranks the eligible teams by REWIND Score; ties go to the team with more losses.
pub fn rewind_ranking(outcomes: &[RewindOutcome], eligibility: &[TeamId]) -> Result<LotteryRanking> {
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::with_capacity(eligibility.len());
    for team in eligibility {
        if !seen.insert(team) {
            return Err(Error::InvalidArgument(format!("{team} listed twice in lottery eligibility")));
        }
        let o = outcomes
            .iter()
            .find(|o| &o.team == team)
            .ok_or_else(|| Error::InvalidArgument(format!("no REWIND outcome for eligible team {team}")))?;
        candidates.push((team.clone(), o.score, o.total.losses));
    }
    Ok(LotteryRanking::from_scores(candidates))
}

/// Order under the current plan: most losses first. Teams tied on losses are
/// ordered by their position in `tiebreak` (the drawn coin flips), then by code.
pub fn current_order(log: &SeasonLog, eligibility: &[TeamId], tiebreak: &[TeamId]) -> Result<Vec<(TeamId, u32)>> {
    let mut rows = eligibility
        .iter()
        .map(|t| Ok((t.clone(), crate::season::record_as_of(log, t, Cutoff::End)?.losses)))
        .collect::<Result<Vec<_>>>()?;
    let precedence = |t: &TeamId| tiebreak.iter().position(|x| x == t).unwrap_or(usize::MAX);
    rows.sort_by(|a, b| {
        b.1.cmp(&a.1).then_with(|| precedence(&a.0).cmp(&precedence(&b.0))).then_with(|| a.0.cmp(&b.0))
    });
    Ok(rows)
}

/// Teams seeded below the reference seed in their conference, cut to the
/// `size` worst records league-wide (most losses first, then team code).
pub fn default_eligibility(log: &SeasonLog, size: usize) -> Vec<TeamId> {
    let config = log.config();
    let records = log.records_at(Cutoff::End);
    let k = config.reference_seed();
    let mut pool: Vec<usize> = Vec::new();
    for ci in 0..config.conference_count() {
        let seeding = seed_conference(config, ci, &records);
        for entry in seeding.entries.iter().skip(k) {
            pool.push(config.team_index(&entry.team).unwrap());
        }
    }
    pool.sort_by(|&a, &b| {
        records[b].losses.cmp(&records[a].losses).then_with(|| config.teams()[a].cmp(&config.teams()[b]))
    });
    pool.truncate(size);
    pool.into_iter().map(|t| config.teams()[t].clone()).collect()
}

/// Draw weights by lottery rank: entry `i` belongs to the team ranked `i + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct OddsTable(Vec<f64>);

impl OddsTable {
    /// Normalises `weights` to sum to one.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("odds table is empty".into()));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidArgument(format!("odds must be finite and non-negative, got {bad}")));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidArgument("odds sum to zero".into()));
        }
        Ok(Self(weights.into_iter().map(|w| w / total).collect()))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for OddsTable {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

impl From<OddsTable> for Vec<f64> {
    fn from(value: OddsTable) -> Self {
        value.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DraftOrder {
    /// Pick 1 first.
    pub picks: Vec<TeamId>,
    /// How many leading picks came from the draw.
    pub drawn: usize,
}

impl DraftOrder {
    pub fn pick_of(&self, team: &TeamId) -> Option<usize> {
        self.picks.iter().position(|t| t == team).map(|p| p + 1)
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weighted draw for picks 1-4 over the ranking, then the remaining teams by
/// total losses. The team with the most losses therefore picks fifth at worst.
pub fn hybrid_draft_order(ranking: &LotteryRanking, odds: &OddsTable, rng_seed: u64) -> Result<DraftOrder> {
    let mut rng = rng_from_seed(rng_seed);
    draft_with_rng(ranking, odds, &mut rng)
}

pub fn draft_with_rng<R: Rng + ?Sized>(ranking: &LotteryRanking, odds: &OddsTable, rng: &mut R) -> Result<DraftOrder> {
    if ranking.is_empty() {
        return Err(Error::InvalidArgument("cannot draft from an empty ranking".into()));
    }
    if odds.len() != ranking.len() {
        return Err(Error::InvalidArgument(format!(
            "odds table has {} entries for {} lottery teams",
            odds.len(),
            ranking.len()
        )));
    }
    let drawn = DRAWN_PICKS.min(ranking.len());
    let mut remaining: Vec<usize> = (0..ranking.len()).collect();
    let mut picks = Vec::with_capacity(ranking.len());
    let weights = odds.probabilities();

    for _ in 0..drawn {
        let total: f64 = remaining.iter().map(|&i| weights[i]).sum();
        let pos = if total > 0.0 {
            let mut u = rng.gen::<f64>() * total;
            let mut chosen = None;
            for (pos, &i) in remaining.iter().enumerate() {
                if weights[i] <= 0.0 {
                    continue;
                }
                chosen = Some(pos);
                if u < weights[i] {
                    break;
                }
                u -= weights[i];
            }
            // Rounding can walk past the end; the last positive weight takes it.
            chosen.unwrap()
        } else {
            // No weight left: best remaining rank.
            0
        };
        picks.push(remaining.remove(pos));
    }

    remaining.sort_by(|&a, &b| match ranking.entries[b].total_losses.cmp(&ranking.entries[a].total_losses) {
        Ordering::Equal => a.cmp(&b),
        o => o,
    });
    picks.extend(remaining);
    Ok(DraftOrder { picks: picks.into_iter().map(|i| ranking.entries[i].team.clone()).collect(), drawn })
}

/// `counts[r][p]`: how often the team ranked `r + 1` received pick `p + 1`.
pub fn draft_frequencies(
    ranking: &LotteryRanking,
    odds: &OddsTable,
    rng_seed: u64,
    draws: u64,
) -> Result<Vec<Vec<u64>>> {
    let n = ranking.len();
    let mut counts = vec![vec![0u64; n]; n];
    let mut rng = rng_from_seed(rng_seed);
    for _ in 0..draws {
        let order = draft_with_rng(ranking, odds, &mut rng)?;
        for (p, team) in order.picks.iter().enumerate() {
            let r = ranking.rank_of(team).unwrap() - 1;
            counts[r][p] += 1;
        }
    }
    Ok(counts)
}

/// Draws which seed sets the REWIND Target; `weights` default to uniform.
pub fn randomized_reference_seed(
    config: &LeagueConfig,
    rng_seed: u64,
    candidates: &[usize],
    weights: Option<&[f64]>,
) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidate reference seeds".into()));
    }
    let smallest = config.conferences().map(|(_, t)| t.len()).min().unwrap_or(0);
    if let Some(bad) = candidates.iter().find(|&&s| s == 0 || s > smallest) {
        return Err(Error::InvalidArgument(format!("candidate seed {bad} outside 1..={smallest}")));
    }
    let odds = match weights {
        Some(w) if w.len() != candidates.len() => {
            return Err(Error::InvalidArgument(format!("{} weights for {} candidate seeds", w.len(), candidates.len())))
        }
        Some(w) => OddsTable::new(w.to_vec())?,
        None => OddsTable::uniform(candidates.len())?,
    };
    let mut rng = rng_from_seed(rng_seed);
    let mut u: f64 = rng.gen();
    for (i, p) in odds.probabilities().iter().enumerate() {
        if u < *p {
            return Ok(candidates[i]);
        }
        u -= p;
    }
    let last = odds.probabilities().iter().rposition(|p| *p > 0.0).unwrap();
    Ok(candidates[last])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(code: &str) -> TeamId {
        TeamId::new(code).unwrap()
    }

    fn ranking(rows: &[(&str, u32, u32)]) -> LotteryRanking {
        LotteryRanking::from_scores(rows.iter().map(|&(c, s, l)| (t(c), s, l)))
    }

    #[test]
    fn single_team_ranks_first() {
        let r = ranking(&[("A", 3, 10)]);
        assert_eq!(r.entries[0].rank, 1);
        assert!(!r.entries[0].tiebreak_applied);
    }

    #[test]
    fn ties_go_to_more_losses() {
        let r = ranking(&[("X", 6, 40), ("Y", 6, 62), ("Z", 9, 10)]);
        let order: Vec<_> = r.teams().map(TeamId::as_str).collect();
        assert_eq!(order, ["Z", "Y", "X"]);
        assert!(r.entries[1].tiebreak_applied && r.entries[2].tiebreak_applied);
        assert!(!r.entries[0].tiebreak_applied);
    }

    #[test]
    fn missing_outcome_is_an_error() {
        assert!(rewind_ranking(&[], &[t("A")]).is_err());
    }

    #[test]
    fn malformed_odds() {
        assert!(OddsTable::new(vec![]).is_err());
        assert!(OddsTable::new(vec![0.5, -0.1]).is_err());
        assert!(OddsTable::new(vec![0.0, 0.0]).is_err());
        assert!(OddsTable::new(vec![f64::NAN]).is_err());
        let o = OddsTable::new(vec![2.0, 2.0]).unwrap();
        assert_eq!(o.probabilities(), &[0.5, 0.5]);
    }

    #[test]
    fn degenerate_odds_follow_the_ranking() {
        let r = ranking(&[("A", 9, 30), ("B", 8, 35), ("C", 7, 50), ("D", 6, 20), ("E", 5, 60), ("F", 4, 70)]);
        let odds = OddsTable::new(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let order = hybrid_draft_order(&r, &odds, 7).unwrap();
        let picks: Vec<_> = order.picks.iter().map(TeamId::as_str).collect();
        assert_eq!(picks, ["A", "B", "C", "D", "F", "E"]);
    }

    #[test]
    fn short_rankings_draw_everyone() {
        let r = ranking(&[("A", 2, 3), ("B", 1, 4)]);
        let order = hybrid_draft_order(&r, &OddsTable::uniform(2).unwrap(), 1).unwrap();
        assert_eq!(order.drawn, 2);
        assert_eq!(order.picks.len(), 2);
    }

    #[test]
    fn seeded_draws_repeat() {
        let r = ranking(&[("A", 9, 1), ("B", 8, 2), ("C", 7, 3), ("D", 6, 4), ("E", 5, 5)]);
        let odds = OddsTable::uniform(5).unwrap();
        assert_eq!(hybrid_draft_order(&r, &odds, 42).unwrap(), hybrid_draft_order(&r, &odds, 42).unwrap());
        assert!(hybrid_draft_order(&r, &OddsTable::uniform(4).unwrap(), 42).is_err());
    }

    #[test]
    fn reference_seed_choice() {
        let teams: Vec<TeamId> = (0..10).map(|i| t(&format!("T{i}"))).collect();
        let cfg = LeagueConfig::new([("L", teams)]).unwrap();
        assert_eq!(randomized_reference_seed(&cfg, 3, &[6], None).unwrap(), 6);
        let a = randomized_reference_seed(&cfg, 11, &[6, 7, 8, 9, 10], None).unwrap();
        assert_eq!(a, randomized_reference_seed(&cfg, 11, &[6, 7, 8, 9, 10], None).unwrap());
        assert!(randomized_reference_seed(&cfg, 0, &[], None).is_err());
        assert!(randomized_reference_seed(&cfg, 0, &[11], None).is_err());
        assert_eq!(randomized_reference_seed(&cfg, 0, &[6, 7], Some(&[0.0, 1.0])).unwrap(), 7);
    }
}
