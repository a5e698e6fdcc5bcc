//! The bee colony and its three phases.
//!
//! Every random draw comes from its own ChaCha stream keyed by the master
//! seed, the round, the bee, and the phase. Candidate positions are generated
//! and evaluated independently (in parallel under [`Exec::Parallel`]) and then
//! applied to the colony in bee order, so the outcome does not depend on the
//! execution strategy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counting::FitnessReport;
use crate::error::Result;
use crate::exec::Exec;

use super::landscape::Landscape;
use super::{RoundRecord, SearchParams, Termination};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Employed,
    Onlooker,
    Scout,
}

#[derive(Debug, Clone)]
pub struct Bee<P> {
    pub role: Role,
    /// Onlookers hold no position.
    pub position: Option<P>,
    pub fitness: Option<FitnessReport>,
    pub staynum: u32,
    /// Onlooker following this employed bee.
    pub follower: Option<usize>,
    /// Employed bee this onlooker follows.
    pub leader: Option<usize>,
}

impl<P> Bee<P> {
    fn employed(position: P, fitness: FitnessReport) -> Self {
        Bee {
            role: Role::Employed,
            position: Some(position),
            fitness: Some(fitness),
            staynum: 1,
            follower: None,
            leader: None,
        }
    }

    fn onlooker() -> Self {
        Bee {
            role: Role::Onlooker,
            position: None,
            fitness: None,
            staynum: 1,
            follower: None,
            leader: None,
        }
    }

    fn total(&self) -> u64 {
        self.fitness.map_or(u64::MAX, |f| f.total)
    }
}

#[derive(Debug, Clone)]
pub struct Colony<P> {
    pub bees: Vec<Bee<P>>,
    pub round: u64,
    pub evaluations: u64,
    /// Number of random positions drawn so far.
    pub draws: u64,
    pub best: Option<(P, FitnessReport)>,
    pub termination: Option<Termination>,
}

impl<P> Colony<P> {
    pub fn count(&self, role: Role) -> usize {
        self.bees.iter().filter(|b| b.role == role).count()
    }

    pub fn best_total(&self) -> Option<u64> {
        self.best.as_ref().map(|(_, f)| f.total)
    }
}

const TAG_INIT: u64 = 1;
const TAG_EMPLOYED: u64 = 2;
const TAG_FOLLOWER: u64 = 3;
const TAG_ONLOOKER: u64 = 4;
const TAG_SCOUT: u64 = 5;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Independent random stream for one (round, bee, phase).
pub fn stream(seed: u64, round: u64, bee: usize, tag: u64) -> ChaCha8Rng {
    let key = [round, bee as u64, tag]
        .iter()
        .fold(splitmix(seed), |acc, &x| splitmix(acc ^ x));
    ChaCha8Rng::seed_from_u64(key)
}

/// Probability that an onlooker picks each candidate, given rank weights.
/// The remainder `1 - alpha` is the chance of picking nobody.
pub fn selection_probabilities(weights: &[u64], alpha: f64) -> Vec<f64> {
    let total: u64 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| alpha * w as f64 / total as f64)
        .collect()
}

/// Draws one index according to [`selection_probabilities`].
fn select<R: Rng>(weights: &[u64], alpha: f64, rng: &mut R) -> Option<usize> {
    let total: u64 = weights.iter().sum();
    if total == 0 || rng.gen::<f64>() >= alpha {
        return None;
    }
    let mut x = rng.gen_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if x < w {
            return Some(i);
        }
        x -= w;
    }
    unreachable!("x < total")
}

/// Drives one colony over a [`Landscape`].
pub struct Search<'a, L: Landscape> {
    params: &'a SearchParams,
    land: &'a L,
    exec: Exec,
    colony: Colony<L::Position>,
    history: Vec<RoundRecord>,
}

impl<'a, L: Landscape> Search<'a, L> {
    /// Generates and evaluates the first `colony_size` positions, keeps the
    /// better half as employed bees and turns the rest into onlookers.
    pub fn init(params: &'a SearchParams, land: &'a L, exec: Exec) -> Result<Self> {
        params.validate()?;
        let size = params.colony_size;
        let seed = params.seed;
        let positions: Vec<L::Position> = exec
            .map_range(size, |i| {
                land.random(i as u64, &mut stream(seed, 0, i, TAG_INIT))
            })
            .into_iter()
            .collect::<Result<_>>()?;
        let fitness = exec.map(&positions, |p| land.evaluate(p));

        let mut colony = Colony {
            bees: Vec::with_capacity(size),
            round: 0,
            evaluations: size as u64,
            draws: size as u64,
            best: None,
            termination: None,
        };
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&i| (fitness[i].total, i));
        for &i in &order {
            Self::offer_best(&mut colony, &positions[i], fitness[i]);
        }
        let mut positions: Vec<Option<L::Position>> = positions.into_iter().map(Some).collect();
        for (rank, &i) in order.iter().enumerate() {
            if rank < size / 2 {
                colony.bees.push(Bee::employed(
                    positions[i].take().expect("each used once"),
                    fitness[i],
                ));
            } else {
                colony.bees.push(Bee::onlooker());
            }
        }

        let mut search = Search {
            params,
            land,
            exec,
            colony,
            history: Vec::new(),
        };
        if search.colony.best_total() == Some(0) {
            search.colony.termination = Some(Termination::WitnessFound);
        } else if search.colony.evaluations >= params.budget {
            search.colony.termination = Some(Termination::BudgetExhausted);
        }
        search.record(0);
        Ok(search)
    }

    pub fn colony(&self) -> &Colony<L::Position> {
        &self.colony
    }

    pub fn history(&self) -> &[RoundRecord] {
        &self.history
    }

    pub fn is_finished(&self) -> bool {
        self.colony.termination.is_some()
    }

    fn offer_best(colony: &mut Colony<L::Position>, pos: &L::Position, f: FitnessReport) {
        if colony.best.as_ref().is_none_or(|(_, b)| f.total < b.total) {
            colony.best = Some((pos.clone(), f));
        }
    }

    fn remaining(&self) -> u64 {
        self.params.budget.saturating_sub(self.colony.evaluations)
    }

    /// Evaluates `jobs` (in order) up to the remaining budget. Returns the
    /// fitness of each job that was evaluated, `None` past the cut.
    fn evaluate_within_budget(&self, jobs: &[Option<L::Position>]) -> Vec<Option<FitnessReport>> {
        let mut left = self.remaining();
        let keep: Vec<bool> = jobs
            .iter()
            .map(|j| {
                if j.is_some() && left > 0 {
                    left -= 1;
                    true
                } else {
                    false
                }
            })
            .collect();
        let indices: Vec<usize> = (0..jobs.len()).filter(|&i| keep[i]).collect();
        let land = self.land;
        let evaluated = self.exec.map(&indices, |&i| {
            land.evaluate(jobs[i].as_ref().expect("kept jobs exist"))
        });
        let mut out = vec![None; jobs.len()];
        for (i, f) in indices.into_iter().zip(evaluated) {
            out[i] = Some(f);
        }
        out
    }

    /// Each employed bee, and its follower if it has one, samples one
    /// neighbor of the bee's position. The best sample replaces the position
    /// only if strictly better. Bees that stayed put `maxlimit` times become
    /// scouts and release their follower.
    pub fn employed_phase(&mut self) {
        if self.is_finished() {
            return;
        }
        self.colony.round += 1;
        let round = self.colony.round;
        let seed = self.params.seed;

        let employed: Vec<usize> = (0..self.colony.bees.len())
            .filter(|&b| self.colony.bees[b].role == Role::Employed)
            .collect();
        // (bee, sampling bee)
        let mut owners: Vec<(usize, usize, u64)> = Vec::new();
        for &b in &employed {
            owners.push((b, b, TAG_EMPLOYED));
            if let Some(f) = self.colony.bees[b].follower {
                owners.push((b, f, TAG_FOLLOWER));
            }
        }
        let land = self.land;
        let bees = &self.colony.bees;
        let jobs: Vec<Option<L::Position>> = self.exec.map(&owners, |&(b, sampler, tag)| {
            let pos = bees[b]
                .position
                .as_ref()
                .expect("employed bees hold a position");
            land.neighbor(pos, &mut stream(seed, round, sampler, tag))
        });
        let scores = self.evaluate_within_budget(&jobs);
        let cut = jobs
            .iter()
            .zip(&scores)
            .any(|(j, s)| j.is_some() && s.is_none());

        let mut evaluated = 0u64;
        let mut j = 0;
        for &b in &employed {
            let start = j;
            while j < owners.len() && owners[j].0 == b {
                j += 1;
            }
            let mut best: Option<usize> = None;
            let mut any_scored = false;
            for k in start..j {
                let Some(f) = scores[k] else { continue };
                any_scored = true;
                evaluated += 1;
                Self::offer_best(
                    &mut self.colony,
                    jobs[k].as_ref().expect("scored jobs exist"),
                    f,
                );
                if best.is_none_or(|bk| f.total < scores[bk].expect("scored").total) {
                    best = Some(k);
                }
            }
            if cut && !any_scored && jobs[start..j].iter().any(Option::is_some) {
                continue;
            }
            let bee = &mut self.colony.bees[b];
            let improved = best.filter(|&k| scores[k].expect("scored").total < bee.total());
            if let Some(k) = improved {
                bee.position = jobs[k].clone();
                bee.fitness = scores[k];
                bee.staynum = 1;
            } else {
                bee.staynum += 1;
                if bee.staynum >= self.params.maxlimit {
                    bee.role = Role::Scout;
                    if let Some(f) = bee.follower.take() {
                        self.colony.bees[f].leader = None;
                    }
                }
            }
            if self.colony.best_total() == Some(0) {
                self.colony.evaluations += evaluated;
                self.colony.termination = Some(Termination::WitnessFound);
                return;
            }
        }
        self.colony.evaluations += evaluated;
        if cut || self.remaining() == 0 {
            self.colony.termination = Some(Termination::BudgetExhausted);
        }
    }

    /// Unassigned onlookers pick, one after another, among employed bees that
    /// have no follower yet, with probability proportional to rank weight.
    pub fn onlooker_phase(&mut self) {
        if self.is_finished() {
            return;
        }
        let bees = &self.colony.bees;
        let mut ranked: Vec<usize> = (0..bees.len())
            .filter(|&b| bees[b].role == Role::Employed)
            .collect();
        ranked.sort_by_key(|&b| (bees[b].total(), b));
        let e = ranked.len() as u64;
        let weight = |rank: usize| e - rank as u64;

        let mut rng = stream(self.params.seed, self.colony.round, 0, TAG_ONLOOKER);
        let idle: Vec<usize> = (0..bees.len())
            .filter(|&b| bees[b].role == Role::Onlooker && bees[b].leader.is_none())
            .collect();
        for o in idle {
            let pool: Vec<(usize, u64)> = ranked
                .iter()
                .enumerate()
                .filter(|(_, &b)| self.colony.bees[b].follower.is_none())
                .map(|(rank, &b)| (b, weight(rank)))
                .collect();
            if pool.is_empty() {
                break;
            }
            let weights: Vec<u64> = pool.iter().map(|&(_, w)| w).collect();
            if let Some(i) = select(&weights, self.params.alpha, &mut rng) {
                let leader = pool[i].0;
                self.colony.bees[leader].follower = Some(o);
                self.colony.bees[o].leader = Some(leader);
            }
        }
    }

    /// Every scout draws a fresh random position and rejoins as employed.
    pub fn scout_phase(&mut self) -> Result<()> {
        if self.is_finished() {
            return self.finish_round();
        }
        let scouts: Vec<usize> = (0..self.colony.bees.len())
            .filter(|&b| self.colony.bees[b].role == Role::Scout)
            .collect();
        if !scouts.is_empty() {
            let (seed, round, land) = (self.params.seed, self.colony.round, self.land);
            let first_draw = self.colony.draws;
            let slots: Vec<(usize, u64)> = scouts
                .iter()
                .enumerate()
                .map(|(i, &b)| (b, first_draw + i as u64))
                .collect();
            let fresh: Vec<Option<L::Position>> = self
                .exec
                .map(&slots, |&(b, draw)| {
                    land.random(draw, &mut stream(seed, round, b, TAG_SCOUT))
                })
                .into_iter()
                .map(|r| r.map(Some))
                .collect::<Result<_>>()?;
            self.colony.draws += scouts.len() as u64;
            let scores = self.evaluate_within_budget(&fresh);
            for ((&b, pos), f) in scouts.iter().zip(fresh).zip(scores) {
                let Some(f) = f else {
                    self.colony.termination = Some(Termination::BudgetExhausted);
                    break;
                };
                self.colony.evaluations += 1;
                let pos = pos.expect("random draws always exist");
                Self::offer_best(&mut self.colony, &pos, f);
                self.colony.bees[b] = Bee::employed(pos, f);
                if f.total == 0 {
                    self.colony.termination = Some(Termination::WitnessFound);
                    break;
                }
            }
            if self.colony.termination.is_none() && self.remaining() == 0 {
                self.colony.termination = Some(Termination::BudgetExhausted);
            }
        }
        self.finish_round()
    }

    fn finish_round(&mut self) -> Result<()> {
        let round = self.colony.round;
        if self.history.last().is_none_or(|r| r.round != round) {
            self.record(round);
        }
        Ok(())
    }

    fn record(&mut self, round: u64) {
        let c = &self.colony;
        let best = c
            .best
            .as_ref()
            .map(|(_, f)| *f)
            .expect("colony has a best position after init");
        self.history.push(RoundRecord {
            round,
            best_total: best.total,
            best_cliques: best.clique_count,
            best_indep: best.indep_count,
            evaluations: c.evaluations,
            employed: c.count(Role::Employed),
            onlookers: c.count(Role::Onlooker),
            scouts: c.count(Role::Scout),
            followed: c.bees.iter().filter(|b| b.follower.is_some()).count(),
        });
    }

    /// One employed → onlooker → scout round.
    pub fn step(&mut self) -> Result<()> {
        self.employed_phase();
        self.onlooker_phase();
        self.scout_phase()
    }

    /// Rounds until a witness turns up or the budget runs out.
    pub fn run_to_end(mut self) -> Result<(Colony<L::Position>, Vec<RoundRecord>)> {
        while !self.is_finished() {
            self.step()?;
        }
        Ok((self.colony, self.history))
    }
}
