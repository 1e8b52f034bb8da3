//! The PTF solver: completions of the certainty digraph, probability-weighted
//! events, and the reduction to STF.
//!
//! Every fractional pair can resolve two ways, giving `2^k` completions with
//! exact probabilities that sum to 1. The favorite reaches probability `p*`
//! with some seeding iff some event (set of completions) of weight at least
//! `p*` admits a seeding that wins in all its members simultaneously — an
//! STF instance. Because adding members to an event only adds constraints,
//! it suffices to test the events that are inclusion-minimal for the weight
//! bound.

use num_traits::{One, Zero};

use crate::bracket::{win_probability, Seeding};
use crate::error::Error;
use crate::instance::{ProbabilityInstance, StfInstance, TournamentDigraph};
use crate::scalar::Scalar;
use crate::stf::{solve_stf_with, SolveOptions};
use crate::Result;

/// Default cap on the degree of uncertainty (16 completions). The reduction
/// cost is doubly exponential in this parameter.
pub const DEFAULT_UNCERTAINTY_CAP: usize = 4;

#[derive(Debug, Clone)]
pub struct PtfOptions {
    pub uncertainty_cap: usize,
    pub fas_cap: usize,
    pub threads: usize,
}

impl Default for PtfOptions {
    fn default() -> Self {
        PtfOptions {
            uncertainty_cap: DEFAULT_UNCERTAINTY_CAP,
            fas_cap: crate::fas::DEFAULT_FAS_CAP,
            threads: 1,
        }
    }
}

/// One resolution of all fractional pairs; extends the certainty digraph.
#[derive(Debug, Clone)]
pub struct Completion<T> {
    pub tournament: TournamentDigraph,
    pub probability: T,
}

/// A set of completions with its exact weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event<T> {
    /// Indices into the completion list; never empty.
    pub members: Vec<usize>,
    pub weight: T,
}

#[derive(Debug, Clone)]
pub struct PtfVerdict<T> {
    pub answer: bool,
    pub witness: Option<Seeding>,
    /// Exact probability the witness gives the favorite; at least the target.
    pub achieved: Option<T>,
}

/// All `2^k` completions of the certainty digraph, with exact probabilities.
pub fn enumerate_completions<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    cap: usize,
) -> Result<Vec<Completion<T>>> {
    let pairs = inst.fractional_pairs();
    let k = pairs.len();
    if k > cap {
        return Err(Error::CapExceeded { what: "degree of uncertainty", cap, actual: k });
    }
    let n = inst.n();
    let mut base = inst.certainty_digraph();
    // Orient the fractional pairs arbitrarily to obtain a tournament to flip.
    for &(u, v) in &pairs {
        base.add_arc(u, v)?;
    }
    let base = TournamentDigraph::from_digraph(&base)?;
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let mut t = base.clone();
        let mut probability = T::one();
        for (bit, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                t.flip(u, v);
                probability = probability * inst.matrix[v][u].clone();
            } else {
                probability = probability * inst.matrix[u][v].clone();
            }
        }
        out.push(Completion { tournament: t, probability });
    }
    Ok(out)
}

/// Events of weight at least `target` that are inclusion-minimal for that
/// bound: dropping any member falls below the target. Emitted lazily in
/// ascending bitmask order over the completion list.
pub fn enumerate_minimal_events<'a, T: Scalar>(
    completions: &'a [Completion<T>],
    target: &'a T,
) -> impl Iterator<Item = Event<T>> + 'a {
    let size = completions.len();
    (1u64..(1 << size)).filter_map(move |mask| {
        let members: Vec<usize> = (0..size).filter(|&i| mask & (1 << i) != 0).collect();
        let weight = members
            .iter()
            .fold(T::zero(), |acc, &i| acc + completions[i].probability.clone());
        if weight < *target {
            return None;
        }
        // Completions carry positive probability, so checking single-member
        // removals decides inclusion-minimality.
        let minimal = members
            .iter()
            .all(|&i| weight.clone() - completions[i].probability.clone() < *target);
        minimal.then_some(Event { members, weight })
    })
}

/// All qualifying events, minimal or not; used to cross-check the pruning.
pub fn enumerate_all_events<'a, T: Scalar>(
    completions: &'a [Completion<T>],
    target: &'a T,
) -> impl Iterator<Item = Event<T>> + 'a {
    let size = completions.len();
    (1u64..(1 << size)).filter_map(move |mask| {
        let members: Vec<usize> = (0..size).filter(|&i| mask & (1 << i) != 0).collect();
        let weight = members
            .iter()
            .fold(T::zero(), |acc, &i| acc + completions[i].probability.clone());
        (weight >= *target).then_some(Event { members, weight })
    })
}

fn stf_of_event<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    completions: &[Completion<T>],
    event: &Event<T>,
) -> Result<StfInstance> {
    StfInstance::new(
        inst.players.clone(),
        event.members.iter().map(|&i| completions[i].tournament.clone()).collect(),
        inst.favorite,
    )
}

fn solve_over_events<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    completions: &[Completion<T>],
    events: impl Iterator<Item = Event<T>>,
    opts: &PtfOptions,
) -> Result<PtfVerdict<T>> {
    // The derived STF instances stay within k ≤ c1 + c2 of the PTF instance,
    // so the inner pipeline runs uncapped on k.
    let stf_opts = SolveOptions { max_k: None, fas_cap: opts.fas_cap, threads: opts.threads };
    for event in events {
        let stf = stf_of_event(inst, completions, &event)?;
        let verdict = solve_stf_with(&stf, &stf_opts)?;
        if verdict.answer {
            let seeding = verdict.witness.expect("yes verdicts carry a witness");
            let achieved = win_probability(&seeding, inst)?[inst.favorite].clone();
            if achieved < inst.target {
                return Err(Error::Internal(
                    "witness achieves less than the target despite winning its event".into(),
                ));
            }
            return Ok(PtfVerdict { answer: true, witness: Some(seeding), achieved: Some(achieved) });
        }
    }
    Ok(PtfVerdict { answer: false, witness: None, achieved: None })
}

/// Solves PTF with default options.
pub fn solve_ptf<T: Scalar>(inst: &ProbabilityInstance<T>) -> Result<PtfVerdict<T>> {
    solve_ptf_with(inst, &PtfOptions::default())
}

pub fn solve_ptf_with<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    opts: &PtfOptions,
) -> Result<PtfVerdict<T>> {
    inst.validate()?;
    if inst.target == T::zero() {
        // Probability is always at least zero; any seeding certifies.
        let seeding = Seeding((0..inst.n()).collect());
        let achieved = win_probability(&seeding, inst)?[inst.favorite].clone();
        return Ok(PtfVerdict { answer: true, witness: Some(seeding), achieved: Some(achieved) });
    }
    let completions = enumerate_completions(inst, opts.uncertainty_cap)?;
    let events = enumerate_minimal_events(&completions, &inst.target);
    solve_over_events(inst, &completions, events, opts)
}

/// Same verdict computed without the minimality pruning, over every event of
/// sufficient weight. Exponentially slower; exists to validate the pruning.
pub fn solve_ptf_exhaustive_events<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    opts: &PtfOptions,
) -> Result<PtfVerdict<T>> {
    inst.validate()?;
    if inst.target == T::zero() {
        let seeding = Seeding((0..inst.n()).collect());
        let achieved = win_probability(&seeding, inst)?[inst.favorite].clone();
        return Ok(PtfVerdict { answer: true, witness: Some(seeding), achieved: Some(achieved) });
    }
    let completions = enumerate_completions(inst, opts.uncertainty_cap)?;
    let events = enumerate_all_events(&completions, &inst.target);
    solve_over_events(inst, &completions, events, opts)
}
