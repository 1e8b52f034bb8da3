//! The STF solver: blueprint enumeration orchestration and constructive
//! witness extraction.
//!
//! Pipeline: shared structure → minimum FAS → types → types-digraphs →
//! blueprint stream → assignment feasibility → seeding reconstruction. Every
//! yes verdict is re-verified by evaluating the witness bracket in all
//! scenarios before it is returned.

use crate::assignment::{
    build_assignment, solve_assignment, AssignmentInstance, AssignmentWitness, BuildOutcome,
};
use crate::blueprint::{enumerate_blueprints, important_vertices, Blueprint};
use crate::bracket::{evaluate_bracket, Seeding};
use crate::error::Error;
use crate::fas::DEFAULT_FAS_CAP;
use crate::instance::{shared_structure, StfInstance};
use crate::typesys::{compute_types, types_digraphs, TypeSystem};
use crate::Result;

/// Knobs for the STF pipeline. `max_k` caps the combined parameter (shared
/// FAS size plus private arcs); `None` disables the check. `threads` sets the
/// worker count for blueprint evaluation; the verdict and witness are
/// identical for every thread count.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub max_k: Option<usize>,
    pub fas_cap: usize,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_k: Some(3), fas_cap: DEFAULT_FAS_CAP, threads: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct StfVerdict {
    pub answer: bool,
    pub witness: Option<Seeding>,
    /// Bracket winner per scenario for the witness; all equal the favorite.
    pub per_scenario_winners: Vec<usize>,
}

/// Solves STF with default options.
pub fn solve_stf(stf: &StfInstance) -> Result<StfVerdict> {
    solve_stf_with(stf, &SolveOptions::default())
}

pub fn solve_stf_with(stf: &StfInstance, opts: &SolveOptions) -> Result<StfVerdict> {
    let n = stf.n();
    if n == 1 {
        let seeding = Seeding(vec![stf.favorite]);
        let winners = verify_seeding(&seeding, stf)?;
        return Ok(StfVerdict { answer: true, witness: Some(seeding), per_scenario_winners: winners });
    }
    let params = shared_structure(stf, opts.fas_cap)?;
    if let Some(cap) = opts.max_k {
        let k = params.k();
        if k > cap {
            return Err(Error::CapExceeded { what: "combined parameter k", cap, actual: k });
        }
    }
    let ts = compute_types(stf, &params.shared_fas);
    let tds = types_digraphs(stf, &ts);
    let favorite_type = ts.type_of(stf.favorite);

    let stream = enumerate_blueprints(&tds, n, &ts)
        .filter(|bp| bp.root_labels().iter().all(|&t| t == favorite_type));

    let feasible = if opts.threads <= 1 {
        find_feasible_sequential(stream, &ts)?
    } else {
        find_feasible_parallel(stream, &ts, opts.threads)?
    };

    match feasible {
        None => Ok(StfVerdict { answer: false, witness: None, per_scenario_winners: Vec::new() }),
        Some((bp, inst, witness)) => {
            let seeding = reconstruct_seeding(&bp, &witness, &inst, &ts)?;
            let winners = verify_seeding(&seeding, stf)?;
            if winners.iter().any(|&w| w != stf.favorite) {
                return Err(Error::Internal(
                    "reconstructed seeding does not win every scenario".into(),
                ));
            }
            Ok(StfVerdict { answer: true, witness: Some(seeding), per_scenario_winners: winners })
        }
    }
}

type Feasible = (Blueprint, AssignmentInstance, AssignmentWitness);

fn try_candidate(bp: Blueprint, ts: &TypeSystem) -> Result<Option<Feasible>> {
    let ivr = important_vertices(&bp)?;
    match build_assignment(&bp, &ivr, ts)? {
        BuildOutcome::Rejected(_) => Ok(None),
        BuildOutcome::Instance(inst) => match solve_assignment(&inst) {
            None => Ok(None),
            Some(w) => Ok(Some((bp, inst, w))),
        },
    }
}

fn find_feasible_sequential(
    stream: impl Iterator<Item = Blueprint>,
    ts: &TypeSystem,
) -> Result<Option<Feasible>> {
    for bp in stream {
        if let Some(found) = try_candidate(bp, ts)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Batch-parallel evaluation: candidates are pulled in batches, each batch is
/// split across scoped worker threads, and the first success in stream order
/// wins, so the result matches the sequential run exactly.
fn find_feasible_parallel(
    mut stream: impl Iterator<Item = Blueprint>,
    ts: &TypeSystem,
    threads: usize,
) -> Result<Option<Feasible>> {
    let batch_size = threads * 16;
    loop {
        let batch: Vec<Blueprint> = stream.by_ref().take(batch_size).collect();
        if batch.is_empty() {
            return Ok(None);
        }
        let chunk = batch.len().div_ceil(threads);
        let mut results: Vec<Result<Option<Feasible>>> = Vec::with_capacity(batch.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = batch
                .chunks(chunk)
                .map(|chunk| {
                    let chunk = chunk.to_vec();
                    scope.spawn(move || {
                        chunk
                            .into_iter()
                            .map(|bp| try_candidate(bp, ts))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                results.extend(h.join().expect("worker thread panicked"));
            }
        });
        for r in results {
            if let Some(found) = r? {
                return Ok(Some(found));
            }
        }
    }
}

/// Turns a feasible blueprint into a full bijective seeding.
///
/// Blueprint leaves take their singular players, each K tuple's traced leaf
/// takes its reserved player, and the remaining leaves are pooled into bags
/// by strength cap and filled according to the witness. All arbitrary choices
/// are fixed to lowest index.
pub fn reconstruct_seeding(
    bp: &Blueprint,
    witness: &AssignmentWitness,
    inst: &AssignmentInstance,
    ts: &TypeSystem,
) -> Result<Seeding> {
    let shape = bp.shape()?;
    let n = bp.leaf_count;
    let tree = shape.tree;
    let mut leaf_player: Vec<Option<usize>> = vec![None; n];
    let mut used_player = vec![false; n];
    let mut assign = |leaf_node: usize, player: usize,
                      leaf_player: &mut Vec<Option<usize>>,
                      used_player: &mut Vec<bool>|
     -> Result<()> {
        let slot = tree.leaf_slot(leaf_node);
        if leaf_player[slot].is_some() || used_player[player] {
            return Err(Error::Internal("leaf or player assigned twice".into()));
        }
        leaf_player[slot] = Some(player);
        used_player[player] = true;
        Ok(())
    };

    for &(leaf, player) in &inst.preassigned {
        assign(leaf, player, &mut leaf_player, &mut used_player)?;
    }

    // Pool the untracked leaves into bags keyed by flex position.
    let ivr = important_vertices(bp)?;
    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); inst.flex.len()];
    let pos_of = |t: crate::typesys::TypeId| -> usize { t / 2 };
    for t in &ivr.j_tuples {
        let labels = crate::blueprint::labels_of_node(bp, &shape, t.v);
        let q = crate::blueprint::strongest_dominated_flex(&labels, ts.type_count())
            .ok_or_else(|| Error::Internal("J tuple lost its dominated type".into()))?;
        bags[pos_of(q)].extend(tree.leaves_under(t.w));
    }
    for t in &ivr.k_tuples {
        let z = tree.leaves_under(t.w).next().expect("subtree has a leaf");
        bags[pos_of(t.new_label)].extend(tree.leaves_under(t.w).filter(|&l| l != z));
    }
    for (pos, bag) in bags.iter_mut().enumerate() {
        bag.sort_unstable();
        if bag.len() != inst.b[pos] {
            return Err(Error::Internal("bag size does not match demand".into()));
        }
    }

    // Fill bags strongest cap first; within a bag, types strongest first,
    // players and leaves lowest index first.
    for s in 0..inst.flex.len() {
        let mut cursor = 0;
        for t in 0..inst.flex.len() {
            let mut need = witness.x[s][t];
            for &p in ts.members(inst.flex[t]) {
                if need == 0 {
                    break;
                }
                if !used_player[p] {
                    assign(bags[s][cursor], p, &mut leaf_player, &mut used_player)?;
                    cursor += 1;
                    need -= 1;
                }
            }
            if need != 0 {
                return Err(Error::Internal("witness uses more players than exist".into()));
            }
        }
    }

    let seeding: Option<Vec<usize>> = leaf_player.into_iter().collect();
    let seeding = Seeding(seeding.ok_or_else(|| Error::Internal("unfilled leaf".into()))?);
    if !seeding.is_bijection_over(n) {
        return Err(Error::Internal("reconstruction is not a bijection".into()));
    }
    Ok(seeding)
}

/// Bracket winners of a seeding in every scenario; the final gate on every
/// yes verdict.
pub fn verify_seeding(seeding: &Seeding, stf: &StfInstance) -> Result<Vec<usize>> {
    stf.tournaments
        .iter()
        .map(|t| evaluate_bracket(seeding, t).map(|l| l.winner()))
        .collect()
}
