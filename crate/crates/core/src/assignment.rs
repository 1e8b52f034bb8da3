//! The integral feasibility system attached to a blueprint, and its solver.
//!
//! For each flexible type the system tracks a demand `b` (leaves that must be
//! filled with players no stronger than that type) and a supply `c` (players
//! of that type still unassigned). A witness `x[s][t]` says how many players
//! of type `t` go to the leaf group capped at strength `s`; cells with `t`
//! stronger than `s` are forbidden.
//!
//! The system is a transportation feasibility problem, solved exactly by
//! integral maximum flow on the bipartite demand/supply network: it is
//! feasible iff the max flow equals the total demand, and the flow itself is
//! the witness.

use crate::blueprint::{
    labels_of_node, strongest_dominated_flex, Blueprint, ImportantVertexRecord,
};
use crate::error::Error;
use crate::typesys::{TypeId, TypeSystem};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentInstance {
    /// Flexible types, strongest first.
    pub flex: Vec<TypeId>,
    /// Demand per flex position: leaves to fill with players of that strength
    /// cap or weaker.
    pub b: Vec<usize>,
    /// Supply per flex position: players of that type still available.
    pub c: Vec<usize>,
    /// Cells (s, t) pinned to zero: type t is stronger than the cap s.
    pub forbidden: Vec<(usize, usize)>,
    /// Leaves fixed during construction: the blueprint leaves and the traced
    /// leaf of each K tuple, as (leaf node id, player).
    pub preassigned: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentWitness {
    /// x[s][t]: players of type position t assigned to group position s.
    pub x: Vec<Vec<usize>>,
}

/// Why a blueprint cannot be completed into a seeding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// A K tuple needs a player of a type with empty remaining supply.
    SupplyExhausted(TypeId),
    /// No flexible type is beaten by a J tuple's labels in every scenario.
    NoDominatedType { node: usize },
}

#[derive(Debug, Clone)]
pub enum BuildOutcome {
    Instance(AssignmentInstance),
    Rejected(Rejection),
}

/// Builds the feasibility instance for a checked blueprint.
///
/// J tuples add the full leaf count of the untracked subtree to the demand of
/// the strongest flexible type dominated by the node's labels; K tuples fix
/// one leaf with a player of the incoming type (all but one leaf go to that
/// type's demand, and the supply drops by one).
pub fn build_assignment(
    bp: &Blueprint,
    ivr: &ImportantVertexRecord,
    ts: &TypeSystem,
) -> Result<BuildOutcome> {
    let shape = bp.shape()?;
    let flex: Vec<TypeId> = ts.flexible_types().collect();
    let pos_of = |t: TypeId| -> usize { t / 2 };
    let mut b = vec![0usize; flex.len()];
    let mut c: Vec<usize> = flex.iter().map(|&t| ts.members(t).len()).collect();

    let n = bp.leaf_count;
    let mut used_player = vec![false; n];
    let mut preassigned = Vec::new();
    for (path, nodes) in shape.path_nodes.iter().enumerate() {
        let player = ts.affected()[path];
        used_player[player] = true;
        preassigned.push((nodes[0], player));
    }

    for t in &ivr.j_tuples {
        let labels = labels_of_node(bp, &shape, t.v);
        match strongest_dominated_flex(&labels, ts.type_count()) {
            None => return Ok(BuildOutcome::Rejected(Rejection::NoDominatedType { node: t.v })),
            Some(q) => b[pos_of(q)] += 1usize << t.height_w,
        }
    }
    for t in &ivr.k_tuples {
        let pos = pos_of(t.new_label);
        b[pos] += (1usize << t.height_w) - 1;
        if c[pos] == 0 {
            return Ok(BuildOutcome::Rejected(Rejection::SupplyExhausted(t.new_label)));
        }
        c[pos] -= 1;
        // Trace the incoming label to a concrete leaf: lowest leaf under w,
        // filled by the lowest-index unused player of that type.
        let z = shape.tree.leaves_under(t.w).next().expect("subtree has a leaf");
        let player = ts
            .members(t.new_label)
            .iter()
            .copied()
            .find(|&p| !used_player[p])
            .ok_or_else(|| Error::Internal("supply check missed an exhausted type".into()))?;
        used_player[player] = true;
        preassigned.push((z, player));
    }

    let mut forbidden = Vec::new();
    for s in 0..flex.len() {
        for t in 0..s {
            forbidden.push((s, t));
        }
    }

    debug_assert_eq!(
        b.iter().sum::<usize>(),
        c.iter().sum::<usize>(),
        "unassigned leaves and players must balance"
    );
    Ok(BuildOutcome::Instance(AssignmentInstance { flex, b, c, forbidden, preassigned }))
}

/// Integral feasibility via max flow; returns the witness or `None`.
pub fn solve_assignment(inst: &AssignmentInstance) -> Option<AssignmentWitness> {
    let f = inst.flex.len();
    let total_b: usize = inst.b.iter().sum();
    let total_c: usize = inst.c.iter().sum();
    if total_b != total_c {
        return None;
    }
    if f == 0 {
        return Some(AssignmentWitness { x: Vec::new() });
    }
    // Nodes: 0 source, 1..=f rows, f+1..=2f cols, 2f+1 sink.
    let nodes = 2 * f + 2;
    let sink = 2 * f + 1;
    let mut cap = vec![vec![0i64; nodes]; nodes];
    for s in 0..f {
        cap[0][1 + s] = inst.b[s] as i64;
    }
    for t in 0..f {
        cap[1 + f + t][sink] = inst.c[t] as i64;
    }
    for s in 0..f {
        for t in 0..f {
            if !inst.forbidden.contains(&(s, t)) {
                cap[1 + s][1 + f + t] = total_b as i64;
            }
        }
    }
    let mut flow = vec![vec![0i64; nodes]; nodes];
    let mut pushed = 0i64;
    loop {
        // BFS for an augmenting path in the residual network.
        let mut parent = vec![usize::MAX; nodes];
        parent[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for v in 0..nodes {
                if parent[v] == usize::MAX && cap[u][v] - flow[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while v != 0 {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][v] - flow[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != 0 {
            let u = parent[v];
            flow[u][v] += bottleneck;
            flow[v][u] -= bottleneck;
            v = u;
        }
        pushed += bottleneck;
    }
    if pushed != total_b as i64 {
        return None;
    }
    let mut x = vec![vec![0usize; f]; f];
    for s in 0..f {
        for t in 0..f {
            x[s][t] = flow[1 + s][1 + f + t].max(0) as usize;
        }
    }
    let witness = AssignmentWitness { x };
    debug_assert!(validate_witness(inst, &witness));
    Some(witness)
}

/// Independent validator for the four constraint groups.
pub fn validate_witness(inst: &AssignmentInstance, w: &AssignmentWitness) -> bool {
    let f = inst.flex.len();
    if w.x.len() != f || w.x.iter().any(|row| row.len() != f) {
        return false;
    }
    for s in 0..f {
        if w.x[s].iter().sum::<usize>() != inst.b[s] {
            return false;
        }
    }
    for t in 0..f {
        if (0..f).map(|s| w.x[s][t]).sum::<usize>() != inst.c[t] {
            return false;
        }
    }
    inst.forbidden.iter().all(|&(s, t)| w.x[s][t] == 0)
}
