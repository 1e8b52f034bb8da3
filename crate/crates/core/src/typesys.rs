//! Affected vertices, the type function, and the per-scenario types-digraphs.
//!
//! Affected players are the endpoints of shared-FAS back arcs and private
//! arcs, plus the favorite. Each affected player is its own *singular* type;
//! the remaining players are grouped into *flexible* types by the interval
//! between consecutive affected players in the FAS ordering.
//!
//! Types are indexed canonically in that ordering, flexible and singular
//! interleaved: with affected players `a_1 ≺ … ≺ a_k`, index `2(j-1)` is the
//! flexible interval left of `a_j`, index `2j-1` is `a_j` itself, and index
//! `2k` is the interval right of `a_k`. Empty intervals keep their index and
//! behave as a phantom player sitting in that position.

use std::collections::BTreeSet;

use crate::fas::OrderedFas;
use crate::instance::StfInstance;

/// Canonical type index; even = flexible, odd = singular.
pub type TypeId = usize;

pub fn is_flexible(t: TypeId) -> bool {
    t % 2 == 0
}

#[derive(Debug, Clone)]
pub struct TypeSystem {
    /// Affected players sorted by the FAS ordering.
    affected: Vec<usize>,
    /// Type of each player.
    type_of: Vec<TypeId>,
    /// Players of each type, sorted by index.
    members: Vec<Vec<usize>>,
    /// Position of each player in the FAS ordering.
    position: Vec<usize>,
}

impl TypeSystem {
    pub fn affected(&self) -> &[usize] {
        &self.affected
    }

    /// Number of affected players.
    pub fn affected_count(&self) -> usize {
        self.affected.len()
    }

    pub fn type_count(&self) -> usize {
        2 * self.affected.len() + 1
    }

    pub fn type_of(&self, player: usize) -> TypeId {
        self.type_of[player]
    }

    /// Singular type of the j-th affected player (1-based).
    pub fn singular_type(&self, j: usize) -> TypeId {
        2 * j - 1
    }

    pub fn affected_of_type(&self, t: TypeId) -> usize {
        debug_assert!(!is_flexible(t));
        self.affected[(t - 1) / 2]
    }

    /// Flexible types in the beats order, strongest first.
    pub fn flexible_types(&self) -> impl Iterator<Item = TypeId> {
        (0..self.type_count()).step_by(2)
    }

    pub fn members(&self, t: TypeId) -> &[usize] {
        &self.members[t]
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.position[u] < self.position[v]
    }
}

/// Builds the type system from the shared-FAS ordering of an STF instance.
/// The favorite is always affected.
pub fn compute_types(stf: &StfInstance, ordered: &OrderedFas) -> TypeSystem {
    let n = stf.n();
    let mut affected_set = BTreeSet::new();
    affected_set.insert(stf.favorite);
    for &(u, v) in ordered.back_arcs() {
        affected_set.insert(u);
        affected_set.insert(v);
    }
    for (u, v) in stf.private_pairs() {
        affected_set.insert(u);
        affected_set.insert(v);
    }
    let mut affected: Vec<usize> = affected_set.into_iter().collect();
    affected.sort_by_key(|&v| ordered.position(v));

    let mut position = vec![0; n];
    for v in 0..n {
        position[v] = ordered.position(v);
    }

    let mut type_of = vec![0; n];
    for v in 0..n {
        if let Some(j) = affected.iter().position(|&a| a == v) {
            type_of[v] = 2 * (j + 1) - 1;
        } else {
            // Smallest j with v ≺ a_j, else the rightmost interval.
            let j = affected
                .iter()
                .position(|&a| position[v] < position[a])
                .unwrap_or(affected.len());
            type_of[v] = 2 * j;
        }
    }
    let mut members = vec![Vec::new(); 2 * affected.len() + 1];
    for v in 0..n {
        members[type_of[v]].push(v);
    }
    TypeSystem { affected, type_of, members, position }
}

/// Tournament digraph over the canonical types for one scenario.
///
/// All arcs touching a flexible type follow the canonical order (smaller
/// index beats larger); arcs between two singular types are taken from the
/// scenario tournament directly, which is exactly where scenarios may differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypesDigraph {
    k: usize,
    beats: Vec<bool>,
}

impl TypesDigraph {
    pub fn type_count(&self) -> usize {
        self.k
    }

    pub fn beats(&self, x: TypeId, y: TypeId) -> bool {
        self.beats[x * self.k + y]
    }
}

/// Types-digraph generated by scenario `i`.
pub fn types_digraph(stf: &StfInstance, ts: &TypeSystem, i: usize) -> TypesDigraph {
    let k = ts.type_count();
    let d = &stf.tournaments[i];
    let mut beats = vec![false; k * k];
    for x in 0..k {
        for y in 0..k {
            if x == y {
                continue;
            }
            let wins = if !is_flexible(x) && !is_flexible(y) {
                d.beats(ts.affected_of_type(x), ts.affected_of_type(y))
            } else {
                x < y
            };
            beats[x * k + y] = wins;
        }
    }
    TypesDigraph { k, beats }
}

pub fn types_digraphs(stf: &StfInstance, ts: &TypeSystem) -> Vec<TypesDigraph> {
    (0..stf.m()).map(|i| types_digraph(stf, ts, i)).collect()
}
