//! Exact minimum feedback arc set with a witnessing vertex ordering.
//!
//! A set of arcs is a feedback arc set exactly when it is the set of leftward
//! arcs of some linear order, so the minimum FAS is found by minimizing the
//! leftward-arc count over orderings. Two exact engines share that contract:
//! a subset DP for up to [`SUBSET_DP_LIMIT`] vertices and an
//! iterative-deepening cycle-hitting search above it (fast when the optimum
//! is small, which is the regime the solvers operate in). Ties among optimal
//! orderings are broken toward the lexicographically smallest sequence of
//! player indices, so downstream types and blueprints are reproducible.

use crate::error::Error;
use crate::instance::Digraph;
use crate::Result;

/// Default vertex cap for [`min_fas`].
pub const DEFAULT_FAS_CAP: usize = 20;

/// Largest n handled by the subset DP; beyond this the branching engine runs.
pub const SUBSET_DP_LIMIT: usize = 20;

/// An optimal ordering together with its back arcs: the arcs xy with y
/// preceding x. Reversing them makes the digraph acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedFas {
    ordering: Vec<usize>,
    back_arcs: Vec<(usize, usize)>,
    position: Vec<usize>,
}

impl OrderedFas {
    fn new(g: &Digraph, ordering: Vec<usize>) -> Self {
        let n = g.n();
        let mut position = vec![0; n];
        for (i, &v) in ordering.iter().enumerate() {
            position[v] = i;
        }
        let mut back_arcs = Vec::new();
        for (u, v) in g.arcs() {
            if position[v] < position[u] {
                back_arcs.push((u, v));
            }
        }
        OrderedFas { ordering, back_arcs, position }
    }

    /// Players sorted by the witnessing order, strongest first.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn back_arcs(&self) -> &[(usize, usize)] {
        &self.back_arcs
    }

    pub fn size(&self) -> usize {
        self.back_arcs.len()
    }

    /// True when `u` precedes `v` in the witnessing order.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.position[u] < self.position[v]
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }
}

/// Minimum FAS under the default cap.
pub fn min_fas(g: &Digraph) -> Result<OrderedFas> {
    min_fas_with_cap(g, DEFAULT_FAS_CAP)
}

/// Minimum FAS, erroring when the digraph exceeds `cap` vertices.
pub fn min_fas_with_cap(g: &Digraph, cap: usize) -> Result<OrderedFas> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded { what: "FAS vertex count", cap, actual: n });
    }
    if n > 64 {
        return Err(Error::CapExceeded { what: "FAS vertex count", cap: 64, actual: n });
    }
    let ordering = if n <= SUBSET_DP_LIMIT {
        subset_dp_ordering(g)
    } else {
        branching_ordering(g)
    };
    Ok(OrderedFas::new(g, ordering))
}

fn out_masks(g: &Digraph) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .map(|u| {
            let mut m = 0u64;
            for v in 0..n {
                if g.has_arc(u, v) {
                    m |= 1 << v;
                }
            }
            m
        })
        .collect()
}

/// Subset DP: h[S] is the cheapest completion cost when the set S is already
/// placed as a prefix. Appending v to a prefix S costs the arcs from v into S.
fn subset_dp_ordering(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let out = out_masks(g);
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut h = vec![u32::MAX; (full + 1) as usize];
    h[full as usize] = 0;
    for s in (0..full).rev() {
        let mut best = u32::MAX;
        for v in 0..n {
            if s & (1 << v) != 0 {
                continue;
            }
            let cost = (out[v] & s).count_ones() + h[(s | (1 << v)) as usize];
            best = best.min(cost);
        }
        h[s as usize] = best;
    }
    // Greedy front-to-back reconstruction keeps the ordering lexicographically
    // smallest among the optima.
    let mut ordering = Vec::with_capacity(n);
    let mut s: u64 = 0;
    while s != full {
        for v in 0..n {
            if s & (1 << v) != 0 {
                continue;
            }
            let cost = (out[v] & s).count_ones() + h[(s | (1 << v)) as usize];
            if cost == h[s as usize] {
                ordering.push(v);
                s |= 1 << v;
                break;
            }
        }
    }
    ordering
}

/// Decides whether the sub-digraph induced on `alive` has a FAS of size at
/// most `budget`, by branching on the arcs of a shortest directed cycle.
fn fas_at_most(out: &[u64], alive: u64, removed: &mut Vec<(usize, usize)>, budget: usize) -> bool {
    match shortest_cycle(out, alive, removed) {
        None => true,
        Some(cycle) => {
            if budget == 0 {
                return false;
            }
            for w in cycle.windows(2) {
                removed.push((w[0], w[1]));
                if fas_at_most(out, alive, removed, budget - 1) {
                    removed.pop();
                    return true;
                }
                removed.pop();
            }
            false
        }
    }
}

/// Shortest directed cycle among `alive` vertices, ignoring `removed` arcs;
/// returned as a vertex list whose last element repeats the first.
fn shortest_cycle(out: &[u64], alive: u64, removed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = out.len();
    let has = |u: usize, v: usize| {
        out[u] & (1 << v) != 0 && !removed.contains(&(u, v))
    };
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        if alive & (1 << start) == 0 {
            continue;
        }
        // BFS from start; the first arc returning to start closes a shortest
        // cycle through it.
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        let mut seen = 1u64 << start;
        'bfs: while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if alive & (1 << v) == 0 || !has(u, v) {
                    continue;
                }
                if v == start {
                    let mut path = vec![start];
                    let mut cur = u;
                    while cur != start {
                        path.push(cur);
                        cur = parent[cur];
                    }
                    path.push(start);
                    path[1..].reverse();
                    if best.as_ref().map_or(true, |b| path.len() < b.len()) {
                        best = Some(path);
                    }
                    break 'bfs;
                }
                if seen & (1 << v) == 0 {
                    seen |= 1 << v;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if best.as_ref().is_some_and(|b| b.len() == 3) {
            break; // a triangle cannot be beaten
        }
    }
    best
}

fn min_fas_size(out: &[u64], alive: u64) -> usize {
    let mut removed = Vec::new();
    for budget in 0.. {
        if fas_at_most(out, alive, &mut removed, budget) {
            return budget;
        }
    }
    unreachable!()
}

/// Branching engine: finds the optimum size by iterative deepening, then
/// rebuilds the lexicographically smallest optimal ordering position by
/// position, checking each candidate prefix for completability.
fn branching_ordering(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    let out = out_masks(g);
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let optimum = min_fas_size(&out, full);

    let mut ordering = Vec::with_capacity(n);
    let mut placed = 0u64;
    let mut incurred = 0usize;
    while ordering.len() < n {
        for v in 0..n {
            if placed & (1 << v) != 0 {
                continue;
            }
            let step = (out[v] & placed).count_ones() as usize;
            let rest = full & !placed & !(1 << v);
            // Arcs from the unplaced remainder into the prefix are leftward no
            // matter how the remainder is arranged.
            let forced: usize = (0..n)
                .filter(|&u| rest & (1 << u) != 0)
                .map(|u| (out[u] & (placed | (1 << v))).count_ones() as usize)
                .sum();
            let spent = incurred + step + forced;
            if spent > optimum {
                continue;
            }
            let mut removed = Vec::new();
            if fas_at_most(&out, rest, &mut removed, optimum - spent) {
                ordering.push(v);
                placed |= 1 << v;
                incurred += step;
                break;
            }
        }
    }
    ordering
}
