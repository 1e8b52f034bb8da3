//! The implicit perfect binary bracket tree, deterministic bracket
//! evaluation, and exact win-probability computation.
//!
//! Nodes are heap-indexed: the root is 1, the children of `v` are `2v` and
//! `2v + 1`, and the leaves are `n..2n`. No tree is ever allocated.

use num_traits::Zero;

use crate::error::Error;
use crate::instance::{ProbabilityInstance, TournamentDigraph};
use crate::scalar::Scalar;
use crate::typesys::TypesDigraph;
use crate::Result;

/// Geometry of the perfect binary tree with `n` leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketTree {
    n: usize,
    levels: u32,
}

impl BracketTree {
    pub fn new(n: usize) -> Self {
        assert!(n.is_power_of_two() && n >= 1, "leaf count must be a power of 2");
        BracketTree { n, levels: n.trailing_zeros() }
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    /// Number of rounds, i.e. log2 of the leaf count.
    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub const ROOT: usize = 1;

    pub fn node_count(&self) -> usize {
        2 * self.n - 1
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v >= self.n
    }

    pub fn parent(&self, v: usize) -> usize {
        v / 2
    }

    pub fn children(&self, v: usize) -> (usize, usize) {
        (2 * v, 2 * v + 1)
    }

    pub fn sibling(&self, v: usize) -> usize {
        v ^ 1
    }

    /// Edges from `v` down to its closest leaf; leaves have height 0.
    pub fn height(&self, v: usize) -> u32 {
        self.levels - v.ilog2()
    }

    /// Leaf slot (0-based, left to right) of a leaf node.
    pub fn leaf_slot(&self, node: usize) -> usize {
        debug_assert!(self.is_leaf(node));
        node - self.n
    }

    pub fn leaf_node(&self, slot: usize) -> usize {
        self.n + slot
    }

    /// Node ids of all leaves below `v`, in increasing order.
    pub fn leaves_under(&self, v: usize) -> std::ops::Range<usize> {
        let h = self.height(v);
        let first = v << h;
        first..first + (1 << h)
    }

    /// Node ids on the path from a leaf up to the root, bottom first.
    pub fn path_to_root(&self, leaf: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.levels as usize + 1);
        let mut v = leaf;
        loop {
            path.push(v);
            if v == Self::ROOT {
                break;
            }
            v = self.parent(v);
        }
        path
    }
}

/// Assignment of identifiers (players or types) to the leaf slots, left to
/// right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seeding(pub Vec<usize>);

impl Seeding {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_bijection_over(&self, n: usize) -> bool {
        if self.0.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in &self.0 {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }
}

/// Full labeling of the bracket tree: `labels[v]` is the identifier that
/// reaches node `v`. Index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketLabeling {
    pub tree: BracketTree,
    pub labels: Vec<usize>,
}

impl BracketLabeling {
    pub fn winner(&self) -> usize {
        self.labels[BracketTree::ROOT]
    }
}

/// Bottom-up evaluation: each inner node is labeled with the winner of its
/// children's match under `beats`.
pub fn evaluate_with(seeding: &Seeding, beats: impl Fn(usize, usize) -> bool) -> BracketLabeling {
    let n = seeding.n();
    let tree = BracketTree::new(n);
    let mut labels = vec![usize::MAX; tree.node_count() + 1];
    for (slot, &p) in seeding.0.iter().enumerate() {
        labels[tree.leaf_node(slot)] = p;
    }
    for v in (1..n).rev() {
        let (l, r) = tree.children(v);
        let (a, b) = (labels[l], labels[r]);
        labels[v] = if beats(a, b) { a } else { b };
    }
    BracketLabeling { tree, labels }
}

/// Deterministic bracket for a bijective player seeding.
pub fn evaluate_bracket(seeding: &Seeding, tournament: &TournamentDigraph) -> Result<BracketLabeling> {
    if !seeding.is_bijection_over(tournament.n()) {
        return Err(Error::Invalid("seeding is not a bijection over the players".into()));
    }
    Ok(evaluate_with(seeding, |a, b| tournament.beats(a, b)))
}

/// Bracket over a types digraph; the seeding need not be injective.
pub fn evaluate_types_bracket(types_seeding: &Seeding, types: &TypesDigraph) -> BracketLabeling {
    evaluate_with(types_seeding, |a, b| types.beats(a, b))
}

/// Exact distribution of the bracket winner: a bottom-up dynamic program over
/// reach probabilities. `result[p]` is the probability that player `p` labels
/// the root. Arithmetic is whatever the instance's scalar provides.
pub fn win_probability<T: Scalar>(
    seeding: &Seeding,
    inst: &ProbabilityInstance<T>,
) -> Result<Vec<T>> {
    let n = inst.n();
    if !seeding.is_bijection_over(n) {
        return Err(Error::Invalid("seeding is not a bijection over the players".into()));
    }
    let tree = BracketTree::new(n);
    let mut reach: Vec<Vec<T>> = vec![Vec::new(); tree.node_count() + 1];
    for (slot, &p) in seeding.0.iter().enumerate() {
        let mut row = vec![T::zero(); n];
        row[p] = T::one();
        reach[tree.leaf_node(slot)] = row;
    }
    for v in (1..n).rev() {
        let (l, r) = tree.children(v);
        let mut row = vec![T::zero(); n];
        for p in 0..n {
            let mut total = T::zero();
            if !reach[l][p].is_zero() {
                let mut survive = T::zero();
                for q in 0..n {
                    if q != p && !reach[r][q].is_zero() {
                        survive = survive + reach[r][q].clone() * inst.matrix[p][q].clone();
                    }
                }
                total = total + reach[l][p].clone() * survive;
            }
            if !reach[r][p].is_zero() {
                let mut survive = T::zero();
                for q in 0..n {
                    if q != p && !reach[l][q].is_zero() {
                        survive = survive + reach[l][q].clone() * inst.matrix[p][q].clone();
                    }
                }
                total = total + reach[r][p].clone() * survive;
            }
            row[p] = total;
        }
        reach[v] = row;
    }
    Ok(reach.swap_remove(BracketTree::ROOT))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, Rat};
    use num_traits::One;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    fn rat(s: &str) -> Rat {
        parse_rational(s).unwrap()
    }

    #[test]
    fn two_player_bracket() {
        let t = TournamentDigraph::from_arcs(2, [(0, 1)]).unwrap();
        let l = evaluate_bracket(&Seeding(vec![0, 1]), &t).unwrap();
        assert_eq!(l.winner(), 0);
    }

    #[test]
    fn strongest_player_wins_transitive_bracket() {
        let t = TournamentDigraph::transitive(&[0, 1, 2, 3]);
        let l = evaluate_bracket(&Seeding(vec![0, 1, 2, 3]), &t).unwrap();
        assert_eq!(l.winner(), 0);
    }

    #[test]
    fn cyclic_tournament_match_by_match() {
        // a=0, b=1, c=2, d=3: a→b→c→a plus a→d, b→d, c→d; seeding (b, c, a, d).
        let t = TournamentDigraph::from_arcs(
            4,
            [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        )
        .unwrap();
        let l = evaluate_bracket(&Seeding(vec![1, 2, 0, 3]), &t).unwrap();
        // b beats c, a beats d, then a beats b.
        assert_eq!(l.winner(), 0);
    }

    #[test]
    fn rejects_non_bijective_seeding() {
        let t = TournamentDigraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(evaluate_bracket(&Seeding(vec![0, 0]), &t).is_err());
    }

    #[test]
    fn labeling_respects_match_rule_everywhere() {
        let t = TournamentDigraph::transitive(&[3, 0, 2, 1]);
        let l = evaluate_bracket(&Seeding(vec![1, 0, 3, 2]), &t).unwrap();
        for v in 1..4usize {
            let (a, b) = (l.labels[2 * v], l.labels[2 * v + 1]);
            assert!(l.labels[v] == a || l.labels[v] == b);
            let expect = if t.beats(a, b) { a } else { b };
            assert_eq!(l.labels[v], expect);
        }
    }

    #[test]
    fn single_match_probability() {
        let inst = ProbabilityInstance {
            players: names(2),
            matrix: vec![
                vec![rat("0"), rat("7/10")],
                vec![rat("3/10"), rat("0")],
            ],
            target: rat("7/10"),
            favorite: 0,
        };
        let dist = win_probability(&Seeding(vec![0, 1]), &inst).unwrap();
        assert_eq!(dist, vec![rat("7/10"), rat("3/10")]);
    }

    #[test]
    fn all_half_matrix_is_uniform() {
        let n = 4;
        let inst = ProbabilityInstance {
            players: names(n),
            matrix: vec![vec![rat("1/2"); n]; n],
            target: rat("1/4"),
            favorite: 0,
        };
        let dist = win_probability(&Seeding(vec![0, 1, 2, 3]), &inst).unwrap();
        for p in dist {
            assert_eq!(p, rat("1/4"));
        }
    }

    #[test]
    fn matches_completion_enumeration_with_fractional_pairs() {
        // Transitive base 0>1>2>3, with pairs (0,1) and (2,3) fractional.
        let mut matrix = vec![vec![rat("0"); 4]; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                matrix[i][j] = rat("1");
            }
        }
        matrix[0][1] = rat("2/3");
        matrix[1][0] = rat("1/3");
        matrix[2][3] = rat("1/5");
        matrix[3][2] = rat("4/5");
        let inst = ProbabilityInstance {
            players: names(4),
            matrix,
            target: rat("1/2"),
            favorite: 0,
        };
        let seeding = Seeding(vec![0, 2, 1, 3]);
        let dist = win_probability(&seeding, &inst).unwrap();

        // Independent oracle: enumerate all orientations of the fractional
        // pairs, evaluate deterministically, and sum orientation weights.
        let pairs = [(0usize, 1usize), (2usize, 3usize)];
        let mut expected = vec![Rat::zero(); 4];
        for mask in 0..4u32 {
            let mut t = TournamentDigraph::transitive(&[0, 1, 2, 3]);
            let mut weight = Rat::one();
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    // v beats u
                    if t.beats(u, v) {
                        t.flip(u, v);
                    }
                    weight *= inst.matrix[v][u].clone();
                } else {
                    weight *= inst.matrix[u][v].clone();
                }
            }
            let w = evaluate_bracket(&seeding, &t).unwrap().winner();
            expected[w] += weight;
        }
        assert_eq!(dist, expected);
    }

    #[test]
    fn integral_matrix_concentrates_on_the_deterministic_winner() {
        let t = TournamentDigraph::transitive(&[2, 0, 1, 3]);
        let mut matrix = vec![vec![rat("0"); 4]; 4];
        for (u, v) in t.arcs() {
            matrix[u][v] = rat("1");
        }
        let inst = ProbabilityInstance {
            players: names(4),
            matrix,
            target: rat("1"),
            favorite: 2,
        };
        let seeding = Seeding(vec![3, 1, 0, 2]);
        let winner = evaluate_bracket(&seeding, &t).unwrap().winner();
        let dist = win_probability(&seeding, &inst).unwrap();
        for (p, prob) in dist.iter().enumerate() {
            let expect = if p == winner { Rat::one() } else { Rat::zero() };
            assert_eq!(*prob, expect);
        }
    }

    #[test]
    fn tree_geometry() {
        let t = BracketTree::new(8);
        assert_eq!(t.levels(), 3);
        assert_eq!(t.height(1), 3);
        assert_eq!(t.height(8), 0);
        assert_eq!(t.leaves_under(2).collect::<Vec<_>>(), vec![8, 9, 10, 11]);
        assert_eq!(t.path_to_root(11), vec![11, 5, 2, 1]);
        let single = BracketTree::new(1);
        assert_eq!(single.node_count(), 1);
        assert!(single.is_leaf(1));
    }
}
