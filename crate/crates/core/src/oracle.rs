//! Brute-force ground truth for TF, STF, and PTF at small n.
//!
//! Swapping the two subtrees under any inner node never changes a bracket
//! winner, so the oracles enumerate seedings modulo sibling swaps: the
//! canonical representatives place the minimum player of every subtree span
//! in its left half. That cuts n! to n!/2^(n-1) (315 for n = 8).

use crate::bracket::{evaluate_with, win_probability, Seeding};
use crate::error::Error;
use crate::instance::{ProbabilityInstance, StfInstance};
use crate::scalar::Scalar;
use crate::Result;

/// Default player cap for the oracles.
pub const DEFAULT_ORACLE_CAP: usize = 8;

#[derive(Debug, Clone)]
pub struct OracleReport<T> {
    pub answer: bool,
    pub witness: Option<Seeding>,
    /// PTF only: the exact maximum of the favorite's win probability over all
    /// seedings; the witness attains it.
    pub best_probability: Option<T>,
}

/// All seedings modulo sibling swaps, in a deterministic order.
pub fn canonical_seedings(n: usize) -> Vec<Seeding> {
    assert!(n.is_power_of_two());
    fn arrangements(players: &[usize]) -> Vec<Vec<usize>> {
        if players.len() == 1 {
            return vec![players.to_vec()];
        }
        let half = players.len() / 2;
        let anchor = players[0];
        let rest = &players[1..];
        let mut out = Vec::new();
        // Choose the remaining left-half players; the minimum stays left.
        let mut choice: Vec<usize> = (0..half - 1).collect();
        loop {
            let left: Vec<usize> = std::iter::once(anchor)
                .chain(choice.iter().map(|&i| rest[i]))
                .collect();
            let right: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| !choice.contains(i))
                .map(|(_, &p)| p)
                .collect();
            for l in arrangements(&left) {
                for r in arrangements(&right) {
                    let mut s = l.clone();
                    s.extend_from_slice(&r);
                    out.push(s);
                }
            }
            // Next combination in lexicographic order.
            let k = choice.len();
            if k == 0 {
                break;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if choice[i] != i + rest.len() - k {
                    break;
                }
            }
            if choice[i] == i + rest.len() - k {
                break;
            }
            choice[i] += 1;
            for j in i + 1..k {
                choice[j] = choice[j - 1] + 1;
            }
        }
        out
    }
    let players: Vec<usize> = (0..n).collect();
    arrangements(&players).into_iter().map(Seeding).collect()
}

/// Every bijective seeding; exponentially larger than the canonical set.
pub fn all_seedings(n: usize) -> Vec<Seeding> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Seeding>) {
        if k == v.len() {
            out.push(Seeding(v.clone()));
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            rec(v, k + 1, out);
            v.swap(k, i);
        }
    }
    rec(&mut current, 0, &mut out);
    out
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what: "oracle player count", cap, actual: n });
    }
    Ok(())
}

/// Exhaustive STF: yes iff some seeding wins every scenario.
pub fn oracle_stf(stf: &StfInstance) -> Result<OracleReport<crate::Rat>> {
    oracle_stf_with_cap(stf, DEFAULT_ORACLE_CAP)
}

pub fn oracle_stf_with_cap(stf: &StfInstance, cap: usize) -> Result<OracleReport<crate::Rat>> {
    check_cap(stf.n(), cap)?;
    Ok(oracle_stf_over(stf, canonical_seedings(stf.n())))
}

/// Same verdict over an explicit seeding pool; lets tests compare the
/// symmetry-reduced and full enumerations.
pub fn oracle_stf_over(stf: &StfInstance, seedings: Vec<Seeding>) -> OracleReport<crate::Rat> {
    for seeding in seedings {
        let wins_all = stf
            .tournaments
            .iter()
            .all(|t| evaluate_with(&seeding, |a, b| t.beats(a, b)).winner() == stf.favorite);
        if wins_all {
            return OracleReport { answer: true, witness: Some(seeding), best_probability: None };
        }
    }
    OracleReport { answer: false, witness: None, best_probability: None }
}

/// Exhaustive PTF: maximizes the favorite's exact win probability over all
/// seedings and compares against the target.
pub fn oracle_ptf<T: Scalar>(inst: &ProbabilityInstance<T>) -> Result<OracleReport<T>> {
    oracle_ptf_with_cap(inst, DEFAULT_ORACLE_CAP)
}

pub fn oracle_ptf_with_cap<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    cap: usize,
) -> Result<OracleReport<T>> {
    check_cap(inst.n(), cap)?;
    let mut best: Option<(T, Seeding)> = None;
    for seeding in canonical_seedings(inst.n()) {
        let p = win_probability(&seeding, inst)?[inst.favorite].clone();
        let better = match &best {
            None => true,
            Some((b, _)) => p > *b,
        };
        if better {
            best = Some((p, seeding));
        }
    }
    let (best_probability, witness) = best.expect("at least one seeding exists");
    Ok(OracleReport {
        answer: best_probability >= inst.target,
        witness: Some(witness),
        best_probability: Some(best_probability),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::TournamentDigraph;
    use crate::scalar::{parse_rational, Rat};

    fn rat(s: &str) -> Rat {
        parse_rational(s).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn canonical_seeding_counts() {
        assert_eq!(canonical_seedings(1).len(), 1);
        assert_eq!(canonical_seedings(2).len(), 1);
        assert_eq!(canonical_seedings(4).len(), 3);
        assert_eq!(canonical_seedings(8).len(), 315);
    }

    #[test]
    fn two_player_yes_and_no() {
        let t = TournamentDigraph::from_arcs(2, [(0, 1)]).unwrap();
        let yes = StfInstance::new(names(2), vec![t.clone()], 0).unwrap();
        assert!(oracle_stf(&yes).unwrap().answer);

        let mut t2 = t.clone();
        t2.flip(0, 1);
        let no = StfInstance::new(names(2), vec![t, t2], 0).unwrap();
        assert!(!oracle_stf(&no).unwrap().answer);
    }

    #[test]
    fn symmetry_reduction_matches_full_enumeration_on_three_scenarios() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let n = 4;
            let mut ts = Vec::new();
            for _ in 0..3 {
                let mut t = TournamentDigraph::transitive(&[0, 1, 2, 3]);
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(0.3) {
                            t.flip(u, v);
                        }
                    }
                }
                ts.push(t);
            }
            let stf = StfInstance::new(names(n), ts, rng.gen_range(0..n)).unwrap();
            let reduced = oracle_stf(&stf).unwrap();
            let full = oracle_stf_over(&stf, all_seedings(n));
            assert_eq!(reduced.answer, full.answer);
        }
    }

    #[test]
    fn ptf_oracle_exact_threshold() {
        let mut matrix = vec![vec![rat("0"); 2]; 2];
        matrix[0][1] = rat("7/10");
        matrix[1][0] = rat("3/10");
        let inst = ProbabilityInstance {
            players: names(2),
            matrix: matrix.clone(),
            target: rat("7/10"),
            favorite: 0,
        };
        let report = oracle_ptf(&inst).unwrap();
        assert!(report.answer);
        assert_eq!(report.best_probability.unwrap(), rat("7/10"));

        let strict = ProbabilityInstance { target: rat("71/100"), matrix, ..inst };
        assert!(!oracle_ptf(&strict).unwrap().answer);
    }

    #[test]
    fn integral_matrices_have_zero_one_best_probability() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let n = 4;
            let mut t = TournamentDigraph::transitive(&[0, 1, 2, 3]);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        t.flip(u, v);
                    }
                }
            }
            let mut matrix = vec![vec![rat("0"); n]; n];
            for (u, v) in t.arcs() {
                matrix[u][v] = rat("1");
            }
            let inst = ProbabilityInstance {
                players: names(n),
                matrix,
                target: rat("1"),
                favorite: rng.gen_range(0..n),
            };
            let best = oracle_ptf(&inst).unwrap().best_probability.unwrap();
            assert!(best == rat("0") || best == rat("1"));
        }
    }

    #[test]
    fn oracle_invariant_under_relabeling() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let n = 4;
        let mut t = TournamentDigraph::transitive(&[0, 1, 2, 3]);
        t.flip(1, 2);
        t.flip(0, 3);
        let stf = StfInstance::new(names(n), vec![t.clone()], 1).unwrap();
        let base = oracle_stf(&stf).unwrap().answer;

        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let remapped = TournamentDigraph::from_arcs(
            n,
            t.arcs().into_iter().map(|(u, v)| (perm[u], perm[v])),
        )
        .unwrap();
        let stf2 = StfInstance::new(names(n), vec![remapped], perm[1]).unwrap();
        assert_eq!(oracle_stf(&stf2).unwrap().answer, base);
    }
}
