//! Instance data model, validation, and the JSON file format.
//!
//! All instance values are immutable after construction and safe to share
//! across workers. Probabilities are exact rationals in the parsed form; the
//! matrix type is generic so the DPs can also run on floats.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fas::{self, OrderedFas};
use crate::scalar::{format_rational, parse_rational, Rat, Scalar};
use crate::Result;

/// Which problem an instance file encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Tf,
    Stf,
    Ptf,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Tf => "tf",
            Kind::Stf => "stf",
            Kind::Ptf => "ptf",
        }
    }

    pub fn from_str(s: &str) -> Result<Kind> {
        match s {
            "tf" => Ok(Kind::Tf),
            "stf" => Ok(Kind::Stf),
            "ptf" => Ok(Kind::Ptf),
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

/// A digraph with at most one arc per unordered pair and no self-arcs.
/// Vertices are player indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arc: Vec<bool>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { n, arc: vec![false; n * n] }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::Invalid(format!("bad arc ({u}, {v})")));
        }
        if self.arc[v * self.n + u] {
            return Err(Error::Invalid(format!(
                "both orientations present for pair ({u}, {v})"
            )));
        }
        self.arc[u * self.n + v] = true;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc[u * self.n + v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn arc_count(&self) -> usize {
        self.arc.iter().filter(|&&b| b).count()
    }

    /// True when every pair is oriented, i.e. the digraph is a tournament.
    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.has_arc(u, v) || self.has_arc(v, u)))
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn-style peeling on in-degrees.
        let mut indeg = vec![0usize; self.n];
        for (_, v) in self.arcs() {
            indeg[v] += 1;
        }
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop() {
            seen += 1;
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        queue.push(v);
                    }
                }
            }
        }
        seen == self.n
    }
}

/// A complete orientation of all player pairs: `beats(u, v)` holds for
/// exactly one of `(u, v)`, `(v, u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TournamentDigraph {
    n: usize,
    beats: Vec<bool>,
}

impl TournamentDigraph {
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = Digraph::from_arcs(n, arcs)?;
        Self::from_digraph(&g)
    }

    pub fn from_digraph(g: &Digraph) -> Result<Self> {
        if !g.is_tournament() {
            return Err(Error::Invalid("digraph is not a complete orientation".into()));
        }
        Ok(TournamentDigraph { n: g.n, beats: g.arc.clone() })
    }

    /// Transitive tournament where `order[i]` beats `order[j]` for i < j.
    pub fn transitive(order: &[usize]) -> Self {
        let n = order.len();
        let mut beats = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                beats[order[i] * n + order[j]] = true;
            }
        }
        TournamentDigraph { n, beats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.beats[u * self.n + v]
    }

    pub fn flip(&mut self, u: usize, v: usize) {
        let (a, b) = (u * self.n + v, v * self.n + u);
        self.beats.swap(a, b);
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.beats(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn as_digraph(&self) -> Digraph {
        Digraph { n: self.n, arc: self.beats.clone() }
    }
}

/// PTF instance: player names, exact pairwise win matrix, target probability,
/// and the favorite.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityInstance<T> {
    pub players: Vec<String>,
    pub matrix: Vec<Vec<T>>,
    pub target: T,
    pub favorite: usize,
}

impl<T: Scalar> ProbabilityInstance<T> {
    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        validate_players(&self.players)?;
        if self.favorite >= n {
            return Err(Error::Invalid("favorite out of range".into()));
        }
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("matrix is not {n}x{n}")));
        }
        let zero = T::zero();
        let one = T::one();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue; // diagonal entries are ignored
                }
                let p = &self.matrix[i][j];
                if *p < zero || *p > one {
                    return Err(Error::Invalid(format!(
                        "matrix entry ({i}, {j}) outside [0, 1]"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.matrix[i][j].clone() + self.matrix[j][i].clone() != one {
                    return Err(Error::Invalid(format!(
                        "asymmetric pair ({}, {}): entries must sum to 1",
                        self.players[i], self.players[j]
                    )));
                }
            }
        }
        if self.target < zero || self.target > one {
            return Err(Error::Invalid("target outside [0, 1]".into()));
        }
        Ok(())
    }

    /// Arc uv present exactly when `matrix[u][v] = 1`.
    pub fn certainty_digraph(&self) -> Digraph {
        let n = self.n();
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && self.matrix[u][v] == T::one() {
                    g.arc[u * n + v] = true;
                }
            }
        }
        g
    }

    /// Unordered pairs whose entry is neither 0 nor 1, as `(u, v)` with u < v.
    pub fn fractional_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let p = &self.matrix[u][v];
                if *p != T::zero() && *p != T::one() {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_of_uncertainty(&self) -> usize {
        self.fractional_pairs().len()
    }

    /// Applies `f` to every matrix entry and the target; used to move between
    /// exact and floating-point arithmetic.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ProbabilityInstance<U> {
        ProbabilityInstance {
            players: self.players.clone(),
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
            target: f(&self.target),
            favorite: self.favorite,
        }
    }
}

/// STF instance: scenario tournaments over a shared player list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StfInstance {
    pub players: Vec<String>,
    pub tournaments: Vec<TournamentDigraph>,
    pub favorite: usize,
}

impl StfInstance {
    /// Builds and validates an instance; duplicate tournaments are silently
    /// deduplicated (first occurrence wins).
    pub fn new(
        players: Vec<String>,
        tournaments: Vec<TournamentDigraph>,
        favorite: usize,
    ) -> Result<Self> {
        validate_players(&players)?;
        if favorite >= players.len() {
            return Err(Error::Invalid("favorite out of range".into()));
        }
        if tournaments.is_empty() {
            return Err(Error::Invalid("at least one tournament required".into()));
        }
        let n = players.len();
        let mut deduped: Vec<TournamentDigraph> = Vec::new();
        for t in tournaments {
            if t.n() != n {
                return Err(Error::Invalid("tournament size mismatch".into()));
            }
            if !deduped.contains(&t) {
                deduped.push(t);
            }
        }
        Ok(StfInstance { players, tournaments: deduped, favorite })
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn m(&self) -> usize {
        self.tournaments.len()
    }

    /// Arcs present in every scenario tournament.
    pub fn shared_digraph(&self) -> Digraph {
        let n = self.n();
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && self.tournaments.iter().all(|t| t.beats(u, v)) {
                    g.arc[u * n + v] = true;
                }
            }
        }
        g
    }

    /// Unordered pairs on which the scenarios disagree.
    pub fn private_pairs(&self) -> Vec<(usize, usize)> {
        let shared = self.shared_digraph();
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !shared.has_arc(u, v) && !shared.has_arc(v, u) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn validate_players(players: &[String]) -> Result<()> {
    let n = players.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Invalid(format!("n = {n} is not a power of 2")));
    }
    let distinct: BTreeSet<&String> = players.iter().collect();
    if distinct.len() != n {
        return Err(Error::Invalid("duplicate player identifiers".into()));
    }
    Ok(())
}

/// Structural parameters derived from an instance. For STF these are the
/// shared digraph, its FAS, and the private-arc count; for PTF the analogous
/// quantities come from the certainty digraph and the fractional pairs.
#[derive(Debug, Clone)]
pub struct InstanceParameters {
    pub shared_arcs: Digraph,
    pub shared_fas: OrderedFas,
    pub private_arc_count: usize,
    pub degree_of_uncertainty: usize,
    pub certainty_fas_size: usize,
}

impl InstanceParameters {
    pub fn shared_fas_size(&self) -> usize {
        self.shared_fas.size()
    }

    /// Combined parameter: shared FAS size plus private arcs.
    pub fn k(&self) -> usize {
        self.shared_fas_size() + self.private_arc_count
    }
}

/// Shared digraph, private-arc count, and shared FAS of an STF instance.
pub fn shared_structure(stf: &StfInstance, fas_cap: usize) -> Result<InstanceParameters> {
    let shared = stf.shared_digraph();
    let ordered = fas::min_fas_with_cap(&shared, fas_cap)?;
    let private = stf.private_pairs().len();
    let fas_size = ordered.size();
    Ok(InstanceParameters {
        shared_arcs: shared,
        shared_fas: ordered,
        private_arc_count: private,
        degree_of_uncertainty: private,
        certainty_fas_size: fas_size,
    })
}

/// Certainty digraph, its FAS, and the degree of uncertainty of a PTF
/// instance.
pub fn ptf_structure<T: Scalar>(
    inst: &ProbabilityInstance<T>,
    fas_cap: usize,
) -> Result<InstanceParameters> {
    let certainty = inst.certainty_digraph();
    let ordered = fas::min_fas_with_cap(&certainty, fas_cap)?;
    let degree = inst.degree_of_uncertainty();
    let fas_size = ordered.size();
    Ok(InstanceParameters {
        shared_arcs: certainty,
        shared_fas: ordered,
        private_arc_count: degree,
        degree_of_uncertainty: degree,
        certainty_fas_size: fas_size,
    })
}

/// Either flavor of parsed instance.
#[derive(Debug, Clone)]
pub enum Instance {
    Ptf(ProbabilityInstance<Rat>),
    Stf(StfInstance),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Ptf(_) => Kind::Ptf,
            Instance::Stf(s) => {
                if s.m() == 1 {
                    Kind::Tf
                } else {
                    Kind::Stf
                }
            }
        }
    }

    pub fn players(&self) -> &[String] {
        match self {
            Instance::Ptf(p) => &p.players,
            Instance::Stf(s) => &s.players,
        }
    }

    pub fn favorite(&self) -> usize {
        match self {
            Instance::Ptf(p) => p.favorite,
            Instance::Stf(s) => s.favorite,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    kind: String,
    players: Vec<String>,
    favorite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tournaments: Option<Vec<Vec<[String; 2]>>>,
}

/// Parses and validates an instance file, requiring the stated kind.
pub fn parse_instance(text: &str, kind: Kind) -> Result<Instance> {
    let inst = parse_any_instance(text)?;
    let found = match (&inst, kind) {
        (Instance::Ptf(_), Kind::Ptf) => true,
        (Instance::Stf(s), Kind::Tf) => s.m() == 1,
        (Instance::Stf(_), Kind::Stf) => true,
        _ => false,
    };
    if !found {
        return Err(Error::Parse(format!(
            "expected a {} instance, file declares something else",
            kind.as_str()
        )));
    }
    Ok(inst)
}

/// Parses whatever kind the file declares.
pub fn parse_any_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    let kind = Kind::from_str(&raw.kind)?;
    validate_players(&raw.players)?;
    let n = raw.players.len();
    let favorite = raw
        .players
        .iter()
        .position(|p| *p == raw.favorite)
        .ok_or_else(|| Error::Parse(format!("favorite {:?} not in player list", raw.favorite)))?;
    let index_of = |name: &str| -> Result<usize> {
        raw.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::Parse(format!("unknown player {name:?}")))
    };

    match kind {
        Kind::Ptf => {
            let rows = raw
                .matrix
                .ok_or_else(|| Error::Parse("ptf instance requires a matrix".into()))?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("matrix is not {n}x{n}")));
            }
            let mut matrix = vec![vec![Rat::zero(); n]; n];
            for (i, row) in rows.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    matrix[i][j] = parse_rational(cell)?;
                }
            }
            let target = parse_rational(
                &raw.target
                    .ok_or_else(|| Error::Parse("ptf instance requires a target".into()))?,
            )?;
            let inst = ProbabilityInstance { players: raw.players, matrix, target, favorite };
            inst.validate()?;
            Ok(Instance::Ptf(inst))
        }
        Kind::Tf | Kind::Stf => {
            let lists = raw
                .tournaments
                .ok_or_else(|| Error::Parse("stf instance requires tournaments".into()))?;
            if kind == Kind::Tf && lists.len() != 1 {
                return Err(Error::Parse("tf instance must have exactly one tournament".into()));
            }
            let mut tournaments = Vec::with_capacity(lists.len());
            for arcs in &lists {
                let mut pairs = Vec::with_capacity(arcs.len());
                for [w, l] in arcs {
                    pairs.push((index_of(w)?, index_of(l)?));
                }
                tournaments.push(TournamentDigraph::from_arcs(n, pairs)?);
            }
            Ok(Instance::Stf(StfInstance::new(raw.players, tournaments, favorite)?))
        }
    }
}

/// Serializes an instance back to the file format. Rationals are emitted in
/// canonical `a/b` form; `serialize(parse(text))` parses to an equal instance.
pub fn serialize_instance(inst: &Instance) -> String {
    let raw = match inst {
        Instance::Ptf(p) => RawInstance {
            kind: "ptf".into(),
            players: p.players.clone(),
            favorite: p.players[p.favorite].clone(),
            matrix: Some(
                p.matrix
                    .iter()
                    .map(|row| row.iter().map(format_rational).collect())
                    .collect(),
            ),
            target: Some(format_rational(&p.target)),
            tournaments: None,
        },
        Instance::Stf(s) => RawInstance {
            kind: if s.m() == 1 { "tf" } else { "stf" }.into(),
            players: s.players.clone(),
            favorite: s.players[s.favorite].clone(),
            matrix: None,
            target: None,
            tournaments: Some(
                s.tournaments
                    .iter()
                    .map(|t| {
                        t.arcs()
                            .into_iter()
                            .map(|(u, v)| [s.players[u].clone(), s.players[v].clone()])
                            .collect()
                    })
                    .collect(),
            ),
        },
    };
    serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational as pr;

    fn two_player_ptf() -> String {
        r#"{
            "kind": "ptf",
            "players": ["a", "b"],
            "favorite": "a",
            "matrix": [["0", "7/10"], ["3/10", "0"]],
            "target": "7/10"
        }"#
        .to_string()
    }

    #[test]
    fn parses_minimal_ptf() {
        let inst = parse_instance(&two_player_ptf(), Kind::Ptf).unwrap();
        match inst {
            Instance::Ptf(p) => {
                assert_eq!(p.n(), 2);
                assert_eq!(p.matrix[0][1], pr("7/10").unwrap());
                assert_eq!(p.target, pr("7/10").unwrap());
                assert_eq!(p.favorite, 0);
            }
            _ => panic!("expected ptf"),
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        let text = r#"{
            "kind": "ptf",
            "players": ["a", "b", "c"],
            "favorite": "a",
            "matrix": [["0","1","1"],["0","0","1"],["0","0","0"]],
            "target": "1"
        }"#;
        let err = parse_any_instance(text).unwrap_err();
        assert!(err.to_string().contains("power of 2"), "{err}");
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let text = r#"{
            "kind": "ptf",
            "players": ["a", "b"],
            "favorite": "a",
            "matrix": [["0", "0.6"], ["0.6", "0"]],
            "target": "1/2"
        }"#;
        let err = parse_any_instance(text).unwrap_err();
        assert!(err.to_string().contains("sum to 1"), "{err}");
    }

    #[test]
    fn rejects_unknown_favorite_and_bad_target() {
        let bad_fav = two_player_ptf().replace("\"favorite\": \"a\"", "\"favorite\": \"z\"");
        assert!(parse_any_instance(&bad_fav).is_err());
        let bad_target = two_player_ptf().replace("\"target\": \"7/10\"", "\"target\": \"11/10\"");
        assert!(parse_any_instance(&bad_target).is_err());
    }

    #[test]
    fn certainty_digraph_of_integral_matrix_is_tournament() {
        let text = r#"{
            "kind": "ptf",
            "players": ["a", "b", "c", "d"],
            "favorite": "a",
            "matrix": [
                ["0","1","1","1"],
                ["0","0","1","1"],
                ["0","0","0","1"],
                ["0","0","0","0"]
            ],
            "target": "1"
        }"#;
        let Instance::Ptf(p) = parse_any_instance(text).unwrap() else { panic!() };
        let c = p.certainty_digraph();
        assert!(c.is_tournament());
        assert_eq!(p.degree_of_uncertainty(), 0);
    }

    #[test]
    fn all_half_matrix_has_empty_certainty_digraph() {
        let n = 4;
        let half = pr("1/2").unwrap();
        let matrix = vec![vec![half; n]; n];
        let inst = ProbabilityInstance {
            players: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            matrix,
            target: pr("1/4").unwrap(),
            favorite: 0,
        };
        inst.validate().unwrap();
        assert_eq!(inst.certainty_digraph().arc_count(), 0);
        assert_eq!(inst.degree_of_uncertainty(), n * (n - 1) / 2);
    }

    #[test]
    fn one_fractional_pair_on_four_players() {
        let Instance::Ptf(mut p) = parse_any_instance(
            r#"{
            "kind": "ptf",
            "players": ["a", "b", "c", "d"],
            "favorite": "a",
            "matrix": [
                ["0","1","1","1"],
                ["0","0","1","1"],
                ["0","0","0","1"],
                ["0","0","0","0"]
            ],
            "target": "1"
        }"#,
        )
        .unwrap() else {
            panic!()
        };
        p.matrix[2][3] = pr("2/5").unwrap();
        p.matrix[3][2] = pr("3/5").unwrap();
        p.validate().unwrap();
        assert_eq!(p.certainty_digraph().arc_count(), 5);
        assert_eq!(p.degree_of_uncertainty(), 1);
    }

    #[test]
    fn shared_structure_single_tournament() {
        let t = TournamentDigraph::transitive(&[0, 1, 2, 3]);
        let stf = StfInstance::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![t.clone()],
            0,
        )
        .unwrap();
        let params = shared_structure(&stf, 20).unwrap();
        assert_eq!(params.shared_arcs.arc_count(), 6);
        assert_eq!(params.private_arc_count, 0);
        assert_eq!(params.shared_fas_size(), 0);
    }

    #[test]
    fn one_reversed_arc_gives_one_private_pair() {
        let t1 = TournamentDigraph::transitive(&[0, 1, 2, 3]);
        let mut t2 = t1.clone();
        t2.flip(0, 1);
        let stf = StfInstance::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![t1, t2],
            0,
        )
        .unwrap();
        let params = shared_structure(&stf, 20).unwrap();
        assert_eq!(params.private_arc_count, 1);
        assert_eq!(
            params.shared_arcs.arc_count() + params.private_arc_count,
            4 * 3 / 2
        );
    }

    #[test]
    fn duplicate_tournaments_are_deduplicated() {
        let t = TournamentDigraph::transitive(&[0, 1]);
        let stf =
            StfInstance::new(vec!["a".into(), "b".into()], vec![t.clone(), t], 0).unwrap();
        assert_eq!(stf.m(), 1);
    }

    #[test]
    fn stf_round_trip() {
        let t1 = TournamentDigraph::transitive(&[2, 0, 1, 3]);
        let mut t2 = t1.clone();
        t2.flip(1, 3);
        let stf = StfInstance::new(
            vec!["p1".into(), "p2".into(), "p3".into(), "p4".into()],
            vec![t1, t2],
            2,
        )
        .unwrap();
        let text = serialize_instance(&Instance::Stf(stf.clone()));
        let reparsed = parse_instance(&text, Kind::Stf).unwrap();
        match reparsed {
            Instance::Stf(s) => assert_eq!(s, stf),
            _ => panic!("expected stf"),
        }
    }

    #[test]
    fn ptf_round_trip() {
        let Instance::Ptf(p) = parse_any_instance(&two_player_ptf()).unwrap() else { panic!() };
        let text = serialize_instance(&Instance::Ptf(p.clone()));
        let Instance::Ptf(q) = parse_any_instance(&text).unwrap() else { panic!() };
        assert_eq!(p, q);
    }
}
