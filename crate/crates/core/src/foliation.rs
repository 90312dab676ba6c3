//! Tile graphs of the singular foliation induced on a splitting sphere or a
//! twice-punctured sphere.
//!
//! Each vertex is a tile: an extremum disc (`T1`), a saddle (`T3`) or a
//! punctured disc (`Tp`). Edges join tiles sharing a boundary circle and
//! point from the higher tile to the lower one. Reductions remove a saddle
//! together with an extremum tile, lowering the complexity `|T3|` by one.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Height = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("invalid tiling: {0}")]
    Invalid(String),
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("vertex {id} cannot be removed: {reason}")]
    NotRemovable { id: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("reduction is stuck: {0}")]
    Stuck(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileType {
    #[serde(rename = "T1min")]
    T1Min,
    #[serde(rename = "T1max")]
    T1Max,
    #[serde(rename = "T3up")]
    T3Up,
    #[serde(rename = "T3down")]
    T3Down,
    #[serde(rename = "Tp")]
    Tp,
}

impl TileType {
    pub fn is_extremum(self) -> bool {
        matches!(self, TileType::T1Min | TileType::T1Max)
    }

    pub fn is_saddle(self) -> bool {
        matches!(self, TileType::T3Up | TileType::T3Down)
    }

    /// Required `(in, out)` degrees; `None` for a puncture, which may face either way.
    fn degrees(self) -> Option<(usize, usize)> {
        match self {
            TileType::T1Max => Some((0, 1)),
            TileType::T1Min => Some((1, 0)),
            TileType::T3Down => Some((1, 2)),
            TileType::T3Up => Some((2, 1)),
            TileType::Tp => None,
        }
    }

    fn from_degrees(inward: usize, outward: usize) -> Option<TileType> {
        match (inward, outward) {
            (0, 1) => Some(TileType::T1Max),
            (1, 0) => Some(TileType::T1Min),
            (1, 2) => Some(TileType::T3Down),
            (2, 1) => Some(TileType::T3Up),
            _ => None,
        }
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TileType::T1Min => "T1min",
            TileType::T1Max => "T1max",
            TileType::T3Up => "T3up",
            TileType::T3Down => "T3down",
            TileType::Tp => "Tp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Sphere,
    TwicePunctured,
}

mod height_serde {
    use super::Height;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(h: &Height, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", h.numer(), h.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Height, D::Error> {
        let text = String::deserialize(d)?;
        let bad = || D::Error::custom(format!("height `{text}` is not of the form p/q"));
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (text.trim().parse().map_err(|_| bad())?, 1),
        };
        if q == 0 {
            return Err(bad());
        }
        Ok(Height::new(p, q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub id: usize,
    #[serde(rename = "type")]
    pub tile: TileType,
    #[serde(rename = "h", with = "height_serde")]
    pub height: Height,
    #[serde(default)]
    pub nested: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileGraph {
    pub kind: SurfaceKind,
    pub vertices: Vec<Tile>,
    /// `(higher, lower)` pairs.
    pub edges: Vec<(usize, usize)>,
}

/// One removed saddle–extremum pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub removed_t1: usize,
    pub removed_t3: usize,
    pub reconnect_edge: (usize, usize),
    /// The extremum was unnested by a pocket move first.
    #[serde(default)]
    pub unnested: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub t1_max: usize,
    pub t1_min: usize,
    pub t3_up: usize,
    pub t3_down: usize,
    pub tp: usize,
}

impl Census {
    pub fn t1(&self) -> usize {
        self.t1_max + self.t1_min
    }

    pub fn t3(&self) -> usize {
        self.t3_up + self.t3_down
    }
}

#[derive(Debug, Clone, Copy)]
struct Link {
    other: usize,
    outgoing: bool,
}

impl TileGraph {
    pub fn tile(&self, id: usize) -> Option<&Tile> {
        self.vertices.iter().find(|t| t.id == id)
    }

    fn tile_mut(&mut self, id: usize) -> Option<&mut Tile> {
        self.vertices.iter_mut().find(|t| t.id == id)
    }

    fn kind_of(&self, id: usize) -> TileType {
        self.tile(id).expect("known vertex").tile
    }

    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for t in &self.vertices {
            match t.tile {
                TileType::T1Max => c.t1_max += 1,
                TileType::T1Min => c.t1_min += 1,
                TileType::T3Up => c.t3_up += 1,
                TileType::T3Down => c.t3_down += 1,
                TileType::Tp => c.tp += 1,
            }
        }
        c
    }

    fn links(&self) -> BTreeMap<usize, Vec<Link>> {
        let mut out: BTreeMap<usize, Vec<Link>> = self.vertices.iter().map(|t| (t.id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            if let Some(l) = out.get_mut(&a) {
                l.push(Link { other: b, outgoing: true });
            }
            if let Some(l) = out.get_mut(&b) {
                l.push(Link { other: a, outgoing: false });
            }
        }
        out
    }

    /// Neighbour ids of `id`, in edge order.
    pub fn neighbours(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == id { Some(b) } else if b == id { Some(a) } else { None })
            .collect()
    }

    /// The splitting sphere in standard position: a max tile over a min tile.
    pub fn standard_sphere() -> TileGraph {
        TileGraph {
            kind: SurfaceKind::Sphere,
            vertices: vec![
                Tile { id: 0, tile: TileType::T1Max, height: Height::from_integer(1), nested: false },
                Tile { id: 1, tile: TileType::T1Min, height: Height::from_integer(0), nested: false },
            ],
            edges: vec![(0, 1)],
        }
    }

    /// The twice-punctured sphere in standard position: a max tile and a
    /// puncture on a down saddle, a min tile and a puncture on an up saddle.
    pub fn standard_punctured() -> TileGraph {
        let t = |id, tile, h| Tile { id, tile, height: Height::from_integer(h), nested: false };
        TileGraph {
            kind: SurfaceKind::TwicePunctured,
            vertices: vec![
                t(0, TileType::T1Max, 5),
                t(1, TileType::T3Down, 4),
                t(2, TileType::Tp, 3),
                t(3, TileType::T3Up, 1),
                t(4, TileType::Tp, 2),
                t(5, TileType::T1Min, 0),
            ],
            edges: vec![(0, 1), (1, 2), (1, 3), (4, 3), (3, 5)],
        }
    }

    pub fn is_standard(&self) -> bool {
        match self.kind {
            SurfaceKind::Sphere => self.vertices.len() == 2 && check(self).is_ok(),
            SurfaceKind::TwicePunctured => is_standard_punctured(self),
        }
    }
}

fn is_standard_punctured(g: &TileGraph) -> bool {
    if g.vertices.len() != 6 || check(g).is_err() {
        return false;
    }
    let c = g.census();
    if (c.t1_max, c.t1_min, c.t3(), c.tp) != (1, 1, 2, 2) {
        return false;
    }
    // each saddle carries one puncture and one extremum
    g.vertices.iter().filter(|t| t.tile.is_saddle()).all(|s| {
        let kinds: Vec<TileType> = g.neighbours(s.id).into_iter().map(|v| g.kind_of(v)).collect();
        kinds.iter().filter(|k| **k == TileType::Tp).count() == 1 && kinds.iter().filter(|k| k.is_extremum()).count() == 1
    })
}

fn invalid(msg: impl Into<String>) -> TilingError {
    TilingError::Invalid(msg.into())
}

/// Every structural invariant, reported with the first violation found.
pub fn check(g: &TileGraph) -> Result<(), TilingError> {
    let mut ids = BTreeSet::new();
    for t in &g.vertices {
        if !ids.insert(t.id) {
            return Err(invalid(format!("duplicate vertex id {}", t.id)));
        }
        if t.nested && !t.tile.is_extremum() {
            return Err(invalid(format!("vertex {} is a {} and cannot be nested", t.id, t.tile)));
        }
    }
    if g.vertices.is_empty() {
        return Err(invalid("no tiles"));
    }
    let mut seen_edges = BTreeSet::new();
    for &(a, b) in &g.edges {
        if !ids.contains(&a) || !ids.contains(&b) {
            return Err(invalid(format!("edge ({a}, {b}) has an unknown endpoint")));
        }
        if a == b || !seen_edges.insert((a.min(b), a.max(b))) {
            return Err(invalid(format!("edge ({a}, {b}) is a loop or repeated")));
        }
        let (ha, hb) = (g.tile(a).expect("known").height, g.tile(b).expect("known").height);
        if ha <= hb {
            return Err(invalid(format!("edge ({a}, {b}) does not point downward")));
        }
    }
    if g.edges.len() + 1 != g.vertices.len() || !connected(g) {
        return Err(invalid("underlying graph is not a tree"));
    }
    for (id, links) in g.links() {
        let kind = g.kind_of(id);
        let outward = links.iter().filter(|l| l.outgoing).count();
        let inward = links.len() - outward;
        match kind.degrees() {
            Some(expected) if expected != (inward, outward) => {
                return Err(invalid(format!(
                    "{kind} vertex {id} has {inward} in-edges and {outward} out-edges, expected {expected:?}"
                )));
            }
            None if links.len() != 1 => return Err(invalid(format!("puncture {id} has degree {}", links.len()))),
            _ => {}
        }
    }
    let mut saddle_heights = BTreeSet::new();
    for t in g.vertices.iter().filter(|t| t.tile.is_saddle()) {
        if !saddle_heights.insert(t.height) {
            return Err(invalid(format!("two saddles share height {}", t.height)));
        }
    }
    let c = g.census();
    // Euler characteristic: each T1 contributes 1, each T3 contributes -1
    let chi = c.t1() as i64 - c.t3() as i64;
    match g.kind {
        SurfaceKind::Sphere if chi != 2 || c.tp != 0 => {
            return Err(invalid(format!("sphere census |T1|={} |T3|={} |Tp|={}", c.t1(), c.t3(), c.tp)));
        }
        SurfaceKind::TwicePunctured if chi != 0 || c.tp != 2 => {
            return Err(invalid(format!("punctured census |T1|={} |T3|={} |Tp|={}", c.t1(), c.t3(), c.tp)));
        }
        _ => {}
    }
    if c.t1_max == 0 || c.t1_min == 0 {
        return Err(invalid("the height function needs a maximum and a minimum tile"));
    }
    Ok(())
}

fn connected(g: &TileGraph) -> bool {
    let links = g.links();
    let start = g.vertices[0].id;
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for l in &links[&v] {
            if seen.insert(l.other) {
                queue.push_back(l.other);
            }
        }
    }
    seen.len() == g.vertices.len()
}

pub fn validate(g: &TileGraph) -> bool {
    check(g).is_ok()
}

/// `c(S) = |T3|`.
pub fn complexity(g: &TileGraph) -> Result<usize, TilingError> {
    check(g)?;
    Ok(g.census().t3())
}

/// The saddle an extremum `v` can be cancelled against: a min tile on a
/// down saddle or a max tile on an up saddle.
fn pair_partner(g: &TileGraph, v: usize) -> Option<usize> {
    let t = g.tile(v)?;
    let [n] = g.neighbours(v)[..] else { return None };
    let partner = g.kind_of(n);
    let ok = matches!((t.tile, partner), (TileType::T1Min, TileType::T3Down) | (TileType::T1Max, TileType::T3Up));
    ok.then_some(n)
}

fn candidates(g: &TileGraph, nested: bool) -> impl Iterator<Item = usize> + '_ {
    g.vertices
        .iter()
        .filter(move |t| t.tile.is_extremum() && t.nested == nested)
        .filter(|t| pair_partner(g, t.id).is_some())
        .map(|t| t.id)
}

/// Smallest-id unnested extremum adjacent to a saddle of the matching
/// direction. Absent when there is no saddle, or when every such extremum
/// is still nested (see [`find_nested_candidate`] and [`unnest`]).
pub fn find_removable(g: &TileGraph) -> Result<Option<usize>, TilingError> {
    check(g)?;
    Ok(candidates(g, false).next())
}

/// Smallest-id nested extremum that would be removable after [`unnest`].
pub fn find_nested_candidate(g: &TileGraph) -> Result<Option<usize>, TilingError> {
    check(g)?;
    Ok(candidates(g, true).next())
}

pub fn unnest(g: &TileGraph, v: usize) -> Result<TileGraph, TilingError> {
    let t = g.tile(v).ok_or(TilingError::UnknownVertex(v))?;
    if !t.tile.is_extremum() || !t.nested {
        return Err(TilingError::Precondition(format!("vertex {v} is not a nested extremum")));
    }
    let mut out = g.clone();
    out.tile_mut(v).expect("present").nested = false;
    Ok(out)
}

fn without(g: &TileGraph, gone: [usize; 2], add: (usize, usize)) -> TileGraph {
    let mut out = g.clone();
    out.vertices.retain(|t| !gone.contains(&t.id));
    out.edges.retain(|(a, b)| !gone.contains(a) && !gone.contains(b));
    out.edges.push(add);
    out
}

/// Cancel the extremum `v` against its saddle and join the saddle's two
/// remaining neighbours.
pub fn remove_pair(g: &TileGraph, v: usize) -> Result<(TileGraph, ReductionStep), TilingError> {
    check(g)?;
    let t = g.tile(v).ok_or(TilingError::UnknownVertex(v))?;
    let not_removable = |reason: &str| TilingError::NotRemovable { id: v, reason: reason.into() };
    if t.nested {
        return Err(not_removable("its level curve is nested"));
    }
    let n = pair_partner(g, v).ok_or_else(|| not_removable("not an extremum on a saddle of matching direction"))?;
    let links = g.links();
    let others: Vec<Link> = links[&n].iter().copied().filter(|l| l.other != v).collect();
    let upper = others.iter().find(|l| !l.outgoing).expect("saddle keeps one in-edge").other;
    let lower = others.iter().find(|l| l.outgoing).expect("saddle keeps one out-edge").other;
    let out = without(g, [v, n], (upper, lower));
    check(&out).map_err(|e| not_removable(&format!("the result is invalid ({e})")))?;
    Ok((out, ReductionStep { removed_t1: v, removed_t3: n, reconnect_edge: (upper, lower), unnested: false }))
}

/// Cancel extremum `v` against saddle `n`, which also carries a puncture:
/// the puncture takes the saddle's place and height.
fn remove_through_puncture(g: &TileGraph, v: usize, n: usize) -> Result<(TileGraph, ReductionStep), TilingError> {
    let links = g.links();
    let puncture = links[&n]
        .iter()
        .find(|l| g.kind_of(l.other) == TileType::Tp)
        .ok_or_else(|| TilingError::Precondition(format!("saddle {n} carries no puncture")))?
        .other;
    let third = links[&n].iter().find(|l| l.other != v && l.other != puncture).expect("degree three");
    let edge = if third.outgoing { (puncture, third.other) } else { (third.other, puncture) };
    let mut out = without(g, [v, n], edge);
    out.tile_mut(puncture).expect("present").height = g.tile(n).expect("present").height;
    check(&out).map_err(|e| TilingError::NotRemovable { id: v, reason: format!("the result is invalid ({e})") })?;
    Ok((out, ReductionStep { removed_t1: v, removed_t3: n, reconnect_edge: edge, unnested: false }))
}

/// Remove `saddle`, which touches a puncture, together with an extremum.
///
/// With one puncture neighbour the adjacent extremum goes. With two, the
/// nearest cancellable pair beyond the third neighbour goes instead.
/// Returns `None` on the six-tile standard configuration.
pub fn remove_punctured_adjacent(
    g: &TileGraph,
    saddle: usize,
) -> Result<Option<(TileGraph, ReductionStep)>, TilingError> {
    check(g)?;
    if g.kind != SurfaceKind::TwicePunctured {
        return Err(TilingError::Precondition("not a punctured tiling".into()));
    }
    let s = g.tile(saddle).ok_or(TilingError::UnknownVertex(saddle))?;
    if !s.tile.is_saddle() {
        return Err(TilingError::Precondition(format!("vertex {saddle} is not a saddle")));
    }
    let nbrs = g.neighbours(saddle);
    let punctures = nbrs.iter().filter(|&&v| g.kind_of(v) == TileType::Tp).count();
    let extrema: Vec<usize> = nbrs.iter().copied().filter(|&v| g.kind_of(v).is_extremum()).collect();
    if punctures == 0 || (punctures == 1 && extrema.is_empty()) {
        return Err(TilingError::Precondition(format!("saddle {saddle} does not touch both a puncture and an extremum")));
    }
    if g.vertices.len() <= 6 {
        return Ok(None);
    }
    if punctures == 1 {
        let mut last = None;
        for v in extrema {
            match remove_through_puncture(g, v, saddle) {
                Ok(done) => return Ok(Some(done)),
                Err(e) => last = Some(e),
            }
        }
        return Err(last.expect("at least one extremum"));
    }
    let third = nbrs.iter().copied().find(|&v| g.kind_of(v) != TileType::Tp).expect("degree three");
    let links = g.links();
    let mut seen = BTreeSet::from([saddle, third]);
    let mut queue = VecDeque::from([third]);
    while let Some(w) = queue.pop_front() {
        if g.kind_of(w).is_saddle() {
            for v in g.neighbours(w) {
                if let Ok(done) = remove_unnesting(g, v) {
                    return Ok(Some(done));
                }
            }
        }
        for l in &links[&w] {
            if seen.insert(l.other) {
                queue.push_back(l.other);
            }
        }
    }
    Err(TilingError::Stuck(format!("no cancellable pair beyond saddle {saddle}")))
}

fn remove_unnesting(g: &TileGraph, v: usize) -> Result<(TileGraph, ReductionStep), TilingError> {
    let t = g.tile(v).ok_or(TilingError::UnknownVertex(v))?;
    if t.nested && pair_partner(g, v).is_some() {
        let (out, mut step) = remove_pair(&unnest(g, v)?, v)?;
        step.unnested = true;
        Ok((out, step))
    } else {
        remove_pair(g, v)
    }
}

/// Reduce to the standard configuration, one saddle per step.
pub fn reduce_to_standard(g: &TileGraph) -> Result<(TileGraph, Vec<ReductionStep>), TilingError> {
    check(g)?;
    match g.kind {
        SurfaceKind::Sphere => reduce_sphere(g),
        SurfaceKind::TwicePunctured => reduce_punctured(g),
    }
}

fn reduce_sphere(g: &TileGraph) -> Result<(TileGraph, Vec<ReductionStep>), TilingError> {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while cur.census().t3() > 0 {
        let v = match candidates(&cur, false).next() {
            Some(v) => v,
            None => candidates(&cur, true)
                .next()
                .ok_or_else(|| TilingError::Stuck("no extremum sits on a saddle of matching direction".into()))?,
        };
        let (next, step) = remove_unnesting(&cur, v)?;
        cur = next;
        steps.push(step);
    }
    Ok((cur, steps))
}

fn punctured_moves(g: &TileGraph) -> Vec<(TileGraph, ReductionStep)> {
    let mut out = Vec::new();
    for t in g.vertices.iter().filter(|t| t.tile.is_extremum()) {
        if let Ok(done) = remove_unnesting(g, t.id) {
            out.push(done);
            continue;
        }
        let [n] = g.neighbours(t.id)[..] else { continue };
        if g.kind_of(n).is_saddle() {
            if let Ok(done) = remove_through_puncture(g, t.id, n) {
                out.push(done);
            }
        }
    }
    out
}

fn state_key(g: &TileGraph) -> Vec<(usize, usize)> {
    let mut e = g.edges.clone();
    e.sort();
    e
}

fn reduce_punctured(g: &TileGraph) -> Result<(TileGraph, Vec<ReductionStep>), TilingError> {
    let mut dead = HashSet::new();
    let mut steps = Vec::new();
    match search_punctured(g, &mut steps, &mut dead) {
        Some(done) => Ok((done, steps)),
        None => Err(TilingError::Stuck("no removal sequence reaches the standard configuration".into())),
    }
}

fn search_punctured(
    g: &TileGraph,
    steps: &mut Vec<ReductionStep>,
    dead: &mut HashSet<Vec<(usize, usize)>>,
) -> Option<TileGraph> {
    if g.vertices.len() <= 6 {
        return is_standard_punctured(g).then(|| g.clone());
    }
    if dead.contains(&state_key(g)) {
        return None;
    }
    for (next, step) in punctured_moves(g) {
        steps.push(step);
        if let Some(done) = search_punctured(&next, steps, dead) {
            return Some(done);
        }
        steps.pop();
    }
    dead.insert(state_key(g));
    None
}

/// A random valid tiling with `size` extra saddles over the standard
/// configuration, built by inverting reductions. About a quarter of the new
/// extrema are nested.
pub fn random_tiling(kind: SurfaceKind, size: usize, seed: u64) -> TileGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = match kind {
        SurfaceKind::Sphere => TileGraph::standard_sphere(),
        SurfaceKind::TwicePunctured => TileGraph::standard_punctured(),
    };
    let mut nested = vec![false; base.vertices.len()];
    let mut edges = base.edges.clone();
    let mut count = base.vertices.len();
    let punctures: Vec<usize> = base.vertices.iter().filter(|t| t.tile == TileType::Tp).map(|t| t.id).collect();
    for _ in 0..size {
        let (n, v) = (count, count + 1);
        count += 2;
        nested.extend([false, rng.gen_bool(0.25)]);
        if !punctures.is_empty() && rng.gen_bool(0.3) {
            // a saddle grows between a puncture and its neighbour
            let p = punctures[rng.gen_range(0..punctures.len())];
            let at = edges.iter().position(|&(a, b)| a == p || b == p).expect("puncture has an edge");
            let (a, b) = edges[at];
            let saddle_above = a == p;
            edges[at] = if saddle_above { (n, b) } else { (a, n) };
            // (puncture above n, extremum above n), keeping n a saddle
            let options: [(bool, bool); 3] = if saddle_above {
                [(true, false), (false, true), (true, true)]
            } else {
                [(true, false), (false, true), (false, false)]
            };
            let (puncture_above, extremum_above) = options[rng.gen_range(0..options.len())];
            edges.push(if puncture_above { (p, n) } else { (n, p) });
            edges.push(if extremum_above { (v, n) } else { (n, v) });
        } else {
            let at = rng.gen_range(0..edges.len());
            let (a, b) = edges[at];
            edges[at] = (a, n);
            edges.push((n, b));
            edges.push(if rng.gen_bool(0.5) { (n, v) } else { (v, n) });
        }
    }
    assign(kind, count, &edges, &nested, &punctures)
}

/// Types from degrees and integer heights from a topological order
/// (smallest id first among ties).
fn assign(kind: SurfaceKind, count: usize, edges: &[(usize, usize)], nested: &[bool], punctures: &[usize]) -> TileGraph {
    let mut indeg = vec![0usize; count];
    let mut outdeg = vec![0usize; count];
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); count];
    for &(a, b) in edges {
        outdeg[a] += 1;
        indeg[b] += 1;
        down[a].push(b);
    }
    let mut pending = indeg.clone();
    let mut ready: BTreeSet<usize> = (0..count).filter(|&v| pending[v] == 0).collect();
    let mut height = vec![0i64; count];
    let mut rank = count as i64;
    while let Some(v) = ready.pop_first() {
        rank -= 1;
        height[v] = rank;
        for &w in &down[v] {
            pending[w] -= 1;
            if pending[w] == 0 {
                ready.insert(w);
            }
        }
    }
    let vertices = (0..count)
        .map(|id| {
            let tile = if punctures.contains(&id) {
                TileType::Tp
            } else {
                TileType::from_degrees(indeg[id], outdeg[id]).expect("generator keeps valences")
            };
            Tile { id, tile, height: Height::from_integer(height[id]), nested: nested[id] && tile.is_extremum() }
        })
        .collect();
    TileGraph { kind, vertices, edges: edges.to_vec() }
}
