//! Beam search over plat words.
//!
//! Children are generated in parallel but collected in beam order, then
//! stably sorted by `(score, length, word)`, so the result never depends on
//! scheduling. States are deduplicated by their freely reduced word.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::braid::{free_reduce_letters, Letter};
use crate::moves::{
    apply_double_coset, apply_flip, bridge_twist, braid_relation, hilden_letters, End, FlipCase, HildenWord,
    IsotopyRewrite, MoveRecord,
};
use crate::plat::PlatPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub beam_width: usize,
    pub max_depth: usize,
    pub max_word_length: usize,
    pub time_cap: Duration,
}

/// Which move families a search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveSet {
    /// Multiplication by a Hilden generator or its inverse at either end.
    pub hilden: bool,
    /// `σ_{2i+1}^{±1}` at either end, as a pocket move and a substitution.
    pub bridge_twists: bool,
    /// Far commutation and braid relations.
    pub isotopy: bool,
    /// Flips at every split point, kept when they cancel letters.
    pub flips: bool,
}

impl MoveSet {
    pub const DOUBLE_COSET: MoveSet = MoveSet { hilden: true, bridge_twists: false, isotopy: false, flips: false };
    pub const NO_FLIPS: MoveSet = MoveSet { hilden: true, bridge_twists: true, isotopy: true, flips: false };
    pub const WITH_FLIPS: MoveSet = MoveSet { hilden: true, bridge_twists: true, isotopy: true, flips: true };
}

/// Records, resulting plat, and the longest word passed through on the way.
pub(crate) type Step = (Vec<MoveRecord>, PlatPresentation, usize);

fn reduced(records: &mut Vec<MoveRecord>, p: PlatPresentation) -> PlatPresentation {
    let letters = free_reduce_letters(p.word().letters());
    if letters.len() == p.word().len() {
        return p;
    }
    records.push(MoveRecord::IsotopyRewrite { rewrite: IsotopyRewrite::FreeReduce });
    PlatPresentation::from_letters(p.bridge_index(), letters).expect("reduction keeps strands")
}

/// All one-move successors of `p`, each followed by free reduction.
pub(crate) fn neighbours(p: &PlatPresentation, set: &MoveSet) -> Vec<Step> {
    let n = p.bridge_index();
    let m = p.strands();
    let letters = p.word().letters();
    let mut out = Vec::new();
    if set.hilden {
        for g in hilden_letters(n) {
            for l in [g, g.inverted()] {
                let h = HildenWord::single(m, l).expect("generator of this plat");
                for end in [End::Top, End::Bottom] {
                    let q = apply_double_coset(p, end, &h).expect("strands match");
                    let mut rec = vec![match end {
                        End::Top => MoveRecord::DoubleCosetTop { hilden: h.clone() },
                        End::Bottom => MoveRecord::DoubleCosetBottom { hilden: h.clone() },
                    }];
                    let peak = q.word().len();
                    let q = reduced(&mut rec, q);
                    out.push((rec, q, peak));
                }
            }
        }
    }
    if set.bridge_twists {
        for i in 1..n {
            for positive in [true, false] {
                let h = bridge_twist(n, i, positive).expect("valid twist");
                let from = h.expand().into_letters();
                let to = vec![if positive { Letter::pos(2 * i + 1) } else { Letter::neg(2 * i + 1) }];
                for end in [End::Top, End::Bottom] {
                    let at = if end == End::Top { 0 } else { letters.len() };
                    let mut word = letters.to_vec();
                    word.splice(at..at, to.iter().copied());
                    let q = PlatPresentation::from_letters(n, word).expect("index in range");
                    let peak = letters.len() + from.len();
                    let mut rec = vec![
                        MoveRecord::Pocket { side: end, hilden: h.clone() },
                        MoveRecord::IsotopyRewrite {
                            rewrite: IsotopyRewrite::Substitute { at, from: from.clone(), to: to.clone() },
                        },
                    ];
                    let q = reduced(&mut rec, q);
                    out.push((rec, q, peak));
                }
            }
        }
    }
    if set.isotopy {
        for at in 0..letters.len().saturating_sub(1) {
            if letters[at].index.abs_diff(letters[at + 1].index) >= 2 {
                let mut word = letters.to_vec();
                word.swap(at, at + 1);
                let mut rec = vec![MoveRecord::IsotopyRewrite { rewrite: IsotopyRewrite::Commute { at } }];
                let q = reduced(&mut rec, PlatPresentation::from_letters(n, word).expect("same letters"));
                out.push((rec, q, letters.len()));
            }
        }
        for at in 0..letters.len().saturating_sub(2) {
            if let Some(image) = braid_relation([letters[at], letters[at + 1], letters[at + 2]]) {
                let mut word = letters.to_vec();
                word[at..at + 3].copy_from_slice(&image);
                let mut rec = vec![MoveRecord::IsotopyRewrite { rewrite: IsotopyRewrite::BraidRelation { at } }];
                let q = reduced(&mut rec, PlatPresentation::from_letters(n, word).expect("same indices"));
                out.push((rec, q, letters.len()));
            }
        }
    }
    if set.flips {
        for split_at in 0..=letters.len() {
            for case in FlipCase::ALL {
                for k in case.cuts(n) {
                    for end in [End::Top, End::Bottom] {
                        let q = apply_flip(p, split_at, case, k, end).expect("valid flip");
                        let inserted = q.word().len() - letters.len();
                        if inserted == 0 {
                            continue;
                        }
                        let mut rec = vec![MoveRecord::Flip { split_at, case, k, end }];
                        let q = reduced(&mut rec, q);
                        // only flips that cancel against the word are useful
                        if q.word().len() < letters.len() + inserted {
                            out.push((rec, q, letters.len() + inserted));
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) enum SearchOutcome {
    Solved { plat: PlatPresentation, records: Vec<MoveRecord> },
    Exhausted { plat: PlatPresentation, score: usize },
}

struct Node {
    plat: PlatPresentation,
    score: usize,
    parent: Option<usize>,
    steps: Vec<MoveRecord>,
}

fn path(arena: &[Node], mut at: usize) -> Vec<MoveRecord> {
    let mut chunks = Vec::new();
    loop {
        chunks.push(&arena[at].steps);
        match arena[at].parent {
            Some(p) => at = p,
            None => break,
        }
    }
    chunks.into_iter().rev().flatten().cloned().collect()
}

fn rank(a: &Node, b: &Node) -> std::cmp::Ordering {
    (a.score, a.plat.word().len(), a.plat.word().letters()).cmp(&(b.score, b.plat.word().len(), b.plat.word().letters()))
}

pub(crate) fn beam_search<S, G>(
    start: &PlatPresentation,
    budget: &SearchBudget,
    moves: &MoveSet,
    score: S,
    goal: G,
) -> SearchOutcome
where
    S: Fn(&PlatPresentation) -> usize + Sync,
    G: Fn(&PlatPresentation) -> bool + Sync,
{
    if goal(start) {
        return SearchOutcome::Solved { plat: start.clone(), records: Vec::new() };
    }
    let clock = Instant::now();
    let mut visited: HashSet<Vec<Letter>> = HashSet::new();
    visited.insert(free_reduce_letters(start.word().letters()));
    let mut arena = vec![Node { plat: start.clone(), score: score(start), parent: None, steps: Vec::new() }];
    let mut beam = vec![0usize];
    let mut best = 0usize;
    let score = &score;
    for _ in 0..budget.max_depth {
        if clock.elapsed() > budget.time_cap {
            break;
        }
        let mut children: Vec<Node> = beam
            .par_iter()
            .flat_map_iter(|&at| {
                let node = &arena[at];
                neighbours(&node.plat, moves)
                    .into_iter()
                    .filter(|(_, _, peak)| *peak <= budget.max_word_length)
                    .map(move |(steps, q, _)| Node { score: score(&q), plat: q, parent: Some(at), steps })
            })
            .collect();
        children.sort_by(rank);
        let mut next = Vec::new();
        for child in children {
            if next.len() == budget.beam_width {
                break;
            }
            if !visited.insert(free_reduce_letters(child.plat.word().letters())) {
                continue;
            }
            let solved = goal(&child.plat);
            arena.push(child);
            let at = arena.len() - 1;
            if solved {
                return SearchOutcome::Solved { plat: arena[at].plat.clone(), records: path(&arena, at) };
            }
            next.push(at);
        }
        if next.is_empty() {
            break;
        }
        if rank(&arena[next[0]], &arena[best]).is_lt() {
            best = next[0];
        }
        beam = next;
    }
    let node = &arena[best];
    SearchOutcome::Exhausted { plat: node.plat.clone(), score: node.score }
}
