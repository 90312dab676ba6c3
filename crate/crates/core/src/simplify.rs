//! Bounded search for split and composite plat words at constant bridge
//! index, plus the obscuring harness and move-log verification.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::Letter;
use crate::invariants::{invariant, invariants_equal};
use crate::moves::{
    bridge_twist, braid_relation, hilden_letters, End, FlipCase, HildenWord, IsotopyRewrite, MoveError, MoveLog,
    MoveRecord,
};
use crate::plat::{is_composite_word, is_split_word, PlatPresentation};
use crate::search::{beam_search, MoveSet, SearchBudget, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplifyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search result changed the invariant")]
    OracleMismatch,
    #[error(transparent)]
    Move(#[from] MoveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum SimplifyResult {
    Solved { plat: PlatPresentation, log: MoveLog },
    Exhausted { best: PlatPresentation, score: usize },
}

impl SimplifyResult {
    pub fn is_solved(&self) -> bool {
        matches!(self, SimplifyResult::Solved { .. })
    }
}

/// Fewest occurrences of any `σ_{2i}^{±1}`; zero exactly on split words.
pub fn score_split(p: &PlatPresentation) -> usize {
    (1..p.bridge_index()).map(|i| p.word().count_index(2 * i)).min().unwrap_or(usize::MAX)
}

/// Fewest occurrences of any interior odd generator `σ_{2i+1}^{±1}`.
pub fn score_composite(p: &PlatPresentation) -> usize {
    (1..p.bridge_index().saturating_sub(1)).map(|i| p.word().count_index(2 * i + 1)).min().unwrap_or(usize::MAX)
}

fn run(
    p: &PlatPresentation,
    budget: &SearchBudget,
    moves: &MoveSet,
    score: fn(&PlatPresentation) -> usize,
) -> Result<SimplifyResult, SimplifyError> {
    match beam_search(p, budget, moves, score, |q| score(q) == 0) {
        SearchOutcome::Solved { plat, records } => {
            if !invariants_equal(&invariant(p), &invariant(&plat)) {
                return Err(SimplifyError::OracleMismatch);
            }
            Ok(SimplifyResult::Solved { plat, log: MoveLog { initial: p.clone(), records } })
        }
        SearchOutcome::Exhausted { plat, score, .. } => Ok(SimplifyResult::Exhausted { best: plat, score }),
    }
}

/// Search for a split word using braid isotopy, pocket moves and double
/// coset moves.
pub fn simplify_split(p: &PlatPresentation, budget: &SearchBudget) -> Result<SimplifyResult, SimplifyError> {
    simplify_split_with(p, budget, &MoveSet::NO_FLIPS)
}

pub fn simplify_split_with(
    p: &PlatPresentation,
    budget: &SearchBudget,
    moves: &MoveSet,
) -> Result<SimplifyResult, SimplifyError> {
    if p.bridge_index() < 2 {
        return Err(SimplifyError::Precondition("split detection needs bridge index at least 2".into()));
    }
    debug_assert_eq!(is_split_word(p).is_some(), score_split(p) == 0);
    run(p, budget, moves, score_split)
}

/// Search for a composite word, with flips added to the split move set.
pub fn simplify_composite(p: &PlatPresentation, budget: &SearchBudget) -> Result<SimplifyResult, SimplifyError> {
    if p.bridge_index() < 3 {
        return Err(SimplifyError::Precondition("composite detection needs bridge index at least 3".into()));
    }
    debug_assert_eq!(is_composite_word(p).is_some(), score_composite(p) == 0);
    run(p, budget, &MoveSet::WITH_FLIPS, score_composite)
}

/// True when the log moves only inside the double coset: Hilden
/// multiplications and free reduction.
pub fn is_double_coset_log(log: &MoveLog) -> bool {
    log.records.iter().all(|r| {
        r.is_double_coset() || matches!(r, MoveRecord::IsotopyRewrite { rewrite: IsotopyRewrite::FreeReduce })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObscureMode {
    /// Hilden multiplications only.
    DoubleCoset,
    /// Hilden multiplications, bridge twists and braid isotopy.
    #[default]
    NoFlips,
    /// As `NoFlips`, plus flips.
    WithFlips,
}

/// `k` seeded random moves from the move set without flips.
pub fn obscure(p: &PlatPresentation, k: usize, seed: u64) -> Result<(PlatPresentation, MoveLog), SimplifyError> {
    obscure_with(p, k, seed, ObscureMode::NoFlips)
}

pub fn obscure_with(
    p: &PlatPresentation,
    k: usize,
    seed: u64,
    mode: ObscureMode,
) -> Result<(PlatPresentation, MoveLog), SimplifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = MoveLog::new(p.clone());
    let mut cur = p.clone();
    for _ in 0..k {
        let record = random_move(&cur, mode, &mut rng);
        cur = record.apply(&cur)?;
        log.records.push(record);
    }
    Ok((cur, log))
}

fn random_end(rng: &mut ChaCha8Rng) -> End {
    if rng.gen_bool(0.5) {
        End::Top
    } else {
        End::Bottom
    }
}

fn random_hilden(p: &PlatPresentation, rng: &mut ChaCha8Rng) -> MoveRecord {
    let letters = hilden_letters(p.bridge_index());
    let mut l = *letters.choose(rng).expect("at least the twist");
    if rng.gen_bool(0.5) {
        l = l.inverted();
    }
    let hilden = HildenWord::single(p.strands(), l).expect("generator of this plat");
    match random_end(rng) {
        End::Top => MoveRecord::DoubleCosetTop { hilden },
        End::Bottom => MoveRecord::DoubleCosetBottom { hilden },
    }
}

fn isotopy_options(p: &PlatPresentation) -> Vec<MoveRecord> {
    let letters: &[Letter] = p.word().letters();
    let mut out = Vec::new();
    for at in 0..letters.len().saturating_sub(1) {
        if letters[at].index.abs_diff(letters[at + 1].index) >= 2 {
            out.push(IsotopyRewrite::Commute { at });
        }
    }
    for at in 0..letters.len().saturating_sub(2) {
        if braid_relation([letters[at], letters[at + 1], letters[at + 2]]).is_some() {
            out.push(IsotopyRewrite::BraidRelation { at });
        }
    }
    out.into_iter().map(|rewrite| MoveRecord::IsotopyRewrite { rewrite }).collect()
}

fn random_move(p: &PlatPresentation, mode: ObscureMode, rng: &mut ChaCha8Rng) -> MoveRecord {
    let n = p.bridge_index();
    if mode == ObscureMode::DoubleCoset {
        return random_hilden(p, rng);
    }
    let families = if mode == ObscureMode::WithFlips { 4 } else { 3 };
    match rng.gen_range(0..families) {
        1 if n >= 2 => {
            let i = rng.gen_range(1..n);
            let hilden = bridge_twist(n, i, rng.gen_bool(0.5)).expect("index in range");
            MoveRecord::Pocket { side: random_end(rng), hilden }
        }
        2 => {
            let options = isotopy_options(p);
            match options.choose(rng) {
                Some(r) => r.clone(),
                None => random_hilden(p, rng),
            }
        }
        3 => {
            let case = FlipCase::ALL[rng.gen_range(0..FlipCase::ALL.len())];
            let cuts = case.cuts(n);
            let k = cuts[rng.gen_range(0..cuts.len())];
            let split_at = rng.gen_range(0..=p.word().len());
            MoveRecord::Flip { split_at, case, k, end: random_end(rng) }
        }
        _ => random_hilden(p, rng),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LogVerdict {
    Valid,
    Invalid { step: usize, reason: String },
}

impl LogVerdict {
    pub fn is_valid(&self) -> bool {
        *self == LogVerdict::Valid
    }
}

/// Replay the log, checking the invariant after every step.
pub fn verify_log(log: &MoveLog) -> LogVerdict {
    let reference = invariant(&log.initial);
    let mut cur = log.initial.clone();
    for (step, record) in log.records.iter().enumerate() {
        cur = match record.apply(&cur) {
            Ok(next) => next,
            Err(e) => return LogVerdict::Invalid { step, reason: e.to_string() },
        };
        if !invariants_equal(&reference, &invariant(&cur)) {
            return LogVerdict::Invalid { step, reason: "invariant changed".into() };
        }
    }
    LogVerdict::Valid
}
