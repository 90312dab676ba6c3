//! Link-type preserving moves on plats and their replayable records.
//!
//! Double coset moves multiply by an element of the Hilden subgroup `K_2n`
//! at the top (prepend) or bottom (append). Flips insert one of six pure
//! braids at a split point `A | B`; the variants that turn the top bridges
//! insert the mirrored word instead. Every move is recorded as a
//! [`MoveRecord`] so a [`MoveLog`] can be replayed and checked.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{braids_equal, free_reduce_letters, full_twist, BraidError, BraidWord, Letter};
use crate::plat::{destabilize, stabilize, PlatError, PlatPresentation};
use crate::search::{beam_search, MoveSet, SearchBudget, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("bridge index must be at least 1")]
    ZeroBridgeIndex,
    #[error("expected {expected} strands, found {found}")]
    StrandMismatch { expected: usize, found: usize },
    #[error("Hilden generator {0} does not exist here")]
    InvalidGenerator(String),
    #[error("flip case {case} does not accept k={k} on {strands} strands")]
    InvalidFlip { case: FlipCase, k: usize, strands: usize },
    #[error("split point {split_at} outside 0..={len}")]
    InvalidSplit { split_at: usize, len: usize },
    #[error("micro flip needs a positive even band width, got {0}")]
    OddBand(usize),
    #[error("band of {k} strands at position {position} is not a run of whole caps on {strands} strands")]
    BandOutOfRange { k: usize, position: usize, strands: usize },
    #[error("letter {letter} at {at} crosses the flipped band")]
    BandCrossed { at: usize, letter: Letter },
    #[error("rewrite does not apply: {0}")]
    InvalidRewrite(String),
    #[error("plat is not in destabilizable form")]
    NotDestabilizable,
    #[error("no special configuration found within the budget")]
    BudgetExhausted,
    #[error("replay failed at step {step}: {source}")]
    Replay { step: usize, source: Box<MoveError> },
    #[error(transparent)]
    Plat(#[from] PlatError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Which end of the plat a move acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Top,
    Bottom,
}

/// Which outer strand [`special_configuration`] clears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HildenGenerator {
    /// `σ1`
    Twist,
    /// `σ2 σ1² σ2`
    Wrap,
    /// `σ_2i σ_2i-1 σ_2i+1 σ_2i`
    Exchange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HildenLetter {
    pub generator: HildenGenerator,
    pub inverse: bool,
}

impl HildenLetter {
    pub const fn new(generator: HildenGenerator) -> Self {
        HildenLetter { generator, inverse: false }
    }

    pub fn inverted(self) -> Self {
        HildenLetter { generator: self.generator, inverse: !self.inverse }
    }

    fn check(&self, bridge_index: usize) -> Result<(), MoveError> {
        let ok = match self.generator {
            HildenGenerator::Twist => bridge_index >= 1,
            HildenGenerator::Wrap => bridge_index >= 2,
            HildenGenerator::Exchange(i) => i >= 1 && i < bridge_index,
        };
        if ok {
            Ok(())
        } else {
            Err(MoveError::InvalidGenerator(format!("{self} at n={bridge_index}")))
        }
    }

    pub fn expand(&self) -> Vec<Letter> {
        let word = match self.generator {
            HildenGenerator::Twist => vec![Letter::pos(1)],
            HildenGenerator::Wrap => vec![Letter::pos(2), Letter::pos(1), Letter::pos(1), Letter::pos(2)],
            HildenGenerator::Exchange(i) => {
                vec![Letter::pos(2 * i), Letter::pos(2 * i - 1), Letter::pos(2 * i + 1), Letter::pos(2 * i)]
            }
        };
        if self.inverse {
            word.into_iter().rev().map(Letter::inverse).collect()
        } else {
            word
        }
    }
}

impl fmt::Display for HildenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            HildenGenerator::Twist => f.write_str("twist")?,
            HildenGenerator::Wrap => f.write_str("wrap")?,
            HildenGenerator::Exchange(i) => write!(f, "exchange{i}")?,
        }
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HildenLetterJson {
    g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(default)]
    inv: bool,
}

impl Serialize for HildenLetter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (g, i) = match self.generator {
            HildenGenerator::Twist => ("twist", None),
            HildenGenerator::Wrap => ("wrap", None),
            HildenGenerator::Exchange(i) => ("exchange", Some(i)),
        };
        HildenLetterJson { g: g.into(), i, inv: self.inverse }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HildenLetter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = HildenLetterJson::deserialize(d)?;
        let generator = match (raw.g.as_str(), raw.i) {
            ("twist", None) => HildenGenerator::Twist,
            ("wrap", None) => HildenGenerator::Wrap,
            ("exchange", Some(i)) => HildenGenerator::Exchange(i),
            ("exchange", None) => return Err(D::Error::custom("exchange needs an index `i`")),
            (g, _) => return Err(D::Error::custom(format!("unknown Hilden generator `{g}`"))),
        };
        Ok(HildenLetter { generator, inverse: raw.inv })
    }
}

/// A word in the Hilden generators, expanded to Artin letters on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HildenWord {
    strands: usize,
    letters: Vec<HildenLetter>,
}

impl HildenWord {
    pub fn new(strands: usize, letters: Vec<HildenLetter>) -> Result<Self, MoveError> {
        if strands < 2 || strands % 2 == 1 {
            return Err(MoveError::InvalidGenerator(format!("{strands} strands do not form a plat")));
        }
        for l in &letters {
            l.check(strands / 2)?;
        }
        Ok(HildenWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, MoveError> {
        Self::new(strands, Vec::new())
    }

    pub fn single(strands: usize, letter: HildenLetter) -> Result<Self, MoveError> {
        Self::new(strands, vec![letter])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[HildenLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> HildenWord {
        HildenWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn expand(&self) -> BraidWord {
        let letters = self.letters.iter().flat_map(HildenLetter::expand).collect();
        BraidWord::new(self.strands, letters).expect("validated Hilden letters fit the strands")
    }
}

impl<'de> Deserialize<'de> for HildenWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            strands: usize,
            letters: Vec<HildenLetter>,
        }
        let raw = Raw::deserialize(d)?;
        HildenWord::new(raw.strands, raw.letters).map_err(serde::de::Error::custom)
    }
}

/// The positive Hilden generators for bridge index `n`.
pub fn hilden_letters(n: usize) -> Vec<HildenLetter> {
    let mut out = vec![HildenLetter::new(HildenGenerator::Twist)];
    if n >= 2 {
        out.push(HildenLetter::new(HildenGenerator::Wrap));
    }
    out.extend((1..n).map(|i| HildenLetter::new(HildenGenerator::Exchange(i))));
    out
}

/// Generators of `K_2n` as Artin words: `σ1`, `σ2σ1²σ2` and the exchanges.
pub fn hilden_generators(n: usize) -> Result<Vec<BraidWord>, MoveError> {
    if n == 0 {
        return Err(MoveError::ZeroBridgeIndex);
    }
    Ok(hilden_letters(n)
        .into_iter()
        .map(|l| BraidWord::new(2 * n, l.expand()).expect("generator fits 2n strands"))
        .collect())
}

fn check_strands(p: &PlatPresentation, strands: usize) -> Result<(), MoveError> {
    if strands != p.strands() {
        return Err(MoveError::StrandMismatch { expected: p.strands(), found: strands });
    }
    Ok(())
}

pub fn apply_double_coset(p: &PlatPresentation, end: End, h: &HildenWord) -> Result<PlatPresentation, MoveError> {
    check_strands(p, h.strands())?;
    let e = h.expand();
    let word = match end {
        End::Top => e.concat(p.word())?,
        End::Bottom => p.word().concat(&e)?,
    };
    Ok(p.with_word(word)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipCase {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

impl FlipCase {
    pub const ALL: [FlipCase; 6] = [FlipCase::I, FlipCase::Ii, FlipCase::Iii, FlipCase::Iv, FlipCase::V, FlipCase::Vi];

    /// The cut fixed by the case itself, for cases iii to vi.
    pub fn implicit_k(self, n: usize) -> Option<usize> {
        match self {
            FlipCase::I | FlipCase::Ii => None,
            FlipCase::Iii | FlipCase::Iv => Some(1),
            FlipCase::V | FlipCase::Vi => Some(2 * n - 1),
        }
    }

    /// Values of `k` worth enumerating in a search.
    pub fn cuts(self, n: usize) -> Vec<usize> {
        match self.implicit_k(n) {
            None => (1..2 * n).collect(),
            Some(_) => vec![0],
        }
    }
}

impl fmt::Display for FlipCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlipCase::I => "i",
            FlipCase::Ii => "ii",
            FlipCase::Iii => "iii",
            FlipCase::Iv => "iv",
            FlipCase::V => "v",
            FlipCase::Vi => "vi",
        })
    }
}

impl std::str::FromStr for FlipCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FlipCase::ALL
            .into_iter()
            .find(|c| c.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown flip case `{s}`"))
    }
}

fn run(indices: impl Iterator<Item = usize>, positive: bool, times: usize) -> Vec<Letter> {
    let row: Vec<Letter> = indices.map(|i| if positive { Letter::pos(i) } else { Letter::neg(i) }).collect();
    row.repeat(times)
}

/// The pure braid a flip inserts at the split point.
pub fn flip_insertion(case: FlipCase, n: usize, k: usize) -> Result<BraidWord, MoveError> {
    if n == 0 {
        return Err(MoveError::ZeroBridgeIndex);
    }
    let m = 2 * n;
    let valid = match case.implicit_k(n) {
        None => (1..m).contains(&k),
        Some(fixed) => k == 0 || k == fixed,
    };
    if !valid {
        return Err(MoveError::InvalidFlip { case, k, strands: m });
    }
    let letters = match case {
        FlipCase::I => [run(1..k, true, k), run((k + 1..m).rev(), false, m - k)].concat(),
        FlipCase::Ii => [run((1..k).rev(), false, k), run(k + 1..m, true, m - k)].concat(),
        FlipCase::Iii => run((2..m).rev(), false, m - 1),
        FlipCase::Iv => run(2..m, true, m - 1),
        FlipCase::V => run(1..m - 1, true, m - 1),
        FlipCase::Vi => run((1..m - 1).rev(), false, m - 1),
    };
    Ok(BraidWord::new(m, letters)?)
}

fn splice(p: &PlatPresentation, split_at: usize, insert: &[Letter]) -> Result<PlatPresentation, MoveError> {
    let letters = p.word().letters();
    if split_at > letters.len() {
        return Err(MoveError::InvalidSplit { split_at, len: letters.len() });
    }
    let word = [&letters[..split_at], insert, &letters[split_at..]].concat();
    Ok(PlatPresentation::from_letters(p.bridge_index(), word)?)
}

/// Split the word as `A | B` after `split_at` letters and insert the flip
/// word (bottom bridges) or its mirror (top bridges) between them.
pub fn apply_flip(
    p: &PlatPresentation,
    split_at: usize,
    case: FlipCase,
    k: usize,
    end: End,
) -> Result<PlatPresentation, MoveError> {
    let mut f = flip_insertion(case, p.bridge_index(), k)?;
    if end == End::Top {
        f = f.mirrored();
    }
    splice(p, split_at, f.letters())
}

/// Flip only the `k` strands starting at `position`, computed as the flip
/// of case `case` and cut `cut` on a `k`-strand plat and shifted into place.
///
/// The band must consist of whole caps, and the part of the word that turns
/// with it (the suffix for `End::Bottom`, the prefix for `End::Top`) may not
/// braid band strands with outside strands.
#[allow(clippy::too_many_arguments)]
pub fn micro_flip(
    p: &PlatPresentation,
    split_at: usize,
    k: usize,
    position: usize,
    case: FlipCase,
    cut: usize,
    end: End,
) -> Result<PlatPresentation, MoveError> {
    let m = p.strands();
    if k == 0 || k % 2 == 1 {
        return Err(MoveError::OddBand(k));
    }
    if position == 0 || position.is_multiple_of(2) || position + k - 1 > m {
        return Err(MoveError::BandOutOfRange { k, position, strands: m });
    }
    let letters = p.word().letters();
    if split_at > letters.len() {
        return Err(MoveError::InvalidSplit { split_at, len: letters.len() });
    }
    let last = position + k - 1;
    let turned = match end {
        End::Bottom => split_at..letters.len(),
        End::Top => 0..split_at,
    };
    for at in turned {
        let j = letters[at].index;
        let inside = j >= position && j < last;
        let outside = j + 1 < position || j > last;
        if !inside && !outside {
            return Err(MoveError::BandCrossed { at, letter: letters[at] });
        }
    }
    let mut f = flip_insertion(case, k / 2, cut)?.shifted(position - 1, m)?;
    if end == End::Top {
        f = f.mirrored();
    }
    splice(p, split_at, f.letters())
}

/// Apply a Hilden word as a pocket move, logging its factorization.
pub fn pocket_move(p: &PlatPresentation, side: End, h: &HildenWord) -> Result<(PlatPresentation, MoveLog), MoveError> {
    check_strands(p, h.strands())?;
    let mut log = MoveLog::new(p.clone());
    if h.is_empty() {
        return Ok((p.clone(), log));
    }
    let out = apply_double_coset(p, side, h)?;
    log.records.push(MoveRecord::Pocket { side, hilden: h.clone() });
    Ok((out, log))
}

/// The plats `A δ B` and `A B δ`, with `δ` the full twist on `2n` strands.
pub fn garside_slide(a: &BraidWord, b: &BraidWord, n: usize) -> Result<(PlatPresentation, PlatPresentation), MoveError> {
    if n == 0 {
        return Err(MoveError::ZeroBridgeIndex);
    }
    for w in [a, b] {
        if w.strands() != 2 * n {
            return Err(MoveError::StrandMismatch { expected: 2 * n, found: w.strands() });
        }
    }
    let delta = full_twist(2 * n)?;
    let left = a.concat(&delta)?.concat(b)?;
    let right = a.concat(b)?.concat(&delta)?;
    Ok((PlatPresentation::new(n, left)?, PlatPresentation::new(n, right)?))
}

/// The Hilden word `E_i σ_{2i-1}^{±1} E_i⁻¹`, which equals `σ_{2i+1}^{±1}`.
pub fn bridge_twist(n: usize, i: usize, positive: bool) -> Result<HildenWord, MoveError> {
    if n == 0 {
        return Err(MoveError::ZeroBridgeIndex);
    }
    let twist = HildenLetter { generator: HildenGenerator::Twist, inverse: !positive };
    HildenWord::new(2 * n, conjugate_chain(n, i, twist)?)
}

/// `E_i ⋯ E_1 · t · E_1⁻¹ ⋯ E_i⁻¹`: conjugates the first-cap twist to cap `i + 1`.
fn conjugate_chain(n: usize, i: usize, twist: HildenLetter) -> Result<Vec<HildenLetter>, MoveError> {
    if i == 0 || i >= n {
        return Err(MoveError::InvalidGenerator(format!("bridge twist {i} at n={n}")));
    }
    let mut letters: Vec<HildenLetter> = (1..=i).rev().map(|j| HildenLetter::new(HildenGenerator::Exchange(j))).collect();
    letters.push(twist);
    letters.extend((1..=i).map(|j| HildenLetter { generator: HildenGenerator::Exchange(j), inverse: true }));
    Ok(letters)
}

/// A rewrite that keeps the braid (an element of `B_2n`) fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum IsotopyRewrite {
    FreeReduce,
    /// Swap the far-apart letters at `at` and `at + 1`.
    Commute { at: usize },
    /// `σ_i σ_j σ_i → σ_j σ_i σ_j` (equal signs) or
    /// `σ_i^e σ_j^f σ_i^-e → σ_j^-e σ_i^f σ_j^e`, for `|i - j| = 1`.
    BraidRelation { at: usize },
    /// Replace `from` at `at` by a braid-equal word.
    Substitute { at: usize, from: Vec<Letter>, to: Vec<Letter> },
}

/// Image of a three-letter window under the braid relation, if it has one.
pub(crate) fn braid_relation(w: [Letter; 3]) -> Option<[Letter; 3]> {
    let [x, y, z] = w;
    if x.index != z.index || x.index.abs_diff(y.index) != 1 {
        return None;
    }
    let (i, j) = (x.index, y.index);
    if x.positive == y.positive && y.positive == z.positive {
        let s = x.sign();
        Some([Letter::new(j, s), Letter::new(i, s), Letter::new(j, s)])
    } else if x.positive != z.positive {
        Some([Letter::new(j, -x.sign()), Letter::new(i, y.sign()), Letter::new(j, x.sign())])
    } else {
        None
    }
}

pub fn apply_rewrite(p: &PlatPresentation, r: &IsotopyRewrite) -> Result<PlatPresentation, MoveError> {
    let letters = p.word().letters();
    let window = |at: usize, len: usize| {
        letters
            .get(at..at + len)
            .ok_or_else(|| MoveError::InvalidRewrite(format!("window {at}..{} outside the word", at + len)))
    };
    let mut out = letters.to_vec();
    match r {
        IsotopyRewrite::FreeReduce => out = free_reduce_letters(letters),
        IsotopyRewrite::Commute { at } => {
            let w = window(*at, 2)?;
            if w[0].index.abs_diff(w[1].index) < 2 {
                return Err(MoveError::InvalidRewrite(format!("{} and {} do not commute", w[0], w[1])));
            }
            out.swap(*at, at + 1);
        }
        IsotopyRewrite::BraidRelation { at } => {
            let w = window(*at, 3)?;
            let image = braid_relation([w[0], w[1], w[2]])
                .ok_or_else(|| MoveError::InvalidRewrite(format!("no braid relation for {} {} {}", w[0], w[1], w[2])))?;
            out[*at..at + 3].copy_from_slice(&image);
        }
        IsotopyRewrite::Substitute { at, from, to } => {
            if window(*at, from.len())? != from.as_slice() {
                return Err(MoveError::InvalidRewrite(format!("word does not contain the pattern at {at}")));
            }
            let m = p.strands();
            let (a, b) = (BraidWord::new(m, from.clone())?, BraidWord::new(m, to.clone())?);
            if !braids_equal(&a, &b)? {
                return Err(MoveError::InvalidRewrite("substitution changes the braid".into()));
            }
            out.splice(*at..at + from.len(), to.iter().copied());
        }
    }
    Ok(PlatPresentation::from_letters(p.bridge_index(), out)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum MoveRecord {
    DoubleCosetTop {
        hilden: HildenWord,
    },
    DoubleCosetBottom {
        hilden: HildenWord,
    },
    Flip {
        split_at: usize,
        case: FlipCase,
        k: usize,
        end: End,
    },
    MicroFlip {
        split_at: usize,
        k: usize,
        position: usize,
        case: FlipCase,
        cut: usize,
        end: End,
    },
    Pocket {
        side: End,
        hilden: HildenWord,
    },
    Stabilize,
    Destabilize,
    IsotopyRewrite {
        rewrite: IsotopyRewrite,
    },
}

impl MoveRecord {
    pub fn apply(&self, p: &PlatPresentation) -> Result<PlatPresentation, MoveError> {
        match self {
            MoveRecord::DoubleCosetTop { hilden } => apply_double_coset(p, End::Top, hilden),
            MoveRecord::DoubleCosetBottom { hilden } => apply_double_coset(p, End::Bottom, hilden),
            MoveRecord::Flip { split_at, case, k, end } => apply_flip(p, *split_at, *case, *k, *end),
            MoveRecord::MicroFlip { split_at, k, position, case, cut, end } => {
                micro_flip(p, *split_at, *k, *position, *case, *cut, *end)
            }
            MoveRecord::Pocket { side, hilden } => apply_double_coset(p, *side, hilden),
            MoveRecord::Stabilize => Ok(stabilize(p)),
            MoveRecord::Destabilize => destabilize(p).ok_or(MoveError::NotDestabilizable),
            MoveRecord::IsotopyRewrite { rewrite } => apply_rewrite(p, rewrite),
        }
    }

    pub fn keeps_bridge_index(&self) -> bool {
        !matches!(self, MoveRecord::Stabilize | MoveRecord::Destabilize)
    }

    pub fn is_double_coset(&self) -> bool {
        matches!(self, MoveRecord::DoubleCosetTop { .. } | MoveRecord::DoubleCosetBottom { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MoveRecord::DoubleCosetTop { .. } => "DoubleCosetTop",
            MoveRecord::DoubleCosetBottom { .. } => "DoubleCosetBottom",
            MoveRecord::Flip { .. } => "Flip",
            MoveRecord::MicroFlip { .. } => "MicroFlip",
            MoveRecord::Pocket { .. } => "Pocket",
            MoveRecord::Stabilize => "Stabilize",
            MoveRecord::Destabilize => "Destabilize",
            MoveRecord::IsotopyRewrite { .. } => "IsotopyRewrite",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLog {
    pub initial: PlatPresentation,
    pub records: Vec<MoveRecord>,
}

impl MoveLog {
    pub fn new(initial: PlatPresentation) -> Self {
        MoveLog { initial, records: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Every intermediate plat, starting with `initial`.
    pub fn states(&self) -> Result<Vec<PlatPresentation>, MoveError> {
        let mut out = vec![self.initial.clone()];
        for (step, r) in self.records.iter().enumerate() {
            let next = r
                .apply(out.last().expect("nonempty"))
                .map_err(|e| MoveError::Replay { step, source: Box::new(e) })?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn replay(&self) -> Result<PlatPresentation, MoveError> {
        let mut p = self.initial.clone();
        for (step, r) in self.records.iter().enumerate() {
            p = r.apply(&p).map_err(|e| MoveError::Replay { step, source: Box::new(e) })?;
        }
        Ok(p)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { beam_width: 64, max_depth: 24, max_word_length: 64, time_cap: Duration::from_secs(60) }
    }
}

fn target_index(p: &PlatPresentation, side: Side) -> usize {
    match side {
        Side::Left => 1,
        Side::Right => p.strands() - 1,
    }
}

/// Rearrange the word so the leftmost or rightmost strand crosses nothing,
/// using flips, double coset moves, bridge twists and braid isotopy.
pub fn special_configuration(p: &PlatPresentation, side: Side) -> Result<(PlatPresentation, MoveLog), MoveError> {
    special_configuration_with(p, side, &SearchBudget { beam_width: 32, max_depth: 16, ..SearchBudget::default() })
}

pub fn special_configuration_with(
    p: &PlatPresentation,
    side: Side,
    budget: &SearchBudget,
) -> Result<(PlatPresentation, MoveLog), MoveError> {
    let target = target_index(p, side);
    let moves = MoveSet { hilden: true, bridge_twists: true, isotopy: true, flips: true };
    let count = |q: &PlatPresentation| q.word().count_index(target);
    match beam_search(p, budget, &moves, count, |q| count(q) == 0) {
        SearchOutcome::Solved { plat, records } => Ok((plat, MoveLog { initial: p.clone(), records })),
        SearchOutcome::Exhausted { .. } => Err(MoveError::BudgetExhausted),
    }
}
