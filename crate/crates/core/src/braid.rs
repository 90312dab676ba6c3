//! Braid words on `m` strands and the Artin action on the free group.
//!
//! Conventions used throughout the crate:
//!
//! * Strands are numbered `1..=m` left to right and `σ_i` crosses strands
//!   `i` and `i + 1`. In a positive letter the strand travelling from
//!   position `i` down to position `i + 1` passes over.
//! * Words are read top to bottom: the first letter is the topmost crossing
//!   and is applied first.
//! * [`Permutation::images`] records, for every bottom position, the top
//!   position its strand started from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the total length of the free words produced by
/// [`artin_action`].
pub const DEFAULT_FREE_WORD_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid group needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("free word length exceeded the cap of {0} letters")]
    ResourceLimit(usize),
    #[error("parse error at token {position}: {reason}")]
    Parse { position: usize, reason: String },
}

/// A signed Artin generator `σ_index^sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    #[serde(rename = "i")]
    pub index: usize,
    #[serde(rename = "s", with = "sign_serde")]
    pub positive: bool,
}

mod sign_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(positive: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(if *positive { 1 } else { -1 })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(true),
            -1 => Ok(false),
            other => Err(D::Error::custom(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

impl Letter {
    pub const fn pos(index: usize) -> Self {
        Letter { index, positive: true }
    }

    pub const fn neg(index: usize) -> Self {
        Letter { index, positive: false }
    }

    pub fn new(index: usize, sign: i32) -> Self {
        Letter { index, positive: sign >= 0 }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, positive: !self.positive }
    }

    pub fn sign(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// Shift the generator index by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        Letter { index: self.index + offset, positive: self.positive }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.index)?;
        if !self.positive {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A word in the Artin generators of `B_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(BraidError::IndexOutOfRange { index: bad.index, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// Build from `(index, sign)` pairs.
    pub fn from_pairs(strands: usize, pairs: &[(usize, i32)]) -> Result<Self, BraidError> {
        Self::new(strands, pairs.iter().map(|&(i, s)| Letter::new(i, s)).collect())
    }

    /// Construct without validation. Callers guarantee the index bound.
    pub(crate) fn from_raw(strands: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index < strands));
        BraidWord { strands, letters }
    }

    /// Parse the `s1 s2' s3` text form.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let mut letters = Vec::new();
        for (pos, token) in text.split_whitespace().enumerate() {
            let position = pos + 1;
            let err = |reason: String| BraidError::Parse { position, reason };
            let body = token
                .strip_prefix('s')
                .ok_or_else(|| err(format!("expected `s<k>`, found `{token}`")))?;
            let (digits, positive) = match body.strip_suffix('\'') {
                Some(d) => (d, false),
                None => (body, true),
            };
            let index: usize = digits
                .parse()
                .map_err(|_| err(format!("invalid generator index in `{token}`")))?;
            if index == 0 || index >= strands {
                return Err(err(format!(
                    "generator index {index} outside [1, {}]",
                    strands - 1
                )));
            }
            letters.push(Letter { index, positive });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Reverse the letter order and flip every sign.
    ///
    /// This is the same word as [`BraidWord::inverse`]; it is kept as a
    /// separate name where the intent is a mirror of a diagram piece rather
    /// than a group inverse.
    pub fn mirrored(&self) -> BraidWord {
        self.inverse()
    }

    pub fn power(&self, exponent: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * exponent);
        for _ in 0..exponent {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Reinterpret on more strands. Fails if `strands` is too small.
    pub fn widened(&self, strands: usize) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// Shift every index by `offset` and place the result on `strands` strands.
    pub fn shifted(&self, offset: usize, strands: usize) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, self.letters.iter().map(|l| l.shifted(offset)).collect())
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.letters.iter().any(|l| l.index == index)
    }

    pub fn count_index(&self, index: usize) -> usize {
        self.letters.iter().filter(|l| l.index == index).count()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign() as i64).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Remove adjacent `σ_i^s σ_i^{-s}` pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    BraidWord { strands: w.strands, letters: free_reduce_letters(&w.letters) }
}

pub(crate) fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A bijection on `{1..m}`; see the module docs for the reading.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (1..=m).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &v in &images {
            if v == 0 || v > m || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Permutation { images })
    }

    /// `images()[j - 1]` is the top position of the strand that ends at
    /// bottom position `j`.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// The permutation of the braid `first · second` given the permutations
    /// of its two factors.
    pub fn then(&self, second: &Permutation) -> Permutation {
        Permutation { images: second.images.iter().map(|&p| self.images[p - 1]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }
}

/// Strand-tracking permutation of a word, one transposition per letter.
pub fn permutation_of(w: &BraidWord) -> Permutation {
    let mut images: Vec<usize> = (1..=w.strands).collect();
    for l in &w.letters {
        images.swap(l.index - 1, l.index);
    }
    Permutation { images }
}

/// A freely reduced word in the free group on `x_1..x_m`. A letter `j > 0`
/// stands for `x_j`, `-j` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn generator(j: usize) -> Self {
        FreeWord(vec![j as i32])
    }

    pub fn from_letters(letters: Vec<i32>) -> Self {
        let mut w = FreeWord(Vec::with_capacity(letters.len()));
        for x in letters {
            w.push(x);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, x: i32) {
        if self.0.last() == Some(&-x) {
            self.0.pop();
        } else {
            self.0.push(x);
        }
    }

    fn extend(&mut self, other: &[i32]) {
        for &x in other {
            self.push(x);
        }
    }

    fn extend_inverse(&mut self, other: &[i32]) {
        for &x in other.iter().rev() {
            self.push(-x);
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|x| -x).collect())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if x > 0 {
                write!(f, "x{x}")?;
            } else {
                write!(f, "x{}'", -x)?;
            }
        }
        Ok(())
    }
}

/// Images of `x_1..x_m` under the automorphism of a braid word, with the
/// default length cap.
pub fn artin_action(w: &BraidWord) -> Result<Vec<FreeWord>, BraidError> {
    artin_action_capped(w, DEFAULT_FREE_WORD_CAP)
}

/// Images of the free generators under the automorphism of `w`.
///
/// `σ_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹` and `x_{i+1} ↦ x_i`. The image
/// tuple of `w · l` is obtained from that of `w` by substituting it into the
/// rule for `l`, so `artin_action(w · w')` is the image tuple of `w'` with
/// each `x_j` replaced by the `j`-th image of `w`.
pub fn artin_action_capped(w: &BraidWord, cap: usize) -> Result<Vec<FreeWord>, BraidError> {
    let mut images: Vec<FreeWord> = (1..=w.strands).map(FreeWord::generator).collect();
    for l in &w.letters {
        let i = l.index - 1;
        let (a, b) = (images[i].0.clone(), images[i + 1].0.clone());
        let mut first = FreeWord(Vec::with_capacity(2 * a.len() + b.len()));
        let second;
        if l.positive {
            // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
            first.extend(&a);
            first.extend(&b);
            first.extend_inverse(&a);
            second = FreeWord(a);
        } else {
            // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
            let mut s = FreeWord(Vec::with_capacity(2 * b.len() + a.len()));
            s.extend_inverse(&b);
            s.extend(&a);
            s.extend(&b);
            first = FreeWord(b);
            second = s;
        }
        images[i] = first;
        images[i + 1] = second;
        let total: usize = images.iter().map(FreeWord::len).sum();
        if total > cap {
            return Err(BraidError::ResourceLimit(cap));
        }
    }
    Ok(images)
}

/// Substitute the image tuple `inner` into every word of `outer`:
/// `x_j ↦ inner[j - 1]`.
pub fn compose_actions(outer: &[FreeWord], inner: &[FreeWord]) -> Vec<FreeWord> {
    outer
        .iter()
        .map(|w| {
            let mut out = FreeWord(Vec::new());
            for &x in &w.0 {
                let img = &inner[(x.unsigned_abs() - 1) as usize].0;
                if x > 0 {
                    out.extend(img);
                } else {
                    out.extend_inverse(img);
                }
            }
            out
        })
        .collect()
}

/// Decide equality in `B_m`.
///
/// Evaluates the action of `w1 · w2⁻¹` and checks it is the identity, which
/// holds exactly when the two actions agree componentwise; the quotient form
/// keeps intermediate free words short for equal inputs.
pub fn braids_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    if w1.strands != w2.strands {
        return Err(BraidError::StrandMismatch(w1.strands, w2.strands));
    }
    let quotient = w1.concat(&w2.inverse())?;
    let images = artin_action(&free_reduce(&quotient))?;
    Ok(images.iter().enumerate().all(|(k, img)| img.0.as_slice() == [(k + 1) as i32]))
}

/// The full twist `(σ_1 σ_2 … σ_{m-1})^m`.
pub fn full_twist(m: usize) -> Result<BraidWord, BraidError> {
    if m < 2 {
        return Err(BraidError::TooFewStrands(m));
    }
    let row: Vec<Letter> = (1..m).map(Letter::pos).collect();
    Ok(BraidWord::from_raw(m, row).power(m))
}

impl FromStr for Letter {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w = BraidWord::parse(usize::MAX, s)?;
        match w.letters.as_slice() {
            [l] => Ok(*l),
            _ => Err(BraidError::Parse { position: 1, reason: "expected one letter".into() }),
        }
    }
}
