//! Plat presentations: a braid on `2n` strands closed off with `n` caps at
//! the top and `n` cups at the bottom, both pairing `(1,2)(3,4)…`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{permutation_of, BraidError, BraidWord, Letter};
use crate::diagram::{Bend, BendKind, Crossing, LinkDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlatError {
    #[error("bridge index must be at least 1")]
    ZeroBridgeIndex,
    #[error("word is on {word} strands but the plat needs {expected}")]
    StrandMismatch { word: usize, expected: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlatPresentation {
    bridge_index: usize,
    word: BraidWord,
}

impl PlatPresentation {
    pub fn new(bridge_index: usize, word: BraidWord) -> Result<Self, PlatError> {
        if bridge_index == 0 {
            return Err(PlatError::ZeroBridgeIndex);
        }
        if word.strands() != 2 * bridge_index {
            return Err(PlatError::StrandMismatch { word: word.strands(), expected: 2 * bridge_index });
        }
        Ok(PlatPresentation { bridge_index, word })
    }

    pub fn from_letters(bridge_index: usize, letters: Vec<Letter>) -> Result<Self, PlatError> {
        if bridge_index == 0 {
            return Err(PlatError::ZeroBridgeIndex);
        }
        Self::new(bridge_index, BraidWord::new(2 * bridge_index, letters)?)
    }

    /// Parse a plat from the `s1 s2'` braid text.
    pub fn parse(bridge_index: usize, text: &str) -> Result<Self, PlatError> {
        if bridge_index == 0 {
            return Err(PlatError::ZeroBridgeIndex);
        }
        Self::new(bridge_index, BraidWord::parse(2 * bridge_index, text)?)
    }

    pub fn trivial(bridge_index: usize) -> Result<Self, PlatError> {
        Self::from_letters(bridge_index, Vec::new())
    }

    pub fn bridge_index(&self) -> usize {
        self.bridge_index
    }

    pub fn strands(&self) -> usize {
        2 * self.bridge_index
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn into_word(self) -> BraidWord {
        self.word
    }

    /// Same bridge index, different word.
    pub fn with_word(&self, word: BraidWord) -> Result<Self, PlatError> {
        Self::new(self.bridge_index, word)
    }

    pub fn cap_pairing(&self) -> CapPairing {
        CapPairing::standard(self.bridge_index)
    }
}

impl fmt::Display for PlatPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [{}]", self.bridge_index, self.word)
    }
}

#[derive(Serialize, Deserialize)]
struct PlatJson {
    n: usize,
    word: Vec<Letter>,
}

impl Serialize for PlatPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PlatJson { n: self.bridge_index, word: self.word.letters().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlatPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PlatJson::deserialize(d)?;
        PlatPresentation::from_letters(raw.n, raw.word).map_err(serde::de::Error::custom)
    }
}

/// The fixed pairing `(2k-1, 2k)`, used for both caps and cups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapPairing {
    pairs: Vec<(usize, usize)>,
}

impl CapPairing {
    pub fn standard(bridge_index: usize) -> Self {
        CapPairing { pairs: (1..=bridge_index).map(|k| (2 * k - 1, 2 * k)).collect() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Partner of a 1-based strand position.
    pub fn partner(&self, position: usize) -> usize {
        if position % 2 == 1 {
            position + 1
        } else {
            position - 1
        }
    }
}

/// Least `i ∈ [1, n-1]` such that `σ_{2i}^{±1}` never occurs.
pub fn is_split_word(p: &PlatPresentation) -> Option<usize> {
    (1..p.bridge_index).find(|&i| !p.word.contains_index(2 * i))
}

/// Least `i ∈ [1, n-2]` such that `σ_{2i+1}^{±1}` never occurs.
pub fn is_composite_word(p: &PlatPresentation) -> Option<usize> {
    (1..p.bridge_index.saturating_sub(1)).find(|&i| !p.word.contains_index(2 * i + 1))
}

/// Add two strands with a cap and cup and append `σ_{2n}`.
pub fn stabilize(p: &PlatPresentation) -> PlatPresentation {
    let n = p.bridge_index;
    let mut letters = p.word.letters().to_vec();
    letters.push(Letter::pos(2 * n));
    PlatPresentation { bridge_index: n + 1, word: BraidWord::from_raw(2 * n + 2, letters) }
}

/// Inverse of [`stabilize`] when the word syntactically ends in `σ_{2n-2}`
/// (for the current `n`) and otherwise avoids the last two strands.
pub fn destabilize(p: &PlatPresentation) -> Option<PlatPresentation> {
    let n = p.bridge_index;
    if n < 2 {
        return None;
    }
    let letters = p.word.letters();
    let (last, rest) = letters.split_last()?;
    if *last != Letter::pos(2 * n - 2) || rest.iter().any(|l| l.index > 2 * n - 3) {
        return None;
    }
    Some(PlatPresentation { bridge_index: n - 1, word: BraidWord::from_raw(2 * n - 2, rest.to_vec()) })
}

/// The capped braid as a diagram: one crossing per letter, edges numbered in
/// a top-to-bottom, left-to-right scan.
pub fn plat_closure_diagram(p: &PlatPresentation) -> LinkDiagram {
    let m = p.strands();
    let mut open: Vec<usize> = (0..m).collect();
    let mut next = m;
    let mut bends = Vec::with_capacity(m);
    for k in 0..p.bridge_index {
        bends.push(Bend { ends: [open[2 * k], open[2 * k + 1]], kind: BendKind::Cap, column: 2 * k + 1 });
    }
    let mut crossings = Vec::with_capacity(p.word.len());
    for (row, l) in p.word.letters().iter().enumerate() {
        let i = l.index - 1;
        let (tl, tr) = (open[i], open[i + 1]);
        let (bl, br) = (next, next + 1);
        next += 2;
        // counterclockwise from the upper under-strand edge
        let slots = if l.positive { [tr, tl, bl, br] } else { [tl, bl, br, tr] };
        crossings.push(Crossing { slots, column: l.index, row });
        open[i] = bl;
        open[i + 1] = br;
    }
    for k in 0..p.bridge_index {
        bends.push(Bend { ends: [open[2 * k], open[2 * k + 1]], kind: BendKind::Cup, column: 2 * k + 1 });
    }
    LinkDiagram::new(next, crossings, bends).expect("plat closure is a closed diagram")
}

/// Number of link components, from the strand permutation and the pairing.
pub fn component_count(p: &PlatPresentation) -> usize {
    let m = p.strands();
    let perm = permutation_of(&p.word);
    // points 0..m are top endpoints, m..2m bottom endpoints
    let mut parent: Vec<usize> = (0..2 * m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = 2 * m;
    let mut join = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    };
    for k in 0..p.bridge_index {
        join(&mut parent, 2 * k, 2 * k + 1);
        join(&mut parent, m + 2 * k, m + 2 * k + 1);
    }
    for bottom in 1..=m {
        join(&mut parent, perm.apply(bottom) - 1, m + bottom - 1);
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plat(n: usize, text: &str) -> PlatPresentation {
        PlatPresentation::parse(n, text).unwrap()
    }

    #[test]
    fn split_detection() {
        assert_eq!(is_split_word(&plat(2, "s1 s3'")), Some(1));
        assert_eq!(is_split_word(&plat(1, "s1 s1")), None);
        assert_eq!(is_split_word(&plat(2, "s2")), None);
        assert_eq!(is_split_word(&plat(3, "s2 s1 s3")), Some(2));
    }

    #[test]
    fn composite_detection() {
        assert_eq!(is_composite_word(&plat(3, "s1 s2 s4 s5")), Some(1));
        assert_eq!(is_composite_word(&plat(2, "")), None);
        assert_eq!(is_composite_word(&plat(3, "s3 s1")), None);
        assert_eq!(is_composite_word(&plat(1, "")), None);
        // σ5 is the last odd generator at n=3 and is never interior
        assert_eq!(is_composite_word(&plat(3, "s3")), None);
    }

    #[test]
    fn stabilization_examples() {
        assert_eq!(stabilize(&plat(1, "")), plat(2, "s2"));
        assert_eq!(stabilize(&plat(2, "s2")), plat(3, "s2 s4"));
        assert_eq!(stabilize(&stabilize(&plat(1, ""))), plat(3, "s2 s4"));
        assert_eq!(destabilize(&plat(2, "s2")), Some(plat(1, "")));
        assert_eq!(destabilize(&plat(3, "s2 s4")), Some(plat(2, "s2")));
        // σ1 lives on the surviving strands, so the round trip keeps it
        assert_eq!(destabilize(&plat(2, "s1 s2")), Some(plat(1, "s1")));
        assert_eq!(destabilize(&plat(2, "s2'")), None);
        assert_eq!(destabilize(&plat(1, "s1")), None);
        assert_eq!(destabilize(&plat(3, "s5 s4")), None);
    }

    #[test]
    fn component_examples() {
        assert_eq!(component_count(&plat(2, "")), 2);
        assert_eq!(component_count(&plat(2, "s2 s2")), 2);
        assert_eq!(component_count(&plat(2, "s2")), 1);
        assert_eq!(component_count(&plat(1, "s1 s1 s1")), 1);
    }

    #[test]
    fn closure_diagrams() {
        let unknot = plat_closure_diagram(&plat(1, ""));
        assert_eq!(unknot.crossing_count(), 0);
        assert_eq!(unknot.component_count(), 1);
        let unlink = plat_closure_diagram(&plat(2, ""));
        assert_eq!(unlink.crossing_count(), 0);
        assert_eq!(unlink.component_count(), 2);
        let hopf = plat_closure_diagram(&plat(2, "s2 s2"));
        assert_eq!(hopf.crossing_count(), 2);
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.edge_count(), 8);
        // strands 2 and 3 meet twice; the caps merge the outer segments
        assert_eq!(hopf.to_pd_text(), "components 2\nX 1 2 3 4\nX 4 3 2 1\n");
    }

    #[test]
    fn json_shape() {
        let p = plat(2, "s1 s3'");
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"n":2,"word":[{"i":1,"s":1},{"i":3,"s":-1}]}"#);
        let back: PlatPresentation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PlatPresentation>(r#"{"n":1,"word":[{"i":2,"s":1}]}"#).is_err());
        assert!(serde_json::from_str::<PlatPresentation>(r#"{"n":1,"word":[{"i":1,"s":2}]}"#).is_err());
    }
}
