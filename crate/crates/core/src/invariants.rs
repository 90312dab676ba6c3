//! Exact unoriented link-invariant oracle.
//!
//! The Kauffman bracket is evaluated two ways: a direct state sum over all
//! `2^c` smoothings of a [`LinkDiagram`] (loops counted with union–find),
//! and a transfer evaluation for plats that sweeps the braid top to bottom
//! while keeping one coefficient per crossingless matching of the strand
//! endpoints. Both are exact. The writhe-normalized bracket depends on the
//! orientation of multi-component links, so the unoriented invariant is the
//! multiset of normalized brackets over all orientation classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::plat::{plat_closure_diagram, PlatPresentation};

/// Default crossing cap for the `2^c` state sum.
pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state sum over {crossings} crossings exceeds the cap of {cap}")]
    ResourceLimit { crossings: usize, cap: usize },
    #[error("malformed diagram: {0}")]
    Malformed(#[from] DiagramError),
    #[error("orientation covers {given} components but the diagram has {expected}")]
    IncompleteOrientation { given: usize, expected: usize },
}

/// Integer Laurent polynomial in `A`. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i128>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i128, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i128 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    fn add_term(&mut self, exponent: i64, coefficient: i128) {
        if coefficient == 0 {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert(0);
        *slot = slot.checked_add(coefficient).expect("bracket coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exponent);
        }
    }

    /// Multiply by `c·A^e`.
    pub fn scale(&self, coefficient: i128, exponent: i64) -> Self {
        if coefficient == 0 {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e + exponent, c.checked_mul(coefficient).expect("bracket coefficient overflow")))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    /// `(-A^3)^(-w)`.
    pub fn writhe_factor(writhe: i64) -> Self {
        let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, -3 * writhe)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("bracket coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Descending exponents, e.g. `-A^4 - A^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (magnitude, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => f.write_str("A")?,
                (1, e) => write!(f, "A^{e}")?,
                (m, 1) => write!(f, "{m}A")?,
                (m, e) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, i128> = self.terms.iter().map(|(e, c)| (e.to_string(), *c)).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, i128>::deserialize(d)?;
        let mut terms = Vec::with_capacity(map.len());
        for (k, c) in map {
            let e: i64 = k.parse().map_err(|_| serde::de::Error::custom(format!("bad exponent `{k}`")))?;
            terms.push((e, c));
        }
        Ok(LaurentPolynomial::from_terms(terms))
    }
}

/// Normalized brackets over all orientation classes, sorted, with equal
/// values listed once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantValue(Vec<LaurentPolynomial>);

impl InvariantValue {
    pub fn from_polynomials(mut polys: Vec<LaurentPolynomial>) -> Self {
        polys.sort();
        polys.dedup();
        InvariantValue(polys)
    }

    pub fn polynomials(&self) -> &[LaurentPolynomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Direction choice per component, relative to the diagram's reference
/// traversal (`true` reverses that component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn reference(components: usize) -> Self {
        Orientation { reversed: vec![false; components] }
    }
}

pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPolynomial, OracleError> {
    kauffman_bracket_capped(d, DEFAULT_ORACLE_CAP)
}

/// State sum `Σ A^(a-b) δ^(loops-1)` over every smoothing, `δ = -A² - A⁻²`.
pub fn kauffman_bracket_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPolynomial, OracleError> {
    d.validate()?;
    let c = d.crossing_count();
    if c > cap || c >= 63 {
        return Err(OracleError::ResourceLimit { crossings: c, cap });
    }
    // Collapse edges joined by caps and cups once; the state loop only sees
    // the crossing-level pairings.
    let mut class = vec![usize::MAX; d.edge_count()];
    let mut bend_parent: Vec<usize> = (0..d.edge_count()).collect();
    for b in d.bends() {
        let (x, y) = (find(&mut bend_parent, b.ends[0]), find(&mut bend_parent, b.ends[1]));
        if x != y {
            bend_parent[x] = y;
        }
    }
    let mut classes = 0;
    let mut root_class = vec![usize::MAX; d.edge_count()];
    for (e, slot) in class.iter_mut().enumerate() {
        let r = find(&mut bend_parent, e);
        if root_class[r] == usize::MAX {
            root_class[r] = classes;
            classes += 1;
        }
        *slot = root_class[r];
    }
    // (A-pair, A-pair, B-pair, B-pair) per crossing in class ids
    let pairs: Vec<[(usize, usize); 4]> = d
        .crossings()
        .iter()
        .map(|x| {
            let s = x.slots.map(|e| class[e]);
            [(s[0], s[1]), (s[2], s[3]), (s[0], s[3]), (s[1], s[2])]
        })
        .collect();
    let max_loops = classes + 1;
    let tally = |lo: u64, hi: u64| -> Vec<u64> {
        let mut counts = vec![0u64; (c + 1) * max_loops];
        let mut parent = vec![0usize; classes];
        for state in lo..hi {
            for (k, p) in parent.iter_mut().enumerate() {
                *p = k;
            }
            let mut loops = classes;
            for (k, pr) in pairs.iter().enumerate() {
                let off = if state >> k & 1 == 0 { 0 } else { 2 };
                for &(x, y) in &pr[off..off + 2] {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx] = ry;
                        loops -= 1;
                    }
                }
            }
            let b = state.count_ones() as usize;
            counts[b * max_loops + loops] += 1;
        }
        counts
    };
    let total = 1u64 << c;
    let counts = if c >= 14 {
        let chunk = 1u64 << 12;
        (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|k| tally(k * chunk, ((k + 1) * chunk).min(total)))
            .reduce(
                || vec![0u64; (c + 1) * max_loops],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    } else {
        tally(0, total)
    };
    let delta = LaurentPolynomial::loop_value();
    let mut delta_pows = vec![LaurentPolynomial::one()];
    for k in 1..max_loops {
        delta_pows.push(&delta_pows[k - 1] * &delta);
    }
    let mut out = LaurentPolynomial::zero();
    for b in 0..=c {
        for loops in 1..max_loops {
            let n = counts[b * max_loops + loops];
            if n > 0 {
                let a_minus_b = c as i64 - 2 * b as i64;
                out = &out + &delta_pows[loops - 1].scale(n as i128, a_minus_b);
            }
        }
    }
    Ok(out)
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Bracket of a plat closure by a top-to-bottom transfer over crossingless
/// matchings. `σ_i` expands as `A·U_i + A⁻¹·1`, `σ_i⁻¹` as `A·1 + A⁻¹·U_i`,
/// matching the smoothings of [`plat_closure_diagram`].
pub fn plat_bracket(p: &PlatPresentation) -> LaurentPolynomial {
    let m = p.strands();
    let delta = LaurentPolynomial::loop_value();
    let caps: Vec<u8> = (0..m).map(|k| (k ^ 1) as u8).collect();
    let mut states: BTreeMap<Vec<u8>, LaurentPolynomial> = BTreeMap::new();
    states.insert(caps.clone(), LaurentPolynomial::one());
    for l in p.word().letters() {
        let i = l.index - 1;
        let (cup_coeff, id_coeff) = if l.positive { (1, -1) } else { (-1, 1) };
        let mut next: BTreeMap<Vec<u8>, LaurentPolynomial> = BTreeMap::new();
        for (matching, coeff) in states {
            let id_term = coeff.scale(1, id_coeff);
            accumulate(&mut next, matching.clone(), id_term);
            let mut joined = matching;
            let cup_term = if joined[i] as usize == i + 1 {
                &coeff.scale(1, cup_coeff) * &delta
            } else {
                let (a, b) = (joined[i] as usize, joined[i + 1] as usize);
                joined[a] = b as u8;
                joined[b] = a as u8;
                joined[i] = (i + 1) as u8;
                joined[i + 1] = i as u8;
                coeff.scale(1, cup_coeff)
            };
            accumulate(&mut next, joined, cup_term);
        }
        states = next;
    }
    let mut out = LaurentPolynomial::zero();
    for (matching, coeff) in states {
        let loops = closing_loops(&matching, &caps);
        out = &out + &(&coeff * &delta.pow(loops as u32 - 1));
    }
    out
}

fn accumulate(map: &mut BTreeMap<Vec<u8>, LaurentPolynomial>, key: Vec<u8>, value: LaurentPolynomial) {
    if value.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v = &*v + &value;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, value);
        }
    }
}

/// Cycles in the union of two perfect matchings on the same points.
fn closing_loops(upper: &[u8], lower: &[u8]) -> usize {
    let mut seen = vec![false; upper.len()];
    let mut loops = 0;
    for start in 0..upper.len() {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = upper[x] as usize;
            seen[y] = true;
            x = lower[y] as usize;
            if x == start {
                break;
            }
        }
    }
    loops
}

/// Sum of crossing signs under an orientation.
pub fn writhe(d: &LinkDiagram, o: &Orientation) -> Result<i64, OracleError> {
    let t = d.traversal();
    if o.reversed.len() != t.components {
        return Err(OracleError::IncompleteOrientation { given: o.reversed.len(), expected: t.components });
    }
    let mut w = 0;
    for (k, x) in d.crossings().iter().enumerate() {
        let inward = |slot: usize| {
            let e = x.slots[slot];
            LinkDiagram::flows_into(&t, e, k, slot) != o.reversed[t.component_of[e]]
        };
        // positive when the under strand enters at slot 0 exactly when the
        // over strand enters at slot 3
        w += if inward(0) == inward(3) { 1 } else { -1 };
    }
    Ok(w)
}

fn orientation_classes(components: usize) -> impl Iterator<Item = Orientation> {
    let classes = 1usize << components.saturating_sub(1);
    (0..classes).map(move |mask| Orientation {
        reversed: (0..components).map(|c| c > 0 && mask >> (c - 1) & 1 == 1).collect(),
    })
}

fn normalized_multiset(d: &LinkDiagram, bracket: &LaurentPolynomial) -> InvariantValue {
    let components = d.component_count();
    let polys = orientation_classes(components)
        .map(|o| {
            let w = writhe(d, &o).expect("orientation sized to the diagram");
            &LaurentPolynomial::writhe_factor(w) * bracket
        })
        .collect();
    InvariantValue::from_polynomials(polys)
}

/// The unoriented invariant of a plat, using the transfer bracket.
pub fn invariant(p: &PlatPresentation) -> InvariantValue {
    let d = plat_closure_diagram(p);
    normalized_multiset(&d, &plat_bracket(p))
}

/// The same invariant through the `2^c` state sum on the closure diagram.
pub fn invariant_state_sum(p: &PlatPresentation, cap: usize) -> Result<InvariantValue, OracleError> {
    let d = plat_closure_diagram(p);
    let bracket = kauffman_bracket_capped(&d, cap)?;
    Ok(normalized_multiset(&d, &bracket))
}

pub fn invariants_equal(a: &InvariantValue, b: &InvariantValue) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plat(n: usize, text: &str) -> PlatPresentation {
        PlatPresentation::parse(n, text).unwrap()
    }

    fn poly(terms: &[(i64, i128)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(poly(&[(4, -1), (-4, -1)]).to_string(), "-A^4 - A^-4");
        assert_eq!(LaurentPolynomial::one().to_string(), "1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(poly(&[(1, 2), (0, -3), (-1, 1)]).to_string(), "2A - 3 + A^-1");
        let json = serde_json::to_string(&poly(&[(4, -1), (-4, -1)])).unwrap();
        assert_eq!(json, r#"{"-4":-1,"4":-1}"#);
        let back: LaurentPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly(&[(4, -1), (-4, -1)]));
    }

    #[test]
    fn arithmetic_drops_zeros() {
        let p = poly(&[(2, 1), (0, 3)]);
        assert!((&p - &p).is_zero());
        assert_eq!(&p * &LaurentPolynomial::one(), p);
        assert_eq!(LaurentPolynomial::loop_value().pow(2), poly(&[(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn bracket_examples() {
        let unknot = plat_closure_diagram(&plat(1, ""));
        assert_eq!(kauffman_bracket(&unknot).unwrap(), LaurentPolynomial::one());
        let unlink = plat_closure_diagram(&plat(2, ""));
        assert_eq!(kauffman_bracket(&unlink).unwrap(), LaurentPolynomial::loop_value());
        let hopf = plat_closure_diagram(&plat(2, "s2 s2"));
        assert_eq!(kauffman_bracket(&hopf).unwrap(), poly(&[(4, -1), (-4, -1)]));
    }

    #[test]
    fn transfer_matches_examples() {
        assert_eq!(plat_bracket(&plat(1, "")), LaurentPolynomial::one());
        assert_eq!(plat_bracket(&plat(2, "")), LaurentPolynomial::loop_value());
        assert_eq!(plat_bracket(&plat(2, "s2 s2")), poly(&[(4, -1), (-4, -1)]));
        // one-crossing unknot: A·δ + A⁻¹ = -A³
        assert_eq!(plat_bracket(&plat(1, "s1")), poly(&[(3, -1)]));
    }

    #[test]
    fn writhe_examples() {
        let unlink = plat_closure_diagram(&plat(2, ""));
        for o in orientation_classes(2) {
            assert_eq!(writhe(&unlink, &o).unwrap(), 0);
        }
        let hopf = plat_closure_diagram(&plat(2, "s2 s2"));
        let mut ws: Vec<i64> = orientation_classes(2).map(|o| writhe(&hopf, &o).unwrap()).collect();
        ws.sort();
        assert_eq!(ws, vec![-2, 2]);
        let kink = plat_closure_diagram(&plat(1, "s1"));
        let forward = writhe(&kink, &Orientation { reversed: vec![false] }).unwrap();
        let backward = writhe(&kink, &Orientation { reversed: vec![true] }).unwrap();
        assert_eq!(forward.abs(), 1);
        assert_eq!(forward, backward);
        assert_eq!(
            writhe(&hopf, &Orientation::reference(1)),
            Err(OracleError::IncompleteOrientation { given: 1, expected: 2 })
        );
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(invariant(&plat(1, "")).to_string(), "{1}");
        assert_eq!(invariant(&plat(2, "")).to_string(), "{-A^2 - A^-2}");
        let hopf = invariant(&plat(2, "s2 s2"));
        // (-A³)^(∓2) · (-A⁴ - A⁻⁴)
        let expected = InvariantValue::from_polynomials(vec![
            poly(&[(-2, -1), (-10, -1)]),
            poly(&[(10, -1), (2, -1)]),
        ]);
        assert_eq!(hopf, expected);
        assert!(invariants_equal(&hopf, &hopf.clone()));
        assert!(!invariants_equal(&invariant(&plat(1, "")), &invariant(&plat(2, ""))));
        assert_eq!(invariant(&plat(1, "s1")), invariant(&plat(1, "")));
    }

    #[test]
    fn trefoil_is_chiral() {
        let right = invariant(&plat(2, "s2 s2 s2"));
        let left = invariant(&plat(2, "s2' s2' s2'"));
        assert_eq!(right.len(), 1);
        assert_ne!(right, left);
        assert_ne!(right, invariant(&plat(1, "")));
        // mirror image swaps A and A⁻¹
        let mirrored: Vec<(i64, i128)> = right.polynomials()[0].terms().map(|(e, c)| (-e, c)).collect();
        assert_eq!(left.polynomials()[0], LaurentPolynomial::from_terms(mirrored));
    }

    #[test]
    fn cap_is_enforced() {
        let long = plat(1, &"s1 ".repeat(10));
        let d = plat_closure_diagram(&long);
        assert_eq!(
            kauffman_bracket_capped(&d, 9),
            Err(OracleError::ResourceLimit { crossings: 10, cap: 9 })
        );
        assert!(invariant_state_sum(&long, 10).is_ok());
    }

    #[test]
    fn distant_unknot_multiplies_by_loop() {
        for text in ["", "s1 s2 s3'", "s2 s2 s2", "s1 s2' s3 s2"] {
            let d = plat_closure_diagram(&plat(2, text));
            let with = kauffman_bracket(&d.with_distant_unknot()).unwrap();
            assert_eq!(with, &kauffman_bracket(&d).unwrap() * &LaurentPolynomial::loop_value());
        }
    }
}
