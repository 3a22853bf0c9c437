//! Complete multi-index sets `A` with `l_p`-degree bounds.
//!
//! A multi-index set defines the polynomial space `span { x^alpha : alpha in A }`.
//! All sets here are *complete* (downward closed: every componentwise
//! predecessor of a member is a member) and stored strictly ascending under
//! the lexicographic order that compares the last coordinate first. That
//! ordering is what makes the basis-transform matrices triangular, so it is
//! load-bearing for the whole crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default guard against accidental `(n+1)^m` blow-ups.
pub const DEFAULT_CARDINALITY_CAP: usize = 100_000_000;

/// Relative tolerance for membership tests with non-integer degree norms.
const REAL_NORM_RTOL: f64 = 1e-12;

/// Exponent vector, one entry per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        assert!(!entries.is_empty(), "multi-index needs dimension >= 1");
        Self(entries)
    }

    pub fn zeros(m: usize) -> Self {
        Self::new(vec![0; m])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Lexicographic comparison starting from the last coordinate,
    /// e.g. `(5,3,1) < (1,0,3) < (1,1,3)`. Panics on dimension mismatch;
    /// use [`lex_compare`] for the checked variant.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "lex_cmp dimension mismatch");
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// True iff `self_i <= other_i` for every coordinate.
    pub fn le_componentwise(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus_unit(&self, dim: usize) -> Self {
        let mut e = self.0.clone();
        e[dim] += 1;
        Self(e)
    }

    /// Componentwise predecessor; `None` if the coordinate is already zero.
    pub fn minus_unit(&self, dim: usize) -> Option<Self> {
        if self.0[dim] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[dim] -= 1;
        Some(Self(e))
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `alpha! = prod_i alpha_i!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&k| (1..=k).map(|j| j as f64).product::<f64>())
            .product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("multi-index needs dimension >= 1"));
        }
        Ok(Self(v))
    }
}

/// Checked lexicographic comparison of two multi-indices.
pub fn lex_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.lex_cmp(b))
}

/// Which `l_p` norm bounds the degree. The integer cases are decided in
/// exact integer arithmetic; general real `p` is tested in floating point
/// with a relative tolerance of `1e-12` and is therefore approximate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeNorm {
    L1,
    L2,
    LInf,
    Real(f64),
}

impl DegreeNorm {
    /// Normalize a raw exponent: `1 -> L1`, `2 -> L2`, `inf -> LInf`.
    pub fn from_value(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidDegreeNorm(p));
        }
        if p == f64::INFINITY {
            Ok(Self::LInf)
        } else if p == 1.0 {
            Ok(Self::L1)
        } else if p == 2.0 {
            Ok(Self::L2)
        } else {
            Ok(Self::Real(p))
        }
    }

    /// The raw exponent value (`inf` mapped to `f64::INFINITY`).
    pub fn value(&self) -> f64 {
        match self {
            Self::L1 => 1.0,
            Self::L2 => 2.0,
            Self::LInf => f64::INFINITY,
            Self::Real(p) => *p,
        }
    }

    /// `||alpha||_p <= n`, exact for the integer cases.
    pub fn norm_leq(&self, alpha: &[usize], n: usize) -> bool {
        match self {
            Self::L1 => alpha.iter().sum::<usize>() <= n,
            Self::L2 => {
                let s: u128 = alpha.iter().map(|&a| (a as u128) * (a as u128)).sum();
                s <= (n as u128) * (n as u128)
            }
            Self::LInf => alpha.iter().all(|&a| a <= n),
            Self::Real(p) => {
                let s: f64 = alpha.iter().map(|&a| (a as f64).powf(*p)).sum();
                s <= (n as f64).powf(*p) * (1.0 + REAL_NORM_RTOL)
            }
        }
    }
}

impl fmt::Display for DegreeNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LInf => write!(f, "inf"),
            other => write!(f, "{}", other.value()),
        }
    }
}

impl Serialize for DegreeNorm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::LInf => s.serialize_str("inf"),
            other => s.serialize_f64(other.value()),
        }
    }
}

impl<'de> Deserialize<'de> for DegreeNorm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(v) => v,
            Raw::Str(s) if s == "inf" => f64::INFINITY,
            Raw::Str(s) => {
                return Err(serde::de::Error::custom(format!(
                    "degree norm must be a number or \"inf\", got {s:?}"
                )))
            }
        };
        Self::from_value(p).map_err(serde::de::Error::custom)
    }
}

/// Degree bound `(n, p)` recording how a set was built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeSpec {
    pub n: usize,
    pub p: DegreeNorm,
}

/// Step in the increment chain of a set: entry `q` equals its `parent`
/// with coordinate `dim` raised from `level - 1` to `level`. Lets callers
/// share prefix products when evaluating all basis elements at one point.
#[derive(Debug, Clone, Copy)]
pub struct ChainStep {
    pub parent: usize,
    pub dim: usize,
    pub level: usize,
}

/// Complete multi-index set, strictly ascending in lexicographic order.
#[derive(Debug, Clone)]
pub struct MultiIndexSet {
    m: usize,
    indices: Vec<MultiIndex>,
    degree_spec: Option<DegreeSpec>,
    positions: HashMap<MultiIndex, usize>,
}

impl PartialEq for MultiIndexSet {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.indices == other.indices
    }
}

impl MultiIndexSet {
    /// All `alpha` with `||alpha||_p <= n`, emitted directly in lex order.
    pub fn complete(m: usize, n: usize, p: DegreeNorm) -> Result<Self> {
        Self::complete_with_cap(m, n, p, DEFAULT_CARDINALITY_CAP)
    }

    pub fn complete_with_cap(m: usize, n: usize, p: DegreeNorm, cap: usize) -> Result<Self> {
        assert!(m >= 1, "dimension must be >= 1");
        if p.value() < 1.0 || p.value().is_nan() {
            return Err(Error::InvalidDegreeNorm(p.value()));
        }
        let mut indices = Vec::new();
        let mut coords = vec![0usize; m];
        emit_complete(m, n, &p, &mut coords, m, &mut indices, cap)?;
        let positions = position_map(&indices);
        Ok(Self {
            m,
            indices,
            degree_spec: Some(DegreeSpec { n, p }),
            positions,
        })
    }

    /// Build from a raw list: sorts, rejects duplicates, and verifies
    /// downward closure. The empty set is allowed (vacuously complete).
    pub fn from_indices(m: usize, mut indices: Vec<MultiIndex>) -> Result<Self> {
        assert!(m >= 1, "dimension must be >= 1");
        for idx in &indices {
            if idx.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: idx.dim(),
                });
            }
        }
        indices.sort_by(|a, b| a.lex_cmp(b));
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet("duplicate indices".into()));
        }
        let positions = position_map(&indices);
        for idx in &indices {
            for d in 0..m {
                if let Some(pred) = idx.minus_unit(d) {
                    if !positions.contains_key(&pred) {
                        return Err(Error::InvalidIndexSet(format!(
                            "not downward closed: {idx} present but {pred} missing"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            m,
            indices,
            degree_spec: None,
            positions,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    #[inline]
    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    #[inline]
    pub fn index(&self, pos: usize) -> &MultiIndex {
        &self.indices[pos]
    }

    pub fn degree_spec(&self) -> Option<DegreeSpec> {
        self.degree_spec
    }

    pub fn contains(&self, idx: &MultiIndex) -> bool {
        self.positions.contains_key(idx)
    }

    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.positions.get(idx).copied()
    }

    /// Per-dimension maxima `n_i = max_alpha alpha_i`; the minimal generating
    /// node counts are `n_i + 1`.
    pub fn max_degrees(&self) -> Vec<usize> {
        let mut maxes = vec![0usize; self.m];
        for idx in &self.indices {
            for (mx, &a) in maxes.iter_mut().zip(idx.entries()) {
                *mx = (*mx).max(a);
            }
        }
        maxes
    }

    /// Downward-closure check. Sets built by [`MultiIndexSet::complete`] or
    /// accepted by [`MultiIndexSet::from_indices`] always pass; this is the
    /// public predicate for externally supplied lists.
    pub fn is_complete(&self) -> bool {
        self.indices.iter().all(|idx| {
            (0..self.m).all(|d| match idx.minus_unit(d) {
                Some(pred) => self.positions.contains_key(&pred),
                None => true,
            })
        })
    }

    /// Discrete inner and outer boundaries together with the completed
    /// closure `A ∪ ∂A` (missing predecessors of outer indices are filled in
    /// so the closure is itself a valid complete set).
    pub fn boundaries(&self) -> Boundaries {
        let inner: Vec<MultiIndex> = self
            .indices
            .iter()
            .filter(|idx| (0..self.m).all(|d| !self.contains(&idx.plus_unit(d))))
            .cloned()
            .collect();
        let mut outer: Vec<MultiIndex> = Vec::new();
        let mut seen: HashMap<MultiIndex, ()> = HashMap::new();
        for idx in &inner {
            for d in 0..self.m {
                let up = idx.plus_unit(d);
                if !self.contains(&up) && seen.insert(up.clone(), ()).is_none() {
                    outer.push(up);
                }
            }
        }
        outer.sort_by(|a, b| a.lex_cmp(b));

        // Closure: union, then fill in predecessors until downward closed.
        let mut members: HashMap<MultiIndex, ()> = HashMap::new();
        for idx in self.indices.iter().chain(&outer) {
            members.insert(idx.clone(), ());
        }
        let mut stack: Vec<MultiIndex> = outer.clone();
        while let Some(idx) = stack.pop() {
            for d in 0..self.m {
                if let Some(pred) = idx.minus_unit(d) {
                    if members.insert(pred.clone(), ()).is_none() {
                        stack.push(pred);
                    }
                }
            }
        }
        let mut closure_indices: Vec<MultiIndex> = members.into_keys().collect();
        closure_indices.sort_by(|a, b| a.lex_cmp(b));
        let positions = position_map(&closure_indices);
        let closure = MultiIndexSet {
            m: self.m,
            indices: closure_indices,
            degree_spec: None,
            positions,
        };
        Boundaries {
            inner,
            outer,
            closure,
        }
    }

    /// Split on the last coordinate: `A1 = { alpha : alpha_m = 0 }` and
    /// `A2 = A \ A1` with the last coordinate decremented so both halves are
    /// again complete sets. `shifted_by_one` records the decrement.
    pub fn split_on_last(&self) -> SplitOnLast {
        assert!(!self.is_empty(), "cannot split an empty set");
        let last = self.m - 1;
        let mut a1 = Vec::new();
        let mut a2 = Vec::new();
        for idx in &self.indices {
            if idx.get(last) == 0 {
                a1.push(idx.clone());
            } else {
                a2.push(idx.minus_unit(last).expect("last coordinate >= 1"));
            }
        }
        let shifted_by_one = !a2.is_empty();
        let positions1 = position_map(&a1);
        let positions2 = position_map(&a2);
        SplitOnLast {
            zero_last: MultiIndexSet {
                m: self.m,
                indices: a1,
                degree_spec: None,
                positions: positions1,
            },
            shifted: MultiIndexSet {
                m: self.m,
                indices: a2,
                degree_spec: None,
                positions: positions2,
            },
            shifted_by_one,
        }
    }

    /// Increment chain: for every position `q >= 1`, a predecessor position
    /// plus the single coordinate increment that produces entry `q`. Entry 0
    /// is the zero index. Evaluating all monomials or Newton basis elements
    /// at a point walks this chain with one multiplication per entry.
    pub fn increment_chain(&self) -> Vec<ChainStep> {
        assert!(
            !self.is_empty() && self.indices[0] == MultiIndex::zeros(self.m),
            "increment chain needs a complete set containing the zero index"
        );
        let mut chain = Vec::with_capacity(self.len().saturating_sub(1));
        for idx in &self.indices[1..] {
            let dim = idx
                .entries()
                .iter()
                .position(|&a| a > 0)
                .expect("nonzero index");
            let parent = self
                .position(&idx.minus_unit(dim).expect("positive coordinate"))
                .expect("complete set contains predecessor");
            chain.push(ChainStep {
                parent,
                dim,
                level: idx.get(dim),
            });
        }
        chain
    }
}

fn position_map(indices: &[MultiIndex]) -> HashMap<MultiIndex, usize> {
    indices
        .iter()
        .enumerate()
        .map(|(i, idx)| (idx.clone(), i))
        .collect()
}

/// Recursive lex-order emission; coordinate `d-1` is filled in this frame,
/// counting down so the last coordinate varies slowest.
fn emit_complete(
    m: usize,
    n: usize,
    p: &DegreeNorm,
    coords: &mut Vec<usize>,
    d: usize,
    out: &mut Vec<MultiIndex>,
    cap: usize,
) -> Result<()> {
    if d == 0 {
        if out.len() >= cap {
            return Err(Error::CardinalityCapExceeded { cap });
        }
        out.push(MultiIndex::new(coords.clone()));
        return Ok(());
    }
    let mut k = 0usize;
    loop {
        coords[d - 1] = k;
        // Feasibility of the partial assignment: the remaining (unset)
        // coordinates are zero in `coords`, so the norm test on the full
        // vector is exactly the partial-norm test.
        let feasible = p.norm_leq(&coords[d - 1..m], n);
        if !feasible {
            coords[d - 1] = 0;
            return Ok(());
        }
        emit_complete(m, n, p, coords, d - 1, out, cap)?;
        k += 1;
    }
}

/// Result of [`MultiIndexSet::boundaries`].
#[derive(Debug, Clone)]
pub struct Boundaries {
    /// Indices whose every coordinate increment leaves the set.
    pub inner: Vec<MultiIndex>,
    /// Increments of inner indices, deduplicated and lex-sorted.
    pub outer: Vec<MultiIndex>,
    /// Complete closure containing `A` and the outer boundary.
    pub closure: MultiIndexSet,
}

/// Result of [`MultiIndexSet::split_on_last`].
#[derive(Debug, Clone)]
pub struct SplitOnLast {
    /// `A1`: members whose last coordinate is zero.
    pub zero_last: MultiIndexSet,
    /// `A2` with the last coordinate decremented once (complete, may be empty).
    pub shifted: MultiIndexSet,
    /// True iff `A2` was non-empty, i.e. the decrement actually happened.
    pub shifted_by_one: bool,
}

// Serialized form: {"m": int, "n": int-or-null, "p": number-or-"inf", "indices": [[..], ..]}
#[derive(Serialize, Deserialize)]
struct SetRepr {
    m: usize,
    n: Option<usize>,
    p: Option<DegreeNorm>,
    indices: Vec<MultiIndex>,
}

impl Serialize for MultiIndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetRepr {
            m: self.m,
            n: self.degree_spec.map(|d| d.n),
            p: self.degree_spec.map(|d| d.p),
            indices: self.indices.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiIndexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SetRepr::deserialize(d)?;
        let mut set =
            MultiIndexSet::from_indices(repr.m, repr.indices).map_err(serde::de::Error::custom)?;
        set.degree_spec = match (repr.n, repr.p) {
            (Some(n), Some(p)) => Some(DegreeSpec { n, p }),
            _ => None,
        };
        Ok(set)
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_index(m: usize) -> impl Strategy<Value = MultiIndex> {
        proptest::collection::vec(0usize..6, m).prop_map(MultiIndex::new)
    }

    proptest! {
        #[test]
        fn lex_is_total_and_antisymmetric(a in arb_index(3), b in arb_index(3)) {
            let ab = a.lex_cmp(&b);
            let ba = b.lex_cmp(&a);
            prop_assert_eq!(ab, ba.reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }

        #[test]
        fn lex_is_transitive(a in arb_index(3), b in arb_index(3), c in arb_index(3)) {
            let mut v = [a, b, c];
            v.sort_by(|x, y| x.lex_cmp(y));
            prop_assert!(v[0].lex_cmp(&v[1]) != Ordering::Greater);
            prop_assert!(v[1].lex_cmp(&v[2]) != Ordering::Greater);
            prop_assert!(v[0].lex_cmp(&v[2]) != Ordering::Greater);
        }

        #[test]
        fn built_sets_are_complete_and_sorted(m in 1usize..4, n in 0usize..5, pick in 0usize..4) {
            let p = [DegreeNorm::L1, DegreeNorm::L2, DegreeNorm::LInf, DegreeNorm::Real(2.5)][pick];
            let a = MultiIndexSet::complete(m, n, p).unwrap();
            prop_assert!(a.is_complete());
            for w in a.indices().windows(2) {
                prop_assert_eq!(w[0].lex_cmp(&w[1]), Ordering::Less);
            }
        }

        #[test]
        fn componentwise_le_implies_lex_le(a in arb_index(3), b in arb_index(3)) {
            if a.le_componentwise(&b) {
                prop_assert!(a.lex_cmp(&b) != Ordering::Greater);
            }
        }
    }
}
