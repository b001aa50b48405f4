//! Candidate edge directions: canonicalization and direction sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Scalar, Vector};

/// How sign is treated when canonicalizing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionMode {
    /// Keep orientation: e and -e stay distinct.
    Directed,
    /// Identify e with -e: the first nonzero coordinate is made positive.
    Undirected,
}

/// The unique primitive integer vector that is a positive multiple of `v`
/// (`Directed`), additionally sign-normalized so the first nonzero
/// coordinate is positive (`Undirected`).
pub fn canonical_direction(v: &[Scalar], mode: DirectionMode) -> Result<Vector> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    // Clear denominators, then divide out the content.
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    for n in ints.iter_mut() {
        *n = &*n / &gcd;
    }
    if mode == DirectionMode::Undirected {
        if let Some(first) = ints.iter().find(|n| !n.is_zero()) {
            if first.is_negative() {
                for n in ints.iter_mut() {
                    *n = -&*n;
                }
            }
        }
    }
    Ok(ints.into_iter().map(Scalar::from_integer).collect())
}

/// Where a direction set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionSource {
    UserProvided,
    PairwiseDifferences,
    Circuits,
}

/// A canonicalized, duplicate-free, lexicographically sorted set of candidate
/// edge directions. The contract (not checkable here) is that it contains a
/// positive multiple of every edge direction of the target polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSet {
    directions: Vec<Vector>,
    pub source: DirectionSource,
}

impl DirectionSet {
    /// Canonicalizes in `Directed` mode: both `e` and `-e` must be supplied to
    /// traverse both orientations.
    pub fn directed(raw: impl IntoIterator<Item = Vector>, source: DirectionSource) -> Result<Self> {
        Self::build(raw, source, false)
    }

    /// Expands each direction to the pair `{e, -e}` before canonicalizing.
    pub fn undirected(
        raw: impl IntoIterator<Item = Vector>,
        source: DirectionSource,
    ) -> Result<Self> {
        Self::build(raw, source, true)
    }

    fn build(
        raw: impl IntoIterator<Item = Vector>,
        source: DirectionSource,
        expand: bool,
    ) -> Result<Self> {
        let mut set = std::collections::BTreeSet::new();
        for v in raw {
            let c = canonical_direction(&v, DirectionMode::Directed)?;
            if expand {
                set.insert(c.iter().map(|x| -x).collect::<Vector>());
            }
            set.insert(c);
        }
        Ok(Self {
            directions: set.into_iter().collect(),
            source,
        })
    }

    /// All pairwise point differences, in both orientations.
    pub fn pairwise_differences(points: &[Vector]) -> Result<Self> {
        let mut raw = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                if p != q {
                    raw.push(crate::exact::sub(p, q));
                }
            }
        }
        Self::undirected(raw, DirectionSource::PairwiseDifferences)
    }

    /// Union, keeping the left source tag.
    pub fn union(mut self, other: &DirectionSet) -> Self {
        let mut set: std::collections::BTreeSet<Vector> =
            self.directions.drain(..).collect();
        set.extend(other.directions.iter().cloned());
        Self {
            directions: set.into_iter().collect(),
            source: self.source,
        }
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Membership after undirected canonicalization; used to check the edge
    /// direction closure of a computed skeleton.
    pub fn contains_line(&self, v: &[Scalar]) -> Result<bool> {
        let c = canonical_direction(v, DirectionMode::Directed)?;
        let neg: Vector = c.iter().map(|x| -x).collect();
        Ok(self.directions.binary_search(&c).is_ok()
            || self.directions.binary_search(&neg).is_ok())
    }
}
