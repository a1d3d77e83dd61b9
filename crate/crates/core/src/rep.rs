//! Representations of the equioriented quiver `1 -> 2 -> ... -> n` as
//! multisets of segments, and the rank-sequence dictionary.
//!
//! A representation is stored by its multiplicity map, which is already a
//! canonical form: two representations are isomorphic exactly when their maps
//! agree. The rank sequence `r(i,j) = rank(f_{j-1} ... f_i)` is the second
//! canonical form; [`ranks_of`] and [`rep_of`] convert between the two.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, RankInequality, Result};

/// The vertex involution `k -> n + 1 - k`.
#[inline]
pub fn sigma(n: usize, k: usize) -> usize {
    n + 1 - k
}

/// The indecomposable `U_{i,j}`, supported on vertices `i..=j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub i: usize,
    pub j: usize,
}

impl Segment {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || i > j || j > n {
            return Err(Error::InvalidSegment { i, j, n });
        }
        Ok(Segment { i, j })
    }

    /// Projective cover of the simple at `k`, i.e. `U_{k,n}`.
    pub fn projective(k: usize, n: usize) -> Self {
        Segment { i: k, j: n }
    }

    /// `U_{1,k}`.
    pub fn injective(k: usize) -> Self {
        Segment { i: 1, j: k }
    }

    /// `∇U_{i,j} = U_{σ(j),σ(i)}`.
    pub fn dual(self, n: usize) -> Self {
        Segment {
            i: sigma(n, self.j),
            j: sigma(n, self.i),
        }
    }

    pub fn is_self_dual(self, n: usize) -> bool {
        self.dual(n) == self
    }

    pub fn contains(self, k: usize) -> bool {
        self.i <= k && k <= self.j
    }

    pub fn len(self) -> usize {
        self.j + 1 - self.i
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U[{},{}]", self.i, self.j)
    }
}

/// Dimension vector `(d_1, ..., d_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Ringel form `<d,e> = Σ d_i e_i − Σ d_i e_{i+1}`.
    pub fn euler_form(&self, other: &DimVector) -> i64 {
        let d = &self.0;
        let e = &other.0;
        let diag: i64 = d.iter().zip(e).map(|(&a, &b)| a as i64 * b as i64).sum();
        let off: i64 = d
            .iter()
            .zip(e.iter().skip(1))
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum();
        diag - off
    }
}

/// An isomorphism class of representations, stored as segment multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Representation {
    n: usize,
    mult: BTreeMap<Segment, u32>,
}

impl Representation {
    /// The zero representation on `n` vertices.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "quiver needs at least one vertex");
        Representation {
            n,
            mult: BTreeMap::new(),
        }
    }

    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let mut rep = Representation::zero(n);
        for (i, j, m) in triples {
            rep.add(Segment::new(i, j, n)?, m);
        }
        Ok(rep)
    }

    pub fn segment(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_triples(n, [(i, j, 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, seg: Segment) -> u32 {
        self.mult.get(&seg).copied().unwrap_or(0)
    }

    /// Segments with non-zero multiplicity, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Segment, u32)> + '_ {
        self.mult.iter().map(|(&s, &m)| (s, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn num_summands(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn add(&mut self, seg: Segment, m: u32) {
        debug_assert!(seg.j <= self.n);
        if m > 0 {
            *self.mult.entry(seg).or_insert(0) += m;
        }
    }

    pub fn remove(&mut self, seg: Segment, m: u32) -> Result<()> {
        let have = self.multiplicity(seg);
        if have < m {
            return Err(Error::InsufficientMultiplicity {
                segment: seg,
                have,
                need: m,
            });
        }
        if have == m {
            self.mult.remove(&seg);
        } else {
            self.mult.insert(seg, have - m);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        same_quiver(self, other)?;
        let mut out = self.clone();
        for (s, m) in other.iter() {
            out.add(s, m);
        }
        Ok(out)
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = vec![0u32; self.n];
        for (s, m) in self.iter() {
            for k in s.i..=s.j {
                d[k - 1] += m;
            }
        }
        DimVector(d)
    }

    pub fn total_dim(&self) -> u32 {
        self.iter().map(|(s, m)| s.len() as u32 * m).sum()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(s, m)| {
                if m == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct MultEntry {
    i: usize,
    j: usize,
    m: u32,
}

#[derive(Serialize, Deserialize)]
struct RepWire {
    n: usize,
    mult: Vec<MultEntry>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RepWire {
            n: self.n,
            mult: self
                .iter()
                .map(|(s, m)| MultEntry { i: s.i, j: s.j, m })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = RepWire::deserialize(deserializer)?;
        Representation::from_triples(wire.n, wire.mult.into_iter().map(|e| (e.i, e.j, e.m)))
            .map_err(serde::de::Error::custom)
    }
}

/// A rank value under the boundary conventions: `r(0,·) = r(·,n+1) = 0`
/// and `r(i,j) = ∞` for `i > j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(v) => Some(v),
            Rank::Infinite => None,
        }
    }
}

/// Upper-triangular rank array, `rows[i-1][j-i] = r(i,j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankSequence {
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl RankSequence {
    pub fn zeros(n: usize) -> Self {
        RankSequence {
            n,
            rows: (1..=n).map(|i| vec![0; n + 1 - i]).collect(),
        }
    }

    /// Builds from row-major upper-triangular rows and checks validity.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let r = Self::from_rows_unchecked(rows)?;
        r.validate()?;
        Ok(r)
    }

    /// Shape check only; the inequalities are not verified.
    pub fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty rank sequence".into()));
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != n - idx {
                return Err(Error::InvalidRankSequence {
                    kind: RankInequality::Shape,
                    i: idx + 1,
                    j: idx + row.len(),
                });
            }
        }
        Ok(RankSequence { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// In-range entry, `1 <= i <= j <= n`.
    pub fn value(&self, i: usize, j: usize) -> u32 {
        self.rows[i - 1][j - i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.rows[i - 1][j - i] = v;
    }

    /// Entry with the boundary conventions applied.
    pub fn get(&self, i: usize, j: usize) -> Rank {
        if i == 0 || j == self.n + 1 {
            Rank::Finite(0)
        } else if i > j {
            Rank::Infinite
        } else {
            Rank::Finite(self.value(i, j))
        }
    }

    /// Like [`get`](Self::get) but for index pairs that never reach `i > j`.
    pub(crate) fn fin(&self, i: usize, j: usize) -> i64 {
        match self.get(i, j) {
            Rank::Finite(v) => v as i64,
            Rank::Infinite => panic!("rank r({i},{j}) is infinite"),
        }
    }

    pub fn diagonal(&self) -> DimVector {
        DimVector((1..=self.n).map(|i| self.value(i, i)).collect())
    }

    pub fn sum(&self) -> u64 {
        self.rows.iter().flatten().map(|&v| v as u64).sum()
    }

    /// Checks the three families of inequalities characterising rank sequences.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let fail = |kind, i, j| Err(Error::InvalidRankSequence { kind, i, j });
        for i in 1..=n {
            for j in i..n {
                if self.fin(i, j) < self.fin(i, j + 1) {
                    return fail(RankInequality::RowMonotone, i, j);
                }
            }
        }
        for i in 2..=n {
            for j in i..=n {
                if self.fin(i - 1, j) > self.fin(i, j) {
                    return fail(RankInequality::ColumnMonotone, i, j);
                }
            }
        }
        for i in 2..=n {
            for j in i..n {
                let above = self.fin(i - 1, j) - self.fin(i - 1, j + 1);
                let here = self.fin(i, j) - self.fin(i, j + 1);
                if above > here {
                    return fail(RankInequality::DoubleDifference, i, j);
                }
            }
        }
        Ok(())
    }

    /// `r^self >= r^other` entrywise with equal diagonals.
    pub fn dominates(&self, other: &RankSequence) -> bool {
        self.n == other.n
            && self.diagonal() == other.diagonal()
            && self
                .rows
                .iter()
                .flatten()
                .zip(other.rows.iter().flatten())
                .all(|(a, b)| a >= b)
    }

    /// Entrywise sum; the rank sequence of a direct sum.
    pub fn plus(&self, other: &RankSequence) -> RankSequence {
        assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        RankSequence { n: self.n, rows }
    }

    /// Entrywise difference, `None` if some entry would go negative.
    pub fn minus(&self, other: &RankSequence) -> Option<RankSequence> {
        assert_eq!(self.n, other.n);
        let mut rows = Vec::with_capacity(self.n);
        for (a, b) in self.rows.iter().zip(&other.rows) {
            let mut row = Vec::with_capacity(a.len());
            for (x, y) in a.iter().zip(b) {
                row.push(x.checked_sub(*y)?);
            }
            rows.push(row);
        }
        Some(RankSequence { n: self.n, rows })
    }

    /// Symmetric under `r(i,j) = r(σ(j),σ(i))`.
    pub fn is_sigma_symmetric(&self) -> bool {
        let n = self.n;
        (1..=n).all(|i| (i..=n).all(|j| self.value(i, j) == self.value(sigma(n, j), sigma(n, i))))
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, line) in crate::render::matrix_lines(self).iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RanksWire {
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl Serialize for RankSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RanksWire {
            n: self.n,
            rows: self.rows.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RankSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = RanksWire::deserialize(deserializer)?;
        if wire.rows.len() != wire.n {
            return Err(serde::de::Error::custom(format!(
                "n = {} but {} rows given",
                wire.n,
                wire.rows.len()
            )));
        }
        RankSequence::from_rows(wire.rows).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn same_quiver(a: &Representation, b: &Representation) -> Result<()> {
    if a.n != b.n {
        return Err(Error::MismatchedQuiver {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

/// `r(i,j) = Σ_{k <= i, j <= l} m(k,l)`.
pub fn ranks_of(rep: &Representation) -> RankSequence {
    let n = rep.n;
    let mut r = RankSequence::zeros(n);
    for (s, m) in rep.iter() {
        // U_{k,l} contributes to every (i,j) with k <= i <= j <= l.
        for i in s.i..=s.j {
            for j in i..=s.j {
                r.rows[i - 1][j - i] += m;
            }
        }
    }
    r
}

/// Inverts [`ranks_of`] through `m(i,j) = r(i,j) − r(i,j+1) − r(i−1,j) + r(i−1,j+1)`.
pub fn rep_of(ranks: &RankSequence) -> Result<Representation> {
    ranks.validate()?;
    let n = ranks.n;
    let mut rep = Representation::zero(n);
    for i in 1..=n {
        for j in i..=n {
            let m = ranks.fin(i, j) - ranks.fin(i, j + 1) - ranks.fin(i - 1, j)
                + ranks.fin(i - 1, j + 1);
            debug_assert!(m >= 0);
            rep.add(Segment { i, j }, m as u32);
        }
    }
    Ok(rep)
}

/// Graded dual: `m'(σ(j),σ(i)) = m(i,j)`.
pub fn dual(rep: &Representation) -> Representation {
    let mut out = Representation::zero(rep.n);
    for (s, m) in rep.iter() {
        out.add(s.dual(rep.n), m);
    }
    out
}

pub fn dim_vector(rep: &Representation) -> DimVector {
    rep.dim_vector()
}

/// `dim Hom(U_{i,j}, U_{k,l})`.
pub fn hom_segments(src: Segment, dst: Segment) -> u32 {
    (dst.i <= src.i && src.i <= dst.j && dst.j <= src.j) as u32
}

/// `dim Ext^1(U_{k,l}, U_{i,j})`: nonzero iff `k < i <= l + 1 <= j`.
pub fn ext_segments(src: Segment, dst: Segment) -> u32 {
    (src.i < dst.i && dst.i <= src.j + 1 && src.j < dst.j) as u32
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<u64> {
    same_quiver(m, n)?;
    Ok(bilinear(m, n, hom_segments))
}

pub fn ext_dim(m: &Representation, n: &Representation) -> Result<u64> {
    same_quiver(m, n)?;
    Ok(bilinear(m, n, ext_segments))
}

fn bilinear(m: &Representation, n: &Representation, f: fn(Segment, Segment) -> u32) -> u64 {
    let mut total = 0u64;
    for (a, ma) in m.iter() {
        for (b, mb) in n.iter() {
            total += f(a, b) as u64 * ma as u64 * mb as u64;
        }
    }
    total
}

/// `[M, U_{k,l}] = r(l,l) − r(k−1,l)`.
pub fn hom_into_segment(ranks: &RankSequence, seg: Segment) -> u64 {
    (ranks.fin(seg.j, seg.j) - ranks.fin(seg.i - 1, seg.j)) as u64
}

/// `[U_{k,l}, M] = r(k,k) − r(k,l+1)`.
pub fn hom_from_segment(ranks: &RankSequence, seg: Segment) -> u64 {
    (ranks.fin(seg.i, seg.i) - ranks.fin(seg.i, seg.j + 1)) as u64
}

/// `U_{i,j}` embeds in `M` iff `r(i,j) − r(i,j+1) > 0`.
pub fn embeds_ranks(ranks: &RankSequence, seg: Segment) -> bool {
    ranks.fin(seg.i, seg.j) - ranks.fin(seg.i, seg.j + 1) > 0
}

/// `U_{i,j}` is a quotient of `M` iff `r(i,j) − r(i−1,j) > 0`.
pub fn is_quotient_ranks(ranks: &RankSequence, seg: Segment) -> bool {
    ranks.fin(seg.i, seg.j) - ranks.fin(seg.i - 1, seg.j) > 0
}

pub fn is_summand_ranks(ranks: &RankSequence, seg: Segment) -> bool {
    let (i, j) = (seg.i, seg.j);
    ranks.fin(i, j) - ranks.fin(i, j + 1) > ranks.fin(i - 1, j) - ranks.fin(i - 1, j + 1)
}

pub fn embeds(seg: Segment, rep: &Representation) -> bool {
    embeds_ranks(&ranks_of(rep), seg)
}

pub fn is_quotient(seg: Segment, rep: &Representation) -> bool {
    is_quotient_ranks(&ranks_of(rep), seg)
}

pub fn is_summand(seg: Segment, rep: &Representation) -> bool {
    is_summand_ranks(&ranks_of(rep), seg)
}

/// Every representation on `n` vertices whose dimension vector is bounded
/// entrywise by `bound`.
pub fn enumerate_bounded(n: usize, bound: &[u32]) -> Vec<Representation> {
    assert_eq!(bound.len(), n);
    let segments: Vec<Segment> = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| Segment { i, j }))
        .collect();
    let mut out = Vec::new();
    let mut room = bound.to_vec();
    let mut current = Representation::zero(n);
    fn go(
        idx: usize,
        segments: &[Segment],
        room: &mut [u32],
        current: &mut Representation,
        out: &mut Vec<Representation>,
    ) {
        if idx == segments.len() {
            out.push(current.clone());
            return;
        }
        let s = segments[idx];
        let cap = (s.i..=s.j).map(|k| room[k - 1]).min().unwrap_or(0);
        for m in 0..=cap {
            if m > 0 {
                for k in s.i..=s.j {
                    room[k - 1] -= 1;
                }
                current.add(s, 1);
            }
            go(idx + 1, segments, room, current, out);
        }
        if cap > 0 {
            for k in s.i..=s.j {
                room[k - 1] += cap;
            }
            current.remove(s, cap).expect("added above");
        }
    }
    go(0, &segments, &mut room, &mut current, &mut out);
    out
}

/// Every representation with exactly the given dimension vector.
pub fn enumerate_with_dims(dims: &[u32]) -> Vec<Representation> {
    let target = DimVector(dims.to_vec());
    enumerate_bounded(dims.len(), dims)
        .into_iter()
        .filter(|r| r.dim_vector() == target)
        .collect()
}
