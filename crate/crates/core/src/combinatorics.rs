//! Partitions, jump sequences and the arithmetic shared by the other modules.
//!
//! A Schubert class of `G(m,n)` is indexed either by a jump sequence
//! `0 <= a_0 < a_1 < ... < a_m <= n` or by a partition fitting in the
//! `(m+1) x (n-m)` box. The two are related by `lambda_{j+1} = n - m + j - a_j`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// A context-free integer partition, stored without trailing zeros.
///
/// Ordering is by weight first and then reverse lexicographic, so that
/// `(2) < (1,1)` and iteration over a sorted map lists larger parts first
/// within each degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Self::trimmed(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// A single row `(b)`.
    pub fn row(b: usize) -> Self {
        Self::trimmed(vec![b])
    }

    fn trimmed(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self::trimmed(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based); zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.get(0) <= cols
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.get(0);
        let parts = (0..cols)
            .map(|c| self.0.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition(parts)
    }

    /// Parts padded with zeros to `len`. Panics if the partition is longer.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        assert!(self.len() <= len, "partition {self} longer than {len}");
        let mut v = self.0.clone();
        v.resize(len, 0);
        v
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"2,1,0"`, `"2,1"`, `"(2,1)"`, and `""`/`"()"` for the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("partition {s:?}: bad part {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// The Grassmannian `G(m,n)` of `m`-planes in projective `n`-space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GrassContext {
    m: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m >= n {
            return Err(Error::InvalidContext {
                m: m as i64,
                n: n as i64,
            });
        }
        Ok(GrassContext { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows of the partition box, `m + 1`.
    pub fn rows(&self) -> usize {
        self.m + 1
    }

    /// Columns of the partition box, `n - m`.
    pub fn cols(&self) -> usize {
        self.n - self.m
    }

    /// `dim G(m,n) = (m+1)(n-m)`, also the codimension of the point class.
    pub fn dimension(&self) -> usize {
        self.rows() * self.cols()
    }

    /// All basis indices, sorted by codimension.
    pub fn basis(&self) -> Vec<BoxPartition> {
        let mut out: Vec<BoxPartition> = partitions_in_box(self.rows(), self.cols())
            .into_iter()
            .map(|p| BoxPartition {
                ctx: *self,
                parts: p.padded(self.rows()),
            })
            .collect();
        out.sort_by_key(|x| x.partition());
        out
    }

    pub fn unit_index(&self) -> BoxPartition {
        BoxPartition {
            ctx: *self,
            parts: vec![0; self.rows()],
        }
    }

    pub fn point_index(&self) -> BoxPartition {
        BoxPartition {
            ctx: *self,
            parts: vec![self.cols(); self.rows()],
        }
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.m, self.n)
    }
}

impl FromStr for GrassContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("context {s:?}: expected G(m,n)"));
        let body = s
            .trim()
            .strip_prefix("G(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (m, n) = body.split_once(',').ok_or_else(bad)?;
        let m = m.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        GrassContext::new(m, n)
    }
}

/// Jump sequence `a_0 < ... < a_m` in `[0, n]`, bound to a context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JumpSequence {
    ctx: GrassContext,
    a: Vec<usize>,
}

impl JumpSequence {
    pub fn new(ctx: GrassContext, a: Vec<usize>) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidIndex {
            index: join(&a, "|"),
            ctx: ctx.to_string(),
            reason: reason.to_string(),
        };
        if a.len() != ctx.rows() {
            return Err(invalid(&format!("expected {} entries", ctx.rows())));
        }
        if a.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("entries must be strictly increasing"));
        }
        if a.iter().any(|&x| x > ctx.n) {
            return Err(invalid(&format!("entries must lie in [0, {}]", ctx.n)));
        }
        Ok(JumpSequence { ctx, a })
    }

    /// Parses the pipe-separated form `"0|2|4"`. A single entry may carry a
    /// trailing bar (`"3|"`) to set it apart from a partition.
    pub fn parse(ctx: GrassContext, s: &str) -> Result<Self> {
        let body = match s.trim().strip_suffix('|') {
            Some(rest) if !rest.contains('|') => rest,
            _ => s,
        };
        let a = body
            .split('|')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("jump sequence {s:?}: bad entry {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        JumpSequence::new(ctx, a)
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn entries(&self) -> &[usize] {
        &self.a
    }

    pub fn to_partition(&self) -> BoxPartition {
        seq_to_partition(self)
    }
}

impl fmt::Display for JumpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.a, "|"))?;
        if self.a.len() == 1 {
            f.write_str("|")?;
        }
        Ok(())
    }
}

/// A partition bound to a context, padded with zeros to `m + 1` parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoxPartition {
    ctx: GrassContext,
    parts: Vec<usize>,
}

impl BoxPartition {
    pub fn new(ctx: GrassContext, partition: &Partition) -> Result<Self> {
        if !partition.fits_in_box(ctx.rows(), ctx.cols()) {
            return Err(Error::InvalidIndex {
                index: partition.to_string(),
                ctx: ctx.to_string(),
                reason: format!("does not fit in the {}x{} box", ctx.rows(), ctx.cols()),
            });
        }
        Ok(BoxPartition {
            ctx,
            parts: partition.padded(ctx.rows()),
        })
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    /// Padded parts, always `m + 1` of them.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn partition(&self) -> Partition {
        Partition::from_sorted_unchecked(self.parts.clone())
    }

    pub fn to_sequence(&self) -> JumpSequence {
        partition_to_seq(self)
    }

    pub fn codim(&self) -> usize {
        codim(self)
    }
}

impl fmt::Display for BoxPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.partition().fmt(f)
    }
}

/// Parses a Schubert index written either as a partition (`"2,1"`) or as a
/// jump sequence (`"0|2|4"`).
pub fn parse_index(ctx: GrassContext, s: &str) -> Result<BoxPartition> {
    if s.contains('|') {
        Ok(JumpSequence::parse(ctx, s)?.to_partition())
    } else {
        BoxPartition::new(ctx, &s.parse()?)
    }
}

pub fn seq_to_partition(a: &JumpSequence) -> BoxPartition {
    let ctx = a.ctx;
    let parts: Vec<usize> = a
        .a
        .iter()
        .enumerate()
        .map(|(j, &aj)| ctx.n - ctx.m + j - aj)
        .collect();
    assert!(
        parts.windows(2).all(|w| w[0] >= w[1]),
        "jump sequence {a} produced a non-partition {parts:?}"
    );
    BoxPartition { ctx, parts }
}

pub fn partition_to_seq(lambda: &BoxPartition) -> JumpSequence {
    let ctx = lambda.ctx;
    let a = lambda
        .parts
        .iter()
        .enumerate()
        .map(|(j, &lj)| ctx.n - ctx.m + j - lj)
        .collect();
    JumpSequence { ctx, a }
}

/// Codimension of a Schubert class: the weight of its partition.
pub fn codim(lambda: &BoxPartition) -> usize {
    lambda.parts.iter().sum()
}

/// All partitions fitting in a `rows x cols` box.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::from_sorted_unchecked(cur.clone()));
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All partitions of `k`.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// The Gaussian binomial `[n choose k]_q = prod_{i=1}^k (q^{n-k+i} - 1)/(q^i - 1)`,
/// evaluated by exact integer division after each factor.
pub fn gaussian_binomial(n: usize, k: usize, q: &BigUint) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "gaussian binomial needs k <= n, got n={n}, k={k}"
        )));
    }
    if q.is_zero() {
        return Err(Error::InvalidArgument("gaussian binomial needs q >= 1".into()));
    }
    if q.is_one() {
        return Ok(binomial(n, k));
    }
    let one = BigUint::one();
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= Pow::pow(q, (n - k + i) as u32) - &one;
        let (quot, rem) = acc.div_rem(&(Pow::pow(q, i as u32) - &one));
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "gaussian binomial [{n} choose {k}]_{q}: inexact division at factor {i}"
            )));
        }
        acc = quot;
    }
    Ok(acc)
}

pub(crate) fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}
