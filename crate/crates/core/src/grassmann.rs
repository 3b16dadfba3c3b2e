//! The cohomology ring of `G(m,n)` in the Schubert basis.
//!
//! Classes are integer combinations of basis elements `σ_λ`, keyed by
//! partitions in the `(m+1) x (n-m)` box; codimension is `|λ|`. Products
//! drop every Littlewood-Richardson term whose shape leaves the box.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{factorial, BoxPartition, GrassContext, JumpSequence, Partition};
use crate::error::{Error, Result};
use crate::lrcalc::{lr_coefficient, lr_expand};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassClass {
    ctx: GrassContext,
    terms: BTreeMap<Partition, BigInt>,
}

impl GrassClass {
    pub fn zero(ctx: GrassContext) -> Self {
        GrassClass {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ctx: GrassContext) -> Self {
        Self::basis_element(&ctx.unit_index())
    }

    pub fn point(ctx: GrassContext) -> Self {
        Self::basis_element(&ctx.point_index())
    }

    pub fn basis_element(index: &BoxPartition) -> Self {
        let mut c = Self::zero(index.ctx());
        c.terms.insert(index.partition(), BigInt::one());
        c
    }

    /// The special class `τ_b = σ_(b)`; zero outside `0 <= b <= n-m`.
    pub fn special(ctx: GrassContext, b: i64) -> Self {
        if b < 0 || b as usize > ctx.cols() {
            return Self::zero(ctx);
        }
        let idx = BoxPartition::new(ctx, &Partition::row(b as usize)).expect("row fits the box");
        Self::basis_element(&idx)
    }

    pub fn from_terms<I>(ctx: GrassContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigInt)>,
    {
        let mut c = Self::zero(ctx);
        for (p, k) in terms {
            BoxPartition::new(ctx, &p)?;
            c.add_term(p, k);
        }
        Ok(c)
    }

    fn add_term(&mut self, p: Partition, k: BigInt) {
        if k.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_default();
        *slot += k;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending codimension.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn point_coeff(&self) -> BigInt {
        self.coeff(&self.ctx.point_index().partition())
    }

    fn check_ctx(&self, other: &GrassClass) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GrassClass) -> Result<GrassClass> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (p, k) in &other.terms {
            out.add_term(p.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GrassClass) -> Result<GrassClass> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> GrassClass {
        let mut out = Self::zero(self.ctx);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect();
        }
        out
    }

    /// Every term has the same codimension (vacuously true for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.keys().map(Partition::weight);
        match w.next() {
            None => true,
            Some(first) => w.all(|x| x == first),
        }
    }

    /// Parses the text format produced by `Display`, e.g. `"2*s(2,1) - s()"`.
    pub fn parse_text(ctx: GrassContext, s: &str) -> Result<GrassClass> {
        let err = |msg: &str| Error::Parse(format!("class {s:?}: {msg}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut out = Self::zero(ctx);
        if compact == "0" {
            return Ok(out);
        }
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' if !first => (false, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(err("expected + or - between terms")),
            };
            first = false;
            let (term, tail) = split_term(body).ok_or_else(|| err("malformed term"))?;
            out.push_text_term(ctx, term, negative, s)?;
            rest = tail;
        }
        Ok(out)
    }

    fn push_text_term(&mut self, ctx: GrassContext, term: &str, negative: bool, src: &str) -> Result<()> {
        let err = || Error::Parse(format!("class {src:?}: bad term {term:?}"));
        let (coeff, basis) = match term.split_once('*') {
            Some((c, b)) => (c.parse::<BigInt>().map_err(|_| err())?, b),
            None => (BigInt::one(), term),
        };
        let shape = basis.strip_prefix('s').ok_or_else(err)?;
        let p: Partition = shape.parse()?;
        BoxPartition::new(ctx, &p)?;
        if self.terms.contains_key(&p) {
            return Err(Error::Parse(format!("class {src:?}: repeated basis element {p}")));
        }
        self.add_term(p, if negative { -coeff } else { coeff });
        Ok(())
    }
}

/// Splits off one `k*s(...)` term, returning it and the remainder.
fn split_term(s: &str) -> Option<(&str, &str)> {
    let close = s.find(')')?;
    Some((&s[..=close], &s[close + 1..]))
}

impl fmt::Display for GrassClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.sign() == Sign::Minus;
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "s{p}")?;
            } else {
                write!(f, "{mag}*s{p}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRecord {
    ctx: [usize; 2],
    terms: Vec<ClassTermRecord>,
}

#[derive(Serialize, Deserialize)]
struct ClassTermRecord {
    partition: Vec<usize>,
    coeff: String,
}

/// `{"ctx": [m, n], "terms": [{"partition": [..], "coeff": "<decimal>"}]}`
impl Serialize for GrassClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRecord {
            ctx: [self.ctx.m(), self.ctx.n()],
            terms: self
                .terms
                .iter()
                .map(|(p, c)| ClassTermRecord {
                    partition: p.parts().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GrassClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = ClassRecord::deserialize(deserializer)?;
        let ctx = GrassContext::new(rec.ctx[0], rec.ctx[1]).map_err(D::Error::custom)?;
        let mut out = GrassClass::zero(ctx);
        for t in rec.terms {
            let p = Partition::new(t.partition).map_err(D::Error::custom)?;
            BoxPartition::new(ctx, &p).map_err(D::Error::custom)?;
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            if out.terms.contains_key(&p) {
                return Err(D::Error::custom(format!("repeated partition {p}")));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }
}

/// `σ_a · τ_b` by the interleaving rule: all `c` with
/// `0 <= c_0 <= a_0 < c_1 <= a_1 < ... < c_m <= a_m` and `Σ(a_i - c_i) = b`.
///
/// The strict inequalities `a_{i-1} < c_i` are what make the sum a horizontal
/// strip in partition terms; allowing `c_i = a_{i-1}` would give, for example,
/// `1 · τ_2 = σ_(2) + σ_(1,1)` in `G(1,3)`.
pub fn pieri_basis(a: &JumpSequence, b: usize) -> GrassClass {
    let ctx = a.ctx();
    let a = a.entries();
    let mut out = GrassClass::zero(ctx);

    fn rec(i: usize, rest: usize, a: &[usize], c: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == a.len() {
            if rest == 0 {
                out.push(c.clone());
            }
            return;
        }
        let lo = if i == 0 { 0 } else { a[i - 1] + 1 };
        let lo = lo.max(a[i].saturating_sub(rest));
        for ci in lo..=a[i] {
            c.push(ci);
            rec(i + 1, rest - (a[i] - ci), a, c, out);
            c.pop();
        }
    }
    let mut seqs = Vec::new();
    rec(0, b, a, &mut Vec::new(), &mut seqs);
    for c in seqs {
        let seq = JumpSequence::new(ctx, c).expect("interleaving keeps the sequence valid");
        out.add_term(seq.to_partition().partition(), BigInt::one());
    }
    out
}

/// `α · τ_b`, extended linearly; negative `b` gives zero.
pub fn pieri(alpha: &GrassClass, b: i64) -> GrassClass {
    let ctx = alpha.ctx;
    let mut out = GrassClass::zero(ctx);
    if b < 0 {
        return out;
    }
    for (p, k) in &alpha.terms {
        let idx = BoxPartition::new(ctx, p).expect("class terms are valid");
        for (q, one) in pieri_basis(&idx.to_sequence(), b as usize).terms {
            out.add_term(q, k * one);
        }
    }
    out
}

/// Ring product via Littlewood-Richardson coefficients restricted to the box.
pub fn multiply(alpha: &GrassClass, beta: &GrassClass) -> Result<GrassClass> {
    alpha.check_ctx(beta)?;
    let ctx = alpha.ctx;
    let pairs: Vec<_> = alpha
        .terms
        .iter()
        .flat_map(|a| beta.terms.iter().map(move |b| (a, b)))
        .collect();
    let bound = Some((ctx.rows(), ctx.cols()));
    let partials: Vec<Vec<(Partition, BigInt)>> = pairs
        .par_iter()
        .map(|((lam, ka), (mu, kb))| {
            let k = *ka * *kb;
            lr_expand(lam, mu, bound)
                .into_iter()
                .map(|(nu, c)| (nu, &k * BigInt::from(c)))
                .collect()
        })
        .collect();
    let mut out = GrassClass::zero(ctx);
    for (nu, c) in partials.into_iter().flatten() {
        out.add_term(nu, c);
    }
    Ok(out)
}

/// `deg(α · β)`: the coefficient of the point class in the product.
pub fn pairing(alpha: &GrassClass, beta: &GrassClass) -> Result<BigInt> {
    alpha.check_ctx(beta)?;
    let ctx = alpha.ctx;
    let point = ctx.point_index().partition();
    let dim = ctx.dimension();
    let mut total = BigInt::zero();
    for (lam, ka) in &alpha.terms {
        for (mu, kb) in &beta.terms {
            if lam.weight() + mu.weight() == dim {
                total += ka * kb * BigInt::from(lr_coefficient(lam, mu, &point));
            }
        }
    }
    Ok(total)
}

/// Duality `(a_0, ..., a_m) ↦ (n - a_m, ..., n - a_0)`.
pub fn dual(lambda: &BoxPartition) -> BoxPartition {
    let ctx = lambda.ctx();
    let a = lambda.to_sequence();
    let flipped = a.entries().iter().rev().map(|&x| ctx.n() - x).collect();
    JumpSequence::new(ctx, flipped)
        .expect("dual of a valid sequence is valid")
        .to_partition()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Giambelli {
    /// `matrix[i][j] = b` stands for the entry `τ_b`, `b = n - m + j - a_i`.
    pub matrix: Vec<Vec<i64>>,
    pub expansion: GrassClass,
}

impl Giambelli {
    pub fn matrix_text(&self) -> String {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|b| format!("t{b}")).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("det[{}]", rows.join(","))
    }
}

/// Expresses `σ_a` as `det[τ_{n-m+j-a_i}]` and expands the determinant in the
/// ring; the expansion reproduces the basis element.
pub fn giambelli(a: &JumpSequence) -> Result<Giambelli> {
    let ctx = a.ctx();
    let size = ctx.rows();
    let matrix: Vec<Vec<i64>> = a
        .entries()
        .iter()
        .map(|&ai| {
            (0..size)
                .map(|j| (ctx.n() - ctx.m() + j) as i64 - ai as i64)
                .collect()
        })
        .collect();
    let entries: Vec<Vec<GrassClass>> = matrix
        .iter()
        .map(|row| row.iter().map(|&b| GrassClass::special(ctx, b)).collect())
        .collect();
    let mut memo = HashMap::new();
    let full = (1u32 << size) - 1;
    let expansion = laplace(&entries, 0, full, ctx, &mut memo)?;
    Ok(Giambelli { matrix, expansion })
}

/// Determinant of rows `row..` restricted to the columns in `cols`, expanded
/// along the first remaining row.
fn laplace(
    entries: &[Vec<GrassClass>],
    row: usize,
    cols: u32,
    ctx: GrassContext,
    memo: &mut HashMap<u32, GrassClass>,
) -> Result<GrassClass> {
    if cols == 0 {
        return Ok(GrassClass::unit(ctx));
    }
    if let Some(hit) = memo.get(&cols) {
        return Ok(hit.clone());
    }
    let mut acc = GrassClass::zero(ctx);
    let mut sign = BigInt::one();
    for j in 0..entries.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &entries[row][j];
        if !entry.is_zero() {
            let minor = laplace(entries, row + 1, cols & !(1 << j), ctx, memo)?;
            acc = acc.add(&multiply(entry, &minor)?.scale(&sign))?;
        }
        sign = -sign;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// Point coefficient of `τ_1^{dim}` by repeated Pieri.
    Pieri,
    /// `[(m+1)(n-m)]! · Π_{i=0}^{m} i! / Π_{i=n-m}^{n} i!`.
    Formula,
}

/// Number of `m`-planes in projective `n`-space meeting `(m+1)(n-m)` general
/// `(n-m-1)`-planes.
pub fn grassmannian_degree(ctx: GrassContext, mode: DegreeMode) -> Result<BigInt> {
    match mode {
        DegreeMode::Pieri => {
            let mut class = GrassClass::unit(ctx);
            for _ in 0..ctx.dimension() {
                class = pieri(&class, 1);
            }
            Ok(class.point_coeff())
        }
        DegreeMode::Formula => {
            let num = factorial(ctx.dimension())
                * (0..=ctx.m()).map(factorial).product::<num_bigint::BigUint>();
            let den: num_bigint::BigUint = (ctx.cols()..=ctx.n()).map(factorial).product();
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::Internal(format!("degree formula for {ctx} is not integral")));
            }
            Ok(BigInt::from(q))
        }
    }
}
