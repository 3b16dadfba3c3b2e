//! Schubert cells of the Grassmannian of `m`-dimensional subspaces of `k^n`.
//!
//! Every full-rank `m x n` matrix has a unique row-equivalent echelon form in
//! which each row ends in a leading 1 (its last nonzero entry) at column `a_i`,
//! the pivot columns are otherwise zero, and `a_1 < ... < a_m`. The pivot
//! columns are the cell type; the free entries number `Σ(a_i - i)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{GrassContext, JumpSequence};
use crate::error::{Error, Result};

/// An exact field.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, k: &BigInt) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn name(&self) -> String;
}

/// The rationals with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_int(&self, k: &BigInt) -> BigRational {
        BigRational::from_integer(k.clone())
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("rational entry {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("rational entry {s:?} has zero denominator")));
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// The prime field `F_p` for a prime `p < 2^61`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_MODULUS: u64 = 1 << 61;

    pub fn new(p: u64) -> Result<Self> {
        if p >= Self::MAX_MODULUS {
            return Err(Error::UnsupportedField(format!("modulus {p} must be below 2^61")));
        }
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Residue of an element as read from the signed integer `k`.
    pub fn reduce(&self, k: i64) -> u64 {
        k.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }
    fn from_int(&self, k: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((k % &p) + &p) % &p;
        r.to_u64().expect("residue fits u64")
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let k: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("entry {s:?} over F_{}: expected an integer", self.p)))?;
        Ok(self.from_int(&k))
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `Some((p, e))` when `q = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    for e in (1..=63u32).rev() {
        let r = integer_root(q, e);
        if r >= 2 && r.checked_pow(e) == Some(q) && is_prime(r) {
            return Some((r, e));
        }
    }
    None
}

fn integer_root(q: u64, e: u32) -> u64 {
    if e == 1 {
        return q;
    }
    let mut r = (q as f64).powf(1.0 / e as f64).round() as u64;
    while r > 0 && r.checked_pow(e).is_none_or(|v| v > q) {
        r -= 1;
    }
    while (r + 1).checked_pow(e).is_some_and(|v| v <= q) {
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    cols: usize,
    data: Vec<Vec<F::Elem>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: F, data: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = data.first().map_or(0, Vec::len);
        if let Some(bad) = data.iter().position(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(format!(
                "matrix row {} has {} entries, expected {cols}",
                bad + 1,
                data[bad].len()
            )));
        }
        Ok(ExactMatrix { field, cols, data })
    }

    pub fn from_ints(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&k| field.from_int(&BigInt::from(k))).collect())
            .collect();
        Self::new(field, data)
    }

    /// One row per line, comma-separated; blank lines are skipped.
    pub fn from_csv(field: F, text: &str) -> Result<Self> {
        let data = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.split(',').map(|e| field.parse(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if data.is_empty() {
            return Err(Error::Parse("matrix file has no rows".into()));
        }
        Self::new(field, data)
    }

    pub fn to_csv(&self) -> String {
        self.data
            .iter()
            .map(|r| crate::combinatorics::join(r, ","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i]
    }

    pub fn entries(&self) -> &[Vec<F::Elem>] {
        &self.data
    }

    /// `lhs * self`.
    pub fn left_mul(&self, lhs: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
        if lhs.cols != self.rows() {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                lhs.rows(),
                lhs.cols,
                self.rows(),
                self.cols
            )));
        }
        let f = &self.field;
        let data = lhs
            .data
            .iter()
            .map(|lrow| {
                (0..self.cols)
                    .map(|j| {
                        lrow.iter()
                            .zip(&self.data)
                            .fold(f.zero(), |acc, (a, srow)| f.add(&acc, &f.mul(a, &srow[j])))
                    })
                    .collect()
            })
            .collect();
        ExactMatrix::new(self.field.clone(), data)
    }

    /// The canonical echelon representative of the row space.
    pub fn echelon_reduce(&self) -> Result<ExactMatrix<F>> {
        let f = &self.field;
        let m = self.rows();
        let mut rows: Vec<(usize, Vec<F::Elem>)> = self.data.iter().cloned().enumerate().collect();
        let mut done = 0;
        for col in (0..self.cols).rev() {
            if done == m {
                break;
            }
            let Some(found) = (done..m).find(|&r| !f.is_zero(&rows[r].1[col])) else {
                continue;
            };
            rows.swap(done, found);
            let inv = f.inv(&rows[done].1[col]).expect("pivot is nonzero");
            for x in rows[done].1.iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = rows[done].1.clone();
            for (r, (_, row)) in rows.iter_mut().enumerate() {
                if r == done || f.is_zero(&row[col]) {
                    continue;
                }
                let k = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&k, p));
                }
            }
            done += 1;
        }
        if done < m {
            return Err(Error::RankDeficient {
                row: rows[done].0 + 1,
            });
        }
        // pivots were found right to left
        let data = rows.into_iter().rev().map(|(_, r)| r).collect();
        ExactMatrix::new(self.field.clone(), data)
    }

    /// Pivot columns of the echelon form.
    pub fn cell_type(&self) -> Result<CellType> {
        let e = self.echelon_reduce()?;
        let f = &self.field;
        let cols = e
            .data
            .iter()
            .map(|row| row.iter().rposition(|x| !f.is_zero(x)).expect("full rank") + 1)
            .collect();
        CellType::new(self.cols, cols)
    }
}

impl<F: Field> fmt::Display for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Pivot columns `a_1 < ... < a_m` in `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellType {
    n: usize,
    cols: Vec<usize>,
}

impl CellType {
    pub fn new(n: usize, cols: Vec<usize>) -> Result<Self> {
        if cols.windows(2).any(|w| w[0] >= w[1]) || cols.iter().any(|&c| c == 0 || c > n) {
            return Err(Error::InvalidArgument(format!(
                "cell type {cols:?} must be strictly increasing in [1, {n}]"
            )));
        }
        Ok(CellType { n, cols })
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of free entries, `Σ(a_i - i)`.
    pub fn dimension(&self) -> usize {
        self.cols.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum()
    }

    /// `a_i ↦ a_i - 1` as a jump sequence of `G(m-1, n-1)` (projective indexing).
    pub fn to_jump_sequence(&self) -> Result<JumpSequence> {
        let m = self.cols.len();
        if m == 0 {
            return Err(Error::InvalidArgument("the zero subspace has no projective index".into()));
        }
        let ctx = GrassContext::new(m - 1, self.n - 1)?;
        JumpSequence::new(ctx, self.cols.iter().map(|a| a - 1).collect())
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", crate::combinatorics::join(&self.cols, ","))
    }
}

/// All cell types of `m`-dimensional subspaces of `k^n`.
pub fn all_cell_types(m: usize, n: usize) -> Vec<CellType> {
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<CellType>) {
        if cur.len() == m {
            out.push(CellType { n, cols: cur.clone() });
            return;
        }
        for c in start..=n {
            cur.push(c);
            rec(c + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= n {
        rec(1, m, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub total: BigUint,
    /// Each cell type with its point count `q^dim`.
    pub census: Vec<(CellType, BigUint)>,
}

/// Number of `F_q`-points of the Grassmannian as `Σ_types q^{dim}`. `q = 1`
/// counts cells; otherwise `q` must be a prime power.
pub fn point_count(m: usize, n: usize, q: u64) -> Result<PointCount> {
    if m > n {
        return Err(Error::InvalidArgument(format!("need m <= n, got m={m}, n={n}")));
    }
    if q != 1 && prime_power(q).is_none() {
        return Err(Error::UnsupportedField(format!("q = {q} is not a prime power")));
    }
    let q = BigUint::from(q);
    let census: Vec<(CellType, BigUint)> = all_cell_types(m, n)
        .into_iter()
        .map(|t| {
            let size = Pow::pow(&q, t.dimension() as u32);
            (t, size)
        })
        .collect();
    let total = census.iter().map(|(_, c)| c).sum();
    Ok(PointCount { total, census })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Distinct subspaces of each cell type.
    pub counts: BTreeMap<CellType, u64>,
    pub subspaces: usize,
    pub echelon_forms: usize,
}

pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Enumerates every `m x n` matrix over `F_q`, groups full-rank ones by row
/// space (the set of all vectors in the span), and classifies each subspace
/// by the cell type of its echelon form.
pub fn classify_all(m: usize, n: usize, q: u64) -> Result<Classification> {
    let field = PrimeField::new(q)?;
    if m > n {
        return Err(Error::InvalidArgument(format!("need m <= n, got m={m}, n={n}")));
    }
    let total = (m * n) as u32;
    let count = q
        .checked_pow(total)
        .filter(|&c| c <= ENUMERATION_LIMIT)
        .ok_or_else(|| {
            Error::GuardExceeded(format!("{q}^({m}*{n}) matrices exceeds {ENUMERATION_LIMIT}"))
        })?;

    type Span = Vec<u64>;
    let encode = |v: &[u64]| v.iter().fold(0u64, |acc, &x| acc * q + x);

    let per_span: Result<HashMap<Span, ExactMatrix<PrimeField>>> = (0..count)
        .into_par_iter()
        .try_fold(HashMap::new, |mut acc: HashMap<Span, ExactMatrix<PrimeField>>, idx| {
            let mut digits = idx;
            let data: Vec<Vec<u64>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let d = digits % q;
                            digits /= q;
                            d
                        })
                        .collect()
                })
                .collect();
            let span = span_of(&field, &data, encode);
            if span.len() as u64 != q.pow(m as u32) {
                return Ok(acc);
            }
            let echelon = ExactMatrix::new(field, data)?.echelon_reduce()?;
            match acc.get(&span) {
                Some(prev) if *prev != echelon => Err(Error::Internal(format!(
                    "one subspace has two echelon forms:\n{prev}\nand\n{echelon}"
                ))),
                Some(_) => Ok(acc),
                None => {
                    acc.insert(span, echelon);
                    Ok(acc)
                }
            }
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (span, e) in b {
                if let Some(prev) = a.get(&span) {
                    if *prev != e {
                        return Err(Error::Internal("one subspace has two echelon forms".into()));
                    }
                } else {
                    a.insert(span, e);
                }
            }
            Ok(a)
        });
    let per_span = per_span?;

    let echelon_forms: HashSet<&ExactMatrix<PrimeField>> = per_span.values().collect();
    let mut counts = BTreeMap::new();
    for e in per_span.values() {
        *counts.entry(e.cell_type()?).or_insert(0u64) += 1;
    }
    Ok(Classification {
        counts,
        subspaces: per_span.len(),
        echelon_forms: echelon_forms.len(),
    })
}

/// Sorted, deduplicated encodings of every linear combination of the rows.
fn span_of(field: &PrimeField, rows: &[Vec<u64>], encode: impl Fn(&[u64]) -> u64) -> Vec<u64> {
    let q = field.modulus();
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(q.pow(m as u32) as usize);
    for sel in 0..q.pow(m as u32) {
        let mut digits = sel;
        let mut v = vec![0u64; n];
        for row in rows {
            let k = digits % q;
            digits /= q;
            for (x, r) in v.iter_mut().zip(row) {
                *x = field.add(x, &field.mul(&k, r));
            }
        }
        out.push(encode(&v));
    }
    out.sort_unstable();
    out.dedup();
    out
}

impl<F: Field> Hash for ExactMatrix<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}
