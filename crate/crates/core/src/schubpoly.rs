//! Schubert polynomials of permutations.
//!
//! Two independent constructions are provided: applying divided differences
//! to the staircase monomial `x_1^{n-1} x_2^{n-2} ... x_{n-1}` of the longest
//! permutation, and the transition recursion on the last descent. Both use
//! right multiplication: `∂_i 𝔖_w = 𝔖_{w s_i}` when `w(i) > w(i+1)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::polyring::{divided_difference, SparsePoly};

/// A permutation of the positive integers fixing all but finitely many,
/// stored in one-line notation with trailing fixed points trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} is outside 1..={n} in {}",
                    crate::combinatorics::join(&one_line, ",")
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} is repeated in {}",
                    crate::combinatorics::join(&one_line, ",")
                )));
            }
            seen[v] = true;
        }
        Ok(Self::trimmed(one_line))
    }

    fn trimmed(mut v: Vec<usize>) -> Self {
        while let Some(&last) = v.last() {
            if last == v.len() {
                v.pop();
            } else {
                break;
            }
        }
        Permutation(v)
    }

    pub fn identity() -> Self {
        Permutation(Vec::new())
    }

    /// The longest element `w_n = n, n-1, ..., 1` of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self::trimmed((1..=n).rev().collect())
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Self::trimmed(cur.clone())];
        while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Self::trimmed(cur.clone()));
        }
        out
    }

    /// Smallest `n` with the permutation in `S_n` (at least 1).
    pub fn window(&self) -> usize {
        self.0.len().max(1)
    }

    /// `w(i)` for 1-based `i`.
    pub fn value(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(i)
    }

    /// One-line notation on `1..=n`; `n` must be at least the window.
    pub fn one_line(&self, n: usize) -> Vec<usize> {
        assert!(n >= self.0.len());
        (1..=n).map(|i| self.value(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.0.len())
            .filter(|&i| self.value(i) > self.value(i + 1))
            .collect()
    }

    pub fn last_descent(&self) -> Option<usize> {
        self.descents().last().copied()
    }

    /// Right multiplication by the transposition `(i, j)`: swaps the values in
    /// positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut v = self.one_line(self.0.len().max(i).max(j));
        v.swap(i - 1, j - 1);
        Self::trimmed(v)
    }

    /// `w · s_i`.
    pub fn times_simple(&self, i: usize) -> Permutation {
        self.swap_positions(i, i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Lehmer code: `c_i = #{j > i : w(j) < w(i)}`.
    pub fn code(&self) -> Vec<usize> {
        let w = &self.0;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count())
            .collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    /// Shape of a Grassmannian permutation with descent `d`:
    /// `λ_i = w(d+1-i) - (d+1-i)` for `i = 1..d`.
    pub fn shape(&self) -> Result<Partition> {
        let descents = self.descents();
        match descents.as_slice() {
            [] => Ok(Partition::empty()),
            [d] => {
                let parts = (1..=*d).map(|i| self.value(d + 1 - i) - (d + 1 - i)).collect();
                Partition::new(parts)
            }
            _ => Err(Error::InvalidArgument(format!(
                "{self} is not Grassmannian (descents at {descents:?})"
            ))),
        }
    }

    /// The unique descent of a Grassmannian permutation, if any.
    pub fn grassmannian_descent(&self) -> Option<usize> {
        match self.descents().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        f.write_str(&crate::combinatorics::join(&self.0, ","))
    }
}

/// Parses comma-separated one-line notation, e.g. `"3,1,2"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidPermutation(format!("{s:?}: {:?} is not a positive integer", t.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

/// `x_1^{n-1} x_2^{n-2} ... x_{n-1}`.
pub fn staircase(n: usize) -> SparsePoly {
    assert!(n >= 1, "staircase needs n >= 1");
    let exps = (1..n).rev().map(|e| e as u32).collect();
    SparsePoly::monomial(exps, BigInt::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordChoice {
    FirstAscent,
    LastAscent,
}

/// A word `i_1, ..., i_k` with `w s_{i_1} ... s_{i_k} = w_n`, each step at an
/// ascent, so `𝔖_w = ∂_{i_1} ... ∂_{i_k} 𝔖_{w_n}`.
pub fn ascent_word(w: &Permutation, n: usize, choice: WordChoice) -> Vec<usize> {
    let mut cur = w.clone();
    let mut word = Vec::new();
    loop {
        let ascents = (1..n).filter(|&i| cur.value(i) < cur.value(i + 1));
        let next = match choice {
            WordChoice::FirstAscent => ascents.min(),
            WordChoice::LastAscent => ascents.max(),
        };
        let Some(i) = next else { break };
        cur = cur.times_simple(i);
        word.push(i);
    }
    debug_assert_eq!(cur, Permutation::longest(n));
    word
}

/// `𝔖_w` by divided differences from the staircase, with `w` viewed in `S_n`.
pub fn schubert_dd_in(w: &Permutation, n: usize, choice: WordChoice) -> Result<SparsePoly> {
    if w.window() > n {
        return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
    }
    let word = ascent_word(w, n, choice);
    let mut poly = staircase(n);
    for &i in word.iter().rev() {
        poly = divided_difference(i, &poly)?;
    }
    Ok(poly)
}

pub fn schubert_dd(w: &Permutation) -> Result<SparsePoly> {
    schubert_dd_in(w, w.window(), WordChoice::FirstAscent)
}

/// Memo table for the transition recursion.
#[derive(Debug)]
pub struct TransitionCache {
    memo: HashMap<Permutation, SparsePoly>,
    dominant_shortcut: bool,
}

impl Default for TransitionCache {
    fn default() -> Self {
        Self::new()
    }
}

impl TransitionCache {
    pub fn new() -> Self {
        TransitionCache {
            memo: HashMap::new(),
            dominant_shortcut: true,
        }
    }

    /// Recursion all the way down to the identity, without the `x_1^m` base case.
    pub fn without_shortcut() -> Self {
        TransitionCache {
            memo: HashMap::new(),
            dominant_shortcut: false,
        }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `𝔖_w = x_r 𝔖_v + Σ_q 𝔖_{v (q,r)}` where `r` is the last descent,
    /// `s > r` is the largest position with `w(s) < w(r)`, `v = w (r,s)`, and
    /// `q < r` ranges over positions with `ℓ(v (q,r)) = ℓ(v) + 1`.
    pub fn schubert(&mut self, w: &Permutation) -> SparsePoly {
        if w.is_identity() {
            return SparsePoly::one();
        }
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        if self.dominant_shortcut {
            if let Some(m) = first_row_dominant(w) {
                let p = SparsePoly::monomial(vec![m as u32], BigInt::one());
                self.memo.insert(w.clone(), p.clone());
                return p;
            }
        }
        let r = w.last_descent().expect("non-identity has a descent");
        let wr = w.value(r);
        let mut s = r + 1;
        while w.value(s + 1) < wr {
            s += 1;
        }
        let v = w.swap_positions(r, s);
        let target = v.length() + 1;
        debug_assert_eq!(target, w.length());

        let mut result = &SparsePoly::var(r) * &self.schubert(&v);
        for q in 1..r {
            let u = v.swap_positions(q, r);
            if u.length() == target {
                result += &self.schubert(&u);
            }
        }
        self.memo.insert(w.clone(), result.clone());
        result
    }
}

/// `Some(m)` when `w = m+1, 1, 2, ..., m`, whose Schubert polynomial is `x_1^m`.
fn first_row_dominant(w: &Permutation) -> Option<usize> {
    let v = &w.0;
    let m = v.first()?.checked_sub(1)?;
    (v.len() == m + 1 && v[1..].iter().enumerate().all(|(i, &x)| x == i + 1)).then_some(m)
}

pub fn schubert_transition(w: &Permutation) -> SparsePoly {
    TransitionCache::new().schubert(w)
}
