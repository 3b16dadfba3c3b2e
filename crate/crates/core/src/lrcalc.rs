//! Littlewood-Richardson coefficients by skew-tableau enumeration.
//!
//! `c^nu_{lambda,mu}` is the number of column-strict fillings of the skew shape
//! `nu/lambda` with content `mu` whose reverse reading word (rows top to
//! bottom, each row right to left) is a lattice word.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

pub type LrExpansion = BTreeMap<Partition, BigUint>;

/// A filling of `outer/inner`; `filling[r]` lists row `r` left to right,
/// starting at column `inner[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub filling: Vec<Vec<usize>>,
}

impl SkewTableau {
    pub fn content(&self) -> Vec<usize> {
        let mut content = Vec::new();
        for &x in self.filling.iter().flatten() {
            if content.len() < x {
                content.resize(x, 0);
            }
            content[x - 1] += 1;
        }
        content
    }

    pub fn reverse_reading_word(&self) -> Vec<usize> {
        self.filling
            .iter()
            .flat_map(|row| row.iter().rev().copied())
            .collect()
    }

    fn entry(&self, r: usize, c: usize) -> Option<usize> {
        let start = self.inner.get(r);
        if c < start {
            return None;
        }
        self.filling.get(r).and_then(|row| row.get(c - start)).copied()
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        for (r, row) in self.filling.iter().enumerate() {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r == 0 {
                continue;
            }
            for (k, &x) in row.iter().enumerate() {
                let c = self.inner.get(r) + k;
                if let Some(above) = self.entry(r - 1, c) {
                    if above >= x {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_lattice(&self) -> bool {
        is_lattice_word(&self.reverse_reading_word())
    }
}

pub fn is_lattice_word(word: &[usize]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &x in word {
        if x == 0 {
            return false;
        }
        if counts.len() < x {
            counts.resize(x, 0);
        }
        counts[x - 1] += 1;
        if x > 1 && counts[x - 1] > counts[x - 2] {
            return false;
        }
    }
    true
}

struct Search<'a> {
    inner: &'a Partition,
    outer: &'a Partition,
    content: &'a Partition,
    rows: Vec<Vec<usize>>,
    counts: Vec<usize>,
}

impl Search<'_> {
    fn new<'a>(inner: &'a Partition, outer: &'a Partition, content: &'a Partition) -> Search<'a> {
        let rows = (0..outer.len())
            .map(|r| vec![0; outer.get(r) - inner.get(r)])
            .collect();
        Search {
            inner,
            outer,
            content,
            rows,
            counts: vec![0; content.len()],
        }
    }

    /// Depth-first over cells in reverse reading order; `visit` sees each
    /// complete LR filling.
    fn run(&mut self, r: usize, c: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if r == self.outer.len() {
            visit(&self.rows);
            return;
        }
        let start = self.inner.get(r);
        let end = self.outer.get(r);
        if c == start {
            let next_end = self.outer.get(r + 1);
            let next_c = if r + 1 < self.outer.len() { next_end } else { 0 };
            return self.run(r + 1, next_c, visit);
        }
        let col = c - 1;
        let k = col - start;
        let upper = if col + 1 < end {
            self.rows[r][k + 1]
        } else {
            self.content.len()
        };
        let lower = if r > 0 && col >= self.inner.get(r - 1) {
            self.rows[r - 1][col - self.inner.get(r - 1)] + 1
        } else {
            1
        };
        for label in lower..=upper {
            let i = label - 1;
            if self.counts[i] >= self.content.get(i) {
                continue;
            }
            if i > 0 && self.counts[i] + 1 > self.counts[i - 1] {
                continue;
            }
            self.counts[i] += 1;
            self.rows[r][k] = label;
            self.run(r, c - 1, visit);
            self.counts[i] -= 1;
        }
        self.rows[r][k] = 0;
    }

    fn start(&mut self, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if self.outer.is_empty() {
            visit(&self.rows);
        } else {
            let c = self.outer.get(0);
            self.run(0, c, visit);
        }
    }
}

fn shapes_compatible(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    nu.contains(lambda) && nu.weight() == lambda.weight() + mu.weight()
}

/// All LR tableaux of shape `nu/lambda` and content `mu`.
pub fn lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> Vec<SkewTableau> {
    if !shapes_compatible(lambda, mu, nu) {
        return Vec::new();
    }
    let mut out = Vec::new();
    Search::new(lambda, nu, mu).start(&mut |rows| {
        out.push(SkewTableau {
            outer: nu.clone(),
            inner: lambda.clone(),
            filling: rows.to_vec(),
        })
    });
    out
}

fn count_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !shapes_compatible(lambda, mu, nu) {
        return 0;
    }
    let mut count = 0u64;
    Search::new(lambda, nu, mu).start(&mut |_| count += 1);
    count
}

pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    BigUint::from(count_tableaux(lambda, mu, nu))
}

/// Every `nu` with `lambda ⊆ nu`, `|nu| = |lambda| + |mu|`, and the row and
/// column bounds any LR filling must respect.
fn candidate_shapes(lambda: &Partition, mu: &Partition, bound: Option<(usize, usize)>) -> Vec<Partition> {
    let weight = lambda.weight() + mu.weight();
    let mut max_rows = lambda.len() + mu.len();
    let mut max_cols = lambda.get(0) + mu.get(0);
    if let Some((rows, cols)) = bound {
        max_rows = max_rows.min(rows);
        max_cols = max_cols.min(cols);
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        r: usize,
        rest: usize,
        prev: usize,
        lambda: &Partition,
        mu_first: usize,
        max_rows: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            if (r..=lambda.len()).all(|i| lambda.get(i) == 0) {
                out.push(Partition::from_sorted_unchecked(cur.clone()));
            }
            return;
        }
        if r == max_rows {
            return;
        }
        let lo = lambda.get(r);
        let hi = prev.min(lo + mu_first).min(rest);
        for p in (lo.max(1)..=hi).rev() {
            cur.push(p);
            rec(r + 1, rest - p, p, lambda, mu_first, max_rows, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lambda.len() > max_rows || lambda.get(0) > max_cols {
        return out;
    }
    rec(0, weight, max_cols, lambda, mu.get(0), max_rows, &mut Vec::new(), &mut out);
    out
}

/// `s_lambda * s_mu = sum_nu c^nu_{lambda,mu} s_nu`, optionally restricted to
/// shapes fitting a `(rows, cols)` box.
pub fn lr_expand(lambda: &Partition, mu: &Partition, bound: Option<(usize, usize)>) -> LrExpansion {
    candidate_shapes(lambda, mu, bound)
        .into_par_iter()
        .filter_map(|nu| {
            let c = count_tableaux(lambda, mu, &nu);
            (c > 0).then(|| (nu, BigUint::from(c)))
        })
        .collect()
}

/// `"(2):1 (1,1):1"`; the empty expansion prints as `"0"`.
pub fn format_expansion(e: &LrExpansion) -> String {
    if e.is_empty() {
        return "0".to_string();
    }
    e.iter()
        .map(|(nu, c)| format!("{nu}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_expansion(s: &str) -> Result<LrExpansion> {
    let s = s.trim();
    let mut out = LrExpansion::new();
    if s == "0" {
        return Ok(out);
    }
    for tok in s.split_whitespace() {
        let (shape, coeff) = tok
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("expansion term {tok:?}: expected shape:coeff")))?;
        let coeff: BigUint = coeff
            .parse()
            .map_err(|_| Error::Parse(format!("expansion term {tok:?}: bad coefficient")))?;
        let nu: Partition = shape.parse()?;
        if out.insert(nu, coeff).is_some() {
            return Err(Error::Parse(format!("expansion repeats shape {shape}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions_in_box, partitions_of};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("1,1")), BigUint::from(1u32));
        assert_eq!(lr_coefficient(&p("2"), &p("1,1"), &p("2,2")), BigUint::from(0u32));
        assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("3")), BigUint::from(0u32));
        assert_eq!(lr_coefficient(&p("2"), &p("1"), &p("1,1,1")), BigUint::from(0u32));
        // classic multiplicity-two coefficient
        assert_eq!(lr_coefficient(&p("2,1"), &p("2,1"), &p("3,2,1")), BigUint::from(2u32));
    }

    #[test]
    fn the_failing_filling_for_two_times_one_one() {
        // (2,2)/(2) has one column-strict filling with content (1,1): [1],[2]
        // stacked in the wrong reading order; it is not lattice.
        let t = SkewTableau {
            outer: p("2,2"),
            inner: p("2"),
            filling: vec![vec![], vec![1, 2]],
        };
        assert!(t.is_semistandard());
        assert!(!t.is_lattice());
        assert!(lr_tableaux(&p("2"), &p("1,1"), &p("2,2")).is_empty());
    }

    #[test]
    fn expand_examples() {
        let e = lr_expand(&p("1"), &p("1"), None);
        assert_eq!(format_expansion(&e), "(2):1 (1,1):1");
        let e = lr_expand(&p("1"), &p("1"), Some((1, 2)));
        assert_eq!(format_expansion(&e), "(2):1");
        for mu in partitions_of(4) {
            let e = lr_expand(&Partition::empty(), &mu, None);
            assert_eq!(e.len(), 1);
            assert_eq!(e[&mu], BigUint::from(1u32));
        }
        assert_eq!(format_expansion(&lr_expand(&p("2,2"), &p("1"), Some((2, 2)))), "0");
    }

    #[test]
    fn enumerated_tableaux_satisfy_the_rule() {
        for lam in partitions_in_box(3, 3) {
            for mu in partitions_in_box(2, 3) {
                for nu in candidate_shapes(&lam, &mu, None) {
                    let ts = lr_tableaux(&lam, &mu, &nu);
                    assert_eq!(ts.len() as u64, count_tableaux(&lam, &mu, &nu));
                    for t in ts {
                        assert!(t.is_semistandard() && t.is_lattice());
                        assert_eq!(t.content(), mu.parts());
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_exhaustive_to_weight_six() {
        let parts: Vec<Partition> = (0..=6).flat_map(partitions_of).collect();
        for lam in &parts {
            for mu in &parts {
                let lm = lr_expand(lam, mu, None);
                let ml = lr_expand(mu, lam, None);
                assert_eq!(lm, ml, "{lam} * {mu}");
            }
        }
    }

    #[test]
    fn total_dimension_check() {
        // Summing c^nu * f^nu over nu gives binom(|nu|, |lambda|) f^lambda f^mu,
        // with f the number of standard tableaux (hook length formula).
        fn f(p: &Partition) -> u128 {
            let n = p.weight();
            let conj = p.conjugate();
            let mut hooks: u128 = 1;
            for r in 0..p.len() {
                for c in 0..p.get(r) {
                    hooks *= (p.get(r) - c + conj.get(c) - r - 1) as u128;
                }
            }
            (1..=n as u128).product::<u128>() / hooks
        }
        fn binom(n: u128, k: u128) -> u128 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for lam in (0..=4).flat_map(partitions_of) {
            for mu in (0..=4).flat_map(partitions_of) {
                let total: u128 = lr_expand(&lam, &mu, None)
                    .iter()
                    .map(|(nu, c)| u128::try_from(c.clone()).unwrap() * f(nu))
                    .sum();
                let n = (lam.weight() + mu.weight()) as u128;
                assert_eq!(total, binom(n, lam.weight() as u128) * f(&lam) * f(&mu));
            }
        }
    }

    #[test]
    fn expansion_text_round_trip() {
        let e = lr_expand(&p("2,1"), &p("2,1"), None);
        assert_eq!(parse_expansion(&format_expansion(&e)).unwrap(), e);
        assert!(parse_expansion("(2)").is_err());
        assert!(parse_expansion("(1,2):1").is_err());
    }
}
