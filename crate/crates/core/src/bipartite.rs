//! Degree sequences, chain graphs and their Ferrers profiles, plus the
//! exhaustive enumerators that back the verifiers.
//!
//! A chain graph (difference graph) is determined by the degrees of one side:
//! row `i` of its representation matrix has `d_i` ones, left-justified.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Default cap on the number of matrices an exhaustive enumerator may yield.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Nonincreasing sequence of positive degrees `d_1 >= ... >= d_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    edges: usize,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return invalid("degree sequence is empty");
        }
        if degrees.contains(&0) {
            return invalid("degrees must be positive");
        }
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("degrees must be nonincreasing: {degrees:?}"));
        }
        let edges = degrees.iter().sum();
        Ok(Self { degrees, edges })
    }

    /// Sorts `degrees` into nonincreasing order first.
    pub fn from_unsorted(mut degrees: Vec<usize>) -> Result<Self> {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of left vertices `m`.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Number of edges `e`.
    pub fn edges(&self) -> usize {
        self.edges
    }

    pub fn max_degree(&self) -> usize {
        self.degrees[0]
    }

    pub fn min_degree(&self) -> usize {
        self.degrees[self.degrees.len() - 1]
    }

    /// True when all degrees coincide, i.e. the chain graph is complete bipartite.
    pub fn is_constant(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// Degrees of the opposite side of the chain graph (the transposed staircase).
    pub fn conjugate(&self) -> DegreeSequence {
        let conj = (1..=self.max_degree())
            .map(|j| self.degrees.iter().take_while(|&&d| d >= j).count())
            .collect();
        DegreeSequence::new(conj).expect("conjugate of a valid sequence is valid")
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    /// Parses `5,2,2,1`. Whitespace is ignored; the list must already be nonincreasing.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty degree list".into()));
        }
        let mut degrees = Vec::new();
        for tok in cleaned.split(',') {
            let d: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))?;
            if d <= 0 {
                return Err(Error::Parse(format!("degree must be positive: {d}")));
            }
            degrees.push(d as usize);
        }
        DegreeSequence::new(degrees).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Dense `m x n` 0-1 matrix: the block `A` of the adjacency matrix `[[0, A], [A^T, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepresentationMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl RepresentationMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return invalid("matrix must have at least one row and one column");
        }
        if entries.len() != rows * cols {
            return invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            ));
        }
        if entries.iter().any(|&x| x > 1) {
            return invalid("entries must be 0 or 1");
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from row strings such as `["11000", "10000"]`.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return invalid("ragged rows");
            }
            for ch in r.chars() {
                match ch {
                    '0' => entries.push(0),
                    '1' => entries.push(1),
                    _ => return invalid(format!("bad matrix character {ch:?}")),
                }
            }
        }
        Self::new(rows.len(), cols, entries)
    }

    pub(crate) fn from_row_masks(masks: &[u64], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(masks.len() * cols);
        for &mask in masks {
            for j in 0..cols {
                entries.push(((mask >> j) & 1) as u8);
            }
        }
        Self {
            rows: masks.len(),
            cols,
            entries,
        }
    }

    pub fn all_ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![1; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as usize).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self.get(i, j) as usize;
            }
        }
        sums
    }

    /// Number of ones, i.e. edges of the graph.
    pub fn edges(&self) -> usize {
        self.entries.iter().map(|&x| x as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn has_zero_row(&self) -> bool {
        self.row_sums().contains(&0)
    }

    pub fn has_zero_col(&self) -> bool {
        self.col_sums().contains(&0)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Integer Gram matrix `A A^T` (common-neighbour counts), row-major `m x m`.
    pub fn gram(&self) -> Vec<i64> {
        let m = self.rows;
        let mut g = vec![0i64; m * m];
        for i in 0..m {
            for k in i..m {
                let dot: i64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(k))
                    .map(|(&a, &b)| (a & b) as i64)
                    .sum();
                g[i * m + k] = dot;
                g[k * m + i] = dot;
            }
        }
        g
    }

    /// Representative of the matrix up to row and column permutations.
    ///
    /// Columns are ordered by degree then by column pattern, rows likewise.
    /// For chain graphs this is exactly the left-justified staircase, so two
    /// matrices isomorphic to the same chain graph share this form.
    pub fn canonical_form(&self) -> Self {
        let col_sums = self.col_sums();
        let mut cols: Vec<usize> = (0..self.cols).collect();
        cols.sort_by(|&a, &b| {
            col_sums[b].cmp(&col_sums[a]).then_with(|| {
                let ca: Vec<u8> = (0..self.rows).map(|i| self.get(i, a)).collect();
                let cb: Vec<u8> = (0..self.rows).map(|i| self.get(i, b)).collect();
                cb.cmp(&ca)
            })
        });
        let mut rows: Vec<Vec<u8>> = (0..self.rows)
            .map(|i| cols.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        rows.sort_by(|a, b| {
            let sa: u32 = a.iter().map(|&x| x as u32).sum();
            let sb: u32 = b.iter().map(|&x| x as u32).sum();
            sb.cmp(&sa).then_with(|| b.cmp(a))
        });
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Drops all-zero rows and columns (the nonisolated part of the graph).
    pub fn without_isolated(&self) -> Self {
        let rs = self.row_sums();
        let cs = self.col_sums();
        let keep_r: Vec<usize> = (0..self.rows).filter(|&i| rs[i] > 0).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|&j| cs[j] > 0).collect();
        let entries = keep_r
            .iter()
            .flat_map(|&i| keep_c.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self {
            rows: keep_r.len(),
            cols: keep_c.len(),
            entries,
        }
    }
}

impl fmt::Display for RepresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("/")?;
            }
            for &x in self.row(i) {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Run-length encoding of a degree staircase: distinct degrees
/// `r_1 > ... > r_h` with multiplicities `m_1, ..., m_h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FerrersProfile {
    distinct: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl FerrersProfile {
    pub fn new(distinct: Vec<usize>, multiplicities: Vec<usize>) -> Result<Self> {
        if distinct.is_empty() || distinct.len() != multiplicities.len() {
            return invalid("profile needs h >= 1 matching distinct/multiplicity lists");
        }
        if distinct.windows(2).any(|w| w[0] <= w[1]) || distinct[distinct.len() - 1] == 0 {
            return invalid("distinct degrees must be positive and strictly decreasing");
        }
        if multiplicities.contains(&0) {
            return invalid("multiplicities must be positive");
        }
        Ok(Self {
            distinct,
            multiplicities,
        })
    }

    /// `r_1 > ... > r_h`.
    pub fn distinct(&self) -> &[usize] {
        &self.distinct
    }

    /// `m_1, ..., m_h`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn h(&self) -> usize {
        self.distinct.len()
    }

    pub fn edges(&self) -> usize {
        self.distinct
            .iter()
            .zip(&self.multiplicities)
            .map(|(r, m)| r * m)
            .sum()
    }

    pub fn to_degrees(&self) -> DegreeSequence {
        let degrees = self
            .distinct
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&r, &m)| std::iter::repeat_n(r, m))
            .collect();
        DegreeSequence::new(degrees).expect("valid profile expands to a valid sequence")
    }
}

/// Row `i` holds `d_i` left-justified ones; the matrix is `m x d_1`.
pub fn chain_from_degrees(d: &DegreeSequence) -> RepresentationMatrix {
    let m = d.len();
    let n = d.max_degree();
    let mut entries = vec![0u8; m * n];
    for (i, &di) in d.degrees().iter().enumerate() {
        entries[i * n..i * n + di].fill(1);
    }
    RepresentationMatrix {
        rows: m,
        cols: n,
        entries,
    }
}

pub fn ferrers_profile(d: &DegreeSequence) -> FerrersProfile {
    let mut distinct = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for &x in d.degrees() {
        if distinct.last() == Some(&x) {
            *multiplicities.last_mut().unwrap() += 1;
        } else {
            distinct.push(x);
            multiplicities.push(1);
        }
    }
    FerrersProfile {
        distinct,
        multiplicities,
    }
}

/// Profile of the transposed staircase:
/// `r'_i = m_1 + ... + m_{h-i+1}` and `m'_i = r_{h-i+1} - r_{h-i+2}` with `r_{h+1} = 0`.
pub fn conjugate_profile(f: &FerrersProfile) -> FerrersProfile {
    let h = f.h();
    let r = f.distinct();
    let m = f.multiplicities();
    let mut distinct = Vec::with_capacity(h);
    let mut multiplicities = Vec::with_capacity(h);
    for i in 1..=h {
        distinct.push(m[..h - i + 1].iter().sum());
        let next = if i == 1 { 0 } else { r[h - i + 1] };
        multiplicities.push(r[h - i] - next);
    }
    FerrersProfile {
        distinct,
        multiplicities,
    }
}

/// Strict dominance `D > D'`: `m >= m'`, `d_i >= d'_i` for `i <= m'`, and `D != D'`.
pub fn dominates(d: &DegreeSequence, other: &DegreeSequence) -> bool {
    d.len() >= other.len()
        && d.degrees().iter().zip(other.degrees()).all(|(a, b)| a >= b)
        && d != other
}

/// True iff every entry is one. Isolated vertices must be stripped first.
pub fn is_complete_pattern(a: &RepresentationMatrix) -> Result<bool> {
    if a.has_zero_row() || a.has_zero_col() {
        return invalid("matrix has a zero row or column; strip isolated vertices first");
    }
    Ok(a.entries.iter().all(|&x| x == 1))
}

/// All chain graphs in `K(p, q, e)`: nonincreasing positive sequences with at
/// most `p` parts, parts at most `q`, summing to `e`, with not all parts equal.
///
/// Output is in decreasing lexicographic order (largest first part first).
pub fn enumerate_chain_candidates(p: usize, q: usize, e: usize) -> Result<Vec<DegreeSequence>> {
    if p < 2 || p > q {
        return invalid(format!("need 2 <= p <= q, got p={p}, q={q}"));
    }
    if e <= 1 || e >= p * q {
        return invalid(format!("need 1 < e < pq = {}, got e={e}", p * q));
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions_into(e, q, p, &mut parts, &mut |parts| {
        if parts.first() != parts.last() {
            out.push(DegreeSequence::new(parts.to_vec()).expect("partition is valid"));
        }
    });
    Ok(out)
}

fn partitions_into(
    remaining: usize,
    max_part: usize,
    max_len: usize,
    parts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    if max_len == 0 || max_part * max_len < remaining {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        parts.push(part);
        partitions_into(remaining - part, part, max_len - 1, parts, emit);
        parts.pop();
    }
}

fn check_enumeration_shape(d: &DegreeSequence, n: usize) -> Result<()> {
    if n < d.max_degree() {
        return invalid(format!("n = {n} is smaller than d_1 = {}", d.max_degree()));
    }
    if n > 64 || d.len() > 63 {
        return invalid("enumeration supports at most 63 rows and 64 columns");
    }
    Ok(())
}

/// Visits every 0-1 matrix with `n` columns, row sums `d` and no zero column.
///
/// Rows are filled top to bottom with column subsets in lexicographic order.
/// Returns the number of matrices visited, or a resource-limit error as soon
/// as that number would exceed `budget`.
pub fn for_each_row_sum_matrix(
    d: &DegreeSequence,
    n: usize,
    budget: u64,
    mut visit: impl FnMut(&RepresentationMatrix),
) -> Result<u64> {
    check_enumeration_shape(d, n)?;
    // suffix[i] = d_i + ... + d_m, the most columns rows i.. can still cover
    let mut suffix = vec![0usize; d.len() + 1];
    for i in (0..d.len()).rev() {
        suffix[i] = suffix[i + 1] + d.degrees()[i];
    }
    let mut state = RowFill {
        degrees: d.degrees(),
        suffix: &suffix,
        n,
        budget,
        count: 0,
        masks: Vec::with_capacity(d.len()),
    };
    state.fill(0, &mut visit)?;
    Ok(state.count)
}

struct RowFill<'a> {
    degrees: &'a [usize],
    suffix: &'a [usize],
    n: usize,
    budget: u64,
    count: u64,
    masks: Vec<u64>,
}

impl RowFill<'_> {
    fn fill(&mut self, covered: u64, visit: &mut impl FnMut(&RepresentationMatrix)) -> Result<()> {
        let row = self.masks.len();
        let uncovered = self.n - covered.count_ones() as usize;
        if row == self.degrees.len() {
            if uncovered == 0 {
                self.count += 1;
                if self.count > self.budget {
                    return Err(Error::ResourceLimit {
                        what: "row-sum matrix enumeration".into(),
                        budget: self.budget,
                    });
                }
                visit(&RepresentationMatrix::from_row_masks(&self.masks, self.n));
            }
            return Ok(());
        }
        if uncovered > self.suffix[row] {
            return Ok(());
        }
        let mut subset: Vec<usize> = (0..self.degrees[row]).collect();
        loop {
            let mask = subset.iter().fold(0u64, |acc, &j| acc | (1 << j));
            self.masks.push(mask);
            self.fill(covered | mask, visit)?;
            self.masks.pop();
            if !next_combination(&mut subset, self.n) {
                return Ok(());
            }
        }
    }
}

/// Advances `c` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Largest popcount of any integer in `1..=p`.
fn max_popcount_upto(p: u64) -> usize {
    let bits = 64 - p.leading_zeros() as usize;
    if p.count_ones() as usize == bits {
        bits
    } else {
        (p.count_ones() as usize).max(bits - 1)
    }
}

/// Collects every matrix visited by [`for_each_row_sum_matrix`].
pub fn enumerate_row_sum_matrices(
    d: &DegreeSequence,
    n: usize,
    budget: u64,
) -> Result<Vec<RepresentationMatrix>> {
    let mut out = Vec::new();
    for_each_row_sum_matrix(d, n, budget, |a| out.push(a.clone()))?;
    Ok(out)
}

/// Visits one representative per column-permutation class of the matrices
/// enumerated by [`for_each_row_sum_matrix`].
///
/// A class is a multiset of `n` nonzero column patterns; the representative
/// lists columns in decreasing pattern order. The visitor also receives the
/// class size `n! / prod(c_j!)`, so summing it recovers the full count.
/// The budget applies to the number of classes.
pub fn for_each_row_sum_class(
    d: &DegreeSequence,
    n: usize,
    budget: u64,
    mut visit: impl FnMut(&RepresentationMatrix, u128),
) -> Result<u64> {
    check_enumeration_shape(d, n)?;
    let m = d.len();
    if m > 12 {
        return invalid("column-class enumeration supports at most 12 rows");
    }
    let mut state = ClassFill {
        m,
        n,
        budget,
        count: 0,
        need: d.degrees().to_vec(),
        columns: Vec::with_capacity(n),
        multiplicities: Vec::new(),
    };
    state.fill((1u64 << m) - 1, n, &mut visit)?;
    Ok(state.count)
}

struct ClassFill {
    m: usize,
    n: usize,
    budget: u64,
    count: u64,
    need: Vec<usize>,
    columns: Vec<u64>,
    multiplicities: Vec<usize>,
}

impl ClassFill {
    fn fill(
        &mut self,
        pattern: u64,
        left: usize,
        visit: &mut impl FnMut(&RepresentationMatrix, u128),
    ) -> Result<()> {
        let total_need: usize = self.need.iter().sum();
        if left == 0 {
            if total_need == 0 {
                self.count += 1;
                if self.count > self.budget {
                    return Err(Error::ResourceLimit {
                        what: "row-sum class enumeration".into(),
                        budget: self.budget,
                    });
                }
                visit(&self.materialize(), self.class_size());
            }
            return Ok(());
        }
        if pattern == 0 || total_need < left || self.need.iter().any(|&x| x > left) {
            return Ok(());
        }
        // patterns this large or smaller cover at most popcount(pattern) rows each
        if total_need > left * max_popcount_upto(pattern) {
            return Ok(());
        }
        let rows: Vec<usize> = (0..self.m).filter(|&i| (pattern >> i) & 1 == 1).collect();
        let max_copies = rows
            .iter()
            .map(|&i| self.need[i])
            .min()
            .unwrap_or(0)
            .min(left);
        for copies in (0..=max_copies).rev() {
            for &i in &rows {
                self.need[i] -= copies;
            }
            for _ in 0..copies {
                self.columns.push(pattern);
            }
            if copies > 0 {
                self.multiplicities.push(copies);
            }
            let res = self.fill(pattern - 1, left - copies, visit);
            if copies > 0 {
                self.multiplicities.pop();
            }
            self.columns.truncate(self.columns.len() - copies);
            for &i in &rows {
                self.need[i] += copies;
            }
            res?;
        }
        Ok(())
    }

    fn materialize(&self) -> RepresentationMatrix {
        let mut entries = vec![0u8; self.m * self.n];
        for (j, &col) in self.columns.iter().enumerate() {
            for i in 0..self.m {
                entries[i * self.n + j] = ((col >> i) & 1) as u8;
            }
        }
        RepresentationMatrix {
            rows: self.m,
            cols: self.n,
            entries,
        }
    }

    fn class_size(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        self.multiplicities
            .iter()
            .fold(fact(self.n), |acc, &c| acc / fact(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn chain_matches_figure() {
        let a = chain_from_degrees(&ds(&[5, 2, 2, 1]));
        assert_eq!(a.to_string(), "11111/11000/11000/10000");
        assert_eq!(chain_from_degrees(&ds(&[3])).to_string(), "111");
        assert_eq!(chain_from_degrees(&ds(&[2, 2])).to_string(), "11/11");
    }

    #[test]
    fn empty_and_bad_sequences_rejected() {
        assert!(matches!(
            DegreeSequence::new(vec![]),
            Err(Error::InvalidInput(_))
        ));
        assert!(DegreeSequence::new(vec![1, 2]).is_err());
        assert!(DegreeSequence::new(vec![2, 0]).is_err());
    }

    #[test]
    fn parse_degree_lists() {
        let d: DegreeSequence = " 5, 2,2 ,1 ".parse().unwrap();
        assert_eq!(d, ds(&[5, 2, 2, 1]));
        assert_eq!(d.edges(), 10);
        assert!("5,0".parse::<DegreeSequence>().is_err());
        assert!("5,-1".parse::<DegreeSequence>().is_err());
        assert!("5,x".parse::<DegreeSequence>().is_err());
        assert!("2.5".parse::<DegreeSequence>().is_err());
        assert!("".parse::<DegreeSequence>().is_err());
    }

    #[test]
    fn profiles() {
        let f = ferrers_profile(&ds(&[5, 2, 2, 1]));
        assert_eq!(
            (f.distinct(), f.multiplicities(), f.h()),
            (&[5, 2, 1][..], &[1, 2, 1][..], 3)
        );
        let f = ferrers_profile(&ds(&[4, 4, 4]));
        assert_eq!((f.distinct(), f.multiplicities()), (&[4][..], &[3][..]));
        let f = ferrers_profile(&ds(&[5, 5, 4]));
        assert_eq!(
            (f.distinct(), f.multiplicities()),
            (&[5, 4][..], &[2, 1][..])
        );
    }

    #[test]
    fn conjugates() {
        let f = FerrersProfile::new(vec![5, 2, 1], vec![1, 2, 1]).unwrap();
        let c = conjugate_profile(&f);
        assert_eq!(
            (c.distinct(), c.multiplicities()),
            (&[4, 3, 1][..], &[1, 1, 3][..])
        );
        let col_sums = chain_from_degrees(&f.to_degrees()).col_sums();
        assert_eq!(col_sums, vec![4, 3, 1, 1, 1]);
        assert_eq!(ferrers_profile(&DegreeSequence::new(col_sums).unwrap()), c);

        let k = FerrersProfile::new(vec![7], vec![3]).unwrap();
        let kc = conjugate_profile(&k);
        assert_eq!((kc.distinct(), kc.multiplicities()), (&[3][..], &[7][..]));

        let g = FerrersProfile::new(vec![5, 4], vec![2, 1]).unwrap();
        assert_eq!(conjugate_profile(&conjugate_profile(&g)), g);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&ds(&[3, 2]), &ds(&[2, 2])));
        assert!(!dominates(&ds(&[3, 2]), &ds(&[3, 2])));
        assert!(!dominates(&ds(&[3, 1]), &ds(&[2, 2])));
        assert!(dominates(&ds(&[5, 2, 2, 1]), &ds(&[5, 2, 2])));
        assert!(!dominates(&ds(&[5, 2, 2]), &ds(&[5, 2, 2, 1])));
    }

    #[test]
    fn complete_patterns() {
        assert!(is_complete_pattern(&RepresentationMatrix::all_ones(2, 3)).unwrap());
        assert!(!is_complete_pattern(&chain_from_degrees(&ds(&[5, 2, 2, 1]))).unwrap());
        assert!(is_complete_pattern(&RepresentationMatrix::all_ones(1, 1)).unwrap());
        let zero_col = RepresentationMatrix::from_row_strings(&["10", "10"]).unwrap();
        assert!(matches!(
            is_complete_pattern(&zero_col),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn chain_candidates() {
        assert_eq!(
            enumerate_chain_candidates(2, 2, 3).unwrap(),
            vec![ds(&[2, 1])]
        );
        assert_eq!(
            enumerate_chain_candidates(3, 3, 8).unwrap(),
            vec![ds(&[3, 3, 2])]
        );
        assert_eq!(
            enumerate_chain_candidates(2, 3, 5).unwrap(),
            vec![ds(&[3, 2])]
        );
        assert!(enumerate_chain_candidates(2, 2, 4).is_err());
        assert!(enumerate_chain_candidates(2, 2, 1).is_err());
        assert!(enumerate_chain_candidates(3, 2, 3).is_err());
        let many = enumerate_chain_candidates(4, 5, 9).unwrap();
        let mut sorted = many.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(many, sorted);
    }

    #[test]
    fn row_sum_matrices() {
        let got = enumerate_row_sum_matrices(&ds(&[2, 1]), 2, DEFAULT_BUDGET).unwrap();
        let s: Vec<String> = got.iter().map(|a| a.to_string()).collect();
        assert_eq!(s, vec!["11/10", "11/01"]);
        let got = enumerate_row_sum_matrices(&ds(&[1, 1]), 2, DEFAULT_BUDGET).unwrap();
        let s: Vec<String> = got.iter().map(|a| a.to_string()).collect();
        assert_eq!(s, vec!["10/01", "01/10"]);
        assert!(enumerate_row_sum_matrices(&ds(&[2]), 3, DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
        assert!(enumerate_row_sum_matrices(&ds(&[3]), 2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_row_sum_matrices(&ds(&[2, 2, 2]), 4, 5).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { budget: 5, .. }));
        let err = for_each_row_sum_class(&ds(&[2, 2, 2]), 4, 1, |_, _| {}).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn class_sizes_recover_full_count() {
        for (d, n) in [
            (ds(&[2, 1]), 2),
            (ds(&[3, 2, 2]), 4),
            (ds(&[3, 3, 1, 1]), 5),
            (ds(&[2, 2, 2]), 6),
        ] {
            let full = for_each_row_sum_matrix(&d, n, DEFAULT_BUDGET, |_| {}).unwrap();
            let mut total = 0u128;
            let mut canon = std::collections::HashSet::new();
            for_each_row_sum_class(&d, n, DEFAULT_BUDGET, |a, size| {
                assert_eq!(a.row_sums(), d.degrees());
                assert!(!a.has_zero_col());
                assert!(canon.insert(a.clone()), "class visited twice");
                total += size;
            })
            .unwrap();
            assert_eq!(total, full as u128, "D={d} n={n}");
        }
    }

    #[test]
    fn canonical_form_of_permuted_chain() {
        let chain = chain_from_degrees(&ds(&[3, 2, 1]));
        let shuffled = RepresentationMatrix::from_row_strings(&["010", "111", "011"]).unwrap();
        assert_eq!(shuffled.canonical_form(), chain);
        let other = RepresentationMatrix::from_row_strings(&["110", "011"]).unwrap();
        assert_ne!(other.canonical_form(), chain_from_degrees(&ds(&[2, 2])));
    }

    #[test]
    fn conjugate_sequence_is_column_sums() {
        let d = ds(&[5, 2, 2, 1]);
        assert_eq!(d.conjugate().degrees(), &[4, 3, 1, 1, 1]);
        assert_eq!(d.conjugate().conjugate(), d);
    }
}
