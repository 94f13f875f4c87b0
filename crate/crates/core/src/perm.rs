//! Permutations of `{1..n}` in one-line notation and cached group tables.
//!
//! Composition acts right to left: `(u * w)(k) = u(w(k))`. The simple
//! transposition `s_j` swaps `j` and `j+1`; right multiplication by `s_j`
//! swaps positions, left multiplication swaps values.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n as u8).collect())
    }

    /// From one-line notation; fails unless the values are exactly `1..=n`.
    pub fn from_one_line(values: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; values.len()];
        for &v in &values {
            let k = v as usize;
            if k == 0 || k > values.len() || seen[k - 1] {
                return Err(Error::Parse(format!("{values:?} is not a permutation")));
            }
            seen[k - 1] = true;
        }
        Ok(Self(values))
    }

    /// The simple transposition `s_j` in `S_n`.
    pub fn simple(n: usize, j: usize) -> Self {
        assert!(j >= 1 && j < n, "s_{j} not in S_{n}");
        let mut p = Self::identity(n);
        p.0.swap(j - 1, j);
        p
    }

    /// Product `s_{w[0]} s_{w[1]} ... s_{w[k-1]}`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for &j in word {
            p.mul_simple_right(j);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// `w(k)` for `1 <= k <= n`.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = pos as u8 + 1;
        }
        Self(inv)
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self(other.0.iter().map(|&k| self.0[k as usize - 1]).collect())
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let mut inv = 0;
        for a in 0..self.0.len() {
            for b in a + 1..self.0.len() {
                if self.0[a] > self.0[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `w s_j < w`.
    pub fn has_right_descent(&self, j: usize) -> bool {
        self.0[j - 1] > self.0[j]
    }

    /// `s_j w < w`.
    pub fn has_left_descent(&self, j: usize) -> bool {
        let inv = self.inverse();
        inv.0[j - 1] > inv.0[j]
    }

    /// `self <- self * s_j`.
    pub fn mul_simple_right(&mut self, j: usize) {
        self.0.swap(j - 1, j);
    }

    /// `self <- s_j * self`.
    pub fn mul_simple_left(&mut self, j: usize) {
        for v in self.0.iter_mut() {
            if *v as usize == j {
                *v += 1;
            } else if *v as usize == j + 1 {
                *v -= 1;
            }
        }
    }

    /// A reduced word `[j_1, .., j_l]` with `self = s_{j_1} ... s_{j_l}`, chosen by
    /// repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for j in 1..w.n() {
                if w.has_right_descent(j) {
                    w.mul_simple_right(j);
                    rev.push(j);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_of(n: usize, labels: &BTreeSet<usize>) -> Self {
        let mut p = Self::identity(n);
        for run in label_runs(labels) {
            let (a, b) = (run[0], *run.last().unwrap() + 1);
            p.0[a - 1..b].reverse();
        }
        p
    }

    /// True when `self` lies in the parabolic subgroup generated by `labels`.
    pub fn in_parabolic(&self, labels: &BTreeSet<usize>) -> bool {
        self.reduced_word().iter().all(|j| labels.contains(j))
    }

    /// All elements of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Self(cur.clone()));
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1))
                .rev()
                .find(|&k| cur[k] < cur[k + 1])
            else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }

    /// Elements of the parabolic subgroup `W_J`.
    pub fn parabolic_elements(n: usize, labels: &BTreeSet<usize>) -> Vec<Self> {
        let mut out = vec![Self::identity(n)];
        let mut seen: std::collections::HashSet<Self> = out.iter().cloned().collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for &j in labels {
                    let mut u = w.clone();
                    u.mul_simple_right(j);
                    if seen.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// The image of `self ∈ S_m` in `S_n`, acting on `offset+1 ..= offset+m`.
    pub fn embed(&self, n: usize, offset: usize) -> Self {
        let m = self.n();
        assert!(offset + m <= n);
        Self(
            (1..=n)
                .map(|k| {
                    if k > offset && k <= offset + m {
                        (self.0[k - offset - 1] as usize + offset) as u8
                    } else {
                        k as u8
                    }
                })
                .collect(),
        )
    }

    /// Inverse of [`Permutation::embed`]; `None` if `self` moves points outside the window.
    pub fn restrict(&self, offset: usize, m: usize) -> Option<Self> {
        let n = self.n();
        if offset + m > n {
            return None;
        }
        for k in 1..=n {
            let inside = k > offset && k <= offset + m;
            let v = self.0[k - 1] as usize;
            if !inside && v != k || inside && (v <= offset || v > offset + m) {
                return None;
            }
        }
        Some(Self(
            self.0[offset..offset + m]
                .iter()
                .map(|&v| v - offset as u8)
                .collect(),
        ))
    }

    /// Bruhat order by the tableau criterion.
    pub fn bruhat_leq(&self, other: &Self) -> bool {
        let n = self.n();
        for k in 1..n {
            let mut a: Vec<u8> = self.0[..k].to_vec();
            let mut b: Vec<u8> = other.0[..k].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Splits a label set into maximal runs of consecutive labels.
pub fn label_runs(labels: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &j in labels {
        match runs.last_mut() {
            Some(run) if *run.last().unwrap() + 1 == j => run.push(j),
            _ => runs.push(vec![j]),
        }
    }
    runs
}

/// `l(w_J)` computed from the run structure of `J`.
pub fn longest_length(labels: &BTreeSet<usize>) -> usize {
    label_runs(labels)
        .iter()
        .map(|r| r.len() * (r.len() + 1) / 2)
        .sum()
}

/// Dense multiplication tables for `S_n`, shared across threads.
#[derive(Debug)]
pub struct SymmetricGroup {
    pub n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    lengths: Vec<u32>,
    /// `right[x][j-1]` is the index of `x s_j`.
    right: Vec<Vec<u32>>,
}

impl SymmetricGroup {
    fn build(n: usize) -> Self {
        let elements = Permutation::all(n);
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k as u32))
            .collect();
        let lengths = elements.iter().map(|p| p.length() as u32).collect();
        let right = elements
            .iter()
            .map(|p| {
                (1..n)
                    .map(|j| {
                        let mut q = p.clone();
                        q.mul_simple_right(j);
                        index[&q]
                    })
                    .collect()
            })
            .collect();
        Self {
            n,
            elements,
            index,
            lengths,
            right,
        }
    }

    /// Cached tables for `S_n`.
    pub fn get(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SymmetricGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(Self::build(n)))
            .clone()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: u32) -> &Permutation {
        &self.elements[idx as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> u32 {
        self.index[p]
    }

    pub fn length(&self, idx: u32) -> u32 {
        self.lengths[idx as usize]
    }

    pub fn right_mul(&self, idx: u32, j: usize) -> u32 {
        self.right[idx as usize][j - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn word_product_and_reduced_word() {
        let w = Permutation::from_word(4, &[3, 1, 2]);
        assert_eq!(w.one_line(), &[2, 4, 1, 3]);
        assert_eq!(w.length(), 3);
        let rw = w.reduced_word();
        assert_eq!(rw.len(), 3);
        assert_eq!(Permutation::from_word(4, &rw), w);
    }

    #[test]
    fn longest_elements() {
        assert_eq!(
            Permutation::longest_of(4, &set(&[1, 3])).one_line(),
            &[2, 1, 4, 3]
        );
        assert_eq!(Permutation::longest_of(4, &set(&[1, 2])).length(), 3);
        assert_eq!(longest_length(&set(&[1, 2, 4, 5, 6])), 3 + 6);
        assert_eq!(
            Permutation::parabolic_elements(5, &set(&[1, 2, 4])).len(),
            12
        );
    }

    #[test]
    fn descents_and_inverse() {
        let w = Permutation::from_one_line(vec![2, 4, 1, 3]).unwrap();
        assert!(w.has_right_descent(2));
        assert!(!w.has_right_descent(1));
        assert!(w.has_left_descent(1));
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(4));
        assert!(Permutation::from_one_line(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn group_tables() {
        let g = SymmetricGroup::get(4);
        assert_eq!(g.order(), 24);
        for x in 0..24u32 {
            for j in 1..4 {
                let y = g.right_mul(x, j);
                assert_eq!(g.right_mul(y, j), x);
                assert_eq!((g.length(x) as i64 - g.length(y) as i64).abs(), 1);
            }
        }
    }
}
