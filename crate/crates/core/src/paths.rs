//! Up/down lattice paths encoding minimal coset representatives of `S_n / (S_i x S_{n-i})`.
//!
//! A path starts at `(0, i)` and ends at `(n, n - i)`. Step `k` (1-based) joins
//! `(k-1, hgt_{k-1})` to `(k, hgt_k)`. Boxes are 45-degree squares centred at integer
//! points `(x, y)` with `x + y + i` odd; the label of a box is `x`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Down,
    Up,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Peak,
    Valley,
    SlopeUp,
    SlopeDown,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    n: usize,
    i: usize,
    steps: Vec<Step>,
}

/// A box centred at `(x, y)`; its label is `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct LatticeBox {
    pub x: i32,
    pub y: i32,
}

impl LatticeBox {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn label(self) -> usize {
        self.x as usize
    }

    pub fn above(self) -> Self {
        Self::new(self.x, self.y + 2)
    }

    pub fn below(self) -> Self {
        Self::new(self.x, self.y - 2)
    }
}

impl From<(i32, i32)> for LatticeBox {
    fn from((x, y): (i32, i32)) -> Self {
        Self { x, y }
    }
}

impl From<LatticeBox> for (i32, i32) {
    fn from(b: LatticeBox) -> Self {
        (b.x, b.y)
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The boxes between two comparable paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub lower: Path,
    pub upper: Path,
    pub boxes: BTreeSet<LatticeBox>,
}

impl Region {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: &LatticeBox) -> bool {
        self.boxes.contains(b)
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.boxes.serialize(s)
    }
}

fn check_params(n: usize, i: usize) -> Result<()> {
    if n < 2 || i < 1 || i >= n || n > 32 {
        return Err(Error::Parameter(format!(
            "need 1 <= i <= n-1, got n={n}, i={i}"
        )));
    }
    Ok(())
}

/// All `C(n, i)` paths, in lexicographic order with `D < U` (so the identity comes first).
pub fn enumerate_paths(n: usize, i: usize) -> Result<Vec<Path>> {
    check_params(n, i)?;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    fn rec(n: usize, downs_left: usize, steps: &mut Vec<Step>, i: usize, out: &mut Vec<Path>) {
        if steps.len() == n {
            out.push(Path {
                n,
                i,
                steps: steps.clone(),
            });
            return;
        }
        let remaining = n - steps.len();
        if downs_left > 0 {
            steps.push(Step::Down);
            rec(n, downs_left - 1, steps, i, out);
            steps.pop();
        }
        if remaining > downs_left {
            steps.push(Step::Up);
            rec(n, downs_left, steps, i, out);
            steps.pop();
        }
    }
    rec(n, i, &mut steps, i, &mut out);
    Ok(out)
}

/// Paths sorted by length, ties broken lexicographically.
pub fn paths_by_length(n: usize, i: usize) -> Result<Vec<Path>> {
    let mut ps = enumerate_paths(n, i)?;
    ps.sort_by_key(|p| (p.length(), p.clone()));
    Ok(ps)
}

impl Path {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let n = steps.len();
        let i = steps.iter().filter(|s| **s == Step::Down).count();
        check_params(n, i)?;
        Ok(Self { n, i, steps })
    }

    /// Parses a path and checks it against the expected `(n, i)`.
    pub fn parse_in(s: &str, n: usize, i: usize) -> Result<Self> {
        let p: Path = s.parse()?;
        if p.n != n || p.i != i {
            return Err(Error::Parameter(format!(
                "path {s} lies in ({}, {}), expected ({n}, {i})",
                p.n, p.i
            )));
        }
        Ok(p)
    }

    /// `D^i U^(n-i)`, the path of the identity.
    pub fn identity(n: usize, i: usize) -> Result<Self> {
        check_params(n, i)?;
        let mut steps = vec![Step::Down; i];
        steps.extend(std::iter::repeat_n(Step::Up, n - i));
        Ok(Self { n, i, steps })
    }

    /// `U^(n-i) D^i`, the maximal path.
    pub fn top(n: usize, i: usize) -> Result<Self> {
        check_params(n, i)?;
        let mut steps = vec![Step::Up; n - i];
        steps.extend(std::iter::repeat_n(Step::Down, i));
        Ok(Self { n, i, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Step `k`, 1-based.
    pub fn step(&self, k: usize) -> Step {
        self.steps[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.steps.iter().take(self.i).all(|s| *s == Step::Down)
    }

    /// `hgt_j` without range checks.
    pub fn hgt(&self, j: usize) -> i32 {
        let mut h = self.i as i32;
        for s in &self.steps[..j] {
            h += if *s == Step::Up { 1 } else { -1 };
        }
        h
    }

    /// All heights `hgt_0 ..= hgt_n`.
    pub fn heights(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.n + 1);
        let mut h = self.i as i32;
        out.push(h);
        for s in &self.steps {
            h += if *s == Step::Up { 1 } else { -1 };
            out.push(h);
        }
        out
    }

    pub fn height(&self, j: usize) -> Result<i32> {
        if j > self.n {
            return Err(Error::OutOfRange(format!(
                "height index {j} outside 0..={}",
                self.n
            )));
        }
        Ok(self.hgt(j))
    }

    /// Number of pairs `a < b` with an up step at `a` and a down step at `b`.
    pub fn length(&self) -> usize {
        let mut ups = 0;
        let mut len = 0;
        for s in &self.steps {
            match s {
                Step::Up => ups += 1,
                Step::Down => len += ups,
            }
        }
        len
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.i != other.i {
            return Err(Error::Parameter(format!(
                "paths {self} and {other} lie in different spaces"
            )));
        }
        Ok(())
    }

    /// Bruhat order: pointwise comparison of heights.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.leq(other))
    }

    /// Unchecked Bruhat comparison for paths known to share `(n, i)`.
    pub fn leq(&self, other: &Self) -> bool {
        let (mut a, mut b) = (0i32, 0i32);
        for k in 0..self.n {
            a += if self.steps[k] == Step::Up { 1 } else { -1 };
            b += if other.steps[k] == Step::Up { 1 } else { -1 };
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn lt_bruhat(&self, other: &Self) -> bool {
        self != other && self.leq(other)
    }

    pub fn classify_position(&self, j: usize) -> Result<Position> {
        if j == 0 || j >= self.n {
            return Err(Error::OutOfRange(format!(
                "position {j} outside 1..{}",
                self.n
            )));
        }
        Ok(self.classify(j))
    }

    pub(crate) fn classify(&self, j: usize) -> Position {
        match (self.step(j), self.step(j + 1)) {
            (Step::Up, Step::Down) => Position::Peak,
            (Step::Down, Step::Up) => Position::Valley,
            (Step::Up, Step::Up) => Position::SlopeUp,
            (Step::Down, Step::Down) => Position::SlopeDown,
        }
    }

    pub fn peaks(&self) -> Vec<usize> {
        (1..self.n)
            .filter(|&j| self.classify(j) == Position::Peak)
            .collect()
    }

    pub fn valleys(&self) -> Vec<usize> {
        (1..self.n)
            .filter(|&j| self.classify(j) == Position::Valley)
            .collect()
    }

    /// Labels `j` with `s_j λ <= λ` in the coset order: peaks and slopes.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        (1..self.n)
            .filter(|&j| self.classify(j) != Position::Valley)
            .collect()
    }

    /// The path obtained by swapping steps `j` and `j+1`, i.e. the coset of `s_j w`.
    pub fn swapped(&self, j: usize) -> Self {
        let mut p = self.clone();
        p.steps.swap(j - 1, j);
        p
    }

    /// The path with steps `[a, b]` (1-based, inclusive) reversed.
    pub fn reversed_segment(&self, a: usize, b: usize) -> Self {
        let mut p = self.clone();
        if a <= b {
            p.steps[a - 1..b].reverse();
        }
        p
    }

    /// Raises heights by 2 on positions `x0..=x1`; `None` unless the result is a path.
    pub fn raised(&self, x0: usize, x1: usize) -> Option<Self> {
        self.shifted(x0, x1, 2)
    }

    /// Lowers heights by 2 on positions `x0..=x1`; `None` unless the result is a path.
    pub fn lowered(&self, x0: usize, x1: usize) -> Option<Self> {
        self.shifted(x0, x1, -2)
    }

    fn shifted(&self, x0: usize, x1: usize, delta: i32) -> Option<Self> {
        if x0 == 0 || x1 >= self.n || x0 > x1 {
            return None;
        }
        let mut h = self.heights();
        for hj in &mut h[x0..=x1] {
            *hj += delta;
        }
        let mut steps = Vec::with_capacity(self.n);
        for k in 0..self.n {
            match h[k + 1] - h[k] {
                1 => steps.push(Step::Up),
                -1 => steps.push(Step::Down),
                _ => return None,
            }
        }
        Some(Self {
            n: self.n,
            i: self.i,
            steps,
        })
    }

    /// Label counts of `A(id, λ)`.
    pub fn rex_counts(&self) -> BTreeMap<usize, usize> {
        let h = self.heights();
        (1..self.n)
            .map(|j| {
                let base = (self.i as i32 - j as i32).abs();
                (j, ((h[j] - base) / 2) as usize)
            })
            .collect()
    }

    /// Labels of boxes removed one at a time from the top, always taking the leftmost peak.
    /// Read left to right this is a reduced word for `perm_of_path(λ)`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&x) = p.peaks().first() {
            word.push(x);
            p = p.swapped(x);
        }
        word
    }

    /// Partition with one part per down step: the number of up steps before it.
    pub fn young_shape(&self) -> Vec<usize> {
        let mut ups = 0;
        let mut parts = Vec::new();
        for s in &self.steps {
            match s {
                Step::Up => ups += 1,
                Step::Down => {
                    if ups > 0 {
                        parts.push(ups)
                    }
                }
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// The minimal coset representative: `w(1..i)` are the down positions, `w(i+1..n)` the up ones.
    pub fn perm_of_path(&self) -> Permutation {
        let mut downs: Vec<u8> = Vec::with_capacity(self.n);
        let mut ups: Vec<u8> = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            match s {
                Step::Down => downs.push(k as u8 + 1),
                Step::Up => ups.push(k as u8 + 1),
            }
        }
        downs.extend(ups);
        Permutation::from_one_line(downs).expect("positions form a permutation")
    }

    /// The path of the coset `w W_I`; defined for every `w`.
    pub fn coset_path(w: &Permutation, i: usize) -> Result<Self> {
        let n = w.n();
        check_params(n, i)?;
        let inv = w.inverse();
        let steps = (1..=n)
            .map(|k| {
                if inv.apply(k) <= i {
                    Step::Down
                } else {
                    Step::Up
                }
            })
            .collect();
        Ok(Self { n, i, steps })
    }

    /// Inverse of [`Path::perm_of_path`]; rejects `w` outside `W^I`.
    pub fn path_of_perm(w: &Permutation, n: usize, i: usize) -> Result<Self> {
        check_params(n, i)?;
        if w.n() != n {
            return Err(Error::Parameter(format!("{w} is not in S_{n}")));
        }
        if !is_minimal_rep(w, i) {
            return Err(Error::Domain(format!(
                "{w} is not a minimal coset representative for i={i}"
            )));
        }
        Self::coset_path(w, i)
    }
}

/// The paths of `Λ_{n,i}` sorted by length, with index lookup and the left action of simple labels.
#[derive(Debug)]
pub struct PathSpace {
    pub n: usize,
    pub i: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    lengths: Vec<usize>,
    /// `swap[k][j-1]` is the index of `s_j λ_k` when `j` is a peak or valley of `λ_k`.
    swap: Vec<Vec<Option<usize>>>,
}

impl PathSpace {
    fn build(n: usize, i: usize) -> Result<Self> {
        let paths = paths_by_length(n, i)?;
        let index: HashMap<Path, usize> = paths
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        let lengths = paths.iter().map(Path::length).collect();
        let swap = paths
            .iter()
            .map(|p| {
                (1..n)
                    .map(|j| match p.classify(j) {
                        Position::Peak | Position::Valley => Some(index[&p.swapped(j)]),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            i,
            paths,
            index,
            lengths,
            swap,
        })
    }

    /// Cached space for `(n, i)`.
    pub fn get(n: usize, i: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<PathSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(s) = cache.lock().unwrap().get(&(n, i)) {
            return Ok(s.clone());
        }
        let built = Arc::new(Self::build(n, i)?);
        Ok(cache.lock().unwrap().entry((n, i)).or_insert(built).clone())
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, k: usize) -> &Path {
        &self.paths[k]
    }

    pub fn index_of(&self, p: &Path) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::Parameter(format!("{p} is not in ({}, {})", self.n, self.i)))
    }

    pub fn length(&self, k: usize) -> usize {
        self.lengths[k]
    }

    /// Index of `s_j λ_k` when `j` is a peak or valley of `λ_k`, `None` on a slope.
    pub fn swap(&self, k: usize, j: usize) -> Option<usize> {
        self.swap[k][j - 1]
    }
}

/// `w` increases on `1..=i` and on `i+1..=n`.
pub fn is_minimal_rep(w: &Permutation, i: usize) -> bool {
    let v = w.one_line();
    (1..v.len()).all(|k| k == i || v[k - 1] < v[k])
}

/// Boxes of `A(λ, μ)`; fails unless `λ <= μ`.
pub fn region_boxes(lower: &Path, upper: &Path) -> Result<Region> {
    if !lower.bruhat_leq(upper)? {
        return Err(Error::Order(format!("{lower} is not below {upper}")));
    }
    Ok(region_unchecked(lower, upper))
}

pub(crate) fn region_unchecked(lower: &Path, upper: &Path) -> Region {
    let hl = lower.heights();
    let hu = upper.heights();
    let mut boxes = BTreeSet::new();
    for x in 1..lower.n {
        let mut y = hl[x] + 1;
        while y < hu[x] {
            boxes.insert(LatticeBox::new(x as i32, y));
            y += 2;
        }
    }
    Region {
        lower: lower.clone(),
        upper: upper.clone(),
        boxes,
    }
}

/// True when `(x, y)` is a box position for paths with `i` down steps.
pub fn box_parity_ok(b: LatticeBox, i: usize) -> bool {
    (b.x + b.y + i as i32).rem_euclid(2) == 1
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                _ => Err(Error::Parse(format!("bad step {c:?} in path {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(steps)
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    n: usize,
    i: usize,
    steps: String,
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            n: self.n,
            i: self.i,
            steps: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PathJson::deserialize(d)?;
        Path::parse_in(&raw.steps, raw.n, raw.i).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_paths(2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_paths(4, 2).unwrap().len(), 6);
        assert_eq!(enumerate_paths(8, 4).unwrap().len(), 70);
        assert!(enumerate_paths(4, 0).is_err());
        assert!(enumerate_paths(4, 4).is_err());
        assert_eq!(
            enumerate_paths(4, 2).unwrap()[0],
            Path::identity(4, 2).unwrap()
        );
    }

    #[test]
    fn figure_path() {
        let w = Permutation::from_word(8, &[6, 1, 3, 5, 7, 2, 4, 6, 3, 5, 4]);
        let lam = Path::path_of_perm(&w, 8, 4).unwrap();
        assert_eq!(lam.to_string(), "UDUDUUDD");
        assert_eq!(lam.length(), 11);
        let rex = lam.rex_counts();
        let expect: BTreeMap<usize, usize> =
            [(1, 1), (2, 1), (3, 2), (4, 2), (5, 2), (6, 2), (7, 1)]
                .into_iter()
                .collect();
        assert_eq!(rex, expect);
        assert_eq!(lam.hgt(4), 4);
    }

    #[test]
    fn perm_conversions() {
        let id = Permutation::identity(4);
        assert_eq!(Path::path_of_perm(&id, 4, 2).unwrap().to_string(), "DDUU");
        let s1 = Permutation::simple(2, 1);
        assert_eq!(Path::path_of_perm(&s1, 2, 1).unwrap().to_string(), "UD");
        assert_eq!(p("UDUD").perm_of_path().one_line(), &[2, 4, 1, 3]);
        assert!(Path::path_of_perm(&Permutation::simple(4, 1), 4, 2).is_err());
    }

    #[test]
    fn heights_and_lengths() {
        assert_eq!(p("DDUU").height(0).unwrap(), 2);
        assert_eq!(p("UDUD").height(2).unwrap(), 2);
        assert!(p("UDUD").height(5).is_err());
        assert_eq!(p("DDUU").length(), 0);
        assert_eq!(p("UUDD").length(), 4);
        assert_eq!(p("UDUDUUDD").length(), 11);
    }

    #[test]
    fn order_and_positions() {
        assert!(p("DUDU").bruhat_leq(&p("UDUD")).unwrap());
        assert!(!p("UDDU").leq(&p("DUUD")));
        assert!(!p("DUUD").leq(&p("UDDU")));
        assert!(p("UD").bruhat_leq(&p("UDUD")).is_err());
        assert_eq!(p("UDUD").classify_position(1).unwrap(), Position::Peak);
        assert_eq!(p("DDUU").classify_position(2).unwrap(), Position::Valley);
        assert_eq!(p("DDUU").classify_position(1).unwrap(), Position::SlopeDown);
        assert!(p("DDUU").classify_position(4).is_err());
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(p("DDUU").descent_set(), set(&[1, 3]));
        assert_eq!(p("UDUD").descent_set(), set(&[1, 3]));
        assert_eq!(p("UUDD").descent_set(), set(&[1, 2, 3]));
    }

    #[test]
    fn regions() {
        let id = p("DDUU");
        let r = region_boxes(&id, &p("UUDD")).unwrap();
        let expect: BTreeSet<_> = [(2, 1), (1, 2), (3, 2), (2, 3)]
            .into_iter()
            .map(LatticeBox::from)
            .collect();
        assert_eq!(r.boxes, expect);
        assert!(region_boxes(&id, &id).unwrap().is_empty());
        assert!(region_boxes(&p("UUDD"), &id).is_err());
        let big = region_boxes(&Path::identity(8, 4).unwrap(), &p("UDUDUUDD")).unwrap();
        let mut labels = BTreeMap::new();
        for b in &big.boxes {
            *labels.entry(b.label()).or_insert(0) += 1;
        }
        let expect: BTreeMap<usize, usize> =
            [(1, 1), (2, 1), (3, 2), (4, 2), (5, 2), (6, 2), (7, 1)]
                .into_iter()
                .collect();
        assert_eq!(labels, expect);
    }

    #[test]
    fn words_and_shapes() {
        assert!(p("DDUU").reduced_word().is_empty());
        assert_eq!(p("DUDU").reduced_word(), vec![2]);
        let mut w = p("UDUD").reduced_word();
        w.sort_unstable();
        assert_eq!(w, vec![1, 2, 3]);
        assert!(p("DDUU").young_shape().is_empty());
        assert_eq!(p("UUDD").young_shape(), vec![2, 2]);
        assert_eq!(p("UDUD").young_shape(), vec![2, 1]);
        assert_eq!(
            p("UDUD").rex_counts().values().copied().collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn reduced_words_avoid_braid_factor() {
        for n in 2..=5 {
            for i in 1..n {
                for lam in enumerate_paths(n, i).unwrap() {
                    let w = lam.reduced_word();
                    for k in 0..w.len().saturating_sub(2) {
                        assert!(!(w[k] == w[k + 2] && w[k + 1] == w[k] + 1), "{lam}: {w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn valley_block_translates_stay_below() {
        // for a valley run a..=j down, j+1..=b up in w, v < w and x in W_[a,b-1]: xv is not >= w
        for n in 3..=5 {
            for i in 1..n {
                let paths = enumerate_paths(n, i).unwrap();
                for w in &paths {
                    for j in w.valleys() {
                        let mut a = j;
                        while a > 1 && w.step(a - 1) == Step::Down {
                            a -= 1;
                        }
                        let mut b = j + 1;
                        while b < n && w.step(b + 1) == Step::Up {
                            b += 1;
                        }
                        let labels: BTreeSet<usize> = (a..b).collect();
                        let xs = Permutation::parabolic_elements(n, &labels);
                        for v in paths.iter().filter(|v| v.lt_bruhat(w)) {
                            let pv = v.perm_of_path();
                            for x in &xs {
                                let xv = Path::coset_path(&x.compose(&pv), i).unwrap();
                                assert!(!w.leq(&xv), "w={w} v={v} x={x}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let lam = p("UDUD");
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(s, r#"{"n":4,"i":2,"steps":"UDUD"}"#);
        assert_eq!(serde_json::from_str::<Path>(&s).unwrap(), lam);
        assert!(serde_json::from_str::<Path>(r#"{"n":4,"i":1,"steps":"UDUD"}"#).is_err());
        assert_eq!(
            serde_json::to_string(&LatticeBox::new(2, 1)).unwrap(),
            "[2,1]"
        );
    }

    fn arb_path() -> impl Strategy<Value = Path> {
        (2usize..=9).prop_flat_map(|n| {
            (1..n).prop_flat_map(move |i| {
                Just(enumerate_paths(n, i).unwrap()).prop_flat_map(|ps| {
                    let len = ps.len();
                    (0..len).prop_map(move |k| ps[k].clone())
                })
            })
        })
    }

    fn arb_pair() -> impl Strategy<Value = (Path, Path)> {
        (2usize..=8).prop_flat_map(|n| {
            (1..n).prop_flat_map(move |i| {
                let ps = enumerate_paths(n, i).unwrap();
                let len = ps.len();
                (0..len, 0..len).prop_map(move |(a, b)| (ps[a].clone(), ps[b].clone()))
            })
        })
    }

    proptest! {
        #[test]
        fn round_trips(lam in arb_path()) {
            let w = lam.perm_of_path();
            prop_assert_eq!(w.length(), lam.length());
            prop_assert_eq!(Path::path_of_perm(&w, lam.n(), lam.i()).unwrap(), lam.clone());
            prop_assert_eq!(Permutation::from_word(lam.n(), &lam.reduced_word()), w);
            prop_assert_eq!(lam.young_shape().iter().sum::<usize>(), lam.length());
        }

        #[test]
        fn height_identity(lam in arb_path()) {
            let rex = lam.rex_counts();
            for j in 1..lam.n() {
                let base = (lam.i() as i32 - j as i32).abs();
                prop_assert_eq!(lam.hgt(j), 2 * rex[&j] as i32 + base);
            }
            prop_assert_eq!(lam.hgt(0), lam.i() as i32);
            prop_assert_eq!(lam.hgt(lam.n()), (lam.n() - lam.i()) as i32);
        }

        #[test]
        fn order_matches_rex_and_regions((a, b) in arb_pair()) {
            let ra = a.rex_counts();
            let rb = b.rex_counts();
            let by_rex = ra.iter().all(|(j, c)| *c <= rb[j]);
            prop_assert_eq!(a.leq(&b), by_rex);
            if a.leq(&b) {
                let r = region_boxes(&a, &b).unwrap();
                prop_assert_eq!(r.len(), b.length() - a.length());
                prop_assert!(r.boxes.iter().all(|bx| box_parity_ok(*bx, a.i())));
            }
            if a.leq(&b) && b.leq(&a) {
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn order_is_perm_bruhat((a, b) in arb_pair()) {
            prop_assert_eq!(a.leq(&b), a.perm_of_path().bruhat_leq(&b.perm_of_path()));
        }
    }
}
