//! Dyck strips and Dyck partitions of the region between two paths.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::paths::{region_boxes, region_unchecked, LatticeBox, Path};

/// Boxes along a Dyck path, sorted by `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<LatticeBox>", into = "Vec<LatticeBox>")]
pub struct DyckStrip {
    boxes: Vec<LatticeBox>,
}

/// True when the boxes have consecutive `x`, vertical steps of 1, and both
/// endpoints at the common maximal height.
pub fn is_dyck_strip(boxes: &BTreeSet<LatticeBox>) -> bool {
    let mut v: Vec<LatticeBox> = boxes.iter().copied().collect();
    v.sort_by_key(|b| b.x);
    strip_shape_ok(&v)
}

fn strip_shape_ok(v: &[LatticeBox]) -> bool {
    let (Some(first), Some(last)) = (v.first(), v.last()) else {
        return false;
    };
    if first.y != last.y {
        return false;
    }
    for w in v.windows(2) {
        if w[1].x != w[0].x + 1 || (w[1].y - w[0].y).abs() != 1 {
            return false;
        }
    }
    v.iter().all(|b| b.y <= first.y)
}

impl DyckStrip {
    pub fn new<I: IntoIterator<Item = LatticeBox>>(boxes: I) -> Result<Self> {
        let mut v: Vec<LatticeBox> = boxes.into_iter().collect();
        v.sort_by_key(|b| b.x);
        if !strip_shape_ok(&v) {
            return Err(Error::Parse(format!("{v:?} is not a Dyck strip")));
        }
        Ok(Self { boxes: v })
    }

    pub fn single(b: LatticeBox) -> Self {
        Self { boxes: vec![b] }
    }

    pub fn boxes(&self) -> &[LatticeBox] {
        &self.boxes
    }

    pub fn box_set(&self) -> BTreeSet<LatticeBox> {
        self.boxes.iter().copied().collect()
    }

    /// The height of the endpoints.
    pub fn height(&self) -> i32 {
        self.boxes[0].y
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn is_single(&self) -> bool {
        self.boxes.len() == 1
    }

    pub fn x_range(&self) -> (usize, usize) {
        (
            self.boxes[0].x as usize,
            self.boxes[self.boxes.len() - 1].x as usize,
        )
    }

    pub fn contains(&self, b: &LatticeBox) -> bool {
        let x0 = self.boxes[0].x;
        b.x >= x0
            && ((b.x - x0) as usize) < self.boxes.len()
            && self.boxes[(b.x - x0) as usize] == *b
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.boxes.iter().all(|b| other.contains(b))
    }
}

impl TryFrom<Vec<LatticeBox>> for DyckStrip {
    type Error = Error;

    fn try_from(v: Vec<LatticeBox>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DyckStrip> for Vec<LatticeBox> {
    fn from(s: DyckStrip) -> Self {
        s.boxes
    }
}

impl fmt::Debug for DyckStrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.boxes.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

/// `λ + D`; the strip must sit directly on top of `λ` and the raised path must be valid.
pub fn add_strip(lam: &Path, d: &DyckStrip) -> Result<Path> {
    let h = lam.heights();
    let fits = d
        .boxes()
        .iter()
        .all(|b| b.x >= 1 && (b.x as usize) < lam.n() && b.y == h[b.x as usize] + 1);
    let (x0, x1) = d.x_range();
    match lam.raised(x0, x1) {
        Some(p) if fits => Ok(p),
        _ => Err(Error::StripPlacement(format!(
            "{d:?} cannot be added to {lam}"
        ))),
    }
}

/// Strips `D` with `μ - D` a valid path and `A(μ - D, μ) = D`.
pub fn removable_strips(mu: &Path) -> Vec<DyckStrip> {
    let h = mu.heights();
    let n = mu.n();
    let mut out = Vec::new();
    for x0 in 1..n {
        for x1 in x0..n {
            let boxes: Vec<LatticeBox> = (x0..=x1)
                .map(|x| LatticeBox::new(x as i32, h[x] - 1))
                .collect();
            if !strip_shape_ok(&boxes) || mu.lowered(x0, x1).is_none() {
                continue;
            }
            out.push(DyckStrip { boxes });
        }
    }
    out
}

/// `μ - D` for a removable strip `D`.
pub fn remove_strip(mu: &Path, d: &DyckStrip) -> Result<Path> {
    let h = mu.heights();
    let fits = d
        .boxes()
        .iter()
        .all(|b| b.x >= 1 && (b.x as usize) < mu.n() && b.y == h[b.x as usize] - 1);
    let (x0, x1) = d.x_range();
    match mu.lowered(x0, x1) {
        Some(p) if fits => Ok(p),
        _ => Err(Error::StripPlacement(format!(
            "{d:?} cannot be removed from {mu}"
        ))),
    }
}

/// A partition of `A(lower, upper)` into Dyck strips; strips are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyckPartition {
    lower: Path,
    upper: Path,
    strips: Vec<DyckStrip>,
}

impl DyckPartition {
    /// Validates that the strips partition `A(lower, upper)`.
    pub fn new(lower: &Path, upper: &Path, mut strips: Vec<DyckStrip>) -> Result<Self> {
        let region = region_boxes(lower, upper)?;
        let mut seen = BTreeSet::new();
        for s in &strips {
            for b in s.boxes() {
                if !region.contains(b) || !seen.insert(*b) {
                    return Err(Error::Contract(format!(
                        "{s:?} does not fit in A({lower}, {upper})"
                    )));
                }
            }
        }
        if seen.len() != region.len() {
            return Err(Error::Contract(format!(
                "strips do not cover A({lower}, {upper})"
            )));
        }
        strips.sort();
        Ok(Self {
            lower: lower.clone(),
            upper: upper.clone(),
            strips,
        })
    }

    pub fn lower(&self) -> &Path {
        &self.lower
    }

    pub fn upper(&self) -> &Path {
        &self.upper
    }

    pub fn strips(&self) -> &[DyckStrip] {
        &self.strips
    }

    /// Number of strips.
    pub fn size(&self) -> usize {
        self.strips.len()
    }

    pub fn is_type1(&self) -> bool {
        strips_type1(&self.strips)
    }

    pub fn is_type2(&self) -> bool {
        strips_type2(&self.strips)
    }

    /// Strips of height exactly `h`.
    pub fn at_height(&self, h: i32) -> Vec<&DyckStrip> {
        self.strips.iter().filter(|s| s.height() == h).collect()
    }

    pub fn max_height(&self) -> Option<i32> {
        self.strips.iter().map(DyckStrip::height).max()
    }

    pub fn all_singles(&self) -> bool {
        self.strips.iter().all(DyckStrip::is_single)
    }
}

impl fmt::Debug for DyckPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.strips).finish()
    }
}

impl Serialize for DyckPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.strips.serialize(s)
    }
}

fn owners(strips: &[DyckStrip]) -> HashMap<LatticeBox, usize> {
    let mut m = HashMap::new();
    for (k, s) in strips.iter().enumerate() {
        for b in s.boxes() {
            m.insert(*b, k);
        }
    }
    m
}

/// Type 1: whenever a box just above `D` lies in some strip `D'`, every box just above `D` does.
pub fn strips_type1(strips: &[DyckStrip]) -> bool {
    let own = owners(strips);
    strips.iter().all(|d| {
        let above: Vec<Option<&usize>> = d.boxes().iter().map(|b| own.get(&b.above())).collect();
        match above.iter().flatten().next() {
            None => true,
            Some(&k) => above.iter().all(|o| *o == Some(k)),
        }
    })
}

/// Type 2: whenever a box below, south-west or south-east of `D` (outside `D`) lies in a strip `D'`,
/// every such box lies in that same `D'`.
pub fn strips_type2(strips: &[DyckStrip]) -> bool {
    let own = owners(strips);
    strips.iter().enumerate().all(|(k, d)| {
        let mut nbrs = BTreeSet::new();
        for b in d.boxes() {
            nbrs.insert(b.below());
            nbrs.insert(LatticeBox::new(b.x - 1, b.y - 1));
            nbrs.insert(LatticeBox::new(b.x + 1, b.y - 1));
        }
        let owned: Vec<Option<&usize>> = nbrs
            .iter()
            .filter(|b| !d.contains(b))
            .map(|b| own.get(b))
            .collect();
        match owned.iter().flatten().find(|&&&o| o != k) {
            None => true,
            Some(&&other) => owned.iter().all(|o| *o == Some(&other)),
        }
    })
}

/// Every partition of `A(λ, μ)` into Dyck strips, each exactly once.
pub fn enumerate_partitions(lam: &Path, mu: &Path) -> Result<Vec<DyckPartition>> {
    let region = region_boxes(lam, mu)?;
    let mut out = Vec::new();
    for_each_partition(&region.boxes, &mut |strips| {
        let mut strips = strips.to_vec();
        strips.sort();
        out.push(DyckPartition {
            lower: lam.clone(),
            upper: mu.clone(),
            strips,
        });
    });
    Ok(out)
}

/// Calls `f` once per partition of `boxes` into Dyck strips.
pub fn for_each_partition<F: FnMut(&[DyckStrip])>(boxes: &BTreeSet<LatticeBox>, f: &mut F) {
    let mut uncovered = boxes.clone();
    let mut acc = Vec::new();
    partition_rec(&mut uncovered, &mut acc, f);
}

fn partition_rec<F: FnMut(&[DyckStrip])>(
    uncovered: &mut BTreeSet<LatticeBox>,
    acc: &mut Vec<DyckStrip>,
    f: &mut F,
) {
    let Some(&first) = uncovered.iter().next() else {
        f(acc);
        return;
    };
    // the least box is the left end of its strip
    let mut candidates = Vec::new();
    let mut cur = vec![first];
    strips_from(first.y, uncovered, &mut cur, &mut candidates);
    for strip in candidates {
        for b in &strip {
            uncovered.remove(b);
        }
        acc.push(DyckStrip {
            boxes: strip.clone(),
        });
        partition_rec(uncovered, acc, f);
        acc.pop();
        for b in strip {
            uncovered.insert(b);
        }
    }
}

fn strips_from(
    top: i32,
    avail: &BTreeSet<LatticeBox>,
    cur: &mut Vec<LatticeBox>,
    out: &mut Vec<Vec<LatticeBox>>,
) {
    let last = *cur.last().unwrap();
    if last.y == top {
        out.push(cur.clone());
    }
    for dy in [1, -1] {
        let next = LatticeBox::new(last.x + 1, last.y + dy);
        if next.y <= top && avail.contains(&next) {
            cur.push(next);
            strips_from(top, avail, cur, out);
            cur.pop();
        }
    }
}

/// `Σ v^{|P|}` over type-1 partitions of `A(λ, μ)`; zero unless `λ <= μ`.
pub fn q1(lam: &Path, mu: &Path) -> LaurentPolynomial {
    q_poly(lam, mu, strips_type1)
}

/// `Σ v^{|P|}` over type-2 partitions of `A(λ, μ)`; zero unless `λ <= μ`.
pub fn q2(lam: &Path, mu: &Path) -> LaurentPolynomial {
    q_poly(lam, mu, strips_type2)
}

fn q_poly(lam: &Path, mu: &Path, pred: fn(&[DyckStrip]) -> bool) -> LaurentPolynomial {
    if lam.n() != mu.n() || lam.i() != mu.i() || !lam.leq(mu) {
        return LaurentPolynomial::zero();
    }
    let region = region_unchecked(lam, mu);
    let mut counts = vec![0i64; region.len() + 1];
    for_each_partition(&region.boxes, &mut |strips| {
        if pred(strips) {
            counts[strips.len()] += 1;
        }
    });
    LaurentPolynomial::from_terms(counts.into_iter().enumerate().map(|(k, c)| (k as i32, c)))
}

/// Type-1 partitions of `A(λ, μ)` (empty when `λ ≰ μ`).
pub fn conf1(lam: &Path, mu: &Path) -> Vec<DyckPartition> {
    if !lam.leq(mu) {
        return Vec::new();
    }
    enumerate_partitions(lam, mu)
        .unwrap()
        .into_iter()
        .filter(DyckPartition::is_type1)
        .collect()
}

/// Type-2 partitions of `A(λ, μ)` (empty when `λ ≰ μ`).
pub fn conf2(lam: &Path, mu: &Path) -> Vec<DyckPartition> {
    if !lam.leq(mu) {
        return Vec::new();
    }
    enumerate_partitions(lam, mu)
        .unwrap()
        .into_iter()
        .filter(DyckPartition::is_type2)
        .collect()
}

/// An ordering of the strips of a partition, as indices into [`DyckPartition::strips`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StripOrdering(pub Vec<usize>);

fn check_ordering(p: &DyckPartition, o: &StripOrdering) -> Result<()> {
    let mut seen = vec![false; p.size()];
    for &k in &o.0 {
        if k >= p.size() || std::mem::replace(&mut seen[k], true) {
            return Err(Error::Contract(format!(
                "{:?} is not an ordering of {} strips",
                o.0,
                p.size()
            )));
        }
    }
    if o.0.len() != p.size() {
        return Err(Error::Contract(format!(
            "{:?} is not an ordering of {} strips",
            o.0,
            p.size()
        )));
    }
    Ok(())
}

/// Each strip in turn can be added to the path accumulated from `λ`.
pub fn is_admissible(p: &DyckPartition, o: &StripOrdering, lam: &Path) -> Result<bool> {
    check_ordering(p, o)?;
    if lam != p.lower() {
        return Err(Error::Contract(format!("partition is not based at {lam}")));
    }
    let mut cur = lam.clone();
    for &k in &o.0 {
        match add_strip(&cur, &p.strips()[k]) {
            Ok(next) => cur = next,
            Err(_) => return Ok(false),
        }
    }
    Ok(true)
}

/// All admissible orderings of `P` over `λ`.
pub fn admissible_orders(p: &DyckPartition, lam: &Path) -> Result<Vec<StripOrdering>> {
    if lam != p.lower() {
        return Err(Error::Contract(format!("partition is not based at {lam}")));
    }
    let mut out = Vec::new();
    let mut used = vec![false; p.size()];
    let mut cur = Vec::new();
    admissible_rec(p, lam, &mut used, &mut cur, &mut out);
    Ok(out)
}

fn admissible_rec(
    p: &DyckPartition,
    at: &Path,
    used: &mut [bool],
    cur: &mut Vec<usize>,
    out: &mut Vec<StripOrdering>,
) {
    if cur.len() == p.size() {
        out.push(StripOrdering(cur.clone()));
        return;
    }
    for k in 0..p.size() {
        if used[k] {
            continue;
        }
        if let Ok(next) = add_strip(at, &p.strips()[k]) {
            used[k] = true;
            cur.push(k);
            admissible_rec(p, &next, used, cur, out);
            cur.pop();
            used[k] = false;
        }
    }
}

/// Stable sort by ascending strip height.
pub fn height_sort(p: &DyckPartition, o: &StripOrdering) -> Result<StripOrdering> {
    check_ordering(p, o)?;
    let mut v = o.0.clone();
    v.sort_by_key(|&k| p.strips()[k].height());
    Ok(StripOrdering(v))
}

/// `P ≻ Q`: above some height `h` the partitions agree and at `h` the strips of `P` refine those of `Q`.
pub fn partition_succ(p: &DyckPartition, q: &DyckPartition) -> Result<bool> {
    if p.lower() != q.lower() || p.upper() != q.upper() {
        return Err(Error::Contract("partitions of different regions".into()));
    }
    let heights: BTreeSet<i32> = p
        .strips()
        .iter()
        .chain(q.strips())
        .map(DyckStrip::height)
        .collect();
    for &h in heights.iter().rev() {
        let ph = p.at_height(h);
        let qh = q.at_height(h);
        if ph != qh {
            return Ok(ph.iter().all(|s| qh.iter().any(|t| s.is_subset_of(t))));
        }
    }
    Ok(false)
}

/// Rewrites a type-2 pair `{C, D}` with `D` resting on `C` into the type-1 pair `{C', D'}`,
/// where `C'` is the set of boxes just below `D`.
pub fn overlying_rewrite(c: &DyckStrip, d: &DyckStrip) -> Result<(DyckStrip, DyckStrip)> {
    let union: BTreeSet<LatticeBox> = c.boxes().iter().chain(d.boxes()).copied().collect();
    if union.len() != c.len() + d.len() {
        return Err(Error::Contract("strips overlap".into()));
    }
    if !d.boxes().iter().any(|b| c.contains(&b.below())) {
        return Err(Error::Contract(format!("{d:?} does not rest on {c:?}")));
    }
    if c.height() < d.height() {
        return Err(Error::Domain(format!(
            "{c:?} is lower than {d:?}; no type-1 rewrite exists"
        )));
    }
    if !strips_type2(&[c.clone(), d.clone()]) {
        return Err(Error::Contract(format!(
            "{{{c:?}, {d:?}}} is not of type 2"
        )));
    }
    let below: BTreeSet<LatticeBox> = d
        .boxes()
        .iter()
        .map(|b| b.below())
        .filter(|b| union.contains(b))
        .collect();
    let rest: BTreeSet<LatticeBox> = union.difference(&below).copied().collect();
    let c2 = DyckStrip::new(below)?;
    let d2 = DyckStrip::new(rest)?;
    if !strips_type1(&[c2.clone(), d2.clone()]) {
        return Err(Error::Contract("rewrite is not of type 1".into()));
    }
    Ok((c2, d2))
}

/// No box of one strip lies just above or just below a box of the other.
pub fn strips_distant(c: &DyckStrip, d: &DyckStrip) -> Result<bool> {
    if c.boxes().iter().any(|b| d.contains(b)) {
        return Err(Error::Contract(format!("{c:?} and {d:?} overlap")));
    }
    let touches = |a: &DyckStrip, b: &DyckStrip| {
        a.boxes()
            .iter()
            .any(|x| b.contains(&x.above()) || b.contains(&x.below()))
    };
    Ok(!touches(c, d) && !touches(d, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_paths;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn bx(x: i32, y: i32) -> LatticeBox {
        LatticeBox::new(x, y)
    }

    fn strip(v: &[(i32, i32)]) -> DyckStrip {
        DyckStrip::new(v.iter().map(|&(x, y)| bx(x, y))).unwrap()
    }

    fn set(v: &[(i32, i32)]) -> BTreeSet<LatticeBox> {
        v.iter().map(|&(x, y)| bx(x, y)).collect()
    }

    fn diamond() -> (Path, Path) {
        (p("DDUU"), p("UUDD"))
    }

    fn find(ps: &[DyckPartition], size: usize) -> &DyckPartition {
        ps.iter().find(|q| q.size() == size).unwrap()
    }

    #[test]
    fn strip_shapes() {
        assert!(is_dyck_strip(&set(&[(2, 1)])));
        assert!(is_dyck_strip(&set(&[(1, 2), (2, 1), (3, 2)])));
        assert!(!is_dyck_strip(&set(&[(1, 2), (2, 3), (3, 2)])));
        assert!(!is_dyck_strip(&set(&[(1, 2), (2, 1)])));
        assert!(!is_dyck_strip(&BTreeSet::new()));
        let s = strip(&[(1, 2), (2, 1), (3, 2)]);
        assert_eq!(s.height(), 2);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn adding_and_removing() {
        let ud = p("UDUD");
        let rem = removable_strips(&ud);
        assert_eq!(rem.len(), 3);
        assert!(rem.contains(&strip(&[(1, 2)])));
        assert!(rem.contains(&strip(&[(3, 2)])));
        assert!(rem.contains(&strip(&[(1, 2), (2, 1), (3, 2)])));
        assert!(removable_strips(&p("DDUU")).is_empty());
        assert_eq!(removable_strips(&p("UUDD")), vec![strip(&[(2, 3)])]);
        let id = p("DDUU");
        assert_eq!(
            add_strip(&id, &strip(&[(1, 2), (2, 1), (3, 2)])).unwrap(),
            ud
        );
        assert_eq!(add_strip(&id, &strip(&[(2, 1)])).unwrap(), p("DUDU"));
        assert!(add_strip(&id, &strip(&[(2, 3)])).is_err());
        for d in &rem {
            assert_eq!(add_strip(&remove_strip(&ud, d).unwrap(), d).unwrap(), ud);
        }
    }

    #[test]
    fn diamond_partitions_and_types() {
        let (id, top) = diamond();
        let parts = enumerate_partitions(&id, &top).unwrap();
        assert_eq!(parts.len(), 2);
        let singles = find(&parts, 4);
        let mixed = find(&parts, 2);
        assert!(singles.is_type1());
        assert!(!mixed.is_type1());
        assert!(mixed.is_type2());
        assert!(!singles.is_type2());
        let empty = &enumerate_partitions(&id, &id).unwrap()[0];
        assert_eq!(empty.size(), 0);
        assert!(empty.is_type1() && empty.is_type2());
        assert!(enumerate_partitions(&top, &id).is_err());
    }

    #[test]
    fn udud_partitions() {
        let id = p("DDUU");
        let parts = enumerate_partitions(&id, &p("UDUD")).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(find(&parts, 1).is_type2());
        assert!(!find(&parts, 3).is_type2());
    }

    #[test]
    fn q_polynomials() {
        let id = p("DDUU");
        assert_eq!(q1(&id, &p("UDUD")).to_string(), "v^3+v");
        assert_eq!(q2(&p("DUDU"), &p("UDUD")).to_string(), "v^2");
        assert!(q1(&id, &id).is_one());
        assert!(q2(&id, &id).is_one());
        assert!(q1(&p("UDUD"), &id).is_zero());
        assert_eq!(q1(&id, &p("UUDD")).to_string(), "v^4");
        assert_eq!(q2(&id, &p("UUDD")).to_string(), "v^2");
    }

    #[test]
    fn orderings() {
        let (id, top) = diamond();
        let parts = enumerate_partitions(&id, &top).unwrap();
        let singles = find(&parts, 4);
        let orders = admissible_orders(singles, &id).unwrap();
        assert_eq!(orders.len(), 2);
        for o in &orders {
            assert_eq!(singles.strips()[o.0[0]], strip(&[(2, 1)]));
            assert_eq!(singles.strips()[o.0[3]], strip(&[(2, 3)]));
            assert!(is_admissible(singles, o, &id).unwrap());
        }
        let mixed = find(&parts, 2);
        let orders = admissible_orders(mixed, &id).unwrap();
        assert_eq!(orders.len(), 1);
        assert_eq!(mixed.strips()[orders[0].0[0]].len(), 3);
        let one = &enumerate_partitions(&id, &p("UDUD")).unwrap();
        assert_eq!(admissible_orders(find(one, 1), &id).unwrap().len(), 1);
        assert!(is_admissible(mixed, &StripOrdering(vec![0]), &id).is_err());
    }

    #[test]
    fn height_sorting() {
        let (id, top) = diamond();
        let parts = enumerate_partitions(&id, &top).unwrap();
        let singles = find(&parts, 4);
        let idx = |b: (i32, i32)| {
            singles
                .strips()
                .iter()
                .position(|s| s.boxes()[0] == bx(b.0, b.1))
                .unwrap()
        };
        let sorted = StripOrdering(vec![idx((2, 1)), idx((3, 2)), idx((1, 2)), idx((2, 3))]);
        assert_eq!(height_sort(singles, &sorted).unwrap(), sorted);
        // an inversion among distant strips is repaired, equal heights keep their order
        let scrambled = StripOrdering(vec![idx((3, 2)), idx((2, 3)), idx((2, 1)), idx((1, 2))]);
        let fixed = height_sort(singles, &scrambled).unwrap();
        assert_eq!(
            fixed,
            StripOrdering(vec![idx((2, 1)), idx((3, 2)), idx((1, 2)), idx((2, 3))])
        );
        assert!(is_admissible(singles, &fixed, &id).unwrap());
        let one = StripOrdering(vec![0]);
        let single_part = &enumerate_partitions(&id, &p("DUDU")).unwrap()[0];
        assert_eq!(height_sort(single_part, &one).unwrap(), one);
    }

    #[test]
    fn succ_relation() {
        let (id, top) = diamond();
        let parts = enumerate_partitions(&id, &top).unwrap();
        let singles = find(&parts, 4);
        let mixed = find(&parts, 2);
        assert!(partition_succ(singles, mixed).unwrap());
        assert!(!partition_succ(mixed, singles).unwrap());
        assert!(!partition_succ(singles, singles).unwrap());
        let other = &enumerate_partitions(&id, &p("UDUD")).unwrap()[0];
        assert!(partition_succ(singles, other).is_err());
    }

    #[test]
    fn seven_three_equal_size_pair() {
        let lam = Path::identity(7, 3).unwrap();
        let c = conf1(&lam, &p("UUDUDUD"));
        let found = c.iter().any(|a| {
            c.iter()
                .any(|b| a.size() == b.size() && partition_succ(a, b).unwrap())
        });
        assert!(found);
    }

    #[test]
    fn rewrite() {
        let d = strip(&[(3, 3)]);
        let c = strip(&[(1, 3), (2, 2), (3, 1), (4, 2), (5, 3)]);
        let (c2, d2) = overlying_rewrite(&c, &d).unwrap();
        assert_eq!(c2, strip(&[(3, 1)]));
        assert_eq!(d2, strip(&[(1, 3), (2, 2), (3, 3), (4, 2), (5, 3)]));
        assert!(d2.len() > d.len() && d2.height() >= d.height());
        assert!(matches!(
            overlying_rewrite(&strip(&[(2, 1)]), &strip(&[(2, 3)])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn distance() {
        assert!(strips_distant(&strip(&[(1, 2)]), &strip(&[(3, 2)])).unwrap());
        assert!(!strips_distant(&strip(&[(2, 1)]), &strip(&[(2, 3)])).unwrap());
        assert!(!strips_distant(&strip(&[(1, 2), (2, 1), (3, 2)]), &strip(&[(2, 3)])).unwrap());
        assert!(strips_distant(&strip(&[(2, 1)]), &strip(&[(2, 1)])).is_err());
    }

    #[test]
    fn json_shapes() {
        let s = strip(&[(1, 2), (2, 1), (3, 2)]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, "[[1,2],[2,1],[3,2]]");
        assert_eq!(serde_json::from_str::<DyckStrip>(&js).unwrap(), s);
        assert!(serde_json::from_str::<DyckStrip>("[[1,2],[2,3],[3,2]]").is_err());
    }

    #[test]
    fn partition_invariants_small() {
        for n in 2..=6 {
            for i in 1..n {
                let ps = enumerate_paths(n, i).unwrap();
                for lam in &ps {
                    for mu in ps.iter().filter(|mu| lam.leq(mu)) {
                        let d = mu.length() - lam.length();
                        let parts = enumerate_partitions(lam, mu).unwrap();
                        let distinct: std::collections::HashSet<_> = parts.iter().collect();
                        assert_eq!(distinct.len(), parts.len());
                        let mut max_h = None;
                        for q in &parts {
                            assert_eq!(q.strips().iter().map(DyckStrip::len).sum::<usize>(), d);
                            assert_eq!(q.size() % 2, d % 2);
                            assert!(q.strips().iter().all(|s| s.len() % 2 == 1));
                            // the maximal strip height does not depend on the partition
                            match max_h {
                                None => max_h = Some(q.max_height()),
                                Some(h) => assert_eq!(h, q.max_height(), "{lam} {mu}"),
                            }
                        }
                        let singles: Vec<_> = parts.iter().filter(|q| q.all_singles()).collect();
                        assert_eq!(singles.len(), 1);
                        assert!(singles[0].is_type1());
                        let t1 = parts.iter().filter(|q| q.is_type1());
                        assert!(t1.clone().all(|q| q.size() < d || q.all_singles()));
                        for q in t1 {
                            let orders = admissible_orders(q, lam).unwrap();
                            assert!(!orders.is_empty());
                            for o in &orders {
                                let h = height_sort(q, o).unwrap();
                                assert!(is_admissible(q, &h, lam).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
