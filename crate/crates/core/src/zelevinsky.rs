//! Small-resolution schedules: peak flattening, neat orderings and translation pairs.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{
    kl_longest, kl_tables, parabolic_labels, star_mul, HeckeElement, ParabolicHeckeElement,
};
use crate::laurent::LaurentPolynomial as Lp;
use crate::paths::{Path, PathSpace, Position, Step};
use crate::perm::{longest_length, Permutation};

/// Default number of neat orderings checked per path.
pub const NEAT_ORDER_CAP: usize = 50;

/// A sequence of parabolic label sets `I_0 ⊆ J_1 ⊇ I_1 ⊆ J_2 ⊇ ... ⊇ I_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TranslationPair {
    #[serde(rename = "I")]
    pub i_vec: Vec<BTreeSet<usize>>,
    #[serde(rename = "J")]
    pub j_vec: Vec<BTreeSet<usize>>,
    pub shift: i64,
}

fn label_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

impl TranslationPair {
    /// Builds a pair and fills in its length; fails unless it is a translation pair.
    pub fn new(i_vec: Vec<BTreeSet<usize>>, j_vec: Vec<BTreeSet<usize>>) -> Result<Self> {
        if i_vec.len() != j_vec.len() + 1 {
            return Err(Error::Contract(format!(
                "{} I-sets need {} J-sets, got {}",
                i_vec.len(),
                i_vec.len().saturating_sub(1),
                j_vec.len()
            )));
        }
        for (h, j) in j_vec.iter().enumerate() {
            if !i_vec[h].is_subset(j) || !i_vec[h + 1].is_subset(j) {
                return Err(Error::Contract(format!(
                    "J_{} = {j:?} does not contain its neighbours",
                    h + 1
                )));
            }
        }
        let shift = j_vec
            .iter()
            .zip(&i_vec[1..])
            .map(|(j, i)| longest_length(j) as i64 - longest_length(i) as i64)
            .sum();
        Ok(Self {
            i_vec,
            j_vec,
            shift,
        })
    }

    pub fn from_slices(i_vec: &[&[usize]], j_vec: &[&[usize]]) -> Result<Self> {
        Self::new(
            i_vec.iter().map(|v| label_set(v)).collect(),
            j_vec.iter().map(|v| label_set(v)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.j_vec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j_vec.is_empty()
    }

    fn check_start(&self) -> Result<()> {
        if !self.i_vec[0].is_empty() {
            return Err(Error::Contract(
                "translation pair must start with the empty set".into(),
            ));
        }
        Ok(())
    }

    fn factors(&self, n: usize) -> Vec<Permutation> {
        self.j_vec
            .iter()
            .zip(&self.i_vec[1..])
            .map(|(j, i)| Permutation::longest_of(n, j).compose(&Permutation::longest_of(n, i)))
            .collect()
    }

    /// `v_k` where `v_1 = w_{J_1} w_{I_1}` and `v_h = v_{h-1} w_{J_h} w_{I_h}`.
    pub fn end_point(&self, n: usize) -> Result<Permutation> {
        self.check_start()?;
        self.check_rank(n)?;
        Ok(self
            .factors(n)
            .iter()
            .fold(Permutation::identity(n), |acc, f| acc.compose(f)))
    }

    /// Lengths add at every step: `ℓ(v_h w_{J_{h+1}}) = ℓ(v_h) + ℓ(w_{J_{h+1}})`.
    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        self.check_start()?;
        self.check_rank(n)?;
        let factors = self.factors(n);
        let mut v = Permutation::identity(n);
        for h in 0..factors.len() {
            v = v.compose(&factors[h]);
            if let Some(next) = self.j_vec.get(h + 1) {
                let wj = Permutation::longest_of(n, next);
                if v.compose(&wj).length() != v.length() + wj.length() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn pair_length(&self) -> i64 {
        self.shift
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        let bad = self
            .i_vec
            .iter()
            .chain(&self.j_vec)
            .flatten()
            .find(|&&j| j == 0 || j >= n);
        match bad {
            Some(j) => Err(Error::Parameter(format!("label {j} outside 1..{n}"))),
            None => Ok(()),
        }
    }
}

fn fmt_ring(f: &mut fmt::Formatter<'_>, labels: &BTreeSet<usize>) -> fmt::Result {
    if labels.is_empty() {
        return write!(f, "R");
    }
    let v: Vec<String> = labels.iter().map(|j| j.to_string()).collect();
    write!(f, "R^{{{}}}", v.join(","))
}

impl fmt::Display for TranslationPair {
    /// Tensor notation, e.g. `R ⊗_{R^{1,3}} R^{1} ⊗_{R^{1,2}} R^{1} ⊗_{R^{1,3}} R^{1,3}(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ring(f, &self.i_vec[0])?;
        for (j, i) in self.j_vec.iter().zip(&self.i_vec[1..]) {
            write!(f, " ⊗_{{")?;
            fmt_ring(f, j)?;
            write!(f, "}} ")?;
            fmt_ring(f, i)?;
        }
        write!(f, "({})", self.shift)
    }
}

/// Boundary indices `(a, b)` around a peak: the last down step before it (0 if none) and the
/// first up step after it (`n + 1` if none).
pub fn peak_bounds(lam: &Path, p: usize) -> Result<(usize, usize)> {
    if p == 0 || p >= lam.n() || lam.classify_position(p)? != Position::Peak {
        return Err(Error::Domain(format!("{p} is not a peak of {lam}")));
    }
    let a = (1..p)
        .rev()
        .find(|&k| lam.step(k) == Step::Down)
        .unwrap_or(0);
    let b = (p + 1..=lam.n())
        .find(|&k| lam.step(k) == Step::Up)
        .unwrap_or(lam.n() + 1);
    Ok((a, b))
}

/// `λ^p`: the steps strictly between `a` and `b` reversed.
pub fn flatten_peak(lam: &Path, p: usize) -> Result<Path> {
    let (a, b) = peak_bounds(lam, p)?;
    Ok(lam.reversed_segment(a + 1, b - 1))
}

/// Every neat ordering of the peaks, in lexicographic order.
pub fn neat_orders(lam: &Path) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    neat_rec(lam, &mut cur, &mut out, usize::MAX);
    out
}

/// At most `cap` neat orderings, the lexicographically smallest ones.
pub fn neat_orders_capped(lam: &Path, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    neat_rec(lam, &mut cur, &mut out, cap);
    out
}

fn neat_candidates(lam: &Path) -> Vec<usize> {
    let peaks = lam.peaks();
    let h = lam.heights();
    (0..peaks.len())
        .filter(|&k| {
            let hp = h[peaks[k]];
            let left_ok = k == 0 || hp <= h[peaks[k - 1]];
            let right_ok = k + 1 == peaks.len() || hp <= h[peaks[k + 1]];
            left_ok && right_ok
        })
        .map(|k| peaks[k])
        .collect()
}

fn neat_rec(lam: &Path, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
    if out.len() >= cap {
        return;
    }
    let cands = neat_candidates(lam);
    if cands.is_empty() {
        out.push(cur.clone());
        return;
    }
    for p in cands {
        let next = flatten_peak(lam, p).expect("candidate is a peak");
        cur.push(p);
        neat_rec(&next, cur, out, cap);
        cur.pop();
        if out.len() >= cap {
            return;
        }
    }
}

/// True when `order` is a neat ordering of the peaks of `λ`.
pub fn is_neat(lam: &Path, order: &[usize]) -> bool {
    let mut cur = lam.clone();
    for &p in order {
        if !neat_candidates(&cur).contains(&p) {
            return false;
        }
        cur = flatten_peak(&cur, p).expect("candidate is a peak");
    }
    cur.peaks().is_empty()
}

/// The translation pair of a neat ordering; the first peak gives the outermost factor.
///
/// `J = (S_λ, S_{λ^{p_1}}, ..., S_{id})` and `I = (∅, S̃_1, ..., S̃_k, I)` where
/// `S̃_h = S_{λ^{p_1..p_h}} \ {a_h, b_h - 1}`.
pub fn translation_pair(lam: &Path, order: &[usize]) -> Result<TranslationPair> {
    if !is_neat(lam, order) {
        return Err(Error::Domain(format!(
            "{order:?} is not a neat ordering of {lam}"
        )));
    }
    let mut i_vec = vec![BTreeSet::new()];
    let mut j_vec = vec![lam.descent_set()];
    let mut cur = lam.clone();
    for &p in order {
        let (a, b) = peak_bounds(&cur, p)?;
        cur = flatten_peak(&cur, p)?;
        let s = cur.descent_set();
        let mut tilde = s.clone();
        tilde.remove(&a);
        tilde.remove(&(b - 1));
        i_vec.push(tilde);
        j_vec.push(s);
    }
    i_vec.push(parabolic_labels(lam.n(), lam.i()));
    TranslationPair::new(i_vec, j_vec)
}

/// `H̲_{J_1} *_{I_1} H̲_{J_2} *_{I_2} ... *_{I_{k-1}} H̲_{J_k}` in the Hecke algebra.
pub fn bs_character(pair: &TranslationPair, n: usize) -> Result<HeckeElement> {
    pair.check_start()?;
    pair.check_rank(n)?;
    let k = pair.len();
    let mut acc = kl_longest(n, &pair.j_vec[k - 1])?;
    for h in (0..k - 1).rev() {
        let left = kl_longest(n, &pair.j_vec[h])?;
        acc = star_mul(&left, &acc, &pair.i_vec[h + 1])?;
    }
    Ok(acc)
}

/// The same character computed in the spherical module: `H̲_J *_{I'} m = Σ_x v^{ℓ(w_J)-ℓ(w_{I'})-ℓ(x)} H_x m`
/// over minimal representatives `x ∈ W_J / W_{I'}`.
pub fn bs_character_module(
    pair: &TranslationPair,
    n: usize,
    i: usize,
) -> Result<ParabolicHeckeElement> {
    pair.check_start()?;
    pair.check_rank(n)?;
    let base = parabolic_labels(n, i);
    if pair.i_vec.last() != Some(&base) {
        return Err(Error::Contract(
            "translation pair does not end at the parabolic I".into(),
        ));
    }
    let space = PathSpace::get(n, i)?;
    let k = pair.len();
    let mut m = ParabolicHeckeElement::zero(space.clone());
    let mut coeffs = m.coeffs().to_vec();
    let top = longest_length(&pair.j_vec[k - 1]) as i32 - longest_length(&base) as i32;
    for x in Permutation::parabolic_elements(n, &pair.j_vec[k - 1]) {
        if crate::paths::is_minimal_rep(&x, i) {
            let idx = space.index_of(&Path::path_of_perm(&x, n, i)?)?;
            coeffs[idx] += &Lp::v_pow(top - x.length() as i32);
        }
    }
    m = ParabolicHeckeElement::from_coeffs(space.clone(), coeffs);
    for h in (0..k - 1).rev() {
        let j = &pair.j_vec[h];
        let sub = &pair.i_vec[h + 1];
        let top = longest_length(j) as i32 - longest_length(sub) as i32;
        let mut next = ParabolicHeckeElement::zero(space.clone());
        for x in Permutation::parabolic_elements(n, j) {
            if sub.iter().any(|&s| x.has_right_descent(s)) {
                continue;
            }
            let mut t = m.clone();
            for &s in x.reduced_word().iter().rev() {
                t = crate::hecke::module_act(s, &t)?;
            }
            let c = Lp::v_pow(top - x.length() as i32);
            let scaled = ParabolicHeckeElement::from_coeffs(
                space.clone(),
                t.coeffs().iter().map(|y| y * &c).collect(),
            );
            next = &next + &scaled;
        }
        m = next;
    }
    Ok(m)
}

/// Outcome of checking every path's schedules against the KL basis.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SmallResolutionReport {
    pub n: usize,
    pub i: usize,
    pub paths: usize,
    pub orders_checked: usize,
    pub failures: Vec<String>,
}

impl SmallResolutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Which character computation [`verify_small_resolution`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterRoute {
    /// Iterated relative products in the full Hecke algebra.
    Algebra,
    /// Left actions on the spherical module.
    Module,
}

/// For every path and up to `cap` neat orderings: the pair is reduced with the right end-point
/// and length, and its character equals the KL element.
pub fn verify_small_resolution(
    n: usize,
    i: usize,
    cap: usize,
    route: CharacterRoute,
    parallel: bool,
) -> Result<SmallResolutionReport> {
    let tables = kl_tables(n, i)?;
    let space = tables.space().clone();
    let jobs: Vec<(Path, Vec<usize>)> = space
        .paths()
        .iter()
        .flat_map(|lam| {
            neat_orders_capped(lam, cap)
                .into_iter()
                .map(move |o| (lam.clone(), o))
        })
        .collect();
    let check = |(lam, order): &(Path, Vec<usize>)| -> Result<Option<String>> {
        let pair = translation_pair(lam, order)?;
        let expect = tables.kl_element(lam)?;
        if !pair.is_reduced(n)? {
            return Ok(Some(format!("{lam} {order:?}: pair not reduced")));
        }
        if pair.end_point(n)? != lam.perm_of_path() {
            return Ok(Some(format!("{lam} {order:?}: wrong end-point")));
        }
        if pair.shift != lam.length() as i64 {
            return Ok(Some(format!(
                "{lam} {order:?}: shift {} != {}",
                pair.shift,
                lam.length()
            )));
        }
        let ok = match route {
            CharacterRoute::Algebra => bs_character(&pair, n)? == expect.to_hecke(),
            CharacterRoute::Module => bs_character_module(&pair, n, i)? == expect,
        };
        Ok((!ok).then(|| format!("{lam} {order:?}: character differs from the KL element")))
    };
    let results: Vec<Result<Option<String>>> = if parallel {
        jobs.par_iter().map(check).collect()
    } else {
        jobs.iter().map(check).collect()
    };
    let mut report = SmallResolutionReport {
        n,
        i,
        paths: space.len(),
        orders_checked: jobs.len(),
        ..Default::default()
    };
    for r in results {
        if let Some(msg) = r? {
            report.failures.push(msg);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        label_set(v)
    }

    #[test]
    fn flattening() {
        assert_eq!(flatten_peak(&p("UDUD"), 1).unwrap(), p("DUUD"));
        assert_eq!(flatten_peak(&p("UDUD"), 3).unwrap(), p("UDDU"));
        assert!(flatten_peak(&p("DDUU"), 2).is_err());
        assert!(flatten_peak(&p("UDUD"), 2).is_err());
    }

    #[test]
    fn neat_examples() {
        assert_eq!(neat_orders(&p("UDUD")), vec![vec![1, 3], vec![3, 1]]);
        assert_eq!(neat_orders(&p("DDUU")), vec![Vec::<usize>::new()]);
        assert_eq!(neat_orders(&p("UUDD")), vec![vec![2]]);
    }

    #[test]
    fn udud_pairs() {
        let lam = p("UDUD");
        let first = translation_pair(&lam, &[3, 1]).unwrap();
        assert_eq!(
            first,
            TranslationPair::from_slices(&[&[], &[1], &[1], &[1, 3]], &[&[1, 3], &[1, 2], &[1, 3]])
                .unwrap()
        );
        assert_eq!(first.shift, 3);
        assert_eq!(
            first.to_string(),
            "R ⊗_{R^{1,3}} R^{1} ⊗_{R^{1,2}} R^{1} ⊗_{R^{1,3}} R^{1,3}(3)"
        );
        let second = translation_pair(&lam, &[1, 3]).unwrap();
        assert_eq!(
            second,
            TranslationPair::from_slices(&[&[], &[3], &[3], &[1, 3]], &[&[1, 3], &[2, 3], &[1, 3]])
                .unwrap()
        );
        assert_eq!(second.shift, 3);
        let base = translation_pair(&p("DDUU"), &[]).unwrap();
        assert_eq!(
            base,
            TranslationPair::from_slices(&[&[], &[1, 3]], &[&[1, 3]]).unwrap()
        );
        assert_eq!(base.shift, 0);
        assert!(translation_pair(&lam, &[1]).is_err());
    }

    #[test]
    fn reduced_and_end_points() {
        let pair = translation_pair(&p("UDUD"), &[3, 1]).unwrap();
        assert!(pair.is_reduced(4).unwrap());
        assert_eq!(pair.end_point(4).unwrap().one_line(), &[2, 4, 1, 3]);
        assert_eq!(pair.pair_length(), 3);
        let base = translation_pair(&p("DDUU"), &[]).unwrap();
        assert!(base.is_reduced(4).unwrap());
        assert_eq!(base.end_point(4).unwrap(), Permutation::identity(4));
        let scrambled =
            TranslationPair::from_slices(&[&[], &[], &[1, 3]], &[&[1], &[1, 3]]).unwrap();
        assert!(!scrambled.is_reduced(4).unwrap());
        assert!(TranslationPair::from_slices(&[&[1], &[1, 3]], &[&[1]]).is_err());
        let shifted = TranslationPair::from_slices(&[&[1], &[1, 3]], &[&[1, 3]]).unwrap();
        assert!(shifted.end_point(4).is_err());
    }

    #[test]
    fn characters() {
        let base = translation_pair(&p("DDUU"), &[]).unwrap();
        assert_eq!(
            bs_character(&base, 4).unwrap(),
            kl_longest(4, &set(&[1, 3])).unwrap()
        );
        let lam = p("UDUD");
        let t = kl_tables(4, 2).unwrap();
        let expect = t.kl_element(&lam).unwrap().to_hecke();
        let a = bs_character(&translation_pair(&lam, &[3, 1]).unwrap(), 4).unwrap();
        let b = bs_character(&translation_pair(&lam, &[1, 3]).unwrap(), 4).unwrap();
        assert_eq!(a, expect);
        assert_eq!(a, b);
        let m = bs_character_module(&translation_pair(&lam, &[1, 3]).unwrap(), 4, 2).unwrap();
        assert_eq!(m, t.kl_element(&lam).unwrap());
    }

    #[test]
    fn json_shape() {
        let pair = translation_pair(&p("UDUD"), &[3, 1]).unwrap();
        let js = serde_json::to_string(&pair).unwrap();
        assert_eq!(
            js,
            r#"{"I":[[],[1],[1],[1,3]],"J":[[1,3],[1,2],[1,3]],"shift":3}"#
        );
        assert_eq!(serde_json::from_str::<TranslationPair>(&js).unwrap(), pair);
    }

    #[test]
    fn flattening_invariants() {
        for n in 2..=7 {
            for i in 1..n {
                for lam in crate::paths::enumerate_paths(n, i).unwrap() {
                    for q in lam.peaks() {
                        let (a, b) = peak_bounds(&lam, q).unwrap();
                        let flat = flatten_peak(&lam, q).unwrap();
                        assert!(flat.lt_bruhat(&lam));
                        let mut peaks = lam.peaks();
                        peaks.retain(|&x| x != q);
                        assert_eq!(flat.peaks(), peaks);
                        // S_λ is S̃ together with the reflected index a + b - q - 1
                        let mut tilde = flat.descent_set();
                        tilde.remove(&a);
                        tilde.remove(&(b - 1));
                        tilde.insert(a + b - q - 1);
                        assert_eq!(tilde, lam.descent_set(), "{lam} peak {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn routes_agree_small() {
        for n in 2..=5 {
            for i in 1..n {
                let a =
                    verify_small_resolution(n, i, NEAT_ORDER_CAP, CharacterRoute::Algebra, false)
                        .unwrap();
                assert!(a.passed(), "{:?}", a.failures);
                let m =
                    verify_small_resolution(n, i, NEAT_ORDER_CAP, CharacterRoute::Module, false)
                        .unwrap();
                assert!(m.passed(), "{:?}", m.failures);
                assert_eq!(a.orders_checked, m.orders_checked);
            }
        }
    }
}
