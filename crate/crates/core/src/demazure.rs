//! Demazure operators, reflection operators and Billey restrictions.

use num_traits::Signed;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::paths::enumerate_paths;
use crate::perm::Permutation;

fn check_label(j: usize, n: usize) -> Result<()> {
    if j == 0 || j >= n {
        return Err(Error::Parameter(format!(
            "simple reflection s_{j} outside 1..{n}"
        )));
    }
    Ok(())
}

/// `∂_j(f) = (f - s_j(f)) / (x_j - x_{j+1})`.
pub fn demazure(j: usize, f: &MPoly) -> Result<MPoly> {
    check_label(j, f.n())?;
    let diff = f - &f.swap_vars(j, j + 1);
    Ok(diff
        .div_root(j, j + 1)
        .expect("antisymmetric polynomials are divisible by the root"))
}

/// `∂_{a_1} ∂_{a_2} ... ∂_{a_k}(f)` for a reduced word `a`.
pub fn demazure_word(word: &[usize], f: &MPoly) -> Result<MPoly> {
    for &j in word {
        check_label(j, f.n())?;
    }
    if Permutation::from_word(f.n(), word).length() != word.len() {
        return Err(Error::Domain(format!("{word:?} is not a reduced word")));
    }
    let mut g = f.clone();
    for &j in word.iter().rev() {
        g = demazure(j, &g)?;
    }
    Ok(g)
}

/// `∂_w` along the canonical reduced word of `w`.
pub fn demazure_perm(w: &Permutation, f: &MPoly) -> Result<MPoly> {
    demazure_word(&w.reduced_word(), f)
}

/// Every reduced word of `w`.
pub fn reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    if w.length() == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in 1..w.n() {
        if w.has_right_descent(j) {
            let mut shorter = w.clone();
            shorter.mul_simple_right(j);
            for mut word in reduced_words(&shorter) {
                word.push(j);
                out.push(word);
            }
        }
    }
    out
}

/// The transposition `(a b)`, `a < b`, with positive root `x_a - x_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReflectionOperator {
    a: usize,
    b: usize,
}

impl ReflectionOperator {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::Parameter(format!(
                "({a} {b}) is not a transposition with a < b"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn simple(j: usize) -> Self {
        Self { a: j, b: j + 1 }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn perm(&self, n: usize) -> Permutation {
        let mut v: Vec<u8> = (1..=n as u8).collect();
        v.swap(self.a - 1, self.b - 1);
        Permutation::from_one_line(v).expect("transposition")
    }

    /// The reflection `t` with `t = w t' w^{-1}`, if `w^{-1} t w` is a transposition.
    pub fn from_perm(t: &Permutation) -> Option<Self> {
        let moved: Vec<usize> = (1..=t.n()).filter(|&k| t.apply(k) != k).collect();
        match moved[..] {
            [a, b] if t.apply(a) == b => Some(Self { a, b }),
            _ => None,
        }
    }

    pub fn root(&self, n: usize) -> MPoly {
        MPoly::root(n, self.a, self.b)
    }
}

/// `∂_t(f) = (f - t(f)) / α_t`.
pub fn reflection_demazure(t: &ReflectionOperator, f: &MPoly) -> Result<MPoly> {
    if t.b > f.n() {
        return Err(Error::Parameter(format!(
            "({} {}) outside {} variables",
            t.a,
            t.b,
            f.n()
        )));
    }
    let diff = f - &f.swap_vars(t.a, t.b);
    Ok(diff.div_root(t.a, t.b).expect("antisymmetric under t"))
}

/// Pairs `(y, t)` with `y t = x` and `ℓ(y) + 1 = ℓ(x)`.
pub fn covers_below(x: &Permutation) -> Vec<(Permutation, ReflectionOperator)> {
    let n = x.n();
    let mut out = Vec::new();
    for a in 1..n {
        for b in a + 1..=n {
            let t = ReflectionOperator { a, b };
            let y = x.compose(&t.perm(n));
            if y.length() + 1 == x.length() {
                out.push((y, t));
            }
        }
    }
    out
}

/// One side of the expansion `∂_x(fg) = Σ_{y t = x} ∂_t(f) ∂_y(g)` for linear `f`.
pub fn demaformula_rhs(x: &Permutation, f: &MPoly, g: &MPoly) -> Result<MPoly> {
    let mut acc = MPoly::zero(f.n());
    for (y, t) in covers_below(x) {
        acc = &acc + &(&reflection_demazure(&t, f)? * &demazure_perm(&y, g)?);
    }
    Ok(acc)
}

/// Checks the expansion on `trials` random pairs `(f, g)` with `f` linear and `g` of total
/// degree `ℓ(x) - 1`.
pub fn check_demaformula<R: Rng>(x: &Permutation, trials: usize, rng: &mut R) -> Result<bool> {
    let n = x.n();
    if x.length() == 0 {
        return Err(Error::Domain("the expansion needs ℓ(x) >= 1".into()));
    }
    for _ in 0..trials {
        let f = MPoly::random_homogeneous(n, 1, 5, rng);
        let g = MPoly::random_homogeneous(n, x.length() as u32 - 1, 5, rng);
        if demazure_perm(x, &(&f * &g))? != demaformula_rhs(x, &f, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn check_invariant_linear(rho: &MPoly, i: usize) -> Result<()> {
    let n = rho.n();
    if i == 0 || i >= n {
        return Err(Error::Parameter(format!("i = {i} outside 1..{n}")));
    }
    if !rho.is_zero() && (rho.total_degree() != Some(1) || !rho.is_homogeneous()) {
        return Err(Error::Domain(format!(
            "{rho} is not homogeneous of degree 2"
        )));
    }
    if (1..n)
        .filter(|&j| j != i)
        .any(|j| rho.swap_vars(j, j + 1) != *rho)
    {
        return Err(Error::Domain(format!(
            "{rho} is not invariant under the parabolic"
        )));
    }
    Ok(())
}

/// `∂_i(ρ) > 0` for an invariant linear `ρ`.
pub fn is_ample(rho: &MPoly, i: usize) -> Result<bool> {
    check_invariant_linear(rho, i)?;
    let d = demazure(i, rho)?.as_constant().expect("degree zero");
    Ok(d.is_positive())
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityEntry {
    pub w: Permutation,
    pub word: Vec<usize>,
    /// `∂_w(ρ^{ℓ(w)})` as a string.
    pub value: String,
    pub positive: bool,
    pub partials_positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub n: usize,
    pub i: usize,
    pub entries: Vec<PositivityEntry>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.positive && e.partials_positive)
    }
}

/// `∂_w(ρ^{ℓ(w)}) > 0` for every minimal representative `w`, and the partial values
/// `∂_{a_j}(s_{a_{j+1}} ... s_{a_l}(ρ))` along its canonical reduced word are positive.
pub fn positivity_sweep(n: usize, i: usize, rho: &MPoly) -> Result<PositivityReport> {
    if rho.n() != n {
        return Err(Error::Parameter(format!(
            "ρ lives in {} variables, expected {n}",
            rho.n()
        )));
    }
    if !is_ample(rho, i)? {
        return Err(Error::Domain(format!("{rho} is not ample")));
    }
    let paths = enumerate_paths(n, i)?;
    let entries: Result<Vec<PositivityEntry>> = paths
        .par_iter()
        .map(|lam| {
            let w = lam.perm_of_path();
            let word = w.reduced_word();
            let value = demazure_word(&word, &rho.pow(word.len() as u32))?
                .as_constant()
                .ok_or_else(|| Error::Contract("top Demazure value is not a constant".into()))?;
            let mut partials_positive = true;
            for j in 0..word.len() {
                let tail = Permutation::from_word(n, &word[j + 1..]);
                let d = demazure(word[j], &rho.permute(&tail))?
                    .as_constant()
                    .expect("degree zero");
                partials_positive &= d.is_positive();
            }
            Ok(PositivityEntry {
                positive: value.is_positive(),
                value: value.to_string(),
                w,
                word,
                partials_positive,
            })
        })
        .collect();
    Ok(PositivityReport {
        n,
        i,
        entries: entries?,
    })
}

/// Billey's formula along the canonical reduced word of `w`.
pub fn billey_restriction(v: &Permutation, w: &Permutation) -> MPoly {
    billey_restriction_word(v, &w.reduced_word(), w.n())
}

/// `Σ Π_{j ∈ J} s_{a_1} ... s_{a_{j-1}}(α_{a_j})` over reduced subwords `J` of `a` with product `v`.
pub fn billey_restriction_word(v: &Permutation, word: &[usize], n: usize) -> MPoly {
    let prefixes: Vec<Permutation> = (0..word.len())
        .map(|j| Permutation::from_word(n, &word[..j]))
        .collect();
    let roots: Vec<MPoly> = word
        .iter()
        .zip(&prefixes)
        .map(|(&a, u)| MPoly::root(n, u.apply(a), u.apply(a + 1)))
        .collect();
    let mut acc = MPoly::zero(n);
    billey_rec(
        v,
        word,
        &roots,
        0,
        Permutation::identity(n),
        MPoly::one(n),
        &mut acc,
    );
    acc
}

fn billey_rec(
    v: &Permutation,
    word: &[usize],
    roots: &[MPoly],
    pos: usize,
    cur: Permutation,
    prod: MPoly,
    acc: &mut MPoly,
) {
    let need = v.length() - cur.length();
    if need > word.len() - pos {
        return;
    }
    if pos == word.len() {
        if &cur == v {
            *acc = &*acc + &prod;
        }
        return;
    }
    billey_rec(v, word, roots, pos + 1, cur.clone(), prod.clone(), acc);
    if need > 0 && !cur.has_right_descent(word[pos]) {
        let mut next = cur;
        next.mul_simple_right(word[pos]);
        billey_rec(v, word, roots, pos + 1, next, &prod * &roots[pos], acc);
    }
}

/// Exact quotient `(ξ(w) - ξ(t w)) / α_t`, `None` when `α_t` does not divide.
pub fn gkm_edge_quotient(a: &MPoly, b: &MPoly, t: &ReflectionOperator) -> Option<MPoly> {
    (a - b).div_root(t.a, t.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, j: usize) -> MPoly {
        MPoly::var(n, j)
    }

    fn c(n: usize, k: i64) -> MPoly {
        MPoly::constant(n, BigRational::from_integer(BigInt::from(k)))
    }

    fn perm(v: &[u8]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(demazure(1, &x(3, 1)).unwrap(), c(3, 1));
        assert_eq!(demazure(1, &x(3, 1).pow(2)).unwrap(), &x(3, 1) + &x(3, 2));
        assert_eq!(demazure(1, &x(3, 2)).unwrap(), c(3, -1));
        assert!(demazure(3, &x(3, 1)).is_err());
        assert_eq!(
            demazure_word(&[1, 2], &(&x(3, 1) * &x(3, 2))).unwrap(),
            c(3, 1)
        );
        assert!(demazure_word(&[1, 1], &x(3, 1)).is_err());
        let w = perm(&[3, 2, 1]);
        assert!(demazure_perm(&w, &(&x(3, 1) * &x(3, 2))).unwrap().is_zero());
    }

    #[test]
    fn nil_and_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let f = MPoly::random_homogeneous(4, 2, 4, &mut rng);
            let g = MPoly::random_homogeneous(4, 3, 4, &mut rng);
            for j in 1..4 {
                assert!(demazure(j, &demazure(j, &f).unwrap()).unwrap().is_zero());
                let lhs = demazure(j, &(&f * &g)).unwrap();
                let rhs = &(&demazure(j, &f).unwrap() * &g)
                    + &(&f.swap_vars(j, j + 1) * &demazure(j, &g).unwrap());
                assert_eq!(lhs, rhs);
                assert_eq!(demazure(j, &f).unwrap().total_degree().unwrap_or(1), 1);
            }
        }
    }

    #[test]
    fn braid_invariance_on_cubics() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = MPoly::random_homogeneous(3, 3, 5, &mut rng);
            assert_eq!(
                demazure_word(&[1, 2, 1], &f).unwrap(),
                demazure_word(&[2, 1, 2], &f).unwrap()
            );
        }
    }

    #[test]
    fn all_reduced_words_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5 {
            for w in Permutation::all(n) {
                let words = reduced_words(&w);
                assert!(words.iter().all(|wd| Permutation::from_word(n, wd) == w));
                let f = MPoly::random_sparse(n, w.length() as u32 + 1, 6, 5, &mut rng);
                let first = demazure_word(&words[0], &f).unwrap();
                for wd in &words[1..] {
                    assert_eq!(demazure_word(wd, &f).unwrap(), first, "{w:?} {wd:?}");
                }
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let t = ReflectionOperator::new(1, 3).unwrap();
        assert_eq!(reflection_demazure(&t, &x(3, 1)).unwrap(), c(3, 1));
        assert!(reflection_demazure(&t, &x(3, 2)).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = MPoly::random_homogeneous(4, 3, 5, &mut rng);
        for j in 1..4 {
            assert_eq!(
                reflection_demazure(&ReflectionOperator::simple(j), &f).unwrap(),
                demazure(j, &f).unwrap()
            );
        }
        assert!(ReflectionOperator::new(2, 2).is_err());
        assert_eq!(ReflectionOperator::from_perm(&perm(&[3, 2, 1])), Some(t));
        assert_eq!(ReflectionOperator::from_perm(&perm(&[2, 3, 1])), None);
    }

    #[test]
    fn reflection_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 4;
        for w in Permutation::all(n) {
            for j in 1..n {
                if w.has_right_descent(j) {
                    continue;
                }
                let tp = w.compose(&Permutation::simple(n, j)).compose(&w.inverse());
                let t = ReflectionOperator::from_perm(&tp).unwrap();
                let f = MPoly::random_homogeneous(n, 2, 4, &mut rng);
                let rhs = demazure(j, &f.permute(&w.inverse())).unwrap().permute(&w);
                assert_eq!(reflection_demazure(&t, &f).unwrap(), rhs);
                let lin = MPoly::random_homogeneous(n, 1, 4, &mut rng);
                assert!(reflection_demazure(&t, &lin)
                    .unwrap()
                    .as_constant()
                    .is_some());
            }
        }
    }

    #[test]
    fn demaformula_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s1 = Permutation::simple(3, 1);
        let f = MPoly::random_homogeneous(3, 1, 5, &mut rng);
        assert_eq!(
            demazure(1, &(&f * &c(3, 4))).unwrap(),
            demazure(1, &f)
                .unwrap()
                .scale(&BigRational::from_integer(4.into()))
        );
        assert!(check_demaformula(&s1, 10, &mut rng).unwrap());
        assert!(check_demaformula(&perm(&[2, 3, 1]), 20, &mut rng).unwrap());
        assert!(check_demaformula(&perm(&[3, 2, 1]), 20, &mut rng).unwrap());
        assert!(check_demaformula(&Permutation::identity(3), 1, &mut rng).is_err());
    }

    #[test]
    fn ampleness() {
        assert!(is_ample(&MPoly::partial_sum(4, 2), 2).unwrap());
        assert!(!is_ample(&MPoly::zero(4), 2).unwrap());
        assert!(!is_ample(&-&MPoly::partial_sum(4, 2), 2).unwrap());
        assert!(is_ample(&x(4, 1), 2).is_err());
        assert!(is_ample(&MPoly::partial_sum(4, 2).pow(2), 2).is_err());
    }

    #[test]
    fn positivity_examples() {
        let rho = MPoly::partial_sum(4, 2);
        let r = positivity_sweep(4, 2, &rho).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries.len(), 6);
        let id = r.entries.iter().find(|e| e.word.is_empty()).unwrap();
        assert_eq!(id.value, "1");
        let si = r.entries.iter().find(|e| e.word == vec![2]).unwrap();
        assert_eq!(si.value, "1");
        assert!(positivity_sweep(4, 2, &-&rho).is_err());
    }

    #[test]
    fn billey_examples() {
        let s1 = Permutation::simple(2, 1);
        assert_eq!(
            billey_restriction(&Permutation::identity(2), &s1),
            MPoly::one(2)
        );
        assert_eq!(billey_restriction(&s1, &s1), MPoly::root(2, 1, 2));
        assert!(billey_restriction(&s1, &Permutation::identity(2)).is_zero());
        let w = perm(&[3, 2, 1]);
        let v = perm(&[2, 1, 3]);
        assert_eq!(billey_restriction(&v, &w), MPoly::root(3, 1, 3));
    }

    #[test]
    fn billey_word_independent_and_diagonal() {
        for n in 2..=4 {
            for w in Permutation::all(n) {
                let words = reduced_words(&w);
                let mut diag = MPoly::one(n);
                for a in 1..=n {
                    for b in a + 1..=n {
                        if w.apply(a) > w.apply(b) {
                            diag = &diag * &MPoly::root(n, w.apply(b), w.apply(a));
                        }
                    }
                }
                for v in Permutation::all(n) {
                    let first = billey_restriction_word(&v, &words[0], n);
                    for wd in &words[1..] {
                        assert_eq!(billey_restriction_word(&v, wd, n), first);
                    }
                    if !v.bruhat_leq(&w) {
                        assert!(first.is_zero());
                    }
                    if v == w {
                        assert_eq!(first, diag);
                    }
                }
            }
        }
    }

    #[test]
    fn billey_edge_divisibility() {
        let n = 4;
        let all = Permutation::all(n);
        for v in &all {
            for w in &all {
                for a in 1..n {
                    for b in a + 1..=n {
                        let t = ReflectionOperator::new(a, b).unwrap();
                        let tw = t.perm(n).compose(w);
                        let (x, y) = (billey_restriction(v, w), billey_restriction(v, &tw));
                        assert!(gkm_edge_quotient(&x, &y, &t).is_some());
                    }
                }
            }
        }
    }
}
