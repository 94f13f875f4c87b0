//! The Hecke algebra of `S_n`, its spherical module `H H̲_I`, and parabolic
//! Kazhdan-Lusztig polynomials.
//!
//! Normalization: `H_s^2 = 1 + (v^{-1} - v) H_s` and `H̲_s = H_s + v`. The spherical
//! standard basis is `H^I_x = H_x H̲_I` for `x` a minimal coset representative,
//! indexed here by paths. `h(λ, μ)` is the coefficient of `H^I_λ` in `H̲^I_μ`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dyck::{for_each_partition, strips_type1, strips_type2};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial as Lp;
use crate::paths::{region_unchecked, Path, PathSpace, Position};
use crate::perm::{longest_length, Permutation, SymmetricGroup};

/// `(v^{-1} - v) p`.
fn times_quadratic(p: &Lp) -> Lp {
    p.shift(-1) - p.shift(1)
}

/// An element of the Hecke algebra of `S_n`, stored densely over the group.
#[derive(Clone)]
pub struct HeckeElement {
    group: Arc<SymmetricGroup>,
    coeffs: Vec<Lp>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.n == other.group.n && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElement {}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        let group = SymmetricGroup::get(n);
        let coeffs = vec![Lp::zero(); group.order()];
        Self { group, coeffs }
    }

    /// The standard basis element `H_w`.
    pub fn standard(w: &Permutation) -> Self {
        let mut e = Self::zero(w.n());
        let k = e.group.index_of(w) as usize;
        e.coeffs[k] = Lp::one();
        e
    }

    pub fn one(n: usize) -> Self {
        Self::standard(&Permutation::identity(n))
    }

    pub fn from_terms<I: IntoIterator<Item = (Permutation, Lp)>>(n: usize, terms: I) -> Self {
        let mut e = Self::zero(n);
        for (w, c) in terms {
            let k = e.group.index_of(&w) as usize;
            e.coeffs[k] += &c;
        }
        e
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn coeff(&self, w: &Permutation) -> &Lp {
        &self.coeffs[self.group.index_of(w) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Lp::is_zero)
    }

    /// Nonzero terms sorted by length, then one-line notation.
    pub fn terms(&self) -> Vec<(Permutation, Lp)> {
        let mut out: Vec<(Permutation, Lp)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.group.element(k as u32).clone(), c.clone()))
            .collect();
        out.sort_by_key(|(w, _)| (w.length(), w.clone()));
        out
    }

    pub fn scale(&self, c: &Lp) -> Self {
        Self {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Coefficient-wise exact division, `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &Lp) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(d))
            .collect::<Option<Vec<_>>>()?;
        Some(Self {
            group: self.group.clone(),
            coeffs,
        })
    }

    /// `self * H_{s_j}`.
    pub fn mul_simple_right(&self, j: usize) -> Self {
        Self {
            group: self.group.clone(),
            coeffs: right_simple(&self.group, &self.coeffs, j),
        }
    }

    /// `self * other`, computed as `Σ_y c_y (self H_y)` with `self H_y` built along reduced words.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "Hecke elements of different rank");
        let g = &self.group;
        let order = g.order();
        let id = g.index_of(&Permutation::identity(g.n)) as usize;
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; order];
        let mut needed = vec![false; order];
        needed[id] = true;
        for (y, c) in other.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut y = y as u32;
            while !needed[y as usize] {
                needed[y as usize] = true;
                let w = g.element(y);
                let j = (1..g.n)
                    .find(|&j| w.has_right_descent(j))
                    .expect("non-identity has a descent");
                let p = g.right_mul(y, j);
                parent[y as usize] = Some((p, j));
                y = p;
            }
        }
        let max_len = (0..order)
            .filter(|&y| needed[y])
            .map(|y| g.length(y as u32))
            .max()
            .unwrap_or(0);
        let mut levels: Vec<Vec<u32>> = vec![Vec::new(); max_len as usize + 1];
        for y in (0..order).filter(|&y| needed[y]) {
            levels[g.length(y as u32) as usize].push(y as u32);
        }
        let mut out = vec![Lp::zero(); order];
        let accumulate = |out: &mut Vec<Lp>, v: &[Lp], c: &Lp| {
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o += &(x * c);
                }
            }
        };
        if !other.coeffs[id].is_zero() {
            accumulate(&mut out, &self.coeffs, &other.coeffs[id]);
        }
        let mut prev: HashMap<u32, Vec<Lp>> = HashMap::new();
        prev.insert(id as u32, self.coeffs.clone());
        for level in levels.iter().skip(1) {
            let mut cur = HashMap::with_capacity(level.len());
            for &y in level {
                let (p, j) = parent[y as usize].unwrap();
                let v = right_simple(g, &prev[&p], j);
                if !other.coeffs[y as usize].is_zero() {
                    accumulate(&mut out, &v, &other.coeffs[y as usize]);
                }
                cur.insert(y, v);
            }
            prev = cur;
        }
        Self {
            group: self.group.clone(),
            coeffs: out,
        }
    }
}

fn right_simple(g: &SymmetricGroup, src: &[Lp], j: usize) -> Vec<Lp> {
    let mut out = vec![Lp::zero(); src.len()];
    for (x, c) in src.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let xs = g.right_mul(x as u32, j) as usize;
        out[xs] += c;
        if g.length(xs as u32) < g.length(x as u32) {
            out[x] += &times_quadratic(c);
        }
    }
    out
}

impl std::ops::Add for &HeckeElement {
    type Output = HeckeElement;

    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n(), rhs.n());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        HeckeElement {
            group: self.group.clone(),
            coeffs,
        }
    }
}

impl std::ops::Sub for &HeckeElement {
    type Output = HeckeElement;

    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n(), rhs.n());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        HeckeElement {
            group: self.group.clone(),
            coeffs,
        }
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})H{w}")?;
        }
        Ok(())
    }
}

impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms().serialize(s)
    }
}

/// `a * b`; fails on mismatched ranks.
pub fn hecke_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    if a.n() != b.n() {
        return Err(Error::Parameter(format!(
            "ranks {} and {} differ",
            a.n(),
            b.n()
        )));
    }
    Ok(a.mul(b))
}

fn check_labels(n: usize, labels: &BTreeSet<usize>) -> Result<()> {
    if let Some(bad) = labels.iter().find(|&&j| j == 0 || j >= n) {
        return Err(Error::Parameter(format!(
            "label {bad} is not a simple reflection of S_{n}"
        )));
    }
    Ok(())
}

/// `H̲_{w_J} = Σ_{w ∈ W_J} v^{ℓ(w_J) - ℓ(w)} H_w`.
pub fn kl_longest(n: usize, labels: &BTreeSet<usize>) -> Result<HeckeElement> {
    check_labels(n, labels)?;
    let top = longest_length(labels) as i32;
    Ok(HeckeElement::from_terms(
        n,
        Permutation::parabolic_elements(n, labels)
            .into_iter()
            .map(|w| {
                let l = w.length() as i32;
                (w, Lp::v_pow(top - l))
            }),
    ))
}

/// `π(J) = Σ_{w ∈ W_J} v^{ℓ(w_J) - 2ℓ(w)}`, the product of balanced quantum factorials over runs.
pub fn poincare(labels: &BTreeSet<usize>) -> Lp {
    let mut out = Lp::one();
    for run in crate::perm::label_runs(labels) {
        for k in 2..=run.len() + 1 {
            let q = Lp::from_terms((0..k).map(|t| (2 * t as i32 - (k as i32 - 1), 1)));
            out = &out * &q;
        }
    }
    out
}

/// `(a b) / π(J)`, failing when the division is not exact.
pub fn star_mul(
    a: &HeckeElement,
    b: &HeckeElement,
    labels: &BTreeSet<usize>,
) -> Result<HeckeElement> {
    let prod = hecke_mul(a, b)?;
    check_labels(a.n(), labels)?;
    prod.div_exact(&poincare(labels)).ok_or_else(|| {
        Error::Contract(format!(
            "product is not divisible by π({labels:?}); factors are not J-invariant"
        ))
    })
}

/// An element of the spherical module, stored densely over [`PathSpace`].
#[derive(Clone)]
pub struct ParabolicHeckeElement {
    space: Arc<PathSpace>,
    coeffs: Vec<Lp>,
}

impl PartialEq for ParabolicHeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.space.n == other.space.n
            && self.space.i == other.space.i
            && self.coeffs == other.coeffs
    }
}

impl Eq for ParabolicHeckeElement {}

impl ParabolicHeckeElement {
    pub fn zero(space: Arc<PathSpace>) -> Self {
        let coeffs = vec![Lp::zero(); space.len()];
        Self { space, coeffs }
    }

    /// `H^I_λ`.
    pub fn standard(lam: &Path) -> Result<Self> {
        let space = PathSpace::get(lam.n(), lam.i())?;
        let k = space.index_of(lam)?;
        let mut e = Self::zero(space);
        e.coeffs[k] = Lp::one();
        Ok(e)
    }

    pub fn from_coeffs(space: Arc<PathSpace>, coeffs: Vec<Lp>) -> Self {
        assert_eq!(space.len(), coeffs.len());
        Self { space, coeffs }
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[Lp] {
        &self.coeffs
    }

    pub fn coeff(&self, lam: &Path) -> Result<&Lp> {
        Ok(&self.coeffs[self.space.index_of(lam)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Lp::is_zero)
    }

    pub fn terms(&self) -> Vec<(Path, Lp)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.space.path(k).clone(), c.clone()))
            .collect()
    }

    /// `Σ_y c_y H_y H̲_I` as an element of the Hecke algebra.
    pub fn to_hecke(&self) -> HeckeElement {
        let n = self.space.n;
        let left = HeckeElement::from_terms(
            n,
            self.terms().into_iter().map(|(p, c)| (p.perm_of_path(), c)),
        );
        let labels = parabolic_labels(n, self.space.i);
        left.mul(&kl_longest(n, &labels).expect("valid labels"))
    }

    /// Reads off module coordinates of an element of `H H̲_I`; fails if the element is not of that form.
    pub fn from_hecke(a: &HeckeElement, i: usize) -> Result<Self> {
        let n = a.n();
        let space = PathSpace::get(n, i)?;
        let shift = -(longest_length(&parabolic_labels(n, i)) as i32);
        let coeffs = space
            .paths()
            .iter()
            .map(|p| a.coeff(&p.perm_of_path()).shift(shift))
            .collect();
        let m = Self { space, coeffs };
        if m.to_hecke() != *a {
            return Err(Error::Contract(
                "element is not in the right ideal H H̲_I".into(),
            ));
        }
        Ok(m)
    }
}

impl std::ops::Add for &ParabolicHeckeElement {
    type Output = ParabolicHeckeElement;

    fn add(self, rhs: &ParabolicHeckeElement) -> ParabolicHeckeElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        ParabolicHeckeElement {
            space: self.space.clone(),
            coeffs,
        }
    }
}

impl std::ops::Sub for &ParabolicHeckeElement {
    type Output = ParabolicHeckeElement;

    fn sub(self, rhs: &ParabolicHeckeElement) -> ParabolicHeckeElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        ParabolicHeckeElement {
            space: self.space.clone(),
            coeffs,
        }
    }
}

impl fmt::Debug for ParabolicHeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})H^I[{p}]")?;
        }
        Ok(())
    }
}

impl Serialize for ParabolicHeckeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(String, Lp)> = self
            .terms()
            .into_iter()
            .map(|(p, c)| (p.to_string(), c))
            .collect();
        v.serialize(s)
    }
}

/// `I = S \ {i}`.
pub fn parabolic_labels(n: usize, i: usize) -> BTreeSet<usize> {
    (1..n).filter(|&j| j != i).collect()
}

fn act_raw(space: &PathSpace, j: usize, src: &[Lp]) -> Vec<Lp> {
    let mut out = vec![Lp::zero(); src.len()];
    for (k, c) in src.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match space.path(k).classify(j) {
            Position::Valley => out[space.swap(k, j).unwrap()] += c,
            Position::Peak => {
                out[space.swap(k, j).unwrap()] += c;
                out[k] += &times_quadratic(c);
            }
            _ => out[k] += &c.shift(-1),
        }
    }
    out
}

/// Left multiplication by `H_{s_j}` on the spherical module.
pub fn module_act(j: usize, m: &ParabolicHeckeElement) -> Result<ParabolicHeckeElement> {
    if j == 0 || j >= m.space.n {
        return Err(Error::Parameter(format!(
            "label {j} outside 1..{}",
            m.space.n
        )));
    }
    Ok(ParabolicHeckeElement {
        space: m.space.clone(),
        coeffs: act_raw(&m.space, j, &m.coeffs),
    })
}

/// A square table of Laurent polynomials indexed by pairs of paths.
#[derive(Clone, Debug)]
pub struct PolyTable {
    space: Arc<PathSpace>,
    entries: Vec<Vec<Lp>>,
}

impl PolyTable {
    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn get(&self, lam: &Path, mu: &Path) -> Result<&Lp> {
        Ok(&self.entries[self.space.index_of(lam)?][self.space.index_of(mu)?])
    }

    /// Entry at space indices.
    pub fn at(&self, a: usize, b: usize) -> &Lp {
        &self.entries[a][b]
    }

    /// One `λ,μ,polynomial` row per ordered pair, in space order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,mu,poly\n");
        for (a, row) in self.entries.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    self.space.path(a),
                    self.space.path(b),
                    c
                ));
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<(Path, Path, Lp)> {
        let mut out = Vec::with_capacity(self.space.len().pow(2));
        for (a, row) in self.entries.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                out.push((
                    self.space.path(a).clone(),
                    self.space.path(b).clone(),
                    c.clone(),
                ));
            }
        }
        out
    }
}

/// The `h` and `g` tables of one `(n, i)`.
#[derive(Debug)]
pub struct KlTables {
    pub h: PolyTable,
    pub g: PolyTable,
}

impl KlTables {
    pub fn space(&self) -> &Arc<PathSpace> {
        self.h.space()
    }

    /// `H̲^I_μ` in the standard basis.
    pub fn kl_element(&self, mu: &Path) -> Result<ParabolicHeckeElement> {
        let m = self.space().index_of(mu)?;
        Ok(self.kl_column(m))
    }

    fn kl_column(&self, m: usize) -> ParabolicHeckeElement {
        let coeffs = (0..self.space().len())
            .map(|l| self.h.at(l, m).clone())
            .collect();
        ParabolicHeckeElement::from_coeffs(self.space().clone(), coeffs)
    }

    /// Coefficients `p_z` with `m = Σ_z p_z H̲^I_z`, by unitriangular elimination.
    pub fn kl_decompose(&self, m: &ParabolicHeckeElement) -> Vec<Lp> {
        let sp = self.space();
        let mut rest = m.coeffs.clone();
        let mut out = vec![Lp::zero(); sp.len()];
        for z in (0..sp.len()).rev() {
            let c = std::mem::take(&mut rest[z]);
            if c.is_zero() {
                continue;
            }
            for (l, r) in rest.iter_mut().enumerate().take(z) {
                let hz = self.h.at(l, z);
                if !hz.is_zero() {
                    *r -= &(hz * &c);
                }
            }
            out[z] = c;
        }
        out
    }
}

/// Bar-invariant `p` agreeing with `c` in all exponents `<= 0`.
fn symmetric_nonpositive_part(c: &Lp) -> Lp {
    let mut out = Lp::zero();
    for (e, x) in c.terms() {
        if e < 0 {
            out.add_scaled(&Lp::v_pow(e), 0, x);
            out.add_scaled(&Lp::v_pow(-e), 0, x);
        } else if e == 0 {
            out.add_scaled(&Lp::one(), 0, x);
        }
    }
    out
}

/// Builds the `h` and `g` tables of `(n, i)` from scratch, bypassing the cache.
pub fn build_tables(n: usize, i: usize) -> Result<KlTables> {
    let sp = PathSpace::get(n, i)?;
    let size = sp.len();
    let mut kl: Vec<Vec<Lp>> = Vec::with_capacity(size);
    for m in 0..size {
        if m == 0 {
            let mut e = vec![Lp::zero(); size];
            e[0] = Lp::one();
            kl.push(e);
            continue;
        }
        let p = sp.path(m).peaks()[0];
        let lower = sp.swap(m, p).unwrap();
        let mut cand = act_raw(&sp, p, &kl[lower]);
        for (c, x) in cand.iter_mut().zip(&kl[lower]) {
            *c += &x.shift(1);
        }
        for l in (0..m).rev() {
            if cand[l].min_exp().is_none_or(|e| e > 0) {
                continue;
            }
            let q = symmetric_nonpositive_part(&cand[l]);
            for (c, x) in cand.iter_mut().zip(&kl[l]) {
                if !x.is_zero() {
                    *c -= &(x * &q);
                }
            }
        }
        debug_assert!(cand[m].is_one());
        kl.push(cand);
    }
    let h: Vec<Vec<Lp>> = (0..size)
        .map(|l| (0..size).map(|m| kl[m][l].clone()).collect())
        .collect();
    let h = PolyTable {
        space: sp.clone(),
        entries: h,
    };
    let g = inverse_g_table(&h);
    Ok(KlTables { h, g })
}

/// Cached `h` and `g` tables for `(n, i)`.
pub fn kl_tables(n: usize, i: usize) -> Result<Arc<KlTables>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<KlTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(n, i)) {
        return Ok(t.clone());
    }
    let built = Arc::new(build_tables(n, i)?);
    Ok(cache.lock().unwrap().entry((n, i)).or_insert(built).clone())
}

/// `h(λ, μ)` for all ordered pairs, built by the self-correcting KL recursion.
pub fn parabolic_h_table(n: usize, i: usize) -> Result<PolyTable> {
    Ok(kl_tables(n, i)?.h.clone())
}

/// `g(λ, μ) = (-1)^{ℓ(μ)-ℓ(λ)} (h^{-1})(λ, μ)`.
pub fn inverse_g_table(h: &PolyTable) -> PolyTable {
    let sp = h.space.clone();
    let size = sp.len();
    let mut inv = vec![vec![Lp::zero(); size]; size];
    for m in 0..size {
        inv[m][m] = Lp::one();
        for l in (0..m).rev() {
            let mut acc = Lp::zero();
            for k in l + 1..=m {
                let hk = &h.entries[l][k];
                if !hk.is_zero() && !inv[k][m].is_zero() {
                    acc -= &(hk * &inv[k][m]);
                }
            }
            inv[l][m] = acc;
        }
    }
    for (l, row) in inv.iter_mut().enumerate() {
        for (m, c) in row.iter_mut().enumerate() {
            if (sp.length(m) + sp.length(l)) % 2 == 1 {
                *c = -&*c;
            }
        }
    }
    PolyTable {
        space: sp,
        entries: inv,
    }
}

/// Outcome of comparing Dyck-partition counts with the Hecke tables.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SzjReport {
    pub n: usize,
    pub i: usize,
    pub pairs: usize,
    pub max_type2: usize,
    pub mismatches: Vec<String>,
}

impl SzjReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.max_type2 <= 1
    }
}

/// Counts of type-1 and type-2 partitions by size, plus the number of type-2 partitions.
pub fn partition_counts(lam: &Path, mu: &Path) -> (Lp, Lp, usize) {
    if !lam.leq(mu) {
        return (Lp::zero(), Lp::zero(), 0);
    }
    let region = region_unchecked(lam, mu);
    let mut c1 = vec![0i64; region.len() + 1];
    let mut c2 = vec![0i64; region.len() + 1];
    for_each_partition(&region.boxes, &mut |strips| {
        if strips_type1(strips) {
            c1[strips.len()] += 1;
        }
        if strips_type2(strips) {
            c2[strips.len()] += 1;
        }
    });
    let n2 = c2.iter().sum::<i64>() as usize;
    let poly = |c: Vec<i64>| Lp::from_terms(c.into_iter().enumerate().map(|(k, x)| (k as i32, x)));
    (poly(c1), poly(c2), n2)
}

/// `q1 = h` and `q2 = g` on every ordered pair, and at most one type-2 partition per pair.
pub fn verify_szj(n: usize, i: usize, parallel: bool) -> Result<SzjReport> {
    let t = kl_tables(n, i)?;
    let sp = t.space().clone();
    let size = sp.len();
    let check = |(a, b): (usize, usize)| -> (usize, Vec<String>) {
        let (lam, mu) = (sp.path(a), sp.path(b));
        let (c1, c2, k2) = partition_counts(lam, mu);
        let mut bad = Vec::new();
        if &c1 != t.h.at(a, b) {
            bad.push(format!("q1({lam},{mu}) = {c1} but h = {}", t.h.at(a, b)));
        }
        if &c2 != t.g.at(a, b) {
            bad.push(format!("q2({lam},{mu}) = {c2} but g = {}", t.g.at(a, b)));
        }
        (k2, bad)
    };
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .collect();
    let results: Vec<(usize, Vec<String>)> = if parallel {
        pairs.par_iter().copied().map(check).collect()
    } else {
        pairs.iter().copied().map(check).collect()
    };
    let mut report = SzjReport {
        n,
        i,
        pairs: pairs.len(),
        ..Default::default()
    };
    for (k2, bad) in results {
        report.max_type2 = report.max_type2.max(k2);
        report.mismatches.extend(bad);
    }
    Ok(report)
}

/// Result of one valley-configuration check.
#[derive(Clone, Debug, Serialize)]
pub struct CrucialReport {
    pub w: Path,
    pub xw: Path,
    /// Nonzero KL coefficients at `z >= w`.
    pub above_w: Vec<(Path, Lp)>,
    pub passed: bool,
}

/// `(a, j, b)` with steps `a..=j` down and `j+1..=b` up.
pub fn valley_configurations(w: &Path) -> Vec<(usize, usize, usize)> {
    use crate::paths::Step;
    let n = w.n();
    let mut out = Vec::new();
    for j in w.valleys() {
        let mut a = j;
        loop {
            let mut b = j + 1;
            loop {
                out.push((a, j, b));
                if b < n && w.step(b + 1) == Step::Up {
                    b += 1;
                } else {
                    break;
                }
            }
            if a > 1 && w.step(a - 1) == Step::Down {
                a -= 1;
            } else {
                break;
            }
        }
    }
    out
}

/// Minimal representatives `x ∈ W^Ĵ_{[a,b-1]}`, embedded in `S_n`.
pub fn valley_coset_reps(n: usize, a: usize, j: usize, b: usize) -> Result<Vec<Permutation>> {
    let m = b - a + 1;
    Ok(crate::paths::enumerate_paths(m, j - a + 1)?
        .iter()
        .map(|p| p.perm_of_path().embed(n, a - 1))
        .collect())
}

/// Expands `H̲^Ĵ_x *_Ĵ H̲^I_w` in the KL basis and checks that `xw` is the only `z >= w`
/// with a nonzero coefficient, and that this coefficient is 1.
pub fn crucial_decomposition_check(
    w: &Path,
    a: usize,
    j: usize,
    b: usize,
    x: &Permutation,
) -> Result<CrucialReport> {
    use crate::paths::Step;
    let (n, i) = (w.n(), w.i());
    let config_ok = 1 <= a
        && a <= j
        && j < b
        && b <= n
        && (a..=j).all(|k| w.step(k) == Step::Down)
        && (j + 1..=b).all(|k| w.step(k) == Step::Up);
    if !config_ok || x.n() != n {
        return Err(Error::Contract(format!(
            "({a},{j},{b}) is not a valley configuration of {w}"
        )));
    }
    let m = b - a + 1;
    let small = x
        .restrict(a - 1, m)
        .filter(|s| crate::paths::is_minimal_rep(s, j - a + 1));
    let Some(small) = small else {
        return Err(Error::Contract(format!(
            "{x} is not a minimal coset representative on [{a},{b}]"
        )));
    };
    let hat_j: BTreeSet<usize> = (a..b).filter(|&k| k != j).collect();
    let small_path = Path::path_of_perm(&small, m, j - a + 1)?;
    let small_tables = kl_tables(m, j - a + 1)?;
    let small_kl = small_tables.kl_element(&small_path)?;
    let left = HeckeElement::from_terms(
        n,
        small_kl
            .terms()
            .into_iter()
            .map(|(r, c)| (r.perm_of_path().embed(n, a - 1), c)),
    )
    .mul(&kl_longest(n, &hat_j)?);
    let tables = kl_tables(n, i)?;
    let right = tables.kl_element(w)?.to_hecke();
    let prod = star_mul(&left, &right, &hat_j)?;
    let module = ParabolicHeckeElement::from_hecke(&prod, i)?;
    let coeffs = tables.kl_decompose(&module);
    let xw = Path::coset_path(&x.compose(&w.perm_of_path()), i)?;
    let sp = tables.space();
    let above_w: Vec<(Path, Lp)> = (0..sp.len())
        .filter(|&z| !coeffs[z].is_zero() && w.leq(sp.path(z)))
        .map(|z| (sp.path(z).clone(), coeffs[z].clone()))
        .collect();
    let passed = above_w.len() == 1 && above_w[0].0 == xw && above_w[0].1.is_one();
    Ok(CrucialReport {
        w: w.clone(),
        xw,
        above_w,
        passed,
    })
}

/// Runs [`crucial_decomposition_check`] over every valley configuration and coset representative.
pub fn crucial_sweep(n: usize, i: usize) -> Result<(usize, Vec<CrucialReport>)> {
    let mut count = 0;
    let mut failures = Vec::new();
    for w in crate::paths::enumerate_paths(n, i)? {
        for (a, j, b) in valley_configurations(&w) {
            for x in valley_coset_reps(n, a, j, b)? {
                let r = crucial_decomposition_check(&w, a, j, b, &x)?;
                count += 1;
                if !r.passed {
                    failures.push(r);
                }
            }
        }
    }
    Ok((count, failures))
}
