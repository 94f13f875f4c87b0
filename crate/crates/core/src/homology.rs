//! Graded Hom dimensions and character-level singular Rouquier complexes.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyck::{is_dyck_strip, q1, removable_strips, remove_strip, strips_type1, DyckStrip};
use crate::error::{Error, Result};
use crate::hecke::{kl_tables, ParabolicHeckeElement};
use crate::laurent::LaurentPolynomial as Lp;
use crate::paths::{region_unchecked, Path, PathSpace};

fn same_space(lam: &Path, mu: &Path) -> Result<()> {
    if lam.n() != mu.n() || lam.i() != mu.i() {
        return Err(Error::Parameter(format!(
            "{lam} and {mu} live in different path spaces"
        )));
    }
    Ok(())
}

/// True when `λ <= μ` and `A(λ, μ)` is one Dyck strip.
pub fn is_single_strip(lam: &Path, mu: &Path) -> bool {
    lam != mu && lam.leq(mu) && is_dyck_strip(&region_unchecked(lam, mu).boxes)
}

/// Dimension of the degree-one Hom space between distinct paths.
pub fn hom1_dim(lam: &Path, mu: &Path) -> Result<usize> {
    same_space(lam, mu)?;
    if lam == mu {
        return Err(Error::Domain(format!(
            "hom1_dim needs distinct paths, got {lam} twice"
        )));
    }
    Ok(usize::from(
        is_single_strip(lam, mu) || is_single_strip(mu, lam),
    ))
}

/// Dimension of the degree-two Hom space for `λ < μ`: the `v^2` coefficient of `h(λ, μ)` plus
/// the number of `ν` below both with `A(ν, λ)` and `A(ν, μ)` single strips.
pub fn hom2_dim(lam: &Path, mu: &Path) -> Result<usize> {
    same_space(lam, mu)?;
    if lam == mu || !lam.leq(mu) {
        return Err(Error::Order(format!("hom2_dim needs {lam} < {mu}")));
    }
    let t = kl_tables(lam.n(), lam.i())?;
    let c = t.h.get(lam, mu)?.coeff(2);
    let nu = t
        .space()
        .paths()
        .iter()
        .filter(|nu| is_single_strip(nu, lam) && is_single_strip(nu, mu))
        .count();
    Ok(usize::try_from(c).expect("KL coefficients are non-negative") + nu)
}

/// Graded rank of maps not factoring below `λ`, counted by the height-ordered strip
/// compositions `f_P`: one basis element per type-1 partition, reached by peeling strips off
/// `μ` in weakly decreasing height.
pub fn hom_rank_notless(lam: &Path, mu: &Path) -> Result<Lp> {
    same_space(lam, mu)?;
    if !lam.leq(mu) {
        return Ok(Lp::zero());
    }
    let mut found: BTreeSet<Vec<DyckStrip>> = BTreeSet::new();
    let mut cur = Vec::new();
    peel(lam, mu, i32::MAX, &mut cur, &mut found);
    let mut out = Lp::zero();
    for p in found {
        out += &Lp::v_pow(p.len() as i32);
    }
    Ok(out)
}

fn peel(
    lam: &Path,
    at: &Path,
    ceiling: i32,
    cur: &mut Vec<DyckStrip>,
    found: &mut BTreeSet<Vec<DyckStrip>>,
) {
    if at == lam {
        let mut strips = cur.clone();
        strips.sort();
        if strips_type1(&strips) {
            found.insert(strips);
        }
        return;
    }
    for d in removable_strips(at) {
        if d.height() > ceiling {
            continue;
        }
        let below = remove_strip(at, &d).expect("removable strip");
        if !lam.leq(&below) {
            continue;
        }
        let h = d.height();
        cur.push(d);
        peel(lam, &below, h, cur, found);
        cur.pop();
    }
}

/// `Σ_{ν <= λ, μ} q1(ν, λ) q1(ν, μ)`: the graded size of the cellular basis `{f_P ∘ g_Q}`.
pub fn cellular_rank(lam: &Path, mu: &Path) -> Result<Lp> {
    same_space(lam, mu)?;
    let sp = PathSpace::get(lam.n(), lam.i())?;
    let mut out = Lp::zero();
    for nu in sp.paths() {
        if nu.leq(lam) && nu.leq(mu) {
            out += &(&q1(nu, lam) * &q1(nu, mu));
        }
    }
    Ok(out)
}

/// `cellular_rank` for all ordered pairs, indexed like [`PathSpace::paths`].
pub fn cellular_rank_table(n: usize, i: usize) -> Result<Vec<Vec<Lp>>> {
    let sp = PathSpace::get(n, i)?;
    let size = sp.len();
    let q: Vec<Vec<Lp>> = (0..size)
        .into_par_iter()
        .map(|a| (0..size).map(|b| q1(sp.path(a), sp.path(b))).collect())
        .collect();
    Ok((0..size)
        .map(|l| {
            (0..size)
                .map(|m| {
                    let mut acc = Lp::zero();
                    for nu in 0..size {
                        if !q[nu][l].is_zero() && !q[nu][m].is_zero() {
                            acc += &(&q[nu][l] * &q[nu][m]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect())
}

/// One summand `B_λ(shift)` of a Rouquier complex term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouquierSummand {
    #[serde(with = "path_string")]
    pub lambda: Path,
    pub shift: i32,
}

/// Terms of the singular Rouquier complex of `μ`, keyed by homological degree `-k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouquierTerms {
    #[serde(with = "path_string")]
    pub mu: Path,
    #[serde(with = "degree_keys")]
    pub terms: BTreeMap<i32, Vec<RouquierSummand>>,
}

impl RouquierTerms {
    pub fn degree(&self, d: i32) -> Vec<&Path> {
        self.terms
            .get(&d)
            .map(|v| v.iter().map(|s| &s.lambda).collect())
            .unwrap_or_default()
    }

    /// Largest `k` with a nonzero term in degree `-k`.
    pub fn length(&self) -> i32 {
        self.terms.keys().next().map_or(0, |d| -d)
    }

    pub fn nodes(&self) -> Vec<(i32, Path)> {
        self.terms
            .iter()
            .flat_map(|(d, v)| v.iter().map(move |s| (*d, s.lambda.clone())))
            .collect()
    }
}

mod path_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::paths::Path;

    pub fn serialize<S: Serializer>(p: &Path, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Path, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod degree_keys {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    use super::RouquierSummand;

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<i32, Vec<RouquierSummand>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<i32, Vec<RouquierSummand>>, D::Error> {
        let raw = BTreeMap::<String, Vec<RouquierSummand>>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<i32>()
                    .map(|k| (k, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

/// Reads the terms off the inverse table: `λ` sits in degree `-k` when `g(λ, μ) = v^k`.
pub fn rouquier_terms(mu: &Path) -> Result<RouquierTerms> {
    let t = kl_tables(mu.n(), mu.i())?;
    let mut terms: BTreeMap<i32, Vec<RouquierSummand>> = BTreeMap::new();
    for lam in t.space().paths() {
        let g = t.g.get(lam, mu)?;
        if g.is_zero() {
            continue;
        }
        if !g.is_monomial() || g.coeff(g.min_exp().unwrap()) != 1.into() {
            return Err(Error::Contract(format!(
                "g({lam}, {mu}) = {g} is not a monic monomial"
            )));
        }
        let k = g.min_exp().unwrap();
        terms.entry(-k).or_default().push(RouquierSummand {
            lambda: lam.clone(),
            shift: -k,
        });
    }
    Ok(RouquierTerms {
        mu: mu.clone(),
        terms,
    })
}

/// Alternating character sum of the complex, with `cha(B(m)) = v^{-m} cha(B)`.
pub fn complex_character(terms: &RouquierTerms) -> Result<ParabolicHeckeElement> {
    let t = kl_tables(terms.mu.n(), terms.mu.i())?;
    let mut acc = ParabolicHeckeElement::zero(t.space().clone());
    for (&d, summands) in &terms.terms {
        for s in summands {
            let sign = if d % 2 == 0 { Lp::one() } else { -Lp::one() };
            let c = &sign * &Lp::v_pow(-s.shift);
            let kl = t.kl_element(&s.lambda)?;
            let scaled = ParabolicHeckeElement::from_coeffs(
                t.space().clone(),
                kl.coeffs().iter().map(|x| x * &c).collect(),
            );
            acc = &acc + &scaled;
        }
    }
    Ok(acc)
}

/// The alternating character sum of the complex of `μ` is the standard element `H_μ`.
pub fn euler_check(mu: &Path) -> Result<bool> {
    Ok(complex_character(&rouquier_terms(mu)?)? == ParabolicHeckeElement::standard(mu)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// `A(source, target)` is a single strip: the component `f_D` is nonzero.
    Guaranteed,
    /// `A(target, source)` is a single strip: a possible `g_T` component.
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEdge {
    pub from_degree: i32,
    #[serde(with = "path_string")]
    pub from: Path,
    pub to_degree: i32,
    #[serde(with = "path_string")]
    pub to: Path,
    pub kind: EdgeKind,
}

/// Possible support of the differential of the complex of `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffGraph {
    #[serde(with = "path_string")]
    pub mu: Path,
    pub nodes: Vec<(i32, String)>,
    pub edges: Vec<DiffEdge>,
}

impl DiffGraph {
    pub fn edges_from(&self, degree: i32, lam: &Path) -> Vec<&DiffEdge> {
        self.edges
            .iter()
            .filter(|e| e.from_degree == degree && &e.from == lam)
            .collect()
    }
}

/// Edges from degree `-k-1` to `-k` between summands whose regions are one strip.
pub fn diff_support(mu: &Path) -> Result<DiffGraph> {
    let terms = rouquier_terms(mu)?;
    let mut edges = Vec::new();
    for (&d, sources) in &terms.terms {
        let Some(targets) = terms.terms.get(&(d + 1)) else {
            continue;
        };
        for s in sources {
            for t in targets {
                let kind = if is_single_strip(&s.lambda, &t.lambda) {
                    EdgeKind::Guaranteed
                } else if is_single_strip(&t.lambda, &s.lambda) {
                    EdgeKind::Candidate
                } else {
                    continue;
                };
                edges.push(DiffEdge {
                    from_degree: d,
                    from: s.lambda.clone(),
                    to_degree: d + 1,
                    to: t.lambda.clone(),
                    kind,
                });
            }
        }
    }
    let nodes = terms
        .nodes()
        .into_iter()
        .map(|(d, p)| (d, p.to_string()))
        .collect();
    Ok(DiffGraph {
        mu: mu.clone(),
        nodes,
        edges,
    })
}

/// Summary of the homology checks over one path space.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HomologyReport {
    pub n: usize,
    pub i: usize,
    pub euler_failures: Vec<String>,
    pub hom2_failures: Vec<String>,
    pub notless_failures: Vec<String>,
    pub dead_nodes: Vec<String>,
}

impl HomologyReport {
    pub fn passed(&self) -> bool {
        self.euler_failures.is_empty()
            && self.hom2_failures.is_empty()
            && self.notless_failures.is_empty()
            && self.dead_nodes.is_empty()
    }
}

/// Euler identity, degree-two cellular count, the not-less rank triangle and the
/// no-dead-node property of the differential support, for every pair in `(n, i)`.
pub fn verify_homology(n: usize, i: usize) -> Result<HomologyReport> {
    let t = kl_tables(n, i)?;
    let sp = t.space().clone();
    let cell = cellular_rank_table(n, i)?;
    let mut rep = HomologyReport {
        n,
        i,
        ..Default::default()
    };
    for (m, mu) in sp.paths().iter().enumerate() {
        if !euler_check(mu)? {
            rep.euler_failures.push(mu.to_string());
        }
        let g = diff_support(mu)?;
        for (d, lam) in rouquier_terms(mu)?.nodes() {
            if d < 0 && g.edges_from(d, &lam).is_empty() {
                rep.dead_nodes.push(format!("{mu}: ({d}, {lam})"));
            }
        }
        for (l, lam) in sp.paths().iter().enumerate() {
            let r = hom_rank_notless(lam, mu)?;
            if r != q1(lam, mu) || &r != t.h.at(l, m) {
                rep.notless_failures.push(format!("({lam}, {mu})"));
            }
            if l != m && lam.leq(mu) {
                let h2 = hom2_dim(lam, mu)?;
                if cell[l][m].coeff(2) != h2.into() {
                    rep.hom2_failures
                        .push(format!("({lam}, {mu}): {} vs {h2}", cell[l][m]));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> Lp {
        s.parse().unwrap()
    }

    #[test]
    fn hom1_examples() {
        assert_eq!(hom1_dim(&p("DUDU"), &p("UDUD")).unwrap(), 0);
        assert_eq!(hom1_dim(&p("DDUU"), &p("UDUD")).unwrap(), 1);
        assert_eq!(hom1_dim(&p("UDUD"), &p("DDUU")).unwrap(), 1);
        assert_eq!(hom1_dim(&p("DDUU"), &p("DUDU")).unwrap(), 1);
        assert!(hom1_dim(&p("UDUD"), &p("UDUD")).is_err());
    }

    #[test]
    fn hom2_examples() {
        assert_eq!(hom2_dim(&p("DUDU"), &p("UDUD")).unwrap(), 2);
        assert_eq!(hom2_dim(&p("DDUU"), &p("UUDD")).unwrap(), 0);
        assert_eq!(hom2_dim(&p("DDUU"), &p("UDUD")).unwrap(), 0);
        assert!(hom2_dim(&p("UDUD"), &p("DUDU")).is_err());
        assert!(hom2_dim(&p("UDUD"), &p("UDUD")).is_err());
    }

    #[test]
    fn notless_examples() {
        assert_eq!(hom_rank_notless(&p("UDUD"), &p("UDUD")).unwrap(), Lp::one());
        assert_eq!(
            hom_rank_notless(&p("DDUU"), &p("UDUD")).unwrap(),
            lp("v^3+v")
        );
        assert!(hom_rank_notless(&p("UDUD"), &p("DDUU")).unwrap().is_zero());
    }

    #[test]
    fn cellular_examples() {
        assert_eq!(
            cellular_rank(&p("DUDU"), &p("UDUD")).unwrap(),
            lp("v^4+2v^2")
        );
        assert_eq!(cellular_rank(&p("DDUU"), &p("DDUU")).unwrap(), Lp::one());
    }

    #[test]
    fn rouquier_examples() {
        let r = rouquier_terms(&p("UDUD")).unwrap();
        assert_eq!(r.degree(0), vec![&p("UDUD")]);
        let mut d1: Vec<String> = r.degree(-1).iter().map(|x| x.to_string()).collect();
        d1.sort();
        assert_eq!(d1, vec!["DDUU", "DUUD", "UDDU"]);
        assert_eq!(r.degree(-2), vec![&p("DUDU")]);
        assert_eq!(r.length(), 2);
        let r = rouquier_terms(&p("UUDD")).unwrap();
        assert_eq!(r.degree(0), vec![&p("UUDD")]);
        assert_eq!(r.degree(-1), vec![&p("UDUD")]);
        assert_eq!(r.degree(-2), vec![&p("DDUU")]);
        assert_eq!(r.terms.len(), 3);
        let r = rouquier_terms(&p("DDUU")).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.degree(0), vec![&p("DDUU")]);
    }

    #[test]
    fn rouquier_json() {
        let r = rouquier_terms(&p("UUDD")).unwrap();
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["mu"], "UUDD");
        assert_eq!(js["terms"]["-2"][0]["lambda"], "DDUU");
        assert_eq!(js["terms"]["-2"][0]["shift"], -2);
        let back: RouquierTerms = serde_json::from_value(js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn euler_examples() {
        assert!(euler_check(&p("UDUD")).unwrap());
        assert!(euler_check(&p("DDUU")).unwrap());
        for mu in crate::paths::enumerate_paths(6, 3).unwrap() {
            assert!(euler_check(&mu).unwrap(), "{mu}");
        }
    }

    #[test]
    fn diff_examples() {
        let g = diff_support(&p("UDUD")).unwrap();
        let from: Vec<(String, EdgeKind)> = g
            .edges_from(-2, &p("DUDU"))
            .iter()
            .map(|e| (e.to.to_string(), e.kind))
            .collect();
        assert_eq!(from.len(), 3);
        assert!(from.contains(&("UDDU".into(), EdgeKind::Guaranteed)));
        assert!(from.contains(&("DUUD".into(), EdgeKind::Guaranteed)));
        assert!(from.contains(&("DDUU".into(), EdgeKind::Candidate)));
        let g = diff_support(&p("UUDD")).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert!(g.edges.iter().all(|e| e.kind == EdgeKind::Guaranteed));
        assert!(g.edges_from(-2, &p("DDUU"))[0].to == p("UDUD"));
        assert!(g.edges_from(-1, &p("UDUD"))[0].to == p("UUDD"));
        assert!(diff_support(&p("DDUU")).unwrap().edges.is_empty());
    }

    #[test]
    fn rouquier_matches_type2_counts() {
        for n in 2..=6 {
            for i in 1..n {
                let sp = PathSpace::get(n, i).unwrap();
                for mu in sp.paths() {
                    let r = rouquier_terms(mu).unwrap();
                    for (d, lam) in r.nodes() {
                        assert_eq!(crate::dyck::q2(&lam, mu), Lp::v_pow(-d), "{lam} {mu}");
                    }
                    let present = sp
                        .paths()
                        .iter()
                        .filter(|l| !crate::dyck::q2(l, mu).is_zero())
                        .count();
                    assert_eq!(present, r.nodes().len());
                }
            }
        }
    }

    #[test]
    fn sweep_small() {
        for n in 2..=5 {
            for i in 1..n {
                let r = verify_homology(n, i).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }
}
