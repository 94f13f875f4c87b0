//! The end-to-end verification suite, one entry per acceptance criterion.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::demazure::{check_demaformula, demazure_word, positivity_sweep, reduced_words};
use crate::dyck::{
    admissible_orders, conf1, height_sort, is_admissible, partition_succ, DyckPartition,
    StripOrdering,
};
use crate::equivariant::{check_commutativity, verify_pieri_gkm};
use crate::error::Result;
use crate::hecke::{crucial_sweep, kl_tables, verify_szj};
use crate::homology::{euler_check, rouquier_terms, verify_homology};
use crate::laurent::LaurentPolynomial as Lp;
use crate::mpoly::MPoly;
use crate::paths::{enumerate_paths, region_boxes, Path};
use crate::perm::Permutation;
use crate::zelevinsky::{
    bs_character, bs_character_module, neat_orders_capped, translation_pair, TranslationPair,
    NEAT_ORDER_CAP,
};

/// Size limits for each check.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub szj_max_n: usize,
    pub small_max_n: usize,
    pub euler_max_n: usize,
    pub hom_max_n: usize,
    pub braid_max_n: usize,
    pub demaformula_max_n: usize,
    pub demaformula_trials: usize,
    pub positivity_max_n: usize,
    pub pieri_max_n: usize,
    pub commutativity_trials: usize,
    pub poset_max_n: usize,
    pub two_row_max_n: usize,
    pub crucial_max_n: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn full() -> Self {
        Self {
            szj_max_n: 8,
            small_max_n: 6,
            euler_max_n: 7,
            hom_max_n: 6,
            braid_max_n: 5,
            demaformula_max_n: 5,
            demaformula_trials: 100,
            positivity_max_n: 6,
            pieri_max_n: 5,
            commutativity_trials: 50,
            poset_max_n: 6,
            two_row_max_n: 8,
            crucial_max_n: 5,
            seed: 0,
        }
    }

    /// [`SuiteConfig::full`] with every size limit capped at `max_n`.
    pub fn capped(max_n: usize, seed: u64) -> Self {
        let f = Self::full();
        let c = |x: usize| x.min(max_n);
        Self {
            szj_max_n: c(f.szj_max_n),
            small_max_n: c(f.small_max_n),
            euler_max_n: c(f.euler_max_n),
            hom_max_n: c(f.hom_max_n),
            braid_max_n: c(f.braid_max_n),
            demaformula_max_n: c(f.demaformula_max_n),
            positivity_max_n: c(f.positivity_max_n),
            pieri_max_n: c(f.pieri_max_n),
            poset_max_n: c(f.poset_max_n),
            two_row_max_n: c(f.two_row_max_n),
            crucial_max_n: c(f.crucial_max_n),
            seed,
            ..f
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Deterministic for a fixed configuration.
    pub detail: String,
    /// Wall-clock measurements, kept apart from `detail`.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl CriterionResult {
    /// The result line without timings.
    pub fn summary(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({})",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.summary())?;
        for (k, (what, secs)) in self.timings.iter().enumerate() {
            write!(f, "{}{what} {secs:.2}s", if k == 0 { " [" } else { ", " })?;
        }
        if !self.timings.is_empty() {
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn spaces(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n)
        .flat_map(|n| (1..n).map(move |i| (n, i)))
        .collect()
}

fn first<T: std::fmt::Debug>(v: &[T]) -> String {
    v.first()
        .map_or_else(String::new, |x| format!("; first: {x:?}"))
}

struct Outcome {
    passed: bool,
    detail: String,
    timings: Vec<(String, f64)>,
}

impl From<(bool, String)> for Outcome {
    fn from((passed, detail): (bool, String)) -> Self {
        Self {
            passed,
            detail,
            timings: Vec::new(),
        }
    }
}

type Check = fn(&SuiteConfig) -> Result<Outcome>;

/// The criteria in order.
fn criteria() -> Vec<(u32, &'static str, Check)> {
    vec![
        (1, "type-1 counts = h", szj_direction_one as Check),
        (2, "type-2 counts = g, unique", szj_direction_two),
        (3, "g is the inverse of h", inverse_identity),
        (4, "worked examples", worked_examples),
        (5, "small resolution characters", small_resolutions),
        (6, "Euler identity", euler_identity),
        (7, "Hom dimensions", hom_dimensions),
        (8, "Demazure suite", demazure_suite),
        (9, "equivariant Pieri", pieri_suite),
        (10, "partition orders", poset_suite),
        (11, "valley decomposition", crucial_suite),
    ]
}

/// Identifiers and names of the criteria.
pub fn criterion_names() -> Vec<(u32, &'static str)> {
    criteria()
        .into_iter()
        .map(|(id, name, _)| (id, name))
        .collect()
}

/// Runs every criterion; a criterion that errors counts as failed.
pub fn run_suite(cfg: &SuiteConfig, report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    run_selected(cfg, &[], report)
}

/// Runs the criteria whose ids are listed, or all of them when `ids` is empty.
pub fn run_selected(
    cfg: &SuiteConfig,
    ids: &[u32],
    mut report: impl FnMut(&CriterionResult),
) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for (id, name, check) in criteria() {
        if !ids.is_empty() && !ids.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let mut o = check(cfg).unwrap_or_else(|e| (false, format!("error: {e}")).into());
        o.timings.push(("total".into(), t.elapsed().as_secs_f64()));
        let r = CriterionResult {
            id,
            name,
            passed: o.passed,
            detail: o.detail,
            timings: o.timings,
        };
        report(&r);
        out.push(r);
    }
    out
}

fn szj_reports(cfg: &SuiteConfig) -> Result<Vec<crate::hecke::SzjReport>> {
    spaces(cfg.szj_max_n)
        .into_iter()
        .map(|(n, i)| verify_szj(n, i, false))
        .collect()
}

fn szj_direction_one(cfg: &SuiteConfig) -> Result<Outcome> {
    let reps = szj_reports(cfg)?;
    let pairs: usize = reps.iter().map(|r| r.pairs).sum();
    let bad: Vec<&String> = reps
        .iter()
        .flat_map(|r| &r.mismatches)
        .filter(|m| m.starts_with("q1"))
        .collect();
    let top = Instant::now();
    let n = cfg.szj_max_n;
    verify_szj(n, n / 2, false)?;
    let top = top.elapsed().as_secs_f64();
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: format!(
            "{pairs} ordered pairs, n <= {n}, {} mismatches{}",
            bad.len(),
            first(&bad)
        ),
        timings: vec![(format!("({n},{}) single-threaded", n / 2), top)],
    })
}

fn szj_direction_two(cfg: &SuiteConfig) -> Result<Outcome> {
    let reps = szj_reports(cfg)?;
    let bad: Vec<&String> = reps
        .iter()
        .flat_map(|r| &r.mismatches)
        .filter(|m| m.starts_with("q2"))
        .collect();
    let max2 = reps.iter().map(|r| r.max_type2).max().unwrap_or(0);
    Ok((
        bad.is_empty() && max2 <= 1,
        format!(
            "{} mismatches, at most {max2} type-2 partition per region{}",
            bad.len(),
            first(&bad)
        ),
    )
        .into())
}

fn inverse_identity(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut bad = Vec::new();
    for (n, i) in spaces(cfg.szj_max_n) {
        let t = kl_tables(n, i)?;
        let sp = t.space();
        let size = sp.len();
        let signed = |a: usize, b: usize| {
            let g = t.g.at(a, b);
            if (sp.length(a) + sp.length(b)) % 2 == 1 {
                -g
            } else {
                g.clone()
            }
        };
        let prod = |left: bool, a: usize, b: usize| {
            let mut acc = Lp::zero();
            for k in 0..size {
                let (x, y) = if left {
                    (signed(a, k), t.h.at(k, b).clone())
                } else {
                    (t.h.at(a, k).clone(), signed(k, b))
                };
                if !x.is_zero() && !y.is_zero() {
                    acc += &(&x * &y);
                }
            }
            acc
        };
        for a in 0..size {
            for b in 0..size {
                let want = if a == b { Lp::one() } else { Lp::zero() };
                if prod(true, a, b) != want || prod(false, a, b) != want {
                    bad.push(format!("({n},{i}) entry ({a},{b})"));
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "both products are the identity for n <= {}{}",
            cfg.szj_max_n,
            first(&bad)
        ),
    )
        .into())
}

fn worked_examples(_: &SuiteConfig) -> Result<Outcome> {
    let mut notes = Vec::new();
    // (a) the eleven-letter word in S_8
    let w = Permutation::from_word(8, &[6, 1, 3, 5, 7, 2, 4, 6, 3, 5, 4]);
    let lam = Path::path_of_perm(&w, 8, 4)?;
    let region = region_boxes(&Path::identity(8, 4)?, &lam)?;
    let mut labels: Vec<usize> = region.boxes.iter().map(|b| b.label()).collect();
    labels.sort();
    let a = lam.to_string() == "UDUDUUDD"
        && lam.length() == 11
        && w.length() == 11
        && labels == [1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7];
    notes.push(format!(
        "(a) {lam} length {} {}",
        lam.length(),
        if a { "ok" } else { "wrong" }
    ));
    // (b) both presentations for UDUD
    let udud: Path = "UDUD".parse()?;
    let expected = [
        TranslationPair::from_slices(&[&[], &[1], &[1], &[1, 3]], &[&[1, 3], &[1, 2], &[1, 3]])?,
        TranslationPair::from_slices(&[&[], &[3], &[3], &[1, 3]], &[&[1, 3], &[2, 3], &[1, 3]])?,
    ];
    let mut got: Vec<TranslationPair> = neat_orders_capped(&udud, NEAT_ORDER_CAP)
        .iter()
        .map(|o| translation_pair(&udud, o))
        .collect::<Result<_>>()?;
    got.sort_by_key(|p| format!("{p}"));
    let mut want = expected.to_vec();
    want.sort_by_key(|p| format!("{p}"));
    let b = got == want && got.iter().all(|p| p.shift == 3);
    notes.push(format!(
        "(b) {} pairs {}",
        got.len(),
        if b { "ok" } else { "wrong" }
    ));
    // (c) the complex of UDUD
    let r = rouquier_terms(&udud)?;
    let names = |d: i32| {
        let mut v: Vec<String> = r.degree(d).iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    };
    let c = r.terms.len() == 3
        && names(0) == ["UDUD"]
        && names(-1) == ["DDUU", "DUUD", "UDDU"]
        && names(-2) == ["DUDU"]
        && r.terms.iter().all(|(d, v)| v.iter().all(|s| s.shift == *d));
    notes.push(format!(
        "(c) degrees {:?} {}",
        r.terms.keys().collect::<Vec<_>>(),
        if c { "ok" } else { "wrong" }
    ));
    Ok((a && b && c, notes.join(", ")).into())
}

fn small_resolutions(cfg: &SuiteConfig) -> Result<Outcome> {
    let jobs: Vec<(usize, usize, Path)> = spaces(cfg.small_max_n)
        .into_iter()
        .flat_map(|(n, i)| {
            enumerate_paths(n, i)
                .unwrap()
                .into_iter()
                .map(move |l| (n, i, l))
        })
        .collect();
    let results: Vec<Result<(usize, Vec<String>)>> = jobs
        .par_iter()
        .map(|(n, i, lam)| {
            let t = kl_tables(*n, *i)?;
            let expect = t.kl_element(lam)?;
            let mut bad = Vec::new();
            let orders = neat_orders_capped(lam, NEAT_ORDER_CAP);
            let mut chars = Vec::new();
            for o in &orders {
                let pair = translation_pair(lam, o)?;
                if !pair.is_reduced(*n)?
                    || pair.end_point(*n)? != lam.perm_of_path()
                    || pair.shift != lam.length() as i64
                {
                    bad.push(format!("{lam} {o:?}: pair"));
                }
                let alg = bs_character(&pair, *n)?;
                if alg != expect.to_hecke() {
                    bad.push(format!("{lam} {o:?}: algebra route"));
                }
                if bs_character_module(&pair, *n, *i)? != expect {
                    bad.push(format!("{lam} {o:?}: module route"));
                }
                chars.push(alg);
            }
            if chars.windows(2).any(|w| w[0] != w[1]) {
                bad.push(format!("{lam}: orderings disagree"));
            }
            Ok((orders.len(), bad))
        })
        .collect();
    let mut total = 0;
    let mut bad = Vec::new();
    for r in results {
        let (k, b) = r?;
        total += k;
        bad.extend(b);
    }
    Ok((
        bad.is_empty(),
        format!(
            "{} paths, {total} neat orderings, n <= {}, both character routes{}",
            jobs.len(),
            cfg.small_max_n,
            first(&bad)
        ),
    )
        .into())
}

fn euler_identity(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut count = 0;
    let mut bad = Vec::new();
    for (n, i) in spaces(cfg.euler_max_n) {
        for mu in enumerate_paths(n, i)? {
            count += 1;
            if !euler_check(&mu)? {
                bad.push(mu.to_string());
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{count} paths, n <= {}{}", cfg.euler_max_n, first(&bad)),
    )
        .into())
}

fn hom_dimensions(cfg: &SuiteConfig) -> Result<Outcome> {
    let reps: Vec<_> = spaces(cfg.hom_max_n)
        .into_par_iter()
        .map(|(n, i)| verify_homology(n, i))
        .collect::<Result<_>>()?;
    let h2: Vec<&String> = reps.iter().flat_map(|r| &r.hom2_failures).collect();
    let nl: Vec<&String> = reps.iter().flat_map(|r| &r.notless_failures).collect();
    Ok((
        h2.is_empty() && nl.is_empty(),
        format!(
            "n <= {}: {} degree-two mismatches, {} not-less mismatches{}{}",
            cfg.hom_max_n,
            h2.len(),
            nl.len(),
            first(&h2),
            first(&nl)
        ),
    )
        .into())
}

fn demazure_suite(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut words = 0;
    let mut braid_ok = true;
    for n in 2..=cfg.braid_max_n {
        for w in Permutation::all(n) {
            let f = MPoly::random_sparse(n, w.length() as u32 + 1, 6, 5, &mut rng);
            let ws = reduced_words(&w);
            let base = demazure_word(&ws[0], &f)?;
            for wd in &ws[1..] {
                words += 1;
                braid_ok &= demazure_word(wd, &f)? == base;
            }
        }
    }
    let mut xs = 0;
    let mut formula_ok = true;
    for n in 2..=cfg.demaformula_max_n {
        for x in Permutation::all(n)
            .into_iter()
            .filter(|x| (1..=4).contains(&x.length()))
        {
            xs += 1;
            formula_ok &= check_demaformula(&x, cfg.demaformula_trials, &mut rng)?;
        }
    }
    let mut ws = 0;
    let mut pos_ok = true;
    for (n, i) in spaces(cfg.positivity_max_n) {
        let r = positivity_sweep(n, i, &MPoly::partial_sum(n, i))?;
        ws += r.entries.len();
        pos_ok &= r.passed();
    }
    Ok((
        braid_ok && formula_ok && pos_ok,
        format!(
            "braid {} ({words} extra words), expansion {} ({xs} elements x {} trials), positivity {} ({ws} cosets)",
            ok(braid_ok),
            ok(formula_ok),
            cfg.demaformula_trials,
            ok(pos_ok)
        ),
    )
    .into())
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn pieri_suite(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut checks = 0;
    let mut bad = Vec::new();
    for (n, i) in spaces(cfg.pieri_max_n) {
        let r = verify_pieri_gkm(n, i)?;
        checks += r.checks;
        bad.extend(r.failures);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut comm = true;
    for (n, i) in [(4, 2), (5, 2)]
        .into_iter()
        .filter(|&(n, _)| n <= cfg.pieri_max_n.max(4))
    {
        comm &= check_commutativity(n, i, cfg.commutativity_trials, &mut rng)?;
    }
    Ok((
        bad.is_empty() && comm,
        format!(
            "{checks} localized values, n <= {}; commutativity {} ({} trials per space){}",
            cfg.pieri_max_n,
            ok(comm),
            cfg.commutativity_trials,
            first(&bad)
        ),
    )
        .into())
}

/// Orderings sorted by height, with every arrangement inside each equal-height block.
pub fn height_ascending_orders(p: &DyckPartition) -> Vec<StripOrdering> {
    let mut blocks: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (k, s) in p.strips().iter().enumerate() {
        blocks.entry(s.height()).or_default().push(k);
    }
    let mut out = vec![Vec::new()];
    for block in blocks.values() {
        let perms = permutations(block);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend(p);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(StripOrdering).collect()
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn has_equal_size_succ(c: &[DyckPartition]) -> Result<bool> {
    for a in c {
        for b in c {
            if a.size() == b.size() && partition_succ(a, b)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn poset_suite(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut order_bad = Vec::new();
    let mut adm_bad = Vec::new();
    let mut regions = 0;
    let mut orderings = 0;
    for (n, i) in spaces(cfg.poset_max_n) {
        let paths = enumerate_paths(n, i)?;
        for lam in &paths {
            for mu in paths.iter().filter(|mu| lam.leq(mu)) {
                regions += 1;
                let c = conf1(lam, mu);
                let m = c.len();
                let mut succ = vec![vec![false; m]; m];
                for a in 0..m {
                    for b in 0..m {
                        succ[a][b] = partition_succ(&c[a], &c[b])?;
                    }
                }
                for a in 0..m {
                    if succ[a][a] {
                        order_bad.push(format!("{lam} {mu}: reflexive"));
                    }
                    for b in 0..m {
                        if succ[a][b] && succ[b][a] && a != b {
                            order_bad.push(format!("{lam} {mu}: not antisymmetric"));
                        }
                        for d in 0..m {
                            if succ[a][b] && succ[b][d] && !succ[a][d] {
                                order_bad.push(format!("{lam} {mu}: not transitive"));
                            }
                        }
                    }
                }
                for p in &c {
                    let adm = admissible_orders(p, lam)?;
                    if adm.is_empty() {
                        adm_bad.push(format!("{lam} {mu}: no admissible ordering"));
                    }
                    for o in &adm {
                        if !is_admissible(p, &height_sort(p, o)?, lam)? {
                            adm_bad.push(format!(
                                "{lam} {mu}: height sort of {:?} not admissible",
                                o.0
                            ));
                        }
                    }
                    for o in height_ascending_orders(p) {
                        orderings += 1;
                        if !is_admissible(p, &o, lam)? {
                            adm_bad.push(format!("{lam} {mu}: {:?} not admissible", o.0));
                        }
                    }
                }
            }
        }
    }
    let mut narrow = 0;
    let mut two_row_bad = Vec::new();
    for (n, i) in spaces(cfg.two_row_max_n) {
        let paths = enumerate_paths(n, i)?;
        for mu in &paths {
            let shape = mu.young_shape();
            if shape.len() > 2 && shape.first().copied().unwrap_or(0) > 2 {
                continue;
            }
            for lam in paths.iter().filter(|l| l.leq(mu)) {
                narrow += 1;
                if has_equal_size_succ(&conf1(lam, mu))? {
                    two_row_bad.push(format!("{lam} {mu}"));
                }
            }
        }
    }
    let seven = has_equal_size_succ(&conf1(&Path::identity(7, 3)?, &"UUDUDUD".parse()?))?;
    let passed = order_bad.is_empty() && adm_bad.is_empty() && two_row_bad.is_empty() && seven;
    Ok((
        passed,
        format!(
            "strict order on {regions} regions {}, {orderings} height-ascending orderings {}, two-row/two-column {} ({narrow} regions, n <= {}), (7,3) equal-size pair {}{}{}{}",
            ok(order_bad.is_empty()),
            ok(adm_bad.is_empty()),
            ok(two_row_bad.is_empty()),
            cfg.two_row_max_n,
            if seven { "found" } else { "missing" },
            first(&order_bad),
            first(&adm_bad),
            first(&two_row_bad)
        ),
    )
    .into())
}

fn crucial_suite(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut count = 0;
    let mut failures = Vec::new();
    for (n, i) in spaces(cfg.crucial_max_n) {
        let (c, f) = crucial_sweep(n, i)?;
        count += c;
        failures.extend(f.into_iter().map(|r| format!("{} -> {}", r.w, r.xw)));
    }
    Ok((
        failures.is_empty(),
        format!(
            "{count} configurations, n <= {}{}",
            cfg.crucial_max_n,
            first(&failures)
        ),
    )
        .into())
}
