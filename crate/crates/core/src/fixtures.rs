//! Golden fixture files: writers, readers and round-trip checks.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dyck::{enumerate_partitions, DyckPartition, DyckStrip};
use crate::error::{Error, Result};
use crate::hecke::kl_tables;
use crate::homology::{rouquier_terms, RouquierTerms};
use crate::laurent::LaurentPolynomial;
use crate::paths::{enumerate_paths, Path};
use crate::zelevinsky::{neat_orders_capped, translation_pair, TranslationPair, NEAT_ORDER_CAP};

/// Environment variable naming the fixture directory.
pub const FIXTURE_DIR_VAR: &str = "DYCKGRASS_FIXTURE_DIR";

/// Partition lists are written only up to this `n`.
pub const PARTITION_FIXTURE_MAX_N: usize = 5;

/// One row of an `h` or `g` table.
pub type TableRow = (Path, Path, LaurentPolynomial);

fn io_err(path: &FsPath, e: std::io::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

fn json_err(path: &FsPath, e: serde_json::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

/// Parses the `lambda,mu,poly` CSV written by [`crate::hecke::PolyTable::to_csv`].
pub fn read_table_csv(text: &str) -> Result<Vec<TableRow>> {
    let mut lines = text.lines();
    if lines.next() != Some("lambda,mu,poly") {
        return Err(Error::Parse("missing `lambda,mu,poly` header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let mut f = l.split(',');
            let (Some(a), Some(b), Some(c), None) = (f.next(), f.next(), f.next(), f.next()) else {
                return Err(Error::Parse(format!("bad table row {l:?}")));
            };
            Ok((a.parse()?, b.parse()?, c.parse()?))
        })
        .collect()
}

/// The partitions of one region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub lambda: String,
    pub mu: String,
    pub partitions: Vec<Vec<DyckStrip>>,
}

impl PartitionRecord {
    pub fn build(lam: &Path, mu: &Path) -> Result<Self> {
        let partitions = enumerate_partitions(lam, mu)?
            .iter()
            .map(|p| p.strips().to_vec())
            .collect();
        Ok(Self {
            lambda: lam.to_string(),
            mu: mu.to_string(),
            partitions,
        })
    }

    /// Re-validates every stored partition against its region.
    pub fn partitions(&self) -> Result<Vec<DyckPartition>> {
        let lam: Path = self.lambda.parse()?;
        let mu: Path = self.mu.parse()?;
        self.partitions
            .iter()
            .map(|s| DyckPartition::new(&lam, &mu, s.clone()))
            .collect()
    }
}

/// The neat-order translation pairs of one path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub lambda: String,
    pub order: Vec<usize>,
    pub pair: TranslationPair,
}

fn table_name(kind: &str, n: usize, i: usize) -> String {
    format!("{kind}_{n}_{i}.csv")
}

fn json_name(kind: &str, n: usize, i: usize) -> String {
    format!("{kind}_{n}_{i}.json")
}

fn write(dir: &FsPath, name: String, body: String, out: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| io_err(&path, e))?;
    out.push(path);
    Ok(())
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes `h`, `g`, Rouquier and translation-pair fixtures for `2 <= n <= max_n`, and
/// partition lists up to [`PARTITION_FIXTURE_MAX_N`]. Returns the written files.
pub fn emit_fixtures(dir: &FsPath, max_n: usize) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut out = Vec::new();
    for n in 2..=max_n {
        for i in 1..n {
            let t = kl_tables(n, i)?;
            write(dir, table_name("h", n, i), t.h.to_csv(), &mut out)?;
            write(dir, table_name("g", n, i), t.g.to_csv(), &mut out)?;
            let paths = enumerate_paths(n, i)?;
            let rq: Vec<RouquierTerms> = paths.iter().map(rouquier_terms).collect::<Result<_>>()?;
            write(dir, json_name("rouquier", n, i), pretty(&rq), &mut out)?;
            let mut pairs = Vec::new();
            for lam in &paths {
                for order in neat_orders_capped(lam, NEAT_ORDER_CAP) {
                    let pair = translation_pair(lam, &order)?;
                    pairs.push(PairRecord {
                        lambda: lam.to_string(),
                        order,
                        pair,
                    });
                }
            }
            write(dir, json_name("pairs", n, i), pretty(&pairs), &mut out)?;
            if n <= PARTITION_FIXTURE_MAX_N {
                let mut recs = Vec::new();
                for lam in &paths {
                    for mu in paths.iter().filter(|mu| lam.leq(mu)) {
                        recs.push(PartitionRecord::build(lam, mu)?);
                    }
                }
                write(dir, json_name("partitions", n, i), pretty(&recs), &mut out)?;
            }
        }
    }
    Ok(out)
}

fn read_text(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| json_err(path, e))
}

/// Parses a fixture file by name and writes it back; true when the bytes agree.
pub fn round_trip(path: &FsPath) -> Result<bool> {
    let text = read_text(path)?;
    let name = path
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or_default();
    let again = if name.ends_with(".csv") {
        let rows = read_table_csv(&text)?;
        let mut s = String::from("lambda,mu,poly\n");
        for (a, b, c) in rows {
            s.push_str(&format!("{a},{b},{c}\n"));
        }
        s
    } else if name.starts_with("rouquier_") {
        pretty(&read_json::<Vec<RouquierTerms>>(path)?)
    } else if name.starts_with("pairs_") {
        let recs: Vec<PairRecord> = read_json(path)?;
        for r in &recs {
            let rebuilt = TranslationPair::new(r.pair.i_vec.clone(), r.pair.j_vec.clone())?;
            if rebuilt != r.pair {
                return Ok(false);
            }
        }
        pretty(&recs)
    } else if name.starts_with("partitions_") {
        let recs: Vec<PartitionRecord> = read_json(path)?;
        for r in &recs {
            r.partitions()?;
        }
        pretty(&recs)
    } else {
        return Err(Error::Parse(format!("unknown fixture kind {name:?}")));
    };
    Ok(again == text)
}

/// Mismatches between the fixture files in `dir` and freshly computed values.
pub fn golden_check(dir: &FsPath) -> Result<Vec<String>> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    entries.sort();
    let mut bad = Vec::new();
    for path in entries {
        let Some(name) = path.file_name().and_then(|s| s.to_str()).map(str::to_owned) else {
            continue;
        };
        let Some((kind, n, i)) = parse_name(&name) else {
            continue;
        };
        let ok = match kind.as_str() {
            "h" | "g" => {
                let t = kl_tables(n, i)?;
                let table = if kind == "h" { &t.h } else { &t.g };
                read_table_csv(&read_text(&path)?)? == table.rows()
            }
            "rouquier" => {
                let stored: Vec<RouquierTerms> = read_json(&path)?;
                let fresh: Vec<RouquierTerms> = enumerate_paths(n, i)?
                    .iter()
                    .map(rouquier_terms)
                    .collect::<Result<_>>()?;
                stored == fresh
            }
            "partitions" => {
                let stored: Vec<PartitionRecord> = read_json(&path)?;
                stored.iter().all(|r| {
                    let (Ok(l), Ok(m)) = (r.lambda.parse::<Path>(), r.mu.parse::<Path>()) else {
                        return false;
                    };
                    PartitionRecord::build(&l, &m).is_ok_and(|f| &f == r)
                })
            }
            "pairs" => {
                let stored: Vec<PairRecord> = read_json(&path)?;
                stored.iter().all(|r| {
                    r.lambda
                        .parse::<Path>()
                        .is_ok_and(|l| translation_pair(&l, &r.order).is_ok_and(|p| p == r.pair))
                })
            }
            _ => continue,
        };
        if !ok {
            bad.push(name);
        }
    }
    Ok(bad)
}

fn parse_name(name: &str) -> Option<(String, usize, usize)> {
    let stem = name
        .strip_suffix(".csv")
        .or_else(|| name.strip_suffix(".json"))?;
    let mut parts = stem.rsplitn(3, '_');
    let i = parts.next()?.parse().ok()?;
    let n = parts.next()?.parse().ok()?;
    Some((parts.next()?.to_string(), n, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(parse_name("h_4_2.csv"), Some(("h".into(), 4, 2)));
        assert_eq!(
            parse_name("partitions_5_3.json"),
            Some(("partitions".into(), 5, 3))
        );
        assert_eq!(parse_name("README"), None);
    }

    #[test]
    fn csv_reader() {
        let t = kl_tables(4, 2).unwrap();
        let rows = read_table_csv(&t.h.to_csv()).unwrap();
        assert_eq!(rows.len(), 36);
        assert_eq!(rows, t.h.rows());
        assert!(read_table_csv("a,b\n").is_err());
        assert!(read_table_csv("lambda,mu,poly\nUD,DU\n").is_err());
    }

    #[test]
    fn emit_and_read_back() {
        let dir = std::env::temp_dir().join(format!("dyckgrass-fixtures-{}", std::process::id()));
        let files = emit_fixtures(&dir, 4).unwrap();
        assert!(!files.is_empty());
        for f in &files {
            assert!(round_trip(f).unwrap(), "{}", f.display());
        }
        assert!(golden_check(&dir).unwrap().is_empty());
        let h = dir.join("h_3_1.csv");
        let text = fs::read_to_string(&h).unwrap().replacen(",1\n", ",v\n", 1);
        fs::write(&h, text).unwrap();
        assert_eq!(golden_check(&dir).unwrap(), vec!["h_3_1.csv".to_string()]);
        fs::remove_dir_all(&dir).unwrap();
    }
}
