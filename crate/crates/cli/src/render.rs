//! ASCII pictures of paths, regions and Dyck partitions.
//!
//! Lattice point `(x, y)` is drawn at column `4x` and row `2(top - y)`, so each box is a
//! diamond of `/` and `\` edges with its content at the centre.

use std::collections::BTreeMap;

use dyckgrass_core::{DyckPartition, LatticeBox, Path, Step};

/// Draws both paths and every box of the region as a diamond, filled by `paint`.
pub fn region_picture(
    lower: &Path,
    upper: &Path,
    paint: impl Fn(LatticeBox) -> Option<char>,
) -> String {
    let hl = lower.heights();
    let hu = upper.heights();
    let top = hu.iter().chain(&hl).copied().max().unwrap_or(0);
    let bottom = hu.iter().chain(&hl).copied().min().unwrap_or(0);
    let rows = (2 * (top - bottom) + 1) as usize;
    let cols = 4 * lower.n() + 1;
    let mut grid = vec![vec![' '; cols]; rows];
    let row_of = |y: i32| (2 * (top - y)) as usize;
    let mut put = |r: usize, c: usize, ch: char| {
        if grid[r][c] == ' ' || ch != '.' {
            grid[r][c] = ch;
        }
    };
    for path in [lower, upper] {
        let h = path.heights();
        for (k, s) in path.steps().iter().enumerate() {
            put(row_of(h[k]), 4 * k, '.');
            put(row_of(h[k + 1]), 4 * k + 4, '.');
            match s {
                Step::Up => put(row_of(h[k]) - 1, 4 * k + 2, '/'),
                Step::Down => put(row_of(h[k]) + 1, 4 * k + 2, '\\'),
            }
        }
    }
    for x in 1..lower.n() {
        let mut y = hl[x] + 1;
        while y < hu[x] {
            let (r, c) = (row_of(y), 4 * x);
            put(r - 1, c - 2, '/');
            put(r - 1, c + 2, '\\');
            put(r + 1, c - 2, '\\');
            put(r + 1, c + 2, '/');
            for (rr, cc) in [(r, c - 4), (r, c + 4), (r - 2, c), (r + 2, c)] {
                put(rr, cc, '.');
            }
            if let Some(ch) = paint(LatticeBox::new(x as i32, y)) {
                put(r, c, ch);
            }
            y += 2;
        }
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Single-character label: digits, then capital letters from 10.
pub fn label_char(label: usize) -> char {
    char::from_digit(label as u32, 36).map_or('?', |c| c.to_ascii_uppercase())
}

/// The region between the two paths with each box showing its label.
pub fn labelled_region(lower: &Path, upper: &Path) -> String {
    region_picture(lower, upper, |b| Some(label_char(b.label())))
}

/// Letter used for the `k`-th strip.
pub fn strip_char(k: usize) -> char {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    LETTERS.get(k).map_or('*', |&c| c as char)
}

/// The partition's region with every strip painted in its own letter.
pub fn painted_partition(p: &DyckPartition) -> String {
    let owner: BTreeMap<LatticeBox, usize> = p
        .strips()
        .iter()
        .enumerate()
        .flat_map(|(k, s)| s.boxes().iter().map(move |b| (*b, k)))
        .collect();
    region_picture(p.lower(), p.upper(), |b| {
        owner.get(&b).map(|&k| strip_char(k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dyckgrass_core::dyck::enumerate_partitions;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    #[test]
    fn full_region_of_four_two() {
        let pic = labelled_region(&p("DDUU"), &p("UUDD"));
        let expect = [
            "        .",
            "      /   \\",
            "    .   2   .",
            "  /   \\   /   \\",
            ".   1   .   3   .",
            "  \\   /   \\   /",
            "    .   2   .",
            "      \\   /",
            "        .",
        ];
        assert_eq!(pic.lines().collect::<Vec<_>>(), expect);
    }

    #[test]
    fn two_separate_boxes() {
        let pic = labelled_region(&p("DUDU"), &p("UDUD"));
        assert_eq!(pic.lines().nth(2).unwrap(), ".   1   .   3   .");
        assert_eq!(pic.lines().count(), 5);
    }

    #[test]
    fn equal_paths_have_no_boxes() {
        let pic = labelled_region(&p("DUDU"), &p("DUDU"));
        assert!(!pic.chars().any(|c| c.is_ascii_digit()));
    }

    #[test]
    fn painted_strips_distinct() {
        let parts = enumerate_partitions(&p("DDUU"), &p("UUDD")).unwrap();
        for part in &parts {
            let pic = painted_partition(part);
            for k in 0..part.size() {
                let c = strip_char(k);
                assert_eq!(pic.matches(c).count(), part.strips()[k].len(), "{pic}");
            }
        }
    }

    #[test]
    fn labels() {
        assert_eq!(label_char(7), '7');
        assert_eq!(label_char(10), 'A');
        assert_eq!(strip_char(0), 'a');
        assert_eq!(strip_char(100), '*');
    }
}
