//! Instance generators and lookup shared by the harness tests.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// Mycielski graph `myciel<j>`: `j - 1` Mycielski steps applied to K2.
pub fn mycielski(j: usize) -> (usize, Vec<(usize, usize)>) {
    assert!(j >= 2);
    let mut n = 2;
    let mut edges = vec![(0, 1)];
    for _ in 1..j {
        // Vertices 0..n keep their edges, n..2n shadow them, 2n is the apex.
        let mut next = edges.clone();
        for &(u, v) in &edges {
            next.push((u, n + v));
            next.push((v, n + u));
        }
        for i in 0..n {
            next.push((n + i, 2 * n));
        }
        n = 2 * n + 1;
        edges = next;
    }
    (n, edges)
}

/// Queen graph `queen<r>_<c>`: cells of an r×c board, adjacent when a queen
/// on one attacks the other.
pub fn queen(rows: usize, cols: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rows * cols;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ra, ca) = ((a / cols) as i64, (a % cols) as i64);
            let (rb, cb) = ((b / cols) as i64, (b % cols) as i64);
            if ra == rb || ca == cb || (ra - rb).abs() == (ca - cb).abs() {
                edges.push((a, b));
            }
        }
    }
    (n, edges)
}

pub fn dimacs(name: &str, n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = format!("c {name}\np edge {n} {}\n", edges.len());
    for &(u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Generated form of a named benchmark, for the families that have an
/// exact construction.
pub fn generate(name: &str) -> Option<String> {
    let (n, edges) = match (name.strip_prefix("myciel"), name.strip_prefix("queen")) {
        (Some(j), _) => mycielski(j.parse().ok()?),
        (_, Some(dims)) => {
            let (r, c) = dims.split_once('_')?;
            queen(r.parse().ok()?, c.parse().ok()?)
        }
        _ => return None,
    };
    Some(dimacs(name, n, &edges))
}

/// Directories searched for `<name>.col`: `$RLS_INSTANCE_DIR`, then
/// `instances/` at the workspace root.
pub fn instance_dirs() -> Vec<PathBuf> {
    let mut dirs = Vec::new();
    if let Some(d) = std::env::var_os("RLS_INSTANCE_DIR") {
        dirs.push(PathBuf::from(d));
    }
    dirs.push(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances"));
    dirs
}

pub fn find_instance(name: &str) -> Option<PathBuf> {
    instance_dirs()
        .into_iter()
        .map(|d| d.join(format!("{name}.col")))
        .find(|p| p.is_file())
}

/// A benchmark file on disk: found, or generated into `scratch`.
pub fn instance(name: &str, scratch: &Path) -> Option<PathBuf> {
    if let Some(p) = find_instance(name) {
        return Some(p);
    }
    let text = generate(name)?;
    let path = scratch.join(format!("{name}.col"));
    fs::write(&path, text).ok()?;
    Some(path)
}

pub fn write_instance(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> PathBuf {
    let path = dir.join(format!("{name}.col"));
    fs::write(&path, dimacs(name, n, edges)).unwrap();
    path
}

pub fn triangle(dir: &Path) -> PathBuf {
    write_instance(dir, "k3", 3, &[(0, 1), (1, 2), (0, 2)])
}

/// Parses a profile CSV into `(generation, best_cost, elapsed_ms)` rows,
/// checking the header.
pub fn read_profile(path: &Path) -> Vec<(u64, u64, u64)> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("generation,best_cost,elapsed_ms"),
        "{}",
        path.display()
    );
    lines
        .map(|l| {
            let f: Vec<u64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(f.len(), 3, "bad row {l:?} in {}", path.display());
            (f[0], f[1], f[2])
        })
        .collect()
}

pub fn profile_is_monotone(rows: &[(u64, u64, u64)]) -> bool {
    !rows.is_empty()
        && rows
            .windows(2)
            .all(|w| w[0].0 <= w[1].0 && w[0].1 >= w[1].1 && w[0].2 <= w[1].2)
}
