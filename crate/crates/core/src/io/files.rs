use std::fs;
use std::path::{Path, PathBuf};

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_GIRTH};
use crate::io::graph6::{decode_graph6, HEADER};
use crate::pipeline::store::BestStore;

pub fn snapshot_file_name(order: usize, tag: &str) -> String {
    format!("best_n{order}_{tag}.g6")
}

/// Reads one graph per line, skipping blank and `>>` header lines.
/// Every graph must have girth at least 5.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let at = |source: Error| Error::SeedFile {
            path: path.to_path_buf(),
            line: i + 1,
            source: Box::new(source),
        };
        let line = line.trim_end_matches('\r');
        let line = line.strip_prefix(HEADER).unwrap_or(line);
        if line.is_empty() || line.starts_with(">>") {
            continue;
        }
        let g = decode_graph6(line).map_err(at)?;
        if !g.girth_at_least(DEFAULT_GIRTH) {
            return Err(at(Error::GirthViolation {
                threshold: DEFAULT_GIRTH,
            }));
        }
        graphs.push(g);
    }
    Ok(graphs)
}

pub(crate) fn g6_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "g6") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Builds the initial store from every `.g6` file in `dir`.
///
/// Orders outside `[n_low, n_high]` are skipped with a warning. When `dir`
/// is absent or holds no `.g6` files, every order in range starts from its
/// edgeless graph.
pub fn load_seed_store(
    dir: Option<&Path>,
    n_low: usize,
    n_high: usize,
    capacity: usize,
) -> Result<BestStore> {
    let mut store = BestStore::new(capacity);
    let files = match dir {
        Some(d) if d.exists() => {
            if !d.is_dir() {
                return Err(Error::Usage(format!("{} is not a directory", d.display())));
            }
            g6_files(d)?
        }
        _ => Vec::new(),
    };
    if files.is_empty() {
        for n in n_low..=n_high {
            store.insert(Graph::empty(n)?)?;
        }
        return Ok(store);
    }
    for path in files {
        for g in read_graph6_file(&path)? {
            if (n_low..=n_high).contains(&g.order()) {
                store.insert(g)?;
            } else {
                warn!(
                    "{}: skipping seed of order {} outside {}..={}",
                    path.display(),
                    g.order(),
                    n_low,
                    n_high
                );
            }
        }
    }
    Ok(store)
}

/// Writes `best_n{order}_{tag}.g6` for every populated order. Lines hold
/// canonical keys, largest graphs first, ties by key.
pub fn save_store_snapshot(store: &BestStore, dir: &Path, tag: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for n in store.orders() {
        let mut body = String::new();
        for entry in store.ranked(n) {
            body.push_str(entry.key.as_str());
            body.push('\n');
        }
        if body.is_empty() {
            continue;
        }
        let path = dir.join(snapshot_file_name(n, tag));
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}
