//! On-disk TRNSET caches for `enumerate --cache`.
//!
//! A cache file is named after a hash of the order, the filter and the
//! generator version, so a generator change never reuses stale files. The
//! stored header is checked again on load; any mismatch or parse failure
//! regenerates the file.

use std::fs;
use std::path::{Path, PathBuf};

use moonlab_core::trn::parse_trnset;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Bumped whenever enumeration order or representatives could change.
pub const GENERATOR_VERSION: &str = "moonlab-enum/1";

pub const CACHE_ENV: &str = "MOONLAB_CACHE_DIR";

pub fn key(n: usize, filter: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("n={n}\nfilter={filter}\ngenerator={GENERATOR_VERSION}\n"));
    hex::encode(h.finalize())
}

pub fn path(dir: &Path, n: usize, filter: &str) -> PathBuf {
    let tag: String = filter
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect();
    dir.join(format!("n{n}-{tag}-{}.trnset", &key(n, filter)[..16]))
}

/// The cached document, if present and consistent with `(n, filter)`.
pub fn load(dir: &Path, n: usize, filter: &str) -> Option<String> {
    let text = fs::read_to_string(path(dir, n, filter)).ok()?;
    match parse_trnset(&text) {
        Ok((m, f, _)) if m == n && f == filter => Some(text),
        _ => None,
    }
}

/// Writes through a temporary sibling and renames, so readers only ever see
/// complete files.
pub fn store(dir: &Path, n: usize, filter: &str, text: &str) -> CliResult<()> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let target = path(dir, n, filter);
    let tmp = target.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text).map_err(io(&tmp))?;
    fs::rename(&tmp, &target).map_err(io(&target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_orders_and_filters() {
        assert_ne!(key(5, "all"), key(6, "all"));
        assert_ne!(key(5, "all"), key(5, "strong"));
        assert_eq!(key(7, "diam-le:3"), key(7, "diam-le:3"));
        let p = path(Path::new("/c"), 7, "diam-le:3");
        assert!(p.to_str().unwrap().starts_with("/c/n7-diam-le-3-"));
    }
}
