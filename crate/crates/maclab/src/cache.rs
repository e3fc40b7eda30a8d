//! Advisory on-disk cache for computed polynomial documents, keyed by
//! `(family, rank, k_long, k_short, λ)`.  Entries carry the report format
//! version and are revalidated on load by recomputing the squared norm of the
//! reconstructed polynomial against the closed product form; anything stale,
//! unreadable, or failing the spot-check is recomputed and rewritten.

use std::path::{Path, PathBuf};

use maclab_core::macpoly::{inner_k, norm_formula_rhs};
use maclab_core::rootsys::{KParam, RootSystem};

use crate::poly::{poly_from_doc, PolyDoc};
use crate::report::FORMAT_VERSION;

/// Environment variable consulted when `--cache-dir` is not given.
pub const CACHE_ENV: &str = "MACLAB_CACHE_DIR";

/// Resolves the cache directory: the flag wins, then the environment
/// variable; `None` disables caching.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

/// File name for a cache key.
pub fn entry_path(dir: &Path, family: &str, k: &KParam, weight: &[i64]) -> PathBuf {
    let wl: Vec<String> = weight.iter().map(|c| c.to_string()).collect();
    dir.join(format!(
        "poly_{}_kl{}_ks{}_w{}.json",
        family,
        k.k_long,
        k.k_short,
        wl.join("-")
    ))
}

/// Loads and revalidates a cached document.  Returns `None` (treating the
/// entry as absent) when the file is missing, malformed, version-skewed, or
/// fails the norm spot-check.
pub fn load(path: &Path, rs: &RootSystem, k: &KParam) -> Option<PolyDoc> {
    let data = std::fs::read_to_string(path).ok()?;
    let doc: PolyDoc = serde_json::from_str(&data).ok()?;
    if doc.format_version != FORMAT_VERSION
        || doc.rank != rs.rank
        || doc.k_long != k.k_long
        || doc.k_short != k.k_short
    {
        return None;
    }
    let p = poly_from_doc(rs, &doc).ok()?;
    let expanded = p.expand(rs);
    let lhs = inner_k(rs, k, &expanded, &expanded);
    let rhs = norm_formula_rhs(rs, k, &p.lambda);
    if lhs != rhs || doc.norm_lhs != lhs.to_text() {
        return None;
    }
    Some(doc)
}

/// Writes a document, creating the directory if needed.  Best-effort: cache
/// failures never fail the computation.
pub fn store(path: &Path, doc: &PolyDoc) {
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let _ = std::fs::write(path, crate::poly::doc_to_json(doc));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::build_doc;
    use crate::select::weight_from_fund;
    use maclab_core::macpoly::Method;
    use maclab_core::rootsys::CartanKind;

    #[test]
    fn cache_round_trip_and_revalidation() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::new(CartanKind::A, 1).unwrap();
        let k = KParam::equal(2);
        let lambda = weight_from_fund(&rs, &[2]);
        let doc = build_doc(&rs, "A1", &k, &lambda, Method::Gram);
        let path = entry_path(dir.path(), "A1", &k, &[2]);
        store(&path, &doc);
        let loaded = load(&path, &rs, &k).expect("valid entry loads");
        assert_eq!(loaded.norm_lhs, doc.norm_lhs);

        // Tampering with a coefficient must fail the spot-check.
        let mut bad = doc.clone();
        let last = bad.coeffs.len() - 1;
        bad.coeffs[last].num = vec!["7".to_string()];
        bad.coeffs[last].den = vec!["1".to_string()];
        store(&path, &bad);
        assert!(load(&path, &rs, &k).is_none());

        // Version skew is rejected.
        let mut old = doc.clone();
        old.format_version = FORMAT_VERSION + 1;
        store(&path, &old);
        assert!(load(&path, &rs, &k).is_none());
    }
}
