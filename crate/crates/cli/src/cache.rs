//! Result cache: one JSON file per (family hash, function, n). Writes go
//! through a temp file and a rename so readers never see a torn record.
//! Only the single-query subcommands consult it; verification suites always
//! recompute.

use crate::formats::{pattern_to_json, PatternJson};
use anyhow::Context;
use mpat_core::SearchOutcome;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// One computed value, as cached on disk and emitted in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub family_hash: String,
    pub function: String,
    pub n: usize,
    pub value: u64,
    pub witness: Option<PatternJson>,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub exact: bool,
    pub no_solution: bool,
    pub tool_version: String,
}

impl ResultRecord {
    pub fn from_outcome(
        family_hash: &str,
        function: &str,
        n: usize,
        out: &SearchOutcome,
    ) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            family_hash: family_hash.to_string(),
            function: function.to_string(),
            n,
            value: out.value,
            witness: out.witness.as_ref().map(pattern_to_json),
            nodes: out.nodes,
            elapsed_ms: out.elapsed.as_millis() as u64,
            exact: out.exact,
            no_solution: out.no_solution,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn witness_weight(&self) -> u64 {
        self.witness.as_ref().map_or(0, |w| w.ones.len() as u64)
    }

    pub const CSV_HEADER: &'static str =
        "family_hash,function,n,value,witness_weight,nodes,elapsed_ms,exact";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.family_hash,
            self.function,
            self.n,
            self.value,
            self.witness_weight(),
            self.nodes,
            self.elapsed_ms,
            self.exact
        )
    }
}

/// File-per-result store; `dir == None` disables caching entirely.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    /// MPAT_CACHE_DIR overrides the flag when set.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = std::env::var_os("MPAT_CACHE_DIR").map(PathBuf::from).or(flag);
        Cache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, family_hash: &str, function: &str, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{family_hash}-{function}-{n}.json")))
    }

    /// A hit needs a parseable record with the current schema version and
    /// matching key fields; anything else is a miss.
    pub fn lookup(&self, family_hash: &str, function: &str, n: usize) -> Option<ResultRecord> {
        let path = self.path(family_hash, function, n)?;
        let text = std::fs::read_to_string(path).ok()?;
        let rec: ResultRecord = serde_json::from_str(&text).ok()?;
        (rec.schema_version == SCHEMA_VERSION
            && rec.family_hash == family_hash
            && rec.function == function
            && rec.n == n)
            .then_some(rec)
    }

    /// Store an exact record; inexact outcomes are never written.
    pub fn store(&self, rec: &ResultRecord) -> anyhow::Result<()> {
        if !rec.exact {
            return Ok(());
        }
        let Some(path) = self.path(&rec.family_hash, &rec.function, rec.n) else {
            return Ok(());
        };
        let dir = self.dir.as_ref().expect("path implies dir");
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_string_pretty(rec)?)
            .with_context(|| format!("cannot write {}", tmp.display()))?;
        std::fs::rename(&tmp, &path)
            .with_context(|| format!("cannot move record into {}", path.display()))?;
        Ok(())
    }

    /// Every readable record in the cache directory, sorted by
    /// (family_hash, function, n) so reports are deterministic.
    pub fn scan(&self) -> anyhow::Result<Vec<ResultRecord>> {
        let Some(dir) = self.dir.as_ref() else {
            return Ok(Vec::new());
        };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().map_or(true, |e| e != "json") {
                continue;
            }
            let Ok(text) = std::fs::read_to_string(&path) else { continue };
            let Ok(rec) = serde_json::from_str::<ResultRecord>(&text) else { continue };
            if rec.schema_version == SCHEMA_VERSION {
                out.push(rec);
            }
        }
        out.sort_by(|a, b| {
            (&a.family_hash, &a.function, a.n).cmp(&(&b.family_hash, &b.function, b.n))
        });
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpat_core::{ex_exact, Family, Tensor01};

    fn sample_record() -> ResultRecord {
        let fam = Family::single(
            Tensor01::from_ones(vec![2, 2], &[vec![1, 1], vec![2, 2]]).unwrap(),
        );
        let out = ex_exact(&fam, 3).unwrap();
        ResultRecord::from_outcome(&crate::formats::family_hash(&fam), "ex", 3, &out)
    }

    #[test]
    fn store_then_lookup_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let rec = sample_record();
        cache.store(&rec).unwrap();
        let hit = cache.lookup(&rec.family_hash, "ex", 3).unwrap();
        assert_eq!(hit, rec);
        assert_eq!(hit.value, 5);
        assert_eq!(hit.witness_weight(), 5);
    }

    #[test]
    fn inexact_records_are_not_written() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let mut rec = sample_record();
        rec.exact = false;
        cache.store(&rec).unwrap();
        assert!(cache.lookup(&rec.family_hash, "ex", 3).is_none());
    }

    #[test]
    fn corrupt_or_mismatched_files_read_as_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let rec = sample_record();
        cache.store(&rec).unwrap();
        let path = dir.path().join(format!("{}-ex-3.json", rec.family_hash));

        std::fs::write(&path, "{not json").unwrap();
        assert!(cache.lookup(&rec.family_hash, "ex", 3).is_none());

        let mut stale = rec.clone();
        stale.schema_version = SCHEMA_VERSION + 1;
        std::fs::write(&path, serde_json::to_string(&stale).unwrap()).unwrap();
        assert!(cache.lookup(&rec.family_hash, "ex", 3).is_none());
    }

    #[test]
    fn disabled_cache_ignores_everything() {
        let cache = Cache::new(None);
        let rec = sample_record();
        cache.store(&rec).unwrap();
        assert!(cache.lookup(&rec.family_hash, "ex", 3).is_none());
        assert!(cache.scan().unwrap().is_empty());
    }

    #[test]
    fn scan_sorts_records() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let mut a = sample_record();
        a.n = 4;
        a.function = "sat".into();
        let b = sample_record();
        cache.store(&a).unwrap();
        cache.store(&b).unwrap();
        let all = cache.scan().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!((all[0].function.as_str(), all[0].n), ("ex", 3));
        assert_eq!((all[1].function.as_str(), all[1].n), ("sat", 4));
    }

    #[test]
    fn csv_row_matches_the_header() {
        let rec = sample_record();
        assert_eq!(ResultRecord::CSV_HEADER.split(',').count(), 8);
        assert_eq!(rec.csv_row().split(',').count(), 8);
        assert!(rec.csv_row().starts_with(&rec.family_hash));
    }

    #[test]
    fn env_var_overrides_the_flag() {
        let dir = tempfile::tempdir().unwrap();
        std::env::set_var("MPAT_CACHE_DIR", dir.path());
        let cache = Cache::resolve(Some(PathBuf::from("/nonexistent/flag/dir")));
        assert_eq!(cache.dir(), Some(dir.path()));
        std::env::remove_var("MPAT_CACHE_DIR");
        let cache = Cache::resolve(Some(PathBuf::from("/flag/dir")));
        assert_eq!(cache.dir(), Some(Path::new("/flag/dir")));
    }
}
