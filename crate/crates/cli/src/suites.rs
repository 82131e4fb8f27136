//! Verification suites. Each check is an independent deterministic job;
//! jobs run on a fixed-size rayon pool and land in a pre-ordered slot list,
//! and reports carry no timing data, so renders are byte-stable across runs
//! and worker counts.

use crate::formats::canonical_family_json;
use mpat_core::{
    ex_o1_decide, family_bdr, family_pkr, identity_equivalents, inflate_empty_layers,
    insert_empty_layer, insert_one_layers, is_saturated, is_semisaturated, lower_entry,
    replicate_dim, single_one_saturated, ssat_exponent, ssat_exponent_pattern, ssat_property_ii,
    ssat_witness, BigUint, Coord, Family, O1Verdict, SearchConfig, SearchOutcome, Tensor01,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Default seed for the random inequality corpus.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Inequalities,
    ExactValues,
    Ssat,
    Decisions,
    All,
}

impl SuiteName {
    pub fn parse(s: &str) -> Option<SuiteName> {
        match s {
            "inequalities" => Some(SuiteName::Inequalities),
            "exact-values" => Some(SuiteName::ExactValues),
            "ssat" => Some(SuiteName::Ssat),
            "decisions" => Some(SuiteName::Decisions),
            "all" => Some(SuiteName::All),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Inequalities => "inequalities",
            SuiteName::ExactValues => "exact-values",
            SuiteName::Ssat => "ssat",
            SuiteName::Decisions => "decisions",
            SuiteName::All => "all",
        }
    }

    fn uses_corpus(&self) -> bool {
        matches!(self, SuiteName::Inequalities | SuiteName::All)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub criterion: u8,
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

fn check(criterion: u8, id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { criterion, id: id.into(), pass, detail: detail.into() }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut s = match self.seed {
            Some(seed) => format!(
                "suite {} (seed {seed}): {} passed, {} failed\n",
                self.suite, self.passed, self.failed
            ),
            None => {
                format!("suite {}: {} passed, {} failed\n", self.suite, self.passed, self.failed)
            }
        };
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "{status} [criterion {}] {}: {}\n",
                c.criterion, c.id, c.detail
            ));
        }
        s
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("criterion,id,pass,detail\n");
        for c in &self.checks {
            let detail = c.detail.replace('"', "\"\"");
            s.push_str(&format!("{},{},{},\"{}\"\n", c.criterion, c.id, c.pass, detail));
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub workers: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { workers: 1, seed: DEFAULT_SEED }
    }
}

// Suites size their own guardrails: acceptance hosts reach 32 cells, above
// the defaults the search module picks for ad hoc queries.
fn suite_config() -> SearchConfig {
    SearchConfig { max_cells: 32, max_nodes: 400_000_000 }
}

/// Shared value store so repeated searches across checks (and across
/// acceptance tests in one process) are computed once. Purely a time saver:
/// every value is deterministic, so hits and recomputations agree.
#[derive(Default)]
pub struct Memo {
    map: Mutex<HashMap<(String, &'static str, usize), SearchOutcome>>,
}

impl Memo {
    fn search(
        &self,
        fam: &Family,
        function: &'static str,
        n: usize,
    ) -> mpat_core::Result<SearchOutcome> {
        let key = (canonical_family_json(fam), function, n);
        if let Some(hit) = self.map.lock().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        let cfg = suite_config();
        let out = match function {
            "ex" => mpat_core::ex_exact_with(fam, n, &cfg)?,
            "sat" => mpat_core::sat_exact_with(fam, n, &cfg)?,
            "ssat" => mpat_core::ssat_exact_with(fam, n, &cfg)?,
            other => unreachable!("unknown function {other}"),
        };
        self.map.lock().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }
}

pub fn global_memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Memo::default)
}

// An exact value, or a printable reason the check cannot claim one.
fn value_of(memo: &Memo, fam: &Family, function: &'static str, n: usize) -> Result<u64, String> {
    match memo.search(fam, function, n) {
        Ok(out) if out.exact => Ok(out.value),
        Ok(_) => Err(format!("{function} at n={n} aborted on a search guard")),
        Err(e) => Err(format!("{function} at n={n} failed: {e}")),
    }
}

fn outcome_of(
    memo: &Memo,
    fam: &Family,
    function: &'static str,
    n: usize,
) -> Result<SearchOutcome, String> {
    match memo.search(fam, function, n) {
        Ok(out) if out.exact => Ok(out),
        Ok(_) => Err(format!("{function} at n={n} aborted on a search guard")),
        Err(e) => Err(format!("{function} at n={n} failed: {e}")),
    }
}

struct Job {
    run: Box<dyn Fn(&Memo) -> Vec<Check> + Send + Sync>,
}

fn job(run: impl Fn(&Memo) -> Vec<Check> + Send + Sync + 'static) -> Job {
    Job { run: Box::new(run) }
}

pub fn run_suite(name: SuiteName, opts: &SuiteOptions) -> anyhow::Result<SuiteReport> {
    run_suite_with(name, opts, global_memo())
}

pub fn run_suite_with(
    name: SuiteName,
    opts: &SuiteOptions,
    memo: &Memo,
) -> anyhow::Result<SuiteReport> {
    let mut jobs = Vec::new();
    match name {
        SuiteName::Inequalities => jobs.extend(inequality_jobs(opts.seed)),
        SuiteName::ExactValues => jobs.extend(exact_value_jobs()),
        SuiteName::Ssat => jobs.extend(ssat_jobs()),
        SuiteName::Decisions => jobs.extend(decision_jobs()),
        SuiteName::All => {
            jobs.push(job(|_| vec![asymptotic_scope_check()]));
            jobs.extend(exact_value_jobs());
            jobs.extend(decision_jobs());
            jobs.extend(ssat_jobs());
            jobs.extend(inequality_jobs(opts.seed));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers.max(1)).build()?;
    let slots: Vec<Vec<Check>> = pool.install(|| jobs.par_iter().map(|j| (j.run)(memo)).collect());
    let checks: Vec<Check> = slots.into_iter().flatten().collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    Ok(SuiteReport {
        schema_version: crate::cache::SCHEMA_VERSION,
        suite: name.as_str().to_string(),
        seed: name.uses_corpus().then_some(opts.seed),
        passed,
        failed,
        checks,
    })
}

/// The asymptotic statements (Θ(n^2.5), O(n^2.75), Ω(n^{d-ε}), log-factor
/// growth) cannot be observed at desk scale; this check records that scope
/// decision in every full report instead of silently dropping them.
pub fn asymptotic_scope_check() -> Check {
    check(
        9,
        "asymptotics/out-of-scope",
        true,
        "asymptotic growth claims are out of scope at desk scale; they are exercised \
         only through their finite-n consequences in the exact-value, decision, ssat, \
         and inequality suites",
    )
}

// ---------------------------------------------------------------------------
// shared fixtures

fn coord_at(dims: &[usize], mut idx: usize) -> Coord {
    let mut c = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        c[i] = idx % dims[i] + 1;
        idx /= dims[i];
    }
    c
}

fn cells_of(dims: &[usize]) -> usize {
    dims.iter().product()
}

fn identity(k: usize) -> Tensor01 {
    let ones: Vec<Coord> = (1..=k).map(|i| vec![i, i]).collect();
    Tensor01::from_ones(vec![k, k], &ones).expect("identity fits")
}

fn all_ones(dims: &[usize]) -> Tensor01 {
    let ones: Vec<Coord> = (0..cells_of(dims)).map(|i| coord_at(dims, i)).collect();
    Tensor01::from_ones(dims.to_vec(), &ones).expect("all-ones fits")
}

fn corner_block(n: usize, r: usize, d: usize) -> Tensor01 {
    let ones: Vec<Coord> =
        (0..cells_of(&vec![r; d])).map(|i| coord_at(&vec![r; d], i)).collect();
    Tensor01::from_ones(vec![n; d], &ones).expect("corner block fits")
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut v = 1u64;
    for i in 0..k {
        v = v * (n - i) as u64 / (i + 1) as u64;
    }
    v
}

// ---------------------------------------------------------------------------
// criterion 1/2/3/4/8: exact values

pub fn identity_check(memo: &Memo, k: usize, n: usize) -> Check {
    let id = format!("identity/k{k}-n{n}");
    let fam = Family::single(identity(k));
    let want = ((k - 1) * (2 * n - (k - 1))) as u64;
    let got = value_of(memo, &fam, "ex", n).and_then(|ex| {
        value_of(memo, &fam, "sat", n).map(|sat| (ex, sat))
    });
    match got {
        Ok((ex, sat)) => check(
            1,
            id,
            ex == want && sat == want,
            format!("ex={ex} sat={sat} expected={want}"),
        ),
        Err(e) => check(1, id, false, e),
    }
}

fn pkr_check(memo: &Memo, function: &'static str, d: usize, k: usize, r: usize, n: usize) -> Check {
    let criterion = if function == "ex" { 2 } else { 3 };
    let id = format!("knr/{function}-d{d}k{k}r{r}-n{n}");
    let fam = match family_pkr(d, k, r) {
        Ok(f) => f,
        Err(e) => return check(criterion, id, false, e.to_string()),
    };
    let want = k as u64 * (n as u64).pow(r as u32);
    match value_of(memo, &fam, function, n) {
        Ok(v) => check(criterion, id, v == want, format!("{function}={v} expected={want}")),
        Err(e) => check(criterion, id, false, e),
    }
}

// Exhaustive minimum-saturated scan over every n^d host; only called at
// n = 3, d = 2 (512 hosts) to certify uniqueness.
fn all_minimum_saturated(fam: &Family, n: usize) -> Vec<Tensor01> {
    let zero = Tensor01::new_zero(vec![n; fam.d()]).expect("host fits");
    let dims = zero.dims().to_vec();
    let cells = cells_of(&dims);
    assert!(cells <= 16, "uniqueness scan is for tiny hosts only");
    let mut best: u64 = u64::MAX;
    let mut hits: Vec<Tensor01> = Vec::new();
    for mask in 0u32..1 << cells {
        let ones: Vec<Coord> = (0..cells)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| coord_at(&dims, i))
            .collect();
        let m = Tensor01::from_ones(dims.clone(), &ones).expect("host fits");
        if m.weight() > best {
            continue;
        }
        if is_saturated(&m, fam).expect("predicate total") {
            if m.weight() < best {
                best = m.weight();
                hits.clear();
            }
            hits.push(m);
        }
    }
    hits
}

fn single_one_check(memo: &Memo, dims: &[usize], one: &Coord, n: usize) -> Check {
    let label: Vec<String> = one.iter().map(|c| c.to_string()).collect();
    let id = format!(
        "single-one/{}.at{}-n{n}",
        dims.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("x"),
        label.join("_")
    );
    let p = Tensor01::from_ones(dims.to_vec(), std::slice::from_ref(one)).expect("single one");
    let fam = Family::single(p.clone());
    let d = dims.len();
    let formula = (n as u64).pow(d as u32)
        - dims.iter().map(|&k| (n + 1 - k) as u64).product::<u64>();
    let built = match single_one_saturated(&p, n) {
        Ok(b) => b,
        Err(e) => return check(4, id, false, e.to_string()),
    };
    let out = match outcome_of(memo, &fam, "sat", n) {
        Ok(o) => o,
        Err(e) => return check(4, id, false, e),
    };
    let witness_matches = out.witness.as_ref() == Some(&built);
    let mins = all_minimum_saturated(&fam, n);
    let unique = mins.len() == 1 && mins[0] == built;
    let pass = out.value == formula && built.weight() == formula && witness_matches && unique;
    let hosts = 1u64 << (n as u32).pow(d as u32);
    let detail = format!(
        "sat={} formula={formula} witness=={witness_matches} unique-minimum={unique} \
         (scan of {hosts} hosts)",
        out.value
    );
    check(4, id, pass, detail)
}

fn bdr_check(memo: &Memo, d: usize, r: usize, n: usize) -> Vec<Check> {
    let id = format!("bdr/d{d}r{r}-n{n}");
    let (_, fam) = match family_bdr(d, r) {
        Ok(v) => v,
        Err(e) => return vec![check(8, id, false, e.to_string())],
    };
    let m = corner_block(n, r, d);
    let sat_now = is_saturated(&m, &fam).unwrap_or(false);
    let inflated = inflate_empty_layers(&m, n + 3);
    let sat_inflated = match &inflated {
        Ok(big) => is_saturated(big, &fam).unwrap_or(false),
        Err(_) => false,
    };
    let mut out = vec![check(
        8,
        id,
        sat_now && sat_inflated,
        format!("saturated at n={n}: {sat_now}; after inflating to n={}: {sat_inflated}", n + 3),
    )];
    if (d, r, n) == (2, 2, 5) {
        let id = "bdr/sat-d2r2-n5".to_string();
        out.push(match value_of(memo, &fam, "sat", 5) {
            Ok(v) => check(8, id, v == 4, format!("sat={v} expected=4")),
            Err(e) => check(8, id, false, e),
        });
    }
    out
}

fn exact_value_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for k in [2usize, 3] {
        for n in [3usize, 4, 5] {
            jobs.push(job(move |memo| vec![identity_check(memo, k, n)]));
        }
    }
    const PKR_GRID: &[(usize, usize, usize, &[usize])] = &[
        (2, 1, 1, &[2, 3, 4, 5]),
        (2, 2, 1, &[2, 3, 4, 5]),
        (2, 1, 0, &[2, 3, 4, 5]),
        (3, 1, 0, &[2, 3]),
        (3, 1, 1, &[2, 3]),
        (3, 2, 1, &[3]),
    ];
    for &(d, k, r, ns) in PKR_GRID {
        for &n in ns {
            jobs.push(job(move |memo| {
                vec![pkr_check(memo, "ex", d, k, r, n), pkr_check(memo, "sat", d, k, r, n)]
            }));
        }
    }
    for dims in [vec![1usize, 2], vec![2, 2]] {
        for i in 0..cells_of(&dims) {
            let one = coord_at(&dims, i);
            for n in [3usize, 4] {
                let dims = dims.clone();
                let one = one.clone();
                jobs.push(job(move |memo| vec![single_one_check(memo, &dims, &one, n)]));
            }
        }
    }
    for (d, r) in [(2usize, 1usize), (2, 2), (3, 1)] {
        for n in [4usize, 5] {
            jobs.push(job(move |memo| bdr_check(memo, d, r, n)));
        }
    }
    jobs
}

// ---------------------------------------------------------------------------
// criterion 5: the O(1)-extremal decision

fn four_pattern_family() -> Family {
    let anti = identity(2).reflect_dim(1).expect("reflect");
    Family::new(vec![all_ones(&[1, 2]), all_ones(&[2, 1]), identity(2), anti])
        .expect("4-pattern family")
}

fn decision_checks(memo: &Memo) -> Vec<Check> {
    let mut out = Vec::new();
    let fam4 = four_pattern_family();
    let verdict = ex_o1_decide(&fam4, 4);
    let bound = match verdict {
        Ok(O1Verdict::BoundedO1 { n0, ref bound }) if n0 == 2 => {
            out.push(check(
                5,
                "o1/four-pattern-verdict",
                *bound == BigUint::from(1u32),
                format!("BoundedO1 at depth 2, bound {bound}"),
            ));
            Some(bound.clone())
        }
        Ok(ref v) => {
            out.push(check(5, "o1/four-pattern-verdict", false, format!("verdict {v:?}")));
            None
        }
        Err(e) => {
            out.push(check(5, "o1/four-pattern-verdict", false, e.to_string()));
            None
        }
    };
    for n in [3usize, 4] {
        let id = format!("o1/four-pattern-ex-n{n}");
        match (value_of(memo, &fam4, "ex", n), &bound) {
            (Ok(v), Some(b)) => {
                let within = BigUint::from(v) <= *b;
                out.push(check(5, id, v == 1 && within, format!("ex={v} bound={b}")));
            }
            (Ok(v), None) => out.push(check(5, id, false, format!("ex={v}, no bound"))),
            (Err(e), _) => out.push(check(5, id, false, e)),
        }
    }

    let row = Family::single(all_ones(&[1, 2]));
    match ex_o1_decide(&row, 4) {
        Ok(O1Verdict::NotO1AtDepth { n0_max, avoiders }) => {
            let mut pass = n0_max == 4 && avoiders.len() == 4;
            let mut notes = Vec::new();
            for (i, (n0, avoider)) in avoiders.iter().enumerate() {
                let want_depth = i + 1;
                let is_diag = identity_equivalents(*n0, 2)
                    .map(|d| d.patterns().contains(avoider))
                    .unwrap_or(false);
                pass = pass && *n0 == want_depth && is_diag;
                notes.push(format!("depth {n0}: diagonal avoider {is_diag}"));
            }
            out.push(check(5, "o1/row-pair-avoiders", pass, notes.join("; ")));
        }
        Ok(v) => out.push(check(5, "o1/row-pair-avoiders", false, format!("verdict {v:?}"))),
        Err(e) => out.push(check(5, "o1/row-pair-avoiders", false, e.to_string())),
    }
    out
}

fn decision_jobs() -> Vec<Job> {
    vec![job(decision_checks)]
}

// ---------------------------------------------------------------------------
// criterion 6: semisaturation classification corpus

struct SsatEntry {
    name: &'static str,
    fam: Family,
    exponent: usize,
}

fn ssat_entries() -> Vec<SsatEntry> {
    let single = Tensor01::from_ones(vec![1, 1], &[vec![1, 1]]).expect("single one");
    let mut entries = vec![
        SsatEntry { name: "single-one", fam: Family::single(single), exponent: 0 },
        SsatEntry { name: "identity2", fam: Family::single(identity(2)), exponent: 0 },
        SsatEntry { name: "allones22", fam: Family::single(all_ones(&[2, 2])), exponent: 1 },
        SsatEntry { name: "cube222", fam: Family::single(all_ones(&[2, 2, 2])), exponent: 2 },
    ];
    for (d, k) in [(2usize, 0usize), (2, 1), (3, 1), (3, 2)] {
        let p = ssat_exponent_pattern(d, k).expect("construction fits");
        entries.push(SsatEntry {
            name: match (d, k) {
                (2, 0) => "pattern-2-0",
                (2, 1) => "pattern-2-1",
                (3, 1) => "pattern-3-1",
                _ => "pattern-3-2",
            },
            fam: Family::single(p),
            exponent: k,
        });
    }
    entries
}

fn ssat_exponent_check(entry: &SsatEntry) -> Check {
    let id = format!("exponent/{}", entry.name);
    match ssat_exponent(&entry.fam) {
        Ok(c) => check(
            6,
            id,
            c.exponent == entry.exponent,
            format!("exponent={} expected={}", c.exponent, entry.exponent),
        ),
        Err(e) => check(6, id, false, e.to_string()),
    }
}

fn ssat_constant_check(memo: &Memo, entry: &SsatEntry) -> Check {
    let id = format!("constant/{}", entry.name);
    // Below the pattern's own side lengths no copy can be created at all,
    // so only the all-ones host is semisaturated and the constant regime
    // has not started; constancy is only claimable once the pattern fits.
    if family_lmax(&entry.fam) > 3 {
        return check(
            6,
            id,
            true,
            "skipped: the pattern does not fit in hosts of size 3 to 5, so the \
             constant regime starts beyond this range",
        );
    }
    let values: Result<Vec<u64>, String> =
        [3usize, 4, 5].iter().map(|&n| value_of(memo, &entry.fam, "ssat", n)).collect();
    match values {
        Ok(v) => check(
            6,
            id,
            v[0] == v[1] && v[1] == v[2],
            format!("ssat(3..=5) = {} {} {}", v[0], v[1], v[2]),
        ),
        Err(e) => check(6, id, false, e),
    }
}

fn family_lmax(fam: &Family) -> usize {
    fam.patterns()
        .iter()
        .flat_map(|p| p.dims().iter().copied())
        .max()
        .expect("non-empty family")
}

fn ssat_witness_checks(memo: &Memo, entry: &SsatEntry) -> Vec<Check> {
    let fam = &entry.fam;
    let d = fam.d();
    let k = entry.exponent;
    let lmax = family_lmax(fam);
    let (cap_semisat, cap_exact) = if d == 2 { (8usize, 5usize) } else { (4usize, 3usize) };
    let lo = 2 * lmax + 1;
    let id = format!("witness/{}", entry.name);
    if lo > cap_semisat {
        return vec![check(
            6,
            id,
            true,
            format!(
                "skipped: the witness construction needs n >= {lo}, outside the n <= \
                 {cap_semisat} range pinned for d={d}"
            ),
        )];
    }
    let mut out = Vec::new();
    for n in lo..=cap_semisat {
        let id = format!("witness/{}-n{n}", entry.name);
        let w = match ssat_witness(fam, k, n) {
            Ok(w) => w,
            Err(e) => {
                out.push(check(6, id, false, e.to_string()));
                continue;
            }
        };
        let semisat = is_semisaturated(&w, fam).unwrap_or(false);
        if n <= cap_exact {
            match value_of(memo, fam, "ssat", n) {
                Ok(v) => out.push(check(
                    6,
                    id,
                    semisat && v <= w.weight(),
                    format!("semisaturated={semisat}; ssat={v} <= witness weight {}", w.weight()),
                )),
                Err(e) => out.push(check(6, id, false, e)),
            }
        } else {
            out.push(check(
                6,
                id,
                semisat,
                format!(
                    "semisaturated={semisat}; weight {} (exact comparison skipped, n > {cap_exact})",
                    w.weight()
                ),
            ));
        }
    }
    out
}

fn ssat_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    let count = ssat_entries().len();
    for i in 0..count {
        jobs.push(job(move |_| {
            let entry = &ssat_entries()[i];
            vec![ssat_exponent_check(entry)]
        }));
    }
    jobs.push(job(|_| {
        let fam = Family::single(all_ones(&[2, 2, 2]));
        let fails: Vec<bool> = [0usize, 1]
            .iter()
            .map(|&k| ssat_property_ii(&fam, k).map(|o| !o.holds).unwrap_or(false))
            .collect();
        vec![check(
            6,
            "exponent/cube222-property-ii",
            fails.iter().all(|&f| f),
            format!("property (ii) fails at k=0: {}; at k=1: {}", fails[0], fails[1]),
        )]
    }));
    for i in 0..count {
        jobs.push(job(move |memo| {
            let entry = &ssat_entries()[i];
            let mut out = Vec::new();
            if entry.exponent == 0 {
                out.push(ssat_constant_check(memo, entry));
            }
            out.extend(ssat_witness_checks(memo, entry));
            out
        }));
    }
    jobs
}

// ---------------------------------------------------------------------------
// criterion 7: the random inequality corpus

pub const CORPUS_SIZE: usize = 100;

fn item_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_pattern(rng: &mut ChaCha8Rng, d: usize) -> Tensor01 {
    let dims: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=3)).collect();
    let cells = cells_of(&dims);
    let weight = rng.gen_range(1..=cells.min(6));
    let mut idx: Vec<usize> = (0..cells).collect();
    for i in 0..weight {
        let j = rng.gen_range(i..cells);
        idx.swap(i, j);
    }
    let ones: Vec<Coord> = idx[..weight].iter().map(|&i| coord_at(&dims, i)).collect();
    Tensor01::from_ones(dims, &ones).expect("random pattern fits")
}

// Host sizes to test a d'-dimensional search at, capped by the suite cell
// guard so every search stays exact.
fn host_sizes(d: usize) -> Vec<usize> {
    [2usize, 3]
        .into_iter()
        .filter(|&n| (n as u64).pow(d as u32) <= suite_config().max_cells as u64)
        .collect()
}

// One comparison per n, folded into a single check line.
fn fold_bounds<F>(
    item: usize,
    rule: &str,
    ns: &[usize],
    mut eval: F,
) -> Check
where
    F: FnMut(usize) -> Result<(bool, String), String>,
{
    let id = format!("item{item:03}/{rule}");
    let mut pass = true;
    let mut notes = Vec::new();
    for &n in ns {
        match eval(n) {
            Ok((ok, note)) => {
                pass = pass && ok;
                notes.push(format!("n={n}: {note}"));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    check(7, id, pass, notes.join("; "))
}

fn longest_empty_run(p: &Tensor01, i: usize) -> usize {
    let li = p.dims()[i - 1];
    let mut nonempty = vec![false; li + 1];
    for o in p.iter_ones() {
        nonempty[o[i - 1]] = true;
    }
    let mut best = 0;
    let mut run = 0;
    for layer in 1..=li {
        if nonempty[layer] {
            run = 0;
        } else {
            run += 1;
            best = best.max(run);
        }
    }
    best
}

fn end_empty_run(p: &Tensor01, i: usize, front: bool) -> usize {
    let li = p.dims()[i - 1];
    let mut nonempty = vec![false; li + 1];
    for o in p.iter_ones() {
        nonempty[o[i - 1]] = true;
    }
    let order: Vec<usize> =
        if front { (1..=li).collect() } else { (1..=li).rev().collect() };
    order.into_iter().take_while(|&l| !nonempty[l]).count()
}

fn inequality_item(memo: &Memo, seed: u64, index: usize) -> Vec<Check> {
    let mut rng = item_rng(seed, index);
    let d = rng.gen_range(2..=3);
    let p = random_pattern(&mut rng, d);
    let fam = Family::single(p.clone());
    let ns = host_sizes(d);
    let mut checks = Vec::new();

    let ex = |memo: &Memo, f: &Family, n: usize| value_of(memo, f, "ex", n);

    // Dropping 1-entries can only lower the extremal function.
    {
        let keep: Vec<Coord> = p.ones().into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        let q = Tensor01::from_ones(p.dims().to_vec(), &keep).expect("subpattern fits");
        let qfam = Family::single(q);
        checks.push(fold_bounds(index, "mono", &ns, |n| {
            let a = ex(memo, &fam, n)?;
            let b = ex(memo, &qfam, n)?;
            Ok((a >= b, format!("{a} >= {b}")))
        }));
    }

    // Two or more 1-entries force at least n^(d-1).
    if p.weight() >= 2 {
        checks.push(fold_bounds(index, "2ones", &ns, |n| {
            let a = ex(memo, &fam, n)?;
            let floor = (n as u64).pow(d as u32 - 1);
            Ok((a >= floor, format!("{a} >= {floor}")))
        }));
    }

    // Stacking n identical extremal layers of the projection avoids p, so
    // ex(p) is at least n times ex of the projection.
    {
        let i = rng.gen_range(1..=d);
        let proj = p.project(i).expect("projection of d >= 2");
        let pfam = Family::single(proj);
        checks.push(fold_bounds(index, "projection", &ns, |n| {
            let a = ex(memo, &fam, n)?;
            let b = ex(memo, &pfam, n)?;
            Ok((a >= n as u64 * b, format!("{a} >= {n}*{b}")))
        }));
    }

    // Replication is squeezed on both sides: n*ex <= ex(rep) <= (2n-1)*ex.
    {
        let i = rng.gen_range(1..=d);
        let rep = replicate_dim(&p, i).expect("replicate fits");
        let rfam = Family::single(rep);
        let rns = host_sizes(d + 1);
        if !rns.is_empty() {
            checks.push(fold_bounds(index, "stretch", &rns, |n| {
                let base = ex(memo, &fam, n)?;
                let lifted = ex(memo, &rfam, n)?;
                let lo = n as u64 * base;
                let hi = (2 * n - 1) as u64 * base;
                Ok((lo <= lifted && lifted <= hi, format!("{lo} <= {lifted} <= {hi}")))
            }));
        }
    }

    // A new layer holding a single 1 next to an existing 1 raises the
    // extremal function by at most n^(d-1).
    {
        let ones = p.ones();
        let o = ones[rng.gen_range(0..ones.len())].clone();
        let i = rng.gen_range(1..=d);
        let after = rng.gen_bool(0.5);
        let pos = if after { o[i - 1] } else { o[i - 1] - 1 };
        let widened = insert_empty_layer(&p, i, pos).expect("insert fits");
        let mut c = o.clone();
        c[i - 1] = if after { o[i - 1] + 1 } else { o[i - 1] };
        let grown = widened.set(&c, true).expect("new layer cell");
        let gfam = Family::single(grown);
        checks.push(fold_bounds(index, "add-one", &ns, |n| {
            let base = ex(memo, &fam, n)?;
            let bigger = ex(memo, &gfam, n)?;
            let cap = base + (n as u64).pow(d as u32 - 1);
            Ok((bigger <= cap, format!("{bigger} <= {cap}")))
        }));
    }

    // Moving a bottom 1-entry into a fresh layer costs at most n^(d-1).
    {
        let bottoms: Vec<(usize, Coord)> = (1..=d)
            .flat_map(|i| {
                let li = p.dims()[i - 1];
                p.ones().into_iter().filter(move |o| o[i - 1] == li).map(move |o| (i, o))
            })
            .collect();
        if !bottoms.is_empty() {
            let (i, o) = bottoms[rng.gen_range(0..bottoms.len())].clone();
            let lowered = lower_entry(&p, i, &o).expect("bottom entry");
            let lfam = Family::single(lowered);
            checks.push(fold_bounds(index, "lower", &ns, |n| {
                let base = ex(memo, &fam, n)?;
                let moved = ex(memo, &lfam, n)?;
                let cap = base + (n as u64).pow(d as u32 - 1);
                Ok((moved <= cap, format!("{moved} <= {cap}")))
            }));
        }
    }

    // Attaching an empty end layer: behind an end run of e empty layers the
    // added layer costs at most (e+1) * n^(d-1).
    {
        let i = rng.gen_range(1..=d);
        let front = rng.gen_bool(0.5);
        let pos = if front { 0 } else { p.dims()[i - 1] };
        let attached = insert_empty_layer(&p, i, pos).expect("attach fits");
        let afam = Family::single(attached);
        let e = end_empty_run(&p, i, front) as u64;
        checks.push(fold_bounds(index, "attach1", &ns, |n| {
            let base = ex(memo, &fam, n)?;
            let bigger = ex(memo, &afam, n)?;
            let cap = base + (e + 1) * (n as u64).pow(d as u32 - 1);
            Ok((bigger <= cap, format!("{bigger} <= {cap}")))
        }));
    }

    // An empty layer inserted strictly inside the 1-span multiplies the
    // extremal function by at most longest-empty-run + 2; end insertions
    // are the attach case above and do not obey this factor.
    {
        let i = rng.gen_range(1..=d);
        let layers: Vec<usize> = p.iter_ones().map(|o| o[i - 1]).collect();
        let first = layers.iter().copied().min().expect("weight >= 1");
        let last = layers.iter().copied().max().expect("weight >= 1");
        if last > first {
            let pos = rng.gen_range(first..last);
            let widened = insert_empty_layer(&p, i, pos).expect("insert fits");
            let wfam = Family::single(widened);
            let factor = (longest_empty_run(&p, i) + 2) as u64;
            checks.push(fold_bounds(index, "insert1", &ns, |n| {
                let base = ex(memo, &fam, n)?;
                let bigger = ex(memo, &wfam, n)?;
                let cap = factor * base;
                Ok((bigger <= cap, format!("{bigger} <= {cap}")))
            }));
        }
    }

    // t single-1 layers inserted inside a consecutive same-row pair
    // multiply the extremal function by at most t+1.
    {
        let ones = p.ones();
        let mut pairs: Vec<(usize, Coord)> = Vec::new();
        for i in 1..=d {
            for o in &ones {
                let mut up = o.clone();
                up[i - 1] += 1;
                if o[i - 1] < p.dims()[i - 1] && ones.contains(&up) {
                    pairs.push((i, o.clone()));
                }
            }
        }
        if !pairs.is_empty() {
            let (i, o) = pairs[rng.gen_range(0..pairs.len())].clone();
            let t = rng.gen_range(1..=2);
            let row: Vec<usize> = o
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i - 1)
                .map(|(_, &c)| c)
                .collect();
            let stretched =
                insert_one_layers(&p, i, o[i - 1], &row, t).expect("pair is consecutive");
            let sfam = Family::single(stretched);
            checks.push(fold_bounds(index, "insertbetween", &ns, |n| {
                let base = ex(memo, &fam, n)?;
                let padded = ex(memo, &sfam, n)?;
                let cap = (t as u64 + 1) * base;
                Ok((base <= padded && padded <= cap, format!("{base} <= {padded} <= {cap}")))
            }));
        }
    }

    // A family of k < d patterns has extremal value either 0 or at least
    // n^(d-k); exercised for the singleton and sometimes a two-member
    // family in three dimensions.
    {
        let mut families: Vec<(String, Family)> = vec![("either-or".to_string(), fam.clone())];
        if d == 3 && rng.gen_bool(0.4) {
            let q = random_pattern(&mut rng, d);
            if let Ok(two) = Family::new(vec![p.clone(), q]) {
                families.push(("either-or-pair".to_string(), two));
            }
        }
        for (rule, f) in families {
            let k = f.len();
            checks.push(fold_bounds(index, &rule, &ns, |n| {
                let a = ex(memo, &f, n)?;
                let floor = (n as u64).pow((d - k) as u32);
                Ok((a == 0 || a >= floor, format!("{a} == 0 or >= {floor}")))
            }));
        }
    }

    // When no member has an entry lonely in every d'-dimensional cross
    // section, the semisaturation number is at least
    // n^d / (1 + C(d,d')(n^d' - 1)).
    for dp in 1..d {
        let lonely_exists = match ssat_property_ii(&fam, d - 1 - dp) {
            Ok(o) => o.holds,
            Err(_) => continue,
        };
        if lonely_exists {
            continue;
        }
        let rule = format!("only-d{dp}");
        checks.push(fold_bounds(index, &rule, &ns, |n| {
            let s = value_of(memo, &fam, "ssat", n)?;
            let denom = 1 + binom(d, dp) * ((n as u64).pow(dp as u32) - 1);
            let lhs = s * denom;
            let rhs = (n as u64).pow(d as u32);
            Ok((lhs >= rhs, format!("ssat={s}, {lhs} >= {rhs}")))
        }));
    }

    checks
}

fn inequality_jobs(seed: u64) -> Vec<Job> {
    (0..CORPUS_SIZE)
        .map(|index| job(move |memo| inequality_item(memo, seed, index)))
        .collect()
}
