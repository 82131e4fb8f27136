//! Exact computation of ex, sat and ssat by exhaustive branch-and-bound,
//! plus the saturation predicates and greedy completion.
//!
//! All searches decide host cells in lexicographic order and check
//! containment incrementally: when cells are decided in that order, any copy
//! of a pattern is detected the moment its lexicographically greatest cell
//! is set, so a single pinned-cell query per new 1-entry is exhaustive.

use std::time::{Duration, Instant};

use crate::containment::{contains_any, creates_copy_at};
use crate::constructions::Family;
use crate::error::{Error, Result};
use crate::tensor::{Coord, Tensor01};

/// Resource limits for the exhaustive searches. Exceeding a limit never
/// errors and never approximates silently: the outcome comes back with
/// `exact = false`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of undetermined cells after the forced-zero reduction.
    pub max_cells: usize,
    /// Maximum number of search-tree nodes.
    pub max_nodes: u64,
}

impl SearchConfig {
    /// Default budget for maximum-weight searches.
    pub fn for_ex() -> Self {
        SearchConfig { max_cells: 30, max_nodes: 100_000_000 }
    }

    /// Default budget for the minimum searches (sat, ssat), whose nodes are
    /// heavier than ex nodes.
    pub fn for_minima() -> Self {
        SearchConfig { max_cells: 20, max_nodes: 100_000_000 }
    }
}

/// Result of one exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub value: u64,
    /// Lexicographically least optimal matrix (by characteristic vector
    /// over cells in lexicographic order). None when no solution exists or
    /// the search was cut off before finding one.
    pub witness: Option<Tensor01>,
    pub nodes: u64,
    pub elapsed: Duration,
    /// False when a guard (cells or nodes) cut the search short.
    pub exact: bool,
    /// ex: no avoider exists (an all-zero member fits). sat: no saturated
    /// matrix exists (same condition).
    pub no_solution: bool,
}

// Cells that can never be 1 in an avoider: flipping the cell alone in the
// all-zero host already completes a copy (single-1-entry members).
fn forced_zero_mask(dims: &[usize], fam: &Family) -> Result<Vec<bool>> {
    let mut probe = Tensor01::new_zero(dims.to_vec())?;
    let mut mask = vec![false; probe.cells()];
    for i in 0..probe.cells() {
        probe.set_linear(i, true);
        let c = probe.coord_of(i);
        mask[i] = creates_copy_at(&probe, fam, &c)?;
        probe.set_linear(i, false);
    }
    Ok(mask)
}

fn zero_member_fits(fam: &Family, dims: &[usize]) -> bool {
    fam.patterns()
        .iter()
        .any(|p| p.weight() == 0 && p.dims().iter().zip(dims).all(|(&pd, &hd)| pd <= hd))
}

fn outcome(
    value: u64,
    witness: Option<Tensor01>,
    nodes: u64,
    start: Instant,
    exact: bool,
    no_solution: bool,
) -> SearchOutcome {
    SearchOutcome { value, witness, nodes, elapsed: start.elapsed(), exact, no_solution }
}

struct ExDriver<'a> {
    fam: &'a Family,
    host: Tensor01,
    free: Vec<(usize, Coord)>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl ExDriver<'_> {
    fn enter(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return false;
        }
        true
    }

    // Phase 1: maximum avoider weight. 1-branch first so heavy avoiders
    // appear early and the weight+remaining bound bites.
    fn max_weight(&mut self, pos: usize, weight: u64, best: &mut u64) {
        if !self.enter() {
            return;
        }
        let remaining = (self.free.len() - pos) as u64;
        if weight + remaining <= *best {
            return;
        }
        if pos == self.free.len() {
            *best = weight;
            return;
        }
        let (idx, coord) = self.free[pos].clone();
        self.host.set_linear(idx, true);
        if !creates_copy_at(&self.host, self.fam, &coord).expect("host cell just set") {
            self.max_weight(pos + 1, weight + 1, best);
        }
        self.host.set_linear(idx, false);
        self.max_weight(pos + 1, weight, best);
    }

    // Phase 2: first avoider of exactly the target weight in characteristic
    // lex order (0 branches first). On success the host holds the witness.
    fn witness_at(&mut self, pos: usize, weight: u64, target: u64) -> bool {
        if !self.enter() {
            return false;
        }
        let remaining = (self.free.len() - pos) as u64;
        if weight > target || weight + remaining < target {
            return false;
        }
        if pos == self.free.len() {
            return true;
        }
        let (idx, coord) = self.free[pos].clone();
        if self.witness_at(pos + 1, weight, target) {
            return true;
        }
        self.host.set_linear(idx, true);
        if !creates_copy_at(&self.host, self.fam, &coord).expect("host cell just set")
            && self.witness_at(pos + 1, weight + 1, target)
        {
            return true;
        }
        self.host.set_linear(idx, false);
        false
    }
}

/// Maximum weight of an n x ... x n matrix avoiding every family member,
/// with the lex-least maximum avoider as witness.
pub fn ex_exact(fam: &Family, n: usize) -> Result<SearchOutcome> {
    ex_exact_with(fam, n, &SearchConfig::for_ex())
}

pub fn ex_exact_with(fam: &Family, n: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    let host = Tensor01::new_zero(vec![n; fam.d()])?;
    if zero_member_fits(fam, host.dims()) {
        return Ok(outcome(0, None, 0, start, true, true));
    }
    let mask = forced_zero_mask(host.dims(), fam)?;
    let free: Vec<(usize, Coord)> =
        (0..host.cells()).filter(|&i| !mask[i]).map(|i| (i, host.coord_of(i))).collect();
    if free.len() > cfg.max_cells {
        return Ok(outcome(0, None, 0, start, false, false));
    }
    let mut driver =
        ExDriver { fam, host, free, nodes: 0, max_nodes: cfg.max_nodes, aborted: false };
    let mut best = 0u64;
    driver.max_weight(0, 0, &mut best);
    if driver.aborted {
        return Ok(outcome(best, None, driver.nodes, start, false, false));
    }
    let found = driver.witness_at(0, 0, best);
    if driver.aborted {
        return Ok(outcome(best, None, driver.nodes, start, false, false));
    }
    assert!(found, "a maximum avoider must exist at the computed weight");
    let witness = driver.host;
    assert_eq!(witness.weight(), best);
    assert!(contains_any(&witness, fam)?.is_none(), "witness must avoid the family");
    Ok(outcome(best, Some(witness), driver.nodes, start, true, false))
}

struct MinDriver<'a> {
    fam: &'a Family,
    host: Tensor01,
    /// Host with every undecided cell optimistically set to 1; coverage
    /// impossible here is impossible in every completion.
    opt: Tensor01,
    free: Vec<(usize, Coord)>,
    /// Positions decided 0 whose coverage is not yet witnessed by decided
    /// 1-entries alone; re-verified at each leaf.
    pending: Vec<usize>,
    require_avoid: bool,
    best: u64,
    witness: Option<Tensor01>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl MinDriver<'_> {
    fn run(&mut self, pos: usize, weight: u64) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        if weight >= self.best {
            return;
        }
        if pos == self.free.len() {
            for pi in 0..self.pending.len() {
                let (idx, coord) = self.free[self.pending[pi]].clone();
                self.host.set_linear(idx, true);
                let covered =
                    creates_copy_at(&self.host, self.fam, &coord).expect("host cell just set");
                self.host.set_linear(idx, false);
                if !covered {
                    return;
                }
            }
            self.best = weight;
            self.witness = Some(self.host.clone());
            return;
        }
        let (idx, coord) = self.free[pos].clone();

        // 0 first: feasible only if the cell stays coverable in the most
        // generous completion of the remaining cells.
        if creates_copy_at(&self.opt, self.fam, &coord).expect("undecided cell is 1 in opt") {
            self.host.set_linear(idx, true);
            let covered_now =
                creates_copy_at(&self.host, self.fam, &coord).expect("host cell just set");
            self.host.set_linear(idx, false);
            self.opt.set_linear(idx, false);
            if covered_now {
                self.run(pos + 1, weight);
            } else {
                self.pending.push(pos);
                self.run(pos + 1, weight);
                self.pending.pop();
            }
            self.opt.set_linear(idx, true);
        }

        self.host.set_linear(idx, true);
        let allowed = !self.require_avoid
            || !creates_copy_at(&self.host, self.fam, &coord).expect("host cell just set");
        if allowed {
            self.run(pos + 1, weight + 1);
        }
        self.host.set_linear(idx, false);
    }
}

fn min_search(
    fam: &Family,
    n: usize,
    cfg: &SearchConfig,
    require_avoid: bool,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    let host = Tensor01::new_zero(vec![n; fam.d()])?;
    if require_avoid && zero_member_fits(fam, host.dims()) {
        return Ok(outcome(0, None, 0, start, true, true));
    }
    // The forced-zero reduction is sound only under avoidance; a
    // semisaturated matrix may put 1s anywhere.
    let free: Vec<(usize, Coord)> = if require_avoid {
        let mask = forced_zero_mask(host.dims(), fam)?;
        (0..host.cells()).filter(|&i| !mask[i]).map(|i| (i, host.coord_of(i))).collect()
    } else {
        (0..host.cells()).map(|i| (i, host.coord_of(i))).collect()
    };
    if free.len() > cfg.max_cells {
        return Ok(outcome(0, None, 0, start, false, false));
    }
    // Greedy upper bound seeds the weight prune.
    let bound = if require_avoid {
        saturate_greedy(fam, &host)?.weight()
    } else {
        strip_greedy(fam, host.dims())?.weight()
    };
    let mut opt = host.clone();
    for &(idx, _) in &free {
        opt.set_linear(idx, true);
    }
    let mut driver = MinDriver {
        fam,
        host,
        opt,
        free,
        pending: Vec::new(),
        require_avoid,
        best: bound + 1,
        witness: None,
        nodes: 0,
        max_nodes: cfg.max_nodes,
        aborted: false,
    };
    driver.run(0, 0);
    if driver.aborted {
        let value = if driver.witness.is_some() { driver.best } else { 0 };
        return Ok(outcome(value, driver.witness, driver.nodes, start, false, false));
    }
    let witness = driver.witness.expect("the greedy matrix is a reachable leaf");
    assert_eq!(witness.weight(), driver.best);
    if require_avoid {
        assert!(is_saturated(&witness, fam)?, "sat witness must be saturated");
    } else {
        assert!(is_semisaturated(&witness, fam)?, "ssat witness must be semisaturated");
    }
    Ok(outcome(driver.best, Some(witness), driver.nodes, start, true, false))
}

/// Minimum weight of a saturated n x ... x n matrix: avoids the family and
/// every 0-flip completes a copy.
pub fn sat_exact(fam: &Family, n: usize) -> Result<SearchOutcome> {
    sat_exact_with(fam, n, &SearchConfig::for_minima())
}

pub fn sat_exact_with(fam: &Family, n: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    min_search(fam, n, cfg, true)
}

/// Minimum weight of a semisaturated n x ... x n matrix: every 0-flip
/// completes a copy through the flipped cell (avoidance not required).
pub fn ssat_exact(fam: &Family, n: usize) -> Result<SearchOutcome> {
    ssat_exact_with(fam, n, &SearchConfig::for_minima())
}

pub fn ssat_exact_with(fam: &Family, n: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    min_search(fam, n, cfg, false)
}

/// Whether m avoids the family and every 0-flip completes a copy. Because m
/// avoids, a copy in m + c necessarily passes through c, so the pinned
/// query is exhaustive.
pub fn is_saturated(m: &Tensor01, fam: &Family) -> Result<bool> {
    if contains_any(m, fam)?.is_some() {
        return Ok(false);
    }
    let mut host = m.clone();
    for i in 0..host.cells() {
        if !host.get_linear(i) {
            host.set_linear(i, true);
            let c = host.coord_of(i);
            let covered = creates_copy_at(&host, fam, &c)?;
            host.set_linear(i, false);
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every 0-flip completes a new copy, one mapping a pattern
/// 1-entry onto the flipped cell. m itself may contain family members.
pub fn is_semisaturated(m: &Tensor01, fam: &Family) -> Result<bool> {
    let mut host = m.clone();
    for i in 0..host.cells() {
        if !host.get_linear(i) {
            host.set_linear(i, true);
            let c = host.coord_of(i);
            let covered = creates_copy_at(&host, fam, &c)?;
            host.set_linear(i, false);
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complete an avoider to a saturated matrix: one pass over the cells in
/// lexicographic order, flipping whenever avoidance survives. Skipped cells
/// stay unflippable because copies persist as 1s accumulate, so a single
/// pass reaches a fixpoint.
pub fn saturate_greedy(fam: &Family, seed: &Tensor01) -> Result<Tensor01> {
    if let Some((i, _)) = contains_any(seed, fam)? {
        return Err(Error::SeedContains(i));
    }
    let mut m = seed.clone();
    for i in 0..m.cells() {
        if !m.get_linear(i) {
            m.set_linear(i, true);
            let c = m.coord_of(i);
            if creates_copy_at(&m, fam, &c)? {
                m.set_linear(i, false);
            }
        }
    }
    Ok(m)
}

// Semisaturated upper bound: from the all-ones matrix, drop 1s in
// lexicographic order whenever the property survives.
fn strip_greedy(fam: &Family, dims: &[usize]) -> Result<Tensor01> {
    let mut m = Tensor01::new_zero(dims.to_vec())?;
    for i in 0..m.cells() {
        m.set_linear(i, true);
    }
    for i in 0..m.cells() {
        m.set_linear(i, false);
        if !is_semisaturated(&m, fam)? {
            m.set_linear(i, true);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_bdr, family_pkr, single_one_saturated};
    use crate::containment::contains_using;

    fn t(dims: &[usize], ones: &[&[usize]]) -> Tensor01 {
        Tensor01::from_ones(dims.to_vec(), &ones.iter().map(|o| o.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn all_ones(dims: &[usize]) -> Tensor01 {
        let mut m = Tensor01::new_zero(dims.to_vec()).unwrap();
        for i in 0..m.cells() {
            m.set_linear(i, true);
        }
        m
    }

    fn i2() -> Family {
        Family::single(t(&[2, 2], &[&[1, 1], &[2, 2]]))
    }

    fn j22() -> Family {
        Family::single(all_ones(&[2, 2]))
    }

    fn every_host(n: usize, d: usize) -> impl Iterator<Item = Tensor01> {
        let dims = vec![n; d];
        let cells: usize = dims.iter().product();
        (0u64..1 << cells).map(move |bits| {
            let mut m = Tensor01::new_zero(dims.clone()).unwrap();
            for i in 0..cells {
                m.set_linear(i, bits >> i & 1 == 1);
            }
            m
        })
    }

    fn char_vec(m: &Tensor01) -> Vec<bool> {
        (0..m.cells()).map(|i| m.get_linear(i)).collect()
    }

    // Independent definitions for the oracles: full containment scan for
    // avoidance, pinned containment for coverage.
    fn oracle_avoids(m: &Tensor01, fam: &Family) -> bool {
        contains_any(m, fam).unwrap().is_none()
    }

    fn oracle_saturated(m: &Tensor01, fam: &Family) -> bool {
        if !oracle_avoids(m, fam) {
            return false;
        }
        (0..m.cells()).all(|i| {
            if m.get_linear(i) {
                return true;
            }
            let flipped = m.set(&m.coord_of(i), true).unwrap();
            contains_any(&flipped, fam).unwrap().is_some()
        })
    }

    fn oracle_semisaturated(m: &Tensor01, fam: &Family) -> bool {
        (0..m.cells()).all(|i| {
            if m.get_linear(i) {
                return true;
            }
            let c = m.coord_of(i);
            let flipped = m.set(&c, true).unwrap();
            fam.patterns().iter().any(|p| contains_using(&flipped, p, &c).unwrap())
        })
    }

    fn oracle_min(
        n: usize,
        d: usize,
        keep: impl Fn(&Tensor01) -> bool,
    ) -> (u64, Tensor01) {
        every_host(n, d)
            .filter(keep)
            .map(|m| (m.weight(), m))
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| char_vec(&a.1).cmp(&char_vec(&b.1))))
            .unwrap()
    }

    #[test]
    fn ex_identity_matches_formula() {
        for n in 2..=4usize {
            let out = ex_exact(&i2(), n).unwrap();
            assert!(out.exact);
            assert_eq!(out.value, (2 * n - 1) as u64);
            assert!(!out.no_solution);
            let w = out.witness.unwrap();
            assert_eq!(w.weight(), out.value);
        }
    }

    #[test]
    fn ex_all_ones_block() {
        let out = ex_exact(&j22(), 3).unwrap();
        assert_eq!(out.value, 6);
        assert!(out.exact);
    }

    #[test]
    fn ex_matches_brute_force_with_lex_least_witness() {
        for fam in [i2(), j22(), family_pkr(2, 1, 0).unwrap()] {
            let brute = every_host(3, 2)
                .filter(|m| oracle_avoids(m, &fam))
                .map(|m| (m.weight(), m))
                .max_by(|a, b| a.0.cmp(&b.0).then_with(|| char_vec(&b.1).cmp(&char_vec(&a.1))))
                .unwrap();
            let out = ex_exact(&fam, 3).unwrap();
            assert_eq!(out.value, brute.0);
            assert_eq!(out.witness.unwrap(), brute.1);
        }
    }

    #[test]
    fn ex_uses_forced_zero_reduction() {
        // P_2 pins every 1 outside column 1; Q caps the column at one 1
        let fam = family_pkr(2, 1, 0).unwrap();
        let out = ex_exact_with(&fam, 3, &SearchConfig { max_cells: 3, max_nodes: 1 << 20 })
            .unwrap();
        assert!(out.exact);
        assert_eq!(out.value, 1);
    }

    #[test]
    fn ex_knr_small_grid() {
        let out = ex_exact(&family_pkr(2, 2, 1).unwrap(), 3).unwrap();
        assert_eq!(out.value, 6); // k * n^r
        let out = ex_exact(&family_pkr(2, 1, 1).unwrap(), 4).unwrap();
        assert_eq!(out.value, 4);
    }

    #[test]
    fn ex_detects_missing_avoider() {
        let zero = Tensor01::new_zero(vec![1, 1]).unwrap();
        let fam = Family::new(vec![zero, t(&[2, 2], &[&[1, 1]])]).unwrap();
        let out = ex_exact(&fam, 3).unwrap();
        assert!(out.no_solution);
        assert_eq!(out.value, 0);
        assert!(out.witness.is_none());
        assert!(out.exact);
    }

    #[test]
    fn guards_return_inexact_outcomes() {
        let out = ex_exact_with(&i2(), 3, &SearchConfig { max_cells: 5, max_nodes: 1000 })
            .unwrap();
        assert!(!out.exact);
        assert_eq!(out.nodes, 0);

        let out = ex_exact_with(&i2(), 3, &SearchConfig { max_cells: 30, max_nodes: 3 })
            .unwrap();
        assert!(!out.exact);
        assert!(out.nodes >= 3);

        let out = sat_exact_with(&i2(), 3, &SearchConfig { max_cells: 5, max_nodes: 1000 })
            .unwrap();
        assert!(!out.exact);
    }

    #[test]
    fn sat_identity_equals_ex() {
        for n in 3..=4usize {
            let sat = sat_exact(&i2(), n).unwrap();
            let ex = ex_exact(&i2(), n).unwrap();
            assert!(sat.exact);
            assert_eq!(sat.value, ex.value);
        }
    }

    #[test]
    fn sat_matches_brute_force_with_lex_least_witness() {
        for fam in [i2(), j22(), family_bdr(2, 1).unwrap().1] {
            let (bw, bm) = oracle_min(3, 2, |m| oracle_saturated(m, &fam));
            let out = sat_exact(&fam, 3).unwrap();
            assert_eq!(out.value, bw);
            assert_eq!(out.witness.unwrap(), bm);
        }
    }

    #[test]
    fn sat_column_family() {
        // P_{2,1,1} = {2x1 column}: saturation needs one 1 per column
        let fam = family_pkr(2, 1, 1).unwrap();
        let out = sat_exact(&fam, 3).unwrap();
        assert_eq!(out.value, 3);
    }

    #[test]
    fn sat_corner_family_is_constant() {
        let (_, fam) = family_bdr(2, 1).unwrap();
        let out = sat_exact(&fam, 3).unwrap();
        assert_eq!(out.value, 1);
        assert_eq!(out.witness.unwrap().ones(), vec![vec![1, 1]]);
    }

    #[test]
    fn sat_reports_no_solution() {
        let zero = Tensor01::new_zero(vec![1, 1]).unwrap();
        let fam = Family::new(vec![zero]).unwrap();
        let out = sat_exact(&fam, 2).unwrap();
        assert!(out.no_solution);
        assert!(out.witness.is_none());
    }

    #[test]
    fn sat_of_unfittable_pattern_is_all_ones() {
        let fam = Family::single(all_ones(&[3, 3]));
        let out = sat_exact(&fam, 2).unwrap();
        assert_eq!(out.value, 4);
        assert_eq!(out.witness.unwrap(), all_ones(&[2, 2]));
    }

    #[test]
    fn ssat_identity_is_four_corners() {
        let out = ssat_exact(&i2(), 3).unwrap();
        assert!(out.exact);
        assert_eq!(out.value, 4);
        let (bw, bm) = oracle_min(3, 2, |m| oracle_semisaturated(m, &i2()));
        assert_eq!(out.value, bw);
        assert_eq!(out.witness.unwrap(), bm);
    }

    #[test]
    fn ssat_matches_brute_force() {
        for fam in [j22(), family_pkr(2, 1, 0).unwrap()] {
            let (bw, bm) = oracle_min(3, 2, |m| oracle_semisaturated(m, &fam));
            let out = ssat_exact(&fam, 3).unwrap();
            assert_eq!(out.value, bw);
            assert_eq!(out.witness.unwrap(), bm);
        }
    }

    #[test]
    fn ssat_of_single_one_is_zero() {
        let fam = Family::single(t(&[1, 1], &[&[1, 1]]));
        let out = ssat_exact(&fam, 4).unwrap();
        assert_eq!(out.value, 0);
        assert_eq!(out.witness.unwrap().weight(), 0);
    }

    #[test]
    fn ssat_three_dimensional_brute_force() {
        let fam = Family::single(all_ones(&[2, 2, 2]));
        let (bw, _) = oracle_min(2, 3, |m| oracle_semisaturated(m, &fam));
        let out = ssat_exact(&fam, 2).unwrap();
        assert_eq!(out.value, bw);
    }

    #[test]
    fn saturation_predicates() {
        let p = t(&[1, 2], &[&[1, 1]]);
        let m = single_one_saturated(&p, 3).unwrap();
        assert!(is_saturated(&m, &Family::single(p)).unwrap());

        let zero3 = Tensor01::new_zero(vec![3, 3]).unwrap();
        assert!(!is_saturated(&zero3, &j22()).unwrap());
        assert!(!is_semisaturated(&zero3, &j22()).unwrap());

        // all-zero vs single-one pattern: every flip is itself a new copy
        let single = Family::single(t(&[1, 1], &[&[1, 1]]));
        let zero4 = Tensor01::new_zero(vec![4, 4]).unwrap();
        assert!(is_semisaturated(&zero4, &single).unwrap());

        // semisaturation does not require avoidance
        assert!(is_semisaturated(&all_ones(&[3, 3]), &j22()).unwrap());
        assert!(!is_saturated(&all_ones(&[3, 3]), &j22()).unwrap());
    }

    #[test]
    fn greedy_reaches_a_saturated_matrix() {
        let zero = Tensor01::new_zero(vec![4, 4]).unwrap();
        let m = saturate_greedy(&i2(), &zero).unwrap();
        assert!(is_saturated(&m, &i2()).unwrap());
        assert_eq!(m.weight(), 7); // sat = ex = 7 for the identity at n = 4

        // a saturated seed is a fixpoint
        let again = saturate_greedy(&i2(), &m).unwrap();
        assert_eq!(again, m);

        let bad = saturate_greedy(&i2(), &all_ones(&[4, 4]));
        assert!(matches!(bad, Err(Error::SeedContains(0))));
    }

    #[test]
    fn greedy_weight_is_sandwiched() {
        for fam in [i2(), j22()] {
            let zero = Tensor01::new_zero(vec![3, 3]).unwrap();
            let g = saturate_greedy(&fam, &zero).unwrap().weight();
            assert!(sat_exact(&fam, 3).unwrap().value <= g);
            assert!(g <= ex_exact(&fam, 3).unwrap().value);
        }
    }

    #[test]
    fn ex_monotone_and_witness_saturated() {
        for fam in [i2(), j22()] {
            let mut prev = 0;
            for n in 2..=4usize {
                let out = ex_exact(&fam, n).unwrap();
                assert!(out.value >= prev);
                prev = out.value;
                assert!(is_saturated(&out.witness.unwrap(), &fam).unwrap());
            }
        }
    }

    #[test]
    fn ssat_antimonotone_in_the_family() {
        // P subset of Q implies ssat(Q) <= ssat(P)
        let p = j22();
        let q = Family::new(vec![all_ones(&[2, 2]), t(&[2, 2], &[&[1, 1], &[2, 2]])]).unwrap();
        for n in 2..=3usize {
            assert!(ssat_exact(&q, n).unwrap().value <= ssat_exact(&p, n).unwrap().value);
        }
    }

    #[test]
    fn outcomes_are_deterministic() {
        let a = ex_exact(&i2(), 4).unwrap();
        let b = ex_exact(&i2(), 4).unwrap();
        assert_eq!((a.value, a.nodes, &a.witness), (b.value, b.nodes, &b.witness));
        let a = ssat_exact(&j22(), 3).unwrap();
        let b = ssat_exact(&j22(), 3).unwrap();
        assert_eq!((a.value, a.nodes, &a.witness), (b.value, b.nodes, &b.witness));
    }
}
