//! Pattern containment: a host contains a pattern when strictly increasing
//! per-dimension index maps send every 1-entry of the pattern onto a 1-entry
//! of the host. Everything quantitative in this crate sits on top of these
//! three queries.

use crate::constructions::Family;
use crate::error::{Error, Result};
use crate::tensor::{Coord, Tensor01};

/// Witness for containment: one strictly increasing map per dimension.
/// `maps[i][j-1]` is the host index the pattern index j of dimension i+1
/// lands on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    maps: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Host coordinate a pattern coordinate is sent to.
    pub fn apply(&self, coord: &[usize]) -> Coord {
        coord.iter().zip(&self.maps).map(|(&c, m)| m[c - 1]).collect()
    }

    /// Concatenated maps; embeddings are compared lexicographically on this.
    pub fn flattened(&self) -> Vec<usize> {
        self.maps.iter().flatten().copied().collect()
    }
}

/// Advance a strictly increasing combination with values at most `hi`
/// to its lexicographic successor. Returns false when exhausted.
pub(crate) fn next_combination(v: &mut [usize], hi: usize) -> bool {
    let k = v.len();
    for i in (0..k).rev() {
        if v[i] < hi - (k - 1 - i) {
            v[i] += 1;
            for j in i + 1..k {
                v[j] = v[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn check_dims(host: &Tensor01, pat: &Tensor01) -> Result<()> {
    if host.d() != pat.d() {
        return Err(Error::DimMismatch { left: host.d(), right: pat.d() });
    }
    Ok(())
}

fn fits(host: &Tensor01, pat: &Tensor01) -> bool {
    pat.dims().iter().zip(host.dims()).all(|(&p, &n)| p <= n) && pat.weight() <= host.weight()
}

/// Search for an embedding of `pat` in `host`. Returns the lexicographically
/// least one (in flattened map order), or None when `host` avoids `pat`.
pub fn contains(host: &Tensor01, pat: &Tensor01) -> Result<Option<Embedding>> {
    check_dims(host, pat)?;
    if !fits(host, pat) {
        return Ok(None);
    }
    let ones = pat.ones();
    let mut maps: Vec<Vec<usize>> = pat.dims().iter().map(|&p| (1..=p).collect()).collect();
    if search_from(host, &ones, 0, &mut maps) {
        Ok(Some(Embedding { maps }))
    } else {
        Ok(None)
    }
}

// DFS over dimensions with per-dimension combinations ascending, so the
// first complete assignment that verifies is the lex-least embedding.
fn search_from(host: &Tensor01, ones: &[Coord], dim: usize, maps: &mut Vec<Vec<usize>>) -> bool {
    if dim == maps.len() {
        return verify(host, ones, maps);
    }
    let n = host.dims()[dim];
    let k = maps[dim].len();
    maps[dim] = (1..=k).collect();
    loop {
        if search_from(host, ones, dim + 1, maps) {
            return true;
        }
        if !next_combination(&mut maps[dim], n) {
            return false;
        }
    }
}

fn verify(host: &Tensor01, ones: &[Coord], maps: &[Vec<usize>]) -> bool {
    ones.iter().all(|o| {
        let mut idx = 0usize;
        for ((&c, m), &n) in o.iter().zip(maps).zip(host.dims()) {
            idx = idx * n + (m[c - 1] - 1);
        }
        host.get_linear(idx)
    })
}

/// Whether some embedding of `pat` maps one of its 1-entries exactly onto
/// `cell`. This is the "new copy" test: a copy created by flipping `cell`
/// from 0 to 1 must use the flipped entry, since no other entry changed.
pub fn contains_using(host: &Tensor01, pat: &Tensor01, cell: &[usize]) -> Result<bool> {
    check_dims(host, pat)?;
    if !host.get(cell)? {
        return Err(Error::CellIsZero(cell.to_vec()));
    }
    if pat.weight() == 0 || !fits(host, pat) {
        return Ok(false);
    }
    let ones = pat.ones();
    let mut maps: Vec<Vec<usize>> = vec![Vec::new(); pat.d()];
    for anchor in &ones {
        let feasible = (0..pat.d()).all(|i| {
            anchor[i] - 1 <= cell[i] - 1 && pat.dims()[i] - anchor[i] <= host.dims()[i] - cell[i]
        });
        if feasible && pinned_search(host, &ones, anchor, cell, pat.dims(), 0, &mut maps) {
            return Ok(true);
        }
    }
    Ok(false)
}

// DFS as in search_from, but dimension i's map is forced to send
// anchor[i] to cell[i]: pick anchor[i]-1 values below cell[i] and
// p_i - anchor[i] values above it.
fn pinned_search(
    host: &Tensor01,
    ones: &[Coord],
    anchor: &[usize],
    cell: &[usize],
    pat_dims: &[usize],
    dim: usize,
    maps: &mut Vec<Vec<usize>>,
) -> bool {
    if dim == maps.len() {
        return verify(host, ones, maps);
    }
    let n = host.dims()[dim];
    let (p, a, c) = (pat_dims[dim], anchor[dim], cell[dim]);
    let mut lower: Vec<usize> = (1..a).collect();
    loop {
        let mut upper: Vec<usize> = (c + 1..=c + (p - a)).collect();
        loop {
            maps[dim] = lower.iter().chain([&c]).chain(&upper).copied().collect();
            if pinned_search(host, ones, anchor, cell, pat_dims, dim + 1, maps) {
                return true;
            }
            if !next_combination(&mut upper, n) {
                break;
            }
        }
        if !next_combination(&mut lower, c - 1) {
            return false;
        }
    }
}

/// First family member (in family order) contained in `host`, with its
/// lex-least embedding; None means `host` avoids the whole family.
pub fn contains_any(host: &Tensor01, fam: &Family) -> Result<Option<(usize, Embedding)>> {
    if host.d() != fam.d() {
        return Err(Error::DimMismatch { left: host.d(), right: fam.d() });
    }
    for (i, p) in fam.patterns().iter().enumerate() {
        if let Some(e) = contains(host, p)? {
            return Ok(Some((i, e)));
        }
    }
    Ok(None)
}

/// Whether flipping `cell` (already 1 in `host`) completed a new copy of
/// some family member. Hot path of the incremental searches.
pub(crate) fn creates_copy_at(host: &Tensor01, fam: &Family, cell: &[usize]) -> Result<bool> {
    for p in fam.patterns() {
        if contains_using(host, p, cell)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_pkr, identity_equivalents};
    use itertools::Itertools;
    use proptest::prelude::*;

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

    // Oracle: enumerate every per-dimension combination product in lex
    // order and return the first valid assignment.
    fn naive_contains(host: &Tensor01, pat: &Tensor01) -> Option<Vec<Vec<usize>>> {
        if pat.dims().iter().zip(host.dims()).any(|(&p, &n)| p > n) {
            return None;
        }
        let ones = pat.ones();
        pat.dims()
            .iter()
            .zip(host.dims())
            .map(|(&p, &n)| (1..=n).combinations(p))
            .multi_cartesian_product()
            .find(|maps| {
                ones.iter().all(|o| {
                    let img: Vec<usize> = o.iter().zip(maps).map(|(&c, m)| m[c - 1]).collect();
                    host.get(&img).unwrap()
                })
            })
    }

    fn naive_contains_using(host: &Tensor01, pat: &Tensor01, cell: &[usize]) -> bool {
        if pat.dims().iter().zip(host.dims()).any(|(&p, &n)| p > n) {
            return false;
        }
        let ones = pat.ones();
        pat.dims()
            .iter()
            .zip(host.dims())
            .map(|(&p, &n)| (1..=n).combinations(p))
            .multi_cartesian_product()
            .any(|maps| {
                let valid = ones.iter().all(|o| {
                    let img: Vec<usize> = o.iter().zip(&maps).map(|(&c, m)| m[c - 1]).collect();
                    host.get(&img).unwrap()
                });
                valid
                    && ones.iter().any(|o| {
                        o.iter().zip(&maps).map(|(&c, m)| m[c - 1]).eq(cell.iter().copied())
                    })
            })
    }

    fn arb_tensor(dims: Vec<usize>) -> impl Strategy<Value = Tensor01> {
        let cells: usize = dims.iter().product();
        proptest::collection::vec(any::<bool>(), cells).prop_map(move |bits| {
            let mut m = Tensor01::new_zero(dims.clone()).unwrap();
            for (i, &b) in bits.iter().enumerate() {
                m.set_linear(i, b);
            }
            m
        })
    }

    #[test]
    fn dominated_pattern_found_with_identity_maps() {
        let host = all_ones(&[2, 2]);
        let e = contains(&host, &t(&[2, 2], &[&[1, 1], &[2, 2]])).unwrap().unwrap();
        assert_eq!(e.maps(), &[vec![1, 2], vec![1, 2]]);
        assert_eq!(e.apply(&[2, 1]), vec![2, 1]);
    }

    #[test]
    fn identity_avoids_row_pair() {
        let host = t(&[3, 3], &[&[1, 1], &[2, 2], &[3, 3]]);
        let pat = all_ones(&[1, 2]);
        assert_eq!(contains(&host, &pat).unwrap(), None);
    }

    #[test]
    fn all_zero_pattern_contained_when_dims_fit() {
        let host = t(&[2, 2], &[]);
        let pat = Tensor01::new_zero(vec![1, 1]).unwrap();
        let e = contains(&host, &pat).unwrap().unwrap();
        assert_eq!(e.maps(), &[vec![1], vec![1]]);
        let tall = Tensor01::new_zero(vec![3, 1]).unwrap();
        assert_eq!(contains(&host, &tall).unwrap(), None);
    }

    #[test]
    fn oversized_pattern_never_contained() {
        let host = all_ones(&[2, 2]);
        assert!(contains(&host, &all_ones(&[2, 3])).unwrap().is_none());
        assert!(contains(&host, &all_ones(&[1, 1, 1])).is_err());
    }

    #[test]
    fn lex_least_embedding_prefers_low_rows() {
        // two copies of the row pair; the one in row 1 with columns {1,3} wins
        let host = t(&[3, 3], &[&[1, 1], &[1, 3], &[2, 1], &[2, 2]]);
        let e = contains(&host, &all_ones(&[1, 2])).unwrap().unwrap();
        assert_eq!(e.maps(), &[vec![1], vec![1, 3]]);
    }

    #[test]
    fn contains_using_spec_cases() {
        let host = all_ones(&[2, 2]);
        assert!(contains_using(&host, &all_ones(&[2, 2]), &[1, 1]).unwrap());

        let host = t(&[3, 3], &[&[1, 1], &[3, 3]]);
        assert!(!contains_using(&host, &all_ones(&[1, 2]), &[1, 1]).unwrap());

        // border ring of a 4x4 with the interior cell (2,2) flipped on
        let mut ring = Tensor01::new_zero(vec![4, 4]).unwrap();
        for x in 1..=4usize {
            for y in 1..=4usize {
                if x == 1 || x == 4 || y == 1 || y == 4 {
                    ring = ring.set(&[x, y], true).unwrap();
                }
            }
        }
        let flipped = ring.set(&[2, 2], true).unwrap();
        assert!(contains_using(&flipped, &all_ones(&[2, 2]), &[2, 2]).unwrap());
        // without going through (2,2) the ring itself already contains J_22,
        // which is exactly why the pinned check must not look elsewhere
        assert!(contains(&ring, &all_ones(&[2, 2])).unwrap().is_some());
    }

    #[test]
    fn contains_using_rejects_zero_cell_and_zero_pattern() {
        let host = t(&[2, 2], &[&[1, 1]]);
        assert!(matches!(
            contains_using(&host, &all_ones(&[1, 1]), &[2, 2]),
            Err(Error::CellIsZero(_))
        ));
        let empty = Tensor01::new_zero(vec![1, 1]).unwrap();
        assert!(!contains_using(&host, &empty, &[1, 1]).unwrap());
    }

    #[test]
    fn contains_any_reports_first_match() {
        let i2 = t(&[2, 2], &[&[1, 1], &[2, 2]]);
        let d22 = identity_equivalents(2, 2).unwrap();
        let hit = contains_any(&i2, &d22).unwrap().unwrap();
        assert_eq!(hit.0, 0);

        let zero = Tensor01::new_zero(vec![3, 3]).unwrap();
        assert!(contains_any(&zero, &d22).unwrap().is_none());

        let p210 = family_pkr(2, 1, 0).unwrap();
        let single = t(&[3, 3], &[&[1, 1]]);
        assert!(contains_any(&single, &p210).unwrap().is_none());
        let two = single.set(&[2, 1], true).unwrap();
        let hit = contains_any(&two, &p210).unwrap().unwrap();
        assert_eq!(hit.0, 1); // Q, the column pair
        assert_eq!(hit.1.maps(), &[vec![1, 2], vec![1]]);
    }

    #[test]
    fn creates_copy_at_scans_whole_family() {
        let p210 = family_pkr(2, 1, 0).unwrap();
        let host = t(&[3, 3], &[&[1, 1], &[3, 3]]);
        // (3,3) completes a copy of P_2 (a one in a later column); (1,1)
        // completes nothing: no column pair and no later-column one uses it
        assert!(creates_copy_at(&host, &p210, &[3, 3]).unwrap());
        assert!(!creates_copy_at(&host, &p210, &[1, 1]).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_naive_oracle(
            host in arb_tensor(vec![3, 3]),
            pat in arb_tensor(vec![2, 2]),
        ) {
            let got = contains(&host, &pat).unwrap().map(|e| e.maps().to_vec());
            prop_assert_eq!(got, naive_contains(&host, &pat));
        }

        #[test]
        fn matches_naive_oracle_3d(
            host in arb_tensor(vec![2, 3, 2]),
            pat in arb_tensor(vec![2, 2, 1]),
        ) {
            let got = contains(&host, &pat).unwrap().map(|e| e.maps().to_vec());
            prop_assert_eq!(got, naive_contains(&host, &pat));
        }

        #[test]
        fn pinned_matches_naive_oracle(
            host in arb_tensor(vec![3, 3]),
            pat in arb_tensor(vec![2, 2]),
            cell_idx in 0usize..9,
        ) {
            let ones = host.ones();
            prop_assume!(!ones.is_empty());
            let cell = &ones[cell_idx % ones.len()];
            prop_assert_eq!(
                contains_using(&host, &pat, cell).unwrap(),
                naive_contains_using(&host, &pat, cell)
            );
        }

        #[test]
        fn reflexive_with_identity_embedding(m in arb_tensor(vec![2, 3])) {
            let e = contains(&m, &m).unwrap().unwrap();
            prop_assert_eq!(e.maps(), &[vec![1, 2], vec![1, 2, 3]]);
        }

        #[test]
        fn transitive_on_small_corpus(
            a in arb_tensor(vec![3, 3]),
            b in arb_tensor(vec![2, 2]),
            c in arb_tensor(vec![2, 2]),
        ) {
            if contains(&a, &b).unwrap().is_some() && contains(&b, &c).unwrap().is_some() {
                prop_assert!(contains(&a, &c).unwrap().is_some());
            }
        }

        #[test]
        fn adding_ones_preserves_containment(
            host in arb_tensor(vec![3, 3]),
            pat in arb_tensor(vec![2, 2]),
            cell_idx in 0usize..9,
        ) {
            if contains(&host, &pat).unwrap().is_some() {
                let c = host.coord_of(cell_idx);
                let bigger = host.set(&c, true).unwrap();
                prop_assert!(contains(&bigger, &pat).unwrap().is_some());
            }
        }

        #[test]
        fn containment_commutes_with_exchange(
            host in arb_tensor(vec![3, 3]),
            pat in arb_tensor(vec![2, 2]),
        ) {
            let before = contains(&host, &pat).unwrap().is_some();
            let after = contains(
                &host.exchange_dims(1, 2).unwrap(),
                &pat.exchange_dims(1, 2).unwrap(),
            )
            .unwrap()
            .is_some();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn pinned_copy_implies_containment_and_back(
            host in arb_tensor(vec![3, 3]),
            pat in arb_tensor(vec![2, 2]),
        ) {
            prop_assume!(pat.weight() > 0);
            match contains(&host, &pat).unwrap() {
                Some(e) => {
                    // some pattern 1-entry's image admits a pinned copy
                    let hit = pat.ones().iter().any(|o| {
                        contains_using(&host, &pat, &e.apply(o)).unwrap()
                    });
                    prop_assert!(hit);
                }
                None => {
                    for c in host.ones() {
                        prop_assert!(!contains_using(&host, &pat, &c).unwrap());
                    }
                }
            }
        }
    }
}
