//! Deterministic generators for the named matrices and families: identity
//! equivalents, the shared-coordinate family, the k-layer families,
//! saturation witnesses, and semisaturation witnesses.

use crate::containment::next_combination;
use crate::error::{Error, Result};
use crate::tensor::{Coord, FaceSpec, Side, Tensor01, MAX_DIMS};
use crate::transforms::insert_empty_layer;

/// Ordered list of same-dimensionality patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    d: usize,
    patterns: Vec<Tensor01>,
}

impl Family {
    pub fn new(patterns: Vec<Tensor01>) -> Result<Self> {
        let Some(first) = patterns.first() else {
            return Err(Error::EmptyFamily);
        };
        let d = first.d();
        for (i, p) in patterns.iter().enumerate() {
            if p.d() != d {
                return Err(Error::MixedFamily(d, p.d()));
            }
            if patterns[..i].contains(p) {
                return Err(Error::DuplicatePattern(i));
            }
        }
        Ok(Family { d, patterns })
    }

    pub fn single(pattern: Tensor01) -> Self {
        let d = pattern.d();
        Family { d, patterns: vec![pattern] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn patterns(&self) -> &[Tensor01] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

const ENUM_CELL_GUARD: u128 = 512;
const ENUM_COUNT_GUARD: u128 = 20_000_000;

fn binomial_capped(n: u128, k: u128, cap: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// The 2^{d-1} monotone diagonal permutation matrices of shape n0^d: each
/// dimension beyond the first independently ascends or descends.
/// Degenerate duplicates (n0 = 1) are removed.
pub fn identity_equivalents(n0: usize, d: usize) -> Result<Family> {
    if d == 0 {
        return Err(Error::EmptyDims);
    }
    if d > MAX_DIMS {
        return Err(Error::TooManyDims { d, max: MAX_DIMS });
    }
    let mut patterns: Vec<Tensor01> = Vec::new();
    for mask in 0u32..(1 << (d - 1)) {
        let ones: Vec<Coord> = (1..=n0)
            .map(|j| {
                (1..=d)
                    .map(|i| {
                        // dimension 2 owns the most significant sign bit
                        if i >= 2 && mask >> (d - i) & 1 == 1 {
                            n0 + 1 - j
                        } else {
                            j
                        }
                    })
                    .collect()
            })
            .collect();
        let t = Tensor01::from_ones(vec![n0; d], &ones)?;
        if !patterns.contains(&t) {
            patterns.push(t);
        }
    }
    Family::new(patterns)
}

/// Streaming enumeration of the n0^d-shaped matrices with exactly n0 ones
/// in which every pair of 1-entries shares a coordinate in some dimension.
/// Yields in lexicographic order of the sorted 1-cell lists.
pub struct JFamily {
    template: Tensor01,
    combo: Vec<usize>, // 1-based cell ranks, strictly increasing
    done: bool,
}

impl JFamily {
    fn qualifies(&self, combo: &[usize]) -> bool {
        let coords: Vec<Coord> = combo.iter().map(|&r| self.template.coord_of(r - 1)).collect();
        coords.iter().enumerate().all(|(i, a)| {
            coords[i + 1..].iter().all(|b| a.iter().zip(b).any(|(x, y)| x == y))
        })
    }
}

impl Iterator for JFamily {
    type Item = Tensor01;

    fn next(&mut self) -> Option<Tensor01> {
        while !self.done {
            let cur = self.combo.clone();
            self.done = !next_combination(&mut self.combo, self.template.cells());
            if self.qualifies(&cur) {
                let mut t = self.template.clone();
                for &r in &cur {
                    t.set_linear(r - 1, true);
                }
                return Some(t);
            }
        }
        None
    }
}

pub fn j_family(n0: usize, d: usize) -> Result<JFamily> {
    if d == 0 {
        return Err(Error::EmptyDims);
    }
    if n0 == 0 {
        return Err(Error::out_of_range("n0", "must be at least 1"));
    }
    let template = Tensor01::new_zero(vec![n0; d])?;
    let cells = template.cells() as u128;
    if cells > ENUM_CELL_GUARD {
        return Err(Error::EnumerationGuard(format!(
            "{n0}^{d} = {cells} cells exceeds the {ENUM_CELL_GUARD}-cell enumeration guard"
        )));
    }
    let count = binomial_capped(cells, n0 as u128, ENUM_COUNT_GUARD);
    if count > ENUM_COUNT_GUARD {
        return Err(Error::EnumerationGuard(format!(
            "C({cells},{n0}) exceeds the {ENUM_COUNT_GUARD}-subset enumeration guard"
        )));
    }
    Ok(JFamily { template, combo: (1..=n0).collect(), done: false })
}

/// The family forcing ex = k*n^r: one length-2 pattern per dimension in
/// [2, d-r] with its single 1 at the far end, then the column Q of k+1 ones
/// along dimension 1.
pub fn family_pkr(d: usize, k: usize, r: usize) -> Result<Family> {
    if d == 0 {
        return Err(Error::EmptyDims);
    }
    if k == 0 {
        return Err(Error::out_of_range("k", "must be at least 1"));
    }
    if r > d - 1 {
        return Err(Error::out_of_range("r", format!("{r} exceeds d-1 = {}", d - 1)));
    }
    let mut patterns = Vec::with_capacity(d - r);
    for i in 2..=(d - r) {
        let mut dims = vec![1; d];
        dims[i - 1] = 2;
        let mut coord = vec![1; d];
        coord[i - 1] = 2;
        patterns.push(Tensor01::from_ones(dims, &[coord])?);
    }
    let mut q_dims = vec![1; d];
    q_dims[0] = k + 1;
    let q_ones: Vec<Coord> = (1..=k + 1)
        .map(|j| {
            let mut c = vec![1; d];
            c[0] = j;
            c
        })
        .collect();
    patterns.push(Tensor01::from_ones(q_dims, &q_ones)?);
    Family::new(patterns)
}

/// The corner block B (ones where every coordinate is at most r, inside an
/// (r+1)^d shape) and the family of all single-flip extensions of B.
pub fn family_bdr(d: usize, r: usize) -> Result<(Tensor01, Family)> {
    if d < 2 {
        return Err(Error::out_of_range("d", "must be at least 2"));
    }
    if r == 0 {
        return Err(Error::out_of_range("r", "must be at least 1"));
    }
    let side = r + 1;
    let cells = (side as u128).pow(d as u32);
    if cells > ENUM_CELL_GUARD {
        return Err(Error::EnumerationGuard(format!(
            "{side}^{d} = {cells} cells exceeds the {ENUM_CELL_GUARD}-cell enumeration guard"
        )));
    }
    let mut b = Tensor01::new_zero(vec![side; d])?;
    for idx in 0..b.cells() {
        if b.coord_of(idx).iter().all(|&x| x <= r) {
            b.set_linear(idx, true);
        }
    }
    let mut patterns = Vec::new();
    for idx in 0..b.cells() {
        if !b.get_linear(idx) {
            let mut p = b.clone();
            p.set_linear(idx, true);
            patterns.push(p);
        }
    }
    let fam = Family::new(patterns)?;
    Ok((b, fam))
}

/// The unique n^d matrix saturated for a single-1-entry pattern: ones
/// exactly where some coordinate escapes the band [q_i, n-k_i+q_i].
pub fn single_one_saturated(p: &Tensor01, n: usize) -> Result<Tensor01> {
    if p.weight() != 1 {
        return Err(Error::NotSingleOne(p.weight()));
    }
    let k = p.dims();
    let q = p.ones().pop().expect("weight 1");
    let kmax = *k.iter().max().expect("non-empty dims");
    if n < kmax {
        return Err(Error::NTooSmall { n, why: format!("pattern side length {kmax} exceeds n") });
    }
    let mut m = Tensor01::new_zero(vec![n; p.d()])?;
    for idx in 0..m.cells() {
        let y = m.coord_of(idx);
        let outside = y
            .iter()
            .zip(k)
            .zip(&q)
            .any(|((&yi, &ki), &qi)| yi < qi || yi > n - ki + qi);
        if outside {
            m.set_linear(idx, true);
        }
    }
    Ok(m)
}

/// Semisaturation witness with O(n^k) ones: a 1 wherever at least d-k
/// coordinates fall outside their band [l_i, n+1-l_i], where l_i is the
/// largest side length of any family member in dimension i.
pub fn ssat_witness(fam: &Family, k: usize, n: usize) -> Result<Tensor01> {
    let d = fam.d();
    if k > d - 1 {
        return Err(Error::out_of_range("k", format!("{k} exceeds d-1 = {}", d - 1)));
    }
    let l: Vec<usize> = (0..d)
        .map(|i| fam.patterns().iter().map(|p| p.dims()[i]).max().expect("non-empty family"))
        .collect();
    let lmax = *l.iter().max().expect("d >= 1");
    if n <= 2 * lmax {
        return Err(Error::NTooSmall { n, why: format!("need n > 2*max(l_i) = {}", 2 * lmax) });
    }
    let mut m = Tensor01::new_zero(vec![n; d])?;
    for idx in 0..m.cells() {
        let x = m.coord_of(idx);
        let outside =
            x.iter().zip(&l).filter(|&(&xi, &li)| xi < li || xi > n + 1 - li).count();
        if outside >= d - k {
            m.set_linear(idx, true);
        }
    }
    Ok(m)
}

// A face is settled when it holds a 1-entry that is interior (strictly
// inside every unfixed dimension) and alone in each (d-1)-dimensional
// section through it that is orthogonal to the face.
fn face_has_settled_entry(m: &Tensor01, f: &FaceSpec) -> Result<bool> {
    let s = f.instantiate(m.dims())?;
    let fixed_dims = f.fixed_dims();
    'entries: for o in m.section_ones(&s)? {
        for i in 1..=m.d() {
            if !fixed_dims.contains(&i) && (o[i - 1] <= 1 || o[i - 1] >= m.dims()[i - 1]) {
                continue 'entries;
            }
        }
        let lonely = (1..=m.d())
            .filter(|j| !fixed_dims.contains(j))
            .all(|j| m.iter_ones().filter(|c| c[j - 1] == o[j - 1]).count() == 1);
        if lonely {
            return Ok(true);
        }
    }
    Ok(false)
}

// Grow every unfixed dimension by one layer at its midpoint and plant a 1
// on the face: pinned ends keep their side, free dimensions take the
// midpoint of the grown length.
fn grow_and_insert(m: &Tensor01, f: &FaceSpec) -> Result<Tensor01> {
    let fixed = f.fixed().to_vec();
    let fixed_dims = f.fixed_dims();
    let mut t = m.clone();
    for i in 1..=m.d() {
        if !fixed_dims.contains(&i) {
            let mid = (t.dims()[i - 1] + 2) / 2;
            t = insert_empty_layer(&t, i, mid - 1)?;
        }
    }
    let coord: Coord = (1..=t.d())
        .map(|i| match fixed.iter().find(|&&(j, _)| j == i) {
            Some(&(_, Side::Low)) => 1,
            Some(&(_, Side::High)) => t.dims()[i - 1],
            None => (t.dims()[i - 1] + 1) / 2,
        })
        .collect();
    t.set(&coord, true)
}

fn has_lonely_entry(m: &Tensor01) -> bool {
    m.iter_ones().any(|o| {
        (1..=m.d()).all(|j| m.iter_ones().filter(|c| c[j - 1] == o[j - 1]).count() == 1)
    })
}

const FACE_INSERTION_CAP: usize = 256;

/// Build a single pattern whose semisaturation exponent is exactly k.
/// Starting from an empty 4^d matrix, faces of each dimensionality in
/// [k+1, d-1] are settled in enumeration order (rescanning from the first
/// face after every insertion); a final center 1 is added if no entry is
/// alone in all of its (d-1)-dimensional sections.
pub fn ssat_exponent_pattern(d: usize, k: usize) -> Result<Tensor01> {
    if d < 2 {
        return Err(Error::out_of_range("d", "must be at least 2"));
    }
    if k > d - 1 {
        return Err(Error::out_of_range("k", format!("{k} exceeds d-1 = {}", d - 1)));
    }
    let mut m = Tensor01::new_zero(vec![4; d])?;
    let mut insertions = 0usize;
    for dp in (k + 1)..=(d - 1) {
        let faces = FaceSpec::enumerate(d, d - dp);
        'rescan: loop {
            for f in &faces {
                if !face_has_settled_entry(&m, f)? {
                    insertions += 1;
                    if insertions > FACE_INSERTION_CAP {
                        return Err(Error::EnumerationGuard(
                            "face insertion did not stabilize".into(),
                        ));
                    }
                    m = grow_and_insert(&m, f)?;
                    continue 'rescan;
                }
            }
            break;
        }
    }
    if !has_lonely_entry(&m) {
        let mut t = m;
        for i in 1..=d {
            let mid = (t.dims()[i - 1] + 2) / 2;
            t = insert_empty_layer(&t, i, mid - 1)?;
        }
        let center: Coord = t.dims().iter().map(|&l| (l + 1) / 2).collect();
        m = t.set(&center, true)?;
    }
    Ok(m)
}

/// The n^d matrix whose ones form the hyperplane x_i = v.
pub fn line_witness(n: usize, d: usize, i: usize, v: usize) -> Result<Tensor01> {
    if d == 0 {
        return Err(Error::EmptyDims);
    }
    let mut m = Tensor01::new_zero(vec![n; d])?;
    m.check_dim(i)?;
    if v == 0 || v > n {
        return Err(Error::out_of_range("layer value", format!("{v} not in [1, {n}]")));
    }
    for idx in 0..m.cells() {
        if m.coord_of(idx)[i - 1] == v {
            m.set_linear(idx, true);
        }
    }
    Ok(m)
}

/// Widen the first maximal run of empty layers in each dimension until the
/// matrix is target_n-cubed. Entry positions shift, values are preserved.
pub fn inflate_empty_layers(m: &Tensor01, target_n: usize) -> Result<Tensor01> {
    let mut shifts: Vec<(usize, usize, usize)> = Vec::new(); // (dim, after layer, delta)
    for i in 1..=m.d() {
        let li = m.dims()[i - 1];
        if li > target_n {
            return Err(Error::out_of_range(
                "target size",
                format!("dimension {i} has length {li} > {target_n}"),
            ));
        }
        let delta = target_n - li;
        if delta == 0 {
            continue;
        }
        match (1..=li).find(|&v| m.iter_ones().all(|c| c[i - 1] != v)) {
            Some(a) => shifts.push((i, a, delta)),
            None => return Err(Error::NoEmptyLayer(i)),
        }
    }
    let mut t = Tensor01::new_zero(vec![target_n; m.d()])?;
    for mut c in m.iter_ones() {
        for &(i, a, delta) in &shifts {
            if c[i - 1] > a {
                c[i - 1] += delta;
            }
        }
        let idx = t.offset(&c)?;
        t.set_linear(idx, true);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::contains;
    use proptest::prelude::*;

    fn t(dims: &[usize], ones: &[&[usize]]) -> Tensor01 {
        Tensor01::from_ones(dims.to_vec(), &ones.iter().map(|o| o.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn family_validation() {
        assert_eq!(Family::new(vec![]), Err(Error::EmptyFamily));
        let a = t(&[2, 2], &[&[1, 1]]);
        let b = t(&[1, 1, 1], &[&[1, 1, 1]]);
        assert!(matches!(Family::new(vec![a.clone(), b]), Err(Error::MixedFamily(2, 3))));
        assert_eq!(
            Family::new(vec![a.clone(), a.clone()]),
            Err(Error::DuplicatePattern(1))
        );
        let fam = Family::new(vec![a.clone(), t(&[2, 2], &[&[2, 2]])]).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.d(), 2);
        assert_eq!(Family::single(a).len(), 1);
    }

    #[test]
    fn identity_equivalents_two_dims() {
        let fam = identity_equivalents(2, 2).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.patterns()[0], t(&[2, 2], &[&[1, 1], &[2, 2]]));
        assert_eq!(fam.patterns()[1], t(&[2, 2], &[&[1, 2], &[2, 1]]));
    }

    #[test]
    fn identity_equivalents_are_permutation_matrices() {
        let fam = identity_equivalents(3, 3).unwrap();
        assert_eq!(fam.len(), 4);
        for p in fam.patterns() {
            assert_eq!(p.weight(), 3);
            // every i-row holds at most one 1: distinct ones differ everywhere
            let ones = p.ones();
            for (i, a) in ones.iter().enumerate() {
                for b in &ones[i + 1..] {
                    assert!(a.iter().zip(b).all(|(x, y)| x != y));
                }
            }
        }
    }

    #[test]
    fn identity_equivalents_degenerate_size_dedups() {
        let fam = identity_equivalents(1, 4).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.patterns()[0].dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn j_family_two_by_two() {
        let got: Vec<Tensor01> = j_family(2, 2).unwrap().collect();
        let expect = vec![
            t(&[2, 2], &[&[1, 1], &[1, 2]]),
            t(&[2, 2], &[&[1, 1], &[2, 1]]),
            t(&[2, 2], &[&[1, 2], &[2, 2]]),
            t(&[2, 2], &[&[2, 1], &[2, 2]]),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn j_family_members_share_coordinates() {
        let members: Vec<Tensor01> = j_family(2, 3).unwrap().collect();
        // 28 pairs of cells minus the 4 antipodal pairs
        assert_eq!(members.len(), 24);
        for m in &members {
            assert_eq!(m.weight(), 2);
            let ones = m.ones();
            assert!(ones[0].iter().zip(&ones[1]).any(|(x, y)| x == y));
        }
        assert_eq!(j_family(1, 3).unwrap().count(), 1);
    }

    #[test]
    fn j_family_guard_trips() {
        assert!(matches!(j_family(2, 10), Err(Error::TooManyDims { .. })));
        assert!(matches!(j_family(9, 3), Err(Error::EnumerationGuard(_))));
        assert!(matches!(j_family(8, 3), Err(Error::EnumerationGuard(_)))); // C(512,8) too big
    }

    #[test]
    fn dilworth_bound_at_two_by_two() {
        // every 2x2 matrix with more than (n0-1)^(1+2^(d-1)) = 1 one
        // contains a member of J union D
        let js: Vec<Tensor01> = j_family(2, 2).unwrap().collect();
        let ds = identity_equivalents(2, 2).unwrap();
        let mut all: Vec<Tensor01> = js;
        all.extend(ds.patterns().iter().cloned());
        for bits in 0u32..16 {
            let mut m = Tensor01::new_zero(vec![2, 2]).unwrap();
            for i in 0..4 {
                m.set_linear(i, bits >> i & 1 == 1);
            }
            if m.weight() > 1 {
                assert!(all.iter().any(|p| contains(&m, p).unwrap().is_some()));
            }
        }
    }

    #[test]
    fn pkr_families_match_the_construction() {
        let f221 = family_pkr(2, 2, 1).unwrap();
        assert_eq!(f221.len(), 1);
        assert_eq!(f221.patterns()[0], t(&[3, 1], &[&[1, 1], &[2, 1], &[3, 1]]));

        let f310 = family_pkr(3, 1, 0).unwrap();
        assert_eq!(f310.len(), 3);
        assert_eq!(f310.patterns()[0], t(&[1, 2, 1], &[&[1, 2, 1]]));
        assert_eq!(f310.patterns()[1], t(&[1, 1, 2], &[&[1, 1, 2]]));
        assert_eq!(f310.patterns()[2], t(&[2, 1, 1], &[&[1, 1, 1], &[2, 1, 1]]));

        let f210 = family_pkr(2, 1, 0).unwrap();
        assert_eq!(f210.patterns()[0], t(&[1, 2], &[&[1, 2]]));
        assert_eq!(f210.patterns()[1], t(&[2, 1], &[&[1, 1], &[2, 1]]));

        assert!(family_pkr(2, 0, 1).is_err());
        assert!(family_pkr(2, 1, 2).is_err());
    }

    #[test]
    fn bdr_corner_block_and_flips() {
        let (b, fam) = family_bdr(2, 1).unwrap();
        assert_eq!(b, t(&[2, 2], &[&[1, 1]]));
        assert_eq!(fam.len(), 3);
        for p in fam.patterns() {
            assert_eq!(p.weight(), 2);
            assert!(contains(p, &b).unwrap().is_some());
        }

        let (b2, fam2) = family_bdr(2, 2).unwrap();
        assert_eq!(b2.weight(), 4);
        assert_eq!(fam2.len(), 5);
        for p in fam2.patterns() {
            assert!(contains(p, &b2).unwrap().is_some());
        }

        let (b3, fam3) = family_bdr(3, 1).unwrap();
        assert_eq!(b3.weight(), 1);
        assert_eq!(fam3.len(), 7);
    }

    #[test]
    fn single_one_saturated_matches_formula() {
        let p = t(&[1, 2], &[&[1, 1]]);
        let m = single_one_saturated(&p, 3).unwrap();
        assert_eq!(m.ones(), vec![vec![1, 3], vec![2, 3], vec![3, 3]]);
        assert_eq!(m.weight(), 3); // 9 - 3*2

        let corner = t(&[2, 2], &[&[2, 2]]);
        let m = single_one_saturated(&corner, 3).unwrap();
        assert_eq!(m.weight(), 5); // 9 - 4, ones where some coord is 1
        for c in m.iter_ones() {
            assert!(c[0] == 1 || c[1] == 1);
        }

        let unit = t(&[1, 1], &[&[1, 1]]);
        assert_eq!(single_one_saturated(&unit, 3).unwrap().weight(), 0);

        assert!(matches!(
            single_one_saturated(&t(&[2, 2], &[&[1, 1], &[2, 2]]), 3),
            Err(Error::NotSingleOne(2))
        ));
        assert!(matches!(single_one_saturated(&p, 1), Err(Error::NTooSmall { .. })));
    }

    #[test]
    fn ssat_witness_band_counts() {
        let j22 = Family::single(t(&[2, 2], &[&[1, 1], &[1, 2], &[2, 1], &[2, 2]]));
        let ring = ssat_witness(&j22, 1, 6).unwrap();
        assert_eq!(ring.weight(), 20); // 4n-4 border ring
        for c in ring.iter_ones() {
            assert!(c.iter().any(|&x| x == 1 || x == 6));
        }
        let corners = ssat_witness(&j22, 0, 6).unwrap();
        assert_eq!(corners.weight(), 4);
        assert_eq!(
            corners.ones(),
            vec![vec![1, 1], vec![1, 6], vec![6, 1], vec![6, 6]]
        );

        let single = Family::single(t(&[1, 1], &[&[1, 1]]));
        assert_eq!(ssat_witness(&single, 1, 4).unwrap().weight(), 0);

        assert!(matches!(ssat_witness(&j22, 1, 4), Err(Error::NTooSmall { .. })));
        assert!(ssat_witness(&j22, 2, 6).is_err());
    }

    #[test]
    fn exponent_pattern_traces() {
        assert_eq!(
            ssat_exponent_pattern(2, 1).unwrap(),
            t(&[5, 5], &[&[3, 3]])
        );
        assert_eq!(
            ssat_exponent_pattern(2, 0).unwrap(),
            t(&[6, 6], &[&[1, 4], &[3, 6], &[4, 1], &[6, 3]])
        );
        assert_eq!(
            ssat_exponent_pattern(3, 2).unwrap(),
            t(&[5, 5, 5], &[&[3, 3, 3]])
        );
        assert_eq!(
            ssat_exponent_pattern(3, 1).unwrap(),
            t(
                &[8, 8, 8],
                &[
                    &[1, 6, 6],
                    &[3, 8, 4],
                    &[4, 4, 8],
                    &[5, 5, 1],
                    &[6, 1, 5],
                    &[8, 3, 3]
                ]
            )
        );
        assert!(ssat_exponent_pattern(1, 0).is_err());
        assert!(ssat_exponent_pattern(3, 3).is_err());
    }

    #[test]
    fn line_witness_layers() {
        let top = line_witness(3, 2, 1, 1).unwrap();
        assert_eq!(top.weight(), 3);
        assert_eq!(top.ones(), vec![vec![1, 1], vec![1, 2], vec![1, 3]]);

        let mid = line_witness(2, 3, 2, 2).unwrap();
        assert_eq!(mid.weight(), 4);
        for c in mid.iter_ones() {
            assert_eq!(c[1], 2);
        }
        assert!(line_witness(3, 2, 1, 4).is_err());
        assert!(line_witness(3, 2, 3, 1).is_err());
    }

    #[test]
    fn inflation_widens_first_empty_run() {
        // corner block inside a 5x5: empty layers start at 3 in both dims
        let mut corner = Tensor01::new_zero(vec![5, 5]).unwrap();
        for x in 1..=2usize {
            for y in 1..=2usize {
                corner = corner.set(&[x, y], true).unwrap();
            }
        }
        let big = inflate_empty_layers(&corner, 8).unwrap();
        assert_eq!(big.dims(), &[8, 8]);
        assert_eq!(big.ones(), corner.ones());

        let zero = Tensor01::new_zero(vec![2, 2]).unwrap();
        assert_eq!(inflate_empty_layers(&zero, 5).unwrap().weight(), 0);

        // ones on both sides of the run shift apart
        let spread = t(&[3, 3], &[&[1, 1], &[3, 1]]);
        let stretched = inflate_empty_layers(&spread, 5).unwrap();
        assert_eq!(stretched.ones(), vec![vec![1, 1], vec![5, 1]]);
        // a dimension that needs growth but has no empty layer is an error
        let tall = t(&[3, 1], &[&[1, 1], &[3, 1]]);
        assert!(matches!(inflate_empty_layers(&tall, 5), Err(Error::NoEmptyLayer(2))));

        let full = t(&[2, 2], &[&[1, 1], &[1, 2], &[2, 1], &[2, 2]]);
        assert!(matches!(inflate_empty_layers(&full, 4), Err(Error::NoEmptyLayer(1))));
        assert!(inflate_empty_layers(&full, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn inflation_preserves_weight(
            bits in proptest::collection::vec(any::<bool>(), 8),
            target in 4usize..=6,
        ) {
            // keep layer 2 of dimension 1 empty so inflation is possible
            let mut m = Tensor01::new_zero(vec![3, 3]).unwrap();
            for (i, &b) in bits.iter().enumerate() {
                let c = [if i < 3 { 1 } else { 3 }, i % 3 + 1];
                if b {
                    m = m.set(&c, true).unwrap();
                }
            }
            prop_assume!((1..=3usize).any(|v| m.iter_ones().all(|c| c[1] != v)));
            let big = inflate_empty_layers(&m, target).unwrap();
            prop_assert_eq!(big.weight(), m.weight());
            prop_assert_eq!(big.dims(), &[target, target]);
        }

        #[test]
        fn exponent_pattern_entries_are_isolated(
            d in 2usize..=3,
            k in 0usize..=1,
        ) {
            // after settling, every 1-entry sits alone in its rows in the
            // dimensions the construction freed up
            let m = ssat_exponent_pattern(d, k.min(d - 1)).unwrap();
            prop_assert!(m.weight() >= 1);
            prop_assert!(has_lonely_entry(&m));
        }
    }
}
