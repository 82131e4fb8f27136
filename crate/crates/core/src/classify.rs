//! Decision procedures on top of the searches: the semisaturation-exponent
//! characterization, the O(1)-extremal semi-decision over the identity and
//! shared-coordinate families, and the necessary-condition filters for
//! minimal superlinear patterns.

use num_bigint::BigUint;

use crate::constructions::{identity_equivalents, j_family, Family};
use crate::containment::{contains, contains_any, next_combination};
use crate::error::{Error, Result};
use crate::tensor::{Coord, FaceSpec, Side, Tensor01};

/// A template face covered by a family pattern: `entry` lies in the face's
/// counterpart in pattern `pattern` and is the only 1-entry of every cross
/// section that is (k+1)-orthogonal to that counterpart and contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWitness {
    pub face: FaceSpec,
    pub pattern: usize,
    pub entry: Coord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyIOutcome {
    pub holds: bool,
    /// One witness per template face, in face enumeration order, up to the
    /// first failure.
    pub witnesses: Vec<FaceWitness>,
    pub failing_face: Option<FaceSpec>,
}

/// A section two 1-entries share: `other` agrees with `entry` on every
/// dimension in `fixed_dims`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionViolation {
    pub pattern: usize,
    pub entry: Coord,
    pub fixed_dims: Vec<usize>,
    pub other: Coord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyIIOutcome {
    pub holds: bool,
    /// First pattern and 1-entry alone in every section of the required
    /// dimensionality.
    pub witness: Option<(usize, Coord)>,
    /// On failure, the violation for the first pattern's first 1-entry.
    pub violation: Option<SectionViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailedProperty {
    /// Property (i) failed: no family pattern covers this template face.
    FaceUncovered { k: usize, face: FaceSpec },
    /// Property (ii) failed (checked only when property (i) held).
    NoLonelyEntry { k: usize, violation: SectionViolation },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsatClassification {
    /// Smallest k in [0, d-1] where both properties hold; the
    /// semisaturation function grows like n^k.
    pub exponent: usize,
    /// One record per k' < exponent.
    pub evidence: Vec<FailedProperty>,
    /// Outcomes at the exponent itself.
    pub property_i: PropertyIOutcome,
    pub property_ii: PropertyIIOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum O1Verdict {
    /// Every member of the depth-n0 identity and shared-coordinate families
    /// contains a family pattern, bounding the extremal function by
    /// (n0-1)^(1+2^(d-1)).
    BoundedO1 { n0: usize, bound: BigUint },
    /// Every depth up to n0_max admits an avoiding member, a weight-n0
    /// witness that the extremal function reaches n at n = n0.
    NotO1AtDepth { n0_max: usize, avoiders: Vec<(usize, Tensor01)> },
    /// The enumeration guard tripped before n0_max; partial avoider list.
    Aborted { completed: usize, avoiders: Vec<(usize, Tensor01)>, reason: String },
}

fn check_properties_input(fam: &Family, k: usize) -> Result<()> {
    if fam.patterns().iter().any(|p| p.weight() == 0) {
        return Err(Error::EmptyPattern);
    }
    if k >= fam.d() {
        return Err(Error::out_of_range("k", format!("{k} outside [0, {}]", fam.d() - 1)));
    }
    Ok(())
}

fn dim_mask(face: &FaceSpec) -> u32 {
    face.fixed().iter().fold(0, |m, &(dim, _)| m | 1 << (dim - 1))
}

// Whether o is the only 1-entry of every cross section that contains o and
// is orthogonal to the face with at least min_new fixed dims outside it.
// Sections are enumerated as fixed-dim subsets with values pinned to o.
fn entry_lonely(d: usize, ones: &[Coord], o: &Coord, fmask: u32, min_new: u32) -> bool {
    for m in 1u32..1 << d {
        if fmask & !m == 0 || (m & !fmask).count_ones() < min_new {
            continue;
        }
        for e in ones {
            if e != o && (0..d).all(|b| m >> b & 1 == 0 || e[b] == o[b]) {
                return false;
            }
        }
    }
    true
}

fn face_witness(fam: &Family, k: usize, face: &FaceSpec) -> Result<Option<(usize, Coord)>> {
    for (pidx, p) in fam.patterns().iter().enumerate() {
        let mut pinned = Vec::with_capacity(face.fixed().len());
        for &(dim, side) in face.fixed() {
            let v = match side {
                Side::Low => 1,
                Side::High => p.side(dim)?,
            };
            pinned.push((dim, v));
        }
        let ones: Vec<Coord> = p.iter_ones().collect();
        for o in &ones {
            if pinned.iter().all(|&(dim, v)| o[dim - 1] == v)
                && entry_lonely(p.d(), &ones, o, dim_mask(face), k as u32 + 1)
            {
                return Ok(Some((pidx, o.clone())));
            }
        }
    }
    Ok(None)
}

/// Property (i) of the exponent characterization: every template face of
/// dimension in [k+1, d-1] is covered by some family pattern.
pub fn ssat_property_i(fam: &Family, k: usize) -> Result<PropertyIOutcome> {
    check_properties_input(fam, k)?;
    let d = fam.d();
    let mut witnesses = Vec::new();
    for dp in (k + 1)..=(d - 1) {
        for face in FaceSpec::enumerate(d, d - dp) {
            match face_witness(fam, k, &face)? {
                Some((pattern, entry)) => witnesses.push(FaceWitness { face, pattern, entry }),
                None => {
                    return Ok(PropertyIOutcome {
                        holds: false,
                        witnesses,
                        failing_face: Some(face),
                    })
                }
            }
        }
    }
    Ok(PropertyIOutcome { holds: true, witnesses, failing_face: None })
}

// First section of the given fixed-dim count shared by o and another
// 1-entry, in combination order.
fn lonely_violation(
    d: usize,
    ones: &[Coord],
    o: &Coord,
    fixed_count: usize,
) -> Option<(Vec<usize>, Coord)> {
    let mut combo: Vec<usize> = (1..=fixed_count).collect();
    loop {
        for e in ones {
            if e != o && combo.iter().all(|&dim| e[dim - 1] == o[dim - 1]) {
                return Some((combo, e.clone()));
            }
        }
        if !next_combination(&mut combo, d) {
            return None;
        }
    }
}

/// Property (ii): some family pattern has a 1-entry that is the only
/// 1-entry in every (d-1-k)-dimensional cross section containing it.
pub fn ssat_property_ii(fam: &Family, k: usize) -> Result<PropertyIIOutcome> {
    check_properties_input(fam, k)?;
    let d = fam.d();
    for (pidx, p) in fam.patterns().iter().enumerate() {
        let ones: Vec<Coord> = p.iter_ones().collect();
        for o in &ones {
            if lonely_violation(d, &ones, o, k + 1).is_none() {
                return Ok(PropertyIIOutcome {
                    holds: true,
                    witness: Some((pidx, o.clone())),
                    violation: None,
                });
            }
        }
    }
    let ones: Vec<Coord> = fam.patterns()[0].iter_ones().collect();
    let (fixed_dims, other) =
        lonely_violation(d, &ones, &ones[0], k + 1).expect("every entry failed above");
    Ok(PropertyIIOutcome {
        holds: false,
        witness: None,
        violation: Some(SectionViolation {
            pattern: 0,
            entry: ones[0].clone(),
            fixed_dims,
            other,
        }),
    })
}

/// Smallest k in [0, d-1] at which both properties hold. k = d-1 always
/// qualifies: property (i) ranges over an empty set of faces and property
/// (ii) asks for loneliness in 0-dimensional sections.
pub fn ssat_exponent(fam: &Family) -> Result<SsatClassification> {
    let mut evidence = Vec::new();
    for k in 0..fam.d() {
        let pi = ssat_property_i(fam, k)?;
        let pii = ssat_property_ii(fam, k)?;
        if pi.holds && pii.holds {
            return Ok(SsatClassification {
                exponent: k,
                evidence,
                property_i: pi,
                property_ii: pii,
            });
        }
        if let Some(face) = pi.failing_face.clone() {
            evidence.push(FailedProperty::FaceUncovered { k, face });
        } else {
            let violation = pii.violation.clone().expect("property (ii) failed");
            evidence.push(FailedProperty::NoLonelyEntry { k, violation });
        }
    }
    unreachable!("k = d-1 satisfies both properties for non-empty patterns")
}

/// Bounded-semisaturation test for a single pattern, phrased over the
/// pattern's own faces: every face of every dimension in [1, d-1] must
/// contain a 1-entry that is alone in each (d-1)-dimensional cross section
/// orthogonal to the face through it, and some 1-entry must be alone in
/// every (d-1)-dimensional cross section it belongs to.
pub fn ssat_bounded_single(p: &Tensor01) -> Result<bool> {
    if p.weight() == 0 {
        return Err(Error::EmptyPattern);
    }
    let d = p.d();
    let ones = p.ones();
    let alone_beyond = |o: &Coord, skip: &[usize]| {
        (1..=d)
            .filter(|i| !skip.contains(i))
            .all(|j| ones.iter().all(|e| e == o || e[j - 1] != o[j - 1]))
    };
    if !ones.iter().any(|o| alone_beyond(o, &[])) {
        return Ok(false);
    }
    for fc in 1..d {
        for face in FaceSpec::enumerate(d, fc) {
            let spec = face.instantiate(p.dims())?;
            let fixed = face.fixed_dims();
            if !ones.iter().any(|o| spec.matches(o) && alone_beyond(o, &fixed)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn jd_bound(n0: usize, d: usize) -> BigUint {
    BigUint::from(n0 - 1).pow(1 + (1u32 << (d - 1)))
}

// First member of the depth-n0 identity or shared-coordinate family that
// avoids the whole family, identities first.
fn depth_avoider(fam: &Family, n0: usize, d: usize) -> Result<Option<Tensor01>> {
    for m in identity_equivalents(n0, d)?.patterns() {
        if contains_any(m, fam)?.is_none() {
            return Ok(Some(m.clone()));
        }
    }
    for m in j_family(n0, d)? {
        if contains_any(&m, fam)?.is_none() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Semi-decision of O(1) extremal growth: scan depths n0 = 1..n0_max until
/// some depth leaves no avoider in the identity or shared-coordinate
/// families. An avoider at depth n0 is a weight-n0 lower bound witness.
pub fn ex_o1_decide(fam: &Family, n0_max: usize) -> Result<O1Verdict> {
    if n0_max == 0 {
        return Err(Error::out_of_range("n0_max", "must be at least 1"));
    }
    let d = fam.d();
    let mut avoiders = Vec::new();
    for n0 in 1..=n0_max {
        match depth_avoider(fam, n0, d) {
            Ok(None) => return Ok(O1Verdict::BoundedO1 { n0, bound: jd_bound(n0, d) }),
            Ok(Some(m)) => avoiders.push((n0, m)),
            Err(Error::EnumerationGuard(reason)) => {
                return Ok(O1Verdict::Aborted { completed: n0 - 1, avoiders, reason })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(O1Verdict::NotO1AtDepth { n0_max, avoiders })
}

/// Necessary conditions for a pattern to be minimally superlinear in the
/// host size exponent d-1; none is sufficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinnonlinReport {
    /// (a) largest dimension at most 1 + 2 sum of (2k - 2) over the others.
    pub dims_ok: bool,
    pub dims_bound: u64,
    /// (b) weight at most (largest - 1) + product of the other dims, waived
    /// for the all-ones pattern with two dims of length 2 and the rest 1.
    pub weight_ok: bool,
    pub weight_bound: u64,
    pub weight_exception: bool,
    /// (c) no 2-dim projection contains a length-4 alternation or any of
    /// its reflections or rotations.
    pub alternation_ok: bool,
    pub alternation_pair: Option<(usize, usize)>,
    /// (d) every dimension has a 1-entry in its first and its last layer.
    pub boundary_ok: bool,
    pub boundary_layer: Option<(usize, Side)>,
}

impl MinnonlinReport {
    pub fn passes(&self) -> bool {
        self.dims_ok && self.weight_ok && self.alternation_ok && self.boundary_ok
    }
}

// The 2x4 alternation and its dihedral images; 8 candidates collapse to 4
// distinct matrices.
fn alternation_images() -> Vec<Tensor01> {
    let alt = Tensor01::from_ones(
        vec![2, 4],
        &[vec![1, 1], vec![1, 3], vec![2, 2], vec![2, 4]],
    )
    .unwrap();
    let mut images = Vec::new();
    for base in [alt.clone(), alt.exchange_dims(1, 2).unwrap()] {
        for flip_rows in [false, true] {
            for flip_cols in [false, true] {
                let mut img = base.clone();
                if flip_rows {
                    img = img.reflect_dim(1).unwrap();
                }
                if flip_cols {
                    img = img.reflect_dim(2).unwrap();
                }
                if !images.contains(&img) {
                    images.push(img);
                }
            }
        }
    }
    images
}

fn alternation_filter(p: &Tensor01) -> Result<(bool, Option<(usize, usize)>)> {
    if p.d() < 2 {
        return Ok((true, None));
    }
    let images = alternation_images();
    for i in 1..=p.d() {
        for j in (i + 1)..=p.d() {
            let proj = p.project_pair(i, j)?;
            for img in &images {
                if contains(&proj, img)?.is_some() {
                    return Ok((false, Some((i, j))));
                }
            }
        }
    }
    Ok((true, None))
}

fn boundary_filter(p: &Tensor01) -> (bool, Option<(usize, Side)>) {
    for i in 1..=p.d() {
        let n = p.dims()[i - 1];
        let mut low = false;
        let mut high = false;
        for o in p.iter_ones() {
            low |= o[i - 1] == 1;
            high |= o[i - 1] == n;
        }
        if !low {
            return (false, Some((i, Side::Low)));
        }
        if !high {
            return (false, Some((i, Side::High)));
        }
    }
    (true, None)
}

pub fn minnonlin_filters(p: &Tensor01) -> Result<MinnonlinReport> {
    if p.weight() == 0 {
        return Err(Error::EmptyPattern);
    }
    let d = p.d();
    let mut sorted: Vec<u64> = p.dims().iter().map(|&k| k as u64).collect();
    sorted.sort_unstable();
    let largest = *sorted.last().expect("d >= 1");
    let rest = &sorted[..d - 1];

    let dims_bound = 1 + 2 * rest.iter().map(|&k| 2 * k - 2).sum::<u64>();
    let dims_ok = largest <= dims_bound;

    let weight_bound = largest - 1 + rest.iter().product::<u64>();
    let twos = p.dims().iter().filter(|&&k| k == 2).count();
    let units = p.dims().iter().filter(|&&k| k == 1).count();
    let weight_exception = p.weight() == p.cells() as u64 && twos == 2 && units == d - 2;
    let weight_ok = weight_exception || p.weight() <= weight_bound;

    let (alternation_ok, alternation_pair) = alternation_filter(p)?;
    let (boundary_ok, boundary_layer) = boundary_filter(p);

    Ok(MinnonlinReport {
        dims_ok,
        dims_bound,
        weight_ok,
        weight_bound,
        weight_exception,
        alternation_ok,
        alternation_pair,
        boundary_ok,
        boundary_layer,
    })
}

/// Upper bound on the number of minimal superlinear patterns with the given
/// first d-1 dimensions: sum over j of ((j+1)^P - j^P) P^(j-1) with
/// S = 1 + 2 sum(2k - 2) terms and P the product of the dims.
pub fn minnonlin_count_bound(ks: &[usize]) -> Result<BigUint> {
    if ks.is_empty() {
        return Err(Error::EmptyDims);
    }
    if ks.contains(&0) {
        return Err(Error::ZeroSide(ks.to_vec()));
    }
    let s: u128 = 1 + 2 * ks.iter().map(|&k| 2 * k as u128 - 2).sum::<u128>();
    let p = ks
        .iter()
        .try_fold(1u128, |acc, &k| acc.checked_mul(k as u128))
        .ok_or_else(|| Error::out_of_range("count bound", "dimension product overflows"))?;
    // beyond this the terms have megabyte-scale digit counts
    const CAP: u128 = 1 << 20;
    if s > CAP || p > CAP {
        return Err(Error::out_of_range("count bound", format!("S = {s}, P = {p} exceed {CAP}")));
    }
    let (s, pe) = (s as u64, p as u32);
    let mut acc = BigUint::from(0u8);
    let mut pw = BigUint::from(1u8);
    for j in 1..=s {
        let hi = BigUint::from(j + 1).pow(pe);
        let lo = BigUint::from(j).pow(pe);
        acc += (hi - lo) * &pw;
        pw *= p as u64;
    }
    Ok(acc)
}
