//! Dense d-dimensional 0-1 matrices and the cross-section geometry built on
//! them: sections, faces, counterparts, and orthogonality.
//!
//! Coordinates are 1-based throughout. The linearization is row-major with
//! dimension 1 slowest-varying, so ascending linear order equals
//! lexicographic coordinate order.

use crate::error::{Error, Result};

pub const MAX_DIMS: usize = 8;
pub const MAX_CELLS: u64 = 1 << 32;

/// 1-based coordinate vector addressing one entry.
pub type Coord = Vec<usize>;

/// A d-dimensional 0-1 matrix with dense bit storage and a cached weight.
///
/// Values are immutable: `set` returns a new tensor. Equality and hashing
/// look at side lengths and entries only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor01 {
    dims: Vec<usize>,
    bits: Vec<u64>,
    weight: u64,
}

impl Tensor01 {
    /// All-zero tensor with the given side lengths.
    pub fn new_zero(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyDims);
        }
        if dims.len() > MAX_DIMS {
            return Err(Error::TooManyDims { d: dims.len(), max: MAX_DIMS });
        }
        if dims.contains(&0) {
            return Err(Error::ZeroSide(dims));
        }
        let cells: u128 = dims.iter().map(|&n| n as u128).product();
        if cells > MAX_CELLS as u128 {
            return Err(Error::TooManyCells { cells, max: MAX_CELLS });
        }
        let cells = cells as usize;
        Ok(Tensor01 { dims, bits: vec![0; cells.div_ceil(64)], weight: 0 })
    }

    /// Tensor with the given 1-entries. Rejects duplicate coordinates.
    pub fn from_ones(dims: Vec<usize>, ones: &[Coord]) -> Result<Self> {
        let mut t = Self::new_zero(dims)?;
        for coord in ones {
            let idx = t.offset(coord)?;
            if t.get_linear(idx) {
                return Err(Error::DuplicateCoord(coord.clone()));
            }
            t.set_linear(idx, true);
        }
        Ok(t)
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> usize {
        self.dims.iter().product()
    }

    /// Number of 1-entries.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn is_empty(&self) -> bool {
        self.weight == 0
    }

    /// Side length of dimension `dim` (1-based).
    pub fn side(&self, dim: usize) -> Result<usize> {
        self.check_dim(dim)?;
        Ok(self.dims[dim - 1])
    }

    pub fn get(&self, coord: &[usize]) -> Result<bool> {
        Ok(self.get_linear(self.offset(coord)?))
    }

    /// New tensor with the entry at `coord` set to `bit`.
    pub fn set(&self, coord: &[usize], bit: bool) -> Result<Self> {
        let idx = self.offset(coord)?;
        let mut t = self.clone();
        t.set_linear(idx, bit);
        Ok(t)
    }

    /// 1-entries in lexicographic coordinate order.
    pub fn ones(&self) -> Vec<Coord> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.cells()).filter(|&i| self.get_linear(i)).map(|i| self.coord_of(i))
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if dim == 0 || dim > self.d() {
            return Err(Error::DimIndex { index: dim, d: self.d() });
        }
        Ok(())
    }

    /// Linear index of a coordinate, validating length and range.
    pub(crate) fn offset(&self, coord: &[usize]) -> Result<usize> {
        if coord.len() != self.dims.len() {
            return Err(Error::CoordLength {
                coord: coord.to_vec(),
                got: coord.len(),
                expected: self.dims.len(),
            });
        }
        let mut idx = 0usize;
        for (&c, &n) in coord.iter().zip(&self.dims) {
            if c == 0 || c > n {
                return Err(Error::CoordOutOfRange { coord: coord.to_vec(), dims: self.dims.clone() });
            }
            idx = idx * n + (c - 1);
        }
        Ok(idx)
    }

    pub(crate) fn coord_of(&self, mut idx: usize) -> Coord {
        let mut coord = vec![0; self.dims.len()];
        for (slot, &n) in coord.iter_mut().zip(&self.dims).rev() {
            *slot = idx % n + 1;
            idx /= n;
        }
        coord
    }

    pub(crate) fn get_linear(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub(crate) fn set_linear(&mut self, idx: usize, bit: bool) {
        let (block, mask) = (idx / 64, 1u64 << (idx % 64));
        let was = self.bits[block] & mask != 0;
        if bit != was {
            self.bits[block] ^= mask;
            if bit {
                self.weight += 1;
            } else {
                self.weight -= 1;
            }
        }
    }

    /// Swap dimensions i and j.
    pub fn exchange_dims(&self, i: usize, j: usize) -> Result<Self> {
        self.check_dim(i)?;
        self.check_dim(j)?;
        let mut dims = self.dims.clone();
        dims.swap(i - 1, j - 1);
        let mut t = Self::new_zero(dims)?;
        for mut c in self.iter_ones() {
            c.swap(i - 1, j - 1);
            let idx = t.offset(&c).expect("exchanged coord in range");
            t.set_linear(idx, true);
        }
        Ok(t)
    }

    /// Reverse dimension i: x_i becomes n_i + 1 - x_i.
    pub fn reflect_dim(&self, i: usize) -> Result<Self> {
        self.check_dim(i)?;
        let n = self.dims[i - 1];
        let mut t = Self::new_zero(self.dims.clone())?;
        for mut c in self.iter_ones() {
            c[i - 1] = n + 1 - c[i - 1];
            let idx = t.offset(&c).expect("reflected coord in range");
            t.set_linear(idx, true);
        }
        Ok(t)
    }

    /// Project along dimension i: drop the i-th coordinate, OR-ing entries.
    pub fn project(&self, i: usize) -> Result<Self> {
        self.check_dim(i)?;
        if self.d() == 1 {
            return Err(Error::ProjectFromOneDim);
        }
        let mut dims = self.dims.clone();
        dims.remove(i - 1);
        let mut t = Self::new_zero(dims)?;
        for mut c in self.iter_ones() {
            c.remove(i - 1);
            let idx = t.offset(&c).expect("projected coord in range");
            t.set_linear(idx, true);
        }
        Ok(t)
    }

    /// 2-dimensional projection onto the ordered dimension pair (i, j).
    pub fn project_pair(&self, i: usize, j: usize) -> Result<Self> {
        self.check_dim(i)?;
        self.check_dim(j)?;
        if i == j {
            return Err(Error::EqualDims(i));
        }
        let mut t = Self::new_zero(vec![self.dims[i - 1], self.dims[j - 1]])?;
        for c in self.iter_ones() {
            let idx = t.offset(&[c[i - 1], c[j - 1]]).expect("pair coord in range");
            t.set_linear(idx, true);
        }
        Ok(t)
    }

    /// 1-entries lying in the given cross section, in lexicographic order.
    pub fn section_ones(&self, spec: &SectionSpec) -> Result<Vec<Coord>> {
        spec.validate_against(&self.dims)?;
        Ok(self.iter_ones().filter(|c| spec.matches(c)).collect())
    }
}

impl std::fmt::Debug for Tensor01 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tensor01{{dims: {:?}, ones: {:?}}}", self.dims, self.ones())
    }
}

/// Cross section: a set of fixed dimensions with the index each is fixed to.
/// The empty spec denotes the whole tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SectionSpec {
    fixed: Vec<(usize, usize)>, // (dim, value), sorted by dim
}

impl SectionSpec {
    pub fn new(fixed: &[(usize, usize)]) -> Result<Self> {
        let mut fixed = fixed.to_vec();
        fixed.sort_unstable();
        for pair in fixed.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::BadSection(format!("dimension {} fixed twice", pair[0].0)));
            }
        }
        for &(dim, value) in &fixed {
            if dim == 0 {
                return Err(Error::BadSection("dimension index 0".into()));
            }
            if value == 0 {
                return Err(Error::BadSection(format!("dimension {dim} fixed to index 0")));
            }
        }
        Ok(SectionSpec { fixed })
    }

    pub fn fixed(&self) -> &[(usize, usize)] {
        &self.fixed
    }

    pub fn fixed_dims(&self) -> Vec<usize> {
        self.fixed.iter().map(|&(d, _)| d).collect()
    }

    /// Dimensionality of the section inside a d-dimensional tensor.
    pub fn dimensionality(&self, d: usize) -> Result<usize> {
        match self.fixed.last() {
            Some(&(dim, _)) if dim > d => Err(Error::DimIndex { index: dim, d }),
            _ => Ok(d - self.fixed.len()),
        }
    }

    pub fn matches(&self, coord: &[usize]) -> bool {
        self.fixed.iter().all(|&(dim, value)| coord[dim - 1] == value)
    }

    pub(crate) fn validate_against(&self, dims: &[usize]) -> Result<()> {
        for &(dim, value) in &self.fixed {
            if dim > dims.len() {
                return Err(Error::DimIndex { index: dim, d: dims.len() });
            }
            if value > dims[dim - 1] {
                return Err(Error::BadSection(format!(
                    "dimension {dim} fixed to {value}, side length is {}",
                    dims[dim - 1]
                )));
            }
        }
        Ok(())
    }
}

/// Which end of a dimension a face pins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Low,
    High,
}

/// Face: a cross section whose fixed dimensions sit at an end (1 or n_i).
/// Size-independent, so the same spec instantiates against any side lengths;
/// two tensors' sections from one spec are counterpart faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    fixed: Vec<(usize, Side)>, // sorted by dim
}

impl FaceSpec {
    pub fn new(fixed: &[(usize, Side)]) -> Result<Self> {
        let mut fixed = fixed.to_vec();
        fixed.sort_unstable();
        for pair in fixed.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::BadSection(format!("dimension {} fixed twice", pair[0].0)));
            }
        }
        if fixed.iter().any(|&(dim, _)| dim == 0) {
            return Err(Error::BadSection("dimension index 0".into()));
        }
        Ok(FaceSpec { fixed })
    }

    pub fn fixed(&self) -> &[(usize, Side)] {
        &self.fixed
    }

    pub fn fixed_dims(&self) -> Vec<usize> {
        self.fixed.iter().map(|&(d, _)| d).collect()
    }

    /// All faces of a d-dimensional tensor with `fixed_count` pinned
    /// dimensions, ordered by (sorted dim set, then Low < High per dim).
    pub fn enumerate(d: usize, fixed_count: usize) -> Vec<FaceSpec> {
        let mut out = Vec::new();
        let mut dims_choice = Vec::new();
        fn rec(d: usize, need: usize, start: usize, dims: &mut Vec<usize>, out: &mut Vec<FaceSpec>) {
            if dims.len() == need {
                for mask in 0..(1u32 << need) {
                    let fixed: Vec<(usize, Side)> = dims
                        .iter()
                        .enumerate()
                        .map(|(pos, &dim)| {
                            let side = if mask >> (need - 1 - pos) & 1 == 0 { Side::Low } else { Side::High };
                            (dim, side)
                        })
                        .collect();
                    out.push(FaceSpec { fixed });
                }
                return;
            }
            for dim in start..=d {
                dims.push(dim);
                rec(d, need, dim + 1, dims, out);
                dims.pop();
            }
        }
        rec(d, fixed_count, 1, &mut dims_choice, &mut out);
        out
    }

    /// Resolve Low/High against concrete side lengths.
    pub fn instantiate(&self, dims: &[usize]) -> Result<SectionSpec> {
        let mut fixed = Vec::with_capacity(self.fixed.len());
        for &(dim, side) in &self.fixed {
            if dim > dims.len() {
                return Err(Error::DimIndex { index: dim, d: dims.len() });
            }
            let value = match side {
                Side::Low => 1,
                Side::High => dims[dim - 1],
            };
            fixed.push((dim, value));
        }
        Ok(SectionSpec { fixed })
    }
}

/// Whether section g is k-orthogonal to section f: neither fixed-dimension
/// set contains the other and g fixes at least k dimensions f leaves free.
pub fn is_k_orthogonal(g: &SectionSpec, f: &SectionSpec, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::BadOrthogonalityOrder);
    }
    let gd = g.fixed_dims();
    let fd = f.fixed_dims();
    let g_minus_f = gd.iter().filter(|d| !fd.contains(d)).count();
    let f_minus_g = fd.iter().filter(|d| !gd.contains(d)).count();
    Ok(g_minus_f >= k && f_minus_g > 0)
}
