//! Pattern surgery with known extremal consequences: replication onto a new
//! dimension, lowering/lifting end entries, and layer insertion.

use crate::error::{Error, Result};
use crate::tensor::Tensor01;

/// Lift a pattern to d+1 dimensions: the new last dimension copies
/// dimension i, so each 1-entry (x_1..x_d) becomes (x_1..x_d, x_i).
pub fn replicate_dim(p: &Tensor01, i: usize) -> Result<Tensor01> {
    p.check_dim(i)?;
    let mut dims = p.dims().to_vec();
    dims.push(p.dims()[i - 1]);
    let mut t = Tensor01::new_zero(dims)?;
    for mut c in p.iter_ones() {
        c.push(c[i - 1]);
        let idx = t.offset(&c)?;
        t.set_linear(idx, true);
    }
    Ok(t)
}

/// Lower a bottom 1-entry along dimension i: grow the dimension by one
/// layer and move the entry (which must sit at index l_i) into it.
pub fn lower_entry(p: &Tensor01, i: usize, c: &[usize]) -> Result<Tensor01> {
    p.check_dim(i)?;
    if !p.get(c)? {
        return Err(Error::CellIsZero(c.to_vec()));
    }
    let li = p.dims()[i - 1];
    if c[i - 1] != li {
        return Err(Error::NotBottomEntry { coord: c.to_vec(), dim: i });
    }
    let mut dims = p.dims().to_vec();
    dims[i - 1] += 1;
    let mut t = Tensor01::new_zero(dims)?;
    for mut o in p.iter_ones() {
        if o.as_slice() == c {
            o[i - 1] = li + 1;
        }
        let idx = t.offset(&o)?;
        t.set_linear(idx, true);
    }
    Ok(t)
}

/// Lift a top 1-entry along dimension i: the mirror of lowering. The lifted
/// entry (which must sit at index 1) stays at index 1 in the grown
/// dimension while every other entry shifts up by one.
pub fn lift_entry(p: &Tensor01, i: usize, c: &[usize]) -> Result<Tensor01> {
    p.check_dim(i)?;
    if !p.get(c)? {
        return Err(Error::CellIsZero(c.to_vec()));
    }
    if c[i - 1] != 1 {
        return Err(Error::NotTopEntry { coord: c.to_vec(), dim: i });
    }
    let mut dims = p.dims().to_vec();
    dims[i - 1] += 1;
    let mut t = Tensor01::new_zero(dims)?;
    for mut o in p.iter_ones() {
        if o.as_slice() != c {
            o[i - 1] += 1;
        }
        let idx = t.offset(&o)?;
        t.set_linear(idx, true);
    }
    Ok(t)
}

/// Insert an all-zero i-layer after position pos (0 attaches at the front,
/// l_i at the back). Weight is preserved.
pub fn insert_empty_layer(p: &Tensor01, i: usize, pos: usize) -> Result<Tensor01> {
    p.check_dim(i)?;
    let li = p.dims()[i - 1];
    if pos > li {
        return Err(Error::out_of_range("layer position", format!("{pos} > {li}")));
    }
    let mut dims = p.dims().to_vec();
    dims[i - 1] += 1;
    let mut t = Tensor01::new_zero(dims)?;
    for mut o in p.iter_ones() {
        if o[i - 1] > pos {
            o[i - 1] += 1;
        }
        let idx = t.offset(&o)?;
        t.set_linear(idx, true);
    }
    Ok(t)
}

/// Insert t consecutive i-layers between layers pos and pos+1, each holding
/// a single 1 at the given coordinates of the other dimensions. Weight
/// grows by t.
pub fn insert_one_layers(
    p: &Tensor01,
    i: usize,
    pos: usize,
    row_coords: &[usize],
    t: usize,
) -> Result<Tensor01> {
    p.check_dim(i)?;
    let li = p.dims()[i - 1];
    if pos == 0 || pos >= li {
        return Err(Error::out_of_range(
            "insertion position",
            format!("{pos} not strictly inside [1, {li}]"),
        ));
    }
    if t == 0 {
        return Err(Error::out_of_range("layer count", "zero layers"));
    }
    if row_coords.len() != p.d() - 1 {
        return Err(Error::CoordLength {
            coord: row_coords.to_vec(),
            got: row_coords.len(),
            expected: p.d() - 1,
        });
    }
    let mut dims = p.dims().to_vec();
    dims[i - 1] += t;
    let mut out = Tensor01::new_zero(dims)?;
    for mut o in p.iter_ones() {
        if o[i - 1] > pos {
            o[i - 1] += t;
        }
        let idx = out.offset(&o)?;
        out.set_linear(idx, true);
    }
    for s in 1..=t {
        let mut coord = row_coords.to_vec();
        coord.insert(i - 1, pos + s);
        let idx = out.offset(&coord).map_err(|_| Error::CoordOutOfRange {
            coord: row_coords.to_vec(),
            dims: p.dims().to_vec(),
        })?;
        out.set_linear(idx, true);
    }
    Ok(out)
}
