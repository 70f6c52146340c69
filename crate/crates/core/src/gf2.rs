//! GF(2) linear algebra over subsets of a ground set of at most 64 elements.
//!
//! A [`Subset`] is the 0/1 incidence vector of a subset of `E = {0, .., m-1}`
//! packed into a machine word; symmetric difference is XOR. A [`Gf2Matrix`]
//! is a list of such rows. Reduction to row echelon form yields a
//! [`RowEchelon`], which answers membership and coset queries and produces
//! the representation of the orthogonal complement.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign, Not};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(e: usize) -> Subset {
        debug_assert!(e < MAX_ELEMENTS);
        Subset(1u64 << e)
    }

    /// All of `{0, .., m-1}`.
    pub fn full(m: usize) -> Subset {
        if m >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << m) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        let mut bits = 0u64;
        for e in elements {
            bits ^= 1u64 << e;
        }
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && (self.0 >> e) & 1 == 1
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | (1u64 << e))
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1u64 << e))
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Parity of `|self ∩ other|`, i.e. the GF(2) dot product.
    pub fn dot(self, other: Subset) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Deletes coordinate `e`, shifting higher coordinates down by one.
    pub fn drop_coordinate(self, e: usize) -> Subset {
        let low = self.0 & ((1u64 << e) - 1);
        let high = if e >= 63 { 0 } else { (self.0 >> (e + 1)) << e };
        Subset(low | high)
    }

    /// Inverse of [`Subset::drop_coordinate`] with the new coordinate set to `bit`.
    pub fn insert_coordinate(self, e: usize, bit: bool) -> Subset {
        let low = self.0 & ((1u64 << e) - 1);
        let high = if e >= 63 { 0 } else { (self.0 >> e) << (e + 1) };
        Subset(low | high | ((bit as u64) << e))
    }

    /// Applies an element relabelling: element `e` goes to `perm[e]`.
    pub fn permute(self, perm: &[usize]) -> Subset {
        Subset::from_elements(self.elements().map(|e| perm[e]))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Subset {
    fn bitxor_assign(&mut self, rhs: Subset) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

/// Ordering used for every enumerated list: by cardinality, then bit pattern.
pub fn by_size_then_bits(a: &Subset, b: &Subset) -> std::cmp::Ordering {
    (a.len(), a.0).cmp(&(b.len(), b.0))
}

pub(crate) fn check_capacity(m: usize) -> Result<()> {
    if m > MAX_ELEMENTS {
        return Err(Error::CapacityExceeded {
            m,
            max: MAX_ELEMENTS,
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Gf2Matrix {
    rows: Vec<Subset>,
    ncols: usize,
}

impl Gf2Matrix {
    pub fn new(ncols: usize, rows: Vec<Subset>) -> Result<Gf2Matrix> {
        check_capacity(ncols)?;
        let mask = Subset::full(ncols);
        if let Some(bad) = rows.iter().find(|r| !r.is_subset_of(mask)) {
            return Err(Error::InvalidElement {
                element: 63 - bad.0.leading_zeros() as usize,
                m: ncols,
            });
        }
        Ok(Gf2Matrix { rows, ncols })
    }

    pub fn empty(ncols: usize) -> Result<Gf2Matrix> {
        Gf2Matrix::new(ncols, Vec::new())
    }

    pub fn identity(n: usize) -> Result<Gf2Matrix> {
        Gf2Matrix::new(n, (0..n).map(Subset::singleton).collect())
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense(ncols: usize, dense: &[Vec<u8>]) -> Result<Gf2Matrix> {
        let mut rows = Vec::with_capacity(dense.len());
        for row in dense {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            let mut s = Subset::EMPTY;
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => s = s.with(j),
                    other => return Err(Error::Parse(format!("entry {other} is not 0/1"))),
                }
            }
            rows.push(s);
        }
        Gf2Matrix::new(ncols, rows)
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| (0..self.ncols).map(|j| r.contains(j) as u8).collect())
            .collect()
    }

    /// Gauss-Jordan elimination into reduced row echelon form.
    pub fn row_reduce(&self) -> RowEchelon {
        let mut rows: Vec<Subset> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(found) = (rank..rows.len()).find(|&i| rows[i].contains(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.contains(col) {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        RowEchelon {
            rows,
            pivots,
            ncols: self.ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank()
    }

    pub fn in_row_space(&self, x: Subset) -> bool {
        self.row_reduce().contains(x)
    }

    pub fn dual_representation(&self) -> Gf2Matrix {
        self.row_reduce().complement().into_matrix()
    }
}

/// A matrix in reduced row echelon form: row `i` has a one in column
/// `pivots[i]` and zeros in every other pivot column.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RowEchelon {
    rows: Vec<Subset>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl RowEchelon {
    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn matrix(&self) -> Gf2Matrix {
        Gf2Matrix {
            rows: self.rows.clone(),
            ncols: self.ncols,
        }
    }

    pub fn into_matrix(self) -> Gf2Matrix {
        Gf2Matrix {
            rows: self.rows,
            ncols: self.ncols,
        }
    }

    pub fn pivot_mask(&self) -> Subset {
        Subset::from_elements(self.pivots.iter().copied())
    }

    /// The unique member of `x + rowspace` with every pivot coordinate zero.
    pub fn canonical_form(&self, x: Subset) -> Subset {
        let mut x = x;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if x.contains(p) {
                x ^= *row;
            }
        }
        x
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.canonical_form(x).is_empty()
    }

    /// Reduced basis of the orthogonal complement. From `(I_r A)` (columns
    /// permuted so pivots come first) this is `(A^T I_s)` with the
    /// permutation undone: one row per non-pivot column `j`, holding `j`
    /// and every pivot whose row has a one in column `j`.
    pub fn complement(&self) -> RowEchelon {
        let pivot_mask = self.pivot_mask();
        let mut rows = Vec::with_capacity(self.ncols - self.rank());
        let mut pivots = Vec::with_capacity(self.ncols - self.rank());
        for j in (0..self.ncols).filter(|&j| !pivot_mask.contains(j)) {
            let mut row = Subset::singleton(j);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if r.contains(j) {
                    row = row.with(p);
                }
            }
            rows.push(row);
            pivots.push(j);
        }
        // Rows are already independent; re-reduce so the result is in the
        // same normal form as everything else.
        Gf2Matrix {
            rows,
            ncols: self.ncols,
        }
        .row_reduce()
    }

    /// Every member of the row space, in Gray-code order.
    pub fn span(&self) -> Span<'_> {
        Span {
            rows: &self.rows,
            current: Subset::EMPTY,
            counter: 0,
            total: 1u64.checked_shl(self.rows.len() as u32).unwrap_or(u64::MAX),
        }
    }

    /// Reduced basis of `{x in rowspace : x ⊆ within}`.
    pub fn restricted_to(&self, within: Subset) -> RowEchelon {
        let outside = !within & Subset::full(self.ncols);
        // Eliminate the outside coordinates; rows that vanish there span the kernel.
        let mut pivots_out: Vec<(usize, Subset)> = Vec::new();
        let mut inside = Vec::new();
        for &row in &self.rows {
            let mut r = row;
            for &(p, pr) in &pivots_out {
                if r.contains(p) {
                    r ^= pr;
                }
            }
            let out = r & outside;
            if out.is_empty() {
                inside.push(r);
            } else {
                let p = out.0.trailing_zeros() as usize;
                for (_, other) in pivots_out.iter_mut() {
                    if other.contains(p) {
                        *other ^= r;
                    }
                }
                pivots_out.push((p, r));
            }
        }
        Gf2Matrix {
            rows: inside,
            ncols: self.ncols,
        }
        .row_reduce()
    }
}

pub struct Span<'a> {
    rows: &'a [Subset],
    current: Subset,
    counter: u64,
    total: u64,
}

impl Iterator for Span<'_> {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        if self.counter >= self.total {
            return None;
        }
        let out = self.current;
        self.counter += 1;
        if self.counter < self.total {
            let flip = self.counter.trailing_zeros() as usize;
            self.current ^= self.rows[flip];
        }
        Some(out)
    }
}
