use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Int;
use crate::error::{Error, Result};

/// Integer matrix in coordinate form.
///
/// Entries are kept sorted row-major with no duplicate positions and no
/// stored zeros, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseIntMat {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Int)>,
}

/// Sparse integer vector keyed by basis index.
pub type SparseVec = BTreeMap<usize, Int>;

impl SparseIntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMat {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMat {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Int::ONE)).collect(),
        }
    }

    pub fn scalar(n: usize, c: Int) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        SparseIntMat {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, c.clone())).collect(),
        }
    }

    /// Builds a matrix from triplets, summing duplicates and dropping zeros.
    ///
    /// Panics on out-of-range indices; use [`SparseIntMat::try_from_triplets`]
    /// for untrusted input.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        Self::try_from_triplets(rows, cols, triplets).expect("triplet index out of range")
    }

    pub fn try_from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({i}, {j}) outside {rows}x{cols}"
                )));
            }
            if v.is_zero() {
                continue;
            }
            *acc.entry((i, j)).or_default() += &v;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| (i, j, v))
            .collect();
        Ok(SparseIntMat {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, &v)| (i, j, Int::from(v)))
            }),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (i, j, v) in &self.entries {
            out[*i][*j] = v.clone();
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Int)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        match self
            .entries
            .binary_search_by(|(a, b, _)| (*a, *b).cmp(&(i, j)))
        {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(i, j, v)| (*j, *i, v.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseIntMat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(i, j, v)| (*i, *j, v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(other.entries.iter()).cloned(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_triplets(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .cloned()
                .chain(other.entries.iter().map(|(i, j, v)| (*i, *j, -v))),
        ))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.row_lists();
        let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (i, k, a) in &self.entries {
            for (j, b) in &other_rows[*k] {
                acc.entry((*i, *j)).or_default().add_mul(a, b);
            }
        }
        Ok(SparseIntMat {
            rows: self.rows,
            cols: other.cols,
            entries: acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((i, j), v)| (i, j, v))
                .collect(),
        })
    }

    /// Rows as lists of `(col, value)`.
    pub fn row_lists(&self) -> Vec<Vec<(usize, Int)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (i, j, v) in &self.entries {
            out[*i].push((*j, v.clone()));
        }
        out
    }

    /// Columns as lists of `(row, value)`.
    pub fn col_lists(&self) -> Vec<Vec<(usize, Int)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (i, j, v) in &self.entries {
            out[*j].push((*i, v.clone()));
        }
        out
    }

    pub fn mul_vec(&self, x: &[Int]) -> Result<Vec<Int>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = vec![Int::ZERO; self.rows];
        for (i, j, v) in &self.entries {
            out[*i].add_mul(v, &x[*j]);
        }
        Ok(out)
    }

    pub fn apply_sparse(&self, x: &SparseVec) -> SparseVec {
        let cols = self.col_lists();
        let mut out = SparseVec::new();
        for (j, c) in x {
            if *j >= self.cols {
                continue;
            }
            for (i, v) in &cols[*j] {
                out.entry(*i).or_default().add_mul(v, c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Places blocks at the given offsets inside a `rows x cols` matrix.
    pub fn from_blocks(rows: usize, cols: usize, blocks: &[(usize, usize, &SparseIntMat)]) -> Self {
        Self::from_triplets(
            rows,
            cols,
            blocks.iter().flat_map(|(r0, c0, m)| {
                m.entries
                    .iter()
                    .map(move |(i, j, v)| (i + r0, j + c0, v.clone()))
            }),
        )
    }

    /// Sub-matrix on the given row and column index lists (in that order).
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut rmap = vec![usize::MAX; self.rows];
        for (new, &old) in row_idx.iter().enumerate() {
            rmap[old] = new;
        }
        let mut cmap = vec![usize::MAX; self.cols];
        for (new, &old) in col_idx.iter().enumerate() {
            cmap[old] = new;
        }
        Self::from_triplets(
            row_idx.len(),
            col_idx.len(),
            self.entries.iter().filter_map(|(i, j, v)| {
                let (a, b) = (rmap[*i], cmap[*j]);
                (a != usize::MAX && b != usize::MAX).then(|| (a, b, v.clone()))
            }),
        )
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(i, j, v)| (*i, *j, v.clone()))
                .collect(),
        }
    }

    pub fn from_json(m: &MatrixJson) -> Result<Self> {
        Self::try_from_triplets(m.rows, m.cols, m.entries.iter().cloned())
    }
}

impl std::fmt::Debug for SparseIntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseIntMat {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 64 {
            f.debug_list().entries(self.to_dense()).finish()
        } else {
            write!(f, "({} nonzeros)", self.entries.len())
        }
    }
}

/// Wire form `{"rows": r, "cols": c, "entries": [[i, j, "v"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Int)>,
}

impl Serialize for SparseIntMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseIntMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        SparseIntMat::from_json(&m).map_err(serde::de::Error::custom)
    }
}
