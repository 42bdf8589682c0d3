//! Dense bit-packed linear algebra over F₂.
//!
//! Rows are packed into 64-bit words, bit `j` of a row lives in word `j / 64`
//! at position `j % 64`. Bits past the logical column count are always zero.
//! Pivoting is deterministic (leftmost column, topmost row) so that every
//! presentation built on top of this module is reproducible bit for bit.

use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over F₂.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; words_for(len)], len }
    }

    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, bit 0 first.
    pub fn from_str01(s: &str) -> Self {
        let bits: Vec<bool> = s.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect();
        Self::from_bits(&bits)
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = Self { words, len };
        v.clear_tail();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        first_one_in(&self.words)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + t)
                }
            })
        })
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones & 1 == 1
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn next_one_from(words: &[u64], from: usize) -> Option<usize> {
    let mut wi = from / WORD_BITS;
    if wi >= words.len() {
        return None;
    }
    let masked = words[wi] & (!0u64 << (from % WORD_BITS));
    if masked != 0 {
        return Some(wi * WORD_BITS + masked.trailing_zeros() as usize);
    }
    wi += 1;
    first_one_in(&words[wi..]).map(|b| b + wi * WORD_BITS)
}

#[inline]
pub(crate) fn first_one_in(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|wi| wi * WORD_BITS + words[wi].trailing_zeros() as usize)
}

/// A dense row-major matrix over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Rows given as `0`/`1` strings of equal length.
    pub fn from_strs(rows: &[&str]) -> Self {
        let vecs: Vec<BitVec> = rows.iter().map(|s| BitVec::from_str01(s)).collect();
        let cols = vecs.first().map_or(0, BitVec::len);
        Self::from_rows(cols, &vecs)
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        let stride = words_for(cols);
        assert_eq!(data.len(), rows * stride);
        Self { rows, cols, stride, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub(crate) fn raw_words(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.row_words(r).to_vec(), self.cols)
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_into(b, a);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (a, b) = (a.min(b), a.max(b));
        let (lo, hi) = self.data.split_at_mut(b * s);
        lo[a * s..(a + 1) * s].swap_with_slice(&mut hi[..s]);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVec::from_words(self.row_words(r).to_vec(), self.cols).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self.row_words(r).iter().zip(x.words()).map(|(a, b)| (a & b).count_ones()).sum();
            if ones & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Row vector times matrix: `v · self`.
    pub fn vec_mul(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.stride];
        for r in v.iter_ones() {
            xor_into(&mut out, self.row_words(r));
        }
        BitVec::from_words(out, self.cols)
    }

    /// Matrix product by the method of four Russians (8-row Gray tables).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        const K: usize = 8;
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let st = other.stride;
        if st == 0 || self.rows == 0 {
            return out;
        }
        let mut table = vec![0u64; (1 << K) * st];
        let mut chunk = 0;
        while chunk < self.cols {
            let k = K.min(self.cols - chunk);
            let (w, shift) = (chunk / WORD_BITS, chunk % WORD_BITS);
            let used = (0..self.rows).any(|r| (self.data[r * self.stride + w] >> shift) & 0xff != 0);
            if used {
                for i in 1..(1usize << k) {
                    let low = i.trailing_zeros() as usize;
                    let prev = i & (i - 1);
                    let (head, tail) = table.split_at_mut(i * st);
                    let dst = &mut tail[..st];
                    dst.copy_from_slice(&head[prev * st..(prev + 1) * st]);
                    xor_into(dst, other.row_words(chunk + low));
                }
                for r in 0..self.rows {
                    let bits = ((self.data[r * self.stride + w] >> shift) & ((1 << k) - 1)) as usize;
                    if bits != 0 {
                        let src = &table[bits * st..(bits + 1) * st];
                        xor_into(&mut out.data[r * st..(r + 1) * st], src);
                    }
                }
            }
            chunk += k;
        }
        out
    }

    /// Appends the rows of `other`, which must have the same width.
    pub fn append_rows(&mut self, other: &BitMatrix) {
        assert_eq!(self.cols, other.cols);
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// In-place reduction to reduced row-echelon form; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: BitMatrix,
    pub pivot_columns: Vec<usize>,
}

pub fn rref(m: &BitMatrix) -> Rref {
    let mut reduced = m.clone();
    let pivot_columns = reduced.rref_in_place();
    Rref { rank: pivot_columns.len(), reduced, pivot_columns }
}

pub fn rank(m: &BitMatrix) -> usize {
    rref(m).rank
}

/// Basis of the right null space `{x : m·x = 0}`, one vector per row.
pub fn kernel_basis(m: &BitMatrix) -> BitMatrix {
    let Rref { reduced, pivot_columns, .. } = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivot_columns {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut out = BitMatrix::zeros(free.len(), m.cols());
    for (i, &f) in free.iter().enumerate() {
        out.set(i, f, true);
        for (row, &pc) in pivot_columns.iter().enumerate() {
            if reduced.get(row, f) {
                out.set(i, pc, true);
            }
        }
    }
    out
}

/// Some `x` with `m·x = rhs`, free coordinates set to zero; `None` if inconsistent.
pub fn solve(m: &BitMatrix, rhs: &BitVec) -> Option<BitVec> {
    assert_eq!(rhs.len(), m.rows(), "rhs length must equal row count");
    let mut aug = BitMatrix::zeros(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in m.row(r).iter_ones() {
            aug.set(r, c, true);
        }
        if rhs.get(r) {
            aug.set(r, m.cols(), true);
        }
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = BitVec::zeros(m.cols());
    for (row, &c) in pivots.iter().enumerate() {
        if aug.get(row, m.cols()) {
            x.set(c, true);
        }
    }
    Some(x)
}

/// Incremental echelon form of a set of vectors, keyed by leading bit.
///
/// Each stored row remembers which combination of inserted vectors produced
/// it, so the structure answers both "is `v` in the span" and "which
/// combination of the inputs gives `v`". Inserting a dependent vector yields
/// a kernel relation among the inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    tag_width: usize,
    rows: Vec<Vec<u64>>,
    tags: Vec<Vec<u64>>,
    pivot_of_col: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    /// `width` is the vector length, `tag_width` the number of inputs
    /// tracked (zero disables combination tracking).
    pub fn new(width: usize, tag_width: usize) -> Self {
        Self { width, tag_width, rows: Vec::new(), tags: Vec::new(), pivot_of_col: vec![NO_PIVOT; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce_words(&self, v: &mut [u64], mut tag: Option<&mut [u64]>) -> Option<usize> {
        let mut start = 0;
        loop {
            let lead = first_one_in(&v[start..]).map(|b| b + start * WORD_BITS)?;
            let p = self.pivot_of_col[lead];
            if p == NO_PIVOT {
                return Some(lead);
            }
            xor_into(v, &self.rows[p as usize]);
            if let Some(t) = tag.as_deref_mut() {
                xor_into(t, &self.tags[p as usize]);
            }
            start = lead / WORD_BITS;
        }
    }

    /// Reduces `v`; returns true when `v` lies in the span.
    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.words().to_vec();
        self.reduce_words(&mut w, None).is_none()
    }

    /// Inserts `v` carrying combination tag `tag`. Returns `Err(tag')` with
    /// the reduced tag when `v` was dependent, i.e. a kernel relation.
    pub fn insert_tagged(&mut self, v: &BitVec, tag: BitVec) -> Result<usize, BitVec> {
        debug_assert_eq!(v.len(), self.width);
        debug_assert_eq!(tag.len(), self.tag_width);
        let mut w = v.words().to_vec();
        let mut t = tag.words().to_vec();
        match self.reduce_words(&mut w, Some(&mut t)) {
            None => Err(BitVec::from_words(t, self.tag_width)),
            Some(lead) => {
                self.pivot_of_col[lead] = self.rows.len() as u32;
                self.rows.push(w);
                self.tags.push(t);
                Ok(lead)
            }
        }
    }

    /// Inserts without tracking; returns the new pivot column if independent.
    pub fn insert(&mut self, v: &BitVec) -> Option<usize> {
        let mut w = v.words().to_vec();
        let lead = self.reduce_words(&mut w, None)?;
        self.pivot_of_col[lead] = self.rows.len() as u32;
        self.rows.push(w);
        if self.tag_width > 0 {
            self.tags.push(vec![0; words_for(self.tag_width)]);
        }
        Some(lead)
    }

    /// Combination of tracked inputs whose sum is `v`, if `v` is in the span.
    pub fn preimage(&self, v: &BitVec) -> Option<BitVec> {
        let mut w = v.words().to_vec();
        let mut t = vec![0u64; words_for(self.tag_width)];
        match self.reduce_words(&mut w, Some(&mut t)) {
            None => Some(BitVec::from_words(t, self.tag_width)),
            Some(_) => None,
        }
    }

    /// Reduces `v` to a canonical representative modulo the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut w = v.words().to_vec();
        let mut pos = 0;
        while let Some(lead) = next_one_from(&w, pos) {
            let p = self.pivot_of_col[lead];
            if p == NO_PIVOT {
                pos = lead + 1;
            } else {
                xor_into(&mut w, &self.rows[p as usize]);
                pos = lead;
            }
        }
        BitVec::from_words(w, self.width)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> =
            (0..self.width).filter(|&c| self.pivot_of_col[c] != NO_PIVOT).collect();
        cols.sort_unstable();
        cols
    }
}

impl Echelon {
    /// Converts to a fully reduced solver. The tags become the preimages.
    pub fn into_solver(self) -> Solver {
        let Echelon { width, tag_width, mut rows, mut tags, pivot_of_col } = self;
        let mut order: Vec<(usize, usize)> =
            (0..width).filter(|&c| pivot_of_col[c] != NO_PIVOT).map(|c| (c, pivot_of_col[c] as usize)).collect();
        order.sort_unstable();
        let tagged = tags.len() == rows.len();
        // clear each pivot column from the rows with smaller leads, largest first
        for idx in (0..order.len()).rev() {
            let (col, r) = order[idx];
            let (w, bit) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            for &(_, s) in &order[..idx] {
                if rows[s][w] & bit != 0 {
                    let (src, dst) = pair_mut(&mut rows, r, s);
                    xor_into(dst, src);
                    if tagged {
                        let (src, dst) = pair_mut(&mut tags, r, s);
                        xor_into(dst, src);
                    }
                }
            }
        }
        let mut tm = BitMatrix::zeros(order.len(), tag_width);
        let mut rm = BitMatrix::zeros(order.len(), width);
        for (i, &(_, r)) in order.iter().enumerate() {
            if tagged {
                tm.row_words_mut(i).copy_from_slice(&tags[r]);
            }
            rm.row_words_mut(i).copy_from_slice(&rows[r]);
        }
        Solver { width, pivots: order.into_iter().map(|(c, _)| c).collect(), rows: rm, tags: tm }
    }
}

fn pair_mut(v: &mut [Vec<u64>], src: usize, dst: usize) -> (&[u64], &mut [u64]) {
    debug_assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// Reduced row-echelon form of a set of tagged rows, answering
/// "which combination of the original rows gives this vector" in bulk.
#[derive(Clone, Debug)]
pub struct Solver {
    width: usize,
    pivots: Vec<usize>,
    rows: BitMatrix,
    tags: BitMatrix,
}

impl Solver {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn gather(&self, z: &BitMatrix) -> BitMatrix {
        let mut zp = BitMatrix::zeros(z.rows(), self.pivots.len());
        for r in 0..z.rows() {
            let src = z.row_words(r);
            let dst = zp.row_words_mut(r);
            for (i, &c) in self.pivots.iter().enumerate() {
                if (src[c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1 {
                    dst[i / WORD_BITS] |= 1 << (i % WORD_BITS);
                }
            }
        }
        zp
    }

    /// Tags of a combination producing each row of `z`, or `None` if some
    /// row lies outside the span.
    pub fn preimages(&self, z: &BitMatrix) -> Option<BitMatrix> {
        assert_eq!(z.cols(), self.width);
        let zp = self.gather(z);
        if zp.mul(&self.rows) != *z {
            return None;
        }
        Some(zp.mul(&self.tags))
    }

    pub fn preimage(&self, z: &BitVec) -> Option<BitVec> {
        let m = BitMatrix::from_rows(self.width, std::slice::from_ref(z));
        self.preimages(&m).map(|p| p.row(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rank(rows: &[Vec<bool>], cols: usize) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&r| m[r][c]) {
                m.swap(p, rank);
                for r in 0..m.len() {
                    if r != rank && m[r][c] {
                        let pivot = m[rank].clone();
                        for (x, v) in m[r].iter_mut().zip(pivot) {
                            *x ^= v;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn identity_rref() {
        let r = rref(&BitMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn zero_rref() {
        let r = rref(&BitMatrix::zeros(2, 5));
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn dependent_third_row() {
        let m = BitMatrix::from_strs(&["110", "011", "101"]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&BitMatrix::identity(4)).rows(), 0);
        assert_eq!(kernel_basis(&BitMatrix::zeros(3, 4)).rows(), 4);
        let k = kernel_basis(&BitMatrix::from_strs(&["11"]));
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), BitVec::from_str01("11"));
    }

    #[test]
    fn solve_examples() {
        let e1 = BitVec::from_str01("100");
        assert_eq!(solve(&BitMatrix::identity(3), &e1), Some(e1.clone()));
        assert_eq!(solve(&BitMatrix::zeros(3, 3), &e1), None);
        let x = solve(&BitMatrix::from_strs(&["11"]), &BitVec::from_str01("1")).unwrap();
        assert_eq!(x, BitVec::from_str01("10"));
    }

    #[test]
    fn echelon_tracks_relations() {
        let vs = ["110", "011", "101"].map(BitVec::from_str01);
        let mut e = Echelon::new(3, 3);
        assert!(e.insert_tagged(&vs[0], BitVec::unit(3, 0)).is_ok());
        assert!(e.insert_tagged(&vs[1], BitVec::unit(3, 1)).is_ok());
        let rel = e.insert_tagged(&vs[2], BitVec::unit(3, 2)).unwrap_err();
        assert_eq!(rel, BitVec::from_str01("111"));
        let pre = e.preimage(&BitVec::from_str01("101")).unwrap();
        assert_eq!(pre, BitVec::from_str01("110"));
    }

    #[test]
    fn reduce_is_canonical() {
        let mut e = Echelon::new(4, 0);
        e.insert(&BitVec::from_str01("1100"));
        e.insert(&BitVec::from_str01("0110"));
        let a = e.reduce(&BitVec::from_str01("1011"));
        let b = e.reduce(&BitVec::from_str01("0001"));
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<bool>)> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(any::<bool>(), r * c))
            })
        }

        fn build(r: usize, c: usize, bits: &[bool]) -> BitMatrix {
            let mut m = BitMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, bits[i * c + j]);
                }
            }
            m
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn four_russians_matches_naive((r, c, bits) in matrix(80), seed in any::<u64>()) {
                let a = build(r, c, &bits);
                let cols = (seed % 90 + 1) as usize;
                let mut b = BitMatrix::zeros(c, cols);
                let mut x = seed | 1;
                for i in 0..c {
                    for j in 0..cols {
                        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                        b.set(i, j, x & 1 == 1);
                    }
                }
                let p = a.mul(&b);
                for i in 0..r {
                    for j in 0..cols {
                        let e = (0..c).fold(false, |acc, k| acc ^ (a.get(i, k) & b.get(k, j)));
                        prop_assert_eq!(p.get(i, j), e);
                    }
                }
            }

            #[test]
            fn solver_preimages((r, c, bits) in matrix(48)) {
                let m = build(r, c, &bits);
                let mut e = Echelon::new(c, r);
                for i in 0..r {
                    let _ = e.insert_tagged(&m.row(i), BitVec::unit(r, i));
                }
                let solver = e.into_solver();
                prop_assert_eq!(solver.rank(), rank(&m));
                // every combination of rows is solved, and the answer reproduces it
                let combos = BitMatrix::from_rows(r, &(0..r).map(|i| {
                    let mut v = BitVec::zeros(r);
                    for j in 0..=i { if (i * 7 + j) % 3 != 0 { v.set(j, true); } }
                    v
                }).collect::<Vec<_>>());
                let z = combos.mul(&m);
                let y = solver.preimages(&z).expect("in span");
                prop_assert_eq!(y.mul(&m), z);
            }

            #[test]
            fn rank_nullity((r, c, bits) in matrix(64)) {
                let m = build(r, c, &bits);
                let k = kernel_basis(&m);
                prop_assert_eq!(rank(&m) + k.rows(), c);
                for i in 0..k.rows() {
                    prop_assert!(m.mul_vec(&k.row(i)).is_zero());
                }
            }

            #[test]
            fn rref_idempotent((r, c, bits) in matrix(40)) {
                let once = rref(&build(r, c, &bits));
                let twice = rref(&once.reduced);
                prop_assert_eq!(once.reduced, twice.reduced);
            }

            #[test]
            fn solve_is_exact((r, c, bits) in matrix(40), xs in proptest::collection::vec(any::<bool>(), 40)) {
                let m = build(r, c, &bits);
                let x0 = BitVec::from_bits(&xs[..c]);
                let rhs = m.mul_vec(&x0);
                let x = solve(&m, &rhs).expect("consistent by construction");
                prop_assert_eq!(m.mul_vec(&x), rhs);
            }

            #[test]
            fn agrees_with_naive((r, c, bits) in matrix(32)) {
                let rows: Vec<Vec<bool>> = (0..r).map(|i| bits[i * c..(i + 1) * c].to_vec()).collect();
                prop_assert_eq!(rank(&build(r, c, &bits)), naive_rank(&rows, c));
            }

            #[test]
            fn echelon_rank_matches((r, c, bits) in matrix(48)) {
                let m = build(r, c, &bits);
                let mut e = Echelon::new(c, r);
                let mut relations = 0;
                for i in 0..r {
                    match e.insert_tagged(&m.row(i), BitVec::unit(r, i)) {
                        Ok(_) => {}
                        Err(tag) => {
                            relations += 1;
                            prop_assert!(m.transpose().mul_vec(&tag).is_zero());
                        }
                    }
                }
                prop_assert_eq!(e.rank(), rank(&m));
                prop_assert_eq!(relations, r - e.rank());
            }
        }
    }
}
