//! Dense and sparse linear algebra over GF(2).
//!
//! Everything that needs echelon forms goes through [`Subspace`], which keeps
//! its rows fully reduced with the pivot at the *highest* set bit. With that
//! convention the non-pivot columns of a subspace `S` are exactly the columns
//! picked by a greedy scan from the lowest index, which is what gives the
//! lexicographically least coset representatives of `V / S`.

use std::fmt;

const WORD: usize = 64;

/// Packed bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
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
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn highest_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
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

/// Iterator over set positions, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD + bit);
            }
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
    }
}

/// A subspace of `GF(2)^n` held as a fully reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    // pivot column -> row index, u32::MAX when the column is free
    row_of_pivot: Vec<u32>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![u32::MAX; ambient],
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::new(ambient);
        for i in 0..ambient {
            s.insert(BitVec::unit(ambient, i));
        }
        s
    }

    pub fn spanned_by<'a, I: IntoIterator<Item = &'a BitVec>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, column: usize) -> bool {
        self.row_of_pivot[column] != u32::MAX
    }

    /// Reduce `v` modulo the subspace; afterwards `v` has no pivot bits.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Insert a vector; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let Some(p) = v.highest_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.row_of_pivot[p] = self.rows.len() as u32;
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Free (non-pivot) columns in ascending order. These index a basis of
    /// the quotient `GF(2)^n / self`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Rows whose sum is `v`, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &BitVec) -> Option<Vec<usize>> {
        let mut rest = v.clone();
        let mut coords = Vec::new();
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if rest.get(p) {
                rest.xor_assign(row);
                coords.push(k);
            }
        }
        rest.is_zero().then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

/// Result of reducing a list of columns: the span of the columns and a basis
/// of the linear relations among them.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub image: Subspace,
    /// Each vector has one bit per input column.
    pub kernel: Vec<BitVec>,
}

/// Image and kernel of the linear map whose `j`-th column is `columns[j]`.
pub fn kernel_image(columns: &[BitVec], target_dim: usize) -> KernelImage {
    let n = columns.len();
    let mut rows: Vec<(BitVec, BitVec)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        debug_assert_eq!(col.len(), target_dim);
        let mut v = col.clone();
        let mut track = BitVec::unit(n, j);
        for ((row, rtrack), &p) in rows.iter().zip(&pivots) {
            if v.get(p) {
                v.xor_assign(row);
                track.xor_assign(rtrack);
            }
        }
        match v.highest_one() {
            None => kernel.push(track),
            Some(p) => {
                for (row, rtrack) in rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&v);
                        rtrack.xor_assign(&track);
                    }
                }
                rows.push((v, track));
                pivots.push(p);
            }
        }
    }
    let mut image = Subspace::new(target_dim);
    for (row, _) in rows {
        image.insert(row);
    }
    KernelImage { image, kernel }
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[BitVec], nvars: usize) -> Vec<BitVec> {
    let mut echelon = Subspace::new(nvars);
    for r in rows {
        echelon.insert(r.clone());
    }
    let mut out = Vec::new();
    for f in echelon.complement() {
        let mut x = BitVec::unit(nvars, f);
        for (row, &p) in echelon.rows.iter().zip(&echelon.pivots) {
            if row.get(f) {
                x.set(p, true);
            }
        }
        out.push(x);
    }
    out
}

/// Rank of a square or rectangular matrix given by rows.
pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut s = Subspace::new(first.len());
    rows.iter().filter(|r| s.insert((*r).clone())).count()
}

/// Sparse GF(2) vector: sorted, duplicate-free indices.
pub type SparseVec = Vec<u32>;

/// Sum of index lists with mod 2 cancellation.
pub fn sparse_sum<I: IntoIterator<Item = u32>>(indices: I) -> SparseVec {
    let mut all: Vec<u32> = indices.into_iter().collect();
    all.sort_unstable();
    let mut out = Vec::with_capacity(all.len());
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j < all.len() && all[j] == all[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(all[i]);
        }
        i = j;
    }
    out
}

/// `a + b` for sorted sparse vectors.
pub fn sparse_add(a: &[u32], b: &[u32]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Column-compressed sparse matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    col_ptr: Vec<u32>,
    row_idx: Vec<u32>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            col_ptr: vec![0; cols + 1],
            row_idx: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            col_ptr: (0..=n as u32).collect(),
            row_idx: (0..n as u32).collect(),
        }
    }

    /// Columns must be sorted and duplicate-free.
    pub fn from_columns<C: AsRef<[u32]>>(rows: usize, columns: &[C]) -> Self {
        let mut col_ptr = Vec::with_capacity(columns.len() + 1);
        let mut row_idx = Vec::new();
        col_ptr.push(0);
        for c in columns {
            let c = c.as_ref();
            debug_assert!(c.windows(2).all(|w| w[0] < w[1]));
            debug_assert!(c.iter().all(|&r| (r as usize) < rows));
            row_idx.extend_from_slice(c);
            col_ptr.push(row_idx.len() as u32);
        }
        SparseMatrix {
            rows,
            col_ptr,
            row_idx,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[u32] {
        &self.row_idx[self.col_ptr[j] as usize..self.col_ptr[j + 1] as usize]
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn is_zero(&self) -> bool {
        self.row_idx.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols() && (0..self.cols()).all(|j| self.column(j) == [j as u32])
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.cols()).flat_map(move |j| self.column(j).iter().map(move |&r| (r, j as u32)))
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.column(col).binary_search(&(row as u32)).is_ok()
    }

    /// `self · v` for a sparse vector `v`.
    pub fn apply(&self, v: &[u32]) -> SparseVec {
        match v {
            [] => Vec::new(),
            [j] => self.column(*j as usize).to_vec(),
            _ => sparse_sum(v.iter().flat_map(|&j| self.column(j as usize).iter().copied())),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); self.rows];
        for j in 0..self.cols() {
            for &r in self.column(j) {
                cols[r as usize].push(j as u32);
            }
        }
        SparseMatrix::from_columns(self.cols(), &cols)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols(), other.cols());
        let cols: Vec<SparseVec> = (0..self.cols())
            .map(|j| sparse_add(self.column(j), other.column(j)))
            .collect();
        SparseMatrix::from_columns(self.rows, &cols)
    }

    /// `self · other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows);
        let cols: Vec<SparseVec> = (0..other.cols())
            .map(|j| self.apply(other.column(j)))
            .collect();
        SparseMatrix::from_columns(self.rows, &cols)
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        let mut c = self.column(col).to_vec();
        match c.binary_search(&(row as u32)) {
            Ok(k) => {
                c.remove(k);
            }
            Err(k) => c.insert(k, row as u32),
        }
        let mut cols: Vec<Vec<u32>> = (0..self.cols()).map(|j| self.column(j).to_vec()).collect();
        cols[col] = c;
        *self = SparseMatrix::from_columns(self.rows, &cols);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn highest_one_and_ones() {
        let v = BitVec::from_indices(130, [3, 64, 129]);
        assert_eq!(v.highest_one(), Some(129));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(BitVec::zeros(70).highest_one(), None);
    }

    #[test]
    fn complement_is_greedy_from_low_end() {
        // span{e0 + e1, e1 + e2}: greedy scan keeps e0 only.
        let mut s = Subspace::new(3);
        s.insert(BitVec::from_indices(3, [0, 1]));
        s.insert(BitVec::from_indices(3, [1, 2]));
        assert_eq!(s.complement(), vec![0]);
        assert!(s.contains(&BitVec::from_indices(3, [0, 2])));
        assert!(!s.contains(&BitVec::from_indices(3, [0])));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let cols: Vec<BitVec> = (0..5).map(|i| BitVec::unit(5, i)).collect();
        let ki = kernel_image(&cols, 5);
        assert!(ki.kernel.is_empty());
        assert_eq!(ki.image.dim(), 5);
    }

    #[test]
    fn sparse_sum_cancels_pairs() {
        assert_eq!(sparse_sum([3, 1, 3, 2, 1, 1]), vec![1, 2]);
        assert_eq!(sparse_add(&[1, 4, 7], &[4, 5]), vec![1, 5, 7]);
    }

    fn arb_columns() -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
        (1usize..12, 1usize..12).prop_flat_map(|(m, n)| {
            (Just(m), proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), n))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((m, cols) in arb_columns()) {
            let cols: Vec<BitVec> = cols
                .iter()
                .map(|c| BitVec::from_indices(m, c.iter().enumerate().filter(|x| *x.1).map(|x| x.0)))
                .collect();
            let ki = kernel_image(&cols, m);
            prop_assert_eq!(ki.image.dim() + ki.kernel.len(), cols.len());
            for k in &ki.kernel {
                let mut acc = BitVec::zeros(m);
                for j in k.ones() {
                    acc.xor_assign(&cols[j]);
                }
                prop_assert!(acc.is_zero());
            }
        }

        #[test]
        fn nullspace_solves_rows((m, rows) in arb_columns()) {
            let rows: Vec<BitVec> = rows
                .iter()
                .map(|c| BitVec::from_indices(m, c.iter().enumerate().filter(|x| *x.1).map(|x| x.0)))
                .collect();
            let ns = nullspace(&rows, m);
            prop_assert_eq!(ns.len() + rank(&rows), m);
            for x in &ns {
                for r in &rows {
                    prop_assert!(!r.dot(x));
                }
            }
        }
    }
}
