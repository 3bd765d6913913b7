//! The Milnor product formula.
//!
//! `Sq(R) · Sq(S) = Σ_X β(X) Sq(T(X))` over allowable matrices `X`: non-negative
//! integer matrices indexed from 0 with `Σ_i x_ij = s_j` (j ≥ 1) and
//! `Σ_j 2^j x_ij = r_i` (i ≥ 1). The first row and column are determined by
//! the inner block, so only `x_ij` with `i, j ≥ 1` are enumerated.

use super::{MilnorElement, MilnorMonomial};

/// `(n_1, ..., n_r)!/(n_1!...n_r!) mod 2`: odd iff the binary expansions of
/// the parts are pairwise disjoint.
pub fn multinomial_mod2(parts: &[u64]) -> bool {
    let mut seen = 0u64;
    for &n in parts {
        if seen & n != 0 {
            return false;
        }
        seen |= n;
    }
    true
}

/// One allowable matrix, stored densely as `(len r + 1) x (len s + 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AllowableMatrix {
    entries: Vec<Vec<u64>>,
}

impl AllowableMatrix {
    /// `x_ij`; `(0, 0)` is unused and reads as zero.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// `t_k = Σ_{i+j=k} x_ij`.
    pub fn result_exponents(&self) -> Vec<u64> {
        let n = self.rows() + self.cols();
        (1..n.max(1))
            .map(|k| self.antidiagonal(k).iter().sum())
            .collect()
    }

    pub fn result(&self) -> MilnorMonomial {
        MilnorMonomial::new(self.result_exponents().into_iter().map(|t| t as u32).collect())
    }

    /// `β(X) = Π_k (x_k0, x_(k-1)1, ..., x_0k) mod 2`.
    pub fn coefficient(&self) -> bool {
        let n = self.rows() + self.cols();
        (1..n.max(1)).all(|k| multinomial_mod2(&self.antidiagonal(k)))
    }

    fn antidiagonal(&self, k: usize) -> Vec<u64> {
        (0..=k).map(|i| self.get(i, k - i)).collect()
    }

    /// The matrix with `x_i0 = r_i`, `x_0j = s_j` and everything else zero.
    pub fn is_trivial(&self) -> bool {
        (1..self.rows()).all(|i| (1..self.cols()).all(|j| self.get(i, j) == 0))
    }
}

/// Odometer over the inner block `x_ij`, `i, j ≥ 1`, in lexicographic order of
/// the row-major cell sequence. Row and column residuals are the `x_i0` and
/// `x_0j` entries.
struct Odometer {
    cols: usize,
    inner: Vec<u64>,
    row_rem: Vec<u64>,
    col_rem: Vec<u64>,
    started: bool,
}

impl Odometer {
    fn new(r: &[u32], s: &[u32]) -> Self {
        Odometer {
            cols: s.len(),
            inner: vec![0; r.len() * s.len()],
            row_rem: r.iter().map(|&x| x as u64).collect(),
            col_rem: s.iter().map(|&x| x as u64).collect(),
            started: false,
        }
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        for p in (0..self.inner.len()).rev() {
            let (i, j) = (p / self.cols, p % self.cols);
            let w = 1u64 << (j + 1);
            if self.row_rem[i] >= w && self.col_rem[j] >= 1 {
                self.inner[p] += 1;
                self.row_rem[i] -= w;
                self.col_rem[j] -= 1;
                return true;
            }
            self.row_rem[i] += w * self.inner[p];
            self.col_rem[j] += self.inner[p];
            self.inner[p] = 0;
        }
        false
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> u64 {
        match (i, j) {
            (0, 0) => 0,
            (0, j) => self.col_rem[j - 1],
            (i, 0) => self.row_rem[i - 1],
            (i, j) => self.inner[(i - 1) * self.cols + (j - 1)],
        }
    }

    fn snapshot(&self) -> AllowableMatrix {
        let rows = self.row_rem.len() + 1;
        let cols = self.cols + 1;
        AllowableMatrix {
            entries: (0..rows)
                .map(|i| (0..cols).map(|j| self.entry(i, j)).collect())
                .collect(),
        }
    }

    /// Resulting exponents if `β = 1`, else `None`.
    fn term(&self) -> Option<Vec<u32>> {
        let rows = self.row_rem.len();
        let cols = self.cols;
        let mut t = Vec::with_capacity(rows + cols);
        for k in 1..=rows + cols {
            let mut acc = 0u64;
            for i in k.saturating_sub(cols)..=k.min(rows) {
                let x = self.entry(i, k - i);
                if acc & x != 0 {
                    return None;
                }
                acc |= x;
            }
            t.push(acc as u32);
        }
        Some(t)
    }
}

/// Every allowable matrix for `Sq(r) · Sq(s)`, each exactly once.
pub struct AllowableMatrices {
    odometer: Odometer,
}

impl Iterator for AllowableMatrices {
    type Item = AllowableMatrix;

    fn next(&mut self) -> Option<AllowableMatrix> {
        self.odometer
            .advance()
            .then(|| self.odometer.snapshot())
    }
}

pub fn enumerate_allowable(r: &MilnorMonomial, s: &MilnorMonomial) -> AllowableMatrices {
    AllowableMatrices {
        odometer: Odometer::new(r.exponents(), s.exponents()),
    }
}

/// Product of two basis elements.
pub fn multiply_monomials(r: &MilnorMonomial, s: &MilnorMonomial) -> MilnorElement {
    if r.is_unit() {
        return MilnorElement::from(s.clone());
    }
    if s.is_unit() {
        return MilnorElement::from(r.clone());
    }
    let mut out = MilnorElement::zero();
    let mut odo = Odometer::new(r.exponents(), s.exponents());
    while odo.advance() {
        if let Some(t) = odo.term() {
            out.toggle(MilnorMonomial::new(t));
        }
    }
    out
}

pub fn multiply(a: &MilnorElement, b: &MilnorElement) -> MilnorElement {
    let mut out = MilnorElement::zero();
    for x in a.iter() {
        for y in b.iter() {
            out += &multiply_monomials(x, y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(e: &[u32]) -> MilnorMonomial {
        MilnorMonomial::new(e.to_vec())
    }

    /// Independent enumeration: every matrix with bounded entries, filtered by
    /// the row/column constraints.
    fn brute_force_matrices(r: &[u32], s: &[u32]) -> Vec<Vec<Vec<u64>>> {
        let rows = r.len();
        let cols = s.len();
        let cells: Vec<(usize, usize)> = (1..=rows)
            .flat_map(|i| (1..=cols).map(move |j| (i, j)))
            .collect();
        let bound = |i: usize, j: usize| (r[i - 1] as u64 >> j).min(s[j - 1] as u64);
        let mut out = Vec::new();
        let mut vals = vec![0u64; cells.len()];
        loop {
            let mut m = vec![vec![0u64; cols + 1]; rows + 1];
            for (k, &(i, j)) in cells.iter().enumerate() {
                m[i][j] = vals[k];
            }
            let mut ok = true;
            for i in 1..=rows {
                let used: u64 = (1..=cols).map(|j| m[i][j] << j).sum();
                if used > r[i - 1] as u64 {
                    ok = false;
                }
                m[i][0] = (r[i - 1] as u64).wrapping_sub(used);
            }
            for j in 1..=cols {
                let used: u64 = (1..=rows).map(|i| m[i][j]).sum();
                if used > s[j - 1] as u64 {
                    ok = false;
                }
                m[0][j] = (s[j - 1] as u64).wrapping_sub(used);
            }
            if ok {
                out.push(m);
            }
            // next tuple
            let mut k = 0;
            loop {
                if k == cells.len() {
                    return out;
                }
                let (i, j) = cells[k];
                if vals[k] < bound(i, j) {
                    vals[k] += 1;
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
        }
    }

    fn factorial_multinomial_mod2(parts: &[u64]) -> bool {
        // Legendre: v2(n!) = n - popcount(n)
        let v2 = |n: u64| n - n.count_ones() as u64;
        let total: u64 = parts.iter().sum();
        v2(total) == parts.iter().map(|&p| v2(p)).sum::<u64>()
    }

    #[test]
    fn multinomial_examples() {
        assert!(multinomial_mod2(&[1, 2]));
        assert!(!multinomial_mod2(&[1, 1]));
        assert!(multinomial_mod2(&[2, 1, 4]));
        for a in 0..20u64 {
            for b in 0..20u64 {
                for c in 0..6u64 {
                    assert_eq!(
                        multinomial_mod2(&[a, b, c]),
                        factorial_multinomial_mod2(&[a, b, c])
                    );
                }
            }
        }
    }

    #[test]
    fn allowable_counts_match_hand_enumeration() {
        assert_eq!(enumerate_allowable(&sq(&[1]), &sq(&[1])).count(), 1);
        let two: Vec<_> = enumerate_allowable(&sq(&[2]), &sq(&[2])).collect();
        assert_eq!(two.len(), 2);
        assert!(two[0].is_trivial());
        assert_eq!(two[1].get(0, 1), 1);
        assert_eq!(two[1].get(1, 1), 1);
        assert_eq!(enumerate_allowable(&sq(&[]), &sq(&[5])).count(), 1);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let samples: &[&[u32]] = &[&[], &[1], &[2], &[3], &[5], &[0, 1], &[2, 1], &[4, 0, 1], &[7, 3], &[0, 4, 2], &[9, 2, 1]];
        for r in samples {
            for s in samples {
                let fast: Vec<Vec<Vec<u64>>> = enumerate_allowable(&sq(r), &sq(s))
                    .map(|m| m.entries)
                    .collect();
                let mut slow = brute_force_matrices(r, s);
                let mut fast_sorted = fast.clone();
                fast_sorted.sort();
                slow.sort();
                assert_eq!(fast_sorted, slow, "r={r:?} s={s:?}");
                let mut dedup = fast_sorted.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), fast.len());
            }
        }
    }

    #[test]
    fn product_matches_brute_force_oracle() {
        let samples: &[&[u32]] = &[&[1], &[2], &[3], &[6], &[0, 1], &[1, 1], &[3, 1], &[0, 2], &[5, 0, 1], &[0, 3, 1], &[7, 3, 1]];
        for r in samples {
            for s in samples {
                let mut expected = MilnorElement::zero();
                for m in brute_force_matrices(r, s) {
                    let rows = m.len();
                    let cols = m[0].len();
                    let mut t = Vec::new();
                    let mut coeff = true;
                    for k in 1..rows + cols - 1 {
                        let diag: Vec<u64> = (0..=k)
                            .filter(|&i| i < rows && k - i < cols)
                            .map(|i| m[i][k - i])
                            .collect();
                        coeff &= factorial_multinomial_mod2(&diag);
                        t.push(diag.iter().sum::<u64>() as u32);
                    }
                    if coeff {
                        expected.toggle(MilnorMonomial::new(t));
                    }
                }
                assert_eq!(multiply_monomials(&sq(r), &sq(s)), expected, "r={r:?} s={s:?}");
            }
        }
    }

    #[test]
    fn small_products() {
        assert!(multiply_monomials(&sq(&[1]), &sq(&[1])).is_zero());
        assert_eq!(multiply_monomials(&sq(&[1]), &sq(&[2])), MilnorElement::from(sq(&[3])));
        assert_eq!(multiply_monomials(&sq(&[2]), &sq(&[2])), MilnorElement::from(sq(&[1, 1])));
        // Sq(2)Sq(1) = Sq(3) + Sq(0,1)
        let e = multiply_monomials(&sq(&[2]), &sq(&[1]));
        assert_eq!(e.to_string(), "Sq(0,1) + Sq(3)");
    }

    #[test]
    fn allowable_matrix_accessors() {
        let m: Vec<_> = enumerate_allowable(&sq(&[2]), &sq(&[2])).collect();
        assert!(!m[0].coefficient());
        assert!(m[1].coefficient());
        assert_eq!(m[1].result(), sq(&[1, 1]));
        assert_eq!(m[0].result(), sq(&[4]));
    }
}
