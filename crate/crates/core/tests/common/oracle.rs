//! Freeness by counting: `M` is free iff `dim M = dim H · dim M/H⁺M`.
//! Uses only the raw action columns and its own elimination.

use steenrod_core::module::GradedModule;

fn bits(len: usize, ones: &[u32]) -> Vec<u64> {
    let mut v = vec![0u64; len.div_ceil(64)];
    for &i in ones {
        v[i as usize / 64] ^= 1 << (i % 64);
    }
    v
}

pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut r = 0;
    let words = rows.first().map_or(0, |v| v.len());
    for bit in 0..words * 64 {
        let (w, m) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (r..rows.len()).find(|&k| rows[k][w] & m != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[w] & m != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Number of generators of a minimal generating set.
pub fn generator_count(m: &GradedModule) -> usize {
    let h = m.algebra();
    let mut rows = Vec::new();
    for a in 0..h.dim() {
        if h.degree(a) == 0 {
            continue;
        }
        for j in 0..m.dim() {
            let col = m.action(a).column(j);
            if !col.is_empty() {
                rows.push(bits(m.dim(), col));
            }
        }
    }
    m.dim() - rank(rows)
}

pub fn brute_force_free(m: &GradedModule) -> bool {
    m.dim() == generator_count(m) * m.algebra().dim()
}
