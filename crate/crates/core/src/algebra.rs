//! Finite connected Hopf algebras: sub-Hopf algebras given by a profile, and
//! quotients `H//Z` of one by a normal sub-Hopf algebra.
//!
//! Both kinds share one representation: a basis of Milnor monomials sorted by
//! degree then exponents (for a quotient, the lexicographically least coset
//! representatives), with product, coproduct and antipode tables in basis
//! coordinates. Product rows are filled on first use.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{sparse_sum, BitVec, SparseMatrix, SparseVec, Subspace};
use crate::grading::{GradedSubspace, Grading};
use crate::milnor::{multiply_monomials, MilnorElement, MilnorMonomial};
use crate::profile::{self, Profile};

/// Largest algebra that will be enumerated.
pub const MAX_ALGEBRA_DIM: usize = 1 << 16;

/// Identity of an algebra: equal keys mean equal algebras.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum AlgebraKey {
    Profile(Profile),
    Quotient(Profile, Profile),
}

struct QuotientData {
    ambient: Arc<HopfAlgebra>,
    sub: Arc<HopfAlgebra>,
    ideal: GradedSubspace,
    reps: Vec<u32>,
    projection: Vec<SparseVec>,
}

enum Kind {
    Profile(Profile),
    Quotient(QuotientData),
}

pub struct HopfAlgebra {
    name: String,
    key: AlgebraKey,
    basis: Vec<MilnorMonomial>,
    grading: Grading,
    index: HashMap<MilnorMonomial, u32>,
    generators: Vec<SparseVec>,
    top: usize,
    kind: Kind,
    rows: Vec<OnceLock<Vec<SparseVec>>>,
    coproducts: OnceLock<Vec<Vec<(u32, u32)>>>,
    antipodes: OnceLock<Vec<SparseVec>>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for HopfAlgebra {}

/// Canonical descriptor text for a profile.
pub fn profile_name(p: &Profile) -> String {
    let n = p.len() as u32;
    if n >= 1 && *p == profile::a(n - 1) {
        return format!("A:{}", n - 1);
    }
    if n >= 1 && *p == profile::e(n - 1) {
        return format!("E:{}", n - 1);
    }
    format!("profile:{p}")
}

fn cancel_pairs(mut pairs: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    pairs.sort_unstable();
    let mut out = Vec::with_capacity(pairs.len());
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i;
        while j < pairs.len() && pairs[j] == pairs[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(pairs[i]);
        }
        i = j;
    }
    out
}

impl HopfAlgebra {
    /// The sub-Hopf algebra `{Sq(R) : r_t < 2^h(t)}`.
    pub fn from_profile(p: &Profile) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::InfiniteAlgebra(p.to_string()));
        }
        p.check()?;
        let dim = p
            .dimension()
            .filter(|&d| d <= MAX_ALGEBRA_DIM as u128)
            .ok_or_else(|| Error::ResourceLimit {
                what: format!("algebra {p}"),
                dim: usize::MAX,
                cap: MAX_ALGEBRA_DIM,
            })? as usize;
        let bounds: Vec<u32> = p.values().iter().map(|&h| 1u32 << h).collect();
        let mut basis = Vec::with_capacity(dim);
        let mut r = vec![0u32; bounds.len()];
        loop {
            basis.push(MilnorMonomial::new(r.clone()));
            let mut k = 0;
            loop {
                if k == r.len() {
                    break;
                }
                r[k] += 1;
                if r[k] < bounds[k] {
                    break;
                }
                r[k] = 0;
                k += 1;
            }
            if k == r.len() {
                break;
            }
        }
        basis.sort();
        let degrees = basis.iter().map(|m| m.degree() as i32).collect();
        let grading = Grading::new(degrees)?;
        let index: HashMap<MilnorMonomial, u32> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let generators = p
            .generators()
            .into_iter()
            .map(|(s, t)| vec![index[&MilnorMonomial::p(s, t)]])
            .collect();
        let top = index[&p.top_class().expect("finite profile")] as usize;
        debug_assert_eq!(top, dim - 1);
        Ok(HopfAlgebra {
            name: profile_name(p),
            key: AlgebraKey::Profile(p.clone()),
            rows: (0..dim).map(|_| OnceLock::new()).collect(),
            basis,
            grading,
            index,
            generators,
            top,
            kind: Kind::Profile(p.clone()),
            coproducts: OnceLock::new(),
            antipodes: OnceLock::new(),
        })
    }

    /// `H//Z = H / HZ⁺` for `Z` normal in `H`, both given by profiles.
    pub fn quotient(h: &Arc<HopfAlgebra>, z: &Arc<HopfAlgebra>) -> Result<Self> {
        let (hp, zp) = match (h.profile(), z.profile()) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => {
                return Err(Error::Structure(
                    "quotients are only formed between profile algebras".into(),
                ))
            }
        };
        let left = h.left_ideal(z)?;
        let right = h.right_ideal(z)?;
        if !left.same_as(&right) {
            return Err(Error::NotNormal {
                sub: z.name().into(),
                ambient: h.name().into(),
            });
        }
        let reps: Vec<u32> = left.complement().into_iter().map(|c| c as u32).collect();
        let position: HashMap<u32, u32> = reps
            .iter()
            .enumerate()
            .map(|(k, &a)| (a, k as u32))
            .collect();
        let projection: Vec<SparseVec> = (0..h.dim())
            .map(|a| {
                left.reduce(&[a as u32])
                    .into_iter()
                    .map(|c| position[&c])
                    .collect()
            })
            .collect();
        let basis: Vec<MilnorMonomial> = reps.iter().map(|&a| h.basis[a as usize].clone()).collect();
        let grading = Grading::new(reps.iter().map(|&a| h.degree(a as usize)).collect())?;
        if grading.dim_in(0) != 1 || grading.min_degree() != Some(0) {
            return Err(Error::Structure(format!(
                "{}//{} is not connected",
                h.name(),
                z.name()
            )));
        }
        if h.dim() != z.dim() * basis.len() {
            return Err(Error::Structure(format!(
                "dim {} != dim {} · dim quotient ({} != {} · {})",
                h.name(),
                z.name(),
                h.dim(),
                z.dim(),
                basis.len()
            )));
        }
        let top_degree = *grading.degrees().last().expect("nonempty");
        if grading.dim_in(top_degree) != 1 {
            return Err(Error::Structure("quotient has no unique top class".into()));
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let generators: Vec<SparseVec> = h
            .generators
            .iter()
            .map(|g| sparse_sum(g.iter().flat_map(|&a| projection[a as usize].iter().copied())))
            .filter(|v| !v.is_empty())
            .collect();
        let dim = basis.len();
        let q = HopfAlgebra {
            name: format!("{}//{}", h.name(), z.name()),
            key: AlgebraKey::Quotient(hp, zp),
            rows: (0..dim).map(|_| OnceLock::new()).collect(),
            basis,
            grading,
            index,
            generators,
            top: dim - 1,
            kind: Kind::Quotient(QuotientData {
                ambient: h.clone(),
                sub: z.clone(),
                ideal: left,
                reps,
                projection,
            }),
            coproducts: OnceLock::new(),
            antipodes: OnceLock::new(),
        };
        q.check_coproduct_descends()?;
        Ok(q)
    }

    /// `(π ⊗ π)Δ` vanishes on the ideal, so the coproduct is well defined on
    /// cosets.
    fn check_coproduct_descends(&self) -> Result<()> {
        let Kind::Quotient(qd) = &self.kind else {
            return Ok(());
        };
        for v in qd.ideal.basis() {
            let mut pairs = Vec::new();
            for &a in &v {
                for &(x, y) in qd.ambient.coproduct(a as usize) {
                    for &i in &qd.projection[x as usize] {
                        for &j in &qd.projection[y as usize] {
                            pairs.push((i, j));
                        }
                    }
                }
            }
            if !cancel_pairs(pairs).is_empty() {
                return Err(Error::Structure(format!(
                    "coproduct does not descend to {}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn key(&self) -> &AlgebraKey {
        &self.key
    }

    pub fn profile(&self) -> Option<&Profile> {
        match &self.kind {
            Kind::Profile(p) => Some(p),
            Kind::Quotient(_) => None,
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self.kind, Kind::Quotient(_))
    }

    /// `(H, Z)` for a quotient `H//Z`.
    pub fn quotient_parts(&self) -> Option<(&Arc<HopfAlgebra>, &Arc<HopfAlgebra>)> {
        match &self.kind {
            Kind::Quotient(q) => Some((&q.ambient, &q.sub)),
            Kind::Profile(_) => None,
        }
    }

    /// The ideal `HZ⁺` in ambient coordinates, for a quotient.
    pub fn ideal(&self) -> Option<&GradedSubspace> {
        match &self.kind {
            Kind::Quotient(q) => Some(&q.ideal),
            Kind::Profile(_) => None,
        }
    }

    /// Ambient index of each coset representative, for a quotient.
    pub fn representatives(&self) -> Option<&[u32]> {
        match &self.kind {
            Kind::Quotient(q) => Some(&q.reps),
            Kind::Profile(_) => None,
        }
    }

    /// `π` applied to an ambient vector.
    pub fn project(&self, v: &[u32]) -> Result<SparseVec> {
        match &self.kind {
            Kind::Quotient(q) => Ok(sparse_sum(
                v.iter().flat_map(|&a| q.projection[a as usize].iter().copied()),
            )),
            Kind::Profile(_) => Err(Error::Structure(format!("{} is not a quotient", self.name))),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MilnorMonomial] {
        &self.basis
    }

    pub fn monomial(&self, i: usize) -> &MilnorMonomial {
        &self.basis[i]
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    #[inline]
    pub fn degree(&self, i: usize) -> i32 {
        self.grading.degree(i)
    }

    pub fn index_of(&self, m: &MilnorMonomial) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `|H|`, the degree of the top class.
    pub fn top_degree(&self) -> i32 {
        self.degree(self.top)
    }

    pub fn top_class(&self) -> &MilnorMonomial {
        &self.basis[self.top]
    }

    /// Algebra generators as vectors in basis coordinates.
    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    /// Coordinates of a Milnor element: for a profile algebra every term must
    /// lie in it; for a quotient the element is read in the ambient algebra
    /// and projected.
    pub fn element(&self, e: &MilnorElement) -> Result<SparseVec> {
        match &self.kind {
            Kind::Profile(_) => {
                let mut out = Vec::with_capacity(e.len());
                for m in e.iter() {
                    let i = self.index_of(m).ok_or_else(|| {
                        Error::Membership(format!("{m} is not in {}", self.name))
                    })?;
                    out.push(i as u32);
                }
                Ok(sparse_sum(out))
            }
            Kind::Quotient(q) => {
                let v = q.ambient.element(e)?;
                self.project(&v)
            }
        }
    }

    /// Milnor element named by a coordinate vector (coset representatives for
    /// a quotient).
    pub fn to_element(&self, v: &[u32]) -> MilnorElement {
        v.iter().map(|&i| self.basis[i as usize].clone()).collect()
    }

    fn compute_product(&self, i: usize, j: usize) -> SparseVec {
        match &self.kind {
            Kind::Profile(_) => {
                let prod = multiply_monomials(&self.basis[i], &self.basis[j]);
                sparse_sum(prod.iter().map(|m| {
                    *self
                        .index
                        .get(m)
                        .unwrap_or_else(|| panic!("{m} escapes {}", self.name))
                }))
            }
            Kind::Quotient(q) => {
                let a = q.reps[i] as usize;
                let b = q.reps[j] as usize;
                let v = q.ambient.product_uncached(a, b);
                self.project(&v).expect("quotient")
            }
        }
    }

    /// Product of two basis elements without touching the row cache.
    pub fn product_uncached(&self, i: usize, j: usize) -> SparseVec {
        if let Some(row) = self.rows[i].get() {
            return row[j].clone();
        }
        self.compute_product(i, j)
    }

    /// Products `b_i · b_j` for every `j`.
    pub fn row(&self, i: usize) -> &[SparseVec] {
        self.rows[i].get_or_init(|| (0..self.dim()).map(|j| self.compute_product(i, j)).collect())
    }

    /// Fills the whole product table using the worker pool.
    pub fn fill_product_table(&self) {
        (0..self.dim()).into_par_iter().for_each(|i| {
            self.row(i);
        });
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> &[u32] {
        &self.row(i)[j]
    }

    pub fn mul_vec(&self, a: &[u32], b: &[u32]) -> SparseVec {
        let mut acc = Vec::new();
        for &i in a {
            let row = self.row(i as usize);
            for &j in b {
                acc.extend_from_slice(&row[j as usize]);
            }
        }
        sparse_sum(acc)
    }

    /// Left multiplication by `b_i` as a matrix on the basis.
    pub fn left_multiplication(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.dim(), self.row(i))
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_multiplication_by(&self, v: &[u32]) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|j| self.mul_vec(v, &[j as u32])).collect();
        SparseMatrix::from_columns(self.dim(), &cols)
    }

    /// `Δ(b_i)` as index pairs.
    pub fn coproduct(&self, i: usize) -> &[(u32, u32)] {
        &self.coproducts.get_or_init(|| self.compute_coproducts())[i]
    }

    fn compute_coproducts(&self) -> Vec<Vec<(u32, u32)>> {
        match &self.kind {
            Kind::Profile(_) => self
                .basis
                .par_iter()
                .map(|m| {
                    crate::milnor::coproduct(m)
                        .into_iter()
                        .map(|(a, b)| (self.index[&a], self.index[&b]))
                        .collect()
                })
                .collect(),
            Kind::Quotient(q) => q
                .reps
                .iter()
                .map(|&a| {
                    let mut pairs = Vec::new();
                    for &(x, y) in q.ambient.coproduct(a as usize) {
                        for &i in &q.projection[x as usize] {
                            for &j in &q.projection[y as usize] {
                                pairs.push((i, j));
                            }
                        }
                    }
                    cancel_pairs(pairs)
                })
                .collect(),
        }
    }

    /// `S(b_i)`, from `S(x) = Σ S(x')x''` over the terms of `Δx` other than
    /// `x ⊗ 1`.
    pub fn antipode(&self, i: usize) -> &[u32] {
        &self.antipodes.get_or_init(|| self.compute_antipodes())[i]
    }

    fn compute_antipodes(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = Vec::with_capacity(self.dim());
        for x in 0..self.dim() {
            if x == 0 {
                out.push(vec![0]);
                continue;
            }
            let mut acc = Vec::new();
            for &(a, b) in self.coproduct(x) {
                if a as usize == x && b == 0 {
                    continue;
                }
                let sa = &out[a as usize];
                acc.extend(self.mul_vec(sa, &[b]));
            }
            out.push(sparse_sum(acc));
        }
        out
    }

    pub fn antipode_vec(&self, v: &[u32]) -> SparseVec {
        sparse_sum(v.iter().flat_map(|&i| self.antipode(i as usize).iter().copied()))
    }

    /// Index map from `sub`'s basis into this basis.
    pub fn embedding(&self, sub: &HopfAlgebra) -> Result<Vec<u32>> {
        if sub.key == self.key {
            return Ok((0..self.dim() as u32).collect());
        }
        let not_sub = || Error::NotSubalgebra {
            sub: sub.name.clone(),
            ambient: self.name.clone(),
        };
        match (&self.kind, &sub.kind) {
            (Kind::Profile(p), Kind::Profile(q)) if q.is_le(p) => Ok(sub
                .basis
                .iter()
                .map(|m| self.index[m])
                .collect()),
            _ => Err(not_sub()),
        }
    }

    /// Span of the image of `sub` in this algebra. For a quotient `B//P`,
    /// `sub` may be a profile algebra inside `B` or a quotient `E//P` with
    /// `E` inside `B`.
    pub fn image_of(&self, sub: &HopfAlgebra) -> Result<GradedSubspace> {
        let mut out = GradedSubspace::new(&self.grading);
        match &self.kind {
            Kind::Profile(_) => {
                for i in self.embedding(sub)? {
                    out.insert(&[i]);
                }
            }
            Kind::Quotient(q) => {
                let ambient: Vec<u32> = match &sub.kind {
                    Kind::Quotient(r) if r.sub.key == q.sub.key => {
                        let emb = q.ambient.embedding(&r.ambient)?;
                        r.reps.iter().map(|&a| emb[a as usize]).collect()
                    }
                    _ => q.ambient.embedding(sub)?,
                };
                for a in ambient {
                    out.insert(&q.projection[a as usize]);
                }
            }
        }
        Ok(out)
    }

    /// `H · Z⁺`.
    pub fn left_ideal(&self, sub: &HopfAlgebra) -> Result<GradedSubspace> {
        let emb = self.embedding(sub)?;
        let mut ideal = GradedSubspace::new(&self.grading);
        for &z in &emb[1..] {
            for h in 0..self.dim() {
                if self.degree(h) + self.degree(z as usize) > self.top_degree() {
                    break;
                }
                ideal.insert(&self.product_uncached(h, z as usize));
            }
        }
        Ok(ideal)
    }

    /// `Z⁺ · H`.
    pub fn right_ideal(&self, sub: &HopfAlgebra) -> Result<GradedSubspace> {
        let emb = self.embedding(sub)?;
        let mut ideal = GradedSubspace::new(&self.grading);
        for &z in &emb[1..] {
            for p in self.row(z as usize) {
                ideal.insert(p);
            }
        }
        Ok(ideal)
    }

    /// Normality decided by `HZ⁺ = Z⁺H`.
    pub fn is_normal_sub(&self, sub: &HopfAlgebra) -> Result<bool> {
        Ok(self.left_ideal(sub)?.same_as(&self.right_ideal(sub)?))
    }

    /// Generators commute pairwise and square to zero.
    pub fn is_elementary(&self) -> bool {
        let g = &self.generators;
        for a in g {
            if !self.mul_vec(a, a).is_empty() {
                return false;
            }
            for b in g {
                if self.mul_vec(a, b) != self.mul_vec(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|a| g.iter().all(|b| self.mul_vec(a, b) == self.mul_vec(b, a)))
    }

    /// Rank of the pairing `H_q ⊗ H_{|H|−q} → H_{|H|}` in each degree `q`,
    /// with the dimension it would need to be nonsingular.
    pub fn poincare_pairing(&self) -> Vec<(i32, usize, usize, usize)> {
        let top = self.top_degree();
        let top_idx = self.top as u32;
        self.grading
            .blocks()
            .par_iter()
            .map(|b| {
                let other = self.grading.range(top - b.degree);
                let rows: Vec<BitVec> = b
                    .range
                    .clone()
                    .map(|i| {
                        BitVec::from_indices(
                            other.len(),
                            other.clone().filter(|&j| {
                                self.product_uncached(i, j).binary_search(&top_idx).is_ok()
                            })
                            .map(|j| j - other.start),
                        )
                    })
                    .collect();
                let rank = if other.is_empty() {
                    0
                } else {
                    crate::gf2::rank(&rows)
                };
                (b.degree, b.range.len(), other.len(), rank)
            })
            .collect()
    }

    pub fn poincare_nonsingular(&self) -> bool {
        self.poincare_pairing()
            .iter()
            .all(|&(_, a, b, r)| a == b && r == a)
    }

    /// Elements of `H⁺` as the span of all positive-degree basis elements.
    pub fn augmentation_dim(&self) -> usize {
        self.dim() - 1
    }
}

/// `∏_t ∏_{s < h(t)} P^s_t`, factors in order of `t` then `s`, computed in
/// the Milnor basis.
pub fn ordered_generator_product(p: &Profile) -> MilnorElement {
    let mut acc = MilnorElement::one();
    for (s, t) in p.generators() {
        acc = &acc * &MilnorElement::from(MilnorMonomial::p(s, t));
    }
    acc
}

/// Outcome of comparing the ideal `HZ⁺` with the monomial span predicted
/// when `Z = C ∩ H` for `C` normal in the whole Steenrod algebra.
pub fn monomial_ideal_crosscheck(h: &HopfAlgebra, z: &HopfAlgebra) -> Result<Option<bool>> {
    let (Some(hp), Some(zp)) = (h.profile(), z.profile()) else {
        return Ok(None);
    };
    let c = zp.normal_hull();
    if c.meet(hp) != *zp {
        return Ok(None);
    }
    let ideal = h.left_ideal(z)?;
    let predicted: Vec<u32> = (0..h.dim() as u32)
        .filter(|&i| {
            h.monomial(i as usize)
                .exponents()
                .iter()
                .enumerate()
                .any(|(k, &r)| {
                    let hc = c.get(k + 1).min(31);
                    r & ((1u32 << hc) - 1) != 0
                })
        })
        .collect();
    let agree = predicted.len() == ideal.dim() && predicted.iter().all(|&i| ideal.contains(&[i]));
    Ok(Some(agree))
}

/// Comparison of `A(n−1)` with `A(n)//E(n)` along `Sq(R) ↦ [Sq(2R)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingReport {
    pub n: u32,
    /// Which construction produced the comparison map.
    pub path: &'static str,
    pub dimensions_match: bool,
    pub degrees_double: bool,
    pub bijective: bool,
    pub multiplicative: bool,
    pub quotient_even: bool,
}

impl DoublingReport {
    pub fn passed(&self) -> bool {
        self.dimensions_match
            && self.degrees_double
            && self.bijective
            && self.multiplicative
            && self.quotient_even
    }
}

pub fn doubling_check(n: u32) -> Result<DoublingReport> {
    if n < 1 {
        return Err(Error::OutOfRange("doubling needs n ≥ 1".into()));
    }
    let small = crate::registry::algebra(&profile::a(n - 1))?;
    let big = crate::registry::algebra(&profile::a(n))?;
    let ext = crate::registry::algebra(&profile::e(n))?;
    let q = crate::registry::quotient(&big, &ext)?;
    let doubled = |m: &MilnorMonomial| {
        MilnorMonomial::new(m.exponents().iter().map(|&r| 2 * r).collect())
    };
    let mut images: Vec<SparseVec> = Vec::with_capacity(small.dim());
    let mut degrees_double = true;
    for m in small.basis() {
        let d = doubled(m);
        let Some(a) = big.index_of(&d) else {
            degrees_double = false;
            images.push(Vec::new());
            continue;
        };
        let img = q.project(&[a as u32])?;
        if q.grading().homogeneous_degree(&img) != Some(2 * m.degree() as i32) {
            degrees_double = false;
        }
        images.push(img);
    }
    let dimensions_match = small.dim() == q.dim();
    let mut span = Subspace::new(q.dim());
    for v in &images {
        span.insert(BitVec::from_indices(q.dim(), v.iter().map(|&i| i as usize)));
    }
    let bijective = dimensions_match && span.dim() == q.dim();
    let eta = |v: &[u32]| sparse_sum(v.iter().flat_map(|&i| images[i as usize].iter().copied()));
    let multiplicative = (0..small.dim()).into_par_iter().all(|i| {
        (0..small.dim()).all(|j| q.mul_vec(&images[i], &images[j]) == eta(small.mul(i, j)))
    });
    let quotient_even = q.grading().degrees().iter().all(|d| d % 2 == 0);
    Ok(DoublingReport {
        n,
        path: "direct",
        dimensions_match,
        degrees_double,
        bijective,
        multiplicative,
        quotient_even,
    })
}

/// `B_i ∩ A(n)`, `1 ≤ i ≤ ⌊n/2⌋ + 1`, built and checked elementary.
pub fn maximal_elementary(n: u32) -> Result<Vec<Arc<HopfAlgebra>>> {
    let out = profile::maximal_elementary_profiles(n)
        .iter()
        .map(crate::registry::algebra)
        .collect::<Result<Vec<_>>>()?;
    for b in &out {
        if !b.is_elementary() {
            return Err(Error::Structure(format!("{} is not elementary", b.name())));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{algebra, quotient};

    #[test]
    fn sizes_of_small_algebras() {
        let a1 = algebra(&profile::a(1)).unwrap();
        assert_eq!((a1.dim(), a1.top_degree()), (8, 6));
        let a2 = algebra(&profile::a(2)).unwrap();
        assert_eq!((a2.dim(), a2.top_degree()), (64, 23));
        assert_eq!(a2.top_class().to_string(), "Sq(7,3,1)");
        let e1 = algebra(&profile::e(1)).unwrap();
        assert_eq!((e1.dim(), e1.top_degree()), (4, 4));
        assert_eq!(a1.generators().len(), 3);
    }

    #[test]
    fn normality_examples() {
        let a2 = algebra(&profile::a(2)).unwrap();
        let e2 = algebra(&profile::e(2)).unwrap();
        assert!(a2.is_normal_sub(&e2).unwrap());
        let a1 = algebra(&profile::a(1)).unwrap();
        assert!(!a2.is_normal_sub(&a1).unwrap());
        assert!(matches!(quotient(&a2, &a1), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn ideal_span_examples() {
        let a1 = algebra(&profile::a(1)).unwrap();
        let e1 = algebra(&profile::e(1)).unwrap();
        assert_eq!(a1.left_ideal(&e1).unwrap().dim(), 6);
        assert_eq!(a1.left_ideal(&a1).unwrap().dim(), 7);
        let k = algebra(&Profile::zero()).unwrap();
        assert_eq!(a1.left_ideal(&k).unwrap().dim(), 0);
    }

    #[test]
    fn quotient_examples() {
        let a1 = algebra(&profile::a(1)).unwrap();
        let e1 = algebra(&profile::e(1)).unwrap();
        let q = quotient(&a1, &e1).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.grading().degrees(), &[0, 2]);
        assert_eq!(q.top_degree(), a1.top_degree() - e1.top_degree());
    }

    #[test]
    fn antipode_identity_on_a2() {
        let a2 = algebra(&profile::a(2)).unwrap();
        for x in 0..a2.dim() {
            let mut acc = Vec::new();
            for &(a, b) in a2.coproduct(x) {
                acc.extend(a2.mul_vec(a2.antipode(a as usize), &[b]));
            }
            let expected: SparseVec = if x == 0 { vec![0] } else { vec![] };
            assert_eq!(sparse_sum(acc), expected, "x = {}", a2.monomial(x));
        }
    }

    #[test]
    fn antipode_matches_milnor_level() {
        let a2 = algebra(&profile::a(2)).unwrap();
        for x in 0..a2.dim() {
            let e = crate::milnor::antipode(&a2.monomial(x).clone().into());
            assert_eq!(a2.element(&e).unwrap(), a2.antipode(x).to_vec());
        }
    }

    #[test]
    fn poincare_a2() {
        assert!(algebra(&profile::a(2)).unwrap().poincare_nonsingular());
    }

    #[test]
    fn maximal_elementary_examples() {
        assert_eq!(maximal_elementary(1).unwrap().len(), 1);
        assert_eq!(maximal_elementary(2).unwrap().len(), 2);
        assert!(!algebra(&profile::a(1)).unwrap().is_elementary());
    }

    #[test]
    fn doubling_small() {
        assert!(doubling_check(1).unwrap().passed());
        assert!(doubling_check(2).unwrap().passed());
    }

    #[test]
    fn ordered_product_leading_term() {
        for p in [profile::a(1), profile::a(2), profile::j(3).unwrap()] {
            let prod = ordered_generator_product(&p);
            let top = p.top_class().unwrap();
            assert!(prod.contains(&top));
            assert!(prod.iter().all(|m| *m == top || m.excess() < top.excess()));
        }
    }

    #[test]
    fn monomial_crosscheck_for_exterior_quotient() {
        let a2 = algebra(&profile::a(2)).unwrap();
        let e2 = algebra(&profile::e(2)).unwrap();
        assert_eq!(monomial_ideal_crosscheck(&a2, &e2).unwrap(), Some(true));
    }
}
