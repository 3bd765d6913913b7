//! Finite graded modules over a [`HopfAlgebra`], stored as one action matrix
//! per algebra basis element.

mod file;
mod map;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::HopfAlgebra;
use crate::error::{Error, Result};
use crate::gf2::{nullspace, sparse_sum, BitVec, SparseMatrix, SparseVec};
use crate::grading::{GradedSubspace, Grading};
use crate::milnor::MilnorElement;

pub use file::ModuleFile;
pub use map::ModuleMap;

/// Seed for the randomized associativity checks on large modules.
pub const VALIDATION_SEED: u64 = 0x5eed_0002;
/// Full associativity check while `dim(H)² · dim(M)` stays under this.
pub const FULL_CHECK_LIMIT: usize = 1 << 24;
pub const RANDOM_CHECKS: usize = 100_000;

#[derive(Clone)]
pub struct GradedModule {
    algebra: Arc<HopfAlgebra>,
    names: Vec<String>,
    grading: Grading,
    actions: Vec<SparseMatrix>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedModule over {} with dims {:?}",
            self.algebra.name(),
            self.grading.graded_dims()
        )
    }
}

/// How much of the associativity law was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Full,
    Sampled { seed: u64, triples: usize },
}

impl GradedModule {
    /// Assembles a module without checking the module axioms; see
    /// [`GradedModule::validate`].
    pub fn new(
        algebra: Arc<HopfAlgebra>,
        names: Vec<String>,
        degrees: Vec<i32>,
        actions: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let n = degrees.len();
        if names.len() != n {
            return Err(Error::InvalidModule("names and degrees differ in length".into()));
        }
        if actions.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        if actions.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::InvalidModule("action matrix of the wrong shape".into()));
        }
        Ok(GradedModule {
            algebra,
            names,
            grading: Grading::new(degrees)?,
            actions,
        })
    }

    pub fn zero(algebra: &Arc<HopfAlgebra>) -> Self {
        Self::trivial_on(algebra, Vec::new(), Vec::new())
    }

    /// `k` in degree 0.
    pub fn trivial(algebra: &Arc<HopfAlgebra>) -> Self {
        Self::trivial_on(algebra, vec!["x".into()], vec![0])
    }

    /// Positive-degree elements act by zero.
    pub fn trivial_on(algebra: &Arc<HopfAlgebra>, names: Vec<String>, degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        let mut actions = vec![SparseMatrix::zero(n, n); algebra.dim()];
        actions[0] = SparseMatrix::identity(n);
        Self::new(algebra.clone(), names, degrees, actions).expect("sorted degrees")
    }

    /// `⊕ σ(α) H` with left multiplication.
    pub fn free(algebra: &Arc<HopfAlgebra>, shifts: &[i32]) -> Self {
        let h = algebra;
        let mut cells: Vec<(i32, usize, usize)> = Vec::new();
        for (g, &s) in shifts.iter().enumerate() {
            for b in 0..h.dim() {
                cells.push((s + h.degree(b), g, b));
            }
        }
        cells.sort();
        let pos: HashMap<(usize, usize), u32> = cells
            .iter()
            .enumerate()
            .map(|(k, &(_, g, b))| ((g, b), k as u32))
            .collect();
        let names = cells
            .iter()
            .map(|&(_, g, b)| {
                let m = h.monomial(b);
                if m.is_unit() {
                    format!("g{g}")
                } else {
                    format!("{m}·g{g}")
                }
            })
            .collect();
        let degrees = cells.iter().map(|c| c.0).collect();
        let actions = (0..h.dim())
            .into_par_iter()
            .map(|a| {
                let row = h.row(a);
                let cols: Vec<SparseVec> = cells
                    .iter()
                    .map(|&(_, g, b)| sparse_sum(row[b].iter().map(|&c| pos[&(g, c as usize)])))
                    .collect();
                SparseMatrix::from_columns(cells.len(), &cols)
            })
            .collect();
        Self::new(h.clone(), names, degrees, actions).expect("sorted degrees")
    }

    /// `H` acting on itself.
    pub fn regular(algebra: &Arc<HopfAlgebra>) -> Self {
        let mut m = Self::free(algebra, &[0]);
        m.names = algebra.basis().iter().map(|b| b.to_string()).collect();
        m
    }

    /// `ker ε = H⁺` with left multiplication.
    pub fn augmentation_ideal(algebra: &Arc<HopfAlgebra>) -> Self {
        let h = algebra;
        let n = h.dim() - 1;
        let names = h.basis()[1..].iter().map(|b| b.to_string()).collect();
        let degrees = (1..h.dim()).map(|i| h.degree(i)).collect();
        let actions = (0..h.dim())
            .into_par_iter()
            .map(|a| {
                let row = h.row(a);
                let cols: Vec<SparseVec> = (1..h.dim())
                    .map(|b| row[b].iter().map(|&c| c - 1).collect())
                    .collect();
                SparseMatrix::from_columns(n, &cols)
            })
            .collect();
        Self::new(h.clone(), names, degrees, actions).expect("sorted degrees")
    }

    /// `H / H·{relators}` for homogeneous relators.
    pub fn cyclic(algebra: &Arc<HopfAlgebra>, relators: &[MilnorElement]) -> Result<Self> {
        let regular = Self::regular(algebra);
        let mut vectors = Vec::new();
        for r in relators {
            let v = algebra.element(r)?;
            if regular.grading.homogeneous_degree(&v).is_none() && !v.is_empty() {
                return Err(Error::InvalidModule(format!("relator {r} is not homogeneous")));
            }
            vectors.push(v);
        }
        let sub = regular.submodule_generated(&vectors);
        Ok(regular.quotient(&sub))
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.grading.degree(i)
    }

    pub fn graded_dims(&self) -> Vec<(i32, usize)> {
        self.grading.graded_dims()
    }

    /// Action of the `a`-th algebra basis element.
    pub fn action(&self, a: usize) -> &SparseMatrix {
        &self.actions[a]
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.actions
    }

    /// Action of an algebra element given in basis coordinates.
    pub fn action_of(&self, v: &[u32]) -> SparseMatrix {
        let n = self.dim();
        match v {
            [] => SparseMatrix::zero(n, n),
            [a] => self.actions[*a as usize].clone(),
            _ => {
                let cols: Vec<SparseVec> = (0..n)
                    .map(|j| {
                        sparse_sum(
                            v.iter()
                                .flat_map(|&a| self.actions[a as usize].column(j).iter().copied()),
                        )
                    })
                    .collect();
                SparseMatrix::from_columns(n, &cols)
            }
        }
    }

    /// Matrices of the algebra generators.
    pub fn generator_actions(&self) -> Vec<SparseMatrix> {
        self.algebra
            .generators()
            .iter()
            .map(|g| self.action_of(g))
            .collect()
    }

    /// `a · v` for an algebra basis index and a module vector.
    pub fn act(&self, a: usize, v: &[u32]) -> SparseVec {
        self.actions[a].apply(v)
    }

    pub fn act_element(&self, e: &[u32], v: &[u32]) -> SparseVec {
        sparse_sum(e.iter().flat_map(|&a| self.act(a as usize, v)))
    }

    /// Whether `a` maps some basis degree onto another.
    fn key_not_forced_zero(&self, a: usize) -> bool {
        let d = self.algebra.degree(a);
        self.grading
            .blocks()
            .iter()
            .any(|b| self.grading.block_index(b.degree + d).is_some())
    }

    /// Unit, degree and associativity checks. Returns how much of the
    /// associativity law was covered.
    pub fn validate(&self) -> Result<Coverage> {
        let h = &self.algebra;
        if !self.actions[0].is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for (a, m) in self.actions.iter().enumerate() {
            let d = h.degree(a);
            if let Some((r, c)) = m
                .entries()
                .find(|&(r, c)| self.degree(r as usize) != self.degree(c as usize) + d)
            {
                return Err(Error::InvalidModule(format!(
                    "{} maps {} (degree {}) to {} (degree {})",
                    h.monomial(a),
                    self.names[c as usize],
                    self.degree(c as usize),
                    self.names[r as usize],
                    self.degree(r as usize)
                )));
            }
        }
        let full = h.dim() * h.dim() * self.dim().max(1) <= FULL_CHECK_LIMIT;
        let bad = |a: usize, b: usize, m: usize| -> bool {
            let lhs = self.act(a, &self.act(b, &[m as u32]));
            let rhs = self.act_element(h.mul(a, b), &[m as u32]);
            lhs != rhs
        };
        let failure = if full {
            let max = self.grading.max_degree().unwrap_or(0);
            let min = self.grading.min_degree().unwrap_or(0);
            (0..h.dim()).into_par_iter().find_map_any(|a| {
                for b in 0..h.dim() {
                    if h.degree(a) + h.degree(b) > max - min {
                        break;
                    }
                    for m in 0..self.dim() {
                        if bad(a, b, m) {
                            return Some((a, b, m));
                        }
                    }
                }
                None
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
            let triples: Vec<(usize, usize, usize)> = (0..RANDOM_CHECKS)
                .map(|_| {
                    (
                        rng.gen_range(0..h.dim()),
                        rng.gen_range(0..h.dim()),
                        rng.gen_range(0..self.dim()),
                    )
                })
                .collect();
            triples.into_par_iter().find_any(|&(a, b, m)| bad(a, b, m))
        };
        if let Some((a, b, m)) = failure {
            return Err(Error::InvalidModule(format!(
                "{}·({}·{}) differs from ({}·{})·{}",
                h.monomial(a),
                h.monomial(b),
                self.names[m],
                h.monomial(a),
                h.monomial(b),
                self.names[m]
            )));
        }
        Ok(if full {
            Coverage::Full
        } else {
            Coverage::Sampled {
                seed: VALIDATION_SEED,
                triples: RANDOM_CHECKS,
            }
        })
    }

    /// `σ(i)M`.
    pub fn shift(&self, i: i32) -> Self {
        let mut out = self.clone();
        out.grading = Grading::new(self.grading.degrees().iter().map(|d| d + i).collect())
            .expect("shift keeps order");
        out
    }

    /// Rebuilds the module on a permuted basis: new position `k` holds old
    /// vector `order[k]`.
    fn permuted(&self, order: &[usize], names: Vec<String>, degrees: Vec<i32>) -> Self {
        let mut inverse = vec![0u32; order.len()];
        for (k, &old) in order.iter().enumerate() {
            inverse[old] = k as u32;
        }
        let actions = self
            .actions
            .par_iter()
            .map(|m| {
                let cols: Vec<SparseVec> = order
                    .iter()
                    .map(|&old| {
                        let mut c: Vec<u32> =
                            m.column(old).iter().map(|&r| inverse[r as usize]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                SparseMatrix::from_columns(order.len(), &cols)
            })
            .collect();
        GradedModule::new(self.algebra.clone(), names, degrees, actions).expect("sorted")
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<Self> {
        self.same_algebra(other)?;
        let n1 = self.dim();
        let n = n1 + other.dim();
        let mut order: Vec<usize> = (0..n).collect();
        let deg = |k: usize| {
            if k < n1 {
                self.degree(k)
            } else {
                other.degree(k - n1)
            }
        };
        order.sort_by_key(|&k| (deg(k), k));
        let stacked: Vec<SparseMatrix> = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut cols: Vec<SparseVec> = (0..n1).map(|j| a.column(j).to_vec()).collect();
                cols.extend(
                    (0..other.dim()).map(|j| b.column(j).iter().map(|&r| r + n1 as u32).collect()),
                );
                SparseMatrix::from_columns(n, &cols)
            })
            .collect();
        let mut names: Vec<String> = self.names.clone();
        names.extend(other.names.iter().cloned());
        let raw = GradedModule {
            algebra: self.algebra.clone(),
            names: names.clone(),
            grading: Grading::default(),
            actions: stacked,
        };
        let new_names = order.iter().map(|&k| names[k].clone()).collect();
        let degrees = order.iter().map(|&k| deg(k)).collect();
        Ok(raw.permuted(&order, new_names, degrees))
    }

    fn same_algebra(&self, other: &GradedModule) -> Result<()> {
        if self.algebra.key() != other.algebra.key() {
            return Err(Error::AlgebraMismatch(
                self.algebra.name().into(),
                other.algebra.name().into(),
            ));
        }
        Ok(())
    }

    /// `M ⊗ N` with the diagonal action through the coproduct. Basis sorted
    /// by degree, then by the factor indices.
    pub fn tensor(&self, other: &GradedModule, cap: usize) -> Result<Self> {
        self.same_algebra(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let total = n1 * n2;
        if total > cap {
            return Err(Error::ResourceLimit {
                what: "tensor product".into(),
                dim: total,
                cap,
            });
        }
        let mut cells: Vec<(i32, u32, u32)> = Vec::with_capacity(total);
        for i in 0..n1 {
            for j in 0..n2 {
                cells.push((self.degree(i) + other.degree(j), i as u32, j as u32));
            }
        }
        cells.sort_unstable();
        let mut pos = vec![0u32; total];
        for (k, &(_, i, j)) in cells.iter().enumerate() {
            pos[i as usize * n2 + j as usize] = k as u32;
        }
        let h = &self.algebra;
        let actions: Vec<SparseMatrix> = (0..h.dim())
            .into_par_iter()
            .map(|a| {
                let delta = h.coproduct(a);
                let cols: Vec<SparseVec> = cells
                    .iter()
                    .map(|&(_, i, j)| {
                        let mut acc = Vec::new();
                        for &(x, y) in delta {
                            let xi = self.actions[x as usize].column(i as usize);
                            if xi.is_empty() {
                                continue;
                            }
                            let yj = other.actions[y as usize].column(j as usize);
                            for &p in xi {
                                for &q in yj {
                                    acc.push(pos[p as usize * n2 + q as usize]);
                                }
                            }
                        }
                        sparse_sum(acc)
                    })
                    .collect();
                SparseMatrix::from_columns(total, &cols)
            })
            .collect();
        let names = cells
            .iter()
            .map(|&(_, i, j)| format!("{}⊗{}", self.names[i as usize], other.names[j as usize]))
            .collect();
        let degrees = cells.iter().map(|c| c.0).collect();
        GradedModule::new(h.clone(), names, degrees, actions)
    }

    /// `M* = Hom(M, k)` with `(h·f)(v) = f(S(h)v)`, in negated degrees.
    pub fn dual(&self) -> Self {
        let n = self.dim();
        let h = &self.algebra;
        let transposed: Vec<SparseMatrix> = (0..h.dim())
            .into_par_iter()
            .map(|a| self.action_of(h.antipode(a)).transpose())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (-self.degree(k), k));
        let raw = GradedModule {
            algebra: h.clone(),
            names: Vec::new(),
            grading: Grading::default(),
            actions: transposed,
        };
        let names = order.iter().map(|&k| format!("{}*", self.names[k])).collect();
        let degrees = order.iter().map(|&k| -self.degree(k)).collect();
        raw.permuted(&order, names, degrees)
    }

    /// The same space with only `sub` acting.
    pub fn restrict(&self, sub: &Arc<HopfAlgebra>) -> Result<Self> {
        let emb = self.algebra.embedding(sub)?;
        let actions = emb.iter().map(|&a| self.actions[a as usize].clone()).collect();
        GradedModule::new(
            sub.clone(),
            self.names.clone(),
            self.grading.degrees().to_vec(),
            actions,
        )
    }

    /// Smallest submodule containing `vectors` (each split into homogeneous
    /// parts).
    pub fn submodule_generated(&self, vectors: &[SparseVec]) -> GradedSubspace {
        let gens = self.generator_actions();
        let mut sub = GradedSubspace::new(&self.grading);
        let mut queue: Vec<SparseVec> = Vec::new();
        for v in vectors {
            for piece in split_homogeneous(&self.grading, v) {
                if let Some(r) = sub.insert_reduced(&piece) {
                    queue.push(r);
                }
            }
        }
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = g.apply(&v);
                if w.is_empty() {
                    continue;
                }
                if let Some(r) = sub.insert_reduced(&w) {
                    queue.push(r);
                }
            }
        }
        sub
    }

    /// Whether a graded subspace is closed under the action.
    pub fn is_submodule(&self, sub: &GradedSubspace) -> bool {
        let gens = self.generator_actions();
        sub.basis()
            .iter()
            .all(|v| gens.iter().all(|g| sub.contains(&g.apply(v))))
    }

    /// `M / S`, with basis the non-pivot vectors of `S`.
    pub fn quotient(&self, sub: &GradedSubspace) -> Self {
        let keep = sub.complement();
        let mut position = vec![u32::MAX; self.dim()];
        for (k, &i) in keep.iter().enumerate() {
            position[i] = k as u32;
        }
        let actions = self
            .actions
            .par_iter()
            .map(|m| {
                let cols: Vec<SparseVec> = keep
                    .iter()
                    .map(|&i| {
                        sub.reduce(m.column(i))
                            .into_iter()
                            .map(|r| position[r as usize])
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(keep.len(), &cols)
            })
            .collect();
        GradedModule::new(
            self.algebra.clone(),
            keep.iter().map(|&i| self.names[i].clone()).collect(),
            keep.iter().map(|&i| self.degree(i)).collect(),
            actions,
        )
        .expect("sorted")
    }

    /// The submodule `S` as a module in its own right, on the echelon basis
    /// of `S`, acted on by `algebra` through `lift` (an index map into this
    /// module's algebra basis; `None` for the same algebra).
    fn on_subspace(
        &self,
        sub: &GradedSubspace,
        algebra: &Arc<HopfAlgebra>,
        lift: &[SparseVec],
    ) -> Result<Self> {
        let basis = sub.basis();
        let pivot_of: HashMap<u32, u32> = basis
            .iter()
            .enumerate()
            .map(|(k, v)| (*v.last().expect("nonzero"), k as u32))
            .collect();
        let coords = |w: &[u32]| -> Result<SparseVec> {
            if !sub.contains(w) {
                return Err(Error::InvalidModule("subspace is not closed under the action".into()));
            }
            let mut out: Vec<u32> = w.iter().filter_map(|p| pivot_of.get(p).copied()).collect();
            out.sort_unstable();
            Ok(out)
        };
        let actions = lift
            .iter()
            .map(|a| {
                let cols = basis
                    .iter()
                    .map(|v| coords(&self.act_element(a, v)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseMatrix::from_columns(basis.len(), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&i| self.names[i as usize].as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        let degrees = basis
            .iter()
            .map(|v| self.degree(v[0] as usize))
            .collect();
        GradedModule::new(algebra.clone(), names, degrees, actions)
    }

    /// A submodule as a module.
    pub fn submodule(&self, sub: &GradedSubspace) -> Result<Self> {
        let lift: Vec<SparseVec> = (0..self.algebra.dim() as u32).map(|a| vec![a]).collect();
        self.on_subspace(sub, &self.algebra.clone(), &lift)
    }

    /// `{x : z·x = 0 for z ∈ Z⁺}` as a graded subspace.
    pub fn invariant_subspace(&self, z: &Arc<HopfAlgebra>) -> Result<GradedSubspace> {
        let emb = self.algebra.embedding(z)?;
        let gens: Vec<SparseMatrix> = z
            .generators()
            .iter()
            .map(|g| {
                let v: SparseVec =
                    sparse_sum(g.iter().map(|&i| emb[i as usize]));
                self.action_of(&v)
            })
            .collect();
        let mut out = GradedSubspace::new(&self.grading);
        for b in self.grading.blocks() {
            let start = b.range.start;
            let n = b.range.len();
            // One equation per (generator, target coordinate).
            let mut eqs: HashMap<(usize, u32), BitVec> = HashMap::new();
            for (gi, g) in gens.iter().enumerate() {
                for (local, j) in b.range.clone().enumerate() {
                    for &r in g.column(j) {
                        eqs.entry((gi, r))
                            .or_insert_with(|| BitVec::zeros(n))
                            .flip(local);
                    }
                }
            }
            let rows: Vec<BitVec> = eqs.into_values().collect();
            for x in nullspace(&rows, n) {
                let v: SparseVec = x.ones().map(|i| (i + start) as u32).collect();
                out.insert(&v);
            }
        }
        Ok(out)
    }

    /// `M^Z` as a module over `H//Z`.
    pub fn invariants(&self, z: &Arc<HopfAlgebra>) -> Result<Self> {
        let q = crate::registry::quotient(&self.algebra, z)?;
        let sub = self.invariant_subspace(z)?;
        let reps = q.representatives().expect("quotient").to_vec();
        // Independence of the representative: the ideal acts by zero.
        let ideal = q.ideal().expect("quotient");
        let basis = sub.basis();
        for v in ideal.basis() {
            for x in &basis {
                if !self.act_element(&v, x).is_empty() {
                    return Err(Error::Structure(
                        "H//Z action on invariants depends on the representative".into(),
                    ));
                }
            }
        }
        let lift: Vec<SparseVec> = reps.iter().map(|&a| vec![a]).collect();
        self.on_subspace(&sub, &q, &lift)
    }

    /// `M₁^Z = t^Z · M`.
    pub fn top_image(&self, z: &Arc<HopfAlgebra>) -> Result<GradedSubspace> {
        let emb = self.algebra.embedding(z)?;
        let t = &self.actions[emb[z.top()] as usize];
        let mut out = GradedSubspace::new(&self.grading);
        for j in 0..self.dim() {
            out.insert(t.column(j));
        }
        Ok(out)
    }

    /// Flips one entry of one action matrix.
    pub fn with_flipped_entry(&self, a: usize, row: usize, col: usize) -> Self {
        let mut out = self.clone();
        out.actions[a].flip(row, col);
        out
    }

    /// Renames the basis.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::InvalidModule("wrong number of names".into()));
        }
        self.names = names;
        Ok(self)
    }
}

/// Homogeneous components of a sparse vector.
pub fn split_homogeneous(grading: &Grading, v: &[u32]) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = Vec::new();
    let mut last = None;
    for &i in v {
        let d = grading.degree(i as usize);
        if last == Some(d) {
            out.last_mut().expect("started").push(i);
        } else {
            out.push(vec![i]);
            last = Some(d);
        }
    }
    out
}
