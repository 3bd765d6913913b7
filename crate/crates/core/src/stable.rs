//! Stable-category computations: freeness through the top class, stripping
//! free summands, Ω, endotriviality, Picard elements and stable isomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::HopfAlgebra;
use crate::error::{Error, Result};
use crate::gf2::{nullspace, rank, BitVec, SparseVec};
use crate::grading::GradedSubspace;
use crate::module::GradedModule;

pub const DEFAULT_MAX_DIM: usize = 20_000;
/// Exhaustive invertibility search up to this many solution dimensions.
pub const EXHAUSTIVE_SEARCH_DIM: usize = 20;
pub const RANDOM_SEARCH_TRIALS: usize = 1 << 16;
pub const SEARCH_SEED: u64 = 0x5eed_0003;

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest tensor product that may be formed.
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

/// `H⁺M`, spanned by the generator actions.
pub fn radical(m: &GradedModule) -> GradedSubspace {
    let mut out = GradedSubspace::new(m.grading());
    for g in m.generator_actions() {
        for j in 0..m.dim() {
            out.insert(g.column(j));
        }
    }
    out
}

/// Basis vectors spanning a complement of `H⁺M`: lifts of a basis of
/// `k ⊗_H M`.
pub fn minimal_generators(m: &GradedModule) -> Vec<usize> {
    radical(m).complement()
}

/// How generator lifts are chosen in [`is_free_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// The non-pivot basis vectors themselves.
    Plain,
    /// Each lift perturbed by a seeded random element of `H⁺M` in its degree.
    Perturbed(u64),
}

/// Free iff the top class is injective on lifted generators.
pub fn is_free(m: &GradedModule) -> bool {
    is_free_with(m, Lift::Plain)
}

pub fn is_free_with(m: &GradedModule, lift: Lift) -> bool {
    let rad = radical(m);
    let gens = rad.complement();
    let top = m.action(m.algebra().top());
    let mut image = GradedSubspace::new(m.grading());
    let rad_basis = rad.basis();
    let mut rng = match lift {
        Lift::Plain => None,
        Lift::Perturbed(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    for j in gens {
        let mut v: SparseVec = vec![j as u32];
        if let Some(rng) = rng.as_mut() {
            let d = m.degree(j);
            for r in rad_basis.iter().filter(|r| m.degree(r[0] as usize) == d) {
                if rng.gen::<bool>() {
                    v = crate::gf2::sparse_add(&v, r);
                }
            }
        }
        if !image.insert(&top.apply(&v)) {
            return false;
        }
    }
    true
}

/// Result of stripping free summands.
#[derive(Clone, Debug)]
pub struct Split {
    /// Degrees of the generators of the free part.
    pub shifts: Vec<i32>,
    pub reduced: GradedModule,
}

/// `M ≅ ⊕ σ(s)H ⊕ reduced` with `reduced` free of free summands.
///
/// Generators of the free part are taken least degree first among basis
/// vectors whose top-class images are independent; the free submodule they
/// span is injective, so the quotient by it is a complement.
pub fn split_free(m: &GradedModule) -> Result<Split> {
    let h = m.algebra();
    let top = m.action(h.top());
    let mut image = GradedSubspace::new(m.grading());
    let mut chosen = Vec::new();
    for j in 0..m.dim() {
        let col = top.column(j);
        if !col.is_empty() && image.insert(col) {
            chosen.push(j);
        }
    }
    let mut free = GradedSubspace::new(m.grading());
    for &j in &chosen {
        for a in 0..h.dim() {
            free.insert(m.action(a).column(j));
        }
    }
    if free.dim() != chosen.len() * h.dim() {
        return Err(Error::Retraction(format!(
            "{} generators span dimension {} instead of {}",
            chosen.len(),
            free.dim(),
            chosen.len() * h.dim()
        )));
    }
    let shifts = chosen.iter().map(|&j| m.degree(j)).collect();
    Ok(Split {
        shifts,
        reduced: m.quotient(&free),
    })
}

pub fn minimal_representative(m: &GradedModule) -> Result<GradedModule> {
    Ok(split_free(m)?.reduced)
}

/// `ΩM`: the augmentation ideal tensored with `M`, minimized.
pub fn omega(m: &GradedModule, limits: &Limits) -> Result<GradedModule> {
    let ideal = GradedModule::augmentation_ideal(m.algebra());
    minimal_representative(&ideal.tensor(m, limits.max_dim)?)
}

/// `Ω⁻¹M = (Ω(M*))*`, minimized.
pub fn omega_inverse(m: &GradedModule, limits: &Limits) -> Result<GradedModule> {
    minimal_representative(&omega(&m.dual(), limits)?.dual())
}

/// `Ω^l M` for any integer `l`.
pub fn omega_power(m: &GradedModule, l: i32, limits: &Limits) -> Result<GradedModule> {
    let mut out = minimal_representative(m)?;
    for _ in 0..l.unsigned_abs() {
        out = if l > 0 {
            omega(&out, limits)?
        } else {
            omega_inverse(&out, limits)?
        };
    }
    Ok(out)
}

/// Whether `M ⊗ M*` is `k` plus a free module.
pub fn is_endotrivial(m: &GradedModule, limits: &Limits) -> Result<bool> {
    let end = minimal_representative(&m.tensor(&m.dual(), limits.max_dim)?)?;
    Ok(end.graded_dims() == vec![(0, 1)])
}

pub fn detect_freeness_via(m: &GradedModule, subs: &[Arc<HopfAlgebra>]) -> Result<bool> {
    for s in subs {
        if !is_free(&m.restrict(s)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graded dimensions and, for each algebra generator, the rank of its action
/// out of each degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub dims: Vec<(i32, usize)>,
    pub ranks: Vec<Vec<(i32, usize)>>,
}

impl Signature {
    pub fn of(m: &GradedModule) -> Self {
        let ranks = m
            .generator_actions()
            .iter()
            .map(|g| {
                m.grading()
                    .blocks()
                    .iter()
                    .map(|b| {
                        let mut s = GradedSubspace::new(m.grading());
                        for j in b.range.clone() {
                            s.insert(g.column(j));
                        }
                        (b.degree, s.dim())
                    })
                    .collect()
            })
            .collect();
        Signature {
            dims: m.graded_dims(),
            ranks,
        }
    }
}

/// A stable class, held by its minimal representative.
#[derive(Clone, Debug)]
pub struct StableClass {
    pub module: GradedModule,
    pub signature: Signature,
    /// `(m, l)` when the class was built as `σ(m)Ω^l(k)`.
    pub provenance: Option<(i32, i32)>,
}

#[derive(Serialize, Deserialize)]
struct StableClassFile {
    algebra: String,
    module: serde_json::Value,
    signature: Signature,
    provenance: Option<(i32, i32)>,
}

impl StableClass {
    pub fn of(m: &GradedModule) -> Result<Self> {
        let module = minimal_representative(m)?;
        Ok(StableClass {
            signature: Signature::of(&module),
            module,
            provenance: None,
        })
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        self.module.algebra()
    }

    pub fn to_json(&self) -> String {
        let file = StableClassFile {
            algebra: self.algebra().name().to_string(),
            module: serde_json::from_str(&self.module.to_file_string()).expect("module file"),
            signature: self.signature.clone(),
            provenance: self.provenance,
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StableClassFile = serde_json::from_str(text)?;
        let module = GradedModule::from_file_str(&file.module.to_string())?;
        if module.algebra().name() != file.algebra {
            return Err(Error::AlgebraMismatch(
                module.algebra().name().into(),
                file.algebra,
            ));
        }
        let signature = Signature::of(&module);
        if signature != file.signature {
            return Err(Error::InvalidModule("signature does not match the module".into()));
        }
        Ok(StableClass {
            module,
            signature,
            provenance: file.provenance,
        })
    }
}

/// `[σ(m)Ω^l(k)]`.
pub fn picard_element(h: &Arc<HopfAlgebra>, m: i32, l: i32, limits: &Limits) -> Result<StableClass> {
    let module = omega_power(&GradedModule::trivial(h), l, limits)?.shift(m);
    Ok(StableClass {
        signature: Signature::of(&module),
        module,
        provenance: Some((m, l)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Degree-preserving equivariant maps `A → B` as a basis of the solution
/// space, with the per-degree variable layout.
struct HomSpace {
    /// `(degree, rows in B, cols in A, first variable)`.
    blocks: Vec<(i32, std::ops::Range<usize>, std::ops::Range<usize>, usize)>,
    solutions: Vec<BitVec>,
}

fn equivariant_maps(a: &GradedModule, b: &GradedModule) -> HomSpace {
    let mut blocks = Vec::new();
    let mut nvars = 0;
    let mut var_block: HashMap<i32, usize> = HashMap::new();
    for blk in a.grading().blocks() {
        let rows = b.grading().range(blk.degree);
        if rows.is_empty() {
            continue;
        }
        var_block.insert(blk.degree, blocks.len());
        let size = rows.len() * blk.range.len();
        blocks.push((blk.degree, rows, blk.range.clone(), nvars));
        nvars += size;
    }
    // Variable for f[r][c] with r in B, c in A of the same degree.
    let var = |r: usize, c: usize| -> Option<usize> {
        let k = *var_block.get(&a.degree(c))?;
        let (_, rows, cols, start) = &blocks[k];
        Some(start + (r - rows.start) * cols.len() + (c - cols.start))
    };
    let ga = a.generator_actions();
    let gb = b.generator_actions();
    let mut equations: Vec<BitVec> = Vec::new();
    for (x, y) in ga.iter().zip(&gb) {
        // f(x·e_c) = y·f(e_c), coordinate r2 of B.
        for c in 0..a.dim() {
            let mut eq: HashMap<usize, BitVec> = HashMap::new();
            for &c2 in x.column(c) {
                for r2 in b.grading().range(a.degree(c2 as usize)) {
                    let v = var(r2, c2 as usize).expect("degree present");
                    eq.entry(r2).or_insert_with(|| BitVec::zeros(nvars)).flip(v);
                }
            }
            for r in b.grading().range(a.degree(c)) {
                let v = var(r, c).expect("degree present");
                for &r2 in y.column(r) {
                    eq.entry(r2 as usize)
                        .or_insert_with(|| BitVec::zeros(nvars))
                        .flip(v);
                }
            }
            equations.extend(eq.into_values().filter(|e| !e.is_zero()));
        }
    }
    HomSpace {
        solutions: nullspace(&equations, nvars),
        blocks,
    }
}

fn is_invertible(space: &HomSpace, f: &BitVec) -> bool {
    space.blocks.iter().all(|(_, rows, cols, start)| {
        if rows.len() != cols.len() {
            return false;
        }
        let n = cols.len();
        let matrix: Vec<BitVec> = (0..n)
            .map(|r| BitVec::from_indices(n, (0..n).filter(|&c| f.get(start + r * n + c))))
            .collect();
        rank(&matrix) == n
    })
}

/// Whether two modules are stably isomorphic: equal signatures of the
/// minimal representatives and an invertible equivariant map between them.
pub fn stably_iso(m: &GradedModule, n: &GradedModule) -> Result<Verdict> {
    let a = minimal_representative(m)?;
    let b = minimal_representative(n)?;
    Ok(isomorphic(&a, &b))
}

/// Isomorphism test for modules taken as they are.
pub fn isomorphic(a: &GradedModule, b: &GradedModule) -> Verdict {
    if a.algebra().key() != b.algebra().key() || Signature::of(a) != Signature::of(b) {
        return Verdict::No;
    }
    if a.is_zero() {
        return Verdict::Yes;
    }
    let space = equivariant_maps(a, b);
    let k = space.solutions.len();
    if k == 0 {
        return Verdict::No;
    }
    let nvars = space.solutions[0].len();
    if k <= EXHAUSTIVE_SEARCH_DIM {
        let mut f = BitVec::zeros(nvars);
        for step in 1u64..(1u64 << k) {
            f.xor_assign(&space.solutions[step.trailing_zeros() as usize]);
            if is_invertible(&space, &f) {
                return Verdict::Yes;
            }
        }
        Verdict::No
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
        for _ in 0..RANDOM_SEARCH_TRIALS {
            let mut f = BitVec::zeros(nvars);
            for s in &space.solutions {
                if rng.gen::<bool>() {
                    f.xor_assign(s);
                }
            }
            if is_invertible(&space, &f) {
                return Verdict::Yes;
            }
        }
        Verdict::Unknown
    }
}

/// One named check in a [`ReductionReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Hypotheses of the degree-comparison freeness criterion for a pair of
/// subalgebras `E₁, E₂ ⊆ H` and elements `t₁ ∈ E₁`, `t₂ ∈ E₂`, `z`.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub t1_degree: Option<i32>,
    pub t2_degree: Option<i32>,
    pub top_degree: i32,
    pub checks: Vec<Check>,
    /// Reported, not required: whether `z` also lies in `E₁`.
    pub z_in_e1: Option<bool>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn push(checks: &mut Vec<Check>, name: &str, passed: bool, detail: String) {
    checks.push(Check {
        name: name.into(),
        passed,
        detail,
    });
}

/// Checks: `t₁ ≠ 0`, `t₂ ≠ 0`, `t₁t₂ ≠ 0`, `|t₁| + |t₂| = |H|`, and that
/// every nonzero homogeneous `y ∈ E₂⁺` with `|y| ≤ |t₁|` equals `z`, where
/// `z² = 0` and `0 ≠ zt₁ ∈ E₁⁺`.
pub fn check_reduction_hypotheses(
    h: &HopfAlgebra,
    e1: &GradedSubspace,
    e2: &GradedSubspace,
    t1: &[u32],
    t2: &[u32],
    z: Option<&[u32]>,
) -> Result<ReductionReport> {
    if !e1.contains(t1) {
        return Err(Error::Membership("t₁ does not lie in E₁".into()));
    }
    if !e2.contains(t2) {
        return Err(Error::Membership("t₂ does not lie in E₂".into()));
    }
    if let Some(z) = z {
        if !e2.contains(z) {
            return Err(Error::Membership("z does not lie in E₂".into()));
        }
    }
    let g = h.grading();
    let d1 = g.homogeneous_degree(t1);
    let d2 = g.homogeneous_degree(t2);
    let mut checks = Vec::new();
    push(
        &mut checks,
        "t1 nonzero",
        !t1.is_empty(),
        if t1.is_empty() { "t₁ zero".into() } else { format!("|t₁| = {}", d1.map_or("inhomogeneous".into(), |d| d.to_string())) },
    );
    push(
        &mut checks,
        "t2 nonzero",
        !t2.is_empty(),
        if t2.is_empty() { "t₂ zero".into() } else { format!("|t₂| = {}", d2.map_or("inhomogeneous".into(), |d| d.to_string())) },
    );
    let t1t2 = h.mul_vec(t1, t2);
    push(
        &mut checks,
        "t1 t2 nonzero",
        !t1t2.is_empty(),
        if t1t2.is_empty() { "t₁t₂ = 0".into() } else { h.to_element(&t1t2).to_string() },
    );
    let top = h.top_degree();
    let sum = d1.zip(d2).map(|(a, b)| a + b);
    push(
        &mut checks,
        "degree identity",
        sum == Some(top),
        format!(
            "|t₁| + |t₂| = {}, |H| = {top}",
            sum.map_or("undefined".into(), |s| s.to_string())
        ),
    );
    let mut z_in_e1 = None;
    if let Some(d1) = d1 {
        let low: Vec<(i32, usize)> = (1..=d1)
            .map(|d| (d, e2.dim_in(d)))
            .filter(|&(_, k)| k > 0)
            .collect();
        let zd = z.and_then(|z| g.homogeneous_degree(z));
        let only_z = low.iter().all(|&(d, k)| k == 1 && Some(d) == zd);
        push(
            &mut checks,
            "low degrees of E2",
            only_z,
            if low.is_empty() {
                format!("E₂⁺ vanishes in degrees ≤ {d1}")
            } else {
                format!("E₂⁺ in degrees ≤ {d1}: {low:?}")
            },
        );
        if !low.is_empty() {
            if let Some(z) = z {
                let zz = h.mul_vec(z, z);
                push(&mut checks, "z squared zero", zz.is_empty(), h.to_element(&zz).to_string());
                let zt1 = h.mul_vec(z, t1);
                let ok = !zt1.is_empty() && e1.contains(&zt1);
                push(
                    &mut checks,
                    "z t1 nonzero in E1",
                    ok,
                    h.to_element(&zt1).to_string(),
                );
                z_in_e1 = Some(e1.contains(z));
            }
        }
    }
    Ok(ReductionReport {
        t1_degree: d1,
        t2_degree: d2,
        top_degree: top,
        checks,
        z_in_e1,
    })
}

/// The `(H//Z)`-module `M^Z` and the reconstruction test: `M` is free over
/// `H` when it is free over `Z` and `M₁^Z = M^Z` is free over `H//Z`.
pub fn free_by_reduction(m: &GradedModule, z: &Arc<HopfAlgebra>) -> Result<bool> {
    let restricted = m.restrict(z)?;
    if !is_free(&restricted) {
        return Ok(false);
    }
    let inv = m.invariant_subspace(z)?;
    let top = m.top_image(z)?;
    if !inv.same_as(&top) {
        return Ok(false);
    }
    Ok(is_free(&m.invariants(z)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::MilnorElement;
    use crate::profile;
    use crate::registry::algebra;

    fn alg(p: &crate::Profile) -> Arc<HopfAlgebra> {
        algebra(p).unwrap()
    }

    fn joker() -> GradedModule {
        let h = alg(&profile::a(1));
        GradedModule::cyclic(&h, &["Sq(3)".parse::<MilnorElement>().unwrap()]).unwrap()
    }

    #[test]
    fn radical_codimensions() {
        let h = alg(&profile::a(1));
        let f = GradedModule::free(&h, &[0]);
        assert_eq!(f.dim() - radical(&f).dim(), 1);
        assert_eq!(radical(&GradedModule::trivial(&h)).dim(), 0);
        let j = joker();
        assert_eq!(j.dim() - radical(&j).dim(), 1);
    }

    #[test]
    fn freeness_examples() {
        let a2 = alg(&profile::a(2));
        let f = GradedModule::free(&a2, &[0, 3]);
        assert!(is_free(&f));
        assert!(is_free_with(&f, Lift::Perturbed(7)));
        assert!(!is_free(&joker()));
        assert!(!is_free_with(&joker(), Lift::Perturbed(7)));
        let e2 = alg(&profile::e(2));
        assert!(is_free(&GradedModule::free(&a2, &[0]).restrict(&e2).unwrap()));
    }

    #[test]
    fn split_examples() {
        let h = alg(&profile::a(1));
        let s = split_free(&GradedModule::free(&h, &[0, 2])).unwrap();
        assert_eq!(s.shifts, vec![0, 2]);
        assert!(s.reduced.is_zero());
        let k = GradedModule::trivial(&h);
        let m = k.direct_sum(&GradedModule::free(&h, &[1])).unwrap();
        let s = split_free(&m).unwrap();
        assert_eq!(s.shifts, vec![1]);
        assert_eq!(s.reduced.graded_dims(), vec![(0, 1)]);
        let i = GradedModule::augmentation_ideal(&h);
        let s = split_free(&i).unwrap();
        assert!(s.shifts.is_empty());
        assert_eq!(s.reduced.dim(), 7);
    }

    #[test]
    fn omega_examples() {
        let lim = Limits::default();
        let a0 = alg(&profile::a(0));
        let w = omega(&GradedModule::trivial(&a0), &lim).unwrap();
        assert_eq!(w.graded_dims(), vec![(1, 1)]);
        let a1 = alg(&profile::a(1));
        let k = GradedModule::trivial(&a1);
        let w = omega(&k, &lim).unwrap();
        assert_eq!(w.dim(), 7);
        let back = omega_inverse(&w, &lim).unwrap();
        assert_eq!(back.graded_dims(), vec![(0, 1)]);
        let i = GradedModule::augmentation_ideal(&a1);
        let direct = minimal_representative(&i.tensor(&i, lim.max_dim).unwrap()).unwrap();
        let twice = omega(&w, &lim).unwrap();
        assert_eq!(direct.graded_dims(), twice.graded_dims());
        assert_eq!(isomorphic(&direct, &twice), Verdict::Yes);
    }

    #[test]
    fn endotrivial_examples() {
        let lim = Limits::default();
        let h = alg(&profile::a(1));
        assert!(is_endotrivial(&GradedModule::trivial(&h), &lim).unwrap());
        assert!(is_endotrivial(&joker(), &lim).unwrap());
        assert!(!is_endotrivial(&GradedModule::free(&h, &[0]), &lim).unwrap());
        assert_eq!(joker().tensor(&joker().dual(), 100).unwrap().dim(), 25);
    }

    #[test]
    fn picard_examples() {
        let lim = Limits::default();
        let a1 = alg(&profile::a(1));
        assert_eq!(picard_element(&a1, 0, 0, &lim).unwrap().module.graded_dims(), vec![(0, 1)]);
        assert_eq!(picard_element(&a1, 1, 0, &lim).unwrap().module.graded_dims(), vec![(1, 1)]);
        let a2 = alg(&profile::a(2));
        let w = picard_element(&a2, 0, 1, &lim).unwrap();
        assert_eq!(w.module.dim(), 63);
        let s = picard_element(&a2, 1, 0, &lim).unwrap();
        assert_ne!(w.signature, s.signature);
        assert_eq!(stably_iso(&w.module, &s.module).unwrap(), Verdict::No);
        let back = StableClass::from_json(&w.to_json()).unwrap();
        assert_eq!(back.signature, w.signature);
        assert_eq!(back.provenance, Some((0, 1)));
    }

    #[test]
    fn stable_iso_examples() {
        let h = alg(&profile::a(1));
        let j = joker();
        let padded = j.direct_sum(&GradedModule::free(&h, &[3])).unwrap();
        assert_eq!(stably_iso(&j, &padded).unwrap(), Verdict::Yes);
        let k = GradedModule::trivial(&h);
        assert_eq!(stably_iso(&k, &k.shift(1)).unwrap(), Verdict::No);
    }

    #[test]
    fn detection_examples() {
        let a1 = alg(&profile::a(1));
        let e1 = alg(&profile::e(1));
        assert!(!detect_freeness_via(&joker(), &[e1]).unwrap());
        let f = GradedModule::free(&a1, &[0]);
        assert!(detect_freeness_via(&f, &[alg(&profile::e(1))]).unwrap());
        let a2 = alg(&profile::a(2));
        let w = omega(&GradedModule::trivial(&a2), &Limits::default()).unwrap();
        let elem = crate::algebra::maximal_elementary(2).unwrap();
        assert!(!detect_freeness_via(&w, &elem).unwrap());
        assert!(!is_free(&w));
    }

    #[test]
    fn reduction_report_flags_zero_t1() {
        let h = alg(&profile::a(1));
        let all = h.image_of(&h).unwrap();
        let top = vec![h.top() as u32];
        let r = check_reduction_hypotheses(&h, &all, &all, &[], &top, None).unwrap();
        assert!(!r.passed());
        assert_eq!(r.check("t1 nonzero").unwrap().detail, "t₁ zero");
        let e1 = alg(&profile::e(1));
        let sub = h.image_of(&e1).unwrap();
        assert!(check_reduction_hypotheses(&h, &sub, &all, &top, &top, None).is_err());
    }

    #[test]
    fn reconstruction_through_invariants() {
        let a2 = alg(&profile::a(2));
        let e2 = alg(&profile::e(2));
        let k = GradedModule::trivial(&a2);
        let m = k.direct_sum(&GradedModule::free(&a2, &[2])).unwrap();
        assert_eq!(free_by_reduction(&m, &e2).unwrap(), is_free(&m));
        let f = GradedModule::free(&a2, &[0, 1]);
        assert!(free_by_reduction(&f, &e2).unwrap());
    }
}
