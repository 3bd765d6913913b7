//! Seeded random modules and a fixed list of test modules.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::HopfAlgebra;
use crate::error::Result;
use crate::gf2::SparseVec;
use crate::milnor::MilnorElement;
use crate::module::GradedModule;
use crate::stable::{omega_power, Limits};

/// `F / R` with `F` free on up to `max_generators` generators in degrees
/// `0..=max_shift` and `R` generated by up to `max_relators` random
/// homogeneous elements. Sometimes a free summand is added on top.
pub fn random_module(
    h: &Arc<HopfAlgebra>,
    rng: &mut ChaCha8Rng,
    max_generators: usize,
    max_relators: usize,
    max_shift: i32,
) -> GradedModule {
    let gens = rng.gen_range(1..=max_generators.max(1));
    let shifts: Vec<i32> = (0..gens).map(|_| rng.gen_range(0..=max_shift)).collect();
    let free = GradedModule::free(h, &shifts);
    let relators = rng.gen_range(0..=max_relators);
    let mut vectors: Vec<SparseVec> = Vec::new();
    let blocks = free.grading().blocks();
    for _ in 0..relators {
        let b = blocks.choose(rng).expect("nonempty");
        let mut v: SparseVec = b.range.clone().filter(|_| rng.gen::<bool>()).map(|i| i as u32).collect();
        if v.is_empty() {
            v.push(rng.gen_range(b.range.clone()) as u32);
        }
        vectors.push(v);
    }
    let sub = free.submodule_generated(&vectors);
    free.quotient(&sub)
}

/// `count` random modules of dimension at most `max_dim`, deterministic in
/// `seed`.
pub fn random_corpus(h: &Arc<HopfAlgebra>, count: usize, seed: u64, max_dim: usize) -> Vec<GradedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_generators = (max_dim / h.dim()).max(1);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = random_module(h, &mut rng, max_generators, 3, 4);
        if m.dim() <= max_dim && !m.is_zero() {
            out.push(m);
        }
    }
    out
}

/// Frees, `k`, `k ⊕ free`, `Ω^{±1}k`, `Ω^{±2}k`, the Joker over `A(1)`, and
/// `random` seeded quotients of small free modules.
pub fn curated_corpus(
    h: &Arc<HopfAlgebra>,
    random: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<(String, GradedModule)>> {
    let k = GradedModule::trivial(h);
    let mut out = vec![
        ("free{0}".to_string(), GradedModule::free(h, &[0])),
        ("free{0,3}".to_string(), GradedModule::free(h, &[0, 3])),
        ("k".to_string(), k.clone()),
        ("k+free{1}".to_string(), k.direct_sum(&GradedModule::free(h, &[1]))?),
    ];
    for l in [-2, -1, 1, 2] {
        out.push((format!("omega^{l}(k)"), omega_power(&k, l, limits)?));
    }
    if h.profile() == Some(&crate::profile::a(1)) {
        let sq3: MilnorElement = "Sq(3)".parse().expect("literal");
        out.push(("joker".to_string(), GradedModule::cyclic(h, &[sq3])?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..random {
        let m = random_module(h, &mut rng, 2, 3, 3);
        out.push((format!("random{r}"), m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile;
    use crate::registry::algebra;

    #[test]
    fn random_modules_are_valid_and_deterministic() {
        let h = algebra(&profile::e(2)).unwrap();
        let a = random_corpus(&h, 10, 3, 48);
        let b = random_corpus(&h, 10, 3, 48);
        for (x, y) in a.iter().zip(&b) {
            x.validate().unwrap();
            assert!(x.dim() <= 48);
            assert_eq!(x.to_file_string(), y.to_file_string());
        }
    }

    #[test]
    fn curated_corpus_over_a1() {
        let h = algebra(&profile::a(1)).unwrap();
        let c = curated_corpus(&h, 3, 1, &Limits::default()).unwrap();
        assert!(c.iter().any(|(n, _)| n == "joker"));
        for (name, m) in &c {
            m.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
