//! Batch verification jobs. Each job checks hypotheses and instances at
//! fixed parameters; none claims a statement for all `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;
use steenrod_core::algebra::{doubling_check, maximal_elementary, ordered_generator_product};
use steenrod_core::corpus::curated_corpus;
use steenrod_core::grading::GradedSubspace;
use steenrod_core::milnor::{commutation_identities, MilnorElement, MilnorMonomial};
use steenrod_core::module::GradedModule;
use steenrod_core::profile::{self, Profile};
use steenrod_core::stable::{
    check_reduction_hypotheses, detect_freeness_via, is_endotrivial, is_free, omega_power,
    picard_element, Limits, ReductionReport, Signature,
};
use steenrod_core::{algebra, quotient, Error, HopfAlgebra};

use crate::report::{Report, ReportBuilder};

pub const CACHE_DIR_ENV: &str = "STEENROD_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JobKind {
    CommutationIdentities,
    GeneratorProduct,
    Lagrange,
    Doubling,
    Poincare,
    ReduceToBPrime,
    ReduceBPrime,
    ReduceD,
    XDetection,
    ReduceDOne,
    PicardGenerators,
    DetectionCorpus,
}

impl JobKind {
    pub const ALL: [JobKind; 12] = [
        JobKind::CommutationIdentities,
        JobKind::GeneratorProduct,
        JobKind::Lagrange,
        JobKind::Doubling,
        JobKind::Poincare,
        JobKind::ReduceToBPrime,
        JobKind::ReduceBPrime,
        JobKind::ReduceD,
        JobKind::XDetection,
        JobKind::ReduceDOne,
        JobKind::PicardGenerators,
        JobKind::DetectionCorpus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JobKind::CommutationIdentities => "commutation-identities",
            JobKind::GeneratorProduct => "generator-product",
            JobKind::Lagrange => "lagrange",
            JobKind::Doubling => "doubling",
            JobKind::Poincare => "poincare",
            JobKind::ReduceToBPrime => "reduce-to-b-prime",
            JobKind::ReduceBPrime => "reduce-b-prime",
            JobKind::ReduceD => "reduce-d",
            JobKind::XDetection => "x-detection",
            JobKind::ReduceDOne => "reduce-d-one",
            JobKind::PicardGenerators => "picard-generators",
            JobKind::DetectionCorpus => "detection-corpus",
        }
    }

    fn default_n(self) -> u32 {
        match self {
            JobKind::PicardGenerators | JobKind::DetectionCorpus => 2,
            JobKind::ReduceBPrime | JobKind::ReduceD | JobKind::XDetection => 3,
            _ => 2,
        }
    }

    fn min_n(self) -> u32 {
        match self {
            JobKind::Doubling | JobKind::PicardGenerators | JobKind::DetectionCorpus => 1,
            JobKind::ReduceToBPrime
            | JobKind::ReduceBPrime
            | JobKind::ReduceD
            | JobKind::XDetection
            | JobKind::ReduceDOne => 2,
            _ => 0,
        }
    }

    /// Admissible `i` for jobs indexed by it.
    fn i_range(self, n: u32) -> Option<std::ops::RangeInclusive<u32>> {
        let a = profile::family_bound(n);
        match self {
            JobKind::ReduceToBPrime => Some(1..=a + 1),
            JobKind::ReduceBPrime | JobKind::ReduceD | JobKind::XDetection => Some(2..=a + 1),
            _ => None,
        }
    }
}

impl fmt::Display for JobKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for JobKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        JobKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = JobKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown job {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub kind: JobKind,
    pub n: Option<u32>,
    pub i: Option<u32>,
    /// Parameter bound for enumerations (identities, Picard range).
    pub bound: Option<u32>,
    pub seed: u64,
    pub max_dim: usize,
    pub time_cap: Option<Duration>,
}

impl Job {
    pub fn new(kind: JobKind) -> Self {
        Job {
            kind,
            n: None,
            i: None,
            bound: None,
            seed: 0,
            max_dim: Limits::default().max_dim,
            time_cap: None,
        }
    }

    pub fn n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn i(mut self, i: u32) -> Self {
        self.i = Some(i);
        self
    }

    pub fn bound(mut self, b: u32) -> Self {
        self.bound = Some(b);
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }
}

/// Raised for parameters outside a job's range.
#[derive(Debug)]
pub struct InvalidJob(pub String);

impl fmt::Display for InvalidJob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidJob {}

struct Runner {
    b: ReportBuilder,
    start: Instant,
    cap: Option<Duration>,
    limits: Limits,
}

impl Runner {
    fn out_of_time(&self) -> bool {
        self.cap.is_some_and(|c| self.start.elapsed() > c)
    }

    /// Runs one check unless the time cap has passed. Resource-limit errors
    /// mark the check incomplete; other errors fail it.
    fn run(&mut self, name: &str, f: impl FnOnce(&mut ReportBuilder) -> Result<(), Error>) {
        if self.out_of_time() {
            self.b.incomplete(name, "time cap reached");
            return;
        }
        let t = Instant::now();
        match f(&mut self.b) {
            Ok(()) => {}
            Err(e @ Error::ResourceLimit { .. }) => self.b.incomplete(name, e.to_string()),
            Err(e) => self.b.check(name, false, format!("error: {e}")),
        }
        self.b.timing(name, t.elapsed().as_millis() as u64);
    }
}

pub fn run_job(job: &Job) -> Result<Report, InvalidJob> {
    let kind = job.kind;
    let n = job.n.unwrap_or(kind.default_n());
    if n < kind.min_n() {
        return Err(InvalidJob(format!("{kind} needs n ≥ {}", kind.min_n())));
    }
    if n > 8 {
        return Err(InvalidJob(format!("n = {n} is beyond every supported range")));
    }
    let is: Vec<u32> = match (kind.i_range(n), job.i) {
        (Some(r), Some(i)) if r.contains(&i) => vec![i],
        (Some(r), Some(i)) => {
            return Err(InvalidJob(format!(
                "{kind} at n = {n} needs i in {}..={}, got {i}",
                r.start(),
                r.end()
            )))
        }
        (Some(r), None) => r.collect(),
        (None, Some(_)) => return Err(InvalidJob(format!("{kind} takes no i"))),
        (None, None) => Vec::new(),
    };
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), Value::from(n));
    if let Some(i) = job.i {
        params.insert("i".into(), Value::from(i));
    }
    if let Some(b) = job.bound {
        params.insert("bound".into(), Value::from(b));
    }
    params.insert("max_dim".into(), Value::from(job.max_dim));
    let mut r = Runner {
        b: ReportBuilder::new(kind.name(), params, job.seed),
        start: Instant::now(),
        cap: job.time_cap,
        limits: Limits {
            max_dim: job.max_dim,
        },
    };
    let summary = match kind {
        JobKind::CommutationIdentities => {
            let bound = job.bound.unwrap_or(4);
            commutation_job(&mut r, bound);
            format!("identities hold for all parameters up to {bound}")
        }
        JobKind::GeneratorProduct => {
            generator_product_job(&mut r, n);
            format!("ordered generator products nonzero for the algebras at n = {n}")
        }
        JobKind::Lagrange => {
            lagrange_job(&mut r, n);
            format!("freeness, dimension counts and invariants verified at n = {n}")
        }
        JobKind::Doubling => {
            r.run("doubling", |b| {
                let d = doubling_check(n)?;
                b.check("dimensions match", d.dimensions_match, format!("path {}", d.path));
                b.check("degrees double", d.degrees_double, "");
                b.check("bijective", d.bijective, "");
                b.check("multiplicative", d.multiplicative, "");
                b.check("quotient in even degrees", d.quotient_even, "");
                Ok(())
            });
            format!("doubling isomorphism verified at n = {n}")
        }
        JobKind::Poincare => {
            poincare_job(&mut r, n);
            format!("Poincaré pairing nonsingular at n = {n}")
        }
        JobKind::ReduceToBPrime => {
            reduce_to_b_prime_job(&mut r, n, &is);
            hypotheses_wording(n, &is)
        }
        JobKind::ReduceBPrime => {
            reduce_b_prime_job(&mut r, n, &is);
            hypotheses_wording(n, &is)
        }
        JobKind::ReduceD => {
            reduce_d_job(&mut r, n, &is);
            hypotheses_wording(n, &is)
        }
        JobKind::XDetection => {
            x_detection_job(&mut r, n, &is);
            hypotheses_wording(n, &is)
        }
        JobKind::ReduceDOne => {
            reduce_d_one_job(&mut r, n);
            format!("hypotheses verified at n = {n}")
        }
        JobKind::PicardGenerators => {
            let bound = job.bound.unwrap_or(2) as i32;
            picard_job(&mut r, n, bound);
            format!("classes σ(m)Ω^l(k), |m|,|l| ≤ {bound}, pairwise distinct at n = {n}")
        }
        JobKind::DetectionCorpus => {
            detection_job(&mut r, n, job.seed);
            format!("freeness agrees with elementary detection on the corpus at n = {n}")
        }
    };
    store_artifacts(&r.b);
    Ok(r.b.finish(summary))
}

fn hypotheses_wording(n: u32, is: &[u32]) -> String {
    if is.is_empty() {
        format!("no admissible i at n = {n}; nothing to verify")
    } else {
        let pairs: Vec<String> = is.iter().map(|i| format!("({n},{i})")).collect();
        format!("hypotheses verified at (n,i) = {}", pairs.join(", "))
    }
}

fn store_artifacts(b: &ReportBuilder) {
    let Some(dir) = std::env::var_os(CACHE_DIR_ENV) else {
        return;
    };
    let dir = PathBuf::from(dir);
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    for (name, bytes) in b.artifacts() {
        let file: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        let _ = std::fs::write(dir.join(format!("{file}.json")), bytes);
    }
}

fn alg(p: &Profile) -> Result<Arc<HopfAlgebra>, Error> {
    algebra(p)
}

fn pst(h: &HopfAlgebra, s: u32, t: usize) -> Result<Vec<u32>, Error> {
    h.element(&MilnorElement::from(MilnorMonomial::p(s, t)))
}

/// Product in `h` of the listed `P^s_t`, in order.
fn product(h: &HopfAlgebra, factors: &[(u32, usize)]) -> Result<Vec<u32>, Error> {
    let mut acc = vec![0u32];
    for &(s, t) in factors {
        acc = h.mul_vec(&acc, &pst(h, s, t)?);
    }
    Ok(acc)
}

fn commutation_job(r: &mut Runner, bound: u32) {
    let families = commutation_identities(bound);
    for f in families {
        let name = format!("identity {}", f.part);
        let detail = if f.passed() {
            format!("{} ({} instances)", f.statement, f.instances)
        } else {
            format!("{}: {} of {} fail, first {}", f.statement, f.failures.len(), f.instances, f.failures[0])
        };
        r.b.check(name, f.passed(), detail);
        r.b.value(format!("identity {} instances", f.part), f.instances);
    }
}

/// Every algebra of the reduction families at `n`, with a label.
pub fn family_algebras(n: u32) -> Vec<(String, Profile)> {
    let mut out = vec![
        (format!("A({n})"), profile::a(n)),
        (format!("E({n})"), profile::e(n)),
    ];
    if n >= 1 {
        for i in 1..=n / 2 + 1 {
            out.push((format!("B_{i}∩A({n})"), profile::b(i).expect("i ≥ 1").meet(&profile::a(n))));
        }
        for i in 1..=n + 1 {
            out.push((format!("O_{i}({n})"), profile::o(n, i).expect("in range")));
        }
    }
    if n >= 2 {
        let a = profile::family_bound(n);
        for i in 1..=a + 1 {
            out.push((format!("B'_{i}({n})"), profile::b_prime(n, i).expect("in range")));
            out.push((format!("D_{i}({n})"), profile::d(n, i).expect("in range")));
            if i >= 2 {
                out.push((format!("X_{i}({n})"), profile::x(n, i).expect("in range")));
                out.push((format!("Y_{i}({n})"), profile::y(n, i).expect("in range")));
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|(_, p)| seen.insert(p.clone()));
    out
}

fn generator_product_job(r: &mut Runner, n: u32) {
    for (label, p) in family_algebras(n) {
        r.run(&format!("{label} generator product"), |b| {
            let prod = ordered_generator_product(&p);
            let top = p.top_class().ok_or_else(|| Error::InfiniteAlgebra(p.to_string()))?;
            let leading = prod.contains(&top)
                && prod
                    .iter()
                    .all(|m| *m == top || m.excess() < top.excess());
            b.check(
                format!("{label} generator product"),
                !prod.is_zero() && leading,
                format!("profile {p}: {} terms, leading term {top}", prod.len()),
            );
            Ok(())
        });
    }
}

/// Nested pairs `(Z, H)` of profile algebras used by the reductions at `n`.
pub fn nested_pairs(n: u32) -> Vec<(String, Profile, Profile)> {
    let mut out: Vec<(String, Profile, Profile)> = Vec::new();
    let mut add = |label: String, z: Profile, h: Profile| {
        if !out.iter().any(|(_, a, b)| *a == z && *b == h) {
            out.push((label, z, h));
        }
    };
    add(format!("E({n}) ⊆ A({n})"), profile::e(n), profile::a(n));
    if n < 2 {
        return out;
    }
    let a = profile::family_bound(n);
    let top = profile::single(n + 1).expect("t ≥ 1");
    let p_name = format!("⟨P^0_{}⟩", n + 1);
    for i in 1..=a + 1 {
        let bp = profile::b_prime(n, i).expect("in range");
        add(format!("E({n}) ⊆ B'_{i}({n})"), profile::e(n), bp.clone());
        add(format!("B'_{i}({n}) ⊆ A({n})"), bp.clone(), profile::a(n));
        add(format!("{p_name} ⊆ B'_{i}({n})"), top.clone(), bp.clone());
        let d = profile::d(n, i).expect("in range");
        add(format!("D_{i}({n}) ⊆ B'_{i}({n})"), d.clone(), bp.clone());
        add(format!("{p_name} ⊆ D_{i}({n})"), top.clone(), d.clone());
        if i >= 2 {
            let y = profile::y(n, i).expect("in range");
            let x = profile::x(n, i).expect("in range");
            let bi = profile::b(i).expect("i ≥ 1").meet(&d);
            let bi1 = profile::b(i + 1).expect("i ≥ 1").meet(&d);
            add(format!("Y_{i}({n}) ⊆ D_{i}({n})"), y.clone(), d.clone());
            add(format!("X_{i}({n}) ⊆ D_{i}({n})"), x.clone(), d.clone());
            add(format!("B_{i}∩D_{i}({n}) ⊆ D_{i}({n})"), bi.clone(), d.clone());
            add(format!("B_{}∩D_{i}({n}) ⊆ D_{i}({n})", i + 1), bi1.clone(), d.clone());
            add(format!("Y_{i}({n}) ⊆ B_{i}∩D_{i}({n})"), y.clone(), bi);
            add(format!("Y_{i}({n}) ⊆ B_{}∩D_{i}({n})", i + 1), y, bi1);
            add(
                format!("B_{i}∩X_{i}({n}) ⊆ X_{i}({n})"),
                profile::b(i).expect("i ≥ 1").meet(&x),
                x,
            );
        }
    }
    add(format!("{p_name} ⊆ E({n})"), top.clone(), profile::e(n));
    let d1 = profile::d(n, 1).expect("in range");
    let b2 = profile::b(2).expect("i ≥ 1").meet(&d1);
    add(format!("A(1) ⊆ D_1({n})"), profile::a(1), d1.clone());
    add(format!("B_2∩D_1({n}) ⊆ D_1({n})"), b2.clone(), d1.clone());
    add(format!("{p_name} ⊆ B_2∩D_1({n})"), top, b2);
    add("E(1) ⊆ A(1)".to_string(), profile::e(1), profile::a(1));
    out
}

fn lagrange_job(r: &mut Runner, n: u32) {
    for (label, zp, hp) in nested_pairs(n) {
        r.run(&label, |b| {
            let h = alg(&hp)?;
            let z = alg(&zp)?;
            let regular = GradedModule::regular(&h);
            let restricted = regular.restrict(&z)?;
            b.check(
                format!("{label}: H free over Z"),
                is_free(&restricted),
                format!("dim H = {}, dim Z = {}", h.dim(), z.dim()),
            );
            if !h.is_normal_sub(&z)? {
                b.skip(format!("{label}: quotient"), "Z is not normal in H");
                return Ok(());
            }
            let q = quotient(&h, &z)?;
            b.check(
                format!("{label}: dim H = dim Z · dim H//Z"),
                h.dim() == z.dim() * q.dim(),
                format!("{} = {} · {}", h.dim(), z.dim(), q.dim()),
            );
            let inv = regular.invariants(&z)?;
            let bottom = inv.grading().min_degree();
            b.check(
                format!("{label}: H^Z free of rank 1 over H//Z from degree |Z|"),
                inv.dim() == q.dim() && is_free(&inv) && bottom == Some(z.top_degree()),
                format!(
                    "dim H^Z = {}, bottom degree {:?}, |Z| = {}",
                    inv.dim(),
                    bottom,
                    z.top_degree()
                ),
            );
            Ok(())
        });
    }
}

fn poincare_job(r: &mut Runner, n: u32) {
    for (label, p) in [(format!("A({n})"), profile::a(n)), (format!("E({n})"), profile::e(n))] {
        r.run(&format!("{label} pairing"), |b| {
            let h = alg(&p)?;
            let pairing = h.poincare_pairing();
            let bad: Vec<i32> = pairing
                .iter()
                .filter(|&&(_, a, c, rk)| !(a == c && rk == a))
                .map(|x| x.0)
                .collect();
            b.check(
                format!("{label} pairing"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("nonsingular in all {} degrees", pairing.len())
                } else {
                    format!("singular in degrees {bad:?}")
                },
            );
            Ok(())
        });
    }
}

fn reduce_to_b_prime_job(r: &mut Runner, n: u32, is: &[u32]) {
    r.run("E(n) normal in A(n)", |b| {
        let an = alg(&profile::a(n))?;
        let en = alg(&profile::e(n))?;
        b.check("E(n) normal in A(n)", an.is_normal_sub(&en)?, format!("n = {n}"));
        let q = quotient(&an, &en)?;
        let even = q.grading().degrees().iter().all(|d| d % 2 == 0);
        b.check(
            "A(n)//E(n) in even degrees",
            even,
            format!("dim {}, top degree {}", q.dim(), q.top_degree()),
        );
        let d = doubling_check(n)?;
        b.check(
            "doubling isomorphism A(n-1) → A(n)//E(n)",
            d.passed(),
            format!("{d:?}"),
        );
        let elem = maximal_elementary(n - 1)?;
        b.check(
            "maximal elementary subalgebras of A(n-1)",
            elem.len() as u32 == profile::family_bound(n) + 1,
            elem.iter().map(|e| e.name().to_string()).collect::<Vec<_>>().join(", "),
        );
        Ok(())
    });
    for &i in is {
        r.run(&format!("i = {i}"), |b| {
            let an = alg(&profile::a(n))?;
            let en = alg(&profile::e(n))?;
            let bp = alg(&profile::b_prime(n, i)?)?;
            b.check(
                format!("i = {i}: E(n) normal in B'_i(n)"),
                bp.is_normal_sub(&en)?,
                bp.name().to_string(),
            );
            let q = quotient(&an, &en)?;
            let image = q.image_of(&*quotient(&bp, &en)?)?;
            // η(B_i ∩ A(n−1)) spanned by [Sq(2R)].
            let small = alg(&profile::b(i)?.meet(&profile::a(n - 1)))?;
            let mut doubled = GradedSubspace::new(q.grading());
            for m in small.basis() {
                let d = MilnorMonomial::new(m.exponents().iter().map(|&x| 2 * x).collect());
                doubled.insert(&q.element(&MilnorElement::from(d))?);
            }
            b.check(
                format!("i = {i}: B'_i(n)//E(n) = η(B_i ∩ A(n-1))"),
                image.same_as(&doubled),
                format!("dimensions {} and {}", image.dim(), doubled.dim()),
            );
            b.check(
                format!("i = {i}: B_i ∩ A(n-1) elementary"),
                small.is_elementary(),
                small.name().to_string(),
            );
            Ok(())
        });
    }
}

fn record_reduction(b: &mut ReportBuilder, prefix: &str, rep: &ReductionReport) {
    for c in &rep.checks {
        b.check(format!("{prefix}{}", c.name), c.passed, c.detail.clone());
    }
    if let Some(d) = rep.t1_degree {
        b.value(format!("{prefix}t1_degree"), d);
    }
    if let Some(d) = rep.t2_degree {
        b.value(format!("{prefix}t2_degree"), d);
    }
    b.value(format!("{prefix}top_degree"), rep.top_degree);
    if let Some(z) = rep.z_in_e1 {
        b.value(format!("{prefix}z_in_e1"), z);
    }
}

fn reduce_b_prime_job(r: &mut Runner, n: u32, is: &[u32]) {
    if is.is_empty() {
        r.b.skip("admissible i", format!("no 2 ≤ i ≤ a+1 at n = {n}"));
    }
    for &i in is {
        r.run(&format!("i = {i}"), |b| {
            let prefix = format!("i = {i}: ");
            let bpp = profile::b_prime(n, i)?;
            let bp = alg(&bpp)?;
            let p = alg(&profile::single(n + 1)?)?;
            b.check(
                format!("{prefix}⟨P^0_n+1⟩ normal in B'_i(n)"),
                bp.is_normal_sub(&p)?,
                bp.name().to_string(),
            );
            let h = quotient(&bp, &p)?;
            let e1 = h.image_of(&*alg(&profile::e(n))?)?;
            let e2 = h.image_of(&*alg(&profile::d(n, i)?)?)?;
            let t1f: Vec<(u32, usize)> = (1..i as usize).map(|j| (0, j)).collect();
            let t2f: Vec<(u32, usize)> = (i as usize..=n as usize)
                .flat_map(|t| (0..bpp.get(t)).map(move |s| (s, t)))
                .collect();
            let t1 = product(&h, &t1f)?;
            let t2 = product(&h, &t2f)?;
            let rep = check_reduction_hypotheses(&h, &e1, &e2, &t1, &t2, None)?;
            b.check(
                format!("{prefix}|H| = |B'_i(n)| - |P^0_n+1|"),
                h.top_degree() == bp.top_degree() - p.top_degree(),
                format!("{} = {} - {}", h.top_degree(), bp.top_degree(), p.top_degree()),
            );
            record_reduction(b, &prefix, &rep);
            Ok(())
        });
    }
}

fn reduce_d_job(r: &mut Runner, n: u32, is: &[u32]) {
    if is.is_empty() {
        r.b.skip("admissible i", format!("no 2 ≤ i ≤ a+1 at n = {n}"));
    }
    for &i in is {
        r.run(&format!("i = {i}"), |b| {
            let prefix = format!("i = {i}: ");
            let dp = profile::d(n, i)?;
            let yp = profile::y(n, i)?;
            let d = alg(&dp)?;
            let y = alg(&yp)?;
            b.check(
                format!("{prefix}Y_i(n) normal in D_i(n)"),
                d.is_normal_sub(&y)?,
                format!("{} in {}", y.name(), d.name()),
            );
            let h = quotient(&d, &y)?;
            let x = alg(&profile::x(n, i)?)?;
            let e1 = h.image_of(&x)?;
            b.check(
                format!("{prefix}quotient map injective on X_i(n)"),
                e1.dim() == x.dim(),
                format!("dim image {} of {}", e1.dim(), x.dim()),
            );
            let e2 = h.image_of(&*alg(&profile::b(i + 1)?.meet(&dp))?)?;
            let t1f: Vec<(u32, usize)> = (0..=i).map(|s| (s, i as usize)).collect();
            let t2f: Vec<(u32, usize)> = (i as usize + 1..=n as usize + 1)
                .flat_map(|t| (yp.get(t)..dp.get(t)).map(move |s| (s, t)))
                .collect();
            let t1 = product(&h, &t1f)?;
            let t2 = product(&h, &t2f)?;
            let z = pst(&h, 0, 2 * i as usize)?;
            let rep = check_reduction_hypotheses(&h, &e1, &e2, &t1, &t2, Some(&z))?;
            b.check(
                format!("{prefix}|H| = |D_i(n)| - |Y_i(n)|"),
                h.top_degree() == d.top_degree() - y.top_degree(),
                format!("{} = {} - {}", h.top_degree(), d.top_degree(), y.top_degree()),
            );
            record_reduction(b, &prefix, &rep);
            Ok(())
        });
    }
}

fn x_detection_job(r: &mut Runner, n: u32, is: &[u32]) {
    if is.is_empty() {
        r.b.skip("admissible i", format!("no 2 ≤ i ≤ a+1 at n = {n}"));
    }
    for &i in is {
        r.run(&format!("i = {i}"), |b| {
            let prefix = format!("i = {i}: ");
            let xp = profile::x(n, i)?;
            let dp = profile::d(n, i)?;
            b.check(format!("{prefix}X_i(n) ⊆ D_i(n)"), xp.is_le(&dp), format!("{xp} ≤ {dp}"));
            let bxp = profile::b(i)?.meet(&xp);
            let bx = alg(&bxp)?;
            b.check(format!("{prefix}B_i ∩ X_i(n) elementary"), bx.is_elementary(), bx.name().to_string());
            // Every elementary sub-Hopf algebra of X_i(n) lies in B_i ∩ X_i(n).
            let mut count = 0;
            let mut stray = Vec::new();
            let (hi, lo) = (xp.get(i as usize), xp.get(2 * i as usize));
            for u in 0..=hi {
                for v in 0..=lo {
                    let mut vals = vec![0; 2 * i as usize];
                    vals[i as usize - 1] = u;
                    vals[2 * i as usize - 1] = v;
                    let q = Profile::finite(vals);
                    if !q.is_valid() {
                        continue;
                    }
                    if alg(&q)?.is_elementary() {
                        count += 1;
                        if !q.is_le(&bxp) {
                            stray.push(q.to_string());
                        }
                    }
                }
            }
            b.check(
                format!("{prefix}B_i ∩ X_i(n) contains every elementary subalgebra"),
                stray.is_empty(),
                format!("{count} elementary subalgebras; outside: {stray:?}"),
            );
            let x = alg(&xp)?;
            b.check(
                format!("{prefix}X_i(n) free over B_i ∩ X_i(n)"),
                is_free(&GradedModule::regular(&x).restrict(&bx)?),
                format!("dim {} over {}", x.dim(), bx.dim()),
            );
            let d = alg(&dp)?;
            let y = alg(&profile::y(n, i)?)?;
            let h = quotient(&d, &y)?;
            let image_x = h.image_of(&x)?;
            b.check(
                format!("{prefix}quotient map injective on X_i(n)"),
                image_x.dim() == x.dim(),
                format!("dim {}", image_x.dim()),
            );
            let image_bx = h.image_of(&bx)?;
            let e1p = h.image_of(&*alg(&profile::b(i)?.meet(&dp))?)?;
            b.check(
                format!("{prefix}π(B_i ∩ X_i(n)) ⊆ (B_i ∩ D_i(n))//Y_i(n)"),
                image_bx.is_subspace_of(&e1p),
                format!("dims {} ⊆ {}", image_bx.dim(), e1p.dim()),
            );
            Ok(())
        });
    }
}

fn reduce_d_one_job(r: &mut Runner, n: u32) {
    r.run("reduction", |b| {
        let dp = profile::d(n, 1)?;
        let d = alg(&dp)?;
        let p = alg(&profile::single(n + 1)?)?;
        b.check(
            "⟨P^0_n+1⟩ normal in D_1(n)",
            d.is_normal_sub(&p)?,
            d.name().to_string(),
        );
        let h = quotient(&d, &p)?;
        let a1 = alg(&profile::a(1))?;
        b.check(
            "|A(1)| < |P^0_n+1|",
            a1.top_degree() < p.top_degree(),
            format!("{} < {}", a1.top_degree(), p.top_degree()),
        );
        b.value("a1_top_degree", a1.top_degree());
        let e1 = h.image_of(&a1)?;
        b.check(
            "quotient map injective on A(1)",
            e1.dim() == a1.dim(),
            format!("dim image {}", e1.dim()),
        );
        let e_1 = alg(&profile::e(1))?;
        b.check("E(1) normal in A(1)", a1.is_normal_sub(&e_1)?, "");
        let e2 = h.image_of(&*alg(&profile::b(2)?.meet(&dp))?)?;
        let t1 = product(&h, &[(0, 1), (1, 1)])?;
        let t2f: Vec<(u32, usize)> = (2..=n as usize).flat_map(|t| [(0, t), (1, t)]).collect();
        let t2 = product(&h, &t2f)?;
        let z = pst(&h, 0, 2)?;
        let rep = check_reduction_hypotheses(&h, &e1, &e2, &t1, &t2, Some(&z))?;
        b.check(
            "|H| = |D_1(n)| - |P^0_n+1|",
            h.top_degree() == d.top_degree() - p.top_degree(),
            format!("{} = {} - {}", h.top_degree(), d.top_degree(), p.top_degree()),
        );
        record_reduction(b, "", &rep);
        Ok(())
    });
}

fn picard_job(r: &mut Runner, n: u32, bound: i32) {
    let limits = r.limits;
    let h = match alg(&profile::a(n)) {
        Ok(h) => h,
        Err(e) => {
            r.b.check("algebra", false, e.to_string());
            return;
        }
    };
    let mut omegas: BTreeMap<i32, GradedModule> = BTreeMap::new();
    for l in -bound..=bound {
        r.run(&format!("Ω^{l}(k)"), |b| {
            let w = omega_power(&GradedModule::trivial(&h), l, &limits)?;
            b.value(format!("omega^{l} dim"), w.dim());
            omegas.insert(l, w);
            Ok(())
        });
    }
    if omegas.len() as i32 != 2 * bound + 1 {
        return;
    }
    let mut signatures: Vec<((i32, i32), Signature)> = Vec::new();
    r.run("classes", |b| {
        for m in -bound..=bound {
            for l in -bound..=bound {
                let c = picard_element(&h, m, l, &limits)?;
                b.artifact(format!("picard A({n}) m={m} l={l}"), c.to_json().into_bytes());
                signatures.push(((m, l), c.signature));
            }
        }
        Ok(())
    });
    r.run("distinct signatures", |b| {
        let mut clashes = Vec::new();
        for (x, (p, s)) in signatures.iter().enumerate() {
            for (q, t) in &signatures[x + 1..] {
                if s == t {
                    clashes.push(format!("{p:?}={q:?}"));
                }
            }
        }
        b.check(
            "distinct signatures",
            clashes.is_empty() && signatures.len() as i32 == (2 * bound + 1).pow(2),
            if clashes.is_empty() {
                format!("{} classes pairwise distinct", signatures.len())
            } else {
                format!("clashes: {}", clashes.join(", "))
            },
        );
        Ok(())
    });
    for (l, w) in &omegas {
        if l.abs() > 1 {
            continue;
        }
        r.run(&format!("Ω^{l}(k) endotrivial"), |b| {
            b.check(format!("Ω^{l}(k) endotrivial"), is_endotrivial(w, &limits)?, format!("dim {}", w.dim()));
            Ok(())
        });
    }
    if n == 1 {
        r.run("joker", |b| {
            let j = GradedModule::cyclic(&h, &["Sq(3)".parse::<MilnorElement>()?])?;
            let end = j.tensor(&j.dual(), limits.max_dim)?;
            let split = steenrod_core::stable::split_free(&end)?;
            b.check(
                "joker endotrivial",
                split.reduced.graded_dims() == vec![(0, 1)],
                format!("{} = {} + {}·{}", end.dim(), split.reduced.dim(), split.shifts.len(), h.dim()),
            );
            let sj = Signature::of(&j);
            b.check(
                "joker outside σ(m)Ω^l(k)",
                signatures.iter().all(|(_, s)| *s != sj),
                format!("compared with {} classes", signatures.len()),
            );
            Ok(())
        });
    }
}

fn detection_job(r: &mut Runner, n: u32, seed: u64) {
    let limits = r.limits;
    let mut corpus = Vec::new();
    r.run("corpus", |b| {
        let h = alg(&profile::a(n))?;
        corpus = curated_corpus(&h, 20, seed, &limits)?;
        b.value("corpus size", corpus.len());
        Ok(())
    });
    let Ok(elem) = maximal_elementary(n) else {
        r.b.check("maximal elementary subalgebras", false, "could not be built");
        return;
    };
    let mut free = 0;
    for (name, m) in &corpus {
        r.run(name, |b| {
            let direct = is_free(m);
            let detected = detect_freeness_via(m, &elem)?;
            free += direct as usize;
            b.check(
                name.clone(),
                direct == detected,
                format!("dim {}, free {direct}, detected {detected}", m.dim()),
            );
            b.artifact(format!("corpus A({n}) {name}"), m.to_file_string().into_bytes());
            Ok(())
        });
    }
    r.b.value("free modules", free);
}
