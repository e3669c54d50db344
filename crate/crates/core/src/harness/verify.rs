//! Cross-verification suites over enumerated and constructed semigroups.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::commutator::{classify_definitional, Class, ClassReport, Commutators, Limits, SeriesKind};
use crate::congruence::{all_congruences, cancellative_closure, cg, rees_congruence, Congruence};
use crate::error::{Error, Result};
use crate::fixtures::{cyclic_group, groups_up_to_order_8, rectangular_band, semilattice2, symmetric_group3};
use crate::harness::enumerate::{enumerate_up_to, Dedup, Filter};
use crate::semigroup::{Element, ReesSpec, Semigroup};
use crate::structure::{
    classify_structural, group_series, kernel, normal_subgroups, power_set, rees_decompose, sigma_n,
    subgroup_commutator, KernelDecomposition,
};
use crate::words::{free_rho_classes, is_cancellative, nt_embeddable, rho_n, search_cancellation_failure, DEFAULT_WORD_CAP};

pub const SCHEMA_VERSION: u32 = 1;

/// Counterexamples kept per suite; the failure count is always exact.
const MAX_DUMPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Fixture goldens.
    Fixtures,
    /// Definitional and structural classifications agree.
    Csi,
    /// Exact classes respect the power conditions and structural ranges.
    Bounds,
    /// `[α₁,…,αₙ] ≤ ⋀αᵢ` and monotonicity in each argument.
    Containment,
    /// Decomposing a Rees matrix semigroup gives back an isomorphic one.
    ReesRoundtrip,
    /// Commutators of `σ_N` congruences follow the group commutators.
    Sigma,
    /// Commutators of Rees congruences against products of the ideals.
    ReesIdeals,
    /// Commutators below a Rees congruence computed inside the ideal.
    IdealRestriction,
    /// Groups: commutators match the classical ones.
    GroupReduct,
    /// Monoids: nilpotence, cancellation and the `q_n` words.
    Monoid,
    /// `ρ₂` on the free monoid at bounded length.
    Free,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Fixtures,
        Suite::Csi,
        Suite::Bounds,
        Suite::Containment,
        Suite::ReesRoundtrip,
        Suite::Sigma,
        Suite::ReesIdeals,
        Suite::IdealRestriction,
        Suite::GroupReduct,
        Suite::Monoid,
        Suite::Free,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fixtures => "fixtures",
            Suite::Csi => "csi",
            Suite::Bounds => "bounds",
            Suite::Containment => "containment",
            Suite::ReesRoundtrip => "rees-roundtrip",
            Suite::Sigma => "sigma",
            Suite::ReesIdeals => "rees-ideals",
            Suite::IdealRestriction => "ideal-restriction",
            Suite::GroupReduct => "group-reduct",
            Suite::Monoid => "monoid",
            Suite::Free => "free",
        }
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out: Vec<Suite> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub suites: Vec<Suite>,
    pub limits: Limits,
    pub seed: u64,
    /// Largest monoid order for the `n = 1` monoid checks.
    pub monoid_n1_order: usize,
    /// Random congruence tuples drawn at order 4.
    pub containment_samples: usize,
    pub free_max_len: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl VerifyConfig {
    pub fn new(n_max: usize, suites: Vec<Suite>) -> Self {
        VerifyConfig {
            n_max,
            suites,
            limits: Limits::default(),
            seed: 0,
            monoid_n1_order: n_max,
            containment_samples: 1000,
            free_max_len: 8,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    /// The table in text format; feeding it back reproduces the reports.
    pub table: Option<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<ClassReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    /// Instances that hit a resource limit.
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub runtime_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub n_max: usize,
    pub suites: Vec<SuiteResult>,
    pub total_checked: usize,
    pub total_failed: usize,
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.total_failed == 0
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteResult> {
        self.suites.iter().find(|r| r.suite == suite)
    }

    /// One row per suite.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tchecked\tpassed\tfailed\tskipped\truntime_ms\n");
        for r in &self.suites {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.suite, r.checked, r.passed, r.failed, r.skipped, r.runtime_ms
            ));
        }
        out
    }
}

/// Result of one check on one instance.
enum Outcome {
    Pass,
    Fail(Counterexample),
    Skip(String),
}

fn fail(s: Option<&Semigroup>, detail: impl Into<String>) -> Outcome {
    Outcome::Fail(Counterexample {
        table: s.map(Semigroup::to_text),
        detail: detail.into(),
        reports: Vec::new(),
    })
}

fn check(ok: bool, s: &Semigroup, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        fail(Some(s), detail())
    }
}

/// Runs `f` on `items` and returns results in input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

fn collect(suite: Suite, outcomes: Vec<Vec<Outcome>>, notes: Vec<String>, start: Instant) -> SuiteResult {
    let mut r = SuiteResult {
        suite,
        checked: 0,
        passed: 0,
        failed: 0,
        skipped: 0,
        counterexamples: Vec::new(),
        notes,
        runtime_ms: 0,
    };
    for o in outcomes.into_iter().flatten() {
        r.checked += 1;
        match o {
            Outcome::Pass => r.passed += 1,
            Outcome::Skip(why) => {
                r.skipped += 1;
                if r.notes.len() < MAX_DUMPS {
                    r.notes.push(format!("skipped: {why}"));
                }
            }
            Outcome::Fail(c) => {
                r.failed += 1;
                if r.counterexamples.len() < MAX_DUMPS {
                    r.counterexamples.push(c);
                }
            }
        }
    }
    r.runtime_ms = start.elapsed().as_millis();
    r
}

/// Turns a resource limit into a skip and any other error into a failure.
fn guarded(s: &Semigroup, f: impl FnOnce() -> Result<Vec<Outcome>>) -> Vec<Outcome> {
    match f() {
        Ok(v) => v,
        Err(Error::ResourceLimit { what, limit }) => vec![Outcome::Skip(format!("{what} exceeded {limit}"))],
        Err(e) => vec![fail(Some(s), format!("error: {e}"))],
    }
}

pub fn verify(config: &VerifyConfig) -> Result<VerificationReport> {
    if config.n_max == 0 || config.n_max > crate::harness::enumerate::MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidArgument(format!("n_max {} outside 1..=5", config.n_max)));
    }
    #[cfg(feature = "parallel")]
    if let Some(jobs) = config.jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        return pool.install(|| run(config));
    }
    run(config)
}

fn run(config: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let needs_corpus = config
        .suites
        .iter()
        .any(|s| matches!(s, Suite::Csi | Suite::Bounds | Suite::ReesIdeals | Suite::IdealRestriction));
    let corpus = if needs_corpus {
        enumerate_up_to(config.n_max, Dedup::Iso, Filter::All)?
    } else {
        Vec::new()
    };
    let mut suites = Vec::new();
    for &suite in &config.suites {
        suites.push(match suite {
            Suite::Fixtures => fixtures_suite(config),
            Suite::Csi => csi_suite(config, &corpus),
            Suite::Bounds => bounds_suite(config, &corpus),
            Suite::Containment => containment_suite(config)?,
            Suite::ReesRoundtrip => rees_roundtrip_suite(config),
            Suite::Sigma => sigma_suite(config),
            Suite::ReesIdeals => rees_ideals_suite(config, &corpus),
            Suite::IdealRestriction => ideal_restriction_suite(config, &corpus),
            Suite::GroupReduct => group_reduct_suite(config),
            Suite::Monoid => monoid_suite(config)?,
            Suite::Free => free_suite(config),
        });
    }
    Ok(VerificationReport {
        schema: SCHEMA_VERSION,
        n_max: config.n_max,
        total_checked: suites.iter().map(|s| s.checked).sum(),
        total_failed: suites.iter().map(|s| s.failed).sum(),
        suites,
        runtime_ms: start.elapsed().as_millis(),
    })
}

fn fixtures_suite(config: &VerifyConfig) -> SuiteResult {
    let start = Instant::now();
    let mut out = Vec::new();
    let sl = semilattice2();
    out.push(guarded(&sl, || {
        let r = classify_definitional(&sl, &config.limits)?;
        let one = Congruence::total(2);
        let c = crate::commutator::tc_commutator(&sl, &[one.clone(), one], &config.limits)?;
        Ok(vec![check(
            c.is_total() && r.solvable == Some(false) && r.supernilpotent == "no",
            &sl,
            || format!("semilattice: [1,1] = {}, report {r:?}", c.partition()),
        )])
    }));
    for rows in 1..=9 {
        for cols in 1..=9 / rows {
            let b = rectangular_band(rows, cols);
            out.push(guarded(&b, || {
                let r = classify_definitional(&b, &config.limits)?;
                Ok(vec![check(r.abelian == Some(true), &b, || {
                    format!("{rows}x{cols} rectangular band not abelian")
                })])
            }));
        }
    }
    collect(Suite::Fixtures, out, Vec::new(), start)
}

fn with_reports(mut o: Outcome, def: &ClassReport, st: &ClassReport) -> Outcome {
    if let Outcome::Fail(c) = &mut o {
        c.reports = vec![def.clone(), st.clone()];
    }
    o
}

fn csi_suite(config: &VerifyConfig, corpus: &[Semigroup]) -> SuiteResult {
    let start = Instant::now();
    let unknown = std::sync::atomic::AtomicUsize::new(0);
    let out = par_map(corpus, |s| {
        guarded(s, || {
            let def = classify_definitional(s, &config.limits)?;
            let st = classify_structural(s)?;
            if def.supernilpotent == "unknown" {
                unknown.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
            let super_ok = def.supernilpotent == "unknown" || def.supernilpotent == st.supernilpotent;
            let checks = [
                (def.solvable.is_some() && def.solvable == st.solvable, "solvable"),
                (def.left_nilpotent == def.right_nilpotent, "left vs right nilpotent"),
                (def.left_nilpotent == st.left_nilpotent, "nilpotent"),
                (super_ok, "supernilpotent"),
            ];
            Ok(checks
                .iter()
                .map(|&(ok, what)| with_reports(check(ok, s, || format!("{what} verdicts differ")), &def, &st))
                .collect())
        })
    });
    let notes = vec![format!(
        "{} supernilpotent verdicts undecided up to arity {}",
        unknown.into_inner(),
        config.limits.arity_cap
    )];
    collect(Suite::Csi, out, notes, start)
}

fn within(class: Class, range: Class) -> bool {
    match (class, range) {
        (Class::Exact(d), Class::Within { lower, upper }) => lower <= d && d <= upper,
        (Class::Exact(_), _) => false,
        _ => true,
    }
}

fn bounds_suite(config: &VerifyConfig, corpus: &[Semigroup]) -> SuiteResult {
    let start = Instant::now();
    let out = par_map(corpus, |s| {
        guarded(s, || {
            let def = classify_definitional(s, &config.limits)?;
            let st = classify_structural(s)?;
            let k = kernel(s);
            // power_set stops at stabilization, so large exponents are cheap
            let inside = |e: usize| power_set(s, e).iter().all(|x| k.contains(x));
            let mut v = Vec::new();
            if let Some(d) = def.solvable_class.exact() {
                let e = 1usize.checked_shl(d as u32).unwrap_or(usize::MAX).min(s.order() + 1);
                v.push(check(inside(e), s, || format!("solvable class {d} but S^(2^{d}) ⊄ K")));
            }
            for (name, class) in [
                ("left nilpotent", def.left_nilpotent_class),
                ("right nilpotent", def.right_nilpotent_class),
                ("supernilpotent", def.supernilpotent_class),
            ] {
                if let Some(d) = class.exact() {
                    v.push(check(inside(d + 1), s, || format!("{name} class {d} but S^{} ⊄ K", d + 1)));
                }
            }
            for (name, class, range) in [
                ("solvable", def.solvable_class, st.solvable_class),
                ("left nilpotent", def.left_nilpotent_class, st.left_nilpotent_class),
                ("right nilpotent", def.right_nilpotent_class, st.right_nilpotent_class),
                ("supernilpotent", def.supernilpotent_class, st.supernilpotent_class),
            ] {
                v.push(with_reports(
                    check(within(class, range), s, || format!("{name} class outside the structural range")),
                    &def,
                    &st,
                ));
            }
            Ok(v)
        })
    });
    collect(Suite::Bounds, out, Vec::new(), start)
}

/// Containment and monotonicity for one argument tuple.
fn containment_checks(
    s: &Semigroup,
    c: &mut Commutators,
    args: &[Congruence],
    larger: &[(usize, Congruence)],
) -> Result<Vec<Outcome>> {
    let base = c.get(args)?;
    let mut v = vec![check(crate::commutator::below_meet(&base, args), s, || {
        format!("commutator {} above the meet of {}", base.partition(), show(args))
    })];
    for (i, beta) in larger {
        let mut bigger = args.to_vec();
        bigger[*i] = beta.clone();
        let up = c.get(&bigger)?;
        v.push(check(base.leq(&up), s, || {
            format!("not monotone: [{}] vs [{}]", show(args), show(&bigger))
        }));
    }
    Ok(v)
}

fn show(args: &[Congruence]) -> String {
    args.iter().map(|a| a.partition().to_string()).collect::<Vec<_>>().join(", ")
}

fn tuples(len: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..len).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn containment_suite(config: &VerifyConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let small = enumerate_up_to(config.n_max.min(3), Dedup::Iso, Filter::All)?;
    let mut out = par_map(&small, |s| {
        guarded(s, || {
            let cons = all_congruences(s);
            let mut c = Commutators::new(s, config.limits);
            let mut v = Vec::new();
            for arity in 2..=3.min(config.limits.arity_cap) {
                for t in tuples(cons.len(), arity) {
                    let args: Vec<Congruence> = t.iter().map(|&i| cons[i].clone()).collect();
                    let larger: Vec<(usize, Congruence)> = (0..arity)
                        .flat_map(|i| {
                            let a = &args[i];
                            cons.iter()
                                .filter(move |b| a.leq(b) && *b != a)
                                .map(move |b| (i, b.clone()))
                        })
                        .collect();
                    v.extend(containment_checks(s, &mut c, &args, &larger)?);
                }
            }
            Ok(v)
        })
    });
    let mut notes = Vec::new();
    if config.n_max >= 4 {
        let four = crate::harness::enumerate::enumerate(crate::harness::EnumerationJob::new(4))?;
        let mut rng = StdRng::seed_from_u64(config.seed);
        let draws: Vec<(usize, usize, u64)> = (0..config.containment_samples)
            .map(|_| (rng.random_range(0..four.len()), rng.random_range(2..=3), rng.random()))
            .collect();
        let cons: Vec<Vec<Congruence>> = four.iter().map(all_congruences).collect();
        out.extend(par_map(&draws, |&(k, arity, sub_seed)| {
            let s = &four[k];
            let cs = &cons[k];
            let mut rng = StdRng::seed_from_u64(sub_seed);
            let args: Vec<Congruence> = (0..arity).map(|_| cs[rng.random_range(0..cs.len())].clone()).collect();
            let i = rng.random_range(0..arity);
            let above: Vec<&Congruence> = cs.iter().filter(|b| args[i].leq(b)).collect();
            let beta = above[rng.random_range(0..above.len())].clone();
            let mut c = Commutators::new(s, config.limits);
            guarded(s, || containment_checks(s, &mut c, &args, &[(i, beta)]))
        }));
        notes.push(format!("{} random tuples at order 4, seed {}", config.containment_samples, config.seed));
    }
    Ok(collect(Suite::Containment, out, notes, start))
}

/// Rees matrix specs over `groups`, `|I|, |Λ| ≤ 2`: every sandwich matrix when
/// there are at most 256, else a seeded sample of 64.
fn rees_specs(groups: &[Semigroup], seed: u64) -> Vec<ReesSpec> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in groups {
        for i_size in 1..=2 {
            for lambda_size in 1..=2 {
                let cells = i_size * lambda_size;
                let total = g.order().pow(cells as u32);
                let codes: Vec<usize> = if total <= 256 {
                    (0..total).collect()
                } else {
                    (0..64).map(|_| rng.random_range(0..total)).collect()
                };
                for code in codes {
                    let flat: Vec<Element> = (0..cells).map(|k| code / g.order().pow(k as u32) % g.order()).collect();
                    out.push(ReesSpec {
                        group: g.clone(),
                        i_size,
                        lambda_size,
                        sandwich: flat.chunks(i_size).map(<[Element]>::to_vec).collect(),
                    });
                }
            }
        }
    }
    out
}

fn rees_roundtrip_suite(config: &VerifyConfig) -> SuiteResult {
    let start = Instant::now();
    let groups = [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group3()];
    let specs = rees_specs(&groups, config.seed);
    let out = par_map(&specs, |spec| {
        let r = crate::semigroup::rees_matrix(spec, 64).expect("small Rees matrix semigroup");
        let s = &r.semigroup;
        guarded(s, || {
            let all: Vec<Element> = s.elements().collect();
            let d = rees_decompose(s, &all)?;
            let back = crate::semigroup::rees_matrix(
                &ReesSpec {
                    group: d.group.clone(),
                    i_size: d.i_count,
                    lambda_size: d.lambda_count,
                    sandwich: d.sandwich.clone(),
                },
                64,
            )?;
            let iso: Vec<Element> = all.iter().map(|&x| back.index_of(d.coords[x].unwrap())).collect();
            let mut image = iso.clone();
            image.sort_unstable();
            let shape = (d.i_count, d.lambda_count, d.group.order()) == (spec.i_size, spec.lambda_size, spec.group.order());
            Ok(vec![check(
                shape && image == all && s.is_homomorphism_to(&back.semigroup, &iso),
                s,
                || "decomposition does not rebuild an isomorphic semigroup".into(),
            )])
        })
    });
    collect(Suite::ReesRoundtrip, out, vec![format!("{} sandwich matrices", specs.len())], start)
}

fn sigma_checks(s: &Semigroup, d: &KernelDecomposition, limits: &Limits) -> Result<Vec<Outcome>> {
    let g = &d.group;
    let normals = normal_subgroups(g)?;
    let all: Vec<Element> = g.elements().collect();
    let one = Congruence::total(s.order());
    let mut c = Commutators::new(s, *limits);
    let mut v = Vec::new();
    for m in &normals {
        let sm = sigma_n(s, d, m)?;
        for n in &normals {
            let sn = sigma_n(s, d, n)?;
            let expect = sigma_n(s, d, &subgroup_commutator(g, m, n)?)?;
            let got = c.get(&[sm.clone(), sn.clone()])?;
            v.push(check(got == expect, s, || {
                format!("[σ_M, σ_N] = {} but σ_[M,N] = {} for M={m:?}, N={n:?}", got.partition(), expect.partition())
            }));
        }
        let expect = sigma_n(s, d, &subgroup_commutator(g, &all, m)?)?;
        let left = c.get(&[one.clone(), sm.clone()])?;
        let right = c.get(&[sm.clone(), one.clone()])?;
        v.push(check(left == expect && right == expect, s, || {
            format!(
                "[1, σ_N] = {}, [σ_N, 1] = {}, σ_[G,N] = {} for N={m:?}",
                left.partition(),
                right.partition(),
                expect.partition()
            )
        }));
    }
    Ok(v)
}

fn sigma_suite(config: &VerifyConfig) -> SuiteResult {
    let start = Instant::now();
    let groups = [cyclic_group(2), cyclic_group(4), symmetric_group3()];
    let specs = rees_specs(&groups, config.seed);
    // each Rees semigroup alone and with an identity adjoined
    let out = par_map(&specs, |spec| {
        let r = crate::semigroup::rees_matrix(spec, 64).expect("small Rees matrix semigroup");
        let mut v = Vec::new();
        for s in [r.semigroup.clone(), crate::fixtures::adjoin_identity(&r.semigroup)] {
            v.extend(guarded(&s, || {
                let d = rees_decompose(&s, &kernel(&s))?;
                sigma_checks(&s, &d, &config.limits)
            }));
        }
        v
    });
    collect(Suite::Sigma, out, vec![format!("{} sandwich matrices", specs.len())], start)
}

/// Every ideal of `s`, by subsets.
pub fn ideals(s: &Semigroup) -> Vec<Vec<Element>> {
    let n = s.order();
    assert!(n <= 16, "ideal enumeration by subsets is for small semigroups");
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<Vec<_>>())
        .filter(|set| s.is_ideal(set))
        .collect()
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    crate::harness::enumerate::permutations(k)
}

fn rees_ideals_suite(config: &VerifyConfig, corpus: &[Semigroup]) -> SuiteResult {
    let start = Instant::now();
    let max_arity = 3.min(config.limits.arity_cap);
    let out = par_map(corpus, |s| {
        guarded(s, || {
            let ids = ideals(s);
            let rhos: Vec<Congruence> = ids.iter().map(|i| rees_congruence(s, i)).collect::<Result<_>>()?;
            let has_zero = s.zero().is_some();
            let mut c = Commutators::new(s, config.limits);
            let mut v = Vec::new();
            for arity in 2..=max_arity {
                // without a zero only the inequality is claimed; binary suffices there
                if !has_zero && arity > 2 {
                    continue;
                }
                for t in tuples(ids.len(), arity) {
                    let mut j: Vec<Element> = Vec::new();
                    for p in permutations_of(arity) {
                        let prod = p[1..]
                            .iter()
                            .fold(ids[t[p[0]]].clone(), |acc, &k| s.set_product(&acc, &ids[t[k]]));
                        j.extend(prod);
                    }
                    j.sort_unstable();
                    j.dedup();
                    let rho_j = rees_congruence(s, &j)?;
                    let args: Vec<Congruence> = t.iter().map(|&k| rhos[k].clone()).collect();
                    let comm = c.get(&args)?;
                    let ok = if has_zero { comm == rho_j } else { comm.leq(&rho_j) };
                    v.push(check(ok, s, || {
                        format!(
                            "ideals {:?}: commutator {} vs ρ_J {} (zero: {has_zero})",
                            t.iter().map(|&k| &ids[k]).collect::<Vec<_>>(),
                            comm.partition(),
                            rho_j.partition()
                        )
                    }));
                }
            }
            Ok(v)
        })
    });
    collect(Suite::ReesIdeals, out, Vec::new(), start)
}

fn ideal_restriction_suite(config: &VerifyConfig, corpus: &[Semigroup]) -> SuiteResult {
    let start = Instant::now();
    let out = par_map(corpus, |s| {
        guarded(s, || {
            let cons = all_congruences(s);
            let mut c = Commutators::new(s, config.limits);
            let mut v = Vec::new();
            for ideal in ideals(s) {
                if ideal.len() == s.order() {
                    continue;
                }
                let rho = rees_congruence(s, &ideal)?;
                let below: Vec<&Congruence> = cons.iter().filter(|a| a.leq(&rho)).collect();
                let (sub, map) = s.restrict_to(&ideal)?;
                let local = |a: &Congruence| {
                    let labels: Vec<Element> = map.iter().map(|&x| a.repr()[x]).collect();
                    Congruence::from_labels(&labels)
                };
                let mut inner = Commutators::new(&sub, config.limits);
                for a in &below {
                    for b in &below {
                        let outer = c.get(&[(*a).clone(), (*b).clone()])?;
                        let ic = inner.get(&[local(a), local(b)])?;
                        let pairs: Vec<(Element, Element)> =
                            ic.pairs().into_iter().map(|(x, y)| (map[x], map[y])).collect();
                        let generated = cg(s, &pairs);
                        v.push(check(outer == generated, s, || {
                            format!(
                                "ideal {ideal:?}: [α, β]_S = {} but generated from I: {}",
                                outer.partition(),
                                generated.partition()
                            )
                        }));
                    }
                }
            }
            Ok(v)
        })
    });
    collect(Suite::IdealRestriction, out, Vec::new(), start)
}

/// Congruence of a group whose classes are the cosets of `n`.
fn coset_congruence(g: &Semigroup, n: &[Element]) -> Congruence {
    let labels: Vec<Element> = g.elements().map(|x| n.iter().map(|&k| g.mul(x, k)).min().unwrap()).collect();
    Congruence::from_labels(&labels)
}

fn group_reduct_suite(config: &VerifyConfig) -> SuiteResult {
    let start = Instant::now();
    let groups = groups_up_to_order_8();
    let out = par_map(&groups, |(name, g)| {
        guarded(g, || {
            let mut v = Vec::new();
            let all: Vec<Element> = g.elements().collect();
            let series = group_series(g)?;
            let mut c = Commutators::new(g, config.limits);
            let one = Congruence::total(g.order());
            let derived = subgroup_commutator(g, &all, &all)?;
            let got = c.get(&[one.clone(), one.clone()])?;
            v.push(check(got == coset_congruence(g, &derived), g, || {
                format!("{name}: [1,1] = {} is not the derived-subgroup congruence", got.partition())
            }));
            // all pairs of normal subgroups
            let normals = normal_subgroups(g)?;
            for m in &normals {
                for n in &normals {
                    let expect = coset_congruence(g, &subgroup_commutator(g, m, n)?);
                    let got = c.get(&[coset_congruence(g, m), coset_congruence(g, n)])?;
                    v.push(check(got == expect, g, || {
                        format!("{name}: [α_M, α_N] = {} differs from α_[M,N]", got.partition())
                    }));
                }
            }
            // d-supernilpotent iff nilpotent of class ≤ d, for d + 1 within the arity cap
            for d in 1..config.limits.arity_cap {
                let classical = series.nilpotent_class.is_some_and(|k| k <= d);
                match c.total_power(d + 1) {
                    Ok(t) => v.push(check(t.is_identity() == classical, g, || {
                        format!(
                            "{name}: [1^{}] zero = {}, nilpotent class {:?}",
                            d + 1,
                            t.is_identity(),
                            series.nilpotent_class
                        )
                    })),
                    Err(Error::ResourceLimit { what, limit }) => {
                        v.push(Outcome::Skip(format!("{name}: arity {}: {what} exceeded {limit}", d + 1)));
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(v)
        })
    });
    collect(Suite::GroupReduct, out, Vec::new(), start)
}

fn monoid_checks(s: &Semigroup, n: usize, with_2sn: bool, limits: &Limits) -> Result<Vec<Outcome>> {
    let mut c = Commutators::new(s, *limits);
    let zero = |x: &Congruence| x.is_identity();
    let left = zero(&c.series_term(SeriesKind::Left, n)?);
    let right_term = c.series_term(SeriesKind::Right, n)?;
    let right = zero(&right_term);
    let cancellative = is_cancellative(s);
    let nt = nt_embeddable(s, n)?;
    let cond1 = cancellative && right;
    let cond2 = left && right;
    let cond3 = nt.group_of_class_at_most_n;
    let mut v = vec![
        check(cond1 == cond2 && cond2 == cond3, s, || {
            format!("n={n}: cancellative∧right {cond1}, left∧right {cond2}, nilpotent group {cond3}")
        }),
        check(nt.embeddable == cond3, s, || {
            format!("n={n}: q_n embeddability {} vs nilpotent group {cond3}", nt.embeddable)
        }),
    ];
    let rho = rho_n(s, n, crate::words::DEFAULT_SUBSTITUTION_CAP)?;
    v.push(check(rho.leq(&right_term), s, || {
        format!("n={n}: ρ_n = {} not below [1)^{}", rho.partition(), n + 1)
    }));
    let a = cancellative_closure(s, &rho);
    let b = cancellative_closure(s, &right_term);
    v.push(check(a == b, s, || {
        format!("n={n}: cancellative closures differ: {} vs {}", a.partition(), b.partition())
    }));
    if with_2sn {
        let sn = zero(&c.total_power(n + 1)?);
        v.push(check(sn == cond2, s, || {
            format!("n={n}: supernilpotent {sn} vs left∧right nilpotent {cond2}")
        }));
    }
    Ok(v)
}

fn monoid_suite(config: &VerifyConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let top = config.n_max.max(config.monoid_n1_order);
    let monoids = enumerate_up_to(top, Dedup::Iso, Filter::Monoid)?;
    let out = par_map(&monoids, |s| {
        let mut v = Vec::new();
        for n in 1..=2 {
            let in_range = if n == 1 { s.order() <= config.monoid_n1_order } else { s.order() <= config.n_max };
            if in_range {
                let with_2sn = s.order() <= config.n_max.min(4);
                v.extend(guarded(s, || monoid_checks(s, n, with_2sn, &config.limits)));
            }
        }
        v
    });
    let notes = vec![format!(
        "{} monoids; n=1 up to order {}, n=2 up to order {}",
        monoids.len(),
        config.monoid_n1_order,
        config.n_max
    )];
    Ok(collect(Suite::Monoid, out, notes, start))
}

fn free_suite(config: &VerifyConfig) -> SuiteResult {
    let start = Instant::now();
    let mut notes = Vec::new();
    let outcome = match free_rho_classes(2, 2, config.free_max_len, DEFAULT_WORD_CAP) {
        Err(Error::ResourceLimit { what, limit }) => vec![Outcome::Skip(format!("{what} exceeded {limit}"))],
        Err(e) => vec![fail(None, format!("error: {e}"))],
        Ok(classes) => {
            notes.push(format!(
                "{} classes up to length {}; letter counts and inversions separate classes: {}",
                classes.class_count(),
                config.free_max_len,
                classes.invariants_separate_classes()
            ));
            let show = |w: &[u8]| crate::words::word_to_string(w);
            let mut v: Vec<Outcome> = Vec::new();
            let lall = classes.lallement_violations();
            v.push(if lall.is_empty() {
                Outcome::Pass
            } else {
                fail(None, format!("class of {:?} has {} Lallement words", show(&lall[0].0), lall[0].1))
            });
            let inv = classes.invariant_violations();
            v.push(if inv.is_empty() {
                Outcome::Pass
            } else {
                fail(None, format!("{:?} and {:?} share a class but not invariants", show(&inv[0].0), show(&inv[0].1)))
            });
            let canc = classes.cancellation_failures();
            v.push(if canc.is_empty() {
                Outcome::Pass
            } else {
                fail(None, format!("cancellation fails: {:?}", canc[0]))
            });
            v
        }
    };
    match search_cancellation_failure(3, config.free_max_len, DEFAULT_WORD_CAP) {
        Ok(found) => notes.push(format!("three letters: {}", serde_json::to_string(&found).unwrap_or_default())),
        Err(e) => notes.push(format!("three letters: {e}")),
    }
    collect(Suite::Free, vec![outcome], notes, start)
}
