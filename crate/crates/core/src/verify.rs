//! The verification suite: every check compares two independently computed objects
//! and records concrete witnesses when they disagree.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, Field};
use crate::io::{encode_point, load_module, AlgebraJson, FieldJson};
use crate::modrep::{
    complexity_estimate, is_isomorphic, minimal_resolution, stable_hom_dim, FreeModule,
    IsoVerdict, ModuleRep, Resolution,
};
use crate::qalgebra::AlgebraSpec;
use crate::rankvar::{
    apply_f, apply_f_set, dimension_estimate, f_image, level_field, module_over,
    projective_point_count, projective_points, rank_form_non_projective, rank_variety,
    root_extension_degree,
    stable_map_check, FImage, ProjectivePointSet,
};
use crate::suppvar::{
    annihilator_ideal, explicit_monomorphism, k_zeta_tensor_simple, support_variety_points,
    z_action_from_resolution, AnnihilatorIdeal, ExtModuleData, LiftRule,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub algebra: AlgebraJson,
    #[serde(default = "default_ext")]
    pub ext_degrees: Vec<u32>,
    #[serde(default = "default_ext_one")]
    pub stable_map_ext: Vec<u32>,
    #[serde(default = "default_steps")]
    pub resolution_steps: usize,
    #[serde(default = "default_bound")]
    pub degree_bound: usize,
    #[serde(default = "default_lambda")]
    pub lambda_samples: usize,
    #[serde(default = "default_line")]
    pub line_samples: usize,
    #[serde(default = "default_mu")]
    pub mu_samples: usize,
    /// Samples are drawn from the smallest extension with this many projective points.
    #[serde(default = "default_min_points")]
    pub min_sample_points: u64,
    #[serde(default = "default_pairs")]
    pub monomorphism_pairs: usize,
    #[serde(default = "default_random_lambdas")]
    pub nilpotence_samples: usize,
    #[serde(default)]
    pub random_modules: usize,
    #[serde(default = "default_period")]
    pub periodicity_bound: usize,
    #[serde(default)]
    pub seed: u64,
    /// Extra module files, relative to the config file.
    #[serde(default)]
    pub modules: Vec<PathBuf>,
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_ext() -> Vec<u32> {
    vec![1, 2]
}
fn default_ext_one() -> Vec<u32> {
    vec![1]
}
fn default_steps() -> usize {
    12
}
fn default_bound() -> usize {
    8
}
fn default_lambda() -> usize {
    3
}
fn default_line() -> usize {
    5
}
fn default_mu() -> usize {
    2
}
fn default_min_points() -> u64 {
    5
}
fn default_pairs() -> usize {
    10
}
fn default_random_lambdas() -> usize {
    100
}
fn default_period() -> usize {
    12
}

impl SuiteConfig {
    pub fn new(algebra: &AlgebraSpec) -> SuiteConfig {
        SuiteConfig {
            name: None,
            algebra: AlgebraJson::from_algebra(algebra),
            ext_degrees: default_ext(),
            stable_map_ext: default_ext_one(),
            resolution_steps: default_steps(),
            degree_bound: default_bound(),
            lambda_samples: default_lambda(),
            line_samples: default_line(),
            mu_samples: default_mu(),
            min_sample_points: default_min_points(),
            monomorphism_pairs: default_pairs(),
            nilpotence_samples: default_random_lambdas(),
            random_modules: 0,
            periodicity_bound: default_period(),
            seed: 0,
            modules: Vec::new(),
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.ext_degrees.is_empty() || self.ext_degrees.contains(&0) {
            return bad("extDegrees must be a nonempty list of degrees >= 1".into());
        }
        if self.stable_map_ext.contains(&0) {
            return bad("stableMapExt degrees must be >= 1".into());
        }
        if self.resolution_steps < 8 {
            return bad(format!("resolutionSteps {} is below 8", self.resolution_steps));
        }
        if self.degree_bound % 2 != 0 || self.degree_bound == 0 {
            return bad(format!("degreeBound {} must be positive and even", self.degree_bound));
        }
        if self.degree_bound + 2 > self.resolution_steps {
            return bad(format!(
                "degreeBound {} needs resolutionSteps >= {}",
                self.degree_bound,
                self.degree_bound + 2
            ));
        }
        if self.periodicity_bound == 0 {
            return bad("periodicityBound must be >= 1".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be >= 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub name: String,
    pub module: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl CheckRecord {
    fn new(name: &str, module: &str, status: Status, witnesses: Vec<Value>, details: Value) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            module: module.into(),
            status,
            witnesses,
            details,
            millis: None,
        }
    }

    fn timed(mut self, start: Instant) -> CheckRecord {
        self.millis = Some(start.elapsed().as_millis() as u64);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfigurationSummary {
    pub name: Option<String>,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub a: usize,
    pub c: usize,
    pub q: Vec<u32>,
    pub a_prime: u64,
    pub a_prime_literal: u64,
    pub a_prime_discrepancy: bool,
    pub ext_degrees: Vec<u32>,
    pub resolution_steps: usize,
    pub degree_bound: usize,
    pub sampling_field: FieldJson,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub configuration: ConfigurationSummary,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(configuration: ConfigurationSummary, checks: Vec<CheckRecord>) -> VerificationReport {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        VerificationReport {
            configuration,
            checks,
            summary,
        }
    }

    /// 0 when everything passed, 1 on any failure, 3 when the only
    /// non-passing checks are inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            3
        } else {
            0
        }
    }

    pub fn without_timings(&self) -> VerificationReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = None;
        }
        r
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

pub fn configuration_summary(cfg: &SuiteConfig, alg: &AlgebraSpec, sampling: &Field) -> ConfigurationSummary {
    let f = alg.field();
    let u = alg.unity();
    ConfigurationSummary {
        name: cfg.name.clone(),
        p: f.p(),
        e: f.degree(),
        modulus: f.modulus().to_vec(),
        a: alg.a(),
        c: alg.c(),
        q: f.coeffs(alg.q()),
        a_prime: u.a_prime,
        a_prime_literal: u.literal,
        a_prime_discrepancy: u.has_discrepancy(),
        ext_degrees: cfg.ext_degrees.clone(),
        resolution_steps: cfg.resolution_steps,
        degree_bound: cfg.degree_bound,
        sampling_field: FieldJson::from_field(sampling),
        seed: cfg.seed,
    }
}

/// Human-readable point label: integers over prime fields, coefficient lists otherwise.
pub fn point_label(field: &Field, p: &[Fe]) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|&x| {
            if field.is_prime_field() {
                x.index().to_string()
            } else {
                format!("{:?}", field.coeffs(x))
            }
        })
        .collect();
    format!("({})", parts.join(","))
}

fn point_json(field: &Field, p: &[Fe]) -> Value {
    json!(encode_point(field, p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Simple,
    Regular,
    Ideal { lambda: Vec<Fe> },
    Syzygy { n: usize },
    KZeta { mu: Vec<Fe> },
    Sum,
    User,
    Random,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub module: ModuleRep,
    pub kind: EntryKind,
    pub expected_complexity: Option<usize>,
    /// Whether the entry is known to be indecomposable, which makes the
    /// periodicity equivalence applicable.
    pub indecomposable: bool,
    /// Set for modules of period one whose variety is a single line.
    pub periodic_line: bool,
}

/// The smallest extension of `alg`'s field with at least `min_points`
/// points in `P^{c-1}`, and the algebra over it.
pub fn sampling_algebra(alg: &AlgebraSpec, min_points: u64) -> Result<(AlgebraSpec, Embedding)> {
    for ext in 1..=16 {
        let (f, emb) = level_field(alg.field(), ext)?;
        if projective_point_count(f.order() as u64, alg.c()) >= min_points {
            let sampled = if ext == 1 {
                alg.clone()
            } else {
                alg.base_change(&emb)?
            };
            return Ok((sampled, emb));
        }
    }
    Err(Error::ExtensionUnavailable(0))
}

/// `count` distinct normalized points, drawn by a seeded shuffle.
pub fn sample_points(field: &Field, c: usize, count: usize, seed: u64) -> Vec<Vec<Fe>> {
    let mut pts = projective_points(field, c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pts.shuffle(&mut rng);
    pts.truncate(count);
    pts
}

pub fn random_vector(field: &Field, len: usize, rng: &mut impl Rng) -> Vec<Fe> {
    (0..len)
        .map(|_| field.element(rng.gen_range(0..field.order())).unwrap())
        .collect()
}

pub fn random_nonzero(field: &Field, len: usize, rng: &mut impl Rng) -> Vec<Fe> {
    loop {
        let v = random_vector(field, len, rng);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// `sum mu_i lambda_i^a`.
pub fn perp_pairing(alg: &AlgebraSpec, lambda: &[Fe], mu: &[Fe]) -> Fe {
    let f = alg.field();
    lambda
        .iter()
        .zip(mu)
        .fold(Fe::ZERO, |acc, (&l, &m)| f.add(acc, f.mul(m, f.pow(l, alg.a() as u64))))
}

/// A random nonzero `mu` with `sum mu_i lambda_i^a = 0`.
pub fn random_perpendicular(alg: &AlgebraSpec, lambda: &[Fe], rng: &mut impl Rng) -> Vec<Fe> {
    let f = alg.field();
    let a = alg.a() as u64;
    let lead = lambda.iter().position(|x| !x.is_zero()).expect("lambda is nonzero");
    loop {
        let mut mu = random_vector(f, lambda.len(), rng);
        mu[lead] = Fe::ZERO;
        let rest = perp_pairing(alg, lambda, &mu);
        mu[lead] = f.neg(f.div(rest, f.pow(lambda[lead], a)));
        if mu.iter().any(|x| !x.is_zero()) {
            return mu;
        }
    }
}

/// A random module: a submodule of a small free module generated by random
/// vectors, or the quotient by one.
pub fn random_module(alg: &AlgebraSpec, rng: &mut impl Rng) -> ModuleRep {
    let f = alg.field();
    loop {
        let rank = rng.gen_range(1..=2);
        let free = FreeModule::new(alg, rank).as_module();
        let gens = rng.gen_range(1..=2);
        let vectors: Vec<Vec<Fe>> = (0..gens)
            .map(|_| {
                let mut v = random_vector(f, free.dim(), rng);
                // keep generators in the radical so the result is not free
                for b in 0..rank {
                    v[b * alg.dim()] = Fe::ZERO;
                }
                v
            })
            .collect();
        let sub = free.generated_by(&vectors);
        if sub.dim() == 0 || sub.dim() == free.dim() {
            continue;
        }
        let m = if rng.gen_bool(0.5) {
            free.submodule(&sub).expect("generated subspaces are invariant")
        } else {
            free.quotient(&sub).expect("generated subspaces are invariant")
        };
        if m.dim() > 0 {
            return m;
        }
    }
}

/// The fixed catalog: `k`, `A`, `A u_lambda` for sampled `lambda`,
/// `Omega^n(k)` for `n <= 3`, `K_zeta (x) k` for sampled `mu`, and two sums:
/// `T = A u_lambda + A u_lambda^{a-1}` and `Omega(k) + A u_lambda'`.
pub fn build_catalog(cfg: &SuiteConfig, alg: &AlgebraSpec, sample: &AlgebraSpec, emb: &Embedding) -> Result<Vec<CatalogEntry>> {
    let c = alg.c();
    let sf = sample.field();
    let lambdas = sample_points(sf, c, cfg.lambda_samples.max(1), cfg.seed);
    let mus = sample_points(sf, c, cfg.mu_samples, cfg.seed.wrapping_add(1));
    let mut out = vec![
        CatalogEntry {
            id: "k".into(),
            module: ModuleRep::simple(alg),
            kind: EntryKind::Simple,
            expected_complexity: Some(c),
            indecomposable: true,
            periodic_line: false,
        },
        CatalogEntry {
            id: "A".into(),
            module: ModuleRep::regular(alg),
            kind: EntryKind::Regular,
            expected_complexity: Some(0),
            indecomposable: true,
            periodic_line: false,
        },
    ];
    let mut ideals = Vec::new();
    for l in lambdas.iter().take(cfg.lambda_samples) {
        let (m, _) = ModuleRep::left_ideal(sample, &sample.u_lambda(l)?)?;
        ideals.push(m.clone());
        out.push(CatalogEntry {
            id: format!("Au{}", point_label(sf, l)),
            module: m,
            kind: EntryKind::Ideal { lambda: l.clone() },
            expected_complexity: Some(1),
            indecomposable: true,
            periodic_line: false,
        });
    }
    let res = minimal_resolution(&ModuleRep::simple(alg), 3);
    for n in 1..=3 {
        out.push(CatalogEntry {
            id: format!("Omega{}(k)", n),
            module: res.syzygy(n).clone(),
            kind: EntryKind::Syzygy { n },
            expected_complexity: Some(c),
            indecomposable: true,
            periodic_line: false,
        });
    }
    for mu in &mus {
        let kz = k_zeta_tensor_simple(sample, mu)?;
        out.push(CatalogEntry {
            id: format!("Kzeta{}", point_label(sf, mu)),
            module: kz.module,
            kind: EntryKind::KZeta { mu: mu.clone() },
            expected_complexity: Some(c - 1),
            indecomposable: false,
            periodic_line: false,
        });
    }
    if let Some(l) = lambdas.first() {
        let u = sample.u_lambda(l)?;
        let (au, _) = ModuleRep::left_ideal(sample, &u)?;
        let (aup, _) = ModuleRep::left_ideal(sample, &sample.pow(&u, sample.a() - 1))?;
        out.push(CatalogEntry {
            id: format!("T{}", point_label(sf, l)),
            module: au.direct_sum(&aup)?,
            kind: EntryKind::Sum,
            expected_complexity: Some(1),
            indecomposable: false,
            periodic_line: true,
        });
    }
    let other = ideals.get(1).or(ideals.first());
    if let (Some(m), Some(l)) = (other, lambdas.get(1).or(lambdas.first())) {
        let omega = module_over(res.syzygy(1), emb)?;
        out.push(CatalogEntry {
            id: format!("Omega1(k)+Au{}", point_label(sf, l)),
            module: omega.direct_sum(m)?,
            kind: EntryKind::Sum,
            expected_complexity: Some(c),
            indecomposable: false,
            periodic_line: false,
        });
    }
    Ok(out)
}

/// Everything both sides of the comparison need at one extension level.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub ext: u32,
    pub order: u64,
    pub rank: ProjectivePointSet,
    pub naive_image: ProjectivePointSet,
    pub image: FImage,
    pub support: ProjectivePointSet,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub resolution: Resolution,
    pub ext: ExtModuleData,
    pub ideal: AnnihilatorIdeal,
    pub levels: Vec<LevelData>,
}

pub fn analyze(m: &ModuleRep, ext_degrees: &[u32], steps: usize, bound: usize) -> Result<Analysis> {
    let resolution = minimal_resolution(m, steps);
    let ext = z_action_from_resolution(&resolution, LiftRule::Canonical)?;
    let ideal = annihilator_ideal(&ext, bound)?;
    let a = m.algebra().a();
    let levels = ext_degrees
        .iter()
        .map(|&e| {
            let rank = rank_variety(m, e)?;
            let naive_image = apply_f_set(&rank, a);
            let image = f_image(m, e)?;
            let support = support_variety_points(&ideal, e)?;
            Ok(LevelData {
                ext: e,
                order: rank.field.order() as u64,
                rank,
                naive_image,
                image,
                support,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Analysis {
        resolution,
        ext,
        ideal,
        levels,
    })
}

/// `F(V^r(M)) = V_H(M)` at every level, plus both unconditional inclusions.
pub fn verify_avrunin_scott(id: &str, an: &Analysis) -> CheckRecord {
    let mut witnesses = Vec::new();
    let mut inclusion_failed = false;
    let mut missing = false;
    let mut levels = Vec::new();
    for lv in &an.levels {
        let f = &lv.support.field;
        for p in lv.naive_image.minus(&lv.support) {
            inclusion_failed = true;
            witnesses.push(json!({"extDegree": lv.ext, "kind": "rationalImageOutsideSupport", "point": point_json(f, &p)}));
        }
        for p in lv.image.points.minus(&lv.support) {
            inclusion_failed = true;
            witnesses.push(json!({"extDegree": lv.ext, "kind": "imageOutsideSupport", "point": point_json(f, &p)}));
        }
        for p in lv.support.minus(&lv.image.points) {
            missing = true;
            witnesses.push(json!({"extDegree": lv.ext, "kind": "supportOutsideImage", "point": point_json(f, &p)}));
        }
        levels.push(json!({
            "extDegree": lv.ext,
            "fieldOrder": lv.order,
            "rankPoints": lv.rank.len(),
            "rationalImagePoints": lv.naive_image.len(),
            "imagePoints": lv.image.points.len(),
            "supportPoints": lv.support.len(),
            "rootExtensionDegree": lv.image.root_degree,
        }));
    }
    let defects = an.ext.commutator_defects();
    for (i, j, n) in &defects {
        witnesses.push(json!({"kind": "zNotCommuting", "i": i + 1, "j": j + 1, "degree": n}));
    }
    let status = if inclusion_failed || !defects.is_empty() {
        Status::Fail
    } else if missing {
        if an.ideal.stabilized {
            Status::Fail
        } else {
            Status::Inconclusive
        }
    } else {
        Status::Pass
    };
    CheckRecord::new(
        "avrunin-scott",
        id,
        status,
        witnesses,
        json!({
            "levels": levels,
            "stabilized": an.ideal.stabilized,
            "certifiedDegree": an.ideal.certified_degree,
            "idealGenerators": an.ideal.generators.len(),
            "extGeneratorDegrees": an.ideal.generator_degrees,
            "betti": an.resolution.betti,
        }),
    )
}

/// Inclusion `F(V^r) <= V_H` only, on rational points and on the root-extension image.
pub fn inclusion_holds(an: &Analysis) -> bool {
    an.levels
        .iter()
        .all(|lv| lv.naive_image.is_subset(&lv.support) && lv.image.points.is_subset(&lv.support))
}

/// The three stable-map predicates agree at every enumerated point.
pub fn verify_stable_map(id: &str, m: &ModuleRep, exts: &[u32]) -> Result<CheckRecord> {
    let mut witnesses = Vec::new();
    let mut levels = Vec::new();
    for &e in exts {
        let (field, emb) = level_field(m.field(), e)?;
        let mm = module_over(m, &emb)?;
        let pts = projective_points(&field, m.algebra().c());
        let results: Vec<(bool, bool)> = pts
            .par_iter()
            .map(|p| {
                let s = stable_map_check(&mm, p)?;
                Ok((s.agree(), rank_form_non_projective(&mm, p)? == s.in_vr))
            })
            .collect::<Result<_>>()?;
        let mut rank_form = 0;
        for (p, (agree, form)) in pts.iter().zip(&results) {
            if !agree {
                let s = stable_map_check(&mm, p)?;
                witnesses.push(json!({"extDegree": e, "point": point_json(&field, p), "predicates": s}));
            }
            if !form {
                rank_form += 1;
            }
        }
        levels.push(json!({"extDegree": e, "points": pts.len(), "rankFormDisagreements": rank_form}));
    }
    let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
    Ok(CheckRecord::new("stable-map", id, status, witnesses, json!({"levels": levels})))
}

/// `V_H(A u_lambda)` is the single point `F(lambda)` at every level.
pub fn verify_line_variety(id: &str, alg: &AlgebraSpec, lambda: &[Fe], an: &Analysis) -> Result<CheckRecord> {
    if lambda.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    let mut witnesses = Vec::new();
    let mut levels = Vec::new();
    for lv in &an.levels {
        let (field, emb) = level_field(alg.field(), lv.ext)?;
        let l: Vec<Fe> = lambda.iter().map(|&x| emb.apply(x)).collect();
        let expected = apply_f(&field, alg.a(), &l);
        let support_ok = lv.support.points == vec![expected.clone()];
        let image_ok = lv.image.points.points == vec![expected.clone()];
        let normalized = crate::rankvar::normalize(&field, &l)?;
        let rank_is_line = lv.rank.points == vec![normalized];
        if !support_ok {
            witnesses.push(json!({
                "extDegree": lv.ext,
                "kind": "support",
                "expected": point_json(&field, &expected),
                "found": lv.support.points.iter().map(|p| point_json(&field, p)).collect::<Vec<_>>(),
            }));
        }
        if !image_ok {
            witnesses.push(json!({
                "extDegree": lv.ext,
                "kind": "image",
                "expected": point_json(&field, &expected),
                "found": lv.image.points.points.iter().map(|p| point_json(&field, p)).collect::<Vec<_>>(),
            }));
        }
        levels.push(json!({
            "extDegree": lv.ext,
            "supportPoint": point_json(&field, &expected),
            "rankVarietyIsSingleLine": rank_is_line,
            "rankPoints": lv.rank.len(),
        }));
    }
    let status = if witnesses.is_empty() {
        Status::Pass
    } else if an.ideal.stabilized {
        Status::Fail
    } else {
        Status::Inconclusive
    };
    Ok(CheckRecord::new("line", id, status, witnesses, json!({"levels": levels})))
}

fn combine(verdicts: &[IsoVerdict]) -> Status {
    if verdicts.iter().any(|v| *v == IsoVerdict::No) {
        Status::Fail
    } else if verdicts.iter().all(|v| *v == IsoVerdict::Yes) {
        Status::Pass
    } else {
        Status::Inconclusive
    }
}

/// `Omega(A u_lambda) = A u_lambda^{a-1}` and `Omega(A u_lambda^{a-1}) = A u_lambda`.
pub fn verify_syzygy_pair(id: &str, alg: &AlgebraSpec, lambda: &[Fe]) -> Result<CheckRecord> {
    if lambda.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    let u = alg.u_lambda(lambda)?;
    let (au, _) = ModuleRep::left_ideal(alg, &u)?;
    let (aup, _) = ModuleRep::left_ideal(alg, &alg.pow(&u, alg.a() - 1))?;
    let forward = is_isomorphic(&au.syzygy(), &aup)?;
    let backward = is_isomorphic(&aup.syzygy(), &au)?;
    let status = combine(&[forward, backward]);
    let witnesses = if status == Status::Pass {
        Vec::new()
    } else {
        vec![json!({"forward": forward, "backward": backward})]
    };
    Ok(CheckRecord::new(
        "syzygy",
        id,
        status,
        witnesses,
        json!({"dims": [au.dim(), aup.dim()], "forward": forward, "backward": backward}),
    ))
}

/// The smallest `n <= bound` with `Omega^n(M) = M`, and whether any test was inconclusive.
pub fn find_period(m: &ModuleRep, res: &Resolution, bound: usize) -> Result<(Option<usize>, bool)> {
    let mut inconclusive = false;
    let extra;
    let res = if res.betti.len() > bound {
        res
    } else {
        extra = minimal_resolution(m, bound);
        &extra
    };
    for n in 1..=bound {
        match is_isomorphic(res.syzygy(n), m)? {
            IsoVerdict::Yes => return Ok((Some(n), inconclusive)),
            IsoVerdict::Inconclusive => inconclusive = true,
            IsoVerdict::No => {}
        }
    }
    Ok((None, inconclusive))
}

/// Variety dimension equals complexity; for indecomposable entries, periodic
/// exactly when the dimension is 1.
pub fn verify_complexity(entry: &CatalogEntry, an: &Analysis, bound: usize) -> Result<CheckRecord> {
    // Rank-variety points are counted along the tower where the a-th roots
    // defining its components are rational.
    let alg = entry.module.algebra();
    let tower = root_extension_degree(alg.field().order() as u64, alg.unity().a_prime)?;
    let rank_counts: Vec<(u64, u64)> = an
        .levels
        .iter()
        .map(|lv| {
            let set = if tower == 1 {
                lv.rank.clone()
            } else {
                rank_variety(&entry.module, lv.ext * tower)?
            };
            Ok((set.field.order() as u64, set.len() as u64))
        })
        .collect::<Result<_>>()?;
    let counts: Vec<(u64, u64)> = an
        .levels
        .iter()
        .map(|lv| (lv.order, lv.image.points.len() as u64))
        .collect();
    let rank_dimension = dimension_estimate(&rank_counts)?;
    let dimension = dimension_estimate(&counts)?;
    let complexity = complexity_estimate(&an.resolution.betti)?;
    let mut witnesses = Vec::new();
    if rank_dimension != complexity {
        witnesses.push(json!({"kind": "rankDimensionVsComplexity", "dimension": rank_dimension, "complexity": complexity}));
    }
    if dimension != complexity {
        witnesses.push(json!({"kind": "dimensionVsComplexity", "dimension": dimension, "complexity": complexity}));
    }
    if let Some(exp) = entry.expected_complexity {
        if exp != complexity {
            witnesses.push(json!({"kind": "expectedComplexity", "expected": exp, "complexity": complexity}));
        }
    }
    let mut inconclusive = false;
    let mut period = None;
    if entry.indecomposable && dimension > 0 {
        let (p, inc) = find_period(&entry.module, &an.resolution, bound)?;
        period = p;
        let periodic = p.is_some();
        if matches!(entry.kind, EntryKind::Ideal { .. }) && p.map_or(true, |n| n > 2) && !inc {
            witnesses.push(json!({"kind": "idealPeriod", "period": p}));
        }
        if periodic != (dimension == 1) {
            if !periodic && inc {
                inconclusive = true;
            } else {
                witnesses.push(json!({"kind": "periodicity", "period": p, "dimension": dimension}));
            }
        }
    }
    let status = if !witnesses.is_empty() {
        Status::Fail
    } else if inconclusive {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    Ok(CheckRecord::new(
        "complexity",
        &entry.id,
        status,
        witnesses,
        json!({
            "rankCounts": rank_counts,
            "imageCounts": counts,
            "rankDimension": rank_dimension,
            "dimension": dimension,
            "complexity": complexity,
            "period": period,
        }),
    ))
}

/// For a period-one module with a single-line variety `l_alpha`:
/// `stHom(M, K_zeta (x) k) != 0` forces `sum alpha_i mu_i = 0` at every enumerated `mu`.
pub fn verify_perpendicular(id: &str, m: &ModuleRep, an: &Analysis, exts: &[u32]) -> Result<CheckRecord> {
    let first = an
        .levels
        .first()
        .ok_or_else(|| Error::NotPeriodicCatalogEntry(format!("{}: no variety data", id)))?;
    if first.support.len() != 1 {
        return Err(Error::NotPeriodicCatalogEntry(format!(
            "{}: support variety has {} points at the first level",
            id,
            first.support.len()
        )));
    }
    if is_isomorphic(&m.syzygy(), m)? != IsoVerdict::Yes {
        return Err(Error::NotPeriodicCatalogEntry(format!("{}: Omega(M) is not isomorphic to M", id)));
    }
    let alpha_base = first.support.points[0].clone();
    let base_field = &first.support.field;
    let mut witnesses = Vec::new();
    let mut levels = Vec::new();
    for &e in exts {
        let (field, emb) = level_field(m.field(), e)?;
        let to_level = Embedding::find(base_field, &field)?;
        let alpha: Vec<Fe> = alpha_base.iter().map(|&x| to_level.apply(x)).collect();
        let mm = module_over(m, &emb)?;
        let alg = mm.algebra().clone();
        let mus = projective_points(&field, alg.c());
        let results: Vec<(usize, bool)> = mus
            .par_iter()
            .map(|mu| {
                let kz = k_zeta_tensor_simple(&alg, mu)?;
                let sd = stable_hom_dim(&mm, &kz.module)?;
                let dot = alpha
                    .iter()
                    .zip(mu)
                    .fold(Fe::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
                Ok((sd, dot.is_zero()))
            })
            .collect::<Result<_>>()?;
        let mut nonzero = 0;
        for (mu, (sd, perp)) in mus.iter().zip(&results) {
            if *sd != 0 {
                nonzero += 1;
                if !perp {
                    witnesses.push(json!({"extDegree": e, "mu": point_json(&field, mu), "stableHomDim": sd}));
                }
            }
        }
        levels.push(json!({"extDegree": e, "points": mus.len(), "nonzeroStableHom": nonzero}));
    }
    let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
    Ok(CheckRecord::new(
        "perp",
        id,
        status,
        witnesses,
        json!({"alpha": point_json(base_field, &alpha_base), "levels": levels}),
    ))
}

/// Betti numbers of `k` from the presentation of `Ext*(k, k)`: polynomial in
/// `c` degree-one classes when `a = 2`, otherwise exterior in degree one
/// tensor polynomial in degree two.
pub fn betti_oracle(a: usize, c: usize, n: usize) -> u64 {
    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }
    let (c, n) = (c as u64, n as u64);
    if a == 2 {
        return binom(n + c - 1, c - 1);
    }
    (0..=c.min(n))
        .filter(|s| (n - s) % 2 == 0)
        .map(|s| binom(c, s) * binom((n - s) / 2 + c - 1, c - 1))
        .sum()
}

pub fn verify_betti(alg: &AlgebraSpec, steps: usize) -> CheckRecord {
    let res = minimal_resolution(&ModuleRep::simple(alg), steps);
    let expected: Vec<u64> = (0..=steps).map(|n| betti_oracle(alg.a(), alg.c(), n)).collect();
    let got: Vec<u64> = res.betti.iter().map(|&b| b as u64).collect();
    let status = if got == expected { Status::Pass } else { Status::Fail };
    let witnesses = if status == Status::Pass {
        Vec::new()
    } else {
        vec![json!({"expected": expected, "computed": got})]
    };
    CheckRecord::new("betti", "k", status, witnesses, json!({"betti": got}))
}

/// `u_lambda^a = 0`, `dim K_zeta = a^c`, and the explicit monomorphism on
/// perpendicular pairs (and its rejection of non-perpendicular ones).
pub fn verify_structure(cfg: &SuiteConfig, sample: &AlgebraSpec) -> Result<CheckRecord> {
    let f = sample.field();
    let c = sample.c();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(17));
    let mut witnesses = Vec::new();
    for _ in 0..cfg.nilpotence_samples {
        let l = random_vector(f, c, &mut rng);
        let u = sample.u_lambda(&l)?;
        if !sample.pow(&u, sample.a()).is_zero() {
            witnesses.push(json!({"kind": "uLambdaPower", "lambda": point_json(f, &l)}));
        }
    }
    let mut kz_dims = Vec::new();
    for mu in projective_points(f, c).iter().take(16) {
        let d = k_zeta_tensor_simple(sample, mu)?.module.dim();
        kz_dims.push(d);
        if d != sample.dim() {
            witnesses.push(json!({"kind": "kZetaDim", "mu": point_json(f, mu), "dim": d}));
        }
    }
    let mut accepted = 0;
    for _ in 0..cfg.monomorphism_pairs {
        let l = random_nonzero(f, c, &mut rng);
        let mu = random_perpendicular(sample, &l, &mut rng);
        match explicit_monomorphism(sample, &l, &mu) {
            Ok(_) => accepted += 1,
            Err(e) => witnesses.push(json!({
                "kind": "monomorphism",
                "lambda": point_json(f, &l),
                "mu": point_json(f, &mu),
                "error": e.to_string(),
            })),
        }
    }
    let mut rejected = 0;
    for _ in 0..cfg.monomorphism_pairs {
        let l = random_nonzero(f, c, &mut rng);
        let mu = loop {
            let mu = random_nonzero(f, c, &mut rng);
            if !perp_pairing(sample, &l, &mu).is_zero() {
                break mu;
            }
        };
        match explicit_monomorphism(sample, &l, &mu) {
            Err(Error::PerpViolation(_)) => rejected += 1,
            _ => witnesses.push(json!({
                "kind": "notRejected",
                "lambda": point_json(f, &l),
                "mu": point_json(f, &mu),
            })),
        }
    }
    let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
    Ok(CheckRecord::new(
        "structure",
        "A",
        status,
        witnesses,
        json!({
            "nilpotenceSamples": cfg.nilpotence_samples,
            "kZetaDims": kz_dims,
            "monomorphismsAccepted": accepted,
            "nonPerpendicularRejected": rejected,
        }),
    ))
}

fn failed_record(name: &str, id: &str, err: &Error) -> CheckRecord {
    CheckRecord::new(name, id, Status::Fail, vec![json!({"error": err.to_string()})], Value::Null)
}

fn entry_checks(cfg: &SuiteConfig, entry: &CatalogEntry) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let start = Instant::now();
    let an = analyze(&entry.module, &cfg.ext_degrees, cfg.resolution_steps, cfg.degree_bound)?;
    out.push(verify_avrunin_scott(&entry.id, &an).timed(start));
    let start = Instant::now();
    out.push(verify_stable_map(&entry.id, &entry.module, &cfg.stable_map_ext)?.timed(start));
    if cfg.ext_degrees.len() >= 2 {
        let start = Instant::now();
        out.push(verify_complexity(entry, &an, cfg.periodicity_bound)?.timed(start));
    }
    if let EntryKind::Ideal { lambda } = &entry.kind {
        let start = Instant::now();
        out.push(verify_line_variety(&entry.id, entry.module.algebra(), lambda, &an)?.timed(start));
        let start = Instant::now();
        out.push(verify_syzygy_pair(&entry.id, entry.module.algebra(), lambda)?.timed(start));
    }
    if entry.periodic_line {
        let start = Instant::now();
        out.push(verify_perpendicular(&entry.id, &entry.module, &an, &cfg.stable_map_ext)?.timed(start));
    }
    Ok(out)
}

/// The line and syzygy checks for `A u_lambda`, outside the catalog.
pub fn line_checks(cfg: &SuiteConfig, alg: &AlgebraSpec, lambda: &[Fe]) -> Result<Vec<CheckRecord>> {
    let id = format!("Au{}", point_label(alg.field(), lambda));
    let (m, _) = ModuleRep::left_ideal(alg, &alg.u_lambda(lambda)?)?;
    let start = Instant::now();
    let an = analyze(&m, &cfg.ext_degrees, cfg.resolution_steps, cfg.degree_bound)?;
    Ok(vec![
        verify_line_variety(&id, alg, lambda, &an)?.timed(start),
        verify_syzygy_pair(&id, alg, lambda)?,
    ])
}

/// Runs the catalog (plus user and random modules) through every applicable check.
pub fn run_suite(cfg: &SuiteConfig, base_dir: Option<&Path>) -> Result<VerificationReport> {
    cfg.validate()?;
    let alg = cfg.algebra.to_algebra()?;
    let (sample, emb) = sampling_algebra(&alg, cfg.min_sample_points)?;
    let mut catalog = build_catalog(cfg, &alg, &sample, &emb)?;
    for (k, path) in cfg.modules.iter().enumerate() {
        let full = match base_dir {
            Some(d) if path.is_relative() => d.join(path),
            _ => path.clone(),
        };
        let m = load_module(&full)?;
        if m.algebra() != &alg {
            return Err(Error::InvalidConfig(format!(
                "{} is over a different algebra than the configuration",
                full.display()
            )));
        }
        catalog.push(CatalogEntry {
            id: format!("user{}:{}", k, path.display()),
            module: m,
            kind: EntryKind::User,
            expected_complexity: None,
            indecomposable: false,
            periodic_line: false,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(99));
    for k in 0..cfg.random_modules {
        catalog.push(CatalogEntry {
            id: format!("random{}", k),
            module: random_module(&alg, &mut rng),
            kind: EntryKind::Random,
            expected_complexity: None,
            indecomposable: false,
            periodic_line: false,
        });
    }
    let mut checks = vec![verify_betti(&alg, cfg.resolution_steps.min(10))];
    let start = Instant::now();
    checks.push(match verify_structure(cfg, &sample) {
        Ok(r) => r.timed(start),
        Err(e) => failed_record("structure", "A", &e),
    });
    let per_entry: Vec<Vec<CheckRecord>> = catalog
        .par_iter()
        .map(|entry| match entry_checks(cfg, entry) {
            Ok(v) => v,
            Err(e) => vec![failed_record("analysis", &entry.id, &e)],
        })
        .collect();
    checks.extend(per_entry.into_iter().flatten());
    let extra: Vec<Vec<Fe>> = sample_points(sample.field(), alg.c(), cfg.line_samples, cfg.seed)
        .into_iter()
        .skip(cfg.lambda_samples)
        .collect();
    let line_checks: Vec<Vec<CheckRecord>> = extra
        .par_iter()
        .map(|l| {
            let id = format!("Au{}", point_label(sample.field(), l));
            line_checks(cfg, &sample, l).unwrap_or_else(|e| vec![failed_record("line", &id, &e)])
        })
        .collect();
    checks.extend(line_checks.into_iter().flatten());
    Ok(VerificationReport::new(
        configuration_summary(cfg, &alg, sample.field()),
        checks,
    ))
}

/// Builds the single-entry configuration used by the individual CLI checks.
pub fn single_entry(id: &str, m: &ModuleRep) -> CatalogEntry {
    CatalogEntry {
        id: id.into(),
        module: m.clone(),
        kind: EntryKind::User,
        expected_complexity: None,
        indecomposable: false,
        periodic_line: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2() -> AlgebraSpec {
        let f = Field::prime(5).unwrap();
        AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4)).unwrap()
    }

    #[test]
    fn betti_counts() {
        assert_eq!((0..6).map(|n| betti_oracle(2, 2, n)).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!((0..6).map(|n| betti_oracle(3, 2, n)).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(betti_oracle(2, 3, 2), 6);
        assert_eq!(betti_oracle(3, 3, 2), 6);
        assert_eq!(betti_oracle(3, 3, 3), 10);
    }

    #[test]
    fn avrunin_scott_on_basic_modules() {
        let alg = e2();
        let (ax1, _) = ModuleRep::left_ideal(&alg, &alg.x(0)).unwrap();
        for m in [ModuleRep::simple(&alg), ModuleRep::regular(&alg), ax1] {
            let an = analyze(&m, &[1, 2], 12, 8).unwrap();
            let r = verify_avrunin_scott("m", &an);
            assert_eq!(r.status, Status::Pass, "{:?}", r);
        }
    }

    #[test]
    fn perpendicular_sampling() {
        let alg = e2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let l = random_nonzero(alg.field(), 2, &mut rng);
            let mu = random_perpendicular(&alg, &l, &mut rng);
            assert!(perp_pairing(&alg, &l, &mu).is_zero());
        }
    }

    #[test]
    fn discrepancy_flag() {
        let f = Field::prime(2).unwrap();
        let alg = AlgebraSpec::new(f, 4, 2, Fe::ONE).unwrap();
        let cfg = SuiteConfig::new(&alg);
        let s = configuration_summary(&cfg, &alg, alg.field());
        assert!(s.a_prime_discrepancy);
        assert_eq!((s.a_prime, s.a_prime_literal), (1, 2));
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig::new(&e2());
        assert!(cfg.validate().is_ok());
        cfg.degree_bound = 7;
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }
}
