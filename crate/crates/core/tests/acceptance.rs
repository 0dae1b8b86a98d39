//! Acceptance gate: one PASS/FAIL line per criterion.

use std::time::Instant;

use qci::ffield::Field;
use qci::modrep::{minimal_resolution, ModuleRep};
use qci::qalgebra::AlgebraSpec;
use qci::verify::{
    analyze, build_catalog, inclusion_holds, random_module, sample_points, sampling_algebra,
    verify_avrunin_scott, verify_complexity, verify_line_variety, verify_perpendicular,
    verify_stable_map, verify_structure, Analysis, CatalogEntry, CheckRecord, EntryKind, Status,
    SuiteConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Config {
    name: &'static str,
    alg: AlgebraSpec,
    sample: AlgebraSpec,
    cfg: SuiteConfig,
    catalog: Vec<CatalogEntry>,
    analyses: Vec<Analysis>,
}

fn config(name: &'static str, p: u32, a: usize, c: usize, q: i64) -> Config {
    let f = Field::prime(p).unwrap();
    let q = f.from_int(q);
    let alg = AlgebraSpec::new(f, a, c, q).unwrap();
    let mut cfg = SuiteConfig::new(&alg);
    cfg.seed = 2024;
    let (sample, emb) = sampling_algebra(&alg, cfg.min_sample_points).unwrap();
    let catalog = build_catalog(&cfg, &alg, &sample, &emb).unwrap();
    Config {
        name,
        alg,
        sample,
        cfg,
        catalog,
        analyses: Vec::new(),
    }
}

/// Monomials of degree n in the Ext presentation of k, by enumeration.
fn ext_monomials(a: usize, c: usize, n: usize) -> usize {
    fn count(vars: &[usize], total: usize) -> usize {
        match vars.split_first() {
            None => (total == 0) as usize,
            Some((&w, rest)) => (0..=total / w).map(|e| count(rest, total - e * w)).sum(),
        }
    }
    if a == 2 {
        return count(&vec![1; c], n);
    }
    // exterior classes of degree 1 times polynomial classes of degree 2
    (0u32..1 << c)
        .filter(|m| m.count_ones() as usize <= n)
        .map(|m| {
            let rest = n - m.count_ones() as usize;
            if rest % 2 == 0 {
                count(&vec![1; c], rest / 2)
            } else {
                0
            }
        })
        .sum()
}

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, n: usize, ok: bool, summary: &str, problems: &[String]) {
        println!("{} criterion {}: {}", if ok { "PASS" } else { "FAIL" }, n, summary);
        for p in problems.iter().take(20) {
            println!("    {}", p);
        }
        if !ok {
            self.failed += 1;
        }
    }
}

fn describe(cfg: &str, r: &CheckRecord) -> String {
    let w: Vec<String> = r.witnesses.iter().take(3).map(|w| w.to_string()).collect();
    format!("{} {} {}: {:?} {}", cfg, r.name, r.module, r.status, w.join(" "))
}

fn main() {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    let mut gate = Gate { failed: 0 };
    let mut configs = vec![
        config("E1", 2, 2, 2, 1),
        config("E2", 5, 2, 2, 4),
        config("E3", 7, 3, 2, 2),
        config("C3", 5, 2, 3, 4),
    ];

    // 1: Avrunin-Scott equality on the catalog at levels 1 and 2
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut checked = 0;
    for c in &mut configs {
        for entry in &c.catalog {
            let an = analyze(&entry.module, &[1, 2], c.cfg.resolution_steps, c.cfg.degree_bound).unwrap();
            let r = verify_avrunin_scott(&entry.id, &an);
            checked += 1;
            if r.status != Status::Pass {
                problems.push(describe(c.name, &r));
            }
            c.analyses.push(an);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 300.0 {
        problems.push(format!("took {:.1}s, over 300s", secs));
    }
    gate.report(
        1,
        problems.is_empty(),
        &format!("F(V^r) = V_H on {} catalog modules at levels 1,2 in {:.1}s single-threaded", checked, secs),
        &problems,
    );

    // 2: stable-map equivalence at every point, E1-E3
    let mut problems = Vec::new();
    let mut checked = 0;
    for c in configs.iter().filter(|c| c.alg.c() == 2) {
        for entry in &c.catalog {
            let r = verify_stable_map(&entry.id, &entry.module, &[1, 2]).unwrap();
            checked += 1;
            if r.status != Status::Pass {
                problems.push(describe(c.name, &r));
            }
        }
    }
    gate.report(
        2,
        problems.is_empty(),
        &format!("three stable-map predicates agree at every point for {} modules in E1-E3, levels 1,2", checked),
        &problems,
    );

    // 3: V_H(A u_lambda) = {F(lambda)} for 5 sampled lambda
    let mut problems = Vec::new();
    let mut checked = 0;
    for c in &configs {
        for l in sample_points(c.sample.field(), c.alg.c(), 5, c.cfg.seed.wrapping_add(5)) {
            let (m, _) = ModuleRep::left_ideal(&c.sample, &c.sample.u_lambda(&l).unwrap()).unwrap();
            let an = analyze(&m, &[1, 2], c.cfg.resolution_steps, c.cfg.degree_bound).unwrap();
            let r = verify_line_variety("Au", &c.sample, &l, &an).unwrap();
            checked += 1;
            if r.status != Status::Pass {
                problems.push(describe(c.name, &r));
            }
        }
    }
    gate.report(
        3,
        problems.is_empty(),
        &format!("support variety of A u_lambda is the single point F(lambda) for {} samples at levels 1,2", checked),
        &problems,
    );

    // 4: Betti numbers of k against the Ext monomial count
    let mut problems = Vec::new();
    for c in &configs {
        let res = minimal_resolution(&ModuleRep::simple(&c.alg), 10);
        let expected: Vec<usize> = (0..=10).map(|n| ext_monomials(c.alg.a(), c.alg.c(), n)).collect();
        if res.betti != expected {
            problems.push(format!("{}: computed {:?}, expected {:?}", c.name, res.betti, expected));
        }
        if c.alg.c() == 2 && res.betti != (1..=11).collect::<Vec<_>>() {
            problems.push(format!("{}: b_n != n + 1", c.name));
        }
    }
    gate.report(4, problems.is_empty(), "b_n(k) for n <= 10 matches the Ext monomial count", &problems);

    // 5: variety dimension = complexity, ideals periodic with period <= 2
    let mut problems = Vec::new();
    let mut checked = 0;
    for c in &configs {
        for (entry, an) in c.catalog.iter().zip(&c.analyses) {
            let r = verify_complexity(entry, an, c.cfg.periodicity_bound).unwrap();
            checked += 1;
            if r.status != Status::Pass {
                problems.push(describe(c.name, &r));
            }
            if matches!(entry.kind, EntryKind::Ideal { .. }) {
                let period = r.details["period"].as_u64();
                if !period.is_some_and(|p| p <= 2) {
                    problems.push(format!("{} {}: period {:?}", c.name, entry.id, period));
                }
            }
        }
    }
    gate.report(
        5,
        problems.is_empty(),
        &format!("dimension = complexity = expected for {} catalog modules; A u_lambda periodic with period <= 2", checked),
        &problems,
    );

    // 6: structural invariants
    let mut problems = Vec::new();
    for c in &configs {
        let r = verify_structure(&c.cfg, &c.sample).unwrap();
        if r.status != Status::Pass {
            problems.push(describe(c.name, &r));
        }
        if r.details["monomorphismsAccepted"] != 10 || r.details["nonPerpendicularRejected"] != 10 {
            problems.push(format!("{}: {}", c.name, r.details));
        }
        for (entry, an) in c.catalog.iter().zip(&c.analyses) {
            let defects = an.ext.commutator_defects();
            if !defects.is_empty() {
                problems.push(format!("{} {}: Z_i Z_j != Z_j Z_i at {:?}", c.name, entry.id, defects));
            }
        }
    }
    gate.report(
        6,
        problems.is_empty(),
        "u^a = 0 (100 samples), Z commute, dim K_zeta = a^c, 10 monomorphisms built and 10 non-perpendicular pairs rejected per configuration",
        &problems,
    );

    // 7: perpendicular implication for T in E2 and E3
    let mut problems = Vec::new();
    let mut checked = 0;
    for c in configs.iter().filter(|c| c.name == "E2" || c.name == "E3") {
        for (entry, an) in c.catalog.iter().zip(&c.analyses).filter(|(e, _)| e.periodic_line) {
            match verify_perpendicular(&entry.id, &entry.module, an, &[1, 2]) {
                Ok(r) => {
                    checked += 1;
                    if r.status != Status::Pass {
                        problems.push(describe(c.name, &r));
                    }
                }
                Err(e) => problems.push(format!("{} {}: {}", c.name, entry.id, e)),
            }
        }
    }
    if checked < 2 {
        problems.push(format!("only {} T modules checked", checked));
    }
    gate.report(
        7,
        problems.is_empty(),
        "stHom(T, K_zeta) != 0 implies mu perpendicular to the line of T, every mu at levels 1,2 in E2 and E3",
        &problems,
    );

    // 8: the unconditional inclusion, also with a window too short to stabilize
    let mut problems = Vec::new();
    let mut checked = 0;
    let mut unstabilized = 0;
    for c in &configs {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        let mut modules: Vec<(String, ModuleRep)> = (0..20)
            .map(|k| (format!("random{}", k), random_module(&c.alg, &mut rng)))
            .collect();
        modules.extend(c.catalog.iter().map(|e| (e.id.clone(), e.module.clone())));
        for (id, m) in &modules {
            for (steps, bound) in [(12, 8), (8, 6)] {
                let an = analyze(m, &[1, 2], steps, bound).unwrap();
                checked += 1;
                if !an.ideal.stabilized {
                    unstabilized += 1;
                }
                if !inclusion_holds(&an) {
                    problems.push(format!("{} {} (N={}, D={}): inclusion fails", c.name, id, steps, bound));
                }
            }
        }
    }
    gate.report(
        8,
        problems.is_empty(),
        &format!(
            "F(V^r) inside V_H for {} runs (80 random modules plus catalogs, {} without stabilization)",
            checked, unstabilized
        ),
        &problems,
    );

    if gate.failed > 0 {
        println!("{} criteria failed", gate.failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
