//! The `qci` command line. Every command reads and writes the JSON formats of
//! [`crate::io`]; reports go to `--out` or, without it, to stdout.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::{Fe, Field};
use crate::io::{
    encode_matrix, encode_point, load_module, read_json, save_module, save_points,
    to_canonical_string, write_json, AlgebraJson, FieldJson, IdealJson, PointsJson,
    ResolutionJson,
};
use crate::modrep::{complexity_estimate, minimal_resolution};
use crate::qalgebra::AlgebraSpec;
use crate::rankvar::rank_variety;
use crate::suppvar::{explicit_monomorphism, k_zeta_tensor_simple, support_variety_ideal, support_variety_points};
use crate::verify::{
    analyze, build_catalog, configuration_summary, line_checks, point_label, run_suite,
    sample_points, sampling_algebra, single_entry, verify_avrunin_scott, verify_complexity,
    verify_perpendicular, verify_stable_map, verify_syzygy_pair, CheckRecord, Status, SuiteConfig,
    VerificationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qci", version, about = "Rank and support varieties for quantum complete intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe F_{p^e}: modulus, generator, order.
    Field {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Coefficients of the monic modulus, constant term first.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Build an algebra file A^c_q.
    Algebra {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        c: usize,
        /// Index of q in F_{p^e}; defaults to the first primitive a'-th root of unity.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Module file operations.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Minimal projective resolution.
    Resolve {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers and complexity.
    Betti {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
    /// Projective rank variety at each extension level.
    RankVariety {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        ext: Vec<u32>,
        /// With several levels, `.e<k>` is inserted before the extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Annihilator ideal of Ext(M, k) and its projective zero set.
    SupportVariety {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 12)]
        maxdeg: usize,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        ext: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The pullback module K_zeta (x) k for zeta = sum mu_i z_i.
    Kzeta {
        #[arg(long)]
        algebra: PathBuf,
        /// Element indices of mu.
        #[arg(long, value_delimiter = ',')]
        mu: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The explicit monomorphism A u_lambda -> K_zeta (x) k.
    Mono {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        mu: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one check or the whole suite.
    Verify {
        check: CheckKind,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Write the catalog modules of a configuration.
    Catalog {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModuleAction {
    /// Check the defining relations.
    Validate { path: PathBuf },
    /// Standard modules: simple, regular, ideal (needs --lambda), syzygy-of-simple.
    Make {
        #[arg(long)]
        algebra: PathBuf,
        kind: StandardModule,
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<u32>>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StandardModule {
    Simple,
    Regular,
    Ideal,
    Syzygy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    AvruninScott,
    StableMap,
    Line,
    Syzygy,
    Perp,
    Complexity,
    Suite,
}

#[derive(Debug, Args)]
pub struct VerifyOpts {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub module: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub ext: Option<Vec<u32>>,
    /// Element indices of lambda for `line` and `syzygy`; sampled when absent.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<u32>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit timings so reports are byte-identical across runs.
    #[arg(long)]
    pub deterministic: bool,
}

/// Sets the global rayon pool from `QCI_THREADS`, falling back to `fallback`.
pub fn init_threads(fallback: Option<usize>) -> Result<()> {
    let width = match std::env::var("QCI_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::InvalidConfig(format!("QCI_THREADS={:?} is not a positive integer", v)))?,
        ),
        Err(_) => fallback,
    };
    if let Some(n) = width {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn parse_elements(field: &Field, idx: &[u32]) -> Result<Vec<Fe>> {
    idx.iter()
        .map(|&i| field.element(i).ok_or(Error::BadElement(vec![i])))
        .collect()
}

fn emit(doc: &impl serde::Serialize, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write_json(doc, p),
        None => {
            print!("{}", to_canonical_string(doc));
            Ok(())
        }
    }
}

fn level_path(out: &Path, ext: u32, many: bool) -> PathBuf {
    if !many {
        return out.to_path_buf();
    }
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("points");
    let name = match out.extension().and_then(|s| s.to_str()) {
        Some(x) => format!("{}.e{}.{}", stem, ext, x),
        None => format!("{}.e{}", stem, ext),
    };
    out.with_file_name(name)
}

fn load_algebra(path: &Path) -> Result<AlgebraSpec> {
    read_json::<AlgebraJson>(path)?.to_algebra()
}

pub fn load_config(path: &Path) -> Result<SuiteConfig> {
    let cfg: SuiteConfig = read_json(path)?;
    cfg.validate()?;
    Ok(cfg)
}

fn report_lines(report: &VerificationReport) {
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        eprintln!("{} {} {}", tag, c.name, c.module);
    }
    let s = &report.summary;
    eprintln!("{} pass, {} fail, {} inconclusive", s.pass, s.fail, s.inconclusive);
}

fn run_verify(check: CheckKind, opts: &VerifyOpts) -> Result<i32> {
    let mut cfg = load_config(&opts.config)?;
    if let Some(ext) = &opts.ext {
        cfg.ext_degrees = ext.clone();
        cfg.validate()?;
    }
    init_threads(cfg.threads)?;
    let base = opts.config.parent().map(Path::to_path_buf);
    let report = if check == CheckKind::Suite {
        run_suite(&cfg, base.as_deref())?
    } else {
        let alg = cfg.algebra.to_algebra()?;
        let (sample, _) = sampling_algebra(&alg, cfg.min_sample_points)?;
        let records = single_check(check, &cfg, &alg, &sample, opts)?;
        VerificationReport::new(configuration_summary(&cfg, &alg, sample.field()), records)
    };
    let report = if opts.deterministic {
        report.without_timings()
    } else {
        report
    };
    report_lines(&report);
    emit(&report, opts.out.as_deref())?;
    Ok(report.exit_code())
}

fn single_check(
    check: CheckKind,
    cfg: &SuiteConfig,
    alg: &AlgebraSpec,
    sample: &AlgebraSpec,
    opts: &VerifyOpts,
) -> Result<Vec<CheckRecord>> {
    let module = || -> Result<_> {
        let path = opts
            .module
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig(format!("{:?} needs --module", check)))?;
        let m = load_module(path)?;
        if m.algebra() != alg && m.algebra() != sample {
            return Err(Error::InvalidConfig(format!(
                "{} is not over the configured algebra",
                path.display()
            )));
        }
        Ok((path.display().to_string(), m))
    };
    let lambdas = || -> Result<Vec<Vec<Fe>>> {
        match &opts.lambda {
            Some(l) => Ok(vec![parse_elements(sample.field(), l)?]),
            None => Ok(sample_points(sample.field(), sample.c(), cfg.line_samples, cfg.seed)),
        }
    };
    Ok(match check {
        CheckKind::AvruninScott => {
            let (id, m) = module()?;
            let an = analyze(&m, &cfg.ext_degrees, cfg.resolution_steps, cfg.degree_bound)?;
            vec![verify_avrunin_scott(&id, &an)]
        }
        CheckKind::StableMap => {
            let (id, m) = module()?;
            vec![verify_stable_map(&id, &m, &cfg.stable_map_ext)?]
        }
        CheckKind::Complexity => {
            let (id, m) = module()?;
            let an = analyze(&m, &cfg.ext_degrees, cfg.resolution_steps, cfg.degree_bound)?;
            vec![verify_complexity(&single_entry(&id, &m), &an, cfg.periodicity_bound)?]
        }
        CheckKind::Perp => {
            let (id, m) = module()?;
            let an = analyze(&m, &cfg.ext_degrees, cfg.resolution_steps, cfg.degree_bound)?;
            vec![verify_perpendicular(&id, &m, &an, &cfg.stable_map_ext)?]
        }
        CheckKind::Line => {
            let mut out = Vec::new();
            for l in lambdas()? {
                out.extend(line_checks(cfg, sample, &l)?.into_iter().filter(|r| r.name == "line"));
            }
            out
        }
        CheckKind::Syzygy => lambdas()?
            .iter()
            .map(|l| verify_syzygy_pair(&format!("Au{}", point_label(sample.field(), l)), sample, l))
            .collect::<Result<_>>()?,
        CheckKind::Suite => unreachable!("handled by run_suite"),
    })
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Field { p, e, modulus } => {
            let fj = FieldJson { p, e, modulus };
            let f = fj.to_field()?;
            emit(
                &json!({
                    "field": FieldJson::from_field(&f),
                    "order": f.order(),
                    "generator": f.coeffs(f.generator()),
                }),
                None,
            )?;
        }
        Command::Algebra { p, e, a, c, q, out } => {
            let f = FieldJson { p, e, modulus: None }.to_field()?;
            let alg = match q {
                Some(i) => {
                    let q = f.element(i).ok_or(Error::BadElement(vec![i]))?;
                    AlgebraSpec::new(f, a, c, q)?
                }
                None => AlgebraSpec::with_default_q(f, a, c)?,
            };
            let u = alg.unity();
            eprintln!(
                "dim {}, a' = {}, a/gcd(a,p) = {}{}",
                alg.dim(),
                u.a_prime,
                u.literal,
                if u.has_discrepancy() { " (differs)" } else { "" }
            );
            emit(&AlgebraJson::from_algebra(&alg), out.as_deref())?;
        }
        Command::Module { action } => match action {
            ModuleAction::Validate { path } => {
                let m = load_module(&path)?;
                println!("valid: dim {}", m.dim());
            }
            ModuleAction::Make {
                algebra,
                kind,
                lambda,
                n,
                out,
            } => {
                use crate::modrep::ModuleRep;
                let alg = load_algebra(&algebra)?;
                let m = match kind {
                    StandardModule::Simple => ModuleRep::simple(&alg),
                    StandardModule::Regular => ModuleRep::regular(&alg),
                    StandardModule::Ideal => {
                        let l = lambda.ok_or_else(|| Error::InvalidConfig("ideal needs --lambda".into()))?;
                        let l = parse_elements(alg.field(), &l)?;
                        ModuleRep::left_ideal(&alg, &alg.u_lambda(&l)?)?.0
                    }
                    StandardModule::Syzygy => minimal_resolution(&ModuleRep::simple(&alg), n).syzygy(n).clone(),
                };
                save_module(&m, &out)?;
            }
        },
        Command::Resolve { module, steps, out } => {
            let res = minimal_resolution(&load_module(&module)?, steps);
            emit(&ResolutionJson::from_resolution(&res), out.as_deref())?;
        }
        Command::Betti { module, steps } => {
            let res = minimal_resolution(&load_module(&module)?, steps);
            let complexity = complexity_estimate(&res.betti).ok();
            emit(&json!({"betti": res.betti, "complexity": complexity}), None)?;
        }
        Command::RankVariety { module, ext, out } => {
            init_threads(None)?;
            let m = load_module(&module)?;
            let many = ext.len() > 1;
            let mut docs = Vec::new();
            for &e in &ext {
                if e == 0 {
                    return Err(Error::InvalidConfig("extension degrees must be >= 1".into()));
                }
                let set = rank_variety(&m, e)?;
                eprintln!("level {}: {} of {} points", e, set.len(), set.enumerated);
                match &out {
                    Some(o) => save_points(&set, &level_path(o, e, many))?,
                    None => docs.push(PointsJson::from_points(&set)),
                }
            }
            if out.is_none() {
                emit(&docs, None)?;
            }
        }
        Command::SupportVariety {
            module,
            maxdeg,
            bound,
            ext,
            out,
        } => {
            init_threads(None)?;
            let m = load_module(&module)?;
            let ideal = support_variety_ideal(&m, maxdeg, bound)?;
            for &e in &ext {
                let pts = support_variety_points(&ideal, e)?;
                eprintln!("level {}: {} points", e, pts.len());
                for p in &pts.points {
                    eprintln!("  {}", point_label(&pts.field, p));
                }
            }
            emit(&IdealJson::from_ideal(&ideal), out.as_deref())?;
        }
        Command::Kzeta { algebra, mu, out } => {
            let alg = load_algebra(&algebra)?;
            let mu = parse_elements(alg.field(), &mu)?;
            let kz = k_zeta_tensor_simple(&alg, &mu)?;
            eprintln!("dim {}", kz.module.dim());
            match out {
                Some(o) => save_module(&kz.module, &o)?,
                None => emit(&crate::io::ModuleJson::from_module(&kz.module), None)?,
            }
        }
        Command::Mono {
            algebra,
            lambda,
            mu,
            out,
        } => {
            let alg = load_algebra(&algebra)?;
            let l = parse_elements(alg.field(), &lambda)?;
            let mu = parse_elements(alg.field(), &mu)?;
            let mono = explicit_monomorphism(&alg, &l, &mu)?;
            emit(
                &json!({
                    "lambda": encode_point(alg.field(), &l),
                    "mu": encode_point(alg.field(), &mu),
                    "sourceDim": mono.source.dim(),
                    "targetDim": mono.target.module.dim(),
                    "matrix": encode_matrix(alg.field(), &mono.matrix),
                }),
                out.as_deref(),
            )?;
        }
        Command::Verify { check, opts } => return run_verify(check, &opts),
        Command::Catalog { config, out } => {
            let cfg = load_config(&config)?;
            let alg = cfg.algebra.to_algebra()?;
            let (sample, emb) = sampling_algebra(&alg, cfg.min_sample_points)?;
            fs::create_dir_all(&out)?;
            let mut index = Vec::new();
            for entry in build_catalog(&cfg, &alg, &sample, &emb)? {
                let file = format!("{}.json", sanitize(&entry.id));
                save_module(&entry.module, &out.join(&file))?;
                index.push(json!({
                    "id": entry.id,
                    "file": file,
                    "dim": entry.module.dim(),
                    "expectedComplexity": entry.expected_complexity,
                }));
            }
            write_json(&index, &out.join("index.json"))?;
            eprintln!("{} modules written to {}", index.len(), out.display());
        }
    }
    Ok(EXIT_PASS)
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|ch| if ch.is_ascii_alphanumeric() || ch == '-' { ch } else { '_' })
        .collect()
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            if e.is_input_error() {
                EXIT_INVALID
            } else {
                EXIT_FAIL
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(run(["qci", "field", "--p", "5", "--bogus"]), EXIT_INVALID);
    }

    #[test]
    fn parses_rank_variety() {
        let cli = Cli::try_parse_from(["qci", "rank-variety", "--module", "M.json", "--ext", "2"]).unwrap();
        match cli.command {
            Command::RankVariety { ext, .. } => assert_eq!(ext, vec![2]),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn missing_file_is_invalid_input() {
        assert_eq!(run(["qci", "betti", "--module", "/nonexistent/M.json"]), EXIT_INVALID);
    }

    #[test]
    fn level_paths() {
        assert_eq!(level_path(Path::new("out/v.json"), 2, true), PathBuf::from("out/v.e2.json"));
        assert_eq!(level_path(Path::new("v.json"), 2, false), PathBuf::from("v.json"));
    }
}
