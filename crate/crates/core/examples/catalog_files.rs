//! Writes the module catalog of a configuration to JSON files and reads it back.

use qci::ffield::Field;
use qci::io::{load_module, save_module, to_canonical_string, ModuleJson};
use qci::qalgebra::AlgebraSpec;
use qci::verify::{build_catalog, sampling_algebra, SuiteConfig};

fn main() -> qci::Result<()> {
    let f = Field::prime(2)?;
    let alg = AlgebraSpec::new(f, 2, 2, Field::prime(2)?.one())?;
    let cfg = SuiteConfig::new(&alg);
    let (sample, emb) = sampling_algebra(&alg, cfg.min_sample_points)?;
    println!("samples drawn over F_{}", sample.field().order());

    let dir = std::env::temp_dir().join("qci-catalog-example");
    std::fs::create_dir_all(&dir)?;
    for entry in build_catalog(&cfg, &alg, &sample, &emb)? {
        let path = dir.join(format!("{}.json", entry.id.replace(|c: char| !c.is_ascii_alphanumeric(), "_")));
        save_module(&entry.module, &path)?;
        let back = load_module(&path)?;
        let stable = to_canonical_string(&ModuleJson::from_module(&back)) == std::fs::read_to_string(&path)?;
        println!("{:<22} dim {:>2}  round-trip stable: {}", entry.id, back.dim(), stable);
    }
    println!("files in {}", dir.display());
    Ok(())
}
