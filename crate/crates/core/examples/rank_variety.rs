//! Rank varieties at several extension levels, and the a-th power map F.

use qci::ffield::Field;
use qci::modrep::{minimal_resolution, ModuleRep};
use qci::qalgebra::AlgebraSpec;
use qci::rankvar::{apply_f_set, dimension_estimate, f_image, rank_variety};
use qci::verify::point_label;

fn main() -> qci::Result<()> {
    let f = Field::prime(7)?;
    let alg = AlgebraSpec::new(f.clone(), 3, 2, f.from_int(2))?;
    let u = alg.u_lambda(&[f.one(), f.from_int(3)])?;
    let modules = [
        ("k", ModuleRep::simple(&alg)),
        ("A", ModuleRep::regular(&alg)),
        ("A u", ModuleRep::left_ideal(&alg, &u)?.0),
        ("Omega(k)", minimal_resolution(&ModuleRep::simple(&alg), 1).syzygy(1).clone()),
    ];
    for (name, m) in &modules {
        let mut counts = Vec::new();
        for ext in [1, 2] {
            let v = rank_variety(m, ext)?;
            let image = f_image(m, ext)?;
            let rational = apply_f_set(&v, alg.a());
            let shown: Vec<String> = v.points.iter().take(4).map(|p| point_label(&v.field, p)).collect();
            println!(
                "{:<9} level {}: |V^r| = {:>3} of {:>3} {:?}; |F(V^r) rational| = {}, |F-image| = {}",
                name,
                ext,
                v.len(),
                v.enumerated,
                shown,
                rational.len(),
                image.points.len()
            );
            counts.push((v.field.order() as u64, image.points.len() as u64));
        }
        println!("{:<9} dimension {}", name, dimension_estimate(&counts)?);
    }
    Ok(())
}
