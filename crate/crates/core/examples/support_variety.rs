//! Support varieties from the annihilator of Ext(M, k) over k[z_1..z_c].

use qci::ffield::Field;
use qci::modrep::ModuleRep;
use qci::qalgebra::AlgebraSpec;
use qci::suppvar::{annihilator_ideal, support_variety_points, z_action_matrices, LiftRule};
use qci::verify::point_label;

fn main() -> qci::Result<()> {
    let f = Field::prime(5)?;
    let alg = AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4))?;
    let u = alg.u_lambda(&[f.one(), f.from_int(2)])?;
    let modules = [
        ("k", ModuleRep::simple(&alg)),
        ("A", ModuleRep::regular(&alg)),
        ("A u", ModuleRep::left_ideal(&alg, &u)?.0),
    ];
    for (name, m) in &modules {
        let ext = z_action_matrices(m, 12, LiftRule::Canonical)?;
        println!("{}: Ext dims {:?}, commuting: {}", name, ext.betti, ext.commutator_defects().is_empty());
        let ideal = annihilator_ideal(&ext, 8)?;
        for g in &ideal.generators {
            let terms: Vec<String> = g
                .terms
                .iter()
                .map(|(e, c)| format!("{}*z^{:?}", c.index(), e))
                .collect();
            println!("  generator {}", terms.join(" + "));
        }
        for level in [1, 2] {
            let pts = support_variety_points(&ideal, level)?;
            let shown: Vec<String> = pts.points.iter().map(|p| point_label(&pts.field, p)).collect();
            println!("  level {}: {} points {:?}", level, pts.len(), shown);
        }
        println!("  stabilized: {}", ideal.stabilized);
    }
    Ok(())
}
