//! The pullback module K_zeta (x) k, its hyperplane variety, and the explicit
//! monomorphism from A u_lambda when lambda is perpendicular to mu.

use qci::ffield::Field;
use qci::qalgebra::AlgebraSpec;
use qci::suppvar::{explicit_monomorphism, k_zeta_tensor_simple, support_variety_ideal, support_variety_points};
use qci::verify::{perp_pairing, point_label};

fn main() -> qci::Result<()> {
    let f = Field::prime(7)?;
    let alg = AlgebraSpec::new(f.clone(), 3, 2, f.from_int(2))?;
    let mu = [f.one(), f.from_int(6)];
    let kz = k_zeta_tensor_simple(&alg, &mu)?;
    println!("dim K_zeta (x) k = {} (a^c = {})", kz.module.dim(), alg.dim());

    let ideal = support_variety_ideal(&kz.module, 12, 8)?;
    let pts = support_variety_points(&ideal, 1)?;
    let shown: Vec<String> = pts.points.iter().map(|p| point_label(&pts.field, p)).collect();
    println!("support variety over F_7: {:?}", shown);

    for l in [[1, 1], [1, 3]] {
        let lambda = [f.from_int(l[0]), f.from_int(l[1])];
        let pairing = perp_pairing(&alg, &lambda, &mu);
        match explicit_monomorphism(&alg, &lambda, &mu) {
            Ok(m) => println!(
                "lambda {:?}: pairing {}, map {} -> {} of rank {}",
                l,
                pairing.index(),
                m.source.dim(),
                m.target.module.dim(),
                m.matrix.rank(&f)
            ),
            Err(e) => println!("lambda {:?}: pairing {}, rejected: {}", l, pairing.index(), e),
        }
    }
    Ok(())
}
