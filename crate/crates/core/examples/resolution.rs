//! Minimal resolutions, Betti numbers, syzygies and complexity.

use qci::ffield::Field;
use qci::modrep::{complexity_estimate, is_isomorphic, minimal_resolution, ModuleRep};
use qci::qalgebra::AlgebraSpec;

fn main() -> qci::Result<()> {
    for (p, a, c) in [(5, 2, 2), (5, 2, 3), (7, 3, 2)] {
        let alg = AlgebraSpec::with_default_q(Field::prime(p)?, a, c)?;
        let res = minimal_resolution(&ModuleRep::simple(&alg), 10);
        println!(
            "a = {}, c = {}: betti(k) = {:?}, complexity {}",
            a,
            c,
            res.betti,
            complexity_estimate(&res.betti)?
        );
    }

    let f = Field::prime(5)?;
    let alg = AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4))?;
    let u = alg.u_lambda(&[f.one(), f.from_int(2)])?;
    let (au, _) = ModuleRep::left_ideal(&alg, &u)?;
    let res = minimal_resolution(&au, 12);
    println!("A u: dim {}, betti {:?}", au.dim(), res.betti);
    println!("Omega(A u) = A u: {:?}", is_isomorphic(&au.syzygy(), &au)?);

    // exactness: consecutive differentials compose to zero
    let d1 = res.expanded_differential(1);
    let d2 = res.expanded_differential(2);
    println!("d1 d2 = 0: {}", d1.mul(&f, &d2).is_zero());
    Ok(())
}
