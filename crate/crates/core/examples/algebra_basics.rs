//! The quantum complete intersection: PBW basis, q-commutation, and the
//! nilpotent linear forms u_lambda.

use qci::ffield::Field;
use qci::qalgebra::AlgebraSpec;

fn main() -> qci::Result<()> {
    let f = Field::prime(7)?;
    let alg = AlgebraSpec::new(f.clone(), 3, 2, f.from_int(2))?;
    println!("dim A = {}, socle monomial {:?}", alg.dim(), alg.exponents(alg.socle_index()));

    let (x1, x2) = (alg.x(0), alg.x(1));
    let lhs = alg.mul(&x1, &x2);
    let rhs = alg.scale(alg.q(), &alg.mul(&x2, &x1));
    println!("x1 x2 == q x2 x1: {}", lhs == rhs);
    println!("x1^3 == 0: {}", alg.pow(&x1, 3).is_zero());

    let lambda = [f.from_int(1), f.from_int(3)];
    let u = alg.u_lambda(&lambda)?;
    for k in 1..=3 {
        let nonzero = alg.pow(&u, k).coeffs().iter().filter(|c| !c.is_zero()).count();
        println!("u^{} has {} nonzero PBW coefficients", k, nonzero);
    }

    let right = alg.right_mul_matrix(&u);
    let left = alg.left_mul_matrix(&u);
    println!("rank of left/right multiplication by u: {} / {}", left.rank(&f), right.rank(&f));
    Ok(())
}
