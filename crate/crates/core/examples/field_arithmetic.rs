//! Arithmetic in F_{p^e}, roots of unity, and the tower of extension levels.

use qci::ffield::{compute_a_prime, default_field, Embedding, Field};

fn main() -> qci::Result<()> {
    let f = default_field(5, 2)?;
    println!("F_25 modulus {:?}, generator {:?}", f.modulus(), f.coeffs(f.generator()));

    let t = f.from_coeffs(&[0, 1])?;
    let s = f.add(t, f.one());
    println!("(t + 1)^-1 = {:?}", f.coeffs(f.inv(s)));
    println!("t has multiplicative order {:?}", f.mult_order(t));

    // square roots of 2 exist in F_25 but not in F_5
    let two = f.from_int(2);
    let roots: Vec<_> = f.roots(two, 2).into_iter().map(|r| f.coeffs(r)).collect();
    println!("sqrt(2) in F_25: {:?}", roots);
    println!("sqrt(2) in F_5: {:?}", Field::prime(5)?.roots(Field::prime(5)?.from_int(2), 2));

    let zeta = f.primitive_root_of_unity(8)?;
    println!("primitive 8th root of unity: {:?}", f.coeffs(zeta));

    let base = Field::prime(5)?;
    let emb = Embedding::find(&base, &f)?;
    println!("F_5 -> F_25 sends 3 to {:?}", f.coeffs(emb.apply(base.from_int(3))));

    // the order of q is the p'-part of a
    for (a, p) in [(2, 5), (4, 2), (6, 3), (3, 7)] {
        let u = compute_a_prime(a, p);
        println!(
            "a = {}, p = {}: a' = {}, a/gcd(a,p) = {}{}",
            a,
            p,
            u.a_prime,
            u.literal,
            if u.has_discrepancy() { "  (differ)" } else { "" }
        );
    }
    Ok(())
}
