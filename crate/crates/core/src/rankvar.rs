//! Rank varieties as sets of normalized projective points.
//!
//! A cone in `k^c` is stored through its projectivization: every point is a
//! nonzero tuple whose first nonzero coordinate is 1.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{default_field, gcd, Embedding, Fe, Field, MAX_FIELD_ORDER};
use crate::modrep::{stable_hom_dim, ModuleRep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePointSet {
    /// The field `F_{p^{e e'}}` the coordinates live in.
    pub field: Field,
    pub ext_degree: u32,
    pub c: usize,
    pub points: Vec<Vec<Fe>>,
    /// Number of points examined to produce the set.
    pub enumerated: u64,
}

impl ProjectivePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn keys(&self) -> BTreeSet<Vec<u32>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|x| x.index()).collect())
            .collect()
    }

    /// Membership of an already normalized point.
    pub fn contains(&self, point: &[Fe]) -> bool {
        self.points.iter().any(|p| p == point)
    }

    pub fn same_points(&self, other: &ProjectivePointSet) -> bool {
        self.field == other.field && self.keys() == other.keys()
    }

    /// Points of `self` missing from `other`.
    pub fn minus(&self, other: &ProjectivePointSet) -> Vec<Vec<Fe>> {
        let theirs = other.keys();
        self.points
            .iter()
            .filter(|p| !theirs.contains(&p.iter().map(|x| x.index()).collect::<Vec<_>>()))
            .cloned()
            .collect()
    }

    pub fn is_subset(&self, other: &ProjectivePointSet) -> bool {
        self.field == other.field && self.minus(other).is_empty()
    }
}

/// Scales a nonzero tuple so that its first nonzero coordinate is 1.
pub fn normalize(field: &Field, v: &[Fe]) -> Result<Vec<Fe>> {
    let lead = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroPoint)?;
    let s = field.inv(*lead);
    Ok(v.iter().map(|&x| field.mul(s, x)).collect())
}

/// All normalized points of `P^{c-1}(F)`, grouped by the position of the
/// leading 1 and then in element-index order with the first free coordinate
/// varying slowest.
pub fn projective_points(field: &Field, c: usize) -> Vec<Vec<Fe>> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    for lead in 0..c {
        let free = c - lead - 1;
        let count = q.pow(free as u32);
        for idx in 0..count {
            let mut p = vec![Fe::ZERO; c];
            p[lead] = Fe::ONE;
            let mut rest = idx;
            for slot in (lead + 1..c).rev() {
                p[slot] = field.element((rest % q) as u32).unwrap();
                rest /= q;
            }
            out.push(p);
        }
    }
    out
}

pub fn projective_point_count(q: u64, c: usize) -> u64 {
    (0..c as u32).map(|k| q.pow(k)).sum()
}

/// The field for extension level `ext` over `base`, with its embedding.
/// Level 1 is the base field itself.
pub fn level_field(base: &Field, ext: u32) -> Result<(Field, Embedding)> {
    if ext == 0 {
        return Err(Error::InvalidConfig("extension degrees start at 1".into()));
    }
    if ext == 1 {
        return Ok((base.clone(), Embedding::identity(base)));
    }
    let degree = base.degree() * ext;
    let order = (base.p() as u64).checked_pow(degree).unwrap_or(u64::MAX);
    if order > MAX_FIELD_ORDER {
        return Err(Error::ExtensionUnavailable(order));
    }
    let f = default_field(base.p(), degree)?;
    let emb = Embedding::find(base, &f)?;
    Ok((f, emb))
}

/// `M` over the field reached by `emb`.
pub fn module_over(m: &ModuleRep, emb: &Embedding) -> Result<ModuleRep> {
    if emb.src() == emb.dst() {
        return Ok(m.clone());
    }
    let alg = m.algebra().base_change(emb)?;
    m.base_change(&alg, emb)
}

fn check_point(m: &ModuleRep, lambda: &[Fe]) -> Result<()> {
    if lambda.len() != m.algebra().c() {
        return Err(Error::Shape(format!(
            "point has {} coordinates, algebra has {} generators",
            lambda.len(),
            m.algebra().c()
        )));
    }
    if lambda.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

/// Whether `M` fails to be free over `k[u_lambda]`:
/// `dim Ker U + dim Ker U^{a-1} > dim M`.
pub fn is_non_projective_point(m: &ModuleRep, lambda: &[Fe]) -> Result<bool> {
    check_point(m, lambda)?;
    let f = m.field();
    let d = m.dim();
    let u = m.linear_action(lambda);
    let r1 = u.rank(f);
    let a = m.algebra().a();
    let r2 = if a == 2 { r1 } else { u.pow(f, a - 1).rank(f) };
    Ok(r1 + r2 < d)
}

/// The image-rank form `a * rank U < (a - 1) * dim M`; agrees with
/// [`is_non_projective_point`] for every module.
pub fn rank_form_non_projective(m: &ModuleRep, lambda: &[Fe]) -> Result<bool> {
    check_point(m, lambda)?;
    let a = m.algebra().a();
    let r = m.linear_action(lambda).rank(m.field());
    Ok(a * r < (a - 1) * m.dim())
}

/// Points of `P^{c-1}(F_{Q})` in `V^r(M)`, `Q = |k|^ext`.
pub fn rank_variety(m: &ModuleRep, ext: u32) -> Result<ProjectivePointSet> {
    let (field, emb) = level_field(m.field(), ext)?;
    let mm = module_over(m, &emb)?;
    let c = m.algebra().c();
    let all = projective_points(&field, c);
    let enumerated = all.len() as u64;
    let keep: Vec<bool> = all
        .par_iter()
        .map(|p| is_non_projective_point(&mm, p).expect("normalized points are nonzero"))
        .collect();
    let points = all
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    Ok(ProjectivePointSet {
        field,
        ext_degree: ext,
        c,
        points,
        enumerated,
    })
}

/// Coordinatewise `a`-th power, renormalized. The leading coordinate stays nonzero.
pub fn apply_f(field: &Field, a: usize, point: &[Fe]) -> Vec<Fe> {
    let v: Vec<Fe> = point.iter().map(|&x| field.pow(x, a as u64)).collect();
    normalize(field, &v).expect("powers of a nonzero point are nonzero")
}

pub fn apply_f_set(set: &ProjectivePointSet, a: usize) -> ProjectivePointSet {
    let mut seen = BTreeSet::new();
    let mut points = Vec::new();
    for p in &set.points {
        let img = apply_f(&set.field, a, p);
        if seen.insert(img.iter().map(|x| x.index()).collect::<Vec<_>>()) {
            points.push(img);
        }
    }
    ProjectivePointSet {
        points,
        ..set.clone()
    }
}

/// Smallest `m` such that every element of `F_Q` is an `a`-th power in `F_{Q^m}`.
///
/// `x -> x^{p^s}` is bijective, so only the `p'`-part `a'` matters: the image
/// of `x -> x^{a'}` on `F_{Q^m}^*` has order `(Q^m - 1) / gcd(a', Q^m - 1)`.
pub fn root_extension_degree(q: u64, a_prime: u64) -> Result<u32> {
    let mut qm = q as u128;
    for m in 1..=64u32 {
        if qm > MAX_FIELD_ORDER as u128 {
            return Err(Error::ExtensionUnavailable(qm.min(u64::MAX as u128) as u64));
        }
        let n = (qm - 1) as u64;
        if n % (q - 1) == 0 && (n / gcd(a_prime, n)) % (q - 1) == 0 {
            return Ok(m);
        }
        qm *= q as u128;
    }
    Err(Error::ExtensionUnavailable(u64::MAX))
}

/// `F(V^r(M))` evaluated on the `F_Q`-points of `P^{c-1}`.
///
/// A rational point `alpha` belongs to the image when some `lambda` over the
/// algebraic closure with `F(lambda) = alpha` lies in `V^r(M)`. Such `lambda`
/// can be scaled to have leading coordinate 1, and then `lambda_j^a = alpha_j`,
/// so the candidates are finite and all live in the root extension.
#[derive(Clone, Debug)]
pub struct FImage {
    pub points: ProjectivePointSet,
    /// Degree of the root extension over the level field.
    pub root_degree: u32,
    /// Number of preimage candidates tested.
    pub candidates: u64,
}

pub fn f_image(m: &ModuleRep, ext: u32) -> Result<FImage> {
    let a = m.algebra().a();
    let (field, to_level) = level_field(m.field(), ext)?;
    let q = field.order() as u64;
    let root_degree = root_extension_degree(q, m.algebra().unity().a_prime)?;
    let (big, to_big) = if root_degree == 1 {
        (field.clone(), Embedding::identity(&field))
    } else {
        let degree = field.degree() * root_degree;
        let big = default_field(field.p(), degree)?;
        let emb = Embedding::find(&field, &big)?;
        (big, emb)
    };
    let mm = module_over(m, &to_level.then(&to_big))?;
    let c = m.algebra().c();
    let all = projective_points(&field, c);
    let enumerated = all.len() as u64;
    let results: Vec<(bool, u64)> = all
        .par_iter()
        .map(|alpha| {
            let lifted: Vec<Fe> = alpha.iter().map(|&x| to_big.apply(x)).collect();
            let options: Vec<Vec<Fe>> = lifted.iter().map(|&x| big.roots(x, a as u64)).collect();
            let lead = alpha.iter().position(|x| !x.is_zero()).unwrap();
            let mut tested = 0;
            let mut choice = vec![0usize; c];
            if options.iter().any(|o| o.is_empty()) {
                return (false, 0);
            }
            loop {
                let lambda: Vec<Fe> = (0..c)
                    .map(|j| if j == lead { Fe::ONE } else { options[j][choice[j]] })
                    .collect();
                tested += 1;
                if is_non_projective_point(&mm, &lambda).unwrap() {
                    return (true, tested);
                }
                // odometer over the non-leading coordinates
                let mut j = c;
                loop {
                    if j == 0 {
                        return (false, tested);
                    }
                    j -= 1;
                    if j == lead {
                        continue;
                    }
                    choice[j] += 1;
                    if choice[j] < options[j].len() {
                        break;
                    }
                    choice[j] = 0;
                }
            }
        })
        .collect();
    let candidates = results.iter().map(|r| r.1).sum();
    let points = all
        .into_iter()
        .zip(&results)
        .filter_map(|(p, r)| r.0.then_some(p))
        .collect();
    Ok(FImage {
        points: ProjectivePointSet {
            field,
            ext_degree: ext,
            c,
            points,
            enumerated,
        },
        root_degree,
        candidates,
    })
}

/// Cone dimension from point counts `(Q, n(Q))` at several extension levels.
///
/// Uses the largest pair of levels `Q, Q^2` and returns `1 + k` with
/// `Q^{2k-1} n(Q)^2 <= n(Q^2)^2 < Q^{2k+1} n(Q)^2`, i.e. `k` is the
/// nearest integer to `log_Q(n(Q^2) / n(Q))`.
pub fn dimension_estimate(counts: &[(u64, u64)]) -> Result<usize> {
    if counts.len() < 2 {
        return Err(Error::TooFewLevels);
    }
    if counts.iter().all(|&(_, n)| n == 0) {
        return Ok(0);
    }
    if counts.windows(2).all(|w| w[0].1 == w[1].1) {
        return Ok(1);
    }
    let pair = counts
        .iter()
        .rev()
        .find_map(|&(q, n1)| {
            counts
                .iter()
                .find(|&&(q2, _)| q2 as u128 == (q as u128) * (q as u128))
                .map(|&(_, n2)| (q, n1, n2))
        })
        .ok_or(Error::TooFewLevels)?;
    let (q, n1, n2) = (pair.0 as u128, pair.1 as u128, pair.2 as u128);
    if n2 == 0 {
        return Ok(0);
    }
    if n1 == 0 {
        // nothing rational at the lower level: compare against a single point
        return Ok(1 + nearest_log(n2 * n2, 1, q * q));
    }
    Ok(1 + nearest_log(n2 * n2, n1 * n1, q))
}

/// Largest `k >= 0` with `q^{2k-1} den <= num`, i.e. the nearest integer to
/// `log_q sqrt(num / den)` clamped at 0.
fn nearest_log(num: u128, den: u128, q: u128) -> usize {
    let mut k = 0;
    // q^{2k+1} den <= num  <=>  rounding passes k + 1/2
    let mut bound = den.saturating_mul(q);
    while bound <= num {
        k += 1;
        bound = bound.saturating_mul(q).saturating_mul(q);
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StableMapPredicates {
    pub in_vr: bool,
    pub stable_hom_au: bool,
    pub stable_hom_au_pow: bool,
}

impl StableMapPredicates {
    pub fn agree(&self) -> bool {
        self.in_vr == self.stable_hom_au && self.in_vr == self.stable_hom_au_pow
    }
}

/// The three equivalent conditions at `lambda`, with `lambda` over `M`'s field.
pub fn stable_map_check(m: &ModuleRep, lambda: &[Fe]) -> Result<StableMapPredicates> {
    check_point(m, lambda)?;
    let alg = m.algebra();
    let u = alg.u_lambda(lambda)?;
    let (au, _) = ModuleRep::left_ideal(alg, &u)?;
    let (au_pow, _) = ModuleRep::left_ideal(alg, &alg.pow(&u, alg.a() - 1))?;
    Ok(StableMapPredicates {
        in_vr: is_non_projective_point(m, lambda)?,
        stable_hom_au: stable_hom_dim(&au, m)? != 0,
        stable_hom_au_pow: stable_hom_dim(&au_pow, m)? != 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::AlgebraSpec;

    fn e2() -> AlgebraSpec {
        let f = Field::prime(5).unwrap();
        AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4)).unwrap()
    }

    fn pt(f: &Field, v: &[i64]) -> Vec<Fe> {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn point_enumeration() {
        let f = Field::prime(5).unwrap();
        let pts = projective_points(&f, 2);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], pt(&f, &[1, 0]));
        assert_eq!(pts[5], pt(&f, &[0, 1]));
        assert_eq!(projective_points(&f, 3).len() as u64, projective_point_count(5, 3));
    }

    #[test]
    fn non_projective_points() {
        let alg = e2();
        let f = alg.field().clone();
        let k = ModuleRep::simple(&alg);
        assert!(is_non_projective_point(&k, &pt(&f, &[1, 3])).unwrap());
        let reg = ModuleRep::regular(&alg);
        assert!(!is_non_projective_point(&reg, &pt(&f, &[1, 1])).unwrap());
        let (ax1, _) = ModuleRep::left_ideal(&alg, &alg.x(0)).unwrap();
        assert!(is_non_projective_point(&ax1, &pt(&f, &[1, 0])).unwrap());
        assert!(!is_non_projective_point(&ax1, &pt(&f, &[0, 1])).unwrap());
        assert!(matches!(
            is_non_projective_point(&ax1, &pt(&f, &[0, 0])),
            Err(Error::ZeroPoint)
        ));
    }

    #[test]
    fn varieties_of_basic_modules() {
        let alg = e2();
        let f = alg.field().clone();
        assert_eq!(rank_variety(&ModuleRep::simple(&alg), 1).unwrap().len(), 6);
        assert!(rank_variety(&ModuleRep::regular(&alg), 1).unwrap().is_empty());
        let (ax1, _) = ModuleRep::left_ideal(&alg, &alg.x(0)).unwrap();
        let v = rank_variety(&ax1, 1).unwrap();
        assert_eq!(v.points, vec![pt(&f, &[1, 0])]);
        let v2 = rank_variety(&ax1, 2).unwrap();
        assert_eq!(v2.enumerated, 26);
        assert_eq!(v2.len(), 1);
    }

    #[test]
    fn power_map() {
        let f = Field::prime(5).unwrap();
        assert_eq!(apply_f(&f, 2, &pt(&f, &[1, 2])), pt(&f, &[1, 4]));
        assert_eq!(apply_f(&f, 2, &pt(&f, &[1, 0])), pt(&f, &[1, 0]));
        let f4 = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let t = f4.generator();
        let img = apply_f(&f4, 2, &[Fe::ONE, t]);
        assert_eq!(img, vec![Fe::ONE, f4.add(t, Fe::ONE)]);
    }

    #[test]
    fn root_extensions() {
        assert_eq!(root_extension_degree(5, 2).unwrap(), 2);
        assert_eq!(root_extension_degree(25, 2).unwrap(), 2);
        assert_eq!(root_extension_degree(7, 3).unwrap(), 3);
        assert_eq!(root_extension_degree(4, 1).unwrap(), 1);
    }

    #[test]
    fn f_image_of_simple_is_everything() {
        let alg = e2();
        let img = f_image(&ModuleRep::simple(&alg), 1).unwrap();
        assert_eq!(img.points.len(), 6);
        assert_eq!(img.root_degree, 2);
        let naive = apply_f_set(&rank_variety(&ModuleRep::simple(&alg), 1).unwrap(), 2);
        assert_eq!(naive.len(), 4);
    }

    #[test]
    fn dimension_estimates() {
        assert_eq!(dimension_estimate(&[(5, 6), (25, 26)]).unwrap(), 2);
        assert_eq!(dimension_estimate(&[(5, 31), (25, 651)]).unwrap(), 3);
        assert_eq!(dimension_estimate(&[(2, 3), (4, 5)]).unwrap(), 2);
        assert_eq!(dimension_estimate(&[(5, 1), (25, 1)]).unwrap(), 1);
        assert_eq!(dimension_estimate(&[(5, 0), (25, 0)]).unwrap(), 0);
        assert_eq!(dimension_estimate(&[(5, 6), (25, 6)]).unwrap(), 1);
        assert!(matches!(dimension_estimate(&[(5, 6)]), Err(Error::TooFewLevels)));
    }

    #[test]
    fn stable_map_examples() {
        let alg = e2();
        let f = alg.field().clone();
        let k = ModuleRep::simple(&alg);
        for p in projective_points(&f, 2) {
            let s = stable_map_check(&k, &p).unwrap();
            assert!(s.in_vr && s.agree());
            let r = stable_map_check(&ModuleRep::regular(&alg), &p).unwrap();
            assert!(!r.in_vr && r.agree());
        }
        let (ax1, _) = ModuleRep::left_ideal(&alg, &alg.x(0)).unwrap();
        let s = stable_map_check(&ax1, &pt(&f, &[0, 1])).unwrap();
        assert_eq!(
            s,
            StableMapPredicates {
                in_vr: false,
                stable_hom_au: false,
                stable_hom_au_pow: false
            }
        );
    }
}
