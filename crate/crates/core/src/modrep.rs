//! Finite-dimensional left modules as tuples of action matrices.
//!
//! `X_i` is the matrix of `v -> x_i v` on column vectors, so the relations read
//! `X_i^a = 0` and `X_i X_j = q X_j X_i` for `i < j`. A PBW monomial
//! `x_1^{e_1} ... x_c^{e_c}` acts by `X_1^{e_1} ... X_c^{e_c}`.
//!
//! The algebra is local with simple module `k`, so projective modules are free
//! and projective covers are built from a basis of `M / rad M`.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, Field};
use crate::linalg::{Matrix, Subspace};
use crate::qalgebra::{AlgElement, AlgebraSpec};

#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: AlgebraSpec,
    dim: usize,
    mats: Vec<Matrix>,
    monomials: OnceLock<Vec<Matrix>>,
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.dim == other.dim && self.mats == other.mats
    }
}

impl Eq for ModuleRep {}

/// Vectors of the free module `A^rank`, stored as `rank` consecutive blocks of
/// PBW coordinates.
#[derive(Clone, Debug)]
pub struct FreeModule {
    algebra: AlgebraSpec,
    rank: usize,
}

impl FreeModule {
    pub fn new(algebra: &AlgebraSpec, rank: usize) -> FreeModule {
        FreeModule {
            algebra: algebra.clone(),
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rank * self.algebra.dim()
    }

    /// `m * v` for a basis monomial `m`, acting on every block.
    pub fn mono_act(&self, m: usize, v: &[Fe]) -> Vec<Fe> {
        let f = self.algebra.field();
        let d = self.algebra.dim();
        let mut out = vec![Fe::ZERO; v.len()];
        for (b, block) in v.chunks(d).enumerate() {
            for (n, &coef) in block.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                if let Some((k, s)) = self.algebra.mono_mul(m, n) {
                    let slot = &mut out[b * d + k];
                    *slot = f.add(*slot, f.mul(s, coef));
                }
            }
        }
        out
    }

    /// `x_i * v`.
    pub fn x_act(&self, i: usize, v: &[Fe]) -> Vec<Fe> {
        let f = self.algebra.field();
        let d = self.algebra.dim();
        let mut out = vec![Fe::ZERO; v.len()];
        for (b, block) in v.chunks(d).enumerate() {
            for (n, &coef) in block.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                if let Some((k, s)) = self.algebra.left_x(i, n) {
                    out[b * d + k] = f.mul(s, coef);
                }
            }
        }
        out
    }

    /// `u * v` for an arbitrary algebra element.
    pub fn act(&self, u: &AlgElement, v: &[Fe]) -> Vec<Fe> {
        let f = self.algebra.field();
        let mut out = vec![Fe::ZERO; v.len()];
        for (m, &c) in u.coeffs().iter().enumerate() {
            if !c.is_zero() {
                f.axpy(&mut out, c, &self.mono_act(m, v));
            }
        }
        out
    }

    pub fn split(&self, v: &[Fe]) -> Vec<AlgElement> {
        v.chunks(self.algebra.dim())
            .map(|b| AlgElement(b.to_vec()))
            .collect()
    }

    pub fn join(&self, parts: &[AlgElement]) -> Vec<Fe> {
        parts.iter().flat_map(|p| p.coeffs().iter().copied()).collect()
    }

    pub fn as_module(&self) -> ModuleRep {
        let regular = ModuleRep::regular(&self.algebra);
        let blocks: Vec<Vec<Matrix>> = (0..self.algebra.c())
            .map(|i| vec![regular.mats[i].clone(); self.rank])
            .collect();
        let mats = blocks
            .iter()
            .map(|bs| Matrix::block_diag(&bs.iter().collect::<Vec<_>>()))
            .collect();
        ModuleRep::from_parts(self.algebra.clone(), self.dim(), mats)
    }
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Rank of the free module `A^t`, i.e. `dim M / rad M`.
    pub rank: usize,
    /// Basis indices of `M` chosen as images of the free generators.
    pub top: Vec<usize>,
    /// `d x (t * dim A)` matrix of the epimorphism `A^t -> M`.
    pub epi: Matrix,
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    /// Linearly independent intertwiners, each `dim N x dim M`.
    pub basis: Vec<Matrix>,
    pub stable_dim: Option<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoVerdict {
    Yes,
    No,
    Inconclusive,
}

/// A minimal free resolution `... -> A^{b_1} -> A^{b_0} -> M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: ModuleRep,
    pub betti: Vec<usize>,
    /// `differentials[n-1][j]` is the image in `A^{b_{n-1}}` of the `j`-th
    /// generator of `A^{b_n}`, as `b_{n-1}` algebra elements.
    pub differentials: Vec<Vec<Vec<AlgElement>>>,
    /// `d x (b_0 dim A)` matrix of `A^{b_0} -> M`.
    pub augmentation: Matrix,
    /// `syzygies[n-1]` is `Omega^n(M)` with its kernel basis in `A^{b_{n-1}}`.
    pub syzygies: Vec<(ModuleRep, Subspace)>,
}

impl Resolution {
    pub fn algebra(&self) -> &AlgebraSpec {
        self.module.algebra()
    }

    /// Field-linear matrix of the `n`-th differential (`n >= 1`).
    pub fn expanded_differential(&self, n: usize) -> Matrix {
        let alg = self.algebra();
        let target = FreeModule::new(alg, self.betti[n - 1]);
        let mut cols = Vec::with_capacity(self.betti[n] * alg.dim());
        for image in &self.differentials[n - 1] {
            let v = target.join(image);
            for m in 0..alg.dim() {
                cols.push(target.mono_act(m, &v));
            }
        }
        Matrix::from_cols(&cols, target.dim())
    }

    pub fn syzygy(&self, n: usize) -> &ModuleRep {
        if n == 0 {
            &self.module
        } else {
            &self.syzygies[n - 1].0
        }
    }
}

impl ModuleRep {
    fn from_parts(algebra: AlgebraSpec, dim: usize, mats: Vec<Matrix>) -> ModuleRep {
        ModuleRep {
            algebra,
            dim,
            mats,
            monomials: OnceLock::new(),
        }
    }

    /// Checks shapes only; see [`ModuleRep::validate`] for the relations.
    pub fn from_matrices_unchecked(algebra: &AlgebraSpec, mats: Vec<Matrix>) -> Result<ModuleRep> {
        if mats.len() != algebra.c() {
            return Err(Error::Shape(format!(
                "expected {} action matrices, got {}",
                algebra.c(),
                mats.len()
            )));
        }
        let dim = mats.first().map_or(0, |m| m.rows());
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape("action matrices must be square of equal size".into()));
        }
        let order = algebra.field().order();
        if mats.iter().any(|m| m.data().iter().any(|x| x.index() >= order)) {
            return Err(Error::Shape("matrix entry outside the field".into()));
        }
        Ok(ModuleRep::from_parts(algebra.clone(), dim, mats))
    }

    /// Builds a module and rejects it unless every relation holds.
    pub fn new(algebra: &AlgebraSpec, mats: Vec<Matrix>) -> Result<ModuleRep> {
        let m = ModuleRep::from_matrices_unchecked(algebra, mats)?;
        let report = m.validate();
        if report.is_empty() {
            Ok(m)
        } else {
            Err(Error::Validation(report))
        }
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Lists every violated relation, generators numbered from 1.
    pub fn validate(&self) -> Vec<String> {
        let f = self.field();
        let a = self.algebra.a();
        let q = self.algebra.q();
        let mut out = Vec::new();
        for (i, x) in self.mats.iter().enumerate() {
            if !x.pow(f, a).is_zero() {
                out.push(format!("X{}^{} != 0", i + 1, a));
            }
        }
        for i in 0..self.mats.len() {
            for j in i + 1..self.mats.len() {
                let lhs = self.mats[i].mul(f, &self.mats[j]);
                let rhs = self.mats[j].mul(f, &self.mats[i]).scale(f, q);
                if lhs != rhs {
                    out.push(format!("X{} X{} != q X{} X{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
        }
        out
    }

    pub fn zero(algebra: &AlgebraSpec) -> ModuleRep {
        ModuleRep::from_parts(
            algebra.clone(),
            0,
            vec![Matrix::zeros(0, 0); algebra.c()],
        )
    }

    /// The simple module `k`: one dimension, every generator acting by zero.
    pub fn simple(algebra: &AlgebraSpec) -> ModuleRep {
        ModuleRep::from_parts(algebra.clone(), 1, vec![Matrix::zeros(1, 1); algebra.c()])
    }

    /// The left regular module.
    pub fn regular(algebra: &AlgebraSpec) -> ModuleRep {
        let mats = (0..algebra.c())
            .map(|i| algebra.left_mul_matrix(&algebra.x(i)))
            .collect();
        ModuleRep::from_parts(algebra.clone(), algebra.dim(), mats)
    }

    /// The left ideal `A u` with its basis (reduced echelon rows in PBW coordinates).
    pub fn left_ideal(algebra: &AlgebraSpec, u: &AlgElement) -> Result<(ModuleRep, Subspace)> {
        if u.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = algebra.field();
        let rows = algebra.right_mul_matrix(u).transpose();
        let span = Subspace::span(f, &rows);
        let module = ModuleRep::regular(algebra).submodule(&span)?;
        Ok((module, span))
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| Matrix::block_diag(&[x, y]))
            .collect();
        Ok(ModuleRep::from_parts(
            self.algebra.clone(),
            self.dim + other.dim,
            mats,
        ))
    }

    pub fn direct_sum_all(algebra: &AlgebraSpec, parts: &[&ModuleRep]) -> Result<ModuleRep> {
        parts
            .iter()
            .try_fold(ModuleRep::zero(algebra), |acc, m| acc.direct_sum(m))
    }

    /// Action matrices of every PBW monomial, indexed like the basis.
    pub fn monomial_actions(&self) -> &[Matrix] {
        self.monomials.get_or_init(|| {
            let f = self.field();
            let alg = &self.algebra;
            let mut out: Vec<Matrix> = Vec::with_capacity(alg.dim());
            out.push(Matrix::identity(self.dim));
            for m in 1..alg.dim() {
                let e = alg.exponents(m);
                // x^e = x_j * x^{e - delta_j} for the first j with e_j > 0
                let j = e.iter().position(|&x| x > 0).unwrap();
                let mut rest = e.to_vec();
                rest[j] -= 1;
                let prev = &out[alg.index_of(&rest)];
                out.push(self.mats[j].mul(f, prev));
            }
            out
        })
    }

    /// Matrix of `v -> u v`.
    pub fn action_matrix(&self, u: &AlgElement) -> Matrix {
        let f = self.field();
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (m, &c) in u.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = out.add(f, &self.monomial_actions()[m].scale(f, c));
            }
        }
        out
    }

    /// `sum lambda_i X_i`, without building monomial actions.
    pub fn linear_action(&self, lambda: &[Fe]) -> Matrix {
        let f = self.field();
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (x, &l) in self.mats.iter().zip(lambda) {
            if !l.is_zero() {
                out = out.add(f, &x.scale(f, l));
            }
        }
        out
    }

    /// Restriction to an invariant subspace.
    pub fn submodule(&self, sub: &Subspace) -> Result<ModuleRep> {
        let f = self.field();
        let mut mats = Vec::with_capacity(self.mats.len());
        for x in &self.mats {
            let mut cols = Vec::with_capacity(sub.dim());
            for k in 0..sub.dim() {
                let image = x.mul_vec(f, sub.vector(k));
                let c = sub.try_coords(f, &image).ok_or_else(|| {
                    Error::Shape("subspace is not invariant under the action".into())
                })?;
                cols.push(c);
            }
            mats.push(Matrix::from_cols(&cols, sub.dim()));
        }
        Ok(ModuleRep::from_parts(self.algebra.clone(), sub.dim(), mats))
    }

    /// `M / S` on the basis of unit vectors outside the selectors of `S`.
    pub fn quotient(&self, sub: &Subspace) -> Result<ModuleRep> {
        let f = self.field();
        let comp = sub.complement_indices();
        let mut mats = Vec::with_capacity(self.mats.len());
        for x in &self.mats {
            let mut cols = Vec::with_capacity(comp.len());
            for &j in &comp {
                let image = sub.reduce(f, &x.column(j));
                cols.push(comp.iter().map(|&s| image[s]).collect());
            }
            mats.push(Matrix::from_cols(&cols, comp.len()));
        }
        for (k, x) in self.mats.iter().enumerate() {
            for s in 0..sub.dim() {
                if !sub.contains(f, &x.mul_vec(f, sub.vector(s))) {
                    return Err(Error::Shape(format!(
                        "subspace is not invariant under X{}",
                        k + 1
                    )));
                }
            }
        }
        Ok(ModuleRep::from_parts(self.algebra.clone(), comp.len(), mats))
    }

    /// The submodule generated by the given vectors.
    pub fn generated_by(&self, vectors: &[Vec<Fe>]) -> Subspace {
        let f = self.field();
        let mut current = Subspace::span(f, &Matrix::from_rows(vectors, self.dim));
        loop {
            let mut rows = current.basis().row_vecs();
            for x in &self.mats {
                for k in 0..current.dim() {
                    rows.push(x.mul_vec(f, current.vector(k)));
                }
            }
            let next = Subspace::span(f, &Matrix::from_rows(&rows, self.dim));
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    /// The same module over a larger field.
    pub fn base_change(&self, target: &AlgebraSpec, emb: &Embedding) -> Result<ModuleRep> {
        if emb.src() != self.field() || emb.dst() != target.field() {
            return Err(Error::AlgebraMismatch);
        }
        let mats = self.mats.iter().map(|m| m.map(|x| emb.apply(x))).collect();
        Ok(ModuleRep::from_parts(target.clone(), self.dim, mats))
    }

    /// Basis indices complementing `rad M = sum im X_i`.
    fn top_indices(&self) -> Vec<usize> {
        let f = self.field();
        if self.dim == 0 {
            return Vec::new();
        }
        let stacked: Vec<Matrix> = self.mats.iter().map(|x| x.transpose()).collect();
        let rad = Subspace::span(f, &Matrix::vstack(&stacked.iter().collect::<Vec<_>>()));
        rad.complement_indices()
    }

    pub fn projective_cover(&self) -> ProjectiveCover {
        let top = self.top_indices();
        let alg = &self.algebra;
        let monos = self.monomial_actions();
        let mut cols = Vec::with_capacity(top.len() * alg.dim());
        for &t in &top {
            for m in 0..alg.dim() {
                cols.push(monos[m].column(t));
            }
        }
        ProjectiveCover {
            rank: top.len(),
            top,
            epi: Matrix::from_cols(&cols, self.dim),
        }
    }

    /// `Omega(M)`: the kernel of the projective cover, with its basis in `A^t`.
    pub fn syzygy_with_embedding(&self) -> (ModuleRep, Subspace, ProjectiveCover) {
        let cover = self.projective_cover();
        let (module, kernel) = kernel_module(&self.algebra, &cover);
        (module, kernel, cover)
    }

    pub fn syzygy(&self) -> ModuleRep {
        self.syzygy_with_embedding().0
    }

    pub fn is_zero_module(&self) -> bool {
        self.dim == 0
    }
}

/// Kernel of a cover epimorphism as a module, acting through the free module.
fn kernel_module(algebra: &AlgebraSpec, cover: &ProjectiveCover) -> (ModuleRep, Subspace) {
    let f = algebra.field();
    let free = FreeModule::new(algebra, cover.rank);
    let kernel = cover.epi.kernel(f);
    let mats = (0..algebra.c())
        .map(|i| {
            let cols: Vec<Vec<Fe>> = (0..kernel.dim())
                .map(|k| kernel.coords(&free.x_act(i, kernel.vector(k))))
                .collect();
            Matrix::from_cols(&cols, kernel.dim())
        })
        .collect();
    (
        ModuleRep::from_parts(algebra.clone(), kernel.dim(), mats),
        kernel,
    )
}

/// Cover of a module embedded in a free module, computed through the ambient action.
fn embedded_cover(algebra: &AlgebraSpec, module: &ModuleRep, embedding: &Subspace) -> ProjectiveCover {
    let top = module.top_indices();
    let free = FreeModule::new(algebra, embedding.ambient() / algebra.dim());
    let mut cols = Vec::with_capacity(top.len() * algebra.dim());
    for &t in &top {
        let v = embedding.vector(t);
        for m in 0..algebra.dim() {
            cols.push(embedding.coords(&free.mono_act(m, v)));
        }
    }
    ProjectiveCover {
        rank: top.len(),
        top,
        epi: Matrix::from_cols(&cols, module.dim()),
    }
}

/// Minimal resolution through `A^{b_steps}`.
pub fn minimal_resolution(module: &ModuleRep, steps: usize) -> Resolution {
    let alg = module.algebra().clone();
    let mut betti = Vec::with_capacity(steps + 1);
    let mut differentials = Vec::with_capacity(steps);
    let mut syzygies: Vec<(ModuleRep, Subspace)> = Vec::with_capacity(steps);
    let cover0 = module.projective_cover();
    betti.push(cover0.rank);
    let augmentation = cover0.epi.clone();
    let mut cover = cover0;
    for _ in 1..=steps {
        let (next, kernel) = kernel_module(&alg, &cover);
        let free = FreeModule::new(&alg, cover.rank);
        let next_cover = embedded_cover(&alg, &next, &kernel);
        differentials.push(
            next_cover
                .top
                .iter()
                .map(|&t| free.split(kernel.vector(t)))
                .collect(),
        );
        betti.push(next_cover.rank);
        syzygies.push((next, kernel));
        cover = next_cover;
    }
    Resolution {
        module: module.clone(),
        betti,
        differentials,
        augmentation,
        syzygies,
    }
}

/// Basis of `Hom_A(M, N)` as intertwiners `f X_i^M = X_i^N f`.
pub fn hom_basis(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(HomSpace {
            basis: Vec::new(),
            stable_dim: Some(0),
        });
    }
    let mut sys = Matrix::zeros(m.mats.len() * unknowns, unknowns);
    for (i, (xm, xn)) in m.mats.iter().zip(&n.mats).enumerate() {
        for r in 0..dn {
            for s in 0..dm {
                let row = i * unknowns + r * dm + s;
                for t in 0..dm {
                    let c = xm[(t, s)];
                    if !c.is_zero() {
                        let col = r * dm + t;
                        sys[(row, col)] = f.add(sys[(row, col)], c);
                    }
                }
                for u in 0..dn {
                    let c = xn[(r, u)];
                    if !c.is_zero() {
                        let col = u * dm + s;
                        sys[(row, col)] = f.sub(sys[(row, col)], c);
                    }
                }
            }
        }
    }
    let kernel = sys.kernel(f);
    let basis = (0..kernel.dim())
        .map(|k| Matrix::from_vec(dn, dm, kernel.vector(k).to_vec()))
        .collect();
    Ok(HomSpace {
        basis,
        stable_dim: None,
    })
}

/// `dim Hom(M, N)` minus the dimension of maps factoring through a projective.
///
/// A map factors through some projective iff it factors through the cover
/// `A^t -> N`, so the projective part is spanned by `E_j h` with
/// `h in Hom(M, A)` and `E_j : A -> N` sending 1 to the `j`-th top vector.
pub fn stable_hom_dim(m: &ModuleRep, n: &ModuleRep) -> Result<usize> {
    let hom = hom_basis(m, n)?;
    if hom.dim() == 0 {
        return Ok(0);
    }
    let f = m.field();
    let alg = m.algebra();
    let into_a = hom_basis(m, &ModuleRep::regular(alg))?;
    let top = n.top_indices();
    let monos = n.monomial_actions();
    let mut rows = Vec::new();
    for &t in &top {
        let cols: Vec<Vec<Fe>> = (0..alg.dim()).map(|mm| monos[mm].column(t)).collect();
        let e = Matrix::from_cols(&cols, n.dim);
        for h in &into_a.basis {
            rows.push(e.mul(f, h).data().to_vec());
        }
    }
    let projective = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(&rows, m.dim * n.dim).rank(f)
    };
    Ok(hom.dim() - projective)
}

pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace> {
    let mut h = hom_basis(m, n)?;
    h.stable_dim = Some(stable_hom_dim(m, n)?);
    Ok(h)
}

/// `Omega^{-1}(k) = A / soc A` and the quotient map (drops the socle coordinate).
pub fn cosyzygy_of_simple(algebra: &AlgebraSpec) -> (ModuleRep, Matrix) {
    let d = algebra.dim();
    let soc = algebra.socle_index();
    let mut socle = Matrix::zeros(1, d);
    socle[(0, soc)] = Fe::ONE;
    let sub = Subspace::span(algebra.field(), &socle);
    let module = ModuleRep::regular(algebra)
        .quotient(&sub)
        .expect("the socle is an ideal");
    let mut pi = Matrix::zeros(d - 1, d);
    for (r, j) in (0..d).filter(|&j| j != soc).enumerate() {
        pi[(r, j)] = Fe::ONE;
    }
    (module, pi)
}

fn is_invertible(field: &Field, m: &Matrix) -> bool {
    m.is_square() && m.rank(field) == m.rows()
}

/// Bounded search for an isomorphism.
///
/// `No` when dimensions or the first four Betti numbers differ; otherwise an
/// invertible element of `Hom(M, N)` is sought exhaustively when the space
/// has at most 2^16 elements and by 1000 seeded random trials otherwise.
pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep) -> Result<IsoVerdict> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(IsoVerdict::No);
    }
    if m.dim == 0 {
        return Ok(IsoVerdict::Yes);
    }
    if minimal_resolution(m, 3).betti != minimal_resolution(n, 3).betti {
        return Ok(IsoVerdict::No);
    }
    let f = m.field();
    let hom = hom_basis(m, n)?;
    let h = hom.dim();
    if h == 0 {
        return Ok(IsoVerdict::No);
    }
    let combine = |coeffs: &[Fe]| {
        let mut acc = Matrix::zeros(n.dim, m.dim);
        for (b, &c) in hom.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(f, &b.scale(f, c));
            }
        }
        acc
    };
    let q = f.order() as u64;
    let space = (q as f64).powi(h as i32);
    if space <= 65536.0 {
        let total = q.pow(h as u32);
        for idx in 1..total {
            let mut rest = idx;
            let coeffs: Vec<Fe> = (0..h)
                .map(|_| {
                    let c = f.element((rest % q) as u32).unwrap();
                    rest /= q;
                    c
                })
                .collect();
            if is_invertible(f, &combine(&coeffs)) {
                return Ok(IsoVerdict::Yes);
            }
        }
        // An exhausted search is conclusive only because every map was tried.
        return Ok(IsoVerdict::No);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let coeffs: Vec<Fe> = (0..h)
            .map(|_| f.element(rng.gen_range(0..f.order())).unwrap())
            .collect();
        if is_invertible(f, &combine(&coeffs)) {
            return Ok(IsoVerdict::Yes);
        }
    }
    Ok(IsoVerdict::Inconclusive)
}

/// Polynomial growth rate of a Betti sequence.
///
/// Betti numbers of these algebras are eventually quasi-polynomial of period 2,
/// so the even and odd subsequences of the tail half are examined separately:
/// iterated differences give the polynomial degree (certified when a
/// difference row vanishes, otherwise bounded below by the last nonzero row).
/// The result is `degree + 1`, or 0 when the tail vanishes.
pub fn complexity_estimate(betti: &[usize]) -> Result<usize> {
    if betti.len() < 8 {
        return Err(Error::TooShort(betti.len()));
    }
    let tail = &betti[betti.len() / 2..];
    if tail.iter().all(|&b| b == 0) {
        return Ok(0);
    }
    let start = betti.len() / 2;
    let mut degree = 0;
    for parity in 0..2 {
        let seq: Vec<i128> = tail
            .iter()
            .enumerate()
            .filter(|(k, _)| (start + k) % 2 == parity)
            .map(|(_, &b)| b as i128)
            .collect();
        degree = degree.max(polynomial_degree(&seq));
    }
    Ok(degree + 1)
}

fn polynomial_degree(seq: &[i128]) -> usize {
    let mut row = seq.to_vec();
    let mut d: usize = 0;
    loop {
        if row.iter().all(|&x| x == 0) {
            return d.saturating_sub(1);
        }
        if row.len() == 1 {
            return d;
        }
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
        d += 1;
    }
}
