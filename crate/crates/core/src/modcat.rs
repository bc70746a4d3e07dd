//! Finitely generated modules over a [`LocalAlgebra`], given as representations.
//!
//! A module is a vector space `F_p^n` with one action matrix per algebra basis
//! element. Hom, tensor, Matlis duality and minimal free resolutions are all
//! reduced to linear algebra on these matrices. Resolutions are built lazily
//! and cached inside the module, so Ext and Tor at many degrees share one
//! computation.

use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::LocalAlgebra;
use crate::exactla::{LinAlgError, Matrix, PrimeField, Subspace};

/// Largest free module (as a `k`-space, `rank * dim R`) a resolution step may build.
pub const MAX_FREE_DIM: usize = 4096;
/// Largest syzygy dimension for which syzygy recurrences are searched.
pub const RECURRENCE_MAX_DIM: usize = 256;
/// Largest `b_s * dim Ω^s` (unknowns of the Hom system) for a recurrence test.
const RECURRENCE_MAX_COST: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module action: {0}")]
    InvalidAction(String),
    #[error("resolution step {degree} needs a free module of k-dimension {free_dim} (limit {MAX_FREE_DIM})")]
    ResolutionTooLarge { degree: usize, free_dim: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

struct ModuleInner {
    algebra: Arc<LocalAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
    var_action: Vec<Matrix>,
    cache: Mutex<ResolutionState>,
}

/// A finitely generated module over a local algebra.
///
/// Cloning is cheap and shares the resolution cache.
#[derive(Clone)]
pub struct RModule {
    inner: Arc<ModuleInner>,
}

impl fmt::Debug for RModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RModule(dim {} over algebra of dim {})",
            self.dim(),
            self.algebra().dim()
        )
    }
}

impl RModule {
    /// Module from one action matrix per algebra basis element, validated.
    pub fn from_action(algebra: Arc<LocalAlgebra>, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        let d = algebra.dim();
        if action.len() != d {
            return Err(ModuleError::InvalidAction(format!(
                "expected {d} action matrices, got {}",
                action.len()
            )));
        }
        let n = action.first().map_or(0, |m| m.rows());
        let field = algebra.field();
        for (i, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n || a.field() != field {
                return Err(ModuleError::InvalidAction(format!(
                    "action of {} is not a {n}x{n} matrix over {field}",
                    algebra.basis_labels()[i]
                )));
            }
        }
        if action[algebra.unit_index()] != Matrix::identity(field, n) {
            return Err(ModuleError::InvalidAction("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = action[i].mul(&action[j]);
                let rhs = combine(field, n, &action, algebra.product_coeffs(i, j));
                if lhs != rhs {
                    return Err(ModuleError::InvalidAction(format!(
                        "action is not multiplicative on ({}, {})",
                        algebra.basis_labels()[i],
                        algebra.basis_labels()[j]
                    )));
                }
            }
        }
        Ok(Self::new_trusted(algebra, action, n))
    }

    /// Module from one matrix per algebra variable. Basis monomials act by the
    /// corresponding products; the result is checked to be a module.
    pub fn from_var_action(
        algebra: Arc<LocalAlgebra>,
        var_mats: Vec<Matrix>,
    ) -> Result<Self, ModuleError> {
        let nv = algebra.var_names().len();
        if var_mats.len() != nv {
            return Err(ModuleError::InvalidAction(format!(
                "expected {nv} variable matrices, got {}",
                var_mats.len()
            )));
        }
        let field = algebra.field();
        let n = var_mats.first().map_or_else(
            || if algebra.dim() == 1 { None } else { Some(0) },
            |m| Some(m.rows()),
        );
        let n = match n {
            Some(n) => n,
            None => {
                return Err(ModuleError::InvalidAction(
                    "a module over the field itself needs an explicit dimension".into(),
                ))
            }
        };
        for m in &var_mats {
            if m.rows() != n || m.cols() != n || m.field() != field {
                return Err(ModuleError::InvalidAction(format!(
                    "variable actions must be {n}x{n} matrices over {field}"
                )));
            }
        }
        let action: Vec<Matrix> = algebra
            .basis_exponents()
            .iter()
            .map(|e| {
                let mut m = Matrix::identity(field, n);
                for (v, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        m = m.mul(&var_mats[v]);
                    }
                }
                m
            })
            .collect();
        let module = Self::from_action(algebra.clone(), action)?;
        for (v, g) in algebra.var_elements().iter().enumerate() {
            if combine(field, n, &module.inner.action, g) != var_mats[v] {
                return Err(ModuleError::InvalidAction(format!(
                    "relations of the algebra are not respected by the action of '{}'",
                    algebra.var_names()[v]
                )));
            }
        }
        Ok(module)
    }

    pub(crate) fn new_trusted(algebra: Arc<LocalAlgebra>, action: Vec<Matrix>, dim: usize) -> Self {
        let field = algebra.field();
        let var_action = algebra
            .var_elements()
            .iter()
            .map(|g| combine(field, dim, &action, g))
            .collect();
        RModule {
            inner: Arc::new(ModuleInner {
                algebra,
                dim,
                action,
                var_action,
                cache: Mutex::new(ResolutionState::default()),
            }),
        }
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.inner.algebra
    }
    pub fn field(&self) -> PrimeField {
        self.inner.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.inner.dim
    }
    /// Action matrix of basis element `i` of the algebra.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.inner.action[i]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.inner.action
    }
    /// Action matrices of the algebra variables (generators of the maximal ideal).
    pub fn var_actions(&self) -> &[Matrix] {
        &self.inner.var_action
    }

    pub fn action_of(&self, element: &[u32]) -> Matrix {
        combine(self.field(), self.dim(), &self.inner.action, element)
    }

    pub fn same_algebra(&self, other: &RModule) -> bool {
        same_algebra(self.algebra(), other.algebra())
    }

    /// Same module data with an empty resolution cache.
    pub fn detached(&self) -> RModule {
        RModule::new_trusted(self.algebra().clone(), self.inner.action.clone(), self.dim())
    }

    /// `m M`, the span of the variables' images.
    pub fn radical(&self) -> Subspace {
        Subspace::span(
            self.field(),
            self.dim(),
            self.inner
                .var_action
                .iter()
                .flat_map(|a| a.columns().into_iter()),
        )
    }

    /// `{v : m v = 0}`.
    pub fn socle(&self) -> Subspace {
        let n = self.dim();
        let rows: Vec<Vec<u32>> = self
            .inner
            .var_action
            .iter()
            .flat_map(|a| (0..n).map(move |i| a.row(i).to_vec()))
            .collect();
        if rows.is_empty() {
            return Subspace::full(self.field(), n);
        }
        let m = Matrix::from_row_vectors(self.field(), n, &rows);
        Subspace::span(self.field(), n, m.kernel_vectors())
    }

    /// Number of minimal generators, `dim M/mM`.
    pub fn num_generators(&self) -> usize {
        self.dim() - self.radical().dim()
    }

    /// Dimensions of `M, mM, m^2 M, ...` up to the first zero term.
    pub fn loewy_dims(&self) -> Vec<usize> {
        let mut out = vec![self.dim()];
        let mut cur = Subspace::full(self.field(), self.dim());
        loop {
            let next = Subspace::span(
                self.field(),
                self.dim(),
                cur.basis()
                    .iter()
                    .flat_map(|v| self.inner.var_action.iter().map(move |a| a.mul_vec(v))),
            );
            if next.dim() == 0 || next.dim() == cur.dim() {
                break;
            }
            out.push(next.dim());
            cur = next;
        }
        out
    }

    /// `M ≅ R^r` for some `r`.
    pub fn is_free(&self) -> bool {
        self.dim() == self.num_generators() * self.algebra().dim()
    }

    /// `M ≅ ω^r`, i.e. the Matlis dual is free.
    pub fn is_injective(&self) -> bool {
        self.dim() == self.socle().dim() * self.algebra().dim()
    }

    /// Whether `r M = 0` forces `r = 0`.
    pub fn is_faithful(&self) -> bool {
        let d = self.algebra().dim();
        let cols: Vec<Vec<u32>> = self.inner.action.iter().map(|a| a.to_vec()).collect();
        let m = Matrix::from_columns(self.field(), self.dim() * self.dim(), &cols);
        d == 0 || m.rank() == d
    }

    fn lock(&self) -> MutexGuard<'_, ResolutionState> {
        self.inner
            .cache
            .lock()
            .unwrap_or_else(|poisoned| poisoned.into_inner())
    }
}

pub fn same_algebra(a: &Arc<LocalAlgebra>, b: &Arc<LocalAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn combine(field: PrimeField, n: usize, mats: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut out = Matrix::zeros(field, n, n);
    for (m, &c) in mats.iter().zip(coeffs) {
        if c != 0 {
            out.add_scaled(c, m);
        }
    }
    out
}

fn check_same(m: &RModule, n: &RModule) -> Result<(), ModuleError> {
    if m.same_algebra(n) {
        Ok(())
    } else {
        Err(ModuleError::AlgebraMismatch)
    }
}

// ---------------------------------------------------------------------------
// Basic constructions
// ---------------------------------------------------------------------------

pub fn zero_module(algebra: &Arc<LocalAlgebra>) -> RModule {
    let field = algebra.field();
    let action = vec![Matrix::zeros(field, 0, 0); algebra.dim()];
    RModule::new_trusted(algebra.clone(), action, 0)
}

/// The residue field `k = R/m`.
pub fn residue_field(algebra: &Arc<LocalAlgebra>) -> RModule {
    let field = algebra.field();
    let action = (0..algebra.dim())
        .map(|i| {
            let v = if i == algebra.unit_index() { 1 } else { 0 };
            Matrix::from_data(field, 1, 1, vec![v])
        })
        .collect();
    RModule::new_trusted(algebra.clone(), action, 1)
}

/// `R` acting on itself by multiplication.
pub fn regular_module(algebra: &Arc<LocalAlgebra>) -> RModule {
    let action = (0..algebra.dim())
        .map(|i| algebra.left_mult(i).clone())
        .collect();
    RModule::new_trusted(algebra.clone(), action, algebra.dim())
}

/// `R^r`, coordinates `t * dim R + l`.
pub fn free_module(algebra: &Arc<LocalAlgebra>, rank: usize) -> RModule {
    let r = regular_module(algebra);
    direct_sum_power(&r, rank)
}

pub fn direct_sum(modules: &[&RModule]) -> Result<RModule, ModuleError> {
    let first = modules
        .first()
        .ok_or_else(|| ModuleError::InvalidAction("empty direct sum".into()))?;
    for m in modules {
        check_same(first, m)?;
    }
    let alg = first.algebra().clone();
    let dim = modules.iter().map(|m| m.dim()).sum();
    let action = (0..alg.dim())
        .map(|i| {
            let blocks: Vec<&Matrix> = modules.iter().map(|m| m.action(i)).collect();
            Matrix::direct_sum(&blocks)
        })
        .collect();
    Ok(RModule::new_trusted(alg, action, dim))
}

pub fn direct_sum_power(m: &RModule, r: usize) -> RModule {
    if r == 0 {
        return zero_module(m.algebra());
    }
    let copies: Vec<&RModule> = std::iter::repeat_n(m, r).collect();
    direct_sum(&copies).expect("same algebra")
}

/// Submodule generated by the given vectors, as a subspace of `m`.
pub fn generated_submodule(m: &RModule, vectors: &[Vec<u32>]) -> Subspace {
    Subspace::span(
        m.field(),
        m.dim(),
        vectors
            .iter()
            .flat_map(|v| m.actions().iter().map(move |a| a.mul_vec(v))),
    )
}

/// The submodule `sub ⊆ m` in its own echelon coordinates. `sub` must be
/// closed under the action.
pub fn submodule(m: &RModule, sub: &Subspace) -> RModule {
    let field = m.field();
    let k = sub.dim();
    let action = m
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = sub
                .basis()
                .iter()
                .map(|w| sub.coords_unchecked(&a.mul_vec(w)))
                .collect();
            Matrix::from_columns(field, k, &cols)
        })
        .collect();
    RModule::new_trusted(m.algebra().clone(), action, k)
}

/// `m / sub` with basis the unit vectors outside the pivots of `sub`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: RModule,
    sub: Subspace,
    complement: Vec<usize>,
}

impl Quotient {
    /// Class of a vector of the ambient module in quotient coordinates.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let r = self.sub.reduce(v);
        self.complement.iter().map(|&c| r[c]).collect()
    }

    pub fn kernel(&self) -> &Subspace {
        &self.sub
    }

    /// Ambient coordinates of the quotient's basis vectors.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }
}

pub fn quotient(m: &RModule, sub: &Subspace) -> Quotient {
    let field = m.field();
    let complement = sub.complement_indices();
    let k = complement.len();
    let action = m
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = complement
                .iter()
                .map(|&c| {
                    let r = sub.reduce(&a.column(c));
                    complement.iter().map(|&j| r[j]).collect()
                })
                .collect();
            Matrix::from_columns(field, k, &cols)
        })
        .collect();
    Quotient {
        module: RModule::new_trusted(m.algebra().clone(), action, k),
        sub: sub.clone(),
        complement,
    }
}

/// Cokernel of `R^c -> R^b`; each relation is a column of `b` algebra elements.
pub fn from_presentation(
    algebra: &Arc<LocalAlgebra>,
    generators: usize,
    relations: &[Vec<Vec<u32>>],
) -> Result<RModule, ModuleError> {
    let d = algebra.dim();
    let free = free_module(algebra, generators);
    let mut vectors = Vec::with_capacity(relations.len());
    for rel in relations {
        if rel.len() != generators || rel.iter().any(|e| e.len() != d) {
            return Err(ModuleError::InvalidAction(format!(
                "relation column must have {generators} entries of length {d}"
            )));
        }
        vectors.push(rel.concat());
    }
    let sub = generated_submodule(&free, &vectors);
    Ok(quotient(&free, &sub).module)
}

/// Vector-space dual with transposed action.
pub fn matlis_dual(m: &RModule) -> RModule {
    let action = m.actions().iter().map(|a| a.transpose()).collect();
    RModule::new_trusted(m.algebra().clone(), action, m.dim())
}

/// `M ⊗_k N` over `A ⊗_k B` for `M` over `A` and `N` over `B`; `total` must be
/// the tensor algebra with basis index `i * dim B + j`.
pub fn external_tensor(
    m: &RModule,
    n: &RModule,
    total: &Arc<LocalAlgebra>,
) -> Result<RModule, ModuleError> {
    let (da, db) = (m.algebra().dim(), n.algebra().dim());
    if total.dim() != da * db || total.field() != m.field() || m.field() != n.field() {
        return Err(ModuleError::AlgebraMismatch);
    }
    let mut action = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            action.push(m.action(i).kron(n.action(j)));
        }
    }
    RModule::from_action(total.clone(), action)
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

/// A `k`-linear map between modules, expected to commute with the action.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: RModule,
    pub target: RModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn is_equivariant(&self) -> bool {
        self.source
            .var_actions()
            .iter()
            .zip(self.target.var_actions())
            .all(|(a, b)| self.matrix.mul(a) == b.mul(&self.matrix))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.rank() == self.source.dim()
    }

    pub fn kernel_dim(&self) -> usize {
        self.source.dim() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.target.dim() - self.rank()
    }
}

// ---------------------------------------------------------------------------
// Hom and tensor
// ---------------------------------------------------------------------------

/// `Hom_R(M, N)` with its basis of maps.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: RModule,
    maps: Vec<Matrix>,
    space: Subspace,
    source_dim: usize,
    target_dim: usize,
}

impl HomModule {
    /// Basis maps (`dim N x dim M` matrices) in module coordinate order.
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn coords(&self, f: &Matrix) -> Option<Vec<u32>> {
        self.space.coords(f.data())
    }

    pub fn map_from_coords(&self, c: &[u32]) -> Matrix {
        Matrix::from_data(
            self.module.field(),
            self.target_dim,
            self.source_dim,
            self.space.combine(c),
        )
    }
}

fn assemble_hom(m: &RModule, n: &RModule, raw: Vec<Matrix>) -> HomModule {
    let field = m.field();
    let space = Subspace::span(field, m.dim() * n.dim(), raw.into_iter().map(|f| f.to_vec()));
    let maps: Vec<Matrix> = space
        .basis()
        .iter()
        .map(|v| Matrix::from_data(field, n.dim(), m.dim(), v.clone()))
        .collect();
    let h = maps.len();
    let action = n
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = maps
                .iter()
                .map(|f| space.coords_unchecked(a.mul(f).data()))
                .collect();
            Matrix::from_columns(field, h, &cols)
        })
        .collect();
    HomModule {
        module: RModule::new_trusted(m.algebra().clone(), action, h),
        maps,
        space,
        source_dim: m.dim(),
        target_dim: n.dim(),
    }
}

/// `Hom_R(M, N)`, computed from a minimal presentation of `M`: a map is a
/// choice of images of the generators killed by every relation.
pub fn hom_module(m: &RModule, n: &RModule) -> Result<HomModule, ModuleError> {
    check_same(m, n)?;
    let field = m.field();
    let d = m.algebra().dim();
    let nd = n.dim();
    let (b0, boundary, preimage) = {
        let mut st = m.lock();
        st.ensure_gens(m, 1)?;
        let b0 = st.levels[0].gens().len();
        let boundary = st.boundary(m, 1);
        let preimage = st.augmentation_right_inverse(m).clone();
        (b0, boundary, preimage)
    };
    let delta = coboundary_matrix(&boundary, n);
    let solutions = if delta.rows() == 0 {
        Subspace::full(field, b0 * nd).basis().to_vec()
    } else {
        delta.kernel_vectors()
    };
    let raw = solutions
        .into_iter()
        .map(|images| {
            // Φ: R^{b0} -> N sends e_l g_t to e_l * n_t; compose with the
            // preimage section of the augmentation R^{b0} -> M.
            let mut cols = Vec::with_capacity(b0 * d);
            for t in 0..b0 {
                let nt = &images[t * nd..(t + 1) * nd];
                for l in 0..d {
                    cols.push(n.action(l).mul_vec(nt));
                }
            }
            let phi = Matrix::from_columns(field, nd, &cols);
            phi.mul(&preimage)
        })
        .collect();
    Ok(assemble_hom(m, n, raw))
}

/// `Hom_R(M, N)` as the solution space of `F A_M(g) = A_N(g) F` for the
/// algebra generators `g`. Independent of resolutions.
pub fn hom_module_by_equivariance(m: &RModule, n: &RModule) -> Result<HomModule, ModuleError> {
    check_same(m, n)?;
    let field = m.field();
    let (md, nd) = (m.dim(), n.dim());
    let mut rows = Vec::new();
    for (am, an) in m.var_actions().iter().zip(n.var_actions()) {
        for i in 0..nd {
            for j in 0..md {
                let mut row = vec![0u32; nd * md];
                for k in 0..md {
                    let c = am.get(k, j);
                    if c != 0 {
                        row[i * md + k] = field.add(row[i * md + k], c);
                    }
                }
                for k in 0..nd {
                    let c = an.get(i, k);
                    if c != 0 {
                        row[k * md + j] = field.sub(row[k * md + j], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let raw: Vec<Matrix> = if rows.is_empty() {
        Subspace::full(field, nd * md)
            .basis()
            .iter()
            .map(|v| Matrix::from_data(field, nd, md, v.clone()))
            .collect()
    } else {
        Matrix::from_row_vectors(field, nd * md, &rows)
            .kernel_vectors()
            .into_iter()
            .map(|v| Matrix::from_data(field, nd, md, v))
            .collect()
    };
    Ok(assemble_hom(m, n, raw))
}

/// `M ⊗_R N` as a quotient of `M ⊗_k N` (index `u * dim N + v`).
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: RModule,
    quotient: Quotient,
    right_dim: usize,
}

impl TensorModule {
    /// Class of an element of `M ⊗_k N`.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        self.quotient.project(v)
    }

    /// Class of `x ⊗ y`.
    pub fn pure(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.module.field();
        let mut v = Vec::with_capacity(x.len() * y.len());
        for &a in x {
            for &b in y {
                v.push(f.mul(a, b));
            }
        }
        self.project(&v)
    }

    /// Raw index of `e_u ⊗ e_v`.
    pub fn raw_index(&self, u: usize, v: usize) -> usize {
        u * self.right_dim + v
    }

    /// Raw indices (`u * dim N + v`) of the quotient's basis vectors.
    pub fn basis_indices(&self) -> &[usize] {
        self.quotient.complement()
    }
}

pub fn tensor_module(m: &RModule, n: &RModule) -> Result<TensorModule, ModuleError> {
    check_same(m, n)?;
    let field = m.field();
    let (md, nd) = (m.dim(), n.dim());
    let mut relations = Vec::new();
    for (am, an) in m.var_actions().iter().zip(n.var_actions()) {
        for u in 0..md {
            for v in 0..nd {
                // g e_u ⊗ e_v - e_u ⊗ g e_v
                let mut r = vec![0u32; md * nd];
                for u2 in 0..md {
                    let c = am.get(u2, u);
                    if c != 0 {
                        r[u2 * nd + v] = field.add(r[u2 * nd + v], c);
                    }
                }
                for v2 in 0..nd {
                    let c = an.get(v2, v);
                    if c != 0 {
                        r[u * nd + v2] = field.sub(r[u * nd + v2], c);
                    }
                }
                relations.push(r);
            }
        }
    }
    let sub = Subspace::span(field, md * nd, relations);
    // M ⊗_k N with action on the left factor; balanced relations make the
    // two sides agree on the quotient.
    let raw_action = m
        .actions()
        .iter()
        .map(|a| a.kron(&Matrix::identity(field, nd)))
        .collect();
    let raw = RModule::new_trusted(m.algebra().clone(), raw_action, md * nd);
    let q = quotient(&raw, &sub);
    Ok(TensorModule {
        module: q.module.clone(),
        quotient: q,
        right_dim: nd,
    })
}

// ---------------------------------------------------------------------------
// Matrices over R and minimal free resolutions
// ---------------------------------------------------------------------------

/// Matrix with entries in the algebra, stored as coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    dim: usize,
    data: Vec<u32>,
}

impl RMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entry(&self, r: usize, c: usize) -> &[u32] {
        let off = (r * self.cols + c) * self.dim;
        &self.data[off..off + self.dim]
    }

    /// Whether every entry lies in the maximal ideal.
    pub fn entries_in_maxideal(&self, algebra: &LocalAlgebra) -> bool {
        (0..self.rows)
            .all(|r| (0..self.cols).all(|c| self.entry(r, c)[algebra.unit_index()] == 0))
    }

    /// The `k`-linear map `R^cols -> R^rows`.
    pub fn to_k_matrix(&self, algebra: &LocalAlgebra) -> Matrix {
        let d = algebra.dim();
        let f = algebra.field();
        let mut out = Matrix::zeros(f, self.rows * d, self.cols * d);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let block = algebra.mult_matrix(self.entry(r, c));
                for i in 0..d {
                    for j in 0..d {
                        out.set(r * d + i, c * d + j, block.get(i, j));
                    }
                }
            }
        }
        out
    }

    pub fn compose(&self, other: &RMatrix, algebra: &LocalAlgebra) -> RMatrix {
        assert_eq!(self.cols, other.rows);
        let f = algebra.field();
        let d = self.dim;
        let mut data = vec![0u32; self.rows * other.cols * d];
        for r in 0..self.rows {
            for c in 0..other.cols {
                let acc = &mut data[(r * other.cols + c) * d..(r * other.cols + c + 1) * d];
                for k in 0..self.cols {
                    let p = algebra.mul(self.entry(r, k), other.entry(k, c));
                    f.axpy(acc, 1, &p);
                }
            }
        }
        RMatrix {
            rows: self.rows,
            cols: other.cols,
            dim: d,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// `Ω^a ≅ Ω^{a+period}` up to a direct-sum multiplicity: the later syzygy is
/// isomorphic to `multiplicity` copies of the earlier one.
///
/// Consequences, for `j >= 1`: `Ext^{a+period+j}(M,-) ≅ Ext^{a+j}(M,-)^multiplicity`,
/// likewise for `Tor`, and `β_{a+period+j-1} = multiplicity · β_{a+j-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyRecurrence {
    pub start: usize,
    pub period: usize,
    pub multiplicity: usize,
}

impl SyzygyRecurrence {
    /// Last degree that has to be checked directly.
    pub fn window_end(&self) -> usize {
        self.start + self.period
    }

    /// Extends `values[0..=window_end]` (indexed by homological degree, with
    /// degree `d` determined by degree `d - period` for `d > window_end`).
    pub fn extrapolate(&self, known: &[u64], up_to: usize) -> Vec<u64> {
        let mut out = known.to_vec();
        while out.len() <= up_to {
            let d = out.len();
            out.push(out[d - self.period] * self.multiplicity as u64);
        }
        out.truncate(up_to + 1);
        out
    }
}

/// A snapshot of a minimal free resolution.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: RModule,
    pub betti: Vec<usize>,
    /// `boundaries[i - 1]` is `∂_i : R^{b_i} -> R^{b_{i-1}}`.
    pub boundaries: Vec<RMatrix>,
    pub minimal: bool,
    /// The resolution reached a zero syzygy at or before the requested length.
    pub terminated: bool,
    pub recurrence: Option<SyzygyRecurrence>,
}

#[derive(Default)]
struct ResolutionState {
    levels: Vec<Level>,
    right_inverse: Option<Matrix>,
    recurrence: Option<SyzygyRecurrence>,
    recurrence_scanned: usize,
    materialized: Vec<Option<RModule>>,
}

struct Level {
    /// `Ω^i` inside its ambient space (`M` for `i = 0`, else `R^{b_{i-1}}`).
    space: Subspace,
    gens: Option<Vec<Vec<u32>>>,
}

impl Level {
    fn gens(&self) -> &[Vec<u32>] {
        self.gens.as_deref().expect("generators computed")
    }
}

impl ResolutionState {
    fn act(m: &RModule, level: usize, mat_of: &Matrix, elem_block: bool, v: &[u32]) -> Vec<u32> {
        // level 0 acts through the module; higher levels blockwise on R^b
        if level == 0 || !elem_block {
            mat_of.mul_vec(v)
        } else {
            let d = m.algebra().dim();
            let mut out = Vec::with_capacity(v.len());
            for block in v.chunks(d) {
                out.extend(mat_of.mul_vec(block));
            }
            out
        }
    }

    fn level_action(m: &RModule, level: usize, basis_elem: usize) -> &Matrix {
        if level == 0 {
            m.action(basis_elem)
        } else {
            m.algebra().left_mult(basis_elem)
        }
    }

    fn ensure_level(&mut self, m: &RModule, i: usize) -> Result<(), ModuleError> {
        if self.levels.is_empty() {
            self.levels.push(Level {
                space: Subspace::full(m.field(), m.dim()),
                gens: None,
            });
        }
        while self.levels.len() <= i {
            let prev = self.levels.len() - 1;
            self.ensure_gens_at(m, prev)?;
            let kernel = self.kernel_of_cover(m, prev)?;
            self.levels.push(Level {
                space: kernel,
                gens: None,
            });
        }
        Ok(())
    }

    /// Generators of `Ω^0..=Ω^i`.
    fn ensure_gens(&mut self, m: &RModule, i: usize) -> Result<(), ModuleError> {
        self.ensure_level(m, i)?;
        for l in 0..=i {
            self.ensure_gens_at(m, l)?;
        }
        Ok(())
    }

    fn ensure_gens_at(&mut self, m: &RModule, i: usize) -> Result<(), ModuleError> {
        if self.levels[i].gens.is_some() {
            return Ok(());
        }
        let alg = m.algebra();
        let field = m.field();
        let space = &self.levels[i].space;
        let ambient = space.ambient();
        let var_mats: Vec<Matrix> = if i == 0 {
            m.var_actions().to_vec()
        } else {
            alg.var_elements().iter().map(|g| alg.mult_matrix(g)).collect()
        };
        let mut acc = Subspace::span(
            field,
            ambient,
            space.basis().iter().flat_map(|w| {
                var_mats
                    .iter()
                    .map(move |g| Self::act(m, i, g, true, w))
                    .collect::<Vec<_>>()
            }),
        );
        let mut gens = Vec::new();
        for w in space.basis() {
            if acc.insert(w) {
                gens.push(w.clone());
            }
        }
        self.levels[i].gens = Some(gens);
        Ok(())
    }

    /// Kernel of `R^{b_i} -> ambient_i`, the next syzygy.
    fn kernel_of_cover(&self, m: &RModule, i: usize) -> Result<Subspace, ModuleError> {
        let d = m.algebra().dim();
        let gens = self.levels[i].gens();
        let free_dim = gens.len() * d;
        if free_dim > MAX_FREE_DIM {
            return Err(ModuleError::ResolutionTooLarge {
                degree: i,
                free_dim,
            });
        }
        let cover = self.cover_matrix(m, i);
        let kernel = if cover.rows() == 0 {
            Subspace::full(m.field(), free_dim)
        } else {
            Subspace::span(m.field(), free_dim, cover.kernel_vectors())
        };
        debug!(
            "resolution level {}: b = {}, syzygy dim {}",
            i,
            gens.len(),
            kernel.dim()
        );
        Ok(kernel)
    }

    /// `R^{b_i} -> ambient_i`, column `(t, l)` is `e_l * g_t`.
    fn cover_matrix(&self, m: &RModule, i: usize) -> Matrix {
        let d = m.algebra().dim();
        let gens = self.levels[i].gens();
        let ambient = self.levels[i].space.ambient();
        let mut cols = Vec::with_capacity(gens.len() * d);
        for g in gens {
            for l in 0..d {
                cols.push(Self::act(m, i, Self::level_action(m, i, l), true, g));
            }
        }
        Matrix::from_columns(m.field(), ambient, &cols)
    }

    fn boundary(&self, m: &RModule, i: usize) -> RMatrix {
        assert!(i >= 1);
        let d = m.algebra().dim();
        let gens = self.levels[i].gens();
        let rows = self.levels[i - 1].gens().len();
        let cols = gens.len();
        let mut data = vec![0u32; rows * cols * d];
        for (c, g) in gens.iter().enumerate() {
            for r in 0..rows {
                data[(r * cols + c) * d..(r * cols + c + 1) * d].copy_from_slice(&g[r * d..(r + 1) * d]);
            }
        }
        RMatrix {
            rows,
            cols,
            dim: d,
            data,
        }
    }

    fn augmentation_right_inverse(&mut self, m: &RModule) -> &Matrix {
        if self.right_inverse.is_none() {
            let cover = self.cover_matrix(m, 0);
            let inv = cover
                .right_inverse()
                .expect("minimal generators span the module");
            self.right_inverse = Some(inv);
        }
        self.right_inverse.as_ref().unwrap()
    }

    fn materialize(&mut self, m: &RModule, i: usize) -> RModule {
        if self.materialized.len() <= i {
            self.materialized.resize(i + 1, None);
        }
        if let Some(x) = &self.materialized[i] {
            return x.clone();
        }
        let module = if i == 0 {
            m.detached()
        } else {
            let free = free_module(m.algebra(), self.levels[i - 1].gens().len());
            submodule(&free, &self.levels[i].space)
        };
        self.materialized[i] = Some(module.clone());
        module
    }

    fn scan_recurrence(&mut self, m: &RModule, up_to: usize) {
        while self.recurrence.is_none() && self.recurrence_scanned < up_to {
            let s = self.recurrence_scanned + 1;
            self.recurrence_scanned = s;
            if self.levels.len() <= s || self.levels[s].gens.is_none() {
                break;
            }
            let ds = self.levels[s].space.dim();
            if ds == 0 || ds > RECURRENCE_MAX_DIM {
                continue;
            }
            let bs = self.levels[s].gens().len();
            if bs * ds > RECURRENCE_MAX_COST {
                continue;
            }
            for a in (0..s).rev() {
                let da = self.levels[a].space.dim();
                if da == 0 || !ds.is_multiple_of(da) {
                    continue;
                }
                let r = ds / da;
                if bs != r * self.levels[a].gens().len() {
                    continue;
                }
                let later = self.materialize(m, s);
                let earlier = self.materialize(m, a);
                let target = direct_sum_power(&earlier, r);
                if let IsoVerdict::Isomorphic(_) =
                    is_isomorphic_with(&later, &target, &IsoOptions::default())
                {
                    debug!("syzygy recurrence: Ω^{s} ≅ (Ω^{a})^{r}");
                    self.recurrence = Some(SyzygyRecurrence {
                        start: a,
                        period: s - a,
                        multiplicity: r,
                    });
                    break;
                }
            }
        }
    }
}

impl RModule {
    /// Computes `Ω^0..=Ω^len` with generators, i.e. `b_0..=b_len`.
    pub fn resolve(&self, len: usize) -> Result<(), ModuleError> {
        self.lock().ensure_gens(self, len)
    }

    pub fn betti(&self, len: usize) -> Result<Vec<usize>, ModuleError> {
        let mut st = self.lock();
        st.ensure_gens(self, len)?;
        Ok((0..=len).map(|i| st.levels[i].gens().len()).collect())
    }

    /// `∂_i` of the minimal resolution (`i >= 1`).
    pub fn boundary(&self, i: usize) -> Result<RMatrix, ModuleError> {
        let mut st = self.lock();
        st.ensure_gens(self, i)?;
        Ok(st.boundary(self, i))
    }

    /// The `i`-th syzygy as a standalone module (`Ω^0 = M`).
    pub fn syzygy(&self, i: usize) -> Result<RModule, ModuleError> {
        let mut st = self.lock();
        st.ensure_gens(self, i)?;
        Ok(st.materialize(self, i))
    }

    /// Smallest `i` with `Ω^i = 0` among computed levels `<= len`.
    pub fn projective_dimension_within(&self, len: usize) -> Result<Option<usize>, ModuleError> {
        let mut st = self.lock();
        st.ensure_gens(self, len)?;
        Ok((0..=len).find(|&i| st.levels[i].space.dim() == 0).map(|i| i.saturating_sub(1)))
    }

    /// Searches syzygies `Ω^1..=Ω^up_to` for a recurrence with an earlier syzygy.
    pub fn syzygy_recurrence(&self, up_to: usize) -> Result<Option<SyzygyRecurrence>, ModuleError> {
        let mut st = self.lock();
        st.ensure_gens(self, up_to)?;
        st.scan_recurrence(self, up_to);
        Ok(st.recurrence)
    }
}

pub fn minimal_free_resolution(m: &RModule, length: usize) -> Result<FreeResolution, ModuleError> {
    let mut st = m.lock();
    st.ensure_gens(m, length)?;
    let betti: Vec<usize> = (0..=length).map(|i| st.levels[i].gens().len()).collect();
    let boundaries: Vec<RMatrix> = (1..=length).map(|i| st.boundary(m, i)).collect();
    let minimal = boundaries
        .iter()
        .all(|b| b.entries_in_maxideal(m.algebra()));
    let terminated = (0..=length).any(|i| st.levels[i].space.dim() == 0);
    st.scan_recurrence(m, length);
    Ok(FreeResolution {
        module: m.clone(),
        betti,
        boundaries,
        minimal,
        terminated,
        recurrence: st.recurrence,
    })
}

/// `δ: N^{rows} -> N^{cols}` induced by `∂` (an `rows x cols` matrix over R),
/// block `(c, r)` is the action of `∂[r, c]`.
fn coboundary_matrix(boundary: &RMatrix, n: &RModule) -> Matrix {
    let nd = n.dim();
    let f = n.field();
    let mut out = Matrix::zeros(f, boundary.cols * nd, boundary.rows * nd);
    for r in 0..boundary.rows {
        for c in 0..boundary.cols {
            let a = n.action_of(boundary.entry(r, c));
            for i in 0..nd {
                for j in 0..nd {
                    let v = a.get(i, j);
                    if v != 0 {
                        out.set(c * nd + i, r * nd + j, v);
                    }
                }
            }
        }
    }
    out
}

/// `∂ ⊗ N: N^{cols} -> N^{rows}`, block `(r, c)` is the action of `∂[r, c]`.
fn tensor_boundary_matrix(boundary: &RMatrix, n: &RModule) -> Matrix {
    let nd = n.dim();
    let f = n.field();
    let mut out = Matrix::zeros(f, boundary.rows * nd, boundary.cols * nd);
    for r in 0..boundary.rows {
        for c in 0..boundary.cols {
            let a = n.action_of(boundary.entry(r, c));
            for i in 0..nd {
                for j in 0..nd {
                    let v = a.get(i, j);
                    if v != 0 {
                        out.set(r * nd + i, c * nd + j, v);
                    }
                }
            }
        }
    }
    out
}

/// Cochain data for `Ext^i(M, N)`: `(b_i * dim N, δ^i, δ^{i+1})`.
fn ext_complex(i: usize, m: &RModule, n: &RModule) -> Result<(usize, Option<Matrix>, Matrix), ModuleError> {
    check_same(m, n)?;
    let (bi, d_in, d_out) = {
        let mut st = m.lock();
        st.ensure_gens(m, i + 1)?;
        let bi = st.levels[i].gens().len();
        let d_in = if i == 0 { None } else { Some(st.boundary(m, i)) };
        let d_out = st.boundary(m, i + 1);
        (bi, d_in, d_out)
    };
    Ok((
        bi * n.dim(),
        d_in.map(|b| coboundary_matrix(&b, n)),
        coboundary_matrix(&d_out, n),
    ))
}

fn tor_complex(i: usize, m: &RModule, n: &RModule) -> Result<(usize, Option<Matrix>, Matrix), ModuleError> {
    check_same(m, n)?;
    let (bi, d_out, d_in) = {
        let mut st = m.lock();
        st.ensure_gens(m, i + 1)?;
        let bi = st.levels[i].gens().len();
        let d_out = if i == 0 { None } else { Some(st.boundary(m, i)) };
        let d_in = st.boundary(m, i + 1);
        (bi, d_out, d_in)
    };
    Ok((
        bi * n.dim(),
        d_out.map(|b| tensor_boundary_matrix(&b, n)),
        tensor_boundary_matrix(&d_in, n),
    ))
}

/// `dim_k Ext^i_R(M, N)` from a minimal free resolution of `M`.
pub fn ext_dim(i: usize, m: &RModule, n: &RModule) -> Result<usize, ModuleError> {
    let (total, d_in, d_out) = ext_complex(i, m, n)?;
    let r_in = d_in.map_or(0, |x| x.rank());
    let r_out = d_out.rank();
    Ok(total - r_in - r_out)
}

/// `dim_k Tor_i^R(M, N)` from a minimal free resolution of `M`.
pub fn tor_dim(i: usize, m: &RModule, n: &RModule) -> Result<usize, ModuleError> {
    let (total, d_out, d_in) = tor_complex(i, m, n)?;
    let r_out = d_out.map_or(0, |x| x.rank());
    let r_in = d_in.rank();
    Ok(total - r_in - r_out)
}

fn subquotient(n: &RModule, copies: usize, cycles: &Subspace, boundaries: &Subspace) -> RModule {
    let field = n.field();
    let z = cycles.dim();
    let b_in_z = Subspace::span(
        field,
        z,
        boundaries.basis().iter().map(|b| cycles.coords_unchecked(b)),
    );
    let complement = b_in_z.complement_indices();
    let k = complement.len();
    let action = n
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = complement
                .iter()
                .map(|&c| {
                    let w = &cycles.basis()[c];
                    let mut img = Vec::with_capacity(w.len());
                    for block in w.chunks(n.dim().max(1)).take(copies) {
                        img.extend(a.mul_vec(block));
                    }
                    let zc = b_in_z.reduce(&cycles.coords_unchecked(&img));
                    complement.iter().map(|&j| zc[j]).collect()
                })
                .collect();
            Matrix::from_columns(field, k, &cols)
        })
        .collect();
    RModule::new_trusted(n.algebra().clone(), action, k)
}

fn kernel_space(f: PrimeField, dim: usize, m: &Matrix) -> Subspace {
    if m.rows() == 0 {
        Subspace::full(f, dim)
    } else {
        Subspace::span(f, dim, m.kernel_vectors())
    }
}

fn image_space(f: PrimeField, dim: usize, m: Option<&Matrix>) -> Subspace {
    match m {
        Some(m) if m.cols() > 0 => Subspace::span(f, dim, m.transpose().row_vectors()),
        _ => Subspace::zero(f, dim),
    }
}

trait RowVectors {
    fn row_vectors(&self) -> Vec<Vec<u32>>;
}

impl RowVectors for Matrix {
    fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

/// `Ext^i_R(M, N)` with its R-module structure.
pub fn ext_module(i: usize, m: &RModule, n: &RModule) -> Result<RModule, ModuleError> {
    let (total, d_in, d_out) = ext_complex(i, m, n)?;
    let f = m.field();
    let cycles = kernel_space(f, total, &d_out);
    let bounds = image_space(f, total, d_in.as_ref());
    Ok(subquotient(n, total / n.dim().max(1), &cycles, &bounds))
}

/// `Tor_i^R(M, N)` with its R-module structure.
pub fn tor_module(i: usize, m: &RModule, n: &RModule) -> Result<RModule, ModuleError> {
    let (total, d_out, d_in) = tor_complex(i, m, n)?;
    let f = m.field();
    let cycles = match &d_out {
        Some(x) => kernel_space(f, total, x),
        None => Subspace::full(f, total),
    };
    let bounds = image_space(f, total, Some(&d_in));
    Ok(subquotient(n, total / n.dim().max(1), &cycles, &bounds))
}

// ---------------------------------------------------------------------------
// Isomorphism testing
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoOptions {
    pub seed: u64,
    pub samples: usize,
    /// Exhaustive search over `Hom(M, N)` is attempted up to this dimension
    /// when `p <= 3`.
    pub exhaustive_dim: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            seed: 0x5eed_0001,
            samples: 200,
            exhaustive_dim: 12,
        }
    }
}

/// Why two modules are known to be non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IsoWitness {
    AlgebraMismatch,
    Invariant {
        name: String,
        left: String,
        right: String,
    },
    /// Every element of `Hom(M, N)` was tried; none is invertible.
    NoInvertibleHom { hom_dim: usize },
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoWitness::AlgebraMismatch => write!(f, "different algebras"),
            IsoWitness::Invariant { name, left, right } => {
                write!(f, "{name} differs ({left} vs {right})")
            }
            IsoWitness::NoInvertibleHom { hom_dim } => {
                write!(f, "no invertible element in Hom (exhaustive over dim {hom_dim})")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(ModuleMap),
    NotIsomorphic(IsoWitness),
    Unknown,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic(_))
    }
}

pub fn is_isomorphic(m: &RModule, n: &RModule) -> IsoVerdict {
    is_isomorphic_with(m, n, &IsoOptions::default())
}

fn invariant<T: PartialEq + fmt::Debug>(name: &str, a: T, b: T) -> Option<IsoVerdict> {
    (a != b).then(|| {
        IsoVerdict::NotIsomorphic(IsoWitness::Invariant {
            name: name.into(),
            left: format!("{a:?}"),
            right: format!("{b:?}"),
        })
    })
}

pub fn is_isomorphic_with(m: &RModule, n: &RModule, opts: &IsoOptions) -> IsoVerdict {
    if !m.same_algebra(n) {
        return IsoVerdict::NotIsomorphic(IsoWitness::AlgebraMismatch);
    }
    if let Some(v) = invariant("dim", m.dim(), n.dim()) {
        return v;
    }
    if m.dim() == 0 {
        return verified(m, n, Matrix::zeros(m.field(), 0, 0)).unwrap_or(IsoVerdict::Unknown);
    }
    if let Some(v) = invariant("loewy series", m.loewy_dims(), n.loewy_dims()) {
        return v;
    }
    if let Some(v) = invariant("socle dim", m.socle().dim(), n.socle().dim()) {
        return v;
    }
    if let Some(v) = invariant("minimal generators", m.num_generators(), n.num_generators()) {
        return v;
    }
    let (Ok(hom_mn), Ok(hom_mm)) = (hom_module(m, n), hom_module(m, m)) else {
        return IsoVerdict::Unknown;
    };
    if let Some(v) = invariant(
        "dim Hom(M,-) vs dim End(M)",
        hom_mm.module.dim(),
        hom_mn.module.dim(),
    ) {
        return v;
    }
    if let (Ok(bm), Ok(bn)) = (m.betti(1), n.betti(1)) {
        if let Some(v) = invariant("betti prefix", bm, bn) {
            return v;
        }
    }
    if let Ok(hom_nn) = hom_module(n, n) {
        if let Some(v) = invariant("dim End", hom_mm.module.dim(), hom_nn.module.dim()) {
            return v;
        }
    }

    let field = m.field();
    let p = field.p();
    let maps = hom_mn.maps();
    let h = maps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let mut f = Matrix::zeros(field, n.dim(), m.dim());
        for g in maps {
            f.add_scaled(rng.gen_range(0..p), g);
        }
        if f.is_invertible() {
            if let Some(v) = verified(m, n, f) {
                return v;
            }
        }
    }
    let exhaustive_cost = (p as f64).powi(h as i32) * (m.dim() as f64).powi(3);
    if p <= 3 && h <= opts.exhaustive_dim && exhaustive_cost <= 2e9 {
        let mut coeffs = vec![0u32; h];
        loop {
            let mut f = Matrix::zeros(field, n.dim(), m.dim());
            for (c, g) in coeffs.iter().zip(maps) {
                f.add_scaled(*c, g);
            }
            if f.is_invertible() {
                if let Some(v) = verified(m, n, f) {
                    return v;
                }
            }
            // odometer increment
            let mut k = 0;
            while k < h {
                coeffs[k] += 1;
                if coeffs[k] < p {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
            if k == h {
                break;
            }
        }
        return IsoVerdict::NotIsomorphic(IsoWitness::NoInvertibleHom { hom_dim: h });
    }
    IsoVerdict::Unknown
}

fn verified(m: &RModule, n: &RModule, f: Matrix) -> Option<IsoVerdict> {
    let map = ModuleMap {
        source: m.clone(),
        target: n.clone(),
        matrix: f,
    };
    (map.is_equivariant() && map.is_bijective()).then_some(IsoVerdict::Isomorphic(map))
}
