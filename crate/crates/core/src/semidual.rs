//! Semidualizing modules: certification, reflexivity, Bass and Auslander
//! classes, Bass series, flat base change and a bounded enumeration of
//! semidualizing classes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use log::{debug, info};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{tensor_algebras, AlgebraError, LocalAlgebra};
use crate::exactla::{Matrix, Subspace};
use crate::modcat::{
    ext_dim, external_tensor, free_module, hom_module, is_isomorphic_with, matlis_dual, quotient,
    regular_module, tensor_module, tor_dim, HomModule, IsoOptions, IsoVerdict, IsoWitness,
    ModuleError, ModuleMap, RModule, SyzygyRecurrence,
};

#[derive(Debug, Error)]
pub enum SemidualError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

type Result<T> = std::result::Result<T, SemidualError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[derive(Default)]
pub struct SdOptions {
    /// Highest Ext/Tor degree examined when no finite certificate is found.
    /// Defaults to `2 * dim R`.
    pub ext_bound: Option<usize>,
    pub iso: IsoOptions,
}


impl SdOptions {
    pub fn with_seed(seed: u64) -> Self {
        SdOptions {
            ext_bound: None,
            iso: IsoOptions {
                seed,
                ..IsoOptions::default()
            },
        }
    }

    pub fn bound_for(&self, algebra: &LocalAlgebra) -> usize {
        self.ext_bound.unwrap_or(2 * algebra.dim()).max(1)
    }
}

// ---------------------------------------------------------------------------
// Vanishing of Ext and Tor
// ---------------------------------------------------------------------------

/// Why a vanishing statement holds in every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VanishingProof {
    /// An argument is free.
    Free,
    /// The resolution of the first argument stops after `length` steps.
    Terminated { length: usize },
    /// The syzygies of the first argument repeat up to multiplicity.
    Recurrence(SyzygyRecurrence),
    /// The target of Ext is injective.
    InjectiveTarget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Vanishing {
    Certified { proof: VanishingProof, checked_to: usize },
    ToBound { checked_to: usize, resolution_limit: bool },
    Nonzero { degree: usize, dim: usize },
}

impl Vanishing {
    pub fn holds(&self) -> bool {
        !matches!(self, Vanishing::Nonzero { .. })
    }
    pub fn is_certified(&self) -> bool {
        matches!(self, Vanishing::Certified { .. })
    }
    pub fn checked_to(&self) -> usize {
        match *self {
            Vanishing::Certified { checked_to, .. } | Vanishing::ToBound { checked_to, .. } => {
                checked_to
            }
            Vanishing::Nonzero { degree, .. } => degree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Functor {
    Ext,
    Tor,
}

fn vanishing(f: Functor, x: &RModule, y: &RModule, bound: usize) -> Result<Vanishing> {
    if !x.same_algebra(y) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let proven = |proof| Ok(Vanishing::Certified { proof, checked_to: 0 });
    if x.dim() == 0 || y.dim() == 0 || x.is_free() {
        return proven(VanishingProof::Free);
    }
    match f {
        Functor::Ext if y.is_injective() => return proven(VanishingProof::InjectiveTarget),
        Functor::Tor if y.is_free() => return proven(VanishingProof::Free),
        _ => {}
    }
    for i in 1..=bound {
        let dim = match f {
            Functor::Ext => ext_dim(i, x, y),
            Functor::Tor => tor_dim(i, x, y),
        };
        let dim = match dim {
            Ok(d) => d,
            Err(ModuleError::ResolutionTooLarge { .. }) => {
                return Ok(Vanishing::ToBound {
                    checked_to: i - 1,
                    resolution_limit: true,
                })
            }
            Err(e) => return Err(e.into()),
        };
        if dim != 0 {
            return Ok(Vanishing::Nonzero { degree: i, dim });
        }
        if let Some(pd) = x.projective_dimension_within(i + 1)? {
            if pd <= i {
                return Ok(Vanishing::Certified {
                    proof: VanishingProof::Terminated { length: pd },
                    checked_to: i,
                });
            }
        }
        if let Some(rec) = x.syzygy_recurrence(i + 1)? {
            if rec.window_end() <= i {
                return Ok(Vanishing::Certified {
                    proof: VanishingProof::Recurrence(rec),
                    checked_to: i,
                });
            }
        }
    }
    Ok(Vanishing::ToBound {
        checked_to: bound,
        resolution_limit: false,
    })
}

/// `Ext^i(x, y) = 0` for `i >= 1`, certified when possible.
pub fn ext_vanishing(x: &RModule, y: &RModule, bound: usize) -> Result<Vanishing> {
    vanishing(Functor::Ext, x, y, bound)
}

/// `Tor_i(x, y) = 0` for `i >= 1`, resolving `x`.
pub fn tor_vanishing(x: &RModule, y: &RModule, bound: usize) -> Result<Vanishing> {
    vanishing(Functor::Tor, x, y, bound)
}

// ---------------------------------------------------------------------------
// Natural maps
// ---------------------------------------------------------------------------

fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn map_into_hom(
    source: &RModule,
    hom: &HomModule,
    images: impl Iterator<Item = Matrix>,
) -> Result<ModuleMap> {
    let mut cols = Vec::with_capacity(source.dim());
    for f in images {
        let c = hom
            .coords(&f)
            .ok_or_else(|| SemidualError::Precondition("natural map is not R-linear".into()))?;
        cols.push(c);
    }
    Ok(ModuleMap {
        source: source.clone(),
        target: hom.module.clone(),
        matrix: Matrix::from_columns(source.field(), hom.module.dim(), &cols),
    })
}

/// `R -> Hom(C, C)`, `r ↦ (c ↦ r c)`.
pub fn homothety(c: &RModule) -> Result<ModuleMap> {
    let hom = hom_module(c, c)?;
    let r = regular_module(c.algebra());
    map_into_hom(&r, &hom, c.actions().iter().cloned())
}

/// `X -> Hom(Hom(X, C), C)`, `x ↦ (f ↦ f(x))`.
pub fn biduality(x: &RModule, c: &RModule) -> Result<ModuleMap> {
    let h = hom_module(x, c)?;
    let hh = hom_module(&h.module, c)?;
    let field = x.field();
    let images = (0..x.dim()).map(|j| {
        let cols: Vec<Vec<u32>> = h.maps().iter().map(|f| f.column(j)).collect();
        Matrix::from_columns(field, c.dim(), &cols)
    });
    map_into_hom(x, &hh, images)
}

/// `C ⊗ Hom(C, X) -> X`, `c ⊗ f ↦ f(c)`.
pub fn evaluation(c: &RModule, x: &RModule) -> Result<ModuleMap> {
    let h = hom_module(c, x)?;
    let t = tensor_module(c, &h.module)?;
    let hd = h.module.dim();
    let cols: Vec<Vec<u32>> = t
        .basis_indices()
        .iter()
        .map(|&idx| h.maps()[idx % hd].column(idx / hd))
        .collect();
    Ok(ModuleMap {
        source: t.module.clone(),
        target: x.clone(),
        matrix: Matrix::from_columns(x.field(), x.dim(), &cols),
    })
}

/// `X -> Hom(C, C ⊗ X)`, `x ↦ (c ↦ c ⊗ x)`.
pub fn unit_map(c: &RModule, x: &RModule) -> Result<ModuleMap> {
    let t = tensor_module(c, x)?;
    let hom = hom_module(c, &t.module)?;
    let field = x.field();
    let raw = c.dim() * x.dim();
    let images = (0..x.dim()).map(|j| {
        let cols: Vec<Vec<u32>> = (0..c.dim())
            .map(|u| t.project(&unit_vector(raw, t.raw_index(u, j))))
            .collect();
        Matrix::from_columns(field, t.module.dim(), &cols)
    });
    map_into_hom(x, &hom, images)
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    ExtNonzero { degree: usize, dim: usize },
    NonBijectiveHomothety { hom_dim: usize, rank: usize },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::ExtNonzero { degree, dim } => {
                write!(f, "Ext^{degree}(C,C) has dimension {dim}")
            }
            Refutation::NonBijectiveHomothety { hom_dim, rank } => {
                write!(f, "homothety R -> Hom(C,C) not bijective (dim Hom = {hom_dim}, rank {rank})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SdStatus {
    Certified,
    CertifiedToBound,
    Refuted { reason: Refutation },
}

impl SdStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SdStatus::Certified => "certified",
            SdStatus::CertifiedToBound => "certified_to_bound",
            SdStatus::Refuted { .. } => "refuted",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SdCertificate {
    #[serde(skip)]
    pub module: RModule,
    pub dim: usize,
    pub homothety_iso: bool,
    pub ext_checked_to: usize,
    pub bound: usize,
    /// Syzygy recurrence used for the certificate, if any.
    pub periodicity: Option<SyzygyRecurrence>,
    pub proof: Option<VanishingProof>,
    pub status: SdStatus,
}

impl SdCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == SdStatus::Certified
    }
    pub fn is_refuted(&self) -> bool {
        matches!(self.status, SdStatus::Refuted { .. })
    }
}

pub fn certify_semidualizing(c: &RModule, opts: &SdOptions) -> Result<SdCertificate> {
    let bound = opts.bound_for(c.algebra());
    let hom = homothety(c)?;
    let rank = hom.rank();
    let homothety_iso = hom.is_bijective();
    let ext = ext_vanishing(c, c, bound)?;
    let (proof, periodicity) = match ext {
        Vanishing::Certified { proof, .. } => (
            Some(proof),
            match proof {
                VanishingProof::Recurrence(r) => Some(r),
                _ => None,
            },
        ),
        _ => (None, None),
    };
    let status = match ext {
        Vanishing::Nonzero { degree, dim } => SdStatus::Refuted {
            reason: Refutation::ExtNonzero { degree, dim },
        },
        _ if !homothety_iso => SdStatus::Refuted {
            reason: Refutation::NonBijectiveHomothety {
                hom_dim: hom.target.dim(),
                rank,
            },
        },
        Vanishing::Certified { .. } => SdStatus::Certified,
        Vanishing::ToBound { .. } => SdStatus::CertifiedToBound,
    };
    debug!("certify: dim {} -> {}", c.dim(), status.name());
    Ok(SdCertificate {
        module: c.clone(),
        dim: c.dim(),
        homothety_iso,
        ext_checked_to: ext.checked_to(),
        bound,
        periodicity,
        proof,
        status,
    })
}

/// The dualizing module `ω = Hom_k(R, k)`.
pub fn dualizing_module(algebra: &Arc<LocalAlgebra>) -> RModule {
    matlis_dual(&regular_module(algebra))
}

/// `c ≅ ω`. An injective module with one-dimensional socle is `ω`, which
/// decides the cases the randomized isomorphism search leaves open.
pub fn is_dualizing(c: &RModule, opts: &SdOptions) -> bool {
    let omega = dualizing_module(c.algebra());
    match is_isomorphic_with(c, &omega, &opts.iso) {
        IsoVerdict::Isomorphic(_) => true,
        IsoVerdict::NotIsomorphic(_) => false,
        IsoVerdict::Unknown => c.is_injective() && c.socle().dim() == 1,
    }
}

// ---------------------------------------------------------------------------
// Verdicts: reflexivity, Bass and Auslander classes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ExtNonzero { of: String, degree: usize, dim: usize },
    TorNonzero { of: String, degree: usize, dim: usize },
    NotBijective { map: String, kernel: usize, cokernel: usize },
    NotSemidualizing { reason: Refutation },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ExtNonzero { of, degree, dim } => write!(f, "Ext^{degree}{of} has dimension {dim}"),
            Witness::TorNonzero { of, degree, dim } => write!(f, "Tor_{degree}{of} has dimension {dim}"),
            Witness::NotBijective { map, kernel, cokernel } => {
                write!(f, "{map} not bijective (kernel {kernel}, cokernel {cokernel})")
            }
            Witness::NotSemidualizing { reason } => write!(f, "not semidualizing: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    YesToBound { checked_to: usize },
    No { witness: Witness },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::No { .. })
    }
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
    pub fn short(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::YesToBound { .. } => "yes_to_bound",
            Verdict::No { .. } => "no",
        }
    }
}

/// Accumulates conditions; the first failure wins.
struct Conditions {
    to_bound: Option<usize>,
}

impl Conditions {
    fn new() -> Self {
        Conditions { to_bound: None }
    }

    fn vanish(&mut self, v: Vanishing, tor: bool, of: &str) -> Option<Verdict> {
        match v {
            Vanishing::Nonzero { degree, dim } => Some(Verdict::No {
                witness: if tor {
                    Witness::TorNonzero { of: of.into(), degree, dim }
                } else {
                    Witness::ExtNonzero { of: of.into(), degree, dim }
                },
            }),
            Vanishing::ToBound { checked_to, .. } => {
                self.to_bound = Some(self.to_bound.map_or(checked_to, |b| b.min(checked_to)));
                None
            }
            Vanishing::Certified { .. } => None,
        }
    }

    fn bijective(&mut self, name: &str, m: &ModuleMap) -> Option<Verdict> {
        (!m.is_bijective()).then(|| Verdict::No {
            witness: Witness::NotBijective {
                map: name.into(),
                kernel: m.kernel_dim(),
                cokernel: m.cokernel_dim(),
            },
        })
    }

    fn finish(self) -> Verdict {
        match self.to_bound {
            Some(checked_to) => Verdict::YesToBound { checked_to },
            None => Verdict::Yes,
        }
    }
}

macro_rules! check {
    ($e:expr) => {
        if let Some(v) = $e {
            return Ok(v);
        }
    };
}

/// Whether `x` is `c`-reflexive: biduality bijective and `Ext^{>=1}(x, c)`,
/// `Ext^{>=1}(Hom(x, c), c)` vanish.
pub fn is_reflexive(x: &RModule, c: &RModule, opts: &SdOptions) -> Result<Verdict> {
    let bound = opts.bound_for(c.algebra());
    let mut cond = Conditions::new();
    check!(cond.bijective("biduality X -> Hom(Hom(X,C),C)", &biduality(x, c)?));
    check!(cond.vanish(ext_vanishing(x, c, bound)?, false, "(X,C)"));
    let dual = hom_module(x, c)?.module;
    check!(cond.vanish(ext_vanishing(&dual, c, bound)?, false, "(Hom(X,C),C)"));
    Ok(cond.finish())
}

/// `[c] ⊴ [b]`, i.e. `b` is `c`-reflexive.
pub fn order_leq(c: &RModule, b: &RModule, opts: &SdOptions) -> Result<Verdict> {
    is_reflexive(b, c, opts)
}

/// `Hom(b, c)` for a `c`-reflexive `b`.
pub fn dagger(b: &RModule, c: &RModule, opts: &SdOptions) -> Result<RModule> {
    let v = order_leq(c, b, opts)?;
    if let Verdict::No { witness } = v {
        return Err(SemidualError::Precondition(format!(
            "module is not reflexive with respect to the target: {witness}"
        )));
    }
    Ok(hom_module(b, c)?.module)
}

pub fn bass_class_member(x: &RModule, c: &RModule, opts: &SdOptions) -> Result<Verdict> {
    let bound = opts.bound_for(c.algebra());
    let mut cond = Conditions::new();
    check!(cond.bijective("evaluation C⊗Hom(C,X) -> X", &evaluation(c, x)?));
    check!(cond.vanish(ext_vanishing(c, x, bound)?, false, "(C,X)"));
    let h = hom_module(c, x)?.module;
    check!(cond.vanish(tor_vanishing(c, &h, bound)?, true, "(C,Hom(C,X))"));
    Ok(cond.finish())
}

pub fn auslander_class_member(x: &RModule, c: &RModule, opts: &SdOptions) -> Result<Verdict> {
    let bound = opts.bound_for(c.algebra());
    let mut cond = Conditions::new();
    check!(cond.bijective("unit X -> Hom(C,C⊗X)", &unit_map(c, x)?));
    check!(cond.vanish(tor_vanishing(c, x, bound)?, true, "(C,X)"));
    let t = tensor_module(c, x)?.module;
    check!(cond.vanish(ext_vanishing(c, &t, bound)?, false, "(C,C⊗X)"));
    Ok(cond.finish())
}

// ---------------------------------------------------------------------------
// Bass series
// ---------------------------------------------------------------------------

/// A truncated Laurent series `t^offset * Σ coeffs[n] t^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BassSeries {
    pub offset: i64,
    pub coeffs: Vec<u64>,
    /// Requested truncation degree.
    pub truncation: usize,
    /// False when the computation stopped before `truncation`; `coeffs`
    /// then holds only the degrees actually computed.
    pub complete: bool,
    pub recurrence: Option<SyzygyRecurrence>,
}

impl BassSeries {
    pub fn constant(c: u64, truncation: usize) -> Self {
        let mut coeffs = vec![0; truncation + 1];
        coeffs[0] = c;
        BassSeries {
            offset: 0,
            coeffs,
            truncation,
            complete: true,
            recurrence: None,
        }
    }

    /// Product, truncated to the degrees both factors know.
    pub fn convolve(&self, other: &BassSeries) -> BassSeries {
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len)
            .map(|n| {
                (0..=n)
                    .map(|k| self.coeffs[k].saturating_mul(other.coeffs[n - k]))
                    .fold(0u64, u64::saturating_add)
            })
            .collect();
        BassSeries {
            offset: self.offset + other.offset,
            coeffs,
            truncation: self.truncation.min(other.truncation),
            complete: self.complete && other.complete,
            recurrence: None,
        }
    }

    /// `Some(d)` when the series is `t^d` within its truncation.
    pub fn monomial_degree(&self) -> Option<i64> {
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&n| self.coeffs[n] != 0).collect();
        match nz.as_slice() {
            [n] if self.coeffs[*n] == 1 => Some(self.offset + *n as i64),
            _ => None,
        }
    }
}

impl fmt::Display for BassSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.offset + n as i64;
            terms.push(match (c, e) {
                (c, 0) => c.to_string(),
                (1, 1) => "t".to_string(),
                (c, 1) => format!("{c}t"),
                (1, e) => format!("t^{e}"),
                (c, e) => format!("{c}t^{e}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{}", terms.join(" + "))?;
        write!(f, " + O(t^{})", self.offset + self.coeffs.len() as i64)
    }
}

/// Betti numbers `β_0..=β_trunc`, extrapolated along a syzygy recurrence.
pub fn betti_series(m: &RModule, trunc: usize) -> Result<BassSeries> {
    let mut known: Vec<u64> = Vec::new();
    let mut recurrence = None;
    let mut complete = true;
    for n in 0..=trunc {
        match m.betti(n) {
            Ok(b) => known = b.into_iter().map(|x| x as u64).collect(),
            Err(ModuleError::ResolutionTooLarge { .. }) => {
                complete = false;
                break;
            }
            Err(e) => return Err(e.into()),
        }
        if known[n] == 0 {
            known.resize(trunc + 1, 0);
            break;
        }
        if let Some(rec) = m.syzygy_recurrence(n)? {
            if rec.window_end() <= n {
                recurrence = Some(rec);
                known = rec.extrapolate(&known, trunc);
                break;
            }
        }
    }
    Ok(BassSeries {
        offset: 0,
        coeffs: known,
        truncation: trunc,
        complete,
        recurrence,
    })
}

/// `I_R(t) = Σ μ^n t^n` with `μ^n = dim Ext^n(k, R)`. Over an Artinian ring
/// `μ^n` equals the `n`-th Betti number of `ω`, which is what is computed.
pub fn bass_series(algebra: &Arc<LocalAlgebra>, trunc: usize) -> Result<BassSeries> {
    betti_series(&dualizing_module(algebra), trunc)
}

pub fn is_gorenstein(algebra: &LocalAlgebra) -> bool {
    algebra.socle().dim() == 1
}

/// The flat map `φ: R -> R ⊗_k T` with closed fibre `T`.
pub fn is_gorenstein_hom(fibre: &LocalAlgebra) -> bool {
    is_gorenstein(fibre)
}

#[derive(Clone, Debug)]
pub struct FlatExtension {
    pub base: Arc<LocalAlgebra>,
    pub fibre: Arc<LocalAlgebra>,
    pub total: Arc<LocalAlgebra>,
}

impl FlatExtension {
    pub fn new(base: &Arc<LocalAlgebra>, fibre: &Arc<LocalAlgebra>) -> Result<Self> {
        Ok(FlatExtension {
            base: base.clone(),
            fibre: fibre.clone(),
            total: tensor_algebras(base, fibre)?,
        })
    }

    pub fn is_gorenstein(&self) -> bool {
        is_gorenstein_hom(&self.fibre)
    }

    /// `c ⊗_k T` over `R ⊗_k T`.
    pub fn base_change(&self, c: &RModule) -> Result<RModule> {
        Ok(external_tensor(c, &regular_module(&self.fibre), &self.total)?)
    }

    /// `c ⊗_k d` for `c` over `R` and `d` over `T`.
    pub fn tensor(&self, c: &RModule, d: &RModule) -> Result<RModule> {
        Ok(external_tensor(c, d, &self.total)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomBassReport {
    pub base: BassSeries,
    pub relative: BassSeries,
    pub total: BassSeries,
    pub product: BassSeries,
    pub gorenstein: bool,
    /// `I^S = I_φ · I^R` on every degree known for both sides.
    pub identity_holds: bool,
    pub identity_checked_to: usize,
}

/// `I_φ` for a flat extension is the Bass series of the closed fibre.
pub fn hom_bass_series(ext: &FlatExtension, trunc: usize) -> Result<HomBassReport> {
    let base = bass_series(&ext.base, trunc)?;
    let relative = bass_series(&ext.fibre, trunc)?;
    let total = bass_series(&ext.total, trunc)?;
    let product = relative.convolve(&base);
    let n = product.coeffs.len().min(total.coeffs.len());
    let identity_holds = product.coeffs[..n] == total.coeffs[..n];
    Ok(HomBassReport {
        gorenstein: ext.is_gorenstein(),
        identity_holds,
        identity_checked_to: n.saturating_sub(1),
        base,
        relative,
        total,
        product,
    })
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumOptions {
    /// Largest number of generators of a candidate.
    pub gen_bound: usize,
    /// Largest number of relations; `None` means every submodule of `m R^r`.
    pub rel_bound: Option<usize>,
    /// Largest number of relation submodules examined per generator count.
    pub candidate_cap: usize,
    pub sd: SdOptions,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            gen_bound: 3,
            rel_bound: None,
            candidate_cap: 50_000,
            sd: SdOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SdClassRecord {
    pub label: String,
    #[serde(skip)]
    pub representative: RModule,
    pub generators: usize,
    pub betti_prefix: Vec<usize>,
    pub socle_dim: usize,
    pub dualizing: bool,
    pub free: bool,
    pub certificate: SdCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct SdCatalog {
    pub algebra_dim: usize,
    pub options: EnumOptions,
    pub ext_bound: usize,
    pub classes: Vec<SdClassRecord>,
    /// `order[i][j]` is the verdict for `[classes[i]] ⊴ [classes[j]]`.
    pub order: Vec<Vec<Verdict>>,
    pub count: usize,
    pub power_of_two: Option<u32>,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub candidates_examined: usize,
    pub passed_filters: usize,
    pub refuted_classes: usize,
    pub undecided_isomorphism: usize,
    /// True when some generator count hit the candidate cap.
    pub truncated: bool,
}

impl SdCatalog {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j].holds()
    }
}

/// Projective representatives of the nonzero vectors of `F_p^n`.
fn projective_points(p: u32, n: usize, cap: usize) -> Option<Vec<Vec<u32>>> {
    let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(p as usize))?;
    if (total - 1) / (p as usize - 1).max(1) > cap {
        return None;
    }
    let mut out = Vec::new();
    for mut code in 1..total {
        let mut v = vec![0u32; n];
        for x in v.iter_mut() {
            *x = (code % p as usize) as u32;
            code /= p as usize;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    Some(out)
}

/// Submodules `K ⊆ m R^r` generated by at most `rel_bound` elements.
fn relation_submodules(
    free: &RModule,
    m_basis: &[Vec<u32>],
    rel_bound: usize,
    cap: usize,
) -> (Vec<Subspace>, bool) {
    let field = free.field();
    let n = free.dim();
    let Some(points) = projective_points(field.p(), m_basis.len(), cap.max(1) * 4) else {
        return (vec![Subspace::zero(field, n)], true);
    };
    let vectors: Vec<Vec<u32>> = points
        .iter()
        .map(|c| {
            let mut v = vec![0u32; n];
            for (coef, b) in c.iter().zip(m_basis) {
                if *coef != 0 {
                    field.axpy(&mut v, *coef, b);
                }
            }
            v
        })
        .collect();
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let zero = Subspace::zero(field, n);
    seen.insert(zero.basis().to_vec());
    let mut all = vec![zero.clone()];
    let mut frontier = vec![zero];
    let mut truncated = false;
    for _ in 0..rel_bound {
        let mut next = Vec::new();
        'outer: for k in &frontier {
            for v in &vectors {
                if k.contains(v) {
                    continue;
                }
                let mut rows = k.basis().to_vec();
                rows.extend(free.actions().iter().map(|a| a.mul_vec(v)));
                let s = Subspace::span(field, n, rows);
                if seen.insert(s.basis().to_vec()) {
                    all.push(s.clone());
                    next.push(s);
                    if all.len() >= cap {
                        truncated = true;
                        break 'outer;
                    }
                }
            }
        }
        if next.is_empty() || truncated {
            break;
        }
        frontier = next;
    }
    (all, truncated)
}

/// Searches `R^r / K` with `r <= gen_bound` and `K ⊆ m R^r` for semidualizing
/// modules, up to isomorphism. Every module with at most `gen_bound`
/// generators has such a minimal presentation, so with `rel_bound = None`
/// the search is complete for those generator counts.
pub fn enumerate_semidualizing(algebra: &Arc<LocalAlgebra>, opts: &EnumOptions) -> Result<SdCatalog> {
    let d = algebra.dim();
    let sd = &opts.sd;
    let mut classes: Vec<SdClassRecord> = Vec::new();
    let mut refuted: Vec<RModule> = Vec::new();
    let mut label_counts: BTreeMap<String, usize> = BTreeMap::new();
    let (mut examined, mut passed, mut undecided) = (0usize, 0usize, 0usize);
    let mut truncated = false;
    for r in 1..=opts.gen_bound.max(1) {
        let free = free_module(algebra, r);
        let m_basis: Vec<Vec<u32>> = (0..r)
            .flat_map(|t| {
                algebra
                    .maxideal_basis()
                    .iter()
                    .map(move |&l| unit_vector(r * d, t * d + l))
            })
            .collect();
        let rel_bound = opts.rel_bound.unwrap_or(m_basis.len());
        let (subs, cut) = relation_submodules(&free, &m_basis, rel_bound, opts.candidate_cap);
        truncated |= cut;
        info!("generators {r}: {} relation submodules", subs.len());
        for k in &subs {
            examined += 1;
            let c = quotient(&free, k).module;
            if !c.is_faithful() {
                continue;
            }
            let h = homothety(&c)?;
            if !h.is_bijective() {
                continue;
            }
            passed += 1;
            let mut verdicts = classes
                .iter()
                .map(|rec| &rec.representative)
                .chain(refuted.iter())
                .map(|known| is_isomorphic_with(&c, known, &sd.iso));
            let mut fresh = true;
            for v in verdicts.by_ref() {
                match v {
                    IsoVerdict::Isomorphic(_) => {
                        fresh = false;
                        break;
                    }
                    IsoVerdict::Unknown => {
                        undecided += 1;
                        fresh = false;
                        break;
                    }
                    IsoVerdict::NotIsomorphic(_) => {}
                }
            }
            if !fresh {
                continue;
            }
            let cert = certify_semidualizing(&c, sd)?;
            if cert.is_refuted() {
                refuted.push(c);
                continue;
            }
            let betti_prefix = c.betti(2).unwrap_or_default();
            let socle_dim = c.socle().dim();
            let key = format!(
                "d{}-b{}-s{}",
                c.dim(),
                betti_prefix
                    .iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join("."),
                socle_dim
            );
            let counter = label_counts.entry(key.clone()).or_insert(0);
            *counter += 1;
            classes.push(SdClassRecord {
                label: format!("{key}#{counter}"),
                generators: c.num_generators(),
                dualizing: is_dualizing(&c, sd),
                free: c.is_free(),
                betti_prefix,
                socle_dim,
                representative: c,
                certificate: cert,
            });
        }
    }
    let n = classes.len();
    let mut order = Vec::with_capacity(n);
    for a in &classes {
        let mut row = Vec::with_capacity(n);
        for b in &classes {
            row.push(order_leq(&a.representative, &b.representative, sd)?);
        }
        order.push(row);
    }
    let leq = |i: usize, j: usize| order[i][j].holds();
    let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(leq(i, j) && leq(j, i))));
    let transitive = (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|k| !(leq(i, j) && leq(j, k)) || leq(i, k)))
    });
    Ok(SdCatalog {
        algebra_dim: d,
        options: *opts,
        ext_bound: sd.bound_for(algebra),
        count: n,
        power_of_two: n.is_power_of_two().then(|| n.trailing_zeros()),
        antisymmetric,
        transitive,
        candidates_examined: examined,
        passed_filters: passed,
        refuted_classes: refuted.len(),
        undecided_isomorphism: undecided,
        truncated,
        classes,
        order,
    })
}

/// Why two modules are not isomorphic, when known.
pub fn distinguish(a: &RModule, b: &RModule, opts: &SdOptions) -> Option<IsoWitness> {
    match is_isomorphic_with(a, b, &opts.iso) {
        IsoVerdict::NotIsomorphic(w) => Some(w),
        _ => None,
    }
}
