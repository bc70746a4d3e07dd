//! Subset calculus for chains of semidualizing modules.
//!
//! For a chain `[C_n] ◁ … ◁ [C_0]` put `B_i = Hom(C_{i-1}, C_i)` and, for a
//! subset `s ⊆ [n]`, `B_s` the tensor product of the `B_i` with `i ∈ s`
//! (`B_∅ = C_0`). The classes `B_s` behave like the Boolean lattice of
//! subsets: `[B_i] ⊴ [B_s]` exactly when `i ⊇ s`.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::modcat::{hom_module, tensor_module, RModule};
use crate::semidual::{
    auslander_class_member, certify_semidualizing, order_leq, SdOptions, SdStatus, SemidualError,
    Verdict, Witness,
};

/// Largest `n` for which the full relation is materialized (`3^n` pairs).
pub const MAX_LATTICE_N: usize = 14;
/// Largest `n` accepted by the symbolic operations.
pub const MAX_SUBSET_N: usize = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("this operation needs the chain to satisfy the nesting hypothesis (transitivity)")]
    RequiresNesting,
    #[error("dagger words need C_0 to be trivial")]
    RequiresTrivialC0,
    #[error("{i} does not contain {s}; the class is not reflexive")]
    NotReflexive { i: SubsetClass, s: SubsetClass },
    #[error("malformed dagger word {0:?}: indices must increase strictly within 1..=n")]
    MalformedWord(Vec<usize>),
    #[error("element {element} outside 1..={n}")]
    OutOfRange { element: usize, n: usize },
    #[error("n = {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("doubling needs a ⊋ c, got a = {a}, c = {c}")]
    DoublingPrecondition { a: SubsetClass, c: SubsetClass },
    #[error("chain labels must be {expected} distinct names")]
    BadLabels { expected: usize },
}

type Result<T> = std::result::Result<T, LatticeError>;

/// A subset of `{1, …, n}` as a bit mask (bit `i - 1` for element `i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct SubsetClass(u64);

impl From<SubsetClass> for Vec<usize> {
    fn from(s: SubsetClass) -> Self {
        s.elements()
    }
}

impl SubsetClass {
    pub const EMPTY: SubsetClass = SubsetClass(0);

    pub fn from_elements(elements: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n || e > MAX_SUBSET_N {
                return Err(LatticeError::OutOfRange { element: e, n });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetClass(bits))
    }

    pub fn from_bits(bits: u64) -> Self {
        SubsetClass(bits)
    }
    pub fn bits(self) -> u64 {
        self.0
    }
    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        SubsetClass(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn contains(self, e: usize) -> bool {
        (1..=64).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }
    pub fn is_superset_of(self, other: SubsetClass) -> bool {
        self.0 & other.0 == other.0
    }
    pub fn union(self, other: SubsetClass) -> Self {
        SubsetClass(self.0 | other.0)
    }
    pub fn intersection(self, other: SubsetClass) -> Self {
        SubsetClass(self.0 & other.0)
    }
    pub fn difference(self, other: SubsetClass) -> Self {
        SubsetClass(self.0 & !other.0)
    }
    pub fn elements(self) -> Vec<usize> {
        (1..=64).filter(|&e| self.contains(e)).collect()
    }
    pub fn max_element(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// All subsets of this set, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetClass> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(SubsetClass(cur))
        })
    }
}

impl fmt::Display for SubsetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "B{{{}}}", parts.join(","))
    }
}

/// A strictly increasing index sequence `i_1 < … < i_j`, standing for
/// `C_0^{†C_{i_1} … †C_{i_j}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DaggerWord(Vec<usize>);

impl DaggerWord {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        let ok = indices.iter().all(|&i| i >= 1 && i <= n) && indices.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(DaggerWord(indices))
        } else {
            Err(LatticeError::MalformedWord(indices))
        }
    }

    pub fn empty() -> Self {
        DaggerWord(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Every word over `1..=n`; there are `2^n`.
    pub fn all(n: usize) -> impl Iterator<Item = DaggerWord> {
        SubsetClass::full(n).subsets().map(|s| DaggerWord(s.elements()))
    }

    pub fn render(&self, labels: &[String]) -> String {
        let mut out = labels[0].clone();
        for &i in &self.0 {
            out.push('†');
            out.push_str(&labels[i]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSpec {
    pub n: usize,
    /// Names of `C_0, …, C_n`.
    pub labels: Vec<String>,
    pub assume_transitive: bool,
    pub assume_c0_trivial: bool,
}

impl ChainSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_SUBSET_N {
            return Err(LatticeError::TooLarge {
                n,
                limit: MAX_SUBSET_N,
            });
        }
        Ok(ChainSpec {
            n,
            labels: (0..=n).map(|i| format!("C{i}")).collect(),
            assume_transitive: true,
            assume_c0_trivial: true,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let distinct: std::collections::HashSet<&String> = labels.iter().collect();
        if labels.len() != self.n + 1 || distinct.len() != labels.len() {
            return Err(LatticeError::BadLabels { expected: self.n + 1 });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn full(&self) -> SubsetClass {
        SubsetClass::full(self.n)
    }

    fn require_nesting(&self) -> Result<()> {
        if self.assume_transitive {
            Ok(())
        } else {
            Err(LatticeError::RequiresNesting)
        }
    }

    fn check(&self, s: SubsetClass) -> Result<()> {
        if self.full().is_superset_of(s) {
            Ok(())
        } else {
            Err(LatticeError::OutOfRange {
                element: s.max_element(),
                n: self.n,
            })
        }
    }
}

/// `[B_i] ⊴ [B_s]`.
pub fn reflexive_leq(spec: &ChainSpec, i: SubsetClass, s: SubsetClass) -> Result<bool> {
    spec.require_nesting()?;
    spec.check(i)?;
    spec.check(s)?;
    Ok(i.is_superset_of(s))
}

/// `Hom(B_s, B_i) ≃ B_{i∖s}` for `s ⊆ i`.
pub fn hom_class(spec: &ChainSpec, s: SubsetClass, i: SubsetClass) -> Result<SubsetClass> {
    spec.require_nesting()?;
    spec.check(i)?;
    spec.check(s)?;
    if !i.is_superset_of(s) {
        return Err(LatticeError::NotReflexive { i, s });
    }
    Ok(i.difference(s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "class", rename_all = "snake_case")]
pub enum TensorVerdict {
    Semidualizing(SubsetClass),
    NotSemidualizing,
}

/// `B_i ⊗ B_s`: semidualizing exactly when `i ∩ s = ∅`, and then `B_{i∪s}`.
pub fn tensor_class(spec: &ChainSpec, i: SubsetClass, s: SubsetClass) -> Result<TensorVerdict> {
    spec.require_nesting()?;
    spec.check(i)?;
    spec.check(s)?;
    Ok(if i.intersection(s).is_empty() {
        TensorVerdict::Semidualizing(i.union(s))
    } else {
        TensorVerdict::NotSemidualizing
    })
}

fn normalize_over(w: &[usize], n: usize) -> SubsetClass {
    if n == 0 {
        return SubsetClass::EMPTY;
    }
    match w.split_last() {
        Some((&last, inner)) if last == n => {
            SubsetClass::full(n).difference(normalize_over(inner, n - 1))
        }
        _ => normalize_over(w, n - 1),
    }
}

/// The subset `s` with `B_s ≃ C_0^{†…}` for the word.
pub fn normalize_dagger(w: &DaggerWord, spec: &ChainSpec) -> Result<SubsetClass> {
    spec.require_nesting()?;
    if !spec.assume_c0_trivial {
        return Err(LatticeError::RequiresTrivialC0);
    }
    let w = DaggerWord::new(w.0.clone(), spec.n)?;
    Ok(normalize_over(&w.0, spec.n))
}

fn word_over(u: SubsetClass, n: usize, out: &mut Vec<usize>) {
    if n == 0 {
        return;
    }
    if u.contains(n) {
        word_over(SubsetClass::full(n).difference(u), n - 1, out);
        out.push(n);
    } else {
        word_over(u, n - 1, out);
    }
}

/// Inverse of [`normalize_dagger`].
pub fn dagger_word_for(s: SubsetClass, spec: &ChainSpec) -> Result<DaggerWord> {
    spec.require_nesting()?;
    if !spec.assume_c0_trivial {
        return Err(LatticeError::RequiresTrivialC0);
    }
    spec.check(s)?;
    let mut out = Vec::new();
    word_over(s, spec.n, &mut out);
    Ok(DaggerWord(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeNode {
    pub class: SubsetClass,
    pub name: String,
    pub dagger: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lattice {
    pub spec: ChainSpec,
    /// Ordered by cardinality, then lexicographically by elements.
    pub nodes: Vec<LatticeNode>,
    /// Every pair `(i, s)` with `i ⊇ s`, loops included.
    pub relations: Vec<(SubsetClass, SubsetClass)>,
}

fn node_order(n: usize) -> Vec<SubsetClass> {
    let mut all: Vec<SubsetClass> = SubsetClass::full(n).subsets().collect();
    all.sort_by_key(|s| (s.len(), s.elements()));
    all
}

pub fn build_lattice(spec: &ChainSpec) -> Result<Lattice> {
    spec.require_nesting()?;
    if spec.n > MAX_LATTICE_N {
        return Err(LatticeError::TooLarge {
            n: spec.n,
            limit: MAX_LATTICE_N,
        });
    }
    let order = node_order(spec.n);
    let nodes = order
        .iter()
        .map(|&s| {
            let dagger = if spec.assume_c0_trivial {
                Some(dagger_word_for(s, spec)?.render(&spec.labels))
            } else {
                None
            };
            Ok(LatticeNode {
                class: s,
                name: s.to_string(),
                dagger,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut relations = Vec::with_capacity(3usize.pow(spec.n as u32));
    for &i in &order {
        for s in i.subsets() {
            relations.push((i, s));
        }
    }
    Ok(Lattice {
        spec: spec.clone(),
        nodes,
        relations,
    })
}

impl Lattice {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    fn rank(&self) -> std::collections::HashMap<SubsetClass, usize> {
        self.nodes.iter().enumerate().map(|(k, n)| (n.class, k)).collect()
    }

    fn sorted(&self, mut edges: Vec<(SubsetClass, SubsetClass)>) -> Vec<(SubsetClass, SubsetClass)> {
        let rank = self.rank();
        edges.sort_by_key(|(a, b)| (rank[a], rank[b]));
        edges
    }

    /// `(i, s)` with `i ⊋ s`.
    pub fn strict_edges(&self) -> Vec<(SubsetClass, SubsetClass)> {
        self.sorted(self.relations.iter().copied().filter(|(a, b)| a != b).collect())
    }

    /// Covering pairs `(i, s)` with `i ⊋ s` and `|i| = |s| + 1`.
    pub fn hasse_edges(&self) -> Vec<(SubsetClass, SubsetClass)> {
        self.sorted(
            self.relations
                .iter()
                .copied()
                .filter(|(a, b)| a.len() == b.len() + 1)
                .collect(),
        )
    }

    pub fn to_dot(&self, hasse: bool, dagger: bool) -> String {
        let mut out = String::new();
        out.push_str("digraph reflexivity {\n");
        out.push_str("  node [shape=box];\n");
        for node in &self.nodes {
            match (&node.dagger, dagger) {
                (Some(word), true) => {
                    let _ = writeln!(out, "  \"{}\" [label=\"{}\\n{}\"];", node.name, node.name, word);
                }
                _ => {
                    let _ = writeln!(out, "  \"{}\";", node.name);
                }
            }
        }
        let edges = if hasse { self.hasse_edges() } else { self.strict_edges() };
        for (a, b) in edges {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

/// Counts without materializing the relation: `2^n` nodes, `3^n` pairs.
pub fn lattice_counts(spec: &ChainSpec) -> Result<(u128, u128)> {
    spec.require_nesting()?;
    Ok((1u128 << spec.n, 3u128.pow(spec.n as u32)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublingStep {
    pub source: SubsetClass,
    pub image: SubsetClass,
    /// An element of `image ∖ c`, showing the image is not below `c`.
    pub witness: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublingTrace {
    pub a: SubsetClass,
    pub c: SubsetClass,
    pub steps: Vec<DoublingStep>,
    pub injective: bool,
    pub disjoint: bool,
}

/// `Φ_a(s) = a ∖ s` sends the classes below `c` to classes below `a` but not
/// below `c`, injectively; hence `a` has at least twice as many.
pub fn verify_doubling(a: SubsetClass, c: SubsetClass) -> Result<DoublingTrace> {
    if a == c || !a.is_superset_of(c) {
        return Err(LatticeError::DoublingPrecondition { a, c });
    }
    let mut steps = Vec::new();
    let mut images = std::collections::HashSet::new();
    let mut disjoint = true;
    for s in c.subsets() {
        let image = a.difference(s);
        let outside = image.difference(c);
        let witness = outside.elements().first().copied();
        disjoint &= witness.is_some();
        images.insert(image);
        steps.push(DoublingStep {
            source: s,
            image,
            witness: witness.unwrap_or(0),
        });
    }
    Ok(DoublingTrace {
        a,
        c,
        injective: images.len() == steps.len(),
        disjoint,
        steps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangeBound {
    pub bound: usize,
    pub trace: Vec<String>,
}

/// Lower bound for the number of classes over `S` from the classes over `R`.
pub fn symbolic_base_change(catalog_size: usize, gorenstein: bool) -> BaseChangeBound {
    let mut trace = vec![format!(
        "base change is injective on classes: |S(S)| >= |S(R)| = {catalog_size}"
    )];
    if gorenstein {
        trace.push("the map is Gorenstein: no doubling is asserted".into());
        return BaseChangeBound {
            bound: catalog_size,
            trace,
        };
    }
    trace.push(
        "with A dualizing for R, the image of S_A(R) lies in S_{S⊗A}(S) ⊆ S(S) = S_{D^S}(S)".into(),
    );
    trace.push("S⊗A is not dualizing for S, so [D^S] ◁ [S⊗A] and doubling applies".into());
    trace.push(format!("|S(S)| >= 2|S(R)| = {}", 2 * catalog_size));
    BaseChangeBound {
        bound: 2 * catalog_size,
        trace,
    }
}

// ---------------------------------------------------------------------------
// Cross-validation against concrete modules
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum CrossValidationError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Semidual(#[from] SemidualError),
    #[error("expected {expected} chain modules, got {got}")]
    ChainLength { expected: usize, got: usize },
    #[error("cross-validation is limited to n <= 3")]
    TooLong,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcreteClass {
    pub class: SubsetClass,
    pub dim: usize,
    pub status: SdStatus,
    #[serde(skip)]
    pub module: RModule,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub i: SubsetClass,
    pub s: SubsetClass,
    pub expected: bool,
    pub observed: Verdict,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidationReport {
    pub n: usize,
    pub chain_certified: bool,
    pub chain_ordered: bool,
    pub chain_strict: bool,
    pub nesting_verified: bool,
    pub classes: Vec<ConcreteClass>,
    pub order_checks: Vec<PairCheck>,
    pub auslander_checks: Vec<PairCheck>,
    pub tensor_checks: Vec<PairCheck>,
    pub mismatches: Vec<String>,
}

impl CrossValidationReport {
    pub fn all_agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn tensor_all(mods: &[&RModule]) -> std::result::Result<RModule, SemidualError> {
    let mut acc = mods[0].clone();
    for m in &mods[1..] {
        acc = tensor_module(&acc, m)?.module;
    }
    Ok(acc)
}

/// Builds `B_s` for every subset from concrete `C_0, …, C_n` and compares the
/// computed relations with the subset calculus.
pub fn cross_validate(
    spec: &ChainSpec,
    chain: &[RModule],
    opts: &SdOptions,
) -> std::result::Result<CrossValidationReport, CrossValidationError> {
    spec.require_nesting()?;
    if spec.n > 3 {
        return Err(CrossValidationError::TooLong);
    }
    if chain.len() != spec.n + 1 {
        return Err(CrossValidationError::ChainLength {
            expected: spec.n + 1,
            got: chain.len(),
        });
    }
    let mut mismatches = Vec::new();

    let mut chain_certified = true;
    for (k, c) in chain.iter().enumerate() {
        let cert = certify_semidualizing(c, opts)?;
        if cert.is_refuted() {
            chain_certified = false;
            mismatches.push(format!("{} is not semidualizing: {:?}", spec.labels[k], cert.status));
        }
    }
    let mut chain_ordered = true;
    let mut chain_strict = true;
    for k in 1..chain.len() {
        if !order_leq(&chain[k], &chain[k - 1], opts)?.holds() {
            chain_ordered = false;
            mismatches.push(format!("[{}] ⊴ [{}] fails", spec.labels[k], spec.labels[k - 1]));
        }
        if order_leq(&chain[k - 1], &chain[k], opts)?.holds() {
            chain_strict = false;
            mismatches.push(format!("[{}] ⊴ [{}] holds; chain not strict", spec.labels[k - 1], spec.labels[k]));
        }
    }

    let b: Vec<RModule> = (1..=spec.n)
        .map(|i| hom_module(&chain[i - 1], &chain[i]).map(|h| h.module))
        .collect::<std::result::Result<_, _>>()
        .map_err(SemidualError::from)?;
    let order = node_order(spec.n);
    let mut classes = Vec::with_capacity(order.len());
    for &s in &order {
        let module = if s.is_empty() {
            chain[0].clone()
        } else {
            let parts: Vec<&RModule> = s.elements().iter().map(|&i| &b[i - 1]).collect();
            tensor_all(&parts)?
        };
        let cert = certify_semidualizing(&module, opts)?;
        if cert.is_refuted() {
            mismatches.push(format!("{s} is not semidualizing: {:?}", cert.status));
        }
        classes.push(ConcreteClass {
            class: s,
            dim: module.dim(),
            status: cert.status,
            module,
        });
    }

    // S_{C_0} ⊆ S_{C_1} ⊆ … on the constructed classes
    let mut nesting_verified = true;
    for x in &classes {
        let mut prev = true;
        for (k, c) in chain.iter().enumerate() {
            let here = is_reflexive_holds(&x.module, c, opts)?;
            if prev && !here && k > 0 {
                nesting_verified = false;
                mismatches.push(format!(
                    "{} is {}-reflexive but not {}-reflexive",
                    x.class,
                    spec.labels[k - 1],
                    spec.labels[k]
                ));
            }
            prev = here;
        }
    }

    let mut order_checks = Vec::new();
    let mut auslander_checks = Vec::new();
    let mut tensor_checks = Vec::new();
    for x in &classes {
        for y in &classes {
            let (i, s) = (x.class, y.class);
            let expected = reflexive_leq(spec, i, s)?;
            let observed = order_leq(&x.module, &y.module, opts)?;
            let agrees = observed.holds() == expected;
            if !agrees {
                mismatches.push(format!("[{i}] ⊴ [{s}]: expected {expected}, observed {}", observed.short()));
            }
            order_checks.push(PairCheck { i, s, expected, observed, agrees });

            let disjoint = matches!(tensor_class(spec, i, s)?, TensorVerdict::Semidualizing(_));
            let observed = auslander_class_member(&x.module, &y.module, opts)?;
            let agrees = observed.holds() == disjoint;
            if !agrees {
                mismatches.push(format!("{i} in A_{s}: expected {disjoint}, observed {}", observed.short()));
            }
            auslander_checks.push(PairCheck { i, s, expected: disjoint, observed, agrees });

            let t = tensor_module(&x.module, &y.module).map_err(SemidualError::from)?.module;
            let cert = certify_semidualizing(&t, opts)?;
            let observed = match &cert.status {
                SdStatus::Certified => Verdict::Yes,
                SdStatus::CertifiedToBound => Verdict::YesToBound {
                    checked_to: cert.ext_checked_to,
                },
                SdStatus::Refuted { reason } => Verdict::No {
                    witness: Witness::NotSemidualizing {
                        reason: reason.clone(),
                    },
                },
            };
            let agrees = observed.holds() == disjoint;
            if !agrees {
                mismatches.push(format!("{i} ⊗ {s} semidualizing: expected {disjoint}, observed {}", observed.short()));
            }
            tensor_checks.push(PairCheck { i, s, expected: disjoint, observed, agrees });
        }
    }

    Ok(CrossValidationReport {
        n: spec.n,
        chain_certified,
        chain_ordered,
        chain_strict,
        nesting_verified,
        classes,
        order_checks,
        auslander_checks,
        tensor_checks,
        mismatches,
    })
}

fn is_reflexive_holds(x: &RModule, c: &RModule, opts: &SdOptions) -> std::result::Result<bool, SemidualError> {
    Ok(crate::semidual::is_reflexive(x, c, opts)?.holds())
}
