use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use semidual_core::algebra::{build_algebra, tensor_algebras, AlgebraPresentation, LocalAlgebra};
use semidual_core::exactla::{Matrix, PrimeField};
use semidual_core::lattice::{
    build_lattice, dagger_word_for, hom_class, lattice_counts, normalize_dagger, reflexive_leq, tensor_class,
    ChainSpec, DaggerWord, SubsetClass, TensorVerdict,
};
use semidual_core::modcat::{
    ext_dim, free_module, generated_submodule, hom_module, is_isomorphic, matlis_dual, quotient, regular_module,
    residue_field, tensor_module, tor_dim, IsoVerdict, RModule,
};
use semidual_core::semidual::{
    bass_series, certify_semidualizing, dagger, dualizing_module, enumerate_semidualizing, order_leq, EnumOptions,
    FlatExtension, SdCatalog, SdOptions,
};

const PRIMES: [u64; 3] = [2, 3, 5];

fn field(i: usize) -> PrimeField {
    PrimeField::new(PRIMES[i % PRIMES.len()]).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (0usize..3, 1usize..7, 1usize..7).prop_flat_map(|(pi, r, c)| {
        let f = field(pi);
        proptest::collection::vec(0u32..f.p(), r * c).prop_map(move |d| Matrix::from_data(f, r, c, d))
    })
}

/// Small local algebras: truncated polynomial rings in one variable and
/// quotients of k[x,y] by all cubes plus random quadrics.
fn algebra_strategy() -> impl Strategy<Value = Arc<LocalAlgebra>> {
    let one_var = (0usize..2, 1u32..=5).prop_map(|(pi, e)| {
        let pres = AlgebraPresentation::parse(field(pi), &["x"], &[&format!("x^{e}")], e.max(1)).unwrap();
        build_algebra(&pres).unwrap()
    });
    let two_var = (0usize..2, proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..=3)).prop_map(
        |(pi, quads)| {
            let f = field(pi);
            let mut rels: Vec<String> = ["x^3", "x^2*y", "x*y^2", "y^3"].iter().map(|s| s.to_string()).collect();
            for q in quads {
                let terms: Vec<String> = ["x^2", "x*y", "y^2"]
                    .iter()
                    .zip(&q)
                    .filter(|(_, &c)| c % f.p() != 0)
                    .map(|(m, c)| format!("{}*{m}", c % f.p()))
                    .collect();
                if !terms.is_empty() {
                    rels.push(terms.join(" + "));
                }
            }
            let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
            build_algebra(&AlgebraPresentation::parse(f, &["x", "y"], &refs, 3).unwrap()).unwrap()
        },
    );
    prop_oneof![one_var, two_var]
}

/// `R^g / (relations)` for a few random relation vectors.
fn module_of(a: &Arc<LocalAlgebra>, gens: usize, seeds: &[u64]) -> RModule {
    let p = a.field().p() as u64;
    let free = free_module(a, gens);
    let unit = a.unit_index();
    let vectors: Vec<Vec<u32>> = seeds
        .iter()
        .map(|&s| {
            let mut x = s;
            (0..free.dim())
                .map(|k| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let c = ((x >> 33) % p) as u32;
                    // keep most relations inside the maximal ideal
                    if k % a.dim() == unit && (x >> 20) % 5 != 0 {
                        0
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    quotient(&free, &generated_submodule(&free, &vectors)).module
}

fn algebra_and_modules() -> impl Strategy<Value = (Arc<LocalAlgebra>, RModule, RModule)> {
    (
        algebra_strategy(),
        1usize..=2,
        proptest::collection::vec(any::<u64>(), 0..=3),
        1usize..=2,
        proptest::collection::vec(any::<u64>(), 0..=3),
    )
        .prop_map(|(a, g1, s1, g2, s2)| {
            let m = module_of(&a, g1, &s1);
            let n = module_of(&a, g2, &s2);
            (a, m, n)
        })
}

fn iso(a: &RModule, b: &RModule) -> bool {
    matches!(is_isomorphic(a, b), IsoVerdict::Isomorphic(_))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(m in matrix_strategy()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_idempotent(m in matrix_strategy()) {
        let once = m.rref().reduced;
        prop_assert_eq!(once.rref().reduced, once);
    }

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_consistent_systems(m in matrix_strategy(), seed in proptest::collection::vec(0u32..5, 7)) {
        let p = m.field().p();
        let x: Vec<u32> = seed.iter().take(m.cols()).map(|&v| v % p).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn algebra_is_commutative_and_associative(a in algebra_strategy()) {
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
                prop_assert_eq!(a.mul(&ei, &ej), a.mul(&ej, &ei));
                for k in 0..d {
                    let ek = a.basis_vector(k);
                    prop_assert_eq!(a.mul(&a.mul(&ei, &ej), &ek), a.mul(&ei, &a.mul(&ej, &ek)));
                }
            }
        }
    }

    #[test]
    fn socle_is_an_ideal(a in algebra_strategy()) {
        let s = a.socle();
        for v in s.basis() {
            for i in 0..a.dim() {
                prop_assert!(s.contains(&a.mul(v, &a.basis_vector(i))));
            }
        }
    }

    #[test]
    fn tensor_algebra_swap(a in algebra_strategy(), b in algebra_strategy()) {
        prop_assume!(a.field() == b.field() && a.dim() * b.dim() <= 16);
        let ab = tensor_algebras(&a, &b).unwrap();
        let ba = tensor_algebras(&b, &a).unwrap();
        let (da, db) = (a.dim(), b.dim());
        let perm: Vec<usize> = (0..da * db).map(|idx| (idx % db) * da + idx / db).collect();
        prop_assert!(ab.is_isomorphic_via(&ba, &perm));
    }

    #[test]
    fn hom_and_tensor_with_the_ring((a, m, _n) in algebra_and_modules()) {
        let r = regular_module(&a);
        prop_assert!(iso(&hom_module(&r, &m).unwrap().module, &m));
        prop_assert!(iso(&tensor_module(&r, &m).unwrap().module, &m));
    }

    #[test]
    fn isomorphism_witnesses_are_verified((_a, m, n) in algebra_and_modules()) {
        if let IsoVerdict::Isomorphic(w) = is_isomorphic(&m, &n) {
            prop_assert!(w.is_equivariant() && w.is_bijective());
        }
        match is_isomorphic(&m, &m) {
            IsoVerdict::Isomorphic(w) => prop_assert!(w.is_equivariant() && w.is_bijective()),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn matlis_oracle((_a, m, n) in algebra_and_modules()) {
        let dn = matlis_dual(&n);
        for i in 0..=4 {
            prop_assert_eq!(ext_dim(i, &m, &dn).unwrap(), tor_dim(i, &m, &n).unwrap());
        }
    }

    #[test]
    fn minimality_matches_ext_into_residue_field((a, m, _n) in algebra_and_modules()) {
        let k = residue_field(&a);
        let betti = m.betti(4).unwrap();
        for (i, &b) in betti.iter().enumerate() {
            prop_assert_eq!(b, ext_dim(i, &m, &k).unwrap());
            prop_assert_eq!(b, tor_dim(i, &m, &k).unwrap());
        }
        for i in 1..=4 {
            prop_assert!(m.boundary(i).unwrap().entries_in_maxideal(&a));
        }
    }

    #[test]
    fn resolution_is_exact((a, m, _n) in algebra_and_modules()) {
        let betti = m.betti(4).unwrap();
        let d = a.dim();
        let ranks: Vec<usize> = (1..=4).map(|i| m.boundary(i).unwrap().to_k_matrix(&a).rank()).collect();
        prop_assert_eq!(ranks[0] + m.dim(), betti[0] * d);
        for i in 1..4 {
            // image of the next boundary fills the kernel
            prop_assert_eq!(ranks[i - 1] + ranks[i], betti[i] * d);
            let comp = m.boundary(i).unwrap().compose(&m.boundary(i + 1).unwrap(), &a);
            prop_assert!(comp.is_zero());
        }
    }

    #[test]
    fn double_matlis_dual((_a, m, _n) in algebra_and_modules()) {
        prop_assert!(iso(&matlis_dual(&matlis_dual(&m)), &m));
    }
}

// ---- certification layer over the test rings ----

fn test_rings() -> Vec<Arc<LocalAlgebra>> {
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    let mk = |f, v: &[&str], r: &[&str], b| build_algebra(&AlgebraPresentation::parse(f, v, r, b).unwrap()).unwrap();
    vec![
        mk(f2, &[], &[], 1),
        mk(f2, &["x"], &["x^2"], 2),
        mk(f3, &["x"], &["x^3"], 3),
        mk(f2, &["x", "y"], &["x^2", "x*y", "y^2"], 2),
        mk(f3, &["x", "y"], &["x^2", "x*y", "y^2"], 2),
        mk(f2, &["x", "y"], &["x^2", "y^2"], 3),
    ]
}

/// Catalogs of the test rings, computed once per process.
fn catalogs() -> &'static [(Arc<LocalAlgebra>, SdCatalog)] {
    static CATALOGS: OnceLock<Vec<(Arc<LocalAlgebra>, SdCatalog)>> = OnceLock::new();
    CATALOGS.get_or_init(|| {
        let opts = EnumOptions {
            gen_bound: 2,
            ..EnumOptions::default()
        };
        test_rings()
            .into_iter()
            .map(|a| {
                let cat = enumerate_semidualizing(&a, &opts).unwrap();
                (a, cat)
            })
            .collect()
    })
}

#[test]
fn certified_modules_have_bijective_homothety() {
    let sd = SdOptions::default();
    for (a, cat) in catalogs() {
        for c in &cat.classes {
            assert!(c.certificate.homothety_iso);
            assert_eq!(hom_module(&c.representative, &c.representative).unwrap().module.dim(), a.dim());
            assert!(!certify_semidualizing(&c.representative, &sd).unwrap().is_refuted());
        }
        // reflexive and antisymmetric
        for i in 0..cat.count {
            assert!(cat.leq(i, i));
            for j in 0..cat.count {
                if i != j {
                    assert!(!(cat.leq(i, j) && cat.leq(j, i)));
                }
            }
        }
    }
}

#[test]
fn dagger_reverses_order() {
    let sd = SdOptions::default();
    for (_, cat) in catalogs() {
        let mods: Vec<&RModule> = cat.classes.iter().map(|c| &c.representative).collect();
        for c in &mods {
            let in_c: Vec<&RModule> = mods.iter().copied().filter(|b| order_leq(c, b, &sd).unwrap().holds()).collect();
            for x in &in_c {
                for y in &in_c {
                    let dx = dagger(x, c, &sd).unwrap();
                    let dy = dagger(y, c, &sd).unwrap();
                    assert_eq!(
                        order_leq(x, y, &sd).unwrap().holds(),
                        order_leq(&dy, &dx, &sd).unwrap().holds()
                    );
                }
            }
        }
    }
}

#[test]
fn cancellation_sweep() {
    // C ⊗ C ⊗ X semidualizing forces C ≅ R
    let sd = SdOptions::default();
    for (a, cat) in catalogs() {
        let r = regular_module(a);
        let mut xs: Vec<RModule> = cat.classes.iter().map(|c| c.representative.clone()).collect();
        xs.push(residue_field(a));
        xs.push(matlis_dual(&r));
        for c in &cat.classes {
            let c = &c.representative;
            let cc = tensor_module(c, c).unwrap().module;
            for x in &xs {
                let t = tensor_module(&cc, x).unwrap().module;
                if !certify_semidualizing(&t, &sd).unwrap().is_refuted() {
                    assert!(iso(c, &r));
                }
            }
        }
    }
}

#[test]
fn bass_series_of_products_convolve() {
    let rings = test_rings();
    for a in &rings {
        for b in &rings {
            if a.field() != b.field() || a.dim() * b.dim() > 12 {
                continue;
            }
            let ext = FlatExtension::new(a, b).unwrap();
            let (sa, sb, st) = (bass_series(a, 6).unwrap(), bass_series(b, 6).unwrap(), bass_series(&ext.total, 6).unwrap());
            // the dim-9 product stops early once free modules get too large
            let known = st.coeffs.len();
            assert!(known >= 6 || (!st.complete && known >= 5));
            for n in 0..known {
                let conv: u64 = (0..=n).map(|k| sa.coeffs[k] * sb.coeffs[n - k]).sum();
                assert_eq!(conv, st.coeffs[n], "degree {n}");
            }
        }
    }
}

#[test]
fn dualizing_is_below_everything() {
    let sd = SdOptions::default();
    for (a, cat) in catalogs() {
        let w = dualizing_module(a);
        for c in &cat.classes {
            assert!(order_leq(&w, &c.representative, &sd).unwrap().holds());
        }
    }
}

// ---- subset calculus ----

fn subset_pair() -> impl Strategy<Value = (usize, u64, u64)> {
    (0usize..=10).prop_flat_map(|n| {
        let top = 1u64 << n;
        (Just(n), 0..top, 0..top)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn leq_is_a_partial_order((n, a, b) in subset_pair(), c in any::<u64>()) {
        let spec = ChainSpec::new(n).unwrap();
        let (a, b) = (SubsetClass::from_bits(a), SubsetClass::from_bits(b));
        let c = SubsetClass::from_bits(c & ((1u64 << n) - 1));
        prop_assert!(reflexive_leq(&spec, a, a).unwrap());
        if reflexive_leq(&spec, a, b).unwrap() && reflexive_leq(&spec, b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if reflexive_leq(&spec, a, b).unwrap() && reflexive_leq(&spec, b, c).unwrap() {
            prop_assert!(reflexive_leq(&spec, a, c).unwrap());
        }
    }

    #[test]
    fn hom_class_is_an_involution((n, i, s) in subset_pair()) {
        let spec = ChainSpec::new(n).unwrap();
        let i = SubsetClass::from_bits(i);
        let s = SubsetClass::from_bits(s).intersection(i);
        let h = hom_class(&spec, s, i).unwrap();
        prop_assert_eq!(hom_class(&spec, h, i).unwrap(), s);
    }

    #[test]
    fn complement_reverses_order((n, i, s) in subset_pair(), t in any::<u64>()) {
        let spec = ChainSpec::new(n).unwrap();
        let i = SubsetClass::from_bits(i);
        let s = SubsetClass::from_bits(s).intersection(i);
        let t = SubsetClass::from_bits(t).intersection(i);
        let lhs = reflexive_leq(&spec, t, s).unwrap();
        let rhs = reflexive_leq(&spec, hom_class(&spec, s, i).unwrap(), hom_class(&spec, t, i).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_is_commutative_with_unit((n, a, b) in subset_pair()) {
        let spec = ChainSpec::new(n).unwrap();
        let (a, b) = (SubsetClass::from_bits(a), SubsetClass::from_bits(b));
        prop_assert_eq!(tensor_class(&spec, a, b).unwrap(), tensor_class(&spec, b, a).unwrap());
        prop_assert_eq!(tensor_class(&spec, SubsetClass::EMPTY, a).unwrap(), TensorVerdict::Semidualizing(a));
        let defined = matches!(tensor_class(&spec, a, b).unwrap(), TensorVerdict::Semidualizing(_));
        prop_assert_eq!(defined, a.intersection(b).is_empty());
    }

    #[test]
    fn dagger_words_round_trip((n, s, _t) in subset_pair()) {
        let spec = ChainSpec::new(n).unwrap();
        let s = SubsetClass::from_bits(s);
        let w = dagger_word_for(s, &spec).unwrap();
        prop_assert_eq!(normalize_dagger(&w, &spec).unwrap(), s);
    }
}

#[test]
fn dagger_words_are_a_bijection() {
    for n in 0..=10 {
        let spec = ChainSpec::new(n).unwrap();
        let mut seen = std::collections::HashSet::new();
        for w in DaggerWord::all(n) {
            seen.insert(normalize_dagger(&w, &spec).unwrap());
        }
        assert_eq!(seen.len(), 1 << n);
    }
}

#[test]
fn lattice_counts_match_construction() {
    for n in 0..=10 {
        let spec = ChainSpec::new(n).unwrap();
        let l = build_lattice(&spec).unwrap();
        let (nodes, rel) = lattice_counts(&spec).unwrap();
        assert_eq!(l.node_count() as u128, nodes);
        assert_eq!(l.relation_count() as u128, rel);
        assert_eq!(nodes, 1u128 << n);
        assert_eq!(rel, 3u128.pow(n as u32));
    }
}
