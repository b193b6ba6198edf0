use std::sync::Arc;

use proptest::prelude::*;

use koszul_bar::ainfty::{bimodule_relation_residual, check_left_unital, check_unital, morphism_relation_residual, BimoduleWord};
use koszul_bar::enumerate::{bar_words, ext_monomials, koszul_monomials_up_to, sym_monomials_up_to};
use koszul_bar::homology::{augmentation_complex, bar_complex, induced_h_map, koszul_complex, quasi_iso_verdict, BettiEntry};
use koszul_bar::koszul::KoszulBridge;
use koszul_bar::polyalg::{ext_mono, koszul_mono, sym_mono};
use koszul_bar::{Element, Mono, Space};

fn sym(dim: usize, w: u32) -> Vec<Mono> {
    sym_monomials_up_to(dim, w).into_iter().map(Mono::Sym).collect()
}

fn ext(dim: usize) -> Vec<Mono> {
    ext_monomials(dim).into_iter().map(Mono::Ext).collect()
}

#[test]
fn both_complexes_resolve_the_ground_field() {
    for dim in 1..=3 {
        let bridge = KoszulBridge::new(dim).unwrap();
        let kv = koszul_complex(&bridge, 3).unwrap();
        let bar = bar_complex(&bridge, 3, 4).unwrap();
        for c in [&kv, &bar] {
            assert!(c.check_d_squared().is_empty(), "{}", c.name());
            let t = c.betti_table(0..=3, -3..=0);
            assert!(t.resolves_ground_field(), "{t}");
            assert_eq!(t.get(0, 0), Some(BettiEntry::Value(1)));
        }
    }
}

#[test]
fn koszul_block_sizes() {
    let bridge = KoszulBridge::new(2).unwrap();
    let kv = koszul_complex(&bridge, 2).unwrap();
    assert_eq!(kv.basis(2, -2), &[koszul_mono(vec![0, 0], vec![0, 1])]);
    // x1², x1x2, x2² in degree 0 and four x_iθ_j in degree −1
    assert_eq!((kv.dim(2, 0), kv.dim(2, -1)), (3, 4));
}

#[test]
fn comparison_maps_in_homology() {
    let bridge = KoszulBridge::new(2).unwrap();
    let kv = koszul_complex(&bridge, 3).unwrap();
    let bar = bar_complex(&bridge, 3, 3).unwrap();
    let k = augmentation_complex(&bridge).unwrap();
    let mu = bridge.bar.mu().unwrap();
    for (f, src, tgt) in [(&bridge.phi, &kv, &bar), (&mu, &bar, &k)] {
        let v = quasi_iso_verdict(f, src, tgt, 0..=3, -2..=0).unwrap();
        assert!(v.is_quasi_iso && v.witness.is_none());
    }
    let composite = bridge.phi.compose_00(&mu).unwrap();
    let m = induced_h_map(&composite, &kv, &k, 0, 0).unwrap();
    assert_eq!(m.get(0, 0), koszul_bar::graded::q(1));
}

#[test]
fn truncation_boundary_is_flagged() {
    let bridge = KoszulBridge::new(1).unwrap();
    let bar = bar_complex(&bridge, 2, 2).unwrap();
    let t = bar.betti_table(0..=2, -2..=0);
    assert_eq!(t.get(1, -2), Some(BettiEntry::Boundary));
    assert!(t.resolves_ground_field());
    assert!(bar_complex(&bridge, 2, 99).is_err());
}

#[test]
fn units() {
    let bridge = KoszulBridge::new(2).unwrap();
    let alg = &bridge.pair.sym;
    assert!(check_unital(alg, &sym(2, 2), 3).unwrap().passed());
    let kv_basis: Vec<Mono> = koszul_monomials_up_to(2, 2).into_iter().map(Mono::Koszul).collect();
    let report = check_left_unital(&bridge.koszul, &sym(2, 1), &kv_basis, &ext(2), 2).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn augmentation_acts_through_constant_terms() {
    let bridge = KoszulBridge::new(2).unwrap();
    let k = &bridge.augmentation;
    let one = Element::monomial(Space::Ground, Mono::Unit);
    assert_eq!(k.m_component(1, 0).apply(&[sym_mono(vec![0, 0]), Mono::Unit]), one);
    assert!(k.m_component(1, 0).apply(&[sym_mono(vec![0, 1]), Mono::Unit]).is_zero());
    assert!(k.m_component(0, 1).apply(&[Mono::Unit, ext_mono(vec![1])]).is_zero());
}

fn word(dim: usize) -> impl Strategy<Value = BimoduleWord> {
    let a = sym(dim, 2);
    let b = ext(dim);
    (0usize..3, 0usize..3).prop_flat_map(move |(m, n)| {
        (
            proptest::collection::vec(proptest::sample::select(a.clone()), m),
            proptest::collection::vec(proptest::sample::select(b.clone()), n),
        )
            .prop_map(|(l, r)| BimoduleWord::new(l, Mono::Unit, r))
    })
}

fn bar_word(dim: usize) -> impl Strategy<Value = BimoduleWord> {
    let a = sym(dim, 1);
    let b = ext(dim);
    let mids = bar_words(dim, 2, 2);
    (0usize..2, 0usize..2).prop_flat_map(move |(m, n)| {
        (
            proptest::collection::vec(proptest::sample::select(a.clone()), m),
            proptest::sample::select(mids.clone()),
            proptest::collection::vec(proptest::sample::select(b.clone()), n),
        )
            .prop_map(|(l, k, r)| BimoduleWord::new(l, k, r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn augmentation_relations_at_dim_3(w in word(3)) {
        let bridge = KoszulBridge::new(3).unwrap();
        prop_assert!(bimodule_relation_residual(&bridge.augmentation, &w).is_zero());
    }

    #[test]
    fn mu_is_a_morphism_at_dim_3(w in bar_word(3)) {
        let bridge = KoszulBridge::new(3).unwrap();
        let mu = bridge.bar.mu().unwrap();
        prop_assert!(morphism_relation_residual(&mu, &w).is_zero());
    }

    #[test]
    fn bar_homotopy_at_dim_3(w in bar_word(3)) {
        let bridge = KoszulBridge::new(3).unwrap();
        let x = Element::monomial(bridge.bar.space().clone(), w.mid.clone());
        prop_assert!(bridge.bar.homotopy_residual(&x).unwrap().is_zero());
    }
}

#[test]
fn tensor_product_over_the_exterior_algebra() {
    let bridge = KoszulBridge::new(2).unwrap();
    let b = Arc::new(koszul_bar::tensor_bar::algebra_as_bimodule(bridge.pair.ext.clone()));
    let kb = koszul_bar::tensor_bar::tensor_bimodule(bridge.augmentation.clone(), b).unwrap();
    let mids = koszul_bar::enumerate::right_bar_words(2, 2, 2);
    for k in &mids {
        for r in koszul_bar::enumerate::tuples(&ext(2), 1) {
            let w = BimoduleWord::new(vec![], k.clone(), r);
            assert!(bimodule_relation_residual(&kb, &w).is_zero(), "{w:?}");
        }
        let d2 = kb.apply_element(&[], &kb.apply(&[], k, &[]), &[]);
        assert!(d2.is_zero(), "{k}");
    }
}
