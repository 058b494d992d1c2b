//! Both decompositions end to end on systems not covered by the unit tests.

use std::sync::Arc;

use normdec_core::category::DEFAULT_SIMPLEX_BUDGET;
use normdec_core::decomposition::*;
use normdec_core::fusion::{CollectionKind, FusionSystem};
use normdec_core::group::{library::*, FiniteGroup};
use normdec_core::linking::LinkingSystem;
use normdec_core::subdivision::DEFAULT_SUBDIVISION_BUDGET;

fn system(g: FiniteGroup, p: u32, kind: CollectionKind) -> LinkingSystem {
    let f = Arc::new(FusionSystem::new(g, p).unwrap());
    let c = f.build_collection(kind, None).unwrap();
    LinkingSystem::build(f, &c).unwrap()
}

fn both_theorems(l: &LinkingSystem, cap: usize) -> (Vec<usize>, Vec<usize>) {
    let p = l.fusion().p();
    let ta = theorem_a_diagram(l, DEFAULT_SUBDIVISION_BUDGET).unwrap();
    let ra = verify_decomposition(&ta.diagram, cap, p, DEFAULT_SIMPLEX_BUDGET).unwrap();
    assert!(ra.all_iso(), "{}", ra.homology.summary());
    let e = l.fusion().build_collection(CollectionKind::ElementaryAbelian, None).unwrap();
    let tb = theorem_b_diagram(l, &e.members, DEFAULT_SUBDIVISION_BUDGET).unwrap();
    let rb = verify_decomposition(&tb.diagram, cap, p, DEFAULT_SIMPLEX_BUDGET).unwrap();
    assert!(rb.all_iso(), "{}", rb.homology.summary());
    (ra.homology.target_betti, rb.homology.target_betti)
}

#[test]
fn quaternion_group() {
    let l = system(quaternion8(), 2, CollectionKind::Centric);
    let (a, b) = both_theorems(&l, 3);
    assert_eq!(a, [1, 2, 2]);
    assert_eq!(a, b);
}

#[test]
fn centric_radical_collections() {
    // for S_4 the radical centrics are S and the normal Klein four
    let l = system(symmetric4(), 2, CollectionKind::CentricRadical);
    assert_eq!(l.n_objects(), 2);
    let (a, _) = both_theorems(&l, 3);
    assert_eq!(a, [1, 1, 2]);
}

#[test]
fn odd_prime() {
    // A_4 at p = 3: S = C_3 with Aut_F(S) trivial, so L is BC_3
    let l = system(alternating4(), 3, CollectionKind::Centric);
    let (a, _) = both_theorems(&l, 3);
    assert_eq!(a, [1, 1, 1]);
}
