//! Cross-module soundness at sizes where the constructions' case analysis
//! actually matters, all certified by the exact search.

use std::time::Instant;

use ramsey_core::bounds::{derive, materialize, BoundTable, DeriveOptions, WitnessStore};
use ramsey_core::catalog;
use ramsey_core::constructions::{block_stretch, copy_blowup};
use ramsey_core::verifier::verify;
use ramsey_core::CliqueBoundVector;

#[test]
fn stretch_of_qr17_certifies_3_4_6_on_68_vertices() {
    let (base, bounds) = catalog::seed("qr17").unwrap();
    let out = block_stretch(&base, &bounds, 3, 1).unwrap();
    assert_eq!(out.coloring.n(), 68);
    assert_eq!(out.claimed_bounds.as_slice(), &[3, 4, 6]);
    let start = Instant::now();
    let report = verify(&out.coloring, &out.claimed_bounds).unwrap();
    assert!(report.all_certified(), "R(3,4,6) >= 69 witness failed");
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn blowup_of_qr17_certifies_4_4_4_on_51_vertices() {
    let (base, bounds) = catalog::seed("qr17").unwrap();
    let out = copy_blowup(&base, &bounds, 4).unwrap();
    assert_eq!(out.coloring.n(), 51);
    assert_eq!(out.claimed_bounds.as_slice(), &[4, 4, 4]);
    let report = verify(&out.coloring, &out.claimed_bounds).unwrap();
    assert!(report.all_certified(), "R(4,4,4) >= 52 witness failed");
}

#[test]
fn composed_derivation_materializes_and_certifies() {
    // Two stacked blowups over the pentagon: R(3,3) >= 6 lifts to
    // R(3,3,3) >= 11 and then to R(3,3,3,3) >= 21, so the materialized
    // coloring lives on 20 vertices and must certify (3,3,3,3).
    let table = BoundTable::parse_with_source("3,3;6\n", "t").unwrap();
    let mut store = WitnessStore::new();
    let (c5, c5_bounds) = catalog::seed("c5").unwrap();
    store.insert(c5, c5_bounds);

    let target = CliqueBoundVector::new(vec![3, 3, 3, 3]).unwrap();
    let tree = derive(&target, &table, DeriveOptions::default()).unwrap();
    tree.validate().unwrap();
    let result = materialize(&tree, &store).unwrap();
    assert_eq!(result.coloring.n() as u64, tree.lower_bound() - 1);
    assert_eq!(result.claimed_bounds.sorted(), target);
    let report = verify(&result.coloring, &result.claimed_bounds).unwrap();
    assert!(report.all_certified());
}
