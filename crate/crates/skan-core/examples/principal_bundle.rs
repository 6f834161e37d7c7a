//! Build the universal bundle of a finite group, certify its principality,
//! enumerate the twisted double covers of the circle, and collapse a
//! homotopy quotient onto its base.
//!
//! Run with: cargo run --example principal_bundle

use skan_core::bundles::{
    certify_acyclic_fibration, classify_principality, enumerate_twistings, homotopy_quotient,
    hq_over_base, shear, twisted_product, w_bundle,
};
use skan_core::groups::{const_sgroup, FinGroup};
use skan_core::invariants::{homology, pi0, WePolicy};
use skan_core::sset::standard::circle_min;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The universal Z/2-bundle through dimension 3: contractible total
    // space over the classifying space, strictly principal.
    let z2 = FinGroup::cyclic(2)?;
    let g = const_sgroup(&z2, 3)?;
    let wb = w_bundle(&g, 3)?;
    let totals: Vec<usize> = (0..=3).map(|n| wb.space().cell_count(n).unwrap()).collect();
    let bases: Vec<usize> = (0..=3).map(|n| wb.wbar.ss().cell_count(n).unwrap()).collect();
    println!("universal Z/2 bundle: total = {totals:?} over base = {bases:?}");
    let h = homology(wb.space(), 2)?;
    let names: Vec<String> = h.iter().map(|a| a.describe()).collect();
    println!("total-space homology through degree 2 = {names:?}");
    let verdict = classify_principality(&wb.bundle, WePolicy::RequireIso, 3)?;
    let sheared = shear(&wb.bundle, 1, 3)?.is_iso();
    println!("principality = {}, shear map iso = {sheared}", verdict.label());

    // Twisted products over the minimal circle: the split and the connected
    // double cover, counted by components.
    let circle = circle_min();
    let g2 = const_sgroup(&z2, 2)?;
    let taus = enumerate_twistings(&circle, &g2, 1_000)?;
    let mut components: Vec<usize> = Vec::new();
    for tau in &taus {
        let tb = twisted_product(tau, 2)?;
        components.push(pi0(tb.bundle.total())?.count());
    }
    components.sort_unstable();
    println!("double covers of the circle: {} twistings, components = {components:?}", taus.len());

    // The homotopy quotient of the universal bundle's action collapses onto
    // the classifying space through a certified acyclic fibration.
    let hq = homotopy_quotient(&wb.bundle.action, 2)?;
    let levels: Vec<usize> = (0..=2).map(|n| hq.space().cell_count(n).unwrap()).collect();
    let down = hq_over_base(&hq, &wb.fib)?;
    let cert = certify_acyclic_fibration(&down, 2, WePolicy::Invariants { bound: 1 })?;
    println!(
        "homotopy quotient levels = {levels:?}, collapse certified at level = {}",
        cert.cert.level()
    );

    Ok(())
}
