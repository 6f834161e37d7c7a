//! Integration oracles for the bundle layer: the universal bundle over the
//! classifying space, shear maps, principality verdicts, pullback and
//! pushforward, associated fibers, twistings, and homotopy quotients over
//! their bases. Expected values are frozen small-group computations.

use skan_core::bisim::ops::dec0;
use skan_core::bundles::{
    associated, certify_acyclic_fibration, classify_principality, enumerate_twistings,
    homotopy_quotient, hq_over_base, induced_on_quotient, plain_quotient, pullback_bundle,
    pushforward_bundle, self_action, shear, trivial_action, trivial_bundle, twisted_product,
    w_bundle, Principality, TwistedBundle,
};
use skan_core::groups::wbar::wbar;
use skan_core::groups::{const_sgroup, underlying, FinGroup, Sgrp};
use skan_core::invariants::{homology, pi0, WePolicy};
use skan_core::sset::homs::{find_iso, SimplicialMap};
use skan_core::sset::kan::check_kan_fibration;
use skan_core::sset::limits::{fiber_product, product, product_map};
use skan_core::sset::standard::{circle_min, simplex};
use skan_core::sset::{Cell, GenId};
use skan_core::{Error, Result};

fn cyc(n: usize, top: usize) -> Sgrp {
    const_sgroup(&FinGroup::cyclic(n).unwrap(), top).unwrap()
}

fn sym3(top: usize) -> Sgrp {
    const_sgroup(&FinGroup::symmetric(3).unwrap(), top).unwrap()
}

/// The two twisted products over the minimal circle with structure group
/// Z/2: the split double cover and the connected one, in that order.
fn double_covers() -> (TwistedBundle, TwistedBundle) {
    let x = circle_min();
    let g = cyc(2, 2);
    let taus = enumerate_twistings(&x, &g, 1_000).unwrap();
    assert_eq!(taus.len(), 2);
    let mut split = None;
    let mut conn = None;
    for tau in &taus {
        let tb = twisted_product(tau, 2).unwrap();
        if pi0(tb.bundle.total()).unwrap().count() == 2 {
            split = Some(tb);
        } else {
            conn = Some(tb);
        }
    }
    (split.expect("a split double cover"), conn.expect("a connected double cover"))
}

#[test]
fn universal_total_spaces_are_homologically_trivial() {
    for g in [cyc(2, 3), cyc(3, 3)] {
        let wb = w_bundle(&g, 3).unwrap();
        let h = homology(wb.space(), 2).unwrap();
        assert_eq!(h[0].describe(), "Z");
        assert_eq!(h[1].describe(), "0");
        assert_eq!(h[2].describe(), "0");
    }
}

#[test]
fn orbit_space_of_the_universal_bundle_is_the_classifying_space() {
    for g in [cyc(2, 2), sym3(2)] {
        let wb = w_bundle(&g, 2).unwrap();
        let q = plain_quotient(&wb.bundle.action, 2).unwrap();
        let to_base = induced_on_quotient(&q, &wb.fib).unwrap();
        assert!(to_base.is_iso());
    }
}

#[test]
fn fiber_over_the_basepoint_is_the_group() {
    let g = cyc(3, 2);
    let wb = w_bundle(&g, 2).unwrap();
    let pt = simplex(0);
    let vtx = SimplicialMap::constant(&pt, wb.wbar.ss(), GenId { dim: 0, idx: 0 });
    let fp = fiber_product(&vtx, &wb.fib, 2).unwrap();
    let und = underlying(&g).unwrap();
    assert!(find_iso(fp.ss(), &und.ss).unwrap().is_some());
}

#[test]
fn classifying_space_decalage_recovers_the_universal_carrier() {
    for h in [FinGroup::cyclic(2).unwrap(), FinGroup::cyclic(3).unwrap()] {
        let g = const_sgroup(&h, 2).unwrap();
        let w = wbar(&g, 3).unwrap();
        let d = dec0(w.ss(), 2).unwrap();
        let wb = w_bundle(&g, 2).unwrap();
        assert!(find_iso(&d.real.ss, wb.space()).unwrap().is_some());
    }
}

#[test]
fn universal_and_trivial_shears_are_isomorphisms() {
    let g = cyc(2, 2);
    let wb = w_bundle(&g, 2).unwrap();
    assert!(shear(&wb.bundle, 1, 2).unwrap().is_iso());
    assert!(shear(&wb.bundle, 2, 2).unwrap().is_iso());
    let tb = trivial_bundle(&circle_min(), &g, 2).unwrap();
    assert!(shear(&tb.bundle, 1, 2).unwrap().is_iso());
}

#[test]
fn iterated_shear_is_the_composite_of_stepwise_shears() {
    let g = cyc(2, 2);
    let wb = w_bundle(&g, 2).unwrap();
    let b = &wb.bundle;
    let a = &b.action;
    let bound = 2;
    let sh1 = shear(b, 1, bound).unwrap();
    let sh2 = shear(b, 2, bound).unwrap();

    // Rebuild the staging of the two-fold shear: P x |G| x |G| shears the
    // first group coordinate, then the leftover coordinate shears against
    // the second fiber-product factor.
    let fp1 = fiber_product(&b.proj, &b.proj, bound).unwrap();
    let t1 = fp1.pr2.then(&b.proj).unwrap();
    let fp2 = fiber_product(&t1, &b.proj, bound).unwrap();
    let src_outer = product(a.prod.ss(), &a.space.ss, bound).unwrap();
    let mid_outer = product(fp1.ss(), &a.space.ss, bound).unwrap();
    let idg = SimplicialMap::identity(&a.space.ss);
    let first = product_map(&src_outer, &mid_outer, &sh1, &idg).unwrap();

    let msrc = mid_outer.ss();
    let assign = (0..=msrc.top_dim())
        .map(|d| {
            msrc.gen_ids(d)
                .map(|id| {
                    let (pq, gc) = mid_outer.split(&Cell::of_gen(id))?;
                    let (_, q) = fp1.split(&pq)?;
                    let moved = a.apply(&q, a.space.expand(&gc)?)?;
                    fp2.pair(&pq, &moved)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
        .unwrap();
    let second = SimplicialMap::new(msrc.clone(), fp2.ss().clone(), assign).unwrap();

    assert_eq!(first.then(&second).unwrap(), sh2);
}

#[test]
fn pullback_along_the_identity_reproduces_the_bundle() {
    let g = cyc(2, 2);
    let wb = w_bundle(&g, 2).unwrap();
    let id = SimplicialMap::identity(wb.wbar.ss());
    let (nb, verdict) = pullback_bundle(&id, &wb.bundle, WePolicy::RequireIso, 2).unwrap();
    assert!(matches!(verdict, Principality::Strict));
    assert!(find_iso(nb.total(), wb.space()).unwrap().is_some());
}

#[test]
fn pullback_to_a_point_extracts_the_fiber() {
    let g = cyc(3, 2);
    let wb = w_bundle(&g, 2).unwrap();
    let pt = simplex(0);
    let vtx = SimplicialMap::constant(&pt, wb.wbar.ss(), GenId { dim: 0, idx: 0 });
    let (nb, verdict) = pullback_bundle(&vtx, &wb.bundle, WePolicy::RequireIso, 2).unwrap();
    assert!(matches!(verdict, Principality::Strict));
    for n in 0..=2 {
        assert_eq!(nb.total().cell_count(n).unwrap(), 3);
    }
}

#[test]
fn a_connected_double_cover_trivializes_along_a_constant_map() {
    let (_, conn) = double_covers();
    let circle = conn.bundle.base.clone();
    let cmap = SimplicialMap::constant(&circle, &circle, GenId { dim: 0, idx: 0 });
    let (nb, verdict) = pullback_bundle(&cmap, &conn.bundle, WePolicy::RequireIso, 2).unwrap();
    assert!(verdict.at_least_weak());
    assert_eq!(pi0(nb.total()).unwrap().count(), 2);
}

#[test]
fn pushforward_needs_a_certificate_and_respects_the_identity() {
    let g = cyc(2, 2);
    let tb = trivial_bundle(&circle_min(), &g, 2).unwrap();
    let missing = pushforward_bundle(None, &tb.bundle, WePolicy::RequireIso, 2)
        .err()
        .expect("a certificate is required");
    assert!(matches!(missing, Error::CertificateMissing { .. }));

    let id = SimplicialMap::identity(&tb.bundle.base);
    let cert = certify_acyclic_fibration(&id, 2, WePolicy::RequireIso).unwrap();
    let (nb, verdict) =
        pushforward_bundle(Some(&cert), &tb.bundle, WePolicy::RequireIso, 2).unwrap();
    assert!(matches!(verdict, Principality::Strict));
    assert_eq!(nb.proj, tb.bundle.proj);
}

#[test]
fn free_total_spaces_give_kan_quotient_projections() {
    let g = cyc(2, 2);
    let wb = w_bundle(&g, 2).unwrap();
    let q = plain_quotient(&wb.bundle.action, 2).unwrap();
    let report = check_kan_fibration(&q.proj, 2).unwrap();
    assert!(report.holds());
}

#[test]
fn the_homotopy_quotient_of_a_principal_action_collapses_to_the_base() {
    let g = cyc(2, 2);
    let wb = w_bundle(&g, 2).unwrap();
    let hq = homotopy_quotient(&wb.bundle.action, 2).unwrap();
    let down = hq_over_base(&hq, &wb.fib).unwrap();
    // Homology through the top available degree is model-dependent, so the
    // invariant comparison stops one short of the bound.
    let policy = WePolicy::Invariants { bound: 1 };
    let cert = certify_acyclic_fibration(&down, 2, policy).unwrap();
    assert!(cert.kan.holds());
    cert.revalidate(policy).unwrap();
}

#[test]
fn point_quotient_by_a_nonabelian_group_matches_its_classifying_space() {
    let g = sym3(2);
    let a = trivial_action(&simplex(0), &g, 2).unwrap();
    let hq = homotopy_quotient(&a, 2).unwrap();
    assert_eq!(hq.space().cell_count(0).unwrap(), 1);
    assert_eq!(hq.space().cell_count(1).unwrap(), 6);
    assert_eq!(hq.space().cell_count(2).unwrap(), 36);
    let w = wbar(&g, 2).unwrap();
    assert!(find_iso(hq.space(), w.ss()).unwrap().is_some());
}

#[test]
fn associated_fibers_interpolate_between_total_space_and_base() {
    let g = cyc(2, 2);
    let wb = w_bundle(&g, 2).unwrap();

    let translation = self_action(&g, 2).unwrap();
    let back = associated(&wb.bundle, &translation, WePolicy::RequireIso, 2).unwrap();
    assert!(back.plain);
    assert!(find_iso(&back.total, wb.space()).unwrap().is_some());

    let point = trivial_action(&simplex(0), &g, 2).unwrap();
    let down = associated(&wb.bundle, &point, WePolicy::RequireIso, 2).unwrap();
    assert!(down.plain);
    assert!(find_iso(&down.total, wb.wbar.ss()).unwrap().is_some());
}

#[test]
fn associated_covers_distinguish_twisted_from_trivial() {
    let (split, conn) = double_covers();
    let v = self_action(&conn.tau.g, 2).unwrap();
    let a_conn = associated(&conn.bundle, &v, WePolicy::RequireIso, 2).unwrap();
    let a_split = associated(&split.bundle, &v, WePolicy::RequireIso, 2).unwrap();
    assert_eq!(pi0(&a_conn.total).unwrap().count(), 1);
    assert_eq!(pi0(&a_split.total).unwrap().count(), 2);
}

#[test]
fn twisting_enumeration_counts_by_base_and_group() {
    assert_eq!(enumerate_twistings(&simplex(0), &cyc(2, 2), 1_000).unwrap().len(), 1);
    assert_eq!(enumerate_twistings(&circle_min(), &cyc(2, 2), 1_000).unwrap().len(), 2);
    assert_eq!(enumerate_twistings(&circle_min(), &sym3(2), 10_000).unwrap().len(), 6);
}

#[test]
fn interval_twistings_are_all_trivial() {
    let x = simplex(1);
    let g = cyc(2, 2);
    let taus = enumerate_twistings(&x, &g, 1_000).unwrap();
    assert!(!taus.is_empty());
    let reference = trivial_bundle(&x, &g, 2).unwrap();
    for tau in &taus {
        let tb = twisted_product(tau, 2).unwrap();
        assert!(find_iso(tb.bundle.total(), reference.bundle.total()).unwrap().is_some());
        let verdict = classify_principality(&tb.bundle, WePolicy::RequireIso, 2).unwrap();
        assert!(matches!(verdict, Principality::Strict));
    }
}
