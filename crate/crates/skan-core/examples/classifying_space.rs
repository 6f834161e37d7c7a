//! Build the classifying space of a finite group, inspect its homology, and
//! walk the derived constructions: loop group, vertex-group sequence, and a
//! Postnikov stage.
//!
//! Run with: cargo run --example classifying_space

use skan_core::groups::loop_group::{kan_loop_group, loop_pi0};
use skan_core::groups::postnikov::{g0_sequence, postnikov_stage};
use skan_core::groups::wbar::{wbar, wbar_group, wbar_iter};
use skan_core::groups::{const_sgroup, underlying, FinGroup};
use skan_core::invariants::homology;
use skan_core::sset::standard::circle_min;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The classifying space of Z/2, materialized through dimension 4 and
    // cross-checked internally against the totalization of its nerve.
    let z2 = FinGroup::cyclic(2)?;
    let g = const_sgroup(&z2, 3)?;
    let w = wbar(&g, 4)?;
    let counts: Vec<usize> = (0..=4).map(|n| w.ss().cell_count(n).unwrap()).collect();
    println!("classifying space of Z/2: cells per level = {counts:?}");
    let h = homology(w.ss(), 3)?;
    let names: Vec<String> = h.iter().map(|a| a.describe()).collect();
    println!("homology through degree 3 = {names:?}");

    // The same construction lifted to a simplicial abelian group, iterated
    // twice to reach a second Eilenberg-MacLane space.
    let tower = wbar_iter(&g, 2, 4)?;
    let em_counts: Vec<usize> =
        (0..=4).map(|n| tower.real.ss.cell_count(n).unwrap()).collect();
    println!("second iterate: cells per level = {em_counts:?}");

    // Loop group of the circle: free of rank one in every level, with the
    // integers as its path components.
    let lg = kan_loop_group(&circle_min(), 2)?;
    let ranks: Vec<usize> = (0..=2).map(|n| lg.level(n).n_gens()).collect();
    let pi = loop_pi0(&lg)?;
    println!(
        "loop group of the circle: ranks = {ranks:?}, pi_0 abelianized = {}",
        pi.abelianization().describe()
    );

    // Vertex-group sequence of W(Z/2) as a simplicial group: the vertex
    // level is trivial, so the coset projection is an isomorphism.
    let wg = wbar_group(&g, 3)?;
    let seq = g0_sequence(&wg)?;
    println!(
        "vertex-group sequence of the classifying group: projection iso = {}",
        seq.quot.is_iso()
    );

    // First Postnikov stage of a 1-type: nothing to kill.
    let w3 = wbar(&const_sgroup(&z2, 2)?, 3)?;
    let stage = postnikov_stage(w3.ss(), 1)?;
    println!("first Postnikov stage of a 1-type: projection iso = {}", stage.proj.is_iso());

    // Underlying simplicial set of the classifying group matches the direct
    // construction level for level.
    let u = underlying(&wg)?;
    let same: Vec<bool> = (0..=3)
        .map(|n| u.ss.cell_count(n).unwrap() == w3.ss().cell_count(n).unwrap())
        .collect();
    println!("set-level and group-level constructions agree per level: {same:?}");
    Ok(())
}
