//! The universal bundle of a simplicial group: a contractible total space
//! carrying a degreewise free action, projecting onto the classifying
//! space. Built in the same cocycle coordinates as the homotopy quotient of
//! the right-translation action, with an explicit cross-check against the
//! total simplicial set of that action's groupoid.

use crate::error::{Error, Result};
use crate::groups::wbar::{wbar, Wbar};
use crate::groups::Sgrp;
use crate::sset::build::{from_raw, Realization};
use crate::sset::homs::SimplicialMap;
use crate::sset::{Cell, Ss};

use super::groupoid::{hq_total_iso, RawHq};
use super::{self_action, GAction, GBundle};

/// The universal bundle: total space, classifying space, the projection
/// between them, and the principal action, all validated exhaustively
/// through `bound`.
pub struct WBundle {
    /// The total space in cocycle coordinates: level n pairs a group
    /// element cell at level n with a classifying-space tuple.
    pub real: Realization<RawHq>,
    /// The classifying space of the group.
    pub wbar: Wbar,
    /// The projection that forgets the leading coordinate.
    pub fib: SimplicialMap,
    /// The principal bundle structure: action plus invariant projection.
    pub bundle: GBundle,
    /// Isomorphism onto the total simplicial set of the translation
    /// action's groupoid, recorded as a cross-check.
    pub to_total: SimplicialMap,
    pub bound: usize,
}

impl WBundle {
    /// The total space.
    pub fn space(&self) -> &Ss {
        &self.real.ss
    }

    pub fn g(&self) -> &Sgrp {
        &self.bundle.action.g
    }
}

/// Build the universal bundle of `g` through `bound`.
pub fn w_bundle(g: &Sgrp, bound: usize) -> Result<WBundle> {
    g.ensure_level(bound)?;
    let act = self_action(g, bound)?;
    let real = from_raw(RawHq::new(act.clone(), bound))?;

    // Closed formula for the level sizes: one factor per level 0..=n.
    for n in 0..=bound {
        let expect: usize = (0..=n).map(|k| g.level(k).order()).product();
        let got = real.ss.cell_count(n)?;
        if got != expect {
            return Err(Error::CrossCheckMismatch {
                construction: "universal bundle level size".into(),
                detail: format!("dimension {n}: got {got}, formula gives {expect}"),
            });
        }
    }

    let wb = wbar(g, bound)?;

    // The projection drops the leading coordinate; building it as a
    // simplicial map verifies that the twisted faces upstairs match the
    // classifying-space faces downstairs.
    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=real.ss.top_dim() {
        let mut level = Vec::new();
        for id in real.ss.gen_ids(dim) {
            let (_, cs) = real.elem_of_gen(id).clone();
            level.push(wb.real.resolve(dim, &cs)?);
        }
        assign.push(level);
    }
    let fib = SimplicialMap::new(real.ss.clone(), wb.ss().clone(), assign)?;

    // Principal action: left multiplication by the inverse on the leading
    // coordinate. Unit, associativity, and simpliciality are all validated
    // by the construction.
    let space = &act.space;
    let action = GAction::from_rule(&real.ss, g, bound, &|pc: &Cell, gx: usize| {
        let n = pc.dim();
        let (c0cell, cs) = real.expand(pc)?;
        let lev = g.level(n);
        let moved = lev.mul(lev.inv(gx), space.expand(&c0cell)?);
        real.resolve(n, &(space.resolve(n, &moved)?, cs))
    })?;

    let bundle = GBundle::new(action, wb.ss().clone(), fib.clone())?;
    let (_, _, to_total) = hq_total_iso(&act, &real, bound)?;

    Ok(WBundle { real, wbar: wb, fib, bundle, to_total, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{classify_principality, Principality};
    use crate::groups::{const_sgroup, FinGroup};
    use crate::invariants::WePolicy;

    #[test]
    fn universal_bundle_of_z2_has_doubling_levels_over_the_classifying_space() {
        let g = const_sgroup(&FinGroup::cyclic(2).unwrap(), 3).unwrap();
        let wb = w_bundle(&g, 3).unwrap();
        let total_expect = [2usize, 4, 8, 16];
        let base_expect = [1usize, 2, 4, 8];
        for n in 0..=3 {
            assert_eq!(wb.space().cell_count(n).unwrap(), total_expect[n], "total dim {n}");
            assert_eq!(wb.wbar.ss().cell_count(n).unwrap(), base_expect[n], "base dim {n}");
        }
        assert!(wb.to_total.is_iso());
    }

    #[test]
    fn universal_bundle_is_strictly_principal() {
        let g = const_sgroup(&FinGroup::cyclic(2).unwrap(), 2).unwrap();
        let wb = w_bundle(&g, 2).unwrap();
        let verdict =
            classify_principality(&wb.bundle, WePolicy::Invariants { bound: 2 }, 2).unwrap();
        assert!(matches!(verdict, Principality::Strict));
    }

    #[test]
    fn trivial_group_gives_the_point_bundle() {
        let g = const_sgroup(&FinGroup::trivial(), 2).unwrap();
        let wb = w_bundle(&g, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(wb.space().cell_count(n).unwrap(), 1);
            assert_eq!(wb.wbar.ss().cell_count(n).unwrap(), 1);
        }
    }
}
