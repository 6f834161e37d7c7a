//! The action groupoid of a simplicial group action, its homotopy quotient,
//! and the cross-checks tying the quotient to two independent constructions:
//! the total simplicial set of the action groupoid and the orbit space of
//! the product with the universal bundle.

use crate::bisim::ops::{total, RawTotal};
use crate::bisim::{from_raw_bi, BiRealization, RawBiSimplicial};
use crate::error::{Error, Result};
use crate::groups::Sgrp;
use crate::sset::build::{from_raw, RawSimplicial, Realization};
use crate::sset::homs::SimplicialMap;
use crate::sset::limits::{product, quotient_by_pairs, Quotient};
use crate::sset::{Cell, Ss};

use super::wbundle::w_bundle;
use super::Act;

/// Enumerate all tuples with the given radices, lexicographically,
/// least-significant last.
pub(crate) fn tuples(orders: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in orders {
        let mut next = Vec::with_capacity(out.len() * r);
        for t in &out {
            for x in 0..r {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn names_at_level(g: &Sgrp, level: usize, xs: &[usize]) -> String {
    let lev = g.level(level);
    xs.iter().map(|&x| lev.elem_name(x).to_string()).collect::<Vec<_>>().join(",")
}

/// Names for a descending tuple: `xs[k]` lives at level `start - k`.
fn names_descending(g: &Sgrp, start: usize, xs: &[usize]) -> String {
    xs.iter()
        .enumerate()
        .map(|(k, &x)| g.level(start - k).elem_name(x).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------------------
// Action groupoid

/// Bidegree (p, q) holds a q-cell of the space together with p group
/// elements at level q; horizontal structure is the nerve of the action,
/// vertical structure is componentwise.
pub struct RawActionGroupoid {
    a: Act,
    p_max: usize,
    q_max: usize,
    diag: Option<usize>,
}

impl RawBiSimplicial for RawActionGroupoid {
    type Elem = (Cell, Vec<usize>);

    fn p_max(&self) -> usize {
        self.p_max
    }
    fn q_max(&self) -> usize {
        self.q_max
    }
    fn diag_bound(&self) -> Option<usize> {
        self.diag
    }

    fn elems(&self, p: usize, q: usize) -> Result<Vec<Self::Elem>> {
        let order = self.a.g.level(q).order();
        let mut out = Vec::new();
        for c in self.a.p().cells(q)? {
            for gs in tuples(&vec![order; p]) {
                out.push((c.clone(), gs));
            }
        }
        Ok(out)
    }

    fn h_face(&self, p: usize, q: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let (c, gs) = e;
        if i == 0 {
            Ok((self.a.apply(c, gs[0])?, gs[1..].to_vec()))
        } else if i < p {
            let lev = self.a.g.level(q);
            let mut out = Vec::with_capacity(p - 1);
            out.extend_from_slice(&gs[..i - 1]);
            out.push(lev.mul(gs[i - 1], gs[i]));
            out.extend_from_slice(&gs[i + 1..]);
            Ok((c.clone(), out))
        } else {
            Ok((c.clone(), gs[..p - 1].to_vec()))
        }
    }

    fn v_face(&self, _p: usize, q: usize, e: &Self::Elem, j: usize) -> Result<Self::Elem> {
        let (c, gs) = e;
        let faced: Vec<usize> = gs.iter().map(|&x| self.a.g.face(q, j, x)).collect();
        Ok((self.a.p().face(c, j), faced))
    }

    fn h_degeneracy(&self, _p: usize, q: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let (c, gs) = e;
        let mut out = gs.clone();
        out.insert(i, self.a.g.level(q).id());
        Ok((c.clone(), out))
    }

    fn v_degeneracy(&self, _p: usize, q: usize, e: &Self::Elem, j: usize) -> Result<Self::Elem> {
        let (c, gs) = e;
        let up: Vec<usize> = gs.iter().map(|&x| self.a.g.degen(q, j, x)).collect();
        Ok((c.degenerate(j), up))
    }

    fn name(&self, _p: usize, q: usize, e: &Self::Elem) -> Result<String> {
        let (c, gs) = e;
        Ok(format!("{}|[{}]", self.a.p().cell_name(c), names_at_level(&self.a.g, q, gs)))
    }
}

/// The action groupoid of `a`, materialized on the rectangle
/// `p ≤ p_max`, `q ≤ q_max`, with all bisimplicial identities verified.
pub fn action_groupoid(
    a: &Act,
    p_max: usize,
    q_max: usize,
) -> Result<BiRealization<RawActionGroupoid>> {
    if q_max > a.bound {
        return Err(Error::InsufficientDimensionBound { needed: q_max, available: a.bound });
    }
    from_raw_bi(RawActionGroupoid { a: a.clone(), p_max, q_max, diag: None })
}

// ---------------------------------------------------------------------------
// Homotopy quotient, presented in cocycle coordinates

/// Level n of the homotopy quotient: a cell of the space at dimension n
/// together with group elements at levels n-1 down to 0. Faces and
/// degeneracies follow the classifying-space pattern, with the action
/// entering through the 0th face.
pub struct RawHq {
    pub(crate) a: Act,
    bound: usize,
}

impl RawHq {
    pub(crate) fn new(a: Act, bound: usize) -> RawHq {
        RawHq { a, bound }
    }

    fn g(&self) -> &Sgrp {
        &self.a.g
    }
}

impl RawSimplicial for RawHq {
    type Elem = (Cell, Vec<usize>);

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<Self::Elem>> {
        let orders: Vec<usize> =
            (0..dim).map(|k| self.g().level(dim - 1 - k).order()).collect();
        let mut out = Vec::new();
        for c in self.a.p().cells(dim)? {
            for cs in tuples(&orders) {
                out.push((c.clone(), cs));
            }
        }
        Ok(out)
    }

    fn face(&self, dim: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let n = dim;
        let (c0, cs) = e;
        let g = self.g();
        if i == 0 {
            let q = self.a.apply(&self.a.p().face(c0, 0), cs[0])?;
            Ok((q, cs[1..].to_vec()))
        } else if i < n {
            let mut out = Vec::with_capacity(n - 1);
            for t in 1..i {
                out.push(g.face(n - t, i - t, cs[t - 1]));
            }
            out.push(g.level(n - i - 1).mul(g.face(n - i, 0, cs[i - 1]), cs[i]));
            for t in i + 1..n {
                out.push(cs[t]);
            }
            Ok((self.a.p().face(c0, i), out))
        } else {
            let mut out = Vec::with_capacity(n - 1);
            for t in 1..n {
                out.push(g.face(n - t, n - t, cs[t - 1]));
            }
            Ok((self.a.p().face(c0, n), out))
        }
    }

    fn degeneracy(&self, dim: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let n = dim;
        let (c0, cs) = e;
        let g = self.g();
        let mut out = Vec::with_capacity(n + 1);
        for t in 1..=i {
            out.push(g.degen(n - t, i - t, cs[t - 1]));
        }
        out.push(g.level(n - i).id());
        for t in i + 2..=n + 1 {
            out.push(cs[t - 2]);
        }
        Ok((c0.degenerate(i), out))
    }

    fn name(&self, dim: usize, e: &Self::Elem) -> String {
        let (c0, cs) = e;
        format!(
            "{}|[{}]",
            self.a.p().cell_name(c0),
            names_descending(self.g(), dim.saturating_sub(1), cs)
        )
    }
}

/// A homotopy quotient together with the two independent reconstructions it
/// was checked against: the total simplicial set of the action groupoid
/// (with an explicit isomorphism), and the orbit space of the product with
/// the universal bundle (again with an explicit isomorphism).
pub struct HomotopyQuotient {
    pub real: Realization<RawHq>,
    pub groupoid: BiRealization<RawActionGroupoid>,
    pub total: Realization<RawTotal>,
    pub to_total: SimplicialMap,
    pub borel: Quotient,
    pub to_borel: SimplicialMap,
    pub bound: usize,
}

impl HomotopyQuotient {
    pub fn space(&self) -> &Ss {
        &self.real.ss
    }
}

/// Build the explicit comparison from the cocycle-coordinate quotient to
/// the total simplicial set of the action groupoid, and certify it is an
/// isomorphism. Shared by the homotopy quotient and the universal bundle.
pub(crate) fn hq_total_iso(
    a: &Act,
    real: &Realization<RawHq>,
    bound: usize,
) -> Result<(BiRealization<RawActionGroupoid>, Realization<RawTotal>, SimplicialMap)> {
    let groupoid = from_raw_bi(RawActionGroupoid {
        a: a.clone(),
        p_max: bound,
        q_max: bound,
        diag: Some(bound),
    })?;
    let tot = total(&groupoid.bss, bound)?;
    let g = &a.g;
    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=real.ss.top_dim() {
        let mut level = Vec::new();
        for id in real.ss.gen_ids(dim) {
            let (c0, cs) = real.elem_of_gen(id).clone();
            let mut tuple = Vec::with_capacity(dim + 1);
            let mut qpart = c0.clone();
            for p in 0..=dim {
                if p > 0 {
                    qpart = a.p().face(&qpart, 0);
                }
                let mut gs = Vec::with_capacity(p);
                for t in 1..=p {
                    let mut x = cs[t - 1];
                    let mut lev = dim - t;
                    while lev > dim - p {
                        x = g.face(lev, 0, x);
                        lev -= 1;
                    }
                    gs.push(x);
                }
                let bc = groupoid.resolve(p, dim - p, &(qpart.clone(), gs))?;
                tuple.push(bc);
            }
            level.push(tot.resolve(dim, &tuple)?);
        }
        assign.push(level);
    }
    let to_total = SimplicialMap::new(real.ss.clone(), tot.ss.clone(), assign).map_err(|e| {
        Error::CrossCheckMismatch {
            construction: "homotopy quotient vs action-groupoid total".into(),
            detail: format!("comparison map is not simplicial: {e}"),
        }
    })?;
    if !to_total.is_iso() {
        return Err(Error::CrossCheckMismatch {
            construction: "homotopy quotient vs action-groupoid total".into(),
            detail: "comparison map is not an isomorphism".into(),
        });
    }
    Ok((groupoid, tot, to_total))
}

/// The homotopy quotient of an action, materialized through `bound`, with
/// its level sizes asserted against the closed formula and the whole
/// construction cross-checked against two independent routes.
pub fn homotopy_quotient(a: &Act, bound: usize) -> Result<HomotopyQuotient> {
    if bound > a.bound {
        return Err(Error::InsufficientDimensionBound { needed: bound, available: a.bound });
    }
    let real = from_raw(RawHq { a: a.clone(), bound })?;

    // Closed formula for the level sizes.
    for n in 0..=bound {
        let mut expect = a.p().cell_count(n)?;
        for k in 0..n {
            expect *= a.g.level(n - 1 - k).order();
        }
        let got = real.ss.cell_count(n)?;
        if got != expect {
            return Err(Error::CrossCheckMismatch {
                construction: "homotopy quotient level size".into(),
                detail: format!("dimension {n}: got {got}, formula gives {expect}"),
            });
        }
    }

    let (groupoid, tot, to_total) = hq_total_iso(a, &real, bound)?;

    // Independent route: orbits of the product with the universal bundle.
    let wb = w_bundle(&a.g, bound)?;
    let wact = &wb.bundle.action;
    let prod = product(a.p(), wact.p(), bound)?;
    let mut pairs: Vec<(Cell, Cell)> = Vec::new();
    for n in 0..=bound {
        let lev = a.g.level(n);
        for z in prod.ss().cells(n)? {
            let (pc, wc) = prod.split(&z)?;
            for gx in 0..lev.order() {
                if gx != lev.id() {
                    let moved = prod.pair(&a.apply(&pc, gx)?, &wact.apply(&wc, gx)?)?;
                    pairs.push((z.clone(), moved));
                }
            }
        }
    }
    let borel = quotient_by_pairs(prod.ss(), &pairs, bound)?;

    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=real.ss.top_dim() {
        let mut level = Vec::new();
        for id in real.ss.gen_ids(dim) {
            let (c0, cs) = real.elem_of_gen(id).clone();
            let e_cell = wact.space.resolve(dim, &a.g.level(dim).id())?;
            let wcell = wb.real.resolve(dim, &(e_cell, cs))?;
            level.push(borel.class_of(&prod.pair(&c0, &wcell)?)?);
        }
        assign.push(level);
    }
    let to_borel =
        SimplicialMap::new(real.ss.clone(), borel.ss.clone(), assign).map_err(|e| {
            Error::CrossCheckMismatch {
                construction: "homotopy quotient vs universal-bundle orbit space".into(),
                detail: format!("comparison map is not simplicial: {e}"),
            }
        })?;
    if !to_borel.is_iso() {
        return Err(Error::CrossCheckMismatch {
            construction: "homotopy quotient vs universal-bundle orbit space".into(),
            detail: "comparison map is not an isomorphism".into(),
        });
    }

    Ok(HomotopyQuotient { real, groupoid, total: tot, to_total, borel, to_borel, bound })
}

/// The map the homotopy quotient induces over an action-invariant map out
/// of the space: forget the group coordinates and push the cell down.
pub fn hq_over_base(hq: &HomotopyQuotient, down: &SimplicialMap) -> Result<SimplicialMap> {
    if *down.source != **hq.real.raw.a.p() {
        return Err(Error::InvalidInput {
            reason: "base map does not start at the acted-on space".into(),
        });
    }
    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=hq.space().top_dim() {
        let mut level = Vec::new();
        for id in hq.space().gen_ids(dim) {
            let (c0, _) = hq.real.elem_of_gen(id);
            level.push(down.eval(c0));
        }
        assign.push(level);
    }
    SimplicialMap::new(hq.space().clone(), down.target.clone(), assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{self_action, trivial_action};
    use crate::groups::wbar::wbar;
    use crate::groups::{const_sgroup, FinGroup};
    use crate::sset::homs::find_iso;
    use crate::sset::standard::simplex;

    fn zn(n: usize, top: usize) -> Sgrp {
        const_sgroup(&FinGroup::cyclic(n).unwrap(), top).unwrap()
    }

    #[test]
    fn groupoid_levels_count_cells_times_group_powers() {
        let g = zn(2, 2);
        let a = trivial_action(&simplex(1), &g, 2).unwrap();
        let gr = action_groupoid(&a, 2, 2).unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                let expect = a.p().cell_count(q).unwrap() * 2usize.pow(p as u32);
                assert_eq!(gr.bss.cell_count(p, q).unwrap(), expect, "bidegree ({p},{q})");
            }
        }
    }

    #[test]
    fn quotient_by_the_trivial_group_returns_the_space() {
        let triv = const_sgroup(&FinGroup::trivial(), 3).unwrap();
        let x = simplex(2);
        let a = trivial_action(&x, &triv, 3).unwrap();
        let hq = homotopy_quotient(&a, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(hq.space().cell_count(n).unwrap(), x.cell_count(n).unwrap());
        }
        assert!(find_iso(hq.space(), &x).unwrap().is_some());
    }

    #[test]
    fn point_quotient_is_the_classifying_space() {
        let g = zn(2, 3);
        let a = trivial_action(&simplex(0), &g, 3).unwrap();
        let hq = homotopy_quotient(&a, 3).unwrap();
        let expect = [1usize, 2, 4, 8];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(hq.space().cell_count(n).unwrap(), *e, "dimension {n}");
        }
        let wb = wbar(&g, 3).unwrap();
        assert!(find_iso(hq.space(), wb.ss()).unwrap().is_some());
    }

    #[test]
    fn translation_quotient_levels_match_the_classifying_space() {
        let g = zn(3, 2);
        let a = self_action(&g, 2).unwrap();
        let hq = homotopy_quotient(&a, 2).unwrap();
        // |G_n| x |G_{n-1}| x ... x |G_0| cells per level.
        let expect = [3usize, 9, 27];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(hq.space().cell_count(n).unwrap(), *e, "dimension {n}");
        }
    }
}
