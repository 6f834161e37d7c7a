//! Simplicial group actions and the bundle theory built on them: action
//! groupoids and homotopy quotients, the universal bundle over the
//! classifying space, shear maps and principality classification, twisted
//! products, pullback and pushforward, covers and Čech nerves, and
//! associated fiber constructions.
//!
//! Everything is validated exhaustively within an explicit dimension bound;
//! classification verdicts carry certificates and a negative answer is only
//! issued together with a concrete disproof.

pub mod cech;
pub mod groupoid;
pub mod twist;
pub mod wbundle;

use crate::error::{Error, Result};
use crate::groups::{underlying, RawUnderlying, Sgrp};
use crate::invariants::{we_certify, WeCert, WePolicy, WeVerdict};
use crate::sset::build::Realization;
use crate::sset::homs::SimplicialMap;
use crate::sset::kan::{check_kan_fibration, KanReport};
use crate::sset::limits::{
    fiber_product, product, quotient_by_pairs, FiberProduct, Product, Quotient,
};
use crate::sset::{Cell, Ss};
use std::sync::Arc;

pub use cech::{cech_nerve, CechNerve, Cover, RawCech};
pub use groupoid::{
    action_groupoid, homotopy_quotient, hq_over_base, HomotopyQuotient, RawActionGroupoid, RawHq,
};
pub use twist::{
    enumerate_twistings, trivial_bundle, twisted_product, RawTwisted, TwistedBundle,
    TwistingFunction,
};
pub use wbundle::{w_bundle, WBundle};

/// A simplicial right action of a levelwise-finite simplicial group on a
/// simplicial set, stored as a validated simplicial map `P × |G| → P`.
///
/// The unit and associativity laws are checked exhaustively on every cell
/// and every pair of group elements through the materialization bound.
pub struct GAction {
    /// The acting simplicial group.
    pub g: Sgrp,
    /// The underlying simplicial set of `g`, with its element dictionary.
    pub space: Realization<RawUnderlying>,
    /// The product `P × |G|` materialized through `bound`.
    pub prod: Product,
    /// The action map `P × |G| → P`.
    pub act: SimplicialMap,
    /// Dimension bound through which the action is materialized and checked.
    pub bound: usize,
}

/// Shared handle for actions; everything downstream stores this.
pub type Act = Arc<GAction>;

impl GAction {
    /// Build an action from a per-cell rule `(p, g) ↦ p·g` and validate it:
    /// the rule must assemble into a simplicial map on `P × |G|`, fix every
    /// cell under the identity, and satisfy `(p·g)·h = p·(gh)` exhaustively.
    pub fn from_rule(
        p: &Ss,
        g: &Sgrp,
        bound: usize,
        rule: &dyn Fn(&Cell, usize) -> Result<Cell>,
    ) -> Result<Act> {
        g.ensure_level(bound)?;
        p.ensure_available(bound)?;
        let space = underlying(g)?;
        let prod = product(p, &space.ss, bound)?;
        let mut assign: Vec<Vec<Cell>> = Vec::new();
        for dim in 0..=prod.ss().top_dim() {
            let mut level = Vec::new();
            for id in prod.ss().gen_ids(dim) {
                let (pc, gc) = prod.real.elem_of_gen(id).clone();
                let gx = space.expand(&gc)?;
                level.push(rule(&pc, gx)?);
            }
            assign.push(level);
        }
        let act = SimplicialMap::new(prod.ss().clone(), p.clone(), assign)?;
        let a = GAction { g: g.clone(), space, prod, act, bound };
        a.validate()?;
        Ok(Arc::new(a))
    }

    /// The simplicial set being acted on.
    pub fn p(&self) -> &Ss {
        &self.act.target
    }

    /// `p · g` for a cell of `P` and a group element index at its level.
    pub fn apply(&self, pc: &Cell, gx: usize) -> Result<Cell> {
        let gc = self.space.resolve(pc.dim(), &gx)?;
        let pair = self.prod.pair(pc, &gc)?;
        Ok(self.act.eval(&pair))
    }

    fn validate(&self) -> Result<()> {
        for n in 0..=self.bound {
            let lev = self.g.level(n);
            let e = lev.id();
            for pc in self.p().cells(n)? {
                if self.apply(&pc, e)? != pc {
                    return Err(Error::InvalidInput {
                        reason: format!(
                            "action unit law fails at {} (dim {n})",
                            self.p().cell_name(&pc)
                        ),
                    });
                }
                for gx in 0..lev.order() {
                    let pg = self.apply(&pc, gx)?;
                    for hx in 0..lev.order() {
                        if self.apply(&pg, hx)? != self.apply(&pc, lev.mul(gx, hx))? {
                            return Err(Error::InvalidInput {
                                reason: format!(
                                    "action associativity fails at {} with {}, {} (dim {n})",
                                    self.p().cell_name(&pc),
                                    lev.elem_name(gx),
                                    lev.elem_name(hx)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Search for a nontrivial stabilizer through dimension `through`;
    /// `None` means the action is degreewise free there.
    pub fn free_violation(&self, through: usize) -> Result<Option<String>> {
        for n in 0..=through {
            let lev = self.g.level(n);
            for pc in self.p().cells(n)? {
                for gx in 0..lev.order() {
                    if gx != lev.id() && self.apply(&pc, gx)? == pc {
                        return Ok(Some(format!(
                            "{} is fixed by {} at dim {n}",
                            self.p().cell_name(&pc),
                            lev.elem_name(gx)
                        )));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// The action of `g` on `p` that fixes everything.
pub fn trivial_action(p: &Ss, g: &Sgrp, bound: usize) -> Result<Act> {
    GAction::from_rule(p, g, bound, &|pc, _| Ok(pc.clone()))
}

/// The right-translation action of a simplicial group on its own underlying
/// simplicial set.
pub fn self_action(g: &Sgrp, bound: usize) -> Result<Act> {
    g.ensure_level(bound)?;
    let reference = underlying(g)?;
    let p = reference.ss.clone();
    GAction::from_rule(&p, g, bound, &|pc, gx| {
        let n = pc.dim();
        let a = reference.expand(pc)?;
        reference.resolve(n, &g.level(n).mul(a, gx))
    })
}

/// A bundle: an action on the total space together with an action-invariant
/// projection to the base. Invariance is checked exhaustively on every cell
/// and group element through the action's bound.
pub struct GBundle {
    pub action: Act,
    pub base: Ss,
    pub proj: SimplicialMap,
}

impl GBundle {
    pub fn new(action: Act, base: Ss, proj: SimplicialMap) -> Result<GBundle> {
        if *proj.source != **action.p() {
            return Err(Error::InvalidInput {
                reason: "bundle projection does not start at the total space".into(),
            });
        }
        if *proj.target != *base {
            return Err(Error::InvalidInput {
                reason: "bundle projection does not end at the base".into(),
            });
        }
        for n in 0..=action.bound {
            let lev = action.g.level(n);
            for pc in action.p().cells(n)? {
                let down = proj.eval(&pc);
                for gx in 0..lev.order() {
                    if proj.eval(&action.apply(&pc, gx)?) != down {
                        return Err(Error::InvalidInput {
                            reason: format!(
                                "projection is not action-invariant at {} with {} (dim {n})",
                                action.p().cell_name(&pc),
                                lev.elem_name(gx)
                            ),
                        });
                    }
                }
            }
        }
        Ok(GBundle { action, base, proj })
    }

    pub fn total(&self) -> &Ss {
        &self.proj.source
    }

    pub fn g(&self) -> &Sgrp {
        &self.action.g
    }

    pub fn bound(&self) -> usize {
        self.action.bound
    }
}

/// The iterated fiber product `P ×_X ⋯ ×_X P` (`n+1` factors, left
/// associated) together with the chain of fiber products used to build it.
pub struct FiberPower {
    pub stages: Vec<FiberProduct>,
    /// `stages[k]` is the (k+2)-fold power; `to_base[k]` is its structure
    /// map to the base.
    pub to_base: Vec<SimplicialMap>,
}

impl FiberPower {
    pub fn top(&self) -> &FiberProduct {
        self.stages.last().expect("at least one stage")
    }
}

/// Build `P ×_X ⋯ ×_X P` with `n+1` factors (`n ≥ 1`).
pub fn fiber_power(b: &GBundle, n: usize, bound: usize) -> Result<FiberPower> {
    if n == 0 {
        return Err(Error::InvalidInput { reason: "fiber power needs at least two factors".into() });
    }
    let mut stages: Vec<FiberProduct> = Vec::new();
    let mut to_base: Vec<SimplicialMap> = Vec::new();
    for _ in 0..n {
        let left = if let Some(m) = to_base.last() { m.clone() } else { b.proj.clone() };
        let fp = fiber_product(&left, &b.proj, bound)?;
        let down = fp.pr2.then(&b.proj)?;
        stages.push(fp);
        to_base.push(down);
    }
    Ok(FiberPower { stages, to_base })
}

/// The product stages extending `P × |G|` to `P × |G|^n`: `stages[k]` is
/// the (k+3)-factor product, and the 2-factor product is the action's own.
pub(crate) struct ProductPower {
    stages: Vec<Product>,
}

impl ProductPower {
    /// The simplicial set of `P × |G|^n` for the `n` this power was built
    /// for, falling back to the action's product for `n = 1`.
    fn top_ss<'a>(&'a self, a: &'a Act) -> &'a Ss {
        match self.stages.last() {
            Some(p) => p.ss(),
            None => a.prod.ss(),
        }
    }
}

/// Build `P × |G|^n` (`n ≥ 1`).
pub(crate) fn product_power(a: &Act, n: usize, bound: usize) -> Result<ProductPower> {
    if n == 0 {
        return Err(Error::InvalidInput { reason: "product power needs at least one factor".into() });
    }
    let mut stages: Vec<Product> = Vec::new();
    for _ in 1..n {
        let prev = if let Some(p) = stages.last() { p.ss().clone() } else { a.prod.ss().clone() };
        stages.push(product(&prev, &a.space.ss, bound)?);
    }
    Ok(ProductPower { stages })
}

/// Unfold a cell of `P × |G|^n` into its `P`-cell and `n` group elements.
fn unfold_power(a: &Act, power: &ProductPower, c: &Cell, n: usize) -> Result<(Cell, Vec<usize>)> {
    let mut gs: Vec<usize> = Vec::with_capacity(n);
    let mut cur = c.clone();
    for k in (0..n).rev() {
        let (rest, gc) = if k == 0 {
            a.prod.split(&cur)?
        } else {
            power.stages[k - 1].split(&cur)?
        };
        gs.push(a.space.expand(&gc)?);
        cur = rest;
    }
    gs.reverse();
    Ok((cur, gs))
}

/// The `n`-fold shear map `P × |G|ⁿ → P ×_X ⋯ ×_X P`,
/// `(p, g_1, …, g_n) ↦ (p, pg_1, pg_1g_2, …)`.
pub fn shear(b: &GBundle, n: usize, bound: usize) -> Result<SimplicialMap> {
    if n == 0 {
        return Err(Error::InvalidInput { reason: "shear needs n >= 1".into() });
    }
    let a = &b.action;
    let power = product_power(a, n, bound)?;
    let target = fiber_power(b, n, bound)?;
    let source_ss = power.top_ss(a).clone();
    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=source_ss.top_dim() {
        let mut level = Vec::new();
        for id in source_ss.gen_ids(dim) {
            let (pc, gs) = unfold_power(a, &power, &Cell::of_gen(id), n)?;
            let mut cur = pc.clone();
            let mut img: Option<Cell> = None;
            for (k, &gx) in gs.iter().enumerate() {
                cur = a.apply(&cur, gx)?;
                img = Some(match img {
                    None => target.stages[k].pair(&pc, &cur)?,
                    Some(prev) => target.stages[k].pair(&prev, &cur)?,
                });
            }
            level.push(img.expect("n >= 1"));
        }
        assign.push(level);
    }
    SimplicialMap::new(source_ss, target.top().ss().clone(), assign)
}

/// The classification verdict for a bundle.
#[derive(Debug)]
pub enum Principality {
    /// Degreewise free action and the plain quotient maps isomorphically
    /// onto the base.
    Strict,
    /// The shear map is certified a weak equivalence at the given strength.
    Weak(WeCert),
    /// A concrete disproof of weak principality.
    Fail { report: String },
}

impl Principality {
    pub fn at_least_weak(&self) -> bool {
        matches!(self, Principality::Strict | Principality::Weak(_))
    }

    pub fn label(&self) -> String {
        match self {
            Principality::Strict => "STRICT".into(),
            Principality::Weak(c) => format!("WEAK({})", c.level()),
            Principality::Fail { .. } => "FAIL".into(),
        }
    }
}

/// The plain orbit quotient `P/G` of an action, through `bound`.
pub fn plain_quotient(a: &Act, bound: usize) -> Result<Quotient> {
    let mut pairs: Vec<(Cell, Cell)> = Vec::new();
    for n in 0..=bound {
        let lev = a.g.level(n);
        for pc in a.p().cells(n)? {
            for gx in 0..lev.order() {
                if gx != lev.id() {
                    pairs.push((pc.clone(), a.apply(&pc, gx)?));
                }
            }
        }
    }
    quotient_by_pairs(a.p(), &pairs, bound)
}

/// The map a quotient induces from a map that is constant on classes.
/// Fails with a simpliciality error if the map does not descend.
pub fn induced_on_quotient(q: &Quotient, f: &SimplicialMap) -> Result<SimplicialMap> {
    let qss = &q.ss;
    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=qss.top_dim() {
        let mut level = Vec::new();
        for id in qss.gen_ids(dim) {
            let rep = q.representative(&Cell::of_gen(id))?;
            level.push(f.eval(&rep));
        }
        assign.push(level);
    }
    SimplicialMap::new(qss.clone(), f.target.clone(), assign)
}

/// Decide how principal a bundle is.
///
/// Precondition: the projection must pass the horn-lifting check through
/// `bound`; a counterexample aborts with `ProjectionNotFibration`.
/// The verdict is `Strict` iff the action is degreewise free and the plain
/// quotient maps isomorphically onto the base; otherwise `Weak` iff the
/// shear map is certified a weak equivalence under `policy`; `Fail` only
/// on a concrete disproof. An inconclusive certification attempt is
/// reported as `CertificateNotFound`, never as a negative verdict.
pub fn classify_principality(
    b: &GBundle,
    policy: WePolicy,
    bound: usize,
) -> Result<Principality> {
    let report = check_kan_fibration(&b.proj, bound)?;
    if let Some(cex) = &report.counterexample {
        return Err(Error::ProjectionNotFibration { witness: format!("{cex:?}") });
    }
    if b.action.free_violation(bound)?.is_none() {
        let q = plain_quotient(&b.action, bound)?;
        let to_base = induced_on_quotient(&q, &b.proj)?;
        if to_base.is_iso() {
            return Ok(Principality::Strict);
        }
    }
    let sh = shear(b, 1, bound)?;
    match we_certify(&sh, policy)? {
        WeVerdict::Certified(cert) => Ok(Principality::Weak(cert)),
        WeVerdict::Disproved { reason } => Ok(Principality::Fail { report: reason }),
        WeVerdict::Inconclusive { reason } => Err(Error::CertificateNotFound { reason }),
    }
}

/// Pull a bundle back along `f: Y → X`. Requires the input to classify at
/// least weakly principal; the result is re-certified and returned with its
/// own verdict.
pub fn pullback_bundle(
    f: &SimplicialMap,
    b: &GBundle,
    policy: WePolicy,
    bound: usize,
) -> Result<(GBundle, Principality)> {
    if *f.target != *b.base {
        return Err(Error::InvalidInput {
            reason: "pullback map does not land in the bundle's base".into(),
        });
    }
    match classify_principality(b, policy, bound)? {
        Principality::Fail { report } => {
            return Err(Error::CertificateNotFound {
                reason: format!("pullback input is not weakly principal: {report}"),
            })
        }
        _ => {}
    }
    let fp = fiber_product(f, &b.proj, bound)?;
    let total = fp.ss().clone();
    let action = GAction::from_rule(&total, &b.action.g, bound, &|c: &Cell, gx: usize| {
        let (yc, pc) = fp.split(c)?;
        fp.pair(&yc, &b.action.apply(&pc, gx)?)
    })?;
    let nb = GBundle::new(action, f.source.clone(), fp.pr1.clone())?;
    let verdict = classify_principality(&nb, policy, bound)?;
    Ok((nb, verdict))
}

/// A map together with certificates that it is a Kan fibration and a weak
/// equivalence through a bound.
#[derive(Clone)]
pub struct AcyclicFibration {
    pub map: SimplicialMap,
    pub kan: Arc<KanReport>,
    pub cert: WeCert,
    pub bound: usize,
}

/// Certify a map as an acyclic fibration through `bound`, or say exactly
/// what is missing.
pub fn certify_acyclic_fibration(
    f: &SimplicialMap,
    bound: usize,
    policy: WePolicy,
) -> Result<AcyclicFibration> {
    let kan = check_kan_fibration(f, bound)?;
    if let Some(cex) = &kan.counterexample {
        return Err(Error::ProjectionNotFibration { witness: format!("{cex:?}") });
    }
    match we_certify(f, policy)? {
        WeVerdict::Certified(cert) => {
            Ok(AcyclicFibration { map: f.clone(), kan: Arc::new(kan), cert, bound })
        }
        WeVerdict::Disproved { reason } | WeVerdict::Inconclusive { reason } => {
            Err(Error::CertificateNotFound { reason })
        }
    }
}

impl AcyclicFibration {
    /// Re-run both checks behind the certificate.
    pub fn revalidate(&self, policy: WePolicy) -> Result<()> {
        let kan = check_kan_fibration(&self.map, self.bound)?;
        if let Some(cex) = &kan.counterexample {
            return Err(Error::ProjectionNotFibration { witness: format!("{cex:?}") });
        }
        match we_certify(&self.map, policy)? {
            WeVerdict::Certified(_) => Ok(()),
            WeVerdict::Disproved { reason } | WeVerdict::Inconclusive { reason } => {
                Err(Error::CertificateNotFound { reason })
            }
        }
    }
}

/// Push a bundle forward along a certified acyclic fibration of bases:
/// same total space, composite projection, principality re-certified.
pub fn pushforward_bundle(
    cert: Option<&AcyclicFibration>,
    b: &GBundle,
    policy: WePolicy,
    bound: usize,
) -> Result<(GBundle, Principality)> {
    let Some(c) = cert else {
        return Err(Error::CertificateMissing {
            what: "acyclic-fibration certificate for the pushforward map".into(),
        });
    };
    if *c.map.source != *b.base {
        return Err(Error::InvalidInput {
            reason: "pushforward map does not start at the bundle's base".into(),
        });
    }
    let proj = b.proj.then(&c.map)?;
    let nb = GBundle::new(b.action.clone(), c.map.target.clone(), proj)?;
    let verdict = classify_principality(&nb, policy, bound)?;
    Ok((nb, verdict))
}

/// The result of an associated-fiber construction.
pub struct Associated {
    pub total: Ss,
    pub proj: SimplicialMap,
    /// True when the diagonal action was degreewise free and the plain
    /// quotient was used; false for the homotopy-quotient form.
    pub plain: bool,
}

/// The associated bundle `P ×_G V`: the plain quotient of `P × V` by the
/// diagonal action when that action is degreewise free, otherwise the
/// homotopy quotient; in both cases with the projection induced to the base.
pub fn associated(
    b: &GBundle,
    v: &Act,
    policy: WePolicy,
    bound: usize,
) -> Result<Associated> {
    if !Arc::ptr_eq(&b.action.g, &v.g) {
        return Err(Error::InvalidInput {
            reason: "associated construction needs both actions by the same group".into(),
        });
    }
    match classify_principality(b, policy, bound)? {
        Principality::Fail { report } => {
            return Err(Error::CertificateNotFound {
                reason: format!("associated construction input is not weakly principal: {report}"),
            })
        }
        _ => {}
    }
    let prod = product(b.total(), v.p(), bound)?;
    let diag = GAction::from_rule(prod.ss(), &b.action.g, bound, &|c: &Cell, gx: usize| {
        let (pc, vc) = prod.split(c)?;
        prod.pair(&b.action.apply(&pc, gx)?, &v.apply(&vc, gx)?)
    })?;
    let down = prod.pr1.then(&b.proj)?;
    if diag.free_violation(bound)?.is_none() {
        let q = plain_quotient(&diag, bound)?;
        let proj = induced_on_quotient(&q, &down)?;
        Ok(Associated { total: q.ss.clone(), proj, plain: true })
    } else {
        let hq = homotopy_quotient(&diag, bound)?;
        let proj = groupoid::hq_over_base(&hq, &down)?;
        Ok(Associated { total: hq.space().clone(), proj, plain: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{const_sgroup, FinGroup};
    use crate::sset::standard::simplex;

    fn z2(top: usize) -> Sgrp {
        const_sgroup(&FinGroup::cyclic(2).unwrap(), top).unwrap()
    }

    #[test]
    fn trivial_action_fixes_everything_and_is_not_free() {
        let a = trivial_action(&simplex(1), &z2(2), 2).unwrap();
        let v = a.p().cells(0).unwrap()[0].clone();
        assert_eq!(a.apply(&v, 1).unwrap(), v);
        assert!(a.free_violation(2).unwrap().is_some());
    }

    #[test]
    fn self_action_is_free_and_its_orbit_space_is_a_point() {
        let a = self_action(&z2(2), 2).unwrap();
        assert!(a.free_violation(2).unwrap().is_none());
        let q = plain_quotient(&a, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(q.ss.cell_count(n).unwrap(), 1);
        }
    }

    #[test]
    fn broken_action_rule_is_rejected() {
        // A rule that ignores the group element but moves vertices breaks
        // the unit law on a two-vertex space.
        let x = simplex(1);
        let g = z2(1);
        let r = GAction::from_rule(&x, &g, 1, &|pc, _| {
            Ok(if pc.dim() == 0 {
                let other = 1 - pc.base.idx;
                Cell::of_gen(crate::sset::GenId { dim: 0, idx: other })
            } else {
                pc.clone()
            })
        });
        assert!(r.is_err());
    }

    #[test]
    fn trivial_action_over_a_point_fails_classification_with_a_disproof() {
        let pt = simplex(0);
        let g = z2(2);
        let a = trivial_action(&pt, &g, 2).unwrap();
        let proj = SimplicialMap::identity(&pt);
        let b = GBundle::new(a, pt.clone(), proj).unwrap();
        let verdict =
            classify_principality(&b, WePolicy::Invariants { bound: 2 }, 2).unwrap();
        match verdict {
            Principality::Fail { .. } => {}
            other => panic!("expected a disproof, got {}", other.label()),
        }
    }

    #[test]
    fn equivariance_of_the_projection_is_enforced() {
        // Projecting the translation action onto the group itself is not
        // invariant, so the bundle constructor must reject it.
        let g = z2(1);
        let a = self_action(&g, 1).unwrap();
        let id = SimplicialMap::identity(a.p());
        assert!(GBundle::new(a, id.target.clone(), id).is_err());
    }
}
