//! Twisting functions and the twisted products they define: strictly
//! principal bundles presented by explicit cocycle data on the base, plus
//! exhaustive enumeration of all twisting functions on a finite base.

use crate::error::{Error, Result};
use crate::groups::Sgrp;
use crate::sset::build::{from_raw, RawSimplicial, Realization};
use crate::sset::homs::SimplicialMap;
use crate::sset::{Cell, Ss};

use super::{GAction, GBundle};

/// A degree-lowering map from the cells of a base to group elements,
/// satisfying the cocycle identities that make the associated twisted
/// product simplicial. Values are stored on nondegenerate cells; values on
/// degenerate cells are forced by the degeneracy identities and computed by
/// peeling the normal form.
#[derive(Clone)]
pub struct TwistingFunction {
    pub x: Ss,
    pub g: Sgrp,
    /// `vals[n][k]` is the value on generator k of dimension n, an element
    /// of the group at level n-1; `vals[0]` is unused.
    vals: Vec<Vec<usize>>,
    /// The dimension through which the identities were verified.
    pub check_through: usize,
}

impl std::fmt::Debug for TwistingFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwistingFunction")
            .field("vals", &self.vals)
            .field("check_through", &self.check_through)
            .finish()
    }
}

/// The verification limit for a base: its truncation dimension if it has
/// one, otherwise one above its top generator dimension (all higher cells
/// are iterated degeneracies and carry no new constraints).
fn check_limit(x: &Ss) -> usize {
    match x.truncated_at() {
        Some(t) => t,
        None => x.top_dim() + 1,
    }
}

impl TwistingFunction {
    /// Validate and wrap values on generators. Every face identity is
    /// checked on every cell (degenerate ones included) through the limit,
    /// and the degeneracy identities are checked for consistency with the
    /// normal-form evaluation.
    pub fn new(x: &Ss, g: &Sgrp, vals: Vec<Vec<usize>>) -> Result<TwistingFunction> {
        let lim = check_limit(x);
        x.ensure_available(lim)?;
        if lim >= 1 {
            g.ensure_level(lim - 1)?;
        }
        if vals.len() != lim + 1 {
            return Err(Error::InvalidInput {
                reason: format!(
                    "twisting values must cover dimensions 0..={lim}, got {}",
                    vals.len().saturating_sub(1)
                ),
            });
        }
        for n in 1..=lim {
            if vals[n].len() != x.gen_count(n) {
                return Err(Error::InvalidInput {
                    reason: format!(
                        "dimension {n} needs {} values, got {}",
                        x.gen_count(n),
                        vals[n].len()
                    ),
                });
            }
            let order = g.level(n - 1).order();
            if let Some(&bad) = vals[n].iter().find(|&&v| v >= order) {
                return Err(Error::InvalidInput {
                    reason: format!("value {bad} out of range at dimension {n}"),
                });
            }
        }
        let tau = TwistingFunction { x: x.clone(), g: g.clone(), vals, check_through: lim };
        tau.validate()?;
        Ok(tau)
    }

    /// The twisting that is identity everywhere.
    pub fn trivial(x: &Ss, g: &Sgrp) -> Result<TwistingFunction> {
        let lim = check_limit(x);
        if lim >= 1 {
            g.ensure_level(lim - 1)?;
        }
        let mut vals = vec![Vec::new()];
        for n in 1..=lim {
            vals.push(vec![g.level(n - 1).id(); x.gen_count(n)]);
        }
        TwistingFunction::new(x, g, vals)
    }

    /// Evaluate on any cell of dimension at least 1 by peeling its
    /// degeneracy word.
    pub fn eval(&self, c: &Cell) -> usize {
        let n = c.dim();
        if c.word.is_empty() {
            return self.vals[n][c.base.idx];
        }
        let i = c.word[0];
        if i == 0 {
            return self.g.level(n - 1).id();
        }
        let inner = Cell { word: c.word[1..].to_vec(), base: c.base };
        self.g.degen(n - 2, i - 1, self.eval(&inner))
    }

    fn violation(&self, identity: &str, c: &Cell) -> Error {
        Error::TwistingIdentityViolation {
            identity: identity.into(),
            cell: self.x.cell_name(c),
        }
    }

    fn validate(&self) -> Result<()> {
        let g = &self.g;
        let lim = self.check_through;
        // Face identities on every cell of every dimension through the limit.
        for n in 2..=lim {
            for c in self.x.cells(n)? {
                let tc = self.eval(&c);
                let lhs1 = self.eval(&self.x.face(&c, 1));
                let rhs1 =
                    g.level(n - 2).mul(g.face(n - 1, 0, tc), self.eval(&self.x.face(&c, 0)));
                if lhs1 != rhs1 {
                    return Err(self.violation("t(d_1 x) = d_0(t(x)) * t(d_0 x)", &c));
                }
                for i in 2..=n {
                    if self.eval(&self.x.face(&c, i)) != g.face(n - 1, i - 1, tc) {
                        return Err(self.violation("t(d_i x) = d_{i-1}(t(x))", &c));
                    }
                }
            }
        }
        // Degeneracy identities: the normal-form evaluation must agree with
        // the prescribed values on every degenerate image.
        for n in 1..lim {
            for c in self.x.cells(n)? {
                let tc = self.eval(&c);
                for i in 0..=n {
                    // The degenerate cell has dimension n+1, so its value
                    // lives at group level n.
                    let up = self.eval(&c.degenerate(i));
                    if i == 0 {
                        if up != g.level(n).id() {
                            return Err(self.violation("t(s_0 x) = e", &c));
                        }
                    } else if up != g.degen(n - 1, i - 1, tc) {
                        return Err(self.violation("t(s_i x) = s_{i-1}(t(x))", &c));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Level n of a twisted product: pairs of a base cell and a group element
/// at level n, with the 0th face twisted by the cocycle and everything else
/// componentwise.
pub struct RawTwisted {
    tau: TwistingFunction,
    bound: usize,
}

impl RawSimplicial for RawTwisted {
    type Elem = (Cell, usize);

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<Self::Elem>> {
        let order = self.tau.g.level(dim).order();
        let mut out = Vec::new();
        for c in self.tau.x.cells(dim)? {
            for h in 0..order {
                out.push((c.clone(), h));
            }
        }
        Ok(out)
    }

    fn face(&self, dim: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let (c, h) = e;
        let g = &self.tau.g;
        if i == 0 {
            let twisted = g.level(dim - 1).mul(g.face(dim, 0, *h), self.tau.eval(c));
            Ok((self.tau.x.face(c, 0), twisted))
        } else {
            Ok((self.tau.x.face(c, i), g.face(dim, i, *h)))
        }
    }

    fn degeneracy(&self, dim: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let (c, h) = e;
        Ok((c.degenerate(i), self.tau.g.degen(dim, i, *h)))
    }

    fn name(&self, dim: usize, e: &Self::Elem) -> String {
        let (c, h) = e;
        format!("{}|{}", self.tau.x.cell_name(c), self.tau.g.level(dim).elem_name(*h))
    }
}

/// A twisted product bundle together with its cell dictionary and the
/// cocycle that produced it.
pub struct TwistedBundle {
    pub real: Realization<RawTwisted>,
    pub bundle: GBundle,
    pub tau: TwistingFunction,
}

/// The twisted product of a base with the acting group along a twisting
/// function: a strictly principal bundle whose total space pairs base cells
/// with group elements.
pub fn twisted_product(tau: &TwistingFunction, bound: usize) -> Result<TwistedBundle> {
    tau.g.ensure_level(bound)?;
    if tau.x.truncated_at().is_some() && bound > tau.check_through {
        return Err(Error::InsufficientDimensionBound {
            needed: bound,
            available: tau.check_through,
        });
    }
    tau.x.ensure_available(bound)?;
    let real = from_raw(RawTwisted { tau: tau.clone(), bound })?;

    let g = &tau.g;
    let action = GAction::from_rule(&real.ss, g, bound, &|pc: &Cell, gx: usize| {
        let n = pc.dim();
        let (xc, h) = real.expand(pc)?;
        let lev = g.level(n);
        real.resolve(n, &(xc, lev.mul(lev.inv(gx), h)))
    })?;

    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=real.ss.top_dim() {
        let mut level = Vec::new();
        for id in real.ss.gen_ids(dim) {
            let (xc, _) = real.elem_of_gen(id);
            level.push(xc.clone());
        }
        assign.push(level);
    }
    let proj = SimplicialMap::new(real.ss.clone(), tau.x.clone(), assign)?;
    let bundle = GBundle::new(action, tau.x.clone(), proj)?;
    Ok(TwistedBundle { real, bundle, tau: tau.clone() })
}

/// The twisted product along the identity twisting: the product bundle.
pub fn trivial_bundle(x: &Ss, g: &Sgrp, bound: usize) -> Result<TwistedBundle> {
    twisted_product(&TwistingFunction::trivial(x, g)?, bound)
}

/// Enumerate every twisting function of the base with values in the group,
/// in a deterministic order (dimensions ascending, generators in order,
/// last slot varying fastest). The full assignment space is sized first and
/// refused if it exceeds `budget`.
pub fn enumerate_twistings(x: &Ss, g: &Sgrp, budget: usize) -> Result<Vec<TwistingFunction>> {
    let lim = check_limit(x);
    if lim >= 1 {
        g.ensure_level(lim - 1)?;
    }
    let mut radices: Vec<usize> = Vec::new();
    for n in 1..=lim {
        for _ in 0..x.gen_count(n) {
            radices.push(g.level(n - 1).order());
        }
    }
    let mut estimate: usize = 1;
    for &r in &radices {
        estimate = estimate.saturating_mul(r);
    }
    if estimate > budget {
        return Err(Error::CombinatorialBlowup {
            estimate: estimate.to_string(),
            during: "twisting function enumeration".into(),
        });
    }
    let mut out = Vec::new();
    let mut combo = vec![0usize; radices.len()];
    loop {
        let mut vals = vec![Vec::new(); lim + 1];
        let mut k = 0;
        for n in 1..=lim {
            for _ in 0..x.gen_count(n) {
                vals[n].push(combo[k]);
                k += 1;
            }
        }
        if let Ok(t) = TwistingFunction::new(x, g, vals) {
            out.push(t);
        }
        // Advance the odometer, last slot fastest.
        let mut pos = combo.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            combo[pos] += 1;
            if combo[pos] < radices[pos] {
                break;
            }
            combo[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{classify_principality, Principality};
    use crate::groups::{const_sgroup, FinGroup};
    use crate::invariants::{pi0, WePolicy};
    use crate::sset::standard::{circle_min, simplex};

    fn z2(top: usize) -> Sgrp {
        const_sgroup(&FinGroup::cyclic(2).unwrap(), top).unwrap()
    }

    #[test]
    fn trivial_twisting_gives_the_product_bundle() {
        let x = simplex(1);
        let g = z2(2);
        let tb = trivial_bundle(&x, &g, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(
                tb.bundle.total().cell_count(n).unwrap(),
                2 * x.cell_count(n).unwrap()
            );
        }
        let verdict =
            classify_principality(&tb.bundle, WePolicy::Invariants { bound: 2 }, 2).unwrap();
        assert!(matches!(verdict, Principality::Strict));
    }

    #[test]
    fn circle_twistings_split_into_trivial_and_connected_double_cover() {
        let x = circle_min();
        let g = z2(2);
        let taus = enumerate_twistings(&x, &g, 1000).unwrap();
        assert_eq!(taus.len(), 2);
        let mut components = Vec::new();
        for tau in &taus {
            let tb = twisted_product(tau, 2).unwrap();
            components.push(pi0(tb.bundle.total()).unwrap().count());
            let verdict =
                classify_principality(&tb.bundle, WePolicy::Invariants { bound: 2 }, 2)
                    .unwrap();
            assert!(matches!(verdict, Principality::Strict));
        }
        components.sort();
        assert_eq!(components, vec![1, 2]);
    }

    #[test]
    fn point_base_admits_only_the_trivial_twisting() {
        let taus = enumerate_twistings(&simplex(0), &z2(1), 10).unwrap();
        assert_eq!(taus.len(), 1);
    }

    #[test]
    fn cocycle_identities_reject_inconsistent_values() {
        // On the 2-simplex the value on the long edge is forced by the
        // values on the triangle and the short edges.
        let x = simplex(2);
        let g = z2(2);
        let mut ok = 0;
        let mut bad = 0;
        for combo in 0..16u32 {
            let vals = vec![
                vec![],
                vec![(combo & 1) as usize, ((combo >> 1) & 1) as usize, ((combo >> 2) & 1) as usize],
                vec![((combo >> 3) & 1) as usize],
            ];
            let mut padded = vals;
            padded.push(vec![]);
            match TwistingFunction::new(&x, &g, padded) {
                Ok(_) => ok += 1,
                Err(Error::TwistingIdentityViolation { .. }) => bad += 1,
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        // Two of the four slots are free: the triangle value and one edge.
        assert_eq!(ok + bad, 16);
        assert_eq!(ok, 4);
    }

    #[test]
    fn enumeration_respects_the_budget() {
        let err = enumerate_twistings(&circle_min(), &z2(2), 1).unwrap_err();
        assert!(matches!(err, Error::CombinatorialBlowup { .. }));
    }
}
