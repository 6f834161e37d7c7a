//! The canonical sequence of a simplicial group over its vertex group, and
//! Postnikov stages of Kan complexes.
//!
//! For a simplicial group G, the vertex group G_0 embeds in every level by
//! iterated leading degeneracies (a split injection, re-verified here), and
//! the levelwise coset projection is a simplicial map. The projection is
//! checked to be a horn filler-lifting map through the available dimensions;
//! a failure would signal an implementation bug and is reported as a
//! cross-check mismatch, never swallowed.
//!
//! The n-th Postnikov stage of a Kan complex identifies two simplices
//! exactly when all their n-dimensional restrictions agree; the identifying
//! pairs are handed to the generic simplicial-congruence quotient.

use super::{const_sgroup, underlying, RawUnderlying, Sgrp};
use crate::error::{Error, Result};
use crate::sset::build::{from_raw, RawSimplicial, Realization};
use crate::sset::homs::SimplicialMap;
use crate::sset::kan::{check_kan, check_kan_fibration, KanReport};
use crate::sset::limits::{quotient_by_pairs, Quotient};
use crate::sset::standard::strictly_increasing_tuples;
use crate::sset::{Cell, Ss};
use std::collections::HashMap;

/// Coset space of the embedded vertex group: level n is G_n / e_n(G_0),
/// with each coset named by its smallest member.
pub struct RawCosets {
    g: Sgrp,
}

impl RawCosets {
    fn canon(&self, n: usize, x: usize) -> usize {
        let level = self.g.level(n);
        (0..self.g.level(0).order())
            .map(|h| level.mul(x, self.g.embed_vertex(n, h)))
            .min()
            .expect("vertex group is nonempty")
    }
}

impl RawSimplicial for RawCosets {
    type Elem = usize;
    fn max_dim(&self) -> usize {
        self.g.top()
    }
    fn elems(&self, dim: usize) -> Result<Vec<usize>> {
        let mut reps: Vec<usize> =
            (0..self.g.level(dim).order()).map(|x| self.canon(dim, x)).collect();
        reps.sort_unstable();
        reps.dedup();
        Ok(reps)
    }
    fn face(&self, dim: usize, e: &usize, i: usize) -> Result<usize> {
        Ok(self.canon(dim - 1, self.g.face(dim, i, *e)))
    }
    fn degeneracy(&self, dim: usize, e: &usize, i: usize) -> Result<usize> {
        Ok(self.canon(dim + 1, self.g.degen(dim, i, *e)))
    }
    fn name(&self, dim: usize, e: &usize) -> String {
        format!("[{}]", self.g.level(dim).elem_name(*e))
    }
    fn truncation(&self) -> Option<usize> {
        if (0..=self.g.top()).all(|n| self.g.level(n).order() == 1) {
            None
        } else {
            Some(self.g.top())
        }
    }
}

/// The vertex-group sequence: constant vertex group, total space, and coset
/// base, with the inclusion and projection maps and the projection's horn
/// lifting report.
pub struct G0Sequence {
    pub total: Realization<RawUnderlying>,
    pub vertex_group: Realization<RawUnderlying>,
    pub cosets: Realization<RawCosets>,
    pub incl: SimplicialMap,
    pub quot: SimplicialMap,
    pub report: KanReport,
}

pub fn g0_sequence(g: &Sgrp) -> Result<G0Sequence> {
    let top = g.top();
    // The embedding must be levelwise injective for the cosets to partition
    // evenly; a collision means the degeneracies fail to act freely.
    for n in 0..=top {
        let mut seen = HashMap::new();
        for h in 0..g.level(0).order() {
            let e = g.embed_vertex(n, h);
            if let Some(prev) = seen.insert(e, h) {
                return Err(Error::ActionNotFree {
                    witness: format!(
                        "{} and {} embed to the same element of level {n}",
                        g.level(0).elem_name(prev),
                        g.level(0).elem_name(h)
                    ),
                });
            }
        }
    }

    let total = underlying(g)?;
    let vertex_group = underlying(&const_sgroup(g.level(0), top)?)?;
    let cosets = from_raw(RawCosets { g: g.clone() })?;

    let incl_assign: Vec<Vec<Cell>> = (0..=vertex_group.ss.top_dim())
        .map(|n| {
            vertex_group
                .ss
                .gen_ids(n)
                .map(|id| {
                    let h = *vertex_group.elem_of_gen(id);
                    total.resolve(n, &g.embed_vertex(n, h))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let incl = SimplicialMap::new(vertex_group.ss.clone(), total.ss.clone(), incl_assign)?;

    let quot_assign: Vec<Vec<Cell>> = (0..=total.ss.top_dim())
        .map(|n| {
            total
                .ss
                .gen_ids(n)
                .map(|id| cosets.resolve(n, &cosets.raw.canon(n, *total.elem_of_gen(id))))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let quot = SimplicialMap::new(total.ss.clone(), cosets.ss.clone(), quot_assign)?;

    let report = check_kan_fibration(&quot, top)?;
    if let Some(c) = &report.counterexample {
        return Err(Error::CrossCheckMismatch {
            construction: "g0_sequence".into(),
            detail: format!("coset projection misses a ({}, {}) horn filler", c.n, c.k),
        });
    }
    Ok(G0Sequence { total, vertex_group, cosets, incl, quot, report })
}

/// n-th Postnikov stage of a Kan complex: identify simplices with equal
/// n-dimensional restrictions and quotient.
pub fn postnikov_stage(x: &Ss, n: usize) -> Result<Quotient> {
    let bound = x.truncated_at().unwrap_or_else(|| x.top_dim());
    // For a complete complex the composite obstructions live one dimension
    // above the last generators, so probe horns there too.
    let kan_depth = x.truncated_at().unwrap_or_else(|| x.top_dim() + 1);
    let report = check_kan(x, kan_depth)?;
    if let Some(c) = report.counterexample {
        return Err(Error::SourceNotKan {
            witness: format!("no filler for a ({}, {}) horn", c.n, c.k),
        });
    }
    let mut pairs = Vec::new();
    for q in (n + 1)..=bound {
        let tuples = strictly_increasing_tuples(q, n + 1);
        let mut seen: HashMap<Vec<Cell>, Cell> = HashMap::new();
        for c in x.cells(q)? {
            let key: Vec<Cell> = tuples.iter().map(|t| x.apply_monotone(&c, t)).collect();
            match seen.get(&key) {
                Some(first) => pairs.push((first.clone(), c)),
                None => {
                    seen.insert(key, c);
                }
            }
        }
    }
    quotient_by_pairs(x, &pairs, bound)
}
