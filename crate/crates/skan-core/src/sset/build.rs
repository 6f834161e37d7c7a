//! Build a simplicial set from any type that can enumerate its simplices
//! levelwise and apply faces and degeneracies to them.
//!
//! `from_raw` detects degenerate simplices with the criterion
//! `z = s_i(d_i z)`, keeps the nondegenerate ones as generators (in
//! enumeration order, which the `RawSimplicial` contract requires to be
//! deterministic), expresses every simplex in normal form, and validates the
//! simplicial identities on the result. The returned `Realization` keeps the
//! translation tables in both directions, so later constructions can evaluate
//! maps and actions pointwise on the raw elements.

use super::{Cell, GenId, Generator, SimplicialSet, Ss};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

pub trait RawSimplicial {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    /// Dimension through which simplices are materialized.
    fn max_dim(&self) -> usize;

    /// All simplices of a dimension, degenerate ones included, in a
    /// deterministic order with no repeats.
    fn elems(&self, dim: usize) -> Result<Vec<Self::Elem>>;

    /// `d_i` of a simplex of dimension `dim` (so 1 <= dim, i <= dim).
    fn face(&self, dim: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem>;

    /// `s_i` of a simplex of dimension `dim` (i <= dim).
    fn degeneracy(&self, dim: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem>;

    /// Display name; must be unique among nondegenerate simplices per
    /// dimension.
    fn name(&self, dim: usize, e: &Self::Elem) -> String;

    /// Truncation bound recorded on the output; `None` claims completeness
    /// (everything above `max_dim` is degenerate).
    fn truncation(&self) -> Option<usize> {
        Some(self.max_dim())
    }

    fn coskeletal_above(&self) -> Option<usize> {
        None
    }
}

/// A simplicial set together with the dictionary between its normal-form
/// cells and the raw simplices it was built from.
pub struct Realization<R: RawSimplicial> {
    pub ss: Ss,
    pub raw: R,
    tables: Vec<HashMap<R::Elem, Cell>>,
    gen_elems: Vec<Vec<R::Elem>>,
}

impl<R: RawSimplicial> Realization<R> {
    /// Normal form of a raw simplex.
    pub fn resolve(&self, dim: usize, e: &R::Elem) -> Result<Cell> {
        self.tables
            .get(dim)
            .ok_or(Error::InsufficientDimensionBound {
                needed: dim,
                available: self.tables.len().saturating_sub(1),
            })?
            .get(e)
            .cloned()
            .ok_or_else(|| Error::InvalidInput {
                reason: format!("unknown simplex {e:?} in dim {dim}"),
            })
    }

    /// Raw simplex behind a generator.
    pub fn elem_of_gen(&self, id: GenId) -> &R::Elem {
        &self.gen_elems[id.dim][id.idx]
    }

    /// Raw simplex behind any cell, replaying its degeneracy word.
    pub fn expand(&self, cell: &Cell) -> Result<R::Elem> {
        let mut e = self.gen_elems[cell.base.dim][cell.base.idx].clone();
        let mut dim = cell.base.dim;
        for &j in cell.word.iter().rev() {
            e = self.raw.degeneracy(dim, &e, j)?;
            dim += 1;
        }
        Ok(e)
    }

    pub fn max_dim(&self) -> usize {
        self.tables.len().saturating_sub(1)
    }
}

/// Materialize a raw description as a simplicial set in normal form.
pub fn from_raw<R: RawSimplicial>(raw: R) -> Result<Realization<R>> {
    let max = raw.max_dim();
    let mut tables: Vec<HashMap<R::Elem, Cell>> = Vec::with_capacity(max + 1);
    let mut gen_elems: Vec<Vec<R::Elem>> = Vec::with_capacity(max + 1);
    let mut gens: Vec<Vec<Generator>> = Vec::with_capacity(max + 1);
    for dim in 0..=max {
        let es = raw.elems(dim)?;
        let mut table: HashMap<R::Elem, Cell> = HashMap::with_capacity(es.len());
        let mut level_elems: Vec<R::Elem> = Vec::new();
        let mut level_gens: Vec<Generator> = Vec::new();
        for e in es {
            if table.contains_key(&e) {
                return Err(Error::InvalidInput {
                    reason: format!("raw enumeration repeats simplex {e:?} in dim {dim}"),
                });
            }
            let mut normal: Option<Cell> = None;
            for i in 0..dim {
                let fe = raw.face(dim, &e, i)?;
                if raw.degeneracy(dim - 1, &fe, i)? == e {
                    let inner = tables[dim - 1].get(&fe).ok_or_else(|| Error::InvalidInput {
                        reason: format!("face of {e:?} missing from dim {} enumeration", dim - 1),
                    })?;
                    normal = Some(inner.degenerate(i));
                    break;
                }
            }
            let cell = match normal {
                Some(c) => c,
                None => {
                    let id = GenId { dim, idx: level_elems.len() };
                    let faces = if dim == 0 {
                        Vec::new()
                    } else {
                        let mut fs = Vec::with_capacity(dim + 1);
                        for i in 0..=dim {
                            let fe = raw.face(dim, &e, i)?;
                            let fc =
                                tables[dim - 1].get(&fe).ok_or_else(|| Error::InvalidInput {
                                    reason: format!(
                                        "face of {e:?} missing from dim {} enumeration",
                                        dim - 1
                                    ),
                                })?;
                            fs.push(fc.clone());
                        }
                        fs
                    };
                    level_gens.push(Generator { name: raw.name(dim, &e), faces });
                    level_elems.push(e.clone());
                    Cell::of_gen(id)
                }
            };
            table.insert(e, cell);
        }
        tables.push(table);
        gen_elems.push(level_elems);
        gens.push(level_gens);
    }
    let ss = SimplicialSet::build(gens, raw.truncation(), raw.coskeletal_above())?;
    Ok(Realization { ss, raw, tables, gen_elems })
}
