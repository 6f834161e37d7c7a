//! Function complexes `X^K`: a q-simplex is a map `Delta[q] x K -> X`.
//!
//! Simplices are stored as assignment vectors over the generators of the
//! materialized products `Delta[q] x K`, and the simplicial operators
//! precompose with `alpha x id`. Evaluation maps come from pairing with
//! distinguished cells of the factors.

use super::build::{from_raw, RawSimplicial, Realization};
use super::homs::{enumerate_maps, HomOptions, SimplicialMap};
use super::limits::{product, Product};
use super::standard::{simplex, simplex_cell, simplex_vertices};
use super::{Cell, GenId, Ss};
use crate::error::Result;

type Assign = Vec<Vec<Cell>>;

pub struct RawFnComplex {
    k: Ss,
    x: Ss,
    bound: usize,
    simplices: Vec<Ss>,
    prods: Vec<Product>,
}

impl RawFnComplex {
    fn eval(assign: &Assign, c: &Cell) -> Cell {
        assign[c.base.dim][c.base.idx].apply_word(&c.word)
    }

    /// Precompose a map `Delta[q] x K -> X` with `alpha x id` for a monotone
    /// `alpha: [m] -> [q]`.
    fn precompose(&self, assign: &Assign, alpha: &[usize], m: usize, q: usize) -> Result<Assign> {
        let pm = &self.prods[m];
        let pq = &self.prods[q];
        (0..=pm.ss().top_dim())
            .map(|d| {
                pm.ss()
                    .gen_ids(d)
                    .map(|id| {
                        let (a, b) = pm.real.elem_of_gen(id);
                        let verts = simplex_vertices(&self.simplices[m], a);
                        let mapped: Vec<usize> = verts.iter().map(|&v| alpha[v]).collect();
                        let a_q = simplex_cell(&self.simplices[q], &mapped);
                        Ok(Self::eval(assign, &pq.pair(&a_q, b)?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }
}

impl RawSimplicial for RawFnComplex {
    type Elem = Assign;

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<Assign>> {
        let maps = enumerate_maps(self.prods[dim].ss(), &self.x, &HomOptions::default())?;
        Ok(maps.into_iter().map(|m| m.assign).collect())
    }

    fn face(&self, dim: usize, e: &Assign, i: usize) -> Result<Assign> {
        let alpha: Vec<usize> = (0..=dim).filter(|&v| v != i).collect();
        self.precompose(e, &alpha, dim - 1, dim)
    }

    fn degeneracy(&self, dim: usize, e: &Assign, i: usize) -> Result<Assign> {
        let alpha: Vec<usize> = (0..=dim + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        self.precompose(e, &alpha, dim + 1, dim)
    }

    fn name(&self, _dim: usize, e: &Assign) -> String {
        let mut parts = Vec::new();
        for level in e {
            for c in level {
                parts.push(self.x.cell_name(c));
            }
        }
        format!("map({})", parts.join("; "))
    }
}

pub struct FunctionComplex {
    pub real: Realization<RawFnComplex>,
}

impl FunctionComplex {
    pub fn ss(&self) -> &Ss {
        &self.real.ss
    }

    pub fn exponent(&self) -> &Ss {
        &self.real.raw.k
    }

    pub fn base(&self) -> &Ss {
        &self.real.raw.x
    }

    /// Evaluation at a vertex of the exponent: `X^K -> X`.
    pub fn ev_vertex(&self, vertex: GenId) -> Result<SimplicialMap> {
        let fc = self.ss();
        let assign: Vec<Vec<Cell>> = (0..=fc.top_dim())
            .map(|q| {
                fc.gen_ids(q)
                    .map(|id| {
                        let f = self.real.elem_of_gen(id);
                        let top = Cell::of_gen(GenId { dim: q, idx: 0 });
                        let mut b = Cell::of_gen(vertex);
                        for j in 0..q {
                            b = b.degenerate(j);
                        }
                        let at = self.real.raw.prods[q].pair(&top, &b)?;
                        Ok(RawFnComplex::eval(f, &at))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(fc.clone(), self.base().clone(), assign)
    }

    /// Constant-path section `X -> X^K`: the transpose of the projection
    /// `Delta[q] x K -> Delta[q]` followed by the simplex.
    pub fn constants(&self) -> Result<SimplicialMap> {
        let x = self.base();
        let assign: Vec<Vec<Cell>> = (0..=x.top_dim())
            .map(|q| {
                x.gen_ids(q)
                    .map(|id| {
                        let z = Cell::of_gen(id);
                        let pq = &self.real.raw.prods[q];
                        let fam: Assign = (0..=pq.ss().top_dim())
                            .map(|d| {
                                pq.ss()
                                    .gen_ids(d)
                                    .map(|gid| {
                                        let (a, _) = pq.real.elem_of_gen(gid);
                                        let verts =
                                            simplex_vertices(&self.real.raw.simplices[q], a);
                                        x.apply_monotone(&z, &verts)
                                    })
                                    .collect()
                            })
                            .collect();
                        self.real.resolve(q, &fam)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(x.clone(), self.ss().clone(), assign)
    }
}

/// `X^K` through `bound`.
pub fn function_complex(k: &Ss, x: &Ss, bound: usize) -> Result<FunctionComplex> {
    let simplices: Vec<Ss> = (0..=bound + 1).map(simplex).collect();
    let mut prods = Vec::with_capacity(bound + 2);
    for s in &simplices {
        // Codegeneracies evaluate cells coming from one product higher, so
        // materialize each product one dimension past its own generators.
        prods.push(product(s, k, s.top_dim() + k.top_dim() + 1)?);
    }
    let real = from_raw(RawFnComplex { k: k.clone(), x: x.clone(), bound, simplices, prods })?;
    Ok(FunctionComplex { real })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::simplex;

    #[test]
    fn paths_in_the_interval() {
        // Vertices of Delta[1]^Delta[1] are maps Delta[1] x Delta[1] ->
        // Delta[1]: three monotone self-maps... on the square there are
        // exactly the three: two constants and one fold per corner choice.
        let d1 = simplex(1);
        let fc = function_complex(&d1, &d1, 1).unwrap();
        assert_eq!(fc.ss().gen_count(0), 3);
    }

    #[test]
    fn evaluation_and_constants_compose_to_identity() {
        let d1 = simplex(1);
        let fc = function_complex(&d1, &d1, 1).unwrap();
        let c = fc.constants().unwrap();
        let ev0 = fc.ev_vertex(GenId { dim: 0, idx: 0 }).unwrap();
        let round = c.then(&ev0).unwrap();
        let id = SimplicialMap::identity(&d1);
        assert_eq!(round.assign, id.assign);
    }

    #[test]
    fn function_complex_into_point_is_point() {
        let pt = simplex(0);
        let d1 = simplex(1);
        let fc = function_complex(&d1, &pt, 2).unwrap();
        for q in 0..=2 {
            assert_eq!(fc.ss().cell_count(q).unwrap(), 1);
        }
    }
}
