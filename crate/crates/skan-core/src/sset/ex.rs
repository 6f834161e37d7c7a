//! Barycentric subdivision of simplices and the right adjoint `Ex`.
//!
//! `sd(Delta[n])` is the nerve of the poset of nonempty subsets of `[n]`;
//! a q-simplex of `Ex(X)` is a simplicial map `sd(Delta[q]) -> X`, acted on
//! by precomposition with subdivided coface and codegeneracy maps. The unit
//! `X -> Ex(X)` precomposes with the last-vertex map.

use super::build::{from_raw, RawSimplicial, Realization};
use super::homs::{enumerate_maps, HomOptions, SimplicialMap};
use super::{Cell, Generator, GenId, SimplicialSet, Ss};
use crate::error::Result;
use std::collections::HashMap;

fn subset_name(s: &[usize], width: usize) -> String {
    super::standard::label(s, width)
}

/// All nonempty subsets of `{0..=n}`, smaller-first then lexicographic.
fn poset(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=n + 1 {
        out.extend(super::standard::strictly_increasing_tuples(n, size));
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.contains(v))
}

/// Barycentric subdivision of `Delta[n]`: generators in dimension q are
/// strict chains of q+1 nested nonempty subsets of `[n]`.
pub fn sd_simplex(n: usize) -> Ss {
    let subsets = poset(n);
    // chains[q] = strict chains of length q+1, each a vector of indexes
    // into `subsets`; built by extending chains by one larger subset.
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    chains.push((0..subsets.len()).map(|i| vec![i]).collect());
    for q in 1..=n {
        let mut level = Vec::new();
        for c in &chains[q - 1] {
            let last = *c.last().unwrap();
            for (j, s) in subsets.iter().enumerate() {
                if j != last && subsets[last].len() < s.len() && is_subset(&subsets[last], s) {
                    let mut e = c.clone();
                    e.push(j);
                    level.push(e);
                }
            }
        }
        level.sort();
        chains.push(level);
    }
    let mut gens: Vec<Vec<Generator>> = Vec::with_capacity(n + 1);
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(n + 1);
    for (q, level) in chains.iter().enumerate() {
        let idx: HashMap<Vec<usize>, usize> =
            level.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut lg = Vec::with_capacity(level.len());
        for c in level {
            let name = c
                .iter()
                .map(|&j| subset_name(&subsets[j], n + 1))
                .collect::<Vec<_>>()
                .join("<");
            let faces = if q == 0 {
                Vec::new()
            } else {
                (0..=q)
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        Cell::of_gen(GenId { dim: q - 1, idx: index[q - 1][&f] })
                    })
                    .collect()
            };
            lg.push(Generator { name, faces });
        }
        gens.push(lg);
        index.push(idx);
    }
    SimplicialSet::build(gens, None, None).expect("subdivided simplex is valid")
}

/// Cell of `sd(Delta[n])` named by a weak chain of subset indexes into the
/// generator order of dimension 0 (i.e. the poset order).
fn weak_chain_to_cell(sd: &Ss, subsets: &[Vec<usize>], chain: &[usize]) -> Cell {
    if let Some(j) = chain.windows(2).position(|w| w[0] == w[1]) {
        let mut reduced = chain.to_vec();
        reduced.remove(j + 1);
        return weak_chain_to_cell(sd, subsets, &reduced).degenerate(j);
    }
    let width = subsets.last().map(|s| s.len()).unwrap_or(1);
    let name = chain
        .iter()
        .map(|&j| subset_name(&subsets[j], width))
        .collect::<Vec<_>>()
        .join("<");
    Cell::of_gen(sd.gen_by_name(chain.len() - 1, &name).expect("strict chain is a generator"))
}

/// Raw description of `Ex(X)` through a bound.
pub struct RawEx {
    x: Ss,
    bound: usize,
    sds: Vec<Ss>,
    posets: Vec<Vec<Vec<usize>>>,
}

type Assign = Vec<Vec<Cell>>;

impl RawEx {
    fn eval(assign: &Assign, c: &Cell) -> Cell {
        assign[c.base.dim][c.base.idx].apply_word(&c.word)
    }

    /// Precompose a map out of `sd(Delta[q])` with `sd` of a monotone map
    /// `alpha: [m] -> [q]`.
    fn precompose(&self, assign: &Assign, alpha: &[usize], m: usize, q: usize) -> Assign {
        let sd_m = &self.sds[m];
        let sd_q = &self.sds[q];
        let pos_m = &self.posets[m];
        let pos_q = &self.posets[q];
        let index_q: HashMap<&Vec<usize>, usize> =
            pos_q.iter().enumerate().map(|(i, s)| (s, i)).collect();
        (0..=sd_m.top_dim())
            .map(|d| {
                sd_m.gen_ids(d)
                    .map(|id| {
                        // Generator = strict chain of subsets of [m]; push each
                        // subset forward along alpha (dedup), producing a weak
                        // chain of subsets of [q].
                        let name_chain = chain_of_gen(sd_m, pos_m, id);
                        let mapped: Vec<usize> = name_chain
                            .iter()
                            .map(|&si| {
                                let mut img: Vec<usize> =
                                    pos_m[si].iter().map(|&v| alpha[v]).collect();
                                img.dedup();
                                index_q[&img]
                            })
                            .collect();
                        Self::eval(assign, &weak_chain_to_cell(sd_q, pos_q, &mapped))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Recover the subset chain behind a generator of `sd(Delta[n])` by parsing
/// its name against the poset order.
fn chain_of_gen(sd: &Ss, subsets: &[Vec<usize>], id: GenId) -> Vec<usize> {
    let name = sd.gen_name(id);
    let width = subsets.last().map(|s| s.len()).unwrap_or(1);
    let index: HashMap<String, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (subset_name(s, width), i))
        .collect();
    name.split('<').map(|part| index[part]).collect()
}

impl RawSimplicial for RawEx {
    type Elem = Assign;

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<Assign>> {
        let maps = enumerate_maps(&self.sds[dim], &self.x, &HomOptions::default())?;
        Ok(maps.into_iter().map(|m| m.assign).collect())
    }

    fn face(&self, dim: usize, e: &Assign, i: usize) -> Result<Assign> {
        let alpha: Vec<usize> = (0..=dim).filter(|&v| v != i).collect();
        Ok(self.precompose(e, &alpha, dim - 1, dim))
    }

    fn degeneracy(&self, dim: usize, e: &Assign, i: usize) -> Result<Assign> {
        let alpha: Vec<usize> = (0..=dim + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        Ok(self.precompose(e, &alpha, dim + 1, dim))
    }

    fn name(&self, dim: usize, e: &Assign) -> String {
        // Determined by the values on top-dimensional chains.
        let parts: Vec<String> = e[dim].iter().map(|c| self.x.cell_name(c)).collect();
        format!("ex({})", parts.join("; "))
    }
}

pub struct Ex {
    pub real: Realization<RawEx>,
}

impl Ex {
    pub fn ss(&self) -> &Ss {
        &self.real.ss
    }
}

/// `Ex(X)` through `bound`, with its realization for pointwise work.
pub fn ex(x: &Ss, bound: usize) -> Result<Ex> {
    let sds: Vec<Ss> = (0..=bound + 1).map(sd_simplex).collect();
    let posets: Vec<Vec<Vec<usize>>> = (0..=bound + 1).map(poset).collect();
    let real = from_raw(RawEx { x: x.clone(), bound, sds, posets })?;
    Ok(Ex { real })
}

/// Unit `X -> Ex(X)`: precompose each simplex with the last-vertex map.
pub fn ex_unit(x: &Ss, e: &Ex) -> Result<SimplicialMap> {
    let assign: Vec<Vec<Cell>> = (0..=x.top_dim())
        .map(|d| {
            x.gen_ids(d)
                .map(|id| {
                    let z = Cell::of_gen(id);
                    let sd = &e.real.raw.sds[d];
                    let pos = &e.real.raw.posets[d];
                    let fam: Assign = (0..=sd.top_dim())
                        .map(|k| {
                            sd.gen_ids(k)
                                .map(|cid| {
                                    let chain = chain_of_gen(sd, pos, cid);
                                    let maxes: Vec<usize> = chain
                                        .iter()
                                        .map(|&si| *pos[si].last().unwrap())
                                        .collect();
                                    x.apply_monotone(&z, &maxes)
                                })
                                .collect()
                        })
                        .collect();
                    e.real.resolve(d, &fam)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(x.clone(), e.ss().clone(), assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{circle_min, simplex};

    #[test]
    fn sd_of_interval_is_two_intervals() {
        let sd1 = sd_simplex(1);
        // Subsets {0},{1},{01}; chains of length 2: 0<01 and 1<01.
        assert_eq!(sd1.gen_count(0), 3);
        assert_eq!(sd1.gen_count(1), 2);
        assert_eq!(sd1.gen_count(2), 0);
    }

    #[test]
    fn sd_of_triangle_counts() {
        let sd2 = sd_simplex(2);
        assert_eq!(sd2.gen_count(0), 7);
        assert_eq!(sd2.gen_count(1), 12);
        assert_eq!(sd2.gen_count(2), 6);
    }

    #[test]
    fn ex_of_point_is_point() {
        let pt = simplex(0);
        let e = ex(&pt, 2).unwrap();
        for q in 0..=2 {
            assert_eq!(e.ss().cell_count(q).unwrap(), 1);
        }
    }

    #[test]
    fn ex_unit_is_simplicial_and_injective_on_circle() {
        let c = circle_min();
        let e = ex(&c, 2).unwrap();
        let u = ex_unit(&c, &e).unwrap();
        // Ex adds simplices: the circle's edge subdivides into more edges.
        assert!(e.ss().cell_count(1).unwrap() >= c.cell_count(1).unwrap());
        let edge = Cell::of_gen(GenId { dim: 1, idx: 0 });
        assert_eq!(u.eval(&edge).dim(), 1);
    }
}
