//! Coskeleta, coskeletal extension, reduction, and fiberwise subcomplexes.
//!
//! A q-simplex of the n-coskeleton is a family: a simplicial map from the
//! n-skeleton of the standard q-simplex. Families are stored as assignment
//! vectors over the skeleton's generators and acted on by precomposition.
//! The same representation extends a truncated-but-coskeletal set above its
//! stored bound without touching the stored dimensions, which is what lets
//! map enumeration into such a set use only finite data.

use super::build::{from_raw, RawSimplicial};
use super::homs::{enumerate_maps, HomOptions, SimplicialMap};
use super::limits::quotient_by_pairs;
use super::standard::{simplex_cell, simplex_vertices, skeleton, simplex, subcomplex};
use super::{Cell, GenId, Ss};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap, HashSet};

/// Values of a family on the generators of `sk_c(Delta[q])`.
type Assign = Vec<Vec<Cell>>;

fn family_eval(assign: &Assign, cell_in_sk: &Cell) -> Cell {
    assign[cell_in_sk.base.dim][cell_in_sk.base.idx].apply_word(&cell_in_sk.word)
}

/// Family of a genuine cell: value on the subset S is the S-indexed face.
fn family_of(x: &Ss, cell: &Cell, sk: &Ss) -> Assign {
    (0..=sk.top_dim())
        .map(|d| {
            sk.gen_ids(d)
                .map(|id| {
                    let tuple = simplex_vertices(sk, &Cell::of_gen(id));
                    x.apply_monotone(cell, &tuple)
                })
                .collect()
        })
        .collect()
}

/// Precompose a family at dimension q with a monotone `alpha: [m] -> [q]`.
fn precompose(assign: &Assign, alpha: &[usize], sk_m: &Ss, sk_q: &Ss) -> Assign {
    (0..=sk_m.top_dim())
        .map(|d| {
            sk_m.gen_ids(d)
                .map(|id| {
                    let tuple = simplex_vertices(sk_m, &Cell::of_gen(id));
                    let mapped: Vec<usize> = tuple.iter().map(|&v| alpha[v]).collect();
                    family_eval(assign, &simplex_cell(sk_q, &mapped))
                })
                .collect()
        })
        .collect()
}

fn delta_map(q: usize, i: usize) -> Vec<usize> {
    (0..=q).filter(|&v| v != i).collect()
}

fn sigma_map(q: usize, i: usize) -> Vec<usize> {
    (0..=q + 1).map(|v| if v <= i { v } else { v - 1 }).collect()
}

/// `sk_min(n,q)(Delta[q])` for q = 0..=bound.
fn skeleton_simplices(n: usize, bound: usize) -> Vec<Ss> {
    (0..=bound)
        .map(|q| {
            let d = simplex(q);
            if q <= n {
                d
            } else {
                skeleton(&d, n).expect("skeleton of a simplex").0
            }
        })
        .collect()
}

fn family_name(x: &Ss, n: usize, assign: &Assign) -> String {
    // A family is determined by its values on the top-size subsets.
    let level = assign.len() - 1;
    let _ = n;
    let parts: Vec<String> = assign[level].iter().map(|c| x.cell_name(c)).collect();
    format!("fam({})", parts.join("; "))
}

// ---------------------------------------------------------------------------
// Coskeleton

struct RawCosk {
    x: Ss,
    n: usize,
    bound: usize,
    sks: Vec<Ss>,
}

impl RawSimplicial for RawCosk {
    type Elem = Assign;

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<Assign>> {
        let maps = enumerate_maps(&self.sks[dim], &self.x, &HomOptions::default())?;
        Ok(maps.into_iter().map(|m| m.assign).collect())
    }

    fn face(&self, dim: usize, e: &Assign, i: usize) -> Result<Assign> {
        Ok(precompose(e, &delta_map(dim, i), &self.sks[dim - 1], &self.sks[dim]))
    }

    fn degeneracy(&self, dim: usize, e: &Assign, i: usize) -> Result<Assign> {
        Ok(precompose(e, &sigma_map(dim, i), &self.sks[dim + 1], &self.sks[dim]))
    }

    fn name(&self, dim: usize, e: &Assign) -> String {
        if dim <= self.n {
            // The family of a full simplex is the simplex: name it as such.
            self.x.cell_name(&e[dim][0])
        } else {
            family_name(&self.x, self.n, e)
        }
    }

    fn coskeletal_above(&self) -> Option<usize> {
        Some(self.n)
    }
}

/// n-coskeleton, materialized through `bound`.
pub fn coskeleton(x: &Ss, n: usize, bound: usize) -> Result<Ss> {
    x.ensure_available(n)?;
    let sks = skeleton_simplices(n, bound + 1);
    let real = from_raw(RawCosk { x: x.clone(), n, bound, sks })?;
    Ok(real.ss)
}

/// Unit map `x -> cosk_n(x)`; the coskeleton is materialized through
/// max(bound, top dimension of x).
pub fn coskeleton_unit(x: &Ss, n: usize, bound: usize) -> Result<SimplicialMap> {
    let bound = bound.max(x.top_dim());
    x.ensure_available(x.top_dim())?;
    let sks = skeleton_simplices(n, bound + 1);
    let real = from_raw(RawCosk { x: x.clone(), n, bound, sks: sks.clone() })?;
    let assign: Vec<Vec<Cell>> = (0..=x.top_dim())
        .map(|d| {
            x.gen_ids(d)
                .map(|id| {
                    let fam = family_of(x, &Cell::of_gen(id), &sks[d]);
                    real.resolve(d, &fam)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(x.clone(), real.ss.clone(), assign)
}

/// Does the canonical restriction `X_q -> families` biject for all
/// `c < q <= through`? Verifies a coskeletality claim on actual data.
pub fn is_coskeletal_above(x: &Ss, c: usize, through: usize) -> Result<bool> {
    let sks = skeleton_simplices(c, through);
    for q in c + 1..=through {
        x.ensure_available(q)?;
        let mut seen: HashSet<Assign> = HashSet::new();
        for z in x.cells(q)? {
            if !seen.insert(family_of(x, &z, &sks[q])) {
                return Ok(false);
            }
        }
        let all = enumerate_maps(&sks[q], x, &HomOptions::default())?;
        if all.len() != seen.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Coskeletal extension above a truncation

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum ExtElem {
    Low(Cell),
    High(Assign),
}

struct RawExtend {
    x: Ss,
    c: usize,
    stored: usize,
    to: usize,
    sks: Vec<Ss>,
    /// family -> cell, for dimensions c+1 ..= stored.
    down: Vec<HashMap<Assign, Cell>>,
}

impl RawExtend {
    fn translate_down(&self, dim: usize, f: &Assign) -> Result<ExtElem> {
        if dim <= self.c {
            // The family of a full simplex is the simplex itself.
            return Ok(ExtElem::Low(f[dim][0].clone()));
        }
        self.down[dim]
            .get(f)
            .cloned()
            .map(ExtElem::Low)
            .ok_or_else(|| Error::CrossCheckMismatch {
                construction: "coskeletal extension".into(),
                detail: format!("a dim-{dim} family matches no stored simplex"),
            })
    }
}

impl RawSimplicial for RawExtend {
    type Elem = ExtElem;

    fn max_dim(&self) -> usize {
        self.to
    }

    fn elems(&self, dim: usize) -> Result<Vec<ExtElem>> {
        if dim <= self.stored {
            Ok(self.x.cells(dim)?.into_iter().map(ExtElem::Low).collect())
        } else {
            let maps = enumerate_maps(&self.sks[dim], &self.x, &HomOptions::default())?;
            Ok(maps.into_iter().map(|m| ExtElem::High(m.assign)).collect())
        }
    }

    fn face(&self, dim: usize, e: &ExtElem, i: usize) -> Result<ExtElem> {
        match e {
            ExtElem::Low(z) => Ok(ExtElem::Low(self.x.face(z, i))),
            ExtElem::High(f) => {
                let g = precompose(f, &delta_map(dim, i), &self.sks[dim - 1], &self.sks[dim]);
                if dim - 1 > self.stored {
                    Ok(ExtElem::High(g))
                } else {
                    self.translate_down(dim - 1, &g)
                }
            }
        }
    }

    fn degeneracy(&self, dim: usize, e: &ExtElem, i: usize) -> Result<ExtElem> {
        match e {
            ExtElem::Low(z) => {
                if dim < self.stored {
                    Ok(ExtElem::Low(z.degenerate(i)))
                } else {
                    // The degenerate cell exists structurally above the
                    // truncation; only its family is representable.
                    Ok(ExtElem::High(family_of(&self.x, &z.degenerate(i), &self.sks[dim + 1])))
                }
            }
            ExtElem::High(f) => Ok(ExtElem::High(precompose(
                f,
                &sigma_map(dim, i),
                &self.sks[dim + 1],
                &self.sks[dim],
            ))),
        }
    }

    fn name(&self, _dim: usize, e: &ExtElem) -> String {
        match e {
            ExtElem::Low(z) => self.x.cell_name(z),
            ExtElem::High(f) => family_name(&self.x, self.c, f),
        }
    }

    fn coskeletal_above(&self) -> Option<usize> {
        Some(self.c)
    }
}

/// Extend a set that is coskeletal above `c` from its stored bound through
/// `to`, reproducing the stored generators verbatim in low dimensions. The
/// coskeletality claim is verified on the stored data, not assumed.
pub fn extend_coskeletal(x: &Ss, c: usize, to: usize) -> Result<Ss> {
    let stored = match x.truncated_at() {
        None => return Ok(x.clone()),
        Some(t) => t,
    };
    if to <= stored {
        return Ok(x.clone());
    }
    let sks = skeleton_simplices(c, to + 1);
    // Build and verify the family -> simplex table on stored dimensions.
    let mut down: Vec<HashMap<Assign, Cell>> = vec![HashMap::new(); stored + 1];
    for (q, table) in down.iter_mut().enumerate().take(stored + 1).skip(c + 1) {
        for z in x.cells(q)? {
            if table.insert(family_of(x, &z, &sks[q]), z).is_some() {
                return Err(Error::CrossCheckMismatch {
                    construction: "coskeletal extension".into(),
                    detail: format!("two stored dim-{q} simplices share a family"),
                });
            }
        }
        let all = enumerate_maps(&sks[q], x, &HomOptions::default())?;
        if all.len() != table.len() {
            return Err(Error::CrossCheckMismatch {
                construction: "coskeletal extension".into(),
                detail: format!(
                    "dim {q}: {} stored simplices but {} families",
                    table.len(),
                    all.len()
                ),
            });
        }
    }
    let real = from_raw(RawExtend { x: x.clone(), c, stored, to, sks, down })?;
    Ok(real.ss)
}

/// Give `target` enough cell data to enumerate maps out of `source`,
/// extending through its coskeletal structure when possible.
pub fn extend_for_maps_from(target: &Ss, source: &Ss) -> Result<Ss> {
    let need = source.top_dim();
    match target.truncated_at() {
        None => Ok(target.clone()),
        Some(t) if t >= need => Ok(target.clone()),
        Some(t) => match target.coskeletal_above() {
            Some(c) if c <= t => extend_coskeletal(target, c, need),
            _ => Err(Error::InsufficientDimensionBound { needed: need, available: t }),
        },
    }
}

// ---------------------------------------------------------------------------
// Reduction and fiberwise subcomplexes

/// Collapse the n-skeleton to a point.
pub fn reduce_n(x: &Ss, n: usize, bound: usize) -> Result<super::limits::Quotient> {
    if x.gen_count(0) == 0 {
        return Err(Error::EmptyInput { reason: "reducing an empty simplicial set".into() });
    }
    let mut pairs = Vec::new();
    for d in 0..=n.min(bound) {
        let cells = x.cells(d)?;
        for c in cells.iter().skip(1) {
            pairs.push((cells[0].clone(), c.clone()));
        }
    }
    quotient_by_pairs(x, &pairs, bound)
}

/// Does every dimension q <= n have exactly one simplex?
pub fn is_n_reduced(x: &Ss, n: usize) -> Result<bool> {
    for q in 0..=n {
        if x.cell_count(q)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subcomplex of simplices whose entire (n-1)-skeleton sits at the given
/// vertex: the n-th Eilenberg subcomplex.
pub fn eilenberg_subcomplex(x: &Ss, n: usize, vertex: &str) -> Result<(Ss, SimplicialMap)> {
    let v = x
        .gen_by_name(0, vertex)
        .ok_or_else(|| Error::VertexNotFound { name: vertex.to_string() })?;
    let mut keep: BTreeSet<GenId> = BTreeSet::new();
    for d in 0..=x.top_dim() {
        'gens: for id in x.gen_ids(d) {
            let g = Cell::of_gen(id);
            let k_top = n.saturating_sub(1).min(d);
            for k in 0..=k_top {
                for tuple in super::standard::strictly_increasing_tuples(d, k + 1) {
                    let f = x.apply_monotone(&g, &tuple);
                    if f.base != v {
                        continue 'gens;
                    }
                }
            }
            keep.insert(id);
        }
    }
    subcomplex(x, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{boundary_simplex, circle_min, simplex};

    #[test]
    fn coskeleton_zero_of_two_points_doubles() {
        let two = crate::sset::standard::coproduct(&[
            ("a".into(), simplex(0)),
            ("b".into(), simplex(0)),
        ])
        .unwrap()
        .0;
        let c = coskeleton(&two, 0, 4).unwrap();
        for q in 0..=4 {
            assert_eq!(c.cell_count(q).unwrap(), 2usize.pow(q as u32 + 1));
        }
    }

    #[test]
    fn coskeleton_adjunction_on_counts() {
        // hom(K, cosk_n X) should match hom(sk_n K, X).
        let k = simplex(2);
        let x = circle_min();
        let n = 1;
        let c = coskeleton(&x, n, 2).unwrap();
        let lhs = enumerate_maps(&k, &c, &HomOptions::default()).unwrap().len();
        let (sk, _) = skeleton(&k, n).unwrap();
        let rhs = enumerate_maps(&sk, &x, &HomOptions::default()).unwrap().len();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coskeletal_extension_preserves_low_generators() {
        let x = circle_min();
        let c = coskeleton(&x, 1, 2).unwrap();
        assert_eq!(c.truncated_at(), Some(2));
        let ext = extend_coskeletal(&c, 1, 4).unwrap();
        for d in 0..=2 {
            assert_eq!(ext.gen_count(d), c.gen_count(d));
            for idx in 0..c.gen_count(d) {
                let id = GenId { dim: d, idx };
                assert_eq!(ext.gen_name(id), c.gen_name(id));
                assert_eq!(ext.generator(id).faces, c.generator(id).faces);
            }
        }
        assert!(is_coskeletal_above(&ext, 1, 3).unwrap());
    }

    #[test]
    fn boundary_is_not_coskeletal_above_one() {
        let b = boundary_simplex(2);
        // The missing 2-cell means one family has no filler.
        assert!(!is_coskeletal_above(&b, 1, 2).unwrap());
        let d2 = simplex(2);
        assert!(is_coskeletal_above(&d2, 2, 3).unwrap());
    }

    #[test]
    fn reduce_collapses_skeleton() {
        let d2 = simplex(2);
        let q = reduce_n(&d2, 1, 3).unwrap();
        assert!(is_n_reduced(&q.ss, 1).unwrap());
    }

    #[test]
    fn eilenberg_subcomplex_at_a_vertex() {
        let d1 = simplex(1);
        let (e, _) = eilenberg_subcomplex(&d1, 1, "0").unwrap();
        assert_eq!(e.gen_count(0), 1);
        assert_eq!(e.gen_count(1), 0);
        let c = circle_min();
        let (ec, _) = eilenberg_subcomplex(&c, 1, "pt").unwrap();
        assert_eq!((ec.gen_count(0), ec.gen_count(1)), (1, 1));
        assert!(matches!(
            eilenberg_subcomplex(&c, 1, "nope"),
            Err(Error::VertexNotFound { .. })
        ));
    }
}
