//! Binary products, fiber products, and quotients by a congruence.
//!
//! Products are computed levelwise on normal forms: an n-simplex of `X x Y`
//! is a pair of n-simplices, and the nondegenerate pairs are found by the
//! generic degeneracy detector. Quotients close a seeded relation under all
//! faces and degeneracies (through the materialization bound) with a
//! union-find per dimension, then rebuild normal forms on the classes.

use super::build::{from_raw, RawSimplicial, Realization};
use super::homs::SimplicialMap;
use super::{Cell, Ss};
use crate::error::{Error, Result};
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Products

pub struct RawProduct {
    x: Ss,
    y: Ss,
    bound: usize,
}

impl RawSimplicial for RawProduct {
    type Elem = (Cell, Cell);

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<(Cell, Cell)>> {
        let xs = self.x.cells(dim)?;
        let ys = self.y.cells(dim)?;
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for a in &xs {
            for b in &ys {
                out.push((a.clone(), b.clone()));
            }
        }
        Ok(out)
    }

    fn face(&self, _dim: usize, e: &(Cell, Cell), i: usize) -> Result<(Cell, Cell)> {
        Ok((self.x.face(&e.0, i), self.y.face(&e.1, i)))
    }

    fn degeneracy(&self, _dim: usize, e: &(Cell, Cell), i: usize) -> Result<(Cell, Cell)> {
        Ok((e.0.degenerate(i), e.1.degenerate(i)))
    }

    fn name(&self, _dim: usize, e: &(Cell, Cell)) -> String {
        format!("({},{})", self.x.cell_name(&e.0), self.y.cell_name(&e.1))
    }

    fn truncation(&self) -> Option<usize> {
        match (self.x.truncated_at(), self.y.truncated_at()) {
            (None, None) if self.bound >= self.x.top_dim() + self.y.top_dim() => None,
            _ => Some(self.bound),
        }
    }
}

/// A product together with its projections and the pairing operation.
pub struct Product {
    pub real: Realization<RawProduct>,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
}

impl Product {
    pub fn ss(&self) -> &Ss {
        &self.real.ss
    }

    /// The cell of the product corresponding to a pair of equal-dimensional
    /// cells of the factors.
    pub fn pair(&self, a: &Cell, b: &Cell) -> Result<Cell> {
        debug_assert_eq!(a.dim(), b.dim());
        self.real.resolve(a.dim(), &(a.clone(), b.clone()))
    }

    /// Components of a product cell.
    pub fn split(&self, c: &Cell) -> Result<(Cell, Cell)> {
        self.real.expand(c)
    }

    /// Universal property: `(f, g): Z -> X x Y`.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        let z = &f.source;
        let assign: Vec<Vec<Cell>> = (0..=z.top_dim())
            .map(|d| {
                z.gen_ids(d)
                    .map(|id| {
                        let c = Cell::of_gen(id);
                        self.pair(&f.eval(&c), &g.eval(&c))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(z.clone(), self.ss().clone(), assign)
    }
}

/// Product of two simplicial sets, materialized through `bound`.
pub fn product(x: &Ss, y: &Ss, bound: usize) -> Result<Product> {
    let real = from_raw(RawProduct { x: x.clone(), y: y.clone(), bound })?;
    let pr = |which: usize| -> Result<SimplicialMap> {
        let assign: Vec<Vec<Cell>> = (0..=real.ss.top_dim())
            .map(|d| {
                real.ss
                    .gen_ids(d)
                    .map(|id| {
                        let (a, b) = real.elem_of_gen(id).clone();
                        if which == 0 {
                            a
                        } else {
                            b
                        }
                    })
                    .collect()
            })
            .collect();
        let target = if which == 0 { x.clone() } else { y.clone() };
        SimplicialMap::new(real.ss.clone(), target, assign)
    };
    let pr1 = pr(0)?;
    let pr2 = pr(1)?;
    Ok(Product { real, pr1, pr2 })
}

/// Map `f x g` between two products, computed on generators.
pub fn product_map(
    p: &Product,
    q: &Product,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<SimplicialMap> {
    let src = p.ss();
    let assign: Vec<Vec<Cell>> = (0..=src.top_dim())
        .map(|d| {
            src.gen_ids(d)
                .map(|id| {
                    let (a, b) = p.real.elem_of_gen(id);
                    q.pair(&f.eval(a), &g.eval(b))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(src.clone(), q.ss().clone(), assign)
}

// ---------------------------------------------------------------------------
// Fiber products

pub struct RawFiberProduct {
    f: SimplicialMap,
    g: SimplicialMap,
    bound: usize,
}

impl RawSimplicial for RawFiberProduct {
    type Elem = (Cell, Cell);

    fn max_dim(&self) -> usize {
        self.bound
    }

    fn elems(&self, dim: usize) -> Result<Vec<(Cell, Cell)>> {
        let xs = self.f.source.cells(dim)?;
        let ys = self.g.source.cells(dim)?;
        // Group the right-hand cells by their image to avoid the full square.
        let mut by_image: HashMap<Cell, Vec<&Cell>> = HashMap::new();
        for b in &ys {
            by_image.entry(self.g.eval(b)).or_default().push(b);
        }
        let mut out = Vec::new();
        for a in &xs {
            if let Some(bs) = by_image.get(&self.f.eval(a)) {
                for b in bs {
                    out.push((a.clone(), (*b).clone()));
                }
            }
        }
        Ok(out)
    }

    fn face(&self, _dim: usize, e: &(Cell, Cell), i: usize) -> Result<(Cell, Cell)> {
        Ok((self.f.source.face(&e.0, i), self.g.source.face(&e.1, i)))
    }

    fn degeneracy(&self, _dim: usize, e: &(Cell, Cell), i: usize) -> Result<(Cell, Cell)> {
        Ok((e.0.degenerate(i), e.1.degenerate(i)))
    }

    fn name(&self, _dim: usize, e: &(Cell, Cell)) -> String {
        format!("({},{})", self.f.source.cell_name(&e.0), self.g.source.cell_name(&e.1))
    }
}

/// Fiber product of `f: X -> B` and `g: Y -> B`, with its projections.
pub struct FiberProduct {
    pub real: Realization<RawFiberProduct>,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
}

impl FiberProduct {
    pub fn ss(&self) -> &Ss {
        &self.real.ss
    }

    pub fn pair(&self, a: &Cell, b: &Cell) -> Result<Cell> {
        self.real.resolve(a.dim(), &(a.clone(), b.clone()))
    }

    pub fn split(&self, c: &Cell) -> Result<(Cell, Cell)> {
        self.real.expand(c)
    }

    /// Universal property: maps `u: Z -> X`, `v: Z -> Y` with `f u = g v`.
    pub fn pairing(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        let z = &u.source;
        let assign: Vec<Vec<Cell>> = (0..=z.top_dim())
            .map(|d| {
                z.gen_ids(d)
                    .map(|id| {
                        let c = Cell::of_gen(id);
                        self.pair(&u.eval(&c), &v.eval(&c))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(z.clone(), self.ss().clone(), assign)
    }
}

pub fn fiber_product(f: &SimplicialMap, g: &SimplicialMap, bound: usize) -> Result<FiberProduct> {
    if *f.target != *g.target {
        return Err(Error::InvalidInput { reason: "fiber product legs have different targets".into() });
    }
    let real = from_raw(RawFiberProduct { f: f.clone(), g: g.clone(), bound })?;
    let mk = |which: usize| -> Result<SimplicialMap> {
        let assign: Vec<Vec<Cell>> = (0..=real.ss.top_dim())
            .map(|d| {
                real.ss
                    .gen_ids(d)
                    .map(|id| {
                        let (a, b) = real.elem_of_gen(id).clone();
                        if which == 0 {
                            a
                        } else {
                            b
                        }
                    })
                    .collect()
            })
            .collect();
        let target = if which == 0 { f.source.clone() } else { g.source.clone() };
        SimplicialMap::new(real.ss.clone(), target, assign)
    };
    let pr1 = mk(0)?;
    let pr2 = mk(1)?;
    Ok(FiberProduct { real, pr1, pr2 })
}

// ---------------------------------------------------------------------------
// Quotients

/// Union-find over per-dimension cell indices.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller index as representative for determinism.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The result of a quotient: the set, the projection, and the class table.
pub struct Quotient {
    pub ss: Ss,
    pub proj: SimplicialMap,
    real: Realization<RawQuotient>,
}

impl Quotient {
    /// Image of a source cell in the quotient.
    pub fn class_of(&self, c: &Cell) -> Result<Cell> {
        let dim = c.dim();
        let idx = self.real.raw.index[dim]
            .get(c)
            .ok_or_else(|| Error::InvalidInput { reason: format!("unknown cell in dim {dim}") })?;
        let rep = self.real.raw.rep_of(dim, *idx);
        self.real.resolve(dim, &rep)
    }

    /// A source cell representing a quotient cell (the canonical member).
    pub fn representative(&self, c: &Cell) -> Result<Cell> {
        let rep = self.real.expand(c)?;
        Ok(self.real.raw.cells[rep.0][rep.1].clone())
    }
}

pub struct RawQuotient {
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    classes: Vec<Vec<usize>>, // resolved representative index per cell index
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
    source: Ss,
    complete: bool,
}

impl RawQuotient {
    fn rep_of(&self, dim: usize, idx: usize) -> (usize, usize) {
        (dim, self.classes[dim][idx])
    }
}

impl RawSimplicial for RawQuotient {
    /// (dim, representative cell index).
    type Elem = (usize, usize);

    fn max_dim(&self) -> usize {
        self.cells.len() - 1
    }

    fn elems(&self, dim: usize) -> Result<Vec<(usize, usize)>> {
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..self.cells[dim].len() {
            if self.classes[dim][i] == i {
                reps.push(i);
            }
        }
        Ok(reps.into_iter().map(|i| (dim, i)).collect())
    }

    fn face(&self, dim: usize, e: &(usize, usize), i: usize) -> Result<(usize, usize)> {
        let f = self.faces[dim][e.1][i];
        Ok((dim - 1, self.classes[dim - 1][f]))
    }

    fn degeneracy(&self, dim: usize, e: &(usize, usize), i: usize) -> Result<(usize, usize)> {
        let s = self.degens[dim][e.1][i];
        Ok((dim + 1, self.classes[dim + 1][s]))
    }

    fn name(&self, dim: usize, e: &(usize, usize)) -> String {
        format!("[{}]", self.source.cell_name(&self.cells[dim][e.1]))
    }

    fn truncation(&self) -> Option<usize> {
        if self.complete {
            None
        } else {
            Some(self.max_dim())
        }
    }
}

/// Quotient of `x` by the congruence generated by the given pairs of cells,
/// materialized through `bound`. Pairs must relate cells of equal dimension.
pub fn quotient_by_pairs(x: &Ss, pairs: &[(Cell, Cell)], bound: usize) -> Result<Quotient> {
    for (a, b) in pairs {
        if a.dim() != b.dim() {
            return Err(Error::RelationNotSimplicial {
                reason: format!("related cells have dims {} and {}", a.dim(), b.dim()),
            });
        }
        if a.dim() > bound {
            return Err(Error::RelationNotSimplicial {
                reason: format!("related cells above the bound {bound}"),
            });
        }
    }
    x.ensure_available(bound)?;
    if bound < x.top_dim() {
        return Err(Error::InsufficientDimensionBound { needed: x.top_dim(), available: bound });
    }
    let cells: Vec<Vec<Cell>> = (0..=bound).map(|d| x.cells(d)).collect::<Result<_>>()?;
    let index: Vec<HashMap<Cell, usize>> = cells
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    // Precompute face/degeneracy index tables once.
    let faces: Vec<Vec<Vec<usize>>> = (0..=bound)
        .map(|d| {
            cells[d]
                .iter()
                .map(|c| {
                    if d == 0 {
                        Vec::new()
                    } else {
                        (0..=d).map(|i| index[d - 1][&x.face(c, i)]).collect()
                    }
                })
                .collect()
        })
        .collect();
    let degens: Vec<Vec<Vec<usize>>> = (0..=bound)
        .map(|d| {
            cells[d]
                .iter()
                .map(|c| {
                    if d == bound {
                        Vec::new()
                    } else {
                        (0..=d).map(|i| index[d + 1][&c.degenerate(i)]).collect()
                    }
                })
                .collect()
        })
        .collect();

    let mut uf: Vec<UnionFind> = cells.iter().map(|level| UnionFind::new(level.len())).collect();
    // Work queue of identified pairs to propagate.
    let mut queue: Vec<(usize, usize, usize)> = Vec::new();
    for (a, b) in pairs {
        let d = a.dim();
        let (ia, ib) = (index[d][a], index[d][b]);
        if uf[d].union(ia, ib) {
            queue.push((d, ia, ib));
        }
    }
    while let Some((d, a, b)) = queue.pop() {
        if d > 0 {
            for i in 0..=d {
                let (fa, fb) = (faces[d][a][i], faces[d][b][i]);
                if uf[d - 1].union(fa, fb) {
                    queue.push((d - 1, fa, fb));
                }
            }
        }
        if d < bound {
            for i in 0..=d {
                let (sa, sb) = (degens[d][a][i], degens[d][b][i]);
                if uf[d + 1].union(sa, sb) {
                    queue.push((d + 1, sa, sb));
                }
            }
        }
    }
    let classes: Vec<Vec<usize>> = uf
        .iter_mut()
        .map(|u| (0..u.parent.len()).map(|i| u.find(i)).collect())
        .collect();
    // A quotient class is degenerate whenever all its members are, so new
    // generators appear only in dimensions where the source already has some;
    // a complete source quotiented through its top dimension stays complete.
    let complete = x.truncated_at().is_none() && bound >= x.top_dim();
    let raw = RawQuotient { cells, index, classes, faces, degens, source: x.clone(), complete };
    let real = from_raw(raw)?;
    // Projection: each generator of x maps to the class of its cell.
    let assign: Vec<Vec<Cell>> = (0..=x.top_dim().min(bound))
        .map(|d| {
            x.gen_ids(d)
                .map(|id| {
                    let c = Cell::of_gen(id);
                    let idx = real.raw.index[d][&c];
                    real.resolve(d, &(d, real.raw.classes[d][idx]))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let proj = SimplicialMap::new(x.clone(), real.ss.clone(), assign)?;
    Ok(Quotient { ss: real.ss.clone(), proj, real })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{circle_min, simplex};
    use crate::sset::{Cell, GenId};

    #[test]
    fn square_has_expected_counts() {
        let d1 = simplex(1);
        let p = product(&d1, &d1, 4).unwrap();
        let ss = p.ss();
        assert_eq!(ss.gen_count(0), 4);
        assert_eq!(ss.gen_count(1), 5);
        assert_eq!(ss.gen_count(2), 2);
        assert_eq!(ss.gen_count(3), 0);
        // Levelwise cardinality is the product of the factor cardinalities.
        for q in 0..4 {
            assert_eq!(
                ss.cell_count(q).unwrap(),
                d1.cell_count(q).unwrap() * d1.cell_count(q).unwrap()
            );
        }
    }

    #[test]
    fn projections_and_pairing_commute() {
        let d1 = simplex(1);
        let c = circle_min();
        let p = product(&d1, &c, 3).unwrap();
        // Pair the identity of the square's factors back together.
        let diag = product(&c, &c, 3).unwrap();
        let idc = SimplicialMap::identity(&c);
        let d = diag.pairing(&idc, &idc).unwrap();
        let back1 = d.then(&diag.pr1).unwrap();
        assert_eq!(back1.assign, idc.assign);
        let _ = p;
    }

    #[test]
    fn fiber_product_over_point_is_product() {
        let c = circle_min();
        let pt = simplex(0);
        let v = GenId { dim: 0, idx: 0 };
        let to_pt = SimplicialMap::constant(&c, &pt, v);
        let fp = fiber_product(&to_pt, &to_pt, 3).unwrap();
        let p = product(&c, &c, 3).unwrap();
        for q in 0..3 {
            assert_eq!(fp.ss().cell_count(q).unwrap(), p.ss().cell_count(q).unwrap());
        }
    }

    #[test]
    fn collapsing_interval_endpoints_gives_circle() {
        let d1 = simplex(1);
        let v0 = Cell::of_gen(GenId { dim: 0, idx: 0 });
        let v1 = Cell::of_gen(GenId { dim: 0, idx: 1 });
        let q = quotient_by_pairs(&d1, &[(v0, v1)], 3).unwrap();
        assert_eq!(q.ss.gen_count(0), 1);
        assert_eq!(q.ss.gen_count(1), 1);
        assert_eq!(q.ss.gen_count(2), 0);
        // The projection is simplicial and collapses both endpoints.
        let a = q.proj.eval(&Cell::of_gen(GenId { dim: 0, idx: 0 }));
        let b = q.proj.eval(&Cell::of_gen(GenId { dim: 0, idx: 1 }));
        assert_eq!(a, b);
    }
}
