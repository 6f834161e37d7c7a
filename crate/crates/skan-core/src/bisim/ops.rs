//! Constructions on bisimplicial sets: total décalage, plain décalage with
//! its projection and contraction package, horizontal level complexes, the
//! diagonal, the total simplicial set computed by the equalizer-of-products
//! formula, the canonical comparison maps, and exhaustive enumeration of
//! bisimplicial maps.

use super::{from_raw_bi, BiCell, BiGenId, BiRealization, Bss, RawBiSimplicial};
use crate::error::{Error, Result};
use crate::sset::build::{from_raw, RawSimplicial, Realization};
use crate::sset::homs::SimplicialMap;
use crate::sset::limits::{product, Product};
use crate::sset::standard::{simplex, simplex_vertices};
use crate::sset::{Cell, Generator, SimplicialSet, Ss};
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Total décalage

/// Ordinal-sum splitting of a simplicial set: bidegree (p, q) holds the
/// (p+q+1)-simplices, with the first p+1 face/degeneracy operators acting
/// horizontally and the rest vertically.
pub struct RawTotalDec {
    x: Ss,
    diag: usize,
}

impl RawBiSimplicial for RawTotalDec {
    type Elem = Cell;
    fn p_max(&self) -> usize {
        self.diag
    }
    fn q_max(&self) -> usize {
        self.diag
    }
    fn diag_bound(&self) -> Option<usize> {
        Some(self.diag)
    }
    fn elems(&self, p: usize, q: usize) -> Result<Vec<Cell>> {
        self.x.cells(p + q + 1)
    }
    fn h_face(&self, _p: usize, _q: usize, e: &Cell, i: usize) -> Result<Cell> {
        Ok(self.x.face(e, i))
    }
    fn v_face(&self, p: usize, _q: usize, e: &Cell, j: usize) -> Result<Cell> {
        Ok(self.x.face(e, p + 1 + j))
    }
    fn h_degeneracy(&self, _p: usize, _q: usize, e: &Cell, i: usize) -> Result<Cell> {
        Ok(e.degenerate(i))
    }
    fn v_degeneracy(&self, p: usize, _q: usize, e: &Cell, j: usize) -> Result<Cell> {
        Ok(e.degenerate(p + 1 + j))
    }
    fn name(&self, _p: usize, _q: usize, e: &Cell) -> Result<String> {
        Ok(self.x.cell_name(e))
    }
}

/// Total décalage, materialized for bidegrees with p + q <= diag. Needs
/// simplex data through diag + 1.
pub fn total_dec(x: &Ss, diag: usize) -> Result<BiRealization<RawTotalDec>> {
    x.ensure_available(diag + 1)?;
    from_raw_bi(RawTotalDec { x: x.clone(), diag })
}

// ---------------------------------------------------------------------------
// Constant bisimplicial sets

/// A simplicial set viewed as horizontally constant: bidegree (p, q) holds
/// the q-simplices, horizontal operators are identities.
pub struct RawConstBi {
    x: Ss,
    p_max: usize,
    q_max: usize,
}

impl RawBiSimplicial for RawConstBi {
    type Elem = Cell;
    fn p_max(&self) -> usize {
        self.p_max
    }
    fn q_max(&self) -> usize {
        self.q_max
    }
    fn elems(&self, _p: usize, q: usize) -> Result<Vec<Cell>> {
        self.x.cells(q)
    }
    fn h_face(&self, _p: usize, _q: usize, e: &Cell, _i: usize) -> Result<Cell> {
        Ok(e.clone())
    }
    fn v_face(&self, _p: usize, _q: usize, e: &Cell, j: usize) -> Result<Cell> {
        Ok(self.x.face(e, j))
    }
    fn h_degeneracy(&self, _p: usize, _q: usize, e: &Cell, _i: usize) -> Result<Cell> {
        Ok(e.clone())
    }
    fn v_degeneracy(&self, _p: usize, _q: usize, e: &Cell, j: usize) -> Result<Cell> {
        Ok(e.degenerate(j))
    }
    fn name(&self, _p: usize, _q: usize, e: &Cell) -> Result<String> {
        Ok(self.x.cell_name(e))
    }
}

pub fn const_bi(x: &Ss, p_max: usize, q_max: usize) -> Result<BiRealization<RawConstBi>> {
    x.ensure_available(q_max)?;
    from_raw_bi(RawConstBi { x: x.clone(), p_max, q_max })
}

// ---------------------------------------------------------------------------
// Plain décalage

/// Index-shifted simplicial set: level n holds the (n+1)-simplices, keeping
/// the first n+1 faces; the forgotten last face becomes the projection.
pub struct RawDec0 {
    x: Ss,
    bound: usize,
}

impl RawSimplicial for RawDec0 {
    type Elem = Cell;
    fn max_dim(&self) -> usize {
        self.bound
    }
    fn elems(&self, dim: usize) -> Result<Vec<Cell>> {
        self.x.cells(dim + 1)
    }
    fn face(&self, _dim: usize, e: &Cell, i: usize) -> Result<Cell> {
        Ok(self.x.face(e, i))
    }
    fn degeneracy(&self, _dim: usize, e: &Cell, i: usize) -> Result<Cell> {
        Ok(e.degenerate(i))
    }
    fn name(&self, _dim: usize, e: &Cell) -> String {
        self.x.cell_name(e)
    }
    fn truncation(&self) -> Option<usize> {
        if self.x.truncated_at().is_none() && self.bound >= self.x.top_dim() {
            None
        } else {
            Some(self.bound)
        }
    }
}

/// The décalage package: the shifted space, its projection, and the strong
/// deformation retraction onto the discrete set of vertices.
pub struct Dec0 {
    pub real: Realization<RawDec0>,
    /// Last-face projection back to the original space.
    pub proj: SimplicialMap,
    /// The vertices of the original space as a discrete simplicial set.
    pub vertices: Ss,
    /// Degeneracy inclusion of the vertices.
    pub section: SimplicialMap,
    /// Last-vertex retraction; `section . retraction = id` on vertices.
    pub retraction: SimplicialMap,
    /// The cylinder the contraction homotopy is defined on.
    pub cylinder: Product,
    /// Contraction: identity at interval vertex 0, section . retraction at 1.
    pub homotopy: SimplicialMap,
}

impl Dec0 {
    pub fn space(&self) -> &Ss {
        &self.real.ss
    }
}

pub fn dec0(x: &Ss, bound: usize) -> Result<Dec0> {
    x.ensure_available(bound + 1)?;
    let real = from_raw(RawDec0 { x: x.clone(), bound })?;
    let space = real.ss.clone();

    let mut proj_assign = Vec::new();
    for dim in 0..=space.top_dim() {
        let mut level = Vec::new();
        for id in space.gen_ids(dim) {
            level.push(x.face(real.elem_of_gen(id), dim + 1));
        }
        proj_assign.push(level);
    }
    let proj = SimplicialMap::new(space.clone(), x.clone(), proj_assign)?;

    let vgens: Vec<Generator> = x
        .gen_ids(0)
        .map(|v| Generator { name: x.gen_name(v).to_string(), faces: Vec::new() })
        .collect();
    let vertices = SimplicialSet::build(vec![vgens], None, Some(0))?;

    let sec_level: Vec<Cell> = x
        .gen_ids(0)
        .map(|v| real.resolve(0, &Cell::of_gen(v).degenerate(0)))
        .collect::<Result<_>>()?;
    let section = SimplicialMap::new(vertices.clone(), space.clone(), vec![sec_level])?;

    let mut ret_assign = Vec::new();
    for dim in 0..=space.top_dim() {
        let mut level = Vec::new();
        for id in space.gen_ids(dim) {
            let z = real.elem_of_gen(id);
            let last = x.apply_monotone(z, &[dim + 1]);
            let vg = vertices
                .gen_by_name(0, x.gen_name(last.base))
                .expect("vertex names are shared");
            let mut c = Cell::of_gen(vg);
            for _ in 0..dim {
                c = c.degenerate(0);
            }
            level.push(c);
        }
        ret_assign.push(level);
    }
    let retraction = SimplicialMap::new(space.clone(), vertices.clone(), ret_assign)?;

    // Contraction homotopy: collapse the tail of each shifted simplex onto
    // its last vertex, steered by the interval coordinate.
    let interval = simplex(1);
    let cyl_bound = match space.truncated_at() {
        None => space.top_dim() + 1,
        Some(t) => t.min(space.top_dim() + 1),
    };
    let cylinder = product(&space, &interval, cyl_bound)?;
    let mut h_assign = Vec::new();
    for dim in 0..=cylinder.ss().top_dim() {
        let mut level = Vec::new();
        for id in cylinder.ss().gen_ids(dim) {
            let gcell = Cell::of_gen(id);
            let a = cylinder.pr1.eval(&gcell);
            let t = cylinder.pr2.eval(&gcell);
            let z = real.expand(&a)?;
            let verts = simplex_vertices(&interval, &t);
            let j = verts.iter().position(|&v| v == 1).unwrap_or(dim + 1);
            let rho: Vec<usize> =
                (0..=dim + 1).map(|k| if k < j { k } else { dim + 1 }).collect();
            level.push(real.resolve(dim, &x.apply_monotone(&z, &rho))?);
        }
        h_assign.push(level);
    }
    let homotopy = SimplicialMap::new(cylinder.ss().clone(), space, h_assign)?;

    Ok(Dec0 { real, proj, vertices, section, retraction, cylinder, homotopy })
}

// ---------------------------------------------------------------------------
// Level complexes and the diagonal

/// The horizontal simplicial set at a fixed vertical level.
pub struct RawLevelComplex {
    b: Bss,
    q: usize,
    max: usize,
}

impl RawSimplicial for RawLevelComplex {
    type Elem = BiCell;
    fn max_dim(&self) -> usize {
        self.max
    }
    fn elems(&self, dim: usize) -> Result<Vec<BiCell>> {
        self.b.cells(dim, self.q)
    }
    fn face(&self, _dim: usize, e: &BiCell, i: usize) -> Result<BiCell> {
        Ok(self.b.h_face(e, i))
    }
    fn degeneracy(&self, _dim: usize, e: &BiCell, i: usize) -> Result<BiCell> {
        Ok(e.degenerate_h(i))
    }
    fn name(&self, _dim: usize, e: &BiCell) -> String {
        self.b.cell_name(e)
    }
}

pub fn level_complex(b: &Bss, q: usize) -> Result<Realization<RawLevelComplex>> {
    let (pm, qm) = b.bounds();
    if q > qm {
        return Err(Error::InsufficientDimensionBound { needed: q, available: qm });
    }
    let max = match b.diag_bound() {
        Some(d) if d < q => {
            return Err(Error::InsufficientDimensionBound { needed: q, available: d })
        }
        Some(d) => pm.min(d - q),
        None => pm,
    };
    from_raw(RawLevelComplex { b: b.clone(), q, max })
}

pub struct RawDiagonal {
    b: Bss,
    max: usize,
}

impl RawSimplicial for RawDiagonal {
    type Elem = BiCell;
    fn max_dim(&self) -> usize {
        self.max
    }
    fn elems(&self, dim: usize) -> Result<Vec<BiCell>> {
        self.b.cells(dim, dim)
    }
    fn face(&self, _dim: usize, e: &BiCell, i: usize) -> Result<BiCell> {
        Ok(self.b.v_face(&self.b.h_face(e, i), i))
    }
    fn degeneracy(&self, _dim: usize, e: &BiCell, i: usize) -> Result<BiCell> {
        Ok(e.degenerate_h(i).degenerate_v(i))
    }
    fn name(&self, _dim: usize, e: &BiCell) -> String {
        self.b.cell_name(e)
    }
}

/// The diagonal simplicial set, materialized through `bound`; requires the
/// square bidegree (bound, bound) to be available.
pub fn diagonal(b: &Bss, bound: usize) -> Result<Realization<RawDiagonal>> {
    b.ensure_available(bound, bound)?;
    from_raw(RawDiagonal { b: b.clone(), max: bound })
}

// ---------------------------------------------------------------------------
// Total simplicial set

/// Level n of the total simplicial set: tuples (x_0, ..., x_n) with
/// x_p of bidegree (p, n-p) and matching inner faces, as the equalizer of
/// finite products prescribes.
pub struct RawTotal {
    b: Bss,
    bound: usize,
}

impl RawTotal {
    fn check(&self, e: &[BiCell]) -> bool {
        let n = e.len() - 1;
        (0..n).all(|p| self.b.v_face(&e[p], 0) == self.b.h_face(&e[p + 1], p + 1))
    }
}

impl RawSimplicial for RawTotal {
    type Elem = Vec<BiCell>;
    fn max_dim(&self) -> usize {
        self.bound
    }
    fn elems(&self, dim: usize) -> Result<Vec<Vec<BiCell>>> {
        // Grow tuples left to right; bucket level p by the h-face that the
        // matching condition pins, so only compatible extensions are tried.
        let mut buckets: Vec<HashMap<BiCell, Vec<BiCell>>> = Vec::new();
        for p in 1..=dim {
            let mut m: HashMap<BiCell, Vec<BiCell>> = HashMap::new();
            for c in self.b.cells(p, dim - p)? {
                m.entry(self.b.h_face(&c, p)).or_default().push(c);
            }
            buckets.push(m);
        }
        let mut out = Vec::new();
        for first in self.b.cells(0, dim)? {
            let mut tuple = vec![first];
            extend_tuples(&self.b, &buckets, &mut tuple, dim, &mut out);
        }
        Ok(out)
    }
    fn face(&self, dim: usize, e: &Vec<BiCell>, i: usize) -> Result<Vec<BiCell>> {
        debug_assert!(self.check(e));
        Ok((0..dim)
            .map(|p| {
                if p < i {
                    self.b.v_face(&e[p], i - p)
                } else {
                    self.b.h_face(&e[p + 1], i)
                }
            })
            .collect())
    }
    fn degeneracy(&self, dim: usize, e: &Vec<BiCell>, i: usize) -> Result<Vec<BiCell>> {
        Ok((0..=dim + 1)
            .map(|p| {
                if p <= i {
                    e[p].degenerate_v(i - p)
                } else {
                    e[p - 1].degenerate_h(i)
                }
            })
            .collect())
    }
    fn name(&self, _dim: usize, e: &Vec<BiCell>) -> String {
        let parts: Vec<String> = e.iter().map(|c| self.b.cell_name(c)).collect();
        format!("({})", parts.join("; "))
    }
}

fn extend_tuples(
    b: &Bss,
    buckets: &[HashMap<BiCell, Vec<BiCell>>],
    tuple: &mut Vec<BiCell>,
    dim: usize,
    out: &mut Vec<Vec<BiCell>>,
) {
    let p = tuple.len();
    if p == dim + 1 {
        out.push(tuple.clone());
        return;
    }
    let key = b.v_face(tuple.last().unwrap(), 0);
    if let Some(cands) = buckets[p - 1].get(&key) {
        for c in cands {
            tuple.push(c.clone());
            extend_tuples(b, buckets, tuple, dim, out);
            tuple.pop();
        }
    }
}

/// The total simplicial set through `bound`; needs the full antidiagonal
/// p + q = bound available.
pub fn total(b: &Bss, bound: usize) -> Result<Realization<RawTotal>> {
    for p in 0..=bound {
        b.ensure_available(p, bound - p)?;
    }
    from_raw(RawTotal { b: b.clone(), bound })
}

// ---------------------------------------------------------------------------
// Canonical comparison maps

pub struct DiagToTotal {
    pub map: SimplicialMap,
    pub diag: Realization<RawDiagonal>,
    pub total: Realization<RawTotal>,
}

/// The comparison from the diagonal to the total simplicial set: collapse a
/// square simplex to its staircase of mixed faces.
pub fn d_to_total(b: &Bss, bound: usize) -> Result<DiagToTotal> {
    let diag = diagonal(b, bound)?;
    let tot = total(b, bound)?;
    let mut assign = Vec::new();
    for dim in 0..=diag.ss.top_dim() {
        let mut level = Vec::new();
        for id in diag.ss.gen_ids(dim) {
            let z = diag.elem_of_gen(id);
            let mut tuple = Vec::with_capacity(dim + 1);
            for p in 0..=dim {
                let mut y = z.clone();
                for k in (p + 1..=dim).rev() {
                    y = b.h_face(&y, k);
                }
                for _ in 0..p {
                    y = b.v_face(&y, 0);
                }
                tuple.push(y);
            }
            level.push(tot.resolve(dim, &tuple)?);
        }
        assign.push(level);
    }
    let map = SimplicialMap::new(diag.ss.clone(), tot.ss.clone(), assign)?;
    Ok(DiagToTotal { map, diag, total: tot })
}

pub struct TotalUnit {
    pub map: SimplicialMap,
    pub dec: BiRealization<RawTotalDec>,
    pub total: Realization<RawTotal>,
}

/// The unit comparison from a simplicial set to the total of its total
/// décalage: a simplex goes to the tuple of its single degeneracies.
pub fn total_unit(x: &Ss, bound: usize) -> Result<TotalUnit> {
    if x.top_dim() > bound {
        return Err(Error::InsufficientDimensionBound {
            needed: x.top_dim(),
            available: bound,
        });
    }
    let dec = total_dec(x, bound)?;
    let tot = total(&dec.bss, bound)?;
    let mut assign = Vec::new();
    for dim in 0..=x.top_dim() {
        let mut level = Vec::new();
        for id in x.gen_ids(dim) {
            let z = Cell::of_gen(id);
            let mut tuple = Vec::with_capacity(dim + 1);
            for p in 0..=dim {
                tuple.push(dec.resolve(p, dim - p, &z.degenerate(p))?);
            }
            level.push(tot.resolve(dim, &tuple)?);
        }
        assign.push(level);
    }
    let map = SimplicialMap::new(x.clone(), tot.ss.clone(), assign)?;
    Ok(TotalUnit { map, dec, total: tot })
}

// ---------------------------------------------------------------------------
// Bisimplicial maps

/// All bidegree-preserving maps a -> b commuting with every operator,
/// enumerated by depth-first placement of a's generators.
pub fn enumerate_bi_maps(
    a: &Bss,
    b: &Bss,
    budget: usize,
) -> Result<Vec<HashMap<BiGenId, BiCell>>> {
    let (pm, qm) = a.bounds();
    let mut schedule: Vec<BiGenId> = Vec::new();
    for p in 0..=pm {
        for q in 0..=qm {
            if a.available(p, q) {
                schedule.extend(a.gen_ids(p, q));
            }
        }
    }
    schedule.sort_by_key(|id| (id.p + id.q, id.p, id.idx));
    for id in &schedule {
        b.ensure_available(id.p, id.q)?;
    }
    let eval = |assign: &HashMap<BiGenId, BiCell>, c: &BiCell| -> BiCell {
        assign[&c.base].apply_h_word(&c.h_word).apply_v_word(&c.v_word)
    };
    let mut out = Vec::new();
    let mut assign: HashMap<BiGenId, BiCell> = HashMap::new();
    let mut nodes = 0usize;
    place(a, b, &schedule, 0, &eval, &mut assign, &mut out, &mut nodes, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn place(
    a: &Bss,
    b: &Bss,
    schedule: &[BiGenId],
    at: usize,
    eval: &dyn Fn(&HashMap<BiGenId, BiCell>, &BiCell) -> BiCell,
    assign: &mut HashMap<BiGenId, BiCell>,
    out: &mut Vec<HashMap<BiGenId, BiCell>>,
    nodes: &mut usize,
    budget: usize,
) -> Result<()> {
    if at == schedule.len() {
        out.push(assign.clone());
        return Ok(());
    }
    let id = schedule[at];
    let g = a.generator(id);
    'cand: for cand in b.cells(id.p, id.q)? {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::CombinatorialBlowup {
                estimate: budget.to_string(),
                during: "bisimplicial map enumeration".into(),
            });
        }
        for (i, f) in g.h_faces.iter().enumerate() {
            if eval(assign, f) != b.h_face(&cand, i) {
                continue 'cand;
            }
        }
        for (j, f) in g.v_faces.iter().enumerate() {
            if eval(assign, f) != b.v_face(&cand, j) {
                continue 'cand;
            }
        }
        assign.insert(id, cand);
        place(a, b, schedule, at + 1, eval, assign, out, nodes, budget)?;
        assign.remove(&id);
    }
    Ok(())
}
