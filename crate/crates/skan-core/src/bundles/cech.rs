//! Covers of a simplicial set by closed subcomplexes, and the Čech nerve of
//! a map: the bisimplicial set of tuples with a common image, its total
//! simplicial set, and the comparison back down to the target.

use crate::bisim::ops::{total, RawTotal};
use crate::bisim::{from_raw_bi, BiRealization, RawBiSimplicial};
use crate::error::{Error, Result};
use crate::invariants::{we_certify, WeCert, WePolicy, WeVerdict};
use crate::sset::build::Realization;
use crate::sset::homs::SimplicialMap;
use crate::sset::standard::{coproduct, face_closure, subcomplex};
use crate::sset::{Cell, GenId, Ss};
use std::collections::{BTreeSet, HashMap};

/// A family of closed subcomplexes that jointly cover a base, together with
/// their disjoint union and the assembled map back to the base.
pub struct Cover {
    pub base: Ss,
    pub names: Vec<String>,
    /// The pieces as standalone simplicial sets.
    pub pieces: Vec<Ss>,
    /// Inclusion of each piece into the base.
    pub inclusions: Vec<SimplicialMap>,
    /// The generator sets of the base kept by each piece (face-closed).
    pub kept: Vec<BTreeSet<GenId>>,
    /// The disjoint union of the pieces.
    pub total: Ss,
    /// Injection of each piece into the disjoint union.
    pub injections: Vec<SimplicialMap>,
    /// The covering map from the disjoint union to the base.
    pub map: SimplicialMap,
}

impl Cover {
    /// Build a cover from named generator sets. Each set is closed under
    /// faces first; the family must be nonempty and jointly contain every
    /// generator of the base.
    pub fn new(base: &Ss, parts: Vec<(String, BTreeSet<GenId>)>) -> Result<Cover> {
        if parts.is_empty() {
            return Err(Error::EmptyInput { reason: "a cover needs at least one piece".into() });
        }
        let mut names = Vec::new();
        let mut pieces = Vec::new();
        let mut inclusions = Vec::new();
        let mut kept = Vec::new();
        for (name, gens) in parts {
            let closed = face_closure(base, &gens);
            let (piece, incl) = subcomplex(base, &closed)?;
            names.push(name);
            pieces.push(piece);
            inclusions.push(incl);
            kept.push(closed);
        }
        for dim in 0..=base.top_dim() {
            for id in base.gen_ids(dim) {
                if !kept.iter().any(|k| k.contains(&id)) {
                    return Err(Error::InvalidInput {
                        reason: format!(
                            "cover misses generator {} (dimension {dim})",
                            base.gen_name(id)
                        ),
                    });
                }
            }
        }
        let named: Vec<(String, Ss)> =
            names.iter().cloned().zip(pieces.iter().cloned()).collect();
        let (union, injections) = coproduct(&named)?;
        let mut assign: Vec<Vec<Cell>> = Vec::new();
        for dim in 0..=union.top_dim() {
            assign.push(vec![Cell::of_gen(GenId { dim: 0, idx: 0 }); union.gen_count(dim)]);
        }
        for k in 0..pieces.len() {
            for dim in 0..=pieces[k].top_dim() {
                for id in pieces[k].gen_ids(dim) {
                    let up = injections[k].eval(&Cell::of_gen(id));
                    debug_assert!(up.word.is_empty());
                    assign[up.base.dim][up.base.idx] = inclusions[k].eval(&Cell::of_gen(id));
                }
            }
        }
        let map = SimplicialMap::new(union.clone(), base.clone(), assign)?;
        Ok(Cover { base: base.clone(), names, pieces, inclusions, kept, total: union, map, injections })
    }

    /// The intersection of the pieces selected by `which` (indices into the
    /// family), as a subcomplex of the base; may be empty.
    pub fn intersection(&self, which: &[usize]) -> Result<(Ss, SimplicialMap)> {
        if which.is_empty() {
            return Err(Error::EmptyInput { reason: "intersection of no pieces".into() });
        }
        for &k in which {
            if k >= self.pieces.len() {
                return Err(Error::InvalidInput { reason: format!("no piece with index {k}") });
            }
        }
        let mut inter = self.kept[which[0]].clone();
        for &k in &which[1..] {
            inter = inter.intersection(&self.kept[k]).cloned().collect();
        }
        subcomplex(&self.base, &inter)
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Bidegree (p, q) of the Čech nerve of a map: (p+1)-tuples of q-cells of
/// the source sharing one image; horizontal faces drop an entry,
/// horizontal degeneracies repeat one, vertical structure is componentwise.
pub struct RawCech {
    f: SimplicialMap,
    bound: usize,
}

impl RawBiSimplicial for RawCech {
    type Elem = Vec<Cell>;

    fn p_max(&self) -> usize {
        self.bound
    }
    fn q_max(&self) -> usize {
        self.bound
    }
    fn diag_bound(&self) -> Option<usize> {
        Some(self.bound)
    }

    fn elems(&self, p: usize, q: usize) -> Result<Vec<Self::Elem>> {
        let mut buckets: HashMap<Cell, Vec<Cell>> = HashMap::new();
        for y in self.f.source.cells(q)? {
            buckets.entry(self.f.eval(&y)).or_default().push(y);
        }
        let mut keys: Vec<&Cell> = buckets.keys().collect();
        keys.sort();
        let mut out = Vec::new();
        for key in keys {
            let members = &buckets[key];
            let mut tuple = vec![0usize; p + 1];
            loop {
                out.push(tuple.iter().map(|&k| members[k].clone()).collect());
                let mut pos = p + 1;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    tuple[pos] += 1;
                    if tuple[pos] < members.len() {
                        break;
                    }
                    tuple[pos] = 0;
                }
                if tuple.iter().all(|&k| k == 0) {
                    break;
                }
            }
        }
        Ok(out)
    }

    fn h_face(&self, _p: usize, _q: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let mut out = e.clone();
        out.remove(i);
        Ok(out)
    }

    fn v_face(&self, _p: usize, _q: usize, e: &Self::Elem, j: usize) -> Result<Self::Elem> {
        Ok(e.iter().map(|y| self.f.source.face(y, j)).collect())
    }

    fn h_degeneracy(&self, _p: usize, _q: usize, e: &Self::Elem, i: usize) -> Result<Self::Elem> {
        let mut out = e.clone();
        out.insert(i + 1, e[i].clone());
        Ok(out)
    }

    fn v_degeneracy(&self, _p: usize, _q: usize, e: &Self::Elem, j: usize) -> Result<Self::Elem> {
        Ok(e.iter().map(|y| y.degenerate(j)).collect())
    }

    fn name(&self, _p: usize, _q: usize, e: &Self::Elem) -> Result<String> {
        let parts: Vec<String> = e.iter().map(|y| self.f.source.cell_name(y)).collect();
        Ok(format!("({})", parts.join("; ")))
    }
}

/// The Čech nerve of a map, materialized where p + q stays within the
/// bound, with its total simplicial set and the comparison down to the
/// target of the map.
pub struct CechNerve {
    pub bi: BiRealization<RawCech>,
    pub total: Realization<RawTotal>,
    pub total_proj: SimplicialMap,
    pub bound: usize,
}

impl CechNerve {
    /// Certify the comparison map as a weak equivalence under the policy.
    pub fn certify(&self, policy: WePolicy) -> Result<WeCert> {
        match we_certify(&self.total_proj, policy)? {
            WeVerdict::Certified(cert) => Ok(cert),
            WeVerdict::Disproved { reason } | WeVerdict::Inconclusive { reason } => {
                Err(Error::CertificateNotFound { reason })
            }
        }
    }
}

/// Build the Čech nerve of `f` through `bound`.
pub fn cech_nerve(f: &SimplicialMap, bound: usize) -> Result<CechNerve> {
    f.source.ensure_available(bound)?;
    f.target.ensure_available(bound)?;
    let bi = from_raw_bi(RawCech { f: f.clone(), bound })?;
    let tot = total(&bi.bss, bound)?;
    let mut assign: Vec<Vec<Cell>> = Vec::new();
    for dim in 0..=tot.ss.top_dim() {
        let mut level = Vec::new();
        for id in tot.ss.gen_ids(dim) {
            let tuple = tot.elem_of_gen(id);
            let first = bi.expand(&tuple[0])?;
            level.push(f.eval(&first[0]));
        }
        assign.push(level);
    }
    let total_proj = SimplicialMap::new(tot.ss.clone(), f.target.clone(), assign)?;
    Ok(CechNerve { bi, total: tot, total_proj, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::simplex;

    fn all_gens(x: &Ss) -> BTreeSet<GenId> {
        let mut s = BTreeSet::new();
        for dim in 0..=x.top_dim() {
            s.extend(x.gen_ids(dim));
        }
        s
    }

    #[test]
    fn the_whole_complex_covers_itself() {
        let x = simplex(1);
        let cover = Cover::new(&x, vec![("all".into(), all_gens(&x))]).unwrap();
        assert_eq!(cover.len(), 1);
        assert!(cover.map.is_iso());
    }

    #[test]
    fn incomplete_families_and_empty_families_are_rejected() {
        let x = simplex(1);
        assert!(matches!(Cover::new(&x, vec![]), Err(Error::EmptyInput { .. })));
        let mut one_vertex = BTreeSet::new();
        one_vertex.insert(GenId { dim: 0, idx: 0 });
        assert!(Cover::new(&x, vec![("v".into(), one_vertex)]).is_err());
    }

    #[test]
    fn edge_cover_of_the_triangle_boundary_intersects_in_vertices() {
        let x = crate::sset::standard::boundary_simplex(2);
        // Three closed edges; seeding with each edge generator pulls in its
        // endpoints through the face closure.
        let mut parts = Vec::new();
        for idx in 0..3 {
            let mut seed = BTreeSet::new();
            seed.insert(GenId { dim: 1, idx });
            parts.push((format!("e{idx}"), seed));
        }
        let cover = Cover::new(&x, parts).unwrap();
        assert_eq!(cover.len(), 3);
        // Each pair of edges shares exactly one vertex.
        for i in 0..3 {
            for j in 0..3 {
                if i < j {
                    let (inter, _) = cover.intersection(&[i, j]).unwrap();
                    assert_eq!(inter.gen_count(0), 1, "pieces {i} and {j}");
                    assert_eq!(inter.gen_count(1), 0);
                }
            }
        }
        let (self_inter, _) = cover.intersection(&[0, 0]).unwrap();
        assert_eq!(self_inter.gen_count(1), 1);
    }

    #[test]
    fn nerve_of_an_isomorphism_collapses_to_the_target() {
        let x = simplex(1);
        let id = crate::sset::homs::SimplicialMap::identity(&x);
        let nerve = cech_nerve(&id, 2).unwrap();
        assert!(nerve.total_proj.is_iso());
    }

    #[test]
    fn nerve_tuples_count_matching_fibers() {
        // Two edges mapping onto one: bidegree (p, q) collects all
        // (p+1)-tuples with a common image.
        let x = simplex(1);
        let cover = Cover::new(
            &x,
            vec![("a".into(), all_gens(&x)), ("b".into(), all_gens(&x))],
        )
        .unwrap();
        let nerve = cech_nerve(&cover.map, 2).unwrap();
        // Over each base cell the fiber has two points, so bidegree (1, 0)
        // holds 2 vertices x 4 ordered pairs = 8 elements.
        assert_eq!(nerve.bi.bss.cell_count(1, 0).unwrap(), 8);
        assert_eq!(nerve.bi.bss.cell_count(0, 1).unwrap(), 6);
    }
}
