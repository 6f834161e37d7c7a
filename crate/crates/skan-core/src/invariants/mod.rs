//! Exact invariants: components, normalized homology, the edge-path group,
//! homotopy classes of maps, and graded weak-equivalence certificates.

pub mod fpgroup;
pub mod snf;

use crate::error::{Error, Result};
use crate::sset::homs::{enumerate_maps, HomOptions, SimplicialMap};
use crate::sset::limits::{product, Product};
use crate::sset::trunc::extend_for_maps_from;
use crate::sset::{Cell, GenId, Ss};
use fpgroup::{invert_word, AbelianGroup, FpGroup};
use snf::smith_normal_form;
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Components

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi0 {
    /// Components as sorted lists of vertex generators; components ordered by
    /// their least vertex name.
    pub classes: Vec<Vec<GenId>>,
}

impl Pi0 {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: GenId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }
}

pub fn pi0(x: &Ss) -> Result<Pi0> {
    x.ensure_available(1)?;
    let n = x.gen_count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for e in x.gen_ids(1) {
        let g = x.generator(e);
        let (a, b) = (g.faces[0].base.idx, g.faces[1].base.idx);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut buckets: HashMap<usize, Vec<GenId>> = HashMap::new();
    for idx in 0..n {
        let r = find(&mut parent, idx);
        buckets.entry(r).or_default().push(GenId { dim: 0, idx });
    }
    let mut classes: Vec<Vec<GenId>> = buckets.into_values().collect();
    for c in &mut classes {
        c.sort_by(|a, b| x.gen_name(*a).cmp(x.gen_name(*b)));
    }
    classes.sort_by(|a, b| x.gen_name(a[0]).cmp(x.gen_name(b[0])));
    Ok(Pi0 { classes })
}

// ---------------------------------------------------------------------------
// Normalized homology

/// Boundary matrix of the normalized chain complex in degree q:
/// rows are (q-1)-generators, columns are q-generators, entries are the
/// alternating sums of nondegenerate faces.
fn boundary_matrix(x: &Ss, q: usize) -> Vec<Vec<i64>> {
    let rows = x.gen_count(q - 1);
    let cols = x.gen_count(q);
    let mut m = vec![vec![0i64; cols]; rows];
    for id in x.gen_ids(q) {
        for (i, f) in x.generator(id).faces.iter().enumerate() {
            if !f.is_degenerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[f.base.idx][id.idx] += sign;
            }
        }
    }
    m
}

/// Homology in degrees 0..=through, computed from normalized chains. Needs
/// generator data one degree above `through`.
pub fn homology(x: &Ss, through: usize) -> Result<Vec<AbelianGroup>> {
    if let Some(t) = x.truncated_at() {
        if through + 1 > t {
            return Err(Error::InsufficientDimensionBound { needed: through + 1, available: t });
        }
    }
    let mut rank = vec![0usize; through + 2];
    let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); through + 2];
    for q in 1..=through + 1 {
        if x.gen_count(q) == 0 || x.gen_count(q - 1) == 0 {
            continue;
        }
        let s = smith_normal_form(boundary_matrix(x, q));
        rank[q] = s.rank;
        torsion[q] = s.torsion();
    }
    Ok((0..=through)
        .map(|q| AbelianGroup {
            free_rank: x.gen_count(q) - rank[q] - rank[q + 1],
            torsion: torsion[q + 1].clone(),
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Edge-path group

#[derive(Debug, Clone)]
pub struct FundamentalGroup {
    pub basepoint: String,
    pub group: FpGroup,
}

/// Edge-path group of the component of the basepoint (default: the
/// lexicographically least vertex), presented by non-tree edges with one
/// relator per nondegenerate 2-simplex.
pub fn pi1(x: &Ss, basepoint: Option<&str>) -> Result<FundamentalGroup> {
    x.ensure_available(2)?;
    if x.gen_count(0) == 0 {
        return Err(Error::EmptyInput { reason: "fundamental group of an empty set".into() });
    }
    let base = match basepoint {
        Some(name) => x
            .gen_by_name(0, name)
            .ok_or_else(|| Error::VertexNotFound { name: name.to_string() })?,
        None => {
            let mut ids: Vec<GenId> = x.gen_ids(0).collect();
            ids.sort_by(|a, b| x.gen_name(*a).cmp(x.gen_name(*b)));
            ids[0]
        }
    };
    let comps = pi0(x)?;
    let comp_idx = comps.class_of(base).expect("basepoint is a vertex");
    let in_comp = |v: GenId| comps.classes[comp_idx].contains(&v);

    // BFS spanning tree over nondegenerate edges, edges in generator order.
    let mut tree_edge: Vec<bool> = vec![false; x.gen_count(1)];
    let mut visited: Vec<bool> = vec![false; x.gen_count(0)];
    visited[base.idx] = true;
    let mut frontier = vec![base.idx];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in x.gen_ids(1) {
            if tree_edge[e.idx] {
                continue;
            }
            let g = x.generator(e);
            let (endpt, start) = (g.faces[0].base.idx, g.faces[1].base.idx);
            for &(from, to) in &[(start, endpt), (endpt, start)] {
                if frontier.contains(&from) && !visited[to] {
                    visited[to] = true;
                    tree_edge[e.idx] = true;
                    next.push(to);
                    break;
                }
            }
        }
        frontier = next;
    }

    // Generators: non-tree nondegenerate edges inside the component.
    let mut letter: HashMap<usize, i32> = HashMap::new();
    let mut gen_names = Vec::new();
    for e in x.gen_ids(1) {
        let g = x.generator(e);
        if !tree_edge[e.idx] && in_comp(g.faces[0].base) {
            letter.insert(e.idx, (gen_names.len() + 1) as i32);
            gen_names.push(x.gen_name(e).to_string());
        }
    }
    let word_of = |c: &Cell| -> Vec<i32> {
        if c.is_degenerate() {
            return Vec::new();
        }
        letter.get(&c.base.idx).map(|&l| vec![l]).unwrap_or_default()
    };
    let mut relators = Vec::new();
    for t in x.gen_ids(2) {
        let g = x.generator(t);
        let v = x.apply_monotone(&Cell::of_gen(t), &[0]);
        if !in_comp(v.base) {
            continue;
        }
        // The long edge is homotopic to the composite of the two short ones.
        let mut w = word_of(&g.faces[2]);
        w.extend(word_of(&g.faces[0]));
        w.extend(invert_word(&word_of(&g.faces[1])));
        relators.push(w);
    }
    Ok(FundamentalGroup {
        basepoint: x.gen_name(base).to_string(),
        group: FpGroup::new(gen_names, relators),
    })
}

// ---------------------------------------------------------------------------
// Homotopy classes of maps

pub struct HomotopyClasses {
    pub maps: Vec<SimplicialMap>,
    /// Class index per map, classes numbered by first appearance.
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    /// The common (possibly coskeletally extended) target of `maps`.
    pub target_used: Ss,
}

impl HomotopyClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// The cylinder on x and the forced endpoint assignments for a homotopy
/// between two maps.
struct Cylinder {
    prod: Product,
    interval: Ss,
}

fn cylinder(x: &Ss) -> Result<Cylinder> {
    let interval = crate::sset::standard::simplex(1);
    let prod = product(x, &interval, x.top_dim() + 1)?;
    Ok(Cylinder { prod, interval })
}

fn endpoint_constraints(
    x: &Ss,
    cyl: &Cylinder,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<HashMap<GenId, Cell>> {
    let mut forced: HashMap<GenId, Cell> = HashMap::new();
    for (end, map) in [(0usize, f), (1usize, g)] {
        let v = Cell::of_gen(GenId { dim: 0, idx: end });
        let _ = &cyl.interval;
        for d in 0..=x.top_dim() {
            for id in x.gen_ids(d) {
                let mut vd = v.clone();
                for j in 0..d {
                    vd = vd.degenerate(j);
                }
                let pc = cyl.prod.pair(&Cell::of_gen(id), &vd)?;
                debug_assert!(pc.word.is_empty());
                forced.insert(pc.base, map.eval(&Cell::of_gen(id)));
            }
        }
    }
    Ok(forced)
}

/// Is there a simplicial homotopy `x x Delta[1] -> a` from f to g?
pub fn homotopic(x: &Ss, a: &Ss, f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    let cyl = cylinder(x)?;
    for (from, to) in [(f, g), (g, f)] {
        let forced = endpoint_constraints(x, &cyl, from, to)?;
        let constraint = |id: GenId, cand: &Cell| forced.get(&id).is_none_or(|c| c == cand);
        let opts = HomOptions {
            first_only: true,
            constraint: Some(&constraint),
            ..HomOptions::default()
        };
        if !enumerate_maps(cyl.prod.ss(), a, &opts)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All maps x -> a up to simplicial homotopy. The target must be Kan for
/// the relation to be an equivalence; new maps are compared against one
/// representative per known class.
pub fn homotopy_classes(x: &Ss, a: &Ss) -> Result<HomotopyClasses> {
    let needed = x.top_dim() + 1;
    let probe = crate::sset::standard::simplex(needed);
    let a_ext = extend_for_maps_from(a, &probe)?;
    let maps = enumerate_maps(x, &a_ext, &HomOptions::default())?;
    let cyl = cylinder(x)?;
    let mut class_of: Vec<usize> = Vec::with_capacity(maps.len());
    let mut representatives: Vec<usize> = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        let mut found = None;
        for (ci, &r) in representatives.iter().enumerate() {
            let forced = endpoint_constraints(x, &cyl, &maps[r], m)?;
            let constraint = |id: GenId, cand: &Cell| forced.get(&id).is_none_or(|c| c == cand);
            let opts = HomOptions {
                first_only: true,
                constraint: Some(&constraint),
                ..HomOptions::default()
            };
            if !enumerate_maps(cyl.prod.ss(), &a_ext, &opts)?.is_empty() {
                found = Some(ci);
                break;
            }
        }
        match found {
            Some(ci) => class_of.push(ci),
            None => {
                class_of.push(representatives.len());
                representatives.push(i);
            }
        }
    }
    Ok(HomotopyClasses { maps, class_of, representatives, target_used: a_ext })
}

// ---------------------------------------------------------------------------
// Weak-equivalence certificates

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WePolicy {
    RequireIso,
    TryRetract,
    Invariants { bound: usize },
}

#[derive(Debug, Clone)]
pub enum WeCert {
    /// Strongest: an isomorphism with verified two-sided inverse.
    Iso { inverse: SimplicialMap },
    /// A deformation retraction: r with r.f = id and a homotopy f.r ~ id.
    Retract { retraction: SimplicialMap },
    /// Weakest: matched invariants only (components, fundamental group
    /// evidence, homology through a bound). Not a proof.
    Invariants { summary: String },
}

impl WeCert {
    pub fn level(&self) -> &'static str {
        match self {
            WeCert::Iso { .. } => "iso",
            WeCert::Retract { .. } => "retract",
            WeCert::Invariants { .. } => "invariants",
        }
    }
}

#[derive(Debug, Clone)]
pub enum WeVerdict {
    Certified(WeCert),
    Disproved { reason: String },
    Inconclusive { reason: String },
}

/// Try to certify that `f` is a weak equivalence at the strength the policy
/// asks for. Never lies: `Certified(Invariants)` is labelled as the weak
/// evidence it is, and `Disproved` carries a concrete mismatch.
pub fn we_certify(f: &SimplicialMap, policy: WePolicy) -> Result<WeVerdict> {
    match f.invert() {
        Ok(inverse) => return Ok(WeVerdict::Certified(WeCert::Iso { inverse })),
        Err(_) if matches!(policy, WePolicy::RequireIso) => {
            return Ok(WeVerdict::Inconclusive {
                reason: "not an isomorphism; policy accepts nothing weaker".into(),
            })
        }
        Err(_) => {}
    }
    match policy {
        WePolicy::RequireIso => unreachable!("handled above"),
        WePolicy::TryRetract => {
            let x = &f.source;
            let y = &f.target;
            let id_x = SimplicialMap::identity(x);
            let id_y = SimplicialMap::identity(y);
            let candidates = enumerate_maps(y, x, &HomOptions::default())?;
            for r in candidates {
                if f.then(&r)?.assign != id_x.assign {
                    continue;
                }
                let fr = r.then(f)?;
                if homotopic(y, y, &fr, &id_y)? {
                    return Ok(WeVerdict::Certified(WeCert::Retract { retraction: r }));
                }
            }
            Ok(WeVerdict::Inconclusive {
                reason: "no retraction with a connecting homotopy found".into(),
            })
        }
        WePolicy::Invariants { bound } => we_by_invariants(f, bound),
    }
}

fn we_by_invariants(f: &SimplicialMap, bound: usize) -> Result<WeVerdict> {
    let x = &f.source;
    let y = &f.target;
    let px = pi0(x)?;
    let py = pi0(y)?;
    if px.count() != py.count() {
        return Ok(WeVerdict::Disproved {
            reason: format!("component counts differ: {} vs {}", px.count(), py.count()),
        });
    }
    // f must match components bijectively.
    let mut hit = vec![false; py.count()];
    for c in &px.classes {
        let img = f.eval(&Cell::of_gen(c[0]));
        let ci = py.class_of(img.base).expect("image vertex exists");
        if hit[ci] {
            return Ok(WeVerdict::Disproved {
                reason: "two components land in the same target component".into(),
            });
        }
        hit[ci] = true;
    }
    let mut notes = vec![format!("pi0 matched ({} components)", px.count())];
    // Fundamental group evidence per component, at corresponding basepoints.
    const TC_BUDGET: usize = 20_000;
    for c in &px.classes {
        let bp = x.gen_name(c[0]);
        let img = f.eval(&Cell::of_gen(c[0]));
        let bq = y.gen_name(img.base);
        let gx = pi1(x, Some(bp))?;
        let gy = pi1(y, Some(bq))?;
        let (ax, ay) = (gx.group.abelianization(), gy.group.abelianization());
        if ax != ay {
            return Ok(WeVerdict::Disproved {
                reason: format!(
                    "pi1 abelianizations differ at {bp}: {} vs {}",
                    ax.describe(),
                    ay.describe()
                ),
            });
        }
        match (gx.group.order(TC_BUDGET), gy.group.order(TC_BUDGET)) {
            (Ok(nx), Ok(ny)) if nx != ny => {
                return Ok(WeVerdict::Disproved {
                    reason: format!("pi1 orders differ at {bp}: {nx} vs {ny}"),
                });
            }
            (Ok(nx), Ok(_)) => notes.push(format!("pi1 at {bp}: order {nx} matched")),
            _ => notes.push(format!(
                "pi1 at {bp}: abelianization {} matched; order not settled in budget",
                ax.describe()
            )),
        }
    }
    let hx = homology(x, bound)?;
    let hy = homology(y, bound)?;
    for q in 0..=bound {
        if hx[q] != hy[q] {
            return Ok(WeVerdict::Disproved {
                reason: format!(
                    "homology differs in degree {q}: {} vs {}",
                    hx[q].describe(),
                    hy[q].describe()
                ),
            });
        }
    }
    notes.push(format!("homology matched through degree {bound}"));
    Ok(WeVerdict::Certified(WeCert::Invariants { summary: notes.join("; ") }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{boundary_simplex, circle_min, coproduct, simplex, sphere_min};

    #[test]
    fn components_of_disjoint_pieces() {
        let (two, _) =
            coproduct(&[("a".into(), simplex(1)), ("b".into(), circle_min())]).unwrap();
        assert_eq!(pi0(&two).unwrap().count(), 2);
        assert_eq!(pi0(&simplex(3)).unwrap().count(), 1);
    }

    #[test]
    fn homology_of_spheres() {
        // Boundary of the 3-simplex is a 2-sphere: H = (Z, 0, Z).
        let s2 = boundary_simplex(3);
        let h = homology(&s2, 2).unwrap();
        assert_eq!((h[0].free_rank, h[0].torsion.len()), (1, 0));
        assert_eq!((h[1].free_rank, h[1].torsion.len()), (0, 0));
        assert_eq!((h[2].free_rank, h[2].torsion.len()), (1, 0));
        // Minimal circle: H = (Z, Z).
        let s1 = circle_min();
        let h1 = homology(&s1, 1).unwrap();
        assert_eq!(h1[0].free_rank, 1);
        assert_eq!(h1[1].free_rank, 1);
        // Minimal 2-sphere agrees with the simplicial one.
        let m2 = sphere_min(2);
        let hm = homology(&m2, 2).unwrap();
        assert_eq!((hm[0].free_rank, hm[1].free_rank, hm[2].free_rank), (1, 0, 1));
    }

    #[test]
    fn fundamental_group_of_circles() {
        let c = pi1(&circle_min(), None).unwrap();
        assert!(c.group.is_visibly_free());
        assert_eq!(c.group.n_gens(), 1);
        let t = pi1(&boundary_simplex(2), None).unwrap();
        let ab = t.group.abelianization();
        assert_eq!((ab.free_rank, ab.torsion.len()), (1, 0));
        // Simply connected: boundary of the 3-simplex.
        let s = pi1(&boundary_simplex(3), None).unwrap();
        assert_eq!(s.group.order(1000).unwrap(), 1);
    }

    #[test]
    fn homotopy_classes_of_points() {
        // Vertices of Delta[1] are homotopic through the edge.
        let pt = simplex(0);
        let d1 = simplex(1);
        let hc = homotopy_classes(&pt, &d1).unwrap();
        assert_eq!(hc.maps.len(), 2);
        assert_eq!(hc.count(), 1);
        // Two disjoint points stay distinct.
        let (two, _) =
            coproduct(&[("a".into(), simplex(0)), ("b".into(), simplex(0))]).unwrap();
        let hc2 = homotopy_classes(&pt, &two).unwrap();
        assert_eq!(hc2.count(), 2);
    }

    #[test]
    fn certificates_grade_down() {
        let d1 = simplex(1);
        let id = SimplicialMap::identity(&d1);
        match we_certify(&id, WePolicy::RequireIso).unwrap() {
            WeVerdict::Certified(WeCert::Iso { .. }) => {}
            v => panic!("expected iso certificate, got {v:?}"),
        }
        // Point into interval: a deformation retract.
        let pt = simplex(0);
        let v0 = GenId { dim: 0, idx: 0 };
        let incl = SimplicialMap::new(
            pt.clone(),
            d1.clone(),
            vec![vec![Cell::of_gen(v0)]],
        )
        .unwrap();
        match we_certify(&incl, WePolicy::TryRetract).unwrap() {
            WeVerdict::Certified(WeCert::Retract { .. }) => {}
            v => panic!("expected retract certificate, got {v:?}"),
        }
        // Invariants disprove: two points into one.
        let (two, _) =
            coproduct(&[("a".into(), simplex(0)), ("b".into(), simplex(0))]).unwrap();
        let collapse = SimplicialMap::constant(&two, &pt, v0);
        match we_certify(&collapse, WePolicy::Invariants { bound: 1 }).unwrap() {
            WeVerdict::Disproved { .. } => {}
            v => panic!("expected disproof, got {v:?}"),
        }
    }

    #[test]
    fn invariants_certificate_on_equivalent_circles() {
        // Triangle circle wrapped onto the minimal circle: not injective on
        // generators, so no iso; both sides are circles, so the invariants
        // policy certifies at its (weak) level.
        let c = circle_min();
        let t = boundary_simplex(2);
        let pt = Cell::of_gen(GenId { dim: 0, idx: 0 });
        let loop_edge = Cell::of_gen(GenId { dim: 1, idx: 0 });
        let wrap = SimplicialMap::new(
            t.clone(),
            c.clone(),
            vec![vec![pt; 3], vec![loop_edge; 3]],
        )
        .unwrap();
        match we_certify(&wrap, WePolicy::Invariants { bound: 2 }).unwrap() {
            WeVerdict::Certified(WeCert::Invariants { summary }) => {
                assert!(summary.contains("homology matched"));
            }
            v => panic!("expected invariants certificate, got {v:?}"),
        }
    }
}
