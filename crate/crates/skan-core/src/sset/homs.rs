//! Simplicial maps and exhaustive enumeration of hom-sets.
//!
//! A map is stored by its values on nondegenerate generators; values on
//! degenerate cells follow by pushing degeneracy words through. Enumeration
//! backtracks over generators in a schedule that always places the
//! highest-dimensional generator whose faces are already determined, so that
//! the strongest constraints prune earliest.

use super::{Cell, GenId, SimplicialSet, Ss};
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialMap {
    pub source: Ss,
    pub target: Ss,
    /// assign[dim][idx] = image of the generator, a target cell of dim `dim`.
    pub assign: Vec<Vec<Cell>>,
}

impl SimplicialMap {
    /// Build and validate: images must have the right dimension and commute
    /// with all faces (degeneracies then commute automatically).
    pub fn new(source: Ss, target: Ss, assign: Vec<Vec<Cell>>) -> Result<Self> {
        let m = SimplicialMap { source, target, assign };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let top = self.source.top_dim();
        if self.source.gen_count(top) > 0 && self.assign.len() < top + 1 {
            return Err(Error::MapNotSimplicial {
                reason: format!("assignment covers {} dims, source has {}", self.assign.len(), top + 1),
            });
        }
        for dim in 0..=top {
            let n = self.source.gen_count(dim);
            let have = self.assign.get(dim).map_or(0, |v| v.len());
            if n != have {
                return Err(Error::MapNotSimplicial {
                    reason: format!("dim {dim}: {n} generators, {have} images"),
                });
            }
            for idx in 0..n {
                let img = &self.assign[dim][idx];
                if img.dim() != dim {
                    return Err(Error::MapNotSimplicial {
                        reason: format!(
                            "generator {} of dim {dim} sent to a cell of dim {}",
                            self.source.gen_name(GenId { dim, idx }),
                            img.dim()
                        ),
                    });
                }
                for i in 0..=dim {
                    if dim == 0 {
                        break;
                    }
                    let g = GenId { dim, idx };
                    let lhs = self.target.face(img, i);
                    let rhs = self.eval(&self.source.generator(g).faces[i]);
                    if lhs != rhs {
                        return Err(Error::MapNotSimplicial {
                            reason: format!(
                                "face d{i} of generator {} does not commute",
                                self.source.gen_name(g)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Image of any cell: evaluate on the base and replay the word.
    pub fn eval(&self, c: &Cell) -> Cell {
        self.assign[c.base.dim][c.base.idx].apply_word(&c.word)
    }

    pub fn identity(x: &Ss) -> SimplicialMap {
        let assign = (0..=x.top_dim())
            .map(|d| x.gen_ids(d).map(Cell::of_gen).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x.clone(), assign }
    }

    /// Composite `other . self` (self: A -> B, other: B -> C).
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::MapNotSimplicial {
                reason: "composition: middle objects differ".into(),
            });
        }
        let assign = self
            .assign
            .iter()
            .map(|level| level.iter().map(|c| other.eval(c)).collect())
            .collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), assign })
    }

    /// Constant map onto a vertex of the target.
    pub fn constant(source: &Ss, target: &Ss, vertex: GenId) -> SimplicialMap {
        let assign = (0..=source.top_dim())
            .map(|d| {
                (0..source.gen_count(d))
                    .map(|_| {
                        let mut c = Cell::of_gen(vertex);
                        for j in 0..d {
                            c = c.degenerate(j);
                        }
                        c
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { source: source.clone(), target: target.clone(), assign }
    }

    /// A map is an isomorphism iff it sends generators to generators
    /// bijectively in every dimension.
    pub fn invert(&self) -> Result<SimplicialMap> {
        let top = self.source.top_dim().max(self.target.top_dim());
        let mut assign: Vec<Vec<Option<Cell>>> =
            (0..=top).map(|d| vec![None; self.target.gen_count(d)]).collect();
        for dim in 0..=top {
            if self.source.gen_count(dim) != self.target.gen_count(dim) {
                return Err(Error::MapNotSimplicial {
                    reason: format!("not iso: generator counts differ in dim {dim}"),
                });
            }
            for idx in 0..self.source.gen_count(dim) {
                let img = &self.assign[dim][idx];
                if img.is_degenerate() {
                    return Err(Error::MapNotSimplicial {
                        reason: format!(
                            "not iso: generator {} has degenerate image",
                            self.source.gen_name(GenId { dim, idx })
                        ),
                    });
                }
                let slot = &mut assign[img.base.dim][img.base.idx];
                if slot.is_some() {
                    return Err(Error::MapNotSimplicial {
                        reason: "not iso: two generators share an image".into(),
                    });
                }
                *slot = Some(Cell::of_gen(GenId { dim, idx }));
            }
        }
        let assign: Vec<Vec<Cell>> = assign
            .into_iter()
            .map(|level| level.into_iter().map(|c| c.expect("bijective on generators")).collect())
            .collect();
        SimplicialMap::new(self.target.clone(), self.source.clone(), assign)
    }

    pub fn is_iso(&self) -> bool {
        self.invert().is_ok()
    }
}

/// Index of target cells by their full boundary, one map per dimension:
/// `boundary -> cells having it`. Dimension 0 is keyed by the empty vector.
pub struct BoundaryIndex {
    by_dim: Vec<HashMap<Vec<Cell>, Vec<Cell>>>,
}

impl BoundaryIndex {
    pub fn new(target: &SimplicialSet, up_to: usize) -> Result<BoundaryIndex> {
        let mut by_dim = Vec::with_capacity(up_to + 1);
        for q in 0..=up_to {
            let mut m: HashMap<Vec<Cell>, Vec<Cell>> = HashMap::new();
            for c in target.cells(q)? {
                let key = if q == 0 { Vec::new() } else { target.boundary(&c) };
                m.entry(key).or_default().push(c);
            }
            by_dim.push(m);
        }
        Ok(BoundaryIndex { by_dim })
    }

    pub fn candidates(&self, dim: usize, boundary: &[Cell]) -> &[Cell] {
        self.by_dim[dim].get(boundary).map_or(&[], |v| v.as_slice())
    }
}

/// Order generators so each is placed only after all its face bases, always
/// preferring the highest available dimension (ties by name).
pub fn placement_schedule(source: &SimplicialSet) -> Vec<GenId> {
    let top = source.top_dim();
    let mut placed: Vec<Vec<bool>> = (0..=top).map(|d| vec![false; source.gen_count(d)]).collect();
    let total: usize = (0..=top).map(|d| source.gen_count(d)).sum();
    let mut out = Vec::with_capacity(total);
    while out.len() < total {
        let mut best: Option<GenId> = None;
        for d in (0..=top).rev() {
            for idx in 0..source.gen_count(d) {
                if placed[d][idx] {
                    continue;
                }
                let id = GenId { dim: d, idx };
                let ready = source
                    .generator(id)
                    .faces
                    .iter()
                    .all(|f| placed[f.base.dim][f.base.idx]);
                if ready {
                    best = Some(id);
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        let id = best.expect("faces point strictly downward, so some generator is ready");
        placed[id.dim][id.idx] = true;
        out.push(id);
    }
    out
}

/// Options for `enumerate_maps`.
pub struct HomOptions<'a> {
    /// Abort with `CombinatorialBlowup` after visiting this many search nodes.
    pub budget: usize,
    /// Stop after the first map found.
    pub first_only: bool,
    /// Require distinct generators to take distinct values (iso search).
    pub injective_on_gens: bool,
    /// Extra per-generator constraint; a candidate image must satisfy it.
    #[allow(clippy::type_complexity)]
    pub constraint: Option<&'a dyn Fn(GenId, &Cell) -> bool>,
}

impl Default for HomOptions<'_> {
    fn default() -> Self {
        HomOptions {
            budget: 50_000_000,
            first_only: false,
            injective_on_gens: false,
            constraint: None,
        }
    }
}

/// All simplicial maps `source -> target`, deterministically ordered.
///
/// If the target is truncated below the source's top dimension but flagged
/// coskeletal, the target is first extended; the returned maps then land in
/// the extension.
pub fn hom_set(source: &Ss, target: &Ss) -> Result<Vec<SimplicialMap>> {
    let target = super::trunc::extend_for_maps_from(target, source)?;
    enumerate_maps(source, &target, &HomOptions::default())
}

/// Core backtracking enumeration. The target must carry cell data through the
/// source's top dimension.
pub fn enumerate_maps(
    source: &Ss,
    target: &Ss,
    opts: &HomOptions<'_>,
) -> Result<Vec<SimplicialMap>> {
    let top = source.top_dim();
    if source.is_empty() {
        // The empty map is the unique map out of the empty complex.
        return Ok(vec![SimplicialMap {
            source: source.clone(),
            target: target.clone(),
            assign: vec![],
        }]);
    }
    target.ensure_available(top)?;
    let index = BoundaryIndex::new(target, top)?;
    let schedule = placement_schedule(source);
    let mut assign: Vec<Vec<Option<Cell>>> =
        (0..=top).map(|d| vec![None; source.gen_count(d)]).collect();
    let mut used: Vec<HashSet<Cell>> = (0..=top).map(|_| HashSet::new()).collect();
    let mut found = Vec::new();
    let mut visited = 0usize;

    fn eval_partial(assign: &[Vec<Option<Cell>>], c: &Cell) -> Cell {
        assign[c.base.dim][c.base.idx]
            .as_ref()
            .expect("schedule places faces first")
            .apply_word(&c.word)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        source: &Ss,
        target: &Ss,
        schedule: &[GenId],
        pos: usize,
        index: &BoundaryIndex,
        assign: &mut Vec<Vec<Option<Cell>>>,
        used: &mut Vec<HashSet<Cell>>,
        found: &mut Vec<SimplicialMap>,
        visited: &mut usize,
        opts: &HomOptions<'_>,
    ) -> Result<()> {
        if pos == schedule.len() {
            let full: Vec<Vec<Cell>> = assign
                .iter()
                .map(|level| level.iter().map(|c| c.clone().expect("complete")).collect())
                .collect();
            found.push(SimplicialMap {
                source: source.clone(),
                target: target.clone(),
                assign: full,
            });
            return Ok(());
        }
        let id = schedule[pos];
        let boundary: Vec<Cell> = source
            .generator(id)
            .faces
            .iter()
            .map(|f| eval_partial(assign, f))
            .collect();
        let cands = index.candidates(id.dim, &boundary).to_vec();
        for cand in cands {
            *visited += 1;
            if *visited > opts.budget {
                return Err(Error::CombinatorialBlowup {
                    estimate: format!("more than {} search nodes", opts.budget),
                    during: "map enumeration".into(),
                });
            }
            if let Some(f) = opts.constraint {
                if !f(id, &cand) {
                    continue;
                }
            }
            if opts.injective_on_gens && used[id.dim].contains(&cand) {
                continue;
            }
            if opts.injective_on_gens {
                used[id.dim].insert(cand.clone());
            }
            assign[id.dim][id.idx] = Some(cand.clone());
            rec(source, target, schedule, pos + 1, index, assign, used, found, visited, opts)?;
            assign[id.dim][id.idx] = None;
            if opts.injective_on_gens {
                used[id.dim].remove(&cand);
            }
            if opts.first_only && !found.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }

    rec(source, target, &schedule, 0, &index, &mut assign, &mut used, &mut found, &mut visited, opts)?;
    Ok(found)
}

/// Search for an isomorphism `a -> b`. Returns `None` when none exists.
pub fn find_iso(a: &Ss, b: &Ss) -> Result<Option<SimplicialMap>> {
    let top = a.top_dim();
    if b.top_dim() != top {
        return Ok(None);
    }
    for d in 0..=top {
        if a.gen_count(d) != b.gen_count(d) {
            return Ok(None);
        }
    }
    // With equal generator counts per dimension, any generator-injective map
    // landing on nondegenerate cells is a bijection on generators, hence an
    // isomorphism; the first hit suffices.
    let opts = HomOptions {
        first_only: true,
        injective_on_gens: true,
        constraint: Some(&|_, c: &Cell| !c.is_degenerate()),
        ..HomOptions::default()
    };
    let maps = enumerate_maps(a, b, &opts)?;
    match maps.into_iter().next() {
        Some(m) => {
            debug_assert!(m.is_iso());
            Ok(Some(m))
        }
        None => Ok(None),
    }
}
