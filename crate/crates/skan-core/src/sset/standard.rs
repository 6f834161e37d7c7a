//! Standard finite complexes: simplices, boundaries, horns, minimal spheres,
//! plus subcomplex and coproduct constructions.

use super::{Cell, GenId, Generator, SimplicialSet, Ss};
use crate::error::{Error, Result};
use crate::sset::homs::SimplicialMap;
use std::collections::BTreeSet;

pub(crate) fn label(vertices: &[usize], width: usize) -> String {
    if width <= 10 {
        vertices.iter().map(|v| v.to_string()).collect()
    } else {
        vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Strictly increasing tuples over `{0..=n}` of a given length, in
/// lexicographic order.
pub fn strictly_increasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    subsets(n, len)
}

/// Nonempty subsets of `{0..=n}` of each size, in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, from: usize, n: usize, left: usize) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in from..=n {
            if n + 1 - v < left {
                break;
            }
            cur.push(v);
            rec(out, cur, v + 1, n, left - 1);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, size);
    out
}

fn simplex_like(n: usize, keep: impl Fn(&[usize]) -> bool) -> Ss {
    let mut gens: Vec<Vec<Generator>> = Vec::with_capacity(n + 1);
    // Index of a subset within its level, for face lookups.
    let mut index: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let level: Vec<Vec<usize>> = subsets(n, q + 1).into_iter().filter(|s| keep(s)).collect();
        let mut lg = Vec::with_capacity(level.len());
        for s in &level {
            let faces = if q == 0 {
                Vec::new()
            } else {
                (0..=q)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        let idx = index[q - 1]
                            .iter()
                            .position(|t| *t == f)
                            .expect("face of a kept subset is kept");
                        Cell::of_gen(GenId { dim: q - 1, idx })
                    })
                    .collect()
            };
            lg.push(Generator { name: label(s, n + 1), faces });
        }
        gens.push(lg);
        index.push(level);
    }
    SimplicialSet::build(gens, None, None).expect("standard complex is valid")
}

/// The standard n-simplex.
pub fn simplex(n: usize) -> Ss {
    simplex_like(n, |_| true)
}

/// Boundary of the n-simplex (n >= 1): all proper faces.
pub fn boundary_simplex(n: usize) -> Ss {
    assert!(n >= 1, "boundary needs n >= 1");
    simplex_like(n, |s| s.len() < n + 1)
}

/// The horn with the k-th face removed (0 <= k <= n, n >= 1).
pub fn horn(n: usize, k: usize) -> Ss {
    assert!(n >= 1 && k <= n, "horn needs n >= 1, k <= n");
    simplex_like(n, |s| {
        s.len() < n + 1 && !(s.len() == n && !s.contains(&k))
    })
}

/// Minimal n-sphere: one vertex and one nondegenerate n-cell, all of whose
/// faces are degeneracies of the vertex.
pub fn sphere_min(n: usize) -> Ss {
    assert!(n >= 1, "sphere needs n >= 1");
    let mut gens: Vec<Vec<Generator>> = vec![vec![Generator { name: "pt".into(), faces: vec![] }]];
    for q in 1..n {
        gens.push(Vec::new());
        let _ = q;
    }
    let v = Cell::of_gen(GenId { dim: 0, idx: 0 });
    let mut collapsed = v;
    for j in 0..n - 1 {
        collapsed = collapsed.degenerate(j);
    }
    gens.push(vec![Generator { name: "cell".into(), faces: vec![collapsed; n + 1] }]);
    SimplicialSet::build(gens, None, None).expect("minimal sphere is valid")
}

/// Minimal circle: one vertex, one edge, both of its faces the vertex.
pub fn circle_min() -> Ss {
    sphere_min(1)
}

/// The cell of `simplex(n)` named by a weakly increasing vertex tuple.
pub fn simplex_cell(ss: &SimplicialSet, vertices: &[usize]) -> Cell {
    debug_assert!(vertices.windows(2).all(|w| w[0] <= w[1]));
    if let Some(j) = vertices.windows(2).position(|w| w[0] == w[1]) {
        let mut reduced = vertices.to_vec();
        reduced.remove(j + 1);
        return simplex_cell(ss, &reduced).degenerate(j);
    }
    let dim = vertices.len() - 1;
    let name = label(vertices, ss.gen_count(0));
    let id = ss
        .gen_by_name(dim, &name)
        .unwrap_or_else(|| panic!("simplex cell {name} missing in dim {dim}"));
    Cell::of_gen(id)
}

/// Vertex tuple of a cell of `simplex(n)` (inverse of `simplex_cell`).
pub fn simplex_vertices(ss: &SimplicialSet, cell: &Cell) -> Vec<usize> {
    let gen_vertices: Vec<usize> = ss
        .gen_name(cell.base)
        .split('.')
        .flat_map(|part| {
            if part.len() > 1 && !part.contains('.') && ss.gen_count(0) <= 10 {
                part.chars().map(|c| c.to_digit(10).unwrap() as usize).collect::<Vec<_>>()
            } else {
                vec![part.parse::<usize>().unwrap()]
            }
        })
        .collect();
    let mut v = gen_vertices;
    for &j in cell.word.iter().rev() {
        let dup = v[j];
        v.insert(j + 1, dup);
    }
    v
}

/// Close a set of generators under faces and return the full generator set.
pub fn face_closure(ss: &SimplicialSet, seed: &BTreeSet<GenId>) -> BTreeSet<GenId> {
    let mut closed = seed.clone();
    let mut stack: Vec<GenId> = seed.iter().copied().collect();
    while let Some(id) = stack.pop() {
        for f in &ss.generator(id).faces {
            if closed.insert(f.base) {
                stack.push(f.base);
            }
        }
    }
    closed
}

/// Subcomplex spanned by a face-closed set of generators, with its inclusion.
/// Fails if the set is not closed under faces.
pub fn subcomplex(ss: &Ss, keep: &BTreeSet<GenId>) -> Result<(Ss, SimplicialMap)> {
    for id in keep {
        if id.idx >= ss.gen_count(id.dim) {
            return Err(Error::InvalidInput { reason: format!("unknown generator {id:?}") });
        }
        for f in &ss.generator(*id).faces {
            if !keep.contains(&f.base) {
                return Err(Error::InvalidInput {
                    reason: format!(
                        "generator set not closed under faces: {} needs {}",
                        ss.gen_name(*id),
                        ss.gen_name(f.base)
                    ),
                });
            }
        }
    }
    let top = keep.iter().map(|id| id.dim).max().unwrap_or(0);
    // Old index -> new index per dim, preserving order.
    let mut reindex: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|d| vec![None; ss.gen_count(d)])
        .collect();
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
    for d in 0..=top {
        for idx in 0..ss.gen_count(d) {
            let id = GenId { dim: d, idx };
            if !keep.contains(&id) {
                continue;
            }
            reindex[d][idx] = Some(gens[d].len());
            let g = ss.generator(id);
            let faces = g
                .faces
                .iter()
                .map(|f| Cell {
                    word: f.word.clone(),
                    base: GenId {
                        dim: f.base.dim,
                        idx: reindex[f.base.dim][f.base.idx].expect("face kept"),
                    },
                })
                .collect();
            gens[d].push(Generator { name: g.name.clone(), faces });
        }
    }
    let sub = SimplicialSet::build(gens, ss.truncated_at(), None)?;
    let assign: Vec<Vec<Cell>> = (0..=top)
        .map(|d| {
            (0..sub.gen_count(d))
                .map(|new_idx| {
                    let name = sub.gen_name(GenId { dim: d, idx: new_idx });
                    let old = ss.gen_by_name(d, name).expect("subcomplex generator exists");
                    Cell::of_gen(old)
                })
                .collect()
        })
        .collect();
    let incl = SimplicialMap::new(sub.clone(), ss.clone(), assign)?;
    Ok((sub, incl))
}

/// n-skeleton as a subcomplex (generators of dimension <= n) with inclusion.
pub fn skeleton(ss: &Ss, n: usize) -> Result<(Ss, SimplicialMap)> {
    let keep: BTreeSet<GenId> = (0..=n.min(ss.top_dim()))
        .flat_map(|d| ss.gen_ids(d))
        .collect();
    if keep.is_empty() {
        return SimplicialSet::build(vec![], ss.truncated_at(), None).and_then(|sub| {
            let incl = SimplicialMap::new(sub.clone(), ss.clone(), vec![])?;
            Ok((sub, incl))
        });
    }
    subcomplex(ss, &keep)
}

/// Disjoint union; generator names are prefixed with the given labels.
/// Returns the coproduct and the coprojections.
pub fn coproduct(parts: &[(String, Ss)]) -> Result<(Ss, Vec<SimplicialMap>)> {
    if parts.is_empty() {
        return Err(Error::EmptyInput { reason: "coproduct of no parts".into() });
    }
    let top = parts.iter().map(|(_, p)| p.top_dim()).max().unwrap();
    let trunc = parts.iter().filter_map(|(_, p)| p.truncated_at()).min();
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
    // offsets[part][dim]
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for (label, part) in parts {
        let mut offs = Vec::with_capacity(top + 1);
        for d in 0..=top {
            offs.push(gens[d].len());
            for idx in 0..part.gen_count(d) {
                let g = part.generator(GenId { dim: d, idx });
                let faces = g
                    .faces
                    .iter()
                    .map(|f| Cell {
                        word: f.word.clone(),
                        base: GenId { dim: f.base.dim, idx: f.base.idx + offs[f.base.dim] },
                    })
                    .collect();
                gens[d].push(Generator { name: format!("{label}:{}", g.name), faces });
            }
        }
        offsets.push(offs);
    }
    let sum = SimplicialSet::build(gens, trunc, None)?;
    let mut incls = Vec::with_capacity(parts.len());
    for (p, (_, part)) in parts.iter().enumerate() {
        let assign: Vec<Vec<Cell>> = (0..=part.top_dim())
            .map(|d| {
                (0..part.gen_count(d))
                    .map(|idx| Cell::of_gen(GenId { dim: d, idx: idx + offsets[p][d] }))
                    .collect()
            })
            .collect();
        incls.push(SimplicialMap::new(part.clone(), sum.clone(), assign)?);
    }
    Ok((sum, incls))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_two_has_expected_generators() {
        let d2 = simplex(2);
        assert_eq!(d2.gen_count(0), 3);
        assert_eq!(d2.gen_count(1), 3);
        assert_eq!(d2.gen_count(2), 1);
        assert_eq!(d2.gen_count(3), 0);
    }

    #[test]
    fn boundary_and_horn_drop_the_right_cells() {
        let b2 = boundary_simplex(2);
        assert_eq!((b2.gen_count(0), b2.gen_count(1), b2.gen_count(2)), (3, 3, 0));
        let h = horn(2, 1);
        assert_eq!((h.gen_count(0), h.gen_count(1)), (3, 2));
        // Lambda^1[2] keeps 01 and 12, drops 02.
        assert!(h.gen_by_name(1, "01").is_some());
        assert!(h.gen_by_name(1, "12").is_some());
        assert!(h.gen_by_name(1, "02").is_none());
    }

    #[test]
    fn minimal_sphere_validates() {
        for n in 1..=3 {
            let s = sphere_min(n);
            assert_eq!(s.gen_count(0), 1);
            assert_eq!(s.gen_count(n), 1);
        }
    }

    #[test]
    fn simplex_cell_round_trips() {
        let d3 = simplex(3);
        for verts in [vec![0, 2, 3], vec![0, 0, 1], vec![1, 1, 1], vec![0, 1, 2, 3]] {
            let c = simplex_cell(&d3, &verts);
            assert_eq!(simplex_vertices(&d3, &c), verts);
        }
    }

    #[test]
    fn skeleton_of_simplex() {
        let d3 = simplex(3);
        let (sk1, incl) = skeleton(&d3, 1).unwrap();
        assert_eq!((sk1.gen_count(0), sk1.gen_count(1), sk1.gen_count(2)), (4, 6, 0));
        // Inclusion sends edges to edges.
        let e = Cell::of_gen(GenId { dim: 1, idx: 0 });
        assert!(!incl.eval(&e).is_degenerate());
    }

    #[test]
    fn coproduct_counts_add() {
        let (sum, incls) =
            coproduct(&[("a".into(), simplex(1)), ("b".into(), simplex(0))]).unwrap();
        assert_eq!(sum.gen_count(0), 3);
        assert_eq!(sum.gen_count(1), 1);
        assert_eq!(incls.len(), 2);
    }
}
