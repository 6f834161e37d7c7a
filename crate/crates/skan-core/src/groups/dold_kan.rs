//! Eilenberg-MacLane simplicial abelian groups built from a chain complex
//! concentrated in one degree.
//!
//! Level q of the output is one copy of the coefficient group for every
//! monotone surjection from [q] onto [n]. A face or degeneracy operator
//! sends the coordinate indexed by a surjection eta to the coordinate of the
//! composite of eta with the corresponding coface or codegeneracy whenever
//! that composite is still surjective, and discards it otherwise; since the
//! concentrated complex has zero differential there is no correction term.
//! The assembled operator tables are handed to the simplicial-group
//! constructor, which re-verifies every homomorphism axiom and every
//! simplicial identity pointwise.

use super::{decode_tuple, encode_tuple, FinGroup, GroupHom, Sgrp, SimplicialGroup};
use crate::error::{Error, Result};
use crate::sset::standard::strictly_increasing_tuples;
use std::collections::HashMap;

/// A nonnegatively graded chain complex of finite abelian groups with
/// verified boundary homomorphisms composing to zero.
pub struct FinChainComplex {
    pub groups: Vec<FinGroup>,
    /// boundaries[k]: groups[k+1] -> groups[k].
    pub boundaries: Vec<GroupHom>,
}

impl FinChainComplex {
    pub fn new(groups: Vec<FinGroup>, boundaries: Vec<GroupHom>) -> Result<FinChainComplex> {
        if groups.is_empty() {
            return Err(Error::EmptyInput { reason: "chain complex with no degrees".into() });
        }
        for (k, g) in groups.iter().enumerate() {
            if !g.is_abelian() {
                return Err(Error::NotAbelian { level: k });
            }
        }
        if boundaries.len() + 1 != groups.len() {
            return Err(Error::InvalidInput {
                reason: "boundary count does not match the degree count".into(),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            d.validate(&groups[k + 1], &groups[k])?;
        }
        for k in 0..boundaries.len().saturating_sub(1) {
            // boundaries[k+1]: groups[k+2] -> groups[k+1], then boundaries[k].
            for x in 0..groups[k + 2].order() {
                if boundaries[k].apply(boundaries[k + 1].apply(x)) != groups[k].id() {
                    return Err(Error::InvalidInput {
                        reason: format!("boundary composite is nonzero in degree {}", k + 2),
                    });
                }
            }
        }
        Ok(FinChainComplex { groups, boundaries })
    }

    /// The complex with `pi` in degree n and trivial groups elsewhere,
    /// carried through degree `bound`.
    pub fn concentrated(pi: &FinGroup, n: usize, bound: usize) -> Result<FinChainComplex> {
        if bound < n {
            return Err(Error::InsufficientDimensionBound { needed: n, available: bound });
        }
        let groups: Vec<FinGroup> =
            (0..=bound).map(|k| if k == n { pi.clone() } else { FinGroup::trivial() }).collect();
        let boundaries = (0..bound)
            .map(|k| GroupHom { images: vec![groups[k].id(); groups[k + 1].order()] })
            .collect();
        FinChainComplex::new(groups, boundaries)
    }
}

/// Monotone surjections from [q] onto [n] as value lists of length q+1, in
/// lexicographic order of their jump positions.
pub fn monotone_surjections(q: usize, n: usize) -> Vec<Vec<usize>> {
    if n > q {
        return Vec::new();
    }
    if n == 0 {
        return vec![vec![0; q + 1]];
    }
    strictly_increasing_tuples(q - 1, n)
        .into_iter()
        .map(|jumps| {
            // jumps[j] = position p means the value increases between p and p+1.
            let mut vals = Vec::with_capacity(q + 1);
            let mut v = 0;
            for p in 0..=q {
                if p >= 1 && jumps.get(v).is_some_and(|&j| j == p - 1) {
                    v += 1;
                }
                vals.push(v);
            }
            vals
        })
        .collect()
}

fn is_surjection_onto(vals: &[usize], n: usize) -> bool {
    vals.first() == Some(&0)
        && vals.last() == Some(&n)
        && vals.windows(2).all(|w| w[1] - w[0] <= 1)
}

/// Eilenberg-MacLane simplicial abelian group with homotopy `pi` in degree
/// n, materialized through level `bound`.
pub fn dold_kan_em(pi: &FinGroup, n: usize, bound: usize) -> Result<Sgrp> {
    // The concentrated complex re-validates the coefficient group; keep its
    // degree labeling for error reporting.
    let complex = FinChainComplex::concentrated(pi, n, bound)?;
    let pi = &complex.groups[n];

    let surjs: Vec<Vec<Vec<usize>>> = (0..=bound).map(|q| monotone_surjections(q, n)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = surjs
        .iter()
        .map(|level| level.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();

    let levels: Vec<FinGroup> = (0..=bound)
        .map(|q| {
            let k = surjs[q].len();
            let orders = vec![pi.order(); k];
            let total: usize = orders.iter().product();
            let names = (0..total)
                .map(|i| {
                    let t = decode_tuple(&orders, i);
                    let parts: Vec<&str> = t.iter().map(|&x| pi.elem_name(x)).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            let mul = (0..total)
                .map(|x| {
                    let tx = decode_tuple(&orders, x);
                    (0..total)
                        .map(|y| {
                            let ty = decode_tuple(&orders, y);
                            let sum: Vec<usize> =
                                tx.iter().zip(&ty).map(|(&a, &b)| pi.mul(a, b)).collect();
                            encode_tuple(&orders, &sum)
                        })
                        .collect()
                })
                .collect();
            FinGroup::new(format!("EM{q}"), names, mul)
        })
        .collect::<Result<_>>()?;

    // A coordinate transfer: each source surjection either lands on a target
    // surjection (after composing with the coface/codegeneracy) and adds its
    // coordinate there, or drops out.
    let transfer = |q_src: usize, q_dst: usize, compose: &dyn Fn(&[usize]) -> Vec<usize>| {
        let src_orders = vec![pi.order(); surjs[q_src].len()];
        let dst_orders = vec![pi.order(); surjs[q_dst].len()];
        let routes: Vec<Option<usize>> = surjs[q_src]
            .iter()
            .map(|eta| {
                let composed = compose(eta);
                if is_surjection_onto(&composed, n) {
                    Some(index[q_dst][&composed])
                } else {
                    None
                }
            })
            .collect();
        GroupHom {
            images: (0..levels[q_src].order())
                .map(|x| {
                    let t = decode_tuple(&src_orders, x);
                    let mut out = vec![pi.id(); surjs[q_dst].len()];
                    for (c, route) in routes.iter().enumerate() {
                        if let Some(dst) = route {
                            out[*dst] = pi.mul(out[*dst], t[c]);
                        }
                    }
                    encode_tuple(&dst_orders, &out)
                })
                .collect(),
        }
    };

    let faces = (0..=bound)
        .map(|q| {
            if q == 0 {
                Vec::new()
            } else {
                (0..=q)
                    .map(|i| {
                        transfer(q, q - 1, &|eta: &[usize]| {
                            let mut v = eta.to_vec();
                            v.remove(i);
                            v
                        })
                    })
                    .collect()
            }
        })
        .collect();
    let degens = (0..=bound)
        .map(|q| {
            if q == bound {
                Vec::new()
            } else {
                (0..=q)
                    .map(|j| {
                        transfer(q, q + 1, &|eta: &[usize]| {
                            let mut v = eta.to_vec();
                            v.insert(j, eta[j]);
                            v
                        })
                    })
                    .collect()
            }
        })
        .collect();
    SimplicialGroup::new(levels, faces, degens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::wbar::{wbar, wbar_iter};
    use crate::groups::{const_sgroup, underlying};
    use crate::invariants::homology;
    use crate::sset::homs::find_iso;

    #[test]
    fn surjection_enumeration_matches_binomial_counts() {
        assert_eq!(monotone_surjections(0, 0), vec![vec![0]]);
        assert_eq!(monotone_surjections(2, 1).len(), 2);
        assert_eq!(monotone_surjections(4, 2).len(), 6);
        assert!(monotone_surjections(1, 2).is_empty());
        for s in monotone_surjections(4, 2) {
            assert!(is_surjection_onto(&s, 2));
        }
    }

    #[test]
    fn chain_complexes_reject_nonzero_composites_and_nonabelian_degrees() {
        let z2 = FinGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&z2);
        let zero = GroupHom { images: vec![0; 2] };
        assert!(FinChainComplex::new(
            vec![z2.clone(), z2.clone(), z2.clone()],
            vec![id.clone(), zero.clone()]
        )
        .is_ok());
        match FinChainComplex::new(
            vec![z2.clone(), z2.clone(), z2.clone()],
            vec![id.clone(), id.clone()],
        ) {
            Err(Error::InvalidInput { .. }) => {}
            _ => panic!("expected the nonzero composite to be rejected"),
        }
        let s3 = FinGroup::symmetric(3).unwrap();
        match FinChainComplex::new(vec![s3], vec![]) {
            Err(Error::NotAbelian { level: 0 }) => {}
            _ => panic!("expected the nonabelian degree to be rejected"),
        }
    }

    #[test]
    fn degree_zero_gives_the_constant_group() {
        let z2 = FinGroup::cyclic(2).unwrap();
        let em = dold_kan_em(&z2, 0, 3).unwrap();
        let c = const_sgroup(&z2, 3).unwrap();
        let iso = find_iso(&underlying(&em).unwrap().ss, &underlying(&c).unwrap().ss).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn degree_one_recovers_the_classifying_space() {
        let z2 = FinGroup::cyclic(2).unwrap();
        let em = dold_kan_em(&z2, 1, 3).unwrap();
        let orders: Vec<usize> = (0..=3).map(|q| em.level(q).order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 8]);
        let w = wbar(&const_sgroup(&z2, 2).unwrap(), 3).unwrap();
        let iso = find_iso(&underlying(&em).unwrap().ss, w.ss()).unwrap();
        assert!(iso.is_some());
        let h = homology(&underlying(&em).unwrap().ss, 2).unwrap();
        assert_eq!(h[1].describe(), "Z/2");
        assert_eq!(h[2].describe(), "0");
    }

    #[test]
    fn degree_two_matches_the_iterated_classifying_group() {
        let z3 = FinGroup::cyclic(3).unwrap();
        let em = dold_kan_em(&z3, 2, 3).unwrap();
        let orders: Vec<usize> = (0..=3).map(|q| em.level(q).order()).collect();
        assert_eq!(orders, vec![1, 1, 3, 27]);
        let h = homology(&underlying(&em).unwrap().ss, 2).unwrap();
        assert_eq!(h[1].describe(), "0");
        assert_eq!(h[2].describe(), "Z/3");

        // Against the tower: same level profile and the same homology.
        let z2 = FinGroup::cyclic(2).unwrap();
        let em2 = dold_kan_em(&z2, 2, 4).unwrap();
        let t2 = wbar_iter(&const_sgroup(&z2, 3).unwrap(), 2, 4).unwrap();
        let em_counts: Vec<usize> =
            (0..=4).map(|q| underlying(&em2).unwrap().ss.cell_count(q).unwrap()).collect();
        let tw_counts: Vec<usize> = (0..=4).map(|q| t2.real.ss.cell_count(q).unwrap()).collect();
        assert_eq!(em_counts, tw_counts);
        assert_eq!(em_counts, vec![1, 1, 2, 8, 64]);
        let he = homology(&underlying(&em2).unwrap().ss, 3).unwrap();
        let ht = homology(&t2.real.ss, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(he[k].describe(), ht[k].describe(), "degree {k}");
        }
    }

    #[test]
    fn preconditions_are_reported() {
        let z2 = FinGroup::cyclic(2).unwrap();
        match dold_kan_em(&z2, 3, 2) {
            Err(Error::InsufficientDimensionBound { needed: 3, available: 2 }) => {}
            _ => panic!("expected a dimension bound failure"),
        }
        let s3 = FinGroup::symmetric(3).unwrap();
        match dold_kan_em(&s3, 1, 2) {
            Err(Error::NotAbelian { level: 1 }) => {}
            _ => panic!("expected a non-abelian rejection"),
        }
    }
}
