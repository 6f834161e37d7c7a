//! Levelwise-finite simplicial groups: explicit multiplication tables,
//! verified homomorphisms as simplicial operators, the classifying
//! construction and its iterates, loop-group presentations, Eilenberg-MacLane
//! objects via Dold-Kan, the canonical degree-zero sequence, and Postnikov
//! stages.

pub mod dold_kan;
pub mod loop_group;
pub mod postnikov;
pub mod wbar;

use crate::error::{Error, Result};
use crate::sset::build::{from_raw, RawSimplicial, Realization};
use std::sync::Arc;

/// A finite group as an explicit multiplication table over named elements.
#[derive(Clone, Debug)]
pub struct FinGroup {
    pub name: String,
    elem_names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

impl FinGroup {
    /// Validate a table: closure by shape, a two-sided identity, two-sided
    /// inverses, and full associativity.
    pub fn new(name: String, elem_names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<FinGroup> {
        let n = elem_names.len();
        if n == 0 {
            return Err(Error::EmptyInput { reason: "group with no elements".into() });
        }
        for (i, a) in elem_names.iter().enumerate() {
            if elem_names[..i].contains(a) {
                return Err(Error::InvalidInput {
                    reason: format!("duplicate element name {a:?} in group {name}"),
                });
            }
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput {
                reason: format!("multiplication table of {name} is not {n}x{n}"),
            });
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidInput {
                reason: format!("multiplication table of {name} has out-of-range entries"),
            });
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::InvalidInput { reason: format!("{name} has no identity") })?;
        let inv = (0..n)
            .map(|x| {
                (0..n).find(|&y| mul[x][y] == id && mul[y][x] == id).ok_or_else(|| {
                    Error::InvalidInput {
                        reason: format!("{} in {name} has no inverse", elem_names[x]),
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidInput {
                            reason: format!("associativity fails in {name}"),
                        });
                    }
                }
            }
        }
        Ok(FinGroup { name, elem_names, mul, inv, id })
    }

    pub fn order(&self) -> usize {
        self.elem_names.len()
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elem_name(&self, i: usize) -> &str {
        &self.elem_names[i]
    }

    pub fn elem_by_name(&self, name: &str) -> Option<usize> {
        self.elem_names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn trivial() -> FinGroup {
        FinGroup {
            name: "1".into(),
            elem_names: vec!["e".into()],
            mul: vec![vec![0]],
            inv: vec![0],
            id: 0,
        }
    }

    /// Cyclic group of order n; element k is named `e` or `t{k}`.
    pub fn cyclic(n: usize) -> Result<FinGroup> {
        if n == 0 {
            return Err(Error::EmptyInput { reason: "cyclic group of order zero".into() });
        }
        let names = (0..n)
            .map(|k| if k == 0 { "e".to_string() } else { format!("t{k}") })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(format!("Z{n}"), names, mul)
    }

    /// Symmetric group on n letters; elements are permutations in
    /// lexicographic one-line order, named by their one-line notation.
    pub fn symmetric(n: usize) -> Result<FinGroup> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidInput {
                reason: "symmetric groups are materialized for 1..=6 letters".into(),
            });
        }
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in perms {
                let k = p.len();
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let names: Vec<String> = perms
            .iter()
            .map(|p| {
                let digits: String = p.iter().map(|d| d.to_string()).collect();
                format!("p{digits}")
            })
            .collect();
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a * b)(x) = a(b(x)): apply b first.
                        let c: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        FinGroup::new(format!("S{n}"), names, mul)
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Result<FinGroup> {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na * nb)
            .map(|i| format!("({},{})", a.elem_name(i / nb), b.elem_name(i % nb)))
            .collect();
        let mul = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        FinGroup::new(format!("{}x{}", a.name, b.name), names, mul)
    }
}

/// Positional mixed-radix codec for tuples drawn from groups of the given
/// orders; position 0 is most significant so enumeration order is
/// lexicographic.
pub(crate) fn encode_tuple(orders: &[usize], t: &[usize]) -> usize {
    debug_assert_eq!(orders.len(), t.len());
    t.iter().zip(orders).fold(0, |acc, (&v, &o)| acc * o + v)
}

pub(crate) fn decode_tuple(orders: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for (slot, &o) in out.iter_mut().zip(orders).rev() {
        *slot = idx % o;
        idx /= o;
    }
    out
}

/// A homomorphism between finite groups, stored as the image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn new(src: &FinGroup, dst: &FinGroup, images: Vec<usize>) -> Result<GroupHom> {
        let h = GroupHom { images };
        h.validate(src, dst)?;
        Ok(h)
    }

    pub fn identity(g: &FinGroup) -> GroupHom {
        GroupHom { images: (0..g.order()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn validate(&self, src: &FinGroup, dst: &FinGroup) -> Result<()> {
        if self.images.len() != src.order() || self.images.iter().any(|&v| v >= dst.order()) {
            return Err(Error::InvalidInput {
                reason: format!("map shape does not match {} -> {}", src.name, dst.name),
            });
        }
        for a in 0..src.order() {
            for b in 0..src.order() {
                if self.images[src.mul(a, b)] != dst.mul(self.images[a], self.images[b]) {
                    return Err(Error::InvalidInput {
                        reason: format!(
                            "not a homomorphism {} -> {} at {} * {}",
                            src.name,
                            dst.name,
                            src.elem_name(a),
                            src.elem_name(b)
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

pub type Sgrp = Arc<SimplicialGroup>;

/// A simplicial group given through a level bound: one finite group per
/// level and verified homomorphisms for every face and degeneracy operator.
#[derive(Clone, Debug)]
pub struct SimplicialGroup {
    levels: Vec<FinGroup>,
    faces: Vec<Vec<GroupHom>>,
    degens: Vec<Vec<GroupHom>>,
}

impl SimplicialGroup {
    /// `faces[n][i]` is d_i: G_n -> G_{n-1} (n >= 1); `degens[n][i]` is
    /// s_i: G_n -> G_{n+1} (n < top). All homomorphism axioms and all
    /// simplicial identities are checked pointwise on every element.
    pub fn new(
        levels: Vec<FinGroup>,
        faces: Vec<Vec<GroupHom>>,
        degens: Vec<Vec<GroupHom>>,
    ) -> Result<Sgrp> {
        if levels.is_empty() {
            return Err(Error::EmptyInput { reason: "simplicial group with no levels".into() });
        }
        let top = levels.len() - 1;
        if faces.len() != levels.len() || degens.len() != levels.len() {
            return Err(Error::InvalidInput {
                reason: "operator tables do not match the level count".into(),
            });
        }
        for n in 0..=top {
            let expect_faces = if n == 0 { 0 } else { n + 1 };
            let expect_degens = if n == top { 0 } else { n + 1 };
            if faces[n].len() != expect_faces || degens[n].len() != expect_degens {
                return Err(Error::InvalidInput {
                    reason: format!("operator count at level {n} is wrong"),
                });
            }
            for h in &faces[n] {
                h.validate(&levels[n], &levels[n - 1])?;
            }
            for h in &degens[n] {
                h.validate(&levels[n], &levels[n + 1])?;
            }
        }
        let g = SimplicialGroup { levels, faces, degens };
        g.validate_identities()?;
        Ok(Arc::new(g))
    }

    fn validate_identities(&self) -> Result<()> {
        let top = self.top();
        let bad = |identity: &str, n: usize| Error::SimplicialIdentityViolation {
            identity: identity.to_string(),
            generator: format!("level {n}"),
        };
        for n in 2..=top {
            for j in 0..=n {
                for i in 0..j {
                    for x in 0..self.levels[n].order() {
                        if self.face(n - 1, i, self.face(n, j, x))
                            != self.face(n - 1, j - 1, self.face(n, i, x))
                        {
                            return Err(bad("d_i d_j = d_{j-1} d_i", n));
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.levels[n].order() {
                        let lhs = self.face(n + 1, i, self.degen(n, j, x));
                        let rhs = if i < j {
                            self.degen(n - 1, j - 1, self.face(n, i, x))
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.degen(n - 1, j, self.face(n, i - 1, x))
                        };
                        if lhs != rhs {
                            return Err(bad("d_i s_j exchange", n));
                        }
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.levels[n].order() {
                        if self.degen(n + 1, j + 1, self.degen(n, i, x))
                            != self.degen(n + 1, i, self.degen(n, j, x))
                        {
                            return Err(bad("s_i s_j = s_{j+1} s_i", n));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinGroup {
        &self.levels[n]
    }

    pub fn ensure_level(&self, n: usize) -> Result<()> {
        if n <= self.top() {
            Ok(())
        } else {
            Err(Error::InsufficientDimensionBound { needed: n, available: self.top() })
        }
    }

    /// d_i: G_n -> G_{n-1}.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i].apply(x)
    }

    /// s_i: G_n -> G_{n+1}.
    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i].apply(x)
    }

    /// Canonical embedding of G_0 into G_n by iterated degeneracies (all
    /// composites agree by the simplicial identities).
    pub fn embed_vertex(&self, n: usize, h: usize) -> usize {
        let mut v = h;
        for k in 0..n {
            v = self.degen(k, 0, v);
        }
        v
    }

    pub fn is_levelwise_abelian(&self) -> bool {
        self.levels.iter().all(|g| g.is_abelian())
    }
}

pub fn const_sgroup(h: &FinGroup, top: usize) -> Result<Sgrp> {
    let levels: Vec<FinGroup> = (0..=top).map(|_| h.clone()).collect();
    let faces = (0..=top)
        .map(|n| if n == 0 { Vec::new() } else { vec![GroupHom::identity(h); n + 1] })
        .collect();
    let degens = (0..=top)
        .map(|n| if n == top { Vec::new() } else { vec![GroupHom::identity(h); n + 1] })
        .collect();
    SimplicialGroup::new(levels, faces, degens)
}

/// Levelwise direct product with componentwise operators.
pub fn product_sgroup(a: &Sgrp, b: &Sgrp) -> Result<Sgrp> {
    let top = a.top().min(b.top());
    let levels: Vec<FinGroup> = (0..=top)
        .map(|n| FinGroup::direct_product(a.level(n), b.level(n)))
        .collect::<Result<_>>()?;
    let pair_hom = |n: usize, to: usize, ha: &GroupHom, hb: &GroupHom| {
        let nb_src = b.level(n).order();
        let nb_dst = b.level(to).order();
        GroupHom {
            images: (0..a.level(n).order() * nb_src)
                .map(|x| ha.apply(x / nb_src) * nb_dst + hb.apply(x % nb_src))
                .collect(),
        }
    };
    let faces = (0..=top)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| pair_hom(n, n - 1, &a.faces[n][i], &b.faces[n][i])).collect()
            }
        })
        .collect();
    let degens = (0..=top)
        .map(|n| {
            if n == top {
                Vec::new()
            } else {
                (0..=n).map(|i| pair_hom(n, n + 1, &a.degens[n][i], &b.degens[n][i])).collect()
            }
        })
        .collect();
    SimplicialGroup::new(levels, faces, degens)
}

/// The underlying simplicial set of a simplicial group: elements are group
/// element indices, operators act through the stored homomorphisms.
pub struct RawUnderlying {
    g: Sgrp,
}

impl RawSimplicial for RawUnderlying {
    type Elem = usize;
    fn max_dim(&self) -> usize {
        self.g.top()
    }
    fn elems(&self, dim: usize) -> Result<Vec<usize>> {
        Ok((0..self.g.level(dim).order()).collect())
    }
    fn face(&self, dim: usize, e: &usize, i: usize) -> Result<usize> {
        Ok(self.g.face(dim, i, *e))
    }
    fn degeneracy(&self, dim: usize, e: &usize, i: usize) -> Result<usize> {
        Ok(self.g.degen(dim, i, *e))
    }
    fn name(&self, dim: usize, e: &usize) -> String {
        self.g.level(dim).elem_name(*e).to_string()
    }
    fn truncation(&self) -> Option<usize> {
        if self.g.levels.iter().all(|g| g.order() == 1) {
            None
        } else {
            Some(self.g.top())
        }
    }
}

pub fn underlying(g: &Sgrp) -> Result<Realization<RawUnderlying>> {
    from_raw(RawUnderlying { g: g.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_groups_validate_and_expose_structure() {
        let z4 = FinGroup::cyclic(4).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.mul(3, 2), 1);
        assert_eq!(z4.inv(3), 1);
        assert!(z4.is_abelian());
        let s3 = FinGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.elem_name(s3.id()), "p012");
        // A broken table is rejected.
        let bad = FinGroup::new(
            "bad".into(),
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn homomorphisms_are_checked() {
        let z4 = FinGroup::cyclic(4).unwrap();
        let z2 = FinGroup::cyclic(2).unwrap();
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn constant_groups_and_products_validate() {
        let z2 = FinGroup::cyclic(2).unwrap();
        let c = const_sgroup(&z2, 4).unwrap();
        assert_eq!(c.top(), 4);
        assert_eq!(c.face(3, 1, 1), 1);
        let p = product_sgroup(&c, &c).unwrap();
        assert_eq!(p.level(2).order(), 4);
        assert!(p.is_levelwise_abelian());
    }

    #[test]
    fn underlying_point_group_is_complete_point() {
        let t = const_sgroup(&FinGroup::trivial(), 3).unwrap();
        let real = underlying(&t).unwrap();
        assert!(real.ss.truncated_at().is_none());
        assert_eq!(real.ss.cell_count(5).unwrap(), 1);
    }

    #[test]
    fn underlying_nontrivial_group_respects_bounds() {
        let z3 = FinGroup::cyclic(3).unwrap();
        let c = const_sgroup(&z3, 2).unwrap();
        let real = underlying(&c).unwrap();
        assert_eq!(real.ss.truncated_at(), Some(2));
        assert_eq!(real.ss.cell_count(1).unwrap(), 3);
        // Constant vertically: every higher simplex is degenerate, so the
        // only generators are the three vertices.
        assert_eq!(real.ss.gen_ids(1).count(), 0);
        assert_eq!(real.ss.gen_ids(0).count(), 3);
    }
}
