//! Loop group of a reduced simplicial set, presented by generators and
//! substitution operators.
//!
//! Level n of the loop group is the free group on the (n+1)-cells of the
//! input that are not images of the leading degeneracy; those images are the
//! killed letters and substitute to the empty word. Faces and degeneracies
//! are recorded as words over the adjacent level's letters:
//!
//!   d_0[z] = [d_1 z] * [d_0 z]^{-1},   d_i[z] = [d_{i+1} z]  (i >= 1),
//!   s_i[z] = [s_{i+1} z].
//!
//! All simplicial identities are re-verified on the generators by free
//! reduction of the substituted words; a violation is an implementation bug
//! and is reported as a cross-check mismatch.

use crate::error::{Error, Result};
use crate::invariants::fpgroup::{free_reduce, invert_word, FpGroup};
use crate::sset::{Cell, Ss};
use std::collections::HashMap;

/// A levelwise free presentation of a simplicial group: free groups of
/// letters plus face and degeneracy substitution tables.
pub struct SimplicialGroupPresentation {
    levels: Vec<FpGroup>,
    /// The input cell behind each letter, per level.
    pub gen_cells: Vec<Vec<Cell>>,
    /// faces[n][i][k]: image of letter k of level n under d_i, as a word.
    faces: Vec<Vec<Vec<Vec<i32>>>>,
    /// degens[n][i][k]: image of letter k of level n under s_i, as a word.
    degens: Vec<Vec<Vec<Vec<i32>>>>,
}

fn substitute(table: &[Vec<i32>], word: &[i32]) -> Vec<i32> {
    let mut out = Vec::new();
    for &l in word {
        if l > 0 {
            out.extend_from_slice(&table[(l - 1) as usize]);
        } else {
            out.extend_from_slice(&invert_word(&table[(-l - 1) as usize]));
        }
    }
    free_reduce(&out)
}

impl SimplicialGroupPresentation {
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FpGroup {
        &self.levels[n]
    }

    /// Apply d_i: level n -> level n-1 to a word by substitution.
    pub fn face_word(&self, n: usize, i: usize, word: &[i32]) -> Vec<i32> {
        substitute(&self.faces[n][i], word)
    }

    /// Apply s_i: level n -> level n+1 to a word by substitution.
    pub fn degen_word(&self, n: usize, i: usize, word: &[i32]) -> Vec<i32> {
        substitute(&self.degens[n][i], word)
    }

    fn validate(&self) -> Result<()> {
        let top = self.top();
        let bad = |identity: &str, n: usize, k: usize| Error::CrossCheckMismatch {
            construction: "kan_loop_group".into(),
            detail: format!("{identity} fails on letter {k} of level {n}"),
        };
        for n in 2..=top {
            for k in 0..self.levels[n].n_gens() {
                let g = vec![k as i32 + 1];
                for j in 0..=n {
                    for i in 0..j {
                        if self.face_word(n - 1, i, &self.face_word(n, j, &g))
                            != self.face_word(n - 1, j - 1, &self.face_word(n, i, &g))
                        {
                            return Err(bad("d_i d_j = d_{j-1} d_i", n, k));
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for k in 0..self.levels[n].n_gens() {
                let g = vec![k as i32 + 1];
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = self.face_word(n + 1, i, &self.degen_word(n, j, &g));
                        let rhs = if i < j {
                            self.degen_word(n - 1, j - 1, &self.face_word(n, i, &g))
                        } else if i == j || i == j + 1 {
                            g.clone()
                        } else {
                            self.degen_word(n - 1, j, &self.face_word(n, i - 1, &g))
                        };
                        if lhs != rhs {
                            return Err(bad("d_i s_j exchange", n, k));
                        }
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for k in 0..self.levels[n].n_gens() {
                let g = vec![k as i32 + 1];
                for j in 0..=n {
                    for i in 0..=j {
                        if self.degen_word(n + 1, j + 1, &self.degen_word(n, i, &g))
                            != self.degen_word(n + 1, i, &self.degen_word(n, j, &g))
                        {
                            return Err(bad("s_i s_j = s_{j+1} s_i", n, k));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Loop group of a reduced simplicial set, with levels 0..=top. Requires
/// cell data through dimension top+1.
pub fn kan_loop_group(y: &Ss, top: usize) -> Result<SimplicialGroupPresentation> {
    y.ensure_available(top + 1)?;
    if y.cell_count(0)? != 1 {
        return Err(Error::NotReduced { n: 0 });
    }

    // Letters of level n: the (n+1)-cells not hit by the leading degeneracy,
    // i.e. whose degeneracy word does not end in 0.
    let mut letters: Vec<Vec<Cell>> = Vec::with_capacity(top + 1);
    let mut index: Vec<HashMap<Cell, usize>> = Vec::with_capacity(top + 1);
    for n in 0..=top + 1 {
        let level: Vec<Cell> =
            y.cells(n)?.into_iter().filter(|c| c.word.last() != Some(&0)).collect();
        let map = level.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
        if n >= 1 {
            letters.push(level);
            index.push(map);
        } else {
            debug_assert!(level.len() == 1);
        }
    }

    let letter_word = |n: usize, c: &Cell| -> Vec<i32> {
        if c.word.last() == Some(&0) {
            Vec::new()
        } else {
            vec![index[n][c] as i32 + 1]
        }
    };

    let mut faces: Vec<Vec<Vec<Vec<i32>>>> = Vec::with_capacity(top + 1);
    let mut degens: Vec<Vec<Vec<Vec<i32>>>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut fs = Vec::new();
        if n >= 1 {
            for i in 0..=n {
                fs.push(
                    letters[n]
                        .iter()
                        .map(|z| {
                            if i == 0 {
                                let mut w = letter_word(n - 1, &y.face(z, 1));
                                w.extend(invert_word(&letter_word(n - 1, &y.face(z, 0))));
                                free_reduce(&w)
                            } else {
                                letter_word(n - 1, &y.face(z, i + 1))
                            }
                        })
                        .collect(),
                );
            }
        }
        faces.push(fs);
        let mut ds = Vec::new();
        if n < top {
            for i in 0..=n {
                ds.push(
                    letters[n]
                        .iter()
                        .map(|z| letter_word(n + 1, &z.degenerate(i + 1)))
                        .collect(),
                );
            }
        }
        degens.push(ds);
    }

    let levels = letters
        .iter()
        .take(top + 1)
        .map(|level| {
            FpGroup::new(level.iter().map(|c| y.cell_name(c)).collect(), Vec::new())
        })
        .collect();
    let p = SimplicialGroupPresentation {
        levels,
        gen_cells: letters.into_iter().take(top + 1).collect(),
        faces,
        degens,
    };
    p.validate()?;
    Ok(p)
}

/// Fundamental presentation read off the bottom of a loop group: level-0
/// letters with one relator d_0[z] * d_1[z]^{-1} per level-1 letter.
pub fn loop_pi0(p: &SimplicialGroupPresentation) -> Result<FpGroup> {
    if p.top() < 1 {
        return Err(Error::InsufficientDimensionBound { needed: 1, available: p.top() });
    }
    let mut relators = Vec::new();
    for k in 0..p.levels[1].n_gens() {
        let g = vec![k as i32 + 1];
        let mut w = p.face_word(1, 0, &g);
        w.extend(invert_word(&p.face_word(1, 1, &g)));
        relators.push(free_reduce(&w));
    }
    Ok(FpGroup::new(p.levels[0].gen_names.clone(), relators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{circle_min, simplex, sphere_min};

    #[test]
    fn loop_group_of_the_point_is_trivial() {
        let p = kan_loop_group(&simplex(0), 2).unwrap();
        for n in 0..=2 {
            assert_eq!(p.level(n).n_gens(), 0, "level {n}");
        }
        assert_eq!(loop_pi0(&p).unwrap().order(1000).unwrap(), 1);
    }

    #[test]
    fn loop_group_of_the_circle_presents_the_integers() {
        let p = kan_loop_group(&circle_min(), 2).unwrap();
        // One letter per level: the edge and its 0-free degeneracies.
        for n in 0..=2 {
            assert_eq!(p.level(n).n_gens(), 1, "level {n}");
            assert!(p.level(n).is_visibly_free());
        }
        let pi = loop_pi0(&p).unwrap();
        let ab = pi.abelianization();
        assert_eq!(ab.free_rank, 1);
        assert!(ab.torsion.is_empty());
    }

    #[test]
    fn loop_group_of_a_minimal_two_sphere_shifts_the_cells_down() {
        let p = kan_loop_group(&sphere_min(2), 2).unwrap();
        let ranks: Vec<usize> = (0..=2).map(|n| p.level(n).n_gens()).collect();
        assert_eq!(ranks, vec![0, 1, 2]);
        assert_eq!(loop_pi0(&p).unwrap().order(1000).unwrap(), 1);
    }

    #[test]
    fn unreduced_input_is_rejected() {
        match kan_loop_group(&simplex(1), 1) {
            Err(Error::NotReduced { n: 0 }) => {}
            _ => panic!("expected a reduction failure"),
        }
    }
}
