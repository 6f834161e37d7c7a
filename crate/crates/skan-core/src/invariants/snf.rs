//! Smith normal form over the integers, for homology and abelianizations.
//!
//! Small dense matrices only; pivots are chosen smallest-in-magnitude to
//! keep intermediate entries tame at this scale.

/// Rank and invariant factors (diagonal entries > 0 in divisibility order)
/// of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub rank: usize,
    pub factors: Vec<u64>,
}

impl Snf {
    /// Invariant factors greater than one (the torsion part).
    pub fn torsion(&self) -> Vec<u64> {
        self.factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn smith_normal_form(mut m: Vec<Vec<i64>>) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0usize;
    let mut factors: Vec<u64> = Vec::new();
    while r < rows.min(cols) {
        // Find the nonzero entry of smallest magnitude in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in r..rows {
            for j in r..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(r, pj);
        }
        // Clear row and column r by remainder steps, restarting when a
        // smaller remainder shows up.
        loop {
            let mut clean = true;
            for i in r + 1..rows {
                if m[i][r] != 0 {
                    let q = div_nearest(m[i][r], m[r][r]);
                    for j in r..cols {
                        m[i][j] -= q * m[r][j];
                    }
                    if m[i][r] != 0 {
                        m.swap(r, i);
                        clean = false;
                    }
                }
            }
            for j in r + 1..cols {
                if m[r][j] != 0 {
                    let q = div_nearest(m[r][j], m[r][r]);
                    for row in m.iter_mut().take(rows).skip(r) {
                        row[j] -= q * row[r];
                    }
                    if m[r][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(r, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // Divisibility: the pivot must divide every remaining entry.
        let p = m[r][r];
        let mut fixed = false;
        'outer: for i in r + 1..rows {
            for j in r + 1..cols {
                if m[i][j] % p != 0 {
                    // Fold that row into the pivot row and redo this step.
                    for j2 in r..cols {
                        m[r][j2] += m[i][j2];
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        factors.push(p.unsigned_abs());
        r += 1;
    }
    Snf { rank: factors.len(), factors }
}

/// Quotient rounding to nearest, so remainders have magnitude <= |b|/2.
fn div_nearest(a: i64, b: i64) -> i64 {
    let q = a / b;
    let rem = a - q * b;
    if 2 * rem.abs() > b.abs() {
        q + if (rem < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_is_its_own_form() {
        let s = smith_normal_form(vec![vec![2, 0], vec![0, 6]]);
        assert_eq!(s.factors, vec![2, 6]);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) has SNF diag(1, 6).
        let s = smith_normal_form(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(s.factors, vec![1, 6]);
        assert_eq!(s.torsion(), vec![6]);
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let s = smith_normal_form(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(s.rank, 1);
        assert_eq!(s.factors, vec![1]);
        let z = smith_normal_form(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(z.rank, 0);
    }

    #[test]
    fn klein_bottle_style_relations() {
        // Z^2 / <(2,0)> ⊕ nothing: matrix [[2,0]] has factors [2].
        let s = smith_normal_form(vec![vec![2, 0]]);
        assert_eq!(s.factors, vec![2]);
        // x + y = 0 and x - y = 0 gives Z/2: [[1,1],[1,-1]] -> (1, 2).
        let s2 = smith_normal_form(vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(s2.factors, vec![1, 2]);
    }

    #[test]
    fn nearest_division_bounds_remainders() {
        for a in -20i64..=20 {
            for b in [-7i64, -3, 2, 5] {
                let q = div_nearest(a, b);
                assert!(2 * (a - q * b).abs() <= b.abs());
            }
        }
    }
}
