//! Finitely presented groups: free reduction, abelianization, and coset
//! enumeration with an explicit budget.
//!
//! Generators are numbered; a word is a vector of nonzero letters, `+(i+1)`
//! for the i-th generator and `-(i+1)` for its inverse. Coset enumeration
//! either certifies a finite order exactly or stops with `BudgetExceeded` —
//! it never guesses.

use super::snf::{smith_normal_form, Snf};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpGroup {
    pub gen_names: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

/// Finitely generated abelian group: free rank plus cyclic torsion factors
/// in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product::<u64>().max(1))
        }
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        if l == 0 {
            continue;
        }
        if out.last().is_some_and(|&p| p == -l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&l| -l).collect()
}

impl FpGroup {
    pub fn new(gen_names: Vec<String>, relators: Vec<Vec<i32>>) -> FpGroup {
        let relators = relators
            .iter()
            .map(|r| free_reduce(r))
            .filter(|r| !r.is_empty())
            .collect();
        FpGroup { gen_names, relators }
    }

    pub fn n_gens(&self) -> usize {
        self.gen_names.len()
    }

    /// Free groups are exactly the presentations with no surviving relators.
    pub fn is_visibly_free(&self) -> bool {
        self.relators.is_empty()
    }

    pub fn abelianization(&self) -> AbelianGroup {
        let n = self.n_gens();
        if n == 0 {
            return AbelianGroup { free_rank: 0, torsion: Vec::new() };
        }
        let mat: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; n];
                for &l in r {
                    let idx = (l.unsigned_abs() as usize) - 1;
                    row[idx] += if l > 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        if mat.is_empty() {
            return AbelianGroup { free_rank: n, torsion: Vec::new() };
        }
        let snf: Snf = smith_normal_form(mat);
        AbelianGroup { free_rank: n - snf.rank, torsion: snf.torsion() }
    }

    /// Exact order by coset enumeration over the trivial subgroup. `budget`
    /// bounds the number of cosets ever defined.
    pub fn order(&self, budget: usize) -> Result<u64> {
        if self.n_gens() == 0 {
            return Ok(1);
        }
        if self.is_visibly_free() {
            // Free on >= 1 generators: infinite; report it as unenumerable.
            return Err(Error::BudgetExceeded {
                budget,
                during: "coset enumeration of a free presentation (infinite group)".into(),
            });
        }
        let mut t = CosetTable::new(self.n_gens(), budget);
        t.enumerate(&self.relators)?;
        Ok(t.live_count() as u64)
    }

    /// Human-readable structure: exactly what was certified, nothing more.
    pub fn describe(&self, budget: usize) -> String {
        let ab = self.abelianization();
        if self.n_gens() == 0 || (self.is_visibly_free() && self.gen_names.is_empty()) {
            return "trivial".to_string();
        }
        if self.is_visibly_free() {
            return if self.n_gens() == 1 {
                "Z (free of rank 1)".to_string()
            } else {
                format!("free of rank {}", self.n_gens())
            };
        }
        match self.order(budget) {
            Ok(n) => {
                if ab.order() == Some(n) {
                    format!("abelian: {}", ab.describe())
                } else {
                    format!("order {n}, abelianization {}", ab.describe())
                }
            }
            Err(_) => format!(
                "order not determined within budget; abelianization {}",
                ab.describe()
            ),
        }
    }
}

/// Coset table for enumeration over the trivial subgroup. Columns are
/// generators then inverses: x_i at 2i, x_i^-1 at 2i+1.
struct CosetTable {
    next: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    n_gens: usize,
    budget: usize,
    defined: usize,
    /// Incremented by every definition, slot fill, and merge; drives the
    /// outer fixpoint loop.
    ops: usize,
}

impl CosetTable {
    fn new(n_gens: usize, budget: usize) -> CosetTable {
        CosetTable {
            next: vec![vec![None; 2 * n_gens]],
            parent: vec![0],
            n_gens,
            budget,
            defined: 1,
            ops: 0,
        }
    }

    fn col(l: i32) -> usize {
        let idx = (l.unsigned_abs() as usize) - 1;
        if l > 0 {
            2 * idx
        } else {
            2 * idx + 1
        }
    }

    fn inv_col(c: usize) -> usize {
        c ^ 1
    }

    fn rep(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn get(&mut self, c: usize, col: usize) -> Option<usize> {
        let c = self.rep(c);
        self.next[c][col].map(|d| self.rep(d))
    }

    fn define(&mut self, c: usize, col: usize) -> Result<usize> {
        if self.defined >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                during: "coset enumeration".into(),
            });
        }
        let d = self.next.len();
        self.next.push(vec![None; 2 * self.n_gens]);
        self.parent.push(d);
        self.defined += 1;
        self.ops += 1;
        self.set(c, col, d);
        Ok(d)
    }

    /// Record c.col = d, merging cosets when this contradicts the table.
    fn set(&mut self, c: usize, col: usize, d: usize) {
        let mut pending = vec![(c, col, d)];
        while let Some((c, col, d)) = pending.pop() {
            let c = self.rep(c);
            let d = self.rep(d);
            match self.next[c][col] {
                Some(e) => {
                    let e = self.rep(e);
                    if e != d {
                        self.merge(e, d, &mut pending);
                    }
                }
                None => {
                    self.next[c][col] = Some(d);
                    self.ops += 1;
                    match self.next[d][Self::inv_col(col)] {
                        Some(e) => {
                            let e = self.rep(e);
                            if e != c {
                                self.merge(e, c, &mut pending);
                            }
                        }
                        None => self.next[d][Self::inv_col(col)] = Some(c),
                    }
                }
            }
        }
    }

    fn merge(&mut self, a: usize, b: usize, pending: &mut Vec<(usize, usize, usize)>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, die) = if a < b { (a, b) } else { (b, a) };
        self.parent[die] = keep;
        self.ops += 1;
        // Replay the dying row through the setter so contradictions merge.
        let row = std::mem::take(&mut self.next[die]);
        for (col, entry) in row.into_iter().enumerate() {
            if let Some(e) = entry {
                pending.push((keep, col, e));
            }
        }
    }

    fn trace_and_fill(&mut self, start: usize, word: &[i32]) -> Result<()> {
        // Walk the relator from `start`, defining cosets for gaps; the last
        // step closes the cycle back to `start`.
        let mut cur = self.rep(start);
        for (pos, &l) in word.iter().enumerate() {
            let col = Self::col(l);
            if pos + 1 == word.len() {
                let target = self.rep(start);
                match self.get(cur, col) {
                    Some(nxt) if nxt == target => {}
                    Some(nxt) => {
                        let mut pending = Vec::new();
                        self.merge(nxt, target, &mut pending);
                        while let Some((c, cl, d)) = pending.pop() {
                            self.set(c, cl, d);
                        }
                    }
                    None => self.set(cur, col, target),
                }
            } else {
                cur = match self.get(cur, col) {
                    Some(nxt) => nxt,
                    None => self.define(cur, col)?,
                };
            }
        }
        Ok(())
    }

    fn live_cosets(&mut self) -> Vec<usize> {
        (0..self.next.len()).filter(|&c| self.rep(c) == c).collect()
    }

    fn live_count(&mut self) -> usize {
        self.live_cosets().len()
    }

    fn enumerate(&mut self, relators: &[Vec<i32>]) -> Result<()> {
        loop {
            let before = self.ops;
            let live = self.live_cosets();
            for c in live {
                if self.rep(c) != c {
                    continue;
                }
                for r in relators {
                    self.trace_and_fill(c, r)?;
                }
                // Fill undefined generator edges so the table closes even for
                // generators missing from every relator.
                for col in 0..2 * self.n_gens {
                    let cr = self.rep(c);
                    if self.next[cr][col].is_none() {
                        self.define(cr, col)?;
                    }
                }
            }
            if self.ops == before {
                return Ok(());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("g{i}")).collect()
    }

    #[test]
    fn cyclic_groups_enumerate_exactly() {
        for n in 2..=7u64 {
            let g = FpGroup::new(gens(1), vec![vec![1; n as usize]]);
            assert_eq!(g.order(1000).unwrap(), n);
            let ab = g.abelianization();
            assert_eq!((ab.free_rank, ab.torsion.clone()), (0, vec![n]));
        }
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^2, (ab)^3>
        let g = FpGroup::new(
            gens(2),
            vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]],
        );
        assert_eq!(g.order(1000).unwrap(), 6);
        let ab = g.abelianization();
        assert_eq!((ab.free_rank, ab.torsion.clone()), (0, vec![2]));
    }

    #[test]
    fn free_group_hits_the_budget_not_a_wrong_answer() {
        let g = FpGroup::new(gens(1), vec![]);
        assert!(g.is_visibly_free());
        assert!(matches!(g.order(100), Err(Error::BudgetExceeded { .. })));
        let ab = g.abelianization();
        assert_eq!((ab.free_rank, ab.torsion.clone()), (1, vec![]));
    }

    #[test]
    fn trivializing_relator_collapses_everything() {
        // <a | a> is trivial.
        let g = FpGroup::new(gens(1), vec![vec![1]]);
        assert_eq!(g.order(100).unwrap(), 1);
    }

    #[test]
    fn quaternion_group_q8() {
        // <i, j | i^4, i^2 j^-2, j^-1 i j i>
        let g = FpGroup::new(
            gens(2),
            vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]],
        );
        assert_eq!(g.order(1000).unwrap(), 8);
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert_eq!(free_reduce(&[1, -1, 2]), vec![2]);
        assert_eq!(free_reduce(&[1, 2, -2, -1]), Vec::<i32>::new());
        assert_eq!(invert_word(&[1, -2]), vec![2, -1]);
    }
}
