//! Finite simplicial sets in degeneracy normal form.
//!
//! Every simplex is stored as an iterated degeneracy of a nondegenerate
//! generator: a strictly decreasing word `s_{j1} s_{j2} ... s_{jk}` (outermost
//! first) applied to a generator. Normal forms are unique, so equality of
//! simplices, evaluation of maps, and quotients are all decidable by
//! structural comparison.
//!
//! A `SimplicialSet` stores, per dimension, its nondegenerate generators and
//! their faces. `truncated_at` marks data that is only valid through a given
//! dimension: reads beyond it fail loudly instead of guessing.

pub mod build;
pub mod ex;
pub mod function_complex;
pub mod homs;
pub mod kan;
pub mod limits;
pub mod standard;
pub mod trunc;

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Shared handle to an immutable simplicial set.
pub type Ss = Arc<SimplicialSet>;

/// Reference to a nondegenerate generator: dimension and index within it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex in normal form: a strictly decreasing degeneracy word applied to
/// a generator. The word is outermost first: `word = [3, 1]` means `s3 s1 g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub word: Vec<usize>,
    pub base: GenId,
}

impl Cell {
    pub fn of_gen(base: GenId) -> Self {
        Cell { word: Vec::new(), base }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Apply `s_i`, renormalizing with `s_i s_j = s_{j+1} s_i` for `i <= j`.
    pub fn degenerate(&self, i: usize) -> Cell {
        debug_assert!(i <= self.dim());
        let mut word = Vec::with_capacity(self.word.len() + 1);
        for (pos, &w) in self.word.iter().enumerate() {
            if i <= w {
                word.push(w + 1);
            } else {
                word.push(i);
                word.extend_from_slice(&self.word[pos..]);
                return Cell { word, base: self.base };
            }
        }
        word.push(i);
        Cell { word, base: self.base }
    }

    /// Apply a degeneracy word given outermost first.
    pub fn apply_word(&self, word: &[usize]) -> Cell {
        let mut out = self.clone();
        for &j in word.iter().rev() {
            out = out.degenerate(j);
        }
        out
    }
}

/// Nondegenerate generator: `faces[i]` is `d_i` in normal form. Vertices store
/// no faces; a generator of dimension q >= 1 stores q+1 of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub faces: Vec<Cell>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialSet {
    gens: Vec<Vec<Generator>>,
    truncated_at: Option<usize>,
    coskeletal_above: Option<usize>,
    name_index: Vec<HashMap<String, usize>>,
}

impl SimplicialSet {
    /// Construct from explicit generator data and validate. Faces reference
    /// generators by `GenId` in the given order; callers are responsible for
    /// deterministic ordering.
    pub fn build(
        gens: Vec<Vec<Generator>>,
        truncated_at: Option<usize>,
        coskeletal_above: Option<usize>,
    ) -> Result<Ss> {
        let mut name_index: Vec<HashMap<String, usize>> = Vec::with_capacity(gens.len());
        for (dim, level) in gens.iter().enumerate() {
            let mut idx = HashMap::with_capacity(level.len());
            for (i, g) in level.iter().enumerate() {
                if idx.insert(g.name.clone(), i).is_some() {
                    return Err(Error::DuplicateName { name: g.name.clone(), dim });
                }
            }
            name_index.push(idx);
        }
        let ss = SimplicialSet { gens, truncated_at, coskeletal_above, name_index };
        ss.validate()?;
        Ok(Arc::new(ss))
    }

    /// Highest dimension carrying nondegenerate generators.
    pub fn top_dim(&self) -> usize {
        self.gens.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    /// Dimension through which cell data is valid; `None` means complete.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn coskeletal_above(&self) -> Option<usize> {
        self.coskeletal_above
    }

    /// Record a coskeletality claim on a copy; verified on use, not here.
    pub fn with_coskeletal_flag(ss: &Ss, n: usize) -> Ss {
        let mut s = (**ss).clone();
        s.coskeletal_above = Some(n);
        Arc::new(s)
    }

    /// Fail unless cell data in dimension `dim` is valid.
    pub fn ensure_available(&self, dim: usize) -> Result<()> {
        match self.truncated_at {
            Some(b) if dim > b => {
                Err(Error::InsufficientDimensionBound { needed: dim, available: b })
            }
            _ => Ok(()),
        }
    }

    pub fn gen_count(&self, dim: usize) -> usize {
        self.gens.get(dim).map_or(0, |l| l.len())
    }

    pub fn gens(&self, dim: usize) -> &[Generator] {
        self.gens.get(dim).map_or(&[], |l| l.as_slice())
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.dim][id.idx]
    }

    pub fn gen_name(&self, id: GenId) -> &str {
        &self.gens[id.dim][id.idx].name
    }

    pub fn gen_by_name(&self, dim: usize, name: &str) -> Option<GenId> {
        self.name_index.get(dim).and_then(|m| m.get(name)).map(|&idx| GenId { dim, idx })
    }

    pub fn gen_ids(&self, dim: usize) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gen_count(dim)).map(move |idx| GenId { dim, idx })
    }

    /// Render a cell as `s3 s1 name` (or bare `name`).
    pub fn cell_name(&self, c: &Cell) -> String {
        let base = self.gen_name(c.base);
        if c.word.is_empty() {
            base.to_string()
        } else {
            let mut s = String::new();
            for &j in &c.word {
                s.push('s');
                s.push_str(&j.to_string());
                s.push(' ');
            }
            s.push_str(base);
            s
        }
    }

    /// Apply `d_i`, pushing the face through the degeneracy word and into the
    /// stored faces of the base generator.
    pub fn face(&self, cell: &Cell, i: usize) -> Cell {
        debug_assert!(cell.dim() >= 1 && i <= cell.dim());
        let mut fi = i;
        let mut outer: Vec<usize> = Vec::with_capacity(cell.word.len());
        for (pos, &j) in cell.word.iter().enumerate() {
            if fi < j {
                outer.push(j - 1);
            } else if fi == j || fi == j + 1 {
                outer.extend_from_slice(&cell.word[pos + 1..]);
                return Cell { word: outer, base: cell.base };
            } else {
                outer.push(j);
                fi -= 1;
            }
        }
        let fc = self.gens[cell.base.dim][cell.base.idx].faces[fi].clone();
        fc.apply_word(&outer)
    }

    /// All faces `d_0 .. d_q` of a cell of dimension q >= 1.
    pub fn boundary(&self, cell: &Cell) -> Vec<Cell> {
        (0..=cell.dim()).map(|i| self.face(cell, i)).collect()
    }

    /// Functorial action of a monotone map `alpha: [m] -> [n]` on a cell of
    /// dimension n (contravariant: the result has dimension m).
    pub fn apply_monotone(&self, cell: &Cell, alpha: &[usize]) -> Cell {
        let n = cell.dim();
        debug_assert!(!alpha.is_empty());
        debug_assert!(alpha.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(*alpha.last().unwrap() <= n);
        if alpha.len() == n + 1 && alpha.iter().enumerate().all(|(t, &v)| t == v) {
            return cell.clone();
        }
        if let Some(j) = alpha.windows(2).position(|w| w[0] == w[1]) {
            let mut inner = alpha.to_vec();
            inner.remove(j + 1);
            return self.apply_monotone(cell, &inner).degenerate(j);
        }
        let c = (0..=n)
            .find(|v| !alpha.contains(v))
            .expect("injective non-identity monotone map misses a value");
        let faced = self.face(cell, c);
        let inner: Vec<usize> = alpha.iter().map(|&v| if v > c { v - 1 } else { v }).collect();
        self.apply_monotone(&faced, &inner)
    }

    /// Every cell of dimension `dim`, degenerate ones included, in a
    /// deterministic order (by base dimension, base index, then word).
    pub fn cells(&self, dim: usize) -> Result<Vec<Cell>> {
        self.ensure_available(dim)?;
        let mut out = Vec::new();
        for d in 0..=dim {
            for idx in 0..self.gen_count(d) {
                let base = GenId { dim: d, idx };
                for word in decreasing_words(dim, dim - d) {
                    out.push(Cell { word, base });
                }
            }
        }
        Ok(out)
    }

    pub fn cell_count(&self, dim: usize) -> Result<usize> {
        self.ensure_available(dim)?;
        let mut total = 0usize;
        for d in 0..=dim {
            total += self.gen_count(d) * binomial(dim, dim - d);
        }
        Ok(total)
    }

    /// Level-by-level cell counts through `dim`.
    pub fn level_counts(&self, dim: usize) -> Result<Vec<usize>> {
        (0..=dim).map(|q| self.cell_count(q)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.iter().all(|l| l.is_empty())
    }

    /// Check stored faces against the simplicial identities by expanding both
    /// sides to normal form on every generator:
    ///   d_i d_j = d_{j-1} d_i        (i < j)
    ///   d_i s_j = s_{j-1} d_i        (i < j)
    ///   d_j s_j = id = d_{j+1} s_j
    ///   d_i s_j = s_j d_{i-1}        (i > j + 1)
    ///   s_i s_j = s_{j+1} s_i        (i <= j)
    pub fn validate(&self) -> Result<()> {
        if let Some(b) = self.truncated_at {
            if self.top_dim() > b && !self.gens.iter().skip(b + 1).all(|l| l.is_empty()) {
                return Err(Error::InvalidInput {
                    reason: format!("generators above the truncation bound {b}"),
                });
            }
        }
        for dim in 0..self.gens.len() {
            for idx in 0..self.gens[dim].len() {
                let g = &self.gens[dim][idx];
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if g.faces.len() != expected {
                    return Err(Error::InvalidInput {
                        reason: format!(
                            "generator {} of dim {dim} stores {} faces, expected {expected}",
                            g.name,
                            g.faces.len()
                        ),
                    });
                }
                for (i, f) in g.faces.iter().enumerate() {
                    self.check_cell(f, dim.wrapping_sub(1)).map_err(|_| Error::DanglingFace {
                        name: format!("{} (face d{i} of {})", self.describe_cell(f), g.name),
                        dim: dim.saturating_sub(1),
                    })?;
                }
                let cell = Cell::of_gen(GenId { dim, idx });
                self.check_identities(&cell, &g.name)?;
            }
        }
        Ok(())
    }

    fn describe_cell(&self, c: &Cell) -> String {
        if c.base.dim < self.gens.len() && c.base.idx < self.gens[c.base.dim].len() {
            self.cell_name(c)
        } else {
            format!("{:?}", c)
        }
    }

    fn check_cell(&self, c: &Cell, dim: usize) -> Result<()> {
        if c.dim() != dim
            || c.base.dim >= self.gens.len()
            || c.base.idx >= self.gens[c.base.dim].len()
        {
            return Err(Error::InvalidInput { reason: "bad cell".into() });
        }
        let mut prev = usize::MAX;
        for &w in &c.word {
            if w >= prev || w >= c.dim() {
                return Err(Error::InvalidInput { reason: "bad degeneracy word".into() });
            }
            prev = w;
        }
        Ok(())
    }

    fn check_identities(&self, cell: &Cell, name: &str) -> Result<()> {
        let q = cell.dim();
        let fail = |identity: String| Error::SimplicialIdentityViolation {
            identity,
            generator: name.to_string(),
        };
        if q >= 2 {
            for j in 0..=q {
                for i in 0..j {
                    let lhs = self.face(&self.face(cell, j), i);
                    let rhs = self.face(&self.face(cell, i), j - 1);
                    if lhs != rhs {
                        return Err(fail(format!("d{i} d{j} = d{} d{i}", j - 1)));
                    }
                }
            }
        }
        for j in 0..=q {
            let sj = cell.degenerate(j);
            for i in 0..=q + 1 {
                let lhs = self.face(&sj, i);
                let rhs = if i < j {
                    self.face(cell, i).degenerate(j - 1)
                } else if i == j || i == j + 1 {
                    cell.clone()
                } else {
                    self.face(cell, i - 1).degenerate(j)
                };
                if lhs != rhs {
                    return Err(fail(format!("d{i} s{j}")));
                }
            }
            for i in 0..=j {
                if cell.degenerate(j).degenerate(i) != cell.degenerate(i).degenerate(j + 1) {
                    return Err(fail(format!("s{i} s{j} = s{} s{i}", j + 1)));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "simplicial set [")?;
        let top = self.top_dim();
        for d in 0..=top {
            if d > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.gen_count(d))?;
        }
        write!(f, "]")?;
        if let Some(b) = self.truncated_at {
            write!(f, " through dim {b}")?;
        }
        Ok(())
    }
}

/// Strictly decreasing words of length `len` over `{0 .. top-1}` in
/// lexicographic order of their vector form.
pub(crate) fn decreasing_words(top: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if top < len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, max_next: usize, remaining: usize) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (remaining - 1..=max_next).rev() {
            cur.push(v);
            if v > 0 || remaining == 1 {
                rec(out, cur, v.saturating_sub(1), remaining - 1);
            }
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, top - 1, len);
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{circle_min, simplex};

    #[test]
    fn degeneracy_words_normalize() {
        let v = Cell::of_gen(GenId { dim: 0, idx: 0 });
        // s0 s0 = s1 s0
        assert_eq!(v.degenerate(0).degenerate(0), v.degenerate(0).degenerate(1));
        let c = v.degenerate(0).degenerate(0);
        assert_eq!(c.word, vec![1, 0]);
    }

    #[test]
    fn decreasing_word_counts_are_binomial() {
        for top in 0..6 {
            for len in 0..=top {
                assert_eq!(decreasing_words(top, len).len(), binomial(top, len));
            }
        }
    }

    #[test]
    fn simplex_cell_counts() {
        // |Delta[n]_q| = C(n+q+1, n) hmm: number of monotone [q] -> [n] is C(n+q+1, q+1)?
        // Check against direct enumeration instead: |Delta[1]_q| = q + 2.
        let d1 = simplex(1);
        for q in 0..5 {
            assert_eq!(d1.cell_count(q).unwrap(), q + 2);
        }
        let d2 = simplex(2);
        assert_eq!(d2.gen_count(0), 3);
        assert_eq!(d2.gen_count(1), 3);
        assert_eq!(d2.gen_count(2), 1);
    }

    #[test]
    fn face_of_degenerate_cells() {
        let s1 = circle_min();
        let e = Cell::of_gen(GenId { dim: 1, idx: 0 });
        let s0e = e.degenerate(0);
        // d0 s0 = id, d1 s0 = id, d2 s0 e = s0 d1 e = s0 v
        assert_eq!(s1.face(&s0e, 0), e);
        assert_eq!(s1.face(&s0e, 1), e);
        let v = Cell::of_gen(GenId { dim: 0, idx: 0 });
        assert_eq!(s1.face(&s0e, 2), v.degenerate(0));
    }

    #[test]
    fn apply_monotone_composes_contravariantly() {
        let d2 = simplex(2);
        let top = Cell::of_gen(GenId { dim: 2, idx: 0 });
        // alpha: [1] -> [2], beta: [3] -> [1]; X(alpha . beta) = X(beta) . X(alpha)
        let alpha = vec![0, 2];
        let beta = vec![0, 0, 1, 1];
        let composite: Vec<usize> = beta.iter().map(|&t| alpha[t]).collect();
        let lhs = d2.apply_monotone(&top, &composite);
        let rhs = d2.apply_monotone(&d2.apply_monotone(&top, &alpha), &beta);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_refuses_reads_beyond_bound() {
        let mut gens = vec![vec![Generator { name: "v".into(), faces: vec![] }]];
        gens.push(Vec::new());
        let ss = SimplicialSet::build(gens, Some(1), None).unwrap();
        assert!(ss.cells(1).is_ok());
        assert!(matches!(
            ss.cells(2),
            Err(Error::InsufficientDimensionBound { needed: 2, available: 1 })
        ));
    }
}
