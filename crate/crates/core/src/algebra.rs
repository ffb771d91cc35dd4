//! Bound quiver algebras `kQ/I` with length-homogeneous relations.
//!
//! The ideal is graded, so each degree is handled separately: the degree-`l`
//! part of the quotient is spanned by `(normal path of degree l-1) * arrow`,
//! and the only extra relations in that degree are `n * r` for a normal path
//! `n` and a relation `r` of length `l - |n|`. Row reduction with the largest
//! candidate (length-lex, arrows in declaration order) as pivot leaves the
//! normal paths as non-pivot columns.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::quiver::{PathWord, Presentation, Quiver, Relation};

/// Sparse linear combination of basis elements, sorted by index.
pub type Combination = Vec<(usize, Scalar)>;

pub const DEFAULT_MAX_PATH_LENGTH: usize = 64;

#[derive(Debug)]
pub struct Algebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    max_path_length: usize,
    basis: Vec<PathWord>,
    degree_starts: Vec<usize>,
    index: HashMap<PathWord, usize>,
    /// `arrow_action[b][a]` is the normal form of `basis[b] * a`.
    arrow_action: Vec<Vec<Combination>>,
    product: Vec<Combination>,
    opposite: OnceLock<Arc<Algebra>>,
    parent: Weak<Algebra>,
}

fn add_term(comb: &mut HashMap<usize, Scalar>, idx: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = comb.entry(idx).or_insert_with(|| c.field().zero());
    *entry = &*entry + &c;
}

fn finish(comb: HashMap<usize, Scalar>) -> Combination {
    let mut v: Combination = comb.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

impl Algebra {
    pub fn build(presentation: Presentation, max_path_length: usize) -> Result<Arc<Algebra>> {
        let alg = Self::build_raw(presentation, max_path_length, Weak::new())?;
        Ok(Arc::new(alg))
    }

    fn build_raw(p: Presentation, max_path_length: usize, parent: Weak<Algebra>) -> Result<Algebra> {
        if max_path_length < 1 {
            return Err(Error::InvalidArgument("max_path_length must be at least 1".into()));
        }
        let Presentation {
            field,
            quiver,
            relations,
        } = p;
        let nv = quiver.vertex_count();
        let na = quiver.arrows().len();
        let mut basis: Vec<PathWord> = (0..nv).map(PathWord::trivial).collect();
        let mut degree_starts = vec![0, nv];
        let mut arrow_action: Vec<Vec<Combination>> = vec![vec![Vec::new(); na]; nv];

        let mut degree = 1;
        loop {
            let prev = degree_starts[degree - 1]..degree_starts[degree];
            // candidates (b, a) sorted by the word b.a
            let mut candidates: Vec<(usize, usize)> = Vec::new();
            for b in prev.clone() {
                for (a, arrow) in quiver.arrows().iter().enumerate() {
                    if arrow.source == basis[b].target {
                        candidates.push((b, a));
                    }
                }
            }
            let word = |&(b, a): &(usize, usize)| {
                let mut w = basis[b].arrows.clone();
                w.push(a);
                (basis[b].source, w)
            };
            candidates.sort_by_key(word);
            let cand_index: HashMap<(usize, usize), usize> =
                candidates.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let nc = candidates.len();

            // relation vectors, columns in descending candidate order
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for r in relations.iter().filter(|r| r.len() <= degree) {
                let k = degree - r.len();
                for n in degree_starts[k]..degree_starts[k + 1] {
                    if basis[n].target != r.source() {
                        continue;
                    }
                    let mut row = vec![field.zero(); nc];
                    for (c, path) in r.terms() {
                        let (init, last) = path.arrows.split_at(path.len() - 1);
                        let mut comb: Combination = vec![(n, field.one())];
                        for &a in init {
                            comb = act(&arrow_action, &comb, a);
                        }
                        for (b, x) in comb {
                            let j = cand_index[&(b, last[0])];
                            let col = nc - 1 - j;
                            row[col] = &row[col] + &(c * &x);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let ech = if rows.is_empty() {
                None
            } else {
                let data = rows.concat();
                Some(Matrix::from_rows(field, rows.len(), nc, data).echelon())
            };
            let pivot_cands: Vec<usize> = ech
                .as_ref()
                .map(|e| e.pivots.iter().map(|&col| nc - 1 - col).collect())
                .unwrap_or_default();
            let mut is_pivot = vec![false; nc];
            for &j in &pivot_cands {
                is_pivot[j] = true;
            }
            let start = basis.len();
            let mut new_index = vec![usize::MAX; nc];
            for (j, &(b, a)) in candidates.iter().enumerate() {
                if !is_pivot[j] {
                    new_index[j] = basis.len();
                    let mut arrows = basis[b].arrows.clone();
                    arrows.push(a);
                    basis.push(PathWord {
                        source: basis[b].source,
                        target: quiver.arrow(a).target,
                        arrows,
                    });
                    arrow_action.push(vec![Vec::new(); na]);
                }
            }
            for (j, &(b, a)) in candidates.iter().enumerate() {
                let nf = if !is_pivot[j] {
                    vec![(new_index[j], field.one())]
                } else {
                    let e = ech.as_ref().unwrap();
                    let row = e.pivots.iter().position(|&col| col == nc - 1 - j).unwrap();
                    let mut comb: Combination = (0..nc)
                        .filter(|&k| !is_pivot[k])
                        .filter_map(|k| {
                            let x = e.matrix.get(row, nc - 1 - k);
                            (!x.is_zero()).then(|| (new_index[k], -x))
                        })
                        .collect();
                    comb.sort_by_key(|(i, _)| *i);
                    comb
                };
                arrow_action[b][a] = nf;
            }
            if basis.len() == start {
                break;
            }
            degree_starts.push(basis.len());
            if degree >= max_path_length {
                return Err(Error::NotFiniteDimensional { max_path_length });
            }
            degree += 1;
        }

        let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let dim = basis.len();
        let mut product = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if basis[i].target != basis[j].source {
                    continue;
                }
                let mut comb: Combination = vec![(i, field.one())];
                for &a in &basis[j].arrows {
                    comb = act(&arrow_action, &comb, a);
                    if comb.is_empty() {
                        break;
                    }
                }
                product[i * dim + j] = comb;
            }
        }
        let alg = Algebra {
            field,
            quiver,
            relations,
            max_path_length,
            basis,
            degree_starts,
            index,
            arrow_action,
            product,
            opposite: OnceLock::new(),
            parent,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Checks grading, units, relation vanishing and associativity.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let fail = |m: String| Err(Error::Validation(m));
        for v in 0..self.vertex_count() {
            if self.basis[v] != PathWord::trivial(v) {
                return fail(format!("basis element {v} is not the trivial path"));
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            let mut acc: HashMap<usize, Scalar> = HashMap::new();
            for (c, p) in r.terms() {
                for (i, x) in self.normal_form(p) {
                    add_term(&mut acc, i, c * &x);
                }
            }
            if !finish(acc).is_empty() {
                return fail(format!("relation {k} does not vanish"));
            }
        }
        for i in 0..dim {
            let e_s = self.basis[i].source;
            let e_t = self.basis[i].target;
            for v in 0..self.vertex_count() {
                let left = self.multiply(v, i);
                let right = self.multiply(i, v);
                let want = |on: bool| if on { vec![(i, self.field.one())] } else { Vec::new() };
                if left != want(v == e_s).as_slice() || right != want(v == e_t).as_slice() {
                    return fail(format!("idempotents do not act as units on basis element {i}"));
                }
            }
            for j in 0..dim {
                let d = self.degree(i) + self.degree(j);
                if self.multiply(i, j).iter().any(|(k, _)| self.degree(*k) != d) {
                    return fail(format!("product {i}*{j} is not homogeneous"));
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.multiply(i, j);
                if ij.is_empty() {
                    continue;
                }
                for k in 0..dim {
                    if self.basis[j].target != self.basis[k].source {
                        continue;
                    }
                    let lhs = self.mul_combinations(ij, &[(k, self.field.one())]);
                    let rhs = self.mul_combinations(&[(i, self.field.one())], self.multiply(j, k));
                    if lhs != rhs {
                        return fail(format!("associativity fails on ({i}, {j}, {k})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn max_path_length(&self) -> usize {
        self.max_path_length
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn basis_index(&self, p: &PathWord) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis indices of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 < self.degree_starts.len() {
            self.degree_starts[d]..self.degree_starts[d + 1]
        } else {
            self.dim()..self.dim()
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].len()
    }

    /// Number of normal paths of each degree, starting at degree 0.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        self.degree_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Normal form of `basis[b] * arrow`.
    pub fn arrow_action(&self, b: usize, arrow: usize) -> &[(usize, Scalar)] {
        &self.arrow_action[b][arrow]
    }

    pub fn multiply(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.product[i * self.dim() + j]
    }

    pub fn mul_combinations(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Combination {
        let mut acc = HashMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.multiply(*i, *j) {
                    add_term(&mut acc, *k, &ab * c);
                }
            }
        }
        finish(acc)
    }

    /// Reduces an arbitrary path to a combination of normal paths.
    pub fn normal_form(&self, p: &PathWord) -> Combination {
        let mut comb: Combination = vec![(p.source, self.field.one())];
        for &a in &p.arrows {
            comb = act(&self.arrow_action, &comb, a);
        }
        comb
    }

    /// The least `n` with `rad^n = 0`.
    pub fn loewy_length(&self) -> usize {
        self.degree_starts.len() - 1
    }

    /// The opposite algebra, built once and cached. Taking the opposite twice
    /// returns the original `Arc`.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(p) = self.parent.upgrade() {
            return p;
        }
        self.opposite
            .get_or_init(|| {
                let pres = Presentation {
                    field: self.field,
                    quiver: self.quiver.opposite(),
                    relations: self.relations.iter().map(Relation::reversed).collect(),
                };
                let op = Algebra::build_raw(pres, self.max_path_length, Arc::downgrade(self))
                    .expect("opposite of a valid algebra builds");
                assert_eq!(op.dim(), self.dim(), "opposite algebra has a different dimension");
                Arc::new(op)
            })
            .clone()
    }

    pub fn describe_basis(&self, i: usize) -> String {
        self.basis[i].display(&self.quiver).to_string()
    }
}

fn act(table: &[Vec<Combination>], comb: &[(usize, Scalar)], a: usize) -> Combination {
    let mut acc = HashMap::new();
    for (b, x) in comb {
        for (k, y) in &table[*b][a] {
            add_term(&mut acc, *k, x * y);
        }
    }
    finish(acc)
}
