//! Right modules as quiver representations.
//!
//! An arrow `a: u -> v` acts as a linear map from the vertex-`u` space to the
//! vertex-`v` space; its matrix has `dims[v]` rows and `dims[u]` columns and
//! acts on column vectors. A path `a1 a2 ... ak` therefore acts by
//! `M_ak * ... * M_a1`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, SpanBuilder};
use crate::quiver::PathWord;

#[derive(Clone)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A homomorphism given by one matrix per vertex (`target dim x source dim`).
#[derive(Clone)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Matrix>,
}

/// A submodule with its explicit inclusion.
#[derive(Clone)]
pub struct SubRep {
    ambient: Representation,
    basis: Vec<Matrix>,
    module: Representation,
}

/// A quotient module with the projection and a choice of lifts: the columns
/// of `lifts[v]` are preimages of the quotient's basis vectors at `v`.
#[derive(Clone)]
pub struct Quotient {
    pub module: Representation,
    pub projection: RepMorphism,
    pub lifts: Vec<Matrix>,
}

/// Parameters of the one-sided Monte Carlo isomorphism test.
#[derive(Clone, Copy, Debug)]
pub struct IsoTest {
    pub trials: usize,
    pub seed: u64,
}

impl Default for IsoTest {
    fn default() -> Self {
        IsoTest { trials: 20, seed: 0 }
    }
}

pub enum IsoVerdict {
    /// Verified invertible homomorphism.
    Isomorphic(RepMorphism),
    /// No invertible combination found; may be wrong with small probability.
    NotIsomorphic,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.dims == other.dims && self.maps == other.maps
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation{:?}", self.dims)
    }
}

impl Representation {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        let rep = Self::new_unchecked(algebra, dims, maps)?;
        if cfg!(debug_assertions) {
            rep.check_relations()?;
        }
        Ok(rep)
    }

    /// Like [`Representation::new`] but always verifies the relations.
    pub fn new_checked(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        let rep = Self::new_unchecked(algebra, dims, maps)?;
        rep.check_relations()?;
        Ok(rep)
    }

    fn new_unchecked(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::InvalidModule("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule("matrix over the wrong field".into()));
            }
        }
        Ok(Representation { algebra, dims, maps })
    }

    pub fn check_relations(&self) -> Result<()> {
        for (k, r) in self.algebra.relations().iter().enumerate() {
            let f = self.field();
            let mut acc = Matrix::zeros(f, self.dims[r.target()], self.dims[r.source()]);
            for (c, p) in r.terms() {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {k} does not vanish")));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Representation {
        let dims = vec![0; algebra.vertex_count()];
        Self::with_zero_maps(algebra, dims)
    }

    fn with_zero_maps(algebra: &Arc<Algebra>, dims: Vec<usize>) -> Representation {
        let f = algebra.field();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dims,
            maps,
        }
    }

    pub fn simple(algebra: &Arc<Algebra>, v: usize) -> Result<Representation> {
        check_vertex(algebra, v)?;
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        Ok(Self::with_zero_maps(algebra, dims))
    }

    /// `P(v) = e_v Λ`: normal paths starting at `v`, placed at their targets.
    pub fn projective(algebra: &Arc<Algebra>, v: usize) -> Result<Representation> {
        check_vertex(algebra, v)?;
        let nv = algebra.vertex_count();
        let mut position = vec![usize::MAX; algebra.dim()];
        let mut dims = vec![0; nv];
        for (i, p) in algebra.basis().iter().enumerate() {
            if p.source == v {
                position[i] = dims[p.target];
                dims[p.target] += 1;
            }
        }
        let f = algebra.field();
        let mut maps: Vec<Matrix> = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        for (i, p) in algebra.basis().iter().enumerate() {
            if p.source != v {
                continue;
            }
            for (a, arrow) in algebra.quiver().arrows().iter().enumerate() {
                if arrow.source != p.target {
                    continue;
                }
                for (k, c) in algebra.arrow_action(i, a) {
                    maps[a].set(position[*k], position[i], c.clone());
                }
            }
        }
        Self::new(algebra.clone(), dims, maps)
    }

    /// `I(v)`: the dual of the projective at `v` over the opposite algebra.
    pub fn injective(algebra: &Arc<Algebra>, v: usize) -> Result<Representation> {
        check_vertex(algebra, v)?;
        Ok(Self::projective(&algebra.opposite(), v)?.dual())
    }

    /// `Λ` as a right module, `⊕_v P(v)`.
    pub fn regular(algebra: &Arc<Algebra>) -> Representation {
        let ps: Vec<Representation> = (0..algebra.vertex_count())
            .map(|v| Self::projective(algebra, v).unwrap())
            .collect();
        direct_sum(algebra, &ps)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix of the action of a path (from `source` space to `target` space).
    pub fn path_matrix(&self, p: &PathWord) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
    }

    /// The standard dual `D M = Hom_k(M, k)`, a module over the opposite
    /// algebra: same dimension vector, transposed arrow matrices.
    pub fn dual(&self) -> Representation {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation {
            algebra: self.algebra.opposite(),
            dims: self.dims.clone(),
            maps,
        }
    }

    /// Simple composition factors: all arrow maps zero.
    pub fn is_semisimple(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn radical(&self) -> SubRep {
        let f = self.field();
        let mut spans: Vec<SpanBuilder> = self.dims.iter().map(|&d| SpanBuilder::new(f, d)).collect();
        for (a, arrow) in self.algebra.quiver().arrows().iter().enumerate() {
            for col in self.maps[a].columns() {
                spans[arrow.target].insert(&col);
            }
        }
        let bases = spans.iter().map(SpanBuilder::basis).collect();
        SubRep::from_bases(self.clone(), bases)
    }

    pub fn top(&self) -> Quotient {
        self.quotient(&self.radical())
    }

    pub fn socle(&self) -> SubRep {
        let f = self.field();
        let q = self.algebra.quiver();
        let bases = (0..self.dims.len())
            .map(|v| {
                let mut stacked = Matrix::zeros(f, 0, self.dims[v]);
                for (a, arrow) in q.arrows().iter().enumerate() {
                    if arrow.source == v {
                        stacked = stacked.vstack(&self.maps[a]);
                    }
                }
                stacked.kernel()
            })
            .collect();
        SubRep::from_bases(self.clone(), bases)
    }

    /// Smallest submodule containing the given `(vertex, vector)` pairs.
    pub fn submodule_generated(&self, generators: &[(usize, Vec<Scalar>)]) -> SubRep {
        let f = self.field();
        let q = self.algebra.quiver();
        let mut spans: Vec<SpanBuilder> = self.dims.iter().map(|&d| SpanBuilder::new(f, d)).collect();
        let mut queue: VecDeque<(usize, Vec<Scalar>)> = generators.iter().cloned().collect();
        while let Some((v, x)) = queue.pop_front() {
            if !spans[v].insert(&x) {
                continue;
            }
            for (a, arrow) in q.arrows().iter().enumerate() {
                if arrow.source == v && self.dims[arrow.target] > 0 {
                    queue.push_back((arrow.target, self.maps[a].mul_vec(&x)));
                }
            }
        }
        let bases = spans.iter().map(SpanBuilder::basis).collect();
        SubRep::from_bases(self.clone(), bases)
    }

    pub fn quotient(&self, sub: &SubRep) -> Quotient {
        assert!(sub.ambient == *self, "quotient by a submodule of another module");
        let f = self.field();
        let nv = self.dims.len();
        let mut projections = Vec::with_capacity(nv);
        let mut lifts = Vec::with_capacity(nv);
        let mut dims = Vec::with_capacity(nv);
        for v in 0..nv {
            let b = &sub.basis[v];
            let comp = b.complement_indices();
            let e = Matrix::unit_columns(f, self.dims[v], &comp);
            let full = b.hstack(&e);
            let inv = full.inverse().expect("submodule basis has full rank");
            let rows: Vec<usize> = (b.cols()..self.dims[v]).collect();
            projections.push(inv.select_rows(&rows));
            dims.push(comp.len());
            lifts.push(e);
        }
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| projections[arrow.target].mul(&self.maps[a]).mul(&lifts[arrow.source]))
            .collect();
        let module = Representation::new(self.algebra.clone(), dims, maps).expect("quotient module");
        let projection = RepMorphism {
            source: self.clone(),
            target: module.clone(),
            blocks: projections,
        };
        Quotient {
            module,
            projection,
            lifts,
        }
    }

    /// Serializes as `{"dims": {vertex: n}, "arrows": {label: rows}}` with
    /// row-major matrices of scalar strings.
    pub fn to_json(&self) -> Value {
        let q = self.algebra.quiver();
        let dims: serde_json::Map<String, Value> = (0..self.dims.len())
            .map(|v| (q.vertex_label(v).to_string(), json!(self.dims[v])))
            .collect();
        let arrows: serde_json::Map<String, Value> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let m = &self.maps[a];
                let rows: Vec<Vec<String>> = (0..m.rows())
                    .map(|i| m.row(i).iter().map(Scalar::to_string).collect())
                    .collect();
                (arrow.label.clone(), json!(rows))
            })
            .collect();
        json!({ "dims": dims, "arrows": arrows })
    }

    pub fn from_json(algebra: &Arc<Algebra>, value: &Value) -> Result<Representation> {
        let bad = |m: &str| Error::InvalidModule(m.to_string());
        let q = algebra.quiver();
        let f = algebra.field();
        let dims_obj = value.get("dims").and_then(Value::as_object).ok_or_else(|| bad("missing \"dims\""))?;
        let mut dims = vec![0; q.vertex_count()];
        for (label, n) in dims_obj {
            let v = q.vertex(label)?;
            dims[v] = n.as_u64().ok_or_else(|| bad("dimension is not a nonnegative integer"))? as usize;
        }
        let empty = serde_json::Map::new();
        let arrows_obj = match value.get("arrows") {
            Some(v) => v.as_object().ok_or_else(|| bad("\"arrows\" is not an object"))?,
            None => &empty,
        };
        for label in arrows_obj.keys() {
            q.arrow_by_label(label)?;
        }
        let mut maps = Vec::with_capacity(q.arrows().len());
        for arrow in q.arrows() {
            let (r, c) = (dims[arrow.target], dims[arrow.source]);
            let Some(rows) = arrows_obj.get(&arrow.label) else {
                maps.push(Matrix::zeros(f, r, c));
                continue;
            };
            let rows = rows.as_array().ok_or_else(|| bad("matrix is not an array of rows"))?;
            if rows.len() != r {
                return Err(bad(&format!("arrow {} needs {r} rows", arrow.label)));
            }
            let mut data = Vec::with_capacity(r * c);
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
                if row.len() != c {
                    return Err(bad(&format!("arrow {} needs {c} columns", arrow.label)));
                }
                for x in row {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(bad("matrix entries must be strings or integers")),
                    };
                    data.push(f.parse(&s)?);
                }
            }
            maps.push(Matrix::from_rows(f, r, c, data));
        }
        Representation::new_checked(algebra.clone(), dims, maps)
    }
}

fn check_vertex(algebra: &Algebra, v: usize) -> Result<()> {
    if v >= algebra.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    Ok(())
}

/// Block-diagonal direct sum; the empty sum is the zero module.
pub fn direct_sum(algebra: &Arc<Algebra>, summands: &[Representation]) -> Representation {
    let f = algebra.field();
    let nv = algebra.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| summands.iter().map(|m| m.dims[v]).sum()).collect();
    let maps = (0..algebra.quiver().arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix> = summands.iter().map(|m| &m.maps[a]).collect();
            Matrix::block_diagonal(f, &blocks)
        })
        .collect();
    Representation {
        algebra: algebra.clone(),
        dims,
        maps,
    }
}

impl SubRep {
    /// `bases[v]` must have independent columns spanning a subspace closed
    /// under the arrow actions.
    pub fn from_bases(ambient: Representation, bases: Vec<Matrix>) -> SubRep {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = ambient
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let image = ambient.maps[a].mul(&bases[arrow.source]);
                bases[arrow.target]
                    .solve(&image)
                    .expect("subspace is not closed under the arrow action")
            })
            .collect();
        let module = Representation::new(ambient.algebra.clone(), dims, maps).expect("submodule");
        SubRep {
            ambient,
            basis: bases,
            module,
        }
    }

    pub fn ambient(&self) -> &Representation {
        &self.ambient
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn into_module(self) -> Representation {
        self.module
    }

    /// Basis of the subspace at `v`, as columns in ambient coordinates.
    pub fn basis(&self, v: usize) -> &Matrix {
        &self.basis[v]
    }

    pub fn inclusion(&self) -> RepMorphism {
        RepMorphism {
            source: self.module.clone(),
            target: self.ambient.clone(),
            blocks: self.basis.clone(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        self.module.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.module.total_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    /// Every basis vector of `self` lies in `other` (same ambient module).
    pub fn is_contained_in(&self, other: &SubRep) -> bool {
        (0..self.basis.len()).all(|v| {
            self.basis[v].cols() == 0 || other.basis[v].solve(&self.basis[v]).is_some()
        })
    }

    /// All basis vectors as `(vertex, vector)` generators.
    pub fn generators(&self) -> Vec<(usize, Vec<Scalar>)> {
        let mut out = Vec::new();
        for (v, b) in self.basis.iter().enumerate() {
            for col in b.columns() {
                out.push((v, col));
            }
        }
        out
    }

    /// The whole module as a submodule of itself.
    pub fn full(m: &Representation) -> SubRep {
        let f = m.field();
        let bases = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        SubRep {
            ambient: m.clone(),
            basis: bases,
            module: m.clone(),
        }
    }
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Result<RepMorphism> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let m = RepMorphism { source, target, blocks };
        if m.blocks.len() != m.source.dims.len()
            || m
                .blocks
                .iter()
                .enumerate()
                .any(|(v, b)| b.rows() != m.target.dims[v] || b.cols() != m.source.dims[v])
        {
            return Err(Error::InvalidModule("morphism blocks have the wrong shape".into()));
        }
        if !m.is_intertwining() {
            return Err(Error::InvalidModule("blocks do not commute with the arrows".into()));
        }
        Ok(m)
    }

    pub fn identity(m: &Representation) -> RepMorphism {
        let f = m.field();
        RepMorphism {
            source: m.clone(),
            target: m.clone(),
            blocks: m.dims.iter().map(|&d| Matrix::identity(f, d)).collect(),
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn is_intertwining(&self) -> bool {
        self.source
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arrow)| {
                self.target.maps[a].mul(&self.blocks[arrow.source])
                    == self.blocks[arrow.target].mul(&self.source.maps[a])
            })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &RepMorphism) -> RepMorphism {
        assert!(other.target == self.source, "composing incompatible morphisms");
        RepMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn kernel(&self) -> SubRep {
        let bases = self.blocks.iter().map(Matrix::kernel).collect();
        SubRep::from_bases(self.source.clone(), bases)
    }

    pub fn image(&self) -> SubRep {
        let bases = self.blocks.iter().map(Matrix::column_basis).collect();
        SubRep::from_bases(self.target.clone(), bases)
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().enumerate().all(|(v, b)| b.rank() == self.target.dims[v])
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().enumerate().all(|(v, b)| b.rank() == self.source.dims[v])
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    /// Concatenation of all block entries in row-major order.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for i in 0..b.rows() {
                out.extend(b.row(i).iter().cloned());
            }
        }
        out
    }

    pub(crate) fn from_flat(source: &Representation, target: &Representation, flat: &[Scalar]) -> RepMorphism {
        let f = source.field();
        let mut offset = 0;
        let blocks = (0..source.dims.len())
            .map(|v| {
                let (r, c) = (target.dims[v], source.dims[v]);
                let m = Matrix::from_rows(f, r, c, flat[offset..offset + r * c].to_vec());
                offset += r * c;
                m
            })
            .collect();
        RepMorphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }
}

/// Basis of `Hom(M, N)`, by exact row reduction of the intertwining system.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let nv = m.dims.len();
    let mut offsets = vec![0; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offsets[nv];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // unknown for f_v[r][c] is offsets[v] + r * m.dims[v] + c
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, arrow) in m.algebra.quiver().arrows().iter().enumerate() {
        let (u, w) = (arrow.source, arrow.target);
        let na = &n.maps[a];
        let ma = &m.maps[a];
        // (N_a f_u - f_w M_a)[r][c] = 0 for r < n.dims[w], c < m.dims[u]
        for r in 0..n.dims[w] {
            for c in 0..m.dims[u] {
                let mut row = vec![f.zero(); unknowns];
                for s in 0..n.dims[u] {
                    let x = na.get(r, s);
                    if !x.is_zero() {
                        let k = var(u, s, c);
                        row[k] = &row[k] + x;
                    }
                }
                for s in 0..m.dims[w] {
                    let x = ma.get(s, c);
                    if !x.is_zero() {
                        let k = var(w, r, s);
                        row[k] = &row[k] - x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(f, unknowns)
    } else {
        let count = rows.len();
        Matrix::from_rows(f, count, unknowns, rows.concat()).kernel()
    };
    Ok(kernel
        .columns()
        .iter()
        .map(|col| RepMorphism::from_flat(m, n, col))
        .collect())
}

/// Sound "yes" with a verified witness; "no" after `test.trials` random
/// combinations of a Hom basis all fail to be invertible.
pub fn is_isomorphic(m: &Representation, n: &Representation, test: &IsoTest) -> Result<IsoVerdict> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims != n.dims {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(RepMorphism::identity(m)));
    }
    if m == n {
        return Ok(IsoVerdict::Isomorphic(RepMorphism::identity(m)));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let f = m.field();
    // single basis elements are cheap and often enough
    for b in &basis {
        if b.is_isomorphism() {
            return Ok(IsoVerdict::Isomorphic(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(test.seed);
    for _ in 0..test.trials {
        let mut acc = basis[0].scale(&f.random(&mut rng));
        for b in &basis[1..] {
            acc = acc.add(&b.scale(&f.random(&mut rng)));
        }
        if acc.is_isomorphism() && acc.is_intertwining() {
            return Ok(IsoVerdict::Isomorphic(acc));
        }
    }
    Ok(IsoVerdict::NotIsomorphic)
}

/// Dimension vector as a label-keyed map, for reports.
pub fn labeled_dims(m: &Representation) -> BTreeMap<String, usize> {
    let q = m.algebra.quiver();
    (0..m.dims.len()).map(|v| (q.vertex_label(v).to_string(), m.dims[v])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn simples_and_projectives_of_a2() {
        let a2 = fixtures::load("A2").unwrap();
        assert_eq!(Representation::simple(&a2, 0).unwrap().dims(), &[1, 0]);
        assert_eq!(Representation::projective(&a2, 0).unwrap().dims(), &[1, 1]);
        assert_eq!(Representation::projective(&a2, 1).unwrap().dims(), &[0, 1]);
        assert_eq!(Representation::injective(&a2, 1).unwrap().dims(), &[1, 1]);
        assert_eq!(Representation::injective(&a2, 0).unwrap().dims(), &[1, 0]);
        assert!(Representation::simple(&a2, 5).is_err());
    }

    #[test]
    fn radical_top_socle_of_a2_projective() {
        let a2 = fixtures::load("A2").unwrap();
        let p1 = Representation::projective(&a2, 0).unwrap();
        assert_eq!(p1.radical().dims(), &[0, 1]);
        assert_eq!(p1.top().module.dims(), &[1, 0]);
        assert_eq!(p1.socle().dims(), &[0, 1]);
    }

    #[test]
    fn hom_dimensions_on_small_cases() {
        let a2 = fixtures::load("A2").unwrap();
        let s1 = Representation::simple(&a2, 0).unwrap();
        let s2 = Representation::simple(&a2, 1).unwrap();
        assert!(hom_space(&s1, &s2).unwrap().is_empty());
        let n2 = fixtures::load("N2").unwrap();
        let p = Representation::projective(&n2, 0).unwrap();
        assert_eq!(hom_space(&p, &p).unwrap().len(), 2);
    }

    #[test]
    fn isomorphism_verdicts() {
        let a2 = fixtures::load("A2").unwrap();
        let s1 = Representation::simple(&a2, 0).unwrap();
        let s2 = Representation::simple(&a2, 1).unwrap();
        let t = IsoTest::default();
        assert!(is_isomorphic(&s1, &s1, &t).unwrap().is_isomorphic());
        assert!(!is_isomorphic(&s1, &s2, &t).unwrap().is_isomorphic());
        let n2 = fixtures::load("N2").unwrap();
        let p = Representation::projective(&n2, 0).unwrap();
        let s = Representation::simple(&n2, 0).unwrap();
        let rad = p.radical().into_module();
        match is_isomorphic(&rad, &s, &t).unwrap() {
            IsoVerdict::Isomorphic(w) => {
                assert!(w.is_intertwining());
                let back = w.inverse().unwrap().compose(&w);
                assert!(back.blocks().iter().all(|b| *b == Matrix::identity(b.field(), b.rows())));
            }
            IsoVerdict::NotIsomorphic => panic!("rad P should be isomorphic to S"),
        }
    }

    #[test]
    fn submodule_generation() {
        let a2 = fixtures::load("A2").unwrap();
        let p1 = Representation::projective(&a2, 0).unwrap();
        let f = a2.field();
        assert!(p1.submodule_generated(&[]).is_zero());
        let g = p1.submodule_generated(&[(1, vec![f.one()])]);
        assert_eq!(g.dims(), &[0, 1]);
        let all = p1.submodule_generated(&[(0, vec![f.one()])]);
        assert_eq!(all.dims(), &[1, 1]);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let e41 = fixtures::e41(4, 1).unwrap();
        let p = Representation::projective(&e41, 1).unwrap();
        let back = Representation::from_json(&e41, &p.to_json()).unwrap();
        assert!(back == p);
        let n2 = fixtures::load("N2").unwrap();
        let bad = serde_json::json!({"dims": {"1": 1}, "arrows": {"x": [["1"]]}});
        assert!(Representation::from_json(&n2, &bad).is_err());
    }

    #[test]
    fn regular_module_has_algebra_dimension() {
        for name in ["K", "A2", "N3", "KR", "B2", "E41(4,1)"] {
            let a = fixtures::load(name).unwrap();
            assert_eq!(Representation::regular(&a).total_dim(), a.dim(), "{name}");
        }
    }
}
