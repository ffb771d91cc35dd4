//! The torsion pair induced by a set `V` of simples: torsion modules have
//! top in `add V'` (`V'` the remaining simples), torsion-free modules are
//! filtered by `V`. The torsion radical `t_V`, the functor
//! `F = rad ∘ t_V`, and the radical layer length
//! `ℓℓ(M) = min { i ≥ 0 : t_V(F^i M) = 0 }`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::rep::{Representation, SubRep};

/// A subset of the simple modules, indexed by vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSubset {
    members: Vec<bool>,
}

impl SimpleSubset {
    pub fn new(vertex_count: usize, members: impl IntoIterator<Item = usize>) -> Result<SimpleSubset> {
        let mut mask = vec![false; vertex_count];
        for v in members {
            if v >= vertex_count {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            mask[v] = true;
        }
        Ok(SimpleSubset { members: mask })
    }

    pub fn empty(vertex_count: usize) -> SimpleSubset {
        SimpleSubset {
            members: vec![false; vertex_count],
        }
    }

    pub fn all(vertex_count: usize) -> SimpleSubset {
        SimpleSubset {
            members: vec![true; vertex_count],
        }
    }

    /// Bit `v` of `mask` selects vertex `v`.
    pub fn from_mask(vertex_count: usize, mask: u64) -> SimpleSubset {
        SimpleSubset {
            members: (0..vertex_count).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    /// Comma-separated vertex labels; the empty string is the empty set.
    pub fn parse(quiver: &Quiver, text: &str) -> Result<SimpleSubset> {
        let members = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| quiver.vertex(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(quiver.vertex_count(), members)
    }

    pub fn vertex_count(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&v| self.members[v]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_all(&self) -> bool {
        self.members.iter().all(|&b| b)
    }

    /// `V' = S \ V`.
    pub fn complement(&self) -> SimpleSubset {
        SimpleSubset {
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    /// Bit `v` set for each member; at most 64 vertices.
    pub fn mask(&self) -> u64 {
        assert!(self.members.len() <= 64, "mask needs at most 64 vertices");
        self.members().into_iter().fold(0, |acc, v| acc | 1 << v)
    }

    pub fn labels(&self, quiver: &Quiver) -> Vec<String> {
        self.members().into_iter().map(|v| quiver.vertex_label(v).to_string()).collect()
    }
}

impl fmt::Debug for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members())
    }
}

fn check(v: &SimpleSubset, m: &Representation) {
    assert_eq!(v.vertex_count(), m.algebra().vertex_count(), "subset of another algebra's simples");
}

/// Largest submodule of `m` with top in `add V'`: the decreasing fixpoint of
/// "submodule generated by the `V'`-components".
pub fn torsion_radical(v: &SimpleSubset, m: &Representation) -> SubRep {
    check(v, m);
    torsion_radical_by(m, |w| v.contains(w))
}

/// `t_V` with membership in `V` answered by `in_v`; only vertices where the
/// module is nonzero are ever asked about.
pub fn torsion_radical_by(m: &Representation, mut in_v: impl FnMut(usize) -> bool) -> SubRep {
    let mut current = SubRep::full(m);
    loop {
        // Vertices in radical-layer order; a vertex whose component already
        // lies in what has been generated so far is never consulted.
        let mut generated = m.submodule_generated(&[]);
        let mut gens = Vec::new();
        for w in layer_order(current.module()) {
            if generated.dims()[w] == current.dims()[w] || in_v(w) {
                continue;
            }
            gens.extend(current.basis(w).columns().into_iter().map(|c| (w, c)));
            generated = m.submodule_generated(&gens);
        }
        if generated.total_dim() == current.total_dim() {
            return generated;
        }
        current = generated;
    }
}

/// Vertices of the support ordered by the first radical layer they occur in.
fn layer_order(m: &Representation) -> Vec<usize> {
    let k = m.dims().len();
    let mut first = vec![usize::MAX; k];
    let mut layer = m.clone();
    let mut i = 0;
    while !layer.is_zero() {
        let rad = layer.radical();
        for w in 0..k {
            if first[w] == usize::MAX && layer.dims()[w] > rad.dims()[w] {
                first[w] = i;
            }
        }
        layer = rad.into_module();
        i += 1;
    }
    let mut order: Vec<usize> = (0..k).filter(|&w| first[w] != usize::MAX).collect();
    order.sort_by_key(|&w| (first[w], w));
    order
}

pub fn torsion_quotient(v: &SimpleSubset, m: &Representation) -> Representation {
    m.quotient(&torsion_radical(v, m)).module
}

/// All composition factors of `m` lie in `V`.
pub fn composition_factors_in(v: &SimpleSubset, m: &Representation) -> bool {
    m.dims().iter().enumerate().all(|(w, &d)| d == 0 || v.contains(w))
}

pub fn is_torsionfree(v: &SimpleSubset, m: &Representation) -> bool {
    let free = torsion_radical(v, m).is_zero();
    debug_assert!(!free || composition_factors_in(v, m));
    free
}

/// `F(M) = rad t_V(M)`.
pub fn layer_step(v: &SimpleSubset, m: &Representation) -> Representation {
    torsion_radical(v, m).into_module().radical().into_module()
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerRow {
    pub step: usize,
    /// Dimension vector of `t_V(F^i M)`.
    pub torsion_dims: Vec<usize>,
    /// Dimension vector of `F^{i+1} M`.
    pub next_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerTrace {
    pub rows: Vec<LayerRow>,
    pub length: usize,
}

pub fn layer_length(v: &SimpleSubset, m: &Representation) -> LayerTrace {
    check(v, m);
    let mut rows = Vec::new();
    let mut current = m.clone();
    loop {
        let t = torsion_radical(v, &current);
        if t.is_zero() {
            return LayerTrace {
                length: rows.len(),
                rows,
            };
        }
        let next = t.module().radical().into_module();
        rows.push(LayerRow {
            step: rows.len(),
            torsion_dims: t.dims().to_vec(),
            next_dims: next.dims().to_vec(),
        });
        current = next;
    }
}

struct Transition {
    queried: u64,
    answers: u64,
    next: Option<usize>,
}

struct Node {
    module: Representation,
    /// Basis of this node inside the root module, per vertex.
    inclusion: Vec<Matrix>,
    transitions: Vec<Transition>,
}

/// Memoized `ℓℓ^{t_V}(M)` for one module `M` and many subsets `V`.
///
/// Every `F^i M` is a submodule of `M`; nodes are those submodules (keyed by
/// reduced echelon bases). A step `N -> rad t_V(N)` is stored together with
/// the vertices whose membership in `V` the computation asked about, so it
/// is reused for every `V` giving the same answers.
pub struct LayerCache {
    nodes: Vec<Node>,
    index: HashMap<Vec<Vec<Scalar>>, usize>,
}

fn canonical(bases: &[Matrix]) -> Vec<Vec<Scalar>> {
    bases
        .iter()
        .map(|b| {
            let e = b.transpose().echelon();
            (0..e.pivots.len()).flat_map(|r| e.matrix.row(r).to_vec()).collect()
        })
        .collect()
}

impl LayerCache {
    pub fn new(m: &Representation) -> LayerCache {
        assert!(m.dims().len() <= 64, "layer cache needs at most 64 vertices");
        let f = m.field();
        let inclusion: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        let mut index = HashMap::new();
        index.insert(canonical(&inclusion), 0);
        LayerCache {
            nodes: vec![Node {
                module: m.clone(),
                inclusion,
                transitions: Vec::new(),
            }],
            index,
        }
    }

    /// Number of distinct submodules met so far.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of memoized steps.
    pub fn transition_count(&self) -> usize {
        self.nodes.iter().map(|n| n.transitions.len()).sum()
    }

    fn step(&mut self, node: usize, mask: u64) -> Option<usize> {
        if let Some(t) = self.nodes[node].transitions.iter().find(|t| mask & t.queried == t.answers) {
            return t.next;
        }
        let mut queried = 0u64;
        let t = torsion_radical_by(&self.nodes[node].module, |w| {
            queried |= 1 << w;
            mask >> w & 1 == 1
        });
        let next = if t.is_zero() {
            None
        } else {
            let rad = t.module().radical();
            let inclusion: Vec<Matrix> = (0..t.dims().len())
                .map(|v| self.nodes[node].inclusion[v].mul(t.basis(v)).mul(rad.basis(v)))
                .collect();
            let key = canonical(&inclusion);
            let id = match self.index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = self.nodes.len();
                    self.nodes.push(Node {
                        module: rad.into_module(),
                        inclusion,
                        transitions: Vec::new(),
                    });
                    self.index.insert(key, id);
                    id
                }
            };
            Some(id)
        };
        self.nodes[node].transitions.push(Transition {
            queried,
            answers: mask & queried,
            next,
        });
        next
    }

    pub fn layer_length(&mut self, v: &SimpleSubset) -> usize {
        let mask = v.mask();
        let mut node = 0;
        let mut length = 0;
        while let Some(next) = self.step(node, mask) {
            node = next;
            length += 1;
        }
        length
    }
}

/// `ℓℓ(Λ) = max_v ℓℓ(P(v))`.
pub fn algebra_layer_length(alg: &Arc<Algebra>, v: &SimpleSubset) -> usize {
    let projectives: Vec<Representation> = (0..alg.vertex_count())
        .map(|w| Representation::projective(alg, w).unwrap())
        .collect();
    layer_length_over(&projectives, v)
}

/// Maximum layer length over a list of modules (a direct sum decomposition).
pub fn layer_length_over(modules: &[Representation], v: &SimpleSubset) -> usize {
    modules.iter().map(|m| layer_length(v, m).length).max().unwrap_or(0)
}
