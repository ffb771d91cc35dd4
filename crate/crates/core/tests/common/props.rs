//! Property checks shared by the property suite and the acceptance run.
//! Each check panics on the first violation.

use std::collections::HashSet;
use std::sync::Arc;

use radlayer::field::Field;
use radlayer::fixtures;
use radlayer::homology::{injective_dimension, projective_cover, projective_dimension, resolve, Verdict};
use radlayer::linalg::Matrix;
use radlayer::quiver::{presentation_from_document, FieldSpec};
use radlayer::rep::{direct_sum, hom_space, Representation};
use radlayer::torsion::{
    algebra_layer_length, composition_factors_in, layer_length, layer_step, torsion_quotient, torsion_radical,
    SimpleSubset,
};
use radlayer::Algebra;

pub fn all_subsets(k: usize) -> impl Iterator<Item = SimpleSubset> {
    (0..1u64 << k).map(move |m| SimpleSubset::from_mask(k, m))
}

pub fn iterate_f(v: &SimpleSubset, m: &Representation, j: usize) -> Representation {
    (0..j).fold(m.clone(), |acc, _| layer_step(v, &acc))
}

pub fn shift_identity() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        for m in super::modules(&alg) {
            for v in all_subsets(alg.vertex_count()) {
                let n = layer_length(&v, &m).length;
                let mut shifted = m.clone();
                for j in 0..=n {
                    assert_eq!(layer_length(&v, &shifted).length + j, n, "{name} {v:?} j={j}");
                    if j < n {
                        shifted = layer_step(&v, &shifted);
                    }
                }
                assert!(torsion_radical(&v, &shifted).is_zero());
            }
        }
    }
}

pub fn zero_layer_length_means_torsionfree() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        for m in super::modules(&alg) {
            for v in all_subsets(alg.vertex_count()) {
                if layer_length(&v, &m).length == 0 {
                    assert!(torsion_radical(&v, &m).is_zero());
                    assert!(composition_factors_in(&v, &m));
                    let q = torsion_quotient(&v, &m);
                    assert_eq!(q.dims(), m.dims());
                }
            }
        }
    }
}

pub fn algebra_layer_length_bounds_every_module() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        let modules = super::modules(&alg);
        for v in all_subsets(alg.vertex_count()) {
            let n = algebra_layer_length(&alg, &v);
            assert_eq!(n, layer_length(&v, &Representation::regular(&alg)).length);
            for m in &modules {
                assert!(layer_length(&v, m).length <= n);
                let f = iterate_f(&v, m, n);
                assert_eq!(layer_length(&v, &f).length, 0, "{name} {v:?}");
                assert!(composition_factors_in(&v, &f));
            }
        }
    }
}

pub fn layer_length_of_direct_sum_is_max() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        let modules: Vec<_> = super::modules(&alg).into_iter().filter(|m| m.total_dim() <= 12).collect();
        for v in all_subsets(alg.vertex_count()) {
            for (i, a) in modules.iter().enumerate().step_by(2) {
                for b in modules.iter().skip(i).step_by(5) {
                    let sum = direct_sum(&alg, &[a.clone(), b.clone()]);
                    let expected = layer_length(&v, a).length.max(layer_length(&v, b).length);
                    assert_eq!(layer_length(&v, &sum).length, expected);
                }
            }
        }
    }
}

pub fn torsion_pair_laws() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        let modules = super::modules(&alg);
        for v in all_subsets(alg.vertex_count()) {
            for m in &modules {
                let t = torsion_radical(&v, m);
                let tm = t.module().clone();
                // idempotent
                assert_eq!(torsion_radical(&v, &tm).dims(), tm.dims());
                // the quotient is torsion-free and filtered by V
                let q = torsion_quotient(&v, m);
                assert!(torsion_radical(&v, &q).is_zero());
                assert!(composition_factors_in(&v, &q));
                // top of the torsion part avoids V
                let top = tm.top().module;
                assert!(v.members().iter().all(|&w| top.dim_at(w) == 0));
            }
            // Hom(T, F) = 0
            for a in modules.iter().step_by(3) {
                let t = torsion_radical(&v, a).into_module();
                for b in modules.iter().step_by(4) {
                    let f = torsion_quotient(&v, b);
                    assert!(hom_space(&t, &f).unwrap().is_empty(), "{name} {v:?}");
                }
            }
        }
    }
}

pub fn vanishing_layer_length_iff_all_simples() {
    for name in ["A2", "B2", "N3"] {
        let alg = super::load(name);
        let k = alg.vertex_count();
        let modules = super::modules(&alg);
        for v in all_subsets(k) {
            let zero = algebra_layer_length(&alg, &v) == 0;
            assert_eq!(zero, v.is_all());
            if zero {
                assert!(modules.iter().all(|m| layer_length(&v, m).length == 0));
            }
        }
    }
}

pub fn same_verdict(a: Verdict, b: Verdict) -> bool {
    a.finite() == b.finite() && a.is_infinite() == b.is_infinite()
}

pub fn duality_of_dimensions() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        for m in super::modules(&alg) {
            let pd = projective_dimension(&m, 20).unwrap().verdict;
            let id = injective_dimension(&m.dual(), 20).unwrap().verdict;
            assert!(same_verdict(pd, id), "{name}: {pd:?} vs {id:?}");
        }
    }
}

pub fn covers_are_minimal() {
    for name in super::FIXTURES {
        let alg = super::load(name);
        for m in super::modules(&alg) {
            let trace = resolve(&m, 4);
            for step in &trace.steps {
                assert!(step.cover.is_minimal());
                let rad = step.cover.projective.radical();
                assert!(step.syzygy.is_contained_in(&rad));
                assert_eq!(
                    step.cover.projective.total_dim(),
                    step.syzygy.ambient().total_dim()
                );
            }
            let c = projective_cover(&m);
            assert!(c.epi.is_surjective());
        }
    }
}

// ---- brute force over the field with two elements ----

pub fn over_f2(name: &str) -> Arc<Algebra> {
    let mut doc = fixtures::document(name).unwrap();
    doc.field = FieldSpec::Prime { fp: 2 };
    Algebra::build(presentation_from_document(doc).unwrap(), 16).unwrap()
}

struct Flat {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// (source, target, matrix entries as bits, row-major)
    arrows: Vec<(usize, usize, Vec<Vec<u8>>)>,
}

fn bit(s: &radlayer::Scalar) -> u8 {
    s.to_string().parse().unwrap()
}

impl Flat {
    fn new(m: &Representation) -> Flat {
        let dims = m.dims().to_vec();
        let mut offsets = vec![0];
        for d in &dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let q = m.algebra().quiver();
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mat = m.map(a);
                let rows = (0..mat.rows()).map(|i| mat.row(i).iter().map(bit).collect()).collect();
                (arrow.source, arrow.target, rows)
            })
            .collect();
        Flat { dims, offsets, arrows }
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn project(&self, x: u32, v: usize) -> u32 {
        let mask = ((1u32 << self.dims[v]) - 1) << self.offsets[v];
        x & mask
    }

    fn act(&self, a: usize, x: u32) -> u32 {
        let (s, t, rows) = &self.arrows[a];
        let mut y = 0;
        for (i, row) in rows.iter().enumerate() {
            let mut acc = 0;
            for (j, &e) in row.iter().enumerate() {
                acc ^= e & ((x >> (self.offsets[*s] + j)) & 1) as u8;
            }
            if acc == 1 {
                y |= 1 << (self.offsets[*t] + i);
            }
        }
        y
    }
}

fn span(gens: impl IntoIterator<Item = u32>) -> HashSet<u32> {
    let mut set: HashSet<u32> = [0].into_iter().collect();
    for g in gens {
        if set.contains(&g) {
            continue;
        }
        let shifted: Vec<u32> = set.iter().map(|x| x ^ g).collect();
        set.extend(shifted);
    }
    set
}

/// Every subspace of `F_2^n` that is graded and closed under the arrows.
fn submodules(m: &Flat) -> Vec<HashSet<u32>> {
    let n = m.total();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut frontier = vec![span([])];
    let mut out = Vec::new();
    while let Some(s) = frontier.pop() {
        let mut key: Vec<u32> = s.iter().copied().collect();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        let graded = s.iter().all(|&x| (0..m.dims.len()).all(|v| s.contains(&m.project(x, v))));
        let closed = s.iter().all(|&x| (0..m.arrows.len()).all(|a| s.contains(&m.act(a, x))));
        if graded && closed {
            out.push(s.clone());
        }
        for x in 0..1u32 << n {
            if !s.contains(&x) {
                frontier.push(span(s.iter().copied().chain([x])));
            }
        }
    }
    out
}

fn oracle_torsion(m: &Flat, subs: &[HashSet<u32>], v: &SimpleSubset) -> HashSet<u32> {
    let torsion: Vec<&HashSet<u32>> = subs
        .iter()
        .filter(|w| {
            let rad = span(w.iter().flat_map(|&x| (0..m.arrows.len()).map(move |a| m.act(a, x))));
            v.members()
                .into_iter()
                .all(|u| w.iter().all(|&x| rad.contains(&m.project(x, u))))
        })
        .collect();
    let best = torsion.iter().max_by_key(|w| w.len()).unwrap();
    for w in &torsion {
        assert!(w.is_subset(best), "torsion submodules have a largest element");
    }
    (*best).clone()
}

fn engine_torsion(m: &Representation, flat: &Flat, v: &SimpleSubset) -> HashSet<u32> {
    let t = torsion_radical(v, m);
    let mut gens = Vec::new();
    for w in 0..flat.dims.len() {
        for col in t.basis(w).columns() {
            let mut x = 0;
            for (i, s) in col.iter().enumerate() {
                if bit(s) == 1 {
                    x |= 1 << (flat.offsets[w] + i);
                }
            }
            gens.push(x);
        }
    }
    span(gens)
}

fn all_matrices(rows: usize, cols: usize) -> Vec<Matrix> {
    let f = Field::Prime(2);
    (0..1u32 << (rows * cols))
        .map(|bits| {
            let data = (0..rows * cols).map(|i| f.from_i64((bits >> i & 1) as i64)).collect();
            Matrix::from_rows(f, rows, cols, data)
        })
        .collect()
}

fn check_against_oracle(m: &Representation) {
    let flat = Flat::new(m);
    let subs = submodules(&flat);
    for v in all_subsets(m.dims().len()) {
        assert_eq!(engine_torsion(m, &flat, &v), oracle_torsion(&flat, &subs, &v), "{m:?} {v:?}");
    }
}

pub fn torsion_matches_brute_force_over_f2() -> usize {
    let mut checked = 0;
    // one arrow and two parallel arrows between two vertices
    for name in ["A2", "KR"] {
        let alg = over_f2(name);
        let arrows = alg.quiver().arrows().len();
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
            let mats = all_matrices(b, a);
            let choices: Vec<Vec<Matrix>> = if arrows == 1 {
                mats.iter().map(|m| vec![m.clone()]).collect()
            } else {
                let step = if a * b >= 4 { 7 } else { 1 };
                mats.iter()
                    .step_by(step)
                    .flat_map(|x| mats.iter().step_by(step).map(move |y| vec![x.clone(), y.clone()]))
                    .collect()
            };
            for maps in choices {
                let m = Representation::new_checked(alg.clone(), vec![a, b], maps).unwrap();
                check_against_oracle(&m);
                checked += 1;
            }
        }
    }
    // a loop with x^3 = 0
    let n3 = over_f2("N3");
    for d in 1..=4 {
        let mats = all_matrices(d, d);
        let step = if d == 4 { 211 } else { 1 };
        for x in mats.into_iter().step_by(step) {
            if let Ok(m) = Representation::new_checked(n3.clone(), vec![d], vec![x]) {
                check_against_oracle(&m);
                checked += 1;
            }
        }
    }
    // projectives, injectives and simples of small fixtures
    for name in ["A2", "N2", "N3", "KR"] {
        let alg = over_f2(name);
        for m in super::modules(&alg) {
            if m.total_dim() <= 4 {
                check_against_oracle(&m);
                checked += 1;
            }
        }
    }
    assert!(checked > 300, "only {checked} modules checked");
    checked
}

