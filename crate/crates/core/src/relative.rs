//! Subcategories `add X` of finite type: the endomorphism algebra of `⊕ X_i`,
//! minimal right `add X`-approximations, relative syzygies and relative
//! projective / injective dimensions.
//!
//! Minimality comes from the top of `Hom(⊕X_i, M)` as a right module over
//! `E = End(⊕X_i)`: generators are chosen modulo `Hom(X, M) · rad E`, whose
//! radical is found from the trace form of the regular representation
//! (characteristic zero only).

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homology::{HomDim, Verdict};
use crate::linalg::{Matrix, SpanBuilder};
use crate::rep::{direct_sum, hom_space, is_isomorphic, IsoTest, IsoVerdict, RepMorphism, Representation, SubRep};
use crate::torsion::{algebra_layer_length, SimpleSubset};

/// `add X` for a list of (declared) indecomposable, pairwise non-isomorphic
/// generators.
#[derive(Clone)]
pub struct FiniteSubcategory {
    algebra: Arc<Algebra>,
    generators: Vec<Representation>,
    contains_all_projectives: bool,
    contains_all_injectives: bool,
    asserted_resolving: bool,
    asserted_coresolving: bool,
}

fn matrix_power(m: &Matrix, mut e: usize) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.rows());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// Fitting's lemma: a large power of an endomorphism that is neither zero
/// nor invertible splits its module.
fn splits_module(x: &RepMorphism) -> bool {
    let n = x.source().total_dim().max(1);
    let powers: Vec<Matrix> = x.blocks().iter().map(|b| matrix_power(b, n)).collect();
    let zero = powers.iter().all(Matrix::is_zero);
    let invertible = powers.iter().all(Matrix::is_invertible);
    !zero && !invertible
}

impl FiniteSubcategory {
    pub fn new(
        algebra: &Arc<Algebra>,
        generators: Vec<Representation>,
        asserted_resolving: bool,
        asserted_coresolving: bool,
        iso: &IsoTest,
    ) -> Result<FiniteSubcategory> {
        for g in &generators {
            if !Arc::ptr_eq(g.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if g.is_zero() {
                return Err(Error::Subcategory("generators must be nonzero".into()));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if is_isomorphic(a, b, iso)?.is_isomorphic() {
                    return Err(Error::Subcategory(format!("generator {i} is repeated up to isomorphism")));
                }
            }
        }
        let f = algebra.field();
        let mut rng_seed = iso.seed;
        for (i, g) in generators.iter().enumerate() {
            let ends = hom_space(g, g)?;
            let mut candidates = ends.clone();
            // a few random endomorphisms too
            for _ in 0..3 {
                rng_seed = rng_seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let mut acc = ends[0].scale(&f.zero());
                for (k, e) in ends.iter().enumerate() {
                    let c = f.from_i64(((rng_seed >> (k % 48)) & 0xff) as i64 + 1);
                    acc = acc.add(&e.scale(&c));
                }
                candidates.push(acc);
            }
            if candidates.iter().any(splits_module) {
                return Err(Error::Subcategory(format!("generator {i} is decomposable")));
            }
        }
        Self::new_unchecked(algebra, generators, asserted_resolving, asserted_coresolving, iso)
    }

    /// Skips the indecomposability and non-isomorphism checks; only the
    /// projective / injective coverage flags are computed.
    pub fn new_unchecked(
        algebra: &Arc<Algebra>,
        generators: Vec<Representation>,
        asserted_resolving: bool,
        asserted_coresolving: bool,
        iso: &IsoTest,
    ) -> Result<FiniteSubcategory> {
        for g in &generators {
            if !Arc::ptr_eq(g.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let contains = |make: &dyn Fn(usize) -> Result<Representation>| -> Result<bool> {
            for v in 0..algebra.vertex_count() {
                let p = make(v)?;
                let mut found = false;
                for g in &generators {
                    if g.dims() == p.dims() && is_isomorphic(g, &p, iso)?.is_isomorphic() {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let contains_all_projectives = contains(&|v| Representation::projective(algebra, v))?;
        let contains_all_injectives = contains(&|v| Representation::injective(algebra, v))?;
        Ok(FiniteSubcategory {
            algebra: algebra.clone(),
            generators,
            contains_all_projectives,
            contains_all_injectives,
            asserted_resolving,
            asserted_coresolving,
        })
    }

    /// `add Λ`: the indecomposable projectives.
    pub fn projectives(algebra: &Arc<Algebra>) -> Result<FiniteSubcategory> {
        let gens = (0..algebra.vertex_count())
            .map(|v| Representation::projective(algebra, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, gens, true, false, &IsoTest::default())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Representation] {
        &self.generators
    }

    pub fn contains_all_projectives(&self) -> bool {
        self.contains_all_projectives
    }

    pub fn contains_all_injectives(&self) -> bool {
        self.contains_all_injectives
    }

    pub fn asserted_resolving(&self) -> bool {
        self.asserted_resolving
    }

    pub fn asserted_coresolving(&self) -> bool {
        self.asserted_coresolving
    }

    /// `D X` over the opposite algebra; resolving and coresolving swap.
    pub fn dual(&self) -> FiniteSubcategory {
        FiniteSubcategory {
            algebra: self.algebra.opposite(),
            generators: self.generators.iter().map(Representation::dual).collect(),
            contains_all_projectives: self.contains_all_injectives,
            contains_all_injectives: self.contains_all_projectives,
            asserted_resolving: self.asserted_coresolving,
            asserted_coresolving: self.asserted_resolving,
        }
    }
}

/// Basis of a Hom space with a coordinate solver.
struct HomBlock {
    basis: Vec<RepMorphism>,
    flat: Matrix,
}

impl HomBlock {
    fn new(field: Field, basis: Vec<RepMorphism>, flat_len: usize) -> HomBlock {
        let cols: Vec<Vec<Scalar>> = basis.iter().map(RepMorphism::flatten).collect();
        HomBlock {
            flat: Matrix::from_columns(field, flat_len, &cols),
            basis,
        }
    }

    fn coordinates(&self, m: &RepMorphism) -> Vec<Scalar> {
        let f = self.flat.field();
        let v = m.flatten();
        let b = Matrix::from_columns(f, v.len(), &[v]);
        self.flat
            .solve(&b)
            .expect("morphism lies in the Hom space")
            .column(0)
    }
}

fn flat_len(source: &Representation, target: &Representation) -> usize {
    source.dims().iter().zip(target.dims()).map(|(a, b)| a * b).sum()
}

/// `End(⊕ X_i)` with basis `⋃ Hom(X_i, X_j)` and product `a * b = a ∘ b`.
pub struct EndAlgebra {
    field: Field,
    /// `(i, j, morphism X_i -> X_j)` per basis element.
    basis: Vec<(usize, usize, RepMorphism)>,
    structure: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Vec<Scalar>,
    radical: Matrix,
}

impl EndAlgebra {
    pub fn new(x: &FiniteSubcategory) -> Result<EndAlgebra> {
        let f = x.algebra.field();
        if f != Field::Rationals {
            return Err(Error::UnsupportedField(format!(
                "endomorphism radicals need characteristic 0, got {f}"
            )));
        }
        let k = x.generators.len();
        let mut blocks: Vec<Vec<HomBlock>> = Vec::with_capacity(k);
        for gi in &x.generators {
            let row = x
                .generators
                .iter()
                .map(|gj| Ok(HomBlock::new(f, hom_space(gi, gj)?, flat_len(gi, gj))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(row);
        }
        let mut basis = Vec::new();
        let mut offset = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                offset[i][j] = basis.len();
                for m in &blocks[i][j].basis {
                    basis.push((i, j, m.clone()));
                }
            }
        }
        let dim = basis.len();
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for (a, (ja, la, ma)) in basis.iter().enumerate() {
            for (b, (ib, jb, mb)) in basis.iter().enumerate() {
                if jb != ja {
                    continue;
                }
                let comp = ma.compose(mb);
                let coords = blocks[*ib][*la].coordinates(&comp);
                structure[a][b] = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (offset[*ib][*la] + t, c))
                    .collect();
            }
        }
        let mut unit = vec![f.zero(); dim];
        for i in 0..k {
            let id = RepMorphism::identity(&x.generators[i]);
            for (t, c) in blocks[i][i].coordinates(&id).into_iter().enumerate() {
                unit[offset[i][i] + t] = c;
            }
        }
        // trace of left multiplication by each basis element
        let traces: Vec<Scalar> = (0..dim)
            .map(|a| {
                let mut t = f.zero();
                for b in 0..dim {
                    for (c, x) in &structure[a][b] {
                        if *c == b {
                            t = &t + x;
                        }
                    }
                }
                t
            })
            .collect();
        let mut gram = Matrix::zeros(f, dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let mut t = f.zero();
                for (c, x) in &structure[a][b] {
                    t = &t + &(x * &traces[*c]);
                }
                gram.set(a, b, t);
            }
        }
        let radical = gram.kernel();
        Ok(EndAlgebra {
            field: f,
            basis,
            structure,
            unit,
            radical,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Product of two elements in basis coordinates.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (c, z) in &self.structure[a][b] {
                    out[*c] = &out[*c] + &(&s * z);
                }
            }
        }
        out
    }

    /// Radical basis vectors in basis coordinates.
    pub fn radical_basis(&self) -> Vec<Vec<Scalar>> {
        self.radical.columns()
    }

    /// Nilpotency index of the radical (`rad^k = 0`), if it is at most
    /// `dim + 1`.
    pub fn radical_nilpotency(&self) -> Option<usize> {
        let rad = self.radical_basis();
        let mut power = rad.clone();
        for k in 1..=self.dim() + 1 {
            let mut span = SpanBuilder::new(self.field, self.dim());
            for p in &power {
                span.insert(p);
            }
            if span.dim() == 0 {
                return Some(k);
            }
            let basis = span.basis().columns();
            power = basis
                .iter()
                .flat_map(|p| rad.iter().map(move |r| (p, r)))
                .map(|(p, r)| self.multiply(p, r))
                .collect();
        }
        None
    }

    fn hom_blocks(&self, k: usize) -> Vec<Vec<Vec<RepMorphism>>> {
        let mut out = vec![vec![Vec::new(); k]; k];
        for (i, j, m) in &self.basis {
            out[*i][*j].push(m.clone());
        }
        out
    }

    /// Components of the radical inside `Hom(X_i, X_j)`, as morphisms.
    fn radical_blocks(&self, k: usize) -> Vec<Vec<Vec<RepMorphism>>> {
        let mut out = vec![vec![Vec::new(); k]; k];
        for r in self.radical.columns() {
            for i in 0..k {
                for j in 0..k {
                    let mut acc: Option<RepMorphism> = None;
                    for (t, c) in r.iter().enumerate() {
                        let (bi, bj, m) = &self.basis[t];
                        if c.is_zero() || *bi != i || *bj != j {
                            continue;
                        }
                        let term = m.scale(c);
                        acc = Some(match acc {
                            Some(a) => a.add(&term),
                            None => term,
                        });
                    }
                    if let Some(a) = acc {
                        out[i][j].push(a);
                    }
                }
            }
        }
        out
    }
}

/// `f: ⊕ X_i^{m_i} -> M`.
pub struct Approximation {
    pub multiplicities: Vec<usize>,
    /// Generator index of each summand of the source, in block order.
    pub summands: Vec<usize>,
    pub morphism: RepMorphism,
    pub kernel: SubRep,
}

/// Cache of the data that does not depend on the approximated module.
pub struct Approximator {
    x: FiniteSubcategory,
    end: EndAlgebra,
    rad_blocks: Vec<Vec<Vec<RepMorphism>>>,
    /// `homs[i][j]` is a basis of `Hom(X_i, X_j)`.
    homs: Vec<Vec<Vec<RepMorphism>>>,
}

impl Approximator {
    pub fn new(x: &FiniteSubcategory) -> Result<Approximator> {
        let end = EndAlgebra::new(x)?;
        let k = x.generators.len();
        let rad_blocks = end.radical_blocks(k);
        let homs = end.hom_blocks(k);
        Ok(Approximator {
            x: x.clone(),
            end,
            rad_blocks,
            homs,
        })
    }

    pub fn end_algebra(&self) -> &EndAlgebra {
        &self.end
    }

    pub fn subcategory(&self) -> &FiniteSubcategory {
        &self.x
    }

    /// Minimal right `add X`-approximation of `m`.
    pub fn right_approximation(&self, m: &Representation) -> Result<Approximation> {
        if !Arc::ptr_eq(m.algebra(), &self.x.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let f = m.field();
        let gens = &self.x.generators;
        let k = gens.len();
        let homs: Vec<Vec<RepMorphism>> = gens
            .iter()
            .map(|g| hom_space(g, m))
            .collect::<Result<Vec<_>>>()?;
        let mut multiplicities = vec![0; k];
        let mut chosen: Vec<(usize, RepMorphism)> = Vec::new();
        for i in 0..k {
            let mut span = SpanBuilder::new(f, flat_len(&gens[i], m));
            for j in 0..k {
                for h in &homs[j] {
                    for r in &self.rad_blocks[i][j] {
                        span.insert(&h.compose(r).flatten());
                    }
                }
            }
            // generators already chosen cover their whole E-orbit
            for (j, h) in &chosen {
                for phi in &self.homs[i][*j] {
                    span.insert(&h.compose(phi).flatten());
                }
            }
            for h in &homs[i] {
                if span.contains(&h.flatten()) {
                    continue;
                }
                multiplicities[i] += 1;
                chosen.push((i, h.clone()));
                for d in &self.homs[i][i] {
                    span.insert(&h.compose(d).flatten());
                }
            }
        }
        let summands: Vec<usize> = chosen.iter().map(|(i, _)| *i).collect();
        let sources: Vec<Representation> = summands.iter().map(|&i| gens[i].clone()).collect();
        let source = direct_sum(&self.x.algebra, &sources);
        let blocks = (0..m.dims().len())
            .map(|v| {
                let mut acc = Matrix::zeros(f, m.dim_at(v), 0);
                for (_, h) in &chosen {
                    acc = acc.hstack(h.block(v));
                }
                acc
            })
            .collect();
        let morphism = RepMorphism::new(source, m.clone(), blocks)?;
        let kernel = morphism.kernel();
        Ok(Approximation {
            multiplicities,
            summands,
            morphism,
            kernel,
        })
    }

    /// Every map from a generator to `m` factors through `approx`.
    pub fn factors_through(&self, approx: &Approximation) -> Result<bool> {
        let m = approx.morphism.target();
        let src = approx.morphism.source();
        let f = m.field();
        for g in &self.x.generators {
            let targets = hom_space(g, m)?;
            if targets.is_empty() {
                continue;
            }
            let lifts = hom_space(g, src)?;
            let len = flat_len(g, m);
            let cols: Vec<Vec<Scalar>> = lifts
                .iter()
                .map(|u| approx.morphism.compose(u).flatten())
                .collect();
            let a = Matrix::from_columns(f, len, &cols);
            let rhs: Vec<Vec<Scalar>> = targets.iter().map(RepMorphism::flatten).collect();
            let b = Matrix::from_columns(f, len, &rhs);
            if a.solve(&b).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn relative_syzygy(&self, m: &Representation) -> Result<Representation> {
        Ok(self.right_approximation(m)?.kernel.into_module())
    }

    /// Least `n` with `Ω^n_X(M) ∈ add X`. Membership is read off the
    /// minimal approximation (an isomorphism exactly when `M ∈ add X`), so
    /// the loop stops at the first vanishing relative syzygy.
    pub fn relative_pd(&self, m: &Representation, cutoff: usize, iso: &IsoTest) -> Result<HomDim> {
        if !self.x.contains_all_projectives {
            return Err(Error::Subcategory(
                "relative projective dimension needs every indecomposable projective among the generators".into(),
            ));
        }
        let cutoff = cutoff.max(1);
        if m.is_zero() {
            return Ok(HomDim {
                verdict: Verdict::Finite(-1),
                witness: None,
            });
        }
        let mut syzygies = vec![m.clone()];
        for i in 0..cutoff {
            let next = self.relative_syzygy(&syzygies[i])?;
            if next.is_zero() {
                return Ok(HomDim {
                    verdict: Verdict::Finite(i as i64),
                    witness: None,
                });
            }
            for (j, earlier) in syzygies.iter().enumerate() {
                if earlier.dims() != next.dims() {
                    continue;
                }
                if let IsoVerdict::Isomorphic(w) = is_isomorphic(earlier, &next, iso)? {
                    return Ok(HomDim {
                        verdict: Verdict::Infinite { from: j, to: i + 1 },
                        witness: Some(w),
                    });
                }
            }
            syzygies.push(next);
        }
        Ok(HomDim {
            verdict: Verdict::AtLeast(cutoff),
            witness: None,
        })
    }
}

pub fn end_algebra(x: &FiniteSubcategory) -> Result<EndAlgebra> {
    EndAlgebra::new(x)
}

pub fn minimal_right_approximation(x: &FiniteSubcategory, m: &Representation) -> Result<Approximation> {
    Approximator::new(x)?.right_approximation(m)
}

pub fn relative_syzygy(x: &FiniteSubcategory, m: &Representation) -> Result<Representation> {
    Approximator::new(x)?.relative_syzygy(m)
}

/// `Ω^{-1}_X(M) = D Ω_{DX}(D M)`.
pub fn relative_cosyzygy(x: &FiniteSubcategory, m: &Representation) -> Result<Representation> {
    Ok(Approximator::new(&x.dual())?.relative_syzygy(&m.dual())?.dual())
}

pub fn relative_pd(x: &FiniteSubcategory, m: &Representation, cutoff: usize) -> Result<HomDim> {
    Approximator::new(x)?.relative_pd(m, cutoff, &IsoTest::default())
}

/// `id_X M = pd_{DX} D M`; needs every indecomposable injective in `X`.
pub fn relative_id(x: &FiniteSubcategory, m: &Representation, cutoff: usize) -> Result<HomDim> {
    if !x.contains_all_injectives {
        return Err(Error::Subcategory(
            "relative injective dimension needs every indecomposable injective among the generators".into(),
        ));
    }
    Approximator::new(&x.dual())?.relative_pd(&m.dual(), cutoff, &IsoTest::default())
}

/// Which side of the relative bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Projective,
    Injective,
}

/// `max_{S ∈ V} pd_X S + ℓℓ(Λ)` (or with `id_X`); `None` when the relative
/// dimension of `V` is not a determined finite number.
pub struct RelativeBound {
    pub class_dim: Verdict,
    pub layer_length: usize,
    pub bound: Option<i64>,
}

pub fn relative_bound(x: &FiniteSubcategory, v: &SimpleSubset, side: Side, cutoff: usize) -> Result<RelativeBound> {
    let alg = &x.algebra;
    let (approximator, algebra) = match side {
        Side::Projective => {
            if !x.contains_all_projectives {
                return Err(Error::Subcategory("X does not contain all projectives".into()));
            }
            (Approximator::new(x)?, alg.clone())
        }
        Side::Injective => {
            if !x.contains_all_injectives {
                return Err(Error::Subcategory("X does not contain all injectives".into()));
            }
            (Approximator::new(&x.dual())?, alg.opposite())
        }
    };
    let iso = IsoTest::default();
    let verdicts = v
        .members()
        .into_iter()
        .map(|w| {
            let s = Representation::simple(&algebra, w)?;
            Ok(approximator.relative_pd(&s, cutoff, &iso)?.verdict)
        })
        .collect::<Result<Vec<_>>>()?;
    let class_dim = Verdict::max_of(verdicts);
    let layer_length = algebra_layer_length(alg, v);
    let bound = class_dim.finite().map(|d| d + layer_length as i64);
    Ok(RelativeBound {
        class_dim,
        layer_length,
        bound,
    })
}
