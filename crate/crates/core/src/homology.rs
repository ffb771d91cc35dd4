//! Minimal projective covers, syzygies, cosyzygies and homological
//! dimensions with certified-infinite verdicts.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::rep::{direct_sum, is_isomorphic, IsoTest, IsoVerdict, RepMorphism, Representation, SubRep};

pub const DEFAULT_CUTOFF: usize = 50;

/// Outcome of a dimension computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The dimension is exactly this value; `-1` for the zero module.
    Finite(i64),
    /// No conclusion within the cutoff; the dimension is at least this.
    AtLeast(usize),
    /// Syzygies `from` and `to` are isomorphic and nonzero.
    Infinite { from: usize, to: usize },
}

impl Verdict {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Verdict::Finite(k) => Some(*k),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Verdict::Infinite { .. })
    }

    /// Supremum of several verdicts; `Finite(-1)` for the empty family.
    pub fn max_of(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut best = Verdict::Finite(-1);
        for v in verdicts {
            best = match (best, v) {
                (b @ Verdict::Infinite { .. }, _) => b,
                (_, v @ Verdict::Infinite { .. }) => v,
                (Verdict::AtLeast(a), Verdict::AtLeast(b)) => Verdict::AtLeast(a.max(b)),
                (Verdict::AtLeast(a), Verdict::Finite(k)) | (Verdict::Finite(k), Verdict::AtLeast(a)) => {
                    Verdict::AtLeast(a.max(k.max(0) as usize))
                }
                (Verdict::Finite(a), Verdict::Finite(b)) => Verdict::Finite(a.max(b)),
            };
        }
        best
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite(k) => write!(f, "{k}"),
            Verdict::AtLeast(c) => write!(f, ">={c}"),
            Verdict::Infinite { .. } => write!(f, "inf"),
        }
    }
}

/// A verdict together with the isomorphism certifying periodicity.
#[derive(Clone)]
pub struct HomDim {
    pub verdict: Verdict,
    pub witness: Option<RepMorphism>,
}

impl fmt::Debug for HomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.verdict)
    }
}

#[derive(Clone)]
pub struct ProjectiveCover {
    pub projective: Representation,
    /// Vertex of each indecomposable summand, in block order.
    pub summands: Vec<usize>,
    pub epi: RepMorphism,
}

/// `P = ⊕ P(v)^{d_v}` with `d_v = dim top(M)_v`, mapping generators onto
/// lifts of a basis of the top.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let alg = m.algebra().clone();
    let f = alg.field();
    let nv = alg.vertex_count();
    let top = m.top();
    let mut summands = Vec::new();
    let mut images: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
    let mut projectives = Vec::new();
    for v in 0..nv {
        for x in top.lifts[v].columns() {
            summands.push(v);
            projectives.push(Representation::projective(&alg, v).unwrap());
            // image of each normal path p starting at v is x . p
            let mut image: Vec<Option<Vec<Scalar>>> = vec![None; alg.dim()];
            for (i, p) in alg.basis().iter().enumerate() {
                if p.source != v {
                    continue;
                }
                let y = match p.arrows.split_last() {
                    None => x.clone(),
                    Some((&a, init)) => {
                        let prefix = crate::quiver::PathWord {
                            source: v,
                            target: alg.quiver().arrow(a).source,
                            arrows: init.to_vec(),
                        };
                        let j = alg.basis_index(&prefix).expect("prefix of a normal path is normal");
                        m.map(a).mul_vec(image[j].as_ref().unwrap())
                    }
                };
                images[p.target].push(y.clone());
                image[i] = Some(y);
            }
        }
    }
    let projective = direct_sum(&alg, &projectives);
    let blocks = (0..nv)
        .map(|w| Matrix::from_columns(f, m.dim_at(w), &images[w]))
        .collect();
    let epi = RepMorphism::new(projective.clone(), m.clone(), blocks).expect("cover map is a homomorphism");
    debug_assert!(epi.is_surjective());
    ProjectiveCover {
        projective,
        summands,
        epi,
    }
}

impl ProjectiveCover {
    pub fn top_multiplicities(&self, vertex_count: usize) -> Vec<usize> {
        let mut out = vec![0; vertex_count];
        for &v in &self.summands {
            out[v] += 1;
        }
        out
    }

    pub fn kernel(&self) -> SubRep {
        self.epi.kernel()
    }

    /// The kernel lies in the radical of the cover.
    pub fn is_minimal(&self) -> bool {
        self.kernel().is_contained_in(&self.projective.radical())
    }
}

pub fn syzygy(m: &Representation) -> Representation {
    projective_cover(m).kernel().into_module()
}

/// `Ω^{-1}(M)`, computed as `D Ω (D M)`.
pub fn cosyzygy(m: &Representation) -> Representation {
    syzygy(&m.dual()).dual()
}

pub struct ResolutionStep {
    pub cover: ProjectiveCover,
    pub syzygy: SubRep,
}

pub struct ResolutionTrace {
    pub module: Representation,
    pub steps: Vec<ResolutionStep>,
}

/// Minimal projective resolution, `steps` covers long (stops early at zero).
pub fn resolve(m: &Representation, steps: usize) -> ResolutionTrace {
    let mut out = Vec::new();
    let mut current = m.clone();
    for _ in 0..steps {
        if current.is_zero() {
            break;
        }
        let cover = projective_cover(&current);
        let syz = cover.kernel();
        current = syz.module().clone();
        out.push(ResolutionStep { cover, syzygy: syz });
    }
    ResolutionTrace {
        module: m.clone(),
        steps: out,
    }
}

/// Iterates minimal syzygies up to `Ω^cutoff`, comparing each new syzygy
/// with every earlier one (the module itself included).
pub fn projective_dimension_with(m: &Representation, cutoff: usize, iso: &IsoTest) -> Result<HomDim> {
    let cutoff = cutoff.max(1);
    if m.is_zero() {
        return Ok(HomDim {
            verdict: Verdict::Finite(-1),
            witness: None,
        });
    }
    let mut syzygies = vec![m.clone()];
    for i in 0..cutoff {
        let next = syzygy(&syzygies[i]);
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

pub fn projective_dimension(m: &Representation, cutoff: usize) -> Result<HomDim> {
    projective_dimension_with(m, cutoff, &IsoTest::default())
}

/// `id M = pd D(M)` over the opposite algebra.
pub fn injective_dimension_with(m: &Representation, cutoff: usize, iso: &IsoTest) -> Result<HomDim> {
    projective_dimension_with(&m.dual(), cutoff, iso)
}

pub fn injective_dimension(m: &Representation, cutoff: usize) -> Result<HomDim> {
    injective_dimension_with(m, cutoff, &IsoTest::default())
}

/// Projective dimension of every simple, indexed by vertex.
pub fn simple_projective_dimensions(alg: &Arc<Algebra>, cutoff: usize, iso: &IsoTest) -> Result<Vec<HomDim>> {
    (0..alg.vertex_count())
        .map(|v| projective_dimension_with(&Representation::simple(alg, v)?, cutoff, iso))
        .collect()
}

pub fn simple_injective_dimensions(alg: &Arc<Algebra>, cutoff: usize, iso: &IsoTest) -> Result<Vec<HomDim>> {
    (0..alg.vertex_count())
        .map(|v| injective_dimension_with(&Representation::simple(alg, v)?, cutoff, iso))
        .collect()
}

/// Supremum of the projective dimensions of the simples.
pub fn global_dimension(alg: &Arc<Algebra>, cutoff: usize) -> Result<Verdict> {
    let pds = simple_projective_dimensions(alg, cutoff, &IsoTest::default())?;
    Ok(Verdict::max_of(pds.iter().map(|h| h.verdict)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn simple(alg: &Arc<Algebra>, v: usize) -> Representation {
        Representation::simple(alg, v).unwrap()
    }

    #[test]
    fn covers_of_simples_and_projectives() {
        let b2 = fixtures::load("B2").unwrap();
        for v in 0..3 {
            let s = simple(&b2, v);
            let c = projective_cover(&s);
            assert_eq!(c.summands, vec![v]);
            assert!(c.is_minimal());
            let p = Representation::projective(&b2, v).unwrap();
            let cp = projective_cover(&p);
            assert_eq!(cp.projective.dims(), p.dims());
            assert!(cp.kernel().is_zero());
            assert!(syzygy(&p).is_zero());
        }
    }

    #[test]
    fn truncated_loop_is_periodic() {
        let n2 = fixtures::load("N2").unwrap();
        let s = simple(&n2, 0);
        assert_eq!(syzygy(&s).dims(), &[1]);
        assert_eq!(cosyzygy(&s).dims(), &[1]);
        let pd = projective_dimension(&s, 10).unwrap();
        assert_eq!(pd.verdict, Verdict::Infinite { from: 0, to: 1 });
        let w = pd.witness.unwrap();
        assert!(w.is_isomorphism() && w.is_intertwining());
        let rad = Representation::projective(&n2, 0).unwrap().radical().into_module();
        let c = projective_cover(&rad);
        assert_eq!(c.kernel().total_dim(), 1);
    }

    #[test]
    fn period_two_in_n3() {
        let n3 = fixtures::load("N3").unwrap();
        let pd = projective_dimension(&simple(&n3, 0), 10).unwrap();
        assert_eq!(pd.verdict, Verdict::Infinite { from: 0, to: 2 });
    }

    #[test]
    fn a2_dimensions() {
        let a2 = fixtures::load("A2").unwrap();
        assert_eq!(syzygy(&simple(&a2, 0)).dims(), &[0, 1]);
        assert_eq!(projective_dimension(&simple(&a2, 0), 10).unwrap().verdict, Verdict::Finite(1));
        assert_eq!(injective_dimension(&simple(&a2, 1), 10).unwrap().verdict, Verdict::Finite(1));
        assert_eq!(cosyzygy(&simple(&a2, 1)).dims(), &[1, 0]);
        let i1 = Representation::injective(&a2, 0).unwrap();
        assert!(cosyzygy(&i1).is_zero());
        assert_eq!(injective_dimension(&i1, 3).unwrap().verdict, Verdict::Finite(0));
    }

    #[test]
    fn cutoff_yields_at_least() {
        let b2 = fixtures::load("B2").unwrap();
        assert_eq!(projective_dimension(&simple(&b2, 0), 1).unwrap().verdict, Verdict::AtLeast(1));
        assert_eq!(projective_dimension(&simple(&b2, 0), 2).unwrap().verdict, Verdict::AtLeast(2));
        assert_eq!(projective_dimension(&simple(&b2, 0), 3).unwrap().verdict, Verdict::Finite(2));
    }

    #[test]
    fn max_of_verdicts() {
        use Verdict::*;
        assert_eq!(Verdict::max_of([]), Finite(-1));
        assert_eq!(Verdict::max_of([Finite(1), Finite(3)]), Finite(3));
        assert_eq!(Verdict::max_of([Finite(4), AtLeast(2)]), AtLeast(4));
        assert_eq!(
            Verdict::max_of([AtLeast(2), Infinite { from: 0, to: 1 }]),
            Infinite { from: 0, to: 1 }
        );
    }
}
