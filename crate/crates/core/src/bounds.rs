//! Upper bounds on extension and derived dimension from a subset `V` of
//! simples, the classical baselines `LL - 1` and `gldim`, and an exhaustive
//! search over all `V`.
//!
//! With `d = min{pd V, id V}` and `n = ℓℓ^{t_V}(Λ)`:
//! `extdim ≤ d + n`, `derdim ≤ 2(d+n)+1` when `d ≥ 1, n ≥ 2` and
//! `(d+2)(n+1)-2` otherwise; the latter is also the older bound.

use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::{simple_injective_dimensions, simple_projective_dimensions, Verdict};
use crate::rep::{IsoTest, Representation};
use crate::torsion::{layer_length, LayerCache, SimpleSubset};

pub const DEFAULT_SUBSET_CAP: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    /// `pd V` and `id V` are both infinite: this `V` gives no finite bound.
    NoFiniteBound,
    /// A cutoff was hit before the value was determined.
    Undetermined,
}

/// A bound cell: a number, or an honest "unknown".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Value(i64),
    Unknown(UnknownReason),
}

impl Bound {
    pub fn value(&self) -> Option<i64> {
        match self {
            Bound::Value(v) => Some(*v),
            Bound::Unknown(_) => None,
        }
    }

    fn map(self, f: impl FnOnce(i64) -> i64) -> Bound {
        match self {
            Bound::Value(v) => Bound::Value(f(v)),
            u => u,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Value(v) => write!(f, "{v}"),
            Bound::Unknown(UnknownReason::NoFiniteBound) => f.write_str("unknown(inf)"),
            Bound::Unknown(UnknownReason::Undetermined) => f.write_str("unknown"),
        }
    }
}

/// `min{pd V, id V}` without ever under-reporting.
pub fn min_dimension(pd: Verdict, id: Verdict) -> Bound {
    use Verdict::*;
    match (pd, id) {
        (Finite(a), Finite(b)) => Bound::Value(a.min(b)),
        (Finite(a), Infinite { .. }) | (Infinite { .. }, Finite(a)) => Bound::Value(a),
        (Finite(a), AtLeast(c)) | (AtLeast(c), Finite(a)) if a <= c as i64 => Bound::Value(a),
        (Infinite { .. }, Infinite { .. }) => Bound::Unknown(UnknownReason::NoFiniteBound),
        _ => Bound::Unknown(UnknownReason::Undetermined),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `2(d+n)+1`, taken when `d ≥ 1` and `n ≥ 2`.
    Refined,
    /// `(d+2)(n+1)-2`.
    Otherwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerdimBound {
    pub new: Bound,
    pub old: Bound,
    pub branch: Option<Branch>,
}

pub fn old_derdim_formula(d: i64, n: i64) -> i64 {
    (d + 2) * (n + 1) - 2
}

pub fn derdim_formula(d: i64, n: i64) -> (i64, Branch) {
    if d >= 1 && n >= 2 {
        (2 * (d + n) + 1, Branch::Refined)
    } else {
        (old_derdim_formula(d, n), Branch::Otherwise)
    }
}

fn derdim_from(d: Bound, n: Option<usize>) -> DerdimBound {
    match (d, n) {
        (Bound::Value(d), Some(n)) => {
            let n = n as i64;
            let (new, branch) = derdim_formula(d, n);
            DerdimBound {
                new: Bound::Value(new),
                old: Bound::Value(old_derdim_formula(d, n)),
                branch: Some(branch),
            }
        }
        (u @ Bound::Unknown(_), _) => DerdimBound {
            new: u,
            old: u,
            branch: None,
        },
        (_, None) => DerdimBound {
            new: Bound::Unknown(UnknownReason::Undetermined),
            old: Bound::Unknown(UnknownReason::Undetermined),
            branch: None,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub v: Vec<String>,
    pub pd_v: Verdict,
    pub id_v: Verdict,
    pub d: Bound,
    /// `ℓℓ^{t_V}(Λ)`; not computed when `d` is unknown.
    pub n: Option<usize>,
    pub extdim: Bound,
    pub derdim_new: Bound,
    pub derdim_old: Bound,
    pub branch: Option<Branch>,
    /// New derived bound strictly below the old formula.
    pub beats_old: bool,
    /// New derived bound strictly below the old formula, `LL - 1`, and
    /// `gldim` when that is finite.
    pub below_comparators: bool,
    pub best_extdim: bool,
    pub best_derdim: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Baselines {
    pub loewy_length: usize,
    pub ll_minus_one: i64,
    pub gldim: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub algebra: String,
    pub cutoff: usize,
    pub baselines: Baselines,
    pub rows: Vec<BoundRow>,
    pub best_extdim: Option<i64>,
    pub best_derdim: Option<i64>,
}

impl BoundReport {
    pub fn row(&self, v: &[&str]) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.v.iter().map(String::as_str).eq(v.iter().copied()))
    }

    /// Aligned text table.
    pub fn table(&self) -> String {
        let header = ["V", "pdV", "idV", "d", "n", "extdim<=", "derdim<=(new)", "derdim<=(old)", "flags"];
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            let mut flags = Vec::new();
            if r.below_comparators {
                flags.push("below-comparators");
            } else if r.beats_old {
                flags.push("beats-old");
            }
            if r.best_extdim {
                flags.push("best-extdim");
            }
            if r.best_derdim {
                flags.push("best-derdim");
            }
            cells.push(vec![
                format!("{{{}}}", r.v.join(",")),
                r.pd_v.to_string(),
                r.id_v.to_string(),
                r.d.to_string(),
                r.n.map_or("-".into(), |n| n.to_string()),
                r.extdim.to_string(),
                r.derdim_new.to_string(),
                r.derdim_old.to_string(),
                flags.join(" "),
            ]);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "baselines: LL-1 = {}, gldim = {}\n",
            self.baselines.ll_minus_one, self.baselines.gldim
        ));
        out
    }
}

/// Per-simple verdicts and projectives, computed once and shared by every
/// subset evaluation.
pub struct BoundContext {
    algebra: Arc<Algebra>,
    cutoff: usize,
    pd: Vec<Verdict>,
    id: Vec<Verdict>,
    projectives: Vec<Representation>,
    /// One memo per projective (absent beyond 64 vertices).
    caches: Option<Vec<Mutex<LayerCache>>>,
}

impl BoundContext {
    pub fn new(algebra: &Arc<Algebra>, cutoff: usize, iso: &IsoTest) -> Result<BoundContext> {
        if cutoff == 0 {
            return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
        }
        let pd = simple_projective_dimensions(algebra, cutoff, iso)?
            .into_iter()
            .map(|h| h.verdict)
            .collect();
        let id = simple_injective_dimensions(algebra, cutoff, iso)?
            .into_iter()
            .map(|h| h.verdict)
            .collect();
        let projectives: Vec<Representation> = (0..algebra.vertex_count())
            .map(|v| Representation::projective(algebra, v))
            .collect::<Result<_>>()?;
        let caches = (algebra.vertex_count() <= 64)
            .then(|| projectives.iter().map(|p| Mutex::new(LayerCache::new(p))).collect());
        Ok(BoundContext {
            algebra: algebra.clone(),
            cutoff,
            pd,
            id,
            projectives,
            caches,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn simple_pd(&self) -> &[Verdict] {
        &self.pd
    }

    pub fn simple_id(&self) -> &[Verdict] {
        &self.id
    }

    pub fn gldim(&self) -> Verdict {
        Verdict::max_of(self.pd.iter().copied())
    }

    pub fn baselines(&self) -> Baselines {
        let ll = self.algebra.loewy_length();
        Baselines {
            loewy_length: ll,
            ll_minus_one: ll as i64 - 1,
            gldim: self.gldim(),
        }
    }

    pub fn class_pd(&self, v: &SimpleSubset) -> Verdict {
        Verdict::max_of(v.members().into_iter().map(|w| self.pd[w]))
    }

    pub fn class_id(&self, v: &SimpleSubset) -> Verdict {
        Verdict::max_of(v.members().into_iter().map(|w| self.id[w]))
    }

    pub fn d(&self, v: &SimpleSubset) -> Bound {
        min_dimension(self.class_pd(v), self.class_id(v))
    }

    /// `ℓℓ^{t_V}(Λ)`.
    pub fn layer_length(&self, v: &SimpleSubset) -> usize {
        match &self.caches {
            Some(caches) => caches.iter().map(|c| c.lock().unwrap().layer_length(v)).max(),
            None => self.projectives.iter().map(|p| layer_length(v, p).length).max(),
        }
        .unwrap_or(0)
    }

    pub fn extdim_bound(&self, v: &SimpleSubset) -> Bound {
        match self.d(v) {
            Bound::Value(d) => Bound::Value(d + self.layer_length(v) as i64),
            u => u,
        }
    }

    pub fn derdim_bound(&self, v: &SimpleSubset) -> DerdimBound {
        let d = self.d(v);
        let n = d.value().map(|_| self.layer_length(v));
        derdim_from(d, n)
    }

    pub fn row(&self, v: &SimpleSubset) -> BoundRow {
        let pd_v = self.class_pd(v);
        let id_v = self.class_id(v);
        let d = min_dimension(pd_v, id_v);
        let n = d.value().map(|_| self.layer_length(v));
        let extdim = match (d, n) {
            (Bound::Value(d), Some(n)) => Bound::Value(d + n as i64),
            (u, _) => u,
        };
        let der = derdim_from(d, n);
        let baselines = self.baselines();
        let beats_old = matches!((der.new, der.old), (Bound::Value(a), Bound::Value(b)) if a < b);
        let below_comparators = beats_old
            && der.new.value().is_some_and(|x| {
                x < baselines.ll_minus_one && baselines.gldim.finite().map_or(true, |g| x < g)
            });
        BoundRow {
            v: v.labels(self.algebra.quiver()),
            pd_v,
            id_v,
            d,
            n,
            extdim,
            derdim_new: der.new,
            derdim_old: der.old,
            branch: der.branch,
            beats_old,
            below_comparators,
            best_extdim: false,
            best_derdim: false,
        }
    }

    fn report(&self, name: &str, mut rows: Vec<BoundRow>) -> BoundReport {
        let best_extdim = rows.iter().filter_map(|r| r.extdim.value()).min();
        let best_derdim = rows.iter().filter_map(|r| r.derdim_new.value()).min();
        for r in &mut rows {
            r.best_extdim = best_extdim.is_some() && r.extdim.value() == best_extdim;
            r.best_derdim = best_derdim.is_some() && r.derdim_new.value() == best_derdim;
        }
        BoundReport {
            algebra: name.to_string(),
            cutoff: self.cutoff,
            baselines: self.baselines(),
            rows,
            best_extdim,
            best_derdim,
        }
    }

    /// One row for the given `V`, plus baselines.
    pub fn evaluate(&self, name: &str, v: &SimpleSubset) -> BoundReport {
        self.report(name, vec![self.row(v)])
    }

    /// Every `V ⊆ S`, ordered by `(|V|, members lexicographically)`.
    pub fn search(&self, name: &str, subset_cap: u128, parallelism: usize) -> Result<BoundReport> {
        let k = self.algebra.vertex_count();
        let subsets = 1u128.checked_shl(k as u32).filter(|_| k < 64).unwrap_or(u128::MAX);
        if subsets > subset_cap {
            return Err(Error::SubsetCapExceeded {
                subsets,
                cap: subset_cap,
            });
        }
        let mut subsets: Vec<SimpleSubset> = (0..1u64 << k).map(|m| SimpleSubset::from_mask(k, m)).collect();
        subsets.sort_by_key(|v| (v.len(), v.members()));
        let rows: Vec<BoundRow> = if parallelism > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(parallelism)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            pool.install(|| subsets.par_iter().map(|v| self.row(v)).collect())
        } else {
            subsets.iter().map(|v| self.row(v)).collect()
        };
        Ok(self.report(name, rows))
    }
}

pub fn extdim_bound(alg: &Arc<Algebra>, v: &SimpleSubset, cutoff: usize) -> Result<Bound> {
    Ok(BoundContext::new(alg, cutoff, &IsoTest::default())?.extdim_bound(v))
}

pub fn derdim_bound(alg: &Arc<Algebra>, v: &SimpleSubset, cutoff: usize) -> Result<DerdimBound> {
    Ok(BoundContext::new(alg, cutoff, &IsoTest::default())?.derdim_bound(v))
}

pub fn search_bounds(alg: &Arc<Algebra>, name: &str, cutoff: usize, subset_cap: u128) -> Result<BoundReport> {
    BoundContext::new(alg, cutoff, &IsoTest::default())?.search(name, subset_cap, 1)
}

/// `derdim ≤ 2 extdim + 1`, both for the computed bounds and for an
/// externally known extension dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub extdim: Bound,
    pub derdim: Bound,
    /// `2 * extdim + 1` from the computed extdim bound.
    pub implied_derdim: Bound,
    /// `derdim_new ≤ 2 extdim_bound + 1`, when both are numbers.
    pub holds: Option<bool>,
    pub note: Option<String>,
}

pub fn chain_note(e: i64) -> String {
    format!("extdim = {e} (external) ⟹ derdim ≤ {}", 2 * e + 1)
}

pub fn chain_check(ctx: &BoundContext, v: &SimpleSubset, known_extdim: Option<i64>) -> ChainCheck {
    let extdim = ctx.extdim_bound(v);
    let derdim = ctx.derdim_bound(v).new;
    let implied_derdim = extdim.map(|e| 2 * e + 1);
    let holds = match (derdim, implied_derdim) {
        (Bound::Value(a), Bound::Value(b)) => Some(a <= b),
        _ => None,
    };
    ChainCheck {
        extdim,
        derdim,
        implied_derdim,
        holds,
        note: known_extdim.map(chain_note),
    }
}
