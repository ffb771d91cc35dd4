//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//! Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use common::props;
use radlayer::bounds::{chain_check, derdim_formula, old_derdim_formula, Bound, BoundContext, Branch, UnknownReason};
use radlayer::fixtures;
use radlayer::homology::{injective_dimension, projective_dimension, HomDim, Verdict};
use radlayer::relative::{relative_bound, relative_pd, FiniteSubcategory, Side};
use radlayer::rep::{IsoTest, Representation};
use radlayer::torsion::{algebra_layer_length, layer_length, SimpleSubset};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn certified(h: &HomDim) -> bool {
    match (h.verdict, &h.witness) {
        (Verdict::Infinite { from, to }, Some(w)) => from < to && w.is_intertwining() && w.is_isomorphism(),
        _ => false,
    }
}

fn subset(n: usize, labels: impl IntoIterator<Item = usize>) -> SimpleSubset {
    // labels are 1-based
    SimpleSubset::new(n, labels.into_iter().map(|i| i - 1)).unwrap()
}

fn pd_of_simples() -> Check {
    let alg = fixtures::e41(4, 1).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    for v in 0..5 {
        let s = Representation::simple(&alg, v).unwrap();
        let h = projective_dimension(&s, 50).map_err(|e| e.to_string())?;
        got.push(match h.verdict {
            Verdict::Infinite { .. } if certified(&h) => "inf(certified)".to_string(),
            Verdict::Infinite { .. } => "inf(uncertified)".to_string(),
            other => other.to_string(),
        });
    }
    let want = ["inf(certified)", "2", "1", "inf(certified)", "2"];
    ensure(got == want, format!("got {got:?}, want {want:?}"))?;
    Ok(format!("pd S1..S5 = {}", got.join(", ")))
}

fn layer_lengths() -> Check {
    let alg = fixtures::e41(4, 1).map_err(|e| e.to_string())?;
    let v = subset(5, [3]);
    let got: Vec<usize> = (0..5)
        .map(|w| layer_length(&v, &Representation::projective(&alg, w).unwrap()).length)
        .collect();
    let whole = algebra_layer_length(&alg, &v);
    let want = vec![4, 4, 3, 3, 5];
    ensure(
        got == want && whole == 5,
        format!("got {got:?} and {whole} for the algebra, want {want:?} and 5"),
    )?;
    Ok(format!("projectives {got:?}, algebra {whole}"))
}

fn e41_bounds() -> Check {
    let alg = fixtures::e41(4, 10).map_err(|e| e.to_string())?;
    let ctx = BoundContext::new(&alg, 50, &IsoTest::default()).map_err(|e| e.to_string())?;
    let report = ctx.search("E41(4,10)", 1 << 16, 1).map_err(|e| e.to_string())?;
    let labels: Vec<String> = (3..=12).map(|i| i.to_string()).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let row = report.row(&labels).ok_or("no row for V = {3..12}")?;
    let empty = report.row(&[]).ok_or("no row for the empty set")?;
    let got = (row.extdim, row.derdim_new, row.derdim_old, empty.extdim);
    let want = (Bound::Value(6), Bound::Value(13), Bound::Value(16), Bound::Value(14));
    ensure(got == want, format!("got {got:?}, want {want:?}"))?;
    ensure(row.below_comparators, "new derdim bound not flagged below both comparators")?;
    Ok(format!(
        "V={{3..12}}: extdim<=6, derdim<=13 (old 16, LL-1 {}), flagged; V=empty: 14",
        report.baselines.ll_minus_one
    ))
}

fn truncated_loop() -> Check {
    let alg = fixtures::load("N3").map_err(|e| e.to_string())?;
    let ctx = BoundContext::new(&alg, 50, &IsoTest::default()).map_err(|e| e.to_string())?;
    let s = Representation::simple(&alg, 0).unwrap();
    let pd = projective_dimension(&s, 50).map_err(|e| e.to_string())?;
    let id = injective_dimension(&s, 50).map_err(|e| e.to_string())?;
    ensure(certified(&pd) && certified(&id), "pd/id of the simple not certified infinite")?;
    ensure(ctx.gldim().is_infinite(), format!("gldim {:?}", ctx.gldim()))?;
    ensure(alg.loewy_length() == 3, format!("LL {}", alg.loewy_length()))?;
    let empty = SimpleSubset::empty(1);
    ensure(ctx.extdim_bound(&empty) == Bound::Value(2), format!("extdim {:?}", ctx.extdim_bound(&empty)))?;
    let chain = chain_check(&ctx, &empty, Some(0));
    let note = chain.note.unwrap_or_default();
    ensure(note == "extdim = 0 (external) ⟹ derdim ≤ 1", format!("note {note:?}"))?;
    Ok(format!("pd = id = inf (certified), gldim inf, LL 3, extdim<=2, \"{note}\""))
}

fn beilinson() -> Check {
    let mut parts = Vec::new();
    for (name, n) in [("KR", 1), ("B2", 2)] {
        let alg = fixtures::load(name).map_err(|e| e.to_string())?;
        let ctx = BoundContext::new(&alg, 50, &IsoTest::default()).map_err(|e| e.to_string())?;
        let all = SimpleSubset::all(alg.vertex_count());
        ensure(ctx.gldim() == Verdict::Finite(n), format!("{name}: gldim {:?}", ctx.gldim()))?;
        ensure(
            ctx.extdim_bound(&all) == Bound::Value(n),
            format!("{name}: extdim {:?}", ctx.extdim_bound(&all)),
        )?;
        parts.push(format!("{name}: gldim {n}, extdim<={n}"));
    }
    Ok(parts.join("; "))
}

fn degeneration() -> Check {
    let mut names: Vec<&str> = common::FIXTURES.to_vec();
    names.push("E41(4,10)");
    for name in &names {
        let alg = fixtures::load(name).map_err(|e| e.to_string())?;
        let ctx = BoundContext::new(&alg, 50, &IsoTest::default()).map_err(|e| e.to_string())?;
        let k = alg.vertex_count();
        let ll = alg.loewy_length() as i64;
        let empty = ctx.extdim_bound(&SimpleSubset::empty(k));
        ensure(empty == Bound::Value(ll - 1), format!("{name}: extdim(empty) {empty:?}, LL-1 = {}", ll - 1))?;
        let all = ctx.extdim_bound(&SimpleSubset::all(k));
        let want = match ctx.gldim() {
            Verdict::Finite(g) => Bound::Value(g),
            Verdict::Infinite { .. } => Bound::Unknown(UnknownReason::NoFiniteBound),
            Verdict::AtLeast(_) => Bound::Unknown(UnknownReason::Undetermined),
        };
        ensure(all == want, format!("{name}: extdim(S) {all:?}, gldim {:?}", ctx.gldim()))?;
    }
    let mut checked = 0;
    for name in ["A2", "B2", "N3"] {
        let alg = fixtures::load(name).map_err(|e| e.to_string())?;
        let k = alg.vertex_count();
        for mask in 0..1u64 << k {
            let v = SimpleSubset::from_mask(k, mask);
            let zero = algebra_layer_length(&alg, &v) == 0;
            ensure(zero == v.is_all(), format!("{name}: {v:?} has layer length zero: {zero}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} fixtures: extdim(empty) = LL-1, extdim(S) = gldim; vanishing iff V = S on {checked} subsets",
        names.len()
    ))
}

fn property_suites() -> Check {
    let checks: [(&str, fn()); 8] = [
        ("shift identity", props::shift_identity),
        ("zero length means torsion-free", props::zero_layer_length_means_torsionfree),
        ("algebra length bounds modules", props::algebra_layer_length_bounds_every_module),
        ("direct sums", props::layer_length_of_direct_sum_is_max),
        ("torsion pair", props::torsion_pair_laws),
        ("vanishing iff all simples", props::vanishing_layer_length_iff_all_simples),
        ("duality", props::duality_of_dimensions),
        ("minimal covers", props::covers_are_minimal),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        if panic::catch_unwind(check).is_err() {
            failed.push(name.to_string());
        }
    }
    let oracle = panic::catch_unwind(props::torsion_matches_brute_force_over_f2);
    let count = match oracle {
        Ok(n) => n,
        Err(_) => {
            failed.push("F2 brute force".into());
            0
        }
    };
    ensure(failed.is_empty(), format!("failed: {}", failed.join(", ")))?;
    Ok(format!("{} suites; {count} modules against the F2 oracle", checks.len() + 1))
}

fn relative_agreement() -> Check {
    let mut compared = 0;
    for name in common::FIXTURES {
        let alg = fixtures::load(name).map_err(|e| e.to_string())?;
        let x = FiniteSubcategory::projectives(&alg).map_err(|e| e.to_string())?;
        for m in common::modules(&alg).into_iter().filter(|m| m.total_dim() <= 24) {
            let rel = relative_pd(&x, &m, 20).map_err(|e| e.to_string())?.verdict;
            let abs = projective_dimension(&m, 20).map_err(|e| e.to_string())?.verdict;
            let same = rel.finite() == abs.finite() && rel.is_infinite() == abs.is_infinite();
            ensure(same, format!("{name}: relative {rel:?} vs {abs:?}"))?;
            compared += 1;
        }
    }
    let alg = fixtures::e41(4, 1).map_err(|e| e.to_string())?;
    let x = FiniteSubcategory::projectives(&alg).map_err(|e| e.to_string())?;
    let v = subset(5, [3]);
    let rb = relative_bound(&x, &v, Side::Projective, 50).map_err(|e| e.to_string())?;
    let d = rb.class_dim.finite().ok_or(format!("relative pd of V: {:?}", rb.class_dim))?;
    let n = rb.layer_length as i64;
    let (new, branch) = derdim_formula(d, n);
    let got = (rb.bound, new, old_derdim_formula(d, n), branch);
    let want = (Some(6), 13, 16, Branch::Refined);
    ensure(got == want, format!("got {got:?}, want {want:?}"))?;
    Ok(format!(
        "relative pd = pd on {compared} modules; E41(4,1) V={{3}}: d={d}, n={n}, bound 6, derdim 13 (old 16)"
    ))
}

fn main() -> ExitCode {
    // property checks report through panics; keep their messages out of the table
    panic::set_hook(Box::new(|_| {}));
    let criteria: [(&str, fn() -> Check); 8] = [
        ("pd of simples, E41(4,1)", pd_of_simples),
        ("layer lengths, E41(4,1), V={3}", layer_lengths),
        ("bound table, E41(4,10)", e41_bounds),
        ("truncated loop N3", truncated_loop),
        ("Beilinson B1, B2", beilinson),
        ("degenerate subsets", degeneration),
        ("property suites", property_suites),
        ("relative agreement", relative_agreement),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
