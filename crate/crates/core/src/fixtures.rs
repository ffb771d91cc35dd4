//! Built-in algebra descriptions used by tests, the CLI and the shipped
//! `fixtures/` directory.
//!
//! Names: `K`, `A2`, `N<r>` (one loop `x`, relation `x^r`), `KR` (two
//! vertices, two parallel arrows), `B<n>` (Beilinson quiver with
//! commutativity relations), `E41(m,n)` and `E41LIT(m,n)`.
//!
//! `E41(m,n)` is the algebra with loop `alpha` at 1, `beta: 1 -> 2`,
//! `gamma1, gamma2: 2 -> 3`, `delta: 3 -> 4`, `rho_k: k+3 -> k+4` and
//! `mu1, mu2: n+4 -> 1`, bound by `alpha^m`, `alpha beta`,
//! `gamma1 delta - gamma2 delta`, `rho_n mu_i alpha` and `mu_i beta`.
//! `E41LIT(m,n)` replaces the last two monomials by `mu1 beta - mu2 beta`;
//! that ideal leaves the cycle through all vertices alive, so the quotient
//! is infinite-dimensional.

use std::sync::Arc;

use crate::algebra::{Algebra, DEFAULT_MAX_PATH_LENGTH};
use crate::error::{Error, Result};
use crate::quiver::{presentation_from_document, AlgebraDocument, ArrowSpec, CoeffSpec, FieldSpec, TermSpec};

fn arrow(label: impl Into<String>, source: impl ToString, target: impl ToString) -> ArrowSpec {
    ArrowSpec {
        label: label.into(),
        source: source.to_string(),
        target: target.to_string(),
    }
}

fn term(coeff: i64, path: &[&str]) -> TermSpec {
    TermSpec {
        coeff: CoeffSpec::Text(coeff.to_string()),
        path: path.iter().map(|s| s.to_string()).collect(),
    }
}

fn owned_term(coeff: i64, path: Vec<String>) -> TermSpec {
    TermSpec {
        coeff: CoeffSpec::Text(coeff.to_string()),
        path,
    }
}

fn rationals() -> FieldSpec {
    FieldSpec::Name("Q".into())
}

pub fn point() -> AlgebraDocument {
    AlgebraDocument {
        field: rationals(),
        vertices: vec!["1".into()],
        arrows: vec![],
        relations: vec![],
    }
}

pub fn a2() -> AlgebraDocument {
    AlgebraDocument {
        field: rationals(),
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![arrow("a", 1, 2)],
        relations: vec![],
    }
}

/// One vertex, one loop `x`, relation `x^r` (`r >= 2`).
pub fn truncated_loop(r: usize) -> AlgebraDocument {
    AlgebraDocument {
        field: rationals(),
        vertices: vec!["1".into()],
        arrows: vec![arrow("x", 1, 1)],
        relations: vec![vec![owned_term(1, vec!["x".to_string(); r])]],
    }
}

/// Beilinson algebra: vertices `0..=n`, arrows `x{i}_{k}: k -> k+1` for
/// `0 <= i <= n`, relations `x{i}_{k} x{j}_{k+1} - x{j}_{k} x{i}_{k+1}`.
pub fn beilinson(n: usize) -> AlgebraDocument {
    let label = |i: usize, k: usize| format!("x{i}_{k}");
    let mut arrows = Vec::new();
    for k in 0..n {
        for i in 0..=n {
            arrows.push(arrow(label(i, k), k, k + 1));
        }
    }
    let mut relations = Vec::new();
    for k in 0..n.saturating_sub(1) {
        for i in 0..=n {
            for j in i + 1..=n {
                relations.push(vec![
                    owned_term(1, vec![label(i, k), label(j, k + 1)]),
                    owned_term(-1, vec![label(j, k), label(i, k + 1)]),
                ]);
            }
        }
    }
    AlgebraDocument {
        field: rationals(),
        vertices: (0..=n).map(|v| v.to_string()).collect(),
        arrows,
        relations,
    }
}

fn e41_quiver(n: usize) -> (Vec<String>, Vec<ArrowSpec>) {
    let mut arrows = vec![
        arrow("alpha", 1, 1),
        arrow("beta", 1, 2),
        arrow("gamma1", 2, 3),
        arrow("gamma2", 2, 3),
        arrow("delta", 3, 4),
    ];
    for k in 1..=n {
        arrows.push(arrow(format!("rho{k}"), k + 3, k + 4));
    }
    arrows.push(arrow("mu1", n + 4, 1));
    arrows.push(arrow("mu2", n + 4, 1));
    ((1..=n + 4).map(|v| v.to_string()).collect(), arrows)
}

fn e41_common_relations(m: usize, n: usize) -> Vec<Vec<TermSpec>> {
    let rho_n = format!("rho{n}");
    vec![
        vec![owned_term(1, vec!["alpha".to_string(); m])],
        vec![term(1, &["alpha", "beta"])],
        vec![term(1, &["gamma1", "delta"]), term(-1, &["gamma2", "delta"])],
        vec![term(1, &[&rho_n, "mu1", "alpha"])],
        vec![term(1, &[&rho_n, "mu2", "alpha"])],
    ]
}

/// The finite-dimensional algebra of the `E41(m,n)` family (`m >= 4`, `n >= 1`).
pub fn e41_document(m: usize, n: usize) -> AlgebraDocument {
    let (vertices, arrows) = e41_quiver(n);
    let mut relations = e41_common_relations(m, n);
    relations.push(vec![term(1, &["mu1", "beta"])]);
    relations.push(vec![term(1, &["mu2", "beta"])]);
    AlgebraDocument {
        field: rationals(),
        vertices,
        arrows,
        relations,
    }
}

/// The six generators exactly as printed for this family; the quotient is
/// infinite-dimensional.
pub fn e41_literal_document(m: usize, n: usize) -> AlgebraDocument {
    let (vertices, arrows) = e41_quiver(n);
    let mut relations = e41_common_relations(m, n);
    relations.push(vec![term(1, &["mu1", "beta"]), term(-1, &["mu2", "beta"])]);
    AlgebraDocument {
        field: rationals(),
        vertices,
        arrows,
        relations,
    }
}

fn parse_pair(args: &str) -> Option<(usize, usize)> {
    let inner = args.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Looks up a fixture document by name; a leading `FIX:` is ignored.
pub fn document(name: &str) -> Result<AlgebraDocument> {
    let name = name.trim();
    let name = name.strip_prefix("FIX:").unwrap_or(name);
    let unknown = || Error::InvalidArgument(format!("unknown fixture {name:?}"));
    match name {
        "K" => return Ok(point()),
        "A2" => return Ok(a2()),
        "KR" => return Ok(beilinson(1)),
        _ => {}
    }
    if let Some(args) = name.strip_prefix("E41LIT") {
        let (m, n) = parse_pair(args).ok_or_else(unknown)?;
        check_e41(m, n)?;
        return Ok(e41_literal_document(m, n));
    }
    if let Some(args) = name.strip_prefix("E41") {
        let (m, n) = parse_pair(args).ok_or_else(unknown)?;
        check_e41(m, n)?;
        return Ok(e41_document(m, n));
    }
    if let Some(r) = name.strip_prefix('N') {
        let r: usize = r.parse().map_err(|_| unknown())?;
        if r < 2 {
            return Err(Error::InvalidArgument("N<r> needs r >= 2".into()));
        }
        return Ok(truncated_loop(r));
    }
    if let Some(n) = name.strip_prefix('B') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n < 1 {
            return Err(Error::InvalidArgument("B<n> needs n >= 1".into()));
        }
        return Ok(beilinson(n));
    }
    Err(unknown())
}

fn check_e41(m: usize, n: usize) -> Result<()> {
    if m < 4 || n < 1 {
        return Err(Error::InvalidArgument("E41(m,n) needs m >= 4 and n >= 1".into()));
    }
    Ok(())
}

/// Builds a fixture algebra with the default path-length guard.
pub fn load(name: &str) -> Result<Arc<Algebra>> {
    let p = presentation_from_document(document(name)?)?;
    Algebra::build(p, DEFAULT_MAX_PATH_LENGTH)
}

pub fn e41(m: usize, n: usize) -> Result<Arc<Algebra>> {
    load(&format!("E41({m},{n})"))
}

/// Names of the fixtures written to the repository's `fixtures/` directory.
pub const SHIPPED: &[(&str, &str)] = &[
    ("K", "K.json"),
    ("A2", "A2.json"),
    ("N2", "N2.json"),
    ("N3", "N3.json"),
    ("KR", "KR.json"),
    ("B2", "B2.json"),
    ("E41(4,1)", "E41_4_1.json"),
    ("E41(4,10)", "E41_4_10.json"),
];
