//! Values checked against computations that do not go through the engine.

mod common;

use radlayer::fixtures;
use radlayer::rep::{hom_space, Representation};

/// Rank of an integer matrix by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                for j in 0..cols {
                    rows[i][j] = rows[i][j] * a - rows[r][j] * b;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn beilinson_degree_two() {
    // paths x_i x_j from 0 to 2 index a 9-dimensional space; the relations
    // x_i x_j - x_j x_i (i < j) span a 3-dimensional subspace.
    let mut rels = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let mut row = vec![0; 9];
            row[3 * i + j] = 1;
            row[3 * j + i] = -1;
            rels.push(row);
        }
    }
    assert_eq!(rank(rels), 3);
    let b2 = common::load("B2");
    assert_eq!(b2.dims_by_degree(), vec![3, 6, 9 - 3]);
    assert_eq!(b2.dim(), 15);
}

#[test]
fn beilinson_one_is_kronecker() {
    let kr = common::load("KR");
    assert_eq!(kr.dims_by_degree(), vec![2, 2]);
    assert_eq!(kr.loewy_length(), 2);
}

#[test]
fn yoneda_dimensions() {
    for name in common::FIXTURES {
        let alg = common::load(name);
        for m in common::modules(&alg).into_iter().filter(|m| m.total_dim() <= 20) {
            for v in 0..alg.vertex_count() {
                let p = Representation::projective(&alg, v).unwrap();
                let i = Representation::injective(&alg, v).unwrap();
                assert_eq!(hom_space(&p, &m).unwrap().len(), m.dim_at(v), "{name} Hom(P({v}), M)");
                assert_eq!(hom_space(&m, &i).unwrap().len(), m.dim_at(v), "{name} Hom(M, I({v}))");
            }
        }
    }
}

#[test]
fn regular_module_is_sum_of_projectives() {
    for name in common::FIXTURES {
        let alg = common::load(name);
        let total: usize = (0..alg.vertex_count())
            .map(|v| Representation::projective(&alg, v).unwrap().total_dim())
            .sum();
        assert_eq!(total, alg.dim());
        let inj: usize = (0..alg.vertex_count())
            .map(|v| Representation::injective(&alg, v).unwrap().total_dim())
            .sum();
        assert_eq!(inj, alg.dim());
    }
}

/// Number of nonzero paths of the E41 quiver starting at `v`, counted by
/// hand. `gamma1 delta = gamma2 delta` identifies one pair of paths; every
/// other relation is a monomial.
fn e41_projective_dim(m: usize, n: usize, v: usize) -> usize {
    // from 2: e_2, gamma1, gamma2, gamma delta, gamma delta rho_1..rho_n, and
    // the two mu_i after rho_n (mu_i alpha dies, mu_i beta is zero)
    let from_two = 1 + 2 + 1 + n + 2;
    match v {
        // e_1, alpha..alpha^{m-1}; alpha beta = 0, so the rest goes through beta
        1 => m + from_two,
        2 => from_two,
        // e_3, delta, delta rho_1..rho_n, then mu1, mu2
        3 => 1 + 1 + n + 2,
        // from n+4: e, and mu_i alpha^k for 0 <= k < m
        w if w == n + 4 => 1 + 2 * m,
        // e_w, rho_{w-3}..rho_n (n+4-w arrows), then mu1, mu2
        w => 1 + (n + 4 - w) + 2,
    }
}

#[test]
fn e41_projectives_by_path_count() {
    for (m, n) in [(4, 1), (4, 3), (5, 2), (6, 1)] {
        let alg = fixtures::e41(m, n).unwrap();
        for v in 1..=n + 4 {
            let p = Representation::projective(&alg, v - 1).unwrap();
            assert_eq!(p.total_dim(), e41_projective_dim(m, n, v), "E41({m},{n}) P({v})");
        }
    }
}

#[test]
fn e41_loewy_length() {
    // longest paths: beta gamma delta rho_1..rho_n mu_i (n+4 arrows) and
    // mu_i alpha^{m-1} (m arrows)
    for (m, n) in [(4, 1), (4, 10), (7, 1), (10, 1), (5, 3)] {
        let alg = fixtures::e41(m, n).unwrap();
        assert_eq!(alg.loewy_length(), (m + 1).max(n + 5), "E41({m},{n})");
    }
}
