#![allow(dead_code)]

use std::sync::Arc;

use radlayer::fixtures;
use radlayer::rep::{direct_sum, Representation};
use radlayer::Algebra;

pub mod props;

pub const FIXTURES: &[&str] = &["K", "A2", "N2", "N3", "KR", "B2", "E41(4,1)"];

pub fn load(name: &str) -> Arc<Algebra> {
    fixtures::load(name).unwrap()
}

/// Simples, projectives, injectives, the regular module, a radical, a top
/// and a direct sum.
pub fn modules(alg: &Arc<Algebra>) -> Vec<Representation> {
    let mut out = Vec::new();
    for v in 0..alg.vertex_count() {
        out.push(Representation::simple(alg, v).unwrap());
        out.push(Representation::projective(alg, v).unwrap());
        out.push(Representation::injective(alg, v).unwrap());
    }
    let reg = Representation::regular(alg);
    out.push(reg.radical().into_module());
    out.push(reg.clone());
    let i0 = Representation::injective(alg, 0).unwrap();
    out.push(i0.top().module);
    out.push(direct_sum(alg, &[out[0].clone(), i0]));
    out
}
