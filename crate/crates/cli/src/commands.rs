use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use radlayer::bounds::{chain_check, BoundContext, BoundReport, ChainCheck};
use radlayer::fixtures;
use radlayer::homology::{projective_cover, projective_dimension_with, Verdict};
use radlayer::quiver::{parse_document, presentation_from_document, AlgebraDocument, FieldSpec};
use radlayer::relative::{relative_bound, FiniteSubcategory, Side};
use radlayer::rep::{is_isomorphic, IsoTest, Representation};
use radlayer::torsion::{layer_length, LayerTrace, SimpleSubset};
use radlayer::{Algebra, Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Common;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load_document(input: &str) -> Result<AlgebraDocument> {
    if input.starts_with("FIX:") {
        fixtures::document(input)
    } else {
        parse_document(&read(Path::new(input))?)
    }
}

fn field_spec(text: &str) -> Result<FieldSpec> {
    if text == "Q" {
        return Ok(FieldSpec::Name("Q".into()));
    }
    let p = text
        .strip_prefix("F")
        .unwrap_or(text)
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("field must be Q or a prime, got {text:?}")))?;
    Ok(FieldSpec::Prime { fp: p })
}

fn load(c: &Common) -> Result<Arc<Algebra>> {
    let mut doc = load_document(&c.input)?;
    if let Some(f) = &c.field {
        doc.field = field_spec(f)?;
    }
    Algebra::build(presentation_from_document(doc)?, c.max_path_length)
}

fn iso(c: &Common) -> IsoTest {
    IsoTest {
        seed: c.seed,
        ..IsoTest::default()
    }
}

fn cutoff(c: &Common) -> usize {
    c.cutoff as usize
}

fn subset(alg: &Algebra, v: &str) -> Result<SimpleSubset> {
    SimpleSubset::parse(alg.quiver(), v)
}

/// `P:LABEL`, `S:LABEL`, `I:LABEL`, or a path to a module JSON file.
fn module(alg: &Arc<Algebra>, spec: &str) -> Result<Representation> {
    if let Some((kind, label)) = spec.split_once(':') {
        let make = match kind {
            "P" => Representation::projective,
            "S" => Representation::simple,
            "I" => Representation::injective,
            _ => return module_file(alg, spec),
        };
        return make(alg, alg.quiver().vertex(label)?);
    }
    module_file(alg, spec)
}

fn module_file(alg: &Arc<Algebra>, path: &str) -> Result<Representation> {
    let text = read(Path::new(path))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Representation::from_json(alg, &value)
}

fn chosen_module(alg: &Arc<Algebra>, simple: Option<&str>, spec: Option<&str>) -> Result<Option<Representation>> {
    match (simple, spec) {
        (Some(s), _) => Ok(Some(Representation::simple(alg, alg.quiver().vertex(s)?)?)),
        (None, Some(m)) => Ok(Some(module(alg, m)?)),
        (None, None) => Ok(None),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Finite(k) => k.to_string(),
        Verdict::Infinite { .. } => "∞ (certified)".into(),
        Verdict::AtLeast(c) => format!("≥{c} (cutoff)"),
    }
}

#[derive(Serialize, Deserialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub dim: usize,
}

pub fn validate(c: &Common) -> Result<String> {
    let alg = load(c)?;
    alg.validate()?;
    let r = ValidateReport {
        valid: true,
        vertices: alg.vertex_count(),
        arrows: alg.quiver().arrows().len(),
        relations: alg.relations().len(),
        dim: alg.dim(),
    };
    if c.json {
        return Ok(to_json(&r));
    }
    Ok(format!(
        "ok: {} vertices, {} arrows, {} relations, dim {}\n",
        r.vertices, r.arrows, r.relations, r.dim
    ))
}

#[derive(Serialize, Deserialize)]
pub struct VertexDims {
    pub vertex: String,
    pub projective: Vec<usize>,
    pub injective: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct InfoReport {
    pub field: String,
    pub dim: usize,
    pub loewy_length: usize,
    pub dims_by_degree: Vec<usize>,
    pub modules: Vec<VertexDims>,
    pub gldim: Verdict,
}

pub fn info(c: &Common) -> Result<String> {
    let alg = load(c)?;
    let ctx = BoundContext::new(&alg, cutoff(c), &iso(c))?;
    let modules = (0..alg.vertex_count())
        .map(|v| {
            Ok(VertexDims {
                vertex: alg.quiver().vertex_label(v).to_string(),
                projective: Representation::projective(&alg, v)?.dims().to_vec(),
                injective: Representation::injective(&alg, v)?.dims().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let r = InfoReport {
        field: alg.field().to_string(),
        dim: alg.dim(),
        loewy_length: alg.loewy_length(),
        dims_by_degree: alg.dims_by_degree(),
        modules,
        gldim: ctx.gldim(),
    };
    if c.json {
        return Ok(to_json(&r));
    }
    let mut out = format!("dim {}, LL {}, gldim {}\n", r.dim, r.loewy_length, verdict_text(&r.gldim));
    let degrees: Vec<String> = r.dims_by_degree.iter().map(usize::to_string).collect();
    writeln!(out, "field {}, basis by degree: {}", r.field, degrees.join(" ")).unwrap();
    for m in &r.modules {
        writeln!(
            out,
            "P({0}) {1:?} total {2}; I({0}) {3:?} total {4}",
            m.vertex,
            m.projective,
            m.projective.iter().sum::<usize>(),
            m.injective,
            m.injective.iter().sum::<usize>()
        )
        .unwrap();
    }
    Ok(out)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ResolveRecord {
    pub step: usize,
    /// Multiplicities of `P(v)` in the cover of `Ω^{step-1}`.
    pub top_multiplicities: Vec<usize>,
    /// Dimension vector of `Ω^step`.
    pub syzygy_dims: Vec<usize>,
    /// An earlier `j` with `Ω^step ≅ Ω^j`, if any.
    pub isomorphic_to: Option<usize>,
}

pub fn resolve(c: &Common, simple: Option<&str>, spec: Option<&str>, steps: usize) -> Result<String> {
    let alg = load(c)?;
    let m = chosen_module(&alg, simple, spec)?
        .ok_or_else(|| Error::InvalidArgument("resolve needs --simple or --module".into()))?;
    let test = iso(c);
    let mut syzygies = vec![m];
    let mut records = Vec::new();
    for step in 1..=steps {
        let current = &syzygies[step - 1];
        if current.is_zero() {
            break;
        }
        let cover = projective_cover(current);
        let next = cover.kernel().into_module();
        let mut isomorphic_to = None;
        if !next.is_zero() {
            for (j, earlier) in syzygies.iter().enumerate() {
                if earlier.dims() == next.dims() && is_isomorphic(earlier, &next, &test)?.is_isomorphic() {
                    isomorphic_to = Some(j);
                    break;
                }
            }
        }
        records.push(ResolveRecord {
            step,
            top_multiplicities: cover.top_multiplicities(alg.vertex_count()),
            syzygy_dims: next.dims().to_vec(),
            isomorphic_to,
        });
        syzygies.push(next);
    }
    if c.json {
        return Ok(to_json(&records));
    }
    let mut out = String::from("step  top  syzygy\n");
    for r in &records {
        writeln!(out, "{:<4}  {:?}  {:?}", r.step, r.top_multiplicities, r.syzygy_dims).unwrap();
    }
    if let Some(r) = records.iter().find(|r| r.isomorphic_to.is_some()) {
        writeln!(
            out,
            "periodicity at step {}: Ω^{} ≅ Ω^{}",
            r.step,
            r.step,
            r.isomorphic_to.unwrap()
        )
        .unwrap();
    }
    let pd = projective_dimension_with(&syzygies[0], cutoff(c), &test)?.verdict;
    writeln!(out, "pd {}", verdict_text(&pd)).unwrap();
    Ok(out)
}

#[derive(Serialize, Deserialize)]
pub struct LayerLength {
    pub vertex: String,
    pub length: usize,
}

#[derive(Serialize, Deserialize)]
pub struct LayerSummary {
    pub v: Vec<String>,
    pub projectives: Vec<LayerLength>,
    pub algebra: usize,
}

pub fn layer(c: &Common, v: &str, simple: Option<&str>, spec: Option<&str>) -> Result<String> {
    let alg = load(c)?;
    let v = subset(&alg, v)?;
    if let Some(m) = chosen_module(&alg, simple, spec)? {
        let trace: LayerTrace = layer_length(&v, &m);
        if c.json {
            return Ok(to_json(&trace));
        }
        let mut out = String::from("i  dim t_V F^i  dim F^{i+1}\n");
        for r in &trace.rows {
            writeln!(
                out,
                "{:<2} {:<3} {:?}  {:<3} {:?}",
                r.step,
                r.torsion_dims.iter().sum::<usize>(),
                r.torsion_dims,
                r.next_dims.iter().sum::<usize>(),
                r.next_dims
            )
            .unwrap();
        }
        writeln!(out, "length {}", trace.length).unwrap();
        return Ok(out);
    }
    let projectives = (0..alg.vertex_count())
        .map(|w| {
            Ok(LayerLength {
                vertex: alg.quiver().vertex_label(w).to_string(),
                length: layer_length(&v, &Representation::projective(&alg, w)?).length,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = LayerSummary {
        v: v.labels(alg.quiver()),
        algebra: projectives.iter().map(|p| p.length).max().unwrap_or(0),
        projectives,
    };
    if c.json {
        return Ok(to_json(&summary));
    }
    let mut out = String::new();
    for p in &summary.projectives {
        writeln!(out, "P({}) {}", p.vertex, p.length).unwrap();
    }
    writeln!(out, "algebra {}", summary.algebra).unwrap();
    Ok(out)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct BoundsOutput {
    pub report: BoundReport,
    pub chain: ChainCheck,
}

pub fn bounds(c: &Common, v: &str, known_extdim: Option<i64>) -> Result<String> {
    let alg = load(c)?;
    let v = subset(&alg, v)?;
    let ctx = BoundContext::new(&alg, cutoff(c), &iso(c))?;
    let out = BoundsOutput {
        report: ctx.evaluate(&c.input, &v),
        chain: chain_check(&ctx, &v, known_extdim),
    };
    if c.json {
        return Ok(to_json(&out));
    }
    let mut text = out.report.table();
    let ch = &out.chain;
    match ch.holds {
        Some(h) => writeln!(
            text,
            "chain: derdim<= {} vs 2*extdim<=+1 = {}: {}",
            ch.derdim,
            ch.implied_derdim,
            if h { "consistent" } else { "VIOLATED" }
        )
        .unwrap(),
        None => writeln!(text, "chain: not applicable (unknown bound)").unwrap(),
    }
    if let Some(note) = &ch.note {
        writeln!(text, "note: {note}").unwrap();
    }
    Ok(text)
}

pub fn search(c: &Common, subset_cap: u128, parallel: usize) -> Result<String> {
    let alg = load(c)?;
    let ctx = BoundContext::new(&alg, cutoff(c), &iso(c))?;
    let report = ctx.search(&c.input, subset_cap, parallel)?;
    if c.json {
        return Ok(to_json(&report));
    }
    let mut text = report.table();
    let show = |b: Option<i64>| b.map_or("none".to_string(), |x| x.to_string());
    writeln!(
        text,
        "best: extdim<= {}, derdim<= {}",
        show(report.best_extdim),
        show(report.best_derdim)
    )
    .unwrap();
    Ok(text)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct SideReport {
    pub class_dim: Verdict,
    pub layer_length: usize,
    pub extdim_bound: Option<i64>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct RelativeReport {
    pub algebra: String,
    pub v: Vec<String>,
    pub generators: usize,
    pub contains_all_projectives: bool,
    pub contains_all_injectives: bool,
    pub asserted_resolving: bool,
    pub asserted_coresolving: bool,
    pub projective_side: Option<SideReport>,
    pub injective_side: Option<SideReport>,
}

fn generators(alg: &Arc<Algebra>, path: &Path) -> Result<Vec<Representation>> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let list = match &value {
        Value::Object(o) => o.get("generators").cloned().unwrap_or(Value::Null),
        v => v.clone(),
    };
    let Value::Array(items) = list else {
        return Err(Error::InvalidArgument(
            "generators file must be a JSON array or {\"generators\": [...]}".into(),
        ));
    };
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => module(alg, s),
            other => Representation::from_json(alg, other),
        })
        .collect()
}

pub fn relative_bounds(
    c: &Common,
    generator_file: &Path,
    v: &str,
    assert_resolving: bool,
    assert_coresolving: bool,
) -> Result<String> {
    let alg = load(c)?;
    let v = subset(&alg, v)?;
    let gens = generators(&alg, generator_file)?;
    let x = FiniteSubcategory::new(&alg, gens, assert_resolving, assert_coresolving, &iso(c))?;
    if !x.contains_all_projectives() && !x.contains_all_injectives() {
        return Err(Error::Subcategory(
            "generators contain neither all indecomposable projectives nor all injectives".into(),
        ));
    }
    let side = |s: Side, present: bool| -> Result<Option<SideReport>> {
        if !present {
            return Ok(None);
        }
        let b = relative_bound(&x, &v, s, cutoff(c))?;
        Ok(Some(SideReport {
            class_dim: b.class_dim,
            layer_length: b.layer_length,
            extdim_bound: b.bound,
        }))
    };
    let r = RelativeReport {
        algebra: c.input.clone(),
        v: v.labels(alg.quiver()),
        generators: x.generators().len(),
        contains_all_projectives: x.contains_all_projectives(),
        contains_all_injectives: x.contains_all_injectives(),
        asserted_resolving: x.asserted_resolving(),
        asserted_coresolving: x.asserted_coresolving(),
        projective_side: side(Side::Projective, x.contains_all_projectives())?,
        injective_side: side(Side::Injective, x.contains_all_injectives())?,
    };
    if c.json {
        return Ok(to_json(&r));
    }
    let mut out = format!(
        "V = {{{}}}, {} generators; contains all projectives: {}, all injectives: {}\n",
        r.v.join(","),
        r.generators,
        r.contains_all_projectives,
        r.contains_all_injectives
    );
    writeln!(
        out,
        "asserted resolving: {}, asserted coresolving: {} (extension closure is not checked)",
        r.asserted_resolving, r.asserted_coresolving
    )
    .unwrap();
    for (name, s) in [("pd_X", &r.projective_side), ("id_X", &r.injective_side)] {
        if let Some(s) = s {
            let bound = s.extdim_bound.map_or("unknown".to_string(), |b| b.to_string());
            writeln!(
                out,
                "{name} V = {}, ll = {}, extdim<= {bound}",
                verdict_text(&s.class_dim),
                s.layer_length
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn fixture_name(name: &str, m: Option<usize>, n: Option<usize>) -> Result<String> {
    let missing = |flag: &str| Error::InvalidArgument(format!("fixture {name} needs --{flag}"));
    Ok(match name {
        "E41" | "E41LIT" => format!("{name}({},{})", m.ok_or_else(|| missing("m"))?, n.ok_or_else(|| missing("n"))?),
        "N" => format!("N{}", n.or(m).ok_or_else(|| missing("n"))?),
        "B" => format!("B{}", n.or(m).ok_or_else(|| missing("n"))?),
        other => other.to_string(),
    })
}

pub fn fixture(
    name: Option<&str>,
    m: Option<usize>,
    n: Option<usize>,
    out: Option<&Path>,
    all: Option<&Path>,
) -> Result<String> {
    let write = |path: &Path, text: &str| {
        fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
    };
    if let Some(dir) = all {
        fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", dir.display())))?;
        let mut listing = String::new();
        for (name, file) in fixtures::SHIPPED {
            let path = dir.join(file);
            write(&path, &(fixtures::document(name)?.to_json() + "\n"))?;
            writeln!(listing, "{}", path.display()).unwrap();
        }
        return Ok(listing);
    }
    let name = name.ok_or_else(|| Error::InvalidArgument("fixture needs a name or --all".into()))?;
    let text = fixtures::document(&fixture_name(name, m, n)?)?.to_json() + "\n";
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(format!("{}\n", path.display()))
        }
        None => Ok(text),
    }
}
