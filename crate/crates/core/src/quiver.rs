//! Quivers, paths and homogeneous relations, plus the JSON input format.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", a.source.max(a.target))));
            }
            if arrow_index.insert(a.label.clone(), i).is_some() {
                return Err(Error::DuplicateArrow(a.label.clone()));
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_by_label(&self, label: &str) -> Result<usize> {
        self.arrow_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver")
    }
}

/// A path, composed left to right: the target of each arrow is the source of
/// the next. The empty arrow list is the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> PathWord {
        PathWord {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<PathWord> {
        let (first, last) = match (arrows.first(), arrows.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::BrokenPath("(empty)".into())),
        };
        for w in arrows.windows(2) {
            if quiver.arrow(w[0]).target != quiver.arrow(w[1]).source {
                let labels: Vec<&str> = arrows.iter().map(|&a| quiver.arrow(a).label.as_str()).collect();
                return Err(Error::BrokenPath(labels.join(" ")));
            }
        }
        Ok(PathWord {
            source: quiver.arrow(first).source,
            target: quiver.arrow(last).target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> PathWord {
        PathWord {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        PathDisplay { path: self, quiver }
    }
}

struct PathDisplay<'a> {
    path: &'a PathWord,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertex_label(self.path.source));
        }
        let labels: Vec<&str> = self
            .path
            .arrows
            .iter()
            .map(|&a| self.quiver.arrow(a).label.as_str())
            .collect();
        write!(f, "{}", labels.join("*"))
    }
}

/// A linear combination of parallel paths of one common length `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Scalar, PathWord)>,
}

impl Relation {
    /// `index` is only used in error messages.
    pub fn new(index: usize, terms: Vec<(Scalar, PathWord)>) -> Result<Relation> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::EmptyRelation(index));
        };
        let (s, t, len) = (first.source, first.target, first.len());
        for (c, p) in &terms {
            if c.is_zero() {
                return Err(Error::ZeroCoefficient(index));
            }
            if p.len() < 2 {
                return Err(Error::ShortRelationTerm(index));
            }
            if p.len() != len {
                return Err(Error::NonHomogeneous(index));
            }
            if p.source != s || p.target != t {
                return Err(Error::NonParallel(index));
            }
        }
        Ok(Relation { terms })
    }

    pub fn terms(&self) -> &[(Scalar, PathWord)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }
}

/// A validated quiver-with-relations description.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Text(String),
    Int(i64),
}

#[derive(Deserialize, Serialize)]
pub struct ArrowSpec {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Deserialize, Serialize)]
pub struct TermSpec {
    pub coeff: CoeffSpec,
    pub path: Vec<String>,
}

/// Raw JSON document, before label resolution.
#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
}

impl AlgebraDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Parses the JSON input format and validates every structural invariant.
pub fn parse_algebra(text: &str) -> Result<Presentation> {
    presentation_from_document(parse_document(text)?)
}

/// JSON syntax and shape only; labels are resolved later.
pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn presentation_from_document(doc: AlgebraDocument) -> Result<Presentation> {
    let field = match doc.field {
        FieldSpec::Name(ref s) if s == "Q" => Field::Rationals,
        FieldSpec::Name(s) => {
            return Err(Error::Syntax {
                line: 0,
                column: 0,
                message: format!("unknown field {s:?}; expected \"Q\" or {{\"Fp\": p}}"),
            })
        }
        FieldSpec::Prime { fp } => Field::prime(fp)?,
    };
    let mut labels = HashMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if labels.insert(v.as_str(), i).is_some() {
            return Err(Error::DuplicateVertex(v.clone()));
        }
    }
    let lookup = |l: &str| labels.get(l).copied().ok_or_else(|| Error::UnknownVertex(l.to_string()));
    let arrows = doc
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow {
                label: a.label.clone(),
                source: lookup(&a.source)?,
                target: lookup(&a.target)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let quiver = Quiver::new(doc.vertices.clone(), arrows)?;
    let mut relations = Vec::with_capacity(doc.relations.len());
    for (i, terms) in doc.relations.iter().enumerate() {
        let terms = terms
            .iter()
            .map(|t| {
                let coeff = match &t.coeff {
                    CoeffSpec::Text(s) => field.parse(s)?,
                    CoeffSpec::Int(n) => field.from_i64(*n),
                };
                let arrows = t
                    .path
                    .iter()
                    .map(|l| quiver.arrow_by_label(l))
                    .collect::<Result<Vec<_>>>()?;
                if arrows.is_empty() {
                    return Err(Error::ShortRelationTerm(i));
                }
                Ok((coeff, PathWord::from_arrows(&quiver, arrows)?))
            })
            .collect::<Result<Vec<_>>>()?;
        relations.push(Relation::new(i, terms)?);
    }
    Ok(Presentation {
        field,
        quiver,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_parses() {
        let p = parse_algebra(
            r#"{"field":"Q","vertices":["1","2"],"arrows":[{"label":"a","source":"1","target":"2"}],"relations":[]}"#,
        )
        .unwrap();
        assert_eq!(p.quiver.vertex_count(), 2);
        assert_eq!(p.quiver.arrows().len(), 1);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn mixed_lengths_are_rejected() {
        let doc = r#"{"field":"Q","vertices":["v"],
            "arrows":[{"label":"x","source":"v","target":"v"}],
            "relations":[[{"coeff":"1","path":["x","x"]},{"coeff":"-1","path":["x","x","x"]}]]}"#;
        let err = parse_algebra(doc).unwrap_err();
        assert!(matches!(err, Error::NonHomogeneous(0)), "{err}");
        assert!(err.to_string().contains("non-homogeneous relation"));
    }

    #[test]
    fn errors_are_specific() {
        let base = |rel: &str| {
            format!(
                r#"{{"field":"Q","vertices":["1","2"],"arrows":[{{"label":"a","source":"1","target":"2"}},{{"label":"b","source":"2","target":"2"}}],"relations":[{rel}]}}"#
            )
        };
        assert!(matches!(
            parse_algebra(&base(r#"[{"coeff":"1","path":["a"]}]"#)),
            Err(Error::ShortRelationTerm(0))
        ));
        assert!(matches!(
            parse_algebra(&base(r#"[{"coeff":"0","path":["a","b"]}]"#)),
            Err(Error::ZeroCoefficient(0))
        ));
        assert!(matches!(
            parse_algebra(&base(r#"[{"coeff":"1","path":["a","b"]},{"coeff":"1","path":["b","b"]}]"#)),
            Err(Error::NonParallel(0))
        ));
        assert!(matches!(
            parse_algebra(&base(r#"[{"coeff":"1","path":["a","z"]}]"#)),
            Err(Error::UnknownArrow(_))
        ));
        assert!(matches!(
            parse_algebra(&base(r#"[{"coeff":"1","path":["b","a"]}]"#)),
            Err(Error::BrokenPath(_))
        ));
        assert!(matches!(parse_algebra(&base("[]")), Err(Error::EmptyRelation(0))));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_algebra("{\n  \"field\": \"Q\",\n  oops }").unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_vertex_in_arrow() {
        let doc = r#"{"field":"Q","vertices":["1"],"arrows":[{"label":"a","source":"1","target":"9"}]}"#;
        assert!(matches!(parse_algebra(doc), Err(Error::UnknownVertex(_))));
    }
}
